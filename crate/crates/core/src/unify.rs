//! Syntactic matching and most general unifiers.

use std::collections::BTreeMap;

use crate::subst::Substitution;
use crate::term::{Term, Var};

/// Finds `σ` with `dom(σ) ⊆ vars(pattern)` and `patternσ = subject`.
///
/// Variables of `subject` are treated as constants.
pub fn matching(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    match_into(pattern, subject, &mut sigma).then_some(sigma)
}

/// Extends `sigma` so that `pattern sigma = subject`.
///
/// Pattern variables already bound in `sigma` must agree with the subject;
/// unbound ones get bound. `sigma` is left untouched on failure. Callers that
/// extend a substitution across several calls should keep pattern variables
/// disjoint from subject variables, since `x ↦ x` is not stored.
pub fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    let mut bindings: BTreeMap<Var, Term> =
        sigma.iter().map(|(x, t)| (x.clone(), t.clone())).collect();
    if !go(pattern, subject, &mut bindings) {
        return false;
    }
    *sigma = Substitution::from_pairs(bindings);
    true
}

fn go(pattern: &Term, subject: &Term, bindings: &mut BTreeMap<Var, Term>) -> bool {
    match (pattern, subject) {
        (Term::Var(x), _) => match bindings.get(x) {
            Some(bound) => bound == subject,
            None => {
                bindings.insert(x.clone(), subject.clone());
                true
            }
        },
        (Term::App(f, fs), Term::App(g, gs)) => {
            f == g && fs.len() == gs.len() && fs.iter().zip(gs).all(|(p, s)| go(p, s, bindings))
        }
        (Term::App(..), Term::Var(_)) => false,
    }
}

/// Most general unifier of `s` and `t`, idempotent, with occurs check.
pub fn mgu(s: &Term, t: &Term) -> Option<Substitution> {
    unify_all(vec![(s.clone(), t.clone())])
}

/// Simultaneous most general unifier of a list of equations.
pub fn unify_all(mut eqs: Vec<(Term, Term)>) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    while let Some((a, b)) = eqs.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), u) | (u, Term::Var(x)) => {
                if u.contains_var(&x) {
                    return None;
                }
                let single = Substitution::from_pairs([(x.clone(), u.clone())]);
                sigma = sigma.compose(&single);
                sigma.bind(x, u);
            }
            (Term::App(f, fs), Term::App(g, gs)) => {
                if f != g || fs.len() != gs.len() {
                    return None;
                }
                eqs.extend(fs.into_iter().zip(gs));
            }
        }
    }
    Some(sigma)
}

/// Whether `s` and `t` have a common instance.
pub fn unifiable(s: &Term, t: &Term) -> bool {
    mgu(s, t).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s, &["x", "y", "z", "w"]).unwrap()
    }

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            matching(&t("f(x,x)"), &t("f(a,a)")),
            Some(Substitution::from_pairs([(v("x"), t("a"))]))
        );
        assert_eq!(matching(&t("f(x,x)"), &t("f(a,b)")), None);
        assert_eq!(
            matching(&t("x"), &t("f(y)")),
            Some(Substitution::from_pairs([(v("x"), t("f(y)"))]))
        );
        assert_eq!(matching(&t("f(a)"), &t("f(x)")), None);
    }

    #[test]
    fn match_nonlinear_with_identity_binding() {
        assert_eq!(matching(&t("f(x,x)"), &t("f(x,a)")), None);
        assert_eq!(matching(&t("f(x,x)"), &t("f(x,x)")), Some(Substitution::new()));
    }

    #[test]
    fn mgu_examples() {
        assert_eq!(mgu(&t("x"), &t("x")), Some(Substitution::new()));
        assert_eq!(mgu(&t("x"), &t("f(x)")), None);
        // hand-run: f(x, g(y)) =? f(g(z), x)  ⇒  x := g(z), then g(y) =? g(z) ⇒ y := z
        let mu = mgu(&t("f(x,g(y))"), &t("f(g(z),x)")).unwrap();
        assert_eq!(mu.apply(&t("x")), t("g(z)"));
        assert_eq!(mu.apply(&t("y")), mu.apply(&t("z")));
        assert!(mu.is_idempotent());
        assert_eq!(mu.apply(&t("f(x,g(y))")), mu.apply(&t("f(g(z),x)")));
    }

    #[test]
    fn mgu_clash_and_arity() {
        assert_eq!(mgu(&t("f(a)"), &t("g(a)")), None);
        assert_eq!(mgu(&t("f(x,y)"), &t("f(y,g(x))")), None);
        assert!(mgu(&t("f(x,y,z)"), &t("f(y,z,w)")).unwrap().is_idempotent());
    }
}
