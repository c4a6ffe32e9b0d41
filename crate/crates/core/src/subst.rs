//! Substitutions, variable permutations and renaming apart.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexSet;

use crate::term::{HasVars, Term, Var};

/// A finite mapping from variables to terms, applied simultaneously.
///
/// Trivial bindings `x ↦ x` are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution(BTreeMap<Var, Term>);

impl Substitution {
    pub fn new() -> Self {
        Substitution(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Term)>>(pairs: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Sets `x ↦ t`, dropping the binding if `t` is `x` itself.
    pub fn bind(&mut self, x: Var, t: Term) {
        if t.as_var() == Some(&x) {
            self.0.remove(&x);
        } else {
            self.0.insert(x, t);
        }
    }

    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.0.get(x)
    }

    pub fn contains(&self, x: &Var) -> bool {
        self.0.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.0.keys()
    }

    /// `tσ`.
    pub fn apply(&self, t: &Term) -> Term {
        if self.0.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(x) => self.0.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    pub fn apply_pairs(&self, pairs: &[(Term, Term)]) -> Vec<(Term, Term)> {
        pairs.iter().map(|(s, t)| (self.apply(s), self.apply(t))).collect()
    }

    /// The substitution `σ` followed by `τ`: `t(compose(σ, τ)) = (tσ)τ`.
    pub fn compose(&self, tau: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (x, t) in &self.0 {
            out.bind(x.clone(), tau.apply(t));
        }
        for (x, t) in &tau.0 {
            if !self.0.contains_key(x) {
                out.bind(x.clone(), t.clone());
            }
        }
        out
    }

    /// Restriction of the domain to `vars`.
    pub fn restrict(&self, vars: &IndexSet<Var>) -> Substitution {
        Substitution(
            self.0
                .iter()
                .filter(|(x, _)| vars.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        )
    }

    /// Whether `σ` and `τ` agree on every variable of `vars`.
    pub fn agrees_with_on(&self, tau: &Substitution, vars: &IndexSet<Var>) -> bool {
        vars.iter()
            .all(|x| self.apply(&Term::Var(x.clone())) == tau.apply(&Term::Var(x.clone())))
    }

    /// Whether `σσ = σ`.
    pub fn is_idempotent(&self) -> bool {
        self.0
            .values()
            .all(|t| t.vars().iter().all(|y| !self.0.contains_key(y)))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} := {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bijective renaming of variables with finite support.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Permutation {
    forward: BTreeMap<Var, Var>,
    backward: BTreeMap<Var, Var>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Builds a permutation extending an injective partial map.
    ///
    /// Targets that are not themselves in the domain are sent back along the
    /// chain so that the result is a bijection on all variables. Returns `None`
    /// if `map` is not injective.
    pub fn from_injective(map: BTreeMap<Var, Var>) -> Option<Self> {
        let mut backward = BTreeMap::new();
        for (x, y) in &map {
            if backward.insert(y.clone(), x.clone()).is_some() {
                return None;
            }
        }
        let mut forward = map;
        // close each open chain y ← x ← ... ← z (z not a target) with y ↦ z
        let open_ends: Vec<Var> = backward
            .keys()
            .filter(|y| !forward.contains_key(*y))
            .cloned()
            .collect();
        for y in open_ends {
            let mut z = backward[&y].clone();
            while let Some(prev) = backward.get(&z) {
                z = prev.clone();
            }
            forward.insert(y.clone(), z.clone());
            backward.insert(z, y);
        }
        forward.retain(|x, y| x != y);
        backward.retain(|x, y| x != y);
        Some(Permutation { forward, backward })
    }

    pub fn apply_var(&self, x: &Var) -> Var {
        self.forward.get(x).cloned().unwrap_or_else(|| x.clone())
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(x) => Term::Var(self.apply_var(x)),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Var)> {
        self.forward.iter()
    }

    pub fn to_substitution(&self) -> Substitution {
        Substitution::from_pairs(
            self.forward
                .iter()
                .map(|(x, y)| (x.clone(), Term::Var(y.clone()))),
        )
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.forward.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {y}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Objects whose variables can be renamed by a permutation.
pub trait Rename: HasVars {
    fn rename(&self, pi: &Permutation) -> Self;
}

impl Rename for Term {
    fn rename(&self, pi: &Permutation) -> Self {
        pi.apply(self)
    }
}

impl<A: Rename, B: Rename> Rename for (A, B) {
    fn rename(&self, pi: &Permutation) -> Self {
        (self.0.rename(pi), self.1.rename(pi))
    }
}

impl<T: Rename> Rename for Vec<T> {
    fn rename(&self, pi: &Permutation) -> Self {
        self.iter().map(|x| x.rename(pi)).collect()
    }
}

fn base_name(x: &Var) -> &str {
    let s = x.as_str();
    match s.rfind('\'') {
        Some(i) if i > 0 && s[i + 1..].chars().all(|c| c.is_ascii_digit()) => &s[..i],
        _ => s,
    }
}

/// Renames every variable of `object` to a fresh one outside `avoid`.
///
/// Fresh names are `base'n` with `n` counting up from 1 per call, skipping
/// names in `avoid`, names of the object itself, and names already handed
/// out, so the result is deterministic.
pub fn rename_apart<T: Rename>(avoid: &IndexSet<Var>, object: &T) -> (Permutation, T) {
    let own = object.var_set();
    if own.is_empty() {
        return (Permutation::identity(), object.rename(&Permutation::identity()));
    }
    let mut taken: IndexSet<Var> = avoid.iter().chain(own.iter()).cloned().collect();
    let mut map = BTreeMap::new();
    let mut counter = 0usize;
    for x in &own {
        let base = base_name(x);
        let fresh = loop {
            counter += 1;
            let cand = Var::new(&format!("{base}'{counter}"));
            if !taken.contains(&cand) {
                break cand;
            }
        };
        taken.insert(fresh.clone());
        map.insert(x.clone(), fresh);
    }
    let pi = Permutation::from_injective(map).expect("fresh names are distinct");
    let renamed = object.rename(&pi);
    (pi, renamed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s, &["x", "y", "z"]).unwrap()
    }

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn apply_is_simultaneous() {
        let s = Substitution::from_pairs([(v("x"), t("a"))]);
        assert_eq!(s.apply(&t("f(x,y)")), t("f(a,y)"));
        assert_eq!(Substitution::new().apply(&t("f(x,y)")), t("f(x,y)"));
        let s = Substitution::from_pairs([(v("x"), t("g(y)")), (v("y"), t("b"))]);
        assert_eq!(s.apply(&t("f(x,y)")), t("f(g(y),b)"));
    }

    #[test]
    fn trivial_bindings_dropped() {
        let s = Substitution::from_pairs([(v("x"), t("x"))]);
        assert!(s.is_empty());
    }

    #[test]
    fn composition() {
        let sigma = Substitution::from_pairs([(v("x"), t("y"))]);
        let tau = Substitution::from_pairs([(v("y"), t("a"))]);
        assert_eq!(
            sigma.compose(&tau),
            Substitution::from_pairs([(v("x"), t("a")), (v("y"), t("a"))])
        );
        assert_eq!(Substitution::new().compose(&tau), tau);
        let sigma = Substitution::from_pairs([(v("x"), t("f(y)"))]);
        let tau = Substitution::from_pairs([(v("y"), t("b"))]);
        assert_eq!(
            sigma.compose(&tau),
            Substitution::from_pairs([(v("x"), t("f(b)")), (v("y"), t("b"))])
        );
    }

    #[test]
    fn permutation_completion() {
        let mut m = BTreeMap::new();
        m.insert(v("x"), v("y"));
        let pi = Permutation::from_injective(m).unwrap();
        assert_eq!(pi.apply_var(&v("x")), v("y"));
        assert_eq!(pi.apply_var(&v("y")), v("x"));
        assert_eq!(pi.inverse().apply(&pi.apply(&t("f(x,y,z)"))), t("f(x,y,z)"));

        let mut m = BTreeMap::new();
        m.insert(v("x"), v("z"));
        m.insert(v("y"), v("z"));
        assert!(Permutation::from_injective(m).is_none());
    }

    #[test]
    fn rename_apart_is_fresh_and_invertible() {
        let avoid: IndexSet<Var> = [v("x")].into_iter().collect();
        let (pi, r) = rename_apart(&avoid, &t("f(x)"));
        let x2 = r.vars()[0].clone();
        assert!(!avoid.contains(&x2));
        assert_eq!(pi.inverse().apply(&r), t("f(x)"));

        let (pi, r) = rename_apart(&IndexSet::new(), &t("a"));
        assert!(pi.is_identity());
        assert_eq!(r, t("a"));

        let avoid: IndexSet<Var> = [v("x"), v("y")].into_iter().collect();
        let rule = (t("g(x)"), vec![(t("x"), t("y"))]);
        let (pi, renamed) = rename_apart(&avoid, &rule);
        assert!(renamed.var_set().iter().all(|w| !avoid.contains(w)));
        assert_eq!(renamed.rename(&pi.inverse()), rule);
    }

    #[test]
    fn rename_apart_avoids_own_suffixed_names() {
        let avoid: IndexSet<Var> = [v("x")].into_iter().collect();
        let subject = parse_term("f(x,x'1)", &["x", "x'1"]).unwrap();
        let (_, r) = rename_apart(&avoid, &subject);
        let vars = r.vars();
        assert_eq!(vars.len(), 2);
        assert!(vars.iter().all(|w| w != &v("x") && w != &v("x'1")));
    }
}
