//! Strong determinism, conditional critical pairs, contextual rewriting and
//! the confluence verdict.
//!
//! A strongly deterministic system that is quasi-reductive (hence
//! quasi-decreasing) is confluent when all of its conditional critical pairs
//! are joinable. Conversely, an unconditional critical pair whose sides have
//! disjoint, fully explored reduct sets is a genuine non-joinable peak.

use std::collections::BTreeMap;
use std::fmt;

use crate::order::{check_quasi_reductive, search_precedence, OrderReport, Precedence, DEFAULT_SEARCH_LIMIT};
use crate::rewrite::{join_sets, Budget, JoinWitness, Joinability, Reducts, ReductsBuilder, Rewriter, Step, StepResult};
use crate::rules::{conditions_to_string, ClassReport, Condition, Ctrs, Rule};
use crate::subst::{rename_apart, Permutation, Substitution};
use crate::term::{HasVars, Position, Term, Var};
use crate::unify::{matching, mgu, unifiable};

/// Why a term could not be shown strongly irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedexCandidate {
    pub position: Position,
    pub subterm: Term,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Yes,
    Unknown(RedexCandidate),
}

/// Sufficient check for strong irreducibility: no non-variable subterm of `t`
/// unifies with a (renamed apart) left-hand side.
///
/// A redex in `tσ` for normalized `σ` can only sit at a non-variable
/// position of `t`, and then that subterm unifies with the rule's lhs.
pub fn strongly_irreducible(ctrs: &Ctrs, t: &Term) -> Irreducibility {
    let tvars = t.vars();
    for (p, sub) in t.subterms() {
        if sub.is_var() {
            continue;
        }
        for rule in ctrs.rules() {
            if rule.lhs.root() != sub.root() {
                continue;
            }
            let (_, lhs) = rename_apart(&tvars, &rule.lhs);
            if unifiable(sub, &lhs) {
                return Irreducibility::Unknown(RedexCandidate {
                    position: p,
                    subterm: sub.clone(),
                    rule: rule.label.clone(),
                });
            }
        }
    }
    Irreducibility::Yes
}

/// A condition right-hand side that failed the irreducibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityFailure {
    pub rule: String,
    pub condition: usize,
    pub term: Term,
    pub witness: RedexCandidate,
}

impl fmt::Display for IrreducibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule {}: condition {} rhs {} not strongly irreducible ({} at {} unifies with lhs of rule {})",
            self.rule, self.condition, self.term, self.witness.subterm, self.witness.position, self.witness.rule
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminismReport {
    pub three_ctrs: ClassReport,
    pub deterministic: ClassReport,
    pub irreducible: Vec<IrreducibilityFailure>,
}

impl DeterminismReport {
    pub fn holds(&self) -> bool {
        self.three_ctrs.holds() && self.deterministic.holds() && self.irreducible.is_empty()
    }

    pub fn diagnostics(&self) -> Vec<String> {
        self.three_ctrs
            .violations
            .iter()
            .chain(&self.deterministic.violations)
            .map(|v| v.to_string())
            .chain(self.irreducible.iter().map(|f| f.to_string()))
            .collect()
    }
}

/// 3-CTRS, deterministic, and every condition rhs strongly irreducible.
pub fn strongly_deterministic(ctrs: &Ctrs) -> DeterminismReport {
    let mut irreducible = Vec::new();
    for r in ctrs.rules() {
        for (i, (_, t)) in r.conditions.iter().enumerate() {
            if let Irreducibility::Unknown(witness) = strongly_irreducible(ctrs, t) {
                irreducible.push(IrreducibilityFailure {
                    rule: r.label.clone(),
                    condition: i + 1,
                    term: t.clone(),
                    witness,
                });
            }
        }
    }
    DeterminismReport {
        three_ctrs: ctrs.is_3ctrs(),
        deterministic: ctrs.is_deterministic(),
        irreducible,
    }
}

/// A conditional critical pair `u ≈ v ⇐ c` from overlapping the inner rule
/// into the outer rule's lhs at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ccp {
    pub u: Term,
    pub v: Term,
    pub conditions: Vec<Condition>,
    pub outer: String,
    pub inner: String,
    pub position: Position,
    /// Renaming that made the inner rule variable-disjoint from the outer one.
    pub inner_renaming: Permutation,
    pub mgu: Substitution,
}

impl Ccp {
    /// The overlapped term `ℓ₁μ`.
    pub fn peak(&self, ctrs: &Ctrs) -> Option<Term> {
        Some(self.mgu.apply(&ctrs.rule(&self.outer)?.lhs))
    }
}

impl fmt::Display for Ccp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.u, self.v)?;
        if !self.conditions.is_empty() {
            write!(f, " | {}", conditions_to_string(&self.conditions))?;
        }
        Ok(())
    }
}

/// All conditional critical pairs, ordered by (outer rule, inner rule, position).
///
/// Root overlaps of a rule with a variant of itself are skipped. A root
/// overlap whose pair is the mirror image (sides swapped, same condition
/// sequence, up to renaming) of the pair already listed for the two rules the
/// other way round is skipped as well.
pub fn critical_pairs(ctrs: &Ctrs) -> Vec<Ccp> {
    let mut out: Vec<Ccp> = Vec::new();
    for outer in ctrs.rules() {
        let outer_vars = outer.var_set();
        for inner in ctrs.rules() {
            let (renaming, inner_renamed) = rename_apart(&outer_vars, inner);
            for p in outer.lhs.function_positions() {
                if p.is_root() && outer.variant_of(inner).is_some() {
                    continue;
                }
                let sub = outer.lhs.get(&p).expect("function position");
                let Some(mu) = mgu(sub, &inner_renamed.lhs) else {
                    continue;
                };
                let replaced = outer
                    .lhs
                    .replace_at(&p, inner_renamed.rhs.clone())
                    .expect("function position");
                let mut conditions = mu.apply_pairs(&outer.conditions);
                conditions.extend(mu.apply_pairs(&inner_renamed.conditions));
                let ccp = tidy(Ccp {
                    u: mu.apply(&replaced),
                    v: mu.apply(&outer.rhs),
                    conditions,
                    outer: outer.label.clone(),
                    inner: inner.label.clone(),
                    position: p.clone(),
                    inner_renaming: renaming.clone(),
                    mgu: mu,
                });
                let swapped = |c: &Ccp| c.position.is_root() && c.outer == ccp.inner && c.inner == ccp.outer;
                if p.is_root() && out.iter().any(|c| swapped(c) && is_mirror(c, &ccp)) {
                    continue;
                }
                out.push(ccp);
            }
        }
    }
    out
}

fn as_rule(u: &Term, v: &Term, conds: &[Condition]) -> Rule {
    Rule::new("", u.clone(), v.clone(), conds.to_vec())
}

fn is_mirror(a: &Ccp, b: &Ccp) -> bool {
    as_rule(&a.u, &a.v, &a.conditions)
        .variant_of(&as_rule(&b.v, &b.u, &b.conditions))
        .is_some()
}

/// Renames primed variables of a pair back to their base names where free.
fn tidy(mut ccp: Ccp) -> Ccp {
    let vars = as_rule(&ccp.u, &ccp.v, &ccp.conditions).var_set();
    let mut map = BTreeMap::new();
    let mut used: Vec<Var> = vars.iter().cloned().collect();
    for x in &vars {
        if let Some(i) = x.as_str().find('\'') {
            let base = Var::new(&x.as_str()[..i]);
            if i > 0 && !used.contains(&base) {
                used.push(base.clone());
                map.insert(x.clone(), base);
            }
        }
    }
    if map.is_empty() {
        return ccp;
    }
    let pi = Permutation::from_injective(map).expect("distinct base names");
    let rename = pi.to_substitution();
    ccp.u = pi.apply(&ccp.u);
    ccp.v = pi.apply(&ccp.v);
    ccp.conditions = ccp.conditions.iter().map(|(s, t)| (pi.apply(s), pi.apply(t))).collect();
    ccp.mgu = ccp.mgu.compose(&rename);
    ccp
}

/// Label prefix of hypothesis steps in contextual derivations.
pub const HYPOTHESIS_LABEL: &str = "hyp";

/// Closure of `t` under rewriting and under the hypotheses used as
/// unconditional rules `s → t'`.
///
/// A hypothesis applies only where its left side occurs literally: its
/// variables are never instantiated.
pub fn contextual_reducts(ctrs: &Ctrs, hypotheses: &[Condition], t: &Term, budget: Budget) -> Reducts {
    let rw = Rewriter::new(ctrs, budget);
    contextual_with(&rw, hypotheses, t)
}

fn contextual_with(rw: &Rewriter<'_>, hypotheses: &[Condition], t: &Term) -> Reducts {
    if hypotheses.is_empty() {
        return (*rw.reducts(t)).clone();
    }
    let budget = rw.budget();
    let mut b = ReductsBuilder::new(t.clone());
    let mut expanded = 0;
    while let Some((i, term)) = b.pop() {
        if expanded >= budget.fuel {
            b.set_incomplete();
            break;
        }
        expanded += 1;
        let result = rw.step(&term);
        if !result.is_definite() {
            b.set_incomplete();
        }
        let mut reducible = !matches!(result, StepResult::NoStep | StepResult::BudgetExhausted);
        for step in result.steps() {
            b.push(i, step.clone(), budget.max_term_size);
        }
        for (p, sub) in term.subterms() {
            for (k, (s, rhs)) in hypotheses.iter().enumerate() {
                if sub == s {
                    reducible = true;
                    let step = Step {
                        rule: format!("{HYPOTHESIS_LABEL}{}", k + 1),
                        position: p.clone(),
                        renaming: Permutation::identity(),
                        substitution: Substitution::new(),
                        condition_derivations: Vec::new(),
                        result: term.replace_at(&p, rhs.clone()).expect("own position"),
                    };
                    b.push(i, step, budget.max_term_size);
                }
            }
        }
        if result.is_definite() {
            b.mark(i, !reducible);
        }
    }
    b.finish()
}

/// Why a condition list cannot be satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// Conditions `i` and `j` (1-based) share a left side but demand
    /// right sides that can never meet.
    Conflict { first: usize, second: usize },
    /// The ground left side of condition `i` never reaches an instance of its right side.
    Unreachable { condition: usize },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::Conflict { first, second } => {
                write!(f, "conditions {first} and {second} have equal left sides and incompatible right sides")
            }
            Infeasibility::Unreachable { condition } => {
                write!(f, "condition {condition} cannot be reached")
            }
        }
    }
}

/// Tries to refute a condition list. `None` means nothing could be refuted.
///
/// Two conditions `s ≈ t₁`, `s ≈ t₂` conflict when `t₁` and `t₂` do not unify
/// and either both are strongly irreducible, or both are ground with
/// disjoint, fully explored contextual reduct sets. A condition `s ≈ t` with
/// ground `s` is unreachable when the fully explored contextual reducts of
/// `s` under the other conditions contain no instance of `t`.
pub fn conditions_infeasible(ctrs: &Ctrs, conds: &[Condition], budget: Budget) -> Option<Infeasibility> {
    let rw = Rewriter::new(ctrs, budget);
    infeasible_with(&rw, conds)
}

fn infeasible_with(rw: &Rewriter<'_>, conds: &[Condition]) -> Option<Infeasibility> {
    let ctrs = rw.ctrs();
    for (i, (s1, t1)) in conds.iter().enumerate() {
        for (j, (s2, t2)) in conds.iter().enumerate().skip(i + 1) {
            if s1 != s2 || t1 == t2 || unifiable(t1, t2) {
                continue;
            }
            let irreducible = strongly_irreducible(ctrs, t1) == Irreducibility::Yes
                && strongly_irreducible(ctrs, t2) == Irreducibility::Yes;
            let separated = t1.is_ground() && t2.is_ground() && {
                let r1 = contextual_with(rw, conds, t1);
                let r2 = contextual_with(rw, conds, t2);
                join_sets(&r1, &r2) == Joinability::No
            };
            if irreducible || separated {
                return Some(Infeasibility::Conflict {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    for (i, (s, t)) in conds.iter().enumerate() {
        if !s.is_ground() {
            continue;
        }
        let others: Vec<Condition> = conds
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, c)| c.clone())
            .collect();
        let reach = contextual_with(rw, &others, s);
        if reach.exhaustive() && reach.terms().all(|r| matching(t, r).is_none()) {
            return Some(Infeasibility::Unreachable { condition: i + 1 });
        }
    }
    None
}

/// How a critical pair was shown joinable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinReason {
    Identical,
    Infeasible(Infeasibility),
    CommonReduct(JoinWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CcpOutcome {
    Joinable(JoinReason),
    /// Unconditional pair whose sides have disjoint, fully explored reduct sets.
    NotJoinable { left: Vec<Term>, right: Vec<Term> },
    Unknown(String),
}

impl CcpOutcome {
    pub fn is_joinable(&self) -> bool {
        matches!(self, CcpOutcome::Joinable(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            CcpOutcome::Joinable(_) => "joinable",
            CcpOutcome::NotJoinable { .. } => "not-joinable",
            CcpOutcome::Unknown(_) => "unknown",
        }
    }
}

/// Decides joinability of one critical pair.
pub fn ccp_joinable(ctrs: &Ctrs, ccp: &Ccp, budget: Budget) -> CcpOutcome {
    let rw = Rewriter::new(ctrs, budget);
    joinable_with(&rw, ccp)
}

fn joinable_with(rw: &Rewriter<'_>, ccp: &Ccp) -> CcpOutcome {
    if ccp.u == ccp.v {
        return CcpOutcome::Joinable(JoinReason::Identical);
    }
    if let Some(why) = infeasible_with(rw, &ccp.conditions) {
        return CcpOutcome::Joinable(JoinReason::Infeasible(why));
    }
    let ru = contextual_with(rw, &ccp.conditions, &ccp.u);
    let rv = contextual_with(rw, &ccp.conditions, &ccp.v);
    match join_sets(&ru, &rv) {
        Joinability::Yes(w) => CcpOutcome::Joinable(JoinReason::CommonReduct(w)),
        Joinability::No if ccp.conditions.is_empty() => CcpOutcome::NotJoinable {
            left: ru.terms().cloned().collect(),
            right: rv.terms().cloned().collect(),
        },
        Joinability::No => CcpOutcome::Unknown(
            "sides have disjoint contextual reducts; no satisfying substitution searched".into(),
        ),
        Joinability::Unknown => CcpOutcome::Unknown("no common reduct found within budget".into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Maybe,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Maybe => "MAYBE",
        })
    }
}

/// Result of the precedence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    Found(OrderReport),
    /// No precedence found; the report shows the obligations under the hint
    /// (or the empty precedence).
    NotFound { limit: usize, report: OrderReport },
}

impl OrderOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, OrderOutcome::Found(_))
    }

    pub fn report(&self) -> &OrderReport {
        match self {
            OrderOutcome::Found(r) | OrderOutcome::NotFound { report: r, .. } => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub determinism: DeterminismReport,
    pub order: OrderOutcome,
    pub ccps: Vec<(Ccp, CcpOutcome)>,
    /// One line per reason the answer is not YES.
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub trace: Trace,
}

/// Runs the full pipeline with the default precedence search limit.
pub fn decide_confluence(ctrs: &Ctrs, hint: Option<&Precedence>, budget: Budget) -> Verdict {
    decide_confluence_with_limit(ctrs, hint, budget, DEFAULT_SEARCH_LIMIT)
}

/// YES needs strong determinism, a precedence making the system
/// quasi-reductive, and every critical pair joinable. NO needs one
/// unconditional critical pair that is not joinable, whatever the other checks
/// say. Everything else is MAYBE.
pub fn decide_confluence_with_limit(
    ctrs: &Ctrs,
    hint: Option<&Precedence>,
    budget: Budget,
    search_limit: usize,
) -> Verdict {
    let determinism = strongly_deterministic(ctrs);
    let order = match search_precedence(ctrs, hint, search_limit) {
        Some(p) => OrderOutcome::Found(check_quasi_reductive(ctrs, &p)),
        None => OrderOutcome::NotFound {
            limit: search_limit,
            report: check_quasi_reductive(ctrs, hint.unwrap_or(&Precedence::empty())),
        },
    };
    let rw = Rewriter::new(ctrs, budget);
    let ccps: Vec<(Ccp, CcpOutcome)> = critical_pairs(ctrs)
        .into_iter()
        .map(|c| {
            let outcome = joinable_with(&rw, &c);
            (c, outcome)
        })
        .collect();

    let mut reasons = Vec::new();
    if !determinism.holds() {
        reasons.push("not strongly deterministic".to_string());
    }
    if !order.holds() {
        reasons.push(format!("no quasi-reductive precedence found within {search_limit} candidates"));
    }
    for (k, (_, outcome)) in ccps.iter().enumerate() {
        match outcome {
            CcpOutcome::Joinable(_) => {}
            CcpOutcome::NotJoinable { .. } => reasons.push(format!("critical pair {} is not joinable", k + 1)),
            CcpOutcome::Unknown(why) => reasons.push(format!("critical pair {}: {why}", k + 1)),
        }
    }

    let answer = if ccps.iter().any(|(_, o)| matches!(o, CcpOutcome::NotJoinable { .. })) {
        Answer::No
    } else if reasons.is_empty() {
        Answer::Yes
    } else {
        Answer::Maybe
    };
    Verdict {
        answer,
        trace: Trace {
            determinism,
            order,
            ccps,
            reasons,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ctrs, parse_term_in};

    const MIN: &str = "(VAR x y)(RULES
        min(x,y) -> x | le(x,y) == true
        min(x,y) -> y | le(x,y) == false
        le(0,y) -> true
        le(s(x),0) -> false
        le(s(x),s(y)) -> le(x,y))";
    const EVEN: &str = "(VAR x)(RULES
        even(0) -> true
        even(s(x)) -> odd(x)
        odd(0) -> false
        odd(s(x)) -> even(x))";

    fn sys(src: &str) -> Ctrs {
        parse_ctrs(src).unwrap()
    }

    fn t(r: &Ctrs, s: &str) -> Term {
        parse_term_in(r, s).unwrap()
    }

    #[test]
    fn strong_irreducibility() {
        let r = sys(MIN);
        assert_eq!(strongly_irreducible(&r, &t(&r, "true")), Irreducibility::Yes);
        match strongly_irreducible(&r, &t(&r, "le(x,y)")) {
            Irreducibility::Unknown(w) => assert_eq!(w.rule, "3"),
            other => panic!("{other:?}"),
        }
        assert_eq!(strongly_irreducible(&r, &Term::var("x")), Irreducibility::Yes);
    }

    #[test]
    fn strong_determinism() {
        assert!(strongly_deterministic(&sys(MIN)).holds());
        let r = sys("(VAR x y)(RULES f(x) -> y | g(x) == h(y) h(a) -> b)");
        let rep = strongly_deterministic(&r);
        assert!(!rep.holds());
        assert_eq!(rep.irreducible.len(), 1);
        assert_eq!(rep.irreducible[0].term.to_string(), "h(y)");
        assert_eq!(rep.irreducible[0].witness.rule, "2");
        assert!(strongly_deterministic(&sys("(VAR x)(RULES f(x) -> x)")).holds());
        assert!(!strongly_deterministic(&sys("(VAR x y)(RULES f(x) -> y)")).holds());
    }

    #[test]
    fn critical_pair_examples() {
        assert!(critical_pairs(&sys(EVEN)).is_empty());

        let r = sys("(VAR x)(RULES f(g(x)) -> x g(a) -> b)");
        let cps = critical_pairs(&r);
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].u, t(&r, "f(b)"));
        assert_eq!(cps[0].v, t(&r, "a"));
        assert!(cps[0].conditions.is_empty());
        assert_eq!(cps[0].position, Position::from(vec![1]));
        assert_eq!(cps[0].mgu.apply(&Term::var("x")), t(&r, "a"));

        let r = sys(MIN);
        let cps = critical_pairs(&r);
        assert_eq!(cps.len(), 2);
        assert!(cps.iter().all(|c| c.position.is_root()));
        assert_eq!((cps[0].outer.as_str(), cps[0].inner.as_str()), ("1", "2"));
        assert_eq!((cps[1].outer.as_str(), cps[1].inner.as_str()), ("2", "1"));
        assert_eq!(cps[0].to_string(), "y = x | le(x,y) == true, le(x,y) == false");
    }

    #[test]
    fn self_overlap_below_root_is_kept() {
        let r = sys("(VAR x)(RULES f(f(x)) -> a)");
        let cps = critical_pairs(&r);
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].position, Position::from(vec![1]));
    }

    #[test]
    fn fork_has_one_pair() {
        let r = sys("(VAR)(RULES a -> b a -> c)");
        let cps = critical_pairs(&r);
        assert_eq!(cps.len(), 1);
        assert_eq!((cps[0].u.to_string(), cps[0].v.to_string()), ("c".into(), "b".into()));
    }

    #[test]
    fn contextual_rewriting() {
        let r = sys(MIN);
        let b = Budget::default();
        let le = t(&r, "le(x,y)");
        let hyp_true = vec![(le.clone(), t(&r, "true"))];
        assert!(contextual_reducts(&r, &hyp_true, &le, b).contains(&t(&r, "true")));
        let plain = contextual_reducts(&r, &[], &le, b);
        let reference = crate::rewrite::reducts(&r, &le, b);
        assert_eq!(plain.terms().collect::<Vec<_>>(), reference.terms().collect::<Vec<_>>());
        let both = vec![(le.clone(), t(&r, "true")), (le.clone(), t(&r, "false"))];
        let red = contextual_reducts(&r, &both, &le, b);
        assert!(red.contains(&t(&r, "true")) && red.contains(&t(&r, "false")));
    }

    #[test]
    fn hypotheses_do_not_instantiate() {
        let r = sys("(VAR x y)(RULES a -> a)");
        let hyp = vec![(t(&r, "f(x)"), t(&r, "b"))];
        let red = contextual_reducts(&r, &hyp, &t(&r, "f(c)"), Budget::default());
        assert!(!red.contains(&t(&r, "b")));
    }

    #[test]
    fn infeasibility() {
        let r = sys(MIN);
        let b = Budget::default();
        let le = t(&r, "le(x,y)");
        let c = vec![(le.clone(), t(&r, "true")), (le, t(&r, "false"))];
        assert_eq!(
            conditions_infeasible(&r, &c, b),
            Some(Infeasibility::Conflict { first: 1, second: 2 })
        );
        assert_eq!(conditions_infeasible(&r, &[], b), None);
        let r = sys("(VAR)(RULES a -> b)");
        assert_eq!(conditions_infeasible(&r, &[(t(&r, "a"), t(&r, "b"))], b), None);
        assert_eq!(
            conditions_infeasible(&r, &[(t(&r, "b"), t(&r, "a"))], b),
            Some(Infeasibility::Unreachable { condition: 1 })
        );
    }

    #[test]
    fn nonground_lhs_is_never_declared_unreachable() {
        let r = sys("(VAR x)(RULES f(x) -> x)");
        let c = vec![(Term::var("x"), t(&r, "a"))];
        assert_eq!(conditions_infeasible(&r, &c, Budget::default()), None);
    }

    #[test]
    fn ccp_joinability() {
        let b = Budget::default();
        let r = sys(MIN);
        let cps = critical_pairs(&r);
        assert!(matches!(
            ccp_joinable(&r, &cps[0], b),
            CcpOutcome::Joinable(JoinReason::Infeasible(_))
        ));

        let r = sys("(VAR x)(RULES f(g(x)) -> x g(a) -> b)");
        let cps = critical_pairs(&r);
        match ccp_joinable(&r, &cps[0], b) {
            CcpOutcome::NotJoinable { left, right } => {
                assert_eq!(left, vec![t(&r, "f(b)")]);
                assert_eq!(right, vec![t(&r, "a")]);
            }
            other => panic!("{other:?}"),
        }

        let same = Ccp {
            u: t(&r, "a"),
            v: t(&r, "a"),
            conditions: vec![(t(&r, "a"), t(&r, "b"))],
            outer: "1".into(),
            inner: "1".into(),
            position: Position::root(),
            inner_renaming: Permutation::identity(),
            mgu: Substitution::new(),
        };
        assert_eq!(ccp_joinable(&r, &same, b), CcpOutcome::Joinable(JoinReason::Identical));
    }

    #[test]
    fn verdicts() {
        let b = Budget::default();
        assert_eq!(decide_confluence(&sys(EVEN), None, b).answer, Answer::Yes);
        assert_eq!(decide_confluence(&sys(MIN), None, b).answer, Answer::Yes);
        assert_eq!(decide_confluence(&sys("(VAR)(RULES a -> b a -> c)"), None, b).answer, Answer::No);
        assert_eq!(decide_confluence(&sys("(VAR x)(RULES f(x) -> f(x))"), None, b).answer, Answer::Maybe);
        let v = decide_confluence(&sys("(VAR x y)(RULES f(x) -> y | g(x) == h(y) h(a) -> b)"), None, b);
        assert_eq!(v.answer, Answer::Maybe);
        assert!(v.trace.determinism.diagnostics().iter().any(|d| d.contains("h(y)")));
    }

    #[test]
    fn renamed_duplicate_rule_keeps_verdict() {
        let b = Budget::default();
        let base = decide_confluence(&sys(MIN), None, b);
        let dup = sys(&MIN.replace("le(s(x),0) -> false", "le(s(x),0) -> false le(s(z),0) -> false").replace("(VAR x y)", "(VAR x y z)"));
        assert_eq!(decide_confluence(&dup, None, b).answer, base.answer);
    }
}
