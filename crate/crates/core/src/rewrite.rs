//! Bounded conditional rewriting.
//!
//! The rewrite relation of a conditional system is defined inductively by the
//! nesting depth of condition evaluations. [`Rewriter`] computes it up to a
//! fixed depth, exploring reduct sets breadth-first under a node budget, and
//! tracks whether each answer is definite or was cut off by the budget.
//!
//! Conditions `sᵢ ≈ tᵢ` are evaluated left to right: the reducts of `sᵢσ` are
//! enumerated and `tᵢ` is matched against each of them, which binds the extra
//! variables of deterministic rules.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use indexmap::IndexSet;

use crate::rules::{Condition, Ctrs, Rule};
use crate::subst::{rename_apart, Permutation, Substitution};
use crate::term::{HasVars, Position, Term, Var};
use crate::unify::{match_into, matching};

/// Resource limits for one analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum nesting of condition evaluations.
    pub cond_depth: usize,
    /// Maximum node expansions per reachability search.
    pub fuel: usize,
    /// Largest term (in nodes) kept during a search.
    pub max_term_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cond_depth: 8,
            fuel: 10_000,
            max_term_size: 500,
        }
    }
}

/// One rewrite step `t →ρ,p u` with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub position: Position,
    /// Renaming applied to the rule before matching.
    pub renaming: Permutation,
    /// Final substitution over the renamed rule's variables.
    pub substitution: Substitution,
    /// For each condition, the derivation `sᵢσ →* tᵢσ` (first and last term included).
    pub condition_derivations: Vec<Vec<Term>>,
    pub result: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    /// Successors, duplicates removed. `complete` is false when some
    /// condition evaluation was cut off, so further successors may exist.
    Steps { steps: Vec<Step>, complete: bool },
    /// No successor exists.
    NoStep,
    /// No successor found, but the budget ran out before this was certain.
    BudgetExhausted,
}

impl StepResult {
    pub fn steps(&self) -> &[Step] {
        match self {
            StepResult::Steps { steps, .. } => steps,
            _ => &[],
        }
    }

    pub fn successors(&self) -> Vec<Term> {
        self.steps().iter().map(|s| s.result.clone()).collect()
    }

    pub fn is_definite(&self) -> bool {
        !matches!(
            self,
            StepResult::BudgetExhausted | StepResult::Steps { complete: false, .. }
        )
    }
}

/// Substitutions satisfying a condition list, with their derivations.
#[derive(Clone, Debug, Default)]
pub struct Solutions {
    pub solutions: Vec<(Substitution, Vec<Vec<Term>>)>,
    /// True when every reduct set consulted was fully explored.
    pub exhaustive: bool,
}

impl Solutions {
    pub fn substitutions(&self) -> Vec<&Substitution> {
        self.solutions.iter().map(|(s, _)| s).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NodeStatus {
    Unexpanded,
    Normal,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug)]
struct Node {
    term: Term,
    parent: Option<(usize, Step)>,
    status: NodeStatus,
}

/// The reducts of a term, in breadth-first order, with derivations.
#[derive(Clone, Debug)]
pub struct Reducts {
    nodes: Vec<Node>,
    index: HashMap<Term, usize>,
    exhaustive: bool,
}

impl Reducts {
    fn singleton(t: Term) -> Reducts {
        let mut index = HashMap::new();
        index.insert(t.clone(), 0);
        Reducts {
            nodes: vec![Node {
                term: t,
                parent: None,
                status: NodeStatus::Unexpanded,
            }],
            index,
            exhaustive: true,
        }
    }

    pub fn start(&self) -> &Term {
        &self.nodes[0].term
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.nodes.iter().map(|n| &n.term)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index.contains_key(t)
    }

    /// Whether the set is the full closure (within the condition depth).
    pub fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// Members known to have no successor.
    pub fn normal_forms(&self) -> Vec<Term> {
        self.nodes
            .iter()
            .filter(|n| n.status == NodeStatus::Normal)
            .map(|n| n.term.clone())
            .collect()
    }

    /// The derivation from the start term to `t`, both included.
    pub fn derivation(&self, t: &Term) -> Option<Vec<Term>> {
        Some(self.path(*self.index.get(t)?).0)
    }

    /// The steps leading from the start term to `t`.
    pub fn derivation_steps(&self, t: &Term) -> Option<Vec<Step>> {
        Some(self.path(*self.index.get(t)?).1)
    }

    fn path(&self, mut i: usize) -> (Vec<Term>, Vec<Step>) {
        let mut terms = vec![self.nodes[i].term.clone()];
        let mut steps = Vec::new();
        while let Some((p, step)) = &self.nodes[i].parent {
            steps.push(step.clone());
            i = *p;
            terms.push(self.nodes[i].term.clone());
        }
        terms.reverse();
        steps.reverse();
        (terms, steps)
    }
}

/// Common reduct of two terms with both derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinWitness {
    pub common: Term,
    pub left: Vec<Term>,
    pub right: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinability {
    Yes(JoinWitness),
    /// Both reduct sets are fully explored and disjoint.
    No,
    Unknown,
}

/// Conditional rewriting over one system with one budget, memoizing reduct
/// sets per (term, depth).
pub struct Rewriter<'a> {
    ctrs: &'a Ctrs,
    budget: Budget,
    cache: RefCell<HashMap<(Term, usize), Rc<Reducts>>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(ctrs: &'a Ctrs, budget: Budget) -> Self {
        Rewriter {
            ctrs,
            budget,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn ctrs(&self) -> &Ctrs {
        self.ctrs
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// All one-step successors of `t` at the budget's condition depth.
    pub fn step(&self, t: &Term) -> StepResult {
        self.step_at(t, self.budget.cond_depth)
    }

    /// All one-step successors of `t` whose conditions are evaluated at nesting
    /// depth below `depth`. At depth 0 no conditional rule fires.
    pub fn step_at(&self, t: &Term, depth: usize) -> StepResult {
        let tvars = t.vars();
        let mut steps: Vec<Step> = Vec::new();
        let mut seen: IndexSet<Term> = IndexSet::new();
        let mut complete = true;

        for (p, sub) in t.subterms() {
            let Some(root) = sub.root() else { continue };
            for rule in self.ctrs.rules() {
                if rule.lhs.root() != Some(root) {
                    continue;
                }
                let (renaming, rule) = renamed_apart(&tvars, rule);
                let Some(sigma) = matching(&rule.lhs, sub) else {
                    continue;
                };
                let solutions = if rule.conditions.is_empty() {
                    vec![(sigma, Vec::new())]
                } else if depth == 0 {
                    complete = false;
                    continue;
                } else {
                    let sols = self.eval_conditions_at(&rule.conditions, sigma, depth - 1);
                    complete &= sols.exhaustive;
                    sols.solutions
                };
                for (sigma, derivs) in solutions {
                    let rhs = sigma.apply(&rule.rhs);
                    if rule.rhs.vars().iter().any(|x| !sigma.contains(x)) {
                        // unbound right-hand-side variables stand for arbitrary terms
                        complete = false;
                    }
                    let result = t.replace_at(&p, rhs).expect("position taken from the term");
                    if seen.insert(result.clone()) {
                        steps.push(Step {
                            rule: rule.label.clone(),
                            position: p.clone(),
                            renaming: renaming.clone(),
                            substitution: sigma,
                            condition_derivations: derivs,
                            result,
                        });
                    }
                }
            }
        }

        match (steps.is_empty(), complete) {
            (false, _) => StepResult::Steps { steps, complete },
            (true, true) => StepResult::NoStep,
            (true, false) => StepResult::BudgetExhausted,
        }
    }

    /// Extensions of `sigma` satisfying `conds` left to right.
    pub fn eval_conditions(&self, conds: &[Condition], sigma: Substitution) -> Solutions {
        self.eval_conditions_at(conds, sigma, self.budget.cond_depth)
    }

    fn eval_conditions_at(&self, conds: &[Condition], sigma: Substitution, depth: usize) -> Solutions {
        let mut exhaustive = true;
        let mut frontier: Vec<(Substitution, Vec<Vec<Term>>)> = vec![(sigma, Vec::new())];
        for (s, t) in conds {
            let mut next: Vec<(Substitution, Vec<Vec<Term>>)> = Vec::new();
            for (sigma, derivs) in &frontier {
                if s.vars().iter().any(|x| !sigma.contains(x)) {
                    // sᵢ not fully instantiated: only instances treating the
                    // unbound variables as constants are explored
                    exhaustive = false;
                }
                let start = sigma.apply(s);
                let reach = self.reducts_at(&start, depth);
                exhaustive &= reach.exhaustive;
                for (i, node) in reach.nodes.iter().enumerate() {
                    let mut ext = sigma.clone();
                    if match_into(t, &node.term, &mut ext) && !next.iter().any(|(e, _)| e == &ext) {
                        let mut d = derivs.clone();
                        d.push(reach.path(i).0);
                        next.push((ext, d));
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        Solutions {
            solutions: frontier,
            exhaustive,
        }
    }

    /// The reducts of `t` at the budget's condition depth.
    pub fn reducts(&self, t: &Term) -> Rc<Reducts> {
        self.reducts_at(t, self.budget.cond_depth)
    }

    fn reducts_at(&self, t: &Term, depth: usize) -> Rc<Reducts> {
        let key = (t.clone(), depth);
        if let Some(r) = self.cache.borrow().get(&key) {
            return Rc::clone(r);
        }
        let r = Rc::new(self.explore(t, depth));
        self.cache.borrow_mut().insert(key, Rc::clone(&r));
        r
    }

    fn explore(&self, t: &Term, depth: usize) -> Reducts {
        let mut reach = Reducts::singleton(t.clone());
        let mut i = 0;
        while i < reach.nodes.len() {
            if i >= self.budget.fuel {
                reach.exhaustive = false;
                break;
            }
            let result = self.step_at(&reach.nodes[i].term, depth);
            reach.nodes[i].status = match &result {
                StepResult::NoStep => NodeStatus::Normal,
                StepResult::BudgetExhausted => NodeStatus::Unknown,
                StepResult::Steps { .. } => NodeStatus::Reducible,
            };
            if !result.is_definite() {
                reach.exhaustive = false;
            }
            if let StepResult::Steps { steps, .. } = result {
                for step in steps {
                    if reach.index.contains_key(&step.result) {
                        continue;
                    }
                    if step.result.size() > self.budget.max_term_size {
                        reach.exhaustive = false;
                        continue;
                    }
                    reach.index.insert(step.result.clone(), reach.nodes.len());
                    reach.nodes.push(Node {
                        term: step.result.clone(),
                        parent: Some((i, step)),
                        status: NodeStatus::Unexpanded,
                    });
                }
            }
            i += 1;
        }
        reach
    }

    /// Normal forms reachable from `t`, and whether the answer is complete.
    pub fn normal_forms(&self, t: &Term) -> (Vec<Term>, bool) {
        let reach = self.reducts(t);
        (reach.normal_forms(), reach.exhaustive)
    }

    pub fn joinable(&self, u: &Term, v: &Term) -> Joinability {
        let ru = self.reducts(u);
        let rv = self.reducts(v);
        join_sets(&ru, &rv)
    }
}

pub(crate) fn join_sets(ru: &Reducts, rv: &Reducts) -> Joinability {
    if let Some(common) = ru.terms().find(|w| rv.contains(w)) {
        return Joinability::Yes(JoinWitness {
            common: common.clone(),
            left: ru.derivation(common).expect("member"),
            right: rv.derivation(common).expect("member"),
        });
    }
    if ru.exhaustive && rv.exhaustive {
        Joinability::No
    } else {
        Joinability::Unknown
    }
}

/// Builds a reduct set from an explicit exploration (used by contextual rewriting).
pub(crate) struct ReductsBuilder {
    reach: Reducts,
    next: usize,
}

impl ReductsBuilder {
    pub(crate) fn new(t: Term) -> Self {
        ReductsBuilder {
            reach: Reducts::singleton(t),
            next: 0,
        }
    }

    /// The next unexpanded term and its index.
    pub(crate) fn pop(&mut self) -> Option<(usize, Term)> {
        let i = self.next;
        let node = self.reach.nodes.get(i)?;
        self.next += 1;
        Some((i, node.term.clone()))
    }

    pub(crate) fn set_incomplete(&mut self) {
        self.reach.exhaustive = false;
    }

    pub(crate) fn push(&mut self, from: usize, step: Step, max_size: usize) {
        if self.reach.index.contains_key(&step.result) {
            return;
        }
        if step.result.size() > max_size {
            self.reach.exhaustive = false;
            return;
        }
        self.reach.index.insert(step.result.clone(), self.reach.nodes.len());
        self.reach.nodes.push(Node {
            term: step.result.clone(),
            parent: Some((from, step)),
            status: NodeStatus::Unexpanded,
        });
    }

    pub(crate) fn mark(&mut self, i: usize, normal: bool) {
        self.reach.nodes[i].status = if normal {
            NodeStatus::Normal
        } else {
            NodeStatus::Reducible
        };
    }

    pub(crate) fn finish(self) -> Reducts {
        self.reach
    }
}

fn renamed_apart(avoid: &IndexSet<Var>, rule: &Rule) -> (Permutation, Rule) {
    if rule.var_set().iter().any(|x| avoid.contains(x)) {
        rename_apart(avoid, rule)
    } else {
        (Permutation::identity(), rule.clone())
    }
}

/// Every `u` with `t → u` derivable within the budget.
pub fn rewrite_step(ctrs: &Ctrs, t: &Term, budget: Budget) -> StepResult {
    Rewriter::new(ctrs, budget).step(t)
}

/// Left-to-right evaluation of `conds` starting from `sigma`.
pub fn eval_conditions(ctrs: &Ctrs, conds: &[Condition], sigma: Substitution, budget: Budget) -> Solutions {
    Rewriter::new(ctrs, budget).eval_conditions(conds, sigma)
}

/// Breadth-first closure of `t` under the rewrite relation.
pub fn reducts(ctrs: &Ctrs, t: &Term, budget: Budget) -> Reducts {
    let r = Rewriter::new(ctrs, budget).reducts(t);
    Rc::try_unwrap(r).unwrap_or_else(|rc| (*rc).clone())
}

pub fn normal_forms(ctrs: &Ctrs, t: &Term, budget: Budget) -> (Vec<Term>, bool) {
    Rewriter::new(ctrs, budget).normal_forms(t)
}

pub fn joinable(ctrs: &Ctrs, u: &Term, v: &Term, budget: Budget) -> Joinability {
    Rewriter::new(ctrs, budget).joinable(u, v)
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

    fn sys(src: &str) -> Ctrs {
        parse_ctrs(src).unwrap()
    }

    fn t(r: &Ctrs, s: &str) -> Term {
        parse_term_in(r, s).unwrap()
    }

    fn sorted(mut v: Vec<Term>) -> Vec<Term> {
        v.sort();
        v
    }

    #[test]
    fn step_at_every_redex() {
        let r = sys("(VAR)(RULES a -> b f(a,a) -> f(a,a))");
        let res = rewrite_step(&r, &t(&r, "f(a,a)"), Budget::default());
        let succ = sorted(res.successors());
        assert!(succ.contains(&t(&r, "f(b,a)")));
        assert!(succ.contains(&t(&r, "f(a,b)")));

        let r = sys("(VAR)(RULES a -> b)");
        let res = rewrite_step(&r, &t(&r, "f(a,a)"), Budget::default());
        assert_eq!(sorted(res.successors()), sorted(vec![t(&r, "f(b,a)"), t(&r, "f(a,b)")]));
    }

    #[test]
    fn conditional_step_in_min() {
        let r = sys(MIN);
        let res = rewrite_step(&r, &t(&r, "min(0,s(0))"), Budget { cond_depth: 1, ..Budget::default() });
        assert_eq!(res.successors(), vec![t(&r, "0")]);
        assert_eq!(res.steps()[0].rule, "1");
        assert!(res.is_definite());
    }

    #[test]
    fn failing_condition_is_no_step() {
        let r = sys("(VAR x)(RULES f(x) -> x | x == b)");
        for depth in 1..4 {
            let b = Budget { cond_depth: depth, ..Budget::default() };
            assert_eq!(rewrite_step(&r, &t(&r, "f(a)"), b), StepResult::NoStep);
        }
        // at depth 0 conditional rules never fire, and that is not a definite answer
        let b = Budget { cond_depth: 0, ..Budget::default() };
        assert_eq!(rewrite_step(&r, &t(&r, "f(a)"), b), StepResult::BudgetExhausted);
    }

    #[test]
    fn condition_evaluation() {
        let r = sys("(VAR x y)(RULES g(a) -> b)");
        let x = Var::new("x");
        let y = Var::new("y");
        let sigma = Substitution::from_pairs([(x.clone(), t(&r, "a"))]);

        let sols = eval_conditions(&r, &[], sigma.clone(), Budget::default());
        assert_eq!(sols.substitutions(), vec![&sigma]);

        let conds = vec![(t(&r, "g(x)"), t(&r, "y"))];
        let sols = eval_conditions(&r, &conds, sigma.clone(), Budget::default());
        let got: Vec<Substitution> = sols.substitutions().into_iter().cloned().collect();
        assert_eq!(
            got,
            vec![
                Substitution::from_pairs([(x.clone(), t(&r, "a")), (y.clone(), t(&r, "g(a)"))]),
                Substitution::from_pairs([(x.clone(), t(&r, "a")), (y.clone(), t(&r, "b"))]),
            ]
        );
        assert!(sols.exhaustive);

        let conds = vec![(t(&r, "g(x)"), t(&r, "b"))];
        let sols = eval_conditions(&r, &conds, sigma.clone(), Budget::default());
        assert_eq!(sols.substitutions(), vec![&sigma]);
        assert_eq!(sols.solutions[0].1, vec![vec![t(&r, "g(a)"), t(&r, "b")]]);
    }

    #[test]
    fn reduct_sets() {
        let r = sys("(VAR)(RULES a -> b)");
        let red = reducts(&r, &t(&r, "a"), Budget::default());
        assert_eq!(sorted(red.terms().cloned().collect()), vec![t(&r, "a"), t(&r, "b")]);
        assert!(red.exhaustive());

        let r = sys("(VAR)(RULES a -> a)");
        let red = reducts(&r, &t(&r, "a"), Budget { fuel: 3, ..Budget::default() });
        assert_eq!(red.terms().cloned().collect::<Vec<_>>(), vec![t(&r, "a")]);
        assert!(red.exhaustive());

        let r = sys(MIN);
        let red = reducts(&r, &t(&r, "le(s(0),0)"), Budget::default());
        assert_eq!(
            sorted(red.terms().cloned().collect()),
            sorted(vec![t(&r, "le(s(0),0)"), t(&r, "false")])
        );
        assert!(red.exhaustive());
    }

    #[test]
    fn fuel_and_size_caps_are_reported() {
        let r = sys("(VAR x)(RULES f(x) -> f(s(x)))");
        let red = reducts(&r, &t(&r, "f(0)"), Budget { fuel: 5, ..Budget::default() });
        assert!(!red.exhaustive());
        let red = reducts(&r, &t(&r, "f(0)"), Budget { max_term_size: 4, ..Budget::default() });
        assert!(!red.exhaustive());
        assert_eq!(red.len(), 3);
    }

    #[test]
    fn normal_form_sets() {
        let r = sys("(VAR)(RULES a -> b)");
        assert_eq!(normal_forms(&r, &t(&r, "a"), Budget::default()), (vec![t(&r, "b")], true));
        let r = sys("(VAR)(RULES a -> b a -> c)");
        let (nf, ex) = normal_forms(&r, &t(&r, "a"), Budget::default());
        assert_eq!(sorted(nf), vec![t(&r, "b"), t(&r, "c")]);
        assert!(ex);
        let r = sys(MIN);
        assert_eq!(normal_forms(&r, &t(&r, "min(0,0)"), Budget::default()), (vec![t(&r, "0")], true));
    }

    #[test]
    fn joinability() {
        let r = sys("(VAR)(RULES a -> c b -> c)");
        let b = Budget::default();
        match joinable(&r, &t(&r, "a"), &t(&r, "a"), b) {
            Joinability::Yes(w) => {
                assert_eq!(w.common, t(&r, "a"));
                assert_eq!(w.left.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        match joinable(&r, &t(&r, "a"), &t(&r, "b"), b) {
            Joinability::Yes(w) => assert_eq!(w.common, t(&r, "c")),
            other => panic!("{other:?}"),
        }
        let r = sys("(VAR)(RULES a -> b a -> c)");
        assert_eq!(joinable(&r, &t(&r, "b"), &t(&r, "c"), b), Joinability::No);
    }

    #[test]
    fn variables_of_subject_are_constants() {
        // rule variable x must not capture the subject's own x
        let r = sys("(VAR x y)(RULES f(x,y) -> g(y,x) | x == y)");
        let res = rewrite_step(&r, &t(&r, "f(x,x)"), Budget::default());
        assert_eq!(res.successors(), vec![t(&r, "g(x,x)")]);
        assert_eq!(rewrite_step(&r, &t(&r, "f(x,y)"), Budget::default()), StepResult::NoStep);
    }

    #[test]
    fn extra_variable_binding() {
        let r = sys("(VAR x y)(RULES f(x) -> y | g(x) == y g(a) -> b)");
        let res = rewrite_step(&r, &t(&r, "f(a)"), Budget::default());
        assert_eq!(sorted(res.successors()), sorted(vec![t(&r, "g(a)"), t(&r, "b")]));
    }
}
