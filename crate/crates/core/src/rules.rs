//! Conditional rewrite rules, rule systems and their syntactic classification.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::{IndexMap, IndexSet};

use crate::subst::{Permutation, Rename};
use crate::term::{HasVars, Sym, Term, Var};

/// An oriented condition `s ≈ t`, read as `sσ →* tσ`.
pub type Condition = (Term, Term);

/// A conditional rule `ℓ → r ⇐ s₁ ≈ t₁, …, sₙ ≈ tₙ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
    pub conditions: Vec<Condition>,
}

impl Rule {
    pub fn new(label: impl Into<String>, lhs: Term, rhs: Term, conditions: Vec<Condition>) -> Rule {
        Rule {
            label: label.into(),
            lhs,
            rhs,
            conditions,
        }
    }

    pub fn unconditional(label: impl Into<String>, lhs: Term, rhs: Term) -> Rule {
        Rule::new(label, lhs, rhs, Vec::new())
    }

    pub fn is_conditional(&self) -> bool {
        !self.conditions.is_empty()
    }

    /// `EV(ρ) = vars(c) − vars(ℓ)`.
    pub fn extra_vars(&self) -> IndexSet<Var> {
        let lhs = self.lhs.vars();
        self.conditions
            .var_set()
            .into_iter()
            .filter(|x| !lhs.contains(x))
            .collect()
    }

    /// Right-hand-side variables not bound by the left-hand side or the conditions.
    pub fn unbound_rhs_vars(&self) -> Vec<Var> {
        let bound = self.lhs_and_condition_vars();
        self.rhs
            .vars()
            .into_iter()
            .filter(|x| !bound.contains(x))
            .collect()
    }

    fn lhs_and_condition_vars(&self) -> IndexSet<Var> {
        let mut bound = self.lhs.vars();
        self.conditions.collect_vars_into(&mut bound);
        bound
    }

    /// For each condition index `i` (0-based), the variables of `sᵢ` not
    /// bound by `ℓ, t₁, …, tᵢ₋₁`.
    pub fn unbound_condition_vars(&self) -> Vec<(usize, Vec<Var>)> {
        let mut bound = self.lhs.vars();
        let mut out = Vec::new();
        for (i, (s, t)) in self.conditions.iter().enumerate() {
            let missing: Vec<Var> = s.vars().into_iter().filter(|x| !bound.contains(x)).collect();
            if !missing.is_empty() {
                out.push((i, missing));
            }
            t.collect_vars(&mut bound);
        }
        out
    }

    /// The permutation `π` with `self π = other`, if the rules are variants.
    ///
    /// Labels are not compared.
    pub fn variant_of(&self, other: &Rule) -> Option<Permutation> {
        if self.conditions.len() != other.conditions.len() {
            return None;
        }
        let mut map: BTreeMap<Var, Var> = BTreeMap::new();
        let mut rev: BTreeMap<Var, Var> = BTreeMap::new();
        let pairs = std::iter::once((&self.lhs, &other.lhs))
            .chain(std::iter::once((&self.rhs, &other.rhs)))
            .chain(
                self.conditions
                    .iter()
                    .zip(&other.conditions)
                    .flat_map(|((s1, t1), (s2, t2))| [(s1, s2), (t1, t2)]),
            );
        for (a, b) in pairs {
            if !rename_match(a, b, &mut map, &mut rev) {
                return None;
            }
        }
        Permutation::from_injective(map)
    }
}

fn rename_match(
    a: &Term,
    b: &Term,
    map: &mut BTreeMap<Var, Var>,
    rev: &mut BTreeMap<Var, Var>,
) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (map.get(x), rev.get(y)) {
            (Some(y2), _) => y2 == y,
            (None, Some(_)) => false,
            (None, None) => {
                map.insert(x.clone(), y.clone());
                rev.insert(y.clone(), x.clone());
                true
            }
        },
        (Term::App(f, fs), Term::App(g, gs)) => {
            f == g
                && fs.len() == gs.len()
                && fs.iter().zip(gs).all(|(s, t)| rename_match(s, t, map, rev))
        }
        _ => false,
    }
}

impl HasVars for Rule {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        self.lhs.collect_vars(out);
        self.rhs.collect_vars(out);
        self.conditions.collect_vars_into(out);
    }
}

impl Rename for Rule {
    fn rename(&self, pi: &Permutation) -> Self {
        Rule {
            label: self.label.clone(),
            lhs: pi.apply(&self.lhs),
            rhs: pi.apply(&self.rhs),
            conditions: self.conditions.rename(pi),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)?;
        if !self.conditions.is_empty() {
            f.write_str(" | ")?;
            fmt_conditions(f, &self.conditions)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.label, self)
    }
}

pub(crate) fn fmt_conditions(f: &mut fmt::Formatter<'_>, conds: &[Condition]) -> fmt::Result {
    for (i, (s, t)) in conds.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{s} == {t}")?;
    }
    Ok(())
}

/// Renders a condition list as `s1 == t1, s2 == t2`.
pub fn conditions_to_string(conds: &[Condition]) -> String {
    struct Conds<'a>(&'a [Condition]);
    impl fmt::Display for Conds<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_conditions(f, self.0)
        }
    }
    Conds(conds).to_string()
}

/// An oriented conditional term rewrite system.
#[derive(Clone, PartialEq, Eq)]
pub struct Ctrs {
    signature: IndexMap<Sym, usize>,
    rules: Vec<Rule>,
    declared_vars: Vec<Var>,
}

impl Ctrs {
    /// Builds a system, inferring the signature from the rules.
    ///
    /// Symbols keep the order of first appearance. Arity consistency is the
    /// caller's responsibility; the parser checks it.
    pub fn new(rules: Vec<Rule>) -> Ctrs {
        let mut syms = IndexSet::new();
        let mut vars = IndexSet::new();
        for r in &rules {
            r.lhs.collect_symbols(&mut syms);
            r.rhs.collect_symbols(&mut syms);
            for (s, t) in &r.conditions {
                s.collect_symbols(&mut syms);
                t.collect_symbols(&mut syms);
            }
            r.collect_vars_into(&mut vars);
        }
        let mut signature = IndexMap::new();
        for (f, n) in syms {
            signature.entry(f).or_insert(n);
        }
        Ctrs {
            signature,
            rules,
            declared_vars: vars.into_iter().collect(),
        }
    }

    pub(crate) fn with_declared_vars(mut self, vars: Vec<Var>) -> Ctrs {
        self.declared_vars = vars;
        self
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, label: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.label == label)
    }

    /// Symbol → arity, in first-appearance order.
    pub fn signature(&self) -> &IndexMap<Sym, usize> {
        &self.signature
    }

    pub fn declared_vars(&self) -> &[Var] {
        &self.declared_vars
    }

    pub fn arity(&self, f: &Sym) -> Option<usize> {
        self.signature.get(f).copied()
    }

    /// Symbols at the root of some left-hand side.
    pub fn defined_symbols(&self) -> IndexSet<Sym> {
        let defined: IndexSet<Sym> = self.rules.iter().filter_map(|r| r.lhs.root().cloned()).collect();
        self.signature
            .keys()
            .filter(|f| defined.contains(*f))
            .cloned()
            .collect()
    }

    pub fn constructors(&self) -> IndexSet<Sym> {
        let defined = self.defined_symbols();
        self.signature
            .keys()
            .filter(|f| !defined.contains(*f))
            .cloned()
            .collect()
    }

    pub fn is_unconditional(&self) -> bool {
        self.rules.iter().all(|r| !r.is_conditional())
    }

    /// Checks `vars(r) ⊆ vars(ℓ, c)` for every rule.
    pub fn is_3ctrs(&self) -> ClassReport {
        let mut report = ClassReport::default();
        for r in &self.rules {
            let missing = r.unbound_rhs_vars();
            if !missing.is_empty() {
                report.violations.push(Violation {
                    rule: r.label.clone(),
                    condition: None,
                    vars: missing,
                });
            }
        }
        report
    }

    /// Checks `vars(sᵢ) ⊆ vars(ℓ, t₁, …, tᵢ₋₁)` for every rule and condition.
    pub fn is_deterministic(&self) -> ClassReport {
        let mut report = ClassReport::default();
        for r in &self.rules {
            for (i, missing) in r.unbound_condition_vars() {
                report.violations.push(Violation {
                    rule: r.label.clone(),
                    condition: Some(i + 1),
                    vars: missing,
                });
            }
        }
        report
    }

    /// Renders the system in the input format.
    pub fn to_cops(&self) -> String {
        let mut out = String::from("(CONDITIONTYPE ORIENTED)\n(VAR");
        for x in &self.declared_vars {
            out.push(' ');
            out.push_str(x.as_str());
        }
        out.push_str(")\n(RULES\n");
        for r in &self.rules {
            out.push_str("  ");
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(")\n");
        out
    }
}

impl fmt::Debug for Ctrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rules).finish()
    }
}

/// One offending rule in a syntactic classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    /// 1-based condition index, `None` for the right-hand side.
    pub condition: Option<usize>,
    pub vars: Vec<Var>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<&str> = self.vars.iter().map(Var::as_str).collect();
        match self.condition {
            None => write!(f, "rule {}: rhs variables {} not bound", self.rule, vars.join(" ")),
            Some(i) => write!(
                f,
                "rule {}: condition {} lhs variables {} not bound",
                self.rule,
                i,
                vars.join(" ")
            ),
        }
    }
}

/// Result of a syntactic classification: holds iff there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub violations: Vec<Violation>,
}

impl ClassReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}
