//! Lexicographic path order over a quasi-precedence, and the sufficient
//! quasi-reductivity check built on it.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::rules::Ctrs;
use crate::term::{Sym, Term};

/// Default number of candidate precedences tried by [`search_precedence`].
pub const DEFAULT_SEARCH_LIMIT: usize = 10_000;

/// A quasi-precedence: symbols are grouped into equivalence classes and the
/// classes are strictly ordered. Classes are named by their least member.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precedence {
    class_of: BTreeMap<Sym, Sym>,
    above: BTreeSet<(Sym, Sym)>,
}

impl Precedence {
    pub fn empty() -> Self {
        Precedence::default()
    }

    fn rep(&self, f: &Sym) -> Sym {
        self.class_of.get(f).cloned().unwrap_or_else(|| f.clone())
    }

    /// `f > g`.
    pub fn greater(&self, f: &Sym, g: &Sym) -> bool {
        self.above.contains(&(self.rep(f), self.rep(g)))
    }

    /// `f ≈ g` (reflexive).
    pub fn equivalent(&self, f: &Sym, g: &Sym) -> bool {
        f == g || self.rep(f) == self.rep(g)
    }

    pub fn related(&self, f: &Sym, g: &Sym) -> bool {
        self.equivalent(f, g) || self.greater(f, g) || self.greater(g, f)
    }

    /// The precedence extended with `f > g`, or `None` if that creates a cycle.
    pub fn with_greater(&self, f: &Sym, g: &Sym) -> Option<Precedence> {
        let (rf, rg) = (self.rep(f), self.rep(g));
        if rf == rg || self.above.contains(&(rg.clone(), rf.clone())) {
            return None;
        }
        let mut next = self.clone();
        let uppers: Vec<Sym> = std::iter::once(rf.clone())
            .chain(self.above.iter().filter(|(_, b)| *b == rf).map(|(a, _)| a.clone()))
            .collect();
        let lowers: Vec<Sym> = std::iter::once(rg.clone())
            .chain(self.above.iter().filter(|(a, _)| *a == rg).map(|(_, b)| b.clone()))
            .collect();
        for a in &uppers {
            for b in &lowers {
                next.above.insert((a.clone(), b.clone()));
            }
        }
        Some(next)
    }

    /// The precedence extended with `f ≈ g`, or `None` if they are already
    /// strictly related.
    pub fn with_equivalent(&self, f: &Sym, g: &Sym) -> Option<Precedence> {
        let (rf, rg) = (self.rep(f), self.rep(g));
        if rf == rg {
            return Some(self.clone());
        }
        if self.above.contains(&(rf.clone(), rg.clone())) || self.above.contains(&(rg.clone(), rf.clone())) {
            return None;
        }
        let (keep, gone) = if rf < rg { (rf, rg) } else { (rg, rf) };
        let mut next = self.clone();
        for r in next.class_of.values_mut() {
            if *r == gone {
                *r = keep.clone();
            }
        }
        for s in [f, g] {
            next.class_of.insert(s.clone(), keep.clone());
        }
        next.class_of.insert(gone.clone(), keep.clone());
        next.class_of.insert(keep.clone(), keep.clone());
        let swap = |s: &Sym| if *s == gone { keep.clone() } else { s.clone() };
        next.above = self.above.iter().map(|(a, b)| (swap(a), swap(b))).collect();
        next.close();
        Some(next)
    }

    fn close(&mut self) {
        loop {
            let mut added = Vec::new();
            for (a, b) in &self.above {
                for (c, d) in self.above.range((b.clone(), Sym::new(""))..) {
                    if c != b {
                        break;
                    }
                    if !self.above.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            self.above.extend(added);
        }
    }

    /// Parses chains such as `min>le>true,min>false` or `even=odd>true`.
    pub fn parse(text: &str) -> Result<Precedence> {
        let mut prec = Precedence::empty();
        for chain in text.split(',') {
            let chain = chain.trim();
            if chain.is_empty() {
                continue;
            }
            let mut names = Vec::new();
            let mut ops = Vec::new();
            let mut cur = String::new();
            for c in chain.chars() {
                if c == '>' || c == '=' {
                    names.push(std::mem::take(&mut cur));
                    ops.push(c);
                } else {
                    cur.push(c);
                }
            }
            names.push(cur);
            let names: Vec<String> = names.into_iter().map(|n| n.trim().to_string()).collect();
            if let Some(bad) = names.iter().find(|n| n.is_empty() || n.contains(char::is_whitespace)) {
                return Err(Error::Precedence(format!("bad symbol `{bad}` in `{chain}`")));
            }
            for (k, op) in ops.iter().enumerate() {
                let f = Sym::new(&names[k]);
                let g = Sym::new(&names[k + 1]);
                let next = if *op == '>' {
                    prec.with_greater(&f, &g)
                } else {
                    prec.with_equivalent(&f, &g)
                };
                prec = next.ok_or_else(|| {
                    Error::Precedence(format!("`{f}{op}{g}` contradicts earlier relations"))
                })?;
            }
        }
        Ok(prec)
    }

    /// Equivalence classes with more than one member.
    pub fn classes(&self) -> Vec<Vec<Sym>> {
        let mut by_rep: BTreeMap<Sym, Vec<Sym>> = BTreeMap::new();
        for (s, r) in &self.class_of {
            by_rep.entry(r.clone()).or_default().push(s.clone());
        }
        by_rep.into_values().filter(|c| c.len() > 1).collect()
    }

    /// Covering pairs of the strict part, between class names.
    pub fn covering_pairs(&self) -> Vec<(Sym, Sym)> {
        self.above
            .iter()
            .filter(|(a, b)| {
                !self
                    .above
                    .iter()
                    .any(|(c, d)| c == a && d != b && self.above.contains(&(d.clone(), b.clone())))
            })
            .cloned()
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty() && self.classes().is_empty()
    }
}

impl fmt::Display for Precedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .classes()
            .into_iter()
            .map(|c| c.iter().map(Sym::to_string).collect::<Vec<_>>().join("="))
            .collect();
        parts.extend(self.covering_pairs().into_iter().map(|(a, b)| format!("{a}>{b}")));
        if parts.is_empty() {
            f.write_str("(empty)")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Precedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Equality modulo equivalent symbols.
pub fn lpo_equivalent(prec: &Precedence, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => x == y,
        (Term::App(f, ss), Term::App(g, ts)) => {
            ss.len() == ts.len()
                && prec.equivalent(f, g)
                && ss.iter().zip(ts).all(|(a, b)| lpo_equivalent(prec, a, b))
        }
        _ => false,
    }
}

fn lpo_geq(prec: &Precedence, s: &Term, t: &Term) -> bool {
    lpo_equivalent(prec, s, t) || lpo_greater(prec, s, t)
}

/// `s ≻_lpo t`.
pub fn lpo_greater(prec: &Precedence, s: &Term, t: &Term) -> bool {
    let Term::App(f, ss) = s else {
        return false;
    };
    match t {
        Term::Var(x) => s.contains_var(x),
        Term::App(g, ts) => {
            if ss.iter().any(|si| lpo_geq(prec, si, t)) {
                return true;
            }
            if prec.greater(f, g) {
                return ts.iter().all(|tj| lpo_greater(prec, s, tj));
            }
            if prec.equivalent(f, g) && ss.len() == ts.len() {
                let first_diff = ss
                    .iter()
                    .zip(ts)
                    .find(|(a, b)| !lpo_equivalent(prec, a, b));
                return match first_diff {
                    Some((a, b)) => lpo_greater(prec, a, b) && ts.iter().all(|tj| lpo_greater(prec, s, tj)),
                    None => false,
                };
            }
            false
        }
    }
}

/// `s (≻_lpo ∪ ▷)⁺ t`. Since `▷ ⊆ ≻_lpo` and `≻_lpo` is transitive this
/// coincides with `≻_lpo`; the subterm test is kept as a shortcut.
pub fn subterm_extended_greater(prec: &Precedence, s: &Term, t: &Term) -> bool {
    s.has_proper_subterm(t) || lpo_greater(prec, s, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObligationKind {
    /// `ℓ ≻_st sᵢ` for the 1-based condition index `i`.
    Condition(usize),
    /// `ℓ ≻ r`.
    Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub rule: String,
    pub kind: ObligationKind,
    pub greater: Term,
    pub smaller: Term,
    pub holds: bool,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rel, what) = match self.kind {
            ObligationKind::Condition(i) => (">st", format!("condition {i}")),
            ObligationKind::Rhs => (">", "rhs".to_string()),
        };
        write!(
            f,
            "rule {} {}: {} {} {}: {}",
            self.rule,
            what,
            self.greater,
            rel,
            self.smaller,
            if self.holds { "holds" } else { "fails" }
        )
    }
}

/// Outcome of the quasi-reductivity check for one precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub precedence: Precedence,
    pub obligations: Vec<Obligation>,
}

impl OrderReport {
    pub fn holds(&self) -> bool {
        self.obligations.iter().all(|o| o.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| !o.holds)
    }
}

fn obligations(ctrs: &Ctrs) -> Vec<(String, ObligationKind, Term, Term)> {
    let mut out = Vec::new();
    for r in ctrs.rules() {
        for (i, (s, _)) in r.conditions.iter().enumerate() {
            out.push((r.label.clone(), ObligationKind::Condition(i + 1), r.lhs.clone(), s.clone()));
        }
        out.push((r.label.clone(), ObligationKind::Rhs, r.lhs.clone(), r.rhs.clone()));
    }
    out
}

fn obligation_holds(prec: &Precedence, kind: ObligationKind, l: &Term, r: &Term) -> bool {
    match kind {
        ObligationKind::Condition(_) => subterm_extended_greater(prec, l, r),
        ObligationKind::Rhs => lpo_greater(prec, l, r),
    }
}

/// Premise-free quasi-reductivity: `ℓ ≻_st sᵢ` for every condition and `ℓ ≻ r`.
///
/// Both relations are closed under substitution, so the unquantified checks
/// cover every instance.
pub fn check_quasi_reductive(ctrs: &Ctrs, prec: &Precedence) -> OrderReport {
    let obligations = obligations(ctrs)
        .into_iter()
        .map(|(rule, kind, l, r)| {
            let holds = obligation_holds(prec, kind, &l, &r);
            Obligation {
                rule,
                kind,
                greater: l,
                smaller: r,
                holds,
            }
        })
        .collect();
    OrderReport {
        precedence: prec.clone(),
        obligations,
    }
}

/// Searches for a precedence under which the system is quasi-reductive.
///
/// The hint, if any, is tried first. Otherwise precedences are grown from the
/// empty one: the first failing obligation `s ≻ t` is repaired by relating a
/// symbol of `s` to a symbol of `t` (`f > g` before `f ≈ g`), in order of first
/// appearance in the signature, backtracking on failure. At most `limit`
/// candidates are examined.
pub fn search_precedence(ctrs: &Ctrs, hint: Option<&Precedence>, limit: usize) -> Option<Precedence> {
    if let Some(h) = hint {
        if check_quasi_reductive(ctrs, h).holds() {
            return Some(h.clone());
        }
    }
    let obls = obligations(ctrs);
    let order: BTreeMap<Sym, usize> = ctrs
        .signature()
        .keys()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let mut search = Search {
        ctrs,
        obls: &obls,
        order: &order,
        visited: HashSet::new(),
        limit,
    };
    search.dfs(Precedence::empty())
}

struct Search<'a> {
    ctrs: &'a Ctrs,
    obls: &'a [(String, ObligationKind, Term, Term)],
    order: &'a BTreeMap<Sym, usize>,
    visited: HashSet<Precedence>,
    limit: usize,
}

impl Search<'_> {
    fn dfs(&mut self, prec: Precedence) -> Option<Precedence> {
        if self.visited.len() >= self.limit || !self.visited.insert(prec.clone()) {
            return None;
        }
        let Some((_, _, l, r)) = self
            .obls
            .iter()
            .find(|(_, kind, l, r)| !obligation_holds(&prec, *kind, l, r))
        else {
            return Some(prec);
        };
        for (f, g) in self.candidates(&prec, l, r) {
            let mut options = vec![prec.with_greater(&f, &g)];
            if self.ctrs.arity(&f).is_some() && self.ctrs.arity(&f) == self.ctrs.arity(&g) {
                options.push(prec.with_equivalent(&f, &g));
            }
            for next in options.into_iter().flatten() {
                if let Some(found) = self.dfs(next) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn candidates(&self, prec: &Precedence, l: &Term, r: &Term) -> Vec<(Sym, Sym)> {
        let syms = |t: &Term| {
            let mut out = IndexSet::new();
            t.collect_symbols(&mut out);
            let mut v: Vec<Sym> = out.into_iter().map(|(f, _)| f).collect();
            v.sort_by_key(|f| self.order.get(f).copied().unwrap_or(usize::MAX));
            v.dedup();
            v
        };
        let (ls, rs) = (syms(l), syms(r));
        let mut out = Vec::new();
        for f in &ls {
            for g in &rs {
                if f != g && !prec.related(f, g) {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }
}
