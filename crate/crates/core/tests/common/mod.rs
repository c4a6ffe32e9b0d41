//! Generators and independent reference implementations shared by the
//! integration tests. Nothing here calls into the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;

use ctrs::{Ctrs, Sym, Term, Var};
use rand::rngs::StdRng;
use rand::Rng;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.trs"))
}

pub fn corpus(name: &str) -> Ctrs {
    let src = std::fs::read_to_string(corpus_path(name)).unwrap();
    ctrs::parse_ctrs(&src).unwrap()
}

pub const CORPUS: [&str; 6] = ["even", "min", "fork", "nested", "loopy", "nonsdt"];

pub type Sig = Vec<(Sym, usize)>;

pub fn sig(symbols: &[(&str, usize)]) -> Sig {
    symbols.iter().map(|(f, n)| (Sym::new(f), *n)).collect()
}

pub fn signature_of(r: &Ctrs) -> Sig {
    r.signature().iter().map(|(f, n)| (f.clone(), *n)).collect()
}

pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

/// Random term of depth at most `depth` (a leaf has depth 1).
pub fn random_term(rng: &mut StdRng, sig: &Sig, vs: &[Var], depth: usize) -> Term {
    let leaves: Vec<Option<&(Sym, usize)>> = sig
        .iter()
        .filter(|(_, n)| *n == 0)
        .map(Some)
        .chain(vs.iter().map(|_| None))
        .collect();
    if depth <= 1 || rng.gen_bool(0.3) {
        let i = rng.gen_range(0..leaves.len());
        return match leaves[i] {
            Some((f, _)) => Term::constant(f.as_str()),
            None => Term::Var(vs[i - (leaves.len() - vs.len())].clone()),
        };
    }
    let (f, n) = &sig[rng.gen_range(0..sig.len())];
    let args = (0..*n).map(|_| random_term(rng, sig, vs, depth - 1)).collect();
    Term::App(f.clone(), args)
}

/// Random term with at most `budget` symbol and variable occurrences.
pub fn random_sized(rng: &mut StdRng, sig: &Sig, vs: &[Var], budget: usize) -> Term {
    let fits: Vec<&(Sym, usize)> = sig.iter().filter(|(_, n)| *n < budget).collect();
    let pick_leaf = budget <= 1 || rng.gen_bool(0.25) || fits.iter().all(|(_, n)| *n == 0);
    if pick_leaf {
        let consts: Vec<&Sym> = sig.iter().filter(|(_, n)| *n == 0).map(|(f, _)| f).collect();
        let k = rng.gen_range(0..consts.len() + vs.len());
        return if k < consts.len() {
            Term::constant(consts[k].as_str())
        } else {
            Term::Var(vs[k - consts.len()].clone())
        };
    }
    let nonconst: Vec<&&(Sym, usize)> = fits.iter().filter(|(_, n)| *n > 0).collect();
    let (f, n) = nonconst[rng.gen_range(0..nonconst.len())];
    let mut left = budget - 1;
    let mut args = Vec::new();
    for i in 0..*n {
        let reserve = n - i - 1;
        let share = rng.gen_range(1..=(left - reserve).max(1));
        let a = random_sized(rng, sig, vs, share);
        left -= a.size();
        args.push(a);
    }
    Term::App(f.clone(), args)
}

pub fn random_subst(rng: &mut StdRng, sig: &Sig, domain: &[Var], range_vars: &[Var], depth: usize) -> BTreeMap<Var, Term> {
    let mut out = BTreeMap::new();
    for x in domain {
        if rng.gen_bool(0.7) {
            out.insert(x.clone(), random_term(rng, sig, range_vars, depth));
        }
    }
    out
}

pub fn apply(s: &BTreeMap<Var, Term>, t: &Term) -> Term {
    match t {
        Term::Var(x) => s.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, ts) => Term::App(f.clone(), ts.iter().map(|a| apply(s, a)).collect()),
    }
}

fn occurs(x: &Var, t: &Term) -> bool {
    match t {
        Term::Var(y) => x == y,
        Term::App(_, ts) => ts.iter().any(|a| occurs(x, a)),
    }
}

/// Unification by transformation rules on a set of equations, returning the
/// solved form as a triangular substitution resolved to a fixpoint.
pub fn reference_unify(s: &Term, t: &Term) -> Option<BTreeMap<Var, Term>> {
    let mut eqs: VecDeque<(Term, Term)> = VecDeque::from([(s.clone(), t.clone())]);
    let mut solved: BTreeMap<Var, Term> = BTreeMap::new();
    while let Some((a, b)) = eqs.pop_front() {
        let a = resolve(&solved, &a);
        let b = resolve(&solved, &b);
        match (&a, &b) {
            _ if a == b => {}
            (Term::Var(x), _) => {
                if occurs(x, &b) {
                    return None;
                }
                solved.insert(x.clone(), b.clone());
            }
            (_, Term::Var(_)) => eqs.push_back((b, a)),
            (Term::App(f, fs), Term::App(g, gs)) => {
                if f != g || fs.len() != gs.len() {
                    return None;
                }
                eqs.extend(fs.iter().cloned().zip(gs.iter().cloned()));
            }
        }
    }
    let keys: Vec<Var> = solved.keys().cloned().collect();
    Some(keys.into_iter().map(|x| (x.clone(), resolve(&solved, &Term::Var(x)))).collect())
}

fn resolve(s: &BTreeMap<Var, Term>, t: &Term) -> Term {
    match t {
        Term::Var(x) => match s.get(x) {
            Some(u) => resolve(s, u),
            None => t.clone(),
        },
        Term::App(f, ts) => Term::App(f.clone(), ts.iter().map(|a| resolve(s, a)).collect()),
    }
}

/// Syntactic matching: `pattern σ == subject`, binding pattern variables only.
pub fn reference_match(pattern: &Term, subject: &Term, s: &mut BTreeMap<Var, Term>) -> bool {
    match pattern {
        Term::Var(x) => match s.get(x) {
            Some(u) => u == subject,
            None => {
                s.insert(x.clone(), subject.clone());
                true
            }
        },
        Term::App(f, ps) => match subject {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                ps.iter().zip(ts).all(|(p, t)| reference_match(p, t, s))
            }
            _ => false,
        },
    }
}

fn replace(t: &Term, pos: &[usize], new: Term) -> Term {
    match (pos.split_first(), t) {
        (None, _) => new,
        (Some((i, rest)), Term::App(f, ts)) => {
            let mut ts = ts.clone();
            ts[*i] = replace(&ts[*i], rest, new);
            Term::App(f.clone(), ts)
        }
        _ => unreachable!(),
    }
}

fn positions(t: &Term, here: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Term)>) {
    out.push((here.clone(), t.clone()));
    if let Term::App(_, ts) = t {
        for (i, a) in ts.iter().enumerate() {
            here.push(i);
            positions(a, here, out);
            here.pop();
        }
    }
}

/// Ground conditional rewriting for terminating systems whose conditions
/// only use left-hand-side variables, computed exactly.
pub struct GroundRewriter<'a> {
    ctrs: &'a Ctrs,
    memo: HashMap<Term, BTreeSet<Term>>,
}

impl<'a> GroundRewriter<'a> {
    pub fn new(ctrs: &'a Ctrs) -> Self {
        GroundRewriter {
            ctrs,
            memo: HashMap::new(),
        }
    }

    pub fn successors(&mut self, t: &Term) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        let mut ps = Vec::new();
        positions(t, &mut Vec::new(), &mut ps);
        for (p, sub) in ps {
            for rule in self.ctrs.rules() {
                let mut s = BTreeMap::new();
                if !reference_match(&rule.lhs, &sub, &mut s) {
                    continue;
                }
                let ok = rule
                    .conditions
                    .iter()
                    .all(|(l, r)| self.reducts(&apply(&s, l)).contains(&apply(&s, r)));
                if ok {
                    out.insert(replace(t, &p, apply(&s, &rule.rhs)));
                }
            }
        }
        out
    }

    /// All terms reachable in zero or more steps.
    pub fn reducts(&mut self, t: &Term) -> BTreeSet<Term> {
        if let Some(r) = self.memo.get(t) {
            return r.clone();
        }
        let mut seen = BTreeSet::from([t.clone()]);
        let mut queue = VecDeque::from([t.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in self.successors(&u) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        self.memo.insert(t.clone(), seen.clone());
        seen
    }
}

/// All terms over `sig` with exactly `size` symbol occurrences.
pub fn terms_of_size(sig: &Sig, size: usize, memo: &mut HashMap<usize, Vec<Term>>) -> Vec<Term> {
    if let Some(v) = memo.get(&size) {
        return v.clone();
    }
    let mut out = Vec::new();
    for (f, n) in sig {
        if *n == 0 {
            if size == 1 {
                out.push(Term::constant(f.as_str()));
            }
        } else if size > *n {
            for split in compositions(size - 1, *n) {
                let choices: Vec<Vec<Term>> = split.iter().map(|k| terms_of_size(sig, *k, memo)).collect();
                for args in product(&choices) {
                    out.push(Term::App(f.clone(), args));
                }
            }
        }
    }
    memo.insert(size, out.clone());
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product(choices: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Renames variables to `v0, v1, …` in order of first occurrence across `terms`.
pub fn canonical(terms: &[Term]) -> Vec<Term> {
    let mut names: BTreeMap<Var, Term> = BTreeMap::new();
    fn walk(t: &Term, names: &mut BTreeMap<Var, Term>) {
        match t {
            Term::Var(x) => {
                let n = names.len();
                names.entry(x.clone()).or_insert_with(|| Term::var(&format!("v{n}")));
            }
            Term::App(_, ts) => ts.iter().for_each(|a| walk(a, names)),
        }
    }
    for t in terms {
        walk(t, &mut names);
    }
    terms.iter().map(|t| apply(&names, t)).collect()
}
