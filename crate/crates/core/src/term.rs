//! First-order terms over a signature of function symbols and variables.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::Error;

/// A variable identifier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

/// A function symbol identifier. Constants are symbols applied to no arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(Arc<str>);

macro_rules! ident_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(name: &str) -> Self {
                $ty(Arc::from(name))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $ty {
            fn from(name: &str) -> Self {
                $ty::new(name)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

ident_impls!(Var);
ident_impls!(Sym);

/// A term: either a variable or a function symbol applied to argument terms.
///
/// Equality is structural. The derived ordering is only used to keep
/// result sets in a deterministic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Sym, Vec<Term>),
}

/// A position in a term: a path of 1-based argument indices. The empty path is the root.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// The position `self.i`.
    pub fn child(&self, i: usize) -> Position {
        let mut path = self.0.clone();
        path.push(i);
        Position(path)
    }

    /// Concatenation `self.other`.
    pub fn concat(&self, other: &Position) -> Position {
        let mut path = self.0.clone();
        path.extend_from_slice(&other.0);
        Position(path)
    }

    /// Whether `self` is a prefix of (or equal to) `other`.
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Position {
    fn from(path: Vec<usize>) -> Self {
        Position(path)
    }
}

impl From<&[usize]> for Position {
    fn from(path: &[usize]) -> Self {
        Position(path.to_vec())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn app(symbol: &str, args: Vec<Term>) -> Term {
        Term::App(Sym::new(symbol), args)
    }

    pub fn constant(symbol: &str) -> Term {
        Term::App(Sym::new(symbol), Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    /// Root symbol, `None` for variables.
    pub fn root(&self) -> Option<&Sym> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Variables in first-occurrence order.
    pub fn vars(&self) -> IndexSet<Var> {
        let mut out = IndexSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut IndexSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, x: &Var) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    /// Function symbols with their arities, in first-occurrence order.
    pub fn collect_symbols(&self, out: &mut IndexSet<(Sym, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    /// The subterm `t|_p`.
    pub fn subterm_at(&self, p: &Position) -> Result<&Term, Error> {
        self.get(p).ok_or_else(|| Error::InvalidPosition {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    /// Like [`Term::subterm_at`] but returning `None` on an invalid position.
    pub fn get(&self, p: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in p.indices() {
            match cur {
                Term::App(_, args) if i >= 1 && i <= args.len() => cur = &args[i - 1],
                _ => return None,
            }
        }
        Some(cur)
    }

    /// The term `t[s]_p`.
    pub fn replace_at(&self, p: &Position, s: Term) -> Result<Term, Error> {
        fn go(t: &Term, path: &[usize], s: Term) -> Option<Term> {
            let Some((&i, rest)) = path.split_first() else {
                return Some(s);
            };
            match t {
                Term::App(f, args) if i >= 1 && i <= args.len() => {
                    let mut args = args.clone();
                    args[i - 1] = go(&args[i - 1], rest, s)?;
                    Some(Term::App(f.clone(), args))
                }
                _ => None,
            }
        }
        go(self, p.indices(), s).ok_or_else(|| Error::InvalidPosition {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    /// All positions with their subterms, in preorder (root first).
    pub fn subterms(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn go<'a>(t: &'a Term, path: &mut Vec<usize>, out: &mut Vec<(Position, &'a Term)>) {
            out.push((Position(path.clone()), t));
            for (i, a) in t.args().iter().enumerate() {
                path.push(i + 1);
                go(a, path, out);
                path.pop();
            }
        }
        go(self, &mut path, &mut out);
        out
    }

    /// Pairs `(p, t|_p)` with `p ≠ ε`, in preorder.
    pub fn proper_subterms(&self) -> Vec<(Position, &Term)> {
        let mut all = self.subterms();
        all.remove(0);
        all
    }

    /// Positions of non-variable subterms, in preorder.
    pub fn function_positions(&self) -> Vec<Position> {
        self.subterms()
            .into_iter()
            .filter(|(_, s)| !s.is_var())
            .map(|(p, _)| p)
            .collect()
    }

    /// Whether `t` is a proper subterm of `self`.
    pub fn has_proper_subterm(&self, t: &Term) -> bool {
        self.args().iter().any(|a| a == t || a.has_proper_subterm(t))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Collects variables of a syntactic object (term, condition list, rule).
pub trait HasVars {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>);

    fn var_set(&self) -> IndexSet<Var> {
        let mut out = IndexSet::new();
        self.collect_vars_into(&mut out);
        out
    }
}

impl HasVars for Term {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        self.collect_vars(out);
    }
}

impl<A: HasVars, B: HasVars> HasVars for (A, B) {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        self.0.collect_vars_into(out);
        self.1.collect_vars_into(out);
    }
}

impl<T: HasVars> HasVars for [T] {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        self.iter().for_each(|x| x.collect_vars_into(out));
    }
}

impl<T: HasVars> HasVars for Vec<T> {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        self.as_slice().collect_vars_into(out);
    }
}

impl<T: HasVars + ?Sized> HasVars for &T {
    fn collect_vars_into(&self, out: &mut IndexSet<Var>) {
        (**self).collect_vars_into(out);
    }
}

/// Union of the variables of several objects, in first-occurrence order.
pub fn vars_of(objects: &[&dyn HasVars]) -> IndexSet<Var> {
    let mut out = IndexSet::new();
    for o in objects {
        o.collect_vars_into(&mut out);
    }
    out
}
