//! Confluence analysis for oriented conditional term rewrite systems.
//!
//! A system is shown confluent when it is strongly deterministic, quasi-reductive
//! with respect to a lexicographic path order, and all of its conditional
//! critical pairs are joinable. Joinability is established by bounded
//! contextual rewriting; non-confluence is reported only for unconditional
//! critical pairs whose sides have disjoint, fully explored reduct sets.

pub mod cli;
pub mod confluence;
pub mod error;
pub mod order;
pub mod parse;
pub mod report;
pub mod rewrite;
pub mod rules;
pub mod subst;
pub mod term;
pub mod unify;

pub use confluence::{
    ccp_joinable, conditions_infeasible, contextual_reducts, critical_pairs, decide_confluence,
    strongly_deterministic, strongly_irreducible, Answer, Ccp, CcpOutcome, Verdict,
};
pub use error::{Error, Result};
pub use order::{check_quasi_reductive, lpo_greater, search_precedence, Precedence};
pub use parse::{parse_ctrs, parse_term, parse_term_in};
pub use rewrite::{joinable, normal_forms, reducts, rewrite_step, Budget, Joinability, StepResult};
pub use rules::{Condition, Ctrs, Rule};
pub use subst::{rename_apart, Permutation, Substitution};
pub use term::{Position, Sym, Term, Var};
pub use unify::{matching, mgu};
