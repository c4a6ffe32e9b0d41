//! Text and key-value rendering of analysis results.
//!
//! Both formats are produced from the same sequence of facts, so every fact
//! shown in text form has a structured counterpart.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::confluence::{Ccp, CcpOutcome, DeterminismReport, JoinReason, OrderOutcome, Verdict};
use crate::rules::conditions_to_string;
use crate::term::Term;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            _ => Err(format!("unknown format `{s}` (expected text or structured)")),
        }
    }
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn new(format: Format) -> Self {
        Out {
            format,
            buf: String::new(),
        }
    }

    fn fact(&mut self, indent: usize, text: impl AsRef<str>, key: impl AsRef<str>, value: impl AsRef<str>) {
        match self.format {
            Format::Text => {
                let _ = writeln!(self.buf, "{}{}", "  ".repeat(indent), text.as_ref());
            }
            Format::Structured => {
                let _ = writeln!(self.buf, "{}: {}", key.as_ref(), value.as_ref());
            }
        }
    }

    fn facts(&mut self, indent: usize, text: impl AsRef<str>, pairs: &[(String, String)]) {
        match self.format {
            Format::Text => {
                let _ = writeln!(self.buf, "{}{}", "  ".repeat(indent), text.as_ref());
            }
            Format::Structured => {
                for (k, v) in pairs {
                    let _ = writeln!(self.buf, "{k}: {v}");
                }
            }
        }
    }

    fn finish(self) -> String {
        self.buf
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn chain(terms: &[Term]) -> String {
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join(" -> ")
}

fn set(terms: &[Term]) -> String {
    format!("{{{}}}", terms.iter().map(Term::to_string).collect::<Vec<_>>().join(", "))
}

fn determinism(out: &mut Out, d: &DeterminismReport) {
    let sdt = d.holds();
    out.fact(0, format!("strongly deterministic: {}", yes_no(sdt)), "sdtrs", yes_no(sdt));
    let three = d.three_ctrs.holds();
    out.fact(1, format!("3-ctrs: {}", yes_no(three)), "sdtrs.3ctrs", yes_no(three));
    let det = d.deterministic.holds();
    out.fact(1, format!("deterministic: {}", yes_no(det)), "sdtrs.deterministic", yes_no(det));
    let irr = d.irreducible.is_empty();
    out.fact(
        1,
        format!("condition rhs strongly irreducible: {}", yes_no(irr)),
        "sdtrs.irreducible",
        yes_no(irr),
    );
    for (k, diag) in d.diagnostics().iter().enumerate() {
        out.fact(1, diag, format!("sdtrs.diagnostic.{}", k + 1), diag);
    }
}

fn order(out: &mut Out, o: &OrderOutcome) {
    let rep = o.report();
    let holds = o.holds();
    out.fact(0, format!("quasi-reductive: {}", yes_no(holds)), "quasi-reductive", yes_no(holds));
    match o {
        OrderOutcome::Found(_) => {
            out.fact(1, format!("precedence: {}", rep.precedence), "precedence", rep.precedence.to_string());
        }
        OrderOutcome::NotFound { limit, .. } => {
            out.fact(1, "precedence: none", "precedence", "none");
            out.fact(1, format!("search limit: {limit}"), "precedence.limit", limit.to_string());
            out.fact(
                1,
                format!("obligations checked under: {}", rep.precedence),
                "precedence.checked",
                rep.precedence.to_string(),
            );
        }
    }
    for (k, ob) in rep.obligations.iter().enumerate() {
        let line = ob.to_string();
        out.fact(1, &line, format!("obligation.{}", k + 1), &line);
    }
}

fn ccp_header(out: &mut Out, n: usize, c: &Ccp) {
    out.facts(
        0,
        format!("ccp {n}: {} = {}", c.u, c.v),
        &[(format!("ccp.{n}.u"), c.u.to_string()), (format!("ccp.{n}.v"), c.v.to_string())],
    );
    let conds = if c.conditions.is_empty() {
        "(none)".to_string()
    } else {
        conditions_to_string(&c.conditions)
    };
    out.fact(1, format!("conditions: {conds}"), format!("ccp.{n}.conditions"), &conds);
    let prov = format!("rule {} into rule {} at {}", c.inner, c.outer, c.position);
    out.fact(1, format!("overlap: {prov}"), format!("ccp.{n}.overlap"), &prov);
    out.fact(1, format!("mgu: {}", c.mgu), format!("ccp.{n}.mgu"), c.mgu.to_string());
}

fn ccp_outcome(out: &mut Out, n: usize, o: &CcpOutcome) {
    out.fact(1, format!("result: {}", o.label()), format!("ccp.{n}.result"), o.label());
    match o {
        CcpOutcome::Joinable(JoinReason::Identical) => {
            out.fact(2, "reason: identical", format!("ccp.{n}.reason"), "identical");
        }
        CcpOutcome::Joinable(JoinReason::Infeasible(why)) => {
            let s = format!("infeasible: {why}");
            out.fact(2, format!("reason: {s}"), format!("ccp.{n}.reason"), &s);
        }
        CcpOutcome::Joinable(JoinReason::CommonReduct(w)) => {
            out.fact(2, format!("common reduct: {}", w.common), format!("ccp.{n}.common"), w.common.to_string());
            out.fact(2, format!("left: {}", chain(&w.left)), format!("ccp.{n}.left"), chain(&w.left));
            out.fact(2, format!("right: {}", chain(&w.right)), format!("ccp.{n}.right"), chain(&w.right));
        }
        CcpOutcome::NotJoinable { left, right } => {
            out.fact(2, format!("reducts of u: {}", set(left)), format!("ccp.{n}.left"), set(left));
            out.fact(2, format!("reducts of v: {}", set(right)), format!("ccp.{n}.right"), set(right));
        }
        CcpOutcome::Unknown(why) => {
            out.fact(2, format!("reason: {why}"), format!("ccp.{n}.reason"), why);
        }
    }
}

/// Verdict line followed by the full trace.
pub fn full_report(v: &Verdict, format: Format) -> String {
    let mut out = Out::new(format);
    out.fact(0, v.answer.to_string(), "verdict", v.answer.to_string());
    determinism(&mut out, &v.trace.determinism);
    order(&mut out, &v.trace.order);
    let n = v.trace.ccps.len();
    out.fact(0, format!("critical pairs: {n}"), "ccps", n.to_string());
    for (k, (c, o)) in v.trace.ccps.iter().enumerate() {
        ccp_header(&mut out, k + 1, c);
        ccp_outcome(&mut out, k + 1, o);
    }
    for (k, r) in v.trace.reasons.iter().enumerate() {
        out.fact(0, format!("note: {r}"), format!("note.{}", k + 1), r);
    }
    out.finish()
}

/// The critical pairs alone, without joinability or verdict.
pub fn ccps_report(ccps: &[Ccp], format: Format) -> String {
    let mut out = Out::new(format);
    out.fact(0, format!("critical pairs: {}", ccps.len()), "ccps", ccps.len().to_string());
    for (k, c) in ccps.iter().enumerate() {
        ccp_header(&mut out, k + 1, c);
    }
    out.finish()
}

/// Strong-determinism classification alone.
pub fn classify_report(d: &DeterminismReport, format: Format) -> String {
    let mut out = Out::new(format);
    determinism(&mut out, d);
    out.finish()
}
