use std::str::FromStr;

use thiserror::Error;

use super::{Factor, Group};
use crate::abgroup::{exterior_square, kunneth, AbelianGroup};
use crate::be::multiplier_via_be;
use crate::hopf::multiplier_via_tails;
use crate::multiplier::{Method, MultiplierResult};
use crate::oracle::multiplier_via_oracle;
use crate::pcgroup::abelianization;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Only(Method),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            Ok(MethodChoice::Auto)
        } else {
            s.parse().map(MethodChoice::Only)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComputeError {
    #[error("no applicable method ({})", render_reasons(.0))]
    NoMethod(Vec<(Method, String)>),
    #[error("{method} does not apply: {reason}")]
    NotApplicable { method: Method, reason: String },
    #[error("methods disagree: {}", render_reasons(.0))]
    Disagreement(Vec<(Method, String)>),
}

fn render_reasons(r: &[(Method, String)]) -> String {
    r.iter().map(|(m, s)| format!("{m}: {s}")).collect::<Vec<_>>().join("; ")
}

fn via_kunneth(g: &Group) -> Result<MultiplierResult, String> {
    if g.factors.is_empty() {
        return Err("not a product recipe".into());
    }
    let mut acc: Option<(AbelianGroup, AbelianGroup)> = None;
    let mut trace = Vec::new();
    for f in &g.factors {
        let (m, ab) = match f {
            Factor::Group(h) => {
                let r = compute_multiplier(h, MethodChoice::Auto).map_err(|e| format!("factor {}: {e}", h.id))?;
                trace.push(format!("kunneth: M({}) = {} via {}", h.id, r.invariants, r.method));
                (r.invariants, abelianization(&h.pres))
            }
            Factor::Abelian(a) => {
                let m = exterior_square(a);
                trace.push(format!("kunneth: M({a}) = {m} (exterior square)"));
                (m, a.clone())
            }
        };
        acc = Some(match acc {
            None => (m, ab),
            Some((m0, ab0)) => (kunneth(&m0, &m, &ab0, &ab), ab0.direct_sum(&ab)),
        });
    }
    let (m, _) = acc.expect("nonempty product");
    let mut r = MultiplierResult::new(g.p, m, Method::Kunneth);
    r.trace = trace;
    Ok(r)
}

fn via_tails(g: &Group) -> Result<MultiplierResult, String> {
    let t = multiplier_via_tails(&g.pres).map_err(|e| e.to_string())?;
    if t.free_rank != g.pres.num_gens() {
        return Err(format!("free rank {} differs from {} generators", t.free_rank, g.pres.num_gens()));
    }
    Ok(MultiplierResult::new(g.p, t.multiplier, Method::Tails).with_trace(format!(
        "tails: {} tails, {} overlap relations, free rank {}",
        t.tails, t.relations, t.free_rank
    )))
}

fn run(g: &Group, m: Method) -> Result<MultiplierResult, String> {
    match m {
        Method::Kunneth => via_kunneth(g),
        Method::BlackburnEvens => multiplier_via_be(&g.pres).map_err(|e| e.to_string()),
        Method::Oracle => multiplier_via_oracle(&g.pres).map_err(|e| e.to_string()),
        Method::Tails => via_tails(g),
        Method::Ledger => Err("ledger results come from bound scripts".into()),
    }
}

/// `M(G)` by one method, or by `Auto`: Künneth, Blackburn–Evens and the
/// oracle are each tried, every applicable one must agree, and the first in
/// that order is reported. The tails method is the fallback when none
/// applies.
pub fn compute_multiplier(g: &Group, choice: MethodChoice) -> Result<MultiplierResult, ComputeError> {
    match choice {
        MethodChoice::Only(method) => run(g, method).map_err(|reason| ComputeError::NotApplicable { method, reason }),
        MethodChoice::Auto => {
            let mut ok: Vec<MultiplierResult> = Vec::new();
            let mut skipped = Vec::new();
            for m in [Method::Kunneth, Method::BlackburnEvens, Method::Oracle] {
                match run(g, m) {
                    Ok(r) => ok.push(r),
                    Err(e) => skipped.push((m, e)),
                }
            }
            if ok.is_empty() {
                match run(g, Method::Tails) {
                    Ok(r) => ok.push(r),
                    Err(e) => {
                        skipped.push((Method::Tails, e));
                        return Err(ComputeError::NoMethod(skipped));
                    }
                }
            }
            if ok.iter().any(|r| r.invariants != ok[0].invariants) {
                return Err(ComputeError::Disagreement(
                    ok.iter().map(|r| (r.method, r.invariants.render())).collect(),
                ));
            }
            let mut best = ok[0].clone();
            if ok.len() > 1 {
                let names: Vec<&str> = ok.iter().map(|r| r.method.tag()).collect();
                best.trace.push(format!("auto: {} agree", names.join(", ")));
                for r in &ok[1..] {
                    best.trace.extend(r.trace.iter().cloned());
                    if best.h2.is_none() {
                        best.h2 = r.h2.clone();
                    }
                }
            }
            for (m, e) in skipped {
                best.trace.push(format!("auto: {m} skipped: {e}"));
            }
            Ok(best)
        }
    }
}

/// `t = n(n-1)/2 - log_p |M|`.
pub fn compute_t(n: u32, log_m: u32) -> i64 {
    (n as i64) * (n as i64 - 1) / 2 - log_m as i64
}
