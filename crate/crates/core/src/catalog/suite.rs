use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use super::compute::{compute_multiplier, compute_t, MethodChoice};
use super::report::{Report, Status};
use super::{eval_order_exponent, eval_structure, is_prime, Catalog, CatalogEntry, CatalogError, ExpectKind};
use crate::abgroup::AbelianGroup;
use crate::bounds::replay_named;
use crate::multiplier::Method;
use crate::oracle::oracle_cap;
use crate::pcgroup::{abelianization, structure_report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Odd,
    Two,
}

impl FromStr for Part {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "odd" => Ok(Part::Odd),
            "two" => Ok(Part::Two),
            other => Err(format!("unknown part `{other}` (expected odd or two)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("part {part} needs {need}, got p = {p}")]
    PartMismatch { part: &'static str, need: &'static str, p: u64 },
}

/// What the computation produced before expectations are checked.
struct Outcome {
    n: u32,
    method: String,
    log_m: u32,
    structure: Option<AbelianGroup>,
    assumed: Vec<String>,
    trace: Vec<String>,
}

fn compute_entry(cat: &Catalog, entry: &CatalogEntry, p: u64, choice: MethodChoice) -> Result<Outcome, String> {
    let g = cat.instantiate(entry, p).map_err(|e| e.to_string())?;
    let n = g.order_exponent();
    if choice == MethodChoice::Only(Method::Ledger) {
        let script = g
            .squeeze
            .as_deref()
            .ok_or_else(|| format!("{} has no bound script", entry.id))?;
        let out = replay_named(script, Some(p)).map_err(|e| e.to_string())?;
        let log_m = out
            .conclusion
            .exact
            .ok_or_else(|| format!("script {script} did not determine |M|"))?;
        let mut trace = out.trace;
        match compute_multiplier(&g, MethodChoice::Only(Method::Tails)) {
            Ok(r) if r.log_order() == log_m => trace.push(format!("cross-check: tails gives {}", r.invariants)),
            Ok(r) => return Err(format!("tails gives {} against ledger order {p}^{log_m}", r.invariants)),
            Err(e) => trace.push(format!("cross-check skipped: {e}")),
        }
        return Ok(Outcome {
            n,
            method: Method::Ledger.tag().into(),
            log_m,
            structure: None,
            assumed: out.assumed,
            trace,
        });
    }
    let r = compute_multiplier(&g, choice).map_err(|e| e.to_string())?;
    Ok(Outcome {
        n,
        method: r.method.tag().into(),
        log_m: r.log_order(),
        structure: Some(r.invariants.clone()),
        assumed: Vec::new(),
        trace: r.trace,
    })
}

fn check_expectations(entry: &CatalogEntry, p: u64, o: &Outcome) -> Vec<String> {
    let mut failures = Vec::new();
    let t = compute_t(o.n, o.log_m);
    for x in &entry.expects {
        let msg = match x.kind {
            ExpectKind::N => eval_order_exponent(&format!("p^({})", x.value), p)
                .map(|n| (n != o.n).then(|| format!("expected n = {n}, got {}", o.n))),
            ExpectKind::Order => eval_order_exponent(&x.value, p).map(|e| {
                (e != o.log_m).then(|| format!("expected |M| = {p}^{e}, got {p}^{}", o.log_m))
            }),
            ExpectKind::Structure => eval_structure(&x.value, p).map(|want| match &o.structure {
                Some(got) if *got == want => None,
                Some(got) => Some(format!("expected M = {want}, got {got}")),
                None if want.log_order(p) == o.log_m => None,
                None => Some(format!("expected M = {want}, got |M| = {p}^{}", o.log_m)),
            }),
            ExpectKind::T => x
                .value
                .parse::<i64>()
                .map(|want| (want != t).then(|| format!("expected t = {want}, got {t}")))
                .map_err(|e| CatalogError::Value {
                    value: x.value.clone(),
                    msg: e.to_string(),
                }),
        };
        match msg {
            Ok(None) => {}
            Ok(Some(m)) => failures.push(m),
            Err(e) => failures.push(e.to_string()),
        }
    }
    failures
}

/// Computes one entry and checks its `expect` lines.
pub fn run_entry(cat: &Catalog, entry: &CatalogEntry, p: u64, choice: MethodChoice) -> Report {
    let start = Instant::now();
    let mut report = Report {
        group: entry.id.clone(),
        p,
        n: 0,
        method: String::new(),
        multiplier: String::new(),
        t: None,
        status: Status::Fail,
        assumed: Vec::new(),
        trace: Vec::new(),
        millis: 0,
    };
    if let Some(reason) = &entry.disabled {
        report.status = Status::Skipped;
        report.trace.push(format!("disabled: {reason}"));
        return report;
    }
    match compute_entry(cat, entry, p, choice) {
        Err(e) => report.trace.push(format!("error: {e}")),
        Ok(o) => {
            let failures = check_expectations(entry, p, &o);
            report.n = o.n;
            report.method = o.method.clone();
            report.multiplier = match &o.structure {
                Some(s) => s.render(),
                None => format!("order {p}^{}", o.log_m),
            };
            report.t = Some(compute_t(o.n, o.log_m));
            report.trace = o.trace;
            report.assumed = o.assumed;
            report.status = if !failures.is_empty() {
                report.trace.extend(failures.into_iter().map(|f| format!("FAIL: {f}")));
                Status::Fail
            } else if report.assumed.is_empty() {
                Status::Pass
            } else {
                Status::PassWithAssumption
            };
        }
    }
    report.millis = start.elapsed().as_millis() as u64;
    report
}

fn run_suite(cat: &Catalog, entries: Vec<&CatalogEntry>, p: u64, choose: impl Fn(&CatalogEntry) -> MethodChoice + Sync) -> Vec<Report> {
    entries.par_iter().map(|e| run_entry(cat, e, p, choose(e))).collect()
}

/// Runs every entry of one part of the classification at `p` and requires
/// `t = 6` for each.
pub fn verify_theorem(p: u64, part: Part) -> Result<Vec<Report>, SuiteError> {
    if !is_prime(p) {
        return Err(SuiteError::NotPrime(p));
    }
    let (suite, ok) = match part {
        Part::Odd => ("main_odd", p != 2),
        Part::Two => ("main_two", p == 2),
    };
    if !ok {
        return Err(SuiteError::PartMismatch {
            part: if part == Part::Odd { "odd" } else { "two" },
            need: if part == Part::Odd { "an odd prime" } else { "p = 2" },
            p,
        });
    }
    let cat = Catalog::builtin();
    let entries: Vec<_> = cat.suite(suite).collect();
    let mut reports = run_suite(cat, entries, p, |e| {
        if e.squeeze.is_some() {
            MethodChoice::Only(Method::Ledger)
        } else {
            MethodChoice::Auto
        }
    });
    for r in reports.iter_mut() {
        if r.status.is_pass() && r.t != Some(6) {
            r.status = Status::Fail;
            r.trace.push(format!("FAIL: t = {:?}, expected 6", r.t));
        }
    }
    Ok(reports)
}

/// The order-`p^4` multiplier table, by the oracle whenever `p^4` is within
/// the oracle cap.
pub fn table24(p: u64) -> Result<Vec<Report>, SuiteError> {
    if !is_prime(p) {
        return Err(SuiteError::NotPrime(p));
    }
    if p == 2 {
        return Err(SuiteError::PartMismatch {
            part: "table24",
            need: "an odd prime",
            p,
        });
    }
    let cat = Catalog::builtin();
    let choice = if p.pow(4) <= oracle_cap() {
        MethodChoice::Only(Method::Oracle)
    } else {
        MethodChoice::Auto
    };
    Ok(run_suite(cat, cat.suite("table24").collect(), p, |_| choice))
}

/// Consistency and structure summary of one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSummary {
    pub id: String,
    pub p: u64,
    pub n: u32,
    pub generators: usize,
    pub class: usize,
    pub derived_log: u32,
    pub center_log: u32,
    pub exponent_log: u32,
    pub abelianization: AbelianGroup,
    pub expected_n: Option<u32>,
}

impl CheckSummary {
    pub fn is_pass(&self) -> bool {
        self.expected_n.map_or(true, |n| n == self.n)
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        writeln!(f, "group      {}", self.id)?;
        writeln!(f, "consistent yes ({} generators)", self.generators)?;
        writeln!(f, "order      {p}^{}", self.n)?;
        if let Some(n) = self.expected_n {
            writeln!(f, "expected   {p}^{n} ({})", if n == self.n { "ok" } else { "MISMATCH" })?;
        }
        writeln!(f, "class      {}", self.class)?;
        writeln!(f, "|G'|       {p}^{}", self.derived_log)?;
        writeln!(f, "|Z(G)|     {p}^{}", self.center_log)?;
        writeln!(f, "exponent   {p}^{}", self.exponent_log)?;
        write!(f, "G/G'       {}", self.abelianization)
    }
}

/// Instantiates an entry (which runs the consistency check) and reports its
/// structure.
pub fn check_group(id: &str, p: u64) -> Result<CheckSummary, CatalogError> {
    let cat = Catalog::builtin();
    let entry = cat.get(id)?;
    let g = cat.instantiate(entry, p)?;
    let s = structure_report(&g.pres).map_err(|err| CatalogError::Pc { id: id.to_string(), err })?;
    let expected_n = entry
        .expectation(ExpectKind::N)
        .and_then(|x| eval_order_exponent(&format!("p^({})", x.value), p).ok());
    Ok(CheckSummary {
        id: id.to_string(),
        p,
        n: g.order_exponent(),
        generators: g.pres.num_gens(),
        class: s.class,
        derived_log: s.derived.order_exponent(),
        center_log: s.center.order_exponent(),
        exponent_log: s.exponent_log,
        abelianization: abelianization(&g.pres),
        expected_n,
    })
}
