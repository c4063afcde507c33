use std::fmt;

use serde::Serialize;

use super::rules::{
    apply_capable_witness, apply_compute, apply_compute_quotient, record_group_order, rule_class_bound,
    rule_extraspecial, rule_green, rule_jones, rule_transgression_lower, Subject,
};
use super::{FactId, FactKind, Ledger, LedgerError, NewFact, Provenance};
use crate::catalog::{eval_order_exponent, eval_structure, Catalog, MethodChoice};
use crate::pcgroup::dsl::{directives, Directive};

/// Bound scripts shipped with the crate, by name.
pub const SCRIPTS: &[(&str, &str)] = &[
    ("es_class_bound", include_str!("../../scripts/es_class_bound.txt")),
    ("phi2_2111c_jones", include_str!("../../scripts/phi2_2111c_jones.txt")),
    ("phi7_squeeze", include_str!("../../scripts/phi7_squeeze.txt")),
    ("d8_wrong_upper", include_str!("../../scripts/d8_wrong_upper.txt")),
    ("phi8_32", include_str!("../../scripts/phi8_32.txt")),
];

pub fn builtin_script(name: &str) -> Option<&'static str> {
    SCRIPTS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Final bounds on `log_p |M(G)|` for the script's group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub subject: String,
    pub lower: Option<u32>,
    pub upper: Option<u32>,
    pub exact: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayOutcome {
    pub subject: String,
    pub prime: u64,
    pub ledger: Ledger,
    pub final_fact: Option<FactId>,
    pub conclusion: Conclusion,
    pub trace: Vec<String>,
    /// Citations of every assumed fact.
    pub assumed: Vec<String>,
}

impl ReplayOutcome {
    /// The derivation of the final fact, one rendered fact per line.
    pub fn derivation(&self) -> Vec<String> {
        match self.final_fact {
            Some(id) => self.ledger.closure(id).into_iter().map(|i| self.ledger.render(i)).collect(),
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayError {
    pub line: usize,
    pub step: String,
    pub msg: String,
    /// Trace up to the failing step.
    pub trace: Vec<String>,
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}: `{}`: {}", self.line, self.step, self.msg)
        }
    }
}

impl std::error::Error for ReplayError {}

/// Replays a shipped script. `p` overrides the prime chosen by the script.
pub fn replay_named(name: &str, p: Option<u64>) -> Result<ReplayOutcome, ReplayError> {
    let text = builtin_script(name).ok_or_else(|| ReplayError {
        line: 0,
        step: String::new(),
        msg: format!("no shipped script named `{name}`"),
        trace: Vec::new(),
    })?;
    replay_script(text, p)
}

struct Replay {
    subject: Option<Subject>,
    ledger: Ledger,
    trace: Vec<String>,
    last: Option<FactId>,
    p_override: Option<u64>,
}

fn split_quoted(rest: &str) -> Result<(Vec<&str>, Option<&str>), String> {
    match rest.find('"') {
        None => Ok((rest.split_whitespace().collect(), None)),
        Some(start) => {
            let tail = &rest[start + 1..];
            let end = tail.find('"').ok_or("unterminated quote")?;
            if !tail[end + 1..].trim().is_empty() {
                return Err("text after the quoted citation".into());
            }
            Ok((rest[..start].split_whitespace().collect(), Some(&tail[..end])))
        }
    }
}

fn ledger_err(e: LedgerError) -> String {
    e.to_string()
}

impl Replay {
    fn subject(&self) -> Result<&Subject, String> {
        self.subject.as_ref().ok_or_else(|| "no group yet (start with `use ID`)".into())
    }

    fn p(&self) -> Result<u64, String> {
        Ok(self.subject()?.group.p)
    }

    fn record(&mut self, id: FactId) {
        self.trace.push(self.ledger.render(id));
        self.last = Some(id);
    }

    fn step(&mut self, d: &Directive<'_>) -> Result<(), String> {
        let (args, quoted) = split_quoted(d.rest)?;
        match d.keyword {
            "disabled" => Err("script disabled".into()),
            "use" => self.use_group(&args),
            "assume" => self.assume(&args, quoted),
            "apply" => self.apply(&args),
            "expect" => self.expect(&args),
            other => Err(format!("unknown step `{other}`")),
        }
    }

    fn use_group(&mut self, args: &[&str]) -> Result<(), String> {
        if self.subject.is_some() {
            return Err("`use` may appear only once".into());
        }
        let id = *args.first().ok_or("`use` needs a catalog id")?;
        let cat = Catalog::builtin();
        let entry = cat.get(id).map_err(|e| e.to_string())?;
        let script_p = match args.get(1) {
            Some(s) => Some(s.parse::<u64>().map_err(|e| format!("bad prime `{s}`: {e}"))?),
            None => None,
        };
        let p = self
            .p_override
            .or(script_p)
            .unwrap_or_else(|| entry.constraint.default_prime());
        let group = cat.instantiate(entry, p).map_err(|e| e.to_string())?;
        self.ledger = Ledger::new(p);
        let s = Subject::new(group);
        let id = record_group_order(&mut self.ledger, &s).map_err(ledger_err)?;
        self.subject = Some(s);
        self.record(id);
        Ok(())
    }

    fn assume(&mut self, args: &[&str], citation: Option<&str>) -> Result<(), String> {
        let citation = citation.filter(|c| !c.trim().is_empty()).ok_or("an assumption needs a quoted citation")?;
        let [kind, value] = args else {
            return Err("usage: assume upper|lower|exact VALUE \"citation\"".into());
        };
        let kind = match *kind {
            "upper" => FactKind::Upper,
            "lower" => FactKind::Lower,
            "exact" => FactKind::Exact,
            other => return Err(format!("cannot assume `{other}`")),
        };
        let e = eval_order_exponent(value, self.p()?).map_err(|e| e.to_string())?;
        let name = self.subject()?.name.clone();
        let id = self
            .ledger
            .add(NewFact::new(name, kind, e, Provenance::Assumed(citation.to_string())))
            .map_err(ledger_err)?;
        self.record(id);
        let name = self.subject()?.name.clone();
        self.squeeze(&name)
    }

    fn apply(&mut self, args: &[&str]) -> Result<(), String> {
        let s = self.subject()?.clone();
        let method = |i: usize| -> Result<MethodChoice, String> {
            args.get(i).map_or(Ok(MethodChoice::Auto), |m| m.parse())
        };
        let arg = |i: usize, what: &str| -> Result<&str, String> {
            args.get(i).copied().ok_or_else(|| format!("missing {what}"))
        };
        let l = &mut self.ledger;
        let id = match *args.first().ok_or("`apply` needs a rule")? {
            "green" => rule_green(l, &s),
            "jones" => rule_jones(l, &s, arg(1, "central subgroup")?),
            "class_bound" => rule_class_bound(l, &s),
            "extraspecial" => rule_extraspecial(l, &s),
            "transgression_lower" => rule_transgression_lower(l, &s, arg(1, "central subgroup")?),
            "compute" => apply_compute(l, &s, method(1)?),
            "compute_quotient" => apply_compute_quotient(l, &s, arg(1, "central subgroup")?, method(2)?),
            "capable_witness" => apply_capable_witness(l, &s, arg(1, "witness id")?),
            other => return Err(format!("unknown rule `{other}`")),
        }
        .map_err(ledger_err)?;
        self.record(id);
        self.squeeze(&s.name)
    }

    fn squeeze(&mut self, subject: &str) -> Result<(), String> {
        if self.ledger.exact(subject).is_some() {
            return Ok(());
        }
        let Some(hi) = self.ledger.min_upper(subject) else {
            return Ok(());
        };
        let premises = match self.ledger.max_lower(subject) {
            Some(lo) if lo.exponent == hi.exponent => vec![lo.id, hi.id],
            None if hi.exponent == 0 => vec![hi.id],
            _ => return Ok(()),
        };
        let f = NewFact::new(
            subject,
            FactKind::Exact,
            hi.exponent,
            Provenance::Rule {
                name: "squeeze".into(),
                premises,
            },
        );
        let id = self.ledger.add(f).map_err(ledger_err)?;
        self.record(id);
        Ok(())
    }

    fn expect(&mut self, args: &[&str]) -> Result<(), String> {
        let name = self.subject()?.name.clone();
        let p = self.p()?;
        let kind = *args.first().ok_or("`expect` needs a kind")?;
        let value = args[1..].join(" ");
        let order = || eval_order_exponent(&value, p).map_err(|e| e.to_string());
        let shown = |f: Option<u32>| f.map_or("none".to_string(), |e| format!("{p}^{e}"));
        let l = &self.ledger;
        match kind {
            "upper" | "lower" => {
                let k = if kind == "upper" { FactKind::Upper } else { FactKind::Lower };
                let want = order()?;
                let got = l.best(&name, k).map(|f| f.exponent);
                if got != Some(want) {
                    return Err(format!("expected {kind} bound {p}^{want}, ledger has {}", shown(got)));
                }
            }
            "exact" => {
                let want = order()?;
                let got = l.exact(&name).map(|f| f.exponent);
                if got != Some(want) {
                    return Err(format!("expected |M| = {p}^{want}, ledger has {}", shown(got)));
                }
            }
            "structure" => {
                let want = eval_structure(&value, p).map_err(|e| e.to_string())?;
                let got = l.exact(&name).and_then(|f| f.structure.clone());
                if got.as_ref() != Some(&want) {
                    return Err(format!(
                        "expected M = {want}, ledger has {}",
                        got.map_or("no structure".into(), |g| g.render())
                    ));
                }
            }
            "assumed" => {
                let want: usize = value.parse().map_err(|e| format!("bad count `{value}`: {e}"))?;
                let got = l.assumed().len();
                if got != want {
                    return Err(format!("expected {want} assumed facts, ledger has {got}"));
                }
            }
            "capable" => {
                if l.capable(&name).is_none() {
                    return Err(format!("{name} is not known to be capable"));
                }
            }
            other => return Err(format!("unknown expectation `{other}`")),
        }
        self.trace.push(format!("expect {kind} {value}: ok").trim_end().replace(" :", ":"));
        Ok(())
    }
}

/// Replays a script. `p` overrides the prime chosen by the script.
pub fn replay_script(text: &str, p: Option<u64>) -> Result<ReplayOutcome, ReplayError> {
    let mut r = Replay {
        subject: None,
        ledger: Ledger::new(p.unwrap_or(0)),
        trace: Vec::new(),
        last: None,
        p_override: p,
    };
    for d in directives(text) {
        if let Err(msg) = r.step(&d) {
            return Err(ReplayError {
                line: d.line,
                step: format!("{} {}", d.keyword, d.rest).trim().to_string(),
                msg,
                trace: r.trace,
            });
        }
    }
    let s = r.subject.ok_or_else(|| ReplayError {
        line: 0,
        step: String::new(),
        msg: "empty script".into(),
        trace: Vec::new(),
    })?;
    let name = s.name.clone();
    let l = &r.ledger;
    let lower = l.max_lower(&name).map(|f| f.exponent);
    let upper = l.min_upper(&name).map(|f| f.exponent);
    let exact_fact = l.exact(&name);
    let exact = exact_fact.map(|f| f.exponent);
    let final_fact = exact_fact
        .or_else(|| l.min_upper(&name))
        .or_else(|| l.max_lower(&name))
        .map(|f| f.id)
        .or(r.last);
    let assumed = l
        .assumed()
        .into_iter()
        .filter_map(|f| match &f.provenance {
            Provenance::Assumed(c) => Some(c.clone()),
            _ => None,
        })
        .collect();
    Ok(ReplayOutcome {
        subject: name.clone(),
        prime: s.group.p,
        final_fact,
        conclusion: Conclusion {
            subject: name,
            lower,
            upper,
            exact,
        },
        trace: r.trace,
        assumed,
        ledger: r.ledger,
    })
}
