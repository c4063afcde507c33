//! A ledger of facts about `|M(G)|` with rule-based derivations and
//! replayable scripts.

mod rules;
mod script;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::AbelianGroup;

pub use rules::{
    apply_capable_witness, apply_compute, apply_compute_quotient, record_group_order, resolve_subgroup, rule_class_bound,
    rule_extraspecial, rule_green, rule_jones, rule_transgression_lower, Subject,
};
pub use script::{builtin_script, replay_named, replay_script, Conclusion, ReplayError, ReplayOutcome, SCRIPTS};

pub type FactId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactKind {
    /// `|G| = p^n`.
    GroupOrder,
    Exact,
    Upper,
    Lower,
    /// Exact isomorphism type of `M(G)`.
    Structure,
    /// `G ≅ E/Z(E)` for some `E`.
    Capable,
}

impl FactKind {
    pub fn name(self) -> &'static str {
        match self {
            FactKind::GroupOrder => "group-order",
            FactKind::Exact => "exact",
            FactKind::Upper => "upper",
            FactKind::Lower => "lower",
            FactKind::Structure => "structure",
            FactKind::Capable => "capable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Computed(String),
    Rule { name: String, premises: Vec<FactId> },
    Assumed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: FactId,
    pub subject: String,
    pub kind: FactKind,
    /// `log_p` of the order (of `G` for `GroupOrder`, of `M(G)` otherwise).
    pub exponent: u32,
    pub structure: Option<AbelianGroup>,
    pub provenance: Provenance,
    pub note: String,
}

impl Fact {
    fn bounds_above(&self) -> bool {
        matches!(self.kind, FactKind::Exact | FactKind::Upper | FactKind::Structure)
    }

    fn bounds_below(&self) -> bool {
        matches!(self.kind, FactKind::Exact | FactKind::Lower | FactKind::Structure)
    }

    pub fn is_assumed(&self) -> bool {
        matches!(self.provenance, Provenance::Assumed(_))
    }
}

/// Everything needed to add a fact; the ledger assigns the id.
#[derive(Clone, Debug)]
pub struct NewFact {
    pub subject: String,
    pub kind: FactKind,
    pub exponent: u32,
    pub structure: Option<AbelianGroup>,
    pub provenance: Provenance,
    pub note: String,
}

impl NewFact {
    pub fn new(subject: impl Into<String>, kind: FactKind, exponent: u32, provenance: Provenance) -> Self {
        NewFact {
            subject: subject.into(),
            kind,
            exponent,
            structure: None,
            provenance,
            note: String::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn structure(mut self, s: AbelianGroup) -> Self {
        self.structure = Some(s);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("missing premise: {0}")]
    MissingPremise(String),
    #[error("{subject}: {kind} p^{value} contradicts {other} (fact #{id})")]
    Inconsistent {
        subject: String,
        kind: &'static str,
        value: u32,
        other: String,
        id: FactId,
    },
    #[error("rule fact without premises")]
    NoPremises,
    #[error("premise #{0} does not exist")]
    BadPremise(FactId),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Compute(String),
}

/// Fact store for one prime.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Ledger {
    prime: u64,
    facts: Vec<Fact>,
}

impl Ledger {
    pub fn new(prime: u64) -> Self {
        Ledger {
            prime,
            facts: Vec::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.facts[id]
    }

    pub fn about<'a>(&'a self, subject: &'a str) -> impl Iterator<Item = &'a Fact> + 'a {
        self.facts.iter().filter(move |f| f.subject == subject)
    }

    fn of(&self, subject: &str) -> Vec<&Fact> {
        self.facts.iter().filter(|f| f.subject == subject).collect()
    }

    /// Tightest upper bound on `log_p |M|` (exact facts included).
    pub fn min_upper(&self, subject: &str) -> Option<&Fact> {
        self.of(subject).into_iter().filter(|f| f.bounds_above()).min_by_key(|f| f.exponent)
    }

    /// Tightest lower bound on `log_p |M|` (exact facts included).
    pub fn max_lower(&self, subject: &str) -> Option<&Fact> {
        self.of(subject).into_iter().filter(|f| f.bounds_below()).max_by_key(|f| f.exponent)
    }

    /// Tightest bound of exactly this kind.
    pub fn best(&self, subject: &str, kind: FactKind) -> Option<&Fact> {
        let it = self.of(subject).into_iter().filter(|f| f.kind == kind);
        match kind {
            FactKind::Lower => it.max_by_key(|f| f.exponent),
            _ => it.min_by_key(|f| f.exponent),
        }
    }

    pub fn exact(&self, subject: &str) -> Option<&Fact> {
        self.of(subject)
            .into_iter()
            .filter(|f| matches!(f.kind, FactKind::Exact | FactKind::Structure))
            .last()
    }

    pub fn group_order(&self, subject: &str) -> Option<&Fact> {
        self.best(subject, FactKind::GroupOrder)
    }

    pub fn capable(&self, subject: &str) -> Option<&Fact> {
        self.best(subject, FactKind::Capable)
    }

    /// Number of assumed facts in the ledger.
    pub fn assumed(&self) -> Vec<&Fact> {
        self.facts.iter().filter(|f| f.is_assumed()).collect()
    }

    /// Adds a fact after checking provenance and consistency against every
    /// bound already recorded for the subject. A rejected fact leaves the
    /// ledger unchanged.
    pub fn add(&mut self, f: NewFact) -> Result<FactId, LedgerError> {
        if let Provenance::Rule { premises, .. } = &f.provenance {
            if premises.is_empty() {
                return Err(LedgerError::NoPremises);
            }
            if let Some(&bad) = premises.iter().find(|&&id| id >= self.facts.len()) {
                return Err(LedgerError::BadPremise(bad));
            }
        }
        let probe = Fact {
            id: self.facts.len(),
            subject: f.subject,
            kind: f.kind,
            exponent: f.exponent,
            structure: f.structure,
            provenance: f.provenance,
            note: f.note,
        };
        if probe.bounds_below() {
            if let Some(u) = self.min_upper(&probe.subject) {
                if probe.exponent > u.exponent {
                    return Err(self.conflict(&probe, u));
                }
            }
        }
        if probe.bounds_above() {
            if let Some(l) = self.max_lower(&probe.subject) {
                if probe.exponent < l.exponent {
                    return Err(self.conflict(&probe, l));
                }
            }
        }
        if let (Some(s), Some(e)) = (&probe.structure, self.exact(&probe.subject)) {
            if let Some(t) = &e.structure {
                if s != t {
                    return Err(self.conflict(&probe, e));
                }
            }
        }
        let id = probe.id;
        self.facts.push(probe);
        Ok(id)
    }

    fn conflict(&self, f: &Fact, other: &Fact) -> LedgerError {
        LedgerError::Inconsistent {
            subject: f.subject.clone(),
            kind: f.kind.name(),
            value: f.exponent,
            other: format!("{} p^{}", other.kind.name(), other.exponent),
            id: other.id,
        }
    }

    /// All premises reachable from `id`, including `id`.
    pub fn closure(&self, id: FactId) -> Vec<FactId> {
        let mut seen = vec![false; self.facts.len()];
        let mut stack = vec![id];
        let mut out = Vec::new();
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            out.push(i);
            if let Provenance::Rule { premises, .. } = &self.facts[i].provenance {
                stack.extend(premises.iter().copied());
            }
        }
        out.sort_unstable();
        out
    }

    pub fn render(&self, id: FactId) -> String {
        let f = &self.facts[id];
        let p = self.prime;
        let value = match f.kind {
            FactKind::Capable => String::new(),
            FactKind::GroupOrder => format!(" |G| = {p}^{}", f.exponent),
            FactKind::Structure => format!(" {}", f.structure.as_ref().map_or(String::new(), |s| s.render())),
            _ => format!(" {p}^{}", f.exponent),
        };
        let prov = match &f.provenance {
            Provenance::Computed(how) => format!("computed: {how}"),
            Provenance::Rule { name, premises } => {
                let ps: Vec<String> = premises.iter().map(|i| format!("#{i}")).collect();
                format!("rule {name} from {}", ps.join(" "))
            }
            Provenance::Assumed(c) => format!("ASSUMED: \"{c}\""),
        };
        let note = if f.note.is_empty() {
            String::new()
        } else {
            format!("; {}", f.note)
        };
        format!("#{} {}: {}{} [{}{}]", f.id, f.subject, f.kind.name(), value, prov, note)
    }
}

impl fmt::Display for Ledger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.facts.len() {
            writeln!(f, "{}", self.render(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
