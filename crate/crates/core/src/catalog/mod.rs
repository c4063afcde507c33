//! Named presentations shipped as DSL files, method selection, suites and
//! reports.
//!
//! An entry file is a presentation in the pc DSL plus metadata lines:
//!
//! ```text
//! id Phi2_211b
//! title Phi2(211)b
//! params odd            # odd | two | any
//! suite table24
//! product ES_p_p3 Z(p,p)   # instead of gen/pow/comm lines
//! alias Phi2_31            # same group under another name
//! squeeze phi7_squeeze     # bound script used by the suites
//! disabled "reason"
//! expect n 4
//! expect order p^9 PAPER
//! expect structure [p,p] PAPER
//! expect t 6
//! ```

mod compute;
mod report;
mod suite;

use std::sync::OnceLock;

use thiserror::Error;

use crate::abgroup::{self, AbelianGroup};
use crate::pcgroup::dsl::{self, build_from_directives, directives, eval_expr, DslError};
use crate::pcgroup::{direct_product, PcError, PcPresentation};

pub use compute::{compute_multiplier, compute_t, ComputeError, MethodChoice};
pub use report::{emit_report, parse_reports, Report, ReportFormat, Status};
pub use suite::{check_group, run_entry, table24, verify_theorem, CheckSummary, Part, SuiteError};

macro_rules! catalog_files {
    ($($name:literal),* $(,)?) => {
        &[$(include_str!(concat!("../../catalog/", $name, ".dsl"))),*]
    };
}

const BUILTIN: &[&str] = catalog_files![
    "ES_p_p3", "ES_p2_p3", "ES_p_p5", "ES_p2_p5", "D8", "Q8",
    "Phi2_211a", "Phi2_1_4", "Phi2_31", "Phi2_22", "Phi2_211b", "Phi2_211c",
    "Phi3_211a", "Phi3_211b_1", "Phi3_211b_nu", "Phi3_1_4",
    "Phi4_1_5", "Phi5_21_4b", "Phi7_1_5", "Phi7_1_5_cover",
    "Xv_core", "Xvi_core", "Xvii_X",
    "MainThm_i", "MainThm_ii", "MainThm_iii", "MainThm_iv", "MainThm_v", "MainThm_vi",
    "MainThm_vii", "MainThm_viii", "MainThm_ix", "MainThm_x", "MainThm_xi", "MainThm_xii",
    "MainThm_xiii", "MainThm_xiv", "MainThm_xv", "MainThm_xvi", "MainThm_xvii", "MainThm_xviii",
    "MainThm_xix", "MainThm_xx", "MainThm_xxi", "MainThm_xxii", "MainThm_xxiii", "MainThm_xxiv",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{id}: line {line}: {msg}")]
    Parse { id: String, line: usize, msg: String },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{id} requires {constraint}, got p = {p}")]
    Constraint { id: String, constraint: Constraint, p: u64 },
    #[error("{id} is disabled: {reason}")]
    Disabled { id: String, reason: String },
    #[error("{id}: {err}")]
    Dsl { id: String, err: DslError },
    #[error("{id}: {err}")]
    Pc { id: String, err: PcError },
    #[error("bad value `{value}`: {msg}")]
    Value { value: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Constraint {
    Odd,
    Two,
    Any,
}

impl Constraint {
    pub fn admits(self, p: u64) -> bool {
        match self {
            Constraint::Odd => p != 2,
            Constraint::Two => p == 2,
            Constraint::Any => true,
        }
    }

    /// Smallest admissible prime.
    pub fn default_prime(self) -> u64 {
        match self {
            Constraint::Odd => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Constraint::Odd => "odd p",
            Constraint::Two => "p = 2",
            Constraint::Any => "any p",
        })
    }
}

/// A factor of a product recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Entry(String),
    /// Abelian group from cyclic orders, e.g. `Z(p,p^2)`.
    Abelian(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Presentation,
    Product(Vec<Atom>),
    Alias(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectKind {
    /// `|G| = p^n`
    N,
    /// `|M(G)|`
    Order,
    Structure,
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub kind: ExpectKind,
    pub value: String,
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub constraint: Constraint,
    pub suites: Vec<String>,
    pub recipe: Recipe,
    pub expects: Vec<Expectation>,
    pub squeeze: Option<String>,
    pub disabled: Option<String>,
    pub text: String,
}

const META: &[&str] = &["id", "title", "params", "suite", "product", "alias", "squeeze", "disabled", "expect"];

fn unquote(s: &str) -> String {
    s.trim().trim_matches('"').to_string()
}

impl CatalogEntry {
    /// Parses an entry; `fallback_id` names entries without an `id` line.
    pub fn parse(text: &str, fallback_id: &str) -> Result<Self, CatalogError> {
        let mut e = CatalogEntry {
            id: fallback_id.to_string(),
            title: String::new(),
            constraint: Constraint::Any,
            suites: Vec::new(),
            recipe: Recipe::Presentation,
            expects: Vec::new(),
            squeeze: None,
            disabled: None,
            text: text.to_string(),
        };
        let dirs = directives(text);
        if let Some(d) = dirs.iter().find(|d| d.keyword == "id") {
            e.id = d.rest.trim().to_string();
        }
        let err = |line: usize, msg: String| CatalogError::Parse {
            id: e.id.clone(),
            line,
            msg,
        };
        let mut has_pc = false;
        for d in &dirs {
            let rest = d.rest.trim();
            match d.keyword {
                "id" => {}
                "title" => e.title = rest.to_string(),
                "params" => {
                    e.constraint = match rest {
                        "odd" => Constraint::Odd,
                        "two" => Constraint::Two,
                        "any" => Constraint::Any,
                        other => return Err(err(d.line, format!("unknown params `{other}`"))),
                    }
                }
                "suite" => e.suites.push(rest.to_string()),
                "product" => {
                    let atoms = parse_atoms(rest).map_err(|m| err(d.line, m))?;
                    e.recipe = Recipe::Product(atoms);
                }
                "alias" => e.recipe = Recipe::Alias(rest.to_string()),
                "squeeze" => e.squeeze = Some(rest.to_string()),
                "disabled" => e.disabled = Some(unquote(rest)),
                "expect" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() < 2 || parts.len() > 3 {
                        return Err(err(d.line, "expected `expect <kind> <value> [source]`".into()));
                    }
                    let kind = match parts[0] {
                        "n" => ExpectKind::N,
                        "order" => ExpectKind::Order,
                        "structure" => ExpectKind::Structure,
                        "t" => ExpectKind::T,
                        other => return Err(err(d.line, format!("unknown expectation `{other}`"))),
                    };
                    e.expects.push(Expectation {
                        kind,
                        value: parts[1].to_string(),
                        source: parts.get(2).map(|s| s.to_string()),
                    });
                }
                _ => has_pc = true,
            }
        }
        if has_pc && e.recipe != Recipe::Presentation {
            return Err(err(0, "an entry has either a presentation or a recipe, not both".into()));
        }
        Ok(e)
    }

    pub fn in_suite(&self, suite: &str) -> bool {
        self.suites.iter().any(|s| s == suite)
    }

    pub fn expectation(&self, kind: ExpectKind) -> Option<&Expectation> {
        self.expects.iter().find(|x| x.kind == kind)
    }
}

fn parse_atoms(text: &str) -> Result<Vec<Atom>, String> {
    let mut atoms = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("Z(") {
            let close = r.find(')').ok_or("unclosed `Z(`")?;
            let orders: Vec<String> = r[..close].split(',').map(|s| s.trim().to_string()).collect();
            if orders.iter().any(|s| s.is_empty()) {
                return Err("empty order in `Z(...)`".into());
            }
            atoms.push(Atom::Abelian(orders));
            rest = r[close + 1..].trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            atoms.push(Atom::Entry(rest[..end].to_string()));
            rest = rest[end..].trim_start();
        }
    }
    if atoms.is_empty() {
        return Err("empty product".into());
    }
    Ok(atoms)
}

/// `log_p` of an integer expression in `p` that must be a power of `p`.
pub fn eval_order_exponent(value: &str, p: u64) -> Result<u32, CatalogError> {
    let bad = |msg: &str| CatalogError::Value {
        value: value.to_string(),
        msg: msg.to_string(),
    };
    let v = eval_expr(value, p, 0).map_err(|e| bad(&e.to_string()))?;
    let mut x = v;
    let mut e = 0;
    if x < 1 {
        return Err(bad("not positive"));
    }
    while x % p as i128 == 0 {
        x /= p as i128;
        e += 1;
    }
    if x != 1 {
        return Err(bad(&format!("not a power of {p}")));
    }
    Ok(e)
}

/// An abelian group written as `[d1,d2,...]` with each `d_i` an expression in `p`.
pub fn eval_structure(value: &str, p: u64) -> Result<AbelianGroup, CatalogError> {
    let inner = value
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| CatalogError::Value {
            value: value.to_string(),
            msg: "expected `[d1,d2,...]`".into(),
        })?;
    let mut orders = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let e = eval_order_exponent(part, p)?;
        orders.push(p.pow(e));
    }
    Ok(abgroup::from_orders(&orders))
}

/// A catalog group instantiated at a prime.
#[derive(Clone, Debug)]
pub struct Group {
    pub id: String,
    pub p: u64,
    pub pres: PcPresentation,
    /// Direct factors when built from a product recipe.
    pub factors: Vec<Factor>,
    pub squeeze: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Factor {
    Group(Group),
    Abelian(AbelianGroup),
}

impl Group {
    pub fn order_exponent(&self) -> u32 {
        self.pres.order_exponent()
    }

    pub fn is_product(&self) -> bool {
        !self.factors.is_empty()
    }

    /// Wraps a bare presentation.
    pub fn from_presentation(id: impl Into<String>, pres: PcPresentation) -> Self {
        Group {
            id: id.into(),
            p: pres.prime(),
            pres,
            factors: Vec::new(),
            squeeze: None,
        }
    }
}

fn abelian_presentation(orders: &[String], p: u64) -> Result<(PcPresentation, AbelianGroup), CatalogError> {
    let mut text = String::new();
    let mut cyc = Vec::new();
    for (i, o) in orders.iter().enumerate() {
        let e = eval_order_exponent(o, p)?;
        text.push_str(&format!("gen z{} {}\n", i + 1, p.pow(e)));
        cyc.push(p.pow(e));
    }
    let pres = dsl::parse(&text, p).map_err(|err| CatalogError::Dsl {
        id: format!("Z({})", orders.join(",")),
        err,
    })?;
    Ok((pres, abgroup::from_orders(&cyc)))
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_texts<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Self, CatalogError> {
        let entries = texts
            .into_iter()
            .enumerate()
            .map(|(i, t)| CatalogEntry::parse(t, &format!("entry{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog { entries })
    }

    /// The catalog shipped in `catalog/`.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_texts(BUILTIN.iter().copied()).expect("builtin catalog parses"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
    }

    pub fn suite<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CatalogEntry> + 'a {
        self.entries.iter().filter(move |e| e.in_suite(name))
    }

    pub fn load(&self, id: &str, p: u64) -> Result<Group, CatalogError> {
        let entry = self.get(id)?;
        self.instantiate(entry, p)
    }

    /// Instantiates an entry at `p`, checking the prime, the constraint and
    /// consistency.
    pub fn instantiate(&self, entry: &CatalogEntry, p: u64) -> Result<Group, CatalogError> {
        if !is_prime(p) {
            return Err(CatalogError::NotPrime(p));
        }
        if !entry.constraint.admits(p) {
            return Err(CatalogError::Constraint {
                id: entry.id.clone(),
                constraint: entry.constraint,
                p,
            });
        }
        if let Some(reason) = &entry.disabled {
            return Err(CatalogError::Disabled {
                id: entry.id.clone(),
                reason: reason.clone(),
            });
        }
        let id = entry.id.clone();
        let mut group = match &entry.recipe {
            Recipe::Presentation => {
                let dirs: Vec<_> = directives(&entry.text)
                    .into_iter()
                    .filter(|d| !META.contains(&d.keyword))
                    .collect();
                let pres = build_from_directives(&dirs, p).map_err(|err| CatalogError::Dsl { id: id.clone(), err })?;
                pres.ensure_consistent()
                    .map_err(|err| CatalogError::Pc { id: id.clone(), err })?;
                Group::from_presentation(id.clone(), pres.with_label(id.clone()))
            }
            Recipe::Alias(target) => {
                let mut g = self.load(target, p)?;
                g.id = id.clone();
                g.pres = g.pres.with_label(id.clone());
                g
            }
            Recipe::Product(atoms) => {
                let mut factors = Vec::new();
                let mut pres: Option<PcPresentation> = None;
                for atom in atoms {
                    let (fp, factor) = match atom {
                        Atom::Entry(name) => {
                            let g = self.load(name, p)?;
                            (g.pres.clone(), Factor::Group(g))
                        }
                        Atom::Abelian(orders) => {
                            let (fp, a) = abelian_presentation(orders, p)?;
                            (fp, Factor::Abelian(a))
                        }
                    };
                    pres = Some(match pres {
                        None => fp,
                        Some(acc) => direct_product(&acc, &fp).map_err(|err| CatalogError::Pc { id: id.clone(), err })?,
                    });
                    factors.push(factor);
                }
                let pres = pres.expect("nonempty product");
                pres.ensure_consistent()
                    .map_err(|err| CatalogError::Pc { id: id.clone(), err })?;
                Group {
                    id: id.clone(),
                    p,
                    pres: pres.with_label(id.clone()),
                    factors,
                    squeeze: None,
                }
            }
        };
        if entry.squeeze.is_some() {
            group.squeeze = entry.squeeze.clone();
        }
        Ok(group)
    }
}

/// Loads a group from entry text (catalog format or bare DSL); product and
/// alias recipes resolve against the builtin catalog.
pub fn load_group_dsl(text: &str, p: u64) -> Result<Group, CatalogError> {
    let entry = CatalogEntry::parse(text, "input")?;
    Catalog::builtin().instantiate(&entry, p)
}
