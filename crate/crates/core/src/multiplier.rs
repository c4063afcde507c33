use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abgroup::AbelianGroup;
use crate::oracle::H2Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    BlackburnEvens,
    Kunneth,
    Tails,
    Ledger,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::BlackburnEvens => "be",
            Method::Kunneth => "kunneth",
            Method::Tails => "tails",
            Method::Ledger => "ledger",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "be" | "blackburn_evens" => Ok(Method::BlackburnEvens),
            "kunneth" => Ok(Method::Kunneth),
            "tails" => Ok(Method::Tails),
            "ledger" => Ok(Method::Ledger),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// `M(G)` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierResult {
    pub prime: u64,
    pub invariants: AbelianGroup,
    pub method: Method,
    pub trace: Vec<String>,
    #[serde(skip)]
    pub h2: Option<H2Result>,
}

impl MultiplierResult {
    pub fn new(prime: u64, invariants: AbelianGroup, method: Method) -> Self {
        MultiplierResult {
            prime,
            invariants,
            method,
            trace: Vec::new(),
            h2: None,
        }
    }

    pub fn with_trace(mut self, line: String) -> Self {
        self.trace.push(line);
        self
    }

    /// `log_p |M(G)|`.
    pub fn log_order(&self) -> u32 {
        self.invariants.log_order(self.prime)
    }
}
