use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Refinement used when two monomials have the same weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tiebreak {
    Lex,
    GrevLex,
}

/// A monomial order. Variable 0 is the largest variable; for pattern rings
/// this is row-major order over the matrix cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Weight {
        weights: Vec<i64>,
        tiebreak: Tiebreak,
    },
}

impl TermOrder {
    pub fn weight(weights: Vec<i64>, tiebreak: Tiebreak) -> Self {
        TermOrder::Weight { weights, tiebreak }
    }

    /// Uniform weights in `1..=50` with a grevlex refinement.
    pub fn random_weight<R: Rng>(nvars: usize, rng: &mut R) -> Self {
        let weights = (0..nvars).map(|_| rng.gen_range(1..=50)).collect();
        TermOrder::Weight {
            weights,
            tiebreak: Tiebreak::GrevLex,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => a.cmp_grevlex(b),
            TermOrder::Weight { weights, tiebreak } => {
                match a.weight(weights).cmp(&b.weight(weights)) {
                    Ordering::Equal => match tiebreak {
                        Tiebreak::Lex => a.cmp(b),
                        Tiebreak::GrevLex => a.cmp_grevlex(b),
                    },
                    o => o,
                }
            }
        }
    }

    /// Checks the weight vector length and positivity against a ring size.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let TermOrder::Weight { weights, .. } = self {
            if weights.len() != nvars {
                return Err(Error::TermOrder(format!(
                    "{} weights for {} variables",
                    weights.len(),
                    nvars
                )));
            }
            if weights.iter().any(|&w| w < 0) {
                return Err(Error::TermOrder("negative weight".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Weight { weights, tiebreak } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                let t = match tiebreak {
                    Tiebreak::Lex => "lex",
                    Tiebreak::GrevLex => "grevlex",
                };
                write!(f, "weight:{};{}", w.join(","), t)
            }
        }
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "lex" => return Ok(TermOrder::Lex),
            "grevlex" => return Ok(TermOrder::GrevLex),
            _ => {}
        }
        let rest = s
            .strip_prefix("weight:")
            .ok_or_else(|| Error::TermOrder(format!("unknown order `{s}`")))?;
        let (ws, tb) = match rest.split_once(';') {
            Some((w, t)) => (w, t.trim()),
            None => (rest, "grevlex"),
        };
        let tiebreak = match tb {
            "lex" => Tiebreak::Lex,
            "grevlex" => Tiebreak::GrevLex,
            other => return Err(Error::TermOrder(format!("unknown tiebreak `{other}`"))),
        };
        let weights = ws
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::TermOrder(format!("bad weight `{w}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TermOrder::Weight { weights, tiebreak })
    }
}
