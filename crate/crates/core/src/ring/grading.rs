use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A degree in the grading group of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(dim: usize) -> Self {
        MultiDegree(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// How the variables of a ring are graded.
///
/// * `Total`: every variable has degree 1.
/// * `Fine`: variable `v` has the unit vector `e_v`.
/// * `RowColumn`: for a `k x n` matrix ring (row-major cells), `x_ij` has
///   degree `e_i + f_j` in `Z^(k+n)`.
/// * `Weighted`: a leading weight component followed by the inner grading.
///   Variables past the end of `weights` (the homogenizing variable) have
///   weight 1 and zero inner degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Total,
    Fine,
    RowColumn {
        k: usize,
        n: usize,
    },
    Weighted {
        weights: Vec<i64>,
        inner: Box<Grading>,
    },
}

impl Grading {
    pub fn dimension(&self, nvars: usize) -> usize {
        match self {
            Grading::Total => 1,
            Grading::Fine => nvars,
            Grading::RowColumn { k, n } => k + n,
            Grading::Weighted { weights, inner } => 1 + inner.dimension(weights.len()),
        }
    }

    pub fn var_degree(&self, var: usize, nvars: usize) -> Result<MultiDegree> {
        match self {
            Grading::Total => Ok(MultiDegree(vec![1])),
            Grading::Fine => {
                let mut d = vec![0; nvars];
                d[var] = 1;
                Ok(MultiDegree(d))
            }
            Grading::RowColumn { k, n } => {
                if var >= k * n {
                    return Err(Error::Grading(format!(
                        "variable {var} outside the {k}x{n} matrix"
                    )));
                }
                let mut d = vec![0; k + n];
                d[var / n] = 1;
                d[k + var % n] = 1;
                Ok(MultiDegree(d))
            }
            Grading::Weighted { weights, inner } => {
                let base = weights.len();
                let mut d = Vec::with_capacity(self.dimension(nvars));
                if var < base {
                    d.push(weights[var]);
                    d.extend(inner.var_degree(var, base)?.0);
                } else {
                    d.push(1);
                    d.extend(std::iter::repeat_n(0, inner.dimension(base)));
                }
                Ok(MultiDegree(d))
            }
        }
    }

    pub fn var_degrees(&self, nvars: usize) -> Result<Vec<MultiDegree>> {
        (0..nvars).map(|v| self.var_degree(v, nvars)).collect()
    }

    /// Coarsening to a single integer: ordinary degree for `Total`, `Fine` and
    /// `RowColumn`; the weight for `Weighted`.
    pub fn total(&self, d: &MultiDegree) -> i64 {
        match self {
            Grading::Total => d.0[0],
            Grading::Fine => d.0.iter().sum(),
            Grading::RowColumn { k, .. } => d.0[..*k].iter().sum(),
            Grading::Weighted { .. } => d.0[0],
        }
    }

    pub fn monomial_degree(&self, m: &Monomial, var_degrees: &[MultiDegree]) -> MultiDegree {
        let dim = var_degrees.first().map_or(0, |d| d.dim());
        let mut out = vec![0i64; dim];
        for v in m.support() {
            let e = m.exponent(v) as i64;
            for (o, x) in out.iter_mut().zip(&var_degrees[v].0) {
                *o += e * x;
            }
        }
        MultiDegree(out)
    }

    /// Drops the weight component of a `Weighted` degree.
    pub fn strip_weight(&self, d: &MultiDegree) -> MultiDegree {
        match self {
            Grading::Weighted { .. } => MultiDegree(d.0[1..].to_vec()),
            _ => d.clone(),
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Total => write!(f, "total"),
            Grading::Fine => write!(f, "fine"),
            Grading::RowColumn { k, n } => write!(f, "rowcol:{k},{n}"),
            Grading::Weighted { weights, inner } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                write!(f, "weighted:{}|{}", w.join(","), inner)
            }
        }
    }
}

impl FromStr for Grading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "total" => return Ok(Grading::Total),
            "fine" => return Ok(Grading::Fine),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("rowcol:") {
            let (k, n) = rest
                .split_once(',')
                .ok_or_else(|| Error::Grading(format!("bad grading `{s}`")))?;
            let k = k.trim().parse().map_err(|_| Error::Grading(s.into()))?;
            let n = n.trim().parse().map_err(|_| Error::Grading(s.into()))?;
            return Ok(Grading::RowColumn { k, n });
        }
        if let Some(rest) = s.strip_prefix("weighted:") {
            let (w, inner) = rest
                .split_once('|')
                .ok_or_else(|| Error::Grading(format!("bad grading `{s}`")))?;
            let weights = w
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Grading(s.into()))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Grading::Weighted {
                weights,
                inner: Box::new(inner.parse()?),
            });
        }
        Err(Error::Grading(format!("unknown grading `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rowcol_degrees() {
        let g = Grading::RowColumn { k: 2, n: 3 };
        assert_eq!(g.var_degree(4, 6).unwrap().0, vec![0, 1, 0, 1, 0]);
        assert!(g.var_degree(6, 7).is_err());
        assert_eq!(g.total(&MultiDegree(vec![1, 1, 1, 0, 1])), 2);
    }

    #[test]
    fn weighted_appends_homogenizer() {
        let g = Grading::Weighted {
            weights: vec![1, 1, 2, 2, 2, 2],
            inner: Box::new(Grading::RowColumn { k: 2, n: 3 }),
        };
        assert_eq!(g.var_degree(2, 7).unwrap().0, vec![2, 1, 0, 0, 0, 1]);
        assert_eq!(g.var_degree(6, 7).unwrap().0, vec![1, 0, 0, 0, 0, 0]);
        let parsed: Grading = g.to_string().parse().unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn string_round_trip() {
        for s in ["total", "fine", "rowcol:3,4", "weighted:1,2|total"] {
            assert_eq!(s.parse::<Grading>().unwrap().to_string(), s);
        }
    }
}
