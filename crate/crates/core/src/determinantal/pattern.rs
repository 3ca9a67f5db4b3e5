use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{Field, Ring, RingRef};

/// A `k x n` matrix whose entries are distinct variables or zeros.
///
/// Every cell carries a variable name, zero cells included: the names are
/// those of the generic matrix `X`, and the zero cells form the set `Z` of
/// variables set to zero. Cells are stored row-major, matching the variable
/// order of [`SparsePattern::ring`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePattern {
    k: usize,
    n: usize,
    names: Vec<String>,
    zero: Vec<bool>,
}

fn default_name(r: usize, c: usize) -> String {
    format!("x_{}_{}", r + 1, c + 1)
}

impl SparsePattern {
    /// Pattern with explicit names for every cell.
    pub fn new(k: usize, n: usize, names: Vec<String>, zero: Vec<bool>) -> Result<Self> {
        if k > n {
            return Err(Error::TooManyRows { k, n });
        }
        if names.len() != k * n || zero.len() != k * n {
            return Err(Error::DimensionMismatch(format!(
                "a {k}x{n} pattern needs {} cells",
                k * n
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(SparsePattern { k, n, names, zero })
    }

    /// Generic names `x_i_j` with the given zero mask (row-major).
    pub fn from_mask(k: usize, n: usize, zero: Vec<bool>) -> Result<Self> {
        let names = (0..k)
            .flat_map(|r| (0..n).map(move |c| default_name(r, c)))
            .collect();
        Self::new(k, n, names, zero)
    }

    pub fn generic(k: usize, n: usize) -> Result<Self> {
        Self::from_mask(k, n, vec![false; k * n])
    }

    /// Parses the `.pat` format: `k n` followed by `k * n` tokens, each `0`,
    /// `*` or a variable name. `/` tokens are ignored, so a pattern may be
    /// written on one line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().filter(|t| *t != "/");
        let mut dim = |what: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what}")))
        };
        let k = dim("row count")?;
        let n = dim("column count")?;
        let cells: Vec<&str> = tokens.collect();
        if cells.len() != k * n {
            return Err(Error::Parse(format!(
                "expected {} cells, found {}",
                k * n,
                cells.len()
            )));
        }
        let explicit: HashSet<&str> = cells
            .iter()
            .copied()
            .filter(|t| *t != "0" && *t != "*")
            .collect();
        let mut names = Vec::with_capacity(k * n);
        let mut zero = Vec::with_capacity(k * n);
        for (idx, tok) in cells.iter().enumerate() {
            let (r, c) = (idx / n, idx % n);
            match *tok {
                "0" | "*" => {
                    let mut name = default_name(r, c);
                    while explicit.contains(name.as_str()) {
                        name.push('_');
                    }
                    names.push(name);
                    zero.push(*tok == "0");
                }
                name => {
                    names.push(name.to_string());
                    zero.push(false);
                }
            }
        }
        Self::new(k, n, names, zero)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Ring index of cell `(r, c)` (0-based).
    pub fn cell(&self, r: usize, c: usize) -> usize {
        r * self.n + c
    }

    pub fn name(&self, r: usize, c: usize) -> &str {
        &self.names[self.cell(r, c)]
    }

    pub fn is_zero(&self, r: usize, c: usize) -> bool {
        self.zero[self.cell(r, c)]
    }

    pub fn zero_mask(&self) -> &[bool] {
        &self.zero
    }

    pub fn zero_count(&self) -> usize {
        self.zero.iter().filter(|&&z| z).count()
    }

    /// The ring `S` of the generic matrix, variables in row-major order.
    pub fn ring(&self, field: Field) -> RingRef {
        Ring::new(self.names.clone(), field).expect("pattern names are distinct")
    }

    /// Ring indices of the zero cells: the set `Z`.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.k * self.n).filter(|&i| self.zero[i]).collect()
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&c| (0..self.k).all(|r| self.is_zero(r, c)))
            .collect()
    }

    pub fn has_zero_column(&self) -> bool {
        !self.zero_columns().is_empty()
    }

    /// Cell position of a variable, by name.
    pub fn position_of(&self, name: &str) -> Result<(usize, usize)> {
        let idx = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok((idx / self.n, idx % self.n))
    }

    /// The same pattern with one more cell set to zero.
    pub fn with_zero(&self, r: usize, c: usize) -> SparsePattern {
        let mut p = self.clone();
        let idx = p.cell(r, c);
        p.zero[idx] = true;
        p
    }

    /// Largest `|R| + |C|` over nonempty row sets `R` and nonempty column
    /// sets `C` with `X'[R, C] = 0`, or `None` when no zero exists.
    pub fn max_zero_rectangle(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for rows in 1u32..(1 << self.k) {
            let cols = (0..self.n)
                .filter(|&c| (0..self.k).all(|r| rows & (1 << r) == 0 || self.is_zero(r, c)))
                .count();
            if cols == 0 {
                continue;
            }
            let size = (rows.count_ones() as usize, cols);
            if best.is_none_or(|(a, b)| size.0 + size.1 > a + b) {
                best = Some(size);
            }
        }
        best
    }

    /// Canonical zero mask of the orbit under row and column permutations:
    /// the smallest, over row permutations, of the column-sorted mask.
    pub fn canonical_mask(&self) -> Vec<bool> {
        let mut best: Option<Vec<bool>> = None;
        for perm in (0..self.k).permutations(self.k) {
            let mut columns: Vec<Vec<bool>> = (0..self.n)
                .map(|c| perm.iter().map(|&r| self.is_zero(r, c)).collect())
                .collect();
            columns.sort();
            let mask: Vec<bool> = (0..self.k)
                .flat_map(|r| columns.iter().map(move |col| col[r]))
                .collect();
            if best.as_ref().is_none_or(|b| mask < *b) {
                best = Some(mask);
            }
        }
        best.unwrap_or_default()
    }

    /// A random zero mask with each cell zero with probability `density`.
    pub fn random<R: Rng>(k: usize, n: usize, density: f64, rng: &mut R) -> Result<Self> {
        let zero = (0..k * n).map(|_| rng.gen_bool(density)).collect();
        Self::from_mask(k, n, zero)
    }

    /// Every zero mask of a `k x n` matrix, in binary counting order.
    pub fn all_masks(k: usize, n: usize) -> impl Iterator<Item = SparsePattern> {
        let cells = k * n;
        (0u64..(1 << cells)).map(move |bits| {
            let zero = (0..cells).map(|i| bits & (1 << i) != 0).collect();
            SparsePattern::from_mask(k, n, zero).expect("k <= n")
        })
    }
}

/// Writes the `.pat` format; generic names print as `*`.
impl fmt::Display for SparsePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.n)?;
        for r in 0..self.k {
            let row: Vec<String> = (0..self.n)
                .map(|c| {
                    if self.is_zero(r, c) {
                        "0".to_string()
                    } else if self.name(r, c) == default_name(r, c) {
                        "*".to_string()
                    } else {
                        self.name(r, c).to_string()
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
