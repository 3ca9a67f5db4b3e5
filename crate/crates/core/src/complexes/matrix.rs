use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{Polynomial, RingRef};

/// Sparse matrix with polynomial entries, stored as `(row, col) -> entry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Polynomial)>,
    ) -> Result<Self> {
        let mut m = SparseMatrix::zero(nrows, ncols);
        for (r, c, p) in entries {
            if r >= nrows || c >= ncols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            m.set(r, c, p);
        }
        Ok(m)
    }

    /// Row-major dense construction, convenient for fixtures.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>, ncols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::new();
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (c, p) in row.into_iter().enumerate() {
                entries.push((r, c, p));
            }
        }
        Self::from_entries(nrows, ncols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Polynomial> {
        self.entries.get(&(r, c))
    }

    pub fn entry_or_zero(&self, r: usize, c: usize, ring: &RingRef) -> Polynomial {
        self.get(r, c)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(ring))
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero entries grouped by column: `columns()[c]` lists `(row, entry)`.
    pub fn columns(&self) -> Vec<Vec<(usize, &Polynomial)>> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (&(r, c), p) in &self.entries {
            cols[c].push((r, p));
        }
        cols
    }

    pub fn rows(&self) -> Vec<Vec<(usize, &Polynomial)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (&(r, c), p) in &self.entries {
            rows[r].push((c, p));
        }
        rows
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        let mut nonzero = vec![false; self.ncols];
        for &(_, c) in self.entries.keys() {
            nonzero[c] = true;
        }
        (0..self.ncols).filter(|&c| !nonzero[c]).collect()
    }

    /// Applies `f` to every entry, dropping entries that become zero.
    pub fn map_entries(
        &self,
        mut f: impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<Self> {
        let mut out = SparseMatrix::zero(self.nrows, self.ncols);
        for (&(r, c), p) in &self.entries {
            out.set(r, c, f(p)?);
        }
        Ok(out)
    }

    /// Keeps the listed rows and columns (in the given order) and reindexes.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut rmap = vec![None; self.nrows];
        for (i, &r) in rows.iter().enumerate() {
            rmap[r] = Some(i);
        }
        let mut cmap = vec![None; self.ncols];
        for (i, &c) in cols.iter().enumerate() {
            cmap[c] = Some(i);
        }
        let mut out = SparseMatrix::zero(rows.len(), cols.len());
        for (&(r, c), p) in &self.entries {
            if let (Some(nr), Some(nc)) = (rmap[r], cmap[c]) {
                out.entries.insert((nr, nc), p.clone());
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix, ring: &RingRef) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let left_cols = self.columns();
        let mut acc: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for (&(m, c), q) in &rhs.entries {
            for &(r, p) in &left_cols[m] {
                let prod = p * q;
                let e = acc.entry((r, c)).or_insert_with(|| Polynomial::zero(ring));
                *e = &*e + &prod;
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            entries: acc,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}
