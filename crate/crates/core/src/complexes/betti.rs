use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}`: homological index `i`, internal degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    entries: Vec<(usize, i64, u64)>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64, u64)>) -> Self {
        let mut t = Self::new();
        for (i, j, b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn add(&mut self, i: usize, j: i64, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += count;
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `beta_i = sum_j beta_{i,j}` for `i = 0..=pdim`.
    pub fn totals(&self) -> Vec<u64> {
        let Some(top) = self.pdim() else {
            return Vec::new();
        };
        let mut out = vec![0; top + 1];
        for (i, _, b) in self.entries() {
            out[i] += b;
        }
        out
    }

    pub fn pdim(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `max (j - i)` over the nonzero entries.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// True when, past position 0, position `i` lives only in degree `d + i - 1`.
    pub fn is_linear_from(&self, d: i64) -> bool {
        self.entries()
            .filter(|&(i, _, _)| i > 0)
            .all(|(i, j, _)| j == d + i as i64 - 1)
    }

    /// The degree of the generators at position 1, when they share one degree.
    pub fn generator_degree(&self) -> Option<i64> {
        let mut degrees = self
            .entries()
            .filter(|&(i, _, _)| i == 1)
            .map(|(_, j, _)| j);
        let first = degrees.next()?;
        degrees.all(|j| j == first).then_some(first)
    }

    /// `self <= other` entrywise.
    pub fn le(&self, other: &BettiTable) -> bool {
        self.entries().all(|(i, j, b)| b <= other.get(i, j))
    }

    /// Entrywise difference; fails on the first negative entry.
    pub fn checked_sub(&self, other: &BettiTable) -> Result<BettiTable> {
        let mut out = self.clone();
        for (i, j, b) in other.entries() {
            let have = out.get(i, j);
            if have < b {
                return Err(Error::NegativeBetti { i, j });
            }
            if have == b {
                out.entries.remove(&(i, j));
            } else {
                out.entries.insert((i, j), have - b);
            }
        }
        Ok(out)
    }

    /// Moves every entry from `(i, j)` to `(i + di, j + dj)`; entries that
    /// would land at a negative position are dropped.
    pub fn shifted(&self, di: i64, dj: i64) -> BettiTable {
        BettiTable::from_entries(self.entries().filter_map(|(i, j, b)| {
            let ni = i as i64 + di;
            (ni >= 0).then_some((ni as usize, j + dj, b))
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BettiJson {
            entries: self.entries().collect(),
        })
        .expect("betti tables serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<BettiTable> {
        let parsed: BettiJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(BettiTable::from_entries(parsed.entries))
    }
}

/// Step-diagram layout: one column per homological index, one row per `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Some(pdim), Some(reg)) = (self.pdim(), self.regularity()) else {
            return write!(f, "(empty)");
        };
        let low = self
            .entries
            .keys()
            .map(|&(i, j)| j - i as i64)
            .min()
            .unwrap();
        let totals = self.totals();
        let mut cells: Vec<Vec<String>> = Vec::new();
        let header: Vec<String> = (0..=pdim).map(|i| i.to_string()).collect();
        let total_row: Vec<String> = totals.iter().map(|b| b.to_string()).collect();
        let mut labels = vec![String::new(), "total:".to_string()];
        cells.push(header);
        cells.push(total_row);
        for row in low..=reg {
            labels.push(format!("{row}:"));
            cells.push(
                (0..=pdim)
                    .map(|i| match self.get(i, row + i as i64) {
                        0 => ".".to_string(),
                        b => b.to_string(),
                    })
                    .collect(),
            );
        }
        let label_width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let col_width: Vec<usize> = (0..=pdim)
            .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap_or(1))
            .collect();
        for (k, (label, row)) in labels.iter().zip(&cells).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{label:>label_width$}")?;
            for (cell, w) in row.iter().zip(&col_width) {
                write!(f, " {cell:>w$}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> BettiTable {
        BettiTable::from_entries([(0, 0, 1), (1, 3, 2), (2, 4, 1)])
    }

    #[test]
    fn summary_statistics() {
        let b = example();
        assert_eq!(b.totals(), vec![1, 2, 1]);
        assert_eq!(b.pdim(), Some(2));
        assert_eq!(b.regularity(), Some(2));
        assert!(b.is_linear_from(3));
        assert!(!b.is_linear_from(2));
        assert_eq!(b.generator_degree(), Some(3));
    }

    #[test]
    fn step_diagram_layout() {
        let text = example().to_string();
        let expected = "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . . .\n    2: . 2 1";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_round_trip() {
        let b = example();
        let v = b.to_json();
        assert_eq!(v.to_string(), r#"{"entries":[[0,0,1],[1,3,2],[2,4,1]]}"#);
        assert_eq!(BettiTable::from_json(&v).unwrap(), b);
    }

    #[test]
    fn subtraction_rejects_negative() {
        let b = example();
        let small = BettiTable::from_entries([(0, 0, 1), (1, 3, 1)]);
        let d = b.checked_sub(&small).unwrap();
        assert_eq!(d, BettiTable::from_entries([(1, 3, 1), (2, 4, 1)]));
        assert!(matches!(
            small.checked_sub(&b),
            Err(Error::NegativeBetti { i: 1, j: 3 })
        ));
        assert!(small.le(&b));
    }
}
