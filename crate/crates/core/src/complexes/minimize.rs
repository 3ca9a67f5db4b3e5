use super::{BasedComplex, SparseMatrix};
use crate::ring::Polynomial;

impl BasedComplex {
    /// Cancels unit entries until none remain.
    ///
    /// Pivot choice is the first constant entry in a row-major scan of
    /// `A_1, A_2, ...`. For a pivot `u` at `(r, c)` of `A_i`, the map `A_i` is
    /// replaced by its Schur complement on row `r` and column `c`, row `c` of
    /// `A_{i+1}` and column `r` of `A_{i-1}` are deleted, and so are the
    /// generators `r` of `F_{i-1}` and `c` of `F_i`. The row deletion in
    /// `A_{i+1}` relies on `A_i A_{i+1} = 0`.
    pub fn minimize(&self) -> BasedComplex {
        let mut c = self.clone();
        while let Some((i, r, col)) = c.first_constant_entry() {
            c = c.cancel(i, r, col);
        }
        c
    }

    fn first_constant_entry(&self) -> Option<(usize, usize, usize)> {
        for (idx, a) in self.maps.iter().enumerate() {
            for (r, c, p) in a.entries() {
                if p.is_constant() {
                    return Some((idx + 1, r, c));
                }
            }
        }
        None
    }

    fn cancel(&self, i: usize, pivot_row: usize, pivot_col: usize) -> BasedComplex {
        let ring = &self.ring;
        let field = ring.field();
        let a = self.map(i);
        let unit = a
            .get(pivot_row, pivot_col)
            .expect("pivot is nonzero")
            .constant_term();
        let inv = field.inv(&unit).expect("pivot is a unit");

        let pivot_column: Vec<(usize, Polynomial)> = a
            .entries()
            .filter(|&(r, c, _)| c == pivot_col && r != pivot_row)
            .map(|(r, _, p)| (r, p.clone()))
            .collect();
        let pivot_row_entries: Vec<(usize, Polynomial)> = a
            .entries()
            .filter(|&(r, c, _)| r == pivot_row && c != pivot_col)
            .map(|(_, c, p)| (c, p.scale(&inv)))
            .collect();
        let mut updated = a.clone();
        for (r, left) in &pivot_column {
            for (c, right) in &pivot_row_entries {
                let current = updated.entry_or_zero(*r, *c, ring);
                updated.set(*r, *c, &current - &(left * right));
            }
        }

        let keep_rows: Vec<usize> = (0..a.nrows()).filter(|&r| r != pivot_row).collect();
        let keep_cols: Vec<usize> = (0..a.ncols()).filter(|&c| c != pivot_col).collect();
        let mut maps: Vec<SparseMatrix> = self.maps.clone();
        maps[i - 1] = updated.select(&keep_rows, &keep_cols);
        if i >= 2 {
            let prev = &self.maps[i - 2];
            let all_rows: Vec<usize> = (0..prev.nrows()).collect();
            maps[i - 2] = prev.select(&all_rows, &keep_rows);
        }
        if i < self.maps.len() {
            let next = &self.maps[i];
            let all_cols: Vec<usize> = (0..next.ncols()).collect();
            maps[i] = next.select(&keep_cols, &all_cols);
        }
        let mut modules = self.modules.clone();
        modules[i - 1] = modules[i - 1].select(&keep_rows);
        modules[i] = modules[i].select(&keep_cols);
        BasedComplex::from_parts_unchecked(
            ring.clone(),
            self.grading.clone(),
            self.killed.clone(),
            modules,
            maps,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{deg, koszul};
    use super::super::{module_from_degrees, BasedComplex, SparseMatrix};
    use crate::ring::{Field, Grading, Polynomial, Ring};

    #[test]
    fn cancels_split_summand() {
        // 0 -> S(-1) --(1, 0)^T--> S(-1) + S(-1) --(x, 0)--> S is not minimal;
        // the unit pivots remove a pair and leave 0 -> S(-1) --x--> S.
        let r = Ring::new(["x"], Field::Rational).unwrap();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let zero = Polynomial::zero(&r);
        let one = Polynomial::one(&r);
        let a1 = SparseMatrix::from_rows(vec![vec![x.clone(), zero.clone()]], 2).unwrap();
        let a2 = SparseMatrix::from_rows(vec![vec![zero], vec![one]], 1).unwrap();
        let c = BasedComplex::new(
            r,
            Grading::Total,
            vec![
                module_from_degrees(vec![deg(0)]),
                module_from_degrees(vec![deg(1), deg(1)]),
                module_from_degrees(vec![deg(1)]),
            ],
            vec![a1, a2],
        )
        .unwrap();
        assert!(!c.is_minimal());
        let m = c.minimize();
        assert_eq!(m.ranks(), vec![1, 1, 0]);
        assert_eq!(m.map(1).get(0, 0).unwrap().to_string(), "x");
        assert!(m.is_minimal());
    }

    #[test]
    fn minimal_input_is_unchanged() {
        let r = Ring::new(["x", "y"], Field::Rational).unwrap();
        let k = koszul(&r, &["x", "y"]);
        assert_eq!(k.minimize(), k);
    }
}
