//! Sparse exact linear algebra over the coefficient fields: rank, kernels and
//! incremental row echelon forms.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{Field, Scalar};

/// Field operations used by the elimination routines.
pub trait LinField {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_scalar(&self, q: &Scalar) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// `Z/p` with word-sized residues; `p < 2^31` so products fit in a `u64`.
#[derive(Clone, Copy, Debug)]
pub struct ModP(pub u64);

impl LinField for ModP {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_scalar(&self, q: &Scalar) -> u64 {
        Field::Prime(self.0).to_residue(q)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*a))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        let p = self.0;
        let (mut base, mut exp, mut acc) = (*a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

/// Exact rationals.
#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl LinField for Rationals {
    type E = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, q: &Scalar) -> Scalar {
        q.clone()
    }
    fn to_scalar(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
}

pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c * b` for sorted sparse vectors.
pub fn axpy<F: LinField>(
    f: &F,
    a: &[(usize, F::E)],
    c: &F::E,
    b: &[(usize, F::E)],
) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.mul(c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts by column and merges duplicate columns.
pub fn canonicalize<F: LinField>(f: &F, mut v: SparseVec<F::E>) -> SparseVec<F::E> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::E> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(&last.1, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|e| !f.is_zero(&e.1));
    out
}

/// Incrementally built row echelon form; each pivot row has leading entry 1.
pub struct Echelon<'a, F: LinField> {
    field: &'a F,
    pivots: HashMap<usize, SparseVec<F::E>>,
}

impl<'a, F: LinField> Echelon<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces the leading entries of `row` against the pivots.
    pub fn reduce(&self, mut row: SparseVec<F::E>) -> SparseVec<F::E> {
        while let Some((c, v)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let coeff = self.field.neg(&v);
                    row = axpy(self.field, &row, &coeff, p);
                }
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of the previous rows.
    pub fn insert(&mut self, row: SparseVec<F::E>) -> bool {
        let row = self.reduce(row);
        let Some((c, v)) = row.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&v);
        let row = row
            .into_iter()
            .map(|(i, x)| (i, self.field.mul(&x, &inv)))
            .collect();
        self.pivots.insert(c, row);
        true
    }
}

pub fn rank<F: LinField>(f: &F, rows: impl IntoIterator<Item = SparseVec<F::E>>) -> usize {
    let mut ech = Echelon::new(f);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Rank over `field` of a matrix with integer entries, given as sparse rows.
pub fn integer_rank(field: Field, rows: &[SparseVec<i64>]) -> usize {
    fn go<F: LinField>(f: &F, rows: &[SparseVec<i64>]) -> usize {
        let convert = |row: &SparseVec<i64>| {
            let row = row
                .iter()
                .map(|&(c, x)| (c, f.from_scalar(&Scalar::from_integer(BigInt::from(x)))))
                .collect();
            canonicalize(f, row)
        };
        rank(f, rows.iter().map(convert))
    }
    match field {
        Field::Prime(p) => go(&ModP(p), rows),
        Field::Rational => go(&Rationals, rows),
    }
}

/// Basis of `{c : sum_i c_i rows[i] = 0}` as sparse vectors over row indices.
pub fn left_kernel<F: LinField>(
    f: &F,
    rows: &[SparseVec<F::E>],
    ncols: usize,
) -> Vec<SparseVec<F::E>> {
    let mut ech = Echelon::new(f);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.push((ncols + i, f.one()));
        let red = ech.reduce(aug);
        match red.first() {
            Some((c, _)) if *c < ncols => {
                ech.insert(red);
            }
            Some(_) => {
                kernel.push(red.into_iter().map(|(c, x)| (c - ncols, x)).collect());
            }
            None => unreachable!("tag column keeps the row nonzero"),
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_mod_p_and_rationals_agree_on_integer_matrix() {
        let rows_i: Vec<Vec<(usize, i64)>> = vec![
            vec![(0, 1), (1, 2), (2, 3)],
            vec![(0, 4), (1, 5), (2, 6)],
            vec![(0, 7), (1, 8), (2, 9)],
        ];
        let fp = ModP(32003);
        let rows: Vec<_> = rows_i
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(c, v)| (c, fp.from_scalar(&Scalar::from_integer(v.into()))))
                    .collect()
            })
            .collect();
        assert_eq!(rank(&fp, rows), 2);
        let q = Rationals;
        let rows: Vec<_> = rows_i
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(c, v)| (c, Scalar::from_integer(v.into())))
                    .collect()
            })
            .collect();
        assert_eq!(rank(&q, rows), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2, singular only mod 2
        let q = Rationals;
        let rows = vec![
            vec![
                (0, Scalar::from_integer(1.into())),
                (1, Scalar::from_integer(1.into())),
            ],
            vec![
                (0, Scalar::from_integer(1.into())),
                (1, Scalar::from_integer((-1).into())),
            ],
        ];
        assert_eq!(rank(&q, rows), 2);
        let f2 = ModP(2);
        assert_eq!(
            rank(&f2, vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]]),
            1
        );
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let f = ModP(101);
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 1)]];
        let k = left_kernel(&f, &rows, 2);
        assert_eq!(k.len(), 1);
        // 2*r0 - r1 = 0
        let v = &k[0];
        let combo = v
            .iter()
            .fold(Vec::new(), |acc, (i, c)| axpy(&f, &acc, c, &rows[*i]));
        assert!(combo.is_empty());
    }
}
