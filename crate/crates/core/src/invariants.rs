//! Numerical invariants of Betti tables and patterns: regularity and
//! projective dimension, the Eagon-Northcott Betti numbers, pure diagrams
//! and the two-diagram decomposition for almost perfect linear ideals, and
//! zero-rectangle statistics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complexes::BettiTable;
use crate::determinantal::{binomial, SparsePattern};
use crate::error::{Error, Result};

/// `(reg, pdim)` with `reg = max (j - i)` and `pdim` the largest nonzero
/// homological index.
pub fn reg_and_pdim(b: &BettiTable) -> Result<(i64, usize)> {
    match (b.regularity(), b.pdim()) {
        (Some(reg), Some(pdim)) => Ok((reg, pdim)),
        _ => Err(Error::EmptyBetti),
    }
}

/// Betti numbers of the Eagon-Northcott resolution of the maximal minors of
/// a generic `k x n` matrix: `beta_{i, k+i-1} = C(k+i-2, k-1) C(n, k+i-1)`.
pub fn en_betti_formula(k: usize, n: usize) -> Result<BettiTable> {
    if k == 0 || k > n {
        return Err(Error::TooManyRows { k, n });
    }
    let mut t = BettiTable::from_entries([(0, 0, 1)]);
    for i in 1..=n - k + 1 {
        let count = binomial(k + i - 2, k - 1) * binomial(n, k + i - 1);
        t.add(i, (k + i - 1) as i64, count as u64);
    }
    Ok(t)
}

/// Value at degree `d` of the Hilbert function of a graded module over a
/// polynomial ring in `nvars` variables with Betti table `b`:
/// `sum_{i,j} (-1)^i beta_{i,j} C(d - j + nvars - 1, nvars - 1)`.
pub fn hilbert_function(b: &BettiTable, nvars: usize, d: i64) -> i64 {
    b.entries()
        .filter(|&(_, j, _)| j <= d)
        .map(|(i, j, beta)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let count = if nvars == 0 {
                i64::from(d == j)
            } else {
                binomial((d - j) as usize + nvars - 1, nvars - 1) as i64
            };
            sign * beta as i64 * count
        })
        .sum()
}

/// A pure Betti diagram with degree sequence `0 = d_0 < d_1 < ... < d_p`,
/// normalized so that `beta_0 = 1`:
/// `beta_i = prod_{j != i, j >= 1} d_j / |d_j - d_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureDiagram {
    degrees: Vec<i64>,
    betti: Vec<BigRational>,
}

impl PureDiagram {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.first() != Some(&0) || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "degree sequence {degrees:?} must start at 0 and increase strictly"
            )));
        }
        let betti = (0..degrees.len())
            .map(|i| {
                let mut b = BigRational::one();
                for (j, &dj) in degrees.iter().enumerate().skip(1) {
                    if j != i {
                        b *= BigRational::new(dj.into(), (dj - degrees[i]).abs().into());
                    }
                }
                b
            })
            .collect();
        Ok(PureDiagram { degrees, betti })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn betti(&self) -> &[BigRational] {
        &self.betti
    }
}

/// The decomposition `beta(S / I) = a1 B1 + a2 B2` for an ideal generated in
/// degree `d` with a linear resolution of length `pd` and codimension
/// `pd - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuDecomposition {
    /// Pure diagram on `(0, d, d+1, ..., d+pd-1)`.
    pub b1: PureDiagram,
    /// Pure diagram on `(0, d, d+1, ..., d+pd-2)`.
    pub b2: PureDiagram,
    pub a1: BigRational,
    pub a2: BigRational,
    pub table: BettiTable,
}

/// Solves `a1 + a2 = 1` and `a1 beta_1(B1) + a2 beta_1(B2) = mu`, then
/// returns the combined Betti table, which must be nonnegative and integral.
pub fn betti_from_mu(d: i64, pd: usize, mu: u64) -> Result<MuDecomposition> {
    if d < 1 || pd < 1 {
        return Err(Error::Parse(format!(
            "need generator degree >= 1 and pdim >= 1, got d = {d}, pd = {pd}"
        )));
    }
    let sequence = |len: usize| -> Vec<i64> {
        std::iter::once(0)
            .chain((0..len as i64).map(|t| d + t))
            .collect()
    };
    let b1 = PureDiagram::new(sequence(pd))?;
    let b2 = PureDiagram::new(sequence(pd - 1))?;
    let beta1 = |b: &PureDiagram| b.betti().get(1).cloned().unwrap_or_else(BigRational::zero);
    let (x1, x2) = (beta1(&b1), beta1(&b2));
    let mu = BigRational::from_integer(BigInt::from(mu));
    let a1 = (&mu - &x2) / (&x1 - &x2);
    let a2 = BigRational::one() - &a1;
    if a1.is_negative() || a2.is_negative() {
        return Err(Error::NegativeCoefficients {
            a1: a1.to_string(),
            a2: a2.to_string(),
        });
    }
    let mut table = BettiTable::new();
    for i in 0..=pd {
        let mut value = &a1 * &b1.betti()[i];
        if let Some(b) = b2.betti().get(i) {
            value += &a2 * b;
        }
        let count = value
            .is_integer()
            .then(|| value.to_integer().to_u64())
            .flatten()
            .ok_or_else(|| Error::NonIntegralBetti {
                i,
                value: value.to_string(),
            })?;
        let degree = if i == 0 { 0 } else { d + i as i64 - 1 };
        table.add(i, degree, count);
    }
    Ok(MuDecomposition {
        b1,
        b2,
        a1,
        a2,
        table,
    })
}

/// Zero-rectangle statistics of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerimeterStats {
    /// `2 (|R| + |C|)` for the largest all-zero submatrix, 0 without zeros.
    pub perimeter: usize,
    pub zero_columns: usize,
}

pub fn perimeter_stats(p: &SparsePattern) -> PerimeterStats {
    PerimeterStats {
        perimeter: p.max_zero_rectangle().map_or(0, |(r, c)| 2 * (r + c)),
        zero_columns: p.zero_columns().len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn regularity_and_pdim() {
        let sparse3x4 = BettiTable::from_entries([(0, 0, 1), (1, 3, 2), (2, 4, 1)]);
        assert_eq!(reg_and_pdim(&sparse3x4).unwrap(), (2, 2));
        let koszul = BettiTable::from_entries([(0, 0, 1), (1, 1, 2), (2, 2, 1)]);
        assert_eq!(reg_and_pdim(&koszul).unwrap(), (0, 2));
        assert!(matches!(
            reg_and_pdim(&BettiTable::new()),
            Err(Error::EmptyBetti)
        ));
    }

    #[test]
    fn eagon_northcott_formula() {
        let t = en_betti_formula(3, 4).unwrap();
        assert_eq!(
            t,
            BettiTable::from_entries([(0, 0, 1), (1, 3, 4), (2, 4, 3)])
        );
        assert_eq!(
            en_betti_formula(3, 6).unwrap().totals(),
            vec![1, 20, 45, 36, 10]
        );
        assert_eq!(en_betti_formula(4, 4).unwrap().totals(), vec![1, 1]);
        assert!(en_betti_formula(5, 4).is_err());
    }

    #[test]
    fn hilbert_functions() {
        // S / (x y) in two variables: 1, 2, 2, 2, ...
        let b = BettiTable::from_entries([(0, 0, 1), (1, 2, 1)]);
        let values: Vec<i64> = (0..5).map(|d| hilbert_function(&b, 2, d)).collect();
        assert_eq!(values, [1, 2, 2, 2, 2]);
        let koszul = BettiTable::from_entries([(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]);
        assert!((0..6).all(|d| hilbert_function(&koszul, 3, d) == i64::from(d == 0)));
    }

    #[test]
    fn pure_diagrams() {
        let koszul = PureDiagram::new(vec![0, 1, 2, 3]).unwrap();
        let expected: Vec<BigRational> = [1, 3, 3, 1].iter().map(|&b| q(b, 1)).collect();
        assert_eq!(koszul.betti(), expected.as_slice());
        let p = PureDiagram::new(vec![0, 3, 4]).unwrap();
        assert_eq!(p.betti(), &[q(1, 1), q(4, 1), q(3, 1)]);
        assert!(PureDiagram::new(vec![0, 3, 3]).is_err());
    }

    #[test]
    fn two_diagram_solver() {
        let s = betti_from_mu(3, 2, 2).unwrap();
        assert_eq!((s.a1.clone(), s.a2.clone()), (q(1, 3), q(2, 3)));
        assert_eq!(
            s.table,
            BettiTable::from_entries([(0, 0, 1), (1, 3, 2), (2, 4, 1)])
        );
        let perfect = betti_from_mu(3, 2, 4).unwrap();
        assert_eq!(perfect.a1, q(1, 1));
        assert_eq!(perfect.table, en_betti_formula(3, 4).unwrap());
        assert!(matches!(
            betti_from_mu(3, 2, 5),
            Err(Error::NegativeCoefficients { .. })
        ));
    }

    #[test]
    fn perimeters() {
        let sparse3x4 = SparsePattern::parse("3 4 / 0 0 * 0 / 0 0 * * / * * 0 0").unwrap();
        assert_eq!(
            perimeter_stats(&sparse3x4),
            PerimeterStats {
                perimeter: 8,
                zero_columns: 0
            }
        );
        let first = SparsePattern::parse("3 6 / 0 0 0 * * * / 0 0 0 * * * / * * * * * *").unwrap();
        let second = SparsePattern::parse("3 6 / 0 0 0 0 * * / 0 0 * * 0 0 / * * * * 0 0").unwrap();
        assert_eq!(perimeter_stats(&first).perimeter, 10);
        assert_eq!(perimeter_stats(&second).perimeter, 10);
        assert_eq!(
            perimeter_stats(&SparsePattern::generic(3, 5).unwrap()).perimeter,
            0
        );
    }
}
