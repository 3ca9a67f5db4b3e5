//! Sparse generic matrices, their maximal minors, the Eagon-Northcott
//! complex with divided-power/wedge bases, and weight homogenization.

mod homogenize;
mod pattern;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

pub use homogenize::{homogenize_complex, set_t_zero};
pub use pattern::SparsePattern;

use crate::complexes::{BasedComplex, Generator, GradedFreeModule, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::{Field, Grading, Monomial, MultiDegree, Polynomial, Ring, RingRef};

/// A maximal minor: the (0-based, increasing) column set and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub columns: Vec<usize>,
    pub value: Polynomial,
}

impl Minor {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Column set written 1-based, e.g. `{1,3,4}`.
    pub fn label(&self) -> String {
        format!("{{{}}}", self.columns.iter().map(|c| c + 1).join(","))
    }
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant of the `k x k` submatrix on `columns`, expanded over
/// permutations. Entries are distinct variables, so no terms cancel.
fn minor_value(
    p: &SparsePattern,
    ring: &RingRef,
    columns: &[usize],
    substitute: bool,
) -> Polynomial {
    let k = p.k();
    let mut terms = Vec::new();
    'perms: for perm in (0..k).permutations(k) {
        let mut exps = vec![0u16; ring.nvars()];
        for (r, &slot) in perm.iter().enumerate() {
            let c = columns[slot];
            if substitute && p.is_zero(r, c) {
                continue 'perms;
            }
            exps[p.cell(r, c)] += 1;
        }
        terms.push((
            Monomial::from_exponents(exps),
            ring.field().from_i64(permutation_sign(&perm)),
        ));
    }
    Polynomial::from_terms(ring, terms)
}

/// All `C(n, k)` maximal minors in lex order of column sets, with the zero
/// cells of the pattern substituted. `ring` must be `p.ring(..)`.
pub fn minors(p: &SparsePattern, ring: &RingRef) -> Vec<Minor> {
    (0..p.n())
        .combinations(p.k())
        .map(|columns| {
            let value = minor_value(p, ring, &columns, true);
            Minor { columns, value }
        })
        .collect()
}

/// True when every maximal minor vanishes, decided from the zero pattern:
/// some all-zero `R x C` block has `|R| + |C| >= n + 1`, i.e. perimeter at
/// least `2n + 2`.
pub fn is_ideal_zero(p: &SparsePattern) -> bool {
    p.max_zero_rectangle()
        .is_some_and(|(rows, cols)| rows + cols > p.n())
}

/// `sigma(J) = (-1)^(sum_t j_t - k(k+1)/2)` with 1-based columns.
pub fn minor_sign(columns: &[usize]) -> i64 {
    let k = columns.len();
    let s: usize = columns.iter().map(|c| c + 1).sum::<usize>() + k * (k + 1) / 2;
    if s.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Divided-power exponents `alpha` in `N^k` with `|alpha| = total`, in
/// descending lex order (so `e_1^(total)` comes first).
pub fn compositions(k: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == k {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(k, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(k, total, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Basis label of an Eagon-Northcott module: `alpha` and the column set `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnBasisLabel {
    pub alpha: Vec<usize>,
    pub columns: Vec<usize>,
}

impl EnBasisLabel {
    /// `a=1,0,0;J=1,2,3,4` with 1-based columns.
    pub fn to_label(&self) -> String {
        format!(
            "a={};J={}",
            self.alpha.iter().join(","),
            self.columns.iter().map(|c| c + 1).join(",")
        )
    }
}

/// Basis of `F_i = D_{i-1}(S^k) (x) wedge^{k+i-1}(S^n)` for `i >= 1`.
pub fn en_basis(k: usize, n: usize, i: usize) -> Vec<EnBasisLabel> {
    let a = i - 1;
    let mut out = Vec::new();
    for alpha in compositions(k, a) {
        for columns in (0..n).combinations(k + a) {
            out.push(EnBasisLabel {
                alpha: alpha.clone(),
                columns,
            });
        }
    }
    out
}

/// The Eagon-Northcott complex of a generic `k x n` matrix with variables
/// `x_i_j`, graded by rows and columns.
pub fn eagon_northcott(k: usize, n: usize, field: Field) -> Result<BasedComplex> {
    if k > n {
        return Err(Error::TooManyRows { k, n });
    }
    if k < 1 {
        return Err(Error::DimensionMismatch("need at least one row".into()));
    }
    build(&SparsePattern::generic(k, n)?, field, false)
}

/// The Eagon-Northcott complex on the generic matrix carrying the pattern's
/// variable names; the zeros of the pattern are ignored.
pub fn eagon_northcott_generic(p: &SparsePattern, field: Field) -> Result<BasedComplex> {
    build(p, field, false)
}

/// The Eagon-Northcott complex with the pattern's zeros substituted, as a
/// complex over `S / Z`. No bases are deleted.
pub fn eagon_northcott_specialized(p: &SparsePattern, field: Field) -> Result<BasedComplex> {
    build(p, field, true)
}

fn build(p: &SparsePattern, field: Field, substitute: bool) -> Result<BasedComplex> {
    let (k, n) = (p.k(), p.n());
    let ring = p.ring(field);
    let length = n - k + 1;
    let entry = |r: usize, c: usize| -> Polynomial {
        if substitute && p.is_zero(r, c) {
            Polynomial::zero(&ring)
        } else {
            Polynomial::variable(&ring, p.cell(r, c))
        }
    };
    let degree = |label: &EnBasisLabel| -> MultiDegree {
        let mut d = vec![0i64; k + n];
        for (r, a) in label.alpha.iter().enumerate() {
            d[r] = 1 + *a as i64;
        }
        for &c in &label.columns {
            d[k + c] = 1;
        }
        MultiDegree(d)
    };

    let bases: Vec<Vec<EnBasisLabel>> = (1..=length).map(|i| en_basis(k, n, i)).collect();
    let mut modules = vec![GradedFreeModule::new(vec![Generator::new(
        "1",
        MultiDegree::zero(k + n),
    )])?];
    for basis in &bases {
        modules.push(GradedFreeModule::new(
            basis
                .iter()
                .map(|l| Generator::new(l.to_label(), degree(l)))
                .collect(),
        )?);
    }

    let mut maps = Vec::with_capacity(length);
    let first = SparseMatrix::from_entries(
        1,
        bases[0].len(),
        bases[0].iter().enumerate().map(|(c, l)| {
            let value = minor_value(p, &ring, &l.columns, substitute);
            (0, c, value.scale(&field.from_i64(minor_sign(&l.columns))))
        }),
    )?;
    maps.push(first);
    for i in 2..=length {
        let target = &bases[i - 2];
        let index: HashMap<&EnBasisLabel, usize> =
            target.iter().enumerate().map(|(idx, l)| (l, idx)).collect();
        let mut entries = Vec::new();
        for (col, label) in bases[i - 1].iter().enumerate() {
            for (t, &j) in label.columns.iter().enumerate() {
                let rest: Vec<usize> = label.columns.iter().copied().filter(|&c| c != j).collect();
                // (-1)^t with t the 1-based position of j in J.
                let mut sign = if (t + 1) % 2 == 0 { 1 } else { -1 };
                if i == 2 {
                    sign *= minor_sign(&rest);
                }
                for r in 0..k {
                    if label.alpha[r] == 0 {
                        continue;
                    }
                    let mut alpha = label.alpha.clone();
                    alpha[r] -= 1;
                    let row = index[&EnBasisLabel {
                        alpha,
                        columns: rest.clone(),
                    }];
                    entries.push((row, col, entry(r, j).scale(&field.from_i64(sign))));
                }
            }
        }
        maps.push(SparseMatrix::from_entries(
            target.len(),
            bases[i - 1].len(),
            entries,
        )?);
    }
    let killed: BTreeSet<usize> = if substitute {
        p.zero_set().into_iter().collect()
    } else {
        BTreeSet::new()
    };
    BasedComplex::with_killed(ring, Grading::RowColumn { k, n }, killed, modules, maps)
}

/// Closed-form Eagon-Northcott ranks `rank F_0 = 1`,
/// `rank F_i = C(k+i-2, k-1) C(n, k+i-1)`.
pub fn en_ranks(k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![1];
    for i in 1..=n + 1 - k {
        out.push(binomial(k + i - 2, k - 1) * binomial(n, k + i - 1));
    }
    out
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The Buchsbaum-Rim resolution of the `2 x 3` matrix with the given entry
/// names (row-major): `0 -> S(-3) -> S(-1)^3 -> S^2`, first map the matrix,
/// second map `(D23, -D13, D12)^T` with `Dij` the minor on columns `i, j`.
pub fn buchsbaum_rim_2x3(names: [&str; 6], field: Field) -> Result<BasedComplex> {
    let ring = Ring::new(names, field)?;
    let var = |i: usize| Polynomial::variable(&ring, i);
    let minor = |i: usize, j: usize| &(&var(i) * &var(3 + j)) - &(&var(j) * &var(3 + i));
    let first = SparseMatrix::from_rows(
        vec![vec![var(0), var(1), var(2)], vec![var(3), var(4), var(5)]],
        3,
    )?;
    let second = SparseMatrix::from_rows(
        vec![vec![minor(1, 2)], vec![-minor(0, 2)], vec![minor(0, 1)]],
        1,
    )?;
    let deg = |d: i64| MultiDegree(vec![d]);
    let module = |degrees: Vec<i64>, prefix: &str| {
        GradedFreeModule::new(
            degrees
                .into_iter()
                .enumerate()
                .map(|(i, d)| Generator::new(format!("{prefix}{}", i + 1), deg(d)))
                .collect(),
        )
    };
    BasedComplex::new(
        ring,
        Grading::Total,
        vec![
            module(vec![0, 0], "g")?,
            module(vec![1, 1, 1], "e")?,
            module(vec![3], "s")?,
        ],
        vec![first, second],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    const SPARSE_3X4: &str = "3 4 / 0 0 * 0 / 0 0 * * / * * 0 0";

    fn named_pattern() -> SparsePattern {
        SparsePattern::parse("3 4 x1 x2 x3 x4 y1 y2 y3 y4 z1 z2 z3 z4").unwrap()
    }

    #[test]
    fn sparse3x4_minors() {
        let p = SparsePattern::parse("3 4 / 0 0 x3 0 / 0 0 y3 y4 / z1 z2 0 0").unwrap();
        let ring = p.ring(Field::Rational);
        let ms = minors(&p, &ring);
        let nonzero: Vec<(String, String)> = ms
            .iter()
            .filter(|m| !m.is_zero())
            .map(|m| (m.label(), m.value.to_string()))
            .collect();
        assert_eq!(
            nonzero,
            vec![
                ("{1,3,4}".to_string(), "x3*y4*z1".to_string()),
                ("{2,3,4}".to_string(), "x3*y4*z2".to_string())
            ]
        );
        assert!(!is_ideal_zero(&p));
    }

    #[test]
    fn generic_two_by_two_minor() {
        let p = SparsePattern::generic(2, 2).unwrap();
        let ring = p.ring(Field::Rational);
        assert_eq!(
            minors(&p, &ring)[0].value.to_string(),
            "x_1_1*x_2_2 - x_1_2*x_2_1"
        );
    }

    #[test]
    fn zero_block_kills_the_ideal() {
        let p = SparsePattern::parse("3 4 / 0 0 0 * / 0 0 0 * / * * * *").unwrap();
        let ring = p.ring(Field::Rational);
        assert!(minors(&p, &ring).iter().all(|m| m.is_zero()));
        assert!(is_ideal_zero(&p));
        assert!(!is_ideal_zero(&SparsePattern::generic(3, 5).unwrap()));
    }

    #[test]
    fn perimeter_rule_matches_brute_force_minors() {
        for (k, n) in [(2, 3), (2, 4), (3, 4)] {
            for p in SparsePattern::all_masks(k, n) {
                let ring = p.ring(Field::default());
                let brute = minors(&p, &ring).iter().all(|m| m.is_zero());
                assert_eq!(is_ideal_zero(&p), brute, "{p}");
            }
        }
    }

    #[test]
    fn signs_follow_column_sums() {
        let signs: Vec<i64> = (0..4).combinations(3).map(|c| minor_sign(&c)).collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
    }

    #[test]
    fn compositions_descend() {
        assert_eq!(
            compositions(3, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn en_ranks_and_complex_property() {
        for (k, n) in [(2, 3), (3, 4), (2, 5), (3, 6), (4, 4)] {
            let c = eagon_northcott(k, n, Field::default()).unwrap();
            assert_eq!(c.ranks(), en_ranks(k, n), "({k},{n})");
            assert_eq!(c.compose_check().unwrap(), None, "({k},{n})");
            assert!(c.is_minimal());
        }
        assert_eq!(en_ranks(3, 4), vec![1, 4, 3]);
        assert_eq!(en_ranks(2, 3), vec![1, 3, 2]);
        assert!(matches!(
            eagon_northcott(4, 3, Field::default()),
            Err(Error::TooManyRows { .. })
        ));
    }

    #[test]
    fn en_3x4_matches_known_matrices() {
        let c = eagon_northcott_generic(&named_pattern(), Field::default()).unwrap();
        let ring = c.ring().clone();
        let first: Vec<String> = (0..4).map(|j| c.entry(1, 0, j).to_string()).collect();
        let expected_first: Vec<String> = [
            "x1*y2*z3 - x1*y3*z2 - x2*y1*z3 + x2*y3*z1 + x3*y1*z2 - x3*y2*z1",
            "-x1*y2*z4 + x1*y4*z2 + x2*y1*z4 - x2*y4*z1 - x4*y1*z2 + x4*y2*z1",
            "x1*y3*z4 - x1*y4*z3 - x3*y1*z4 + x3*y4*z1 + x4*y1*z3 - x4*y3*z1",
            "-x2*y3*z4 + x2*y4*z3 + x3*y2*z4 - x3*y4*z2 - x4*y2*z3 + x4*y3*z2",
        ]
        .iter()
        .map(|s| Polynomial::parse(&ring, s).unwrap().to_string())
        .collect();
        assert_eq!(first, expected_first);
        let second: Vec<Vec<String>> = (0..4)
            .map(|r| (0..3).map(|col| c.entry(2, r, col).to_string()).collect())
            .collect();
        assert_eq!(
            second,
            vec![
                vec!["x4", "y4", "z4"],
                vec!["x3", "y3", "z3"],
                vec!["x2", "y2", "z2"],
                vec!["x1", "y1", "z1"]
            ]
        );
    }

    #[test]
    fn remark_structure_on_higher_maps() {
        let field = Field::default();
        let c = eagon_northcott(3, 6, field).unwrap();
        for i in 2..=c.length() {
            let a = c.map(i);
            let mut seen_rows: HashMap<(usize, usize), ()> = HashMap::new();
            let mut seen_cols: HashMap<(usize, usize), ()> = HashMap::new();
            for (r, col, p) in a.entries() {
                let (v, coeff) = p.as_scaled_variable().expect("entries are +-variables");
                assert!(*coeff == field.one() || *coeff == field.neg(&field.one()));
                assert!(seen_rows.insert((r, v), ()).is_none());
                assert!(seen_cols.insert((col, v), ()).is_none());
            }
        }
    }

    #[test]
    fn buchsbaum_rim_fixture() {
        let c = buchsbaum_rim_2x3(["x", "y", "z", "a", "b", "c"], Field::Rational).unwrap();
        assert_eq!(c.ranks(), vec![2, 3, 1]);
        assert_eq!(c.compose_check().unwrap(), None);
        let col: Vec<String> = (0..3).map(|r| c.entry(2, r, 0).to_string()).collect();
        assert_eq!(col, vec!["y*c - z*b", "-x*c + z*a", "x*b - y*a"]);
    }

    #[test]
    fn sparse3x4_pattern_parses_as_expected() {
        let p = SparsePattern::parse(SPARSE_3X4).unwrap();
        let c = eagon_northcott_specialized(&p, Field::default()).unwrap();
        assert_eq!(c.compose_check().unwrap(), None);
        assert_eq!(c.killed().len(), 7);
    }
}
