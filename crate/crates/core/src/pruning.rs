//! Pruning a based complex by a set of variables, and the resulting minimal
//! free resolutions of ideals of maximal minors of sparse generic matrices.

use std::collections::BTreeSet;

use crate::complexes::{BasedComplex, BettiTable, HomologyReport};
use crate::determinantal::{eagon_northcott_generic, is_ideal_zero, SparsePattern};
use crate::error::{Error, Result};
use crate::ring::Field;

/// Prunes `c` by the variables `zero` (ring indices).
///
/// For `i = 1, ..., t` in turn: the variables are set to zero in `A_i`, and
/// the columns of `A_i` that became identically zero are deleted together
/// with the matching generators of `F_i` and rows of `A_{i+1}`. The result
/// lives over `S / (killed, zero)`. Trailing modules of rank zero are dropped.
pub fn prune(c: &BasedComplex, zero: &[usize]) -> Result<BasedComplex> {
    let ring = c.ring();
    if let Some(&v) = zero.iter().find(|&&v| v >= ring.nvars()) {
        return Err(Error::UnknownVariable(format!("variable index {v}")));
    }
    let mut killed: BTreeSet<usize> = c.killed().clone();
    killed.extend(zero.iter().copied());
    let kill: Vec<usize> = killed.iter().copied().collect();

    let mut modules = c.modules().to_vec();
    let mut maps = c.maps().to_vec();
    for i in 1..=maps.len() {
        let substituted = maps[i - 1].map_entries(|p| Ok(p.kill_variables(&kill)))?;
        let dropped = substituted.zero_columns();
        let keep: Vec<usize> = (0..substituted.ncols())
            .filter(|col| dropped.binary_search(col).is_err())
            .collect();
        let all_rows: Vec<usize> = (0..substituted.nrows()).collect();
        maps[i - 1] = substituted.select(&all_rows, &keep);
        modules[i] = modules[i].select(&keep);
        if i < maps.len() {
            let next = &maps[i];
            let all_cols: Vec<usize> = (0..next.ncols()).collect();
            maps[i] = next.select(&keep, &all_cols);
        }
    }
    while modules.len() > 1 && modules.last().is_some_and(|m| m.rank() == 0) {
        modules.pop();
        maps.pop();
    }
    BasedComplex::with_killed(ring.clone(), c.grading().clone(), killed, modules, maps)
}

/// [`prune`] with variables given by name.
pub fn prune_by_names(c: &BasedComplex, names: &[&str]) -> Result<BasedComplex> {
    let zero = names
        .iter()
        .map(|name| c.ring().var_index(name))
        .collect::<Result<Vec<_>>>()?;
    prune(c, &zero)
}

/// Self-certification of a pruned complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// First `i` with `A_{i-1} A_i != 0`, if any.
    pub compose_failure: Option<usize>,
    pub minimal: bool,
    /// Truncated homology, when requested.
    pub homology: Option<HomologyReport>,
}

impl Verification {
    /// Composition and minimality hold, and the truncated homology (if
    /// computed) vanishes in positions `>= 1`.
    pub fn passed(&self) -> bool {
        self.compose_failure.is_none()
            && self.minimal
            && self.homology.as_ref().is_none_or(|h| h.is_exact_from(1))
    }
}

/// How much of the truncated homology to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyCheck {
    Skip,
    /// Use [`BasedComplex::default_bound`].
    Default,
    Bound(i64),
}

pub fn verify(c: &BasedComplex, check: HomologyCheck) -> Result<Verification> {
    let homology = match check {
        HomologyCheck::Skip => None,
        HomologyCheck::Default => Some(c.truncated_homology_from(c.default_bound(), 1)?),
        HomologyCheck::Bound(b) => Some(c.truncated_homology_from(b, 1)?),
    };
    Ok(Verification {
        compose_failure: c.compose_check()?,
        minimal: c.is_minimal(),
        homology,
    })
}

/// A pruned Eagon-Northcott complex with its verification.
#[derive(Clone, Debug)]
pub struct SparseResolution {
    pub pattern: SparsePattern,
    pub complex: BasedComplex,
    pub verification: Verification,
}

impl SparseResolution {
    pub fn betti(&self) -> Result<BettiTable> {
        self.complex.betti_table()
    }
}

/// The pruned Eagon-Northcott complex of `p`, without verification.
pub fn pruned_eagon_northcott(p: &SparsePattern, field: Field) -> Result<BasedComplex> {
    if is_ideal_zero(p) {
        return Err(Error::ZeroIdeal);
    }
    let en = eagon_northcott_generic(p, field)?;
    prune(&en, &p.zero_set())
}

/// Resolves `S / I_k(X')` by pruning the Eagon-Northcott complex of the
/// generic matrix by the zero cells of `p`, then verifies the result.
pub fn resolve_sparse_determinantal(
    p: &SparsePattern,
    field: Field,
    check: HomologyCheck,
) -> Result<SparseResolution> {
    let complex = pruned_eagon_northcott(p, field)?;
    let verification = verify(&complex, check)?;
    Ok(SparseResolution {
        pattern: p.clone(),
        complex,
        verification,
    })
}

/// Betti table of `(I : v) / I` for `I = I_k(X')` and a nonzero cell `v`,
/// as the difference of the pruned tables of `X'` and of `X'` with `v` set
/// to zero.
///
/// Position `i` of the result is position `i + 1` of the difference of the
/// `S / I` tables, and degrees are those of `Tor_1(S/I, S/(v))`, so a table
/// entry at `(i, j)` is a generator of `(I : v) / I` of degree `j - 1`.
pub fn colon_quotient_betti(p: &SparsePattern, v: &str, field: Field) -> Result<BettiTable> {
    let (r, c) = p.position_of(v)?;
    if p.is_zero(r, c) {
        return Err(Error::ZeroCell(v.to_string()));
    }
    let with_v = pruned_eagon_northcott(p, field)?.betti_table()?;
    let without_v = pruned_eagon_northcott(&p.with_zero(r, c), field)?.betti_table()?;
    let upper = |t: &BettiTable| BettiTable::from_entries(t.entries().filter(|&(i, _, _)| i > 0));
    Ok(upper(&with_v)
        .checked_sub(&upper(&without_v))?
        .shifted(-1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{complex_diff, SparseMatrix};
    use crate::determinantal::{buchsbaum_rim_2x3, eagon_northcott};
    use crate::ring::{MultiDegree, Polynomial};

    const SPARSE_3X4: &str = "3 4 / 0 0 x3 0 / 0 0 y3 y4 / z1 z2 0 0";

    fn named_sparse3x4() -> SparsePattern {
        SparsePattern::parse("3 4 / x1 x2 x3 x4 / y1 y2 y3 y4 / z1 z2 z3 z4").unwrap()
    }

    #[test]
    fn sparse3x4_prunes_to_the_expected_resolution() {
        let en = eagon_northcott_generic(&named_sparse3x4(), Field::Rational).unwrap();
        let pruned = prune_by_names(&en, &["x1", "x2", "x4", "y1", "y2", "z3", "z4"]).unwrap();
        assert_eq!(pruned.ranks(), vec![1, 2, 1]);
        let ring = pruned.ring().clone();
        let parse = |s: &str| Polynomial::parse(&ring, s).unwrap();
        let shown = BasedComplex::with_killed(
            ring.clone(),
            pruned.grading().clone(),
            pruned.killed().clone(),
            pruned.modules().to_vec(),
            vec![
                SparseMatrix::from_rows(vec![vec![parse("x3*y4*z1"), parse("-x3*y4*z2")]], 2)
                    .unwrap(),
                SparseMatrix::from_rows(vec![vec![parse("z2")], vec![parse("z1")]], 1).unwrap(),
            ],
        )
        .unwrap();
        let report = complex_diff(&pruned, &shown);
        assert!(report.equivalent, "{report:?}");
        let betti = pruned.betti_table().unwrap();
        assert_eq!(
            betti,
            BettiTable::from_entries([(0, 0, 1), (1, 3, 2), (2, 4, 1)])
        );
        assert_eq!(betti.regularity(), Some(2));
    }

    #[test]
    fn sparse3x4_resolution_verifies() {
        let p = SparsePattern::parse(SPARSE_3X4).unwrap();
        let res =
            resolve_sparse_determinantal(&p, Field::default(), HomologyCheck::Default).unwrap();
        assert!(res.verification.passed(), "{:?}", res.verification);
        assert_eq!(res.complex.ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn buchsbaum_rim_pruning_is_not_exact() {
        let br = buchsbaum_rim_2x3(["x", "y", "z", "a", "b", "c"], Field::Rational).unwrap();
        let pruned = prune_by_names(&br, &["x", "y"]).unwrap();
        assert_eq!(pruned.ranks(), vec![2, 3, 1]);
        let show = |i: usize| -> Vec<Vec<String>> {
            let a = pruned.map(i);
            (0..a.nrows())
                .map(|r| {
                    (0..a.ncols())
                        .map(|c| pruned.entry(i, r, c).to_string())
                        .collect()
                })
                .collect()
        };
        assert_eq!(show(1), vec![vec!["0", "0", "z"], vec!["a", "b", "c"]]);
        assert_eq!(show(2), vec![vec!["-z*b"], vec!["z*a"], vec!["0"]]);
        assert_eq!(pruned.compose_check().unwrap(), None);
        let report = pruned.truncated_homology(pruned.default_bound()).unwrap();
        let first = report.first_nonzero_from(1).unwrap();
        assert_eq!((first.position, first.total, first.homology), (1, 2, 1));
        let witness = pruned
            .homology_witness(1, &MultiDegree(vec![2]))
            .unwrap()
            .unwrap();
        let shown: Vec<String> = witness.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["b", "-a", "0"]);
    }

    #[test]
    fn empty_set_changes_nothing() {
        let en = eagon_northcott(2, 4, Field::default()).unwrap();
        assert_eq!(prune(&en, &[]).unwrap(), en);
        assert!(matches!(prune(&en, &[99]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn section_five_tables() {
        let first = SparsePattern::parse("3 6 / 0 0 0 * * * / 0 0 0 * * * / * * * * * *").unwrap();
        let second = SparsePattern::parse("3 6 / 0 0 0 0 * * / 0 0 * * 0 0 / * * * * 0 0").unwrap();
        for (p, row) in [(first, vec![10, 18, 12, 3]), (second, vec![10, 17, 10, 2])] {
            let betti = pruned_eagon_northcott(&p, Field::default())
                .unwrap()
                .betti_table()
                .unwrap();
            let expected = BettiTable::from_entries(
                std::iter::once((0, 0, 1)).chain(
                    row.iter()
                        .enumerate()
                        .map(|(i, &b)| (i + 1, i as i64 + 3, b)),
                ),
            );
            assert_eq!(betti, expected, "{p}");
        }
    }

    #[test]
    fn colon_quotient_for_sparse3x4() {
        let p = SparsePattern::parse(SPARSE_3X4).unwrap();
        let table = colon_quotient_betti(&p, "z1", Field::default()).unwrap();
        assert_eq!(table, BettiTable::from_entries([(0, 3, 1), (1, 4, 1)]));
        // x3 appears in every nonzero minor, so zeroing it kills the ideal.
        assert!(matches!(
            colon_quotient_betti(&p, "x3", Field::default()),
            Err(Error::ZeroIdeal)
        ));
        assert!(matches!(
            colon_quotient_betti(&p, "x_1_1", Field::default()),
            Err(Error::ZeroCell(_))
        ));
    }

    #[test]
    fn colon_quotient_of_an_unused_variable_is_zero() {
        // No term of a nonzero minor contains v.
        let p = SparsePattern::parse("2 3 / v a b / w 0 0").unwrap();
        let table = colon_quotient_betti(&p, "v", Field::default()).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn incremental_pruning_agrees() {
        let en = eagon_northcott_generic(&named_sparse3x4(), Field::default()).unwrap();
        let all = prune_by_names(&en, &["x1", "x2", "x4", "y1", "y2", "z3", "z4"]).unwrap();
        let step = prune_by_names(&en, &["x1", "x2", "x4"]).unwrap();
        let step = prune_by_names(&step, &["y1", "y2", "z3", "z4"]).unwrap();
        assert!(complex_diff(&all, &step).equivalent);
    }
}
