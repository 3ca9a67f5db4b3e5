//! Graded free complexes with explicit bases.
//!
//! A [`BasedComplex`] stores free modules `F_0, ..., F_t` and maps
//! `A_i: F_i -> F_{i-1}` as sparse polynomial matrices. Column `c` of `A_i`
//! is the image of the `c`-th generator of `F_i`.

mod betti;
mod diff;
mod homology;
mod json;
mod koszul;
mod matrix;
mod minimize;

use std::collections::{BTreeSet, HashSet};

pub use betti::BettiTable;
pub use diff::{complex_diff, DiffReport};
pub use homology::{HomologyPiece, HomologyReport, PositionSummary};
pub use matrix::SparseMatrix;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{Field, Grading, MultiDegree, Polynomial, RingRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: MultiDegree,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: MultiDegree) -> Self {
        Generator {
            label: label.into(),
            degree,
        }
    }
}

/// A free module with an ordered list of homogeneous generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    generators: Vec<Generator>,
}

impl GradedFreeModule {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.label.as_str()) {
                return Err(Error::DimensionMismatch(format!(
                    "duplicate generator label `{}`",
                    g.label
                )));
            }
        }
        Ok(GradedFreeModule { generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn select(&self, keep: &[usize]) -> Self {
        GradedFreeModule {
            generators: keep.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }

    fn map_degrees(&self, f: impl Fn(&MultiDegree) -> MultiDegree) -> Self {
        GradedFreeModule {
            generators: self
                .generators
                .iter()
                .map(|g| Generator::new(g.label.clone(), f(&g.degree)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedComplex {
    ring: RingRef,
    grading: Grading,
    killed: BTreeSet<usize>,
    modules: Vec<GradedFreeModule>,
    maps: Vec<SparseMatrix>,
}

impl BasedComplex {
    /// Builds a complex over `ring`; `maps[i - 1]` is `A_i: F_i -> F_{i-1}`.
    ///
    /// Checks matrix shapes against module ranks, degree dimensions against
    /// the grading, and that every entry is homogeneous of the degree forced
    /// by its source and target generators.
    pub fn new(
        ring: RingRef,
        grading: Grading,
        modules: Vec<GradedFreeModule>,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self> {
        Self::with_killed(ring, grading, BTreeSet::new(), modules, maps)
    }

    /// Like [`BasedComplex::new`], for a complex over `ring / (killed)`.
    pub fn with_killed(
        ring: RingRef,
        grading: Grading,
        killed: BTreeSet<usize>,
        modules: Vec<GradedFreeModule>,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let c = BasedComplex {
            ring,
            grading,
            killed,
            modules,
            maps,
        };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        ring: RingRef,
        grading: Grading,
        killed: BTreeSet<usize>,
        modules: Vec<GradedFreeModule>,
        maps: Vec<SparseMatrix>,
    ) -> Self {
        BasedComplex {
            ring,
            grading,
            killed,
            modules,
            maps,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.modules.is_empty() {
            return Err(Error::DimensionMismatch("complex has no modules".into()));
        }
        if self.maps.len() + 1 != self.modules.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} modules need {} maps, got {}",
                self.modules.len(),
                self.modules.len() - 1,
                self.maps.len()
            )));
        }
        if let Some(&v) = self.killed.iter().find(|&&v| v >= self.ring.nvars()) {
            return Err(Error::DimensionMismatch(format!(
                "killed variable {v} out of range"
            )));
        }
        let nvars = self.ring.nvars();
        let dim = self.grading.dimension(nvars);
        let var_degrees = self.grading.var_degrees(nvars)?;
        for (i, m) in self.modules.iter().enumerate() {
            for g in m.generators() {
                if g.degree.dim() != dim {
                    return Err(Error::Grading(format!(
                        "generator `{}` of F_{i} has degree {} of dimension {}, expected {dim}",
                        g.label,
                        g.degree,
                        g.degree.dim()
                    )));
                }
            }
        }
        for (idx, a) in self.maps.iter().enumerate() {
            let i = idx + 1;
            let (target, source) = (&self.modules[i - 1], &self.modules[i]);
            if a.nrows() != target.rank() || a.ncols() != source.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "A_{i} is {}x{} but F_{} has rank {} and F_{i} has rank {}",
                    a.nrows(),
                    a.ncols(),
                    i - 1,
                    target.rank(),
                    source.rank()
                )));
            }
            for (r, c, p) in a.entries() {
                if !same_ring(p.ring(), &self.ring) {
                    return Err(Error::RingMismatch);
                }
                let expected = &source.generator(c).degree - &target.generator(r).degree;
                for (m, _) in p.terms() {
                    if self.grading.monomial_degree(m, &var_degrees) != expected {
                        return Err(Error::Inhomogeneous {
                            map: i,
                            row: r,
                            col: c,
                            expected: expected.0.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Variables set to zero: the complex lives over `S / (killed)`.
    pub fn killed(&self) -> &BTreeSet<usize> {
        &self.killed
    }

    /// Index `t` of the last module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        &self.modules[i]
    }

    /// `A_i` for `1 <= i <= length()`.
    pub fn map(&self, i: usize) -> &SparseMatrix {
        &self.maps[i - 1]
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Total degree of a generator under the complex's grading.
    pub fn generator_total(&self, i: usize, g: usize) -> i64 {
        self.grading.total(&self.modules[i].generator(g).degree)
    }

    /// Position of the first nonzero composite `A_{i-1} A_i`, reported as `i`.
    pub fn compose_check(&self) -> Result<Option<usize>> {
        for i in 2..=self.length() {
            let prod = self.map(i - 1).mul(self.map(i), &self.ring)?;
            let prod = if self.killed.is_empty() {
                prod
            } else {
                prod.map_entries(|p| Ok(p.kill_variables(&self.killed_vec())))?
            };
            if !prod.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// First entry with a nonzero constant term, as `(map, row, col)`.
    pub fn first_unit_entry(&self) -> Option<(usize, usize, usize)> {
        for (idx, a) in self.maps.iter().enumerate() {
            for (r, c, p) in a.entries() {
                if !p.constant_term().is_zero() {
                    return Some((idx + 1, r, c));
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.first_unit_entry().is_none()
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        if let Some((map, row, col)) = self.first_unit_entry() {
            return Err(Error::NotMinimal { map, row, col });
        }
        let mut table = BettiTable::new();
        for (i, m) in self.modules.iter().enumerate() {
            for g in m.generators() {
                table.add(i, self.grading.total(&g.degree), 1);
            }
        }
        Ok(table)
    }

    pub(crate) fn killed_vec(&self) -> Vec<usize> {
        self.killed.iter().copied().collect()
    }

    /// Reinterprets the coefficients in another field; only `Rational` input
    /// can be reduced to a prime field.
    pub fn change_field(&self, field: Field) -> Result<BasedComplex> {
        let ring = self.ring.with_field(field);
        let maps = self
            .maps
            .iter()
            .map(|a| a.map_entries(|p| p.map_to_ring(&ring)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BasedComplex::from_parts_unchecked(
            ring,
            self.grading.clone(),
            self.killed.clone(),
            self.modules.clone(),
            maps,
        ))
    }

    /// `C tensor S / (vars)`: the variables are set to zero in every map and
    /// nothing is deleted.
    pub fn reduce_modulo(&self, vars: &[usize]) -> Result<BasedComplex> {
        let mut killed = self.killed.clone();
        killed.extend(vars.iter().copied());
        let kill: Vec<usize> = killed.iter().copied().collect();
        let maps = self
            .maps
            .iter()
            .map(|a| a.map_entries(|p| Ok(p.kill_variables(&kill))))
            .collect::<Result<Vec<_>>>()?;
        Self::with_killed(
            self.ring.clone(),
            self.grading.clone(),
            killed,
            self.modules.clone(),
            maps,
        )
    }

    /// Applies `f` to every generator degree and replaces the grading.
    pub fn regrade(
        &self,
        grading: Grading,
        f: impl Fn(&MultiDegree) -> MultiDegree,
    ) -> Result<BasedComplex> {
        let modules = self.modules.iter().map(|m| m.map_degrees(&f)).collect();
        Self::with_killed(
            self.ring.clone(),
            grading,
            self.killed.clone(),
            modules,
            self.maps.clone(),
        )
    }

    /// Entry of `A_i` or zero.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> Polynomial {
        self.map(i).entry_or_zero(r, c, &self.ring)
    }
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    std::sync::Arc::ptr_eq(a, b) || **a == **b
}

/// Free module over the grading with generators labelled `e0, e1, ...`.
pub fn module_from_degrees(degrees: Vec<MultiDegree>) -> GradedFreeModule {
    GradedFreeModule {
        generators: degrees
            .into_iter()
            .enumerate()
            .map(|(i, d)| Generator::new(format!("e{i}"), d))
            .collect(),
    }
}
