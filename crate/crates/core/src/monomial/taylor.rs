use std::collections::HashMap;

use itertools::Itertools;

use super::MonomialIdeal;
use crate::complexes::{BasedComplex, Generator, GradedFreeModule, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::{Grading, Monomial, MultiDegree, Polynomial};

/// Largest number of generators accepted by [`taylor_complex`].
pub const TAYLOR_GUARD: usize = 16;

fn subset_label(subset: &[usize]) -> String {
    format!("{{{}}}", subset.iter().map(|i| i + 1).join(","))
}

fn lcm_of(ideal: &MonomialIdeal, subset: &[usize]) -> Monomial {
    subset
        .iter()
        .fold(Monomial::one(ideal.ring().nvars()), |acc, &i| {
            acc.lcm(&ideal.generators()[i])
        })
}

/// The Taylor resolution of `S / I`, finely graded.
///
/// Position `i` has one generator per `i`-subset of the generators of `I`
/// (subsets in lex order), of degree the lcm of the subset. The basis vector
/// of `s_0 < ... < s_{i-1}` maps to `sum_t (-1)^t (m_s / m_{s - s_t}) e_{s - s_t}`.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<BasedComplex> {
    let r = ideal.len();
    if r > TAYLOR_GUARD {
        return Err(Error::SizeGuard(format!(
            "Taylor complex on {r} generators (limit {TAYLOR_GUARD})"
        )));
    }
    let ring = ideal.ring();
    let (plus, minus) = (ring.field().from_i64(1), ring.field().from_i64(-1));
    let subsets: Vec<Vec<Vec<usize>>> = (0..=r).map(|i| (0..r).combinations(i).collect()).collect();
    let lcms: Vec<Vec<Monomial>> = subsets
        .iter()
        .map(|level| level.iter().map(|s| lcm_of(ideal, s)).collect())
        .collect();
    let modules = subsets
        .iter()
        .zip(&lcms)
        .map(|(level, ms)| {
            GradedFreeModule::new(
                level
                    .iter()
                    .zip(ms)
                    .map(|(s, m)| {
                        let degree = m.exponents().iter().map(|&e| e as i64).collect();
                        Generator::new(subset_label(s), MultiDegree(degree))
                    })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(r);
    for i in 1..=r {
        let index: HashMap<&[usize], usize> = subsets[i - 1]
            .iter()
            .enumerate()
            .map(|(row, s)| (s.as_slice(), row))
            .collect();
        let mut entries = Vec::new();
        for (col, s) in subsets[i].iter().enumerate() {
            for t in 0..s.len() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != s[t]).collect();
                let row = index[face.as_slice()];
                let ratio = lcms[i - 1][row]
                    .quotient_of(&lcms[i][col])
                    .expect("lcm of a subset divides the lcm of the whole set");
                let coeff = if t % 2 == 0 {
                    plus.clone()
                } else {
                    minus.clone()
                };
                entries.push((row, col, Polynomial::monomial(ring, ratio, coeff)));
            }
        }
        maps.push(SparseMatrix::from_entries(
            subsets[i - 1].len(),
            subsets[i].len(),
            entries,
        )?);
    }
    BasedComplex::new(ring.clone(), Grading::Fine, modules, maps)
}
