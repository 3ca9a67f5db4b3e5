use crate::complexes::{BasedComplex, Generator, GradedFreeModule, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::{Grading, MultiDegree, Polynomial, RingRef};

fn homogenizer_name(ring: &RingRef) -> String {
    let mut name = "t".to_string();
    while ring.var_index(&name).is_ok() {
        name.push('_');
    }
    name
}

/// Weight-homogenizes every map of `c` into the ring with one extra variable
/// `t` appended.
///
/// Generators of `F_0` get weight 0. A generator of `F_i` gets the largest
/// value of `weight(target generator) + max weight of the entry` over the
/// nonzero entries of its column, and each entry is padded with powers of
/// `t` up to that degree. The grading becomes the weights followed by the
/// old grading.
pub fn homogenize_complex(c: &BasedComplex, weights: &[i64]) -> Result<BasedComplex> {
    let ring = c.ring();
    if weights.len() != ring.nvars() {
        return Err(Error::Weights(format!(
            "{} weights for {} variables",
            weights.len(),
            ring.nvars()
        )));
    }
    if let Some(w) = weights.iter().find(|&&w| w <= 0) {
        return Err(Error::Weights(format!("weight {w} is not positive")));
    }
    let target = ring.with_extra_variable(&homogenizer_name(ring))?;
    let mut weight_of: Vec<Vec<i64>> = vec![vec![0; c.module(0).rank()]];
    let mut maps = Vec::with_capacity(c.length());
    for i in 1..=c.length() {
        let a = c.map(i);
        let rows = &weight_of[i - 1];
        let mut cols = vec![0i64; a.ncols()];
        let mut seen = vec![false; a.ncols()];
        for (r, col, p) in a.entries() {
            let top = p.terms().map(|(m, _)| m.weight(weights)).max().unwrap_or(0);
            let d = rows[r] + top;
            if !seen[col] || d > cols[col] {
                cols[col] = d;
                seen[col] = true;
            }
        }
        let mut entries = Vec::with_capacity(a.nnz());
        for (r, col, p) in a.entries() {
            entries.push((
                r,
                col,
                p.homogenize_to(weights, &target, cols[col] - rows[r])?,
            ));
        }
        maps.push(SparseMatrix::from_entries(a.nrows(), a.ncols(), entries)?);
        weight_of.push(cols);
    }
    let modules = c
        .modules()
        .iter()
        .zip(&weight_of)
        .map(|(m, ws)| {
            GradedFreeModule::new(
                m.generators()
                    .iter()
                    .zip(ws)
                    .map(|(g, &w)| {
                        let mut d = vec![w];
                        d.extend(&g.degree.0);
                        Generator::new(g.label.clone(), MultiDegree(d))
                    })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let grading = Grading::Weighted {
        weights: weights.to_vec(),
        inner: Box::new(c.grading().clone()),
    };
    BasedComplex::with_killed(target, grading, c.killed().clone(), modules, maps)
}

/// Sets the homogenizing variable to zero and returns to the base ring and
/// grading. Complexes that were not produced by [`homogenize_complex`] are
/// returned unchanged.
pub fn set_t_zero(c: &BasedComplex) -> Result<BasedComplex> {
    let Grading::Weighted { weights, inner } = c.grading() else {
        return Ok(c.clone());
    };
    let ring = c.ring();
    if ring.nvars() != weights.len() + 1 {
        return Ok(c.clone());
    }
    let t = weights.len();
    let base = crate::ring::Ring::new(ring.names()[..t].to_vec(), ring.field())?;
    let maps = c
        .maps()
        .iter()
        .map(|a| a.map_entries(|p: &Polynomial| p.kill_variables(&[t]).map_to_ring(&base)))
        .collect::<Result<Vec<_>>>()?;
    let modules = c
        .modules()
        .iter()
        .map(|m| {
            GradedFreeModule::new(
                m.generators()
                    .iter()
                    .map(|g| Generator::new(g.label.clone(), c.grading().strip_weight(&g.degree)))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let killed = c.killed().iter().copied().filter(|&v| v < t).collect();
    BasedComplex::with_killed(base, (**inner).clone(), killed, modules, maps)
}
