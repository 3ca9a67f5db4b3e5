use std::collections::BTreeSet;

use super::{lcm_betti, taylor_complex, MonomialIdeal};
use crate::complexes::BettiTable;
use crate::error::Result;
use crate::ring::{Monomial, MultiDegree};

/// Graded Betti numbers of `(I : x) / I` as a module over `S / (x)`, with
/// `beta_{0, j}` counting its generators. Degrees are those of
/// `Tor_1(S / I, S / (x))`, which is `(I : x) / I` shifted up by one.
///
/// Tensoring a minimal resolution of `S / I` with `S / (x)` splits off the
/// resolution of `S / I'`, where `I'` is generated by the generators of `I`
/// not divisible by `x`; the complement, shifted down by one, resolves
/// `(I : x) / I`.
pub fn colon_betti(ideal: &MonomialIdeal, var: usize) -> Result<BettiTable> {
    ideal.check_var(var)?;
    let upper = |t: BettiTable| BettiTable::from_entries(t.entries().filter(|&(i, _, _)| i > 0));
    let full = upper(lcm_betti(ideal)?);
    let pruned = upper(lcm_betti(&ideal.kill_variables(&[var]))?);
    Ok(full.checked_sub(&pruned)?.shifted(-1, 0))
}

/// Outcome of comparing `H_1(F tensor S/(x))` with `(I : x) / I` degree by
/// degree, where `F` is the minimized Taylor resolution of `S / I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonHomology {
    pub bound: i64,
    /// Multidegrees `u x` with `u` in `(I : x)` but not in `I`, total degree
    /// at most `bound`.
    pub expected: BTreeSet<MultiDegree>,
    /// Multidegrees where `H_1` has dimension exactly one.
    pub found: BTreeSet<MultiDegree>,
    /// Nonzero homology at positions other than 1, or of dimension above one.
    pub unexpected: Vec<(usize, MultiDegree, usize)>,
}

impl ColonHomology {
    pub fn passed(&self) -> bool {
        self.expected == self.found && self.unexpected.is_empty()
    }
}

fn monomials_up_to(nvars: usize, degree: u32, out: &mut Vec<Monomial>) {
    fn go(exps: &mut Vec<u16>, var: usize, left: u32, out: &mut Vec<Monomial>) {
        if var == exps.len() {
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[var] = e as u16;
            go(exps, var + 1, left - e, out);
        }
        exps[var] = 0;
    }
    go(&mut vec![0; nvars], 0, degree, out);
}

/// Checks, through total degree `bound`, that the homology of the minimized
/// Taylor resolution of `S / I` with `x` set to zero is `(I : x) / I`
/// shifted by `x`, concentrated in position 1.
pub fn colon_homology_check(
    ideal: &MonomialIdeal,
    var: usize,
    bound: i64,
) -> Result<ColonHomology> {
    ideal.check_var(var)?;
    let tensored = taylor_complex(ideal)?.minimize().reduce_modulo(&[var])?;
    let bound = bound.max(tensored.default_bound());
    let report = tensored.truncated_homology_from(bound, 1)?;

    let colon = ideal.colon_by_variable(var)?;
    let nvars = ideal.ring().nvars();
    let mut candidates = Vec::new();
    if bound >= 1 {
        monomials_up_to(nvars, (bound - 1) as u32, &mut candidates);
    }
    let x = Monomial::variable(nvars, var);
    let expected = candidates
        .iter()
        .filter(|u| colon.contains(u) && !ideal.contains(u))
        .map(|u| MultiDegree(u.mul(&x).exponents().iter().map(|&e| e as i64).collect()))
        .collect();
    let mut found = BTreeSet::new();
    let mut unexpected = Vec::new();
    for piece in report.nonzero {
        if piece.position == 1 && piece.homology == 1 {
            found.insert(piece.degree);
        } else {
            unexpected.push((piece.position, piece.degree, piece.homology));
        }
    }
    Ok(ColonHomology {
        bound,
        expected,
        found,
        unexpected,
    })
}
