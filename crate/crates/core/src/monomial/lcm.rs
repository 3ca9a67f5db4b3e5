use std::collections::{BTreeSet, HashMap};

use super::MonomialIdeal;
use crate::complexes::BettiTable;
use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::ring::{Field, Monomial};

/// Largest lattice accepted by [`LcmLattice::new`].
const LATTICE_GUARD: usize = 1 << 16;
/// Above this many chains an interval is handled through its crosscut.
const CHAIN_GUARD: u64 = 200_000;
/// Largest number of atoms for a crosscut complex.
const CROSSCUT_GUARD: usize = 20;

/// The lcm lattice of a monomial ideal without its bottom element `1`: the
/// lcms of all nonempty sets of generators.
///
/// Elements are sorted by degree, so `a | b` with `a != b` puts `a` first.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    atoms: Vec<Monomial>,
    elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let atoms = ideal.generators().to_vec();
        let mut seen: BTreeSet<Monomial> = atoms.iter().cloned().collect();
        let mut frontier = atoms.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for a in &atoms {
                    let l = e.lcm(a);
                    if seen.insert(l.clone()) {
                        next.push(l);
                    }
                }
            }
            if seen.len() > LATTICE_GUARD {
                return Err(Error::SizeGuard(format!(
                    "lcm lattice with more than {LATTICE_GUARD} elements"
                )));
            }
            frontier = next;
        }
        let mut elements: Vec<Monomial> = seen.into_iter().collect();
        elements.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        Ok(LcmLattice { atoms, elements })
    }

    pub fn atoms(&self) -> &[Monomial] {
        &self.atoms
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the elements strictly between `1` and `elements[top]`.
    pub fn open_interval(&self, top: usize) -> Vec<usize> {
        let m = &self.elements[top];
        (0..top).filter(|&i| self.elements[i].divides(m)).collect()
    }
}

/// How the homology of an open interval `(1, m)` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalMethod {
    /// The order complex: chains of the interval.
    OrderComplex,
    /// The crosscut complex on the atoms: sets of generators dividing `m`
    /// whose lcm is not `m`. It is homotopy equivalent to the order complex.
    Crosscut,
    /// The order complex unless it has too many chains.
    Auto,
}

/// Reduced homology dimensions of a simplicial complex; `faces[s]` lists
/// the faces with `s` vertices, so `faces[0]` is the empty face and the
/// result at index `s` is `dim H~_{s-1}`.
fn reduced_homology(field: Field, faces: &[Vec<Vec<usize>>]) -> Vec<u64> {
    let mut ranks = vec![0usize; faces.len() + 1];
    for s in 1..faces.len() {
        let index: HashMap<&[usize], usize> = faces[s - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let rows: Vec<Vec<(usize, i64)>> = faces[s]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|t| {
                        let face: Vec<usize> = f
                            .iter()
                            .enumerate()
                            .filter(|&(u, _)| u != t)
                            .map(|(_, &v)| v)
                            .collect();
                        (index[face.as_slice()], if t % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ranks[s] = integer_rank(field, &rows);
    }
    (0..faces.len())
        .map(|s| (faces[s].len() - ranks[s] - ranks[s + 1]) as u64)
        .collect()
}

fn chain_count(lattice: &LcmLattice, interval: &[usize]) -> u64 {
    let els = lattice.elements();
    let mut above = vec![1u64; interval.len()];
    for a in (0..interval.len()).rev() {
        for b in a + 1..interval.len() {
            if els[interval[a]].divides(&els[interval[b]]) {
                above[a] = above[a].saturating_add(above[b]);
            }
        }
    }
    above.iter().fold(1u64, |acc, &c| acc.saturating_add(c))
}

fn order_complex(lattice: &LcmLattice, interval: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let els = lattice.elements();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    let mut stack: Vec<Vec<usize>> = (0..interval.len()).map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        for b in last + 1..interval.len() {
            if els[interval[last]].divides(&els[interval[b]]) {
                let mut longer = chain.clone();
                longer.push(b);
                stack.push(longer);
            }
        }
        if faces.len() <= chain.len() {
            faces.resize(chain.len() + 1, Vec::new());
        }
        faces[chain.len()].push(chain);
    }
    for level in &mut faces {
        level.sort();
    }
    faces
}

fn crosscut_complex(lattice: &LcmLattice, top: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let m = &lattice.elements()[top];
    let atoms: Vec<&Monomial> = lattice
        .atoms()
        .iter()
        .filter(|a| a.divides(m) && *a != m)
        .collect();
    if atoms.len() > CROSSCUT_GUARD {
        return Err(Error::SizeGuard(format!(
            "crosscut complex on {} atoms (limit {CROSSCUT_GUARD})",
            atoms.len()
        )));
    }
    let nvars = m.nvars();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); atoms.len() + 1];
    for mask in 0u32..(1 << atoms.len()) {
        let members: Vec<usize> = (0..atoms.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let l = members
            .iter()
            .fold(Monomial::one(nvars), |acc, &i| acc.lcm(atoms[i]));
        if &l != m {
            faces[members.len()].push(members);
        }
    }
    while faces.len() > 1 && faces.last().is_some_and(Vec::is_empty) {
        faces.pop();
    }
    Ok(faces)
}

/// Reduced homology of the open interval `(1, elements[top])`, indexed so
/// that entry `s` is `dim H~_{s-1}`.
pub fn interval_homology(
    lattice: &LcmLattice,
    top: usize,
    method: IntervalMethod,
    field: Field,
) -> Result<Vec<u64>> {
    let interval = lattice.open_interval(top);
    let use_crosscut = match method {
        IntervalMethod::OrderComplex => false,
        IntervalMethod::Crosscut => true,
        IntervalMethod::Auto => chain_count(lattice, &interval) > CHAIN_GUARD,
    };
    let faces = if use_crosscut {
        crosscut_complex(lattice, top)?
    } else {
        order_complex(lattice, &interval)
    };
    Ok(reduced_homology(field, &faces))
}

/// Graded Betti numbers of `S / I` from the lcm lattice:
/// `beta_{i, m} = dim H~_{i-2}((1, m))` for `i >= 1` and lattice elements
/// `m`, over the field of the ideal's ring.
pub fn lcm_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let mut table = BettiTable::new();
    if ideal.is_unit() {
        return Ok(table);
    }
    table.add(0, 0, 1);
    let lattice = LcmLattice::new(ideal)?;
    let field = ideal.ring().field();
    for top in 0..lattice.len() {
        let h = interval_homology(&lattice, top, IntervalMethod::Auto, field)?;
        let degree = lattice.elements()[top].degree() as i64;
        for (s, &dim) in h.iter().enumerate() {
            if dim > 0 {
                table.add(s + 1, degree, dim);
            }
        }
    }
    Ok(table)
}
