//! Homology of a complex restricted to its graded pieces of bounded degree.
//!
//! Over `T = S / (killed)` the piece of `F_p` in multidegree `m` has basis
//! the pairs `(g, u)` with `g` a generator of `F_p` and `u` a monomial of `T`
//! such that `deg g + deg u = m`. Each map restricts to a matrix over the
//! field between consecutive pieces, and
//! `dim H_p(m) = dim F_p(m) - rank A_p(m) - rank A_{p+1}(m)`.
//!
//! Within one multidegree the positions are visited from the top down. Once
//! an echelon form of `im A_{p+1}(m)` is known, the basis vectors of `F_p(m)`
//! off its pivot columns span a complement `C` of that image, and because
//! `A_p A_{p+1} = 0` the rank of `A_p(m)` equals the rank of its restriction
//! to `C`. Only those rows are reduced, and in an exact piece every one of
//! them is independent.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};

use super::BasedComplex;
use crate::error::{Error, Result};
use crate::linalg::{left_kernel, Echelon, LinField, ModP, Rationals, SparseVec};
use crate::ring::{Field, Monomial, MultiDegree, Polynomial};

/// A graded piece with nonzero homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPiece {
    pub position: usize,
    pub degree: MultiDegree,
    pub total: i64,
    /// `dim F_p(m)`.
    pub dimension: usize,
    /// `dim ker A_p(m)`.
    pub kernel: usize,
    /// `dim im A_{p+1}(m)`.
    pub image: usize,
    pub homology: usize,
}

/// Sums over all graded pieces at one position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionSummary {
    pub position: usize,
    pub pieces: usize,
    pub dimension: usize,
    pub kernel: usize,
    pub image: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub bound: i64,
    pub field: Field,
    /// One summary per examined position, in increasing order.
    pub positions: Vec<PositionSummary>,
    /// Pieces with nonzero homology, ordered by position, total degree, degree.
    pub nonzero: Vec<HomologyPiece>,
}

impl HomologyReport {
    /// True when every examined piece at positions `>= from` has zero homology.
    pub fn is_exact_from(&self, from: usize) -> bool {
        self.nonzero.iter().all(|p| p.position < from)
    }

    pub fn first_nonzero_from(&self, from: usize) -> Option<&HomologyPiece> {
        self.nonzero.iter().find(|p| p.position >= from)
    }
}

/// Monomials of `T` packed into one integer, `bits` bits per variable, so
/// that multiplication is addition.
#[derive(Clone, Copy, Debug)]
struct Packing {
    bits: u32,
}

impl Packing {
    fn new(max_exponent: i64, t_len: usize) -> Result<Self> {
        let bits = (64 - (max_exponent.max(1) as u64).leading_zeros()).max(1);
        if bits as usize * t_len > 128 {
            return Err(Error::SizeGuard(format!(
                "{t_len} variables with exponents up to {max_exponent} do not fit in 128 bits"
            )));
        }
        Ok(Packing { bits })
    }

    fn pack(&self, exps: impl IntoIterator<Item = u16>) -> u128 {
        exps.into_iter().enumerate().fold(0, |acc, (i, e)| {
            acc | (u128::from(e) << (self.bits as usize * i))
        })
    }

    fn unpack(&self, key: u128, t_len: usize) -> Vec<u16> {
        let mask = (1u128 << self.bits) - 1;
        (0..t_len)
            .map(|i| ((key >> (self.bits as usize * i)) & mask) as u16)
            .collect()
    }
}

/// Fixed-width encoding of multidegrees, first component most significant,
/// so that packed keys sort like the degrees. Components are stored
/// relative to `offset`; with offset 0, adding a packed degree with
/// nonnegative components to a packed key is componentwise addition as
/// long as every result stays below `limit`.
#[derive(Clone, Copy)]
struct DegreePacking {
    bits: u32,
    dim: usize,
    offset: i64,
    limit: i64,
}

impl DegreePacking {
    fn new(dim: usize, offset: i64, top: i64) -> Result<Self> {
        let span = (top - offset).max(1);
        let bits = 64 - (span as u64).leading_zeros();
        if bits as usize * dim > 128 {
            return Err(Error::SizeGuard(format!(
                "{dim} degree components up to {span} do not fit in 128 bits"
            )));
        }
        Ok(DegreePacking {
            bits,
            dim,
            offset,
            limit: top,
        })
    }

    fn with_offset(self, offset: i64) -> Self {
        DegreePacking { offset, ..self }
    }

    /// `None` when a component falls outside `offset..=limit`.
    fn pack(&self, degree: &[i64]) -> Option<u128> {
        let mut key = 0u128;
        for &x in degree {
            if x < self.offset || x > self.limit {
                return None;
            }
            key = (key << self.bits) | (x - self.offset) as u128;
        }
        Some(key)
    }

    fn unpack(&self, key: u128) -> Vec<i64> {
        let mask = (1u128 << self.bits) - 1;
        (0..self.dim)
            .rev()
            .map(|i| ((key >> (self.bits as usize * i)) & mask) as i64 + self.offset)
            .collect()
    }
}

type Key = (u32, u128);

/// A sparse vector over basis keys, sorted by increasing key.
type KeyedRow<E> = Vec<(Key, E)>;

/// Incremental echelon form keyed by basis vectors, with pivot rows scaled
/// to leading coefficient 1. The leading entry of a row is its smallest key,
/// so pivots follow a fixed position-over-term order on the target basis.
struct Elimination<'a, F: LinField> {
    field: &'a F,
    pivots: FxHashMap<Key, KeyedRow<F::E>>,
    scratch: KeyedRow<F::E>,
}

impl<'a, F: LinField> Elimination<'a, F> {
    fn new(field: &'a F) -> Self {
        Elimination {
            field,
            pivots: FxHashMap::default(),
            scratch: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: KeyedRow<F::E>) -> bool {
        let f = self.field;
        loop {
            let Some((lead, v)) = row.first().cloned() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                let inv = f.inv(&v);
                for e in row.iter_mut() {
                    e.1 = f.mul(&e.1, &inv);
                }
                row.shrink_to_fit();
                self.pivots.insert(lead, row);
                return true;
            };
            let c = f.neg(&v);
            let out = &mut self.scratch;
            out.clear();
            out.reserve(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
                    out.push(row[i].clone());
                    i += 1;
                } else if i == row.len() || pivot[j].0 < row[i].0 {
                    out.push((pivot[j].0, f.mul(&c, &pivot[j].1)));
                    j += 1;
                } else {
                    let x = f.add(&row[i].1, &f.mul(&c, &pivot[j].1));
                    if !f.is_zero(&x) {
                        out.push((row[i].0, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            std::mem::swap(&mut row, out);
        }
    }

    fn is_pivot(&self, key: &Key) -> bool {
        self.pivots.contains_key(key)
    }
}

/// Dimensions and ranks of one multidegree, indexed by position.
struct DegreeCounts {
    dims: Vec<usize>,
    /// `ranks[p]` is `rank A_p(m)`; `ranks[0]` and `ranks[t + 1]` are 0.
    ranks: Vec<usize>,
}

/// A matrix column as `(row, terms)` pairs with packed monomials.
type PackedColumn<E> = Vec<(u32, Vec<(u128, E)>)>;

/// Precomputed data shared by all pieces: the variables of `T`, their
/// degrees, and the maps with coefficients in the working field.
struct Pieces<'a, F: LinField> {
    complex: &'a BasedComplex,
    field: &'a F,
    packing: Packing,
    t_vars: Vec<usize>,
    t_degrees: Vec<Vec<i64>>,
    t_totals: Vec<i64>,
    /// Positive components of each variable degree, as `(coordinate, value)`.
    supports: Vec<Vec<(usize, i64)>>,
    /// `closing[s]`: coordinates whose last covering variable is `s`.
    closing: Vec<Vec<usize>>,
    /// Coordinates that no variable covers.
    uncovered: Vec<usize>,
    /// `columns[i - 1][g]`: entries of column `g` of `A_i` as `(row, terms)`.
    columns: Vec<Vec<PackedColumn<F::E>>>,
    /// Generators of each `F_p` grouped by degree.
    generator_groups: Vec<Vec<(Vec<i64>, Vec<u32>)>>,
    /// Monomials of `T` by degree, filled on demand.
    monomials: RefCell<FxHashMap<u128, Rc<[u128]>>>,
    /// Packs degrees of monomials of `T` up to the exponent bound.
    degrees: DegreePacking,
}

impl<'a, F: LinField> Pieces<'a, F> {
    fn new(complex: &'a BasedComplex, field: &'a F, max_exponent: i64) -> Result<Self> {
        let ring = complex.ring();
        let nvars = ring.nvars();
        let grading = complex.grading();
        let dim = grading.dimension(nvars);
        let t_vars: Vec<usize> = (0..nvars)
            .filter(|v| !complex.killed().contains(v))
            .collect();
        let packing = Packing::new(max_exponent, t_vars.len())?;
        let mut t_degrees = Vec::with_capacity(t_vars.len());
        let mut t_totals = Vec::with_capacity(t_vars.len());
        for &v in &t_vars {
            let d = grading.var_degree(v, nvars)?;
            let total = grading.total(&d);
            if total <= 0 || d.0.iter().any(|&x| x < 0) {
                return Err(Error::Grading(format!(
                    "variable `{}` has degree {d}; truncation needs positive degrees",
                    ring.name(v)
                )));
            }
            t_degrees.push(d.0);
            t_totals.push(total);
        }
        let stretch = t_degrees
            .iter()
            .zip(&t_totals)
            .flat_map(|(d, &tot)| d.iter().map(move |&x| (x + tot - 1) / tot))
            .max()
            .unwrap_or(0);
        let degrees = DegreePacking::new(dim, 0, max_exponent.max(0) * stretch.max(1))?;
        let supports: Vec<Vec<(usize, i64)>> = t_degrees
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(c, &x)| (c, x))
                    .collect()
            })
            .collect();
        let mut last = vec![None; dim];
        for (s, support) in supports.iter().enumerate() {
            for &(c, _) in support {
                last[c] = Some(s);
            }
        }
        let mut closing = vec![Vec::new(); t_vars.len()];
        let mut uncovered = Vec::new();
        for (c, l) in last.into_iter().enumerate() {
            match l {
                Some(s) => closing[s].push(c),
                None => uncovered.push(c),
            }
        }
        let mut t_index = vec![None; nvars];
        for (i, &v) in t_vars.iter().enumerate() {
            t_index[v] = Some(i);
        }
        let mut columns = Vec::with_capacity(complex.length());
        for a in complex.maps() {
            let mut cols = Vec::with_capacity(a.ncols());
            for col in a.columns() {
                let mut entries = Vec::new();
                for (r, p) in col {
                    let terms = restrict_terms(field, p, &t_index, &packing, max_exponent);
                    if !terms.is_empty() {
                        entries.push((r as u32, terms));
                    }
                }
                cols.push(entries);
            }
            columns.push(cols);
        }
        Ok(Pieces {
            complex,
            field,
            packing,
            t_vars,
            t_degrees,
            t_totals,
            supports,
            closing,
            uncovered,
            columns,
            generator_groups: complex
                .modules()
                .iter()
                .map(|module| {
                    let mut groups: Vec<(Vec<i64>, Vec<u32>)> = Vec::new();
                    for (g, gen) in module.generators().iter().enumerate() {
                        match groups.iter_mut().find(|(d, _)| *d == gen.degree.0) {
                            Some((_, gens)) => gens.push(g as u32),
                            None => groups.push((gen.degree.0.clone(), vec![g as u32])),
                        }
                    }
                    groups
                })
                .collect(),
            monomials: RefCell::default(),
            degrees,
        })
    }

    /// Calls `f` with every packed monomial of `T` whose degree is `target`.
    fn for_each_monomial(&self, target: &[i64], f: &mut impl FnMut(u128)) {
        if target.iter().any(|&x| x < 0) || self.uncovered.iter().any(|&c| target[c] != 0) {
            return;
        }
        let mut rem = target.to_vec();
        let live = rem.iter().filter(|&&x| x != 0).count();
        self.enumerate(0, &mut rem, live, 0, f);
    }

    /// Depth-first search over exponents, one variable per level. A variable
    /// that is the last to cover some coordinate must use it up exactly.
    fn enumerate(
        &self,
        idx: usize,
        rem: &mut [i64],
        live: usize,
        key: u128,
        f: &mut impl FnMut(u128),
    ) {
        if live == 0 {
            f(key);
            return;
        }
        if idx == self.t_vars.len() {
            return;
        }
        let support = &self.supports[idx];
        let mut max = support.iter().map(|&(c, d)| rem[c] / d).min().unwrap_or(0);
        let mut min = 0;
        if let Some(&c) = self.closing[idx].first() {
            let d = self.t_degrees[idx][c];
            if rem[c] % d != 0 || rem[c] / d > max {
                return;
            }
            min = rem[c] / d;
            max = min;
        }
        let shift = self.packing.bits as usize * idx;
        for e in (min..=max).rev() {
            let mut now = live;
            for &(c, d) in support {
                let before = rem[c];
                rem[c] -= e * d;
                if before != 0 && rem[c] == 0 {
                    now -= 1;
                }
            }
            if self.closing[idx].iter().all(|&c| rem[c] == 0) {
                self.enumerate(idx + 1, rem, now, key | ((e as u128) << shift), f);
            }
            for &(c, d) in support {
                rem[c] += e * d;
            }
        }
    }

    /// Monomials of degree `target`, memoized under its packed key.
    fn monomials(&self, target: &[i64], key: u128) -> Rc<[u128]> {
        if let Some(list) = self.monomials.borrow().get(&key) {
            return list.clone();
        }
        let mut list = Vec::new();
        self.for_each_monomial(target, &mut |u| list.push(u));
        let list: Rc<[u128]> = list.into();
        self.monomials.borrow_mut().insert(key, list.clone());
        list
    }

    fn for_each_basis(&self, position: usize, m: &[i64], f: &mut impl FnMut(u32, u128)) {
        let mut target = vec![0i64; m.len()];
        'groups: for (degree, gens) in &self.generator_groups[position] {
            for ((t, a), b) in target.iter_mut().zip(m).zip(degree) {
                *t = a - b;
                if *t < 0 {
                    continue 'groups;
                }
            }
            let Some(key) = self.degrees.pack(&target) else {
                continue;
            };
            let list = self.monomials(&target, key);
            for &g in gens {
                for &u in list.iter() {
                    f(g, u);
                }
            }
        }
    }

    /// `dim F_p(m)` without storing monomials.
    fn count_basis(&self, position: usize, m: &[i64]) -> usize {
        let mut count = 0;
        for gen in self.complex.module(position).generators() {
            let target: Vec<i64> = m.iter().zip(&gen.degree.0).map(|(a, b)| a - b).collect();
            self.for_each_monomial(&target, &mut |_| count += 1);
        }
        count
    }

    /// Packing wide enough for every multidegree `generator + monomial`
    /// that the truncation can reach.
    fn span(&self) -> Result<DegreePacking> {
        let gens = self.complex.modules().iter().flat_map(|m| m.generators());
        let (low, high) = gens.fold((0, 0), |(lo, hi), g| {
            g.degree
                .0
                .iter()
                .fold((lo, hi), |(lo, hi), &x| (lo.min(x), hi.max(x)))
        });
        DegreePacking::new(self.degrees.dim, low, high + self.degrees.limit)
    }

    /// Packed multidegrees of total degree `<= bound` where `F_p` is
    /// nonzero, appended to `out` (with repeats).
    fn reachable(
        &self,
        position: usize,
        bound: i64,
        layers: &[Vec<u128>],
        span: &DegreePacking,
        out: &mut Vec<u128>,
    ) {
        let grading = self.complex.grading();
        for (degree, _) in &self.generator_groups[position] {
            let start = grading.total(&MultiDegree(degree.clone()));
            if start > bound {
                continue;
            }
            let base = span
                .pack(degree)
                .expect("generator degrees lie in the span");
            for layer in &layers[..=(bound - start) as usize] {
                out.extend(layer.iter().map(|a| base + a));
            }
        }
    }

    /// Packed degrees of monomials of `T` (offset 0 in `span`), grouped by
    /// total degree `0..=max_total`.
    fn layers(&self, max_total: i64, span: &DegreePacking) -> Vec<Vec<u128>> {
        let zero = span.with_offset(0);
        let steps: Vec<(usize, u128)> = self
            .t_degrees
            .iter()
            .zip(&self.t_totals)
            .map(|(d, &tot)| {
                (
                    tot as usize,
                    zero.pack(d).expect("variable degrees lie in the span"),
                )
            })
            .collect();
        let mut sets: Vec<FxHashSet<u128>> =
            vec![FxHashSet::default(); max_total.max(0) as usize + 1];
        sets[0].insert(0);
        for d in 1..sets.len() {
            let mut next = FxHashSet::default();
            for &(tot, key) in &steps {
                let Some(prev) = d.checked_sub(tot) else {
                    continue;
                };
                next.extend(sets[prev].iter().map(|a| a + key));
            }
            sets[d] = next;
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Image of the basis vector `(g, u)` of `F_p` under `A_p`, keyed by
    /// target basis vectors.
    fn keyed_image(&self, position: usize, g: u32, u: u128) -> KeyedRow<F::E> {
        let mut row: KeyedRow<F::E> = Vec::new();
        for (r, terms) in &self.columns[position - 1][g as usize] {
            for (w, c) in terms {
                row.push(((*r, u + w), c.clone()));
            }
        }
        row.sort_unstable_by_key(|a| a.0);
        let mut len = 0;
        for i in 0..row.len() {
            if len > 0 && row[len - 1].0 == row[i].0 {
                row[len - 1].1 = self.field.add(&row[len - 1].1, &row[i].1);
            } else {
                row.swap(len, i);
                len += 1;
            }
        }
        row.truncate(len);
        row.retain(|e| !self.field.is_zero(&e.1));
        row
    }

    /// Image of the basis vector `(g, u)` of `F_p` under `A_p`, with target
    /// basis vectors numbered through `ids`. With `assign` false, returns
    /// `None` when the image leaves the numbered basis.
    fn image(
        &self,
        position: usize,
        g: u32,
        u: u128,
        ids: &mut FxHashMap<Key, u32>,
        assign: bool,
    ) -> Option<Vec<(u32, F::E)>> {
        let mut row: Vec<(u32, F::E)> = Vec::new();
        for (r, terms) in &self.columns[position - 1][g as usize] {
            for (w, c) in terms {
                let key = (*r, u + w);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None if assign => {
                        let id = ids.len() as u32;
                        ids.insert(key, id);
                        id
                    }
                    None => return None,
                };
                row.push((id, c.clone()));
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        let mut len = 0;
        for i in 0..row.len() {
            if len > 0 && row[len - 1].0 == row[i].0 {
                row[len - 1].1 = self.field.add(&row[len - 1].1, &row[i].1);
            } else {
                row.swap(len, i);
                len += 1;
            }
        }
        row.truncate(len);
        row.retain(|e| !self.field.is_zero(&e.1));
        Some(row)
    }

    /// Dimensions of `F_p(m)` for `p >= from` and ranks of `A_p(m)` for
    /// `p >= max(from, 1)`, visiting positions from the top down.
    fn degree_counts(&self, m: &[i64], from: usize) -> DegreeCounts {
        let t = self.complex.length();
        let mut dims = vec![0; t + 1];
        let mut ranks = vec![0; t + 2];
        let mut above: Option<Elimination<F>> = None;
        for p in (from.max(1)..=t).rev() {
            let mut elim = Elimination::new(self.field);
            let mut dim = 0;
            self.for_each_basis(p, m, &mut |g, u| {
                dim += 1;
                if above.as_ref().is_some_and(|prev| prev.is_pivot(&(g, u))) {
                    return;
                }
                elim.insert(self.keyed_image(p, g, u));
            });
            dims[p] = dim;
            ranks[p] = elim.rank();
            above = Some(elim);
        }
        if from == 0 {
            dims[0] = self.count_basis(0, m);
        }
        DegreeCounts { dims, ranks }
    }

    fn to_polynomials(
        &self,
        position: usize,
        basis: &[(u32, u128)],
        v: &SparseVec<F::E>,
    ) -> Vec<Polynomial> {
        let ring = self.complex.ring();
        let rank = self.complex.module(position).rank();
        let mut comps: Vec<Vec<(Monomial, crate::ring::Scalar)>> = vec![Vec::new(); rank];
        for (idx, x) in v {
            let (g, u) = basis[*idx];
            let mut exps = vec![0u16; ring.nvars()];
            for (&var, e) in self
                .t_vars
                .iter()
                .zip(self.packing.unpack(u, self.t_vars.len()))
            {
                exps[var] = e;
            }
            comps[g as usize].push((Monomial::from_exponents(exps), self.field.to_scalar(x)));
        }
        comps
            .into_iter()
            .map(|terms| Polynomial::from_terms(ring, terms))
            .collect()
    }
}

/// Terms of `p` that survive in `T`, packed; terms with an exponent above
/// `max_exponent` can never land in a truncated piece and are dropped.
fn restrict_terms<F: LinField>(
    field: &F,
    p: &Polynomial,
    t_index: &[Option<usize>],
    packing: &Packing,
    max_exponent: i64,
) -> Vec<(u128, F::E)> {
    let mut out = Vec::new();
    'terms: for (m, c) in p.terms() {
        let mut exps = vec![0u16; t_index.iter().flatten().count()];
        for v in m.support() {
            match t_index[v] {
                Some(i) if i64::from(m.exponent(v)) <= max_exponent => exps[i] = m.exponent(v),
                _ => continue 'terms,
            }
        }
        let e = field.from_scalar(c);
        if !field.is_zero(&e) {
            out.push((packing.pack(exps), e));
        }
    }
    out
}

fn generator_totals(c: &BasedComplex) -> impl Iterator<Item = i64> + '_ {
    (0..=c.length())
        .flat_map(move |i| (0..c.module(i).rank()).map(move |g| (i, g)))
        .map(|(i, g)| c.generator_total(i, g))
}

fn run_report<F: LinField>(
    c: &BasedComplex,
    field: &F,
    bound: i64,
    from: usize,
) -> Result<HomologyReport> {
    let min_gen = generator_totals(c).min().unwrap_or(0);
    let pieces = Pieces::new(c, field, bound - min_gen)?;
    let t = c.length();
    let span = pieces.span()?;
    let layers = pieces.layers(bound - min_gen, &span);
    let mut degrees = Vec::new();
    for p in from..=t {
        pieces.reachable(p, bound, &layers, &span, &mut degrees);
    }
    degrees.sort_unstable();
    degrees.dedup();
    let grading = c.grading();
    let mut positions: Vec<PositionSummary> = (from..=t)
        .map(|position| PositionSummary {
            position,
            ..Default::default()
        })
        .collect();
    let mut nonzero = Vec::new();
    for key in degrees {
        let m = span.unpack(key);
        let counts = pieces.degree_counts(&m, from);
        for p in from..=t {
            let dim = counts.dims[p];
            if dim == 0 {
                continue;
            }
            let kernel = dim - counts.ranks[p];
            let image = counts.ranks[p + 1];
            let homology = kernel - image;
            let summary = &mut positions[p - from];
            summary.pieces += 1;
            summary.dimension += dim;
            summary.kernel += kernel;
            summary.image += image;
            summary.homology += homology;
            if homology > 0 {
                let degree = MultiDegree(m.clone());
                nonzero.push(HomologyPiece {
                    position: p,
                    total: grading.total(&degree),
                    degree,
                    dimension: dim,
                    kernel,
                    image,
                    homology,
                });
            }
        }
    }
    nonzero.sort_by(|a, b| (a.position, a.total, &a.degree).cmp(&(b.position, b.total, &b.degree)));
    Ok(HomologyReport {
        bound,
        field: c.ring().field(),
        positions,
        nonzero,
    })
}

fn run_witness<F: LinField>(
    c: &BasedComplex,
    field: &F,
    position: usize,
    degree: &MultiDegree,
) -> Result<Option<Vec<Polynomial>>> {
    let min_gen = generator_totals(c).min().unwrap_or(0);
    let total = c.grading().total(degree);
    let pieces = Pieces::new(c, field, total - min_gen)?;
    let collect = |p: usize| {
        let mut basis = Vec::new();
        pieces.for_each_basis(p, &degree.0, &mut |g, u| basis.push((g, u)));
        basis
    };
    let basis = collect(position);
    let kernel: Vec<SparseVec<F::E>> = if position == 0 {
        (0..basis.len()).map(|i| vec![(i, field.one())]).collect()
    } else {
        let mut ids = FxHashMap::default();
        let rows: Vec<SparseVec<F::E>> = basis
            .iter()
            .map(|&(g, u)| {
                widen(
                    pieces
                        .image(position, g, u, &mut ids, true)
                        .expect("assigning ids"),
                )
            })
            .collect();
        left_kernel(field, &rows, ids.len())
    };
    let mut image = Echelon::new(field);
    if position < c.length() {
        let mut ids: FxHashMap<Key, u32> = basis
            .iter()
            .enumerate()
            .map(|(i, &key)| (key, i as u32))
            .collect();
        for (g, u) in collect(position + 1) {
            let row = pieces
                .image(position + 1, g, u, &mut ids, false)
                .ok_or_else(|| Error::Grading("image leaves its graded piece".into()))?;
            image.insert(widen(row));
        }
    }
    for k in kernel {
        let reduced = image.reduce(k.clone());
        if !reduced.is_empty() {
            let inv = field.inv(&k[0].1);
            let scaled: SparseVec<F::E> = k.iter().map(|(i, x)| (*i, field.mul(x, &inv))).collect();
            return Ok(Some(pieces.to_polynomials(position, &basis, &scaled)));
        }
    }
    Ok(None)
}

fn widen<E>(row: Vec<(u32, E)>) -> SparseVec<E> {
    row.into_iter().map(|(i, x)| (i as usize, x)).collect()
}

impl BasedComplex {
    /// `max` generator total degree plus 3.
    pub fn default_bound(&self) -> i64 {
        self.max_generator_total() + 3
    }

    fn max_generator_total(&self) -> i64 {
        generator_totals(self).max().unwrap_or(0)
    }

    /// Dimensions of kernels, images and homology of every graded piece of
    /// total degree `<= bound`, over the ring's coefficient field.
    pub fn truncated_homology(&self, bound: i64) -> Result<HomologyReport> {
        self.truncated_homology_from(bound, 0)
    }

    /// Like [`BasedComplex::truncated_homology`], examining only positions
    /// `>= from`.
    pub fn truncated_homology_from(&self, bound: i64, from: usize) -> Result<HomologyReport> {
        let top = self.max_generator_total();
        if bound < top {
            return Err(Error::BoundTooSmall { bound, degree: top });
        }
        if let Some(i) = self.compose_check()? {
            return Err(Error::NotAComplex(i));
        }
        let from = from.min(self.length());
        match self.ring.field() {
            Field::Prime(p) => run_report(self, &ModP(p), bound, from),
            Field::Rational => run_report(self, &Rationals, bound, from),
        }
    }

    /// A cycle at `position` in multidegree `degree` that is not a boundary,
    /// scaled so that its first nonzero coordinate is 1.
    pub fn homology_witness(
        &self,
        position: usize,
        degree: &MultiDegree,
    ) -> Result<Option<Vec<Polynomial>>> {
        if position > self.length() {
            return Err(Error::DimensionMismatch(format!(
                "position {position} exceeds the length {}",
                self.length()
            )));
        }
        let witness = match self.ring.field() {
            Field::Prime(p) => run_witness(self, &ModP(p), position, degree)?,
            Field::Rational => run_witness(self, &Rationals, position, degree)?,
        };
        Ok(witness.filter(|w| w.iter().any(|p| !p.is_zero())))
    }
}

/// Reference computation that reduces every row of every piece; used to
/// cross-check the complement shortcut.
#[cfg(test)]
pub(crate) fn full_rank_counts(
    c: &BasedComplex,
    bound: i64,
) -> std::collections::HashMap<(usize, MultiDegree), (usize, usize)> {
    let field = ModP(c.ring().field().characteristic().max(2));
    let min_gen = generator_totals(c).min().unwrap_or(0);
    let pieces = Pieces::new(c, &field, bound - min_gen).unwrap();
    let span = pieces.span().unwrap();
    let layers = pieces.layers(bound - min_gen, &span);
    let mut out = std::collections::HashMap::new();
    for p in 0..=c.length() {
        let mut degrees = Vec::new();
        pieces.reachable(p, bound, &layers, &span, &mut degrees);
        degrees.sort_unstable();
        degrees.dedup();
        for key in degrees {
            let m = span.unpack(key);
            let mut ids = FxHashMap::default();
            let mut elim = Echelon::new(&field);
            let mut dim = 0;
            pieces.for_each_basis(p, &m, &mut |g, u| {
                dim += 1;
                if p > 0 {
                    elim.insert(widen(pieces.image(p, g, u, &mut ids, true).unwrap()));
                }
            });
            if dim > 0 {
                out.insert((p, MultiDegree(m)), (dim, elim.rank()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{deg, koszul};
    use super::super::{module_from_degrees, BasedComplex, SparseMatrix};
    use super::full_rank_counts;
    use crate::error::Error;
    use crate::ring::{Field, Grading, Polynomial, Ring};

    #[test]
    fn koszul_is_exact() {
        for field in [
            Field::Rational,
            Field::prime(32003).unwrap(),
            Field::prime(101).unwrap(),
        ] {
            let r = Ring::new(["x", "y"], field).unwrap();
            let k = koszul(&r, &["x", "y"]);
            let report = k.truncated_homology(5).unwrap();
            assert!(report.is_exact_from(1), "{report:?}");
            // H_0 = k in degree 0 only.
            assert_eq!(report.nonzero.len(), 1);
            assert_eq!(report.nonzero[0].position, 0);
            assert_eq!(report.nonzero[0].total, 0);
        }
    }

    fn missing_syzygy() -> BasedComplex {
        // S(-1)^2 --(x y)--> S has the Koszul syzygy in degree 2 as homology.
        let r = Ring::new(["x", "y"], Field::Rational).unwrap();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let y = Polynomial::var_named(&r, "y").unwrap();
        BasedComplex::new(
            r.clone(),
            Grading::Total,
            vec![
                module_from_degrees(vec![deg(0)]),
                module_from_degrees(vec![deg(1), deg(1)]),
            ],
            vec![SparseMatrix::from_rows(vec![vec![x, y]], 2).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn detects_missing_syzygy() {
        let c = missing_syzygy();
        let report = c.truncated_homology(4).unwrap();
        let first = report.first_nonzero_from(1).unwrap();
        assert_eq!((first.position, first.total, first.homology), (1, 2, 1));
        let w = c.homology_witness(1, &deg(2)).unwrap().unwrap();
        let shown: Vec<String> = w.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["y", "-x"]);
        assert!(c.homology_witness(1, &deg(1)).unwrap().is_none());
        let upper = c.truncated_homology_from(4, 1).unwrap();
        assert_eq!(upper.positions.len(), 1);
        assert_eq!(upper.nonzero, report.nonzero[1..].to_vec());
    }

    #[test]
    fn complement_shortcut_matches_full_ranks() {
        let r = Ring::new(["x", "y", "z"], Field::prime(101).unwrap()).unwrap();
        for c in [
            koszul(&r, &["x", "y", "z"]),
            missing_syzygy()
                .change_field(Field::prime(101).unwrap())
                .unwrap(),
        ] {
            let bound = c.default_bound();
            let report = c.truncated_homology(bound).unwrap();
            let full = full_rank_counts(&c, bound);
            let mut homology = 0;
            for ((p, m), (dim, _)) in &full {
                let rank_p = full.get(&(*p, m.clone())).map_or(0, |x| x.1);
                let rank_above = full.get(&(p + 1, m.clone())).map_or(0, |x| x.1);
                homology += dim - rank_p - rank_above;
            }
            let reported: usize = report.positions.iter().map(|s| s.homology).sum();
            assert_eq!(reported, homology);
        }
    }

    #[test]
    fn bound_below_generators_is_rejected() {
        let r = Ring::new(["x", "y"], Field::Rational).unwrap();
        let k = koszul(&r, &["x", "y"]);
        assert!(matches!(
            k.truncated_homology(1),
            Err(Error::BoundTooSmall {
                bound: 1,
                degree: 2
            })
        ));
    }

    #[test]
    fn non_complexes_are_rejected() {
        let r = Ring::new(["x"], Field::Rational).unwrap();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let c = BasedComplex::new(
            r.clone(),
            Grading::Total,
            vec![
                module_from_degrees(vec![deg(0)]),
                module_from_degrees(vec![deg(1)]),
                module_from_degrees(vec![deg(2)]),
            ],
            vec![
                SparseMatrix::from_rows(vec![vec![x.clone()]], 1).unwrap(),
                SparseMatrix::from_rows(vec![vec![x]], 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            c.truncated_homology(4),
            Err(Error::NotAComplex(2))
        ));
    }
}
