//! Monomial ideals: Taylor resolutions, an lcm-lattice Betti oracle, minimal
//! primes of squarefree ideals, colon ideals and column substitutions.

mod colon;
mod lcm;
mod primes;
mod taylor;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::determinantal::{minors, SparsePattern};
use crate::error::{Error, Result};
use crate::ring::{Field, Monomial, Polynomial, Ring, RingRef};

pub use colon::{colon_betti, colon_homology_check, ColonHomology};
pub use lcm::{interval_homology, lcm_betti, IntervalMethod, LcmLattice};
pub use primes::{codim, intersect, minimal_primes, prime_ideal};
pub use taylor::{taylor_complex, TAYLOR_GUARD};

/// A monomial ideal stored by its minimal generators.
///
/// Generators are sorted by degree, then lexicographically with variable 0
/// most significant and larger exponents first. The zero ideal has no
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: RingRef,
    generators: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

fn identifiers(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .filter(|t| t.starts_with(|c: char| c.is_ascii_alphabetic()))
}

impl MonomialIdeal {
    pub fn new(ring: &RingRef, generators: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let generators: Vec<Monomial> = generators.into_iter().collect();
        if let Some(g) = generators.iter().find(|g| g.nvars() != ring.nvars()) {
            return Err(Error::DimensionMismatch(format!(
                "monomial with {} exponents in a ring with {} variables",
                g.nvars(),
                ring.nvars()
            )));
        }
        Ok(MonomialIdeal {
            ring: ring.clone(),
            generators: minimalize(generators),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    /// The ideal generated by the given terms; coefficients are ignored.
    pub fn from_polynomials<'a>(
        ring: &RingRef,
        polys: impl IntoIterator<Item = &'a Polynomial>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            let (m, _) = p
                .as_term()
                .ok_or_else(|| Error::NotMonomial(p.to_string()))?;
            gens.push(m.clone());
        }
        Self::new(ring, gens)
    }

    /// Parses one monomial per line in the ring's polynomial grammar. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = Polynomial::parse(ring, line)?;
            if p.is_zero() {
                continue;
            }
            let (m, _) = p
                .as_term()
                .ok_or_else(|| Error::NotMonomial(line.to_string()))?;
            gens.push(m.clone());
        }
        Self::new(ring, gens)
    }

    /// Parses an ideal file whose ring is read off the file itself: an
    /// optional `vars:` line lists the variables in order, and any other
    /// variable is appended in order of first appearance.
    pub fn parse_standalone(text: &str, field: Field) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut body = Vec::new();
        for line in text.lines().map(str::trim) {
            if let Some(rest) = line.strip_prefix("vars:") {
                for name in rest.split(|c: char| c.is_whitespace() || c == ',') {
                    if !name.is_empty() && !names.iter().any(|n| n == name) {
                        names.push(name.to_string());
                    }
                }
            } else {
                body.push(line);
            }
        }
        for line in &body {
            if line.starts_with('#') {
                continue;
            }
            for name in identifiers(line) {
                if !names.iter().any(|n| n == name) {
                    names.push(name.to_string());
                }
            }
        }
        let ring = Ring::new(names, field)?;
        Self::parse(&ring, &body.join("\n"))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Same as [`MonomialIdeal::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Largest generator degree; 0 for the zero ideal.
    pub fn max_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn to_polynomials(&self) -> Vec<Polynomial> {
        let one = self.ring.field().one();
        self.generators
            .iter()
            .map(|m| Polynomial::monomial(&self.ring, m.clone(), one.clone()))
            .collect()
    }

    /// `(I : x)`: generators divisible by `x` lose one factor of `x`.
    pub fn colon_by_variable(&self, var: usize) -> Result<MonomialIdeal> {
        self.check_var(var)?;
        let gens = self.generators.iter().map(|g| match g.exponent(var) {
            0 => g.clone(),
            e => g.with_exponent(var, e - 1),
        });
        Self::new(&self.ring, gens)
    }

    /// Image of `I` in `S / (vars)`, pulled back to the generators of `I`
    /// that avoid every killed variable.
    pub fn kill_variables(&self, vars: &[usize]) -> MonomialIdeal {
        MonomialIdeal {
            ring: self.ring.clone(),
            generators: self
                .generators
                .iter()
                .filter(|g| vars.iter().all(|&v| g.exponent(v) == 0))
                .cloned()
                .collect(),
        }
    }

    /// Replaces each source variable by its target, within the same ring.
    pub fn substitute(&self, mapping: &[(usize, usize)]) -> Result<MonomialIdeal> {
        for &(x, y) in mapping {
            self.check_var(x)?;
            self.check_var(y)?;
        }
        let gens = self.generators.iter().map(|g| {
            let mut exps = g.exponents().to_vec();
            for &(x, y) in mapping {
                if x != y {
                    exps[y] += exps[x];
                    exps[x] = 0;
                }
            }
            Monomial::from_exponents(exps)
        });
        Self::new(&self.ring, gens)
    }

    /// The same generators in a ring that contains every variable they use.
    pub fn map_to_ring(&self, target: &RingRef) -> Result<MonomialIdeal> {
        let polys: Vec<Polynomial> = self
            .to_polynomials()
            .iter()
            .map(|p| p.map_to_ring(target))
            .collect::<Result<_>>()?;
        Self::from_polynomials(target, &polys)
    }

    pub(crate) fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self
            .to_polynomials()
            .iter()
            .map(|p| p.to_string())
            .join(", ");
        write!(f, "({gens})")
    }
}

/// Substitutes variables of `ideal` (whose ring is the pattern's ring)
/// along pairs `(x, y)` lying in one column of `pattern`.
///
/// A target that is not a cell of the pattern is a new variable appended to
/// the ring; every source mapped to it must lie in a single column.
pub fn substitute_columns(
    ideal: &MonomialIdeal,
    pattern: &SparsePattern,
    mapping: &[(&str, &str)],
) -> Result<MonomialIdeal> {
    let mut names: Vec<String> = ideal.ring().names().to_vec();
    let mut fresh_column: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut sources: Vec<&str> = Vec::new();
    for &(x, y) in mapping {
        if sources.contains(&x) {
            return Err(Error::DuplicateVariable(x.to_string()));
        }
        sources.push(x);
        let (_, cx) = pattern.position_of(x)?;
        match pattern.position_of(y) {
            Ok((_, cy)) if cy != cx => return Err(Error::CrossColumn(x.into(), y.into())),
            Ok(_) => {}
            Err(_) => match fresh_column.get(y) {
                Some(&(c, other)) if c != cx => {
                    return Err(Error::CrossColumn(other.into(), x.into()))
                }
                Some(_) => {}
                None => {
                    fresh_column.insert(y, (cx, x));
                    if !names.iter().any(|n| n == y) {
                        names.push(y.to_string());
                    }
                }
            },
        }
    }
    let ring = Ring::new(names, ideal.ring().field())?;
    let lifted = ideal.map_to_ring(&ring)?;
    let pairs = mapping
        .iter()
        .map(|&(x, y)| Ok((ring.var_index(x)?, ring.var_index(y)?)))
        .collect::<Result<Vec<_>>>()?;
    lifted.substitute(&pairs)
}

/// The ideal in `y_1, ..., y_n` with one generator `y_{c_1} ... y_{c_k}` per
/// nonvanishing maximal minor of the pattern on columns `c_1 < ... < c_k`.
pub fn squarefree_degree_k_ideal(p: &SparsePattern, field: Field) -> Result<MonomialIdeal> {
    let ring = Ring::new((1..=p.n()).map(|j| format!("y_{j}")), field)?;
    let pattern_ring = p.ring(field);
    let gens: Vec<Monomial> = minors(p, &pattern_ring)
        .into_iter()
        .filter(|m| !m.is_zero())
        .map(|m| {
            let mut exps = vec![0u16; p.n()];
            for c in m.columns {
                exps[c] = 1;
            }
            Monomial::from_exponents(exps)
        })
        .collect();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    MonomialIdeal::new(&ring, gens)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
        let ring = Ring::new(vars.iter().copied(), Field::default()).unwrap();
        MonomialIdeal::parse(&ring, &gens.join("\n")).unwrap()
    }

    fn shown(i: &MonomialIdeal) -> String {
        i.to_string()
    }

    #[test]
    fn generators_are_minimal_and_sorted() {
        let i = ideal(&["x", "y", "z"], &["y*z", "x*y*z", "x*y", "x*y"]);
        assert_eq!(shown(&i), "(x*y, y*z)");
        assert!(i.is_squarefree());
        assert!(i.contains(&Monomial::from_exponents(vec![1, 2, 0])));
        assert!(!i.contains(&Monomial::from_exponents(vec![1, 0, 1])));
    }

    #[test]
    fn parsing_rejects_non_monomials() {
        let ring = Ring::new(["x", "y"], Field::default()).unwrap();
        assert!(matches!(
            MonomialIdeal::parse(&ring, "x + y"),
            Err(Error::NotMonomial(_))
        ));
        let i = MonomialIdeal::parse(&ring, "# comment\n\n3*x^2\n").unwrap();
        assert_eq!(shown(&i), "(x^2)");
    }

    #[test]
    fn standalone_parsing_infers_the_ring() {
        let i = MonomialIdeal::parse_standalone("b*c\na*b\n", Field::default()).unwrap();
        assert_eq!(i.ring().names(), ["b", "c", "a"]);
        let j =
            MonomialIdeal::parse_standalone("vars: a b c\nb*c\na*b\n", Field::default()).unwrap();
        assert_eq!(j.ring().names(), ["a", "b", "c"]);
        assert_eq!(shown(&j), "(a*b, b*c)");
    }

    #[test]
    fn colon_examples() {
        let i = ideal(&["x", "y", "z"], &["x*y", "y*z"]);
        assert_eq!(shown(&i.colon_by_variable(0).unwrap()), "(y)");
        let free = ideal(&["x", "y", "z"], &["y*z"]);
        assert_eq!(free.colon_by_variable(0).unwrap(), free);
        let sq = ideal(&["x", "y"], &["x^2*y"]);
        assert_eq!(shown(&sq.colon_by_variable(0).unwrap()), "(x*y)");
    }

    #[test]
    fn killing_variables_keeps_avoiding_generators() {
        let i = ideal(&["x", "y", "z"], &["x*y", "y*z", "z^2"]);
        assert_eq!(shown(&i.kill_variables(&[1])), "(z^2)");
    }

    #[test]
    fn sparse3x4_squarefree_ideal() {
        let p = SparsePattern::parse("3 4 / 0 0 * 0 / 0 0 * * / * * 0 0").unwrap();
        let j = squarefree_degree_k_ideal(&p, Field::default()).unwrap();
        assert_eq!(shown(&j), "(y_1*y_3*y_4, y_2*y_3*y_4)");
        let g = squarefree_degree_k_ideal(&SparsePattern::generic(2, 4).unwrap(), Field::default())
            .unwrap();
        assert_eq!(g.len(), 6);
        let zero = SparsePattern::parse("2 3 / 0 0 0 / * * *").unwrap();
        assert!(matches!(
            squarefree_degree_k_ideal(&zero, Field::default()),
            Err(Error::ZeroIdeal)
        ));
    }

    #[test]
    fn column_substitution() {
        let p = SparsePattern::parse("2 3 x y z a b c").unwrap();
        let i = ideal(&["x", "y", "z", "a", "b", "c"], &["x*b", "x*c", "y*c"]);
        assert_eq!(substitute_columns(&i, &p, &[]).unwrap(), i);
        let collapsed = substitute_columns(
            &i,
            &p,
            &[
                ("x", "u"),
                ("a", "u"),
                ("y", "v"),
                ("b", "v"),
                ("z", "w"),
                ("c", "w"),
            ],
        )
        .unwrap();
        assert_eq!(shown(&collapsed), "(u*v, u*w, v*w)");
        let within = substitute_columns(&i, &p, &[("b", "y")]).unwrap();
        assert_eq!(shown(&within), "(x*y, x*c, y*c)");
        assert!(matches!(
            substitute_columns(&i, &p, &[("x", "b")]),
            Err(Error::CrossColumn(..))
        ));
        assert!(matches!(
            substitute_columns(&i, &p, &[("x", "u"), ("b", "u")]),
            Err(Error::CrossColumn(..))
        ));
    }
}
