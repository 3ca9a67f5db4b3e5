use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::ring::{Monomial, RingRef};

/// The prime ideal generated by the given variables.
pub fn prime_ideal(ring: &RingRef, vars: &[usize]) -> Result<MonomialIdeal> {
    MonomialIdeal::new(
        ring,
        vars.iter().map(|&v| Monomial::variable(ring.nvars(), v)),
    )
}

/// Intersection of two monomial ideals: pairwise lcms of generators.
pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let gens = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| x.lcm(y)));
    MonomialIdeal::new(a.ring(), gens.collect::<Vec<_>>())
}

fn covers(edges: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if out.iter().any(|c| c.iter().all(|v| chosen.contains(v))) {
        return;
    }
    let Some(edge) = edges.iter().find(|e| !e.iter().any(|v| chosen.contains(v))) else {
        let mut cover = chosen.clone();
        cover.sort_unstable();
        out.retain(|c| !cover.iter().all(|v| c.contains(v)));
        out.push(cover);
        return;
    };
    for &v in edge {
        chosen.push(v);
        covers(edges, chosen, out);
        chosen.pop();
    }
}

/// Minimal primes of a squarefree monomial ideal, as sorted variable sets:
/// the minimal vertex covers of the hypergraph of generator supports.
///
/// The result is checked by intersecting the primes back to `I`. The zero
/// ideal has the single prime `(0)`, written as the empty set; the unit
/// ideal has none.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let edges: Vec<Vec<usize>> = ideal
        .generators()
        .iter()
        .map(|g| g.support().collect())
        .collect();
    let mut out = Vec::new();
    if !edges.iter().any(Vec::is_empty) {
        covers(&edges, &mut Vec::new(), &mut out);
    }
    out.sort();
    let ring = ideal.ring();
    let mut meet = MonomialIdeal::new(ring, [Monomial::one(ring.nvars())])?;
    for p in &out {
        meet = intersect(&meet, &prime_ideal(ring, p)?)?;
    }
    if &meet != ideal {
        return Err(Error::Decomposition);
    }
    Ok(out)
}

/// Codimension of a squarefree monomial ideal: the least size of a minimal
/// prime.
pub fn codim(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    minimal_primes(ideal)?
        .iter()
        .map(Vec::len)
        .min()
        .ok_or(Error::UnitIdeal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::tests::ideal;

    fn named(i: &MonomialIdeal, primes: &[Vec<usize>]) -> Vec<Vec<String>> {
        primes
            .iter()
            .map(|p| p.iter().map(|&v| i.ring().name(v).to_string()).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        let xy = ideal(&["x", "y"], &["x*y"]);
        assert_eq!(named(&xy, &minimal_primes(&xy).unwrap()), [["x"], ["y"]]);
        let tri = ideal(&["x", "y", "z"], &["x*y", "y*z", "x*z"]);
        let p = minimal_primes(&tri).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|c| c.len() == 2));
        assert_eq!(codim(&tri).unwrap(), 2);
        assert_eq!(codim(&ideal(&["x"], &["x"])).unwrap(), 1);
    }

    #[test]
    fn lex_initial_ideal_of_two_by_three() {
        let names = ["x_1_1", "x_1_2", "x_1_3", "x_2_1", "x_2_2", "x_2_3"];
        let i = ideal(&names, &["x_1_1*x_2_2", "x_1_1*x_2_3", "x_1_2*x_2_3"]);
        let p = named(&i, &minimal_primes(&i).unwrap());
        assert_eq!(
            p,
            [["x_1_1", "x_1_2"], ["x_1_1", "x_2_3"], ["x_2_2", "x_2_3"]]
        );
        assert_eq!(codim(&i).unwrap(), 2);
    }

    #[test]
    fn degenerate_ideals() {
        let zero = ideal(&["x"], &[]);
        assert_eq!(minimal_primes(&zero).unwrap(), vec![Vec::<usize>::new()]);
        assert!(matches!(codim(&zero), Err(Error::ZeroIdeal)));
        let unit = ideal(&["x"], &["1"]);
        assert!(minimal_primes(&unit).unwrap().is_empty());
        assert!(matches!(
            minimal_primes(&ideal(&["x"], &["x^2"])),
            Err(Error::NotSquarefree)
        ));
    }
}
