//! Multivariate division, S-polynomials, Gröbner basis certification and
//! initial ideals of maximal minors.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::determinantal::{binomial, minors, SparsePattern};
use crate::error::{Error, Result};
use crate::monomial::{minimal_primes, MonomialIdeal};
use crate::ring::{Field, Monomial, Polynomial, TermOrder};

/// Result of dividing `f` by a list of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn check_divisors(divisors: &[Polynomial]) -> Result<()> {
    if divisors.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Multivariate division: `f = sum q_i g_i + r` where no term of `r` is
/// divisible by a lead monomial of the divisors. The first divisor whose
/// lead divides the current lead term is used.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: &TermOrder) -> Result<Division> {
    check_divisors(divisors)?;
    let ring = f.ring();
    let field = ring.field();
    let leads = divisors
        .iter()
        .map(|g| g.lead_term(order))
        .collect::<Result<Vec<_>>>()?;
    let mut quotients = vec![Polynomial::zero(ring); divisors.len()];
    let mut remainder = Polynomial::zero(ring);
    let mut p = f.clone();
    while !p.is_zero() {
        let (m, c) = p.lead_term(order)?;
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(i) => {
                let (lm, lc) = &leads[i];
                let factor = lm.quotient_of(&m).expect("lead divides");
                let coeff = field.mul(&c, &field.inv(lc)?);
                let step = Polynomial::monomial(ring, factor.clone(), coeff.clone());
                quotients[i] = &quotients[i] + &step;
                p = &p - &divisors[i].mul_monomial(&factor, &coeff);
            }
            None => {
                let term = Polynomial::monomial(ring, m, c);
                remainder = &remainder + &term;
                p = &p - &term;
            }
        }
    }
    Ok(Division {
        quotients,
        remainder,
    })
}

/// The remainder of [`divide`].
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &TermOrder,
) -> Result<Polynomial> {
    Ok(divide(f, divisors, order)?.remainder)
}

/// `(L / lt f) f - (L / lt g) g` with `L` the lcm of the lead monomials and
/// both leads scaled to coefficient one.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Result<Polynomial> {
    let ring = f.ring();
    let field = ring.field();
    let (mf, cf) = f.lead_term(order)?;
    let (mg, cg) = g.lead_term(order)?;
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(
        &mf.quotient_of(&l).expect("lead divides lcm"),
        &field.inv(&cf)?,
    );
    let b = g.mul_monomial(
        &mg.quotient_of(&l).expect("lead divides lcm"),
        &field.inv(&cg)?,
    );
    a.checked_sub(&b)
}

/// Outcome of [`is_groebner`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCheck {
    /// S-pairs reduced (pairs with coprime leads are skipped).
    pub pairs_checked: usize,
    /// The first pair whose S-polynomial has a nonzero normal form.
    pub witness: Option<(usize, usize, Polynomial)>,
}

impl GroebnerCheck {
    pub fn is_groebner(&self) -> bool {
        self.witness.is_none()
    }
}

/// Buchberger's criterion: every S-pair reduces to zero. Pairs with coprime
/// lead monomials are skipped, as their S-polynomials always do.
pub fn is_groebner(basis: &[Polynomial], order: &TermOrder) -> Result<GroebnerCheck> {
    check_divisors(basis)?;
    let leads = basis
        .iter()
        .map(|g| g.lead_monomial(order))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs_checked = 0;
    for (i, j) in (0..basis.len()).tuple_combinations() {
        if leads[i].gcd(&leads[j]).is_one() {
            continue;
        }
        pairs_checked += 1;
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = normal_form(&s, basis, order)?;
        if !r.is_zero() {
            return Ok(GroebnerCheck {
                pairs_checked,
                witness: Some((i, j, r)),
            });
        }
    }
    Ok(GroebnerCheck {
        pairs_checked,
        witness: None,
    })
}

/// Completes `generators` to a Gröbner basis by adding nonzero S-pair
/// remainders until every pair reduces to zero.
pub fn buchberger(generators: &[Polynomial], order: &TermOrder) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).tuple_combinations().collect();
    while let Some((i, j)) = pairs.pop() {
        let li = basis[i].lead_monomial(order)?;
        let lj = basis[j].lead_monomial(order)?;
        if li.gcd(&lj).is_one() {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = normal_form(&s, &basis, order)?;
        if !r.is_zero() {
            let new = basis.len();
            pairs.extend((0..new).map(|k| (k, new)));
            basis.push(r.monic(order)?);
        }
    }
    Ok(basis)
}

/// The nonzero maximal minors of `p` over `field`, in lex order of columns.
pub fn nonzero_minors(p: &SparsePattern, field: Field) -> Vec<Polynomial> {
    let ring = p.ring(field);
    minors(p, &ring)
        .into_iter()
        .filter(|m| !m.is_zero())
        .map(|m| m.value)
        .collect()
}

/// The ideal of lead monomials of the nonzero maximal minors of `p`.
///
/// The minors are certified to be a Gröbner basis for `order` first, and the
/// result is checked to be squarefree.
pub fn initial_ideal(p: &SparsePattern, order: &TermOrder, field: Field) -> Result<MonomialIdeal> {
    let ring = p.ring(field);
    order.validate(ring.nvars())?;
    let gens = nonzero_minors(p, field);
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let check = is_groebner(&gens, order)?;
    if let Some((i, j, _)) = check.witness {
        return Err(Error::NotGroebner(i, j));
    }
    let leads = gens
        .iter()
        .map(|g| g.lead_monomial(order))
        .collect::<Result<Vec<Monomial>>>()?;
    let ideal = MonomialIdeal::new(&ring, leads)?;
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(ideal)
}

/// Shape of the minimal primes of an initial ideal of maximal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeShape {
    pub components: usize,
    /// Every component has `n - k + 1` variables in pairwise distinct
    /// columns.
    pub sizes_and_columns_ok: bool,
    /// The column sets of the components are exactly the `(n - k + 1)`
    /// subsets of the columns, each once.
    pub one_per_column_subset: bool,
}

impl PrimeShape {
    pub fn holds(&self) -> bool {
        self.sizes_and_columns_ok && self.one_per_column_subset
    }
}

/// Checks the minimal primes of `ideal`, whose ring is the ring of `p`,
/// against the shape expected for an initial ideal of the generic `k x n`
/// maximal minors.
pub fn prime_shape(p: &SparsePattern, ideal: &MonomialIdeal) -> Result<PrimeShape> {
    let (k, n) = (p.k(), p.n());
    let c = n - k + 1;
    let primes = minimal_primes(ideal)?;
    let mut sizes_and_columns_ok = true;
    let mut column_sets = BTreeSet::new();
    for prime in &primes {
        let cols: BTreeSet<usize> = prime.iter().map(|&v| v % n).collect();
        if prime.len() != c || cols.len() != c {
            sizes_and_columns_ok = false;
        }
        column_sets.insert(cols.into_iter().collect::<Vec<_>>());
    }
    let one_per_column_subset = primes.len() == binomial(n, c) && column_sets.len() == primes.len();
    Ok(PrimeShape {
        components: primes.len(),
        sizes_and_columns_ok,
        one_per_column_subset,
    })
}
