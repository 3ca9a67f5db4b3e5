use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::field::Scalar;
use super::monomial::Monomial;
use super::order::TermOrder;
use super::RingRef;
use crate::error::{Error, Result};

/// A polynomial with canonical terms: no zero coefficients, coefficients
/// normalized for the ring's field.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn from_i64(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn variable(ring: &RingRef, var: usize) -> Self {
        Self::monomial(
            ring,
            Monomial::variable(ring.nvars(), var),
            ring.field().one(),
        )
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Self::variable(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let field = ring.field();
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(
                m.nvars(),
                ring.nvars(),
                "monomial length does not match ring"
            );
            let c = field.normalize(c);
            let entry = out.entry(m).or_insert_with(Scalar::zero);
            *entry = field.add(entry, &c);
        }
        out.retain(|_, c| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order of monomials.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    /// The single term if this polynomial is a monomial times a scalar.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// If the polynomial is `c * x_v`, returns `(v, c)`.
    pub fn as_scaled_variable(&self) -> Option<(usize, &Scalar)> {
        let (m, c) = self.as_term()?;
        if m.degree() != 1 {
            return None;
        }
        let v = m.support().next()?;
        Some((v, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for v in m.support() {
                seen[v] = true;
            }
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = field.add(v, c);
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                let e = terms.entry(m).or_insert_with(Scalar::zero);
                *e = field.add(e, &c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    fn neg_ref(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = self.ring.field();
        let c = field.normalize(c.clone());
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), field.mul(v, &c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let field = self.ring.field();
        let c = field.normalize(c.clone());
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.mul(m), field.mul(v, &c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces a variable by a polynomial.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_ring(value)?;
        let mut out = Polynomial::zero(&self.ring);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.with_exponent(var, 0);
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Sets every variable in `vars` to zero.
    pub fn kill_variables(&self, vars: &[usize]) -> Polynomial {
        if vars.is_empty() {
            return self.clone();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exponent(v) == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The order-maximal term.
    pub fn lead_term(&self, order: &TermOrder) -> Result<(Monomial, Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn lead_monomial(&self, order: &TermOrder) -> Result<Monomial> {
        self.lead_term(order).map(|(m, _)| m)
    }

    /// Scales so that the lead coefficient is one.
    pub fn monic(&self, order: &TermOrder) -> Result<Polynomial> {
        let (_, c) = self.lead_term(order)?;
        let inv = self.ring.field().inv(&c)?;
        Ok(self.scale(&inv))
    }

    /// Sum of the terms of maximal weight.
    pub fn initial_form(&self, weights: &[i64]) -> Polynomial {
        let Some(top) = self.terms.keys().map(|m| m.weight(weights)).max() else {
            return self.clone();
        };
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(weights) == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the polynomial in `target`, whose variables are looked up by
    /// name. Fails if a variable occurring in `self` is absent from `target`.
    pub fn map_to_ring(&self, target: &RingRef) -> Result<Polynomial> {
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.names() {
            idx.push(target.var_index(name).ok());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.nvars()];
            for v in m.support() {
                match idx[v] {
                    Some(t) => e[t] = m.exponent(v),
                    None => return Err(Error::UnknownVariable(self.ring.name(v).to_string())),
                }
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        if target.field() != self.ring.field() && self.ring.field() != super::Field::Rational {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Evaluates `var` at 1 (dehomogenization).
    pub fn set_variable_one(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exponent(var, 0), c.clone())),
        )
    }

    /// Weight homogenization into `target`, which must be this ring with one
    /// extra variable (the homogenizer `t`) appended. Every term is padded with
    /// `t` up to the maximal weight, so the top-weight terms carry `t^0`.
    pub fn weight_homogenize(&self, weights: &[i64], target: &RingRef) -> Result<Polynomial> {
        let top = self
            .terms
            .keys()
            .map(|m| m.weight(weights))
            .max()
            .unwrap_or(0);
        self.homogenize_to(weights, target, top)
    }

    /// Like [`Polynomial::weight_homogenize`] but pads every term to `degree`.
    pub fn homogenize_to(
        &self,
        weights: &[i64],
        target: &RingRef,
        degree: i64,
    ) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if weights.len() != n {
            return Err(Error::Weights(format!(
                "{} weights for {} variables",
                weights.len(),
                n
            )));
        }
        if target.nvars() != n + 1 || target.names()[..n] != self.ring.names()[..] {
            return Err(Error::RingMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let gap = degree - m.weight(weights);
            if gap < 0 {
                return Err(Error::Weights(format!(
                    "term of weight {} exceeds target degree {degree}",
                    m.weight(weights)
                )));
            }
            let gap =
                u16::try_from(gap).map_err(|_| Error::Weights("degree gap too large".into()))?;
            terms.push((m.extended(1).with_exponent(n, gap), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// True when every term has the same weighted degree.
    pub fn is_weighted_homogeneous(&self, weights: &[i64]) -> bool {
        let mut it = self.terms.keys().map(|m| m.weight(weights));
        match it.next() {
            None => true,
            Some(w) => it.all(|x| x == w),
        }
    }
}

impl<'a> Add for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}
