//! Sparse chains over an arbitrary coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::scalar::Coefficient;

/// A formal combination of canonically oriented `p`-simplices.
///
/// Zero coefficients are never stored, so two chains are equal exactly when
/// they are equal as group elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<R> {
    dim: usize,
    terms: BTreeMap<Simplex, R>,
}

impl<R: Coefficient> Chain<R> {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Simplex, R)>) -> Result<Self> {
        let mut c = Chain::zero(dim);
        for (s, r) in terms {
            c.add_term(s, r)?;
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `coeff · s`; the simplex must have the chain's dimension.
    pub fn add_term(&mut self, s: Simplex, coeff: R) -> Result<()> {
        if s.dim() != self.dim {
            return invalid(format!(
                "{s} has dimension {}, chain has dimension {}",
                s.dim(),
                self.dim
            ));
        }
        self.add_unchecked(s, coeff);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, s: Simplex, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(s.clone()).or_insert_with(R::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn coefficient(&self, s: &Simplex) -> R {
        self.terms.get(s).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &R)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The boundary chain; the boundary of a 0-chain is the zero 0-chain.
    pub fn boundary(&self) -> Chain<R> {
        if self.dim == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(self.dim - 1);
        for (s, r) in &self.terms {
            for (f, sign) in s.boundary() {
                out.add_unchecked(f, r.clone() * R::from_int(sign));
            }
        }
        out
    }

    pub fn scale(&self, k: &R) -> Chain<R> {
        let mut out = Chain::zero(self.dim);
        for (s, r) in &self.terms {
            out.add_unchecked(s.clone(), r.clone() * k.clone());
        }
        out
    }

    pub fn add(&self, other: &Chain<R>) -> Result<Chain<R>> {
        if self.dim != other.dim {
            return invalid("adding chains of different dimensions");
        }
        let mut out = self.clone();
        for (s, r) in &other.terms {
            out.add_unchecked(s.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain<R>) -> Result<Chain<R>> {
        self.add(&other.scale(&-R::one()))
    }

    /// Changes the coefficient ring.
    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Chain<S> {
        let mut out = Chain::zero(self.dim);
        for (s, r) in &self.terms {
            out.add_unchecked(s.clone(), f(r));
        }
        out
    }

    /// Fails unless every simplex of the chain belongs to `complex`.
    pub fn check_supported(&self, complex: &SimplicialComplex) -> Result<()> {
        match self.terms.keys().find(|s| !complex.contains(s)) {
            Some(s) => invalid(format!("chain mentions {s}, which is not in the complex")),
            None => Ok(()),
        }
    }

    /// Dense coefficient vector over the given simplex order.
    pub fn to_dense(&self, order: &[Simplex]) -> Vec<R> {
        order.iter().map(|s| self.coefficient(s)).collect()
    }

    pub fn from_dense(dim: usize, order: &[Simplex], values: &[R]) -> Chain<R> {
        let mut out = Chain::zero(dim);
        for (s, r) in order.iter().zip(values) {
            out.add_unchecked(s.clone(), r.clone());
        }
        out
    }
}

impl<R: Coefficient> fmt::Debug for Chain<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r}·{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let c: Chain<BigInt> = Chain::from_terms(3, [(s(&[1, 2, 3, 4]), BigInt::from(3))]).unwrap();
        assert!(c.boundary().boundary().is_zero());
        let c2 = c.boundary();
        assert_eq!(c2.len(), 4);
        assert_eq!(c2.coefficient(&s(&[1, 2, 4])), BigInt::from(3));
        assert_eq!(c2.coefficient(&s(&[1, 2, 3])), BigInt::from(-3));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut c: Chain<i64> = Chain::zero(1);
        c.add_term(s(&[1, 2]), 2).unwrap();
        c.add_term(s(&[1, 2]), -2).unwrap();
        assert!(c.is_zero());
        assert!(c.add_term(s(&[1]), 1).is_err());
    }
}
