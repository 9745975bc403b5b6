//! Exact bivariate polynomials over the integers, in the variable x and a
//! formal parameter. Terms are kept in a sorted map, so the representation
//! is canonical and equality is structural.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial in Z[x, t] with exponents indexed as (x-degree, t-degree).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        IntPoly2 { terms }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable x.
    pub fn x() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    /// The formal parameter.
    pub fn param() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn monomial(x_deg: u32, t_deg: u32, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((x_deg, t_deg), coeff);
        }
        IntPoly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &IntPoly2) -> IntPoly2 {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(BigInt::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        IntPoly2 { terms }
    }

    pub fn neg(&self) -> IntPoly2 {
        IntPoly2 {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly2) -> IntPoly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly2) -> IntPoly2 {
        let mut terms: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((xa, ta), ca) in &self.terms {
            for ((xb, tb), cb) in &other.terms {
                let key = (xa + xb, ta + tb);
                let entry = terms.entry(key).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        IntPoly2 { terms }
    }

    pub fn pow(&self, n: u32) -> IntPoly2 {
        let mut acc = IntPoly2::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluation homomorphism into the rationals.
    pub fn eval(&self, x: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for ((xd, td), c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for _ in 0..*xd {
                term *= x;
            }
            for _ in 0..*td {
                term *= t;
            }
            acc += term;
        }
        acc
    }
}

impl std::fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((xd, td), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if *xd > 0 {
                write!(f, "*x^{xd}")?;
            }
            if *td > 0 {
                write!(f, "*t^{td}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_canonical_form() {
        let x = IntPoly2::x();
        let t = IntPoly2::param();
        let a = x.add(&t);
        let b = x.sub(&t);
        // (x + t)(x - t) = x^2 - t^2
        let prod = a.mul(&b);
        let expect = x.pow(2).sub(&t.pow(2));
        assert_eq!(prod, expect);
        // Cancellation prunes terms.
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_commutes_with_arithmetic() {
        let x = IntPoly2::x();
        let t = IntPoly2::param();
        let p = x.pow(2).mul(&t).add(&IntPoly2::constant(7));
        let q = t.pow(3).sub(&x);
        let xv = BigRational::new(BigInt::from(3), BigInt::from(2));
        let tv = BigRational::from(BigInt::from(-5));
        assert_eq!(
            p.mul(&q).eval(&xv, &tv),
            p.eval(&xv, &tv) * q.eval(&xv, &tv)
        );
        assert_eq!(
            p.add(&q).eval(&xv, &tv),
            p.eval(&xv, &tv) + q.eval(&xv, &tv)
        );
    }
}
