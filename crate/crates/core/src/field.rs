//! A coarse model of the multiplicative group of a local field.
//!
//! The model keeps exactly two pieces of data about a unit: its valuation
//! and the exponent of its root-of-unity part relative to a fixed generator
//! of the finite group of roots of unity. The principal-unit part is
//! deliberately discarded: every invariant computed by this crate (component
//! groups, saturation indices, pairing values, congruence numbers) depends
//! only on valuations and root-of-unity parts, so equality of coarse units
//! is *defined* as equality in the model.
//!
//! The torsion order w is supplied by the caller (for the p-adics with p
//! odd, w = q - 1 where q is the residue size; likewise for Laurent series
//! fields); the library never derives it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue characteristic, residue size, and order of the group of roots
/// of unity of the modeled field.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LocalFieldModel {
    residue_char: u64,
    residue_size: u64,
    torsion_order: u64,
}

/// An element of the coarse unit group: valuation plus torsion exponent,
/// with the exponent reduced into [0, w). Multiplication is componentwise
/// addition; the identity is (0, 0).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoarseUnit {
    pub v: i64,
    pub t: u64,
}

impl std::fmt::Display for CoarseUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(v={}, t={})", self.v, self.t)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl LocalFieldModel {
    pub fn new(residue_char: u64, residue_size: u64, torsion_order: u64) -> Result<Self> {
        if !is_prime(residue_char) {
            return Err(Error::validation(
                "field.p",
                format!("{residue_char} is not prime"),
            ));
        }
        let mut q = residue_size;
        if q == 0 {
            return Err(Error::validation("field.q", "residue size must be positive"));
        }
        while q % residue_char == 0 {
            q /= residue_char;
        }
        if q != 1 {
            return Err(Error::validation(
                "field.q",
                format!("{residue_size} is not a power of {residue_char}"),
            ));
        }
        if torsion_order == 0 {
            return Err(Error::validation("field.w", "torsion order must be >= 1"));
        }
        Ok(LocalFieldModel {
            residue_char,
            residue_size,
            torsion_order,
        })
    }

    pub fn residue_char(&self) -> u64 {
        self.residue_char
    }

    pub fn residue_size(&self) -> u64 {
        self.residue_size
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion_order
    }

    /// Build a unit, reducing the torsion exponent into [0, w).
    pub fn unit(&self, v: i64, t: i64) -> CoarseUnit {
        let w = self.torsion_order as i64;
        CoarseUnit {
            v,
            t: t.rem_euclid(w) as u64,
        }
    }

    pub fn identity(&self) -> CoarseUnit {
        CoarseUnit { v: 0, t: 0 }
    }

    pub fn mul(&self, a: CoarseUnit, b: CoarseUnit) -> Result<CoarseUnit> {
        let v = a.v.checked_add(b.v).ok_or(Error::Overflow)?;
        Ok(CoarseUnit {
            v,
            t: (a.t + b.t) % self.torsion_order,
        })
    }

    pub fn inv(&self, a: CoarseUnit) -> CoarseUnit {
        let w = self.torsion_order;
        CoarseUnit {
            v: -a.v,
            t: if a.t == 0 { 0 } else { w - a.t },
        }
    }

    pub fn pow(&self, a: CoarseUnit, n: i64) -> Result<CoarseUnit> {
        let v = a.v.checked_mul(n).ok_or(Error::Overflow)?;
        let w = self.torsion_order as i128;
        let t = ((a.t as i128 * n as i128).rem_euclid(w)) as u64;
        Ok(CoarseUnit { v, t })
    }

    /// Power with an arbitrary-precision exponent. The result must still fit
    /// the machine-sized valuation; overflow is reported, never wrapped.
    pub fn pow_big(&self, a: CoarseUnit, n: &BigInt) -> Result<CoarseUnit> {
        let w = BigInt::from(self.torsion_order);
        let v_big = BigInt::from(a.v) * n;
        let v = v_big.to_i64().ok_or(Error::Overflow)?;
        let t = (BigInt::from(a.t) * n).mod_floor(&w).to_u64().unwrap();
        Ok(CoarseUnit { v, t })
    }

    /// All c-th roots of x in the coarse model. Empty unless c divides the
    /// valuation and the torsion congruence c*t' = t (mod w) is solvable;
    /// when solvable there are exactly gcd(c, w) roots.
    pub fn cth_roots(&self, x: CoarseUnit, c: u64) -> Vec<CoarseUnit> {
        assert!(c >= 1);
        let c_i = c as i64;
        if x.v % c_i != 0 {
            return Vec::new();
        }
        let v = x.v / c_i;
        let w = self.torsion_order;
        let g = c.gcd(&w);
        if x.t % g != 0 {
            return Vec::new();
        }
        // Solve c*t' = t (mod w): divide through by g, invert c/g mod w/g.
        let c1 = c / g;
        let w1 = w / g;
        let t1 = (x.t / g) % w1.max(1);
        let t0 = if w1 == 1 {
            0
        } else {
            let inv = mod_inverse(c1 % w1, w1).expect("c/g is invertible mod w/g");
            (t1 * inv) % w1
        };
        (0..g)
            .map(|k| CoarseUnit {
                v,
                t: (t0 + k * w1) % w,
            })
            .collect()
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of a nonzero rational number.
pub fn ord_of_rational(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0;
        n = n.abs();
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    Ok(count(x.numer().clone()) - count(x.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn model_w4() -> LocalFieldModel {
        LocalFieldModel::new(5, 5, 4).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LocalFieldModel::new(6, 6, 4).is_err());
        assert!(LocalFieldModel::new(5, 10, 4).is_err());
        assert!(LocalFieldModel::new(5, 5, 0).is_err());
        assert!(LocalFieldModel::new(3, 27, 26).is_ok());
    }

    #[test]
    fn group_law() {
        let m = model_w4();
        let a = m.unit(1, 0);
        let b = m.unit(0, 2);
        assert_eq!(m.mul(a, b).unwrap(), m.unit(1, 2));
        let c = m.unit(2, 3);
        assert_eq!(m.pow(c, 2).unwrap(), m.unit(4, 2));
        let d = m.unit(1, 1);
        assert_eq!(m.pow(d, -1).unwrap(), m.unit(-1, 3));
        assert_eq!(m.mul(d, m.inv(d)).unwrap(), m.identity());
    }

    #[test]
    fn square_roots_with_torsion() {
        let m = model_w4();
        let roots = m.cth_roots(m.unit(4, 0), 2);
        assert_eq!(roots, vec![m.unit(2, 0), m.unit(2, 2)]);
        for r in roots {
            assert_eq!(m.pow(r, 2).unwrap(), m.unit(4, 0));
        }
    }

    #[test]
    fn odd_valuation_has_no_square_root() {
        let m = model_w4();
        assert!(m.cth_roots(m.unit(3, 0), 2).is_empty());
    }

    #[test]
    fn cube_roots_of_unity() {
        let m = LocalFieldModel::new(7, 7, 6).unwrap();
        let roots = m.cth_roots(m.identity(), 3);
        let ts: Vec<u64> = roots.iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0, 2, 4]);
        assert!(roots.iter().all(|r| r.v == 0));
    }

    #[test]
    fn root_count_is_gcd() {
        let m = LocalFieldModel::new(5, 5, 12).unwrap();
        assert_eq!(m.cth_roots(m.unit(0, 0), 4).len(), 4);
        assert_eq!(m.cth_roots(m.unit(0, 3), 4).len(), 0); // 4t = 3 mod 12 unsolvable
        assert_eq!(m.cth_roots(m.unit(0, 4), 4).len(), 4); // t in {1,4,7,10}
    }

    #[test]
    fn valuation_of_j_invariant_style_rational() {
        // 256 * 31^3 / 900 has 5-adic valuation -2.
        let x = BigRational::new(BigInt::from(256) * BigInt::from(31).pow(3), BigInt::from(900));
        assert_eq!(ord_of_rational(&x, 5).unwrap(), -2);
        let y = BigRational::new(BigInt::from(9), BigInt::from(2));
        assert_eq!(ord_of_rational(&y, 3).unwrap(), 2);
        assert_eq!(ord_of_rational(&BigRational::one(), 2).unwrap(), 0);
        assert!(matches!(
            ord_of_rational(&BigRational::zero(), 3),
            Err(Error::ValuationOfZero)
        ));
    }

    #[test]
    fn valuation_is_additive() {
        let a = BigRational::new(BigInt::from(50), BigInt::from(3));
        let b = BigRational::new(BigInt::from(12), BigInt::from(25));
        let va = ord_of_rational(&a, 5).unwrap();
        let vb = ord_of_rational(&b, 5).unwrap();
        let vab = ord_of_rational(&(a * b), 5).unwrap();
        assert_eq!(vab, va + vb);
    }
}
