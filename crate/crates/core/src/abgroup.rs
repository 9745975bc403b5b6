//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is stored canonically as a divisibility chain d1 | d2 | ... with
//! every di >= 2, plus a free rank. Equality of groups is equality of
//! canonical forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{smith_normal_form, IntMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::trivial()
        } else {
            FinAbGroup {
                invariant_factors: vec![BigInt::from(n)],
                free_rank: 0,
            }
        }
    }

    /// Canonicalize an arbitrary list of cyclic orders (>= 1) and free rank.
    /// Routing through a diagonal Smith form restores the divisibility chain.
    pub fn from_factors(factors: &[BigInt], free_rank: usize) -> Self {
        for f in factors {
            assert!(f > &BigInt::zero(), "cyclic orders must be positive");
        }
        let n = factors.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, f) in factors.iter().enumerate() {
            diag.set(i, i, f.clone());
        }
        let mut g = cokernel_structure(&diag);
        g.free_rank += free_rank;
        g
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Order when finite, `None` otherwise.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Number of elements killed by d in the torsion subgroup:
    /// the product over the invariant factors di of gcd(d, di).
    pub fn torsion_count(&self, d: &BigInt) -> BigInt {
        self.invariant_factors
            .iter()
            .map(|f| d.gcd(f))
            .product::<BigInt>()
            .max(BigInt::one())
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Structure of Z^m / (column span of M), where m is the number of rows.
pub fn cokernel_structure(m: &IntMatrix) -> FinAbGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let invariant_factors: Vec<BigInt> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    FinAbGroup {
        invariant_factors,
        free_rank: m.rows() - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_diag_1_5() {
        let m = IntMatrix::from_rows(&[&[1, 0], &[0, 5]]);
        let g = cokernel_structure(&m);
        assert_eq!(g, FinAbGroup::cyclic(5));
        assert_eq!(g.order(), Some(BigInt::from(5)));
    }

    #[test]
    fn cokernel_diag_2_2() {
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 2]]);
        let g = cokernel_structure(&m);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn cokernel_wide_matrix() {
        // Z^1 / (2Z + 0Z) = Z/2
        let m = IntMatrix::from_rows(&[&[2, 0]]);
        assert_eq!(cokernel_structure(&m), FinAbGroup::cyclic(2));
    }

    #[test]
    fn cokernel_free_part() {
        let m = IntMatrix::from_rows(&[&[2], &[0]]);
        let g = cokernel_structure(&m);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn canonical_form_reorders() {
        // Z/4 + Z/6 = Z/2 + Z/12
        let g = FinAbGroup::from_factors(&[BigInt::from(4), BigInt::from(6)], 0);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn ones_are_dropped() {
        let g = FinAbGroup::from_factors(&[BigInt::one(), BigInt::from(3)], 0);
        assert_eq!(g, FinAbGroup::cyclic(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(FinAbGroup::trivial().to_string(), "1");
        assert_eq!(FinAbGroup::cyclic(6).to_string(), "Z/6");
        let g = FinAbGroup::from_factors(&[BigInt::from(2), BigInt::from(4)], 1);
        assert_eq!(g.to_string(), "Z/2 x Z/4 x Z");
    }

    #[test]
    fn torsion_count_matches_structure() {
        let g = FinAbGroup::from_factors(&[BigInt::from(2), BigInt::from(12)], 0);
        assert_eq!(g.torsion_count(&BigInt::from(2)), BigInt::from(4));
        assert_eq!(g.torsion_count(&BigInt::from(3)), BigInt::from(3));
        assert_eq!(g.torsion_count(&BigInt::from(4)), BigInt::from(8));
    }
}
