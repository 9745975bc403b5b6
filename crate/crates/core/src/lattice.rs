//! Lattices in split analytic tori, Riemann forms, and component groups.
//!
//! A rank-g lattice is described by a g x g array of coarse units: column j
//! holds the torus coordinates of the j-th generator. The lattice condition
//! is that the valuation matrix is nonsingular, which is the tropicalization
//! criterion with ord in place of -log|.| (the two differ by the positive
//! factor log of the residue size, so injectivity and every integer
//! invariant are unchanged).
//!
//! A Riemann form assigns to each generator a character of the torus; the
//! form is admissible when its values are symmetric in the coarse unit group
//! and its valuation Gram matrix is positive definite. Positive definiteness
//! is decided exactly via leading principal minors. The component group of
//! the uniformized variety is the cokernel of the Gram matrix acting on the
//! lattice, i.e. of the map into the dual induced by the monodromy pairing.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::abgroup::{cokernel_structure, FinAbGroup};
use crate::error::{Error, Result};
use crate::field::{CoarseUnit, LocalFieldModel};
use crate::matrix::IntMatrix;

/// A lattice of full rank in a split torus, given by the coarse coordinates
/// of its generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicativeLattice {
    field: LocalFieldModel,
    rank: usize,
    /// Row-major g x g: entry (i, j) is the i-th torus coordinate of
    /// generator j.
    coords: Vec<CoarseUnit>,
}

impl MultiplicativeLattice {
    pub fn new(field: LocalFieldModel, rank: usize, coords: Vec<CoarseUnit>) -> Result<Self> {
        if coords.len() != rank * rank {
            return Err(Error::validation(
                "coords",
                format!("expected {} entries, got {}", rank * rank, coords.len()),
            ));
        }
        for (idx, u) in coords.iter().enumerate() {
            if u.t >= field.torsion_order() {
                return Err(Error::validation(
                    format!("coords[{}][{}].t", idx / rank, idx % rank),
                    format!(
                        "torsion exponent {} not reduced modulo w = {}",
                        u.t,
                        field.torsion_order()
                    ),
                ));
            }
        }
        let lattice = MultiplicativeLattice {
            field,
            rank,
            coords,
        };
        if lattice.valuation_matrix().det().is_zero() {
            return Err(Error::validation(
                "coords",
                "valuation matrix is singular: generators do not span a lattice",
            ));
        }
        Ok(lattice)
    }

    pub fn field(&self) -> &LocalFieldModel {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coord(&self, i: usize, j: usize) -> CoarseUnit {
        self.coords[i * self.rank + j]
    }

    /// Torus coordinates of generator j.
    pub fn generator(&self, j: usize) -> Vec<CoarseUnit> {
        (0..self.rank).map(|i| self.coord(i, j)).collect()
    }

    pub fn valuation_matrix(&self) -> IntMatrix {
        let g = self.rank;
        let mut m = IntMatrix::zeros(g, g);
        for i in 0..g {
            for j in 0..g {
                m.set(i, j, BigInt::from(self.coord(i, j).v));
            }
        }
        m
    }
}

/// Vector of valuations of a point of the torus.
pub fn trop_point(point: &[CoarseUnit]) -> Vec<i64> {
    point.iter().map(|u| u.v).collect()
}

/// Evaluate an integer character on a point of the torus (the product of
/// the coordinates raised to the character exponents).
pub fn eval_character(
    field: &LocalFieldModel,
    chi: &[BigInt],
    point: &[CoarseUnit],
) -> Result<CoarseUnit> {
    if chi.len() != point.len() {
        return Err(Error::validation(
            "character",
            format!("length mismatch: {} vs {}", chi.len(), point.len()),
        ));
    }
    let mut acc = field.identity();
    for (e, u) in chi.iter().zip(point) {
        let term = field.pow_big(*u, e)?;
        acc = field.mul(acc, term)?;
    }
    Ok(acc)
}

/// A homomorphism from the lattice to the character group of the torus,
/// stored column-wise: column j is the character attached to generator j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiemannForm {
    h: IntMatrix,
}

impl RiemannForm {
    pub fn new(h: IntMatrix) -> Self {
        assert!(h.is_square(), "form matrix must be square");
        RiemannForm { h }
    }

    pub fn identity(g: usize) -> Self {
        RiemannForm {
            h: IntMatrix::identity(g),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn character(&self, j: usize) -> Vec<BigInt> {
        self.h.column(j)
    }
}

/// A validated pair (lattice, Riemann form). Construction checks the
/// symmetry of the form's values and positive definiteness of the valuation
/// pairing; every query afterwards is pure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolarizedLattice {
    lattice: MultiplicativeLattice,
    form: RiemannForm,
    principal: bool,
    /// Cached pairing values [l_i, l_j] = H(l_j)(l_i).
    pairings: Vec<CoarseUnit>,
    /// Cached valuation Gram matrix of the pairing.
    gram: IntMatrix,
}

impl PolarizedLattice {
    pub fn new(lattice: MultiplicativeLattice, form: RiemannForm) -> Result<Self> {
        let g = lattice.rank();
        if form.matrix().rows() != g {
            return Err(Error::validation(
                "polarization",
                format!(
                    "form is {}x{} but lattice has rank {}",
                    form.matrix().rows(),
                    form.matrix().cols(),
                    g
                ),
            ));
        }
        let field = *lattice.field();
        // Pairing values [l_i, l_j] = H(l_j)(l_i); symmetry must hold in the
        // coarse unit group, torsion parts included.
        let mut pairings = vec![field.identity(); g * g];
        for i in 0..g {
            for j in 0..g {
                pairings[i * g + j] =
                    eval_character(&field, &form.character(j), &lattice.generator(i))?;
            }
        }
        for i in 0..g {
            for j in i + 1..g {
                if pairings[i * g + j] != pairings[j * g + i] {
                    return Err(Error::RiemannForm {
                        clause: "symmetry of values: H(l)(m) = H(m)(l)",
                        i,
                        j,
                        left: pairings[i * g + j],
                        right: pairings[j * g + i],
                    });
                }
            }
        }
        let mut gram = IntMatrix::zeros(g, g);
        for i in 0..g {
            for j in 0..g {
                gram.set(i, j, BigInt::from(pairings[i * g + j].v));
            }
        }
        for k in 1..=g {
            let minor = gram.leading_principal_minor(k);
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    clause: "positive definiteness of the valuation pairing",
                    k,
                    value: minor.to_string(),
                });
            }
        }
        let principal = form.matrix().det().abs() == BigInt::from(1);
        Ok(PolarizedLattice {
            lattice,
            form,
            principal,
            pairings,
            gram,
        })
    }

    pub fn lattice(&self) -> &MultiplicativeLattice {
        &self.lattice
    }

    pub fn form(&self) -> &RiemannForm {
        &self.form
    }

    pub fn field(&self) -> &LocalFieldModel {
        self.lattice.field()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    /// Pairing value [l_i, l_j] = H(l_j)(l_i), symmetric in (i, j).
    pub fn pairing(&self, i: usize, j: usize) -> CoarseUnit {
        self.pairings[i * self.rank() + j]
    }

    /// Valuation Gram matrix of the pairing: symmetric positive definite.
    /// Its cokernel on the lattice is the component group.
    pub fn monodromy_matrix(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn component_group(&self) -> FinAbGroup {
        cokernel_structure(&self.gram)
    }

    /// Pairing of two lattice elements given by integer coordinate vectors.
    pub fn pairing_of(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        let g = self.rank();
        assert!(a.len() == g && b.len() == g);
        let mut acc = BigInt::from(0);
        for i in 0..g {
            for j in 0..g {
                acc += &a[i] * &b[j] * self.gram.at(i, j);
            }
        }
        acc
    }

    /// Coarse value of the pairing [a-combination, b-combination].
    pub fn pairing_unit_of(&self, a: &[BigInt], b: &[BigInt]) -> Result<CoarseUnit> {
        let g = self.rank();
        let field = self.field();
        let mut acc = field.identity();
        for i in 0..g {
            for j in 0..g {
                let e = &a[i] * &b[j];
                acc = field.mul(acc, field.pow_big(self.pairing(i, j), &e)?)?;
            }
        }
        Ok(acc)
    }

    /// The same lattice viewed over an unramified extension whose root-of-
    /// unity group is k times larger: torsion exponents embed by scaling.
    /// Component groups and quotient invariants are unchanged by this.
    pub fn embed_unramified(&self, k: u64) -> Result<PolarizedLattice> {
        assert!(k >= 1);
        let old = self.field();
        let field = LocalFieldModel::new(
            old.residue_char(),
            old.residue_size(),
            old.torsion_order() * k,
        )?;
        let coords = self
            .lattice
            .coords
            .iter()
            .map(|u| CoarseUnit { v: u.v, t: u.t * k })
            .collect();
        let lattice = MultiplicativeLattice::new(field, self.rank(), coords)?;
        PolarizedLattice::new(lattice, self.form.clone())
    }

    /// Re-express all torsion exponents after replacing the fixed generator
    /// of the roots of unity: t -> u*t with u invertible mod w. Invariants
    /// are stable under this automorphism.
    pub fn change_torsion_generator(&self, u: u64) -> Result<PolarizedLattice> {
        let w = self.field().torsion_order();
        if num_integer::gcd(u, w) != 1 {
            return Err(Error::validation(
                "generator",
                format!("{u} is not invertible modulo {w}"),
            ));
        }
        let coords = self
            .lattice
            .coords
            .iter()
            .map(|c| CoarseUnit {
                v: c.v,
                t: ((c.t as u128 * u as u128) % w as u128) as u64,
            })
            .collect();
        let lattice = MultiplicativeLattice::new(*self.field(), self.rank(), coords)?;
        PolarizedLattice::new(lattice, self.form.clone())
    }
}

/// Random valid instance for property testing: a symmetric coarse matrix
/// with positive definite valuation part, used as the coordinates, with the
/// identity form. This always satisfies the Riemann form condition.
///
/// Two flavours are produced: generic symmetric valuations (via L * L^T),
/// and lattices with purely torsion off-diagonal entries, the shape arising
/// from gluing constructions.
pub fn random_polarized_lattice<R: Rng>(
    rng: &mut R,
    field: &LocalFieldModel,
    rank: usize,
) -> PolarizedLattice {
    let g = rank;
    let w = field.torsion_order();
    let glued_shape = rng.gen_bool(0.5);
    let mut coords = vec![field.identity(); g * g];
    if glued_shape {
        for i in 0..g {
            for j in 0..g {
                if i == j {
                    coords[i * g + j] = CoarseUnit {
                        v: rng.gen_range(1..=4),
                        t: rng.gen_range(0..w),
                    };
                } else if i < j {
                    let u = CoarseUnit {
                        v: 0,
                        t: rng.gen_range(0..w),
                    };
                    coords[i * g + j] = u;
                    coords[j * g + i] = u;
                }
            }
        }
    } else {
        // L lower triangular with positive diagonal; V = L * L^T is positive
        // definite and symmetric.
        let mut l = IntMatrix::zeros(g, g);
        for i in 0..g {
            for j in 0..=i {
                let e = if i == j {
                    rng.gen_range(1..=3)
                } else {
                    rng.gen_range(-2..=2)
                };
                l.set(i, j, BigInt::from(e));
            }
        }
        let v = l.mul(&l.transpose());
        for i in 0..g {
            for j in 0..g {
                let t = if i <= j {
                    rng.gen_range(0..w)
                } else {
                    coords[j * g + i].t
                };
                coords[i * g + j] = CoarseUnit {
                    v: v.at(i, j).to_i64().unwrap(),
                    t,
                };
            }
        }
    }
    let lattice = MultiplicativeLattice::new(*field, g, coords)
        .expect("generated valuation matrix is nonsingular");
    PolarizedLattice::new(lattice, RiemannForm::identity(g))
        .expect("generated instance satisfies the Riemann form condition by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn model_w4() -> LocalFieldModel {
        LocalFieldModel::new(5, 5, 4).unwrap()
    }

    /// The glued rank-2 lattice with generators (q1, z) and (z, q2),
    /// z a primitive c-th root of unity, identity form.
    fn glued(a: i64, b: i64, c: u64, w: u64) -> PolarizedLattice {
        let field = LocalFieldModel::new(5, 5, w).unwrap();
        let zeta = field.unit(0, (w / c) as i64);
        let q1 = field.unit(a, 0);
        let q2 = field.unit(b, 0);
        let coords = vec![q1, zeta, zeta, q2];
        let lattice = MultiplicativeLattice::new(field, 2, coords).unwrap();
        PolarizedLattice::new(lattice, RiemannForm::identity(2)).unwrap()
    }

    #[test]
    fn eval_character_projections() {
        let field = model_w4();
        let point = vec![field.unit(1, 0), field.unit(0, 2)];
        let chi1 = vec![BigInt::one(), BigInt::from(0)];
        assert_eq!(
            eval_character(&field, &chi1, &point).unwrap(),
            field.unit(1, 0)
        );
        let chi2 = vec![BigInt::from(0), BigInt::one()];
        assert_eq!(
            eval_character(&field, &chi2, &point).unwrap(),
            field.unit(0, 2)
        );
        let chi3 = vec![BigInt::from(2), BigInt::from(2)];
        assert_eq!(
            eval_character(&field, &chi3, &point).unwrap(),
            field.unit(2, 0)
        );
    }

    #[test]
    fn eval_character_length_mismatch() {
        let field = model_w4();
        let point = vec![field.unit(1, 0)];
        let chi = vec![BigInt::one(), BigInt::one()];
        assert!(eval_character(&field, &chi, &point).is_err());
    }

    #[test]
    fn glued_lattice_pairings() {
        let p = glued(1, 1, 2, 4);
        assert_eq!(p.pairing(0, 0), p.field().unit(1, 0)); // q1
        assert_eq!(p.pairing(0, 1), p.field().unit(0, 2)); // zeta
        assert_eq!(p.pairing(1, 0), p.field().unit(0, 2));
        assert_eq!(p.pairing(1, 1), p.field().unit(1, 0)); // q2
        assert!(p.is_principal());
    }

    #[test]
    fn rank_one_tate_lattice() {
        let field = model_w4();
        let lattice = MultiplicativeLattice::new(field, 1, vec![field.unit(5, 0)]).unwrap();
        let p = PolarizedLattice::new(lattice, RiemannForm::identity(1)).unwrap();
        assert_eq!(p.pairing(0, 0), field.unit(5, 0));
        assert_eq!(p.monodromy_matrix().at(0, 0), &BigInt::from(5));
        assert_eq!(p.component_group(), FinAbGroup::cyclic(5));
    }

    #[test]
    fn component_groups_of_glued_family() {
        assert!(glued(1, 1, 2, 4).component_group().is_trivial());
        assert_eq!(
            glued(2, 3, 3, 6).component_group(),
            FinAbGroup::cyclic(6)
        );
    }

    #[test]
    fn monodromy_is_diagonal_for_glued() {
        let p = glued(2, 3, 3, 6);
        let m = p.monodromy_matrix();
        assert_eq!(m.at(0, 0), &BigInt::from(2));
        assert_eq!(m.at(1, 1), &BigInt::from(3));
        assert_eq!(m.at(0, 1), &BigInt::from(0));
    }

    #[test]
    fn asymmetric_torsion_is_rejected() {
        let field = model_w4();
        // Coordinates differ at symmetric positions in torsion only.
        let coords = vec![
            field.unit(1, 0),
            field.unit(0, 1),
            field.unit(0, 2),
            field.unit(1, 0),
        ];
        let lattice = MultiplicativeLattice::new(field, 2, coords).unwrap();
        let err = PolarizedLattice::new(lattice, RiemannForm::identity(2)).unwrap_err();
        match err {
            Error::RiemannForm { clause, .. } => assert!(clause.contains("symmetry")),
            other => panic!("expected symmetry violation, got {other}"),
        }
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        let field = model_w4();
        let coords = vec![
            field.unit(-1, 0),
            field.unit(0, 0),
            field.unit(0, 0),
            field.unit(1, 0),
        ];
        let lattice = MultiplicativeLattice::new(field, 2, coords).unwrap();
        let err = PolarizedLattice::new(lattice, RiemannForm::identity(2)).unwrap_err();
        match err {
            Error::NotPositiveDefinite { k, .. } => assert_eq!(k, 1),
            other => panic!("expected definiteness violation, got {other}"),
        }
    }

    #[test]
    fn singular_valuations_are_rejected() {
        let field = model_w4();
        let coords = vec![
            field.unit(1, 0),
            field.unit(1, 0),
            field.unit(1, 0),
            field.unit(1, 0),
        ];
        assert!(MultiplicativeLattice::new(field, 2, coords).is_err());
    }

    #[test]
    fn trop_of_points() {
        let field = model_w4();
        assert_eq!(trop_point(&[field.unit(1, 0), field.unit(0, 2)]), vec![1, 0]);
        assert_eq!(trop_point(&[field.identity(), field.identity()]), vec![0, 0]);
        assert_eq!(trop_point(&[field.unit(2, 1), field.unit(3, 0)]), vec![2, 3]);
    }

    #[test]
    fn component_group_order_is_det() {
        let mut rng = rand::rngs::mock::StepRng::new(42, 0x9E3779B97F4A7C15);
        let field = LocalFieldModel::new(3, 3, 8).unwrap();
        for g in 1..=3 {
            let p = random_polarized_lattice(&mut rng, &field, g);
            let det = p.monodromy_matrix().det().abs();
            assert_eq!(p.component_group().order(), Some(det));
        }
    }

    #[test]
    fn unramified_embedding_preserves_component_group() {
        let p = glued(2, 3, 3, 6);
        let q = p.embed_unramified(4).unwrap();
        assert_eq!(p.component_group(), q.component_group());
        assert_eq!(q.field().torsion_order(), 24);
    }
}
