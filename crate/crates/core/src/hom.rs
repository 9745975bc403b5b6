//! Morphisms of uniformized abelian varieties as matrix pairs, Rosati
//! adjoints, and induced maps on component groups.
//!
//! With principal polarizations used as identifications, a morphism is a
//! pair (phi, phi_dual) of integer matrices satisfying the exact
//! compatibility [phi(l), m] = [l, phi_dual(m)] for all generators, checked
//! in the coarse unit group, torsion parts included. The valuation-level
//! consequence phi^T * M2 = M1 * phi_dual is asserted rather than assumed.
//!
//! Component maps are kept as presentations: the two Gram matrices plus the
//! matrix acting on the dual side. Their cokernels are computed through the
//! integer-matrix algebra, never through element tables.



use crate::abgroup::{cokernel_structure, FinAbGroup};
use crate::error::{Error, Result};
use crate::lattice::PolarizedLattice;
use crate::matrix::{solve_integral, IntMatrix};

/// A homomorphism between uniformized varieties, as a compatible pair of
/// lattice maps.
#[derive(Clone, Debug)]
pub struct ToricHom {
    source: PolarizedLattice,
    target: PolarizedLattice,
    /// Matrix of the map on lattices (target rank x source rank).
    phi: IntMatrix,
    /// Matrix of the dual map (source rank x target rank).
    phi_dual: IntMatrix,
}

impl ToricHom {
    /// Validate and build. Both polarizations must be principal. On
    /// compatibility failure the error reports the first violated generator
    /// pair together with both coarse values and the total count.
    pub fn new(
        source: PolarizedLattice,
        target: PolarizedLattice,
        phi: IntMatrix,
        phi_dual: IntMatrix,
    ) -> Result<Self> {
        let g1 = source.rank();
        let g2 = target.rank();
        if source.field() != target.field() {
            return Err(Error::ModelMismatch);
        }
        if !source.is_principal() || !target.is_principal() {
            return Err(Error::validation(
                "polarization",
                "both polarizations must be principal to identify lattices with their duals",
            ));
        }
        if phi.rows() != g2 || phi.cols() != g1 || phi_dual.rows() != g1 || phi_dual.cols() != g2 {
            return Err(Error::validation(
                "shapes",
                format!(
                    "phi must be {g2}x{g1} and phi_dual {g1}x{g2}, got {}x{} and {}x{}",
                    phi.rows(),
                    phi.cols(),
                    phi_dual.rows(),
                    phi_dual.cols()
                ),
            ));
        }
        let field = source.field();
        let mut violations = Vec::new();
        for i in 0..g1 {
            for j in 0..g2 {
                // [phi(l_i), m_j]_2 = prod_k [m_k, m_j]_2 ^ phi[k][i]
                let mut lhs = field.identity();
                for k in 0..g2 {
                    lhs = field.mul(lhs, field.pow_big(target.pairing(k, j), phi.at(k, i))?)?;
                }
                // [l_i, phi_dual(m_j)]_1 = prod_l [l_i, l_l]_1 ^ phi_dual[l][j]
                let mut rhs = field.identity();
                for l in 0..g1 {
                    rhs = field.mul(rhs, field.pow_big(source.pairing(i, l), phi_dual.at(l, j))?)?;
                }
                if lhs != rhs {
                    violations.push((i, j, lhs, rhs));
                }
            }
        }
        if let Some((i, j, left, right)) = violations.first().copied() {
            return Err(Error::HomCompatibility {
                i,
                j,
                left,
                right,
                count: violations.len(),
            });
        }
        // Valuation-level identity, asserted exactly.
        let lhs = phi.transpose().mul(target.monodromy_matrix());
        let rhs = source.monodromy_matrix().mul(&phi_dual);
        if lhs != rhs {
            return Err(Error::Inconsistency(
                "phi^T * M2 = M1 * phi_dual failed although coarse compatibility held".into(),
            ));
        }
        Ok(ToricHom {
            source,
            target,
            phi,
            phi_dual,
        })
    }

    pub fn identity(p: &PolarizedLattice) -> Result<Self> {
        let g = p.rank();
        Self::new(
            p.clone(),
            p.clone(),
            IntMatrix::identity(g),
            IntMatrix::identity(g),
        )
    }

    pub fn source(&self) -> &PolarizedLattice {
        &self.source
    }

    pub fn target(&self) -> &PolarizedLattice {
        &self.target
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    pub fn phi_dual(&self) -> &IntMatrix {
        &self.phi_dual
    }

    /// The dual homomorphism: swap the matrix pair and the endpoints.
    /// Involutive.
    pub fn dual(&self) -> ToricHom {
        ToricHom {
            source: self.target.clone(),
            target: self.source.clone(),
            phi: self.phi_dual.clone(),
            phi_dual: self.phi.clone(),
        }
    }

    /// Composition self after other (other: A -> B, self: B -> C).
    pub fn compose(&self, other: &ToricHom) -> Result<ToricHom> {
        ToricHom::new(
            other.source.clone(),
            self.target.clone(),
            self.phi.mul(&other.phi),
            other.phi_dual.mul(&self.phi_dual),
        )
    }
}

/// Adjoint of an endomorphism with respect to the polarization pairing:
/// the integer solution of M * X = T^T * M, when it exists. A non-integral
/// solution means the candidate does not commute integrally with the
/// polarization and the adjoint is not an endomorphism of the lattice.
pub fn rosati_adjoint(p: &PolarizedLattice, t: &IntMatrix) -> Result<IntMatrix> {
    let g = p.rank();
    if !p.is_principal() {
        return Err(Error::validation(
            "polarization",
            "Rosati adjoint requires a principal polarization",
        ));
    }
    if t.rows() != g || t.cols() != g {
        return Err(Error::validation(
            "endomorphism",
            format!("expected a {g}x{g} matrix"),
        ));
    }
    let m = p.monodromy_matrix();
    let rhs = t.transpose().mul(m);
    solve_integral(m, &rhs).ok_or(Error::NonIntegralAdjoint)
}

/// A map of component groups, retained as presentations: cokernels of the
/// two Gram matrices, connected by the matrix of the dual map acting on
/// integer-valued functionals.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    source_group: FinAbGroup,
    target_group: FinAbGroup,
    /// Gram presentation of the source component group.
    source_presentation: IntMatrix,
    /// Gram presentation of the target component group.
    target_presentation: IntMatrix,
    /// Matrix of the induced map on functionals (target rank x source rank):
    /// the transpose of phi_dual.
    map: IntMatrix,
}

impl ComponentMap {
    pub fn source_group(&self) -> &FinAbGroup {
        &self.source_group
    }

    pub fn target_group(&self) -> &FinAbGroup {
        &self.target_group
    }

    pub fn map_matrix(&self) -> &IntMatrix {
        &self.map
    }

    pub fn source_presentation(&self) -> &IntMatrix {
        &self.source_presentation
    }

    pub fn target_presentation(&self) -> &IntMatrix {
        &self.target_presentation
    }

    /// Cokernel of the induced map: the quotient of the target functionals
    /// by the image of the map together with the target presentation.
    pub fn cokernel(&self) -> FinAbGroup {
        cokernel_structure(&self.map.hstack(&self.target_presentation))
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }
}

/// The induced map on component groups of a homomorphism: on the functional
/// side a functional pulls back along the dual map, so the matrix is the
/// transpose of phi_dual. Well-definedness on cosets is guaranteed by the
/// compatibility identity.
pub fn induced_component_map(f: &ToricHom) -> ComponentMap {
    let m1 = f.source().monodromy_matrix().clone();
    let m2 = f.target().monodromy_matrix().clone();
    let map = f.phi_dual().transpose();
    // Descent check: map * M1 = M2 * phi, the transpose of the asserted
    // compatibility identity.
    debug_assert_eq!(map.mul(&m1), m2.mul(f.phi()));
    ComponentMap {
        source_group: cokernel_structure(&m1),
        target_group: cokernel_structure(&m2),
        source_presentation: m1,
        target_presentation: m2,
        map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::LocalFieldModel;
    use crate::lattice::{MultiplicativeLattice, RiemannForm};

    fn rank_one(ord: i64, w: u64) -> PolarizedLattice {
        let field = LocalFieldModel::new(5, 5, w).unwrap();
        let lattice = MultiplicativeLattice::new(field, 1, vec![field.unit(ord, 0)]).unwrap();
        PolarizedLattice::new(lattice, RiemannForm::identity(1)).unwrap()
    }

    fn glued(a: i64, b: i64, c: u64, w: u64) -> PolarizedLattice {
        let field = LocalFieldModel::new(5, 5, w).unwrap();
        let zeta = field.unit(0, (w / c) as i64);
        let coords = vec![field.unit(a, 0), zeta, zeta, field.unit(b, 0)];
        let lattice = MultiplicativeLattice::new(field, 2, coords).unwrap();
        PolarizedLattice::new(lattice, RiemannForm::identity(2)).unwrap()
    }

    #[test]
    fn identity_hom_is_valid() {
        let p = glued(1, 1, 2, 4);
        let f = ToricHom::identity(&p).unwrap();
        let m = induced_component_map(&f);
        assert!(m.is_surjective());
        assert!(m.cokernel().is_trivial());
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let p = rank_one(1, 4);
        let err = ToricHom::new(
            p.clone(),
            p.clone(),
            IntMatrix::identity(1),
            IntMatrix::from_rows(&[&[2]]),
        )
        .unwrap_err();
        match err {
            Error::HomCompatibility { i, j, .. } => {
                assert_eq!((i, j), (0, 0));
            }
            other => panic!("expected compatibility failure, got {other}"),
        }
    }

    #[test]
    fn dual_is_involutive() {
        let p = glued(2, 3, 3, 6);
        let f = ToricHom::identity(&p).unwrap();
        let dd = f.dual().dual();
        assert_eq!(dd.phi(), f.phi());
        assert_eq!(dd.phi_dual(), f.phi_dual());
    }

    #[test]
    fn rosati_for_identity_gram_is_transpose() {
        let p = glued(1, 1, 1, 1);
        // Gram is the identity here, so the adjoint is plain transposition.
        assert_eq!(p.monodromy_matrix(), &IntMatrix::identity(2));
        let t = IntMatrix::from_rows(&[&[1, 2], &[3, 4]]);
        let adj = rosati_adjoint(&p, &t).unwrap();
        assert_eq!(adj, t.transpose());
    }

    #[test]
    fn rosati_non_integral_is_error() {
        // Gram diag(1, 2): the adjoint of [[0,1],[0,0]] is [[0,0],[1/2,0]].
        let p = glued(1, 2, 1, 1);
        let t = IntMatrix::from_rows(&[&[0, 1], &[0, 0]]);
        assert!(matches!(
            rosati_adjoint(&p, &t),
            Err(Error::NonIntegralAdjoint)
        ));
        // Scaling the offending entry fixes integrality.
        let t2 = IntMatrix::from_rows(&[&[0, 2], &[0, 0]]);
        let adj = rosati_adjoint(&p, &t2).unwrap();
        assert_eq!(adj, IntMatrix::from_rows(&[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn rosati_is_involutive_where_defined() {
        let p = glued(2, 3, 3, 6);
        let t = IntMatrix::from_rows(&[&[1, 0], &[0, 2]]);
        let adj = rosati_adjoint(&p, &t).unwrap();
        let back = rosati_adjoint(&p, &adj).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn doubling_endomorphism_on_component_group() {
        // Multiplication by 2 on a rank-1 lattice with ord(q) = 3 induces
        // x -> 2x on Z/3, which is surjective.
        let p = rank_one(3, 4);
        let two = IntMatrix::from_rows(&[&[2]]);
        let f = ToricHom::new(p.clone(), p.clone(), two.clone(), two).unwrap();
        let m = induced_component_map(&f);
        assert_eq!(m.source_group(), &FinAbGroup::cyclic(3));
        assert!(m.is_surjective());
    }

    #[test]
    fn functoriality_of_induced_maps() {
        let p = rank_one(4, 4);
        let two = IntMatrix::from_rows(&[&[2]]);
        let three = IntMatrix::from_rows(&[&[3]]);
        let f = ToricHom::new(p.clone(), p.clone(), two.clone(), two).unwrap();
        let g = ToricHom::new(p.clone(), p.clone(), three.clone(), three).unwrap();
        let gf = g.compose(&f).unwrap();
        let direct = induced_component_map(&gf);
        let composed = induced_component_map(&g)
            .map_matrix()
            .mul(induced_component_map(&f).map_matrix());
        assert_eq!(direct.map_matrix(), &composed);
    }
}
