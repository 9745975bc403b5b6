//! Elliptic subvarieties of a polarized lattice and the numerical
//! invariants of the induced optimal quotients.
//!
//! A one-dimensional subtorus is cut out by a primitive cocharacter. Its
//! intersection with the lattice is computed in two layers, mirroring how
//! such intersections behave in the field itself:
//!
//! * coordinate entries of positive or negative valuation are treated as
//!   multiplicatively independent of one another (entries at symmetric
//!   positions that agree coarsely are the same element, as forced by the
//!   symmetry of the pairing values); a relation between distinct
//!   non-torsion coordinates never holds identically, so membership in the
//!   subtorus must be witnessed exponent by exponent;
//! * entries of valuation zero are exact roots of unity, and contribute a
//!   congruence system modulo the torsion order.
//!
//! The intersection is always a subgroup of a rank-one saturated line; its
//! index inside that line is the saturation index c, the central
//! obstruction: the cokernel of the induced map on component groups is
//! cyclic of order c, and c divides the torsion order of the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abgroup::FinAbGroup;
use crate::error::{Error, Result};
use crate::field::CoarseUnit;
use crate::hom::{induced_component_map, rosati_adjoint, ComponentMap, ToricHom};
use crate::lattice::{MultiplicativeLattice, PolarizedLattice, RiemannForm};
use crate::matrix::{
    column_echelon_basis, kernel_basis, lattice_index, solve_integral, solve_rational, IntMatrix,
};

/// A one-dimensional abelian subvariety of the uniformized variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticSubvariety {
    /// Primitive direction vector of the subtorus.
    cocharacter: Vec<i64>,
    /// Lattice coordinates of the generator of the intersection subgroup;
    /// equals the saturation index times the saturation generator.
    gamma_coords: Vec<BigInt>,
    /// The intersection generator read off in the subtorus: the Tate period
    /// of the subvariety. Its valuation is positive.
    tate_period: CoarseUnit,
    /// Generator of the saturation of the intersection inside the lattice.
    saturation_gen: Vec<BigInt>,
    /// Index of the intersection inside its saturation.
    saturation_index: u64,
}

impl EllipticSubvariety {
    pub fn cocharacter(&self) -> &[i64] {
        &self.cocharacter
    }

    pub fn gamma_coords(&self) -> &[BigInt] {
        &self.gamma_coords
    }

    pub fn tate_period(&self) -> CoarseUnit {
        self.tate_period
    }

    pub fn saturation_generator(&self) -> &[BigInt] {
        &self.saturation_gen
    }

    pub fn saturation_index(&self) -> u64 {
        self.saturation_index
    }
}

/// The numerical record of an optimal quotient onto an elliptic subvariety.
///
/// Letters follow the customary notation: c is the saturation index, m the
/// minimal positive pairing value against the saturation generator, n and r
/// the denominators of the associated idempotent among endomorphisms of the
/// variety and of the lattice respectively, and the congruence number is
/// the index of the orthogonal direct sum inside the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    /// c = [saturation : intersection]; the cokernel order.
    pub saturation_index: u64,
    /// Valuation of the Tate period of the subvariety.
    pub period_ord: u64,
    /// Pairing of the saturation generator with itself.
    pub self_pairing: u64,
    /// m: minimal positive pairing value against the saturation generator.
    pub min_pairing: u64,
    /// r: denominator of the idempotent projector in the lattice
    /// endomorphism ring.
    pub lattice_denominator: u64,
    /// n: denominator of the idempotent among endomorphisms of the variety;
    /// n = c * r.
    pub variety_denominator: u64,
    /// Congruence number: index of (orthogonal complement + generator line)
    /// in the lattice. Always equals r.
    pub congruence_number: u64,
    /// Whether the induced map on component groups is surjective.
    pub surjective: bool,
    /// Cokernel of the induced map on component groups; cyclic of order c.
    pub cokernel: FinAbGroup,
}

/// Internal independence structure of the coordinate matrix: one symbol per
/// non-torsion entry, with symmetric coarsely-equal positions identified.
struct SymbolTable {
    count: usize,
    /// Row-major assignment: Some(symbol) for non-torsion entries.
    assignment: Vec<Option<usize>>,
    values: Vec<CoarseUnit>,
}

impl SymbolTable {
    fn build(lattice: &MultiplicativeLattice) -> SymbolTable {
        let g = lattice.rank();
        let mut assignment = vec![None; g * g];
        let mut values = Vec::new();
        for i in 0..g {
            for j in 0..g {
                let u = lattice.coord(i, j);
                if u.v == 0 {
                    continue; // exact root of unity
                }
                if j < i && lattice.coord(j, i) == u {
                    assignment[i * g + j] = assignment[j * g + i];
                    continue;
                }
                assignment[i * g + j] = Some(values.len());
                values.push(u);
            }
        }
        SymbolTable {
            count: values.len(),
            assignment,
            values,
        }
    }

    fn symbol(&self, g: usize, i: usize, j: usize) -> Option<usize> {
        self.assignment[i * g + j]
    }
}

/// Coefficients a with sum(a_k * beta_k) = gcd(beta) = 1 for primitive beta.
fn bezout_coefficients(beta: &[i64]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for &b in beta {
        let e = BigInt::from(b).extended_gcd(&g);
        // e.gcd = e.x * b + e.y * g
        for c in coeffs.iter_mut() {
            *c *= &e.y;
        }
        coeffs.push(e.x);
        g = e.gcd;
    }
    debug_assert_eq!(g.abs(), BigInt::one());
    if g.is_negative() {
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    coeffs
}

struct LineSolution {
    /// Primitive generator of the saturated solution line.
    x0: Vec<BigInt>,
    /// Symbol exponents of the scalar at x0.
    sigma: Vec<BigInt>,
}

/// Primitive integer generator of the line {x : V x proportional to beta},
/// together with the symbol consistency check. Returns `None` when the
/// symbol exponents cannot match the cocharacter pattern, i.e. when the
/// subtorus meets the lattice trivially.
fn solve_symbol_line(
    p: &PolarizedLattice,
    symbols: &SymbolTable,
    beta: &[i64],
    bezout: &[BigInt],
) -> Option<LineSolution> {
    let g = p.rank();
    let v = p.lattice().valuation_matrix();
    let beta_col = IntMatrix::from_columns(&[beta.iter().map(|&b| BigInt::from(b)).collect()]);
    let x_rat = solve_rational(&v, &beta_col).expect("valuation matrix is nonsingular");
    // Clear denominators and divide by the content to get a primitive vector.
    let mut denom_lcm = BigInt::one();
    for row in &x_rat {
        denom_lcm = denom_lcm.lcm(row[0].denom());
    }
    let mut x0: Vec<BigInt> = x_rat
        .iter()
        .map(|row| (&row[0] * &denom_lcm).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for e in &x0 {
        content = content.gcd(e);
    }
    debug_assert!(!content.is_zero());
    for e in x0.iter_mut() {
        *e /= &content;
    }

    // Symbol exponent of coordinate k at x0, per symbol.
    let exponent = |k: usize, s: usize, x: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for j in 0..g {
            if symbols.symbol(g, k, j) == Some(s) {
                acc += &x[j];
            }
        }
        acc
    };
    // The unique candidate scalar exponents, recovered through the Bezout
    // coefficients of the cocharacter.
    let sigma: Vec<BigInt> = (0..symbols.count)
        .map(|s| {
            (0..g)
                .map(|k| &bezout[k] * exponent(k, s, &x0))
                .sum::<BigInt>()
        })
        .collect();
    // Membership requires the exponents to match the cocharacter pattern
    // exactly; independence of the non-torsion coordinates leaves no room
    // for cancellation.
    for k in 0..g {
        for s in 0..symbols.count {
            if exponent(k, s, &x0) != BigInt::from(beta[k]) * &sigma[s] {
                return None;
            }
        }
    }
    Some(LineSolution { x0, sigma })
}

fn solve_subtorus(p: &PolarizedLattice, beta: &[i64]) -> Result<Option<EllipticSubvariety>> {
    let g = p.rank();
    let field = *p.field();
    let w = field.torsion_order();
    let symbols = SymbolTable::build(p.lattice());
    let bezout = bezout_coefficients(beta);

    let Some(mut line) = solve_symbol_line(p, &symbols, beta, &bezout) else {
        return Ok(None);
    };

    // Scalar valuation at x0; flip the generator so the period valuation is
    // positive.
    let v_of = |x: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for (s, val) in symbols.values.iter().enumerate() {
            acc += &x[s] * BigInt::from(val.v);
        }
        acc
    };
    let mut v0 = v_of(&line.sigma);
    if v0.is_zero() {
        return Err(Error::Inconsistency(
            "subtorus scalar has valuation zero on a nonsingular lattice".into(),
        ));
    }
    if v0.is_negative() {
        for e in line.x0.iter_mut() {
            *e = -&*e;
        }
        for e in line.sigma.iter_mut() {
            *e = -&*e;
        }
        v0 = -v0;
    }

    // Torsion congruences along the line x = d * x0: the exact
    // root-of-unity entries must combine into the beta-th powers of a single
    // torsion scalar.
    let w_big = BigInt::from(w);
    let tau: Vec<BigInt> = (0..g)
        .map(|k| {
            let mut acc = BigInt::zero();
            for j in 0..g {
                if symbols.symbol(g, k, j).is_none() {
                    acc += &line.x0[j] * BigInt::from(p.lattice().coord(k, j).t);
                }
            }
            acc.mod_floor(&w_big)
        })
        .collect();
    let tau_hat = (0..g)
        .map(|k| &bezout[k] * &tau[k])
        .sum::<BigInt>()
        .mod_floor(&w_big);
    let mut step = BigInt::one();
    for k in 0..g {
        let delta = (BigInt::from(beta[k]) * &tau_hat - &tau[k]).mod_floor(&w_big);
        let need = &w_big / w_big.gcd(&delta);
        step = step.lcm(&need);
    }
    let c = step
        .to_u64()
        .ok_or_else(|| Error::Inconsistency("saturation index overflow".into()))?;
    debug_assert!(w % c == 0, "saturation index must divide the torsion order");

    let gamma_coords: Vec<BigInt> = line.x0.iter().map(|e| e * &step).collect();
    let t0 = (&tau_hat * &step).mod_floor(&w_big);
    let mut period_t = t0;
    for (s, val) in symbols.values.iter().enumerate() {
        period_t += &line.sigma[s] * &step * BigInt::from(val.t);
    }
    let period = CoarseUnit {
        v: (&v0 * &step)
            .to_i64()
            .ok_or_else(|| Error::Inconsistency("period valuation overflow".into()))?,
        t: period_t.mod_floor(&w_big).to_u64().unwrap(),
    };

    // Independent coarse re-verification: the intersection generator,
    // evaluated coordinate-wise, must be the cocharacter powers of the
    // period.
    for k in 0..g {
        let mut acc = field.identity();
        for j in 0..g {
            acc = field.mul(acc, field.pow_big(p.lattice().coord(k, j), &gamma_coords[j])?)?;
        }
        let expect = field.pow(period, beta[k])?;
        if acc != expect {
            return Err(Error::Inconsistency(format!(
                "intersection generator fails membership at coordinate {k}: {acc} vs {expect}"
            )));
        }
    }

    Ok(Some(EllipticSubvariety {
        cocharacter: beta.to_vec(),
        gamma_coords,
        tate_period: period,
        saturation_gen: line.x0,
        saturation_index: c,
    }))
}

/// Default enumeration bound: the rank times the largest valuation entry.
/// Complete for lattices of gluing shape, where subtorus directions are
/// coordinate axes in the generator basis; a heuristic in general, and the
/// analysis report records the bound that was used.
pub fn default_enumeration_bound(p: &PolarizedLattice) -> u64 {
    let g = p.rank() as u64;
    let v = p.lattice().valuation_matrix();
    let max = v
        .entries()
        .iter()
        .map(|e| e.abs().to_u64().unwrap_or(u64::MAX))
        .max()
        .unwrap_or(1);
    (g * max).max(1)
}

fn primitive_cocharacters(g: usize, bound: u64) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut current = vec![-b; g];
    loop {
        // Normalize up to sign: first nonzero entry positive; require
        // content one.
        let first_nonzero = current.iter().find(|&&x| x != 0);
        if let Some(&f) = first_nonzero {
            if f > 0 {
                let gcd = current.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                if gcd == 1 {
                    out.push(current.clone());
                }
            }
        }
        // Odometer increment.
        let mut i = g;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < b {
                current[i] += 1;
                for e in current.iter_mut().skip(i + 1) {
                    *e = -b;
                }
                break;
            }
        }
    }
}

/// Enumerate elliptic subvarieties with cocharacter entries bounded by the
/// given bound. The list is in lexicographic cocharacter order.
pub fn find_elliptic_subvarieties(
    p: &PolarizedLattice,
    bound: u64,
) -> Result<Vec<EllipticSubvariety>> {
    if !p.is_principal() {
        return Err(Error::validation(
            "polarization",
            "subvariety analysis requires a principal polarization",
        ));
    }
    if bound == 0 {
        return Err(Error::validation("bound", "enumeration bound must be >= 1"));
    }
    let mut found = Vec::new();
    for beta in primitive_cocharacters(p.rank(), bound) {
        if let Some(sub) = solve_subtorus(p, &beta)? {
            found.push(sub);
        }
    }
    Ok(found)
}

/// The projection-inclusion pair attached to a subvariety: the inclusion
/// sends the Tate-period generator to gamma, and the projection is the
/// pairing row scaled by c / ord(period). The pair is validated exactly,
/// torsion parts included.
pub fn projection_pair(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
) -> Result<(ToricHom, PolarizedLattice)> {
    let g = p.rank();
    let field = *p.field();
    let target_lattice = MultiplicativeLattice::new(field, 1, vec![e.tate_period])?;
    let target = PolarizedLattice::new(target_lattice, RiemannForm::identity(1))?;

    let c = BigInt::from(e.saturation_index);
    let ord = BigInt::from(e.tate_period.v);
    let pairing_row = p
        .monodromy_matrix()
        .mul_vec(&e.saturation_gen.to_vec());
    let mut phi = IntMatrix::zeros(1, g);
    for i in 0..g {
        let num = &c * &pairing_row[i];
        let (q, r) = num.div_rem(&ord);
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "projection coefficient {i} is not integral: {num}/{ord}"
            )));
        }
        phi.set(0, i, q);
    }
    let phi_dual = IntMatrix::from_columns(&[e.gamma_coords.clone()]);
    let hom = ToricHom::new(p.clone(), target.clone(), phi, phi_dual).map_err(|err| {
        Error::Inconsistency(format!("projection pair failed validation: {err}"))
    })?;
    Ok((hom, target))
}

/// Image of a lattice element under the projection, as a multiple of the
/// Tate-period generator of the subvariety.
pub fn projection_to_gamma(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
    lambda: &[BigInt],
) -> Result<BigInt> {
    let pairing = p.pairing_of(lambda, &e.saturation_gen.to_vec());
    let num = BigInt::from(e.saturation_index) * pairing;
    let ord = BigInt::from(e.tate_period.v);
    let (q, r) = num.div_rem(&ord);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "projection value is not integral: {num}/{ord}"
        )));
    }
    Ok(q)
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Inconsistency(format!("{what} does not fit in 64 bits: {x}")))
}

/// Compute the full invariant record of a subvariety, asserting every
/// identity along independent code paths before returning. A failed
/// assertion signals a modeling bug, never a bad input.
pub fn compute_invariants(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
) -> Result<QuotientInvariants> {
    let g = p.rank();
    let field = p.field();
    let lambda = e.saturation_gen.to_vec();
    let m_mat = p.monodromy_matrix();
    let pairing_row = m_mat.mul_vec(&lambda);

    let c = e.saturation_index;
    let period_ord = to_u64(&BigInt::from(e.tate_period.v), "period valuation")?;
    let self_pairing_big = p.pairing_of(&lambda, &lambda);
    let self_pairing = to_u64(&self_pairing_big, "self pairing")?;

    // m: the pairing values against lambda form a subgroup of the integers,
    // so their gcd is the minimal positive value.
    let mut m_big = BigInt::zero();
    for v in &pairing_row {
        m_big = m_big.gcd(v);
    }
    let min_pairing = to_u64(&m_big, "minimal pairing")?;

    // r, route one: self_pairing / gcd(self_pairing, content of the
    // projector numerator).
    let outer = IntMatrix::from_columns(&[lambda.clone()]).mul(&IntMatrix::from_entries(
        1,
        g,
        pairing_row.clone(),
    ));
    let content = outer.content();
    let r_route_one = &self_pairing_big / self_pairing_big.gcd(&content);

    // r, route two: least common multiple of the reduced denominators of
    // the projector entries.
    let mut r_route_two = BigInt::one();
    for entry in outer.entries() {
        let d = &self_pairing_big / entry.gcd(&self_pairing_big);
        r_route_two = r_route_two.lcm(&d);
    }
    if r_route_one != r_route_two {
        return Err(Error::Inconsistency(format!(
            "projector denominator routes disagree: {r_route_one} vs {r_route_two}"
        )));
    }
    let lattice_denominator = to_u64(&r_route_one, "lattice denominator")?;
    let variety_denominator = c
        .checked_mul(lattice_denominator)
        .ok_or_else(|| Error::Inconsistency("variety denominator overflow".into()))?;

    // Congruence number: index of (orthogonal complement + generator line).
    let perp = kernel_basis(&IntMatrix::from_entries(1, g, pairing_row.clone()));
    let direct_sum = perp.hstack(&IntMatrix::from_columns(&[lambda.clone()]));
    let congruence_big = lattice_index(&IntMatrix::identity(g), &direct_sum)?;
    let congruence_number = to_u64(&congruence_big, "congruence number")?;

    // Identity assertions, each side computed independently.
    if c as u128 * min_pairing as u128 != period_ord as u128 {
        return Err(Error::Inconsistency(format!(
            "c * m = ord(q) failed: {c} * {min_pairing} != {period_ord}"
        )));
    }
    if (c as u128).pow(2) * self_pairing as u128
        != variety_denominator as u128 * period_ord as u128
    {
        return Err(Error::Inconsistency(format!(
            "c^2 * <l,l> = n * ord(q) failed for c={c}, <l,l>={self_pairing}, \
             n={variety_denominator}, ord={period_ord}"
        )));
    }
    if congruence_number != lattice_denominator {
        return Err(Error::Inconsistency(format!(
            "congruence number {congruence_number} != lattice denominator {lattice_denominator}"
        )));
    }
    if field.torsion_order() % c != 0 {
        return Err(Error::Inconsistency(format!(
            "saturation index {c} does not divide the torsion order {}",
            field.torsion_order()
        )));
    }

    // Cokernel through the homomorphism machinery: an independent path.
    let (hom, _target) = projection_pair(p, e)?;
    let map = induced_component_map(&hom);
    let cokernel = map.cokernel();
    if cokernel != FinAbGroup::cyclic(c) {
        return Err(Error::Inconsistency(format!(
            "cokernel {cokernel} is not cyclic of order {c}"
        )));
    }
    let surjective = map.is_surjective();
    if surjective != (c == 1) {
        return Err(Error::Inconsistency(
            "surjectivity flag disagrees with the saturation index".into(),
        ));
    }

    Ok(QuotientInvariants {
        saturation_index: c,
        period_ord,
        self_pairing,
        min_pairing,
        lattice_denominator,
        variety_denominator,
        congruence_number,
        surjective,
        cokernel,
    })
}

/// The induced map on component groups for the quotient onto a subvariety.
pub fn quotient_component_map(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
) -> Result<ComponentMap> {
    let (hom, _) = projection_pair(p, e)?;
    Ok(induced_component_map(&hom))
}

/// The integral projector onto the subvariety direction scaled to the
/// variety denominator: n times the idempotent. Exactly the composition of
/// the inclusion after the projection; both routes are evaluated and
/// compared.
pub fn scaled_projector(p: &PolarizedLattice, e: &EllipticSubvariety) -> Result<IntMatrix> {
    let g = p.rank();
    let lambda = e.saturation_gen.to_vec();
    let pairing_row = p.monodromy_matrix().mul_vec(&lambda);
    let outer =
        IntMatrix::from_columns(&[lambda.clone()]).mul(&IntMatrix::from_entries(1, g, pairing_row));
    let self_pairing = p.pairing_of(&lambda, &lambda);
    let r = &self_pairing / self_pairing.gcd(&outer.content());
    let n = BigInt::from(e.saturation_index) * r;
    let divided = outer
        .scale(&n)
        .div_exact(&self_pairing)
        .ok_or_else(|| Error::Inconsistency("scaled projector is not integral".into()))?;
    // Independent route: compose inclusion after projection.
    let (hom, _) = projection_pair(p, e)?;
    let composed = hom.phi_dual().mul(hom.phi());
    if divided != composed {
        return Err(Error::Inconsistency(
            "projector routes disagree: outer-product route vs composition route".into(),
        ));
    }
    Ok(divided)
}

/// Truth values of the seven equivalent surjectivity conditions, each
/// evaluated by its own formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityConditions {
    /// The induced map on component groups is surjective.
    pub map_surjective: bool,
    /// The integral projector n*e is primitive among lattice endomorphisms.
    pub projector_primitive: bool,
    /// The saturation index is one.
    pub saturation_trivial: bool,
    /// The two idempotent denominators agree.
    pub denominators_equal: bool,
    /// The self pairing reaches n * ord(q).
    pub self_pairing_maximal: bool,
    /// The minimal pairing reaches ord(q).
    pub min_pairing_maximal: bool,
    /// The variety denominator equals the congruence number.
    pub congruence_matches: bool,
}

impl SurjectivityConditions {
    pub fn all(&self) -> [bool; 7] {
        [
            self.map_surjective,
            self.projector_primitive,
            self.saturation_trivial,
            self.denominators_equal,
            self.self_pairing_maximal,
            self.min_pairing_maximal,
            self.congruence_matches,
        ]
    }

    pub fn consistent(&self) -> bool {
        let a = self.all();
        a.iter().all(|&x| x) || a.iter().all(|&x| !x)
    }
}

fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Evaluate the seven equivalent conditions independently and assert that
/// they agree.
pub fn check_surjectivity_conditions(
    inv: &QuotientInvariants,
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
) -> Result<SurjectivityConditions> {
    let projector = scaled_projector(p, e)?;
    // Primitivity: unit content, and no prime dividing n divides the whole
    // matrix. The second clause restates the first; both are evaluated.
    let content_one = projector.content().is_one();
    let no_prime_divides = small_prime_factors(inv.variety_denominator)
        .iter()
        .all(|&q| projector.div_exact(&BigInt::from(q)).is_none());
    let projector_primitive = content_one && (inv.variety_denominator == 1 || no_prime_divides);

    let conditions = SurjectivityConditions {
        map_surjective: inv.cokernel.is_trivial(),
        projector_primitive,
        saturation_trivial: inv.saturation_index == 1,
        denominators_equal: inv.variety_denominator == inv.lattice_denominator,
        self_pairing_maximal: inv.self_pairing as u128
            == inv.variety_denominator as u128 * inv.period_ord as u128,
        min_pairing_maximal: inv.min_pairing == inv.period_ord,
        congruence_matches: inv.variety_denominator == inv.congruence_number,
    };
    if !conditions.consistent() {
        return Err(Error::Inconsistency(format!(
            "the seven equivalent surjectivity conditions disagree: {:?}",
            conditions.all()
        )));
    }
    Ok(conditions)
}

/// Outcome of the perfect-pairing surjectivity criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingVerdict {
    /// The pairing is perfect; surjectivity is certified.
    Certified,
    /// The pairing determinant is not a unit; the criterion is silent. The
    /// ratio of the ring denominator to the lattice denominator divides the
    /// determinant.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct PairingCriterion {
    pub verdict: PairingVerdict,
    /// Determinant of the pairing matrix.
    pub determinant: BigInt,
    /// Denominator of the idempotent inside the supplied ring.
    pub ring_denominator: u64,
    /// Denominator of the idempotent in the full lattice endomorphism ring.
    pub lattice_denominator: u64,
}

fn vectorize(mats: &[IntMatrix]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    IntMatrix::from_columns(&cols)
}

/// Validate a commutative subring of lattice endomorphisms given by a
/// Z-module basis, check that the supplied pairing of the ring against the
/// lattice is equivariant, and apply the perfect-pairing criterion: a unit
/// determinant certifies surjectivity of the induced component map.
pub fn perfect_pairing_criterion(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
    ring_basis: &[IntMatrix],
    pairing: &IntMatrix,
) -> Result<PairingCriterion> {
    let g = p.rank();
    let k = ring_basis.len();
    if k == 0 {
        return Err(Error::validation("ring", "empty generator list"));
    }
    if pairing.rows() != k || pairing.cols() != g {
        return Err(Error::validation(
            "pairing",
            format!(
                "expected a {k}x{g} pairing matrix, got {}x{}",
                pairing.rows(),
                pairing.cols()
            ),
        ));
    }
    for (idx, t) in ring_basis.iter().enumerate() {
        if t.rows() != g || t.cols() != g {
            return Err(Error::validation(
                format!("ring[{idx}]"),
                "generator has wrong shape",
            ));
        }
        // Each generator must be an endomorphism of the uniformized variety:
        // it needs an integral adjoint and an exactly compatible pair.
        let adj = rosati_adjoint(p, t)?;
        ToricHom::new(p.clone(), p.clone(), t.clone(), adj)?;
    }
    let basis_vec = vectorize(ring_basis);
    {
        use crate::matrix::smith_normal_form;
        if smith_normal_form(&basis_vec).rank() != k {
            return Err(Error::validation(
                "ring",
                "generators are not independent over the integers; supply a module basis",
            ));
        }
    }

    // Ring closure and equivariance on basis pairs: S*T must lie in the
    // module span, and pairing(S*T, x) = pairing(S, T x).
    for (i, s) in ring_basis.iter().enumerate() {
        for t in ring_basis {
            let st = s.mul(t);
            let coeffs = solve_integral(&basis_vec, &vectorize(&[st]))
                .ok_or_else(|| Error::validation("ring", "not closed under multiplication"))?;
            // pairing(S*T, -) as a combination of pairing rows.
            let mut left = vec![BigInt::zero(); g];
            for l in 0..k {
                for j in 0..g {
                    left[j] += coeffs.at(l, 0) * pairing.at(l, j);
                }
            }
            // pairing(S, T -) = row_S * T.
            for (j, lj) in left.iter().enumerate() {
                let right: BigInt = (0..g).map(|x| pairing.at(i, x) * t.at(x, j)).sum();
                if *lj != right {
                    return Err(Error::validation(
                        "pairing",
                        format!("not equivariant at basis pair ({i}, ..) and generator {j}"),
                    ));
                }
            }
        }
    }

    // The idempotent must lie in the rational span of the ring.
    let inv = compute_invariants(p, e)?;
    let projector = scaled_projector(p, e)?; // n * e, integral
    let n = BigInt::from(inv.variety_denominator);
    let coords = solve_rational(&basis_vec, &vectorize(&[projector.clone()])).ok_or_else(|| {
        Error::validation("ring", "idempotent is not in the rational span of the ring")
    })?;
    // Denominator of e inside the ring: lcm of the reduced denominators of
    // the coordinates of e = (n*e)/n.
    let mut ring_denominator = BigInt::one();
    for row in &coords {
        let coord_of_e = &row[0] / num_rational::BigRational::from(n.clone());
        ring_denominator = ring_denominator.lcm(coord_of_e.denom());
    }
    let ring_denominator = to_u64(&ring_denominator, "ring denominator")?;

    if k != g {
        return Ok(PairingCriterion {
            verdict: PairingVerdict::Inconclusive,
            determinant: BigInt::zero(),
            ring_denominator,
            lattice_denominator: inv.lattice_denominator,
        });
    }
    let det = pairing.det();
    if det.abs().is_one() {
        if inv.saturation_index != 1 {
            return Err(Error::Inconsistency(
                "perfect pairing found but the saturation index is not one".into(),
            ));
        }
        Ok(PairingCriterion {
            verdict: PairingVerdict::Certified,
            determinant: det,
            ring_denominator,
            lattice_denominator: inv.lattice_denominator,
        })
    } else {
        // The proof of the criterion shows the denominator ratio divides
        // any equivariant pairing determinant.
        let ratio = ring_denominator / inv.lattice_denominator;
        if !det.is_zero() && !(det.clone() % BigInt::from(ratio.max(1))).is_zero() {
            return Err(Error::Inconsistency(format!(
                "denominator ratio {ratio} does not divide the pairing determinant {det}"
            )));
        }
        Ok(PairingCriterion {
            verdict: PairingVerdict::Inconclusive,
            determinant: det,
            ring_denominator,
            lattice_denominator: inv.lattice_denominator,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerpIndexReport {
    /// Index of the eigenvalue-difference span inside the orthogonal
    /// complement of the saturation generator.
    pub index: u64,
    /// Whether the saturation index divides it; a theorem says it must.
    pub divisible_by_saturation_index: bool,
}

/// Index criterion: for a commuting family of endomorphisms with the
/// saturation generator as a common eigenvector (and adjoint-symmetric
/// eigenvalues), the span of (T - a(T)) applied to the lattice sits inside
/// the orthogonal complement with finite index divisible by the saturation
/// index; index one forces surjectivity.
pub fn perp_index_criterion(
    p: &PolarizedLattice,
    e: &EllipticSubvariety,
    ring_gens: &[IntMatrix],
) -> Result<PerpIndexReport> {
    let g = p.rank();
    let lambda = e.saturation_gen.to_vec();
    let lambda_col = IntMatrix::from_columns(&[lambda.clone()]);

    for (i, s) in ring_gens.iter().enumerate() {
        if s.rows() != g || s.cols() != g {
            return Err(Error::validation(
                format!("ring[{i}]"),
                "generator has wrong shape",
            ));
        }
        for t in ring_gens {
            if s.mul(t) != t.mul(s) {
                return Err(Error::validation("ring", "generators do not commute"));
            }
        }
    }

    let eigenvalue = |t: &IntMatrix| -> Result<BigInt> {
        let image = t.mul(&lambda_col);
        let pivot = lambda
            .iter()
            .position(|x| !x.is_zero())
            .expect("saturation generator is nonzero");
        let (a, r) = image.at(pivot, 0).div_rem(&lambda[pivot]);
        if !r.is_zero() {
            return Err(Error::validation(
                "ring",
                "saturation generator is not an integral eigenvector",
            ));
        }
        for i in 0..g {
            if image.at(i, 0) != &(&a * &lambda[i]) {
                return Err(Error::validation(
                    "ring",
                    "saturation generator is not an eigenvector",
                ));
            }
        }
        Ok(a)
    };

    let mut difference_cols: Vec<Vec<BigInt>> = Vec::new();
    let pairing_row = IntMatrix::from_entries(1, g, p.monodromy_matrix().mul_vec(&lambda));
    for t in ring_gens {
        let a = eigenvalue(t)?;
        let adj = rosati_adjoint(p, t)?;
        let a_adj = eigenvalue(&adj)?;
        if a != a_adj {
            return Err(Error::validation(
                "ring",
                format!("eigenvalue is not adjoint-symmetric: {a} vs {a_adj}"),
            ));
        }
        let mut shifted = t.clone();
        for i in 0..g {
            let d = shifted.at(i, i) - &a;
            shifted.set(i, i, d);
        }
        for j in 0..g {
            let col = shifted.column(j);
            // Inclusion in the orthogonal complement is a theorem under the
            // preconditions; verify it exactly.
            let product: BigInt = (0..g).map(|i| pairing_row.at(0, i) * &col[i]).sum();
            if !product.is_zero() {
                return Err(Error::Inconsistency(
                    "difference span is not orthogonal to the saturation generator".into(),
                ));
            }
            difference_cols.push(col);
        }
    }

    let perp = kernel_basis(&pairing_row);
    let span = if difference_cols.is_empty() {
        IntMatrix::zeros(g, 0)
    } else {
        column_echelon_basis(&IntMatrix::from_columns(&difference_cols))
    };
    if span.cols() < g - 1 {
        return Err(Error::InfiniteIndex(
            "difference span has deficient rank: the idempotent is not in the rational span \
             of the ring"
                .into(),
        ));
    }
    let index_big = lattice_index(&perp, &span)?;
    let index = to_u64(&index_big, "orthogonal index")?;
    let c = e.saturation_index;
    let divisible = index % c == 0;
    if index == 1 && c != 1 {
        return Err(Error::Inconsistency(
            "index one must force a trivial saturation index".into(),
        ));
    }
    Ok(PerpIndexReport {
        index,
        divisible_by_saturation_index: divisible,
    })
}
