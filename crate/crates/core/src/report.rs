//! Analysis driver and report formats.
//!
//! The machine format is canonical JSON: fixed key order, integers as
//! decimal strings, no floating point. Re-parsing and re-serializing a
//! machine report is byte-identical. The text format carries exactly the
//! same values for human eyes; the tests compare the two.

use serde::{Deserialize, Serialize};

use crate::abgroup::FinAbGroup;
use crate::document::FieldSection;
use crate::error::{Error, Result};
use crate::lattice::PolarizedLattice;
use crate::matrix::IntMatrix;
use crate::quotient::{
    check_surjectivity_conditions, compute_invariants, default_enumeration_bound,
    find_elliptic_subvarieties, perfect_pairing_criterion, perp_index_criterion,
    PairingVerdict,
};

pub const REPORT_FORMAT: &str = "toric-quotients/report-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepr {
    pub invariant_factors: Vec<String>,
    pub free_rank: String,
}

impl GroupRepr {
    pub fn of(g: &FinAbGroup) -> Self {
        GroupRepr {
            invariant_factors: g.invariant_factors().iter().map(|d| d.to_string()).collect(),
            free_rank: g.free_rank().to_string(),
        }
    }

    pub fn display(&self) -> String {
        if self.invariant_factors.is_empty() && self.free_rank == "0" {
            return "1".into();
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        if self.free_rank != "0" {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.join(" x ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRepr {
    pub saturation_index: String,
    pub period_ord: String,
    pub self_pairing: String,
    pub min_pairing: String,
    pub lattice_denominator: String,
    pub variety_denominator: String,
    pub congruence_number: String,
    pub surjective: bool,
    pub cokernel: GroupRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsRepr {
    pub map_surjective: bool,
    pub projector_primitive: bool,
    pub saturation_trivial: bool,
    pub denominators_equal: bool,
    pub self_pairing_maximal: bool,
    pub min_pairing_maximal: bool,
    pub congruence_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerpIndexRepr {
    pub index: String,
    pub divisible_by_saturation_index: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingCriterionRepr {
    pub verdict: String,
    pub determinant: String,
    pub ring_denominator: String,
    pub lattice_denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubvarietyRepr {
    pub cocharacter: Vec<String>,
    pub saturation_generator: Vec<String>,
    pub gamma: Vec<String>,
    pub period_valuation: String,
    pub period_torsion: String,
    pub invariants: InvariantsRepr,
    pub conditions: ConditionsRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perp_index: Option<PerpIndexRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perfect_pairing: Option<PairingCriterionRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format: String,
    pub field: FieldSection,
    pub rank: String,
    pub bound: String,
    pub component_group: GroupRepr,
    pub subvarieties: Vec<SubvarietyRepr>,
}

/// Run the full analysis: component group, subvariety enumeration within
/// the bound, invariants with their identity assertions, the seven
/// equivalence conditions, and the optional ring criteria.
pub fn analyze(
    p: &PolarizedLattice,
    bound: Option<u64>,
    ring_basis: Option<&[IntMatrix]>,
    ring_pairing: Option<&IntMatrix>,
) -> Result<AnalysisReport> {
    let bound = bound.unwrap_or_else(|| default_enumeration_bound(p));
    let field = p.field();
    let subs = find_elliptic_subvarieties(p, bound)?;
    let mut subvarieties = Vec::with_capacity(subs.len());
    for e in &subs {
        let inv = compute_invariants(p, e)?;
        let cond = check_surjectivity_conditions(&inv, p, e)?;
        let perp_index = match ring_basis {
            Some(basis) => {
                let r = perp_index_criterion(p, e, basis)?;
                Some(PerpIndexRepr {
                    index: r.index.to_string(),
                    divisible_by_saturation_index: r.divisible_by_saturation_index,
                })
            }
            None => None,
        };
        let perfect_pairing = match (ring_basis, ring_pairing) {
            (Some(basis), Some(pairing)) => {
                let r = perfect_pairing_criterion(p, e, basis, pairing)?;
                Some(PairingCriterionRepr {
                    verdict: match r.verdict {
                        PairingVerdict::Certified => "certified".into(),
                        PairingVerdict::Inconclusive => "inconclusive".into(),
                    },
                    determinant: r.determinant.to_string(),
                    ring_denominator: r.ring_denominator.to_string(),
                    lattice_denominator: r.lattice_denominator.to_string(),
                })
            }
            _ => None,
        };
        subvarieties.push(SubvarietyRepr {
            cocharacter: e.cocharacter().iter().map(|x| x.to_string()).collect(),
            saturation_generator: e
                .saturation_generator()
                .iter()
                .map(|x| x.to_string())
                .collect(),
            gamma: e.gamma_coords().iter().map(|x| x.to_string()).collect(),
            period_valuation: e.tate_period().v.to_string(),
            period_torsion: e.tate_period().t.to_string(),
            invariants: InvariantsRepr {
                saturation_index: inv.saturation_index.to_string(),
                period_ord: inv.period_ord.to_string(),
                self_pairing: inv.self_pairing.to_string(),
                min_pairing: inv.min_pairing.to_string(),
                lattice_denominator: inv.lattice_denominator.to_string(),
                variety_denominator: inv.variety_denominator.to_string(),
                congruence_number: inv.congruence_number.to_string(),
                surjective: inv.surjective,
                cokernel: GroupRepr::of(&inv.cokernel),
            },
            conditions: ConditionsRepr {
                map_surjective: cond.map_surjective,
                projector_primitive: cond.projector_primitive,
                saturation_trivial: cond.saturation_trivial,
                denominators_equal: cond.denominators_equal,
                self_pairing_maximal: cond.self_pairing_maximal,
                min_pairing_maximal: cond.min_pairing_maximal,
                congruence_matches: cond.congruence_matches,
            },
            perp_index,
            perfect_pairing,
        });
    }
    Ok(AnalysisReport {
        format: REPORT_FORMAT.to_string(),
        field: FieldSection {
            p: field.residue_char().to_string(),
            q: field.residue_size().to_string(),
            w: field.torsion_order().to_string(),
        },
        rank: p.rank().to_string(),
        bound: bound.to_string(),
        component_group: GroupRepr::of(&p.component_group()),
        subvarieties,
    })
}

impl AnalysisReport {
    /// Canonical machine format: compact JSON plus one trailing newline.
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serialization is total");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str) -> Result<AnalysisReport> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))
    }

    /// Human-readable rendering carrying the same values as the machine
    /// format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(
            &mut out,
            format!(
                "field model: p = {}, q = {}, w = {}",
                self.field.p, self.field.q, self.field.w
            ),
        );
        push(&mut out, format!("lattice rank: {}", self.rank));
        push(&mut out, format!("enumeration bound: {}", self.bound));
        push(
            &mut out,
            format!("component group: {}", self.component_group.display()),
        );
        push(
            &mut out,
            format!("elliptic subvarieties found: {}", self.subvarieties.len()),
        );
        for (idx, s) in self.subvarieties.iter().enumerate() {
            push(&mut out, format!("subvariety #{}:", idx + 1));
            push(
                &mut out,
                format!("  cocharacter: ({})", s.cocharacter.join(", ")),
            );
            push(
                &mut out,
                format!(
                    "  saturation generator: ({})",
                    s.saturation_generator.join(", ")
                ),
            );
            push(
                &mut out,
                format!("  intersection generator: ({})", s.gamma.join(", ")),
            );
            push(
                &mut out,
                format!(
                    "  Tate period: valuation {} torsion {}",
                    s.period_valuation, s.period_torsion
                ),
            );
            let i = &s.invariants;
            push(
                &mut out,
                format!(
                    "  c = {} (saturation index), ord(q) = {}, <l,l> = {}, m = {}",
                    i.saturation_index, i.period_ord, i.self_pairing, i.min_pairing
                ),
            );
            push(
                &mut out,
                format!(
                    "  n = {} (variety denominator), r = {} (lattice denominator), \
                     congruence number = {}",
                    i.variety_denominator, i.lattice_denominator, i.congruence_number
                ),
            );
            push(
                &mut out,
                format!(
                    "  component map: {}, cokernel {}",
                    if i.surjective {
                        "surjective"
                    } else {
                        "NOT surjective"
                    },
                    i.cokernel.display()
                ),
            );
            let c = &s.conditions;
            push(
                &mut out,
                format!(
                    "  equivalence conditions: map_surjective={} projector_primitive={} \
                     saturation_trivial={} denominators_equal={} self_pairing_maximal={} \
                     min_pairing_maximal={} congruence_matches={}",
                    c.map_surjective,
                    c.projector_primitive,
                    c.saturation_trivial,
                    c.denominators_equal,
                    c.self_pairing_maximal,
                    c.min_pairing_maximal,
                    c.congruence_matches
                ),
            );
            if let Some(pi) = &s.perp_index {
                push(
                    &mut out,
                    format!(
                        "  orthogonal index: {} (divisible by c: {})",
                        pi.index, pi.divisible_by_saturation_index
                    ),
                );
            }
            if let Some(pp) = &s.perfect_pairing {
                push(
                    &mut out,
                    format!(
                        "  pairing criterion: {} (determinant {}, ring denominator {}, \
                         lattice denominator {})",
                        pp.verdict, pp.determinant, pp.ring_denominator, pp.lattice_denominator
                    ),
                );
            }
        }
        out
    }
}
