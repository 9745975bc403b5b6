//! On-disk lattice description format.
//!
//! Documents are canonical JSON: UTF-8, fixed key order, and every integer
//! written as a decimal string so no consumer needs 64-bit assumptions.
//! Parsing reports the offending field path; semantic validation (torsion
//! exponents in range, shape mismatches) does the same.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::LocalFieldModel;
use crate::lattice::{MultiplicativeLattice, PolarizedLattice, RiemannForm};
use crate::matrix::IntMatrix;

pub const DOCUMENT_FORMAT: &str = "toric-quotients/lattice-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSection {
    pub p: String,
    pub q: String,
    pub w: String,
}

/// A lattice description: field parameters, rank, the coordinate matrix as
/// (valuation, torsion) pairs, the polarization matrix, and optionally a
/// basis of an endomorphism subring with a pairing matrix against the
/// lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub format: String,
    pub field: FieldSection,
    pub rank: String,
    /// coords[i][j] = [v, t]: the i-th torus coordinate of generator j.
    pub coords: Vec<Vec<[String; 2]>>,
    /// polarization[i][j]: row i of the form matrix (column j is the
    /// character attached to generator j).
    pub polarization: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endomorphisms: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endo_pairing: Option<Vec<Vec<String>>>,
}

fn parse_u64(s: &str, path: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::validation(path, format!("expected a decimal natural number, got {s:?}")))
}

fn parse_i64(s: &str, path: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| Error::validation(path, format!("expected a decimal integer, got {s:?}")))
}

fn parse_bigint(s: &str, path: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::validation(path, format!("expected a decimal integer, got {s:?}")))
}

impl LatticeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: LatticeDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            Error::parse(e.path().to_string(), e.inner().to_string())
        })?;
        if doc.format != DOCUMENT_FORMAT {
            return Err(Error::validation(
                "format",
                format!("expected {DOCUMENT_FORMAT:?}, got {:?}", doc.format),
            ));
        }
        Ok(doc)
    }

    /// Canonical serialization: fixed key order, no whitespace surprises,
    /// one trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization is total");
        s.push('\n');
        s
    }

    pub fn field_model(&self) -> Result<LocalFieldModel> {
        LocalFieldModel::new(
            parse_u64(&self.field.p, "field.p")?,
            parse_u64(&self.field.q, "field.q")?,
            parse_u64(&self.field.w, "field.w")?,
        )
    }

    /// Validate and build the polarized lattice the document describes.
    pub fn to_polarized_lattice(&self) -> Result<PolarizedLattice> {
        let field = self.field_model()?;
        let w = field.torsion_order();
        let g = parse_u64(&self.rank, "rank")? as usize;
        if g == 0 {
            return Err(Error::validation("rank", "rank must be >= 1"));
        }
        if self.coords.len() != g {
            return Err(Error::validation(
                "coords",
                format!("expected {g} rows, got {}", self.coords.len()),
            ));
        }
        let mut units = Vec::with_capacity(g * g);
        for (i, row) in self.coords.iter().enumerate() {
            if row.len() != g {
                return Err(Error::validation(
                    format!("coords[{i}]"),
                    format!("expected {g} columns, got {}", row.len()),
                ));
            }
            for (j, pair) in row.iter().enumerate() {
                let v = parse_i64(&pair[0], &format!("coords[{i}][{j}].v"))?;
                let t_path = format!("coords[{i}][{j}].t");
                let t = parse_u64(&pair[1], &t_path)?;
                if t >= w {
                    return Err(Error::validation(
                        t_path,
                        format!("torsion exponent {t} must lie in [0, {w})"),
                    ));
                }
                units.push(field.unit(v, t as i64));
            }
        }
        let lattice = MultiplicativeLattice::new(field, g, units)?;
        let h = parse_matrix(&self.polarization, g, g, "polarization")?;
        PolarizedLattice::new(lattice, RiemannForm::new(h))
    }

    /// The optional endomorphism-ring data: a module basis and, if present,
    /// the pairing matrix of the ring against the lattice.
    pub fn endomorphism_data(&self) -> Result<(Option<Vec<IntMatrix>>, Option<IntMatrix>)> {
        let g = parse_u64(&self.rank, "rank")? as usize;
        let endos = match &self.endomorphisms {
            None => None,
            Some(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (k, rows) in list.iter().enumerate() {
                    out.push(parse_matrix(rows, g, g, &format!("endomorphisms[{k}]"))?);
                }
                Some(out)
            }
        };
        let pairing = match &self.endo_pairing {
            None => None,
            Some(rows) => {
                let k = rows.len();
                Some(parse_matrix(rows, k, g, "endo_pairing")?)
            }
        };
        if pairing.is_some() && endos.is_none() {
            return Err(Error::validation(
                "endo_pairing",
                "a pairing matrix requires endomorphism generators",
            ));
        }
        Ok((endos, pairing))
    }

    /// Describe an in-memory lattice as a document.
    pub fn describe(p: &PolarizedLattice) -> LatticeDocument {
        let g = p.rank();
        let field = p.field();
        let coords = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        let u = p.lattice().coord(i, j);
                        [u.v.to_string(), u.t.to_string()]
                    })
                    .collect()
            })
            .collect();
        let polarization = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| p.form().matrix().at(i, j).to_string())
                    .collect()
            })
            .collect();
        LatticeDocument {
            format: DOCUMENT_FORMAT.to_string(),
            field: FieldSection {
                p: field.residue_char().to_string(),
                q: field.residue_size().to_string(),
                w: field.torsion_order().to_string(),
            },
            rank: g.to_string(),
            coords,
            polarization,
            endomorphisms: None,
            endo_pairing: None,
        }
    }
}

fn parse_matrix(rows: &[Vec<String>], r: usize, c: usize, path: &str) -> Result<IntMatrix> {
    if rows.len() != r {
        return Err(Error::validation(
            path,
            format!("expected {r} rows, got {}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::validation(
                format!("{path}[{i}]"),
                format!("expected {c} entries, got {}", row.len()),
            ));
        }
        for (j, s) in row.iter().enumerate() {
            entries.push(parse_bigint(s, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Ok(IntMatrix::from_entries(r, c, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::build_glued_lattice;

    fn sample_document() -> LatticeDocument {
        let field = LocalFieldModel::new(5, 5, 4).unwrap();
        let p = build_glued_lattice(field.unit(1, 0), field.unit(1, 0), 2, &field).unwrap();
        LatticeDocument::describe(&p)
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let doc = sample_document();
        let json = doc.to_json();
        let parsed = LatticeDocument::from_json(&json).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn describes_and_rebuilds_the_same_lattice() {
        let doc = sample_document();
        let p = doc.to_polarized_lattice().unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.pairing(0, 1), p.field().unit(0, 2));
    }

    #[test]
    fn out_of_range_torsion_is_located() {
        let mut doc = sample_document();
        doc.coords[0][1] = ["0".into(), "9".into()];
        let err = doc.to_polarized_lattice().unwrap_err();
        match err {
            Error::Validation { path, .. } => assert_eq!(path, "coords[0][1].t"),
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let err = LatticeDocument::from_json("{\"format\": 3}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn wrong_format_tag_is_rejected() {
        let doc = sample_document();
        let json = doc.to_json().replace("lattice-v1", "lattice-v9");
        assert!(LatticeDocument::from_json(&json).is_err());
    }

    #[test]
    fn non_numeric_entry_is_located() {
        let mut doc = sample_document();
        doc.polarization[1][0] = "x".into();
        let err = doc.to_polarized_lattice().unwrap_err();
        match err {
            Error::Validation { path, .. } => assert_eq!(path, "polarization[1][0]"),
            other => panic!("expected validation error, got {other}"),
        }
    }
}
