//! JSON schemas for every file format the CLI reads and writes: rings,
//! matrices, factorizations, presentations, spectra, and classification
//! verdicts. Polynomials travel as grammar strings.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::mf::MatrixFactorization;
use crate::modules::{
    Classification, Freeness, ModulePresentation, PrimeDecl, PuncturedClass, SpectrumDeclaration,
};
use crate::parse::poly_parse;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::CoeffField;
use crate::tower::RingDescriptor;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub inverted: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl RingJson {
    pub fn from_descriptor(d: &RingDescriptor) -> Self {
        RingJson {
            vars: d.base_var_names().to_vec(),
            relations: d.relations().iter().map(|p| p.to_string()).collect(),
            inverted: d.inverted_elems().iter().map(|p| p.to_string()).collect(),
            field: Some(d.field().name().to_string()),
        }
    }

    pub fn to_descriptor(&self, default_field: CoeffField) -> Result<RingDescriptor> {
        let field = match &self.field {
            Some(name) => CoeffField::parse_name(name)
                .ok_or_else(|| Error::Json(format!("unknown field `{name}`")))?,
            None => default_field,
        };
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let base = RingDescriptor::polynomial(&names, field);
        let rels = self
            .relations
            .iter()
            .map(|s| poly_parse(s, base.ring()))
            .collect::<Result<Vec<_>>>()?;
        let quotient = base.make_quotient(&rels)?;
        let invs = self
            .inverted
            .iter()
            .map(|s| poly_parse(s, base.ring()))
            .collect::<Result<Vec<_>>>()?;
        quotient.localize(&invs)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self, ring: &PolyRing) -> Result<PolyMatrix> {
        if self.entries.len() != self.rows
            || self.entries.iter().any(|r| r.len() != self.cols)
        {
            return Err(Error::Json("matrix entry shape disagrees with rows/cols".into()));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| poly_parse(s, ring))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    pub f: String,
    pub ring: RingJson,
}

impl FactorizationJson {
    pub fn from_mf(mf: &MatrixFactorization) -> Self {
        FactorizationJson {
            a: MatrixJson::from_matrix(&mf.a),
            b: MatrixJson::from_matrix(&mf.b),
            f: mf.f.to_string(),
            ring: RingJson::from_descriptor(&mf.ring),
        }
    }

    pub fn to_mf(&self, default_field: CoeffField) -> Result<MatrixFactorization> {
        let ring = self.ring.to_descriptor(default_field)?;
        let a = self.a.to_matrix(ring.ring())?;
        let b = self.b.to_matrix(ring.ring())?;
        let f = poly_parse(&self.f, ring.ring())?;
        MatrixFactorization::new(a, b, f, ring)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub matrix: MatrixJson,
    pub ring: RingJson,
}

impl PresentationJson {
    pub fn from_presentation(p: &ModulePresentation) -> Self {
        PresentationJson {
            matrix: MatrixJson::from_matrix(p.matrix()),
            ring: RingJson::from_descriptor(p.ring()),
        }
    }

    pub fn to_presentation(&self, default_field: CoeffField) -> Result<ModulePresentation> {
        let ring = self.ring.to_descriptor(default_field)?;
        let m = self.matrix.to_matrix(ring.ring())?;
        ModulePresentation::new(m, ring)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimeJson {
    pub name: String,
    pub gens: Vec<String>,
    #[serde(default)]
    pub invert: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub primes: Vec<PrimeJson>,
    #[serde(default)]
    pub maximal: Vec<String>,
}

impl SpectrumJson {
    pub fn from_spectrum(s: &SpectrumDeclaration) -> Self {
        SpectrumJson {
            primes: s
                .primes
                .iter()
                .map(|p| PrimeJson {
                    name: p.name.clone(),
                    gens: p.gens.iter().map(|g| g.to_string()).collect(),
                    invert: p.invert.iter().map(|g| g.to_string()).collect(),
                })
                .collect(),
            maximal: s.maximal.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_spectrum(&self, ring: &PolyRing) -> Result<SpectrumDeclaration> {
        let parse_all = |v: &[String]| -> Result<Vec<Polynomial>> {
            v.iter().map(|s| poly_parse(s, ring)).collect()
        };
        Ok(SpectrumDeclaration {
            primes: self
                .primes
                .iter()
                .map(|p| {
                    Ok(PrimeDecl {
                        name: p.name.clone(),
                        gens: parse_all(&p.gens)?,
                        invert: parse_all(&p.invert)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            maximal: parse_all(&self.maximal)?,
        })
    }
}

/// Classification verdict as a flat JSON object:
/// `{"<prime>": "free"|"not_free", ..., "verdict": "CM0"|"CM_plus"}`.
pub fn classification_json(c: &Classification) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (name, f) in &c.per_prime {
        let s = match f {
            Freeness::Free(_) => "free",
            Freeness::NotFree => "not_free",
        };
        map.insert(name.clone(), serde_json::Value::String(s.to_string()));
    }
    map.insert(
        "verdict".into(),
        serde_json::Value::String(
            match c.verdict {
                PuncturedClass::Cm0 => "CM0",
                PuncturedClass::CmPlus => "CM_plus",
            }
            .to_string(),
        ),
    );
    serde_json::Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_p2qr;

    #[test]
    fn factorization_roundtrip() {
        let mf = gen_p2qr(2, CoeffField::Rational).unwrap();
        let json = FactorizationJson::from_mf(&mf);
        let text = serde_json::to_string(&json).unwrap();
        let back: FactorizationJson = serde_json::from_str(&text).unwrap();
        let mf2 = back.to_mf(CoeffField::Rational).unwrap();
        assert_eq!(mf2.a, mf.a);
        assert_eq!(mf2.b, mf.b);
        assert_eq!(mf2.f, mf.f);
        assert!(mf2.verify().unwrap().ok);
    }

    #[test]
    fn ring_roundtrip_with_localization() {
        let s = RingDescriptor::polynomial(&["p", "q", "r"], CoeffField::Rational);
        let r = s
            .make_quotient(&[poly_parse("p^2*q*r", s.ring()).unwrap()])
            .unwrap();
        let loc = r
            .localize(&[poly_parse("q", r.ring()).unwrap()])
            .unwrap();
        let json = RingJson::from_descriptor(&loc);
        assert_eq!(json.vars, ["p", "q", "r"]);
        assert_eq!(json.inverted, ["q"]);
        let back = json.to_descriptor(CoeffField::Rational).unwrap();
        assert_eq!(back, loc);
    }

    #[test]
    fn matrix_shape_validation() {
        let bad = MatrixJson {
            rows: 2,
            cols: 2,
            entries: vec![vec!["x".into()]],
        };
        let ring = PolyRing::new(&["x"], CoeffField::Rational);
        assert!(bad.to_matrix(&ring).is_err());
    }
}
