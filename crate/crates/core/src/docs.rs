//! JSON documents for quivers with potential, coefficients, series, symmetric
//! polynomials and admissibility certificates. Rationals are written as strings and
//! exponents of `v = q^{1/2}` as integers.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::DimVector;
use crate::plethystic::AdmissibleCertificate;
use crate::potential::{CyclicWord, Potential};
use crate::qcoeff::{LaurentQ, QRational};
use crate::quiver::{Arrow, Quiver};
use crate::shuffle::SymPoly;
use crate::torus::{Basis, Ray, TorusSeries};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    potential: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: String,
    from: String,
    to: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    cycle: Vec<String>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn at(place: String) -> impl FnOnce(Error) -> Error {
    move |e| Error::Parse(format!("{place}: {e}"))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let r = BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("`{s}` is not a rational")))?;
    Ok(r)
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reads a quiver document, optionally with a potential.
pub fn parse_quiver(text: &str) -> Result<(Quiver, Potential)> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(json_error)?;
    let arrows = doc
        .arrows
        .iter()
        .map(|a| Arrow::new(a.name.clone(), a.from.clone(), a.to.clone()))
        .collect();
    let q = Quiver::new(doc.vertices, arrows).map_err(at("quiver".into()))?;
    let mut terms = Vec::with_capacity(doc.potential.len());
    for (k, t) in doc.potential.iter().enumerate() {
        let c = parse_rational(&t.coeff).map_err(at(format!("potential[{k}].coeff")))?;
        let word = match t.cycle.as_slice() {
            [single] if single.starts_with('(') && single.ends_with(')') => {
                CyclicWord::vertex(&single[1..single.len() - 1])
            }
            names => CyclicWord::path(names.iter().cloned()),
        };
        word.check(&q).map_err(at(format!("potential[{k}].cycle")))?;
        terms.push((c, word));
    }
    let w = Potential::new(&q, terms)?;
    Ok((q, w))
}

/// Canonical text of a quiver with potential.
pub fn serialize_quiver(q: &Quiver, w: &Potential) -> String {
    let doc = QuiverDoc {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowDoc {
                name: a.name.clone(),
                from: a.tail.clone(),
                to: a.head.clone(),
            })
            .collect(),
        potential: w
            .terms()
            .map(|(word, c)| TermDoc {
                coeff: rational_string(c),
                cycle: match word {
                    CyclicWord::Vertex(v) => vec![format!("({v})")],
                    CyclicWord::Path(p) => p.clone(),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QRationalDoc {
    num: Vec<(i64, String)>,
    #[serde(default)]
    den: BTreeMap<String, u32>,
}

fn laurent_terms(p: &LaurentQ) -> Vec<(i64, String)> {
    p.terms().map(|(e, c)| (e, rational_string(c))).collect()
}

fn parse_laurent(terms: &[(i64, String)]) -> Result<LaurentQ> {
    let parsed: Result<Vec<(i64, BigRational)>> = terms
        .iter()
        .map(|(e, c)| Ok((*e, parse_rational(c)?)))
        .collect();
    Ok(LaurentQ::from_terms(parsed?))
}

fn qrational_doc(c: &QRational) -> QRationalDoc {
    QRationalDoc {
        num: laurent_terms(c.num()),
        den: c.den().iter().map(|(k, m)| (k.to_string(), *m)).collect(),
    }
}

fn qrational_from(doc: &QRationalDoc) -> Result<QRational> {
    let num = parse_laurent(&doc.num)?;
    let mut den = BTreeMap::new();
    for (k, m) in &doc.den {
        let k: u32 = k
            .parse()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse(format!("denominator key `{k}` is not a positive integer")))?;
        den.insert(k, *m);
    }
    Ok(QRational::new(num, den))
}

pub fn qrational_to_json(c: &QRational) -> Value {
    serde_json::to_value(qrational_doc(c)).expect("serializable")
}

pub fn qrational_from_json(v: &Value) -> Result<QRational> {
    let doc: QRationalDoc = serde_json::from_value(v.clone()).map_err(json_error)?;
    qrational_from(&doc)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    basis: String,
    truncation: u32,
    coeffs: Vec<SeriesTermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesTermDoc {
    gamma: Vec<i64>,
    coeff: QRationalDoc,
}

pub fn series_to_json(s: &TorusSeries) -> Value {
    let doc = SeriesDoc {
        basis: s.basis().name().to_string(),
        truncation: s.truncation(),
        coeffs: s
            .coeffs()
            .iter()
            .map(|(g, c)| SeriesTermDoc {
                gamma: g.entries().to_vec(),
                coeff: qrational_doc(c),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Reads a series document over `quiver`. With `truncation` given, the document must
/// reach at least that order and is cut down to it.
pub fn ingest_series(text: &str, quiver: Arc<Quiver>, truncation: Option<u32>) -> Result<TorusSeries> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(json_error)?;
    series_from_doc(doc, quiver, truncation)
}

pub fn series_from_json(v: &Value, quiver: Arc<Quiver>, truncation: Option<u32>) -> Result<TorusSeries> {
    let doc: SeriesDoc = serde_json::from_value(v.clone()).map_err(json_error)?;
    series_from_doc(doc, quiver, truncation)
}

fn series_from_doc(doc: SeriesDoc, quiver: Arc<Quiver>, truncation: Option<u32>) -> Result<TorusSeries> {
    let basis = Basis::parse(&doc.basis)?;
    if let Some(t) = truncation {
        if t > doc.truncation {
            return Err(Error::TruncationMismatch(t, doc.truncation));
        }
    }
    let mut terms = Vec::with_capacity(doc.coeffs.len());
    for (k, t) in doc.coeffs.iter().enumerate() {
        let g = DimVector(t.gamma.clone());
        if g.total() > doc.truncation as i64 {
            return Err(Error::Parse(format!("coeffs[{k}]: degree exceeds the truncation")));
        }
        let c = qrational_from(&t.coeff).map_err(at(format!("coeffs[{k}]")))?;
        terms.push((g, c));
    }
    let s = TorusSeries::from_coeffs(quiver, basis, doc.truncation, terms)?;
    Ok(match truncation {
        Some(t) => s.truncate(t),
        None => s,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymPolyDoc {
    gamma: Vec<i64>,
    terms: Vec<(Vec<u32>, String)>,
}

/// `{"gamma": [...], "terms": [[exponents, "c"], ...]}` with one entry per orbit.
pub fn sympoly_to_json(p: &SymPoly) -> Value {
    let doc = SymPolyDoc {
        gamma: p.gamma().entries().to_vec(),
        terms: p.terms().iter().map(|(e, c)| (e.clone(), c.to_string())).collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn sympoly_from_json(text: &str) -> Result<SymPoly> {
    let doc: SymPolyDoc = serde_json::from_str(text).map_err(json_error)?;
    let gamma = DimVector(doc.gamma);
    if !gamma.is_effective() {
        return Err(Error::NegativeDimension(format!("{gamma}")));
    }
    let mut entries = Vec::with_capacity(doc.terms.len());
    for (k, (e, c)) in doc.terms.into_iter().enumerate() {
        let c = BigInt::from_str(&c).map_err(|_| Error::Parse(format!("terms[{k}]: `{c}` is not an integer")))?;
        entries.push((e, c));
    }
    SymPoly::from_orbits(gamma, entries)
}

fn laurent_entries(m: &BTreeMap<DimVector, LaurentQ>) -> Value {
    Value::Array(
        m.iter()
            .map(|(g, p)| json!({"gamma": g.entries(), "laurent": laurent_terms(p)}))
            .collect(),
    )
}

pub fn certificate_to_json(c: &AdmissibleCertificate) -> Value {
    json!({
        "f": laurent_entries(&c.f),
        "delta": c.delta.iter().map(|((n, m), d)| json!([n, m, d.to_string()])).collect::<Vec<_>>(),
        "omega": laurent_entries(&c.omega),
    })
}

/// Ordered ray factors of a Harder–Narasimhan factorization.
pub fn factorization_to_json(factors: &[(Ray, TorusSeries)], residual_one: bool) -> Value {
    json!({
        "factors": factors
            .iter()
            .map(|(r, s)| json!({"ray": r.primitive().entries(), "series": series_to_json(s)}))
            .collect::<Vec<_>>(),
        "residual_one": residual_one,
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
