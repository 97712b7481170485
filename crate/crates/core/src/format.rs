//! JSON wire format for presentations, forms and reports.
//!
//! Rationals are always emitted as exact `"a/b"` strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::homology::{FirstHomology, LinkingForm};
use crate::linalg::IntMatrix;
use crate::milnor::{FreeWord, MuInvariant};
use crate::presentation::{BraidWord, FramedLink, Framing, PresentationError};
use crate::trilinear::{OrbitInvariants, TrilinearForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid presentation: {0}")]
    Presentation(#[from] PresentationError),
    #[error("invalid trilinear form: {0}")]
    Trilinear(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FramingText {
    Text(String),
    Integer(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub framing: FramingText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidEntry {
    pub strands: usize,
    pub word: String,
}

/// On-disk presentation; every field is re-validated by [`FramedLink::new`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub components: Vec<ComponentEntry>,
    pub lk: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<BraidEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longitudes: Option<Vec<String>>,
}

impl PresentationFile {
    pub fn to_link(&self) -> Result<FramedLink, FormatError> {
        let framings = self
            .components
            .iter()
            .map(|c| match &c.framing {
                FramingText::Text(s) => s.parse::<Framing>(),
                FramingText::Integer(n) => Ok(Framing::integral(*n)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = framings.len();
        if self.lk.len() != m || self.lk.iter().any(|row| row.len() != m) {
            return Err(PresentationError::LinkingShape { expected: m }.into());
        }
        let lk = IntMatrix::from_rows(&self.lk);
        let braid = self
            .braid
            .as_ref()
            .map(|b| BraidWord::parse(b.strands, &b.word))
            .transpose()?;
        let longitudes = self
            .longitudes
            .as_ref()
            .map(|ls| {
                ls.iter()
                    .map(|s| {
                        s.parse::<FreeWord>()
                            .map_err(|e| PresentationError::Syntax(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(FramedLink::new(framings, lk, braid, longitudes)?)
    }

    pub fn from_link(link: &FramedLink) -> Self {
        let lk = link
            .linking_numbers()
            .to_rows()
            .into_iter()
            .map(|row| row.iter().map(|x| i64::try_from(x).expect("linking number fits i64")).collect())
            .collect();
        PresentationFile {
            components: link
                .framings()
                .iter()
                .map(|f| ComponentEntry {
                    framing: FramingText::Text(f.to_string()),
                })
                .collect(),
            lk,
            braid: link.braid().map(|b| BraidEntry {
                strands: b.strands(),
                word: b.to_string(),
            }),
            longitudes: link
                .longitudes()
                .map(|ls| ls.iter().map(ToString::to_string).collect()),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<FramedLink, FormatError> {
    let file: PresentationFile = serde_json::from_str(text)?;
    file.to_link()
}

pub fn write_presentation(link: &FramedLink) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_link(link)).expect("serialisable")
}

fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn homology_json(h: &FirstHomology) -> Value {
    json!({
        "betti": h.betti,
        "factors": h.factors.iter().map(big).collect::<Vec<_>>(),
    })
}

pub fn linking_form_json(f: &LinkingForm) -> Value {
    json!({
        "orders": f.orders().iter().map(big).collect::<Vec<_>>(),
        "values": f.value_strings(),
    })
}

fn triple_key(t: &[usize; 3]) -> String {
    format!("{},{},{}", t[0] + 1, t[1] + 1, t[2] + 1)
}

/// `{"m": 4, "coeffs": {"1,2,3": 1}}` with one-based increasing triples.
pub fn trilinear_json(f: &TrilinearForm) -> Value {
    let coeffs: BTreeMap<String, Value> = f
        .coeffs()
        .iter()
        .map(|(t, v)| (triple_key(t), big(v)))
        .collect();
    json!({ "m": f.m(), "coeffs": coeffs })
}

pub fn parse_trilinear(value: &Value) -> Result<TrilinearForm, FormatError> {
    let bad = |msg: &str| FormatError::Trilinear(msg.to_string());
    let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "m" && *k != "coeffs") {
        return Err(bad(&format!("unknown field `{k}`")));
    }
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("`m` must be a nonnegative integer"))? as usize;
    let mut coeffs = Vec::new();
    if let Some(map) = obj.get("coeffs") {
        let map = map.as_object().ok_or_else(|| bad("`coeffs` must be an object"))?;
        for (key, v) in map {
            let idx: Vec<usize> = key
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(&format!("bad triple `{key}`")))?;
            let [i, j, k] = idx[..] else {
                return Err(bad(&format!("bad triple `{key}`")));
            };
            if i == 0 || j == 0 || k == 0 {
                return Err(bad(&format!("indices are one-based in `{key}`")));
            }
            let c = match v {
                Value::Number(n) => n.as_i64().map(BigInt::from),
                Value::String(s) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| bad(&format!("bad coefficient for `{key}`")))?;
            coeffs.push(([i - 1, j - 1, k - 1], c));
        }
    }
    TrilinearForm::new(m, coeffs).map_err(|e| FormatError::Trilinear(e.to_string()))
}

pub fn orbit_invariants_json(inv: &OrbitInvariants) -> Value {
    json!({
        "m": inv.m,
        "content": big(&inv.content),
        "contraction_factors": inv.contraction_factors.iter().map(big).collect::<Vec<_>>(),
    })
}

pub fn mu_json(mu: &MuInvariant) -> Value {
    json!({
        "index": mu.index_string(),
        "value": big(&mu.value),
        "modulus": big(&mu.modulus),
    })
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(big).collect()))
            .collect(),
    )
}
