//! Surgery-equivalence verdicts assembled from the invariants.
//!
//! `NotEquivalent` always cites an invariant whose values differ;
//! `Equivalent` is only emitted in classified cases, otherwise `Unknown`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::form_iso::{cyclic_class, isomorphic, IsoStatus, DEFAULT_BOUND};
use crate::format::{homology_json, linking_form_json, mu_json, orbit_invariants_json, trilinear_json};
use crate::homology::{first_homology, linking_form, FirstHomology, LinkingForm};
use crate::milnor::{MilnorData, MilnorError};
use crate::numtheory::{gcd, is_square_unit, mul_mod};
use crate::presentation::FramedLink;
use crate::trilinear::{equivalent, TrilinearError, TrilinearForm, DEFAULT_DEPTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Equivalent => "Equivalent",
            Status::NotEquivalent => "NotEquivalent",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Integral2,
    Rational2,
    KToStandard(u32),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Integral2 => write!(f, "integral2"),
            Relation::Rational2 => write!(f, "rational2"),
            Relation::KToStandard(k) => write!(f, "k={k}"),
        }
    }
}

impl std::str::FromStr for Relation {
    type Err = VerdictError;

    /// `integral2`, `rational2` or `k=K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "integral2" => Ok(Relation::Integral2),
            "rational2" => Ok(Relation::Rational2),
            other => other
                .strip_prefix("k=")
                .and_then(|k| k.parse::<u32>().ok())
                .map(Relation::KToStandard)
                .ok_or_else(|| VerdictError::UnknownRelation(other.to_string())),
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The deciding case, the invariant consulted and its value on each input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub tag: String,
    pub invariant: String,
    pub a: Value,
    pub b: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub relation: Relation,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(status: Status, relation: Relation, tag: &str, invariant: &str, a: Value, b: Value) -> Self {
        Verdict {
            status,
            relation,
            certificate: Certificate {
                tag: tag.to_string(),
                invariant: invariant.to_string(),
                a,
                b,
            },
            notes: Vec::new(),
        }
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid lens parameters: {0}")]
    InvalidLensParameters(String),
    #[error("unknown relation `{0}` (expected integral2, rational2 or k=K)")]
    UnknownRelation(String),
}

/// Search bounds forwarded to the isomorphism and orbit deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub bound: u64,
    pub depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bound: DEFAULT_BOUND,
            depth: DEFAULT_DEPTH,
        }
    }
}

/// H₁ and the presentation matrix of the integral expansion.
fn integral_h1(link: &FramedLink) -> (FirstHomology, crate::linalg::IntMatrix) {
    let v = link.expand_to_integral().presentation_matrix();
    (first_homology(&v), v)
}

fn h1_value(h: &FirstHomology) -> Value {
    let mut v = homology_json(h);
    v["display"] = json!(h.to_string());
    v
}

fn form_value(f: &LinkingForm) -> Value {
    let mut v = linking_form_json(f);
    if let Ok(a) = cyclic_class(f) {
        v["class"] = json!(a.to_string());
    }
    v
}

fn triple_form(link: &FramedLink) -> Result<TrilinearForm, TrilinearError> {
    TrilinearForm::from_mu_triple(link)
}

/// Compares triple cup product forms, or `None` when either is not computable.
fn compare_triple_forms(
    a: &FramedLink,
    b: &FramedLink,
    relation: Relation,
    opts: &Options,
) -> Result<Verdict, String> {
    let fa = triple_form(a).map_err(|e| format!("first input: {e}"))?;
    let fb = triple_form(b).map_err(|e| format!("second input: {e}"))?;
    let m = fa.m();
    let ans = equivalent(&fa, &fb, opts.depth);
    let (tag, invariant, va, vb) = match m {
        3 => ("triple-form-rank3", "|a123|", json!(fa.coeff(0, 1, 2).magnitude().to_string()), json!(fb.coeff(0, 1, 2).magnitude().to_string())),
        4 => ("triple-form-content", "content", json!(fa.content().to_string()), json!(fb.content().to_string())),
        _ => (
            "triple-form-orbit",
            "orbit invariants",
            orbit_invariants_json(&fa.orbit_invariants()),
            orbit_invariants_json(&fb.orbit_invariants()),
        ),
    };
    let status = match ans.status {
        IsoStatus::Yes => Status::Equivalent,
        IsoStatus::No => Status::NotEquivalent,
        IsoStatus::Unknown => Status::Unknown,
    };
    let mut v = Verdict::new(status, relation, tag, invariant, va, vb)
        .note(format!("triple cup product forms: {} vs {}", trilinear_json(&fa), trilinear_json(&fb)));
    if let Some(r) = ans.reason {
        v = v.note(r);
    }
    if let Some(w) = ans.witness {
        v = v.note(format!("GL witness: {w}"));
    }
    Ok(v)
}

/// Integral 2-surgery equivalence.
pub fn compare_integral_2(a: &FramedLink, b: &FramedLink, opts: &Options) -> Verdict {
    let rel = Relation::Integral2;
    let (ha, va) = integral_h1(a);
    let (hb, vb) = integral_h1(b);
    if ha != hb {
        return Verdict::new(Status::NotEquivalent, rel, "first-homology", "H1", h1_value(&ha), h1_value(&hb));
    }
    if ha.is_torsion_free() {
        if ha.betti < 3 {
            return Verdict::new(Status::Equivalent, rel, "m<3", "H1", h1_value(&ha), h1_value(&hb))
                .note("torsion-free H1 of rank below 3: the triple cup product form vanishes");
        }
        return match compare_triple_forms(a, b, rel, opts) {
            Ok(v) => v,
            Err(why) => Verdict::new(Status::Unknown, rel, "triple-form-unavailable", "H1", h1_value(&ha), h1_value(&hb))
                .note(format!("triple cup product form not computable: {why}")),
        };
    }
    let la = linking_form(&va).expect("presentation matrix is symmetric");
    let lb = linking_form(&vb).expect("presentation matrix is symmetric");
    let iso = isomorphic(&la, &lb, opts.bound);
    let classified = ha.factors.len() == 1 && ha.betti <= 1;
    let tag = match (classified, ha.betti) {
        (true, 0) => "cyclic-linking-form",
        (true, _) => "z-times-cyclic-linking-form",
        (false, _) => "linking-form",
    };
    let mut v = match iso.status {
        IsoStatus::No => Verdict::new(Status::NotEquivalent, rel, tag, "linking form", form_value(&la), form_value(&lb)),
        IsoStatus::Yes if classified => {
            Verdict::new(Status::Equivalent, rel, tag, "linking form", form_value(&la), form_value(&lb))
        }
        IsoStatus::Yes => Verdict::new(Status::Unknown, rel, tag, "linking form", form_value(&la), form_value(&lb))
            .note("linking forms agree but torsion triple cup products are not computed for this H1"),
        IsoStatus::Unknown => Verdict::new(Status::Unknown, rel, tag, "linking form", form_value(&la), form_value(&lb)),
    };
    if let Some(r) = iso.reason {
        v = v.note(r);
    }
    if let Some(w) = iso.witness {
        v = v.note(format!("linking form witness: {w}"));
    }
    v
}

/// Rational 2-surgery equivalence.
pub fn compare_rational_2(a: &FramedLink, b: &FramedLink, opts: &Options) -> Verdict {
    let rel = Relation::Rational2;
    let (ha, _) = integral_h1(a);
    let (hb, _) = integral_h1(b);
    if ha.betti != hb.betti {
        return Verdict::new(Status::NotEquivalent, rel, "betti", "b1", json!(ha.betti), json!(hb.betti));
    }
    if ha.betti < 3 {
        return Verdict::new(Status::Equivalent, rel, "b1<3", "b1", json!(ha.betti), json!(hb.betti));
    }
    match compare_triple_forms(a, b, rel, opts) {
        Ok(v) => v,
        Err(why) => Verdict::new(Status::Unknown, rel, "triple-form-unavailable", "b1", json!(ha.betti), json!(hb.betti))
            .note(format!("triple cup product form not computable: {why}")),
    }
}

fn check_standard_preconditions(link: &FramedLink, k: u32) -> Result<(), VerdictError> {
    let fail = |s: String| Err(VerdictError::PreconditionViolated(s));
    if k < 2 {
        return fail(format!("k must be at least 2, got {k}"));
    }
    for (i, f) in link.framings().iter().enumerate() {
        if *f.p() != BigInt::from(0) || *f.q() != BigInt::from(1) {
            return fail(format!("component {} has framing {f}, expected 0", i + 1));
        }
    }
    let lk = link.linking_numbers();
    let m = link.components();
    for i in 0..m {
        for j in i + 1..m {
            if lk[(i, j)] != BigInt::from(0) {
                return fail(format!("lk({}, {}) = {} is nonzero", i + 1, j + 1, lk[(i, j)]));
            }
        }
    }
    if link.braid().is_none() && link.longitudes().is_none() {
        return fail("no braid or longitude data".to_string());
    }
    Ok(())
}

/// k-surgery equivalence to `#ᵐ S¹×S²`: decided by μ̄ of length below `2k`.
pub fn k_equiv_to_standard(link: &FramedLink, k: u32) -> Result<Verdict, VerdictError> {
    check_standard_preconditions(link, k)?;
    let rel = Relation::KToStandard(k);
    let max_length = 2 * k as usize - 1;
    let mut data = MilnorData::new(link, max_length).map_err(|e: MilnorError| VerdictError::PreconditionViolated(e.to_string()))?;
    let standard = json!({ "components": link.components(), "first_nonvanishing": Value::Null });
    Ok(match data.first_nonvanishing(max_length) {
        None => Verdict::new(
            Status::Equivalent,
            rel,
            "mu-bar-vanishing",
            "first nonvanishing mu-bar",
            json!({ "components": link.components(), "first_nonvanishing": Value::Null, "checked_up_to": max_length }),
            standard,
        ),
        Some(mu) => Verdict::new(
            Status::NotEquivalent,
            rel,
            "mu-bar-nonvanishing",
            "first nonvanishing mu-bar",
            json!({ "components": link.components(), "first_nonvanishing": mu_json(&mu) }),
            standard,
        ),
    })
}

/// k-surgery equivalence of two links through the standard manifold.
pub fn compare_k(a: &FramedLink, b: &FramedLink, k: u32) -> Result<Verdict, VerdictError> {
    let rel = Relation::KToStandard(k);
    let va = k_equiv_to_standard(a, k)?;
    let vb = k_equiv_to_standard(b, k)?;
    if a.components() != b.components() {
        return Ok(Verdict::new(
            Status::NotEquivalent,
            rel,
            "first-homology",
            "b1",
            json!(a.components()),
            json!(b.components()),
        ));
    }
    let (sa, sb) = (va.status, vb.status);
    let status = match (sa, sb) {
        (Status::Equivalent, Status::Equivalent) => Status::Equivalent,
        (Status::Equivalent, Status::NotEquivalent) | (Status::NotEquivalent, Status::Equivalent) => {
            Status::NotEquivalent
        }
        _ => Status::Unknown,
    };
    let tag = match status {
        Status::Equivalent => "both-standard",
        Status::NotEquivalent => "one-standard",
        Status::Unknown => "neither-standard",
    };
    let mut v = Verdict::new(status, rel, tag, "first nonvanishing mu-bar", va.certificate.a, vb.certificate.a);
    if status == Status::Unknown {
        v = v.note("neither input is k-surgery equivalent to the standard manifold; no further invariant is computed");
    }
    Ok(v)
}

/// Dispatches on the relation; only the `k=K` relations have preconditions.
pub fn compare(a: &FramedLink, b: &FramedLink, relation: Relation, opts: &Options) -> Result<Verdict, VerdictError> {
    match relation {
        Relation::Integral2 => Ok(compare_integral_2(a, b, opts)),
        Relation::Rational2 => Ok(compare_rational_2(a, b, opts)),
        Relation::KToStandard(k) => compare_k(a, b, k),
    }
}

/// `L(n, q)` against `L(n′, q′)` under integral 2-surgery equivalence.
pub fn lens_compare(n: i64, q: i64, n2: i64, q2: i64) -> Result<Verdict, VerdictError> {
    for (nn, qq) in [(n, q), (n2, q2)] {
        if nn < 2 {
            return Err(VerdictError::InvalidLensParameters(format!("n = {nn} must be at least 2")));
        }
        if gcd(qq.unsigned_abs(), nn as u64) != 1 {
            return Err(VerdictError::InvalidLensParameters(format!("gcd({qq}, {nn}) != 1")));
        }
    }
    let rel = Relation::Integral2;
    let lens = |nn: i64, qq: i64| json!({ "n": nn, "q": qq });
    if n != n2 {
        return Ok(Verdict::new(
            Status::NotEquivalent,
            rel,
            "first-homology",
            "H1",
            json!(format!("Z/{n}")),
            json!(format!("Z/{n2}")),
        ));
    }
    let nu = n as u64;
    let product = mul_mod(q.rem_euclid(n) as u64, q2.rem_euclid(n) as u64, nu);
    let square = is_square_unit(product, nu);
    let status = if square { Status::Equivalent } else { Status::NotEquivalent };
    Ok(Verdict::new(status, rel, "lens-unit-square", "q (linking form class)", lens(n, q), lens(n2, q2)).note(format!(
        "q*q' = {product} mod {n} is {}a square of a unit",
        if square { "" } else { "not " }
    )))
}
