//! JSON reports shared by the command-line tool and the C interface.

use serde_json::{json, Value};

use crate::form_iso::IsoAnswer;
use crate::format::{
    homology_json, linking_form_json, matrix_json, mu_json, orbit_invariants_json, trilinear_json,
};
use crate::form_iso::cyclic_class;
use crate::homology::{first_homology, linking_form};
use crate::milnor::MilnorData;
use crate::presentation::FramedLink;
use crate::trilinear::TrilinearForm;
use crate::verdict::Verdict;

/// H₁, linking form, triple cup product form (when computable) and the
/// nonzero μ̄ table up to `max_length` (when longitude data is present).
pub fn invariants_report(link: &FramedLink, max_length: usize) -> Value {
    let expanded = link.expand_to_integral();
    let v = expanded.presentation_matrix();
    let h1 = first_homology(&v);
    let form = linking_form(&v).expect("presentation matrix is symmetric");
    let mut lf = linking_form_json(&form);
    if let Ok(a) = cyclic_class(&form) {
        lf["class"] = json!(a.to_string());
    }
    let mut report = json!({
        "components": link.components(),
        "integral_components": expanded.components(),
        "h1": homology_json(&h1),
        "h1_display": h1.to_string(),
        "linking_form": lf,
    });
    match TrilinearForm::from_mu_triple(link) {
        Ok(f) => {
            report["trilinear"] = trilinear_json(&f);
            report["orbit_invariants"] = orbit_invariants_json(&f.orbit_invariants());
        }
        Err(e) => {
            report["trilinear"] = Value::Null;
            report["trilinear_note"] = json!(e.to_string());
        }
    }
    match MilnorData::new(link, max_length) {
        Ok(mut data) => {
            let first = data.first_nonvanishing(max_length);
            let table: Vec<Value> = data.nonzero_table(max_length).iter().map(mu_json).collect();
            report["mu_bar"] = json!({
                "max_length": max_length,
                "first_nonvanishing": first.as_ref().map_or(Value::Null, mu_json),
                "nonzero": table,
            });
        }
        Err(e) => {
            report["mu_bar"] = Value::Null;
            report["mu_bar_note"] = json!(e.to_string());
        }
    }
    report
}

/// Full verdict, or only status, relation and the certificate's tag and
/// invariant name.
pub fn verdict_report(v: &Verdict, full: bool) -> Value {
    if full {
        return v.to_json();
    }
    json!({
        "status": v.status,
        "relation": v.relation,
        "certificate": {
            "tag": v.certificate.tag,
            "invariant": v.certificate.invariant,
        },
    })
}

pub fn iso_report(ans: &IsoAnswer) -> Value {
    json!({
        "status": ans.status.to_string(),
        "witness": ans.witness.as_ref().map_or(Value::Null, matrix_json),
        "reason": ans.reason,
    })
}
