//! Deterministic JSON reports. Keys are sorted and every number that is not
//! a small integer is an exact `"p/q"` string.

use serde_json::{json, Value};

use crate::catalog::{CatalogEntry, Fixture};
use crate::connection::{ConnectionReport, VerificationSummary};
use crate::curve::{BranchKind, QuasiCurve};
use crate::derivation::{congruent_mod_f, euler, extend, koszul, koszul_data, q_element, DerivationOnA};
use crate::error::Result;
use crate::gradmod::{ConditionTable, GradedSubmodule, ModuleElement, WitnessTerm};
use crate::io::{bipoly_to_terms, element_to_entries, CurveSpec, FieldSpec, ModuleSpec};
use crate::poly::{BiPoly, UniPoly};
use crate::semigroup::{default_oracle_bound, gamma_formula, gamma_oracle};

fn bipoly(p: &BiPoly) -> Value {
    json!({ "display": p.to_string(), "terms": bipoly_to_terms(p) })
}

fn unipoly(p: &UniPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({ "coeff": c.to_strings(), "exp": e })).collect();
    json!({ "display": p.display("t"), "terms": terms })
}

fn element(v: &ModuleElement) -> Value {
    json!(element_to_entries(v))
}

fn witness(w: &[WitnessTerm]) -> Value {
    Value::Array(
        w.iter()
            .map(|t| {
                json!({
                    "generator": t.generator + 1,
                    "x": t.monomial.0,
                    "y": t.monomial.1,
                    "coeff": t.coeff.to_strings(),
                })
            })
            .collect(),
    )
}

fn conditions(t: &ConditionTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|e| json!({ "branch": e.branch + 1, "index": e.index + 1, "holds": e.holds }))
        .collect();
    json!({ "all": t.all(), "entries": entries })
}

fn branch_kind(kind: &BranchKind) -> Value {
    match kind {
        BranchKind::AxisX | BranchKind::AxisY => json!({ "kind": kind.label() }),
        BranchKind::Binomial { a, b } => json!({ "kind": kind.label(), "a": a.to_strings(), "b": b.to_strings() }),
    }
}

pub fn curve_info(curve: &QuasiCurve) -> Value {
    let w = curve.weights();
    json!({
        "field": FieldSpec::from_field(curve.field()).min_poly,
        "field_display": curve.field().to_string(),
        "weights": [w.x, w.y],
        "f": bipoly(curve.f()),
        "weight": curve.weight(),
        "unit": curve.unit().to_strings(),
        "branches": curve.num_branches(),
        "koszul_weight": curve.koszul_weight(),
    })
}

pub fn branches(curve: &QuasiCurve) -> Value {
    let w = curve.weights();
    let list: Vec<Value> = curve
        .branches()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "branch": i + 1,
                "type": branch_kind(&b.kind),
                "f_i": bipoly(&b.kind.polynomial(curve.field(), w)),
                "weight": b.weight,
                "t_degree": b.t_degree,
                "conductor": b.conductor,
                "n_x": unipoly(&b.nx),
                "n_y": unipoly(&b.ny),
            })
        })
        .collect();
    json!({ "unit": curve.unit().to_strings(), "branches": list })
}

/// Per branch: Γ_i data and agreement of the linear-algebra oracle up to
/// `max_degree` (default c_i + 10).
pub fn semigroups(curve: &QuasiCurve, max_degree: Option<i64>) -> Result<Value> {
    let mut list = Vec::new();
    let mut all_agree = true;
    for i in 0..curve.num_branches() {
        let g = gamma_formula(curve, i)?;
        let bound = max_degree.unwrap_or_else(|| default_oracle_bound(&g));
        let table = gamma_oracle(curve, i, bound)?;
        let agrees = table.members == g.members_up_to(bound);
        all_agree &= agrees;
        list.push(json!({
            "branch": i + 1,
            "shift": g.shift,
            "base_generators": g.base.generators(),
            "base_symmetric": g.base.is_symmetric(),
            "gaps": g.gaps(),
            "conductor": g.conductor,
            "frobenius": g.frobenius,
            "oracle_bound": bound,
            "oracle_members": table.members,
            "oracle_bound_below_conductor": table.bound_below_conductor,
            "oracle_agrees": agrees,
        }));
    }
    Ok(json!({ "branches": list, "oracle_agrees": all_agree }))
}

fn derivation(d: &DerivationOnA) -> Value {
    json!({ "px": bipoly(&d.px), "py": bipoly(&d.py), "weight": d.weight })
}

pub fn derivations(curve: &QuasiCurve) -> Result<Value> {
    let k = curve.field();
    let e = euler(curve);
    let d = koszul(curve);
    let ee = extend(curve, &e)?;
    let kd = koszul_data(curve)?;
    let q = q_element(curve)?;
    let bracket = e.commutator(curve, &d)?;
    let scaled = d.scale(curve, &crate::field::FieldElement::from_int(k, curve.koszul_weight()))?;
    let commutator_ok =
        congruent_mod_f(curve, &bracket.px, &scaled.px) && congruent_mod_f(curve, &bracket.py, &scaled.py);
    let per_branch: Vec<Value> = kd
        .branches
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "branch": i + 1,
                "beta": b.beta.to_strings(),
                "c": b.conductor,
                "g": b.conductor - 1,
                "delta": unipoly(&kd.extension.deltas[i]),
                "euler_delta": unipoly(&ee.deltas[i]),
            })
        })
        .collect();
    let q_json: Vec<Value> = q
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "branch": i + 1, "coeff": c.coeff.to_strings(), "exp": c.exponent }))
        .collect();
    Ok(json!({
        "euler": derivation(&e),
        "koszul": derivation(&d),
        "koszul_weight": curve.koszul_weight(),
        "branches": per_branch,
        "q": q_json,
        "q_x": bipoly(&q.x_witness),
        "q_y": bipoly(&q.y_witness),
        "commutator_ok": commutator_ok,
    }))
}

pub fn module_check(
    curve: &QuasiCurve,
    canonical: &GradedSubmodule,
    c1: &ConditionTable,
    c2: &ConditionTable,
    c3: Option<i64>,
) -> Value {
    json!({
        "canonical": ModuleSpec::from_module(canonical),
        "weights": canonical.weights(),
        "c1": conditions(c1),
        "c2": conditions(c2),
        "c3": { "holds": c3.is_some(), "lambda": c3 },
        "frobenius": (0..curve.num_branches())
            .map(|i| gamma_formula(curve, i).map(|g| g.frobenius).ok())
            .collect::<Vec<_>>(),
    })
}

fn verification(v: &VerificationSummary) -> Value {
    json!({ "leibniz": v.leibniz, "graded": v.graded, "integrable": v.integrable })
}

pub fn connection(rep: &ConnectionReport) -> Value {
    let lambda = match rep.path {
        crate::connection::ConnectionPath::C3Shift(l) => Some(l),
        _ => None,
    };
    let q: Vec<Value> = rep
        .q
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "branch": i + 1, "coeff": c.coeff.to_strings(), "exp": c.exponent }))
        .collect();
    json!({
        "path": rep.path.label(),
        "lambda": lambda,
        "koszul_weight": rep.koszul_weight,
        "c1": conditions(&rep.c1),
        "c2": conditions(&rep.c2),
        "c3": { "holds": rep.c3.is_some(), "lambda": rep.c3 },
        "module": ModuleSpec::from_module(&rep.module),
        "weights": rep.module.weights(),
        "q": q,
        "nablaD_images": rep.nabla_d_images.iter().map(|i| i.as_ref().map(element)).collect::<Vec<_>>(),
        "witnesses": rep.witnesses.iter().map(|w| w.as_deref().map(witness)).collect::<Vec<_>>(),
        "verified": rep.verified.as_ref().map(verification),
    })
}

pub fn catalog_list(entries: &[CatalogEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label.to_string(),
                    "f": e.f().to_string(),
                    "weights": [e.weights().x, e.weights().y],
                    "field": e.field().to_string(),
                    "branches": e.curve.num_branches(),
                })
            })
            .collect(),
    )
}

pub fn catalog_entry(e: &CatalogEntry) -> Value {
    json!({
        "label": e.label.to_string(),
        "curve": CurveSpec::from_curve(&e.curve),
        "info": curve_info(&e.curve),
        "branches": branches(&e.curve)["branches"].clone(),
    })
}

pub fn fixtures(e: &CatalogEntry, fx: &[Fixture]) -> Value {
    let list: Vec<Value> = fx
        .iter()
        .map(|f| json!({ "name": f.name, "module": ModuleSpec::from_module(&f.module) }))
        .collect();
    json!({ "label": e.label.to_string(), "curve": CurveSpec::from_curve(&e.curve), "fixtures": list })
}

/// Indented `key: value` rendering of a report.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{}]\n", n + 1));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
