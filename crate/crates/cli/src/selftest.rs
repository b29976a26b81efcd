use qhc_core::catalog::{all_entries, catalog_get, fixture_modules, Label};
use qhc_core::connection::{default_degree_bound, natural_connection, verify_properties, ConnectionPath};
use qhc_core::derivation::q_element;
use qhc_core::semigroup::{gamma_formula, oracle_agrees};
use qhc_core::Result;
use serde_json::{json, Value};

fn oracle_on_catalog() -> Result<String> {
    let entries = all_entries()?;
    let mut n = 0;
    for e in &entries {
        for i in 0..e.curve.num_branches() {
            let c = gamma_formula(&e.curve, i)?.conductor;
            if !oracle_agrees(&e.curve, i, c + 10)? {
                return Err(qhc_core::Error::Internal(format!("{} branch {}: oracle disagrees", e.label, i + 1)));
            }
            n += 1;
        }
    }
    Ok(format!("{} entries, {n} branches", entries.len()))
}

fn q_on_catalog() -> Result<String> {
    let entries = all_entries()?;
    for e in &entries {
        q_element(&e.curve)?;
    }
    Ok(format!("{} entries", entries.len()))
}

fn connections(samples: usize, seed: u64) -> Result<String> {
    let mut n = 0;
    for label in [Label::A(2), Label::D(5), Label::E(7), Label::YFamily { m: 3, n: 2 }] {
        let e = catalog_get(label)?;
        for fx in fixture_modules(&e)? {
            let rep = natural_connection(&e.curve, &fx.module)?;
            let expect_none = fx.name == "unstable";
            if rep.path.succeeded() == expect_none {
                return Err(qhc_core::Error::Internal(format!("{label} {}: path {}", fx.name, rep.path.label())));
            }
            if rep.path != ConnectionPath::None {
                let bound = default_degree_bound(&e.curve, &rep.module)?;
                verify_properties(&e.curve, &rep, bound, samples, seed)?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} fixtures"))
}

/// Runs every check and reports whether all of them passed.
pub fn run(samples: usize, seed: u64) -> (Value, bool) {
    let checks: [(&str, Box<dyn Fn() -> Result<String>>); 3] = [
        ("semigroup oracle", Box::new(oracle_on_catalog)),
        ("q element", Box::new(q_on_catalog)),
        ("connections", Box::new(move || connections(samples, seed))),
    ];
    let mut all_ok = true;
    let list: Vec<Value> = checks
        .iter()
        .map(|(name, f)| match f() {
            Ok(detail) => json!({ "check": name, "ok": true, "detail": detail }),
            Err(e) => {
                all_ok = false;
                json!({ "check": name, "ok": false, "detail": e.to_string() })
            }
        })
        .collect();
    (json!({ "checks": list, "ok": all_ok }), all_ok)
}
