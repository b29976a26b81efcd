//! Workloads shared by the benches.

use qhc_core::catalog::{catalog_get, fixture_modules, Label};
use qhc_core::{GradedSubmodule, QuasiCurve};

/// The curve for `label` and its fixture called `name`.
pub fn fixture(label: Label, name: &str) -> (QuasiCurve, GradedSubmodule) {
    let e = catalog_get(label).expect("catalog entry");
    let m = fixture_modules(&e)
        .expect("fixtures")
        .into_iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("{label} has no fixture {name}"))
        .module;
    (e.curve, m)
}

pub fn curve(label: Label) -> QuasiCurve {
    catalog_get(label).expect("catalog entry").curve
}
