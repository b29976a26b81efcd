//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qhc_core::catalog::{
    all_entries, case_one_heights, case_two_heights, catalog_get, fixture_modules, free_cyclic, unstable_cusp,
    yfamily_case_one, yfamily_case_two, yfamily_labels, Label,
};
use qhc_core::connection::{default_degree_bound, natural_connection, verify_properties, ConnectionPath};
use qhc_core::curve::factor;
use qhc_core::derivation::{euler, extend, koszul, koszul_data, q_element, ring_preimage};
use qhc_core::gradmod::{canonical_embedding, check_c2, check_c3};
use qhc_core::poly::monomials_of_degree;
use qhc_core::semigroup::{gamma_formula, gamma_oracle};
use qhc_core::{BiPoly, Error, FieldElement, GradedSubmodule, QuasiCurve, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PER_PAIR_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(10);
const CONNECTION_LIMIT: Duration = Duration::from_secs(30);
const SAMPLES: usize = 100;
const SEED: u64 = 0x5eed;
const RANDOM_CURVES: usize = 20;
const RANDOM_PRODUCTS: usize = 50;
const ALGEBRA_CASES: usize = 200;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn positive_part(s: BTreeSet<i64>) -> BTreeSet<i64> {
    s.into_iter().filter(|&g| g > 0).collect()
}

fn y_family_gamma() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (m, n) in [(2u32, 1u32), (3, 2), (4, 3), (5, 2), (7, 3)] {
        let start = Instant::now();
        let e = catalog_get(Label::YFamily { m, n }).map_err(err)?;
        let (m, n) = (m as i64, n as i64);
        let g1 = gamma_formula(&e.curve, 0).map_err(err)?;
        let g2 = gamma_formula(&e.curve, 1).map_err(err)?;
        ensure(g1.frobenius == n - 1, || format!("Y({m},{n}): g_1 = {}", g1.frobenius))?;
        ensure(g2.frobenius == m * (n - 1), || format!("Y({m},{n}): g_2 = {}", g2.frobenius))?;
        let bound = g2.conductor.max(g1.conductor) + 10;
        let tail: BTreeSet<i64> = (n..=bound).collect();
        ensure(positive_part(g1.members_up_to(bound)) == tail, || format!("Y({m},{n}): Γ_1 mismatch"))?;
        let gens: Vec<i64> = (0..n).map(|j| n + j * m).collect();
        let generated = common::brute_semigroup(&gens, bound);
        ensure(positive_part(g2.members_up_to(bound)) == positive_part(generated), || {
            format!("Y({m},{n}): Γ_2 differs from <{gens:?}>")
        })?;
        let t = start.elapsed();
        ensure(t < PER_PAIR_LIMIT, || format!("Y({m},{n}) took {t:?}"))?;
        slowest = slowest.max(t);
    }
    Ok(format!("5 pairs, slowest {slowest:.2?}"))
}

fn curves_with_random() -> Result<Vec<(String, QuasiCurve)>, String> {
    let mut out: Vec<(String, QuasiCurve)> =
        all_entries().map_err(err)?.into_iter().map(|e| (e.label.to_string(), e.curve)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..RANDOM_CURVES {
        out.push((format!("random #{n}"), common::random_curve(&mut rng, 7, 4).curve));
    }
    Ok(out)
}

fn oracle_vs_formula() -> Outcome {
    let start = Instant::now();
    let curves = curves_with_random()?;
    let mut branches = 0;
    for (name, c) in &curves {
        for i in 0..c.num_branches() {
            let g = gamma_formula(c, i).map_err(err)?;
            let bound = g.conductor + 10;
            let table = gamma_oracle(c, i, bound).map_err(err)?;
            ensure(table.members == g.members_up_to(bound), || format!("{name} branch {}", i + 1))?;
            branches += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < ORACLE_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{} curves, {branches} branches in {t:.2?}", curves.len()))
}

fn koszul_extension() -> Outcome {
    let entries = all_entries().map_err(err)?;
    for e in &entries {
        let c = &e.curve;
        let lambda = c.koszul_weight();
        let ext = extend(c, &koszul(c)).map_err(err)?;
        for (i, delta) in ext.deltas.iter().enumerate() {
            let terms: Vec<(u32, FieldElement)> = delta.terms().map(|(x, k)| (x, k.clone())).collect();
            ensure(terms.len() == 1, || format!("{} branch {}: δ = {}", e.label, i + 1, delta.display("t")))?;
            let (exp, beta) = &terms[0];
            let g = gamma_formula(c, i).map_err(err)?;
            ensure(!beta.is_zero() && *exp as i64 == g.conductor, || {
                format!("{} branch {}: exponent {exp}, c = {}", e.label, i + 1, g.conductor)
            })?;
            let d = c.branch(i).t_degree;
            ensure((g.conductor - 1) * d == lambda, || format!("{} branch {}: g·d ≠ {lambda}", e.label, i + 1))?;
        }
        koszul_data(c).map_err(err)?;
    }
    Ok(format!("{} entries", entries.len()))
}

fn q_identities() -> Outcome {
    let entries = all_entries().map_err(err)?;
    for e in &entries {
        let c = &e.curve;
        let w = c.weights();
        let lambda = c.koszul_weight();
        let q = q_element(c).map_err(err)?;
        let nd = extend(c, &koszul(c)).map_err(err)?;
        let ne = extend(c, &euler(c)).map_err(err)?;
        for i in 0..c.num_branches() {
            ensure(q.times(i, &ne.deltas[i]).as_ref() == Some(&nd.deltas[i]), || {
                format!("{} branch {}: ~D ≠ q·~E", e.label, i + 1)
            })?;
        }
        for (gen, wt, name) in [(BiPoly::x(c.field()), w.x, "x"), (BiPoly::y(c.field()), w.y, "y")] {
            let target: Option<Vec<UniPoly>> =
                c.normalization_image(&gen).iter().enumerate().map(|(i, p)| q.times(i, p)).collect();
            let target = target.ok_or_else(|| format!("{}: q·{name} leaves the cover", e.label))?;
            let pre = ring_preimage(c, &target, lambda + wt).map_err(err)?;
            ensure(pre.is_some(), || format!("{}: q·{name} ∉ A", e.label))?;
        }
    }
    Ok(format!("{} entries", entries.len()))
}

fn y32_fixture_conditions() -> Outcome {
    let c = catalog_get(Label::YFamily { m: 3, n: 2 }).map_err(err)?.curve;
    let mut count = 0;
    let cases: [(&str, Vec<u32>, fn(&QuasiCurve, u32) -> qhc_core::Result<GradedSubmodule>, bool); 2] = [
        ("case 1", case_one_heights(&c).map_err(err)?, yfamily_case_one, true),
        ("case 2", case_two_heights(&c).map_err(err)?, yfamily_case_two, false),
    ];
    for (name, heights, build, c3_expected) in cases {
        ensure(!heights.is_empty(), || format!("{name}: no valid h"))?;
        for h in heights {
            let m = canonical_embedding(&c, &build(&c, h).map_err(err)?).map_err(err)?;
            ensure(check_c2(&c, &m).map_err(err)?.all(), || format!("{name} h={h}: C2 fails"))?;
            ensure(check_c3(&m).is_some() == c3_expected, || format!("{name} h={h}: C3 = {:?}", check_c3(&m)))?;
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn connection_construction() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, QuasiCurve, GradedSubmodule, fn(&ConnectionPath) -> bool)> = Vec::new();
    let c2 = |p: &ConnectionPath| *p == ConnectionPath::C2;
    for label in yfamily_labels() {
        let e = catalog_get(label).map_err(err)?;
        for fx in fixture_modules(&e).map_err(err)? {
            cases.push((format!("{label} {}", fx.name), e.curve.clone(), fx.module, c2));
        }
    }
    for label in [Label::A(2), Label::A(3)] {
        let e = catalog_get(label).map_err(err)?;
        for fx in fixture_modules(&e).map_err(err)? {
            if fx.name == "normalization" || fx.name == "maximal-ideal" {
                cases.push((format!("{label} {}", fx.name), e.curve.clone(), fx.module, c2));
            }
        }
    }
    for label in [Label::A(2), Label::D(4), Label::E(8), Label::YFamily { m: 3, n: 2 }] {
        let c = catalog_get(label).map_err(err)?.curve;
        for lambda in [0, 3] {
            let m = free_cyclic(&c, lambda).map_err(err)?;
            cases.push((format!("{label} free cyclic {lambda}"), c.clone(), m, |p| {
                matches!(p, ConnectionPath::C3Shift(_))
            }));
        }
    }
    let cusp = catalog_get(Label::A(2)).map_err(err)?.curve;
    let m = unstable_cusp(&cusp).map_err(err)?;
    cases.push(("A_2 unstable".into(), cusp, m, |p| *p == ConnectionPath::None));

    let mut verified = 0;
    for (name, c, m, expected) in &cases {
        let rep = natural_connection(c, m).map_err(|e| format!("{name}: {e}"))?;
        ensure(expected(&rep.path), || format!("{name}: path {}", rep.path.label()))?;
        ensure(rep.witnesses_replay(c), || format!("{name}: witness replay fails"))?;
        if rep.path.succeeded() {
            let bound = default_degree_bound(c, &rep.module).map_err(err)?;
            verify_properties(c, &rep, bound, SAMPLES, SEED).map_err(|e| format!("{name}: {e}"))?;
            verified += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < CONNECTION_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{} modules, {verified} verified with {SAMPLES} samples in {t:.2?}", cases.len()))
}

fn expand(c: &QuasiCurve) -> BiPoly {
    c.branches()
        .iter()
        .fold(BiPoly::constant(c.unit().clone()), |acc, b| &acc * &b.kind.polynomial(c.field(), c.weights()))
}

fn factorization_round_trip() -> Outcome {
    let entries = all_entries().map_err(err)?;
    for e in &entries {
        ensure(&expand(&e.curve) == e.f(), || format!("{}: u·Πf_i ≠ f", e.label))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rejected = 0;
    for n in 0..RANDOM_PRODUCTS {
        let rc = common::random_curve(&mut rng, 7, 4);
        let c = &rc.curve;
        let auto = QuasiCurve::new(c.field(), c.f().clone(), Some(c.weights())).map_err(err)?;
        ensure(auto.num_branches() == c.num_branches(), || format!("random #{n}: branch count"))?;
        ensure(&expand(&auto) == c.f(), || format!("random #{n}: u·Πf_i ≠ f"))?;
        let i = rng.gen_range(0..c.num_branches());
        let doubled = c.f() * &c.branch(i).kind.polynomial(c.field(), c.weights());
        match factor(&doubled, c.weights(), c.field()) {
            Err(Error::NotReduced(_)) => rejected += 1,
            other => return Err(format!("random #{n}: non-reduced input gave {other:?}")),
        }
    }
    Ok(format!("{} entries, {RANDOM_PRODUCTS} products, {rejected} non-reduced rejected", entries.len()))
}

fn random_bi(k: &qhc_core::Field, r: &mut ChaCha8Rng, max_deg: u32) -> BiPoly {
    let mut terms = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=(max_deg - a) {
            if r.gen_bool(0.4) {
                terms.push(((a, b), FieldElement::sample(k, r, 4)));
            }
        }
    }
    BiPoly::from_terms(terms)
}

fn algebra_suite() -> Outcome {
    let fields = common::test_fields();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..ALGEBRA_CASES {
        let k = &fields[n % fields.len()];
        let (a, b, c) = (
            common::random_element(k, &mut rng),
            common::random_element(k, &mut rng),
            common::random_element(k, &mut rng),
        );
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (&a - &a).is_zero()
            && (a.is_zero() || (&a * &a.inv().map_err(err)?).is_one());
        ensure(ok, || format!("field axioms, case {n} over {k}"))?;
    }
    for n in 0..ALGEBRA_CASES {
        let k = &fields[n % fields.len()];
        let a = random_bi(k, &mut rng, 3);
        let mut b = random_bi(k, &mut rng, 2);
        if b.is_zero() {
            b = BiPoly::constant(FieldElement::one(k));
        }
        ensure((&a * &b).exact_div(&b).map_err(err)? == a, || format!("exact division, case {n}"))?;
    }
    for n in 0..ALGEBRA_CASES {
        let c = common::random_curve(&mut rng, 5, 3).curve;
        let (k, w) = (c.field(), c.weights());
        let (dg, dh) = (rng.gen_range(0..8), rng.gen_range(0..8));
        let mut poly = |d| {
            BiPoly::from_terms(
                monomials_of_degree(w.x, w.y, d).into_iter().map(|m| (m, FieldElement::sample(k, &mut rng, 3))),
            )
        };
        let (g, h) = (poly(dg), poly(dh));
        let (ng, nh, ngh) = (c.normalization_image(&g), c.normalization_image(&h), c.normalization_image(&(&g * &h)));
        let nsum = c.normalization_image(&(&g + &h));
        for i in 0..c.num_branches() {
            let graded = ng[i].terms().all(|(e, _)| e as i64 * c.branch(i).t_degree == dg);
            ensure(ngh[i] == &ng[i] * &nh[i] && nsum[i] == &ng[i] + &nh[i] && graded, || {
                format!("n homomorphism, case {n} branch {}", i + 1)
            })?;
        }
    }
    Ok(format!("3 × {ALGEBRA_CASES} cases, seed {SEED:#x}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Y-family value semigroups", y_family_gamma),
        ("conductor formula vs oracle", oracle_vs_formula),
        ("Koszul extension", koszul_extension),
        ("q-element identities", q_identities),
        ("Y(3,2) fixture conditions", y32_fixture_conditions),
        ("connection construction", connection_construction),
        ("factorization round-trip", factorization_round_trip),
        ("algebra property suite", algebra_suite),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
