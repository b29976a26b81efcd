//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use qhc_core::field::{rat, rat_int};
use qhc_core::poly::monomials_of_degree;
use qhc_core::{BiPoly, BranchInput, Field, FieldElement, NumberField, QuasiCurve, Rational, Weights};
use rand::Rng;

/// A reduced quasi-homogeneous curve over Q together with the binomial
/// coefficients a_i used to build it.
pub struct RandomCurve {
    pub curve: QuasiCurve,
    pub has_x: bool,
    pub has_y: bool,
    pub binomial_a: Vec<Rational>,
}

pub fn random_weights<R: Rng>(rng: &mut R, max: i64) -> Weights {
    loop {
        let (wx, wy) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
        if wx.gcd(&wy) == 1 {
            return Weights::new(wx, wy).unwrap();
        }
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p = rng.gen_range(-3i64..=3);
        let q = rng.gen_range(1i64..=2);
        if p != 0 {
            return rat(p, q);
        }
    }
}

/// u·x^{ε_x}·y^{ε_y}·Π(x^{w_y} + a_i y^{w_x}) with distinct a_i = -1/b_i^{w_x},
/// b_i ∈ Q, at most `max_branches` branches in total.
pub fn random_curve<R: Rng>(rng: &mut R, max_w: i64, max_branches: usize) -> RandomCurve {
    let k = NumberField::rationals();
    loop {
        let w = random_weights(rng, max_w);
        let has_x = rng.gen_bool(0.4);
        let has_y = rng.gen_bool(0.4);
        let axes = has_x as usize + has_y as usize;
        let nb = rng.gen_range(0..=(max_branches - axes));
        let mut a_vals: Vec<Rational> = Vec::new();
        for _ in 0..nb {
            let b = small_rational(rng);
            let a = -Rational::one() / num_traits::pow(b, w.x as usize);
            if !a_vals.contains(&a) {
                a_vals.push(a);
            }
        }
        if axes + a_vals.len() == 0 {
            continue;
        }
        let one = FieldElement::one(&k);
        let mut f = BiPoly::constant(FieldElement::from_rational(&k, small_rational(rng)));
        let mut inputs = Vec::new();
        if has_x {
            f = &f * &BiPoly::x(&k);
            inputs.push(BranchInput::AxisX);
        }
        if has_y {
            f = &f * &BiPoly::y(&k);
            inputs.push(BranchInput::AxisY);
        }
        for a in &a_vals {
            let fi = &BiPoly::monomial(one.clone(), w.y as u32, 0)
                + &BiPoly::monomial(FieldElement::from_rational(&k, a.clone()), 0, w.x as u32);
            f = &f * &fi;
            inputs.push(BranchInput::Binomial { a: FieldElement::from_rational(&k, a.clone()), b: None });
        }
        let curve = QuasiCurve::with_branches(&k, f, Some(w), inputs).expect("random curve is valid");
        return RandomCurve { curve, has_x, has_y, binomial_a: a_vals };
    }
}

pub fn random_element<R: Rng>(k: &Field, rng: &mut R) -> FieldElement {
    FieldElement::sample(k, rng, 6)
}

pub fn test_fields() -> Vec<Field> {
    vec![NumberField::rationals(), NumberField::gaussian(), NumberField::cyclotomic8()]
}

/// Rank over Q by plain fraction-exact elimination, written independently
/// of the library's linear algebra.
pub fn rank_q(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, |r| r.len());
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Q-coordinates of a K-vector, flattened.
fn flatten(v: &[FieldElement]) -> Vec<Rational> {
    v.iter().flat_map(|c| c.coords().iter().cloned()).collect()
}

/// Whether `target` lies in the K-span of `vecs`, decided over Q using the
/// α-multiples of each vector.
pub fn in_k_span(k: &Field, vecs: &[Vec<FieldElement>], target: &[FieldElement]) -> bool {
    let alpha = FieldElement::generator(k);
    let mut rows = Vec::new();
    for v in vecs {
        let mut cur = v.clone();
        for _ in 0..k.degree() {
            rows.push(flatten(&cur));
            cur = cur.iter().map(|c| c * &alpha).collect();
        }
    }
    let before = rank_q(rows.clone());
    rows.push(flatten(target));
    rank_q(rows) == before
}

/// Γ_i ∩ [0, bound] by brute force over monomials.
pub fn brute_gamma(curve: &QuasiCurve, i: usize, bound: i64) -> BTreeSet<i64> {
    let k = curve.field();
    let w = curve.weights();
    let r = curve.num_branches();
    let d = curve.branch(i).t_degree;
    let mut out = BTreeSet::new();
    for gamma in 0..=bound {
        let vecs: Vec<Vec<FieldElement>> = monomials_of_degree(w.x, w.y, gamma * d)
            .into_iter()
            .map(|(a, b)| {
                let m = BiPoly::monomial(FieldElement::one(k), a, b);
                (0..r)
                    .map(|j| {
                        let img = curve.branch(j).image(&m);
                        let c = img.terms().next().map(|(_, c)| c.clone());
                        c.unwrap_or_else(|| FieldElement::zero(k))
                    })
                    .collect()
            })
            .collect();
        let mut target = vec![FieldElement::zero(k); r];
        target[i] = FieldElement::one(k);
        if in_k_span(k, &vecs, &target) {
            out.insert(gamma);
        }
    }
    out
}

/// Members of the semigroup generated by `gens` up to `limit`, by closure.
pub fn brute_semigroup(gens: &[i64], limit: i64) -> BTreeSet<i64> {
    let mut reach = vec![false; (limit + 1) as usize];
    reach[0] = true;
    for n in 1..=limit {
        reach[n as usize] = gens.iter().any(|&g| g <= n && reach[(n - g) as usize]);
    }
    (0..=limit).filter(|&n| reach[n as usize]).collect()
}

pub fn q(n: i64) -> Rational {
    rat_int(n)
}
