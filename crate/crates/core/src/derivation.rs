//! The Euler and Koszul derivations of A, their canonical extensions to the
//! normalization, and the element q with ~D = q·~E.

use crate::curve::QuasiCurve;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg;
use crate::poly::{monomials_of_degree, BiPoly, UniPoly};
use crate::semigroup::gamma_formula;

/// A k-derivation of A given by the images of x and y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOnA {
    pub px: BiPoly,
    pub py: BiPoly,
    /// Homogeneous weight λ, if the derivation is homogeneous and nonzero.
    pub weight: Option<i64>,
}

/// a ≡ b modulo (f).
pub fn congruent_mod_f(curve: &QuasiCurve, a: &BiPoly, b: &BiPoly) -> bool {
    let diff = a - b;
    diff.is_zero() || diff.exact_div(curve.f()).is_ok()
}

impl DerivationOnA {
    /// Checks that x ↦ px, y ↦ py preserves the ideal (f).
    pub fn new(curve: &QuasiCurve, px: BiPoly, py: BiPoly) -> Result<Self> {
        let f = curve.f();
        let image = &(&px * &f.partial_x()) + &(&py * &f.partial_y());
        if !image.is_zero() && image.exact_div(f).is_err() {
            return Err(Error::NotADerivation(format!("P(f) = {image} is not a multiple of f")));
        }
        let w = curve.weights();
        let wx = if px.is_zero() { None } else { px.weighted_degree(w.x, w.y).ok().map(|d| d - w.x) };
        let wy = if py.is_zero() { None } else { py.weighted_degree(w.x, w.y).ok().map(|d| d - w.y) };
        let homogeneous = |p: &BiPoly| p.is_zero() || p.weighted_degree(w.x, w.y).is_ok();
        let weight = if !homogeneous(&px) || !homogeneous(&py) {
            None
        } else {
            match (wx, wy) {
                (Some(a), Some(b)) if a == b => Some(a),
                (Some(a), None) | (None, Some(a)) => Some(a),
                _ => None,
            }
        };
        Ok(DerivationOnA { px, py, weight })
    }

    pub fn zero(curve: &QuasiCurve) -> Self {
        DerivationOnA::new(curve, BiPoly::zero(), BiPoly::zero()).unwrap()
    }

    /// P(h) = px·∂h/∂x + py·∂h/∂y, on representatives in k[x,y].
    pub fn apply(&self, h: &BiPoly) -> BiPoly {
        &(&self.px * &h.partial_x()) + &(&self.py * &h.partial_y())
    }

    /// [P, Q] = P∘Q - Q∘P.
    pub fn commutator(&self, curve: &QuasiCurve, other: &DerivationOnA) -> Result<DerivationOnA> {
        let px = &self.apply(&other.px) - &other.apply(&self.px);
        let py = &self.apply(&other.py) - &other.apply(&self.py);
        DerivationOnA::new(curve, px, py)
    }

    pub fn scale(&self, curve: &QuasiCurve, c: &FieldElement) -> Result<DerivationOnA> {
        DerivationOnA::new(curve, self.px.scale(c), self.py.scale(c))
    }
}

/// E = w_x·x·∂_x + w_y·y·∂_y.
pub fn euler(curve: &QuasiCurve) -> DerivationOnA {
    let k = curve.field();
    let w = curve.weights();
    let px = BiPoly::x(k).scale(&FieldElement::from_int(k, w.x));
    let py = BiPoly::y(k).scale(&FieldElement::from_int(k, w.y));
    DerivationOnA::new(curve, px, py).expect("Euler derivation preserves (f)")
}

/// D = f_y·∂_x - f_x·∂_y.
pub fn koszul(curve: &QuasiCurve) -> DerivationOnA {
    let f = curve.f();
    DerivationOnA::new(curve, f.partial_y(), -&f.partial_x()).expect("Koszul derivation preserves (f)")
}

/// Per-branch extension ~P_i = δ_i(t_i)·∂/∂t_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedDerivation {
    pub deltas: Vec<UniPoly>,
}

impl ExtendedDerivation {
    /// ~P_i(p) = δ_i·p'.
    pub fn apply(&self, i: usize, p: &UniPoly) -> UniPoly {
        &self.deltas[i] * &p.derivative()
    }
}

/// Solves the chain rule δ_i·n_i(x)' = n_i(P(x)) (or the y-version when
/// n_i(x) = 0) and verifies it on the other coordinate.
pub fn extend(curve: &QuasiCurve, p: &DerivationOnA) -> Result<ExtendedDerivation> {
    let mut deltas = Vec::with_capacity(curve.num_branches());
    for (i, br) in curve.branches().iter().enumerate() {
        let img_px = br.image(&p.px);
        let img_py = br.image(&p.py);
        let (solve_from, solve_rhs, check_from, check_rhs) = if !br.nx.is_zero() {
            (&br.nx, &img_px, &br.ny, &img_py)
        } else {
            (&br.ny, &img_py, &br.nx, &img_px)
        };
        let delta = solve_rhs
            .exact_div(&solve_from.derivative())
            .map_err(|e| Error::InconsistentExtension { branch: i + 1, detail: e.to_string() })?;
        let lhs = &delta * &check_from.derivative();
        if &lhs != check_rhs {
            return Err(Error::InconsistentExtension {
                branch: i + 1,
                detail: format!("chain rule gives {lhs}, image is {check_rhs}"),
            });
        }
        deltas.push(delta);
    }
    Ok(ExtendedDerivation { deltas })
}

/// ~D = Σ β_i t_i^{c_i} ∂_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulBranch {
    pub beta: FieldElement,
    pub conductor: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulData {
    pub branches: Vec<KoszulBranch>,
    pub extension: ExtendedDerivation,
}

pub fn koszul_data(curve: &QuasiCurve) -> Result<KoszulData> {
    let ext = extend(curve, &koszul(curve))?;
    let mut branches = Vec::with_capacity(ext.deltas.len());
    for (i, delta) in ext.deltas.iter().enumerate() {
        let Some((beta, c)) = delta.as_monomial() else {
            return Err(Error::Internal(format!(
                "extended Koszul derivation on branch {} is {delta}, not a monomial",
                i + 1
            )));
        };
        let expected = gamma_formula(curve, i)?.conductor;
        if c as i64 != expected {
            return Err(Error::Internal(format!(
                "branch {}: Koszul exponent {c} != conductor {expected}",
                i + 1
            )));
        }
        branches.push(KoszulBranch { beta: beta.clone(), conductor: c as i64 });
    }
    Ok(KoszulData { branches, extension: ext })
}

/// One component (β_i/d_i)·t_i^{g_i} of q. The exponent is -1 on a smooth
/// single branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QComponent {
    pub coeff: FieldElement,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElement {
    pub components: Vec<QComponent>,
    /// w_f - w_x - w_y
    pub weight: i64,
    /// h_x with n(h_x) = q·n(x).
    pub x_witness: BiPoly,
    /// h_y with n(h_y) = q·n(y).
    pub y_witness: BiPoly,
}

impl QElement {
    /// q_i·p, or `None` if the product leaves k[t_i].
    pub fn times(&self, i: usize, p: &UniPoly) -> Option<UniPoly> {
        let c = &self.components[i];
        p.mul_laurent_monomial(&c.coeff, c.exponent)
    }
}

/// Finds h ∈ k[x,y] of weighted degree `deg` with n(h) = target, if any.
pub fn ring_preimage(curve: &QuasiCurve, target: &[UniPoly], deg: i64) -> Result<Option<BiPoly>> {
    let k: &Field = curve.field();
    let w = curve.weights();
    let r = curve.num_branches();
    let mut rhs = vec![FieldElement::zero(k); r];
    for (j, p) in target.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = curve.branch(j).t_degree;
        match p.as_monomial() {
            Some((c, e)) if e as i64 * d == deg => rhs[j] = c.clone(),
            _ => return Ok(None),
        }
    }
    let monos = monomials_of_degree(w.x, w.y, deg);
    let mut rows = vec![vec![FieldElement::zero(k); monos.len()]; r];
    for (col, &(a, b)) in monos.iter().enumerate() {
        for (j, row) in rows.iter_mut().enumerate() {
            if let Some((c, _)) = curve.monomial_image(j, a, b) {
                row[col] = c;
            }
        }
    }
    Ok(linalg::solve(k, &rows, monos.len(), &rhs)?.map(|coeffs| {
        BiPoly::from_terms(monos.iter().zip(coeffs).map(|(&m, c)| (m, c)))
    }))
}

/// q = (β_1/d_1·t_1^{g_1}, …, β_r/d_r·t_r^{g_r}), verified against
/// ~D = q·~E and q·m ⊆ A.
pub fn q_element(curve: &QuasiCurve) -> Result<QElement> {
    let k = curve.field();
    let kd = koszul_data(curve)?;
    let ee = extend(curve, &euler(curve))?;
    let weight = curve.koszul_weight();
    let mut components = Vec::with_capacity(kd.branches.len());
    for (i, kb) in kd.branches.iter().enumerate() {
        let d = curve.branch(i).t_degree;
        let expected_e = UniPoly::monomial(FieldElement::from_int(k, d), 1);
        if ee.deltas[i] != expected_e {
            return Err(Error::Internal(format!(
                "extended Euler derivation on branch {} is {}, expected {expected_e}",
                i + 1,
                ee.deltas[i]
            )));
        }
        let g = kb.conductor - 1;
        if g * d != weight {
            return Err(Error::Internal(format!(
                "branch {}: g_i d_i = {} != w_f - w_x - w_y = {weight}",
                i + 1,
                g * d
            )));
        }
        let coeff = kb.beta.try_div(&FieldElement::from_int(k, d))?;
        components.push(QComponent { coeff, exponent: g });
    }
    let mut q = QElement {
        components,
        weight,
        x_witness: BiPoly::zero(),
        y_witness: BiPoly::zero(),
    };
    for i in 0..curve.num_branches() {
        let prod = q.times(i, &ee.deltas[i]);
        if prod.as_ref() != Some(&kd.extension.deltas[i]) {
            return Err(Error::Internal(format!("~D != q ~E on branch {}", i + 1)));
        }
    }
    let w = curve.weights();
    for (gen, deg, slot) in [
        (BiPoly::x(k), weight + w.x, 0),
        (BiPoly::y(k), weight + w.y, 1),
    ] {
        let image = curve.normalization_image(&gen);
        let target: Option<Vec<UniPoly>> = image.iter().enumerate().map(|(i, p)| q.times(i, p)).collect();
        let Some(target) = target else {
            return Err(Error::Internal(format!("q·{gen} leaves the normalization")));
        };
        let Some(h) = ring_preimage(curve, &target, deg)? else {
            return Err(Error::Internal(format!("q·{gen} is not in A")));
        };
        if slot == 0 {
            q.x_witness = h;
        } else {
            q.y_witness = h;
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, NumberField};

    fn y_family() -> QuasiCurve {
        let k = NumberField::rationals();
        let f = BiPoly::from_terms([
            ((2, 1), FieldElement::from_int(&k, 1)),
            ((0, 4), FieldElement::from_int(&k, -1)),
        ]);
        QuasiCurve::new(&k, f, None).unwrap()
    }

    fn t(k: &Field, c: i64, e: u32) -> UniPoly {
        UniPoly::monomial(FieldElement::from_int(k, c), e)
    }

    #[test]
    fn koszul_images() {
        let c = y_family();
        let k = c.field().clone();
        let d = koszul(&c);
        let expected_px = BiPoly::from_terms([
            ((2, 0), FieldElement::from_int(&k, 1)),
            ((0, 3), FieldElement::from_int(&k, -4)),
        ]);
        assert_eq!(d.px, expected_px);
        assert_eq!(d.py, BiPoly::monomial(FieldElement::from_int(&k, -2), 1, 1));
        assert_eq!(d.weight, Some(3));
        assert!(d.apply(c.f()).is_zero());
    }

    #[test]
    fn euler_extension_is_scaling() {
        let c = y_family();
        let k = c.field().clone();
        let e = extend(&c, &euler(&c)).unwrap();
        assert_eq!(e.deltas, vec![t(&k, 3, 1), t(&k, 1, 1)]);
        assert_eq!(euler(&c).apply(c.f()), c.f().scale(&FieldElement::from_int(&k, 8)));
    }

    #[test]
    fn koszul_extension() {
        let c = y_family();
        let k = c.field().clone();
        let ext = extend(&c, &koszul(&c)).unwrap();
        assert_eq!(ext.deltas, vec![t(&k, 1, 2), t(&k, -1, 4)]);
        let kd = koszul_data(&c).unwrap();
        assert_eq!(kd.branches[0].conductor, 2);
        assert_eq!(kd.branches[1].conductor, 4);
        assert!(kd.branches[0].beta.is_one());
        assert_eq!(kd.branches[1].beta, FieldElement::from_int(&k, -1));
    }

    #[test]
    fn zero_derivation_extends_to_zero() {
        let c = y_family();
        let ext = extend(&c, &DerivationOnA::zero(&c)).unwrap();
        assert!(ext.deltas.iter().all(UniPoly::is_zero));
    }

    #[test]
    fn q_for_y_family() {
        let c = y_family();
        let k = c.field().clone();
        let q = q_element(&c).unwrap();
        assert_eq!(q.components[0].coeff, FieldElement::from_rational(&k, rat(1, 3)));
        assert_eq!(q.components[0].exponent, 1);
        assert_eq!(q.components[1].coeff, FieldElement::from_int(&k, -1));
        assert_eq!(q.components[1].exponent, 3);
        assert_eq!(q.weight, 3);
        // q·x = (1/3) x^2 - (4/3) y^3
        let expected = BiPoly::from_terms([
            ((2, 0), FieldElement::from_rational(&k, rat(1, 3))),
            ((0, 3), FieldElement::from_rational(&k, rat(-4, 3))),
        ]);
        assert_eq!(q.x_witness, expected);
    }

    #[test]
    fn non_derivation_rejected() {
        let c = y_family();
        let k = c.field().clone();
        let bad = DerivationOnA::new(&c, BiPoly::constant(FieldElement::one(&k)), BiPoly::zero());
        assert!(matches!(bad, Err(Error::NotADerivation(_))));
    }

    #[test]
    fn euler_koszul_commutator() {
        let c = y_family();
        let k = c.field().clone();
        let e = euler(&c);
        let d = koszul(&c);
        let br = e.commutator(&c, &d).unwrap();
        let scaled = d.scale(&c, &FieldElement::from_int(&k, c.koszul_weight())).unwrap();
        assert!(congruent_mod_f(&c, &br.px, &scaled.px));
        assert!(congruent_mod_f(&c, &br.py, &scaled.py));
    }
}
