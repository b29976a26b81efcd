//! Quasi-homogeneous plane curves A = k[x,y]/(f), their branches, and the
//! graded normalization A → k[t_1] ⊕ … ⊕ k[t_r].

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{DenseQ, Field, FieldElement, Rational};
use crate::poly::{BiPoly, UniPoly};
use crate::roots::{deflate_all, rational_nth_roots, rational_roots};

/// Positive coprime weights (w_x, w_y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    pub x: i64,
    pub y: i64,
}

impl Weights {
    pub fn new(x: i64, y: i64) -> Result<Self> {
        if x <= 0 || y <= 0 || x.gcd(&y) != 1 {
            return Err(Error::InvalidWeights(x, y));
        }
        Ok(Weights { x, y })
    }

    pub fn of_monomial(&self, a: u32, b: u32) -> i64 {
        a as i64 * self.x + b as i64 * self.y
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The unique coprime positive weights making `f` quasi-homogeneous.
pub fn infer_weights(f: &BiPoly) -> Result<Weights> {
    let mut terms = f.terms().map(|(k, _)| k);
    let Some((a0, b0)) = terms.next() else {
        return Err(Error::ZeroPolynomial);
    };
    // Every other monomial gives (a - a0)·w_x + (b - b0)·w_y = 0.
    let mut dir: Option<(i64, i64)> = None;
    for (a, b) in terms {
        let (da, db) = (a as i64 - a0 as i64, b as i64 - b0 as i64);
        match dir {
            None => dir = Some((da, db)),
            Some((pa, pb)) => {
                if pa * db - pb * da != 0 {
                    return Err(Error::NotQuasiHomogeneous(format!(
                        "no weights make all monomials of {f} equal in degree"
                    )));
                }
            }
        }
    }
    let Some((da, db)) = dir else {
        return Err(Error::AmbiguousWeights(format!("{f} is a single monomial")));
    };
    let (mut wx, mut wy) = (-db, da);
    let g = wx.gcd(&wy);
    wx /= g;
    wy /= g;
    if wx < 0 || (wx == 0 && wy < 0) {
        wx = -wx;
        wy = -wy;
    }
    Weights::new(wx, wy).map_err(|_| {
        Error::NotQuasiHomogeneous(format!("{f} admits no positive weights"))
    })
}

/// An irreducible factor f_i of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// f_i = x
    AxisX,
    /// f_i = y
    AxisY,
    /// f_i = x^{w_y} + a·y^{w_x}, with a·b^{w_x} = -1.
    Binomial { a: FieldElement, b: FieldElement },
}

impl BranchKind {
    pub fn label(&self) -> &'static str {
        match self {
            BranchKind::AxisX => "axis_x",
            BranchKind::AxisY => "axis_y",
            BranchKind::Binomial { .. } => "binomial",
        }
    }

    pub fn polynomial(&self, k: &Field, w: Weights) -> BiPoly {
        match self {
            BranchKind::AxisX => BiPoly::x(k),
            BranchKind::AxisY => BiPoly::y(k),
            BranchKind::Binomial { a, .. } => {
                &BiPoly::monomial(FieldElement::one(k), w.y as u32, 0)
                    + &BiPoly::monomial(a.clone(), 0, w.x as u32)
            }
        }
    }
}

/// Conductor c(A_i) of the branch curve A/(f_i).
pub fn branch_conductor(kind: &BranchKind, w: Weights) -> i64 {
    match kind {
        BranchKind::AxisX | BranchKind::AxisY => 0,
        BranchKind::Binomial { .. } => (w.x - 1) * (w.y - 1),
    }
}

/// A requested branch, as given by a caller who already knows the
/// factorization. `b` is solved for over Q when omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchInput {
    AxisX,
    AxisY,
    Binomial { a: FieldElement, b: Option<FieldElement> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub kind: BranchKind,
    /// Weight w_i of f_i.
    pub weight: i64,
    /// Degree d_i of t_i.
    pub t_degree: i64,
    /// c(A_i).
    pub conductor: i64,
    /// n_i(x)
    pub nx: UniPoly,
    /// n_i(y)
    pub ny: UniPoly,
}

impl Branch {
    fn build(k: &Field, kind: BranchKind, w: Weights) -> Self {
        let one = FieldElement::one(k);
        let (weight, t_degree, nx, ny) = match &kind {
            BranchKind::AxisX => (w.x, w.y, UniPoly::zero(), UniPoly::monomial(one, 1)),
            BranchKind::AxisY => (w.y, w.x, UniPoly::monomial(one, 1), UniPoly::zero()),
            BranchKind::Binomial { b, .. } => (
                w.x * w.y,
                1,
                UniPoly::monomial(one, w.x as u32),
                UniPoly::monomial(b.clone(), w.y as u32),
            ),
        };
        let conductor = branch_conductor(&kind, w);
        Branch { kind, weight, t_degree, conductor, nx, ny }
    }

    /// Generators of the value semigroup of A_i in t_i-exponents.
    pub fn value_generators(&self, w: Weights) -> Vec<u64> {
        match self.kind {
            BranchKind::AxisX | BranchKind::AxisY => vec![1],
            BranchKind::Binomial { .. } => vec![w.x as u64, w.y as u64],
        }
    }

    /// n_i(h).
    pub fn image(&self, h: &BiPoly) -> UniPoly {
        h.substitute(&self.nx, &self.ny)
    }
}

#[derive(Clone, Debug)]
pub struct QuasiCurve {
    field: Field,
    weights: Weights,
    f: BiPoly,
    wf: i64,
    unit: FieldElement,
    branches: Vec<Branch>,
}

fn rational_coeffs(p: &[FieldElement]) -> Option<Vec<Rational>> {
    p.iter().map(|c| c.as_rational().cloned()).collect()
}

/// Writes the part of f coprime to xy as y^{s·w_x}·P(u) with
/// u = x^{w_y}/y^{w_x}; returns (x-power, y-power, P) with P lowest first.
fn split_axes(f: &BiPoly, w: Weights) -> Result<(u32, u32, Vec<FieldElement>)> {
    let k = f.terms().next().ok_or(Error::ZeroPolynomial)?.1.field().clone();
    let (ax, by) = f.min_exponents().unwrap();
    let s_top = f.terms().map(|((a, _), _)| a - ax).max().unwrap();
    if s_top as i64 % w.y != 0 {
        return Err(Error::Internal(format!("exponent layout of {f} is not graded")));
    }
    let s = (s_top as i64 / w.y) as usize;
    let mut p = vec![FieldElement::zero(&k); s + 1];
    for ((a, _), c) in f.terms() {
        let e = (a - ax) as i64;
        if e % w.y != 0 {
            return Err(Error::Internal(format!("exponent layout of {f} is not graded")));
        }
        p[(e / w.y) as usize] = c.clone();
    }
    Ok((ax, by, p))
}

fn display_p(p: &[FieldElement]) -> String {
    match rational_coeffs(p) {
        Some(q) => DenseQ(q).display("u"),
        None => UniPoly::from_terms(p.iter().cloned().enumerate().map(|(e, c)| (e as u32, c)))
            .display("u"),
    }
}

fn monic(p: DenseQ) -> DenseQ {
    let lead = p.0.last().cloned().unwrap();
    DenseQ(p.0.iter().map(|c| c / &lead).collect())
}

/// Solves a·b^{w_x} = -1. For w_x > 1 only rational b are found; first root
/// in rational-root order.
fn solve_b(a: &FieldElement, w: Weights) -> Result<FieldElement> {
    let k = a.field();
    let target = FieldElement::from_int(k, -1).try_div(a)?;
    if w.x == 1 {
        return Ok(target);
    }
    let found = target
        .as_rational()
        .and_then(|r| rational_nth_roots(r, w.x as u32).into_iter().next());
    match found {
        Some(b) => Ok(FieldElement::from_rational(k, b)),
        None => Err(Error::BNotInField(format!("b^{} = {}", w.x, target))),
    }
}

/// Splits f into a unit and irreducible branch factors.
///
/// Binomial roots are found over Q by the rational root theorem; over an
/// extension field the remaining factor must have rational coefficients.
pub fn factor(f: &BiPoly, w: Weights, k: &Field) -> Result<(FieldElement, Vec<BranchKind>)> {
    let wf = f.weighted_degree(w.x, w.y)?;
    if wf <= 0 {
        return Err(Error::InvalidCurve("f must have positive weight".into()));
    }
    let (ax, by, p) = split_axes(f, w)?;
    if ax >= 2 {
        return Err(Error::NotReduced(format!("x^{ax} divides f")));
    }
    if by >= 2 {
        return Err(Error::NotReduced(format!("y^{by} divides f")));
    }
    let unit = p.last().unwrap().clone();
    let mut kinds = Vec::new();
    if ax == 1 {
        kinds.push(BranchKind::AxisX);
    }
    if by == 1 {
        kinds.push(BranchKind::AxisY);
    }
    if p.len() > 1 {
        let Some(pq) = rational_coeffs(&p) else {
            return Err(Error::RootNotInField(display_p(&p)));
        };
        let pq = DenseQ(pq);
        let roots = rational_roots(&pq);
        if let Some((r, _)) = roots.iter().find(|(_, m)| *m > 1) {
            return Err(Error::NotReduced(format!("repeated root u = {r} of {}", pq.display("u"))));
        }
        let rest = deflate_all(&pq, &roots);
        if rest.0.len() > 1 {
            return Err(Error::RootNotInField(monic(rest).display("u")));
        }
        for (r, _) in roots {
            let a = FieldElement::from_rational(k, -r);
            let b = solve_b(&a, w)?;
            kinds.push(BranchKind::Binomial { a, b });
        }
    }
    Ok((unit, kinds))
}

impl QuasiCurve {
    /// Builds the curve, factoring f automatically. Weights are inferred
    /// when not given.
    pub fn new(k: &Field, f: BiPoly, weights: Option<Weights>) -> Result<Self> {
        let w = match weights {
            Some(w) => w,
            None => infer_weights(&f)?,
        };
        check_homogeneous(&f, w)?;
        let (unit, kinds) = factor(&f, w, k)?;
        Self::assemble(k, f, w, unit, kinds)
    }

    /// Builds the curve from a caller-supplied factorization, which is
    /// verified against f.
    pub fn with_branches(
        k: &Field,
        f: BiPoly,
        weights: Option<Weights>,
        branches: Vec<BranchInput>,
    ) -> Result<Self> {
        let w = match weights {
            Some(w) => w,
            None => infer_weights(&f)?,
        };
        check_homogeneous(&f, w)?;
        let mut kinds = Vec::with_capacity(branches.len());
        for input in branches {
            kinds.push(match input {
                BranchInput::AxisX => BranchKind::AxisX,
                BranchInput::AxisY => BranchKind::AxisY,
                BranchInput::Binomial { a, b } => {
                    if a.is_zero() {
                        return Err(Error::InvalidCurve("binomial branch with a = 0".into()));
                    }
                    let b = match b {
                        Some(b) => b,
                        None => solve_b(&a, w)?,
                    };
                    BranchKind::Binomial { a, b }
                }
            });
        }
        if kinds.is_empty() {
            return Err(Error::InvalidCurve("no branches given".into()));
        }
        let product = kinds
            .iter()
            .fold(BiPoly::constant(FieldElement::one(k)), |acc, kind| &acc * &kind.polynomial(k, w));
        let ((a, b), lead) = f.terms().last().ok_or(Error::ZeroPolynomial)?;
        let unit = match product.coeff(a, b) {
            Some(c) => lead.try_div(c)?,
            None => {
                return Err(Error::InvalidCurve(format!("branch product {product} does not match f = {f}")))
            }
        };
        if product.scale(&unit) != f {
            return Err(Error::InvalidCurve(format!(
                "{unit} * ({product}) does not expand to f = {f}"
            )));
        }
        Self::assemble(k, f, w, unit, kinds)
    }

    fn assemble(k: &Field, f: BiPoly, w: Weights, unit: FieldElement, kinds: Vec<BranchKind>) -> Result<Self> {
        let wf = f.weighted_degree(w.x, w.y)?;
        for (i, a) in kinds.iter().enumerate() {
            if let BranchKind::Binomial { a: ai, b } = a {
                if ai.is_zero() {
                    return Err(Error::InvalidCurve(format!("branch {}: a = 0", i + 1)));
                }
                if &(ai * &b.pow(w.x as u32)) != &FieldElement::from_int(k, -1) {
                    return Err(Error::InvalidCurve(format!(
                        "branch {}: a*b^{} != -1 for a = {ai}, b = {b}",
                        i + 1,
                        w.x
                    )));
                }
            }
            for b in &kinds[..i] {
                let same = match (a, b) {
                    (BranchKind::AxisX, BranchKind::AxisX) | (BranchKind::AxisY, BranchKind::AxisY) => true,
                    (BranchKind::Binomial { a: a1, .. }, BranchKind::Binomial { a: a2, .. }) => a1 == a2,
                    _ => false,
                };
                if same {
                    return Err(Error::NotReduced(format!(
                        "repeated branch {}",
                        a.polynomial(k, w)
                    )));
                }
            }
        }
        let branches: Vec<Branch> = kinds.into_iter().map(|kind| Branch::build(k, kind, w)).collect();
        let curve = QuasiCurve {
            field: k.clone(),
            weights: w,
            f,
            wf,
            unit,
            branches,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// Checks the factorization identity and n_i(f_i) = 0 on every branch.
    pub fn validate(&self) -> Result<()> {
        let k = &self.field;
        let product = self.branches.iter().fold(BiPoly::constant(self.unit.clone()), |acc, b| {
            &acc * &b.kind.polynomial(k, self.weights)
        });
        if product != self.f {
            return Err(Error::Internal(format!("u * prod f_i = {product} != f = {}", self.f)));
        }
        for (i, b) in self.branches.iter().enumerate() {
            let fi = b.kind.polynomial(k, self.weights);
            if fi.weighted_degree(self.weights.x, self.weights.y)? != b.weight {
                return Err(Error::Internal(format!("branch {} has the wrong weight", i + 1)));
            }
            if !b.image(&fi).is_zero() {
                return Err(Error::Internal(format!("n_{}(f_{}) != 0", i + 1, i + 1)));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    /// w_f
    pub fn weight(&self) -> i64 {
        self.wf
    }

    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &Branch {
        &self.branches[i]
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Weight of the Koszul derivation, w_f - w_x - w_y.
    pub fn koszul_weight(&self) -> i64 {
        self.wf - self.weights.x - self.weights.y
    }

    /// n(h) = (n_1(h), …, n_r(h)).
    pub fn normalization_image(&self, h: &BiPoly) -> Vec<UniPoly> {
        self.branches.iter().map(|b| b.image(h)).collect()
    }

    /// Image of the monomial x^a·y^b on branch i as (coefficient, exponent),
    /// or `None` when it vanishes there.
    pub fn monomial_image(&self, i: usize, a: u32, b: u32) -> Option<(FieldElement, u32)> {
        let br = &self.branches[i];
        let part = |p: &UniPoly, n: u32| -> Option<(FieldElement, u32)> {
            if n == 0 {
                return Some((FieldElement::one(&self.field), 0));
            }
            p.as_monomial().map(|(c, e)| (c.pow(n), e * n))
        };
        let (cx, ex) = part(&br.nx, a)?;
        let (cy, ey) = part(&br.ny, b)?;
        Some((&cx * &cy, ex + ey))
    }
}

fn check_homogeneous(f: &BiPoly, w: Weights) -> Result<()> {
    match f.weighted_degree(w.x, w.y) {
        Ok(d) if d > 0 => Ok(()),
        Ok(_) => Err(Error::InvalidCurve("f must have positive weight".into())),
        Err(Error::NotHomogeneous { degrees }) => Err(Error::NotQuasiHomogeneous(format!(
            "{f} has weighted degrees {degrees:?} under weights {w}"
        ))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn q() -> Field {
        NumberField::rationals()
    }

    fn poly(k: &Field, terms: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), FieldElement::from_int(k, c))))
    }

    #[test]
    fn infer_cusp_weights() {
        let k = q();
        assert_eq!(infer_weights(&poly(&k, &[(1, 2, 0), (1, 0, 3)])).unwrap(), Weights { x: 3, y: 2 });
        assert_eq!(infer_weights(&poly(&k, &[(1, 2, 1), (1, 0, 4)])).unwrap(), Weights { x: 3, y: 2 });
    }

    #[test]
    fn infer_rejects_monomial_and_inconsistent() {
        let k = q();
        assert!(matches!(infer_weights(&poly(&k, &[(1, 5, 0)])), Err(Error::AmbiguousWeights(_))));
        assert!(matches!(
            infer_weights(&poly(&k, &[(1, 2, 0), (1, 0, 3), (1, 1, 1)])),
            Err(Error::NotQuasiHomogeneous(_))
        ));
        assert!(matches!(
            infer_weights(&poly(&k, &[(1, 2, 0), (1, 3, 0)])),
            Err(Error::NotQuasiHomogeneous(_))
        ));
    }

    #[test]
    fn factor_y_family() {
        let k = q();
        // y(x^2 - y^3)
        let f = poly(&k, &[(1, 2, 1), (-1, 0, 4)]);
        let (u, kinds) = factor(&f, Weights::new(3, 2).unwrap(), &k).unwrap();
        assert!(u.is_one());
        assert_eq!(
            kinds,
            vec![
                BranchKind::AxisY,
                BranchKind::Binomial {
                    a: FieldElement::from_int(&k, -1),
                    b: FieldElement::from_int(&k, 1)
                }
            ]
        );
    }

    #[test]
    fn factor_e7() {
        let k = q();
        let f = poly(&k, &[(1, 3, 0), (1, 1, 3)]);
        let (_, kinds) = factor(&f, Weights::new(3, 2).unwrap(), &k).unwrap();
        assert_eq!(
            kinds,
            vec![
                BranchKind::AxisX,
                BranchKind::Binomial {
                    a: FieldElement::from_int(&k, 1),
                    b: FieldElement::from_int(&k, -1)
                }
            ]
        );
    }

    #[test]
    fn factor_reports_missing_root() {
        let k = q();
        let f = poly(&k, &[(1, 2, 0), (1, 0, 2)]);
        match factor(&f, Weights::new(1, 1).unwrap(), &k) {
            Err(Error::RootNotInField(p)) => assert_eq!(p, "u^2 + 1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factor_rejects_non_reduced() {
        let k = q();
        // x^2 y
        let f = poly(&k, &[(1, 2, 1), (1, 0, 3)]);
        assert!(factor(&f, Weights::new(1, 1).unwrap(), &k).is_err());
        // (x - y)^2 = x^2 - 2xy + y^2
        let f = poly(&k, &[(1, 2, 0), (-2, 1, 1), (1, 0, 2)]);
        assert!(matches!(factor(&f, Weights::new(1, 1).unwrap(), &k), Err(Error::NotReduced(_))));
        // y^2 (x - y)
        let f = poly(&k, &[(1, 1, 2), (-1, 0, 3)]);
        assert!(matches!(factor(&f, Weights::new(1, 1).unwrap(), &k), Err(Error::NotReduced(_))));
    }

    #[test]
    fn b_not_in_field() {
        let k = q();
        // x^2 - 2 y^2: a = -2, b^1 = 1/2 fine; x^3 + 2 y^2 weights (2,3): b^2 = -1/2 fails.
        let f = poly(&k, &[(1, 3, 0), (2, 0, 2)]);
        assert!(matches!(factor(&f, Weights::new(2, 3).unwrap(), &k), Err(Error::BNotInField(_))));
    }

    #[test]
    fn branch_conductors() {
        let k = q();
        let one = FieldElement::one(&k);
        let bin = BranchKind::Binomial { a: one.clone(), b: -one };
        assert_eq!(branch_conductor(&BranchKind::AxisY, Weights::new(3, 2).unwrap()), 0);
        assert_eq!(branch_conductor(&bin, Weights::new(3, 2).unwrap()), 2);
        assert_eq!(branch_conductor(&bin, Weights::new(1, 1).unwrap()), 0);
    }

    #[test]
    fn normalization_of_y_family() {
        let k = q();
        let f = poly(&k, &[(1, 2, 1), (-1, 0, 4)]);
        let c = QuasiCurve::new(&k, f.clone(), None).unwrap();
        let t = |e| UniPoly::monomial(FieldElement::one(&k), e);
        assert_eq!(c.normalization_image(&BiPoly::x(&k)), vec![t(1), t(3)]);
        assert_eq!(c.normalization_image(&BiPoly::y(&k)), vec![UniPoly::zero(), t(2)]);
        assert!(c.normalization_image(&f).iter().all(UniPoly::is_zero));
        assert_eq!(c.branch(0).t_degree, 3);
        assert_eq!(c.branch(1).t_degree, 1);
    }

    #[test]
    fn explicit_branches_over_gaussian_field() {
        let k = NumberField::gaussian();
        let i = FieldElement::generator(&k);
        // D_4: x^2 y + y^3 = y (x + i y)(x - i y)
        let f = poly(&k, &[(1, 2, 1), (1, 0, 3)]);
        let c = QuasiCurve::with_branches(
            &k,
            f.clone(),
            None,
            vec![
                BranchInput::AxisY,
                BranchInput::Binomial { a: i.clone(), b: None },
                BranchInput::Binomial { a: -i.clone(), b: None },
            ],
        )
        .unwrap();
        // w_x = 1, so b = -1/a
        assert_eq!(c.branch(1).kind, BranchKind::Binomial { a: i.clone(), b: i.clone() });
        let c = QuasiCurve::with_branches(
            &k,
            f,
            None,
            vec![
                BranchInput::AxisY,
                BranchInput::Binomial { a: i.clone(), b: Some(i.clone()) },
                BranchInput::Binomial { a: -i.clone(), b: Some(-i.clone()) },
            ],
        )
        .unwrap();
        assert_eq!(c.num_branches(), 3);
    }

    #[test]
    fn explicit_branches_must_multiply_to_f() {
        let k = q();
        let f = poly(&k, &[(1, 2, 1), (-1, 0, 4)]);
        let bad = QuasiCurve::with_branches(
            &k,
            f,
            None,
            vec![BranchInput::AxisY, BranchInput::Binomial { a: FieldElement::from_int(&k, 1), b: None }],
        );
        assert!(matches!(bad, Err(Error::InvalidCurve(_))));
    }
}
