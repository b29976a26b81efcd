//! The natural graded connection: ∇_E(v) = w·v on weight-w elements and
//! ∇_D = q·∇_E.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::QuasiCurve;
use crate::derivation::{euler, koszul, q_element, QElement};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gradmod::{
    canonical_embedding, check_c1, check_c2, check_c3, contains, graded_piece, replay, shift, ConditionTable,
    FreeCover, GradedSubmodule, ModuleElement, WitnessTerm,
};
use crate::poly::{monomials_of_degree, BiPoly, UniPoly};
use crate::semigroup::gamma_formula;

pub fn apply_nabla_e(cover: &FreeCover, v: &ModuleElement) -> ModuleElement {
    ModuleElement::from_entries(v.terms().map(|(i, j, e, c)| {
        let w = cover.degree_of(i, j, e);
        ((i, j), UniPoly::monomial(c.scale_int(w), e))
    }))
}

/// Branch i entries of weight w are multiplied by w·q_i.
pub fn apply_nabla_d(cover: &FreeCover, q: &QElement, v: &ModuleElement) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    for (i, j, e, c) in v.terms() {
        let w = cover.degree_of(i, j, e);
        let term = UniPoly::monomial(c.scale_int(w), e);
        let image = q.times(i, &term).ok_or(Error::LeavesCover { branch: i + 1, index: j + 1 })?;
        out = out.add(&ModuleElement::from_entries([((i, j), image)]));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub stable: bool,
    /// ∇_D(m_l), or `None` when it leaves the cover.
    pub images: Vec<Option<ModuleElement>>,
    /// A witness for each image that lies in M.
    pub witnesses: Vec<Option<Vec<WitnessTerm>>>,
}

/// Tests ∇_D(m_l) ∈ M for every generator. Generators suffice since
/// ∇_D(a·m) = a·∇_D(m) + D(a)·m.
pub fn check_stability(curve: &QuasiCurve, m: &GradedSubmodule, q: &QElement) -> Result<Stability> {
    let mut images = Vec::new();
    let mut witnesses = Vec::new();
    let mut stable = true;
    for g in m.generators() {
        match apply_nabla_d(m.cover(), q, g) {
            Ok(img) => {
                let mem = contains(curve, m, &img)?;
                stable &= mem.member;
                witnesses.push(mem.member.then_some(mem.witness));
                images.push(Some(img));
            }
            Err(Error::LeavesCover { .. }) => {
                stable = false;
                witnesses.push(None);
                images.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Stability { stable, images, witnesses })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionPath {
    /// (C1) and (C2) hold on the canonical embedding.
    C2,
    /// (C1) and (C3) hold; the connection lives on M(-λ).
    C3Shift(i64),
    /// Neither condition set holds but ∇_D(M) ⊆ M was checked directly.
    DirectStability,
    None,
}

impl ConnectionPath {
    pub fn label(&self) -> &'static str {
        match self {
            ConnectionPath::C2 => "C2-path",
            ConnectionPath::C3Shift(_) => "C3-shift-path",
            ConnectionPath::DirectStability => "direct-stability",
            ConnectionPath::None => "none",
        }
    }

    pub fn succeeded(&self) -> bool {
        !matches!(self, ConnectionPath::None)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerificationSummary {
    pub leibniz: usize,
    pub graded: usize,
    pub integrable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionReport {
    pub path: ConnectionPath,
    /// w_f - w_x - w_y
    pub koszul_weight: i64,
    pub c1: ConditionTable,
    pub c2: ConditionTable,
    /// Common shift when (C3) holds.
    pub c3: Option<i64>,
    /// The module carrying the connection: the canonical embedding, or its
    /// shift M(-λ) on the C3 path.
    pub module: GradedSubmodule,
    pub q: QElement,
    pub nabla_d_images: Vec<Option<ModuleElement>>,
    pub witnesses: Vec<Option<Vec<WitnessTerm>>>,
    pub verified: Option<VerificationSummary>,
}

impl ConnectionReport {
    /// Replays every stored witness against its ∇_D image.
    pub fn witnesses_replay(&self, curve: &QuasiCurve) -> bool {
        self.nabla_d_images.iter().zip(&self.witnesses).all(|(img, w)| match (img, w) {
            (Some(img), Some(w)) => &replay(curve, &self.module, w) == img,
            _ => true,
        })
    }
}

pub fn natural_connection(curve: &QuasiCurve, m: &GradedSubmodule) -> Result<ConnectionReport> {
    let q = q_element(curve)?;
    let canon = canonical_embedding(curve, m)?;
    let c1 = check_c1(curve, &canon)?;
    let c2 = check_c2(curve, &canon)?;
    let c3 = check_c3(&canon);
    let (path, module, stab) = if c1.all() && c2.all() {
        let stab = check_stability(curve, &canon, &q)?;
        if !stab.stable {
            return Err(Error::Internal("(C1) and (C2) hold but ∇_D(M) is not contained in M".into()));
        }
        (ConnectionPath::C2, canon, stab)
    } else if let (true, Some(lambda)) = (c1.all(), c3) {
        let shifted = shift(&canon, -lambda);
        let stab = check_stability(curve, &shifted, &q)?;
        if !stab.stable {
            return Err(Error::Internal(format!(
                "(C1) and (C3) hold but ∇_D(M({})) is not contained in M({})",
                -lambda, -lambda
            )));
        }
        (ConnectionPath::C3Shift(lambda), shifted, stab)
    } else {
        let stab = check_stability(curve, &canon, &q)?;
        let path = if stab.stable { ConnectionPath::DirectStability } else { ConnectionPath::None };
        (path, canon, stab)
    };
    Ok(ConnectionReport {
        path,
        koszul_weight: curve.koszul_weight(),
        c1,
        c2,
        c3,
        module,
        q,
        nabla_d_images: stab.images,
        witnesses: stab.witnesses,
        verified: None,
    })
}

/// max(w_l) + (w_f - w_x - w_y) + max_i(c_i·d_i) + 2·max(w_x, w_y).
pub fn default_degree_bound(curve: &QuasiCurve, m: &GradedSubmodule) -> Result<i64> {
    let mut cd = 0;
    for (i, br) in curve.branches().iter().enumerate() {
        cd = cd.max(gamma_formula(curve, i)?.conductor * br.t_degree);
    }
    let w = curve.weights();
    Ok(m.max_weight().unwrap_or(0) + curve.koszul_weight() + cd + 2 * w.x.max(w.y))
}

fn fail(property: &str, detail: String) -> Error {
    Error::VerificationFailed { property: property.into(), detail }
}

fn random_ring_element(curve: &QuasiCurve, deg: i64, rng: &mut ChaCha8Rng) -> BiPoly {
    let k = curve.field();
    let w = curve.weights();
    let monos = monomials_of_degree(w.x, w.y, deg);
    BiPoly::from_terms(monos.into_iter().map(|m| (m, FieldElement::sample(k, rng, 5))))
}

fn random_combination(basis: &[ModuleElement], rng: &mut ChaCha8Rng) -> ModuleElement {
    basis.iter().fold(ModuleElement::zero(), |acc, b| {
        acc.add(&b.scale(&FieldElement::sample(b_field(b), rng, 5)))
    })
}

fn b_field(b: &ModuleElement) -> &crate::field::Field {
    b.terms().next().expect("basis vectors are nonzero").3.field()
}

/// Checks Leibniz for E and D on random samples, gradedness on graded-piece
/// bases and [∇_E, ∇_D] = (w_f - w_x - w_y)·∇_D on the same bases, all in
/// degrees up to `degree_bound`.
pub fn verify_properties(
    curve: &QuasiCurve,
    report: &ConnectionReport,
    degree_bound: i64,
    samples: usize,
    seed: u64,
) -> Result<VerificationSummary> {
    if !report.path.succeeded() {
        return Err(fail("precondition", "no connection was constructed".into()));
    }
    let m = &report.module;
    let cover = m.cover();
    let q = &report.q;
    let lambda = curve.koszul_weight();
    let e_der = euler(curve);
    let d_der = koszul(curve);
    let lo = m.min_weight().unwrap_or(0);
    let mut summary = VerificationSummary::default();

    let pieces: Vec<_> = (lo..=degree_bound).map(|w| graded_piece(curve, m, w)).collect();

    for piece in &pieces {
        let w = piece.degree;
        for b in &piece.basis {
            let ne = apply_nabla_e(cover, b);
            if ne != b.scale_int_field(w) {
                return Err(fail("gradedness", format!("∇_E is not {w}·id on a basis vector of M_{w}")));
            }
            let nd = apply_nabla_d(cover, q, b).map_err(|e| fail("gradedness", e.to_string()))?;
            if !nd.is_zero() {
                if nd.degree(cover)? != Some(w + lambda) {
                    return Err(fail("gradedness", format!("∇_D does not map M_{w} to M_{}", w + lambda)));
                }
                if !contains(curve, m, &nd)?.member {
                    return Err(fail("gradedness", format!("∇_D of a basis vector of M_{w} leaves M")));
                }
            }
            summary.graded += 1;

            let lhs = apply_nabla_e(cover, &nd).sub(&apply_nabla_d(cover, q, &ne)?);
            let rhs = nd.scale_int_field(lambda);
            if lhs != rhs {
                return Err(fail("integrability", format!("[∇_E, ∇_D] != {lambda}·∇_D in degree {w}")));
            }
            summary.integrable += 1;
        }
    }

    let nonempty: Vec<&crate::gradmod::GradedPiece> = pieces.iter().filter(|p| p.dim() > 0).collect();
    if nonempty.is_empty() {
        return Ok(summary);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let piece = nonempty.choose(&mut rng).unwrap();
        let v = random_combination(&piece.basis, &mut rng);
        let da = rng.gen_range(0..=(degree_bound - piece.degree).max(0));
        let a = random_ring_element(curve, da, &mut rng);
        let av = v.act(curve, &a);
        for (name, der) in [("E", &e_der), ("D", &d_der)] {
            let nab = |x: &ModuleElement| -> Result<ModuleElement> {
                if name == "E" {
                    Ok(apply_nabla_e(cover, x))
                } else {
                    apply_nabla_d(cover, q, x)
                }
            };
            let lhs = nab(&av).map_err(|e| fail("leibniz", e.to_string()))?;
            let rhs = nab(&v)
                .map_err(|e| fail("leibniz", e.to_string()))?
                .act(curve, &a)
                .add(&v.act(curve, &der.apply(&a)));
            if lhs != rhs {
                return Err(fail(
                    "leibniz",
                    format!("∇_{name}(a·v) != a·∇_{name}(v) + {name}(a)·v for a = {a}, v in M_{}", piece.degree),
                ));
            }
            summary.leibniz += 1;
        }
    }
    Ok(summary)
}

impl ModuleElement {
    fn scale_int_field(&self, n: i64) -> ModuleElement {
        ModuleElement::from_entries(self.entries().map(|(key, p)| {
            (key, UniPoly::from_terms(p.terms().map(|(e, c)| (e, c.scale_int(n)))))
        }))
    }
}
