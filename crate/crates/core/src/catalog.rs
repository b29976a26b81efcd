//! Simple curve singularities A_n, D_n, E_6, E_7, E_8 and the family
//! y(x^n - y^m), with hand-chosen fields and factorizations, plus bundled
//! module fixtures.

use std::fmt;

use num_integer::Integer;

use crate::curve::{BranchInput, BranchKind, QuasiCurve, Weights};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, NumberField};
use crate::gradmod::{FreeCover, GradedSubmodule, ModuleElement};
use crate::poly::BiPoly;
use crate::semigroup::{gamma_formula, NumericalSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A(u32),
    D(u32),
    E(u32),
    YFamily { m: u32, n: u32 },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(n) => write!(f, "A_{n}"),
            Label::D(n) => write!(f, "D_{n}"),
            Label::E(n) => write!(f, "E_{n}"),
            Label::YFamily { m, n } => write!(f, "Y({m},{n})"),
        }
    }
}

impl Label {
    /// Parses `A_2`, `A2`, `D_5`, `E_8`, `Y(3,2)`.
    pub fn parse(s: &str) -> Result<Label> {
        let s = s.trim();
        let bad = || Error::UnknownLabel(format!("{s:?}"));
        if let Some(rest) = s.strip_prefix("Y(").or_else(|| s.strip_prefix("y(")) {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (m, n) = inner.split_once(',').ok_or_else(bad)?;
            let m = m.trim().parse().map_err(|_| bad())?;
            let n = n.trim().parse().map_err(|_| bad())?;
            return Ok(Label::YFamily { m, n });
        }
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str().trim_start_matches('_');
        let idx: u32 = rest.parse().map_err(|_| bad())?;
        match letter.to_ascii_uppercase() {
            'A' => Ok(Label::A(idx)),
            'D' => Ok(Label::D(idx)),
            'E' => Ok(Label::E(idx)),
            _ => Err(bad()),
        }
    }

    /// Builds a label from a family letter and an index.
    pub fn from_parts(family: &str, index: u32) -> Result<Label> {
        Label::parse(&format!("{family}_{index}"))
    }
}

/// A named module presented in the free cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub module: GradedSubmodule,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: Label,
    pub curve: QuasiCurve,
}

impl CatalogEntry {
    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn weights(&self) -> Weights {
        self.curve.weights()
    }

    pub fn f(&self) -> &BiPoly {
        self.curve.f()
    }
}

/// Every supported ADE label.
pub fn ade_labels() -> Vec<Label> {
    let mut out: Vec<Label> = (1..=6).map(Label::A).collect();
    out.extend((4..=6).map(Label::D));
    out.extend((6..=8).map(Label::E));
    out
}

/// Coprime (m, n) with m, n ≤ 10.
pub fn yfamily_labels() -> Vec<Label> {
    let mut out = Vec::new();
    for m in 1..=10u32 {
        for n in 1..=10u32 {
            if m.gcd(&n) == 1 {
                out.push(Label::YFamily { m, n });
            }
        }
    }
    out
}

fn int(k: &Field, n: i64) -> FieldElement {
    FieldElement::from_int(k, n)
}

fn binomial(a: FieldElement, b: FieldElement) -> BranchInput {
    BranchInput::Binomial { a, b: Some(b) }
}

/// x^2 + y^{n+1}, split over the field it needs.
fn a_branches(n: u32) -> Result<(Field, Vec<BranchInput>)> {
    Ok(match n {
        1 => {
            let k = NumberField::gaussian();
            let i = FieldElement::generator(&k);
            (k.clone(), vec![binomial(i.clone(), i.clone()), binomial(-&i, -&i)])
        }
        3 => {
            let k = NumberField::cyclotomic8();
            let z = FieldElement::generator(&k);
            (k.clone(), vec![binomial(z.pow(2), z.clone()), binomial(-z.pow(2), z.pow(3))])
        }
        5 => {
            let k = NumberField::gaussian();
            let i = FieldElement::generator(&k);
            (k.clone(), vec![binomial(i.clone(), -&i), binomial(-&i, i.clone())])
        }
        2 | 4 | 6 => {
            let k = NumberField::rationals();
            (k.clone(), vec![binomial(int(&k, 1), int(&k, -1))])
        }
        _ => return Err(Error::UnknownLabel(format!("A_{n} (supported: A_1..A_6)"))),
    })
}

fn ade_polynomial(k: &Field, label: Label) -> BiPoly {
    let mono = |a, b| BiPoly::monomial(int(k, 1), a, b);
    match label {
        Label::A(n) => &mono(2, 0) + &mono(0, n + 1),
        Label::D(n) => &mono(2, 1) + &mono(0, n - 1),
        Label::E(6) => &mono(3, 0) + &mono(0, 4),
        Label::E(7) => &mono(3, 0) + &mono(1, 3),
        Label::E(8) => &mono(3, 0) + &mono(0, 5),
        _ => unreachable!(),
    }
}

fn build(label: Label) -> Result<(Field, BiPoly, Weights, Vec<BranchInput>)> {
    match label {
        Label::A(n) => {
            let (k, branches) = a_branches(n)?;
            let w = Weights::new((n + 1) as i64, 2).or_else(|_| Weights::new(((n + 1) / 2) as i64, 1))?;
            let f = ade_polynomial(&k, label);
            Ok((k, f, w, branches))
        }
        Label::D(n) if (4..=6).contains(&n) => {
            // y·(x^2 + y^{n-2}) shares its binomial factors with A_{n-3}.
            let (k, mut branches) = a_branches(n - 3)?;
            branches.insert(0, BranchInput::AxisY);
            let w = Weights::new((n - 2) as i64, 2).or_else(|_| Weights::new(((n - 2) / 2) as i64, 1))?;
            let f = ade_polynomial(&k, label);
            Ok((k, f, w, branches))
        }
        Label::E(6) => {
            let k = NumberField::cyclotomic8();
            let z = FieldElement::generator(&k);
            let f = ade_polynomial(&k, label);
            Ok((k.clone(), f, Weights::new(4, 3)?, vec![binomial(int(&k, 1), z)]))
        }
        Label::E(7) => {
            let k = NumberField::rationals();
            let f = ade_polynomial(&k, label);
            Ok((k.clone(), f, Weights::new(3, 2)?, vec![BranchInput::AxisX, binomial(int(&k, 1), int(&k, -1))]))
        }
        Label::E(8) => {
            let k = NumberField::rationals();
            let f = ade_polynomial(&k, label);
            Ok((k.clone(), f, Weights::new(5, 3)?, vec![binomial(int(&k, 1), int(&k, -1))]))
        }
        Label::YFamily { m, n } => {
            if m == 0 || n == 0 || m > 10 || n > 10 || m.gcd(&n) != 1 {
                return Err(Error::UnknownLabel(format!(
                    "Y({m},{n}) (need coprime 1 <= m, n <= 10)"
                )));
            }
            let k = NumberField::rationals();
            let f = &BiPoly::monomial(int(&k, 1), n, 1) - &BiPoly::monomial(int(&k, 1), 0, m + 1);
            let branches = vec![BranchInput::AxisY, binomial(int(&k, -1), int(&k, 1))];
            Ok((k, f, Weights::new(m as i64, n as i64)?, branches))
        }
        _ => Err(Error::UnknownLabel(label.to_string())),
    }
}

/// Fetches and validates an entry.
pub fn catalog_get(label: Label) -> Result<CatalogEntry> {
    let (k, f, w, branches) = build(label)?;
    let curve = QuasiCurve::with_branches(&k, f, Some(w), branches)
        .map_err(|e| Error::Catalog(format!("{label} failed validation: {e}")))?;
    curve
        .validate()
        .map_err(|e| Error::Catalog(format!("{label} failed validation: {e}")))?;
    if !curve.unit().is_one() {
        return Err(Error::Catalog(format!("{label}: unit {} is not 1", curve.unit())));
    }
    Ok(CatalogEntry { label, curve })
}

/// Every ADE entry followed by the listed family members.
pub fn all_entries() -> Result<Vec<CatalogEntry>> {
    ade_labels().into_iter().chain(yfamily_labels()).map(catalog_get).collect()
}

fn one(k: &Field) -> FieldElement {
    FieldElement::one(k)
}

/// ⊕ k[t_i], generated by t_i^k·e_i1 for k = 0 and the gaps of A_i's value
/// semigroup.
pub fn full_normalization(curve: &QuasiCurve) -> Result<GradedSubmodule> {
    let k = curve.field();
    let r = curve.num_branches();
    let cover = FreeCover::new(curve, vec![vec![0]; r])?;
    let mut gens = Vec::new();
    for (i, br) in curve.branches().iter().enumerate() {
        let base = NumericalSemigroup::from_generators(&br.value_generators(curve.weights()))?;
        gens.push(ModuleElement::term(i, 0, one(k), 0));
        for &g in base.gaps() {
            gens.push(ModuleElement::term(i, 0, one(k), g as u32));
        }
    }
    GradedSubmodule::new(cover, gens)
}

/// The maximal ideal (x, y), embedded through n.
pub fn maximal_ideal(curve: &QuasiCurve) -> Result<GradedSubmodule> {
    let k = curve.field();
    let r = curve.num_branches();
    let cover = FreeCover::new(curve, vec![vec![0]; r])?;
    let gens = [BiPoly::x(k), BiPoly::y(k)]
        .iter()
        .map(|g| {
            ModuleElement::from_entries(curve.normalization_image(g).into_iter().enumerate().map(|(i, p)| ((i, 0), p)))
        })
        .collect();
    GradedSubmodule::new(cover, gens)
}

/// A·(e_11 + … + e_r1) with all shifts λ.
pub fn free_cyclic(curve: &QuasiCurve, lambda: i64) -> Result<GradedSubmodule> {
    let k = curve.field();
    let r = curve.num_branches();
    let cover = FreeCover::new(curve, vec![vec![lambda]; r])?;
    let g = (0..r).fold(ModuleElement::zero(), |acc, i| acc.add(&ModuleElement::term(i, 0, one(k), 0)));
    GradedSubmodule::new(cover, vec![g])
}

/// On the cusp x^2 + y^3: shifts (0, 1), generators e_1 and e_2 + t·e_1.
pub fn unstable_cusp(curve: &QuasiCurve) -> Result<GradedSubmodule> {
    let k = curve.field();
    let cover = FreeCover::new(curve, vec![vec![0, 1]])?;
    let g2 = ModuleElement::term(0, 1, one(k), 0).add(&ModuleElement::term(0, 0, one(k), 1));
    GradedSubmodule::new(cover, vec![ModuleElement::term(0, 0, one(k), 0), g2])
}

/// Case (1) on y(x^n - y^m): {e_11 + e_21, t_2^h·e_21}, shifts 0.
pub fn yfamily_case_one(curve: &QuasiCurve, h: u32) -> Result<GradedSubmodule> {
    let k = curve.field();
    let cover = FreeCover::new(curve, vec![vec![0], vec![0]])?;
    let g1 = ModuleElement::term(0, 0, one(k), 0).add(&ModuleElement::term(1, 0, one(k), 0));
    GradedSubmodule::new(cover, vec![g1, ModuleElement::term(1, 0, one(k), h)])
}

/// Case (2) on y(x^n - y^m): {e_11 + t_2^h·e_21, e_21}, f_11 = h, f_21 = 0.
pub fn yfamily_case_two(curve: &QuasiCurve, h: u32) -> Result<GradedSubmodule> {
    let k = curve.field();
    let cover = FreeCover::new(curve, vec![vec![h as i64], vec![0]])?;
    let g1 = ModuleElement::term(0, 0, one(k), 0).add(&ModuleElement::term(1, 0, one(k), h));
    GradedSubmodule::new(cover, vec![g1, ModuleElement::term(1, 0, one(k), 0)])
}

/// Valid h for case (1): positive integers outside Γ_2.
pub fn case_one_heights(curve: &QuasiCurve) -> Result<Vec<u32>> {
    Ok(gamma_formula(curve, 1)?.gaps().into_iter().map(|h| h as u32).collect())
}

/// Valid h for case (2): the gaps of ⟨m, n⟩.
pub fn case_two_heights(curve: &QuasiCurve) -> Result<Vec<u32>> {
    Ok(gamma_formula(curve, 1)?.base.gaps().iter().map(|&h| h as u32).collect())
}

pub fn fixture_modules(entry: &CatalogEntry) -> Result<Vec<Fixture>> {
    let c = &entry.curve;
    let mut out = Vec::new();
    match entry.label {
        Label::YFamily { .. } => {
            for h in case_one_heights(c)? {
                out.push(Fixture { name: format!("case1-h{h}"), module: yfamily_case_one(c, h)? });
            }
            for h in case_two_heights(c)? {
                out.push(Fixture { name: format!("case2-h{h}"), module: yfamily_case_two(c, h)? });
            }
        }
        _ => {
            out.push(Fixture { name: "normalization".into(), module: full_normalization(c)? });
            out.push(Fixture { name: "maximal-ideal".into(), module: maximal_ideal(c)? });
            out.push(Fixture { name: "free-cyclic-2".into(), module: free_cyclic(c, 2)? });
            if entry.label == Label::A(2) {
                out.push(Fixture { name: "unstable".into(), module: unstable_cusp(c)? });
            }
        }
    }
    Ok(out)
}

/// The kinds of each branch, for listings.
pub fn branch_kinds(entry: &CatalogEntry) -> Vec<&BranchKind> {
    entry.curve.branches().iter().map(|b| &b.kind).collect()
}
