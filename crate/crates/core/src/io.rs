//! JSON formats for curves and modules. Branch and basis indices are
//! 1-based on the wire; field elements are arrays of `"p/q"` strings over
//! the power basis 1, α, …, α^{d-1}.

use serde::{Deserialize, Serialize};

use crate::curve::{BranchInput, BranchKind, QuasiCurve, Weights};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, FieldElement, NumberField};
use crate::gradmod::{FreeCover, GradedSubmodule, ModuleElement};
use crate::poly::{BiPoly, UniPoly};

pub type FieldElementSpec = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Coefficients of the minimal polynomial, constant term first.
    pub min_poly: Vec<String>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { min_poly: vec!["0/1".into(), "1/1".into()] }
    }

    pub fn to_field(&self) -> Result<Field> {
        let coeffs = self.min_poly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        NumberField::new(coeffs)
    }

    pub fn from_field(k: &Field) -> Self {
        FieldSpec { min_poly: k.min_poly().iter().map(format_rational).collect() }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::rationals()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: FieldElementSpec,
    pub x: u32,
    pub y: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BranchSpec {
    AxisX,
    AxisY,
    Binomial {
        a: FieldElementSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<FieldElementSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[i64; 2]>,
    pub f: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchSpec>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("{what}: {e} (line {}, column {})", e.line(), e.column()))
    })
}

fn element(k: &Field, spec: &FieldElementSpec, what: &str) -> Result<FieldElement> {
    FieldElement::from_strings(k, spec).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn bipoly_from_terms(k: &Field, terms: &[TermSpec]) -> Result<BiPoly> {
    let mut out = BiPoly::zero();
    for (n, t) in terms.iter().enumerate() {
        let c = element(k, &t.coeff, &format!("f[{n}].coeff"))?;
        out = &out + &BiPoly::monomial(c, t.x, t.y);
    }
    Ok(out)
}

pub fn bipoly_to_terms(p: &BiPoly) -> Vec<TermSpec> {
    p.terms()
        .map(|((x, y), c)| TermSpec { coeff: c.to_strings(), x, y })
        .collect()
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json("curve", text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve spec serializes")
    }

    pub fn to_curve(&self) -> Result<QuasiCurve> {
        let k = self.field.to_field()?;
        let f = bipoly_from_terms(&k, &self.f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let weights = match self.weights {
            Some([wx, wy]) => Some(Weights::new(wx, wy)?),
            None => None,
        };
        match &self.branches {
            None => QuasiCurve::new(&k, f, weights),
            Some(specs) => {
                let mut inputs = Vec::with_capacity(specs.len());
                for (n, s) in specs.iter().enumerate() {
                    inputs.push(match s {
                        BranchSpec::AxisX => BranchInput::AxisX,
                        BranchSpec::AxisY => BranchInput::AxisY,
                        BranchSpec::Binomial { a, b } => BranchInput::Binomial {
                            a: element(&k, a, &format!("branches[{n}].a"))?,
                            b: b.as_ref().map(|b| element(&k, b, &format!("branches[{n}].b"))).transpose()?,
                        },
                    });
                }
                QuasiCurve::with_branches(&k, f, weights, inputs)
            }
        }
    }

    /// Full description, with weights and explicit branches.
    pub fn from_curve(curve: &QuasiCurve) -> Self {
        let w = curve.weights();
        CurveSpec {
            field: FieldSpec::from_field(curve.field()),
            weights: Some([w.x, w.y]),
            f: bipoly_to_terms(curve.f()),
            branches: Some(
                curve
                    .branches()
                    .iter()
                    .map(|b| match &b.kind {
                        BranchKind::AxisX => BranchSpec::AxisX,
                        BranchKind::AxisY => BranchSpec::AxisY,
                        BranchKind::Binomial { a, b } => BranchSpec::Binomial {
                            a: a.to_strings(),
                            b: Some(b.to_strings()),
                        },
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub branch: usize,
    pub shifts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub branch: usize,
    pub index: usize,
    pub coeff: FieldElementSpec,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub cover: Vec<CoverSpec>,
    pub generators: Vec<Vec<EntrySpec>>,
}

pub fn element_to_entries(v: &ModuleElement) -> Vec<EntrySpec> {
    v.terms()
        .map(|(i, j, e, c)| EntrySpec { branch: i + 1, index: j + 1, coeff: c.to_strings(), exp: e })
        .collect()
}

pub fn element_from_entries(k: &Field, entries: &[EntrySpec], what: &str) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    for (n, t) in entries.iter().enumerate() {
        if t.branch == 0 || t.index == 0 {
            return Err(Error::Parse(format!("{what}[{n}]: branch and index are 1-based")));
        }
        let c = element(k, &t.coeff, &format!("{what}[{n}].coeff"))?;
        out = out.add(&ModuleElement::from_entries([((t.branch - 1, t.index - 1), UniPoly::monomial(c, t.exp))]));
    }
    Ok(out)
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json("module", text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("module spec serializes")
    }

    pub fn to_module(&self, curve: &QuasiCurve) -> Result<GradedSubmodule> {
        let r = curve.num_branches();
        let mut shifts: Vec<Option<Vec<i64>>> = vec![None; r];
        for c in &self.cover {
            if c.branch == 0 || c.branch > r {
                return Err(Error::InvalidModule(format!(
                    "cover branch {} out of range 1..={r}",
                    c.branch
                )));
            }
            if shifts[c.branch - 1].replace(c.shifts.clone()).is_some() {
                return Err(Error::InvalidModule(format!("cover branch {} listed twice", c.branch)));
            }
        }
        let cover = FreeCover::new(curve, shifts.into_iter().map(Option::unwrap_or_default).collect())?;
        let k = curve.field();
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(l, g)| element_from_entries(k, g, &format!("generators[{l}]")))
            .collect::<Result<Vec<_>>>()?;
        GradedSubmodule::new(cover, gens)
    }

    pub fn from_module(m: &GradedSubmodule) -> Self {
        let cover = m
            .cover()
            .all_shifts()
            .iter()
            .enumerate()
            .map(|(i, s)| CoverSpec { branch: i + 1, shifts: s.clone() })
            .collect();
        ModuleSpec {
            cover,
            generators: m.generators().iter().map(element_to_entries).collect(),
        }
    }
}
