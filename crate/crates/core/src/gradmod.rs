//! Graded torsion-free modules as graded submodules of a free cover
//! ⊕ k[t_i]^{s_i}, with basis e_ij of degree f_ij.

use std::collections::{BTreeMap, BTreeSet};

use crate::curve::QuasiCurve;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg;
use crate::poly::{monomials_of_degree, BiPoly, UniPoly};

/// Shifts f_ij per branch, plus the t-degrees d_i of the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCover {
    shifts: Vec<Vec<i64>>,
    t_degrees: Vec<i64>,
}

impl FreeCover {
    pub fn new(curve: &QuasiCurve, shifts: Vec<Vec<i64>>) -> Result<Self> {
        if shifts.len() != curve.num_branches() {
            return Err(Error::InvalidModule(format!(
                "cover has {} branch entries, curve has {} branches",
                shifts.len(),
                curve.num_branches()
            )));
        }
        let t_degrees = curve.branches().iter().map(|b| b.t_degree).collect();
        Ok(FreeCover { shifts, t_degrees })
    }

    pub fn num_branches(&self) -> usize {
        self.shifts.len()
    }

    /// s_i
    pub fn rank(&self, i: usize) -> usize {
        self.shifts[i].len()
    }

    pub fn shifts(&self, i: usize) -> &[i64] {
        &self.shifts[i]
    }

    pub fn all_shifts(&self) -> &[Vec<i64>] {
        &self.shifts
    }

    pub fn shift(&self, i: usize, j: usize) -> i64 {
        self.shifts[i][j]
    }

    pub fn t_degree(&self, i: usize) -> i64 {
        self.t_degrees[i]
    }

    /// Pairs (i, j) in branch-major order.
    pub fn basis(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.shifts
            .iter()
            .enumerate()
            .flat_map(|(i, s)| (0..s.len()).map(move |j| (i, j)))
    }

    /// deg(t_i^e·e_ij) = f_ij + e·d_i.
    pub fn degree_of(&self, i: usize, j: usize, e: u32) -> i64 {
        self.shifts[i][j] + e as i64 * self.t_degrees[i]
    }

    /// The t-exponent e with deg(t_i^e·e_ij) = w, if any.
    pub fn exponent_in_degree(&self, i: usize, j: usize, w: i64) -> Option<u32> {
        let diff = w - self.shifts[i][j];
        let d = self.t_degrees[i];
        (diff >= 0 && diff % d == 0).then(|| (diff / d) as u32)
    }

    /// Coordinates (i, j, e) of the degree-w part of the cover.
    pub fn coordinates(&self, w: i64) -> Vec<(usize, usize, u32)> {
        self.basis()
            .filter_map(|(i, j)| self.exponent_in_degree(i, j, w).map(|e| (i, j, e)))
            .collect()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.shifts.iter().flatten().min().copied()
    }

    fn translated(&self, delta: i64) -> Self {
        FreeCover {
            shifts: self.shifts.iter().map(|s| s.iter().map(|f| f + delta).collect()).collect(),
            t_degrees: self.t_degrees.clone(),
        }
    }
}

/// Σ a_ij(t_i)·e_ij; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleElement {
    entries: BTreeMap<(usize, usize), UniPoly>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c·t_i^e·e_ij
    pub fn term(i: usize, j: usize, c: FieldElement, e: u32) -> Self {
        Self::from_entries([((i, j), UniPoly::monomial(c, e))])
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), UniPoly)>>(entries: I) -> Self {
        let mut out = Self::zero();
        for (key, p) in entries {
            out.add_entry(key, &p);
        }
        out
    }

    fn add_entry(&mut self, key: (usize, usize), p: &UniPoly) {
        let sum = match self.entries.get(&key) {
            Some(old) => old + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &UniPoly)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&UniPoly> {
        self.entries.get(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Monomial terms as (i, j, e, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, u32, &FieldElement)> {
        self.entries
            .iter()
            .flat_map(|(&(i, j), p)| p.terms().map(move |(e, c)| (i, j, e, c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, p) in other.entries() {
            out.add_entry(key, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_entries(self.entries().map(|(k, p)| (k, -p)))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_entries(self.entries().map(|(k, p)| (k, p.scale(c))))
    }

    /// Projection π_i onto branch i.
    pub fn project(&self, i: usize) -> Self {
        Self::from_entries(self.entries().filter(|(k, _)| k.0 == i).map(|(k, p)| (k, p.clone())))
    }

    /// a·v for a ∈ A, acting on branch i through n_i(a).
    pub fn act(&self, curve: &QuasiCurve, a: &BiPoly) -> Self {
        let images = curve.normalization_image(a);
        Self::from_entries(self.entries().map(|((i, j), p)| ((i, j), &images[i] * p)))
    }

    pub fn degrees(&self, cover: &FreeCover) -> BTreeSet<i64> {
        self.terms().map(|(i, j, e, _)| cover.degree_of(i, j, e)).collect()
    }

    /// The degree of a nonzero homogeneous element; `None` for zero.
    pub fn degree(&self, cover: &FreeCover) -> Result<Option<i64>> {
        let degs = self.degrees(cover);
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(Error::NonHomogeneousElement),
        }
    }

    pub fn homogeneous_part(&self, cover: &FreeCover, w: i64) -> Self {
        Self::from_entries(self.terms().filter(|&(i, j, e, _)| cover.degree_of(i, j, e) == w).map(
            |(i, j, e, c)| ((i, j), UniPoly::monomial(c.clone(), e)),
        ))
    }

    /// Coordinates on `coords` (from [`FreeCover::coordinates`]).
    pub fn to_vector(&self, k: &Field, coords: &[(usize, usize, u32)]) -> Vec<FieldElement> {
        coords
            .iter()
            .map(|&(i, j, e)| {
                self.entry(i, j)
                    .and_then(|p| p.coeff(e))
                    .cloned()
                    .unwrap_or_else(|| FieldElement::zero(k))
            })
            .collect()
    }

    pub fn from_vector(coords: &[(usize, usize, u32)], v: &[FieldElement]) -> Self {
        Self::from_entries(
            coords
                .iter()
                .zip(v)
                .map(|(&(i, j, e), c)| ((i, j), UniPoly::monomial(c.clone(), e))),
        )
    }

    fn check_in_cover(&self, cover: &FreeCover) -> Result<()> {
        for ((i, j), _) in self.entries() {
            if i >= cover.num_branches() || j >= cover.rank(i) {
                return Err(Error::InvalidModule(format!(
                    "entry (branch {}, index {}) is outside the cover",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// M = A·{m_l} inside a free cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubmodule {
    cover: FreeCover,
    generators: Vec<ModuleElement>,
    weights: Vec<i64>,
}

impl GradedSubmodule {
    /// Every generator must be nonzero, homogeneous and inside the cover.
    pub fn new(cover: FreeCover, generators: Vec<ModuleElement>) -> Result<Self> {
        let mut weights = Vec::with_capacity(generators.len());
        for (l, m) in generators.iter().enumerate() {
            m.check_in_cover(&cover)?;
            match m.degree(&cover) {
                Ok(Some(w)) => weights.push(w),
                Ok(None) => return Err(Error::InvalidModule(format!("generator {} is zero", l + 1))),
                Err(_) => {
                    return Err(Error::InvalidModule(format!(
                        "generator {} is not homogeneous: degrees {:?}",
                        l + 1,
                        m.degrees(&cover)
                    )))
                }
            }
        }
        Ok(GradedSubmodule { cover, generators, weights })
    }

    pub fn cover(&self) -> &FreeCover {
        &self.cover
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    /// w_l
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.weights.iter().min().copied()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.weights.iter().max().copied()
    }
}

/// One term c·n(x^a y^b)·m_l of a membership witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub generator: usize,
    pub monomial: (u32, u32),
    pub coeff: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Vec<WitnessTerm>,
}

/// Basis of M_w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: i64,
    pub basis: Vec<ModuleElement>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Spanning set {n(h)·m_l : h monomial of degree w - w_l} of M_w, with the
/// (l, h) each vector came from.
fn spanning_set(curve: &QuasiCurve, m: &GradedSubmodule, w: i64) -> Vec<(usize, (u32, u32), ModuleElement)> {
    let wt = curve.weights();
    let k = curve.field();
    let mut out = Vec::new();
    for (l, (g, &wl)) in m.generators.iter().zip(&m.weights).enumerate() {
        if w < wl {
            continue;
        }
        for (a, b) in monomials_of_degree(wt.x, wt.y, w - wl) {
            let h = BiPoly::monomial(FieldElement::one(k), a, b);
            let v = g.act(curve, &h);
            if !v.is_zero() {
                out.push((l, (a, b), v));
            }
        }
    }
    out
}

pub fn graded_piece(curve: &QuasiCurve, m: &GradedSubmodule, w: i64) -> GradedPiece {
    let k = curve.field();
    let coords = m.cover.coordinates(w);
    let rows: Vec<Vec<FieldElement>> = spanning_set(curve, m, w)
        .into_iter()
        .map(|(_, _, v)| v.to_vector(k, &coords))
        .collect();
    let red = linalg::rref(rows, coords.len());
    GradedPiece {
        degree: w,
        basis: red.rows.iter().map(|r| ModuleElement::from_vector(&coords, r)).collect(),
    }
}

/// Decides v ∈ M for homogeneous v and returns a witness when it is.
pub fn contains(curve: &QuasiCurve, m: &GradedSubmodule, v: &ModuleElement) -> Result<Membership> {
    v.check_in_cover(&m.cover)?;
    let Some(w) = v.degree(&m.cover)? else {
        return Ok(Membership { member: true, witness: Vec::new() });
    };
    let k = curve.field();
    let coords = m.cover.coordinates(w);
    let span = spanning_set(curve, m, w);
    let vecs: Vec<Vec<FieldElement>> = span.iter().map(|(_, _, s)| s.to_vector(k, &coords)).collect();
    let matrix: Vec<Vec<FieldElement>> = (0..coords.len())
        .map(|r| vecs.iter().map(|col| col[r].clone()).collect())
        .collect();
    let target = v.to_vector(k, &coords);
    Ok(match linalg::solve(k, &matrix, span.len(), &target)? {
        Some(x) => Membership {
            member: true,
            witness: span
                .iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|((l, mono, _), coeff)| WitnessTerm { generator: *l, monomial: *mono, coeff })
                .collect(),
        },
        None => Membership { member: false, witness: Vec::new() },
    })
}

/// Σ c·n(x^a y^b)·m_l.
pub fn replay(curve: &QuasiCurve, m: &GradedSubmodule, witness: &[WitnessTerm]) -> ModuleElement {
    witness.iter().fold(ModuleElement::zero(), |acc, t| {
        let h = BiPoly::monomial(t.coeff.clone(), t.monomial.0, t.monomial.1);
        acc.add(&m.generators[t.generator].act(curve, &h))
    })
}

/// Per-branch graded column reduction: replaces the cover by a minimal
/// homogeneous basis of each k[t_i]-module π_i(M)·k[t_i] and rewrites the
/// generators in it.
pub fn canonical_embedding(curve: &QuasiCurve, m: &GradedSubmodule) -> Result<GradedSubmodule> {
    let k = curve.field();
    let cover = &m.cover;
    let r = cover.num_branches();
    // New basis per branch, as (degree, element of the old cover).
    let mut bases: Vec<Vec<(i64, ModuleElement)>> = vec![Vec::new(); r];
    for (i, basis) in bases.iter_mut().enumerate() {
        let d = cover.t_degree(i);
        let mut by_degree: BTreeMap<i64, Vec<ModuleElement>> = BTreeMap::new();
        for (g, &w) in m.generators.iter().zip(&m.weights) {
            let p = g.project(i);
            if !p.is_zero() {
                by_degree.entry(w).or_default().push(p);
            }
        }
        for (w, projs) in by_degree {
            let coords: Vec<(usize, usize, u32)> =
                cover.coordinates(w).into_iter().filter(|c| c.0 == i).collect();
            let lower: Vec<Vec<FieldElement>> = basis
                .iter()
                .filter(|(bw, _)| (w - bw) % d == 0)
                .map(|(bw, b)| {
                    let e = ((w - bw) / d) as u32;
                    let tb = b.act_t(i, e);
                    tb.to_vector(k, &coords)
                })
                .collect();
            let lower_pivots: BTreeSet<usize> = linalg::rref(lower.clone(), coords.len()).pivots.into_iter().collect();
            let mut all = lower;
            all.extend(projs.iter().map(|p| p.to_vector(k, &coords)));
            let red = linalg::rref(all, coords.len());
            for (row, p) in red.rows.iter().zip(&red.pivots) {
                if !lower_pivots.contains(p) {
                    basis.push((w, ModuleElement::from_vector(&coords, row)));
                }
            }
        }
    }
    let new_shifts: Vec<Vec<i64>> = bases.iter().map(|b| b.iter().map(|(w, _)| *w).collect()).collect();
    let new_cover = FreeCover { shifts: new_shifts, t_degrees: cover.t_degrees.clone() };
    let mut new_gens = Vec::with_capacity(m.generators.len());
    for (g, &w) in m.generators.iter().zip(&m.weights) {
        let mut out = ModuleElement::zero();
        for (i, basis) in bases.iter().enumerate() {
            let p = g.project(i);
            if p.is_zero() {
                continue;
            }
            let d = cover.t_degree(i);
            let coords: Vec<(usize, usize, u32)> =
                cover.coordinates(w).into_iter().filter(|c| c.0 == i).collect();
            let usable: Vec<(usize, u32)> = basis
                .iter()
                .enumerate()
                .filter(|(_, (bw, _))| *bw <= w && (w - bw) % d == 0)
                .map(|(j, (bw, _))| (j, ((w - bw) / d) as u32))
                .collect();
            let cols: Vec<Vec<FieldElement>> =
                usable.iter().map(|&(j, e)| basis[j].1.act_t(i, e).to_vector(k, &coords)).collect();
            let matrix: Vec<Vec<FieldElement>> = (0..coords.len())
                .map(|row| cols.iter().map(|c| c[row].clone()).collect())
                .collect();
            let Some(x) = linalg::solve(k, &matrix, usable.len(), &p.to_vector(k, &coords))? else {
                return Err(Error::Internal(format!(
                    "generator not expressible in the reduced basis of branch {}",
                    i + 1
                )));
            };
            for (&(j, e), c) in usable.iter().zip(x) {
                out = out.add(&ModuleElement::term(i, j, c, e));
            }
        }
        new_gens.push(out);
    }
    GradedSubmodule::new(new_cover, new_gens)
}

impl ModuleElement {
    /// t_i^e·v (only branch i entries are touched).
    fn act_t(&self, i: usize, e: u32) -> Self {
        Self::from_entries(self.entries().map(|((bi, j), p)| {
            let q = if bi == i {
                UniPoly::from_terms(p.terms().map(|(x, c)| (x + e, c.clone())))
            } else {
                p.clone()
            };
            ((bi, j), q)
        }))
    }
}

/// One verdict per basis element e_ij.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionTable {
    pub entries: Vec<ConditionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub branch: usize,
    pub index: usize,
    pub holds: bool,
}

impl ConditionTable {
    pub fn all(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<bool> {
        self.entries.iter().find(|e| e.branch == i && e.index == j).map(|e| e.holds)
    }
}

/// (C1): some u ∈ M_{f_ij} has π_i(u) = e_ij.
pub fn check_c1(curve: &QuasiCurve, m: &GradedSubmodule) -> Result<ConditionTable> {
    let k = curve.field();
    let mut entries = Vec::new();
    for (i, j) in m.cover.basis() {
        let w = m.cover.shift(i, j);
        let coords: Vec<(usize, usize, u32)> =
            m.cover.coordinates(w).into_iter().filter(|c| c.0 == i).collect();
        let span = spanning_set(curve, m, w);
        let cols: Vec<Vec<FieldElement>> = span.iter().map(|(_, _, v)| v.to_vector(k, &coords)).collect();
        let matrix: Vec<Vec<FieldElement>> = (0..coords.len())
            .map(|row| cols.iter().map(|c| c[row].clone()).collect())
            .collect();
        let target = ModuleElement::term(i, j, FieldElement::one(k), 0).to_vector(k, &coords);
        let holds = linalg::solve(k, &matrix, span.len(), &target)?.is_some();
        entries.push(ConditionEntry { branch: i, index: j, holds });
    }
    Ok(ConditionTable { entries })
}

/// (C2): t_i^{g_i}·e_ij ∈ M. Fails when g_i < 0.
pub fn check_c2(curve: &QuasiCurve, m: &GradedSubmodule) -> Result<ConditionTable> {
    let k = curve.field();
    let mut entries = Vec::new();
    for (i, j) in m.cover.basis() {
        let g = crate::semigroup::gamma_formula(curve, i)?.frobenius;
        let holds = if g < 0 {
            false
        } else {
            contains(curve, m, &ModuleElement::term(i, j, FieldElement::one(k), g as u32))?.member
        };
        entries.push(ConditionEntry { branch: i, index: j, holds });
    }
    Ok(ConditionTable { entries })
}

/// (C3): all f_ij equal; returns the common value.
pub fn check_c3(m: &GradedSubmodule) -> Option<i64> {
    let mut shifts = m.cover.shifts.iter().flatten();
    let first = *shifts.next()?;
    shifts.all(|&f| f == first).then_some(first)
}

/// M(δ): every f_ij and w_l increased by δ.
pub fn shift(m: &GradedSubmodule, delta: i64) -> GradedSubmodule {
    GradedSubmodule {
        cover: m.cover.translated(delta),
        generators: m.generators.clone(),
        weights: m.weights.iter().map(|w| w + delta).collect(),
    }
}
