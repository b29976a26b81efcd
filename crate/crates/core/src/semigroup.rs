//! Numerical semigroups and the per-branch semigroups
//! Γ_i = { γ : (0, …, t_i^γ, …, 0) ∈ A }.
//!
//! Γ_i is computed two ways: in closed form as a shift of the branch value
//! semigroup ([`gamma_formula`]), and by deciding membership of each
//! indicator vector in the image of k[x,y] with linear algebra
//! ([`gamma_oracle`]).

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::curve::QuasiCurve;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg;
use crate::poly::monomials_of_degree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators[0] == 0 {
            return Err(Error::InvalidSemigroup("generators must be positive and nonempty".into()));
        }
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::InvalidSemigroup(format!("gcd of {generators:?} is {g}")));
        }
        let (lo, hi) = (generators[0], *generators.last().unwrap());
        // Every integer >= (lo - 1)(hi - 1) is a member.
        let bound = ((lo - 1) * (hi - 1)) as usize;
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for n in 1..=bound {
            member[n] = generators
                .iter()
                .any(|&a| a as usize <= n && member[n - a as usize]);
        }
        let gaps: Vec<u64> = (0..=bound).filter(|&n| !member[n]).map(|n| n as u64).collect();
        let conductor = gaps.last().map_or(0, |g| g + 1);
        Ok(NumericalSemigroup { generators, gaps, conductor })
    }

    /// N_0 = ⟨1⟩.
    pub fn naturals() -> Self {
        Self::from_generators(&[1]).unwrap()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn conductor(&self) -> i64 {
        self.conductor as i64
    }

    /// conductor - 1; -1 for N_0.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && (n as u64 >= self.conductor || self.gaps.binary_search(&(n as u64)).is_err())
    }

    /// γ ∈ S ⇔ g - γ ∉ S for 0 ≤ γ ≤ g.
    pub fn is_symmetric(&self) -> bool {
        let g = self.frobenius();
        (0..=g).all(|n| self.contains(n) != self.contains(g - n))
    }
}

/// Γ_i as `shift + base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSemigroup {
    pub shift: i64,
    pub base: NumericalSemigroup,
    /// c_i
    pub conductor: i64,
    /// g_i = c_i - 1
    pub frobenius: i64,
}

impl ShiftedSemigroup {
    pub fn new(shift: i64, base: NumericalSemigroup) -> Self {
        let conductor = shift + base.conductor();
        ShiftedSemigroup { shift, base, conductor, frobenius: conductor - 1 }
    }

    pub fn contains(&self, gamma: i64) -> bool {
        gamma >= self.shift && self.base.contains(gamma - self.shift)
    }

    pub fn members_up_to(&self, bound: i64) -> BTreeSet<i64> {
        (0..=bound).filter(|&g| self.contains(g)).collect()
    }

    /// Positive integers outside Γ.
    pub fn gaps(&self) -> Vec<i64> {
        (1..self.conductor).filter(|&g| !self.contains(g)).collect()
    }
}

/// Γ_i from the branch data: shift (w_f - w_i)/d_i over the value
/// semigroup of A_i, so that c_i = (w_f - w_i)/d_i + c(A_i).
pub fn gamma_formula(curve: &QuasiCurve, i: usize) -> Result<ShiftedSemigroup> {
    let br = curve.branch(i);
    let num = curve.weight() - br.weight;
    if num % br.t_degree != 0 {
        return Err(Error::Internal(format!(
            "branch {}: (w_f - w_i) = {num} is not divisible by d_i = {}",
            i + 1,
            br.t_degree
        )));
    }
    let base = NumericalSemigroup::from_generators(&br.value_generators(curve.weights()))?;
    if base.conductor() != br.conductor {
        return Err(Error::Internal(format!(
            "branch {}: value semigroup conductor {} != c(A_i) = {}",
            i + 1,
            base.conductor(),
            br.conductor
        )));
    }
    Ok(ShiftedSemigroup::new(num / br.t_degree, base))
}

/// Membership table for Γ_i on `[0, bound]`, decided by linear algebra in
/// each graded piece of n(k[x,y]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTable {
    pub branch: usize,
    pub bound: i64,
    pub members: BTreeSet<i64>,
    /// Set when `bound` is below the conductor the formula predicts, so the
    /// table cannot confirm the tail.
    pub bound_below_conductor: bool,
}

/// Is the indicator t_i^γ·e_i in the image of k[x,y]?
pub fn indicator_in_ring(curve: &QuasiCurve, i: usize, gamma: i64) -> Result<bool> {
    let k = curve.field();
    let w = curve.weights();
    let r = curve.num_branches();
    let deg = gamma * curve.branch(i).t_degree;
    let monos = monomials_of_degree(w.x, w.y, deg);
    let mut rows = vec![vec![FieldElement::zero(k); monos.len()]; r];
    for (col, &(a, b)) in monos.iter().enumerate() {
        for (j, row) in rows.iter_mut().enumerate() {
            if let Some((c, e)) = curve.monomial_image(j, a, b) {
                if e as i64 * curve.branch(j).t_degree != deg {
                    return Err(Error::Internal(format!(
                        "n_{} is not graded on x^{a} y^{b}",
                        j + 1
                    )));
                }
                row[col] = c;
            }
        }
    }
    let mut target = vec![FieldElement::zero(k); r];
    target[i] = FieldElement::one(k);
    Ok(linalg::solve(k, &rows, monos.len(), &target)?.is_some())
}

pub fn gamma_oracle(curve: &QuasiCurve, i: usize, bound: i64) -> Result<OracleTable> {
    let mut members = BTreeSet::new();
    for gamma in 0..=bound {
        if indicator_in_ring(curve, i, gamma)? {
            members.insert(gamma);
        }
    }
    let predicted = gamma_formula(curve, i)?.conductor;
    Ok(OracleTable {
        branch: i,
        bound,
        members,
        bound_below_conductor: bound < predicted,
    })
}

/// Default oracle bound c_i + 10.
pub fn default_oracle_bound(gamma: &ShiftedSemigroup) -> i64 {
    gamma.conductor + 10
}

/// Compares the oracle with the closed form on `[0, bound]`.
pub fn oracle_agrees(curve: &QuasiCurve, i: usize, bound: i64) -> Result<bool> {
    let formula = gamma_formula(curve, i)?;
    let table = gamma_oracle(curve, i, bound)?;
    Ok(table.members == formula.members_up_to(bound))
}
