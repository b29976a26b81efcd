//! Exact Gaussian elimination over a number field.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<FieldElement>>,
    pub pivots: Vec<usize>,
}

pub fn rref(mut rows: Vec<Vec<FieldElement>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

/// Result of [`linear_solve`].
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// A particular solution, free variables set to zero; `None` when the
    /// system is inconsistent.
    pub solution: Option<Vec<FieldElement>>,
    pub nullspace: Vec<Vec<FieldElement>>,
}

fn check_dims(a: &[Vec<FieldElement>], ncols: usize) -> Result<()> {
    if let Some((i, row)) = a.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(Error::DimensionMismatch(format!(
            "row {i} has {} entries, expected {ncols}",
            row.len()
        )));
    }
    Ok(())
}

/// Solves `a · x = b` exactly, optionally returning a nullspace basis of `a`.
pub fn linear_solve(
    k: &Field,
    a: &[Vec<FieldElement>],
    ncols: usize,
    b: &[FieldElement],
    with_nullspace: bool,
) -> Result<LinearSolution> {
    check_dims(a, ncols)?;
    if b.len() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but right-hand side of length {}",
            a.len(),
            b.len()
        )));
    }
    let augmented = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let red = rref(augmented, ncols + 1);
    let solution = if red.pivots.last() == Some(&ncols) {
        None
    } else {
        let mut x = vec![FieldElement::zero(k); ncols];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            x[p] = row[ncols].clone();
        }
        Some(x)
    };
    let nullspace = if with_nullspace {
        nullspace_from(k, &red, ncols)
    } else {
        Vec::new()
    };
    Ok(LinearSolution { solution, nullspace })
}

pub fn solve(k: &Field, a: &[Vec<FieldElement>], ncols: usize, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
    Ok(linear_solve(k, a, ncols, b, false)?.solution)
}

fn nullspace_from(k: &Field, red: &Rref, ncols: usize) -> Vec<Vec<FieldElement>> {
    let pivots: Vec<usize> = red.pivots.iter().copied().filter(|&p| p < ncols).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![FieldElement::zero(k); ncols];
            v[free] = FieldElement::one(k);
            for (row, &p) in red.rows.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect()
}

pub fn nullspace(k: &Field, a: &[Vec<FieldElement>], ncols: usize) -> Result<Vec<Vec<FieldElement>>> {
    check_dims(a, ncols)?;
    let red = rref(a.to_vec(), ncols);
    Ok(nullspace_from(k, &red, ncols))
}

pub fn rank(a: &[Vec<FieldElement>], ncols: usize) -> usize {
    rref(a.to_vec(), ncols).pivots.len()
}

pub fn mat_vec(k: &Field, a: &[Vec<FieldElement>], x: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(FieldElement::zero(k), |acc, (r, v)| acc + r * v)
        })
        .collect()
}
