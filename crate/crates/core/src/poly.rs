//! Sparse univariate polynomials k[t] and bivariate polynomials k[x,y].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, FieldElement>, key: K, c: FieldElement) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, first: bool, c: &FieldElement, mono: &str) -> fmt::Result {
    let neg_one = c == &-FieldElement::one(c.field());
    let text = if mono.is_empty() {
        format!("{c}")
    } else if c.is_one() {
        mono.to_string()
    } else if neg_one {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    };
    if first {
        write!(f, "{text}")
    } else if let Some(rest) = text.strip_prefix('-') {
        write!(f, " - {rest}")
    } else {
        write!(f, " + {text}")
    }
}

/// Element of k[t], one branch of the normalization.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, FieldElement>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: FieldElement, e: u32) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, e, c);
        p
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, FieldElement)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            insert_term(&mut p.terms, e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &FieldElement)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u32) -> Option<&FieldElement> {
        self.terms.get(&e)
    }

    /// `Some((c, e))` when the polynomial is the single term c·t^e.
    pub fn as_monomial(&self) -> Option<(&FieldElement, u32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    /// Multiplies by c·t^shift; fails if a term would get a negative exponent.
    pub fn mul_laurent_monomial(&self, c: &FieldElement, shift: i64) -> Option<Self> {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            let ne = *e as i64 + shift;
            let prod = a * c;
            if prod.is_zero() {
                continue;
            }
            if ne < 0 {
                return None;
            }
            insert_term(&mut out.terms, ne as u32, prod);
        }
        Some(out)
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c.scale_int(*e as i64))),
        )
    }

    pub fn pow(&self, k: &Field, n: u32) -> Self {
        if let Some((c, e)) = self.as_monomial() {
            return Self::monomial(c.pow(n), e * n);
        }
        let mut acc = Self::constant(FieldElement::one(k));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; reports the remainder when `q` does not divide `self`.
    pub fn exact_div(&self, q: &UniPoly) -> Result<UniPoly> {
        let (lead_e, lead_c) = match q.terms.iter().next_back() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::ZeroPolynomial),
        };
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        let mut stuck = UniPoly::zero();
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            if e < lead_e {
                break;
            }
            let factor = c * &lead_inv;
            let step = UniPoly::monomial(factor.clone(), e - lead_e);
            rem = &rem - &(&step * q);
            insert_term(&mut quot.terms, e - lead_e, factor);
        }
        for (e, c) in rem.terms {
            insert_term(&mut stuck.terms, e, c);
        }
        if stuck.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NonExactDivision {
                remainder: stuck.display("t"),
            })
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.field());
        for (e, c) in &self.terms {
            acc = acc + c * &x.pow(*e);
        }
        acc
    }

    pub fn display(&self, var: &str) -> String {
        struct D<'a>(&'a UniPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return write!(f, "0");
                }
                for (i, (e, c)) in self.0.terms.iter().rev().enumerate() {
                    let mono = match e {
                        0 => String::new(),
                        1 => self.1.to_string(),
                        _ => format!("{}^{e}", self.1),
                    };
                    fmt_coeff_term(f, i == 0, c, &mono)?;
                }
                Ok(())
            }
        }
        D(self, var).to_string()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            insert_term(&mut out.terms, *e, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            insert_term(&mut out.terms, *e, -c);
        }
        out
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                insert_term(&mut out.terms, e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

/// Element of k[x,y], keyed by (x-exponent, y-exponent).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), FieldElement>,
}

/// Exponent pairs (a, b) with a·w_x + b·w_y = deg, in ascending a.
pub fn monomials_of_degree(wx: i64, wy: i64, deg: i64) -> Vec<(u32, u32)> {
    if deg < 0 {
        return Vec::new();
    }
    (0..=deg / wx)
        .filter_map(|a| {
            let rest = deg - a * wx;
            (rest % wy == 0).then(|| (a as u32, (rest / wy) as u32))
        })
        .collect()
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: FieldElement, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, (a, b), c);
        p
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x(k: &Field) -> Self {
        Self::monomial(FieldElement::one(k), 1, 0)
    }

    pub fn y(k: &Field) -> Self {
        Self::monomial(FieldElement::one(k), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), FieldElement)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            insert_term(&mut p.terms, k, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &FieldElement)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Option<&FieldElement> {
        self.terms.get(&(a, b))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn pow(&self, k: &Field, n: u32) -> Self {
        let mut acc = Self::constant(FieldElement::one(k));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c.scale_int(*a as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((*a, b - 1), c.scale_int(*b as i64))),
        )
    }

    /// The set of weighted degrees a·w_x + b·w_y occurring in the support.
    pub fn weighted_degrees(&self, wx: i64, wy: i64) -> BTreeSet<i64> {
        self.terms
            .keys()
            .map(|(a, b)| *a as i64 * wx + *b as i64 * wy)
            .collect()
    }

    /// The common weighted degree of all terms.
    pub fn weighted_degree(&self, wx: i64, wy: i64) -> Result<i64> {
        let degs = self.weighted_degrees(wx, wy);
        match degs.len() {
            0 => Err(Error::ZeroPolynomial),
            1 => Ok(*degs.iter().next().unwrap()),
            _ => Err(Error::NotHomogeneous {
                degrees: degs.into_iter().collect(),
            }),
        }
    }

    /// The terms of weighted degree `deg`.
    pub fn homogeneous_part(&self, wx: i64, wy: i64, deg: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((a, b), _)| *a as i64 * wx + *b as i64 * wy == deg)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn min_exponents(&self) -> Option<(u32, u32)> {
        let a = self.terms.keys().map(|k| k.0).min()?;
        let b = self.terms.keys().map(|k| k.1).min()?;
        Some((a, b))
    }

    /// Exact division by `q`, using lex order with x > y. A single divisor is
    /// its own Gröbner basis, so a nonzero remainder means `q` does not
    /// divide `self`.
    pub fn exact_div(&self, q: &BiPoly) -> Result<BiPoly> {
        let ((la, lb), lc) = match q.terms.iter().next_back() {
            Some((k, c)) => (*k, c.clone()),
            None => return Err(Error::ZeroPolynomial),
        };
        let lead_inv = lc.inv()?;
        let mut p = self.clone();
        let mut quot = BiPoly::zero();
        let mut rem = BiPoly::zero();
        while let Some((&(a, b), c)) = p.terms.iter().next_back() {
            let c = c.clone();
            if a >= la && b >= lb {
                let factor = &c * &lead_inv;
                let step = BiPoly::monomial(factor.clone(), a - la, b - lb);
                p = &p - &(&step * q);
                insert_term(&mut quot.terms, (a - la, b - lb), factor);
            } else {
                p.terms.remove(&(a, b));
                insert_term(&mut rem.terms, (a, b), c);
            }
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NonExactDivision {
                remainder: rem.to_string(),
            })
        }
    }

    /// Substitutes x ↦ `nx`, y ↦ `ny`.
    pub fn substitute(&self, nx: &UniPoly, ny: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        let (mx, my) = (nx.as_monomial(), ny.as_monomial());
        for ((a, b), c) in &self.terms {
            // Normalization images are monomials, which makes this fast.
            let term = match (mx, my, nx.is_zero(), ny.is_zero()) {
                (_, _, true, _) if *a > 0 => continue,
                (_, _, _, true) if *b > 0 => continue,
                (Some((cx, ex)), Some((cy, ey)), _, _) => {
                    UniPoly::monomial(c * &cx.pow(*a) * cy.pow(*b), ex * a + ey * b)
                }
                (Some((cx, ex)), None, _, true) => UniPoly::monomial(c * &cx.pow(*a), ex * a),
                (None, Some((cy, ey)), true, _) => UniPoly::monomial(c * &cy.pow(*b), ey * b),
                _ => {
                    let k = c.field();
                    &(&UniPoly::constant(c.clone()) * &nx.pow(k, *a)) * &ny.pow(k, *b)
                }
            };
            out = &out + &term;
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            match a {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => mono.push("y".to_string()),
                _ => mono.push(format!("y^{b}")),
            }
            fmt_coeff_term(f, i == 0, c, &mono.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            insert_term(&mut out.terms, *k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            insert_term(&mut out.terms, *k, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                insert_term(&mut out.terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}
