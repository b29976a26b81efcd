//! Exact coefficient fields: the rationals, or a simple extension Q[α]/(p).
//!
//! Elements carry a shared handle to their field, so the usual operator
//! traits work directly. Mixing elements of different fields through an
//! operator panics; the `try_*` methods report [`Error::FieldMismatch`]
//! instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shared handle to a number field.
pub type Field = Arc<NumberField>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
        ),
    };
    Ok(parsed)
}

/// Q[α]/(p) with p monic of degree d. Degree 1 is the rationals.
///
/// Irreducibility of `p` is not checked; callers supply a minimal
/// polynomial they know to be irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients of p from the constant term upward; the last one is 1.
    min_poly: Vec<Rational>,
}

impl NumberField {
    pub fn rationals() -> Field {
        Arc::new(NumberField {
            min_poly: vec![Rational::zero(), Rational::one()],
        })
    }

    pub fn new(min_poly: Vec<Rational>) -> Result<Field> {
        if min_poly.len() < 2 {
            return Err(Error::InvalidField(format!("degree {} < 1", min_poly.len().saturating_sub(1))));
        }
        if !min_poly.last().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidField("leading coefficient is not 1".into()));
        }
        Ok(Arc::new(NumberField { min_poly }))
    }

    /// Q[α]/(α^2 + 1).
    pub fn gaussian() -> Field {
        Self::new(vec![rat_int(1), rat_int(0), rat_int(1)]).unwrap()
    }

    /// Q[α]/(α^4 + 1), the eighth cyclotomic field.
    pub fn cyclotomic8() -> Field {
        Self::new(vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(1)]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1 && self.min_poly[0].is_zero()
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = coeffs.len() - d;
            for (i, p) in self.min_poly[..d].iter().enumerate() {
                coeffs[base + i] -= &top * p;
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            return write!(f, "Q");
        }
        let poly = DenseQ(self.min_poly.clone());
        write!(f, "Q[a]/({})", poly.display("a"))
    }
}

/// An element of a [`NumberField`], stored as coordinates on 1, α, …, α^{d-1}.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(k: &Field) -> Self {
        FieldElement {
            field: k.clone(),
            coords: vec![Rational::zero(); k.degree()],
        }
    }

    pub fn one(k: &Field) -> Self {
        Self::from_rational(k, Rational::one())
    }

    pub fn from_rational(k: &Field, q: Rational) -> Self {
        let mut e = Self::zero(k);
        e.coords[0] = q;
        e
    }

    pub fn from_int(k: &Field, n: i64) -> Self {
        Self::from_rational(k, rat_int(n))
    }

    /// The class of α. In the rationals this is the root of the linear
    /// minimal polynomial.
    pub fn generator(k: &Field) -> Self {
        Self::from_coords(k, {
            let mut c = vec![Rational::zero(); k.degree() + 1];
            c[1] = Rational::one();
            c
        })
    }

    /// Builds an element from any number of coordinates, reducing modulo the
    /// minimal polynomial.
    pub fn from_coords(k: &Field, coords: Vec<Rational>) -> Self {
        FieldElement {
            field: k.clone(),
            coords: k.reduce(coords),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn expect_same(&self, other: &Self) {
        assert!(self.same_field(other), "field element from a different number field");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * other)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat_int(n))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.field.degree() == 1 {
            return Ok(Self::from_rational(&self.field, self.coords[0].recip()));
        }
        // Extended Euclid on (self, p): s·self + t·p = g with g a nonzero
        // constant when p is irreducible.
        let p = DenseQ(self.field.min_poly.clone());
        let a = DenseQ(self.coords.clone()).trimmed();
        let (g, s) = p.ext_gcd_left(&a);
        if g.0.len() != 1 {
            return Err(Error::InvalidField(format!(
                "{} shares a factor with the minimal polynomial",
                self
            )));
        }
        let ginv = g.0[0].recip();
        Ok(Self::from_coords(&self.field, s.0.iter().map(|c| c * &ginv).collect()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coordinates as `"p/q"` strings, the JSON encoding of field elements.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }

    pub fn from_strings(k: &Field, coords: &[String]) -> Result<Self> {
        if coords.len() != k.degree() {
            return Err(Error::Parse(format!(
                "field element has {} coordinates, field degree is {}",
                coords.len(),
                k.degree()
            )));
        }
        let coords = coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(FieldElement { field: k.clone(), coords })
    }

    /// A small random element; coordinates are integers in `[-bound, bound]`.
    pub fn sample<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64) -> Self {
        let coords = (0..k.degree()).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect();
        FieldElement { field: k.clone(), coords }
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64) -> Self {
        loop {
            let e = Self::sample(k, rng, bound);
            if !e.is_zero() {
                return e;
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        write!(f, "({})", DenseQ(self.coords.clone()).display("a"))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.expect_same(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.expect_same(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.expect_same(rhs);
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: self.field.reduce(prod),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Dense polynomial over Q, lowest coefficient first. Used for field
/// inversion and for reporting univariate polynomials in diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseQ(pub Vec<Rational>);

impl DenseQ {
    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        let t = self.clone().trimmed();
        (!t.0.is_empty()).then(|| t.0.len() - 1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        DenseQ(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return DenseQ(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DenseQ(out).trimmed()
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let divisor = divisor.clone().trimmed();
        let dd = divisor.0.len() - 1;
        let lead = divisor.0[dd].clone();
        let mut rem = self.clone().trimmed();
        if rem.0.len() <= dd {
            return (DenseQ(vec![]), rem);
        }
        let mut quot = vec![Rational::zero(); rem.0.len() - dd];
        while rem.0.len() > dd {
            let k = rem.0.len() - 1;
            let c = &rem.0[k] / &lead;
            for (i, p) in divisor.0.iter().enumerate() {
                rem.0[k - dd + i] -= &c * p;
            }
            quot[k - dd] = c;
            rem = rem.trimmed();
        }
        (DenseQ(quot).trimmed(), rem)
    }

    /// Returns (g, s) with s·a ≡ g (mod self), g = gcd(self, a).
    fn ext_gcd_left(&self, a: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (self.clone().trimmed(), a.clone().trimmed());
        let (mut s0, mut s1) = (DenseQ(vec![]), DenseQ(vec![Rational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }

    /// Renders with descending powers, e.g. `u^2 + 1`.
    pub fn display(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let body = if mono.is_empty() {
                format!("{mag}")
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}
