//! Rational roots of univariate polynomials over Q.
//!
//! Candidates are enumerated in "rational-root order": ascending numerator,
//! then ascending denominator. The first root in that order is what the
//! curve factorization uses whenever it has to pick one.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{DenseQ, Rational};

pub fn root_order(a: &Rational, b: &Rational) -> Ordering {
    a.numer().cmp(b.numer()).then_with(|| a.denom().cmp(b.denom()))
}

fn prime_factors(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of a nonzero integer.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in prime_factors(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Scales to primitive integer coefficients, lowest degree first.
fn integer_coeffs(p: &DenseQ) -> Vec<BigInt> {
    let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Divides by (u - r); `r` must be a root.
fn deflate(p: &DenseQ, r: &Rational) -> DenseQ {
    let lin = DenseQ(vec![-r.clone(), Rational::one()]);
    p.div_rem(&lin).0
}

/// Rational roots with multiplicities, in rational-root order.
pub fn rational_roots(p: &DenseQ) -> Vec<(Rational, usize)> {
    let p = p.clone().trimmed();
    if p.0.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    // Strip the zero root first; its multiplicity is the low-order zero count.
    let zeros = rest.0.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros));
        rest = DenseQ(rest.0[zeros..].to_vec());
    }
    if rest.0.len() > 1 {
        let ints = integer_coeffs(&rest);
        let (c0, cn) = (&ints[0], ints.last().unwrap());
        let mut candidates: Vec<Rational> = Vec::new();
        for num in divisors(c0) {
            for den in divisors(cn) {
                let q = Rational::new(num.clone(), den.clone());
                candidates.push(q.clone());
                candidates.push(-q);
            }
        }
        candidates.sort_by(root_order);
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            while rest.0.len() > 1 && rest.eval(&r).is_zero() {
                rest = deflate(&rest, &r);
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
            if rest.0.len() <= 1 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| root_order(&a.0, &b.0));
    roots
}

/// Removes the given roots (with multiplicity) from `p`.
pub fn deflate_all(p: &DenseQ, roots: &[(Rational, usize)]) -> DenseQ {
    let mut rest = p.clone().trimmed();
    for (r, m) in roots {
        for _ in 0..*m {
            rest = deflate(&rest, r);
        }
    }
    rest
}

fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

/// All rational b with b^k = r, in rational-root order.
pub fn rational_nth_roots(r: &Rational, k: u32) -> Vec<Rational> {
    assert!(k >= 1);
    if r.is_zero() {
        return vec![Rational::zero()];
    }
    let (num, den) = (r.numer().abs(), r.denom().clone());
    let (Some(a), Some(b)) = (exact_nth_root(&num, k), exact_nth_root(&den, k)) else {
        return Vec::new();
    };
    let base = Rational::new(a, b);
    let mut out = if k % 2 == 1 {
        vec![if r.is_negative() { -base } else { base }]
    } else if r.is_negative() {
        Vec::new()
    } else {
        vec![-base.clone(), base]
    };
    out.sort_by(root_order);
    out
}
