//! Cyclotomic polynomials, constructible orders and minimal polynomials of
//! `2cos(2pi/m)`.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::effort::{Effort, CAPS};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::residue::known_fermat_primes;
use crate::square_classes::factorize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructibilityDecomposition {
    pub m: u64,
    /// `d` with `2^d || m`.
    pub two_part: u32,
    /// Odd prime factors with exponents, ascending.
    pub odd_primes: Vec<(u64, u32)>,
    pub constructible: bool,
}

fn factor_u64(m: u64) -> Result<Vec<(u64, u32)>> {
    let f = factorize(&BigInt::from(m), Effort::DEFAULT);
    if !f.is_complete() {
        return Err(Error::Precondition(format!("could not factor {m}")));
    }
    Ok(f.factors
        .iter()
        .map(|pp| (pp.prime.to_u64().unwrap(), pp.exponent))
        .collect())
}

pub fn euler_phi(m: u64) -> Result<u64> {
    Ok(factor_u64(m)?
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

fn mobius(m: u64) -> Result<i8> {
    let f = factor_u64(m)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Is the regular `m`-gon constructible, i.e. `m = 2^d` times distinct Fermat primes?
pub fn constructible_order(m: u64) -> Result<ConstructibilityDecomposition> {
    if m < 3 {
        return Err(Error::invalid(format!(
            "constructible_order needs m >= 3, got {m}"
        )));
    }
    let factors = factor_u64(m)?;
    let two_part = m.trailing_zeros();
    let odd_primes: Vec<(u64, u32)> = factors.into_iter().filter(|&(p, _)| p != 2).collect();
    let fermat = known_fermat_primes();
    let constructible = odd_primes
        .iter()
        .all(|&(p, e)| e == 1 && fermat.contains(&p));
    if constructible != euler_phi(m)?.is_power_of_two() {
        return Err(Error::invariant(format!(
            "Fermat-prime rule and totient test disagree at m = {m}"
        )));
    }
    Ok(ConstructibilityDecomposition {
        m,
        two_part,
        odd_primes,
        constructible,
    })
}

/// Coprime prime-power components of `m`, the power of 2 first.
pub fn reduce_m(m: u64) -> Result<Vec<u64>> {
    if m < 3 {
        return Err(Error::invalid(format!("reduce_m needs m >= 3, got {m}")));
    }
    let mut parts: Vec<u64> = factor_u64(m)?.into_iter().map(|(p, e)| p.pow(e)).collect();
    parts.sort_by_key(|&q| (q % 2 == 1, q));
    Ok(parts)
}

/// Multiplies by `x^d - 1`.
fn times_xd_minus_1(p: &IntPoly, d: usize) -> IntPoly {
    let c = p.coeffs();
    let mut out = vec![BigInt::zero(); c.len() + d];
    for (k, a) in c.iter().enumerate() {
        out[k + d] += a;
        out[k] -= a;
    }
    IntPoly::new(out)
}

/// Exact division by `x^d - 1`.
fn over_xd_minus_1(p: &IntPoly, d: usize) -> IntPoly {
    // p = q (x^d - 1)  =>  q_k = q_{k+d} - p_{k+d}, from the top down.
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut q = vec![BigInt::zero(); n - d + 1];
    for k in (0..=n - d).rev() {
        let upper = q.get(k + d).cloned().unwrap_or_default();
        q[k] = upper + &c[k + d];
    }
    let quotient = IntPoly::new(q);
    debug_assert_eq!(&times_xd_minus_1(&quotient, d), p);
    quotient
}

/// `Phi_m(x) = prod_{d | m} (x^d - 1)^mu(m/d)`, by exact divisions.
pub fn cyclotomic(m: u64) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::invalid("cyclotomic needs m >= 1"));
    }
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for &d in &divisors {
        match mobius(m / d)? {
            1 => up.push(d as usize),
            -1 => down.push(d as usize),
            _ => {}
        }
    }
    let mut p = IntPoly::constant(BigInt::one());
    for d in up {
        p = times_xd_minus_1(&p, d);
    }
    for d in down {
        p = over_xd_minus_1(&p, d);
    }
    // The product of the (x^d - 1) may carry an overall sign.
    if p.leading().is_some_and(|c| c.sign() == Sign::Minus) {
        p = -&p;
    }
    Ok(p)
}

/// Rewrites a palindromic polynomial of degree `2k` as `x^k Q(x + 1/x)`.
fn palindromic_to_trace(p: &IntPoly) -> Result<IntPoly> {
    let deg = p.degree().unwrap_or(0);
    if deg % 2 == 1 {
        return Err(Error::invariant("odd-degree cyclotomic polynomial"));
    }
    let k = deg / 2;
    let mut rest: Vec<BigInt> = p.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); k + 1];
    // x^k (x + 1/x)^j = sum_i C(j, i) x^(k - j + 2i)
    for j in (0..=k).rev() {
        let lead = std::mem::take(&mut rest[k + j]);
        if lead.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for i in 0..=j {
            if i > 0 {
                binom = binom * (j - i + 1) / i;
            }
            if i == j {
                break;
            }
            rest[k - j + 2 * i] -= &lead * &binom;
        }
        q[j] = lead;
    }
    if rest.iter().any(|c| !c.is_zero()) {
        return Err(Error::invariant("polynomial is not palindromic"));
    }
    Ok(IntPoly::new(q))
}

/// Minimal polynomial of `2cos(2pi/m)` with no size cap; `m >= 3`.
pub(crate) fn cos_minpoly_uncapped(m: u64) -> Result<IntPoly> {
    let q = palindromic_to_trace(&cyclotomic(m)?)?;
    let expected = euler_phi(m)? / 2;
    if q.degree() != Some(expected as usize) || !q.is_monic() {
        return Err(Error::invariant(format!(
            "minimal polynomial of 2cos(2pi/{m}) has degree {:?}, expected {expected}",
            q.degree()
        )));
    }
    Ok(q)
}

/// Minimal polynomial of `2cos(2pi/m)`, `3 <= m <= 200`, in the variable `y`.
pub fn cos_minpoly(m: u64) -> Result<IntPoly> {
    if m < 3 {
        return Err(Error::invalid(format!("cos_minpoly needs m >= 3, got {m}")));
    }
    if m > CAPS.cos_order {
        return Err(Error::limit("cos_minpoly order m", m, CAPS.cos_order));
    }
    cos_minpoly_uncapped(m)
}

/// `s_1 = sqrt 2`, `s_k = sqrt(2 + s_{k-1})`, as integers scaled by `2^prec`.
fn nested_radical_fixed(k: u32, prec: u64) -> BigInt {
    let two = BigInt::from(2) << prec;
    let mut s = BigInt::zero();
    for _ in 0..k {
        s = ((&two + &s) << prec).sqrt();
    }
    s
}

fn eval_fixed(p: &IntPoly, x: &BigInt, prec: u64) -> BigInt {
    p.coeffs()
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| ((acc * x) >> prec) + (c << prec))
}

/// Precision search stops here.
const MAX_PRECISION: u64 = 1 << 20;

/// `2cos(2pi / 2^(d+1)) = s_{d-1}`: checks that `cos_minpoly(2^(d+1))` vanishes at
/// `s_{d-1}` to within `2^-100`, and for `d <= 5` that the polynomial equals the
/// one obtained symbolically from `s_k^2 = 2 + s_{k-1}`.
pub fn nested_radical_check(d: u32) -> Result<bool> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "nested_radical_check needs d >= 2, got {d}"
        )));
    }
    if d > CAPS.radical_depth {
        return Err(Error::limit("radical depth d", d, CAPS.radical_depth));
    }
    let poly = cos_minpoly_uncapped(1u64 << (d + 1))?;
    let deg = poly.degree().unwrap() as u64;
    let coeff_bits: u64 = poly
        .coeffs()
        .iter()
        .map(|c| c.abs().bits())
        .max()
        .unwrap_or(0);

    // Each fixed-point step loses under one unit; terms are bounded by
    // |a_i| 2^i <= 2^(coeff_bits + deg), over deg + 1 steps.
    let slack = coeff_bits + deg + 68 - u64::from((deg + 1).leading_zeros());
    let mut prec = 128 + slack;
    let numeric = loop {
        let s = nested_radical_fixed(d - 1, prec);
        let value = eval_fixed(&poly, &s, prec).abs();
        let error_bound = BigInt::one() << slack;
        let threshold = BigInt::one() << (prec - 100);
        if &error_bound * 2 < threshold {
            break value < threshold;
        }
        prec *= 2;
        if prec > MAX_PRECISION {
            return Err(Error::invariant(format!(
                "precision search for d = {d} exceeded {MAX_PRECISION} bits"
            )));
        }
    };

    let symbolic = if d <= 5 {
        let shift = IntPoly::from_i64(&[-2, 0, 1]);
        let mut g = shift.clone();
        for _ in 1..d - 1 {
            g = g.compose(&shift);
        }
        g == poly
    } else {
        true
    };
    Ok(numeric && symbolic)
}
