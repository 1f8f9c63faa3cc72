//! Critical orbit of `f(t) = t^2 - nu`.
//!
//! `P_n = f^n` is the minimal polynomial of `x_n` (when the tower is strict) and
//! `c_n = P_n(0)` for `n >= 2`, with `c_1 = nu`. Because `P_1(0) = -nu` and the
//! recursion squares its argument, `c_n = c_{n-1}^2 - nu` holds from `n = 2` on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::effort::CAPS;
use crate::error::{Error, Result};
use crate::intmath::{is_perfect_square, is_prime_u64, is_square_u64, valuation};
use crate::poly::IntPoly;

/// `nu` with its 2-adic decomposition `nu = 2^v * mu`, `mu` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerParams {
    pub nu: u64,
    pub two_adic_valuation: u32,
    pub mu: u64,
    /// `v / 2` when the valuation is even.
    pub m: Option<u32>,
    pub is_square: bool,
}

impl TowerParams {
    pub fn new(nu: u64) -> Result<Self> {
        if nu < 2 {
            return Err(Error::invalid(format!("nu must be at least 2, got {nu}")));
        }
        let v = nu.trailing_zeros();
        Ok(TowerParams {
            nu,
            two_adic_valuation: v,
            mu: nu >> v,
            m: v.is_multiple_of(2).then_some(v / 2),
            is_square: is_square_u64(nu),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSequence {
    pub nu: u64,
    /// `c_1 .. c_N`
    #[serde(with = "crate::serde_big::vec")]
    pub c: Vec<BigInt>,
    /// `l_1 .. l_{N-1}`, with `l_1 = nu^2` and `l_n = (l_{n-1} - nu)^2`.
    #[serde(with = "crate::serde_big::vec")]
    pub ell: Vec<BigInt>,
}

impl OrbitSequence {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `c_n`, one-indexed.
    pub fn c(&self, n: usize) -> &BigInt {
        &self.c[n - 1]
    }

    /// `f^r(0)`: `0` at `r = 0`, `-nu` at `r = 1`, `c_r` beyond.
    pub fn orbit_value(&self, r: usize) -> BigInt {
        match r {
            0 => BigInt::zero(),
            1 => -BigInt::from(self.nu),
            _ => self.c(r).clone(),
        }
    }
}

/// `p`-adic valuations of `c_1 .. c_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub p: u64,
    /// Least `n` with `p | c_n`.
    pub m_min: Option<u32>,
    /// `v_p(c_{m_min})`, zero when `m_min` is absent.
    pub e: u32,
    pub values: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStrictness {
    /// No `c_n` with `n <= depth` is a perfect square, so `[K_depth : Q] = 2^depth`.
    pub strict: bool,
    /// First index with a square `c_n`; strictness is then unproven, not refuted.
    pub witness: Option<u32>,
    pub depth: u32,
}

/// `P_n = f^n` with `f = t^2 - nu`, expanded densely.
pub fn iterate_poly(nu: u64, n: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::invalid("iterate_poly needs n >= 1"));
    }
    if n > CAPS.poly_depth {
        return Err(Error::limit("polynomial depth n", n, CAPS.poly_depth));
    }
    let shift = IntPoly::constant(BigInt::from(nu));
    let mut p = IntPoly::monomial(1);
    for _ in 0..n {
        p = &(&p * &p) - &shift;
    }
    Ok(p)
}

/// `c_1 .. c_N` and `l_1 .. l_{N-1}`.
pub fn constant_terms(nu: u64, len: u32) -> Result<OrbitSequence> {
    if nu < 2 {
        return Err(Error::invalid(format!("nu must be at least 2, got {nu}")));
    }
    if len == 0 {
        return Err(Error::invalid("constant_terms needs N >= 1"));
    }
    if len > CAPS.orbit_len {
        return Err(Error::limit("orbit length N", len, CAPS.orbit_len));
    }
    let nu_big = BigInt::from(nu);
    let mut c = Vec::with_capacity(len as usize);
    c.push(nu_big.clone());
    for k in 1..len as usize {
        let prev = &c[k - 1];
        c.push(prev * prev - &nu_big);
    }
    let mut ell = Vec::with_capacity(len.saturating_sub(1) as usize);
    if len >= 2 {
        ell.push(&nu_big * &nu_big);
        for k in 1..(len - 1) as usize {
            let shifted: BigInt = &ell[k - 1] - &nu_big;
            ell.push(&shifted * &shifted);
        }
    }
    Ok(OrbitSequence { nu, c, ell })
}

/// Least `n >= 1` with `p | c_n`, found by running the orbit mod `p`.
pub fn orbit_mod_p(nu: u64, p: u64) -> Result<Option<u32>> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let nu_mod = nu % p;
    let mut x = nu_mod;
    // The orbit takes at most p distinct values before cycling.
    for n in 1..=p {
        if x == 0 {
            return Ok(Some(n as u32));
        }
        x = ((x as u128 * x as u128 + (p - nu_mod) as u128) % p as u128) as u64;
    }
    Ok(None)
}

/// Exact `v_p(c_n)` for `n <= len`, checked against the valuation pattern.
pub fn valuation_profile(nu: u64, p: u64, len: u32) -> Result<ValuationProfile> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let seq = constant_terms(nu, len)?;
    let p_big = BigInt::from(p);
    let values: Vec<u32> = seq.c.iter().map(|c| valuation(c, &p_big).0).collect();

    let m_min = values.iter().position(|&v| v > 0).map(|i| i as u32 + 1);
    let e = m_min.map_or(0, |m| values[m as usize - 1]);
    for (i, &v) in values.iter().enumerate() {
        let n = i as u32 + 1;
        let expected = match m_min {
            Some(m) if n.is_multiple_of(m) => e,
            _ => 0,
        };
        if v != expected {
            return Err(Error::invariant(format!(
                "v_{p}(c_{n}) = {v}, expected {expected} (m = {m_min:?}, e = {e})"
            )));
        }
    }
    check_orbit_congruences(&seq)?;
    Ok(ValuationProfile {
        p,
        m_min,
        e,
        values,
    })
}

/// Checks `c_{m+l} = f^l(0) (mod c_m^2)` for all `m, l >= 1` in range.
///
/// Chaining over `l = (q-1)m + r` gives `c_{qm+r} = f^r(0)` for `1 <= r < m`
/// and `c_{qm} = c_m` (not 0) when `r = 0`.
pub fn check_orbit_congruences(seq: &OrbitSequence) -> Result<()> {
    let len = seq.len();
    for m in 1..len {
        let modulus = seq.c(m) * seq.c(m);
        for l in 1..=len - m {
            let n = m + l;
            if (seq.c(n) - seq.orbit_value(l)).mod_floor(&modulus) != BigInt::zero() {
                return Err(Error::invariant(format!(
                    "c_{n} is not congruent to f^{l}(0) modulo c_{m}^2 (nu = {})",
                    seq.nu
                )));
            }
        }
    }
    Ok(())
}

/// Sufficient test for `[K_N : Q] = 2^N`: no `c_n`, `n <= N`, is a perfect square.
pub fn tower_strict(nu: u64, depth: u32) -> Result<TowerStrictness> {
    let seq = constant_terms(nu, depth)?;
    let witness = seq
        .c
        .iter()
        .position(is_perfect_square)
        .map(|i| i as u32 + 1);
    Ok(TowerStrictness {
        strict: witness.is_none(),
        witness,
        depth,
    })
}
