//! Discriminant of `x_n` and the norm constants `N_n`.
//!
//! The recursion `disc(x_n) = disc(x_{n-1})^2 * 2^(2^n) * c_n` is the primary
//! route. [`disc_resultant_oracle`] recomputes the same number from scratch as
//! a signed resultant of `P_n` and `P_n'`, sharing nothing with the recursion
//! beyond the polynomial itself.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::effort::CAPS;
use crate::error::{Error, Result};
use crate::orbit::{constant_terms, iterate_poly, orbit_mod_p, tower_strict};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub nu: u64,
    pub n: u32,
    #[serde(with = "crate::serde_big")]
    pub disc_xn: BigInt,
    #[serde(with = "crate::serde_big::opt")]
    pub oracle_value: Option<BigInt>,
    /// `N_0 .. N_{n-1}`
    #[serde(with = "crate::serde_big::vec")]
    pub norms: Vec<BigInt>,
}

/// Whether an odd prime divides some `c_k`, as decided by the orbit mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscSupport {
    pub divides: bool,
    /// First `k` with `p | c_k`, if the orbit mod `p` reaches zero at all.
    pub first_index: Option<u32>,
    /// `divides == false` holds for every depth, not just the one asked about.
    pub all_depths: bool,
}

fn pow2(exp: u32) -> BigInt {
    BigInt::one() << exp
}

/// `disc(x_n)` by the recursion; requires the tower to be strict up to `n`.
pub fn disc_xn(nu: u64, n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("disc_xn needs n >= 1"));
    }
    let strict = tower_strict(nu, n)?;
    if !strict.strict {
        return Err(Error::Precondition(format!(
            "degree [K_{n} : Q] = 2^{n} unproven for nu = {nu}: c_{} is a perfect square",
            strict.witness.unwrap_or(0)
        )));
    }
    let seq = constant_terms(nu, n)?;
    let mut disc = BigInt::from(4u64) * nu;
    for k in 2..=n {
        disc = &disc * &disc * pow2(1 << k) * seq.c(k as usize);
    }
    Ok(disc)
}

/// `N_0 .. N_n` with `N_0 = 4 nu` and `N_k = 2^(2^(k+1)) c_{k+1}`.
pub fn norm_sequence(nu: u64, n: u32) -> Result<Vec<BigInt>> {
    if n + 1 > CAPS.orbit_len {
        return Err(Error::limit("orbit length n + 1", n + 1, CAPS.orbit_len));
    }
    let mut norms = vec![BigInt::from(4u64) * nu];
    if n == 0 {
        return Ok(norms);
    }
    let seq = constant_terms(nu, n + 1)?;
    for k in 1..=n {
        norms.push(pow2(1 << (k + 1)) * seq.c(k as usize + 1));
    }
    Ok(norms)
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // Exact by Sylvester's identity.
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of `p` and `q`, coefficients highest degree first.
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Vec<Vec<BigInt>> {
    let dp = p.degree().expect("nonzero p");
    let dq = q.degree().expect("nonzero q");
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..dq {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=dp {
            row[shift + k] = p.coeff(dp - k);
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=dq {
            row[shift + k] = q.coeff(dq - k);
        }
        rows.push(row);
    }
    rows
}

pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    bareiss_determinant(sylvester_matrix(p, q))
}

/// Discriminant of a monic polynomial: `(-1)^(d(d-1)/2) Res(P, P')`.
pub fn monic_discriminant(p: &IntPoly) -> BigInt {
    assert!(p.is_monic(), "monic polynomial expected");
    let d = p.degree().unwrap();
    let res = resultant(p, &p.derivative());
    if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// `disc(P_n)` from the Sylvester resultant, `n <= 4`.
pub fn disc_resultant_oracle(nu: u64, n: u32) -> Result<BigInt> {
    if n > CAPS.oracle_depth {
        return Err(Error::limit("oracle depth n", n, CAPS.oracle_depth));
    }
    Ok(monic_discriminant(&iterate_poly(nu, n)?))
}

/// Does the odd prime `p` divide some `c_k`, `k <= depth`?
///
/// A negative answer means `p` does not divide `disc(x_k)`, hence not `disc(K_k)`.
pub fn odd_prime_disc_support(nu: u64, p: u64, depth: u32) -> Result<DiscSupport> {
    if p == 2 {
        return Err(Error::invalid("odd_prime_disc_support excludes p = 2"));
    }
    let first_index = orbit_mod_p(nu, p)?;
    Ok(match first_index {
        Some(k) if k <= depth => DiscSupport {
            divides: true,
            first_index,
            all_depths: false,
        },
        Some(_) => DiscSupport {
            divides: false,
            first_index,
            all_depths: false,
        },
        None => DiscSupport {
            divides: false,
            first_index,
            all_depths: true,
        },
    })
}

/// Recursion value, norms `N_0 .. N_{n-1}` and, for `n <= 4`, the oracle value.
pub fn discriminant_report(nu: u64, n: u32) -> Result<DiscriminantReport> {
    let disc = disc_xn(nu, n)?;
    let norms = norm_sequence(nu, n - 1)?;
    let oracle_value = if n <= CAPS.oracle_depth {
        let value = disc_resultant_oracle(nu, n)?;
        if value != disc {
            return Err(Error::invariant(format!(
                "disc(x_{n}) recursion {disc} differs from resultant {value} at nu = {nu}"
            )));
        }
        Some(value)
    } else {
        None
    };
    Ok(DiscriminantReport {
        nu,
        n,
        disc_xn: disc,
        oracle_value,
        norms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(
            bareiss_determinant(m(&[&[3, 8], &[4, 6]])),
            BigInt::from(-14)
        );
        // zero leading pivot forces a swap
        assert_eq!(
            bareiss_determinant(m(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_determinant(m(&[&[6, 1, 1], &[4, -2, 5], &[2, 8, 7]])),
            BigInt::from(-306)
        );
        assert_eq!(
            bareiss_determinant(m(&[&[0, 2, 1], &[0, 1, 3], &[4, 0, 0]])),
            BigInt::from(20)
        );
        assert_eq!(bareiss_determinant(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn biquadratic_closed_form() {
        // disc(t^4 + p t^2 + q) = 16 q (p^2 - 4q)^2
        let (p, q) = (-24i64, 132i64);
        let closed = 16 * q * (p * p - 4 * q) * (p * p - 4 * q);
        assert_eq!(closed, 4866048);
        assert_eq!(disc_resultant_oracle(12, 2).unwrap(), BigInt::from(closed));
    }

    #[test]
    fn recursion_values() {
        assert_eq!(disc_xn(12, 1).unwrap(), BigInt::from(48));
        assert_eq!(disc_xn(12, 2).unwrap(), BigInt::from(4866048));
        assert_eq!(disc_xn(5, 1).unwrap(), BigInt::from(20));
        let expected = BigInt::from(4866048u64).pow(2) * 256 * 17412;
        assert_eq!(disc_xn(12, 3).unwrap(), expected);
        assert_eq!(disc_resultant_oracle(12, 3).unwrap(), expected);
    }

    #[test]
    fn recursion_requires_strict_tower() {
        assert!(matches!(disc_xn(4, 2), Err(Error::Precondition(_))));
        // nu = 5: c_2 = 20, strict; nu = 2: c_2 = 2 strict too.
        assert!(disc_xn(2, 3).is_ok());
    }

    #[test]
    fn norms() {
        assert_eq!(norm_sequence(12, 0).unwrap(), vec![BigInt::from(48)]);
        assert_eq!(
            norm_sequence(12, 1).unwrap(),
            vec![BigInt::from(48), BigInt::from(2112)]
        );
        assert_eq!(norm_sequence(1, 0).unwrap(), vec![BigInt::from(4)]);
        assert!(matches!(
            norm_sequence(12, 12),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(
            disc_resultant_oracle(12, 5),
            Err(Error::ResourceLimit { .. })
        ));
        assert_eq!(disc_resultant_oracle(12, 1).unwrap(), BigInt::from(48));
    }

    #[test]
    fn disc_support() {
        let s = odd_prime_disc_support(12, 11, 4).unwrap();
        assert!(s.divides);
        let s = odd_prime_disc_support(12, 5, 100).unwrap();
        assert!(!s.divides && s.all_depths);
        assert!(odd_prime_disc_support(12, 3, 1).unwrap().divides);
        // 11 first divides c_2, so depth 1 is clean but only at that depth.
        let s = odd_prime_disc_support(12, 11, 1).unwrap();
        assert!(!s.divides && !s.all_depths);
        assert!(odd_prime_disc_support(12, 2, 3).is_err());
    }

    #[test]
    fn report_runs_the_oracle() {
        let r = discriminant_report(12, 2).unwrap();
        assert_eq!(r.oracle_value, Some(BigInt::from(4866048)));
        assert_eq!(r.norms, vec![BigInt::from(48), BigInt::from(2112)]);
        assert_eq!(discriminant_report(12, 5).unwrap().oracle_value, None);
    }
}
