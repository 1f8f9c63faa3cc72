//! Quadratic residues modulo Fermat primes.
//!
//! For every Fermat prime `p > 3`, both 3 and 7 are non-residues: `p = 2 (mod 3)`
//! and `p = 3 or 5 (mod 7)`, and reciprocity carries no sign since `p = 1 (mod 4)`.
//! Any `nu` whose square class is that of 3 or 7 is therefore a non-residue modulo
//! every Fermat prime above 3, known or not.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::effort::{Effort, CAPS};
use crate::error::{Error, Result};
use crate::intmath::{jacobi_big, pow_mod};
use crate::square_classes::factorize;

/// Shown next to every use of the Fermat-prime list.
pub const FERMAT_CAVEAT: &str =
    "3, 5, 17, 257 and 65537 are the only known Fermat primes; no others are known to exist or not to exist";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    ProvenPrime,
    ProvenComposite,
    Untested,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatNumber {
    pub index: u32,
    #[serde(with = "crate::serde_big")]
    pub value: BigInt,
    pub primality: Primality,
}

impl FermatNumber {
    /// `2^(2^index) + 1`, not yet tested.
    pub fn new(index: u32) -> Result<Self> {
        if index > CAPS.fermat_index {
            return Err(Error::limit("Fermat index", index, CAPS.fermat_index));
        }
        Ok(FermatNumber {
            index,
            value: (BigInt::one() << (1u32 << index)) + 1,
            primality: Primality::Untested,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueScope {
    /// Holds for all Fermat primes above 3, including any not yet discovered.
    Universal,
    /// Checked only against the known Fermat primes.
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCertificate {
    pub nu: u64,
    pub scope: ResidueScope,
    pub checked_primes: Vec<u64>,
    pub kernel_basis: Option<u64>,
}

fn jacobi_odd(mut a: u64, mut n: u64) -> i8 {
    a %= n;
    let mut acc = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            acc = -acc;
        }
        if a % 4 == 3 && n % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        acc
    } else {
        0
    }
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8> {
    if n.sign() != Sign::Plus || n.is_even() {
        return Err(Error::invalid(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    if let Some(small) = n.to_u64() {
        let a = a.mod_floor(n).to_u64().unwrap();
        return Ok(jacobi_odd(a, small));
    }
    Ok(jacobi_big(a, n.magnitude()))
}

/// Jacobi symbol for machine-sized operands.
pub fn jacobi_u64(a: u64, n: u64) -> Result<i8> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    Ok(jacobi_odd(a, n))
}

/// Pepin's test for `F_n`; `F_0 = 3` is settled by trial division.
pub fn pepin_test(index: u32) -> Result<FermatNumber> {
    let mut f = FermatNumber::new(index)?;
    let value = f.value.magnitude().clone();
    let prime = if index == 0 {
        // 3 has no divisor d with 1 < d and d * d <= 3.
        true
    } else {
        let exp: BigUint = (&value - 1u32) >> 1u32;
        BigUint::from(3u32).modpow(&exp, &value) == &value - 1u32
    };
    f.primality = if prime {
        Primality::ProvenPrime
    } else {
        Primality::ProvenComposite
    };
    Ok(f)
}

fn fermat_table() -> &'static [FermatNumber] {
    static TABLE: OnceLock<Vec<FermatNumber>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=4)
            .map(|n| pepin_test(n).expect("index within cap"))
            .collect()
    })
}

/// The certified Fermat primes `F_0 .. F_4`.
pub fn known_fermat_primes() -> Vec<u64> {
    fermat_table()
        .iter()
        .filter(|f| f.primality == Primality::ProvenPrime)
        .map(|f| f.value.to_u64().unwrap())
        .collect()
}

/// Certified Fermat primes with their Pepin status.
pub fn fermat_prime_records() -> Vec<FermatNumber> {
    fermat_table().to_vec()
}

/// Known Fermat primes greater than 3.
pub fn odd_fermat_primes_above_three() -> Vec<u64> {
    known_fermat_primes()
        .into_iter()
        .filter(|&p| p > 3)
        .collect()
}

/// `(F_n mod 7, F_n mod 3)` by repeated squaring; never materializes `F_n`.
pub fn fermat_mod_pattern(n: u32) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::invalid("fermat_mod_pattern needs n >= 1"));
    }
    let residue = |m: u64| {
        let mut x = 2 % m;
        for _ in 0..n {
            x = x * x % m;
        }
        (x + 1) % m
    };
    let pattern = (residue(7), residue(3));
    let expected = if n.is_multiple_of(2) { (3, 2) } else { (5, 2) };
    if pattern != expected {
        return Err(Error::invariant(format!(
            "F_{n} mod (7, 3) = {pattern:?}, expected {expected:?}"
        )));
    }
    Ok(pattern)
}

/// `((3/p) = -1, (7/p) = -1)` for a known Fermat prime `p > 3`, after checking
/// that reciprocity between 7 and `p` (and 3 and `p`) carries no sign.
pub fn nonresidue_37_check(p: u64) -> Result<(bool, bool)> {
    if p <= 3 || !known_fermat_primes().contains(&p) {
        return Err(Error::invalid(format!(
            "{p} is not a certified Fermat prime above 3"
        )));
    }
    for q in [3u64, 7] {
        let forward = jacobi_odd(q, p);
        let backward = jacobi_odd(p, q);
        if forward * backward != 1 {
            return Err(Error::invariant(format!(
                "({q}/{p})({p}/{q}) = {}, reciprocity predicts 1",
                forward * backward
            )));
        }
    }
    Ok((jacobi_odd(3, p) == -1, jacobi_odd(7, p) == -1))
}

fn squarefree_part_u64(nu: u64) -> Option<u64> {
    let f = factorize(&BigInt::from(nu), Effort::DEFAULT);
    f.is_complete().then(|| {
        f.factors
            .iter()
            .filter(|pp| pp.exponent % 2 == 1)
            .map(|pp| pp.prime.to_u64().unwrap())
            .product()
    })
}

/// Non-residue certificate for `nu` modulo Fermat primes above 3.
///
/// The scope is universal when `nu = k s^2` with `k` in `{3, 7}` and the loop over
/// the known primes passes: those cover every Fermat prime below `2^64`, so no
/// Fermat prime, known or not, divides `s`.
pub fn residue_certificate(nu: u64) -> Result<ResidueCertificate> {
    if nu < 2 {
        return Err(Error::invalid(format!("nu must be at least 2, got {nu}")));
    }
    let primes = odd_fermat_primes_above_three();
    let kernel = squarefree_part_u64(nu);
    let kernel_basis = kernel.filter(|k| matches!(k, 3 | 7));

    for &p in &primes {
        let symbol = jacobi_odd(nu % p, p);
        if symbol != -1 {
            // nu = k s^2 with k in {3, 7}: the symbol is (k/p) = -1 unless p | s
            if kernel_basis.is_some() && symbol != 0 {
                return Err(Error::invariant(format!(
                    "nu = {nu} has kernel {kernel:?} but ({nu}/{p}) = {symbol}"
                )));
            }
            return Err(Error::CertificateFailure { prime: p, symbol });
        }
    }
    Ok(ResidueCertificate {
        nu,
        scope: if kernel_basis.is_some() {
            ResidueScope::Universal
        } else {
            ResidueScope::Finite
        },
        checked_primes: primes,
        kernel_basis,
    })
}

/// Euler's criterion, mapped to `{-1, 0, 1}`; `p` an odd prime.
pub fn euler_criterion(a: u64, p: u64) -> i8 {
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_u64(3, 5).unwrap(), -1);
        assert_eq!(jacobi_u64(7, 17).unwrap(), -1);
        assert_eq!(jacobi_u64(1, 9).unwrap(), 1);
        assert_eq!(jacobi(&BigInt::from(-1), &BigInt::from(5)).unwrap(), 1);
        assert_eq!(jacobi(&BigInt::from(-1), &BigInt::from(7)).unwrap(), -1);
        assert_eq!(jacobi(&BigInt::from(6), &BigInt::from(9)).unwrap(), 0);
        assert!(jacobi_u64(3, 8).is_err());
        assert!(jacobi(&BigInt::from(3), &BigInt::from(-5)).is_err());
    }

    #[test]
    fn jacobi_big_modulus() {
        // 2^127 - 1 = 7 (mod 8), so (2 / M127) = 1; and M127 = 1 (mod 3), so (3 / M127) = -(M127 / 3) = -1.
        let m127 = (BigInt::one() << 127u32) - 1;
        assert_eq!(jacobi(&BigInt::from(2), &m127).unwrap(), 1);
        assert_eq!(jacobi(&BigInt::from(3), &m127).unwrap(), -1);
    }

    #[test]
    fn pepin_examples() {
        assert_eq!(pepin_test(0).unwrap().primality, Primality::ProvenPrime);
        assert_eq!(pepin_test(1).unwrap().primality, Primality::ProvenPrime);
        let f4 = pepin_test(4).unwrap();
        assert_eq!(f4.value, BigInt::from(65537));
        assert_eq!(f4.primality, Primality::ProvenPrime);
        let f5 = pepin_test(5).unwrap();
        assert_eq!(f5.primality, Primality::ProvenComposite);
        assert_eq!(&f5.value % 641, BigInt::from(0));
        assert!(matches!(pepin_test(10), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn fermat_list() {
        let list = known_fermat_primes();
        assert_eq!(list, vec![3, 5, 17, 257, 65537]);
        assert!(list.iter().filter(|&&p| p != 3).all(|p| p % 4 == 1));
    }

    #[test]
    fn mod_patterns() {
        assert_eq!(fermat_mod_pattern(1).unwrap(), (5, 2));
        assert_eq!(fermat_mod_pattern(2).unwrap(), (3, 2));
        assert_eq!(fermat_mod_pattern(3).unwrap(), (5, 2));
        assert_eq!(257 % 7, 5);
    }

    #[test]
    fn three_and_seven() {
        assert_eq!(nonresidue_37_check(5).unwrap(), (true, true));
        assert_eq!(nonresidue_37_check(17).unwrap(), (true, true));
        assert_eq!(nonresidue_37_check(65537).unwrap(), (true, true));
        assert!(nonresidue_37_check(3).is_err());
        assert!(nonresidue_37_check(13).is_err());
    }

    #[test]
    fn certificates() {
        let c = residue_certificate(12).unwrap();
        assert_eq!(
            (c.scope, c.kernel_basis),
            (ResidueScope::Universal, Some(3))
        );
        let c = residue_certificate(112).unwrap();
        assert_eq!(
            (c.scope, c.kernel_basis),
            (ResidueScope::Universal, Some(7))
        );
        assert_eq!(c.checked_primes, vec![5, 17, 257, 65537]);
        assert_eq!(
            residue_certificate(20),
            Err(Error::CertificateFailure {
                prime: 5,
                symbol: 0
            })
        );
        // 75 = 3 * 5^2: kernel 3, but 5 divides the square part
        assert_eq!(
            residue_certificate(75),
            Err(Error::CertificateFailure {
                prime: 5,
                symbol: 0
            })
        );
        // 21 = 1 mod 5
        assert_eq!(
            residue_certificate(21),
            Err(Error::CertificateFailure {
                prime: 5,
                symbol: 1
            })
        );
    }

    #[test]
    fn jacobi_of_twenty_direct() {
        assert_eq!(jacobi_u64(20, 17).unwrap(), jacobi_u64(3, 17).unwrap());
        assert_eq!(jacobi_u64(20, 17).unwrap(), -1);
        assert_eq!(jacobi_u64(20, 5).unwrap(), 0);
    }
}
