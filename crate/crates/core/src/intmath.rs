//! Small integer toolkit: square roots, modular powers, sieving and primality.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exponent of `p` in `n` and the cofactor, by repeated exact division.
pub fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// All primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

const SIEVE_CACHE: u64 = 1_000_000;

/// Primes `<= bound`, served from a shared table when `bound` is at most 10^6.
pub fn small_primes(bound: u64) -> std::borrow::Cow<'static, [u64]> {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    if bound <= SIEVE_CACHE {
        let table = TABLE.get_or_init(|| primes_up_to(SIEVE_CACHE));
        let end = table.partition_point(|&p| p <= bound);
        std::borrow::Cow::Borrowed(&table[..end])
    } else {
        std::borrow::Cow::Owned(primes_up_to(bound))
    }
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    MR_BASES.iter().all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol on big operands; `n` odd and positive.
pub(crate) fn jacobi_big(a: &BigInt, n: &BigUint) -> i8 {
    let mut a = a.mod_floor(&BigInt::from(n.clone())).magnitude().clone();
    let mut n = n.clone();
    let mut acc = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
            acc = -acc;
        }
        if (&a % 4u32) == BigUint::from(3u32) && n8 % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        acc
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi_big(&d, n) {
            -1 => break,
            0 if d.magnitude() != n => {
                return false;
            }
            _ => {}
        }
        d = if d.sign() == Sign::Minus {
            2 - d
        } else {
            -(d + 2i32)
        };
        if d == BigInt::from(-15) && is_perfect_square(&n_int) {
            return false;
        }
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let reduce = |x: BigInt| x.mod_floor(&n_int);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &n_int } else { x };
        reduce(x / 2)
    };

    let np1: BigInt = &n_int + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let dd = &np1 >> s;

    // Binary ladder for U_k, V_k, Q^k over the bits of dd.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = dd.bits();
    for i in (0..bits).rev() {
        // double
        u = reduce(&u * &v);
        v = reduce(&v * &v - 2 * &qk);
        qk = reduce(&qk * &qk);
        if dd.bit(i) {
            // add one
            let u1 = half(&p * &u + &v);
            let v1 = half(&d * &u + &p * &v);
            u = u1;
            v = v1;
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - 2 * &qk);
        qk = reduce(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality: deterministic below 2^64; Baillie-PSW (base-2 strong test plus
/// strong Lucas) above, with extra Miller-Rabin bases for good measure.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    MR_BASES
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
        && strong_lucas_probable_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_agrees_with_miller_rabin() {
        let sieved = primes_up_to(20_000);
        let tested: Vec<u64> = (0..=20_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieved, tested);
    }

    #[test]
    fn big_primality_on_known_values() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        // 2^67 - 1 = 193707721 * 761838257287
        let m67 = (BigUint::one() << 67u32) - 1u32;
        assert!(!is_prime(&m67));
        // F_5 and F_6 are composite, product of two large primes is composite.
        let f6 = (BigUint::one() << 64u32) + 1u32;
        assert!(!is_prime(&f6));
        let semi = BigUint::from(18446744073709551557u64) * BigUint::from(18446744073709551533u64);
        assert!(!is_prime(&semi));
    }

    #[test]
    fn lucas_rejects_strong_base2_pseudoprimes() {
        // 3825123056546413051 is a strong pseudoprime to bases 2..23 and below 2^64,
        // so go through the big path explicitly.
        let n = BigUint::from(3825123056546413051u64);
        assert!(!strong_lucas_probable_prime(&n));
        assert!(!is_prime_u64(3825123056546413051));
    }

    #[test]
    fn lucas_accepts_primes() {
        for p in [5u64, 7, 11, 13, 101, 65537, 1_000_000_007] {
            assert!(strong_lucas_probable_prime(&BigUint::from(p)), "{p}");
        }
    }

    #[test]
    fn squares() {
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(132)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(is_square_u64(0));
        assert!(!is_square_u64(u64::MAX));
    }

    #[test]
    fn valuation_by_division() {
        let (v, rest) = valuation(&BigInt::from(17412), &BigInt::from(2));
        assert_eq!((v, rest), (2, BigInt::from(4353)));
    }
}
