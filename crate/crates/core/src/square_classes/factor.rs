//! Budgeted integer factorization: trial division, then Brent's variant of
//! Pollard rho with the fixed offset schedule `c = 1, 2, 3, ...` and seed 2.
//! The same input and budget always produce the same result.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::effort::Effort;
use crate::intmath::{is_prime, mul_mod, small_primes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorStatus {
    Complete,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "crate::serde_big")]
    pub prime: BigInt,
    pub exponent: u32,
}

/// `n = prod(prime^exponent) * cofactor`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::serde_big")]
    pub n: BigInt,
    pub factors: Vec<PrimePower>,
    /// Composite part the budget could not split.
    #[serde(with = "crate::serde_big::opt")]
    pub cofactor: Option<BigInt>,
    pub status: FactorStatus,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.status == FactorStatus::Complete
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|pp| &pp.prime == p)
            .map_or(0, |pp| pp.exponent)
    }

    pub fn reconstruct(&self) -> BigInt {
        let base: BigInt = self
            .factors
            .iter()
            .map(|pp| num_traits::pow(pp.prime.clone(), pp.exponent as usize))
            .product();
        match &self.cofactor {
            Some(c) => base * c,
            None => base,
        }
    }
}

/// Rho on word-sized moduli. Returns a nontrivial factor, if one turns up
/// within the budget, and the iterations spent.
fn rho_u64(n: u64, c: u64, budget: u64) -> (Option<u64>, u64) {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64 % n, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut spent = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        spent += r;
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            spent += BATCH.min(r - k);
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if spent > budget {
            return (None, spent);
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            spent += 1;
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    ((g != n).then_some(g), spent)
}

fn rho_big(n: &BigUint, c: u64, budget: u64) -> (Option<BigUint>, u64) {
    const BATCH: u64 = 128;
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32) % n;
    let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
    let (mut x, mut ys) = (y.clone(), y.clone());
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        spent += r;
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            spent += BATCH.min(r - k);
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if spent > budget {
            return (None, spent);
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            spent += 1;
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    ((&g != n).then_some(g), spent)
}

/// Splits a composite `n` into two nontrivial factors, or gives up.
fn split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return Some(root);
    }
    let mut offset = 1u64;
    while *budget > 0 {
        let (found, spent) = match n.to_u64() {
            Some(small) => {
                let (f, s) = rho_u64(small, offset, *budget);
                (f.map(BigUint::from), s)
            }
            None => rho_big(n, offset, *budget),
        };
        *budget = budget.saturating_sub(spent);
        if found.is_some() {
            return found;
        }
        offset += 1;
    }
    None
}

/// Factors a positive integer within the given budget.
///
/// Never returns a wrong answer: anything that cannot be split is kept as a
/// composite cofactor with status `Partial`.
pub fn factorize(n: &BigInt, effort: Effort) -> Factorization {
    assert!(n.sign() == Sign::Plus, "factorize needs a positive integer");
    let mut primes: Vec<BigUint> = Vec::new();
    let mut rest = n.magnitude().clone();

    for &p in small_primes(effort.trial_bound).iter() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            primes.push(pb.clone());
        }
    }

    let mut stuck = BigUint::one();
    let mut budget = effort.rho_iterations;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        match split(&m, &mut budget) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => stuck *= m,
        }
    }

    primes.sort();
    let mut factors: Vec<PrimePower> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some(last) if last.prime == p => last.exponent += 1,
            _ => factors.push(PrimePower {
                prime: p,
                exponent: 1,
            }),
        }
    }
    let complete = stuck.is_one();
    Factorization {
        n: n.clone(),
        factors,
        cofactor: (!complete).then(|| BigInt::from(stuck)),
        status: if complete {
            FactorStatus::Complete
        } else {
            FactorStatus::Partial
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors
            .iter()
            .map(|pp| (pp.prime.to_u64().unwrap(), pp.exponent))
            .collect()
    }

    #[test]
    fn small_examples() {
        let f = factorize(&BigInt::from(17412), Effort::DEFAULT);
        assert!(f.is_complete());
        assert_eq!(pairs(&f), vec![(2, 2), (3, 1), (1451, 1)]);
        let f = factorize(&BigInt::one(), Effort::DEFAULT);
        assert!(f.is_complete() && f.factors.is_empty());
        let f = factorize(&BigInt::from(1757), Effort::DEFAULT);
        assert_eq!(pairs(&f), vec![(7, 1), (251, 1)]);
    }

    #[test]
    fn rho_splits_beyond_trial_bound() {
        // both factors above a trial bound of 100
        let tiny = Effort {
            trial_bound: 100,
            rho_iterations: 1_000_000,
        };
        let n = BigInt::from(1_000_003u64 * 999_983u64);
        let f = factorize(&n, tiny);
        assert_eq!(pairs(&f), vec![(999_983, 1), (1_000_003, 1)]);
        // a square of a large prime
        let n = BigInt::from(1_000_003u64 * 1_000_003u64);
        assert_eq!(pairs(&factorize(&n, tiny)), vec![(1_000_003, 2)]);
    }

    #[test]
    fn rho_on_big_moduli() {
        let p = BigInt::from(4_294_967_311u64);
        let q = BigInt::from(18_446_744_073_709_551_557u64);
        let n = &p * &q * &p;
        let f = factorize(&n, Effort::DEFAULT);
        assert!(f.is_complete());
        assert_eq!(f.exponent(&p), 2);
        assert_eq!(f.exponent(&q), 1);
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn exhausted_budget_is_partial_not_wrong() {
        let stingy = Effort {
            trial_bound: 10,
            rho_iterations: 10,
        };
        let n = BigInt::from(1_000_003u64 * 999_983u64 * 4);
        let f = factorize(&n, stingy);
        assert_eq!(f.status, FactorStatus::Partial);
        assert_eq!(f.cofactor, Some(BigInt::from(1_000_003u64 * 999_983u64)));
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn deterministic_reruns() {
        let n = BigInt::from(303177732u64) * BigInt::from(303177732u64) - 12;
        assert_eq!(
            factorize(&n, Effort::DEFAULT),
            factorize(&n, Effort::DEFAULT)
        );
        assert!(factorize(&n, Effort::DEFAULT).is_complete());
    }
}
