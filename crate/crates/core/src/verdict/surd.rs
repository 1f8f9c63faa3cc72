//! Exact real quadratic surds `(A + B sqrt(D)) / L`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::effort::Effort;
use crate::error::{Error, Result};
use crate::square_classes::factorize;

/// `(rational + coeff * sqrt(radicand)) / denominator` in lowest terms, with
/// `radicand` square-free and greater than 1 whenever `coeff` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSurd {
    #[serde(with = "crate::serde_big")]
    pub rational: BigInt,
    #[serde(with = "crate::serde_big")]
    pub coeff: BigInt,
    #[serde(with = "crate::serde_big")]
    pub radicand: BigInt,
    #[serde(with = "crate::serde_big")]
    pub denominator: BigInt,
}

impl QuadraticSurd {
    pub fn integer(n: BigInt) -> Self {
        QuadraticSurd {
            rational: n,
            coeff: BigInt::zero(),
            radicand: BigInt::one(),
            denominator: BigInt::one(),
        }
    }

    /// `(a + b sqrt(r)) / l` for `r >= 0`, `l != 0`.
    pub fn new(a: BigInt, b: BigInt, r: BigInt, l: BigInt) -> Result<Self> {
        if r.is_negative() || l.is_zero() {
            return Err(Error::invalid(
                "surd needs a nonnegative radicand and nonzero denominator",
            ));
        }
        let (mut a, mut b, mut l) = (a, b, l);
        // pull square factors out of r
        let mut radicand = BigInt::one();
        if r.is_zero() {
            b = BigInt::zero();
        } else {
            let f = factorize(&r, Effort::DEFAULT);
            if let Some(c) = &f.cofactor {
                // An unsplit cofactor may hide a square; keep it under the root.
                radicand *= c;
            }
            for pp in &f.factors {
                b *= num_traits::pow(pp.prime.clone(), (pp.exponent / 2) as usize);
                if pp.exponent % 2 == 1 {
                    radicand *= &pp.prime;
                }
            }
        }
        if radicand.is_one() {
            a += &b;
            b = BigInt::zero();
        }
        if b.is_zero() {
            radicand = BigInt::one();
        }
        if l.is_negative() {
            a = -a;
            b = -b;
            l = -l;
        }
        let g = a.gcd(&b).gcd(&l);
        Ok(QuadraticSurd {
            rational: a / &g,
            coeff: b / &g,
            radicand,
            denominator: l / g,
        })
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `self + n`
    pub fn add_integer(&self, n: &BigInt) -> QuadraticSurd {
        QuadraticSurd {
            rational: &self.rational + n * &self.denominator,
            ..self.clone()
        }
    }

    /// `floor(B sqrt(D))`, exact.
    fn floor_irrational_part(&self) -> BigInt {
        let sq = &self.coeff * &self.coeff * &self.radicand;
        let root = sq.sqrt();
        let exact = &root * &root == sq;
        if self.coeff.is_negative() {
            if exact {
                -root
            } else {
                -root - 1
            }
        } else {
            root
        }
    }

    pub fn floor(&self) -> BigInt {
        let t = self.floor_irrational_part();
        (&self.rational + t).div_floor(&self.denominator)
    }

    /// Exact ceiling. For irrational values `x * L` lies strictly inside
    /// `(A + t, A + t + 1)` with `t = floor(B sqrt D)`, which pins the ceiling.
    pub fn ceil(&self) -> BigInt {
        if self.is_rational() {
            return -(-&self.rational).div_floor(&self.denominator);
        }
        self.floor() + 1
    }

    /// Decimal expansion truncated toward minus infinity after `places` digits.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), places as usize);
        let scaled = QuadraticSurd {
            rational: &self.rational * &scale,
            coeff: &self.coeff * &scale,
            ..self.clone()
        };
        let f = scaled.floor();
        let (int, frac) = f.div_mod_floor(&scale);
        if places == 0 {
            return int.to_string();
        }
        format!(
            "{int}.{:0>width$}",
            frac.to_string(),
            width = places as usize
        )
    }

    /// Exact comparison with an integer.
    pub fn ge_integer(&self, n: &BigInt) -> bool {
        // x >= n  <=>  ceil(x) > n, or x == n exactly
        if self.is_rational() {
            return self.rational >= (n * &self.denominator);
        }
        self.floor() >= *n
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.coeff.is_zero() {
            self.rational.to_string()
        } else {
            let root = if self.coeff.abs().is_one() {
                format!("√{}", self.radicand)
            } else {
                format!("{}√{}", self.coeff.abs(), self.radicand)
            };
            let sign = if self.coeff.is_negative() { "-" } else { "+" };
            if self.rational.is_zero() {
                if self.coeff.is_negative() {
                    format!("-{root}")
                } else {
                    root
                }
            } else {
                format!("{} {sign} {root}", self.rational)
            }
        };
        if self.denominator.is_one() {
            f.write_str(&body)
        } else if self.coeff.is_zero() || self.rational.is_zero() {
            write!(f, "{body}/{}", self.denominator)
        } else {
            write!(f, "({body})/{}", self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(nu: i64) -> QuadraticSurd {
        QuadraticSurd::new(
            BigInt::one(),
            BigInt::one(),
            BigInt::from(1 + 4 * nu),
            BigInt::from(2),
        )
        .unwrap()
    }

    #[test]
    fn rational_alpha_for_twelve() {
        let a = alpha(12);
        assert!(a.is_rational());
        assert_eq!(a, QuadraticSurd::integer(BigInt::from(4)));
        assert_eq!(a.ceil(), BigInt::from(4));
        assert_eq!(a.add_integer(&a.ceil()).to_string(), "8");
    }

    #[test]
    fn irrational_alpha_for_112() {
        let a = alpha(112);
        assert_eq!(a.to_string(), "(1 + √449)/2");
        assert_eq!(a.ceil(), BigInt::from(12));
        let upper = a.add_integer(&a.ceil());
        assert_eq!(upper.to_string(), "(25 + √449)/2");
        assert_eq!(upper.to_decimal(3), "23.094");
        assert!(upper.ge_integer(&BigInt::from(4)));
    }

    #[test]
    fn square_factors_are_pulled_out() {
        // (2 + sqrt 8)/2 = 1 + sqrt 2
        let s = QuadraticSurd::new(
            BigInt::from(2),
            BigInt::one(),
            BigInt::from(8),
            BigInt::from(2),
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 + √2");
        assert_eq!(s.floor(), BigInt::from(2));
        assert_eq!(s.ceil(), BigInt::from(3));
    }

    #[test]
    fn negative_coefficients() {
        // 3 - sqrt 2 = 1.585...
        let s = QuadraticSurd::new(
            BigInt::from(3),
            BigInt::from(-1),
            BigInt::from(2),
            BigInt::one(),
        )
        .unwrap();
        assert_eq!(s.floor(), BigInt::from(1));
        assert_eq!(s.ceil(), BigInt::from(2));
        assert_eq!(s.to_decimal(4), "1.5857");
    }

    #[test]
    fn ceil_matches_floating_point_on_a_range() {
        for nu in 2..500i64 {
            let a = alpha(nu);
            let approx = (1.0 + ((1 + 4 * nu) as f64).sqrt()) / 2.0;
            assert_eq!(a.ceil(), BigInt::from(approx.ceil() as i64), "nu = {nu}");
        }
    }
}
