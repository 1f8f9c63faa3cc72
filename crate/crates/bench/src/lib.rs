//! Shared fixtures for the benchmarks.

use jrtower_core::orbit::constant_terms;
use num_bigint::BigInt;

/// nu values that satisfy every hypothesis, with universal residue scope.
pub const QUALIFYING_NU: [u64; 4] = [12, 28, 48, 112];

/// `c_1 .. c_n` for `nu`, the inputs the square-class code factors.
pub fn orbit_constants(nu: u64, n: u32) -> Vec<BigInt> {
    constant_terms(nu, n).expect("within orbit cap").c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(
            orbit_constants(12, 3),
            vec![BigInt::from(12), BigInt::from(132), BigInt::from(17412)]
        );
    }
}
