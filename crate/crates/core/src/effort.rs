use serde::{Deserialize, Serialize};

/// Size caps shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `N` accepted by `constant_terms` (`c_N` has about `2^(N-1) log10(nu)` digits).
    pub orbit_len: u32,
    /// Largest `n` for which `P_n` is expanded densely (degree `2^n`).
    pub poly_depth: u32,
    /// Largest `n` for the Sylvester-matrix discriminant oracle.
    pub oracle_depth: u32,
    /// Largest Fermat index that is ever materialized.
    pub fermat_index: u32,
    /// Largest tree depth for group closures.
    pub wreath_depth: u32,
    /// Largest `m` for `cos_minpoly`.
    pub cos_order: u64,
    /// Largest `d` for `nested_radical_check`.
    pub radical_depth: u32,
    /// Largest `|b|` bound for degree-2 window enumeration.
    pub window_height: u64,
}

pub const CAPS: Caps = Caps {
    orbit_len: 12,
    poly_depth: 6,
    oracle_depth: 4,
    fermat_index: 9,
    wreath_depth: 4,
    cos_order: 200,
    radical_depth: 12,
    window_height: 1_000_000,
};

/// Factoring budget: trial division bound and Pollard rho iteration cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Effort {
    pub const QUICK: Effort = Effort {
        trial_bound: 10_000,
        rho_iterations: 100_000,
    };
    pub const DEFAULT: Effort = Effort {
        trial_bound: 1_000_000,
        rho_iterations: 10_000_000,
    };
    pub const THOROUGH: Effort = Effort {
        trial_bound: 10_000_000,
        rho_iterations: 100_000_000,
    };

    /// Parses `quick`, `default` or `thorough`.
    pub fn from_level(level: &str) -> Option<Effort> {
        match level {
            "quick" => Some(Effort::QUICK),
            "default" => Some(Effort::DEFAULT),
            "thorough" => Some(Effort::THOROUGH),
            _ => None,
        }
    }
}

impl Default for Effort {
    fn default() -> Self {
        Effort::DEFAULT
    }
}
