//! Exact arithmetic for the nested square-root towers `x_{n+1} = sqrt(nu + x_n)`.
//!
//! The crate walks the whole verification chain for the ring `O^nu`, the union
//! of the rings of integers of `K_n = Q(x_n)`:
//!
//! - [`orbit`]: the iterates `P_n` of `f(t) = t^2 - nu`, the critical-orbit
//!   constants `c_n` and their `p`-adic valuation profiles.
//! - [`discriminant`]: the discriminant recursion for `x_n`, the norm constants
//!   `N_n` and a Sylvester-resultant oracle that checks both.
//! - [`residue`]: Jacobi symbols, Pepin's test, Fermat-prime residue patterns and
//!   universal non-residue certificates for the kernels 3 and 7.
//! - [`square_classes`]: factorization, square-free kernels, 2-independence and
//!   the quadratic-subfield lattice of the Galois closure `L_n`.
//! - [`wreath`]: the iterated wreath product `[C_2]^n` as binary-tree
//!   automorphisms and the count of its index-2 subgroups.
//! - [`verdict`]: constructibility, minimal polynomials of `2cos(2pi/m)`, the
//!   Fermat-prime obstruction chain and the assembled JR-number verdict.

pub mod discriminant;
pub mod effort;
pub mod error;
pub mod intmath;
pub mod orbit;
pub mod poly;
pub mod residue;
pub mod square_classes;
pub mod verdict;
pub mod wreath;

pub(crate) mod serde_big;

pub use discriminant::DiscriminantReport;
pub use effort::{Caps, Effort, CAPS};
pub use error::{Error, Result};
pub use orbit::{OrbitSequence, TowerParams, TowerStrictness, ValuationProfile};
pub use poly::IntPoly;
pub use residue::{FermatNumber, Primality, ResidueCertificate, ResidueScope};
pub use square_classes::{
    FactorStatus, Factorization, GaloisCheck, Independence, Sqrt2Certificate, SqrtMembership,
    SquareClassVector, SubfieldLattice, Subset,
};
pub use verdict::{Conclusion, ConstructibilityDecomposition, QuadraticSurd, VerdictReport};
pub use wreath::TreeAutomorphism;
