//! Square classes in `Q* / (Q*)^2` and the quadratic subfields of `L_n`.
//!
//! Kernels of products `c_{i_1} ... c_{i_k}` are computed on parity vectors,
//! never by multiplying the `c_i` themselves.

mod factor;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use factor::{factorize, FactorStatus, Factorization, PrimePower};

use crate::effort::{Effort, CAPS};
use crate::error::{Error, Result};
use crate::orbit::{constant_terms, TowerParams};

/// A set of one-based indices, stored as a bit mask (index `i` is bit `i - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> (index - 1) & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(d)?;
        if idx.iter().any(|&i| i == 0 || i > 64) {
            return Err(serde::de::Error::custom(
                "subset indices must lie in 1..=64",
            ));
        }
        Ok(Subset::from_indices(&idx))
    }
}

/// A nonzero rational square class: sign bit plus the primes of odd exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareClassVector {
    #[serde(with = "crate::serde_big")]
    pub value: BigInt,
    /// Primes whose coordinate is 1; all other coordinates are 0.
    #[serde(with = "crate::serde_big::vec")]
    pub odd_primes: Vec<BigInt>,
    pub sign_bit: bool,
}

impl SquareClassVector {
    /// `None` when the factorization is partial.
    pub fn new(value: &BigInt, factorization: &Factorization) -> Option<Self> {
        factorization.is_complete().then(|| SquareClassVector {
            value: value.clone(),
            odd_primes: factorization
                .factors
                .iter()
                .filter(|pp| pp.exponent % 2 == 1)
                .map(|pp| pp.prime.clone())
                .collect(),
            sign_bit: value.sign() == Sign::Minus,
        })
    }

    pub fn parity(&self, p: &BigInt) -> bool {
        self.odd_primes.binary_search(p).is_ok()
    }

    /// The square-free representative of the class.
    pub fn kernel(&self) -> BigInt {
        let k: BigInt = self.odd_primes.iter().product();
        if self.sign_bit {
            -k
        } else {
            k
        }
    }
}

/// Kernel of the product of several classes: sign and prime sets add mod 2.
fn product_kernel<'a>(classes: impl Iterator<Item = &'a SquareClassVector>) -> BigInt {
    let mut sign = false;
    let mut odd: BTreeSet<&BigInt> = BTreeSet::new();
    for v in classes {
        sign ^= v.sign_bit;
        for p in &v.odd_primes {
            if !odd.remove(p) {
                odd.insert(p);
            }
        }
    }
    let k: BigInt = odd.into_iter().product();
    if sign {
        -k
    } else {
        k
    }
}

fn factor_all(values: &[BigInt], effort: Effort) -> Vec<Factorization> {
    values
        .par_iter()
        .map(|v| factorize(&v.abs(), effort))
        .collect()
}

/// Square-free kernel, or `None` when the factorization is partial.
pub fn squarefree_kernel(n: &BigInt, effort: Effort) -> Result<Option<BigInt>> {
    if n.sign() != Sign::Plus {
        return Err(Error::invalid(format!(
            "squarefree_kernel needs n >= 1, got {n}"
        )));
    }
    let f = factorize(n, effort);
    Ok(SquareClassVector::new(n, &f).map(|v| v.kernel()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Independence {
    Independent {
        rank: u32,
    },
    /// A nonempty subset whose product is a perfect square.
    Dependent {
        witness: Subset,
    },
    /// Some values could not be factored and no dependency was found among the rest.
    Unknown {
        unfactored: Subset,
    },
}

/// Gaussian elimination over F_2 on the classes that are known.
///
/// Returns the first dependency found (rows processed in order), otherwise
/// the rank of the known rows.
fn eliminate(classes: &[Option<SquareClassVector>]) -> std::result::Result<u32, Subset> {
    // Column 0 is the sign; primes get columns on first sight.
    let mut columns: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for v in classes.iter().flatten() {
        for p in &v.odd_primes {
            let next = columns.len() + 1;
            columns.entry(p).or_insert(next);
        }
    }
    let width = columns.len() + 1;
    let words = width.div_ceil(64);
    // pivot column -> (row bits, combination)
    let mut pivots: BTreeMap<usize, (Vec<u64>, u64)> = BTreeMap::new();
    let mut rank = 0;
    for (i, v) in classes.iter().enumerate() {
        let Some(v) = v else { continue };
        let mut bits = vec![0u64; words];
        let mut set = |c: usize| bits[c / 64] ^= 1 << (c % 64);
        if v.sign_bit {
            set(0);
        }
        for p in &v.odd_primes {
            set(columns[p]);
        }
        let mut combo = 1u64 << i;
        loop {
            let lead = bits
                .iter()
                .enumerate()
                .find(|(_, &w)| w != 0)
                .map(|(k, w)| k * 64 + w.trailing_zeros() as usize);
            let Some(col) = lead else {
                return Err(Subset(combo));
            };
            match pivots.get(&col) {
                Some((pbits, pcombo)) => {
                    for (b, pb) in bits.iter_mut().zip(pbits) {
                        *b ^= pb;
                    }
                    combo ^= pcombo;
                }
                None => {
                    pivots.insert(col, (bits, combo));
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(rank)
}

fn independence_of(classes: &[Option<SquareClassVector>]) -> Independence {
    match eliminate(classes) {
        Err(witness) => Independence::Dependent { witness },
        Ok(rank) => {
            let missing = classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_none())
                .fold(0u64, |m, (i, _)| m | 1 << i);
            if missing == 0 {
                Independence::Independent { rank }
            } else {
                Independence::Unknown {
                    unfactored: Subset(missing),
                }
            }
        }
    }
}

/// Are the given nonzero integers independent in `Q* / (Q*)^2`?
pub fn two_independent(values: &[BigInt], effort: Effort) -> Result<Independence> {
    if values.iter().any(Zero::is_zero) {
        return Err(Error::invalid("two_independent needs nonzero values"));
    }
    if values.len() > 64 {
        return Err(Error::invalid("two_independent handles at most 64 values"));
    }
    let facts = factor_all(values, effort);
    let classes: Vec<_> = values
        .iter()
        .zip(&facts)
        .map(|(v, f)| SquareClassVector::new(v, f))
        .collect();
    Ok(independence_of(&classes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullReason {
    /// `4 | nu` (and `nu` not a square).
    ByRule,
    /// `c_1 .. c_n` are 2-independent.
    ByRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GaloisCheck {
    Full { reason: FullReason },
    NotFull { witness: Subset },
    Unknown { unfactored: Subset },
}

impl GaloisCheck {
    pub fn is_full(&self) -> bool {
        matches!(self, GaloisCheck::Full { .. })
    }
}

fn galois_rule_applies(nu: u64) -> bool {
    nu.is_multiple_of(4) && !TowerParams::new(nu).map(|p| p.is_square).unwrap_or(true)
}

/// Is `Gal(L_n)` the full wreath product `[C_2]^n`?
pub fn galois_full_check(nu: u64, n: u32, effort: Effort) -> Result<GaloisCheck> {
    TowerParams::new(nu)?;
    if galois_rule_applies(nu) {
        return Ok(GaloisCheck::Full {
            reason: FullReason::ByRule,
        });
    }
    let seq = constant_terms(nu, n)?;
    Ok(galois_from(two_independent(&seq.c, effort)?))
}

fn galois_from(independence: Independence) -> GaloisCheck {
    match independence {
        Independence::Independent { .. } => GaloisCheck::Full {
            reason: FullReason::ByRank,
        },
        Independence::Dependent { witness } => GaloisCheck::NotFull { witness },
        Independence::Unknown { unfactored } => GaloisCheck::Unknown { unfactored },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub subset: Subset,
    /// `None` when a factor in the subset could not be factored.
    #[serde(with = "crate::serde_big::opt")]
    pub kernel: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldLattice {
    pub nu: u64,
    pub n: u32,
    /// One entry per nonempty subset of `{1..n}`, in mask order.
    pub kernels: Vec<LatticeEntry>,
    /// F_2-rank of `c_1 .. c_n`, when every factorization completed.
    pub rank: Option<u32>,
    pub complete: bool,
    pub galois: GaloisCheck,
    /// Full Galois group and every kernel known: these are all the quadratic subfields.
    pub certified: bool,
    pub factorizations: Vec<Factorization>,
}

impl SubfieldLattice {
    pub fn kernel_of(&self, s: Subset) -> Option<&BigInt> {
        self.kernels
            .get(s.0 as usize - 1)
            .and_then(|e| e.kernel.as_ref())
    }

    pub fn known_kernels(&self) -> Vec<BigInt> {
        self.kernels
            .iter()
            .filter_map(|e| e.kernel.clone())
            .collect()
    }

    pub fn find(&self, d: &BigInt) -> Option<Subset> {
        self.kernels
            .iter()
            .find(|e| e.kernel.as_ref() == Some(d))
            .map(|e| e.subset)
    }
}

/// Kernels of all `2^n - 1` subset products of `c_1 .. c_n`.
pub fn quadratic_subfields(nu: u64, n: u32, effort: Effort) -> Result<SubfieldLattice> {
    if n == 0 {
        return Err(Error::invalid("quadratic_subfields needs n >= 1"));
    }
    if n > CAPS.orbit_len {
        return Err(Error::limit("lattice depth n", n, CAPS.orbit_len));
    }
    let seq = constant_terms(nu, n)?;
    let factorizations = factor_all(&seq.c, effort);
    let classes: Vec<_> = seq
        .c
        .iter()
        .zip(&factorizations)
        .map(|(v, f)| SquareClassVector::new(v, f))
        .collect();

    let kernels: Vec<LatticeEntry> = (1u64..1 << n)
        .map(|mask| {
            let subset = Subset(mask);
            let members: Option<Vec<&SquareClassVector>> = subset
                .indices()
                .into_iter()
                .map(|i| classes[i - 1].as_ref())
                .collect();
            LatticeEntry {
                subset,
                kernel: members.map(|m| product_kernel(m.into_iter())),
            }
        })
        .collect();

    let independence = independence_of(&classes);
    let rank = match independence {
        Independence::Independent { rank } => Some(rank),
        Independence::Dependent { .. } if classes.iter().all(Option::is_some) => {
            eliminate_rank(&classes)
        }
        _ => None,
    };
    let complete = classes.iter().all(Option::is_some);
    let galois = if galois_rule_applies(nu) {
        GaloisCheck::Full {
            reason: FullReason::ByRule,
        }
    } else {
        galois_from(independence)
    };
    let certified = complete && galois.is_full();
    if certified && rank != Some(n) {
        return Err(Error::invariant(format!(
            "nu = {nu}: Galois group full by rule but c_1..c_{n} have rank {rank:?}"
        )));
    }
    Ok(SubfieldLattice {
        nu,
        n,
        kernels,
        rank,
        complete,
        galois,
        certified,
        factorizations,
    })
}

/// Rank of known rows, skipping dependent ones.
fn eliminate_rank(classes: &[Option<SquareClassVector>]) -> Option<u32> {
    let mut kept: Vec<Option<SquareClassVector>> = Vec::new();
    for c in classes {
        kept.push(c.clone());
        if eliminate(&kept).is_err() {
            kept.pop();
        }
    }
    Some(kept.len() as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SqrtMembership {
    Present {
        subset: Subset,
    },
    /// Only with a certified lattice.
    Absent,
    Unknown,
}

fn is_squarefree(d: &BigInt, effort: Effort) -> Result<bool> {
    let f = factorize(d, effort);
    if !f.is_complete() {
        return Err(Error::invalid(format!(
            "cannot certify that {d} is square-free"
        )));
    }
    Ok(f.factors.iter().all(|pp| pp.exponent == 1))
}

/// Does `L_n` contain `sqrt(d)`?
pub fn contains_sqrt(nu: u64, n: u32, d: &BigInt, effort: Effort) -> Result<SqrtMembership> {
    if d < &BigInt::from(2) || !is_squarefree(d, effort)? {
        return Err(Error::invalid(format!(
            "{d} is not a square-free integer >= 2"
        )));
    }
    let lattice = quadratic_subfields(nu, n, effort)?;
    Ok(membership_in(&lattice, d))
}

pub fn membership_in(lattice: &SubfieldLattice, d: &BigInt) -> SqrtMembership {
    match lattice.find(d) {
        Some(subset) => SqrtMembership::Present { subset },
        None if lattice.certified => SqrtMembership::Absent,
        None => SqrtMembership::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub n: u32,
    pub membership: SqrtMembership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Sqrt2Certificate {
    Certified {
        /// Whether `mu` is square-free; the argument never uses it.
        mu_squarefree: Option<bool>,
        note: Option<String>,
        spot_checks: Vec<SpotCheck>,
    },
    Inapplicable {
        reason: String,
    },
}

impl Sqrt2Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Sqrt2Certificate::Certified { .. })
    }
}

/// Depth up to which the certificate is compared against the lattice.
pub const SQRT2_SPOT_DEPTH: u32 = 5;

/// `sqrt(2)` lies in no `L_n` when `4 | nu`, `v_2(nu)` is even and `nu` is not a square.
///
/// Then every `c_n` carries exactly `2^v_2(nu)` (an even power), the Galois group
/// is full, and the `2^n - 1` subset kernels exhaust the quadratic subfields, all odd.
/// The certificate is compared against `contains_sqrt` for `n <= spot_depth` (at most 5).
pub fn sqrt2_free_certificate(
    params: &TowerParams,
    spot_depth: u32,
    effort: Effort,
) -> Result<Sqrt2Certificate> {
    let inapplicable = |reason: String| Ok(Sqrt2Certificate::Inapplicable { reason });
    let nu = params.nu;
    if !nu.is_multiple_of(4) {
        return inapplicable(format!("4 does not divide nu = {nu}"));
    }
    if params.two_adic_valuation % 2 == 1 {
        return inapplicable(format!("v_2(nu) = {} is odd", params.two_adic_valuation));
    }
    if params.mu < 3 {
        return inapplicable(format!("odd part mu = {} is below 3", params.mu));
    }
    if params.is_square {
        return inapplicable(format!("nu = {nu} is a perfect square"));
    }

    let mu_factors = factorize(&BigInt::from(params.mu), effort);
    let mu_squarefree = mu_factors
        .is_complete()
        .then(|| mu_factors.factors.iter().all(|pp| pp.exponent == 1));
    let note = (mu_squarefree != Some(true)).then(|| {
        format!(
            "mu = {} is not known to be square-free; the argument only uses 4 | nu and an even 2-adic valuation",
            params.mu
        )
    });

    let two = BigInt::from(2);
    let mut spot_checks = Vec::new();
    for n in 1..=spot_depth.min(SQRT2_SPOT_DEPTH) {
        let membership = membership_in(&quadratic_subfields(nu, n, effort)?, &two);
        if let SqrtMembership::Present { subset } = membership {
            return Err(Error::invariant(format!(
                "sqrt(2) certified absent for nu = {nu} but kernel of subset {subset} at n = {n} is 2"
            )));
        }
        spot_checks.push(SpotCheck { n, membership });
    }
    Ok(Sqrt2Certificate::Certified {
        mu_squarefree,
        note,
        spot_checks,
    })
}

impl fmt::Display for SqrtMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SqrtMembership::Present { subset } => write!(f, "present (subset {subset})"),
            SqrtMembership::Absent => f.write_str("absent"),
            SqrtMembership::Unknown => f.write_str("unknown"),
        }
    }
}

/// `1` as a kernel: the empty product.
pub fn unit_kernel() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernels_of_examples() {
        let e = Effort::DEFAULT;
        assert_eq!(
            squarefree_kernel(&BigInt::from(132), e).unwrap(),
            Some(BigInt::from(33))
        );
        assert_eq!(
            squarefree_kernel(&BigInt::from(144), e).unwrap(),
            Some(BigInt::one())
        );
        assert_eq!(
            squarefree_kernel(&BigInt::from(17412), e).unwrap(),
            Some(BigInt::from(4353))
        );
        assert!(squarefree_kernel(&BigInt::zero(), e).is_err());
    }

    #[test]
    fn kernel_unknown_on_partial() {
        let stingy = Effort {
            trial_bound: 10,
            rho_iterations: 10,
        };
        let n = BigInt::from(1_000_003u64 * 999_983u64);
        assert_eq!(squarefree_kernel(&n, stingy).unwrap(), None);
    }

    #[test]
    fn independence_examples() {
        let e = Effort::DEFAULT;
        assert_eq!(
            two_independent(&big(&[3, 6]), e).unwrap(),
            Independence::Independent { rank: 2 }
        );
        assert_eq!(
            two_independent(&big(&[5, 20]), e).unwrap(),
            Independence::Dependent {
                witness: Subset::from_indices(&[1, 2])
            }
        );
        assert_eq!(
            two_independent(&big(&[2]), e).unwrap(),
            Independence::Independent { rank: 1 }
        );
        assert!(two_independent(&big(&[2, 0]), e).is_err());
    }

    #[test]
    fn sign_participates() {
        let e = Effort::DEFAULT;
        // -1 * -4 = 4
        assert_eq!(
            two_independent(&big(&[-1, -4]), e).unwrap(),
            Independence::Dependent {
                witness: Subset::from_indices(&[1, 2])
            }
        );
        assert_eq!(
            two_independent(&big(&[-1, 4 * 3]), e).unwrap(),
            Independence::Independent { rank: 2 }
        );
    }

    #[test]
    fn galois_examples() {
        let e = Effort::DEFAULT;
        assert_eq!(
            galois_full_check(12, 4, e).unwrap(),
            GaloisCheck::Full {
                reason: FullReason::ByRule
            }
        );
        assert_eq!(
            galois_full_check(3, 2, e).unwrap(),
            GaloisCheck::Full {
                reason: FullReason::ByRank
            }
        );
        assert_eq!(
            galois_full_check(5, 2, e).unwrap(),
            GaloisCheck::NotFull {
                witness: Subset::from_indices(&[1, 2])
            }
        );
        // 36 is a square, so the multiple-of-4 rule does not apply.
        assert_eq!(
            galois_full_check(36, 2, e).unwrap(),
            GaloisCheck::NotFull {
                witness: Subset::from_indices(&[1])
            }
        );
    }

    #[test]
    fn lattices() {
        let e = Effort::DEFAULT;
        let l = quadratic_subfields(12, 2, e).unwrap();
        assert_eq!(l.known_kernels(), big(&[3, 33, 11]));
        assert!(l.certified);
        let l = quadratic_subfields(12, 3, e).unwrap();
        let mut k = l.known_kernels();
        k.sort();
        assert_eq!(k, big(&[3, 11, 33, 1451, 4353, 15961, 47883]));
        assert_eq!(l.rank, Some(3));
        let l = quadratic_subfields(3, 2, e).unwrap();
        assert_eq!(l.known_kernels(), big(&[3, 6, 2]));
        // nu = 5: c_1 c_2 = 100
        let l = quadratic_subfields(5, 2, e).unwrap();
        assert_eq!(l.known_kernels(), big(&[5, 5, 1]));
        assert_eq!(l.rank, Some(1));
        assert!(!l.certified);
    }

    #[test]
    fn sqrt_membership() {
        let e = Effort::DEFAULT;
        let two = BigInt::from(2);
        assert_eq!(
            contains_sqrt(3, 2, &two, e).unwrap(),
            SqrtMembership::Present {
                subset: Subset::from_indices(&[1, 2])
            }
        );
        assert_eq!(
            contains_sqrt(12, 3, &two, e).unwrap(),
            SqrtMembership::Absent
        );
        assert_eq!(
            contains_sqrt(12, 2, &BigInt::from(33), e).unwrap(),
            SqrtMembership::Present {
                subset: Subset::from_indices(&[2])
            }
        );
        // not full: 5 and 20 are dependent, so 7 can't be called absent
        assert_eq!(
            contains_sqrt(5, 2, &BigInt::from(7), e).unwrap(),
            SqrtMembership::Unknown
        );
        assert!(contains_sqrt(12, 2, &BigInt::from(12), e).is_err());
        assert!(contains_sqrt(12, 2, &BigInt::one(), e).is_err());
    }

    #[test]
    fn sqrt2_certificates() {
        let e = Effort::DEFAULT;
        let cert = sqrt2_free_certificate(&TowerParams::new(12).unwrap(), 3, e).unwrap();
        assert!(cert.is_certified());
        let Sqrt2Certificate::Certified {
            mu_squarefree,
            spot_checks,
            ..
        } = cert
        else {
            unreachable!()
        };
        assert_eq!(mu_squarefree, Some(true));
        assert!(spot_checks
            .iter()
            .all(|s| s.membership == SqrtMembership::Absent));

        let eight = sqrt2_free_certificate(&TowerParams::new(8).unwrap(), 3, e).unwrap();
        assert!(
            matches!(eight, Sqrt2Certificate::Inapplicable { ref reason } if reason.contains("odd"))
        );
        let three = sqrt2_free_certificate(&TowerParams::new(3).unwrap(), 3, e).unwrap();
        assert!(!three.is_certified());
        // mu = 9 is not square-free; certificate still applies and says so.
        let cert = sqrt2_free_certificate(&TowerParams::new(4 * 27).unwrap(), 2, e).unwrap();
        assert!(matches!(
            cert,
            Sqrt2Certificate::Certified {
                mu_squarefree: Some(false),
                note: Some(_),
                ..
            }
        ));
        let square = sqrt2_free_certificate(&TowerParams::new(36).unwrap(), 2, e).unwrap();
        assert!(!square.is_certified());
    }

    #[test]
    fn subset_display_and_serde() {
        let s = Subset::from_indices(&[1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        assert_eq!(serde_json::from_str::<Subset>("[1,3]").unwrap(), s);
        assert!(serde_json::from_str::<Subset>("[0]").is_err());
    }
}
