//! The Fermat-prime obstruction chain and the JR-number verdict for `O^nu`.
//!
//! For `nu = 2^(2m) mu` (`m >= 1`, `mu >= 3` odd, `nu` a non-residue modulo
//! every Fermat prime above 3) no `2cos(2pi/m)` with `m >= 3` lies in `O^nu`:
//! odd Fermat components are excluded by ramification, powers of 2 because
//! `sqrt 2` never appears. The totally positive elements below `4 + eps`
//! guaranteed by Kronecker's theorem are therefore missing, which rules out
//! `A(O^nu) = [4, +inf)`; the subring `U Z[x_n]` rules out `{+inf}`.

mod cyclotomic;
mod surd;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{
    constructible_order, cos_minpoly, cyclotomic, euler_phi, nested_radical_check, reduce_m,
    ConstructibilityDecomposition,
};
pub use surd::QuadraticSurd;

use crate::effort::{Effort, CAPS};
use crate::error::{Error, Result};
use crate::orbit::{orbit_mod_p, tower_strict, TowerParams, TowerStrictness};
use crate::residue::{
    jacobi_u64, known_fermat_primes, odd_fermat_primes_above_three, residue_certificate,
    ResidueCertificate, ResidueScope, FERMAT_CAVEAT,
};
use crate::square_classes::{
    factorize, membership_in, quadratic_subfields, sqrt2_free_certificate, FactorStatus,
    Independence, Sqrt2Certificate, SqrtMembership, SquareClassVector,
};

/// One link of the obstruction chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub claim: String,
    pub because: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Obstruction {
    Excluded { prime: u64, chain: Vec<ChainStep> },
    Inconclusive { prime: u64, reason: String },
}

impl Obstruction {
    pub fn is_excluded(&self) -> bool {
        matches!(self, Obstruction::Excluded { .. })
    }
}

/// Rules `2cos(2pi/p)` out of `O^nu` for a Fermat prime `p > 3`, when `nu` is
/// not a square mod `p` and the tower is strict up to `depth`.
pub fn fermat_obstruction(nu: u64, p: u64, depth: u32) -> Result<Obstruction> {
    if p <= 3 || !known_fermat_primes().contains(&p) {
        return Err(Error::invalid(format!(
            "{p} is not a certified Fermat prime above 3"
        )));
    }
    let strict = tower_strict(nu, depth)?;
    if !strict.strict {
        return Ok(Obstruction::Inconclusive {
            prime: p,
            reason: format!(
                "tower strictness unproven: c_{} is a perfect square",
                strict.witness.unwrap_or(0)
            ),
        });
    }
    let symbol = jacobi_u64(nu % p, p)?;
    if symbol != -1 {
        return Ok(Obstruction::Inconclusive {
            prime: p,
            reason: if symbol == 0 {
                format!("{p} divides nu")
            } else {
                format!("nu is a square modulo {p}")
            },
        });
    }
    if let Some(k) = orbit_mod_p(nu, p)? {
        return Err(Error::invariant(format!(
            "nu = {nu} is a non-residue mod {p} yet {p} divides c_{k}"
        )));
    }
    let step = |claim: String, because: &str| ChainStep {
        claim,
        because: because.to_string(),
    };
    let chain = vec![
        step(
            format!("({nu}/{p}) = -1"),
            "Jacobi symbol by binary reciprocity",
        ),
        step(
            format!("{p} divides no c_n"),
            "the orbit of 0 under t^2 - nu mod p never reaches 0 (a zero at step n would make nu = c_(n-1)^2 mod p)",
        ),
        step(
            format!("{p} divides no disc(x_n)"),
            "disc(x_n) = disc(x_(n-1))^2 2^(2^n) c_n, so the odd primes of disc(x_n) divide c_1 ... c_n",
        ),
        step(
            format!("{p} divides no disc(K_n)"),
            "disc(x_n) = [O_K : Z[x_n]]^2 disc(K_n)",
        ),
        step(
            format!("sqrt({p}) is not in O^nu"),
            "p ramifies in Q(sqrt p) since p = 1 (mod 4), and a prime ramifying in a subfield divides disc(K_n)",
        ),
        step(
            format!("2cos(2pi/{p}) is not in O^nu"),
            "Q(2cos(2pi/p)) is the maximal real subfield of Q(zeta_p), of 2-power degree, and contains Q(sqrt p)",
        ),
    ];
    Ok(Obstruction::Excluded { prime: p, chain })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub params: TowerParams,
    pub clauses: Vec<Clause>,
    pub residue: Option<ResidueCertificate>,
    /// `mu` passes but is not square-free; the square-free assumption is not
    /// used by the argument, only flagged.
    pub mu_not_squarefree: bool,
    pub passed: bool,
}

/// Checks `nu = 2^(2m) mu` with `m >= 1`, `mu >= 3` odd, `nu` non-square and the
/// Fermat residue condition. Failures are reported per clause, never raised.
pub fn hypothesis_check(nu: u64) -> Result<HypothesisReport> {
    let params = TowerParams::new(nu)?;
    let v = params.two_adic_valuation;
    let clause = |name: &str, passed: bool, detail: String| Clause {
        name: name.to_string(),
        passed,
        detail,
    };
    let (residue, residue_clause) = match residue_certificate(nu) {
        Ok(cert) => {
            let detail = match cert.scope {
                ResidueScope::Universal => format!(
                    "nu is {} times a square: a non-residue modulo every Fermat prime above 3",
                    cert.kernel_basis.unwrap_or_default()
                ),
                ResidueScope::Finite => format!(
                    "non-residue modulo {:?} (known Fermat primes only)",
                    cert.checked_primes
                ),
            };
            (Some(cert), clause("residue-condition", true, detail))
        }
        Err(Error::CertificateFailure { prime, symbol }) => (
            None,
            clause(
                "residue-condition",
                false,
                format!("jacobi(nu, {prime}) = {symbol}"),
            ),
        ),
        Err(e) => return Err(e),
    };
    let mu_squarefree = {
        let f = factorize(&BigInt::from(params.mu), Effort::DEFAULT);
        f.status == FactorStatus::Complete && f.factors.iter().all(|pp| pp.exponent == 1)
    };
    let clauses = vec![
        clause(
            "even-2-adic-valuation",
            v % 2 == 0,
            format!("v_2(nu) = {v}"),
        ),
        clause(
            "m-at-least-1",
            v >= 2,
            format!("m = v_2(nu)/2, v_2(nu) = {v}"),
        ),
        clause(
            "mu-odd-at-least-3",
            params.mu >= 3,
            format!("mu = {}", params.mu),
        ),
        clause("nu-non-square", !params.is_square, format!("nu = {nu}")),
        residue_clause,
    ];
    let passed = clauses.iter().all(|c| c.passed);
    Ok(HypothesisReport {
        params,
        mu_not_squarefree: passed && !mu_squarefree,
        clauses,
        residue,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Conclusion {
    TheoremApplies {
        statements: Vec<String>,
        /// Present when the residue condition was only checked on known Fermat primes.
        caveat: Option<String>,
    },
    Inconclusive {
        reasons: Vec<String>,
    },
}

impl Conclusion {
    pub fn applies(&self) -> bool {
        matches!(self, Conclusion::TheoremApplies { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Conclusion::TheoremApplies { .. } => "theorem-applies",
            Conclusion::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub params: TowerParams,
    pub depth: u32,
    pub hypothesis: HypothesisReport,
    pub strictness: TowerStrictness,
    pub sqrt2: Sqrt2Certificate,
    pub fermat_obstructions: BTreeMap<u64, Obstruction>,
    pub residue: Option<ResidueCertificate>,
    /// `(1 + sqrt(1 + 4 nu)) / 2`
    pub alpha: QuadraticSurd,
    /// `ceil(alpha) + alpha`
    pub jr_upper: QuadraticSurd,
    pub jr_upper_decimal: String,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

/// Decimal places in rendered bounds.
pub const DECIMAL_PLACES: u32 = 6;

/// `alpha = (1 + sqrt(1 + 4 nu)) / 2` and `ceil(alpha) + alpha`.
pub fn jr_bounds(nu: u64) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let alpha = QuadraticSurd::new(
        BigInt::one(),
        BigInt::one(),
        BigInt::from(nu) * 4 + 1,
        BigInt::from(2),
    )?;
    let upper = alpha.add_integer(&alpha.ceil());
    if !upper.ge_integer(&BigInt::from(4)) {
        return Err(Error::invariant(format!(
            "ceil(alpha) + alpha = {upper} is below 4 at nu = {nu}"
        )));
    }
    Ok((alpha, upper))
}

const KRONECKER_NOTE: &str = "Kronecker: a totally real field has infinitely many totally positive integers below 4 + eps for every eps > 0 exactly when it contains infinitely many 2cos(2pi j/m); so A = [4, +inf) requires some 2cos(2pi/m), m >= 3, in the ring";
const SUBRING_NOTE: &str = "the bound ceil(alpha) + alpha comes from the subring U Z[x_n], whose JR number it is when the tower is strict; its original congruence condition on nu only served to make the tower strict";

/// Assembles every check into the verdict for `O^nu`.
pub fn jr_verdict(nu: u64, depth: u32, effort: Effort) -> Result<VerdictReport> {
    let params = TowerParams::new(nu)?;
    let hypothesis = hypothesis_check(nu)?;
    let strictness = tower_strict(nu, depth)?;
    let (alpha, jr_upper) = jr_bounds(nu)?;

    let (sqrt2, obstructions) = rayon::join(
        || sqrt2_free_certificate(&params, depth, effort),
        || {
            odd_fermat_primes_above_three()
                .into_iter()
                .map(|p| fermat_obstruction(nu, p, depth).map(|o| (p, o)))
                .collect::<Result<BTreeMap<_, _>>>()
        },
    );
    let sqrt2 = sqrt2?;
    let fermat_obstructions = obstructions?;

    let mut reasons = Vec::new();
    for c in hypothesis.clauses.iter().filter(|c| !c.passed) {
        reasons.push(format!("hypothesis {} fails: {}", c.name, c.detail));
    }
    if !strictness.strict {
        reasons.push(format!(
            "strictness unproven: c_{} is a perfect square",
            strictness.witness.unwrap_or(0)
        ));
    }
    if let Sqrt2Certificate::Inapplicable { reason } = &sqrt2 {
        reasons.push(format!("sqrt 2 certificate inapplicable: {reason}"));
    }
    for o in fermat_obstructions.values() {
        if let Obstruction::Inconclusive { prime, reason } = o {
            reasons.push(format!("Fermat prime {prime} not excluded: {reason}"));
        }
    }

    let residue = hypothesis.residue.clone();
    let conclusion = if reasons.is_empty() {
        let caveat = match residue.as_ref().map(|r| r.scope) {
            Some(ResidueScope::Universal) => None,
            _ => Some(
                "conditional on no unknown Fermat prime violating the residue condition"
                    .to_string(),
            ),
        };
        let upper = format!("{jr_upper} ≈ {}", jr_upper.to_decimal(DECIMAL_PLACES));
        Conclusion::TheoremApplies {
            statements: vec![
                format!("A(O^{nu}) ≠ {{+∞}}"),
                format!("A(O^{nu}) ≠ [4, +∞)"),
                format!("JR(O^{nu}) ∈ [4, {upper}]"),
                "if JR = 4, it is not attained".to_string(),
            ],
            caveat,
        }
    } else {
        Conclusion::Inconclusive { reasons }
    };

    let mut notes = vec![KRONECKER_NOTE.to_string(), SUBRING_NOTE.to_string()];
    if residue.as_ref().map(|r| r.scope) == Some(ResidueScope::Finite) {
        notes.push(FERMAT_CAVEAT.to_string());
    }
    if hypothesis.mu_not_squarefree {
        notes.push(format!(
            "mu = {} is not square-free; the sqrt 2 argument only uses 4 | nu and an even 2-adic valuation",
            params.mu
        ));
    }

    Ok(VerdictReport {
        params,
        depth,
        hypothesis,
        strictness,
        sqrt2,
        fermat_obstructions,
        residue,
        jr_upper_decimal: jr_upper.to_decimal(DECIMAL_PLACES),
        alpha,
        jr_upper,
        conclusion,
        notes,
    })
}

/// Degree-2 elements `a + b sqrt(nu)` with both conjugates strictly inside
/// `(0, t)`, for `|b| <= height`. Both bounds force `0 < a < t`.
pub fn window_elements_deg2(nu: u64, t: &BigRational, height: u64) -> Result<Vec<(BigInt, i64)>> {
    if !t.is_positive() {
        return Err(Error::invalid(format!(
            "window bound t must be positive, got {t}"
        )));
    }
    if height > CAPS.window_height {
        return Err(Error::limit("window height H", height, CAPS.window_height));
    }
    let nu_q = BigRational::from_integer(BigInt::from(nu));
    let t_ceil = t.ceil().to_integer();
    let mut out = Vec::new();
    for b_abs in 0..=height as i64 {
        let b2nu = BigRational::from_integer(BigInt::from(b_abs) * b_abs) * &nu_q;
        // t > 2|b| sqrt(nu) is necessary
        if b_abs > 0 && t * t <= &b2nu * BigRational::from_integer(BigInt::from(4)) {
            break;
        }
        let mut a = BigInt::one();
        while a < t_ceil {
            let aq = BigRational::from_integer(a.clone());
            let lower_ok = &aq * &aq > b2nu;
            let room = t - &aq;
            let upper_ok = room.is_positive() && &room * &room > b2nu;
            if lower_ok && upper_ok {
                if b_abs == 0 {
                    out.push((a.clone(), 0));
                } else {
                    out.push((a.clone(), -b_abs));
                    out.push((a.clone(), b_abs));
                }
            }
            a += 1;
        }
    }
    out.sort_by(|x, y| (x.1, &x.0).cmp(&(y.1, &y.0)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEvidence {
    pub n: u32,
    pub sqrt2: SqrtMembership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nu7Report {
    pub depth: u32,
    #[serde(with = "crate::serde_big::vec")]
    pub constants: Vec<BigInt>,
    pub factor_status: Vec<FactorStatus>,
    /// Primes of odd exponent in each `c_n`, when known.
    pub odd_primes: Vec<Option<Vec<String>>>,
    pub independence: Independence,
    pub levels: Vec<LevelEvidence>,
    pub label: String,
}

pub const NU7_LABEL: &str =
    "evidence only: the subfield count needs full rank at every level, so finitely many levels settle nothing about the whole tower";

/// Square-class data for `nu = 7` up to `depth`.
pub fn nu7_exploration(depth: u32, effort: Effort) -> Result<Nu7Report> {
    let lattice = quadratic_subfields(7, depth, effort)?;
    let constants: Vec<BigInt> = lattice.factorizations.iter().map(|f| f.n.clone()).collect();
    let odd_primes = lattice
        .factorizations
        .iter()
        .map(|f| {
            SquareClassVector::new(&f.n, f)
                .map(|v| v.odd_primes.iter().map(|p| p.to_string()).collect())
        })
        .collect();
    let independence = crate::square_classes::two_independent(&constants, effort)?;
    let two = BigInt::from(2);
    let mut levels = Vec::new();
    for n in 1..=depth {
        let level = quadratic_subfields(7, n, effort)?;
        levels.push(LevelEvidence {
            n,
            sqrt2: membership_in(&level, &two),
        });
    }
    Ok(Nu7Report {
        depth,
        factor_status: lattice.factorizations.iter().map(|f| f.status).collect(),
        constants,
        odd_primes,
        independence,
        levels,
        label: NU7_LABEL.to_string(),
    })
}

/// Zero is never a window element; exposed for callers that parse `t`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let parsed = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad rational {text}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad rational {text}")))?;
            if d.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(
            text.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad rational {text}")))?,
        ),
    };
    Ok(parsed)
}
