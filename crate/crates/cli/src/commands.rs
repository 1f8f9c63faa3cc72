use std::path::PathBuf;

use anyhow::{bail, Context};
use jrtower_core::discriminant::discriminant_report;
use jrtower_core::effort::CAPS;
use jrtower_core::orbit::{constant_terms, iterate_poly, tower_strict};
use jrtower_core::residue::{
    fermat_mod_pattern, nonresidue_37_check, odd_fermat_primes_above_three, pepin_test,
    FERMAT_CAVEAT,
};
use jrtower_core::verdict::{
    constructible_order, cos_minpoly, jr_verdict, nu7_exploration, parse_rational,
    window_elements_deg2, Obstruction,
};
use jrtower_core::wreath::{agemo_rank, count_index2_subgroups, group_order};
use jrtower_core::{
    ConstructibilityDecomposition, DiscriminantReport, Effort, FermatNumber, OrbitSequence,
    Primality, Sqrt2Certificate, SqrtMembership, TowerStrictness, VerdictReport,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::output::{envelope, superscript, Format};
use crate::scan;
use crate::{Command, Outcome};

pub struct Options {
    pub format: Format,
    pub depth: u32,
    pub effort: Effort,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOutput {
    pub sequence: OrbitSequence,
    pub strictness: TowerStrictness,
    /// `P_1 .. P_k` for `k = min(n, 6)`, in the variable `t`.
    pub iterates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOutput {
    pub n: u32,
    pub order_log2: u64,
    pub agemo_rank: u32,
    pub index2_subgroups: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatPrimeChecks {
    pub prime: u64,
    pub three_nonresidue: bool,
    pub seven_nonresidue: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatOutput {
    pub numbers: Vec<FermatNumber>,
    /// `(n, F_n mod 7, F_n mod 3)`
    pub mod_patterns: Vec<(u32, u64, u64)>,
    pub nonresidues: Vec<FermatPrimeChecks>,
    pub caveat: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosOutput {
    pub m: u64,
    pub minpoly: String,
    pub degree: usize,
    pub decomposition: ConstructibilityDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowOutput {
    pub nu: u64,
    pub t: String,
    pub h: u64,
    /// `(a, b)` pairs as decimal strings.
    pub elements: Vec<(String, String)>,
}

/// Number of residue patterns listed by `fermat`.
const MOD_PATTERN_RANGE: u32 = 30;

pub fn run(command: &Command, opts: &Options) -> anyhow::Result<Outcome> {
    match command {
        Command::Verify { nu } => verify(*nu, opts),
        Command::Scan { lo, hi } => scan::run(*lo, *hi, opts),
        Command::Disc { nu, n } => disc(*nu, *n, opts),
        Command::Orbit { nu, n } => orbit(*nu, *n, opts),
        Command::Group { n } => group(*n, opts),
        Command::Fermat => fermat(opts),
        Command::Cos { m } => cos(*m, opts),
        Command::Explore7 { depth } => explore7(*depth, opts),
        Command::Window { nu, t, h } => window(*nu, t, *h, opts),
    }
}

fn emit<T: Serialize>(
    opts: &Options,
    command: &str,
    input: serde_json::Value,
    result: &T,
    text: impl FnOnce(&T) -> String,
) -> anyhow::Result<()> {
    match opts.format {
        Format::Json => println!("{}", envelope(command, input, result)?),
        Format::Text => print!("{}", text(result)),
    }
    Ok(())
}

fn verify(nu: u64, opts: &Options) -> anyhow::Result<Outcome> {
    let report = jr_verdict(nu, opts.depth, opts.effort)?;
    let input = json!({ "nu": nu.to_string(), "depth": opts.depth, "effort": opts.effort });
    emit(opts, "verify", input, &report, render_verdict)?;
    Ok(if report.conclusion.applies() {
        Outcome::Conclusive
    } else {
        Outcome::Inconclusive
    })
}

pub fn render_verdict(r: &VerdictReport) -> String {
    use jrtower_core::Conclusion;
    use std::fmt::Write;

    let mut s = String::new();
    let p = &r.params;
    let _ = writeln!(
        s,
        "nu = {} = 2^{} * {} (depth {})",
        p.nu, p.two_adic_valuation, p.mu, r.depth
    );
    let _ = writeln!(s, "conclusion: {}", r.conclusion.label());
    match &r.conclusion {
        Conclusion::TheoremApplies { statements, caveat } => {
            for st in statements {
                let _ = writeln!(s, "  {st}");
            }
            if let Some(c) = caveat {
                let _ = writeln!(s, "  caveat: {c}");
            }
        }
        Conclusion::Inconclusive { reasons } => {
            for reason in reasons {
                let _ = writeln!(s, "  {reason}");
            }
        }
    }
    let _ = writeln!(s, "alpha = {}", r.alpha);
    let _ = writeln!(s, "jr_upper = {} ≈ {}", r.jr_upper, r.jr_upper_decimal);
    let _ = writeln!(s, "hypotheses:");
    for c in &r.hypothesis.clauses {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
    }
    let strict = match r.strictness.witness {
        None => format!("strict up to depth {}", r.strictness.depth),
        Some(k) => format!("unproven: c_{k} is a square"),
    };
    let _ = writeln!(s, "tower: {strict}");
    match &r.sqrt2 {
        Sqrt2Certificate::Certified {
            spot_checks, note, ..
        } => {
            let checks: Vec<String> = spot_checks
                .iter()
                .map(|c| format!("n={}: {}", c.n, c.membership))
                .collect();
            let _ = writeln!(s, "sqrt 2: certified absent ({})", checks.join(", "));
            if let Some(n) = note {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        Sqrt2Certificate::Inapplicable { reason } => {
            let _ = writeln!(s, "sqrt 2: certificate inapplicable ({reason})");
        }
    }
    for (p, o) in &r.fermat_obstructions {
        match o {
            Obstruction::Excluded { chain, .. } => {
                let _ = writeln!(s, "2cos(2pi/{p}): excluded");
                for step in chain {
                    let _ = writeln!(s, "    {}  [{}]", step.claim, step.because);
                }
            }
            Obstruction::Inconclusive { reason, .. } => {
                let _ = writeln!(s, "2cos(2pi/{p}): not excluded ({reason})");
            }
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn disc(nu: u64, n: u32, opts: &Options) -> anyhow::Result<Outcome> {
    let report = discriminant_report(nu, n)?;
    let input = json!({ "nu": nu.to_string(), "n": n });
    emit(opts, "disc", input, &report, |r: &DiscriminantReport| {
        let mut s = format!("disc(x_{}) for nu = {}:\n  {}\n", r.n, r.nu, r.disc_xn);
        match &r.oracle_value {
            Some(v) if *v == r.disc_xn => s.push_str("  resultant oracle: agrees\n"),
            Some(v) => s.push_str(&format!("  resultant oracle: {v}\n")),
            None => s.push_str("  resultant oracle: skipped above degree 16\n"),
        }
        for (k, norm) in r.norms.iter().enumerate() {
            s.push_str(&format!("  N_{k} = {norm}\n"));
        }
        s
    })?;
    Ok(Outcome::Conclusive)
}

fn orbit(nu: u64, n: u32, opts: &Options) -> anyhow::Result<Outcome> {
    let sequence = constant_terms(nu, n)?;
    let strictness = tower_strict(nu, n)?;
    let iterates = (1..=n.min(CAPS.poly_depth))
        .map(|k| iterate_poly(nu, k).map(|p| p.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let out = OrbitOutput {
        sequence,
        strictness,
        iterates,
    };
    let input = json!({ "nu": nu.to_string(), "n": n });
    emit(opts, "orbit", input, &out, |o: &OrbitOutput| {
        let mut s = String::new();
        for (k, c) in o.sequence.c.iter().enumerate() {
            s.push_str(&format!("c_{} = {c}\n", k + 1));
        }
        for (k, p) in o.iterates.iter().enumerate() {
            s.push_str(&format!("P_{} = {p}\n", k + 1));
        }
        match o.strictness.witness {
            None => s.push_str(&format!("strict up to depth {}\n", o.strictness.depth)),
            Some(k) => s.push_str(&format!("c_{k} is a perfect square: strictness unproven\n")),
        }
        s
    })?;
    Ok(if strictness.strict {
        Outcome::Conclusive
    } else {
        Outcome::Inconclusive
    })
}

fn group(n: u32, opts: &Options) -> anyhow::Result<Outcome> {
    if n == 0 || n > CAPS.wreath_depth {
        bail!("group depth must lie in 1..={}, got {n}", CAPS.wreath_depth);
    }
    let out = GroupOutput {
        n,
        order_log2: group_order(n).trailing_zeros() as u64,
        agemo_rank: agemo_rank(n)?,
        index2_subgroups: count_index2_subgroups(n)?,
    };
    let input = json!({ "n": n });
    emit(opts, "group", input, &out, |g: &GroupOutput| {
        format!(
            "[C2]^{n}: order 2^{}, agemo rank {}\nindex-2 subgroups: {} (= 2{}−1)\n",
            g.order_log2,
            g.agemo_rank,
            g.index2_subgroups,
            superscript(u64::from(g.n)),
        )
    })?;
    Ok(Outcome::Conclusive)
}

fn fermat(opts: &Options) -> anyhow::Result<Outcome> {
    let numbers = (0..=CAPS.fermat_index)
        .map(pepin_test)
        .collect::<Result<Vec<_>, _>>()?;
    let mod_patterns = (1..=MOD_PATTERN_RANGE)
        .map(|n| fermat_mod_pattern(n).map(|(a, b)| (n, a, b)))
        .collect::<Result<Vec<_>, _>>()?;
    let nonresidues = odd_fermat_primes_above_three()
        .into_iter()
        .map(|p| {
            nonresidue_37_check(p).map(|(three, seven)| FermatPrimeChecks {
                prime: p,
                three_nonresidue: three,
                seven_nonresidue: seven,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = FermatOutput {
        numbers,
        mod_patterns,
        nonresidues,
        caveat: FERMAT_CAVEAT.to_string(),
    };
    emit(opts, "fermat", json!({}), &out, |f: &FermatOutput| {
        let mut s = String::new();
        for num in &f.numbers {
            let status = match num.primality {
                Primality::ProvenPrime => "prime",
                Primality::ProvenComposite => "composite",
                Primality::Untested => "untested",
            };
            s.push_str(&format!("F_{}: {status} (Pepin)\n", num.index));
        }
        let odd = f.mod_patterns.iter().find(|p| p.0 % 2 == 1);
        let even = f.mod_patterns.iter().find(|p| p.0 % 2 == 0);
        if let (Some(o), Some(e)) = (odd, even) {
            s.push_str(&format!(
                "F_n mod (7, 3) for 1 <= n <= {}: ({}, {}) for odd n, ({}, {}) for even n\n",
                MOD_PATTERN_RANGE, o.1, o.2, e.1, e.2
            ));
        }
        for c in &f.nonresidues {
            s.push_str(&format!(
                "p = {}: 3 non-residue {}, 7 non-residue {}\n",
                c.prime, c.three_nonresidue, c.seven_nonresidue
            ));
        }
        s.push_str(&format!("note: {}\n", f.caveat));
        s
    })?;
    Ok(Outcome::Conclusive)
}

fn cos(m: u64, opts: &Options) -> anyhow::Result<Outcome> {
    let poly = cos_minpoly(m)?;
    let out = CosOutput {
        m,
        minpoly: poly.display_with("y"),
        degree: poly.degree().unwrap_or(0),
        decomposition: constructible_order(m)?,
    };
    let input = json!({ "m": m.to_string() });
    emit(opts, "cos", input, &out, |c: &CosOutput| {
        let d = &c.decomposition;
        let odd: Vec<String> = d
            .odd_primes
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        format!(
            "minimal polynomial of 2cos(2pi/{}): {}\ndegree {}\n{} = 2^{} * [{}]: {}\n",
            c.m,
            c.minpoly,
            c.degree,
            c.m,
            d.two_part,
            odd.join(", "),
            if d.constructible {
                "constructible"
            } else {
                "not constructible"
            }
        )
    })?;
    Ok(Outcome::Conclusive)
}

fn explore7(depth: u32, opts: &Options) -> anyhow::Result<Outcome> {
    let report = nu7_exploration(depth, opts.effort)?;
    let input = json!({ "depth": depth, "effort": opts.effort });
    let unknown = report
        .levels
        .iter()
        .any(|l| l.sqrt2 == SqrtMembership::Unknown);
    emit(opts, "explore7", input, &report, |r| {
        let mut s = String::new();
        for (k, c) in r.constants.iter().enumerate() {
            let primes = match &r.odd_primes[k] {
                Some(ps) if ps.is_empty() => "square class of 1 or -1".to_string(),
                Some(ps) => format!("odd-exponent primes {}", ps.join(", ")),
                None => "not fully factored".to_string(),
            };
            s.push_str(&format!("c_{} = {c}: {primes}\n", k + 1));
        }
        s.push_str(&format!("2-independence: {:?}\n", r.independence));
        for l in &r.levels {
            s.push_str(&format!("sqrt 2 in L_{}: {}\n", l.n, l.sqrt2));
        }
        s.push_str(&format!("{}\n", r.label));
        s
    })?;
    Ok(if unknown {
        Outcome::Inconclusive
    } else {
        Outcome::Conclusive
    })
}

fn window(nu: u64, t: &str, h: u64, opts: &Options) -> anyhow::Result<Outcome> {
    let bound = parse_rational(t).with_context(|| format!("window bound '{t}'"))?;
    let elements = window_elements_deg2(nu, &bound, h)?;
    let out = WindowOutput {
        nu,
        t: bound.to_string(),
        h,
        elements: elements
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    let input = json!({ "nu": nu.to_string(), "t": t, "h": h.to_string() });
    emit(opts, "window", input, &out, |w: &WindowOutput| {
        let mut s = format!(
            "{} elements a + b sqrt({}) with conjugates in (0, {}) and |b| <= {}\n",
            w.elements.len(),
            w.nu,
            w.t,
            w.h
        );
        for (a, b) in &w.elements {
            s.push_str(&format!("  ({a}, {b})\n"));
        }
        s
    })?;
    Ok(Outcome::Conclusive)
}
