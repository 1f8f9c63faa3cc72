//! Subcommands, JSON envelopes and the persistent scan behind the `jrtower` binary.

pub mod commands;
pub mod output;
pub mod scan;

use clap::Subcommand;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full verdict for one nu
    Verify { nu: u64 },
    /// Verdicts for every nu in LO..=HI
    Scan { lo: u64, hi: u64 },
    /// disc(x_N) by recursion, with the resultant oracle for small N
    Disc { nu: u64, n: u32 },
    /// Critical orbit c_1..c_N and the iterates P_n
    Orbit { nu: u64, n: u32 },
    /// Index-2 subgroups and agemo rank of the iterated wreath product
    Group { n: u32 },
    /// Fermat numbers, Pepin certificates and residue patterns
    Fermat,
    /// Minimal polynomial of 2cos(2pi/M) and constructibility of M
    Cos { m: u64 },
    /// Square-class evidence for nu = 7 up to DEPTH
    Explore7 { depth: u32 },
    /// Degree-2 elements a + b sqrt(nu) with conjugates in (0, T), |b| <= H
    Window { nu: u64, t: String, h: u64 },
}

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Conclusive,
    Inconclusive,
}
