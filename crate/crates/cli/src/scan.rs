//! `scan LO HI`: one verdict per nu, persisted through an append-only journal.
//!
//! Workers send finished records to a single writer thread, which appends them
//! to `FILE.journal` in completion order. A restarted scan skips every nu already
//! in the journal. Once the range is complete the journal is sorted by nu into
//! `FILE.tmp`, renamed over `FILE`, and removed.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use jrtower_core::verdict::jr_verdict;
use jrtower_core::{Conclusion, Effort, ResidueScope, VerdictReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::commands::Options;
use crate::output::{envelope, Format};
use crate::Outcome;

pub const MAX_RANGE: u64 = 1_000_000;

/// One row of the scan CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub nu: u64,
    /// `theorem-applies`, `fail` (a hypothesis is violated) or `inconclusive`.
    pub conclusion: String,
    /// `universal`, `finite` or `none`.
    pub scope: String,
    pub jr_upper_decimal: String,
    /// Failed clauses and qualifiers, `;`-separated.
    pub flags: String,
}

/// A [`ScanRecord`] plus completion time; the time stays out of the final CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct JournalRecord {
    nu: u64,
    conclusion: String,
    scope: String,
    jr_upper_decimal: String,
    flags: String,
    /// Milliseconds since the Unix epoch.
    recorded_at: u64,
}

impl JournalRecord {
    fn stamp(r: ScanRecord) -> Self {
        JournalRecord {
            nu: r.nu,
            conclusion: r.conclusion,
            scope: r.scope,
            jr_upper_decimal: r.jr_upper_decimal,
            flags: r.flags,
            recorded_at: now_millis(),
        }
    }

    fn record(self) -> ScanRecord {
        ScanRecord {
            nu: self.nu,
            conclusion: self.conclusion,
            scope: self.scope,
            jr_upper_decimal: self.jr_upper_decimal,
            flags: self.flags,
        }
    }
}

impl ScanRecord {
    pub fn from_report(r: &VerdictReport) -> Self {
        let mut flags: Vec<String> = r
            .hypothesis
            .clauses
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
        if !r.strictness.strict {
            flags.push("not-strict".into());
        }
        if r.hypothesis.mu_not_squarefree {
            flags.push("mu-not-squarefree".into());
        }
        let conclusion = match &r.conclusion {
            Conclusion::TheoremApplies { caveat, .. } => {
                if caveat.is_some() {
                    flags.push("known-fermat-primes-only".into());
                }
                "theorem-applies"
            }
            Conclusion::Inconclusive { .. } if !r.hypothesis.passed => "fail",
            Conclusion::Inconclusive { .. } => "inconclusive",
        };
        let scope = match r.residue.as_ref().map(|c| c.scope) {
            Some(ResidueScope::Universal) => "universal",
            Some(ResidueScope::Finite) => "finite",
            None => "none",
        };
        ScanRecord {
            nu: r.params.nu,
            conclusion: conclusion.into(),
            scope: scope.into(),
            jr_upper_decimal: r.jr_upper_decimal.clone(),
            flags: flags.join(";"),
        }
    }
}

pub fn scan_one(nu: u64, depth: u32, effort: Effort) -> anyhow::Result<ScanRecord> {
    let report = jr_verdict(nu, depth, effort).with_context(|| format!("nu = {nu}"))?;
    Ok(ScanRecord::from_report(&report))
}

fn pool(jobs: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn journal_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".journal");
    PathBuf::from(name)
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn journal_tag(lo: u64, hi: u64, depth: u32, effort: Effort) -> String {
    format!(
        "# jrtower scan lo={lo} hi={hi} depth={depth} trial={} rho={}\n",
        effort.trial_bound, effort.rho_iterations
    )
}

/// Records already in the journal, after dropping a torn final line.
fn load_journal(path: &Path, tag: &str) -> anyhow::Result<BTreeMap<u64, ScanRecord>> {
    let mut text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    if !text.ends_with('\n') {
        let keep = text.rfind('\n').map_or(0, |i| i + 1);
        text.truncate(keep);
        fs::write(path, &text).with_context(|| format!("truncating {}", path.display()))?;
    }
    if text.is_empty() {
        return Ok(BTreeMap::new());
    }
    if !text.starts_with(tag) {
        bail!(
            "{} belongs to a different scan; remove it or rerun with the original arguments",
            path.display()
        );
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut done = BTreeMap::new();
    for row in reader.deserialize::<JournalRecord>() {
        let row = row.with_context(|| format!("parsing {}", path.display()))?;
        done.insert(row.nu, row.record());
    }
    Ok(done)
}

fn write_csv<W: Write>(w: W, records: impl IntoIterator<Item = ScanRecord>) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

fn persisted(lo: u64, hi: u64, out: &Path, opts: &Options) -> anyhow::Result<Vec<ScanRecord>> {
    let journal = journal_path(out);
    let tag = journal_tag(lo, hi, opts.depth, opts.effort);
    let mut done = load_journal(&journal, &tag)?;
    let todo: Vec<u64> = (lo..=hi).filter(|nu| !done.contains_key(nu)).collect();

    if !todo.is_empty() {
        let fresh = !journal.exists() || fs::metadata(&journal)?.len() == 0;
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&journal)
            .with_context(|| format!("opening {}", journal.display()))?;
        let mut file = BufWriter::new(file);
        if fresh {
            file.write_all(tag.as_bytes())?;
        }
        let mut writer = csv::WriterBuilder::new()
            .has_headers(fresh)
            .from_writer(file);

        let (tx, rx) = mpsc::channel::<JournalRecord>();
        let sink = thread::spawn(move || -> anyhow::Result<Vec<ScanRecord>> {
            let mut written = Vec::new();
            for row in rx {
                writer.serialize(&row)?;
                writer.flush()?;
                written.push(row.record());
            }
            Ok(written)
        });

        let (depth, effort) = (opts.depth, opts.effort);
        let computed = pool(opts.jobs)?.install(|| {
            todo.par_iter().try_for_each_with(tx, |tx, &nu| {
                let record = scan_one(nu, depth, effort)?;
                tx.send(JournalRecord::stamp(record))
                    .context("journal writer stopped")
            })
        });
        let written = sink.join().expect("journal writer panicked")?;
        computed?;
        done.extend(written.into_iter().map(|r| (r.nu, r)));
    }

    let tmp = out.with_extension("tmp");
    {
        let file = File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        let mut file = BufWriter::new(file);
        write_csv(&mut file, done.values().cloned())?;
        file.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    }
    fs::rename(&tmp, out).with_context(|| format!("replacing {}", out.display()))?;
    fs::remove_file(&journal).with_context(|| format!("removing {}", journal.display()))?;
    Ok(done.into_values().collect())
}

fn in_memory(lo: u64, hi: u64, opts: &Options) -> anyhow::Result<Vec<ScanRecord>> {
    let (depth, effort) = (opts.depth, opts.effort);
    let mut records = pool(opts.jobs)?.install(|| {
        (lo..=hi)
            .into_par_iter()
            .map(|nu| scan_one(nu, depth, effort))
            .collect::<anyhow::Result<Vec<_>>>()
    })?;
    records.sort_by_key(|r| r.nu);
    Ok(records)
}

pub fn run(lo: u64, hi: u64, opts: &Options) -> anyhow::Result<Outcome> {
    if lo < 2 {
        bail!("scan needs lo >= 2, got {lo}");
    }
    if lo > hi {
        bail!("scan needs lo <= hi, got {lo} > {hi}");
    }
    if hi - lo >= MAX_RANGE {
        bail!(
            "scan range holds {} values; the limit is {MAX_RANGE}",
            hi - lo + 1
        );
    }
    let records = match &opts.out {
        Some(out) => persisted(lo, hi, out, opts)?,
        None => in_memory(lo, hi, opts)?,
    };
    match (opts.format, &opts.out) {
        (Format::Json, _) => {
            let input = json!({
                "lo": lo.to_string(),
                "hi": hi.to_string(),
                "depth": opts.depth,
                "effort": opts.effort,
            });
            println!("{}", envelope("scan", input, &records)?);
        }
        (Format::Text, None) => write_csv(io::stdout().lock(), records)?,
        (Format::Text, Some(out)) => {
            let applies = records
                .iter()
                .filter(|r| r.conclusion == "theorem-applies")
                .count();
            println!(
                "{} records written to {} ({applies} theorem-applies)",
                records.len(),
                out.display()
            );
        }
    }
    Ok(Outcome::Conclusive)
}
