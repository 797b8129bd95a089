//! Argument parsing and the subcommands.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use indres::chartab::character_table;
use indres::checker::{check_group, quotient_metamorphic_check, Mode};
use indres::families::{
    gl2_closed_form, make_family, sl2_closed_form, Claim, ClosedFormReport, FamilyKind, FamilySpec,
};
use indres::permgrp::GroupDefinition;
use indres::Limits;

use crate::cache::Cache;
use crate::census::{run_census, CensusOptions, PrimeSelection};
use crate::corpus::{load_corpus, load_group};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAILS: i32 = 2;
pub const EXIT_CAPPED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "indres", version, about = "Decompose restrictions of irreducible characters to Sylow subgroups into induced characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Weak,
    Strong,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct LimitArgs {
    /// Maximum number of enumerated group elements.
    #[arg(long, default_value_t = Limits::default().element_cap)]
    pub element_cap: u64,
    /// Maximum number of conjugacy classes.
    #[arg(long, default_value_t = Limits::default().class_cap)]
    pub class_cap: usize,
    /// Search-node budget of the nonnegative solver.
    #[arg(long, default_value_t = Limits::default().node_budget)]
    pub node_budget: u64,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            element_cap: self.element_cap,
            class_cap: self.class_cap,
            node_budget: self.node_budget,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct PrimeArgs {
    /// Check a single prime.
    #[arg(long, conflicts_with = "primes")]
    pub prime: Option<u64>,
    /// `all` or a comma-separated list of primes.
    #[arg(long, default_value = "all")]
    pub primes: String,
}

impl PrimeArgs {
    fn selection(&self) -> Result<PrimeSelection, String> {
        if let Some(p) = self.prime {
            return Ok(PrimeSelection::Only(vec![p]));
        }
        if self.primes == "all" {
            return Ok(PrimeSelection::All);
        }
        self.primes
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|e| format!("bad prime list {:?}: {e}", self.primes)))
            .collect::<Result<Vec<_>, _>>()
            .map(PrimeSelection::Only)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the characters of one group and print JSONL verdicts.
    Check {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        primes: PrimeArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Check only this character index.
        #[arg(long = "char")]
        character: Option<usize>,
        /// Attach minimal-counterexample filters to characters that miss the mode.
        #[arg(long)]
        filters: bool,
        /// Include wall times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Check every group file of a directory.
    Census {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        primes: PrimeArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// JSONL output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        filters: bool,
        #[arg(long)]
        timings: bool,
        /// Ignore the cache directory even if the environment names one.
        #[arg(long)]
        no_cache: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print the character table of a group as JSON.
    Table {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build a family member and verify its closed forms and verdicts.
    Families {
        /// dihedral, quaternion, semidihedral, wreath, sl2, gl2 or psl2.
        #[arg(long)]
        family: String,
        /// Field order for sl2, gl2, psl2.
        #[arg(long, conflicts_with = "n")]
        q: Option<u64>,
        /// Parameter n for the 2-group families.
        #[arg(long)]
        n: Option<u64>,
        /// Write the group definition JSON to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the built-in consistency suites.
    Selftest,
}

/// Runs a parsed command line, writing to the given streams; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Check { group, primes, mode, character, filters, timings, limits } => (|| {
            let entry = load_group(&group).map_err(|e| e.to_string())?;
            let opts = CensusOptions {
                primes: primes.selection()?,
                mode: mode.into(),
                jobs: 1,
                filters,
                timings,
                character,
                limits: limits.limits(),
                cache: None,
            };
            let res = run_census(std::slice::from_ref(&entry), &[], &opts);
            write!(out, "{}", res.jsonl()).map_err(|e| e.to_string())?;
            Ok(res.exit_code())
        })(),
        Command::Census { corpus, primes, mode, out: path, jobs, filters, timings, no_cache, limits } => (|| {
            let (entries, parse_errors) =
                load_corpus(&corpus).map_err(|e| format!("{}: {e}", corpus.display()))?;
            let cache = if no_cache { None } else { Cache::from_env().map_err(|e| e.to_string())? };
            let opts = CensusOptions {
                primes: primes.selection()?,
                mode: mode.into(),
                jobs,
                filters,
                timings,
                character: None,
                limits: limits.limits(),
                cache,
            };
            let res = run_census(&entries, &parse_errors, &opts);
            match &path {
                Some(p) => write_atomic(p, res.jsonl().as_bytes()).map_err(|e| format!("{}: {e}", p.display()))?,
                None => write!(out, "{}", res.jsonl()).map_err(|e| e.to_string())?,
            }
            let _ = write!(
                err,
                "{} groups, {} lines, {} cache hits\n{}",
                entries.len() + parse_errors.len(),
                res.lines.len(),
                res.cache_hits,
                res.summary.table()
            );
            Ok(res.exit_code())
        })(),
        Command::Table { group, limits } => (|| {
            let entry = load_group(&group).map_err(|e| e.to_string())?;
            let limits = limits.limits();
            let g = entry.build(&limits).map_err(|e| e.to_string())?;
            let t = character_table(&g, &limits).map_err(|e| e.to_string())?;
            writeln!(out, "{}", t.to_json()).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        })(),
        Command::Families { family, q, n, emit } => families(&family, q.or(n), emit, out),
        Command::Selftest => {
            let results = selftest::run_all(&Limits::default());
            for r in &results {
                let _ = writeln!(out, "{:<24} {:>7} checks  {}", r.name, r.checks, if r.passed() { "pass" } else { "FAIL" });
                for f in r.failures.iter().take(10) {
                    let _ = writeln!(out, "    {f}");
                }
            }
            Ok(if results.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILS })
        }
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn write_atomic(path: &PathBuf, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn row(out: &mut dyn Write, label: &str, ok: bool) -> bool {
    let _ = writeln!(out, "{label:<72} {}", if ok { "pass" } else { "FAIL" });
    ok
}

fn closed_form_rows(out: &mut dyn Write, r: &ClosedFormReport) -> bool {
    let _ = writeln!(out, "closed form: {}, 2^n = {}, |P| = {}", r.branch, r.two_power, r.sylow_order);
    let mut ok = true;
    for x in &r.rows {
        let e = &x.expectation;
        let param = e.parameter.map(|k| format!(" k={k}")).unwrap_or_default();
        let coeffs = match &e.claim {
            Claim::Identity(terms) => terms.iter().map(|t| t.coefficient.to_string()).collect::<Vec<_>>().join(","),
            Claim::NoLinearConstituents => "-".into(),
        };
        let label = format!("  chi{} (deg {}){param}: {} [{coeffs}]", e.character, e.degree, e.label);
        ok &= row(out, &label, x.holds);
        ok &= row(out, &format!("    generic strong{}", match x.witness_accepted {
            Some(true) => ", witness accepted",
            Some(false) => ", witness rejected",
            None => "",
        }), x.generic_strong && x.witness_accepted != Some(false));
    }
    for &(chi, strong) in &r.uncovered {
        ok &= row(out, &format!("  chi{chi}: no closed form, generic strong"), strong);
    }
    ok
}

fn families(family: &str, param: Option<u64>, emit: Option<PathBuf>, out: &mut dyn Write) -> Result<i32, String> {
    let kind = FamilyKind::parse(family).map_err(|e| e.to_string())?;
    let param = param.ok_or_else(|| format!("{family} needs --{}", if kind.takes_field() { "q" } else { "n" }))?;
    let spec = FamilySpec::new(kind, param);
    let limits = Limits::default();
    let g = make_family(&spec, &limits).map_err(|e| e.to_string())?;
    if let Some(path) = emit {
        let def = GroupDefinition::from_group(&spec.to_string(), &g, vec![]);
        let text = serde_json::to_string_pretty(&def).map_err(|e| e.to_string())?;
        fs::write(&path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let _ = writeln!(out, "{spec}: order {}, degree {}", g.order(), g.degree());
    let mut ok = row(out, "construction and fingerprints", true);
    let t = character_table(&g, &limits).map_err(|e| e.to_string())?;
    let odd_q = kind.takes_field() && param % 2 == 1;
    let closed = match kind {
        FamilyKind::Sl2 if param != 3 && odd_q => Some(sl2_closed_form(param, &limits)),
        FamilyKind::Gl2 => Some(gl2_closed_form(param, &limits)),
        _ => None,
    };
    if let Some(c) = closed {
        match c {
            Ok(r) => ok &= closed_form_rows(out, &r),
            Err(e) => ok &= row(out, &format!("closed form: {e}"), false),
        }
    }
    match check_group(&t, 2, Mode::Both, &limits) {
        Ok(vs) => {
            for v in vs {
                let label = format!("generic p=2 chi{} (deg {}): {}", v.character, v.degree, v.status().as_str());
                ok &= row(out, &label, v.meets_mode());
            }
        }
        Err(e) => ok &= row(out, &format!("generic p=2: {e}"), false),
    }
    if odd_q && matches!(kind, FamilyKind::Sl2 | FamilyKind::Gl2 | FamilyKind::Psl2) {
        // PSL2 through SL2, PGL2 through GL2
        let (cover, what) = match kind {
            FamilyKind::Gl2 => (g.clone(), "GL2 -> PGL2"),
            _ => (make_family(&FamilySpec::new(FamilyKind::Sl2, param), &limits).map_err(|e| e.to_string())?, "SL2 -> PSL2"),
        };
        let ct = if kind == FamilyKind::Sl2 || kind == FamilyKind::Gl2 { t.clone() } else {
            character_table(&cover, &limits).map_err(|e| e.to_string())?
        };
        let z = cover.center(limits.element_cap).map_err(|e| e.to_string())?;
        match quotient_metamorphic_check(&ct, &z, 2, &limits) {
            Ok(rep) => ok &= row(out, &format!("quotient {what} (order {})", rep.quotient_order), rep.holds()),
            Err(e) => ok &= row(out, &format!("quotient {what}: {e}"), false),
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILS })
}

