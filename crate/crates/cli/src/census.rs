//! Checks every (group, prime) pair of a corpus on a worker pool and
//! assembles the report in corpus order.

use std::sync::OnceLock;

use indres::chartab::{character_table, CharacterTable};
use indres::checker::{check_group, mincounter_filter, Mode};
use indres::permgrp::PermGroup;
use indres::psub::is_p_solvable;
use indres::{Error, Limits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{Cache, CacheKey};
use crate::corpus::{CorpusEntry, ParseError};
use crate::report::{error_line, verdict_line, Summary, VerdictContext, ERROR_STATUS, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Every prime dividing the group order.
    All,
    /// The listed primes that divide the group order.
    Only(Vec<u64>),
}

impl PrimeSelection {
    pub fn primes_for(&self, order: u64) -> Vec<u64> {
        let all = prime_divisors(order);
        match self {
            PrimeSelection::All => all,
            PrimeSelection::Only(ps) => all.into_iter().filter(|p| ps.contains(p)).collect(),
        }
    }
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub primes: PrimeSelection,
    pub mode: Mode,
    pub jobs: usize,
    /// Attach minimal-counterexample filters to characters that miss the mode.
    pub filters: bool,
    /// Add wall times to the lines; disables the cache.
    pub timings: bool,
    /// Restrict to one character index.
    pub character: Option<usize>,
    pub limits: Limits,
    pub cache: Option<Cache>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            primes: PrimeSelection::All,
            mode: Mode::Both,
            jobs: 1,
            filters: false,
            timings: false,
            character: None,
            limits: Limits::default(),
            cache: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CensusOutput {
    pub lines: Vec<Value>,
    pub summary: Summary,
    pub cache_hits: usize,
}

impl CensusOutput {
    /// 2 if a requested form failed, else 3 if a cap was hit, else 1 if an
    /// entry could not be read or built, else 0.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.fails + s.weak_only > 0 {
            2
        } else if s.capped > 0 {
            3
        } else if s.errors > 0 {
            1
        } else {
            0
        }
    }

    pub fn jsonl(&self) -> String {
        self.lines.iter().map(crate::report::encode).collect()
    }
}

pub fn parse_error_line(e: &ParseError) -> Value {
    let name = e.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    json!({
        "schema": SCHEMA_VERSION,
        "group": name,
        "group_hash": null,
        "order": null,
        "prime": null,
        "status": ERROR_STATUS,
        "error": e.to_string(),
    })
}

struct Prepared<'a> {
    entry: &'a CorpusEntry,
    group: Result<PermGroup, Error>,
    table: OnceLock<Result<CharacterTable, Error>>,
}

impl Prepared<'_> {
    fn table(&self, limits: &Limits) -> Result<&CharacterTable, Error> {
        let g = self.group.as_ref().map_err(Clone::clone)?;
        self.table.get_or_init(|| character_table(g, limits)).as_ref().map_err(Clone::clone)
    }
}

fn run_task(prep: &Prepared<'_>, p: u64, opts: &CensusOptions) -> (Vec<Value>, bool) {
    let entry = prep.entry;
    let group = prep.group.as_ref().expect("tasks exist only for built groups");
    let order = group.order();
    let use_cache = !opts.timings && opts.character.is_none();
    let key = opts.cache.as_ref().filter(|_| use_cache).map(|_| {
        Cache::key(&CacheKey {
            content_hash: &entry.content_hash,
            prime: p,
            mode: opts.mode,
            filters: opts.filters,
            limits: &opts.limits,
        })
    });
    if let (Some(cache), Some(key)) = (&opts.cache, &key) {
        if let Some(lines) = cache.get(key) {
            return (lines, true);
        }
    }
    let lines = match compute(prep, p, opts) {
        Ok(lines) => lines,
        Err(e) => vec![error_line(entry, Some(order), Some(p), &e)],
    };
    if let (Some(cache), Some(key)) = (&opts.cache, &key) {
        // a failed cache write only costs the next run a recomputation
        let _ = cache.put(key, &lines);
    }
    (lines, false)
}

fn compute(prep: &Prepared<'_>, p: u64, opts: &CensusOptions) -> Result<Vec<Value>, Error> {
    let limits = &opts.limits;
    let table = prep.table(limits)?;
    let group = table.group();
    let ctx = VerdictContext {
        entry: prep.entry,
        order: group.order(),
        p_solvable: is_p_solvable(group, p, limits).ok(),
        timings: opts.timings,
    };
    let verdicts = match opts.character {
        Some(chi) => {
            if chi >= table.irreducibles().len() {
                return Err(Error::PreconditionViolated(format!(
                    "character index {chi} out of range 0..{}",
                    table.irreducibles().len()
                )));
            }
            vec![indres::checker::check_character(table, p, chi, opts.mode, limits)?]
        }
        None => check_group(table, p, opts.mode, limits)?,
    };
    let mut lines = Vec::with_capacity(verdicts.len());
    for v in &verdicts {
        let mut line = if opts.filters && !v.meets_mode() && v.capped.is_none() {
            match mincounter_filter(table, p, v.character, limits) {
                Ok(f) => verdict_line(&ctx, v, Some(&f)),
                Err(e) => {
                    let mut l = verdict_line(&ctx, v, None);
                    l["filters"] = json!({ "error": e.to_string() });
                    l
                }
            }
        } else {
            verdict_line(&ctx, v, None)
        };
        if line.get("filters").is_none() && opts.filters {
            line["filters"] = Value::Null;
        }
        lines.push(line);
    }
    Ok(lines)
}

/// Runs the census. Output order is corpus order, then prime, then
/// character, independent of `jobs`.
pub fn run_census(entries: &[CorpusEntry], parse_errors: &[ParseError], opts: &CensusOptions) -> CensusOutput {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let prepared: Vec<Prepared<'_>> = entries
            .par_iter()
            .map(|entry| Prepared {
                entry,
                group: entry.build(&opts.limits),
                table: OnceLock::new(),
            })
            .collect();
        let mut tasks = Vec::new();
        for (i, prep) in prepared.iter().enumerate() {
            if let Ok(g) = &prep.group {
                for p in opts.primes.primes_for(g.order()) {
                    tasks.push((i, p));
                }
            }
        }
        let results: Vec<(Vec<Value>, bool)> =
            tasks.par_iter().map(|&(i, p)| run_task(&prepared[i], p, opts)).collect();

        let mut out = CensusOutput::default();
        let mut by_entry: Vec<Vec<Value>> = vec![Vec::new(); prepared.len()];
        for (&(i, _), (lines, hit)) in tasks.iter().zip(results) {
            out.cache_hits += hit as usize;
            by_entry[i].extend(lines);
        }
        for (prep, lines) in prepared.iter().zip(by_entry) {
            match &prep.group {
                Err(e) => out.lines.push(error_line(prep.entry, None, None, e)),
                Ok(_) => out.lines.extend(lines),
            }
        }
        out.lines.extend(parse_errors.iter().map(parse_error_line));
        for l in &out.lines {
            out.summary.add(l);
        }
        out
    })
}
