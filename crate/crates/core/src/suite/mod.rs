//! Seeded, reproducible verification of every characterization over the
//! built-in lattice catalog.
//!
//! A run is a list of checks, each bound to one catalog lattice. Checks on
//! non-distributive lattices that target a distributive-only identity are
//! expect-fail: they pass when a violation is found. Instances draw their
//! randomness from a seed derived from the run seed, the check name, the
//! lattice name and the instance number, so any instance can be replayed
//! on its own and the report does not depend on scheduling.

mod catalog;
mod checks;
pub mod generators;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::maps::Continuity;

pub use catalog::{catalog, catalog_lattice, CATALOG};
pub use generators::{
    enumerate_all, enumerate_nondecreasing, random_capacity, random_cone, random_family,
    random_grid, random_nondecreasing, random_term,
};

/// A group of checks selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Lattice,
    Thm32,
    Cor33,
    Thm34,
    Cones,
    Props41,
    Thm43,
    Prop45,
    Thm47,
    Thm48,
    Examples,
}

impl SuiteName {
    pub const ALL: [SuiteName; 11] = [
        SuiteName::Lattice,
        SuiteName::Thm32,
        SuiteName::Cor33,
        SuiteName::Thm34,
        SuiteName::Cones,
        SuiteName::Props41,
        SuiteName::Thm43,
        SuiteName::Prop45,
        SuiteName::Thm47,
        SuiteName::Thm48,
        SuiteName::Examples,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Lattice => "lattice",
            SuiteName::Thm32 => "thm32",
            SuiteName::Cor33 => "cor33",
            SuiteName::Thm34 => "thm34",
            SuiteName::Cones => "cones",
            SuiteName::Props41 => "props41",
            SuiteName::Thm43 => "thm43",
            SuiteName::Prop45 => "prop45",
            SuiteName::Thm47 => "thm47",
            SuiteName::Thm48 => "thm48",
            SuiteName::Examples => "examples",
        }
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<SuiteName>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(SuiteName::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sample sizes for the randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Random nondecreasing tables per lattice.
    pub monotone: u64,
    /// Random terms per distributive lattice.
    pub terms: u64,
    /// Random cones per lattice.
    pub cones: u64,
    /// Random capacities per distributive lattice.
    pub capacities: u64,
    /// Random term functionals per small distributive lattice.
    pub term_functionals: u64,
    /// Random grids per lattice.
    pub grids: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            monotone: 1000,
            terms: 100,
            cones: 200,
            capacities: 72,
            term_functionals: 40,
            grids: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteName>,
    pub seed: u64,
    /// Restrict to these catalog lattices; `None` runs every applicable one.
    pub lattices: Option<Vec<String>>,
    /// Skip lattices with more elements than this.
    pub max_size: usize,
    /// Worker threads; 1 runs sequentially.
    pub jobs: usize,
    /// Report zero elapsed time so identical runs give identical bytes.
    pub deterministic: bool,
    pub continuity: Continuity,
    pub budget: Budget,
}

impl SuiteConfig {
    /// Every suite with seed 7 and default budgets.
    pub fn all(seed: u64) -> SuiteConfig {
        SuiteConfig {
            suites: SuiteName::ALL.to_vec(),
            seed,
            lattices: None,
            max_size: 8,
            jobs: 1,
            deterministic: false,
            continuity: Continuity::Lenient,
            budget: Budget::default(),
        }
    }

    pub fn only(suites: &[SuiteName], seed: u64) -> SuiteConfig {
        SuiteConfig { suites: suites.to_vec(), ..SuiteConfig::all(seed) }
    }
}

/// One failed instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub lattice: String,
    /// Seed of the failing instance (the run seed for exhaustive checks).
    pub seed: u64,
    pub witness: String,
    pub repro_cmd: String,
}

/// Outcome of one check on one lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckStat {
    pub suite: SuiteName,
    pub check: String,
    pub lattice: String,
    pub instances: u64,
    pub failures: u64,
    /// Whether the check passes by finding a violation.
    pub expect_fail: bool,
    /// For expect-fail checks, the violation that was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckStat {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    /// Selected suites, comma-separated.
    pub suite: String,
    pub seed: u64,
    pub continuity: Continuity,
    pub instances: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub checks: Vec<CheckStat>,
    /// Wall time in seconds; zero in deterministic mode.
    pub elapsed: f64,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check followed by failure details.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            let mode = if c.expect_fail { " (expect violation)" } else { "" };
            out.push_str(&format!(
                "{verdict} {:<8} {:<28} {:<14} {} instances{mode}\n",
                c.suite.as_str(),
                c.check,
                c.lattice,
                c.instances
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("     note: {n}\n"));
            }
        }
        for f in &self.failures {
            out.push_str(&format!(
                "failure: {} on {}: {}\n  reproduce: {}\n",
                f.check, f.lattice, f.witness, f.repro_cmd
            ));
        }
        let total_checks = self.checks.len();
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!(
            "{} checks, {} instances, {} failed checks: {}\n",
            total_checks,
            self.instances,
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Most failures recorded per check; the count in [`CheckStat`] is exact.
pub const MAX_RECORDED_FAILURES: usize = 10;

/// Shared state handed to every check.
pub(crate) struct Ctx<'a> {
    pub config: &'a SuiteConfig,
    pub suite: SuiteName,
    pub check: &'static str,
    pub lattice: Arc<Lattice>,
}

impl Ctx<'_> {
    /// Seed of instance `i` of this check on this lattice.
    pub fn instance_seed(&self, i: u64) -> u64 {
        let mut h = fnv1a(self.check.as_bytes()) ^ fnv1a(self.lattice.name().as_bytes()).rotate_left(32);
        h ^= self.config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        splitmix(h ^ splitmix(i))
    }

    pub fn repro_cmd(&self) -> String {
        let strict = if self.config.continuity == Continuity::Strict {
            " --strict-continuity"
        } else {
            ""
        };
        format!(
            "latfun verify --suite {} --seed {} --lattice {}{strict}",
            self.suite,
            self.config.seed,
            self.lattice.name()
        )
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Accumulates instances and failures for one check.
pub(crate) struct Tally {
    pub instances: u64,
    pub failures: Vec<Failure>,
    pub failure_count: u64,
    pub witness: Option<String>,
    pub note: Option<String>,
    pub expect_fail: bool,
}

impl Tally {
    pub fn new(expect_fail: bool) -> Tally {
        Tally {
            instances: 0,
            failures: Vec::new(),
            failure_count: 0,
            witness: None,
            note: None,
            expect_fail,
        }
    }

    pub fn fail(&mut self, ctx: &Ctx<'_>, seed: u64, witness: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure {
                check: ctx.check.to_string(),
                lattice: ctx.lattice.name().to_string(),
                seed,
                witness,
                repro_cmd: ctx.repro_cmd(),
            });
        }
    }

    /// Closes an expect-fail check: a missing witness is a failure.
    pub fn require_witness(&mut self, ctx: &Ctx<'_>) {
        if self.expect_fail && self.witness.is_none() {
            self.fail(ctx, ctx.config.seed, "no violation found within budget".into());
        }
    }
}

pub(crate) type CheckFn = fn(&Ctx<'_>) -> Result<Tally>;

/// Runs the selected suites and aggregates their checks in a fixed order.
///
/// Only configuration problems are errors; violated identities are report
/// content.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.suites.is_empty() {
        return Err(Error::InvalidConfig("no suites selected".into()));
    }
    if config.jobs == 0 {
        return Err(Error::InvalidConfig("jobs must be at least 1".into()));
    }
    if let Some(names) = &config.lattices {
        if names.is_empty() {
            return Err(Error::InvalidConfig("empty lattice restriction".into()));
        }
        if let Some(bad) = names.iter().find(|n| !CATALOG.contains(&n.as_str())) {
            return Err(Error::InvalidConfig(format!("`{bad}` is not a catalog lattice")));
        }
    }
    let start = Instant::now();
    let lattices = catalog();
    let mut tasks: Vec<(SuiteName, &'static str, Arc<Lattice>, CheckFn)> = Vec::new();
    for &suite in &config.suites {
        for (check, applies, f) in checks::plan(suite) {
            for l in &lattices {
                let selected = config.lattices.as_ref().is_none_or(|ns| ns.iter().any(|n| n == l.name()));
                if selected && l.len() <= config.max_size && applies(l.name()) {
                    tasks.push((suite, check, l.clone(), f));
                }
            }
        }
    }
    if tasks.is_empty() {
        return Err(Error::InvalidConfig("the selection leaves no checks to run".into()));
    }

    let run = |(suite, check, lattice, f): &(SuiteName, &'static str, Arc<Lattice>, CheckFn)| {
        let ctx = Ctx { config, suite: *suite, check, lattice: lattice.clone() };
        f(&ctx).map(|tally| (ctx.suite, ctx.check, ctx.lattice.name().to_string(), tally))
    };
    let results: Vec<Result<_>> = if config.jobs == 1 {
        tasks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(run).collect())
    };

    let mut report = SuiteReport {
        suite: config.suites.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(","),
        seed: config.seed,
        continuity: config.continuity,
        instances: 0,
        passed: true,
        failures: Vec::new(),
        checks: Vec::new(),
        elapsed: 0.0,
    };
    for r in results {
        let (suite, check, lattice, tally) = r?;
        report.instances += tally.instances;
        report.passed &= tally.failure_count == 0;
        report.failures.extend(tally.failures);
        report.checks.push(CheckStat {
            suite,
            check: check.to_string(),
            lattice,
            instances: tally.instances,
            failures: tally.failure_count,
            expect_fail: tally.expect_fail,
            witness: tally.witness,
            note: tally.note,
        });
    }
    if !config.deterministic {
        report.elapsed = start.elapsed().as_secs_f64();
    }
    Ok(report)
}
