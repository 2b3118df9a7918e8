//! Runs the verification suites over the built-in catalog and prints one
//! line per check.
//!
//! ```text
//! cargo run --release --example verify_suite -- [suites] [seed]
//! ```

use lattice_functionals::suite::{run_suite, SuiteConfig, SuiteName};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suites = SuiteName::parse_list(&args.next().unwrap_or_else(|| "all".into()))?;
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let report = run_suite(&SuiteConfig::only(&suites, seed))?;
    print!("{}", report.render());
    if !report.passed {
        std::process::exit(1);
    }
    Ok(())
}
