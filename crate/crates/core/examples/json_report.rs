//! Run every suite for one algebra and print the JSON report.

use gwa_bv::homology::DEFAULT_GRID;
use gwa_bv::presets::seed_from_env;
use gwa_bv::report::{run_report, Mode, RunConfig, SpecSource, Suite};

fn main() -> gwa_bv::Result<()> {
    let config = RunConfig {
        source: SpecSource::Wpl { l: 1 },
        mode: Mode::Specialize,
        seed: seed_from_env(),
        grid: DEFAULT_GRID.to_vec(),
        wmax: 2,
        suites: Suite::ALL.to_vec(),
    };
    let report = run_report(&config)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    eprintln!("all passed: {}", report.passed());
    Ok(())
}
