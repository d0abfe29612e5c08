use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gwa_bv::presets::{DEFAULT_SEED, SEED_ENV};
use gwa_bv::report::{run_report, Mode, RunConfig, SpecSource, Suite};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "gwabv", version, about = "Hochschild and BV computations for quantum generalized Weyl algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the free resolution identities exactly.
    VerifyResolution(Opts),
    /// Check the duality squares and homotopies exactly.
    VerifyDuality(Opts),
    /// Estimate HH^* dimensions and check the explicit cocycles.
    Cohomology(Opts),
    /// Check the explicit homology of the dual complex.
    THomology(Opts),
    /// Compute cup products, Δ and brackets on a basis.
    BvTable(Opts),
    /// Run every suite.
    All(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Wpl,
    Podles,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Specialize,
}

#[derive(Args)]
struct Opts {
    /// Defining polynomial in z, e.g. "z^2 - 1".
    #[arg(long, conflicts_with = "preset")]
    p: Option<String>,
    /// Exponent e with σ(z) = q^e z.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    e: i64,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Weighted projective line parameter.
    #[arg(long)]
    l: Option<u32>,
    /// Podleś parameter u (rational).
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Podleś parameter v (rational).
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, value_enum, default_value = "specialize")]
    mode: ModeArg,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest truncation window; the grid is 6, 8, … up to this value.
    #[arg(long, default_value_t = 12)]
    nmax: usize,
    /// Check that weights 1 ≤ |w| ≤ wmax carry no cohomology.
    #[arg(long, default_value_t = 3)]
    wmax: i64,
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

fn source(o: &Opts) -> Result<SpecSource, String> {
    match (o.preset, &o.p) {
        (None, Some(p)) => Ok(SpecSource::Custom { p: p.clone(), e: o.e }),
        (Some(Preset::Wpl), None) => Ok(SpecSource::Wpl { l: o.l.ok_or("--preset wpl needs --l")? }),
        (Some(Preset::Podles), None) => Ok(SpecSource::Podles {
            u: o.u.clone().ok_or("--preset podles needs --u")?,
            v: o.v.clone().ok_or("--preset podles needs --v")?,
        }),
        (None, None) => Err("give either --p or --preset".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects --p with --preset"),
    }
}

fn grid(nmax: usize) -> Result<Vec<usize>, String> {
    if nmax < 6 {
        return Err(format!("--nmax must be at least 6, got {nmax}"));
    }
    Ok((6..=nmax).step_by(2).collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suites, opts) = match cli.command {
        Command::VerifyResolution(o) => (vec![Suite::Resolution], o),
        Command::VerifyDuality(o) => (vec![Suite::Duality], o),
        Command::Cohomology(o) => (vec![Suite::Cohomology], o),
        Command::THomology(o) => (vec![Suite::THomology], o),
        Command::BvTable(o) => (vec![Suite::BvTable], o),
        Command::All(o) => (Suite::ALL.to_vec(), o),
    };
    let usage = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_USAGE)
    };
    let config = match (source(&opts), grid(opts.nmax)) {
        (Ok(source), Ok(grid)) => RunConfig {
            source,
            mode: match opts.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Specialize => Mode::Specialize,
            },
            seed: opts.seed,
            grid,
            wmax: opts.wmax,
            suites,
        },
        (Err(m), _) | (_, Err(m)) => return usage(m),
    };
    let report = match run_report(&config) {
        Ok(r) => r,
        Err(e) => return usage(e.to_string()),
    };
    match &opts.json {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            if path.as_os_str() == "-" {
                println!("{text}");
            } else {
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_FAILED);
                }
                print!("{}", report.render_text());
            }
        }
        None => print!("{}", report.render_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
