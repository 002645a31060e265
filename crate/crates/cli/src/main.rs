//! `sqpack` — exact workbench for unit-square packings.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use sqpack_cli::certificate::{read_certificate, read_unverified, write_certificate};
use sqpack_cli::svg::write_svg;
use sqpack_cli::table::{ledger_table, TableFormat};
use sqpack_cli::CliError;
use sqpack_core::constructions::{combine, grid};
use sqpack_core::ledger::{propagate, PropagateParams, WitnessEntry};
use sqpack_core::optimizer::{rationalize, search, SearchConfig};
use sqpack_core::rational::{decimal_hint, Rational};
use sqpack_core::theorems::{divergence_partial_sum, theorem1_implication, theorem2_epsilon_rule};
use sqpack_core::Provenance;

#[derive(Parser)]
#[command(
    name = "sqpack",
    about = "Exact workbench for the unit-square packing function f(n)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exactly verify a packing certificate
    Verify {
        /// Certificate file
        file: PathBuf,
    },
    /// Write the b x b grid packing (total exactly b)
    Grid {
        /// Grid size b >= 1
        b: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Substitute two packings into corner subgrids of a b x b grid
    Combine {
        /// Certificate placed in the top-left a1-subgrid
        p1: PathBuf,
        /// Certificate placed in the bottom-right a2-subgrid
        p2: PathBuf,
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        #[arg(long)]
        b: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Propagate lower/upper bounds on f(n) to a fixpoint and print them
    Ledger {
        #[arg(long)]
        max_n: u64,
        /// Cap on the combine rule's grid size
        #[arg(long, default_value_t = 32)]
        b_cap: u64,
        /// Certificate files imported as witness facts
        #[arg(long)]
        witness: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Print the interval known to contain epsilon(k) = f(k^2+1) - k
    Epsilon {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 32)]
        b_cap: u64,
        #[arg(long)]
        witness: Vec<PathBuf>,
    },
    /// Search for a good n-square packing and write its exact certificate
    Optimize {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        restarts: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Denominator cap for rationalizing the float solution
        #[arg(long, default_value_t = 1024)]
        denom_bound: u64,
        /// Optional wall-clock budget in seconds
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the conditional implication: eps(n) = 0 forces eps(k) = 0
    Theorem1 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
    },
    /// Conditional lower bound on eps(k) from a hypothetical excess
    /// f(N^2+1) = N + alpha
    Theorem2 {
        #[arg(long = "N")]
        big_n: u64,
        /// Hypothetical excess as an exact rational p/q
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        k: u64,
    },
    /// Render a certificate as an SVG drawing
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn load_witnesses(paths: &[PathBuf]) -> Result<Vec<WitnessEntry>, CliError> {
    paths
        .iter()
        .map(|path| {
            let packing = read_certificate(path)?;
            Ok(WitnessEntry::from_packing(&packing)?)
        })
        .collect()
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Verify { file } => {
            let packing = read_unverified(&file)?;
            let report = packing.verify();
            if report.is_valid() {
                println!(
                    "valid: n={}, total={} (~{})",
                    packing.count(),
                    packing.total_side(),
                    decimal_hint(packing.total_side(), 6)
                );
                Ok(())
            } else {
                Err(CliError::Verification(report.to_string()))
            }
        }
        Command::Grid { b, output } => {
            let packing = grid(b)?;
            write_certificate(&packing, &output)?;
            println!(
                "grid({b}): n={}, total={}, digest={}",
                packing.count(),
                packing.total_side(),
                &packing.digest()[..12]
            );
            Ok(())
        }
        Command::Combine { p1, p2, a1, a2, b, output } => {
            let left = read_certificate(&p1)?;
            let right = read_certificate(&p2)?;
            let packing = combine(&left, &right, a1, a2, b)?;
            write_certificate(&packing, &output)?;
            println!(
                "combine(a1={a1}, a2={a2}, b={b}): n={}, total={} (~{})",
                packing.count(),
                packing.total_side(),
                decimal_hint(packing.total_side(), 6)
            );
            Ok(())
        }
        Command::Ledger { max_n, b_cap, witness, format } => {
            let mut params = PropagateParams::new(max_n).with_b_cap(b_cap);
            params.witnesses = load_witnesses(&witness)?;
            let ledger = propagate(&params);
            print!("{}", ledger_table(&ledger, format));
            Ok(())
        }
        Command::Epsilon { k, b_cap, witness } => {
            let max_n = k
                .checked_mul(k)
                .and_then(|kk| kk.checked_add(1))
                .ok_or_else(|| CliError::Invalid(format!("k={k} overflows")))?;
            let mut params = PropagateParams::new(max_n).with_b_cap(b_cap);
            params.witnesses = load_witnesses(&witness)?;
            let ledger = propagate(&params);
            let eps = ledger.epsilon_interval(k)?;
            println!(
                "epsilon({k}) in {} (~[{}, {:.9}])",
                eps,
                decimal_hint(eps.lb(), 9),
                eps.ub().to_f64()
            );
            Ok(())
        }
        Command::Optimize { n, restarts, seed, denom_bound, time_budget, output } => {
            let config = SearchConfig {
                n,
                restarts,
                seed,
                denom_bound,
                time_budget: time_budget.map(Duration::from_secs),
                ..SearchConfig::new(n)
            };
            let candidate = search(&config)?;
            let packing = rationalize(&candidate, denom_bound);
            let mut provenance = vec![Provenance::Search { n, seed, restarts }];
            provenance.extend(packing.provenance().iter().cloned());
            let packing = packing.with_provenance(provenance);
            write_certificate(&packing, &output)?;
            println!(
                "optimize(n={n}, seed={seed}, restarts={restarts}): float objective {:.9}, exact total {} (~{})",
                candidate.objective,
                packing.total_side(),
                decimal_hint(packing.total_side(), 9)
            );
            Ok(())
        }
        Command::Theorem1 { k, n } => {
            let cb = theorem1_implication(k, n)?;
            println!(
                "conditional: if eps({n}) = 0 then f({idx}) <= {bound}, hence eps({k}) = 0",
                idx = k * k + 1,
                bound = cb.bound
            );
            println!(
                "  lemma instance: n1=k^2+1={}, n2=k^2={}, a1=a2={k}, b={n}; target index {}",
                k * k + 1,
                k * k,
                cb.target_index
            );
            println!(
                "  constant side k^2 + k^2 - n^2 + n*n = {} (the 2k^2 cancellation is exact)",
                cb.constant_side
            );
            Ok(())
        }
        Command::Theorem2 { big_n, alpha, a, k } => {
            let alpha: Rational = alpha
                .parse()
                .map_err(|_| CliError::Invalid(format!("malformed rational alpha: {alpha:?}")))?;
            let out = theorem2_epsilon_rule(big_n, &alpha, a, k)?;
            println!(
                "conditional: if f({}) = {} + {} then eps({k}) >= {} (~{})",
                out.n2,
                big_n,
                out.alpha,
                out.epsilon_lower,
                decimal_hint(&out.epsilon_lower, 9)
            );
            println!(
                "  lemma instance: n1=a^2+2b+1={}, n2=N^2+1={}, a1=a={a}, a2=N={big_n}, b=k-1={}; target index {}",
                out.n1, out.n2, out.b, out.target_index
            );
            println!(
                "  halasz value f(n1) >= a + b/a = {}; chain reduces to N*alpha = {} <= b*eps(b+1)",
                out.halasz_value, out.product
            );
            // the family eps(j) >= N*alpha/(j-1) for j >= k sums like the
            // harmonic series; show the partial sum up to 100000
            let demo_end = 100_000u64.max(k);
            let demo = divergence_partial_sum(&out.product, k - 1, demo_end - 1);
            println!(
                "  divergence direction: sum of these bounds for k..={demo_end} is ~{demo:.6} and grows without bound"
            );
            Ok(())
        }
        Command::Render { file, output } => {
            let packing = read_certificate(&file)?;
            write_svg(&packing, &output)?;
            println!("rendered {} squares to {}", packing.count(), output.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
