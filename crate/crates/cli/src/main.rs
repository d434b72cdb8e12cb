use branching_core::catalog::catalog;
use branching_core::pi::{amitsur_levitzki_test, PiError};
use branching_core::run::{load_config, run_config, to_text, write_outputs, RunError};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "branch", version, about = "Branching laws of generalized Verma modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration file (TOML, or JSON by extension).
    Run {
        #[arg(short, long)]
        config: PathBuf,
        /// Write the JSON result here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the summand table as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Override `depth.max_degree`.
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        no_oracle: bool,
        /// Suppress the text table on stdout.
        #[arg(long)]
        quiet: bool,
    },
    /// List catalog entries with their Cartan data and flags.
    Catalog,
    /// Amitsur–Levitzki check for n x n rational matrices.
    AlTest {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn fail(e: &RunError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn run(
    config: PathBuf,
    json: Option<PathBuf>,
    csv: Option<PathBuf>,
    depth: Option<u32>,
    no_oracle: bool,
    quiet: bool,
) -> ExitCode {
    let mut cfg = match load_config(&config) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if let Some(d) = depth {
        cfg.depth.max_degree = d;
    }
    if no_oracle {
        cfg.oracle.enabled = Some(false);
    }
    if json.is_some() {
        cfg.outputs.json = json;
    }
    if csv.is_some() {
        cfg.outputs.csv = csv;
    }
    if quiet {
        cfg.outputs.text = false;
    }
    let start = Instant::now();
    let result = match run_config(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if !cfg.outputs.text {
        for w in &result.warnings {
            eprintln!("warning: {w}");
        }
    }
    if let Err(e) = write_outputs(&result, &cfg.outputs) {
        return fail(&e);
    }
    if cfg.outputs.text {
        print!("{}", to_text(&result));
        println!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    if let Some(d) = &result.oracle_diff {
        return fail(&RunError::OracleMismatch(d.to_string()));
    }
    ExitCode::SUCCESS
}

fn list_catalog() -> ExitCode {
    for e in catalog() {
        let f = e.flags;
        let g = &e.pair.g;
        let gp = &e.pair.g_prime;
        println!("{}: {}", e.name, e.description);
        println!(
            "  g = {} (rank {}, {} positive roots), g' = {} (rank {}, {} positive roots)",
            g.label(),
            g.rank(),
            g.positive_roots().len(),
            gp.label(),
            gp.rank(),
            gp.positive_roots().len()
        );
        println!(
            "  weakly_compatible={} quasi_abelian={} commutator_vanishing={} abelian_nilradical={} \
             holomorphic_type={} symmetric_pair={} multiplicity_free={}",
            f.weakly_compatible,
            f.quasi_abelian,
            f.commutator_vanishing,
            f.abelian_nilradical,
            f.holomorphic_type,
            f.symmetric_pair,
            f.multiplicity_free
        );
    }
    ExitCode::SUCCESS
}

fn al_test(n: usize, trials: usize, seed: u64) -> ExitCode {
    let r = match amitsur_levitzki_test(n, trials, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, PiError::BadSize(_)) { 2 } else { 4 };
            return ExitCode::from(code);
        }
    };
    println!("n = {n}, seed = {seed}: s_{} vanished on {}/{} tuples", 2 * n, r.vanishing_trials, trials);
    if let Some(t) = r.first_failure {
        println!("s_{} is nonzero on trial {t}", 2 * n);
    }
    match &r.witness {
        Some(w) => println!("s_{} witness: {} (verified: {})", w.degree, w.value, w.verify()),
        None => println!("s_1(X) = X is not an identity"),
    }
    if r.passed && r.witness.as_ref().is_none_or(|w| w.verify()) {
        println!("PI degree of M_{n} is {n}");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, json, csv, depth, no_oracle, quiet } => run(config, json, csv, depth, no_oracle, quiet),
        Command::Catalog => list_catalog(),
        Command::AlTest { n, trials, seed } => al_test(n, trials, seed),
    }
}
