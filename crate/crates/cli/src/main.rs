//! quillen: p-subgroup posets of finite groups and the topology of their
//! order complexes.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use quillen_core::poset::PosetKind;
use quillen_core::{Caps, Error};

use quillen_cli::pipeline::{cap_flag, run, RunConfig};
use quillen_cli::verify;

#[derive(Parser)]
#[command(
    name = "quillen",
    version,
    about = "p-subgroup posets, order complexes, fundamental groups, homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Group to analyze: symmetric:n, alternating:n, cyclic:n, dihedral:m,
    /// product(spec,spec), wreath2(spec), file:path, data:name.
    #[arg(long, value_name = "SPEC")]
    group: Option<String>,

    /// The prime p.
    #[arg(long, value_name = "P")]
    prime: Option<u64>,

    /// Subgroup family: quillen (elementary abelian), sp (all p-subgroups),
    /// or bouc (p-radical).
    #[arg(long, value_name = "KIND", value_parser = PosetKind::from_str)]
    poset: Option<PosetKind>,

    /// Keep only poset nodes of order at most p^(N+1).
    #[arg(long, value_name = "N")]
    truncate: Option<u32>,

    /// Also compute integer simplicial homology up to degree D.
    #[arg(long, value_name = "D")]
    homology: Option<usize>,

    /// Write the machine-readable JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Bound every parallel section to K worker threads.
    #[arg(long, value_name = "K")]
    threads: Option<usize>,

    /// Raise or lower the streamed-element cap (config key max_elements).
    #[arg(long, value_name = "N")]
    cap_elements: Option<u64>,

    /// Raise or lower the orbit size cap (config key max_orbit).
    #[arg(long, value_name = "N")]
    cap_orbit: Option<usize>,

    /// Raise or lower the maximal chain cap (config key max_chains).
    #[arg(long, value_name = "N")]
    cap_chains: Option<usize>,

    /// Raise or lower the sparse matrix entry cap (config key
    /// max_matrix_entries).
    #[arg(long, value_name = "N")]
    cap_matrix: Option<usize>,

    /// Re-derive and check every structural poset invariant before the
    /// topology stage.
    #[arg(long)]
    check_invariants: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the published result battery and compare.
    Verify {
        /// Include the long rows (minutes to hours of compute).
        #[arg(long)]
        extended: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot configure the thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match cli.command {
        Some(Command::Verify { extended }) => {
            if verify::run_suite(extended) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        None => run_command(cli),
    }
}

fn run_command(cli: Cli) -> ExitCode {
    let (Some(group), Some(prime), Some(poset)) = (cli.group, cli.prime, cli.poset) else {
        eprintln!("error: --group, --prime, and --poset are required (try --help)");
        return ExitCode::from(2);
    };
    let mut caps = Caps::default();
    if let Some(n) = cli.cap_elements {
        caps.max_elements = n;
    }
    if let Some(n) = cli.cap_orbit {
        caps.max_orbit = n;
    }
    if let Some(n) = cli.cap_chains {
        caps.max_chains = n;
    }
    if let Some(n) = cli.cap_matrix {
        caps.max_matrix_entries = n;
    }
    let config = RunConfig {
        group,
        prime,
        poset,
        truncate: cli.truncate,
        homology: cli.homology,
        json: cli.json,
        threads: cli.threads,
        caps,
        check_invariants: cli.check_invariants,
    };
    match run(&config) {
        Ok(output) => {
            print!("{}", output.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let hint = match &e {
                Error::CapExceeded { cap, .. } => cap_flag(*cap)
                    .map(|flag| format!("; raise it with {flag}"))
                    .unwrap_or_default(),
                _ => String::new(),
            };
            eprintln!("error: {e}{hint}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Cap violations and invalid input get distinct nonzero codes; anything
/// else is an internal failure.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::ElementOrderOverflow => 1,
        _ => 2,
    }
}
