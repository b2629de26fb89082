//! `cgsig`: signatures, Casson–Gordon invariants and handle obstructions from
//! the command line.
//!
//! Exit status is 0 whenever the computation completes (whatever the verdict),
//! 1 for malformed or invalid input and 2 for internal failures.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::report::Failure;

#[derive(Parser, Debug)]
#[command(name = "cgsig", version, about = "Levine–Tristram and Casson–Gordon signatures of knots and surgeries")]
struct Cli {
    /// Print machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levine–Tristram signature at exp(2 pi i a/m).
    Sig {
        /// Knot expression, e.g. "T(4,25)" or "C(2,201;T(4,25)) # T(2,3)".
        knot: String,
        /// Angle a/m.
        angle: String,
    },
    /// Casson–Gordon invariants of surgeries.
    #[command(subcommand)]
    Cg(CgCommand),
    /// Structure of H_1 from a presentation matrix.
    H1(H1Args),
    /// Obstructions to rational balls with few handles.
    #[command(subcommand)]
    Obstruct(ObstructCommand),
    /// Lower bounds on fusion numbers of ribbon knots.
    #[command(subcommand)]
    Fusion(FusionCommand),
    /// The Fibonacci torus-knot family and its 1-handle bound.
    Family {
        #[arg(long)]
        v: String,
    },
    /// Recompute every published reference value.
    ReproducePaper,
}

#[derive(Subcommand, Debug)]
enum CgCommand {
    /// m^2/q-surgery on a knot (q = 1 by default), character a/m.
    Surgery {
        knot: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        q: Option<String>,
    },
    /// The lens space p/q-surgery on the unknot, character of order t with
    /// first colour a.
    Lens {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        order: String,
        #[arg(long)]
        a: String,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct H1Args {
    /// JSON file holding an array of integer rows.
    #[arg(long)]
    matrix: Option<std::path::PathBuf>,
    /// Plumbing matrix: a=<int> n=<n_1,...,n_v>.
    #[arg(long, num_args = 2, value_names = ["a=INT", "n=LIST"])]
    plumbing: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum ObstructCommand {
    /// Sweep all characters of m^2/q-surgery on a knot.
    OneHandle {
        knot: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum FusionCommand {
    /// Min-max over subgroups for a connected sum of lens spaces L(p,q).
    Minmax {
        /// One or more summands p,q.
        #[arg(long, num_args = 1.., required = true)]
        lens: Vec<String>,
    },
    /// Bound from a surgery description S^3_{m^2}(K) of the double cover.
    Surgery {
        knot: String,
        #[arg(long)]
        m: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
            } else {
                print!("{}", report.table);
            }
            ExitCode::from(report.exit_code())
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(match failure {
                Failure::Input(_) => 1,
                Failure::Internal(_) => 2,
            })
        }
    }
}
