mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cache::Cache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "twoplus", version, about = "Octahedral embedding problems, ternary theta series and weight 3/2 eigenforms")]
pub struct Cli {
    /// Decimal digits for complex root computations.
    #[arg(long, global = true, default_value_t = 120)]
    pub precision: u32,
    /// Number of q-expansion coefficients computed for weight 3/2 forms
    /// (18050 covers the T_{p^2} checks for p <= 19 on 50 coefficients).
    #[arg(long, global = true, default_value_t = 18050)]
    pub truncation: usize,
    /// Worker threads for independent cases.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Ignore and do not write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Workspace holding the cache directory.
    #[arg(long, global = true, env = "TWOPLUS_WORKSPACE", default_value = ".twoplus")]
    pub workspace: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classes of positive-definite ternary forms of a given level.
    Enumerate {
        level: i64,
        /// Keep only forms with square discriminant (trivial character).
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        square_disc: bool,
        /// Keep only forms in the Kohnen plus space.
        #[arg(long)]
        kohnen: bool,
    },
    /// Embedding obstruction of the halving quartic of a point, or of a quartic.
    Obstruction {
        /// Curve label, e.g. 643A.
        curve: Option<String>,
        /// Point as x,y (rationals allowed). Repeatable; defaults to the
        /// registered points of the curve.
        #[arg(long)]
        point: Vec<String>,
        /// File with quartic coefficients, highest degree first.
        #[arg(long)]
        quartic_file: Option<PathBuf>,
    },
    /// Structural and cohomological checks on GL_2(F_3), S_4 and the order-96 group.
    VerifyGroup,
    /// End-to-end eigenform reproduction for case 43, 563, 643 or all.
    Reproduce { case: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = Cache::new((!cli.no_cache).then(|| cli.workspace.join("cache")));
    match commands::run(&cli, &cache) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
