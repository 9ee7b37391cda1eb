#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "isoperim", version, about = "Isoperimetric computations for symmetric log-convex measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MeasureArg {
    /// `cauchy:<alpha>`, `exp` or `subexp:<alpha>`.
    #[arg(long)]
    measure: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate `p, I(p), J(p)` at evenly spaced `p`.
    Profile {
        #[command(flatten)]
        measure: MeasureArg,
        /// Number of points in [0, 1].
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Label the (p, λ) triangle with the family of least perimeter.
    Regions {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long, default_value_t = 200)]
        grid_n: usize,
        #[arg(long)]
        origin_free: bool,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        svg: Option<String>,
    },
    /// Perimeter, deficit and lower bounds for each family at (p, λ).
    Deficit {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Grid-search minimum perimeter, compared with the closed forms.
    Oracle {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long, default_value_t = 200)]
        grid_n: usize,
        #[arg(long, default_value_t = 3)]
        max_components: usize,
        /// Measure tolerance; defaults to 2/grid_n.
        #[arg(long)]
        measure_tol: Option<f64>,
        /// Asymmetry tolerance; defaults to 2/grid_n.
        #[arg(long)]
        asymmetry_tol: Option<f64>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        origin_free: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Tabulate the weak Cheeger rate β(s) and the profile recovered from it.
    Cheeger {
        #[command(flatten)]
        measure: MeasureArg,
        /// Comma-separated s values; defaults to 0.01, 0.02, ..., 0.49.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<f64>>,
        /// Points of the round-trip grid in (0, 1/2].
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Tabulate a piecewise-linear function and the symmetric rearrangement of |u|.
    Rearrange {
        #[command(flatten)]
        measure: MeasureArg,
        /// Breakpoints as `x:v,x:v,...`.
        #[arg(long, allow_hyphen_values = true)]
        function: String,
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_negative_breakpoints() {
        let cli = Cli::try_parse_from(["isoperim", "rearrange", "--measure", "exp", "--function", "-1:0,1:1"]).unwrap();
        assert!(matches!(cli.command, Command::Rearrange { .. }));
    }
}
