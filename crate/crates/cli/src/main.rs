//! `spacelike`: verify the operator identity suite, reduce expressions to
//! normal form, and evaluate or tabulate the spacelike propagator.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 numeric non-convergence.

mod commands;
mod format;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{CliError, Method, Outcome, PropagatorArgs, TableFormat, TextFormat, Units, EXIT_INPUT};

#[derive(Debug, Parser)]
#[command(name = "spacelike", version, about = "Quantum Lorentz transformation identities and spacelike propagator numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify the identity suite, or one member of it.
    Verify {
        /// Theorem id, e.g. T_eq11.
        #[arg(long)]
        theorem: Option<String>,
        /// Print every equation's residual, and the theorems it depends on.
        #[arg(long)]
        show_steps: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Print the normal form of an expression.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Print the normal form of [A, B] = AB - BA.
    Commutator {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Evaluate the amplitude at one spacelike point.
    #[command(group(ArgGroup::new("scale").required(true).args(["lambda_bar", "mass"])))]
    Propagator {
        /// Time: fm/c in natural units, seconds in SI.
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Position: fm in natural units, metres in SI.
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Reduced Compton wavelength, in the length unit of --units.
        #[arg(long)]
        lambda_bar: Option<f64>,
        /// Particle mass in MeV/c^2.
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long, value_enum, default_value_t = Method::Bessel)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Units::Natural)]
        units: Units,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Tabulate the amplitude along tau = 0 for evenly spaced z.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        z_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Verify { theorem, show_steps, format } => commands::verify(theorem.as_deref(), show_steps, format),
        Command::Normalize { expr, format } => commands::normalize(&expr, format),
        Command::Commutator { a, b, format } => commands::commutator_cmd(&a, &b, format),
        Command::Propagator { t, x, lambda_bar, mass, method, units, format } => {
            commands::propagator_cmd(&PropagatorArgs { t, x, lambda_bar, mass_mev: mass, method, units, format })
        }
        Command::Scan { z_min, z_max, steps, format } => commands::scan_cmd(z_min, z_max, steps, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
