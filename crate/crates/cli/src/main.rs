use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use fatpoints::oracle::{DEFAULT_PRIME, DEFAULT_SEED};
use fatpoints_cli::commands::{
    cmd_bs, cmd_dim, cmd_fixed, cmd_reduce, cmd_verify, run_fixtures, CliError, CmdOk,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Linear systems of surfaces in P^3 through up to 8 general fat points.
#[derive(Parser)]
#[command(name = "fatpoints", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension h^0 of the system, optionally cross-checked by the oracle
    Dim {
        /// System in L3(d; m1^r1, ...) notation
        system: String,
        #[arg(long)]
        json: bool,
        /// Also compute h^0 by finite-field interpolation and compare
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
    /// Fixed components and the movable residual
    Fixed {
        system: String,
        #[arg(long)]
        json: bool,
    },
    /// Complete base locus: fixed part, base curves, D_Q8 and point terms
    Bs {
        system: Option<String>,
        #[arg(long)]
        json: bool,
        /// Run fixture regression instead: one "INPUT -> EXPECTED_JSON" per line
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Print the Cremona reduction diagram
    Reduce {
        system: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the full oracle verification battery
    Verify {
        system: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
}

fn dispatch(cli: Cli) -> Result<CmdOk, CliError> {
    match cli.cmd {
        Cmd::Dim { system, json, oracle, seed, prime } => {
            cmd_dim(&system, json, oracle.then_some((prime, seed)))
        }
        Cmd::Fixed { system, json } => cmd_fixed(&system, json),
        Cmd::Bs { system, json, fixtures } => match (fixtures, system) {
            (Some(path), _) => run_fixtures(&path),
            (None, Some(system)) => cmd_bs(&system, json),
            (None, None) => Err(CliError::Usage("bs needs a system or --fixtures".into())),
        },
        Cmd::Reduce { system, json } => cmd_reduce(&system, json),
        Cmd::Verify { system, seed, prime } => cmd_verify(&system, prime, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors by default; the contract reserves
            // 2 for "empty system", so usage errors map to 1.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            println!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
