use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use casdsl::repl::{run_repl, run_script, SessionConfig};
use clap::Parser;

/// Interactive computer algebra shell.
#[derive(Debug, Parser)]
#[command(name = "casdsl", version)]
struct Args {
    /// Run the statements in FILE instead of starting a session.
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,
    /// Report unbound identifiers as errors instead of treating them as symbols.
    #[arg(long)]
    no_auto_symbols: bool,
    /// Read juxtaposition such as `2x` or `x y` as multiplication.
    #[arg(long)]
    implicit_mul: bool,
    /// Print Buchberger pair statistics to stderr.
    #[arg(long)]
    debug_gb: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = SessionConfig {
        auto_symbols: !args.no_auto_symbols,
        implicit_mul: args.implicit_mul,
        debug_gb: args.debug_gb,
        script_path: args.script,
        ..SessionConfig::default()
    };
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let result = if config.script_path.is_some() {
        run_script(&config, &mut out, &mut err)
    } else {
        let stdin = io::stdin();
        let interactive = stdin.is_terminal();
        run_repl(&config, &mut stdin.lock(), &mut out, &mut err, interactive)
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code.clamp(1, 255) as u8),
        Err(e) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(2)
        }
    }
}
