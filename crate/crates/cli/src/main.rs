use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hochdef::io::{fixture_text, parse_with, run, Command, Overrides};
use hochdef::linalg::Field;

/// Exact Hochschild deformation theory of finite-dimensional modules.
#[derive(Debug, Parser)]
#[command(name = "hochdef", version)]
struct Cli {
    /// validate, cohomology, cocycle, coboundary, obstruction, extend,
    /// integrate, normalize, conjugate, equiv-step or rigidity.
    #[arg(required_unless_present = "fixtures", value_parser = parse_command)]
    command: Option<Command>,

    /// Problem document; `-` or absent reads standard input.
    input: Option<PathBuf>,

    /// Print the built-in fixture documents A, B and C.
    #[arg(long)]
    fixtures: bool,

    /// Ground field, `Q` or `Fp:<p>`, overriding the document.
    #[arg(long)]
    field: Option<Field>,

    /// Truncation order for `integrate`.
    #[arg(long)]
    order: Option<usize>,

    /// Cohomological degree for `cohomology`.
    #[arg(long)]
    degree: Option<usize>,

    #[arg(long, value_name = "N")]
    guardrail_algebra_dim: Option<usize>,
    #[arg(long, value_name = "N")]
    guardrail_module_dim: Option<usize>,
    #[arg(long, value_name = "N")]
    guardrail_order: Option<usize>,
    #[arg(long, value_name = "N")]
    guardrail_degree: Option<usize>,
    #[arg(long, value_name = "N")]
    guardrail_entries: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    s.parse()
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> io::Result<()> {
    match output {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    if cli.fixtures {
        emit(&fixture_text(), cli.output.as_ref()).map_err(|e| e.to_string())?;
        return Ok(0);
    }
    let command = cli.command.expect("clap enforces a command");
    let text = read_input(cli.input.as_ref()).map_err(|e| format!("cannot read input: {e}"))?;
    let overrides = Overrides {
        field: cli.field,
        order: cli.order,
        degree: cli.degree,
        max_algebra_dim: cli.guardrail_algebra_dim,
        max_module_dim: cli.guardrail_module_dim,
        max_order: cli.guardrail_order,
        max_degree: cli.guardrail_degree,
        max_matrix_entries: cli.guardrail_entries,
    };
    let doc = parse_with(&text, &overrides).map_err(|e| e.to_string())?;
    let out = run(command, &doc).map_err(|e| e.to_string())?;
    emit(&out.render(), cli.output.as_ref()).map_err(|e| e.to_string())?;
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
