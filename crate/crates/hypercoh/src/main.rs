use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypercoh::{run, Command, FieldChoice, Input, JobSpec, OutputFormat};
use hypercoh_core::godement::Engine;

/// Exact sheaf hypercohomology on finite posets.
#[derive(Parser, Debug)]
#[command(name = "hypercoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Betti numbers of derived sections over an open.
    Cohomology(Args),
    /// Product structure constants on hypercohomology.
    Ring(Args),
    /// Descent diagnostics for the hypercohomology sheaf.
    DescentCheck(Args),
    /// Pages of the spectral sequence of the filtered simple.
    Spectral(Args),
    /// Betti numbers of the derived direct image along a monotone map.
    DirectImage(Args),
    /// Validate every structure in the input.
    Validate(Args),
}

#[derive(clap::Args, Debug)]
struct Args {
    /// Input document, or `builtin:NAME` for a bundled example.
    input: String,
    /// Degree bound.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = EngineArg::Aw)]
    engine: EngineArg,
    /// `Q` or a prime (2, 3, 5, 7, 11, 13, 101, 32003, 65521).
    #[arg(long, default_value = "Q")]
    field: FieldChoice,
    /// Comma-separated elements of an up-set.
    #[arg(long, value_delimiter = ',')]
    open: Option<Vec<String>>,
    /// Monotone map file, or `builtin:NAME`.
    #[arg(long)]
    map: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Spectral sequence page; the stable page when omitted.
    #[arg(long)]
    page: Option<usize>,
    /// Use the filtration sigma_r on the simple.
    #[arg(long, default_value_t = 0)]
    sigma: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Aw,
    Tw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, a) = match cli.command {
        Cmd::Cohomology(a) => (Command::Cohomology, a),
        Cmd::Ring(a) => (Command::Ring, a),
        Cmd::DescentCheck(a) => (Command::DescentCheck, a),
        Cmd::Spectral(a) => (Command::Spectral, a),
        Cmd::DirectImage(a) => (Command::DirectImage, a),
        Cmd::Validate(a) => (Command::Validate, a),
    };
    let job = JobSpec {
        input: Input::from_arg(&a.input),
        command,
        degree: a.degree,
        engine: match a.engine {
            EngineArg::Aw => Engine::Aw,
            EngineArg::Tw => Engine::Tw,
        },
        field: a.field,
        format: match a.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        },
        open: a.open,
        map: a.map.as_deref().map(Input::from_arg),
        page: a.page,
        sigma: a.sigma,
    };
    let out = run(&job);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
