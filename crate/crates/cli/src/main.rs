use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use colorhom::grading::DegreeWindow;
use colorhom_cli::spec::WindowDoc;
use colorhom_cli::{execute, Command, Overrides, EXIT_ERROR};

/// Exact graded cohomology of color Lie algebras from a JSON problem spec.
#[derive(Parser, Debug)]
#[command(name = "colorhom", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    spec: PathBuf,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    p_max: Option<usize>,
    #[arg(long)]
    word_len: Option<usize>,
    /// `all`, or a JSON list of degrees such as `[[0],[1]]`.
    #[arg(long)]
    degree_window: Option<String>,
    /// Plain-text tables instead of JSON.
    #[arg(long)]
    pretty: bool,
    /// Write every cochain matrix as JSON into this directory.
    #[arg(long, value_name = "DIR")]
    dump_matrices: Option<PathBuf>,
}

fn window(arg: &str) -> Result<DegreeWindow, String> {
    if arg == "all" {
        return Ok(DegreeWindow::All);
    }
    match serde_json::from_str::<WindowDoc>(arg) {
        Ok(WindowDoc::List(list)) => Ok(DegreeWindow::List(
            list.into_iter()
                .map(|exponents| colorhom::GroupElement { exponents })
                .collect(),
        )),
        _ => Err(format!(
            "invalid --degree-window {arg:?}: expected `all` or a list like [[0],[1]]"
        )),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let degree_window = match args.degree_window.as_deref().map(window).transpose() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let overrides = Overrides {
        n_max: args.n_max,
        p_max: args.p_max,
        word_len: args.word_len,
        degree_window,
        dump_matrices: args.dump_matrices,
    };
    match execute(args.command, &args.spec, &overrides, args.pretty) {
        Ok((code, out)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
