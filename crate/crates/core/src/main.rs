use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use surfres::pipeline::emit::{emit, list_targets, Format, Target};
use surfres::pipeline::{log, run, verify, InputFile, PipelineConfig, EXIT_CERTIFICATE, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "surfres", version, about = "Certified resolution of surface pairs in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on an input file and write the resolution log.
    Resolve {
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        degree_cap: Option<u32>,
        /// Also write the DOT diagram of the fiber tree over this point (e.g. "t=0").
        #[arg(long)]
        emit_tree: Option<String>,
        /// Also write the DOT diagram of this fan (index or crossing key).
        #[arg(long)]
        emit_fan: Option<String>,
        /// Log file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every certificate of a log.
    Verify { log: PathBuf },
    /// Draw a tree or fan recorded in a log.
    Emit(EmitArgs),
}

#[derive(Args)]
struct EmitArgs {
    log: PathBuf,
    #[arg(long, conflicts_with_all = ["fan", "list"])]
    tree: Option<String>,
    #[arg(long, conflicts_with = "list")]
    fan: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long, default_value = "dot")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sidecar(out: Option<&Path>, name: &str) -> PathBuf {
    let file = format!("{}.dot", name.replace(|c: char| !c.is_ascii_alphanumeric() && c != '-', "_"));
    match out.and_then(Path::parent) {
        Some(dir) => dir.join(file),
        None => PathBuf::from(file),
    }
}

fn resolve(
    input: &Path,
    seed: Option<u64>,
    degree_cap: Option<u32>,
    emit_tree: Option<String>,
    emit_fan: Option<String>,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let parsed = InputFile::load(input).and_then(|i| PipelineConfig::resolve(&i, seed, degree_cap).map(|c| (i, c)));
    let (input, cfg) = match parsed {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            return Ok(e.exit_code());
        }
    };
    let outcome = run(&input, &cfg);
    write(out.as_deref(), &outcome.text())?;
    let targets = [emit_tree.map(Target::Tree), emit_fan.map(Target::Fan)];
    for t in targets.into_iter().flatten() {
        let name = match &t {
            Target::Tree(p) => format!("tree-{p}"),
            Target::Fan(f) => format!("fan-{f}"),
        };
        let dot = emit(&outcome.entries, &t, Format::Dot)?;
        std::fs::write(sidecar(out.as_deref(), &name), dot).map_err(|e| e.to_string())?;
    }
    match &outcome.error {
        None => eprintln!("resolution certificate: pass"),
        Some(e) => eprintln!("{e} [{}]", e.code),
    }
    Ok(outcome.exit_code())
}

fn main_inner(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Resolve { input, seed, degree_cap, emit_tree, emit_fan, out } => {
            resolve(&input, seed, degree_cap, emit_tree, emit_fan, out)
        }
        Command::Verify { log } => {
            let report = verify(&read(&log)?);
            println!("{}", report.render());
            Ok(if report.passed() { 0 } else { EXIT_CERTIFICATE })
        }
        Command::Emit(a) => {
            let entries = log::parse_text(&read(&a.log)?)?;
            let text = match (a.tree, a.fan, a.list) {
                (Some(p), _, _) => emit(&entries, &Target::Tree(p), a.format)?,
                (_, Some(f), _) => emit(&entries, &Target::Fan(f), a.format)?,
                _ => list_targets(&entries),
            };
            write(a.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
