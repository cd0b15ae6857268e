use std::io::IsTerminal;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use weil_cli::report::SCHEMA_VERSION;
use weil_cli::script::object_of;
use weil_cli::{exit, parse_object, run_script, Report, ScriptError};
use weil_core::{build_catalog, verify_all, Fault, HarnessConfig};

#[derive(Parser, Debug)]
#[command(name = "weil", version, about = "Exact checks of limit diagrams of Weil algebras")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the random compatible tuples used by the mediator checks.
    #[arg(long, global = true, default_value_t = HarnessConfig::default().seed)]
    seed: u64,

    /// Worker threads; 1 runs the checks sequentially.
    #[arg(long, global = true, value_name = "K")]
    parallel: Option<usize>,

    /// Include per-check wall-clock times.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every built-in verification.
    VerifyPaper {
        /// Random compatible tuples per mediator check.
        #[arg(long, default_value_t = HarnessConfig::default().samples)]
        samples: usize,
        /// Corrupt the input on purpose; the affected checks should fail.
        #[arg(long, value_enum)]
        fault: Vec<FaultArg>,
    },
    /// Execute a check script.
    Run { file: PathBuf },
    /// Print the dimension of the Weil algebra of an object expression.
    Dim { expr: String },
    /// List the built-in objects and maps with their locations.
    Catalog,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    /// Use D^8 as the apex of Lemma 3.15.
    FreeApex,
    /// Read h^1_31 as printed.
    PrintedH31,
}

fn color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn emit_report(report: &Report, json: bool) -> i32 {
    if json {
        println!("{}", report.to_json());
    } else if report.error.is_some() {
        eprint!("{}", report.to_text(false));
    } else {
        print!("{}", report.to_text(color()));
    }
    report.exit_code
}

fn verify_paper(cli: &Cli, samples: usize, faults: &[FaultArg]) -> i32 {
    let config = HarnessConfig {
        seed: cli.seed,
        samples,
        faults: faults
            .iter()
            .map(|f| match f {
                FaultArg::FreeApex => Fault::FreeApex,
                FaultArg::PrintedH31 => Fault::PrintedH31,
            })
            .collect(),
        parallel: cli.parallel != Some(1),
    };
    let summary = verify_all(&config);
    let report = Report::from_checks("verify-paper", Some(cli.seed), &summary.checks, cli.timings);
    let code = emit_report(&report, cli.json);
    if !cli.json && cli.timings {
        println!("total {:.1} ms", summary.elapsed.as_secs_f64() * 1e3);
    }
    code
}

fn run(cli: &Cli, file: &PathBuf) -> i32 {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return exit::USAGE;
        }
    };
    let report = match run_script(&src, cli.parallel != Some(1)) {
        Ok(results) => Report::from_checks("run", None, &results, cli.timings),
        Err(e) => Report::from_error("run", &e),
    };
    emit_report(&report, cli.json)
}

#[derive(Serialize)]
struct DimReport {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    object: String,
    arity: usize,
    dim: usize,
}

fn dim(cli: &Cli, expr: &str) -> i32 {
    let catalog = match build_catalog() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::CHECK_FAILED;
        }
    };
    let resolved = parse_object(expr).and_then(|e| object_of(&e, &|name| catalog.object(name).ok().cloned()));
    let obj = match resolved {
        Ok(o) => o,
        Err(e) => return dim_error(cli, &e),
    };
    if cli.json {
        let r = DimReport {
            schema_version: SCHEMA_VERSION,
            tool: "weil",
            version: env!("CARGO_PKG_VERSION"),
            command: "dim",
            object: obj.to_string(),
            arity: obj.arity(),
            dim: obj.dim(),
        };
        println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
    } else {
        println!("{}", obj.dim());
    }
    exit::OK
}

fn dim_error(cli: &Cli, e: &ScriptError) -> i32 {
    emit_report(&Report::from_error("dim", e), cli.json)
}

#[derive(Serialize)]
struct CatalogReport {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    objects: Vec<ObjectRow>,
    maps: Vec<MapRow>,
    rejected: Vec<RejectedRow>,
}

#[derive(Serialize)]
struct ObjectRow {
    name: &'static str,
    object: String,
    dim: usize,
    location: &'static str,
}

#[derive(Serialize)]
struct MapRow {
    name: &'static str,
    source: String,
    target: String,
    components: Vec<String>,
    location: &'static str,
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct RejectedRow {
    name: &'static str,
    printed: &'static str,
    location: &'static str,
    error: String,
    replacement: &'static str,
}

fn catalog(cli: &Cli) -> i32 {
    let cat = match build_catalog() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::CHECK_FAILED;
        }
    };
    let r = CatalogReport {
        schema_version: SCHEMA_VERSION,
        tool: "weil",
        version: env!("CARGO_PKG_VERSION"),
        command: "catalog",
        objects: cat
            .objects()
            .iter()
            .map(|o| ObjectRow {
                name: o.name,
                object: o.object.to_string(),
                dim: o.object.dim(),
                location: o.location,
            })
            .collect(),
        maps: cat
            .maps()
            .iter()
            .map(|m| MapRow {
                name: m.name,
                source: m.map.source().to_string(),
                target: m.map.target().to_string(),
                components: m.map.components().iter().map(|c| weil_core::element_to_expr(c).to_string()).collect(),
                location: m.location,
                note: m.note,
            })
            .collect(),
        rejected: cat
            .rejected()
            .iter()
            .map(|x| RejectedRow {
                name: x.name,
                printed: x.printed,
                location: x.location,
                error: x.error.to_string(),
                replacement: x.replacement,
            })
            .collect(),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
        return exit::OK;
    }
    println!("objects ({})", r.objects.len());
    for o in &r.objects {
        println!("  {:<20} dim {:<3} {:<40} {}", o.name, o.dim, o.object, o.location);
    }
    println!("maps ({})", r.maps.len());
    for m in &r.maps {
        println!("  {:<18} {} -> {}  ({})  {}", m.name, m.source, m.target, m.components.join(", "), m.location);
        if let Some(n) = m.note {
            println!("  {:<18} {n}", "");
        }
    }
    println!("rejected readings ({})", r.rejected.len());
    for x in &r.rejected {
        println!("  {:<18} {}  {}", x.name, x.printed, x.location);
        println!("  {:<18} {}; using {}", "", x.error, x.replacement);
    }
    exit::OK
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            process::exit(code);
        }
    };
    if let Some(k) = cli.parallel {
        if k == 0 {
            eprintln!("error: --parallel must be at least 1");
            process::exit(exit::USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .expect("global pool is configured once");
    }
    let code = match &cli.command {
        Command::VerifyPaper { samples, fault } => verify_paper(&cli, *samples, fault),
        Command::Run { file } => run(&cli, file),
        Command::Dim { expr } => dim(&cli, expr),
        Command::Catalog => catalog(&cli),
    };
    process::exit(code);
}
