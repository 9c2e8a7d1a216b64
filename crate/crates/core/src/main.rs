use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nutkit::census::{self, check_one, kernel_text, run_census};
use nutkit::classify::TablePoly;
use nutkit::exactla::graph_kernel;
use nutkit::voltage::{build_family, Family, FamilyParams};
use nutkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "nutkit",
    version,
    about = "Cubic poly-circulant nut graph toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report all three verdicts for one family member.
    Check(Instance),
    /// Exhaustive census with three-way cross-verification.
    Census(CensusArgs),
    /// Regenerate the Phi_f | Q (a) or Phi_f | R (b) residue tables.
    Appendix(AppendixArgs),
    /// Print the normalised kernel basis, one integer per line.
    Kernel {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph in adjacency-list format.
    Graph {
        #[command(flatten)]
        instance: Instance,
        #[arg(long = "emit-graph")]
        emit_graph: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Instance {
    /// t1, t2, t3, t4, b1, b2, b3 or circulant
    family: String,
    n: u64,
    a: u64,
    b: Option<u64>,
}

impl Instance {
    fn params(&self) -> Result<FamilyParams> {
        let family: Family = self.family.parse()?;
        FamilyParams::new(family, self.n, self.a, self.b)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    B,
}

#[derive(Args)]
struct CensusArgs {
    /// Comma-separated family tags; all families when omitted.
    #[arg(long, value_delimiter = ',')]
    families: Vec<String>,
    #[arg(long = "n-max", default_value_t = 60)]
    n_max: u64,
    #[arg(long, env = "NUTKIT_WORKERS")]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AppendixArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn usage_hint(e: Error, command: &str, instance: &Instance) -> Error {
    match e {
        Error::InvalidParams(msg) => Error::InvalidParams(format!(
            "{msg}\nusage: nutkit {command} <family> <n> <a> [b]  (got {} {} {}{})",
            instance.family,
            instance.n,
            instance.a,
            instance.b.map(|b| format!(" {b}")).unwrap_or_default()
        )),
        other => other,
    }
}

/// Ok(true) when every verdict agreed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check(instance) => {
            let params = instance
                .params()
                .map_err(|e| usage_hint(e, "check", &instance))?;
            let report = check_one(params)?;
            let record = report.evaluation.record();
            let mut out = io::stdout().lock();
            write!(out, "{report}")?;
            writeln!(out, "agree       {}", record.agree)?;
            Ok(record.agree)
        }
        Command::Census(args) => {
            let families = if args.families.is_empty() {
                Family::ALL.to_vec()
            } else {
                args.families
                    .iter()
                    .map(|f| f.parse())
                    .collect::<Result<Vec<Family>>>()?
            };
            let workers = args
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let result = run_census(&families, args.n_max, workers)?;
            let mut out = sink(&args.out)?;
            match args.format {
                Format::Csv => census::write_csv(&result.records, &mut out)?,
                Format::Json => census::write_json(&result.records, &mut out)?,
            }
            out.flush()?;
            let summary = &result.summary;
            eprintln!(
                "{} tuples, {} nut graphs, {} disagreements",
                summary.tuples,
                summary.nut,
                summary.disagreements.len()
            );
            for c in summary.per_family_n.iter().filter(|c| c.nut > 0) {
                eprintln!("  {} n = {}: {} nut of {}", c.family, c.n, c.nut, c.tuples);
            }
            for r in &summary.disagreements {
                eprintln!("DISAGREEMENT: {}", r.params());
            }
            Ok(summary.disagreements.is_empty())
        }
        Command::Appendix(args) => {
            let which = match args.which {
                Which::A => TablePoly::Q,
                Which::B => TablePoly::R,
            };
            match &args.out {
                Some(path) => census::emit_appendix(which, path)?,
                None => io::stdout()
                    .lock()
                    .write_all(census::appendix_csv(which)?.as_bytes())?,
            }
            Ok(true)
        }
        Command::Kernel { instance, out } => {
            let params = instance
                .params()
                .map_err(|e| usage_hint(e, "kernel", &instance))?;
            let kernel = graph_kernel(&build_family(&params)?);
            if kernel.dimension() == 0 {
                eprintln!("{params} has nullity 0");
            }
            let mut sink = sink(&out)?;
            sink.write_all(kernel_text(&kernel).as_bytes())?;
            sink.flush()?;
            Ok(true)
        }
        Command::Graph {
            instance,
            emit_graph,
        } => {
            let params = instance
                .params()
                .map_err(|e| usage_hint(e, "graph", &instance))?;
            let graph = build_family(&params)?;
            let mut sink = sink(&emit_graph)?;
            sink.write_all(graph.to_adjacency_text().as_bytes())?;
            sink.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        // a closed pipe on stdout (e.g. `| head`) is not an error
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
