use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::LevelFilter;

use logres::cli_io::{emit_dot, emit_trace, parse_problem, ProblemSpec};
use logres::kummer_blowup::{blow_up, controlled_transform};
use logres::log_calculus::{monomial_saturation, KummerCenter, Scope};
use logres::resolution_engine::{
    check_admissibility, check_invariant_decrease, check_leaves, invariant, order_reduce, principalize,
    resolve_embedded, BlowupTree, Config,
};
use logres::toroidal_chart::Chart;
use logres::{Error, Poly};

/// Principalization of polynomial ideals on affine toroidal charts.
#[derive(Parser)]
#[command(name = "logres", version)]
struct Cli {
    /// Only report errors.
    #[arg(short, long, global = true)]
    quiet: bool,
    /// More log output; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Principalize the ideal of the problem file.
    Principalize(RunArgs),
    /// Reduce the order of the marked ideal below its mark.
    OrderReduce(RunArgs),
    /// Print the monomial saturation and the factorization after the
    /// cleaning blowup.
    Clean(InputArgs),
    /// Print the invariant string of the marked ideal.
    Invariant {
        #[command(flatten)]
        input: InputArgs,
        /// Number of maximal contact passages allowed.
        #[arg(long, default_value_t = 0)]
        k0: usize,
    },
    /// Embedded resolution of the subvariety cut out by the ideal.
    Resolve {
        #[command(flatten)]
        run: RunArgs,
        /// Codimension of the subvariety; overrides the problem file.
        #[arg(long)]
        codim: Option<usize>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Problem file (JSON).
    input: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the trace document to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write a Graphviz rendering of the tree to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Largest number of blowups along any path; overrides the problem file.
    #[arg(long)]
    max_depth: Option<usize>,
}

/// Failure of a command, reported as one JSON record on stderr.
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind().to_string(), message: e.to_string() }
    }
}

fn failure(kind: &str, message: impl Into<String>) -> Failure {
    Failure { kind: kind.to_string(), message: message.into() }
}

fn init_logging(cli: &Cli, spec: Option<&ProblemSpec>) {
    let configured = spec.and_then(|s| s.config.verbosity.as_deref()).and_then(|v| v.parse::<LevelFilter>().ok());
    let level = if cli.quiet {
        LevelFilter::Error
    } else {
        match cli.verbose {
            0 => configured.unwrap_or(LevelFilter::Warn),
            1 => LevelFilter::Info,
            2 => LevelFilter::Debug,
            _ => LevelFilter::Trace,
        }
    };
    let _ = env_logger::Builder::new().filter_level(level).parse_env("LOGRES_LOG").try_init();
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| failure("IoError", format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(Failure::from)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| failure("IoError", format!("{}: {e}", path.display())))
}

fn config(spec: &ProblemSpec, args: &RunArgs) -> Config {
    let mut c = spec.config();
    if let Some(d) = args.max_depth {
        c.max_depth = d;
    }
    c
}

fn verify(tree: &BlowupTree) -> Result<(), Failure> {
    check_leaves(tree)
        .and_then(|_| check_invariant_decrease(tree))
        .and_then(|_| check_admissibility(tree))
        .map_err(|m| failure("CheckFailed", m))
}

fn report(tree: &BlowupTree, args: &RunArgs, quiet: bool) -> Result<(), Failure> {
    verify(tree)?;
    if let Some(p) = &args.trace {
        write(p, &emit_trace(tree))?;
    }
    if let Some(p) = &args.dot {
        write(p, &emit_dot(tree))?;
    }
    if !quiet {
        println!(
            "{}: {} nodes, {} blowups, {} leaves",
            tree.mode.as_str(),
            tree.nodes.len(),
            tree.blowup_count(),
            tree.leaves().count()
        );
        for n in tree.leaves() {
            println!("  {} {} exceptional {}", n.id, n.status.as_str(), n.chart.format(&n.exceptional));
        }
    }
    Ok(())
}

fn ideal_text(chart: &Chart, gens: &[Poly]) -> String {
    if gens.is_empty() {
        return "(0)".to_string();
    }
    format!("({})", chart.format_all(gens).join(", "))
}

fn clean(spec: &ProblemSpec) -> Result<(), Failure> {
    let chart = spec.build_chart()?;
    let m = spec.marked(&chart)?;
    let sat = monomial_saturation(Scope::full(&chart), &m.ideal)?;
    let gens: Vec<Poly> = sat.iter().map(|v| chart.monomial_poly(v).expect("saturation lies in the monoid")).collect();
    println!("M(I) = {}", ideal_text(&chart, &gens));
    if sat.is_empty() || sat.iter().any(|v| v.iter().all(|&x| x == 0)) {
        println!("no cleaning blowup needed");
        return Ok(());
    }
    let result = blow_up(&chart, &KummerCenter::new(Vec::new(), sat, i64::try_from(m.mark).expect("mark fits")))?;
    println!("center {}", result.center.describe(&chart));
    for bc in &result.charts {
        let t = controlled_transform(&m, bc)?;
        let canon = bc.chart.ring().canonical(&t.ideal);
        println!(
            "chart {} [{}]: I = ({})^{} * {}",
            bc.chart.id,
            bc.generator,
            bc.chart.format(&bc.exceptional),
            m.mark,
            ideal_text(&bc.chart, &canon)
        );
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let path = match &cli.command {
        Command::Principalize(a) | Command::OrderReduce(a) | Command::Resolve { run: a, .. } => &a.input.input,
        Command::Clean(i) | Command::Invariant { input: i, .. } => &i.input,
    };
    let spec = load(path);
    init_logging(cli, spec.as_ref().ok());
    let spec = spec?;
    match &cli.command {
        Command::Principalize(args) => {
            let chart = spec.build_chart()?;
            if spec.mark != 1 {
                log::warn!("principalization uses mark 1; the mark {} of the problem file is ignored", spec.mark);
            }
            let tree = principalize(&chart, &spec.ideal(&chart)?, &config(&spec, args))?;
            report(&tree, args, cli.quiet)
        }
        Command::OrderReduce(args) => {
            let chart = spec.build_chart()?;
            let tree = order_reduce(&chart, &spec.marked(&chart)?, &config(&spec, args))?;
            report(&tree, args, cli.quiet)
        }
        Command::Clean(_) => clean(&spec),
        Command::Invariant { k0, .. } => {
            let chart = spec.build_chart()?;
            println!("{}", invariant(&chart, &spec.marked(&chart)?, *k0)?);
            Ok(())
        }
        Command::Resolve { run, codim } => {
            let chart = spec.build_chart()?;
            let d = codim.or(spec.codim).unwrap_or(1);
            let r = resolve_embedded(&chart, &spec.ideal(&chart)?, d, &config(&spec, run))?;
            report(&r.tree, run, true)?;
            if !cli.quiet {
                println!("stage {}", r.stage);
                for z in &r.charts {
                    println!("  {} chain [{}]: {}", z.node, z.chain.join(", "), z.chart.describe());
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let record = serde_json::json!({ "error": f.kind, "message": f.message });
            eprintln!("{record}");
            ExitCode::FAILURE
        }
    }
}
