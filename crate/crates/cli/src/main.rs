use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tropical_core::io::{dispatch, Command, Options};
use tropical_core::scalars::parse_rat_list;

#[derive(Parser)]
#[command(name = "tropical", version, about = "Tropical points and links of polynomial ideals over valued fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tropical variety of a zero-dimensional system
    Zerodim(Args),
    /// A random non-trivial tropical point
    Point(Args),
    /// Rays of a tropical curve modulo its lineality space
    Link(Args),
    /// Expected Newton polygons at a weight prefix
    Newton(Args),
    /// Triangular decomposition
    Triangulate(Args),
    /// Reduced Gröbner basis
    Groebner(Args),
    /// Check weights against the generators
    Verify(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
    Invlex,
    Weighted,
}

#[derive(clap::Args)]
struct Args {
    /// Ideal file
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    max_attempts: usize,
    #[arg(long, default_value_t = 64)]
    precision_cap: u32,
    /// Substitute pure powers of the uniformizer
    #[arg(long)]
    pure_powers: bool,
    /// Random unimodular change of coordinates before slicing
    #[arg(long)]
    precondition: bool,
    /// Slice at exponents -1 and 1 instead of around the base point
    #[arg(long)]
    fixed_exponents: bool,
    /// Print the full JSON document instead of a summary
    #[arg(long)]
    json: bool,
    /// Include per-level choice traces
    #[arg(long)]
    trace: bool,
    /// Comma separated rationals, e.g. 0,-2,1/2
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Order::Degrevlex)]
    order: Order,
    /// Record wall time in the document
    #[arg(long)]
    timing: bool,
    /// Only the first point (zerodim)
    #[arg(long)]
    single: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).format_timestamp(None).init();
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Zerodim(a) => (Command::Zerodim, a),
        Cmd::Point(a) => (Command::Point, a),
        Cmd::Link(a) => (Command::Link, a),
        Cmd::Newton(a) => (Command::Newton, a),
        Cmd::Triangulate(a) => (Command::Triangulate, a),
        Cmd::Groebner(a) => (Command::Groebner, a),
        Cmd::Verify(a) => (Command::Verify, a),
    };
    if let Some(j) = args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let weight = match args.weight.as_deref().map(parse_rat_list) {
        Some(None) => {
            eprintln!("error: --weight expects comma separated rationals");
            return ExitCode::from(1);
        }
        Some(Some(w)) => Some(w),
        None => None,
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let opts = Options {
        seed: args.seed,
        max_attempts: args.max_attempts,
        precision_cap: args.precision_cap,
        pure_powers: args.pure_powers,
        precondition: args.precondition,
        fixed_exponents: args.fixed_exponents,
        trace: args.trace,
        weight,
        order: match args.order {
            Order::Lex => "lex",
            Order::Degrevlex => "degrevlex",
            Order::Invlex => "invlex",
            Order::Weighted => "weighted",
        }
        .into(),
        timing: args.timing,
        single: args.single,
    };
    let (doc, code) = dispatch(command, &opts, &args.file.display().to_string(), &text);
    if args.json {
        let mut out = std::io::stdout().lock();
        // A closed pipe is not worth a panic.
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
    } else {
        print_summary(&doc);
    }
    ExitCode::from(code as u8)
}

fn print_summary(doc: &serde_json::Value) {
    let status = doc["status"].as_str().unwrap_or("");
    if !doc["error"].is_null() {
        eprintln!("error ({}): {}", doc["error"]["kind"].as_str().unwrap_or(""), doc["error"]["message"].as_str().unwrap_or(""));
        return;
    }
    let out = &doc["outputs"];
    let vec = |v: &serde_json::Value| -> String {
        let parts: Vec<&str> = v.as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect()).unwrap_or_default();
        format!("({})", parts.join(", "))
    };
    match doc["command"].as_str().unwrap_or("") {
        "zerodim" | "verify" => {
            for p in out["points"].as_array().into_iter().flatten() {
                println!("{}", vec(p));
            }
        }
        "point" => println!("{}", vec(&out["point"])),
        "link" => {
            println!("valency {}", out["valency"]);
            for r in out["rays"].as_array().into_iter().flatten() {
                println!("{}", vec(r));
            }
            for w in out["warnings"].as_array().into_iter().flatten() {
                eprintln!("warning: {}", w.as_str().unwrap_or(""));
            }
        }
        _ => println!("{}", serde_json::to_string_pretty(out).expect("documents serialize")),
    }
    if status != "ok" {
        eprintln!("status: {status}");
    }
}
