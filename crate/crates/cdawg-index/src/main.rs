use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cdawg_index::cdawg::{Cdawg, LabelMode};
use cdawg_index::glpf::{expand_glpf, irreducible_plcp, qirr_glpf};
use cdawg_index::order::OrderedCdawg;
use cdawg_index::parse::{lex_parse, lz_parse};
use cdawg_index::rlbwt::rec_rbwt;
use cdawg_index::text::{self, Text, DEFAULT_MAX_N};
use cdawg_index::{fmt as ofmt, verify, LowerOrder};

const MAX_N_ENV: &str = "CDAWG_INDEX_MAX_N";

#[derive(Parser)]
#[command(name = "cdawg-index", version, about = "CDAWG-based conversions to RLBWT, PLCP/LPF, and greedy parses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a text body (raw bytes, no terminator on disk)
    Generate(GenerateArgs),
    /// Convert a text file to one of the index arrays or parses
    Convert(ConvertArgs),
    /// Cross-check every conversion against brute-force oracles
    Verify(VerifyArgs),
    /// Sweep a text family and record size/counter measurements as CSV
    Bench(BenchArgs),
    /// Serialize and validate CDAWG graphs
    Graph(GraphArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ThueMorse,
    Fibonacci,
    Random,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::ThueMorse => "thue-morse",
            Family::Fibonacci => "fibonacci",
            Family::Random => "random",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Text,
    TextFree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Rlbwt,
    Plcp,
    Lpf,
    IrrPlcp,
    LexParse,
    LzParse,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    /// Family order k (thue-morse, fibonacci)
    #[arg(long)]
    order: Option<u32>,
    /// Body length (random)
    #[arg(long)]
    len: Option<usize>,
    /// Alphabet size (random)
    #[arg(long, default_value_t = 2)]
    sigma: u16,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the maximum text length n
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(long)]
    to: Target,
    #[arg(long, value_enum, default_value_t = Mode::Text)]
    mode: Mode,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Treat the input as a serialized graph instead of a raw text
    #[arg(long)]
    graph: bool,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: Family,
    /// Inclusive order range, e.g. 5..25
    #[arg(long, value_parser = parse_range)]
    order_range: (u32, u32),
    #[arg(long, default_value_t = 2)]
    sigma: u16,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(subcommand)]
    command: GraphCommand,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Build the CDAWG of a text file and write it as JSON
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Text)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Validate a serialized graph, naming the violated invariant on failure
    Check { input: PathBuf },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| "expected A..B (inclusive)".to_string())?;
    let lo: u32 = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u32 = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err("empty range".to_string());
    }
    Ok((lo, hi))
}

/// Failure mode decides the exit code: mismatches exit 1, everything
/// else (I/O, caps, bad flag combinations) exits 2.
enum Failure {
    Mismatch(String),
    Invalid(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args).map_err(Into::into),
        Command::Convert(args) => cmd_convert(args).map_err(Into::into),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Graph(args) => cmd_graph(args),
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .parse()
            .with_context(|| format!("{MAX_N_ENV} must be an integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(bytes)
            .context("writing to stdout"),
    }
}

fn generate(family: Family, args: &GenerateArgs, cap: usize) -> Result<Text> {
    let need_order = || {
        args.order
            .with_context(|| format!("--order is required for --family {}", family.name()))
    };
    let t = match family {
        Family::ThueMorse => text::thue_morse_with_cap(need_order()?, cap)?,
        Family::Fibonacci => {
            let k = need_order()?;
            if k == 0 {
                bail!("fibonacci order must be >= 1");
            }
            text::fibonacci_with_cap(k, cap)?
        }
        Family::Random => {
            let len = args.len.context("--len is required for --family random")?;
            text::random_text_with_cap(len, args.sigma, args.seed, cap)?
        }
    };
    Ok(t)
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let cap = resolve_cap(args.max_n)?;
    let t = generate(args.family, &args, cap)?;
    emit(&args.out, t.body())
}

fn load_text(path: &PathBuf, cap: usize) -> Result<Text> {
    let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Text::normalize_with_cap(&raw, cap)?)
}

fn annotate(t: &Text, mode: Mode) -> OrderedCdawg {
    let g = Cdawg::build(t);
    let g = match mode {
        Mode::Text => g,
        Mode::TextFree => g.strip_text(),
    };
    OrderedCdawg::annotate(g)
}

fn cmd_convert(args: ConvertArgs) -> Result<()> {
    let cap = resolve_cap(args.max_n)?;
    let t = load_text(&args.input, cap)?;
    let n = t.n();
    let oc = annotate(&t, args.mode);
    let rendered = match args.to {
        Target::Rlbwt => ofmt::write_rlbwt(&rec_rbwt(&oc), n),
        Target::Plcp => {
            let s = qirr_glpf(&oc, LowerOrder::Lex);
            ofmt::write_array("plcp", &expand_glpf(&s, n)?)
        }
        Target::Lpf => {
            let s = qirr_glpf(&oc, LowerOrder::Pos);
            ofmt::write_array("lpf", &expand_glpf(&s, n)?)
        }
        Target::IrrPlcp => {
            let s = qirr_glpf(&oc, LowerOrder::Lex);
            ofmt::write_irr_plcp(&irreducible_plcp(&s, &rec_rbwt(&oc))?, n)
        }
        Target::LexParse => ofmt::write_parse(&lex_parse(&qirr_glpf(&oc, LowerOrder::Lex), n)?, n),
        Target::LzParse => ofmt::write_parse(&lz_parse(&qirr_glpf(&oc, LowerOrder::Pos), n)?, n),
    };
    emit(&args.out, rendered.as_bytes())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cap = resolve_cap(args.max_n)?;
    let t = if args.graph {
        let raw = fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))
            .map_err(Failure::Invalid)?;
        let g = Cdawg::from_json(&raw)
            .map_err(|e| Failure::Mismatch(format!("graph invariant violated: {e}")))?;
        let Some(bytes) = g.text() else {
            println!("graph\tok\tvalid text-free graph, oracle checks need a text");
            return Ok(());
        };
        let body = &bytes[..bytes.len() - 1];
        Text::normalize_with_cap(body, cap)
            .context("embedded text")
            .map_err(Failure::Invalid)?
    } else {
        load_text(&args.input, cap)?
    };
    if t.n() > verify::ORACLE_CAP {
        return Err(Failure::Invalid(anyhow::anyhow!(
            "n = {} exceeds the oracle cap {} for verify",
            t.n(),
            verify::ORACLE_CAP
        )));
    }
    let checks = verify::verify_text(&t);
    for c in &checks {
        let status = if c.ok { "ok" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{}\t{status}", c.name);
        } else {
            println!("{}\t{status}\t{}", c.name, c.detail);
        }
    }
    if verify::all_passed(&checks) {
        Ok(())
    } else {
        Err(Failure::Mismatch("oracle verification failed".to_string()))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let cap = resolve_cap(args.max_n)?;
    let mut csv = String::from(
        "family,k,n,nodes,e_r,r,z,lex_phrases,visited_upward,visited_downward_lex,\
         visited_downward_pos,visited_nleaves,visited_rlbwt,visited_glpf_lex,visited_glpf_pos,\
         build_ms,convert_ms\n",
    );
    let (lo, hi) = args.order_range;
    if matches!(args.family, Family::Fibonacci) && lo == 0 {
        return Err(Failure::Invalid(anyhow::anyhow!(
            "fibonacci order must be >= 1"
        )));
    }
    for k in lo..=hi {
        let t = match args.family {
            Family::ThueMorse => text::thue_morse_with_cap(k, cap),
            Family::Fibonacci => text::fibonacci_with_cap(k, cap),
            Family::Random => {
                text::random_text_with_cap(1usize << k.min(62), args.sigma, args.seed, cap)
            }
        }
        .with_context(|| format!("order {k}"))?;
        let started = Instant::now();
        let oc = OrderedCdawg::annotate(Cdawg::build(&t));
        let build_ms = started.elapsed().as_millis();
        let started = Instant::now();
        let r = rec_rbwt(&oc);
        let s_lex = qirr_glpf(&oc, LowerOrder::Lex);
        let s_pos = qirr_glpf(&oc, LowerOrder::Pos);
        let lex = lex_parse(&s_lex, t.n()).context("lex-parse")?;
        let lz = lz_parse(&s_pos, t.n()).context("lz-parse")?;
        let convert_ms = started.elapsed().as_millis();
        let stats = oc.graph().stats();
        if r.r() > stats.e_r || lz.u() > stats.e_r {
            return Err(Failure::Mismatch(format!(
                "size bound violated at k={k}: r={} z={} e_r={}",
                r.r(),
                lz.u(),
                stats.e_r
            )));
        }
        let c = &oc.counters;
        writeln!(
            csv,
            "{},{k},{},{},{},{},{},{},{},{},{},{},{},{},{},{build_ms},{convert_ms}",
            args.family.name(),
            stats.n,
            stats.nodes,
            stats.e_r,
            r.r(),
            lz.u(),
            lex.u(),
            c.upward,
            c.downward_lex,
            c.downward_pos,
            c.nleaves,
            r.visited,
            s_lex.visited,
            s_pos.visited,
        )
        .unwrap();
    }
    emit(&args.out, csv.as_bytes())?;
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> Result<(), Failure> {
    match args.command {
        GraphCommand::Export {
            input,
            mode,
            out,
            max_n,
        } => {
            let cap = resolve_cap(max_n)?;
            let t = load_text(&input, cap)?;
            let oc = annotate(&t, mode);
            emit(&out, oc.graph().to_json().as_bytes())?;
            Ok(())
        }
        GraphCommand::Check { input } => {
            let raw = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))
                .map_err(Failure::Invalid)?;
            match Cdawg::from_json(&raw) {
                Ok(g) => {
                    let stats = g.stats();
                    let mode = match g.mode() {
                        LabelMode::WithText => "with-text",
                        LabelMode::TextFree => "text-free",
                    };
                    println!(
                        "ok\tn={}\tnodes={}\te_r={}\tmode={mode}",
                        stats.n, stats.nodes, stats.e_r
                    );
                    Ok(())
                }
                Err(e) => Err(Failure::Mismatch(format!("graph invariant violated: {e}"))),
            }
        }
    }
}
