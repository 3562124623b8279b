//! `sspcert`: certify membership in `G^SSP`, check matrices, replay
//! certificates and run batch censuses.
//!
//! Exit codes: 0 = in / true / sound, 1 = out / false / unsound,
//! 2 = unknown, 64 = usage or parse error, 74 = I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sspgraph::census::{census, VerdictRecord};
use sspgraph::classify::{classify_with, ClassifyOptions, Verdict, DEFAULT_TRIALS};
use sspgraph::document::{Document, ReplayOutcome};
use sspgraph::forcing::{close, ForcingStep};
use sspgraph::formats::{parse_edge_list, parse_graph6};
use sspgraph::refute::{
    barbell_search, barbell_witness, cocktail_witness, complement_path_witness, g98_witness,
    g99_witness, kn_minus_c4_witness, regular_witness, sample_refute, Witness, BARBELL_CAP,
};
use sspgraph::strong::{has_property, property_witness, PropertyKind};
use sspgraph::{Graph, RatMatrix};

const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "sspcert", version, about = "Exact certificates for the strong spectral property")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one graph and print its verdict record.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Write the full certificate or witness document here.
        #[arg(long, value_name = "PATH")]
        emit_certificate: Option<PathBuf>,
    },
    /// Decide SSP, SMP or SAP for a symmetric rational matrix.
    CheckMatrix {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// On failure, write the violating X as a document.
        #[arg(long, value_name = "PATH")]
        emit_witness: Option<PathBuf>,
    },
    /// Build a non-membership witness for a graph or a named family.
    Witness {
        #[command(flatten)]
        input: WitnessInput,
        /// Parameter of `--family`.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Output path; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate or witness document.
    Replay {
        #[arg(long, value_name = "PATH")]
        certificate: PathBuf,
    },
    /// Classify a stream of graph6 lines.
    Census {
        /// Input file; stdin when absent or "-".
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Directory for per-graph records and evidence documents.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
    },
    /// Print the forcing closure step by step.
    ForcingTrace {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: vertex count, then pairs.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WitnessInput {
    #[arg(long)]
    graph6: Option<String>,
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    /// Named construction; `--size` sets its parameter.
    #[arg(long, value_enum)]
    family: Option<Family>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Ssp,
    Smp,
    Sap,
}

impl From<Property> for PropertyKind {
    fn from(p: Property) -> Self {
        match p {
            Property::Ssp => PropertyKind::Ssp,
            Property::Smp => PropertyKind::Smp,
            Property::Sap => PropertyKind::Sap,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// K_n minus a 4-cycle; size = n.
    KnMinusC4,
    /// K_{2k} minus a perfect matching; size = k.
    Cocktail,
    /// Complement of P_{3m}; size = m.
    ComplementPath,
    G98,
    G99,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_graph(graph6: Option<&str>, edges: Option<&Path>) -> Result<Graph, Failure> {
    match (graph6, edges) {
        (Some(s), None) => parse_graph6(s.trim()).map_err(|e| usage(format!("graph6: {e}"))),
        (None, Some(p)) => parse_edge_list(&read_file(p)?).map_err(|e| usage(format!("edge list: {e}"))),
        _ => Err(usage("give exactly one of --graph6 or --edges")),
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::In { .. } => 0,
        Verdict::Out { .. } => 1,
        Verdict::Unknown { .. } => 2,
    }
}

fn certify(
    input: &GraphInput,
    opts: ClassifyOptions,
    emit: Option<&Path>,
) -> Result<u8, Failure> {
    let g = load_graph(input.graph6.as_deref(), input.edges.as_deref())?;
    let verdict = classify_with(&g, &opts);
    println!("{}", VerdictRecord::new(&g, &verdict, opts.seed).to_json());
    if let Some(path) = emit {
        let verdict = match verdict.clone() {
            Verdict::In { proof, stage } => Verdict::In {
                proof: proof.with_forcing(&g),
                stage,
            },
            v => v,
        };
        match Document::from_verdict(&g, &verdict) {
            Some(doc) => write_file(path, &doc.to_json())?,
            None => eprintln!("no certificate for an unknown verdict; nothing written"),
        }
    }
    Ok(verdict_code(&verdict))
}

fn check_matrix(path: &Path, property: Property, emit: Option<&Path>) -> Result<u8, Failure> {
    let a = RatMatrix::parse_text(&read_file(path)?).map_err(|e| usage(format!("matrix: {e}")))?;
    let kind = PropertyKind::from(property);
    let holds = has_property(&a, kind).map_err(usage)?;
    println!("{holds}");
    if !holds {
        if let Some(out) = emit {
            let x = property_witness(&a, kind)
                .map_err(usage)?
                .expect("a failing property has a kernel witness");
            let doc = Document::PropertyWitness {
                matrix: a,
                property: kind,
                x,
            };
            write_file(out, &doc.to_json())?;
        }
    }
    Ok(if holds { 0 } else { 1 })
}

fn family_witness(family: Family, size: Option<usize>, seed: u64) -> Result<Witness, Failure> {
    let size = || size.ok_or_else(|| usage("--size is required for this family"));
    match family {
        Family::KnMinusC4 => kn_minus_c4_witness(size()?).map_err(usage),
        Family::Cocktail => cocktail_witness(size()?, seed).map_err(usage),
        Family::ComplementPath => complement_path_witness(size()?, seed).map_err(usage),
        Family::G98 => Ok(g98_witness()),
        Family::G99 => Ok(g99_witness()),
    }
}

fn witness(input: &WitnessInput, size: Option<usize>, seed: u64, trials: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let found = match input.family {
        Some(f) => Some(family_witness(f, size, seed)?),
        None => {
            let g = load_graph(input.graph6.as_deref(), input.edges.as_deref())?;
            regular_witness(&g)
                .or_else(|| {
                    if g.order() > BARBELL_CAP {
                        return None;
                    }
                    let p = barbell_search(&g).ok()??;
                    barbell_witness(&g, &p).ok()
                })
                .or_else(|| sample_refute(&g, trials, seed))
        }
    };
    let Some(w) = found else {
        eprintln!("no witness found");
        return Ok(1);
    };
    let text = Document::Witness(w).to_json();
    match out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn replay(path: &Path) -> Result<u8, Failure> {
    let doc = Document::from_json(&read_file(path)?).map_err(|e| usage(format!("document: {e}")))?;
    match doc.replay() {
        Ok(outcome) => {
            let what = match outcome {
                ReplayOutcome::Member => "sound: proves membership".to_string(),
                ReplayOutcome::Partial => "sound: forcing steps valid, closure incomplete".to_string(),
                ReplayOutcome::NotMember => "sound: proves non-membership".to_string(),
                ReplayOutcome::LacksProperty(k) => format!("sound: matrix lacks the {k}"),
            };
            println!("{} {what}", doc.kind());
            Ok(0)
        }
        Err(why) => {
            println!("{} unsound: {why}", doc.kind());
            Ok(1)
        }
    }
}

fn run_census(
    input: Option<&Path>,
    out: Option<&Path>,
    opts: ClassifyOptions,
) -> Result<u8, Failure> {
    let text = match input {
        Some(p) if p != Path::new("-") => read_file(p)?,
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        }
    };
    let lines: Vec<&str> = text.lines().collect();
    let (items, summary) = census(&lines, &opts);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut records = String::new();
    for item in &items {
        match &item.outcome {
            Ok(c) => {
                records.push_str(&c.record.to_json());
                records.push('\n');
                if let (Some(dir), Some(doc)) = (out, Document::from_verdict(&c.graph, &c.verdict)) {
                    write_file(&dir.join(format!("line-{:06}.json", item.line)), &doc.to_json())?;
                }
            }
            Err(e) => eprintln!("line {}: {e}", item.line),
        }
    }
    if let Some(dir) = out {
        write_file(&dir.join("records.jsonl"), &records)?;
    }
    println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    Ok(0)
}

fn forcing_trace(input: &GraphInput) -> Result<u8, Failure> {
    let g = load_graph(input.graph6.as_deref(), input.edges.as_deref())?;
    let cert = close(&g);
    let mut out = io::stdout().lock();
    let io_err = |e: io::Error| Failure::Io(format!("stdout: {e}"));
    for (k, step) in cert.steps.iter().enumerate() {
        let added: Vec<String> = step.added().iter().map(|p| p.to_string()).collect();
        let detail = match step {
            ForcingStep::EdgeForce { via, pivot, .. } => format!("via {via} pivot {pivot}"),
            ForcingStep::OddCycleForce { vertex, cycle, .. } => {
                format!("vertex {vertex} cycle {cycle:?}")
            }
            ForcingStep::SpiderForce { spider, h, .. } => {
                format!("centre {} h {h}", spider.center)
            }
        };
        writeln!(out, "{:>3} {} {detail} adds {}", k + 1, step.rule_name(), added.join(" "))
            .map_err(io_err)?;
    }
    let complete = cert.final_graph.is_complete();
    writeln!(
        out,
        "{} after {} steps",
        if complete { "reached K_n" } else { "stalled" },
        cert.steps.len()
    )
    .map_err(io_err)?;
    Ok(if complete { 0 } else { 2 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Certify {
            input,
            seed,
            trials,
            emit_certificate,
        } => certify(&input, ClassifyOptions { seed, trials }, emit_certificate.as_deref()),
        Command::CheckMatrix {
            matrix,
            property,
            emit_witness,
        } => check_matrix(&matrix, property, emit_witness.as_deref()),
        Command::Witness {
            input,
            size,
            seed,
            trials,
            out,
        } => witness(&input, size, seed, trials, out.as_deref()),
        Command::Replay { certificate } => replay(&certificate),
        Command::Census {
            input,
            out,
            seed,
            trials,
        } => run_census(input.as_deref(), out.as_deref(), ClassifyOptions { seed, trials }),
        Command::ForcingTrace { input } => forcing_trace(&input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
