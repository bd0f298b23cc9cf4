//! Command-line front end.
//!
//! Matrices are read as text (one row per line, entries separated by
//! spaces) or as JSON objects `{"mode": ..., "rows": [[...]]}`; tableaux use
//! the display form `4:0,2,4|1:0,1,3` (offsets optional for straight
//! shapes). Input comes from `--input FILE` or standard input.

pub mod suites;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cancellation::{alternating_sum, cancellation_pairs, default_bounds, lr_count, Bounds, Stage, SummationStage};
use crate::crystal_bin::Direction;
use crate::doublecrystal::{compose, decompose, exhaust, normal_form, normal_matrix, CrystalMatrix};
use crate::growth::{burge_forward_traced, GrowthDiagram, Orientation, ShapeDatum};
use crate::insertion_oracles::{burge, dual_rsk_col, dual_rsk_row};
use crate::matrices::{encode, AnyMatrix, BinaryMatrix, Encoded, IntegralMatrix, Mode};
use crate::pictures::{enumerate, lift, project, Picture, Projection};
use crate::schutzenberger::{dual, dual_with_bound};
use crate::shapes::{Flavor, Partition, SkewShape, Tableau};
use suites::{run_all, seed_from_env, Suite};

#[derive(Debug, Parser)]
#[command(name = "matcrystal", version, about = "Crystal operations on binary and integral matrices")]
struct Cli {
    /// Read input from this file instead of standard input.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModeArg {
    #[arg(short, long)]
    mode: Mode,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RskVariant {
    Column,
    Row,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a semistandard tableau as a matrix.
    Encode(ModeArg),
    /// Decode a matrix into a tableau of the given skew shape.
    Decode {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long)]
        shape: SkewShape,
    },
    /// Apply a crystal move.
    Move {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(short, long)]
        direction: Direction,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Print potentials, either one or all of them.
    Potential {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(short, long, requires = "index")]
        direction: Option<Direction>,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Apply moves in the given directions until none is possible.
    Exhaust {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(short, long, value_delimiter = ',', required = true)]
        directions: Vec<Direction>,
        /// Number of rows (columns) whose adjacent pairs take part.
        #[arg(long)]
        bound: Option<usize>,
        /// List the moves applied.
        #[arg(long)]
        trace: bool,
    },
    /// Split a matrix into its upward and leftward exhausted forms.
    Decompose(ModeArg),
    /// Rebuild a matrix from its two exhausted forms.
    Compose {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Print the normal form of a matrix and its shape.
    NormalForm(ModeArg),
    /// Render a growth diagram.
    Growth {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(short, long, default_value = "NW")]
        orientation: Orientation,
    },
    /// Burge correspondence of an integral matrix.
    Burge,
    /// Dual RSK correspondence of a binary matrix.
    DualRsk {
        #[arg(long, value_enum, default_value_t = RskVariant::Column)]
        variant: RskVariant,
    },
    /// Apply a shape datum forward (with --lambda and --entry) or backward (with --kappa).
    Datum {
        #[arg(long)]
        rule: ShapeDatum,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long, requires = "entry", conflicts_with = "kappa")]
        lambda: Option<Partition>,
        #[arg(long)]
        entry: Option<usize>,
        #[arg(long)]
        kappa: Option<Partition>,
    },
    /// Schutzenberger dual of a tableau.
    Dual {
        #[arg(short, long, default_value = "semistandard")]
        flavor: Flavor,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Alternating sums for the scalar product of two skew Schur functions.
    Scalar {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long, default_value = "fully_reduced")]
        stage: Stage,
        #[arg(long)]
        shape1: SkewShape,
        #[arg(long)]
        shape2: SkewShape,
        /// Rows of the matrix box.
        #[arg(long, requires = "cols")]
        rows: Option<usize>,
        #[arg(long, requires = "rows")]
        cols: Option<usize>,
        /// List the pairs that cancel on the way to the next stage.
        #[arg(long)]
        trace: bool,
    },
    /// Pictures between skew diagrams.
    Pictures {
        #[command(subcommand)]
        action: PictureAction,
    },
    /// Run named property suites (or `all`).
    Verify {
        #[arg(default_value = "all")]
        suites: Vec<String>,
        /// Seed for randomized suites; defaults to DC_SEED.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum PictureAction {
    /// Check that the input map is a picture.
    Validate {
        #[arg(long)]
        domain: SkewShape,
        #[arg(long)]
        codomain: SkewShape,
    },
    /// Build the picture projecting to the input matrix.
    Lift {
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long)]
        domain: SkewShape,
        #[arg(long)]
        codomain: SkewShape,
    },
    /// List every picture between two diagrams.
    Enumerate {
        #[arg(long)]
        domain: SkewShape,
        #[arg(long)]
        codomain: SkewShape,
        /// Print only the number of pictures.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Text and JSON renderings of a command's result.
struct Output {
    text: String,
    json: Value,
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    match execute(cli, stdin) {
        Ok((out, status)) => {
            let written = if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if written.is_err() {
                return 1;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) => read_file(p),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| domain(format!("reading standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_file(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn parse_matrix(mode: Mode, text: &str) -> Result<AnyMatrix, CliError> {
    AnyMatrix::parse(mode, text).map_err(domain)
}

fn parse_tableau(flavor: Flavor, text: &str) -> Result<Tableau, CliError> {
    let body: String = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect::<Vec<_>>().join("|");
    Tableau::parse(flavor, &body).map_err(domain)
}

fn tableau_json(t: &Tableau) -> Value {
    json!({ "flavor": t.flavor().to_string(), "shape": t.shape().to_string(), "rows": t.rows(), "display": t.to_string() })
}

macro_rules! with_matrix {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            AnyMatrix::Binary($m) => $body,
            AnyMatrix::Integral($m) => $body,
        }
    };
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<(Output, i32), CliError> {
    let input = cli.input;
    let mut read = || read_input(&input, stdin);
    let out = match cli.command {
        Command::Encode(ModeArg { mode }) => {
            let t = parse_tableau(Flavor::Semistandard, &read()?)?;
            let m = encode(&t, mode).map_err(domain)?;
            Output { text: m.to_text(), json: m.to_json() }
        }
        Command::Decode { mode: ModeArg { mode }, shape } => {
            let m = parse_matrix(mode, &read()?)?;
            let t = with_matrix!(&m, m => m.decode(&shape)).map_err(domain)?;
            Output { text: format!("{t}\n"), json: tableau_json(&t) }
        }
        Command::Move { mode: ModeArg { mode }, direction, index, times } => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => {
                let mut cur = m;
                let mut records = Vec::new();
                for done in 0..times {
                    let (next, rec) = cur
                        .step(direction, index)
                        .ok_or_else(|| domain(format!("no {direction} move at index {index} after {done} moves")))?;
                    cur = next;
                    records.push(rec.to_string());
                }
                Output { text: cur.to_text(), json: json!({ "matrix": cur.to_json(), "moves": records }) }
            })
        }
        Command::Potential { mode: ModeArg { mode }, direction, index } => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => potentials(&m, direction.zip(index)))
        }
        Command::Exhaust { mode: ModeArg { mode }, directions, bound, trace } => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => {
                let (res, seq) = exhaust(&m, &directions, bound).map_err(domain)?;
                let moves: Vec<String> = seq.iter().map(|r| r.to_string()).collect();
                let mut text = res.to_text();
                if trace {
                    text = moves.iter().map(|s| format!("{s}\n")).collect::<String>() + &text;
                }
                Output { text, json: json!({ "matrix": res.to_json(), "moves": moves }) }
            })
        }
        Command::Decompose(ModeArg { mode }) => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => {
                let (p, q) = decompose(&m);
                let shape = normal_form(&m);
                let n = normal_matrix(&m);
                Output {
                    text: format!("P\n{}\nQ\n{}\nnormal form {}\n{}", p.to_text(), q.to_text(), shape, n.to_text()),
                    json: json!({ "P": p.to_json(), "Q": q.to_json(), "shape": shape.parts(), "normal": n.to_json() }),
                }
            })
        }
        Command::Compose { mode: ModeArg { mode }, p, q } => {
            let (p, q) = (parse_matrix(mode, &read_file(&p)?)?, parse_matrix(mode, &read_file(&q)?)?);
            match (p, q) {
                (AnyMatrix::Binary(p), AnyMatrix::Binary(q)) => composed(&p, &q)?,
                (AnyMatrix::Integral(p), AnyMatrix::Integral(q)) => composed(&p, &q)?,
                _ => unreachable!("both parsed in the same mode"),
            }
        }
        Command::NormalForm(ModeArg { mode }) => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => {
                let shape = normal_form(&m);
                let n = normal_matrix(&m);
                Output { text: format!("{shape}\n{}", n.to_text()), json: json!({ "shape": shape.parts(), "matrix": n.to_json() }) }
            })
        }
        Command::Growth { mode: ModeArg { mode }, orientation } => {
            let m = parse_matrix(mode, &read()?)?;
            with_matrix!(m, m => {
                let g = GrowthDiagram::compute(&m, orientation);
                g.verify().map_err(|e| domain(format!("{e:?}")))?;
                Output { text: g.render(), json: g.to_json() }
            })
        }
        Command::Burge => {
            let AnyMatrix::Integral(m) = parse_matrix(Mode::Integral, &read()?)? else { unreachable!() };
            let (p, q) = burge(&m);
            tableau_pair("P", &p, "Q", &q)
        }
        Command::DualRsk { variant } => {
            let AnyMatrix::Binary(m) = parse_matrix(Mode::Binary, &read()?)? else { unreachable!() };
            match variant {
                RskVariant::Column => {
                    let (s, r) = dual_rsk_col(&m);
                    tableau_pair("S", &s, "R", &r)
                }
                RskVariant::Row => {
                    let (r, s) = dual_rsk_row(&m);
                    tableau_pair("R*", &r, "S", &s)
                }
            }
        }
        Command::Datum { rule, mu, nu, lambda, entry, kappa } => datum(rule, &mu, &nu, lambda, entry, kappa)?,
        Command::Dual { flavor, bound } => {
            let t = parse_tableau(flavor, &read()?)?;
            let d = match bound {
                Some(b) => dual_with_bound(&t, b),
                None => dual(&t),
            }
            .map_err(domain)?;
            Output { text: format!("{d}\n"), json: tableau_json(&d) }
        }
        Command::Scalar { mode: ModeArg { mode }, stage, shape1, shape2, rows, cols, trace } => {
            let bounds = match rows.zip(cols) {
                Some((rows, cols)) => Bounds { rows, cols },
                None => default_bounds(&shape1, &shape2, mode),
            };
            scalar(mode, stage, &shape1, &shape2, bounds, trace)?
        }
        Command::Pictures { action } => pictures(action, &mut read)?,
        Command::Verify { suites, seed } => {
            let list = parse_suites(&suites)?;
            let reports = run_all(&list, seed.unwrap_or_else(seed_from_env));
            let ok = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(|r| format!("{r}\n")).collect();
            let json = json!(reports
                .iter()
                .map(|r| json!({
                    "suite": r.suite.to_string(),
                    "passed": r.passed(),
                    "checks": r.cases,
                    "failures": r.failed,
                    "messages": r.failures,
                    "seconds": r.elapsed.as_secs_f64(),
                }))
                .collect::<Vec<_>>());
            return Ok((Output { text, json }, if ok { 0 } else { 1 }));
        }
    };
    Ok((out, 0))
}

fn potentials<M: CrystalMatrix>(m: &M, one: Option<(Direction, usize)>) -> Output {
    if let Some((d, i)) = one {
        let p = m.potential(d, i);
        return Output { text: format!("{p}\n"), json: json!(p) };
    }
    let (h, w) = m.extent();
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    for d in Direction::ALL {
        let n = if d.is_vertical() { h } else { w };
        let ps: Vec<usize> = (0..n.saturating_sub(1)).map(|i| m.potential(d, i)).collect();
        text.push_str(&format!("{d}: {}\n", ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")));
        obj.insert(d.to_string(), json!(ps));
    }
    Output { text, json: Value::Object(obj) }
}

trait Rendered {
    fn text(&self) -> String;
    fn json(&self) -> Value;
}

impl Rendered for BinaryMatrix {
    fn text(&self) -> String {
        self.to_text()
    }
    fn json(&self) -> Value {
        self.to_json()
    }
}

impl Rendered for IntegralMatrix {
    fn text(&self) -> String {
        self.to_text()
    }
    fn json(&self) -> Value {
        self.to_json()
    }
}

fn composed<M: CrystalMatrix + Rendered>(p: &M, q: &M) -> Result<Output, CliError> {
    let m = compose(p, q).map_err(domain)?;
    Ok(Output { text: m.text(), json: m.json() })
}

fn tableau_pair(a: &str, s: &Tableau, b: &str, t: &Tableau) -> Output {
    Output { text: format!("{a} {s}\n{b} {t}\n"), json: json!({ a: tableau_json(s), b: tableau_json(t) }) }
}

fn datum(
    rule: ShapeDatum,
    mu: &Partition,
    nu: &Partition,
    lambda: Option<Partition>,
    entry: Option<usize>,
    kappa: Option<Partition>,
) -> Result<Output, CliError> {
    match (lambda, entry, kappa) {
        (Some(lambda), Some(entry), None) => {
            let k = rule.forward(&lambda, mu, nu, entry).map_err(domain)?;
            let mut json = json!({ "kappa": k.parts() });
            let mut text = format!("{k}\n");
            if rule == ShapeDatum::Burge {
                let (_, steps) = burge_forward_traced(&lambda, mu, nu, entry).map_err(domain)?;
                json["trace"] = serde_json::to_value(&steps).expect("serializable");
                text = steps.iter().map(|s| format!("{s:?}\n")).collect::<String>() + &text;
            }
            Ok(Output { text, json })
        }
        (None, None, Some(kappa)) => {
            let (l, m) = rule.backward(mu, nu, &kappa).map_err(domain)?;
            Ok(Output { text: format!("{l} {m}\n"), json: json!({ "lambda": l.parts(), "entry": m }) })
        }
        _ => Err(CliError::Usage("give either --lambda and --entry, or --kappa".into())),
    }
}

fn scalar(mode: Mode, stage: Stage, a: &SkewShape, b: &SkewShape, bounds: Bounds, trace: bool) -> Result<Output, CliError> {
    let v = alternating_sum(a, b, SummationStage { stage, mode }, bounds).map_err(domain)?;
    let count = lr_count(a, b, mode);
    let mut text = format!("{v}\n");
    let mut json = json!({ "value": v, "stage": stage, "mode": mode, "rows": bounds.rows, "cols": bounds.cols, "lr_count": count });
    if trace {
        let pairs: Vec<(String, String)> = match mode {
            Mode::Binary => cancellation_pairs::<BinaryMatrix>(a, b, stage, bounds)
                .map_err(domain)?
                .iter()
                .map(|(x, y)| (x.to_text(), y.to_text()))
                .collect(),
            Mode::Integral => cancellation_pairs::<IntegralMatrix>(a, b, stage, bounds)
                .map_err(domain)?
                .iter()
                .map(|(x, y)| (x.to_text(), y.to_text()))
                .collect(),
        };
        for (k, (x, y)) in pairs.iter().enumerate() {
            text.push_str(&format!("pair {k}\n{x}<->\n{y}"));
        }
        json["pairs"] = json!(pairs.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>());
    }
    Ok(Output { text, json })
}

fn picture_json(f: &Picture) -> Value {
    json!(f.map().iter().map(|(s, t)| json!([[s.0, s.1], [t.0, t.1]])).collect::<Vec<_>>())
}

fn pictures(action: PictureAction, read: &mut dyn FnMut() -> Result<String, CliError>) -> Result<Output, CliError> {
    match action {
        PictureAction::Validate { domain: dom, codomain } => {
            let f = Picture::parse(&read()?, dom, codomain).map_err(domain)?;
            let (n, m) = (f.integral(), f.binary());
            Ok(Output {
                text: format!("valid\nInt\n{}Bin\n{}", n.to_text(), m.to_text()),
                json: json!({ "valid": true, "int": n.to_json(), "bin": m.to_json() }),
            })
        }
        PictureAction::Lift { mode: ModeArg { mode }, domain: dom, codomain } => {
            let m = match parse_matrix(mode, &read()?)? {
                AnyMatrix::Binary(m) => Projection::Binary(m),
                AnyMatrix::Integral(m) => Projection::Integral(m),
            };
            let f = lift(&m, &dom, &codomain).map_err(domain)?;
            debug_assert_eq!(project(&f, mode), m);
            Ok(Output { text: f.to_text(), json: picture_json(&f) })
        }
        PictureAction::Enumerate { domain: dom, codomain, count } => {
            let all = enumerate(&dom, &codomain).map_err(domain)?;
            let text = if count {
                format!("{}\n", all.len())
            } else {
                all.iter().map(|f| f.to_text()).collect::<Vec<_>>().join("\n")
            };
            Ok(Output { text, json: json!({ "count": all.len(), "pictures": all.iter().map(picture_json).collect::<Vec<_>>() }) })
        }
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(Suite::ALL);
            continue;
        }
        let s = Suite::from_str(name, true).map_err(|_| {
            let known: Vec<String> = Suite::ALL.iter().map(|s| s.to_string()).collect();
            CliError::Usage(format!("unknown suite {name:?}; expected all or one of {}", known.join(", ")))
        })?;
        out.push(s);
    }
    out.dedup();
    Ok(out)
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdin = io::stdin();
    let mut lock = stdin.lock();
    run(std::env::args_os(), &mut lock, &mut io::stdout().lock(), &mut io::stderr().lock())
}
