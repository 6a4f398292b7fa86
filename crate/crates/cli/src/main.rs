//! `gtseq`: counts, verification suites and artifact conversion.
//!
//! Exit codes: 0 on success, 1 when a verification reports violations,
//! 2 on usage or input errors.

mod config;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gtseq::labelings::{enumerate_sequences, signed_count, GTTreeSequence, ShiftedLabels};
use gtseq::monotone::{
    alpha, alpha_via_operator, count_extension, doubly_refined_asm, enumerate_extension, refined_asm, Alpha,
    OperatorForm,
};
use gtseq::operators::{binomial_determinant, product_formula, ProductFormula};
use gtseq::paths::{count_nonintersecting, enumerate_families, nonintersecting_families, signed_families};
use gtseq::patterns::{enumerate_patterns, enumerate_ssyt, signed_pattern_count};
use gtseq::trees::CanonicalKind;
use gtseq::verify::{run_all, run_suite, Suite, SuiteConfig};
use gtseq::{
    BigInt, Extension, GTPattern, LatticeFunction, OperatorExpression, PathVariant, Ssyt, TreeSequence,
    VerificationReport,
};

use config::Config;

const OPERATOR_HELP: &str = "\
Operator syntax (variables are k1, k2, ... and 1-based):
  expr   := ['-'] term (('+' | '-') term)*
  term   := power (['*'] power)*          juxtaposition multiplies
  power  := atom ['^' int]
  atom   := int | 'id' | '(' expr ')'
          | 'E' ['^' int] var             shift, exponent may be negative
          | 'D' ['^' int] var             forward difference E - id
          | 'd' ['^' int] var             backward difference id - E^-1
          | 'V' '(' var ',' var ')'       E_x^-1 + E_y - E_x^-1 E_y
          | 'Vinv' '(' var ',' var [';' 'trunc' '=' int] ')'
          | 'e' '(' int ';' expr (',' expr)* ')'   elementary symmetric function
Examples: \"e(2; D k1, D k2, D k3)\", \"V(k1,k2)\", \"Vinv(k1,k2; trunc=4)\", \"D^3 k2\"";

#[derive(Parser)]
#[command(
    name = "gtseq",
    version,
    about = "Exact signed counts of Gelfand-Tsetlin tree sequences and related families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count.
    #[command(subcommand)]
    Count(CountCmd),
    /// Run a verification suite (or `all`) and print a JSON report.
    Verify(VerifyArgs),
    /// Print artifacts as JSON lines, DOT or SVG.
    #[command(subcommand)]
    Emit(EmitCmd),
    /// Convert between patterns, tableaux and tree sequences (JSON in, JSON out).
    Convert(ConvertArgs),
    /// Apply a shift operator to a lattice function at one point.
    #[command(after_help = OPERATOR_HELP)]
    Apply(ApplyArgs),
}

/// Comma separated integers, e.g. `0,2` or `-1,3,3`.
#[derive(Debug, Clone)]
struct Point(Vec<i64>);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Point(Vec::new()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad integer {x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(Point)
    }
}

#[derive(Args)]
struct PointArgs {
    /// Bottom row / shifted labels, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    k: Point,
    /// Expected length of `k`.
    #[arg(long)]
    n: Option<usize>,
}

impl PointArgs {
    fn point(&self) -> Result<Vec<i64>, Failure> {
        match self.n {
            Some(n) if n != self.k.0.len() => Err(usage(format!("--n {n} but --k has {} entries", self.k.0.len()))),
            _ => Ok(self.k.0.clone()),
        }
    }
}

#[derive(Args)]
struct SeqArgs {
    /// Tree sequence: basic, swap:I,J, leafchain:I, random:SEED or a JSON file.
    #[arg(long, default_value = "basic")]
    seq: String,
}

#[derive(Subcommand)]
enum CountCmd {
    /// The product formula.
    Product(PointArgs),
    /// The binomial determinant.
    Det(PointArgs),
    /// Signed count of Gelfand-Tsetlin tree sequences.
    Gtseq {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Signed count of generalized Gelfand-Tsetlin patterns.
    Patterns(PointArgs),
    /// The monotone triangle count alpha.
    Alpha {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = AlphaRoute::Recursion)]
        via: AlphaRoute,
    },
    /// Signed count of lattice path families.
    Paths {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = PathsKind::Classic)]
        variant: PathsKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaRoute {
    Recursion,
    Ext1,
    Ext2,
    Ext3,
    Ext4,
    ThreeTerm,
    DeltaDelta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathsKind {
    Classic,
    General,
    Nonintersecting,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    /// Check this order only.
    #[arg(long)]
    n: Option<usize>,
    /// Grid of label values, e.g. `--grid=-2..2`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Random tree sequences per order.
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
    /// Cap on memo entries per tree-sequence counter.
    #[arg(long)]
    memo_cap: Option<usize>,
    /// Print compact JSON on one line.
    #[arg(long)]
    compact: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum EmitCmd {
    /// One n-tree of a tree sequence.
    Tree {
        #[arg(long)]
        n: usize,
        /// Random tree with this seed; without it the basic tree.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// A whole tree sequence as JSON.
    Treeseq {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// All generalized patterns with bottom row `k`, one per line.
    Pattern {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// All semistandard tableaux of a shape with entries at most `max`.
    Ssyt {
        #[arg(long)]
        shape: Point,
        #[arg(long)]
        max: u32,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// All Gelfand-Tsetlin tree sequences for `k`, one per line.
    Gtseq {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decorated triangles of one extension, one per line.
    Triangles {
        #[command(flatten)]
        point: PointArgs,
        /// Extension 1, 2, 3 or 4.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        ext: u8,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Lattice path families: JSON lines, or one family as SVG.
    Paths {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = PathsKind::Classic)]
        variant: PathsKind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Which family to draw with `--format svg`.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Refined and doubly refined alternating sign matrix counts.
    Refined {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        doubly: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Artifact {
    Pattern,
    Ssyt,
    Treeseq,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: Artifact,
    #[arg(long, value_enum)]
    to: Artifact,
    /// Pattern order when converting from a tableau; defaults to the largest entry.
    #[arg(long)]
    n: Option<usize>,
    /// Input file; standard input when absent. JSON values may be concatenated.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Product,
    Det,
    Alpha,
    Gtseq,
    Patterns,
}

#[derive(Args)]
struct ApplyArgs {
    /// Operator expression.
    #[arg(long, allow_hyphen_values = true)]
    op: String,
    #[arg(long, value_enum, default_value_t = Target::Product)]
    to: Target,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    seq: SeqArgs,
}

enum Failure {
    Usage(String),
    Violations,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<gtseq::Error> for Failure {
    fn from(e: gtseq::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("bad JSON: {e}"))
    }
}

type Out<'a> = &'a mut dyn Write;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = io::BufWriter::new(stdout.lock());
    let res = run(cli.command, &mut lock);
    let flushed = lock.flush();
    match res {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command, out: Out) -> Result<(), Failure> {
    match cmd {
        Command::Count(c) => count(c, out),
        Command::Verify(v) => verify(v, out),
        Command::Emit(e) => emit(e, out),
        Command::Convert(c) => convert(c, out),
        Command::Apply(a) => apply(a, out),
    }
}

fn tree_sequence(spec: &str, n: usize) -> Result<TreeSequence, Failure> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("bad index in {spec:?}")));
    let kind = match spec.split_once(':') {
        None if spec == "basic" => CanonicalKind::Basic,
        Some(("swap", rest)) => {
            let (i, j) = rest.split_once(',').ok_or_else(|| usage("swap needs two indices, e.g. swap:1,3"))?;
            CanonicalKind::Swap { i: parse(i)?, j: parse(j)? }
        }
        Some(("leafchain", i)) => CanonicalKind::LeafChain { i: parse(i)? },
        Some(("random", s)) => {
            CanonicalKind::Random { seed: s.trim().parse().map_err(|_| usage(format!("bad seed in {spec:?}")))? }
        }
        _ => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| usage(format!("{spec:?} is not a tree sequence selector or readable file: {e}")))?;
            let ts: TreeSequence = serde_json::from_str(&text)?;
            if ts.order() != n {
                return Err(usage(format!("tree sequence has order {} but k has {n} entries", ts.order())));
            }
            return Ok(ts);
        }
    };
    if n == 0 {
        return Err(usage("k must be non-empty"));
    }
    Ok(TreeSequence::canonical(kind, n)?)
}

fn nonempty(k: Vec<i64>) -> Result<Vec<i64>, Failure> {
    if k.is_empty() {
        Err(usage("k must be non-empty"))
    } else {
        Ok(k)
    }
}

fn count(cmd: CountCmd, out: Out) -> Result<(), Failure> {
    let value: BigInt = match cmd {
        CountCmd::Product(p) => product_formula(&p.point()?),
        CountCmd::Det(p) => binomial_determinant(&p.point()?),
        CountCmd::Gtseq { point, seq } => {
            let k = nonempty(point.point()?)?;
            let ts = tree_sequence(&seq.seq, k.len())?;
            signed_count(&ts, &ShiftedLabels::new(k))
        }
        CountCmd::Patterns(p) => signed_pattern_count(&nonempty(p.point()?)?),
        CountCmd::Alpha { point, via } => {
            let k = nonempty(point.point()?)?;
            match via {
                AlphaRoute::Recursion => alpha(&k),
                AlphaRoute::Ext1 => count_extension(Extension::First, &k),
                AlphaRoute::Ext2 => count_extension(Extension::Second, &k),
                AlphaRoute::Ext3 => count_extension(Extension::Third, &k),
                AlphaRoute::Ext4 => count_extension(Extension::Fourth, &k),
                AlphaRoute::ThreeTerm => alpha_via_operator(&k, OperatorForm::ThreeTerm)?,
                AlphaRoute::DeltaDelta => alpha_via_operator(&k, OperatorForm::DeltaDelta)?,
            }
        }
        CountCmd::Paths { point, variant } => {
            let k = nonempty(point.point()?)?;
            match variant {
                PathsKind::Classic => signed_families(&k, PathVariant::Classic)?,
                PathsKind::General => signed_families(&k, PathVariant::General)?,
                PathsKind::Nonintersecting => count_nonintersecting(&k)?,
            }
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn parse_grid(s: &str) -> Result<(i64, i64), Failure> {
    match gtseq::grid::parse_range(s) {
        Some((lo, hi)) if lo <= hi => Ok((lo, hi)),
        _ => Err(usage(format!("bad grid {s:?}; expected LO..HI with LO <= HI"))),
    }
}

fn verify(args: VerifyArgs, out: Out) -> Result<(), Failure> {
    let file = Config::from_env().map_err(Failure::Usage)?.verify;
    let suite = match args.suite.as_str() {
        "all" => None,
        name => Some(Suite::from_str(name).map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            usage(format!("unknown suite {name:?}; expected one of {} or all", names.join(", ")))
        })?),
    };
    let grid = match args.grid.or(file.grid) {
        Some(g) => Some(parse_grid(&g)?),
        None => None,
    };
    let defaults = SuiteConfig::default();
    let cfg = SuiteConfig {
        n: args.n.or(file.n),
        grid,
        trees: args.trees.or(file.trees).unwrap_or(defaults.trees),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        memo_cap: args.memo_cap.or(file.memo_cap),
    };
    if cfg.n == Some(0) {
        return Err(usage("--n must be at least 1"));
    }
    if let Some(t) = args.threads.or(file.threads) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let report = match suite {
        Some(s) => run_suite(s, &cfg),
        None => merged(run_all(&cfg), &cfg),
    };
    let text = if args.compact { serde_json::to_string(&report)? } else { serde_json::to_string_pretty(&report)? };
    writeln!(out, "{text}")?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn merged(reports: Vec<VerificationReport>, cfg: &SuiteConfig) -> VerificationReport {
    let wall: f64 = reports.iter().map(|r| r.wall_time).sum();
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "parameters": r.parameters,
                "pointsChecked": r.points_checked,
                "violations": r.violations.len(),
            })
        })
        .collect();
    let params = json!({ "trees": cfg.trees, "seed": cfg.seed, "suites": suites });
    let mut report = VerificationReport::merge("all", params, reports);
    report.wall_time = wall;
    report
}

fn json_lines<T: serde::Serialize>(
    items: impl Iterator<Item = T>,
    limit: Option<usize>,
    out: Out,
) -> Result<(), Failure> {
    for item in items.take(limit.unwrap_or(usize::MAX)) {
        writeln!(out, "{}", serde_json::to_string(&item)?)?;
    }
    Ok(())
}

fn emit(cmd: EmitCmd, out: Out) -> Result<(), Failure> {
    match cmd {
        EmitCmd::Tree { n, seed, format } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let ts = match seed {
                Some(s) => TreeSequence::random(n, s)?,
                None => TreeSequence::basic(n)?,
            };
            let tree = ts.tree(n);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(tree)?)?,
                Format::Dot => write!(out, "{}", tree.to_dot())?,
                Format::Svg => return Err(usage("trees are emitted as json or dot")),
            }
        }
        EmitCmd::Treeseq { n, seq } => {
            let ts = tree_sequence(&seq.seq, n)?;
            writeln!(out, "{}", serde_json::to_string(&ts)?)?;
        }
        EmitCmd::Pattern { point, limit } => {
            let k = nonempty(point.point()?)?;
            json_lines(enumerate_patterns(&k), limit, out)?;
        }
        EmitCmd::Ssyt { shape, max, limit } => {
            let shape: Vec<usize> = shape
                .0
                .iter()
                .map(|&x| usize::try_from(x).map_err(|_| usage("shape parts must be non-negative")))
                .collect::<Result<_, _>>()?;
            if shape.windows(2).any(|w| w[0] < w[1]) {
                return Err(usage("shape must be weakly decreasing"));
            }
            json_lines(enumerate_ssyt(&shape, max).into_iter(), limit, out)?;
        }
        EmitCmd::Gtseq { point, seq, limit } => {
            let k = nonempty(point.point()?)?;
            let ts = tree_sequence(&seq.seq, k.len())?;
            json_lines(enumerate_sequences(&ts, &ShiftedLabels::new(k)), limit, out)?;
        }
        EmitCmd::Triangles { point, ext, limit } => {
            let k = nonempty(point.point()?)?;
            json_lines(enumerate_extension(Extension::from_index(ext)?, &k), limit, out)?;
        }
        EmitCmd::Paths { point, variant, format, index, limit } => {
            let k = nonempty(point.point()?)?;
            let families: Box<dyn Iterator<Item = gtseq::PathFamily>> = match variant {
                PathsKind::Classic => Box::new(enumerate_families(&k, PathVariant::Classic)?),
                PathsKind::General => Box::new(enumerate_families(&k, PathVariant::General)?),
                PathsKind::Nonintersecting => Box::new(nonintersecting_families(&k)?.into_iter()),
            };
            match format {
                Format::Json => json_lines(families, limit, out)?,
                Format::Svg => {
                    let f =
                        families.into_iter().nth(index).ok_or_else(|| usage(format!("no family at index {index}")))?;
                    write!(out, "{}", f.to_svg())?;
                }
                Format::Dot => return Err(usage("paths are emitted as json or svg")),
            }
        }
        EmitCmd::Refined { n, doubly } => {
            let counts = if doubly { doubly_refined_asm(n)? } else { refined_asm(n)? };
            writeln!(out, "{}", serde_json::to_string(&counts)?)?;
        }
    }
    Ok(())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn ssyt_order(t: &Ssyt) -> usize {
    let largest = t.rows().iter().flatten().copied().max().unwrap_or(0) as usize;
    largest.max(t.shape().iter().filter(|&&p| p > 0).count()).max(1)
}

fn convert(args: ConvertArgs, out: Out) -> Result<(), Failure> {
    let text = read_input(&args.input)?;
    let mut seen = false;
    for value in serde_json::Deserializer::from_str(&text).into_iter::<Value>() {
        let value = value?;
        seen = true;
        let result: Value = match (args.from, args.to) {
            (Artifact::Pattern, Artifact::Ssyt) => {
                let p: GTPattern = serde_json::from_value(value)?;
                serde_json::to_value(p.to_ssyt()?)?
            }
            (Artifact::Ssyt, Artifact::Pattern) => {
                let t: Ssyt = serde_json::from_value(value)?;
                let n = args.n.unwrap_or_else(|| ssyt_order(&t));
                serde_json::to_value(GTPattern::from_ssyt(&t, n)?)?
            }
            (Artifact::Pattern, Artifact::Treeseq) => {
                let p: GTPattern = serde_json::from_value(value)?;
                serde_json::to_value(p.to_tree_sequence())?
            }
            (Artifact::Treeseq, Artifact::Pattern) => {
                let s: GTTreeSequence = serde_json::from_value(value)?;
                serde_json::to_value(GTPattern::from_tree_sequence(&s)?)?
            }
            (from, to) if from == to => value,
            _ => return Err(usage("supported conversions: pattern <-> ssyt, pattern <-> treeseq")),
        };
        writeln!(out, "{}", serde_json::to_string(&result)?)?;
    }
    if !seen {
        return Err(usage("no JSON input"));
    }
    Ok(())
}

fn apply(args: ApplyArgs, out: Out) -> Result<(), Failure> {
    let k = nonempty(args.point.point()?)?;
    let n = k.len();
    let op = OperatorExpression::parse(&args.op, n)?;
    let value = match args.to {
        Target::Product => op.apply(&ProductFormula { arity: n }, &k)?,
        Target::Alpha => op.apply(&Alpha { arity: n }, &k)?,
        Target::Det => op.apply(&gtseq::operators::FnLattice::new(n, binomial_determinant), &k)?,
        Target::Patterns => op.apply(&gtseq::operators::FnLattice::new(n, signed_pattern_count), &k)?,
        Target::Gtseq => {
            let counter = gtseq::labelings::SignedCounter::new(tree_sequence(&args.seq.seq, n)?);
            op.apply(&counter as &dyn LatticeFunction, &k)?
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}
