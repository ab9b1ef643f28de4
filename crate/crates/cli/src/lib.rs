//! Command-line front end: word generation, block scans, limsup analysis,
//! witness constructions and exponent estimates, all as deterministic JSON.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphblocks::blocks::{
    letter_mask, scan_delta_blocks, scan_x_blocks, BlockOccurrence, RatioStats, ScanConfig, XBlockPattern,
    DEFAULT_BLOCK_HORIZON, DEFAULT_WINDOW,
};
use morphblocks::constructions::{
    perron_spec, power_word, power_word_stream, rational_word, rational_word_stream, remark2_spec, thue_morse_spec,
    ConstructionReport, PerronInput,
};
use morphblocks::diophantine::{exponent_report, xi_from_indices, DigitExpansion, ExponentReport, DEFAULT_DIGITS};
use morphblocks::format::parse_rational;
use morphblocks::sequences::{
    empirical_delta, limsup_delta, limsup_x, limsup_x_stream, LimsupOptions, LimsupReport, Mode,
};
use morphblocks::word::{prefix, LiteralStream, SpecDocument};
use morphblocks::{Alphabet, Error, IntMatrix, MorphicSpec, WordStream};
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "morphblocks",
    version,
    about = "Maximal blocks and exponents of morphic words"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Longest admissible block; longer runs count as infinite.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Tolerance for certified intervals.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// Override the seed symbol of a loaded spec.
    #[arg(long, global = true)]
    pub seed_spec: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a prefix of the word.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 32)]
        length: usize,
        /// Concatenate single-character symbols.
        #[arg(long)]
        concat: bool,
    },
    /// List maximal Δ-blocks or x-blocks.
    Blocks {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        /// Stop after this many blocks.
        #[arg(long)]
        count: Option<usize>,
        /// Read only this many positions.
        #[arg(long, conflicts_with = "count")]
        positions: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Limsup of j_k / i_k over the maximal blocks.
    Limsup {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Positions scanned when following chains.
        #[arg(long)]
        follow: Option<usize>,
    },
    /// Build a witness word.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Estimate v_b and the irrationality exponent of Σ b^{-n_j}.
    Exponent {
        #[command(flatten)]
        source: SourceArgs,
        /// File of strictly increasing positive indices.
        #[arg(long, conflicts_with_all = ["spec", "raw", "construct"])]
        indices: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Add the continued-fraction cross-check.
        #[arg(long)]
        cf: bool,
    },
    /// Blocks, limsup and exponent in one report.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Spec document (JSON).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Literal finite word.
    #[arg(long)]
    pub raw: Option<String>,
    /// Built-in word: perron:MU, remark2:MU,S,T, rational:P,Q, power:MU, thue-morse.
    #[arg(long)]
    pub construct: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PatternArgs {
    /// Comma-separated Δ symbols.
    #[arg(long, conflicts_with = "x")]
    pub delta: Option<String>,
    /// Pattern word x.
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exact,
    Empirical,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Empirical => Mode::Empirical,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Word whose one-gaps grow like a Perron number.
    Perron {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        mu: Option<u64>,
        /// JSON array of matrix rows.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Also write the spec document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Variant with two interleaved gap patterns.
    Remark2 {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        mu: Option<u64>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automatic word with limsup p/q.
    Rational {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Prefix length compared in the kernel closure.
        #[arg(long, default_value_t = 1000)]
        kernel_depth: usize,
    },
    /// Ones exactly at the powers of mu.
    Power {
        #[arg(long)]
        mu: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// The Thue-Morse spec.
    ThueMorse {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: the library error plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub name: String,
    pub message: String,
}

impl Failure {
    fn from_error(e: Error, construct: bool) -> Failure {
        let code = match &e {
            Error::SpecNotFound(_)
            | Error::SpecParse(_)
            | Error::InvalidSpec(_)
            | Error::InvalidMorphism(_)
            | Error::NotProlongable(_) => 2,
            Error::InfiniteBlock { .. } => 3,
            Error::HorizonExceeded(_) => 4,
            Error::NotPerron(_) => 5,
            Error::InvalidParams(_) if construct => 5,
            _ => 1,
        };
        Failure {
            code,
            name: e.name().to_string(),
            message: e.to_string(),
        }
    }

    pub fn usage(message: String) -> Failure {
        Failure {
            code: 1,
            name: "Usage".into(),
            message,
        }
    }

    /// The single JSON object written to stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.name, "message": self.message }).to_string()
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Run a parsed command and return its stdout text.
pub fn run(cli: &Cli) -> CliResult<String> {
    let construct = matches!(cli.command, Command::Construct { .. });
    execute(cli).map_err(|e| Failure::from_error(e, construct))
}

/// Parse arguments and run; help and version requests are printed as output.
pub fn run_args<I, T>(args: I) -> CliResult<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) if !e.use_stderr() => Ok(e.to_string().trim_end().to_string()),
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

/// The word a command reads.
enum Source {
    Spec(MorphicSpec),
    Literal(LiteralStream),
    Rational(u64, u64),
    Power(u64),
}

impl Source {
    fn stream(&self) -> morphblocks::Result<Box<dyn WordStream>> {
        Ok(match self {
            Source::Spec(s) => s.stream(),
            Source::Literal(l) => Box::new(l.clone()),
            Source::Rational(p, q) => Box::new(rational_word_stream(*p, *q)?),
            Source::Power(mu) => Box::new(power_word_stream(*mu)?),
        })
    }

    fn alphabet(&self) -> morphblocks::Result<Alphabet> {
        Ok(self.stream()?.alphabet().clone())
    }
}

fn parse_numbers(text: &str) -> morphblocks::Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParams(format!("expected an integer, got {t:?}")))
        })
        .collect()
}

fn construct_source(text: &str) -> morphblocks::Result<Source> {
    let (kind, args) = text.split_once(':').unwrap_or((text, ""));
    let nums = || parse_numbers(args);
    let arity = |n: usize, v: Vec<u64>| -> morphblocks::Result<Vec<u64>> {
        if v.len() == n {
            Ok(v)
        } else {
            Err(Error::InvalidParams(format!("{kind} takes {n} parameters")))
        }
    };
    match kind {
        "perron" => {
            let v = arity(1, nums()?)?;
            Ok(Source::Spec(morphic(perron_spec(&PerronInput::Integer(v[0]), 2)?)))
        }
        "remark2" => {
            let v = arity(3, nums()?)?;
            let r = remark2_spec(&PerronInput::Integer(v[0]), v[1] as usize, v[2] as usize, 2)?;
            Ok(Source::Spec(morphic(r)))
        }
        "rational" => {
            let v = arity(2, nums()?)?;
            rational_word_stream(v[0], v[1])?;
            Ok(Source::Rational(v[0], v[1]))
        }
        "power" => {
            let v = arity(1, nums()?)?;
            power_word_stream(v[0])?;
            Ok(Source::Power(v[0]))
        }
        "thue-morse" => Ok(Source::Spec(thue_morse_spec())),
        other => Err(Error::InvalidParams(format!("unknown construction {other:?}"))),
    }
}

fn morphic(report: ConstructionReport) -> MorphicSpec {
    report.morphic.expect("morphic constructions carry their spec")
}

fn load_source(args: &SourceArgs, seed: Option<&str>) -> morphblocks::Result<Source> {
    let given = [args.spec.is_some(), args.raw.is_some(), args.construct.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::InvalidParams(
            "give exactly one of --spec, --raw, --construct".into(),
        ));
    }
    if let Some(path) = &args.spec {
        let mut doc = SpecDocument::read(path)?;
        if let Some(seed) = seed {
            doc.seed = seed.to_string();
        }
        return doc.to_spec().map(Source::Spec);
    }
    if let Some(raw) = &args.raw {
        return raw_stream(raw).map(Source::Literal);
    }
    construct_source(args.construct.as_deref().expect("checked above"))
}

/// Space-separated symbols, or one symbol per character.
fn raw_stream(raw: &str) -> morphblocks::Result<LiteralStream> {
    if raw.contains(char::is_whitespace) {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let mut symbols: Vec<&str> = tokens.clone();
        symbols.sort_unstable();
        symbols.dedup();
        let alphabet = Alphabet::new(symbols.iter().copied())?;
        let letters = tokens
            .iter()
            .map(|t| alphabet.letter(t).expect("collected from the tokens"))
            .collect();
        Ok(LiteralStream::new(alphabet, letters))
    } else {
        LiteralStream::from_chars(raw)
    }
}

enum Pattern {
    Delta(Vec<bool>),
    X(XBlockPattern),
}

fn load_pattern(args: &PatternArgs, alphabet: &Alphabet) -> morphblocks::Result<Pattern> {
    match (&args.delta, &args.x) {
        (Some(d), None) => {
            let symbols: Vec<&str> = d.split(',').map(str::trim).collect();
            Ok(Pattern::Delta(letter_mask(alphabet, &symbols)?))
        }
        (None, Some(x)) => Ok(Pattern::X(XBlockPattern::parse(alphabet, x)?)),
        _ => Err(Error::InvalidParams("give exactly one of --delta, --x".into())),
    }
}

fn read_matrix(path: &Path) -> morphblocks::Result<IntMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&text).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::NotPerron("matrix must be square".into()));
    }
    Ok(IntMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
    ))
}

fn read_indices(path: &Path) -> morphblocks::Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?;
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidParams(format!("bad index {t:?}")))
        })
        .collect()
}

fn perron_input(mu: Option<u64>, matrix: &Option<PathBuf>) -> morphblocks::Result<PerronInput> {
    match (mu, matrix) {
        (Some(mu), None) => Ok(PerronInput::Integer(mu)),
        (None, Some(path)) => Ok(PerronInput::Matrix(read_matrix(path)?)),
        _ => Err(Error::InvalidParams("give exactly one of --mu, --matrix".into())),
    }
}

fn write_spec(report: &ConstructionReport, out: &Option<PathBuf>) -> morphblocks::Result<()> {
    if let (Some(path), Some(doc)) = (out, &report.spec) {
        std::fs::write(path, doc.to_json() + "\n")
            .map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BlocksOutput {
    blocks: Vec<BlockOccurrence>,
    stats: RatioStats,
}

#[derive(Serialize)]
struct AnalyzeOutput {
    blocks: BlocksOutput,
    limsup: LimsupReport,
    exponent: Option<ExponentReport>,
}

fn options(cli: &Cli) -> morphblocks::Result<LimsupOptions> {
    let mut opts = LimsupOptions::default();
    if let Some(h) = cli.horizon {
        opts.block_horizon = h;
    }
    if let Some(t) = &cli.tol {
        opts.tol = parse_rational(t)
            .filter(|t| t > &num_rational::BigRational::from_integer(0.into()))
            .ok_or_else(|| Error::InvalidParams(format!("bad tolerance {t:?}")))?;
    }
    Ok(opts)
}

fn scan_blocks(
    cli: &Cli,
    source: &Source,
    pattern: &Pattern,
    count: Option<usize>,
    positions: Option<usize>,
    window: usize,
) -> morphblocks::Result<BlocksOutput> {
    let cfg = match positions {
        Some(n) => ScanConfig::positions(n),
        None => ScanConfig::count(count.unwrap_or(32)),
    }
    .with_block_horizon(cli.horizon.unwrap_or(DEFAULT_BLOCK_HORIZON));
    let mut stream = source.stream()?;
    let blocks = match pattern {
        Pattern::Delta(mask) => scan_delta_blocks(&mut stream, mask, &cfg)?,
        Pattern::X(x) => scan_x_blocks(&mut stream, x, &cfg)?,
    };
    let stats = RatioStats::from_blocks(&blocks, window);
    Ok(BlocksOutput { blocks, stats })
}

fn limsup(source: &Source, pattern: &Pattern, opts: &LimsupOptions) -> morphblocks::Result<LimsupReport> {
    match (source, pattern) {
        (Source::Spec(spec), Pattern::Delta(mask)) => limsup_delta(spec, mask, opts),
        (Source::Spec(spec), Pattern::X(x)) => limsup_x(spec, x, opts),
        (_, Pattern::Delta(mask)) => {
            if opts.mode == Mode::Exact {
                return Err(Error::Unsupported("exact analysis needs a morphic spec".into()));
            }
            empirical_delta(&mut source.stream()?, mask, opts)
        }
        (_, Pattern::X(x)) => {
            if opts.mode == Mode::Exact {
                return Err(Error::Unsupported("exact analysis needs a morphic spec".into()));
            }
            let mut factory = || source.stream().expect("source validated on load");
            limsup_x_stream(&mut factory, x, opts)
        }
    }
}

fn exponent_for(
    source: &Source,
    base: u32,
    digits: usize,
    window: usize,
    cf: bool,
) -> morphblocks::Result<ExponentReport> {
    let mut exp = DigitExpansion::from_stream(base, source.stream()?)?;
    exponent_report(&mut exp, digits, window, cf)
}

fn execute(cli: &Cli) -> morphblocks::Result<String> {
    let seed = cli.seed_spec.as_deref();
    match &cli.command {
        Command::Gen { source, length, concat } => {
            let source = load_source(source, seed)?;
            let mut stream = source.stream()?;
            let letters = prefix(&mut stream, *length);
            if letters.len() < *length {
                return Err(Error::HorizonExceeded(format!(
                    "word has only {} symbols",
                    letters.len()
                )));
            }
            let alphabet = stream.alphabet();
            Ok(alphabet.render(&letters, *concat && alphabet.is_single_char()))
        }
        Command::Blocks {
            source,
            pattern,
            count,
            positions,
            window,
        } => {
            let source = load_source(source, seed)?;
            let pattern = load_pattern(pattern, &source.alphabet()?)?;
            let out = scan_blocks(cli, &source, &pattern, *count, *positions, *window)?;
            Ok(match cli.format {
                Format::Json => to_json(&out),
                Format::Text => blocks_text(&out),
            })
        }
        Command::Limsup {
            source,
            pattern,
            mode,
            follow,
        } => {
            let source = load_source(source, seed)?;
            let pattern = load_pattern(pattern, &source.alphabet()?)?;
            let mut opts = options(cli)?;
            opts.mode = (*mode).into();
            if let Some(f) = follow {
                opts.follow_horizon = *f;
            }
            let report = limsup(&source, &pattern, &opts)?;
            Ok(match cli.format {
                Format::Json => to_json(&report),
                Format::Text => limsup_text(&report),
            })
        }
        Command::Construct { kind } => {
            let report = match kind {
                ConstructKind::Perron { mu, matrix, count, out } => {
                    let r = perron_spec(&perron_input(*mu, matrix)?, *count)?;
                    write_spec(&r, out)?;
                    r
                }
                ConstructKind::Remark2 {
                    mu,
                    matrix,
                    s,
                    t,
                    count,
                    out,
                } => {
                    let r = remark2_spec(&perron_input(*mu, matrix)?, *s, *t, *count)?;
                    write_spec(&r, out)?;
                    r
                }
                ConstructKind::Rational {
                    p,
                    q,
                    count,
                    kernel_depth,
                } => rational_word(*p, *q, *count, *kernel_depth)?,
                ConstructKind::Power { mu, count } => power_word(*mu, *count)?,
                ConstructKind::ThueMorse { out } => {
                    let doc = SpecDocument::from_spec(&thue_morse_spec());
                    if let Some(path) = out {
                        std::fs::write(path, doc.to_json() + "\n")
                            .map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?;
                    }
                    return Ok(doc.to_json());
                }
            };
            Ok(match cli.format {
                Format::Json => to_json(&report),
                Format::Text => construction_text(&report),
            })
        }
        Command::Exponent {
            source,
            indices,
            base,
            digits,
            window,
            cf,
        } => {
            let report = match indices {
                Some(path) => {
                    let idx = read_indices(path)?;
                    let mut exp = xi_from_indices(*base, &idx)?;
                    exponent_report(&mut exp, *digits, *window, *cf)?
                }
                None => exponent_for(&load_source(source, seed)?, *base, *digits, *window, *cf)?,
            };
            Ok(match cli.format {
                Format::Json => to_json(&report),
                Format::Text => exponent_text(&report),
            })
        }
        Command::Analyze {
            source,
            pattern,
            base,
            digits,
        } => {
            let source = load_source(source, seed)?;
            let pattern = load_pattern(pattern, &source.alphabet()?)?;
            let blocks = scan_blocks(cli, &source, &pattern, None, Some(ANALYZE_POSITIONS), DEFAULT_WINDOW)?;
            let limsup = limsup(&source, &pattern, &options(cli)?)?;
            // not every alphabet reads as base-b digits
            let exponent = match exponent_for(&source, *base, *digits, DEFAULT_WINDOW, false) {
                Ok(r) => Some(r),
                Err(Error::InvalidParams(_)) | Err(Error::InfiniteBlock { .. }) => None,
                Err(e) => return Err(e),
            };
            let out = AnalyzeOutput {
                blocks,
                limsup,
                exponent,
            };
            Ok(match cli.format {
                Format::Json => to_json(&out),
                Format::Text => {
                    let mut text = blocks_text(&out.blocks);
                    text.push('\n');
                    text.push_str(&limsup_text(&out.limsup));
                    if let Some(e) = &out.exponent {
                        text.push('\n');
                        text.push_str(&exponent_text(e));
                    }
                    text
                }
            })
        }
    }
}

/// Prefix read by `analyze`; a block count can run into blocks beyond the horizon.
const ANALYZE_POSITIONS: usize = 1 << 20;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize")
}

fn blocks_text(out: &BlocksOutput) -> String {
    let mut lines: Vec<String> = out
        .blocks
        .iter()
        .map(|b| format!("{}\t{}\t{}", b.k, b.i, b.j))
        .collect();
    let max = out.stats.max.as_ref().map_or("-".into(), morphblocks::format::rational);
    lines.push(format!("blocks: {}  max ratio: {max}", out.blocks.len()));
    lines.join("\n")
}

fn limsup_text(r: &LimsupReport) -> String {
    let value = match &r.value {
        morphblocks::sequences::LimsupValue::Rational(v) => morphblocks::format::rational(v),
        morphblocks::sequences::LimsupValue::Interval(iv) => format!(
            "[{}, {}]",
            morphblocks::format::decimal12(&iv.lo),
            morphblocks::format::decimal12(&iv.hi)
        ),
        morphblocks::sequences::LimsupValue::Estimate(v) => format!("~{}", morphblocks::format::decimal12(v)),
    };
    format!(
        "limsup: {value}\nmethod: {}\nclassification: {}\nchains: {}",
        serde_json::to_value(r.method)
            .expect("tag")
            .as_str()
            .unwrap_or_default(),
        r.classification,
        r.chains.len()
    )
}

fn construction_text(r: &ConstructionReport) -> String {
    let ones: Vec<String> = r.ones.iter().map(|n| n.to_string()).collect();
    let ratios: Vec<String> = r.ratios.iter().map(morphblocks::format::rational).collect();
    format!(
        "target: {}\nones: {}\nratios: {}\nclass C: {}",
        r.target.as_deref().unwrap_or("-"),
        ones.join(" "),
        ratios.join(" "),
        r.class_c
    )
}

fn exponent_text(r: &ExponentReport) -> String {
    let mu = if !r.mu.applicable {
        "n/a".to_string()
    } else if r.mu.diverging {
        "diverging".to_string()
    } else {
        r.mu.tail_decimal.clone().unwrap_or_else(|| "-".into())
    };
    format!(
        "v_b best: {}\nv_b tail: {}\nmu tail: {mu}\nclass C: {}",
        morphblocks::format::rational(&r.v_b.best),
        morphblocks::format::decimal12(&r.v_b.tail),
        r.class_c
    )
}
