//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, invalid base),
//! 2 for runtime failures (I/O, malformed input files, budgets).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::prime_power;
use crate::analysis::{has_four_cycle, GirthMode, GraphStats};
use crate::channel::{DecoderConfig, DEFAULT_CLIP, DEFAULT_MAX_ITER, DEFAULT_NORMALIZATION};
use crate::code::{
    export_alist, gf2_rank, import_alist, parity_check_for_spec, rate_report, rate_report_for_graph, ParityCheckMatrix,
};
use crate::graph::{build_graph, ComponentSelection, Family, GraphSpec, IncidenceGraph};
use crate::sim::{emit_csv, run_sweep, EbN0Grid, MessageSource, SimCode, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "gq-ldpc", version, about = "LDPC codes from F(F_q, F_q^2) and F(Z_n, Z_n^2) incidence graphs")]
struct Cli {
    /// Worker threads for graph building, girth search and simulation [default: all cores]
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the JSON graph spec for a family/base/restriction
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        /// Output file [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report vertex/edge counts, bidegree, density, girth and components
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Girth computation: exact, sampled (upper bound) or skip; auto is exact up to 5000 vertices
        #[arg(long, value_enum, default_value_t = GirthArg::Auto)]
        girth: GirthArg,
        /// Number of BFS roots for sampled girth
        #[arg(long, default_value_t = 64)]
        girth_roots: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the parity-check matrix (alist) or the graph spec (json)
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::Alist)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// GF(2) rank of the parity-check matrix
    Rank {
        #[command(flatten)]
        input: CodeArgs,
    },
    /// Design rate, true rate and dimension of the code
    Rate {
        #[command(flatten)]
        input: CodeArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Monte-Carlo BER/FER sweep over BPSK/AWGN, CSV output
    Simulate {
        #[command(flatten)]
        input: CodeArgs,
        /// Eb/N0 grid in dB, start:step:stop (stop inclusive)
        #[arg(long, default_value = "0:1:8")]
        ebn0: String,
        #[arg(long, value_enum, default_value_t = DecoderArg::Spa)]
        decoder: DecoderArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Min-sum scaling factor in (0, 1]
        #[arg(long, default_value_t = DEFAULT_NORMALIZATION)]
        normalization: f64,
        /// Message magnitude bound
        #[arg(long, default_value_t = DEFAULT_CLIP)]
        clip: f64,
        #[arg(long, default_value_t = crate::sim::DEFAULT_MAX_FRAMES)]
        max_frames: u64,
        /// Stop a point after this many bit errors (0: run max-frames)
        #[arg(long, default_value_t = crate::sim::DEFAULT_MIN_BIT_ERRORS)]
        min_bit_errors: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SourceArg::Random)]
        source: SourceArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long, value_enum, conflicts_with = "spec")]
    family: Option<FamilyArg>,
    /// q (prime power) for field graphs, n >= 2 for ring graphs
    #[arg(long, conflicts_with = "spec")]
    base: Option<u32>,
    /// Keep lines whose x is among the first r values
    #[arg(long, conflicts_with_all = ["restrict_x", "spec"])]
    restrict_r: Option<u32>,
    /// Keep lines whose x is in this comma-separated list
    #[arg(long, value_delimiter = ',', conflicts_with = "spec")]
    restrict_x: Option<Vec<u32>>,
    /// Component used for the code
    #[arg(long, value_enum, conflicts_with = "spec")]
    component: Option<ComponentArg>,
    /// Read the graph spec from a JSON file written by `construct`
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CodeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Use a parity-check matrix from an alist file instead of a graph
    #[arg(long, conflicts_with_all = ["family", "base", "spec", "restrict_r", "restrict_x", "component"])]
    code: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Field,
    Ring,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComponentArg {
    Largest,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Alist,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GirthArg {
    Auto,
    Exact,
    Sampled,
    Skip,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Spa,
    Minsum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Random,
    AllZero,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl GraphArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none() && self.base.is_none() && self.spec.is_none()
    }

    fn to_spec(&self) -> CliResult<GraphSpec> {
        if let Some(path) = &self.spec {
            let text = fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            let spec = GraphSpec::from_json(&text)?;
            validate_base(spec.family, spec.base)?;
            return Ok(spec);
        }
        let family = match self.family {
            Some(FamilyArg::Field) => Family::Field,
            Some(FamilyArg::Ring) => Family::Ring,
            None => return Err(usage("--family is required (or --spec)")),
        };
        let base = self.base.ok_or_else(|| usage("--base is required (or --spec)"))?;
        validate_base(family, base)?;
        let big = base.checked_mul(base).ok_or_else(|| usage("--base is too large"))?;
        let mut spec = GraphSpec::new(family, base);
        if let Some(r) = self.restrict_r {
            if r == 0 || r > big {
                return Err(usage(format!("--restrict-r must lie in 1..={big}, got {r}")));
            }
            spec = spec.with_first_r(r);
        }
        if let Some(xs) = &self.restrict_x {
            if let Some(&bad) = xs.iter().find(|&&x| x >= big) {
                return Err(usage(format!("--restrict-x value {bad} is outside 0..{big}")));
            }
            spec = spec.with_restriction(xs.clone());
        }
        if let Some(c) = self.component {
            spec.component = match c {
                ComponentArg::Largest => ComponentSelection::Largest,
                ComponentArg::All => ComponentSelection::All,
            };
        }
        Ok(spec)
    }
}

fn validate_base(family: Family, base: u32) -> CliResult<()> {
    match family {
        Family::Field if prime_power(base).is_none() => {
            Err(usage(format!("--base {base} is not a prime power (required for --family field)")))
        }
        Family::Field if base > crate::algebra::MAX_FIELD_ORDER => Err(usage(format!(
            "--base {base} exceeds the largest supported field order {}",
            crate::algebra::MAX_FIELD_ORDER
        ))),
        Family::Ring if base < 2 => Err(usage(format!("--base must be at least 2 for --family ring, got {base}"))),
        _ => Ok(()),
    }
}

enum LoadedCode {
    Graph(Box<IncidenceGraph>, ParityCheckMatrix),
    File(ParityCheckMatrix),
}

impl LoadedCode {
    fn h(&self) -> &ParityCheckMatrix {
        match self {
            LoadedCode::Graph(_, h) | LoadedCode::File(h) => h,
        }
    }
}

fn load_code(args: &CodeArgs) -> CliResult<LoadedCode> {
    if let Some(path) = &args.code {
        let text = fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        return Ok(LoadedCode::File(import_alist(&text)?));
    }
    if args.graph.is_empty() {
        return Err(usage("give either --code <alist> or --family/--base (or --spec)"));
    }
    let spec = args.graph.to_spec()?;
    let g = build_graph(&spec)?;
    let h = parity_check_for_spec(&g)?;
    Ok(LoadedCode::Graph(Box::new(g), h))
}

/// Writes to `path` through a temporary file in the same directory, or to `stdout`.
fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| CliError::Runtime(format!("{}: {}", path.display(), e.error)))?;
            Ok(())
        }
    }
}

fn analyze(graph: &GraphArgs, format: ReportFormat, girth: GirthArg, roots: usize) -> CliResult<String> {
    let spec = graph.to_spec()?;
    let g = build_graph(&spec)?;
    let bip = g.to_bipartite();
    let mode = match girth {
        GirthArg::Exact => GirthMode::Exact,
        GirthArg::Sampled => GirthMode::Sampled(roots),
        GirthArg::Skip => GirthMode::Skip,
        GirthArg::Auto if bip.num_vertices() <= 5000 => GirthMode::Exact,
        GirthArg::Auto => GirthMode::Sampled(roots),
    };
    let stats = GraphStats::compute(&bip, mode)?;
    let four_cycle = has_four_cycle(&ParityCheckMatrix::from_bipartite(&bip));
    Ok(match format {
        ReportFormat::Json => {
            let mut v = stats.to_json();
            v["graph"] = serde_json::to_value(g.spec()).expect("spec serialises");
            v["has_four_cycle"] = json!(four_cycle);
            format!("{}\n", serde_json::to_string_pretty(&v).expect("report serialises"))
        }
        ReportFormat::Text => {
            let s = g.spec();
            let mut head = format!("graph:      F({}, base {})", s.family, s.base);
            if let Some(m) = &s.modulus {
                head += &format!(" modulus {m}");
            }
            if let Some(r) = &s.restriction {
                head += &format!(" restricted to r = {}", r.len());
            }
            format!("{head}\n{stats}\nfour-cycle: {four_cycle}\n")
        }
    })
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Construct { graph, out } => {
            let spec = graph.to_spec()?;
            // build once so invalid specs fail here rather than downstream
            let g = build_graph(&spec)?;
            emit(out.as_deref(), &format!("{}\n", g.spec().to_json()), stdout)
        }
        Command::Analyze { graph, format, girth, girth_roots, out } => {
            let text = analyze(&graph, format, girth, girth_roots)?;
            emit(out.as_deref(), &text, stdout)
        }
        Command::Export { graph, format, out } => {
            let spec = graph.to_spec()?;
            let g = build_graph(&spec)?;
            let text = match format {
                ExportFormat::Alist => export_alist(&parity_check_for_spec(&g)?),
                ExportFormat::Json => format!("{}\n", g.spec().to_json()),
            };
            emit(out.as_deref(), &text, stdout)
        }
        Command::Rank { input } => {
            let code = load_code(&input)?;
            let h = code.h();
            writeln!(stdout, "{} (rows {}, columns {})", gf2_rank(h)?, h.rows(), h.cols())?;
            Ok(())
        }
        Command::Rate { input, format } => {
            let code = load_code(&input)?;
            let report = match &code {
                LoadedCode::Graph(g, h) => rate_report_for_graph(g, h)?,
                LoadedCode::File(h) => rate_report(h)?,
            };
            match format {
                ReportFormat::Text => writeln!(stdout, "{report}")?,
                ReportFormat::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&report).unwrap())?,
            }
            Ok(())
        }
        Command::Simulate {
            input,
            ebn0,
            decoder,
            max_iter,
            normalization,
            clip,
            max_frames,
            min_bit_errors,
            seed,
            source: msg_source,
            out,
        } => {
            let grid: EbN0Grid = ebn0.parse().map_err(|e: crate::Error| usage(format!("--ebn0: {e}")))?;
            if max_iter == 0 {
                return Err(usage("--max-iter must be at least 1"));
            }
            if max_frames == 0 {
                return Err(usage("--max-frames must be at least 1"));
            }
            if !(normalization > 0.0 && normalization <= 1.0) {
                return Err(usage("--normalization must lie in (0, 1]"));
            }
            if clip.is_nan() || clip <= 0.0 {
                return Err(usage("--clip must be positive"));
            }
            let kind = match decoder {
                DecoderArg::Spa => DecoderConfig::spa(max_iter),
                DecoderArg::Minsum => DecoderConfig::minsum(max_iter, normalization),
            };
            let cfg = SweepConfig {
                grid: grid.values(),
                max_frames,
                min_bit_errors,
                decoder: DecoderConfig { clip, ..kind },
                seed,
                source: match msg_source {
                    SourceArg::Random => MessageSource::Random,
                    SourceArg::AllZero => MessageSource::AllZero,
                },
            };
            let code = load_code(&input)?;
            let h = match code {
                LoadedCode::Graph(_, h) | LoadedCode::File(h) => h,
            };
            let sim = SimCode::new(h)?;
            let points = run_sweep(&sim, &cfg)?;
            emit(out.as_deref(), &emit_csv(&points), stdout)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };

    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli, &mut buf)),
            Err(e) => Err(CliError::Runtime(e.to_string())),
        },
        None => dispatch(cli, &mut buf),
    };
    if let Err(e) = stdout.write_all(&buf) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Runtime(msg)) = &e;
            let _ = writeln!(stderr, "error: {msg}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gq-ldpc").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["construct", "--family", "field", "--base", "6"]).0, 1);
        assert_eq!(run_capture(&["construct", "--family", "ring", "--base", "1"]).0, 1);
        assert_eq!(run_capture(&["construct", "--bogus"]).0, 1);
        assert_eq!(run_capture(&["analyze", "--family", "ring", "--base", "3", "--restrict-r", "10"]).0, 1);
        assert_eq!(run_capture(&["rank"]).0, 1);
        let (code, _, err) = run_capture(&["export", "--family", "field", "--base", "12"]);
        assert_eq!(code, 1);
        assert!(err.contains("--base"));
    }

    #[test]
    fn runtime_errors_exit_two() {
        let (code, _, err) = run_capture(&["rank", "--code", "/nonexistent/h.alist"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }

    #[test]
    fn help_lists_flags() {
        for sub in ["construct", "analyze", "export", "rank", "rate", "simulate"] {
            let (code, out, _) = run_capture(&[sub, "--help"]);
            assert_eq!(code, 0);
            assert!(out.contains("--threads"), "{sub}");
        }
        let (_, out, _) = run_capture(&["simulate", "--help"]);
        for flag in [
            "--ebn0",
            "--decoder",
            "--max-iter",
            "--max-frames",
            "--min-bit-errors",
            "--seed",
            "--out",
            "[default: 50]",
        ] {
            assert!(out.contains(flag), "{flag}");
        }
    }

    #[test]
    fn rank_of_small_ring_graph() {
        let (code, out, _) = run_capture(&["rank", "--family", "ring", "--base", "2", "--component", "all"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("(rows 16, columns 32)\n"), "{out}");
    }
}
