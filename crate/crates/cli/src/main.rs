//! Command-line front end: build, query, benchmark and corpus statistics.
//!
//! Positions printed by `locate` are 1-based.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use samsami::bench::{run_bench, write_bench_csv, BenchConfig, Searcher, Variant};
use samsami::stats::{
    sampling_report, write_qgram_csv, write_sampling_csv, QgramCounter, SAMPLING_GRID,
};
use samsami::{BuildOptions, IndexBundle, IndexFile, PhraseIndex, SamplingParams};

#[derive(Parser)]
#[command(name = "samsami", version, about = "Sampled suffix arrays with minimizers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file for a text.
    Build(BuildArgs),
    /// Print the 1-based start positions of each pattern.
    Locate(QueryArgs),
    /// Print the number of occurrences of each pattern.
    Count(QueryArgs),
    /// Time count queries over patterns drawn from the text; CSV on stdout.
    Bench(BenchArgs),
    /// Sampling ratios or distinct q-gram counts; CSV on stdout.
    Stats(StatsArgs),
    /// Build an index file carrying the phrase-encoded text.
    PhraseBuild(PhraseBuildArgs),
    /// Locate patterns in the phrase-encoded text stored in an index file.
    PhraseLocate(PhraseLocateArgs),
}

#[derive(Args)]
struct Sampling {
    /// Window length.
    #[arg(long, value_parser = positive)]
    q: usize,
    /// Minimizer length, at most q.
    #[arg(long, value_parser = positive)]
    p: usize,
}

impl Sampling {
    fn params(&self) -> Result<SamplingParams> {
        Ok(SamplingParams::new(self.q, self.p)?)
    }
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    text: PathBuf,
    /// Output path; defaults to the text path with ".ssmi" appended.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    sampling: Sampling,
    /// Extra sections to store: samsami2 (delta annotation), samsami-hash, phrase.
    #[arg(long, value_delimiter = ',', value_parser = variant)]
    variant: Vec<Variant>,
    /// Prefix length of the hash table; implies samsami-hash.
    #[arg(long, value_parser = positive)]
    k: Option<usize>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    text: PathBuf,
    #[arg(long, default_value = "samsami", value_parser = variant)]
    variant: Variant,
    /// Prefix length for samsami-hash when the index stores no table.
    #[arg(long, value_parser = positive)]
    k: Option<usize>,
    /// Sampling step of the sparse suffix array.
    #[arg(long, default_value_t = 4, value_parser = positive)]
    step: usize,
    /// File with one pattern per line.
    #[arg(long)]
    patterns: Option<PathBuf>,
    /// Patterns given on the command line.
    pattern: Vec<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    text: PathBuf,
    /// Pattern length.
    #[arg(long, value_parser = positive)]
    m: usize,
    /// Number of patterns.
    #[arg(long, default_value_t = 100_000, value_parser = positive)]
    patterns: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Variants to run, comma separated; defaults to every variant.
    #[arg(long, value_delimiter = ',', value_parser = variant)]
    variant: Vec<Variant>,
    #[arg(long, value_parser = positive)]
    k: Option<usize>,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    step: usize,
    /// Workers sharing the pattern set.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    threads: usize,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StatsMode {
    SampleRatio,
    Qgrams,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long, value_enum, default_value = "sample-ratio")]
    mode: StatsMode,
    /// Window lengths (sample-ratio) or q-gram lengths (qgrams), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    q: Vec<usize>,
    /// Minimizer lengths for sample-ratio, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    p: Vec<usize>,
}

#[derive(Args)]
struct PhraseBuildArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct PhraseLocateArgs {
    #[arg(long)]
    index: PathBuf,
    /// Checked against the stored checksum when given; the phrase section
    /// does not need it.
    #[arg(long)]
    text: Option<PathBuf>,
    #[arg(long)]
    patterns: Option<PathBuf>,
    pattern: Vec<String>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: samsami::Error| e.to_string())
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn default_out(text: &Path) -> PathBuf {
    let mut s = text.as_os_str().to_owned();
    s.push(".ssmi");
    PathBuf::from(s)
}

fn load<'t>(index: &Path, text: &'t [u8]) -> Result<IndexBundle<'t>> {
    let file = IndexFile::load_path(index).with_context(|| format!("loading {}", index.display()))?;
    Ok(file.attach(text)?)
}

/// Command-line patterns followed by the lines of the patterns file.
fn collect_patterns(args: &[String], file: Option<&Path>) -> Result<Vec<Vec<u8>>> {
    let mut out: Vec<Vec<u8>> = args.iter().map(|s| s.as_bytes().to_vec()).collect();
    if let Some(path) = file {
        let bytes = read(path)?;
        for line in bytes.split(|&b| b == b'\n') {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if !line.is_empty() {
                out.push(line.to_vec());
            }
        }
    }
    if out.is_empty() {
        bail!("no patterns given");
    }
    Ok(out)
}

/// Writes one line per pattern. Failed patterns get an `ERROR` marker and
/// do not stop the batch; returns whether every pattern succeeded.
fn answer_batch<F>(patterns: &[Vec<u8>], mut answer: F) -> Result<bool>
where
    F: FnMut(&[u8]) -> samsami::Result<String>,
{
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut ok = true;
    for pat in patterns {
        out.write_all(pat)?;
        match answer(pat) {
            Ok(line) => writeln!(out, "\t{line}")?,
            Err(e) => {
                ok = false;
                writeln!(out, "\tERROR {e}")?;
            }
        }
    }
    out.flush()?;
    Ok(ok)
}

fn one_based(positions: Vec<usize>) -> String {
    positions
        .iter()
        .map(|p| (p + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_build(args: BuildArgs) -> Result<bool> {
    let params = args.sampling.params()?;
    let text = read(&args.text)?;
    let mut opts = BuildOptions::new(params);
    opts.hash_k = args.k;
    for v in &args.variant {
        match v {
            Variant::Samsami => {}
            Variant::Samsami2 => opts.delta = true,
            Variant::SamsamiHash if args.k.is_none() => bail!("samsami-hash needs --k"),
            Variant::SamsamiHash => {}
            Variant::Phrase => opts.phrase = true,
            Variant::Spasa | Variant::PlainSa => bail!("{v} is built at query time and not stored"),
        }
    }
    let out = args.out.unwrap_or_else(|| default_out(&args.text));
    save(&text, opts, &out)
}

fn save(text: &[u8], opts: BuildOptions, out: &Path) -> Result<bool> {
    let bundle = IndexBundle::build(text, opts)?;
    let bytes = bundle
        .save_to_path(out)
        .with_context(|| format!("writing {}", out.display()))?;
    let n = text.len();
    let sampled = bundle.index.sampled_len();
    eprintln!(
        "n = {n}, n' = {sampled}, ratio = {:.4}, {bytes} bytes written to {}",
        sampled as f64 / n as f64,
        out.display()
    );
    if let Some(ph) = &bundle.phrase {
        eprintln!(
            "phrases = {}, dictionary = {} bytes, stream = {} bytes",
            ph.dictionary().len(),
            ph.dictionary().total_bytes(),
            ph.encoded().stream().len()
        );
        if ph.dictionary_dominates() {
            eprintln!("warning: the phrase dictionary is larger than the encoded stream");
        }
    }
    Ok(true)
}

fn cmd_query(args: QueryArgs, locate: bool) -> Result<bool> {
    let text = read(&args.text)?;
    let bundle = load(&args.index, &text)?;
    let searcher = Searcher::new(&bundle, args.variant, args.k, args.step)?;
    let patterns = collect_patterns(&args.pattern, args.patterns.as_deref())?;
    answer_batch(&patterns, |p| {
        if locate {
            searcher.locate(p).map(one_based)
        } else {
            searcher.count(p).map(|c| c.to_string())
        }
    })
}

fn cmd_bench(args: BenchArgs) -> Result<bool> {
    let text = read(&args.text)?;
    let bundle = load(&args.index, &text)?;
    let variants = if args.variant.is_empty() {
        let mut all = Variant::ALL.to_vec();
        if args.k.is_none() && bundle.hash.is_none() {
            all.retain(|&v| v != Variant::SamsamiHash);
        }
        all
    } else {
        args.variant
    };
    let config = BenchConfig {
        m: args.m,
        patterns: args.patterns,
        seed: args.seed,
        variants,
        k: args.k,
        step: args.step,
        threads: args.threads,
    };
    let rows = run_bench(&bundle, &config)?;
    write_bench_csv(io::stdout().lock(), &rows)?;
    Ok(true)
}

fn cmd_stats(args: StatsArgs) -> Result<bool> {
    let text = read(&args.text)?;
    match args.mode {
        StatsMode::SampleRatio => {
            let grid: Vec<(usize, usize)> = if args.q.is_empty() && args.p.is_empty() {
                SAMPLING_GRID.to_vec()
            } else {
                if args.q.is_empty() || args.p.is_empty() {
                    bail!("--q and --p must be given together");
                }
                let pairs: Vec<_> = args
                    .q
                    .iter()
                    .flat_map(|&q| args.p.iter().filter(move |&&p| p <= q).map(move |&p| (q, p)))
                    .collect();
                if pairs.is_empty() {
                    bail!("no pair with p <= q");
                }
                pairs
            };
            let grid = grid
                .into_iter()
                .filter(|&(q, _)| q <= text.len())
                .map(|(q, p)| SamplingParams::new(q, p))
                .collect::<samsami::Result<Vec<_>>>()?;
            let rows = sampling_report(&text, &grid)?;
            write_sampling_csv(io::stdout().lock(), &rows)?;
        }
        StatsMode::Qgrams => {
            if !args.p.is_empty() {
                bail!("--p applies to sample-ratio only");
            }
            let qs = if args.q.is_empty() { (1..=8).collect() } else { args.q };
            let counter = QgramCounter::new(&text)?;
            let rows = qs
                .iter()
                .map(|&q| Ok((q, counter.count(q)?)))
                .collect::<samsami::Result<Vec<_>>>()?;
            write_qgram_csv(io::stdout().lock(), &rows)?;
        }
    }
    Ok(true)
}

fn cmd_phrase_build(args: PhraseBuildArgs) -> Result<bool> {
    let params = args.sampling.params()?;
    let text = read(&args.text)?;
    let mut opts = BuildOptions::new(params);
    opts.phrase = true;
    let out = args.out.unwrap_or_else(|| default_out(&args.text));
    save(&text, opts, &out)
}

fn cmd_phrase_locate(args: PhraseLocateArgs) -> Result<bool> {
    let file = IndexFile::load_path(&args.index)
        .with_context(|| format!("loading {}", args.index.display()))?;
    let phrase: PhraseIndex = match &args.text {
        Some(path) => {
            let text = read(path)?;
            file.attach(&text)?.phrase
        }
        None => file.phrase,
    }
    .context("the index has no phrase section; build it with phrase-build")?;
    let patterns = collect_patterns(&args.pattern, args.patterns.as_deref())?;
    answer_batch(&patterns, |p| phrase.locate(p).map(one_based))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Locate(a) => cmd_query(a, true),
        Command::Count(a) => cmd_query(a, false),
        Command::Bench(a) => cmd_bench(a),
        Command::Stats(a) => cmd_stats(a),
        Command::PhraseBuild(a) => cmd_phrase_build(a),
        Command::PhraseLocate(a) => cmd_phrase_locate(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
