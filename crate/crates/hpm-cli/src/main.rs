//! `hpm`: run the hyper pattern matching engines from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperpm::engine::{run, Algorithm, EngineOptions};
use hyperpm::families::{BenchSpec, Family};
use hyperpm::oracle::{brute_force_match_set, naa_from_cnf, sat_brute_force, Cnf};
use hyperpm::prune::filter_irrelevant;
use hyperpm::{io, Error, MatchSet, Naa, QueueMode, SkipTables, WordSet};

#[derive(Parser)]
#[command(name = "hpm", version, about = "Hyper pattern matching over sets of logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Naive,
    Fjs,
    Proj,
    FjsProj,
    Oracle,
}

impl Engine {
    fn algorithm(self) -> Option<Algorithm> {
        match self {
            Engine::Naive => Some(Algorithm::Naive),
            Engine::Fjs => Some(Algorithm::Fjs),
            Engine::Proj => Some(Algorithm::Proj),
            Engine::FjsProj => Some(Algorithm::FjsProj),
            Engine::Oracle => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Matches,
    Stats,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Filtered,
}

#[derive(clap::Args)]
struct Inputs {
    /// NAA document (JSON).
    #[arg(long)]
    naa: PathBuf,
    /// Word files, one word per line; ids continue across files.
    #[arg(long = "words", required = true, num_args = 1..)]
    words: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the match set.
    Match {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "fjs-proj")]
        algorithm: Engine,
        #[arg(long, value_enum, default_value = "matches")]
        output: Output,
        /// Which starts the projection engines keep.
        #[arg(long, value_enum, default_value = "filtered")]
        queue_mode: Mode,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Brute-force match set, or the reduction instance of a CNF.
    Oracle {
        #[arg(long, required_unless_present = "cnf")]
        naa: Option<PathBuf>,
        #[arg(long = "words", num_args = 1.., required_unless_present = "cnf")]
        words: Vec<PathBuf>,
        /// DIMACS clause file; matches are those of the reduction.
        #[arg(long, conflicts_with_all = ["naa", "words"])]
        cnf: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "matches")]
        output: Output,
    },
    /// Write a benchmark automaton and a seeded word file.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        naa_out: PathBuf,
        #[arg(long)]
        words_out: PathBuf,
    },
    /// Run engines over a sweep and print a tab-separated table.
    Bench {
        #[arg(long)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        counts: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "naive,fjs,proj,fjs-proj")]
        algorithms: Vec<Engine>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-cell limit in seconds; exceeded cells are reported, not fatal.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Print SM, SM_m, LastQS, DeltaQS and DeltaKMP.
    DumpSkipTables {
        #[arg(long)]
        naa: PathBuf,
    },
    /// Print each word's mask per direction, `_` for filtered letters.
    DumpFiltered {
        #[command(flatten)]
        inputs: Inputs,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Parse { location: path.display().to_string(), message: e.to_string() }.into()
    })
}

fn load_naa(path: &Path) -> Result<Naa> {
    Ok(io::parse_naa(&read(path)?, &path.display().to_string())?)
}

fn load_words(paths: &[PathBuf], naa: &Naa) -> Result<WordSet> {
    let mut all = Vec::new();
    for p in paths {
        let ws = io::parse_words(&read(p)?, naa.alphabet(), &p.display().to_string())?;
        all.extend(ws.words().iter().cloned());
    }
    Ok(WordSet::new(all))
}

fn render_matches(out: &mut String, matches: &MatchSet) {
    for t in matches {
        let _ = writeln!(out, "{t}");
    }
}

fn queue_mode(m: Mode) -> QueueMode {
    match m {
        Mode::Exact => QueueMode::Exact,
        Mode::Filtered => QueueMode::Filtered,
    }
}

fn cmd_match(inputs: &Inputs, engine: Engine, output: Output, mode: Mode, workers: usize) -> Result<String> {
    let naa = load_naa(&inputs.naa)?;
    let ws = load_words(&inputs.words, &naa)?;
    let mut out = String::new();
    let (matches, stats) = match engine.algorithm() {
        Some(alg) => {
            let opts = EngineOptions { queue_mode: queue_mode(mode), workers: workers.max(1), ..Default::default() };
            let o = run(&naa, &ws, alg, &opts)?;
            let line = o.stats.render(alg, o.matches.len());
            (o.matches, line)
        }
        None => {
            let t0 = Instant::now();
            let m = brute_force_match_set(&naa, &ws)?;
            let line = format!("algorithm=oracle matches={} elapsed_us={}", m.len(), t0.elapsed().as_micros());
            (m, line)
        }
    };
    if output != Output::Stats {
        render_matches(&mut out, &matches);
    }
    if output != Output::Matches {
        let _ = writeln!(out, "{stats}");
    }
    Ok(out)
}

fn cmd_oracle(naa: Option<&Path>, words: &[PathBuf], cnf: Option<&Path>, output: Output) -> Result<String> {
    let t0 = Instant::now();
    let (matches, extra) = match cnf {
        Some(path) => {
            let cnf = Cnf::parse_dimacs(&read(path)?).map_err(|e| match e {
                Error::Parse { location, message } => {
                    Error::Parse { location: format!("{}: {location}", path.display()), message }
                }
                e => e,
            })?;
            let sat = sat_brute_force(&cnf)?;
            let (naa, ws) = naa_from_cnf(&cnf);
            (brute_force_match_set(&naa, &ws)?, format!(" sat={sat}"))
        }
        None => {
            let naa = load_naa(naa.context("--naa is required without --cnf")?)?;
            let ws = load_words(words, &naa)?;
            (brute_force_match_set(&naa, &ws)?, String::new())
        }
    };
    let mut out = String::new();
    if output != Output::Stats {
        render_matches(&mut out, &matches);
    }
    if output != Output::Matches {
        let _ =
            writeln!(out, "algorithm=oracle matches={}{extra} elapsed_us={}", matches.len(), t0.elapsed().as_micros());
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(family: Family, k: usize, len: usize, count: usize, seed: u64, naa_out: &Path, words_out: &Path) -> Result<String> {
    let spec = BenchSpec { family, k, word_len: len, word_count: count, seed };
    let (naa, ws) = spec.generate()?;
    fs::write(naa_out, io::write_naa(&naa)).with_context(|| format!("writing {}", naa_out.display()))?;
    fs::write(words_out, io::write_words(&ws, naa.alphabet()))
        .with_context(|| format!("writing {}", words_out.display()))?;
    Ok(String::new())
}

struct BenchArgs {
    family: Family,
    ks: Vec<usize>,
    lengths: Vec<usize>,
    counts: Vec<usize>,
    engines: Vec<Engine>,
    reps: usize,
    seed: u64,
    timeout: Duration,
    workers: usize,
}

fn cmd_bench(a: &BenchArgs) -> Result<String> {
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "family\tk\tlen\tcount\talgorithm\treps\tmean_ms\ttrials\tskipped_qs\tskipped_kmp\tpruned\tmatches\tstatus")?;
    for &k in &a.ks {
        for &len in &a.lengths {
            for &count in &a.counts {
                let spec = BenchSpec { family: a.family, k, word_len: len, word_count: count, seed: a.seed };
                let (naa, ws) = spec.generate()?;
                for &engine in &a.engines {
                    let row = bench_cell(&naa, &ws, engine, a);
                    writeln!(stdout, "{}\t{k}\t{len}\t{count}\t{}\t{row}", a.family, engine_name(engine))?;
                }
            }
        }
    }
    Ok(String::new())
}

fn engine_name(e: Engine) -> &'static str {
    e.algorithm().map_or("oracle", Algorithm::name)
}

fn bench_cell(naa: &Naa, ws: &WordSet, engine: Engine, a: &BenchArgs) -> String {
    let Some(alg) = engine.algorithm() else {
        let t0 = Instant::now();
        return match brute_force_match_set(naa, ws) {
            Ok(m) => format!("1\t{:.3}\t-\t-\t-\t-\t{}\tok", t0.elapsed().as_secs_f64() * 1e3, m.len()),
            Err(e) => format!("0\t-\t-\t-\t-\t-\t-\t{}", status(&e)),
        };
    };
    let mut total = Duration::ZERO;
    let mut last = None;
    for _ in 0..a.reps.max(1) {
        let opts = EngineOptions {
            workers: a.workers.max(1),
            deadline: Some(Instant::now() + a.timeout),
            ..Default::default()
        };
        match run(naa, ws, alg, &opts) {
            Ok(o) => {
                total += o.stats.elapsed;
                last = Some(o);
            }
            Err(e) => return format!("{}\t-\t-\t-\t-\t-\t-\t{}", a.reps, status(&e)),
        }
    }
    let o = last.expect("at least one repetition");
    let s = &o.stats;
    format!(
        "{}\t{:.3}\t{}\t{}\t{}\t{}\t{}\tok",
        a.reps.max(1),
        total.as_secs_f64() * 1e3 / a.reps.max(1) as f64,
        s.trials,
        s.skipped_qs,
        s.skipped_kmp,
        s.pruned_by_projection,
        o.matches.len()
    )
}

fn status(e: &Error) -> &'static str {
    match e {
        Error::Timeout => "timeout",
        Error::Guard(_) => "guard",
        _ => "error",
    }
}

fn cmd_dump_skip(naa: &Path) -> Result<String> {
    let naa = load_naa(naa)?;
    Ok(SkipTables::compute(&naa)?.render(&naa))
}

fn cmd_dump_filtered(inputs: &Inputs) -> Result<String> {
    let naa = load_naa(&inputs.naa)?;
    let ws = load_words(&inputs.words, &naa)?;
    let mut out = String::new();
    for m in 0..naa.k() {
        let dfa = naa.project(m)?;
        for (id, w) in ws.words().iter().enumerate() {
            let f = filter_irrelevant(&dfa, w, id);
            let _ = writeln!(out, "word={id} dir={} {}", m + 1, f.render(naa.alphabet()));
        }
    }
    Ok(out)
}

fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Match { inputs, algorithm, output, queue_mode, workers } => {
            cmd_match(&inputs, algorithm, output, queue_mode, workers)
        }
        Command::Oracle { naa, words, cnf, output } => cmd_oracle(naa.as_deref(), &words, cnf.as_deref(), output),
        Command::Gen { family, k, len, count, seed, naa_out, words_out } => {
            cmd_gen(family, k, len, count, seed, &naa_out, &words_out)
        }
        Command::Bench { family, k, lengths, counts, algorithms, reps, seed, timeout, workers } => cmd_bench(&BenchArgs {
            family,
            ks: k,
            lengths,
            counts,
            engines: algorithms,
            reps,
            seed,
            timeout: Duration::from_secs_f64(timeout.max(0.0)),
            workers,
        }),
        Command::DumpSkipTables { naa } => cmd_dump_skip(&naa),
        Command::DumpFiltered { inputs } => cmd_dump_filtered(&inputs),
    }
}

/// 2 for unreadable or malformed input, 3 for guard and resource limits.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::UnknownLetter(_) | Error::InvalidToken(_) | Error::DuplicateLetter(_)) => 2,
        Some(Error::Guard(_) | Error::SubsetLimit { .. } | Error::Timeout | Error::EmptyPatternLanguage) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
