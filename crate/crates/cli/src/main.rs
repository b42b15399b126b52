//! `pnw`: generate prefix normal words, compute prefix normal forms, build
//! and query jumbled pattern matching indexes, run self-checks and counting
//! experiments.
//!
//! Exit codes: 0 yes/pass, 1 no/fail, 2 usage or input error, 3 over budget.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pnw_core::pngen::{generate_pn_all, generate_pn_fixed_density, Order};
use pnw_core::stats::{self, Budget};
use pnw_core::verify::{self, Outcome};
use pnw_core::{is_prefix_normal, pnf, BinaryWord, BudgetError, JumbledIndex, Polarity};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "pnw", version, about = "Prefix normal words toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List prefix normal words of length n, one per line
    Generate {
        #[arg(long)]
        n: usize,
        /// Restrict to one density (number of 1s)
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, value_enum, default_value_t = OrderArg::LexDensity, conflicts_with = "density")]
        order: OrderArg,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Allow n up to the extended limit
        #[arg(long)]
        extended: bool,
    },
    /// Test words for prefix normality
    Test(WordInput),
    /// Print prefix normal forms
    Pnf {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum, default_value_t = PolarityArg::Ones)]
        polarity: PolarityArg,
        /// Print the ones form, then the zeros form
        #[arg(long, conflicts_with = "polarity")]
        both: bool,
    },
    /// Jumbled pattern matching index
    Jpm {
        #[command(subcommand)]
        action: JpmAction,
    },
    /// Run a self-check suite for length n
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Counts, growth ratios and mean critical prefix lengths as CSV
    Stats {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write `n,d,count` rows to this file
        #[arg(long)]
        per_density: Option<PathBuf>,
    },
    /// Monte Carlo mean critical prefix length of the normal form of random words
    RandomPnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WordInput {
    /// Word as a 0/1 string
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    word: Option<String>,
    /// Read words from a file, one per line
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TextSource {
    /// Text as a 0/1 string
    #[arg(long)]
    text: Option<String>,
    /// File holding the text
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum JpmAction {
    /// Build an index and write it as `n=<n>` plus `k,min,max` rows
    Build {
        #[command(flatten)]
        source: TextSource,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Does the text have a substring with x ones and y zeros?
    Query {
        #[arg(long, conflicts_with_all = ["file", "index"])]
        text: Option<String>,
        #[arg(long, conflicts_with = "index")]
        file: Option<PathBuf>,
        /// Previously built index file
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    LexDensity,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolarityArg {
    Ones,
    Zeros,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Oracle,
    Graycode,
    Bubble,
    Amortized,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if let Some(io) = err.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("pnw: {err:#}");
            if err.downcast_ref::<BudgetError>().is_some() {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Generate {
            n,
            density,
            order,
            output,
            extended,
        } => cmd_generate(n, density, order, output.as_deref(), extended),
        Command::Test(input) => cmd_test(&input),
        Command::Pnf {
            input,
            polarity,
            both,
        } => cmd_pnf(&input, polarity, both),
        Command::Jpm { action } => cmd_jpm(action),
        Command::Verify { n, mode } => cmd_verify(n, mode),
        Command::Stats {
            max_n,
            extended,
            output,
            per_density,
        } => cmd_stats(max_n, extended, output.as_deref(), per_density.as_deref()),
        Command::RandomPnf {
            n,
            samples,
            seed,
            output,
        } => cmd_random_pnf(n, samples, seed, output.as_deref()),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn budget(extended: bool) -> Budget {
    if extended {
        Budget::extended()
    } else {
        Budget::standard()
    }
}

fn parse_word(s: &str) -> Result<BinaryWord> {
    s.trim()
        .parse()
        .with_context(|| format!("malformed word {s:?}"))
}

fn read_words(input: &WordInput) -> Result<Vec<BinaryWord>> {
    match (&input.word, &input.file) {
        (Some(w), _) => Ok(vec![parse_word(w)?]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_word)
                .collect()
        }
        (None, None) => bail!("a word or --file is required"),
    }
}

fn read_text(text: Option<&str>, file: Option<&Path>) -> Result<BinaryWord> {
    match (text, file) {
        (Some(t), _) => parse_word(t),
        (None, Some(path)) => {
            let content = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let mut lines = content.lines().filter(|l| !l.trim().is_empty());
            let word = lines.next().unwrap_or("");
            if lines.next().is_some() {
                bail!("{} must hold exactly one word", path.display());
            }
            parse_word(word)
        }
        (None, None) => bail!("--text or --file is required"),
    }
}

fn cmd_generate(
    n: usize,
    density: Option<usize>,
    order: OrderArg,
    output: Option<&Path>,
    extended: bool,
) -> Result<u8> {
    if let Some(d) = density {
        if d > n {
            bail!("density {d} exceeds length {n}");
        }
    }
    budget(extended).check(n)?;
    let mut out = open_output(output)?;
    let mut line = Vec::with_capacity(n + 1);
    let mut status = Ok(());
    let mut emit = |v: pnw_core::bubble::WordView<'_>| {
        if status.is_ok() {
            line.clear();
            line.extend(v.bits().iter().map(|&b| b'0' + b));
            line.push(b'\n');
            status = out.write_all(&line);
        }
    };
    match density {
        Some(d) => {
            generate_pn_fixed_density(n, d, &mut emit);
        }
        None => {
            let order = match order {
                OrderArg::LexDensity => Order::DensityIncreasing,
                OrderArg::Cyclic => Order::CyclicOddEven,
            };
            generate_pn_all(n, order, &mut emit);
        }
    }
    status?;
    out.flush()?;
    Ok(0)
}

fn cmd_test(input: &WordInput) -> Result<u8> {
    let words = read_words(input)?;
    let mut out = open_output(None)?;
    let mut all = true;
    for w in &words {
        let normal = is_prefix_normal(w);
        all &= normal;
        let verdict = if normal {
            "prefix-normal"
        } else {
            "not-prefix-normal"
        };
        if words.len() == 1 {
            writeln!(out, "{verdict}")?;
        } else {
            writeln!(out, "{w} {verdict}")?;
        }
    }
    out.flush()?;
    Ok(if all { 0 } else { EXIT_NO })
}

fn cmd_pnf(input: &WordInput, polarity: PolarityArg, both: bool) -> Result<u8> {
    let words = read_words(input)?;
    let mut out = open_output(None)?;
    for w in &words {
        if both {
            writeln!(out, "{}", pnf(w, Polarity::Ones))?;
            writeln!(out, "{}", pnf(w, Polarity::Zeros))?;
        } else {
            let pol = match polarity {
                PolarityArg::Ones => Polarity::Ones,
                PolarityArg::Zeros => Polarity::Zeros,
            };
            writeln!(out, "{}", pnf(w, pol))?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_jpm(action: JpmAction) -> Result<u8> {
    match action {
        JpmAction::Build { source, output } => {
            let text = read_text(source.text.as_deref(), source.file.as_deref())?;
            let mut out = open_output(output.as_deref())?;
            write!(out, "{}", JumbledIndex::build(&text))?;
            out.flush()?;
            Ok(0)
        }
        JpmAction::Query {
            text,
            file,
            index,
            x,
            y,
        } => {
            let idx = match index {
                Some(path) => {
                    let content = fs::read_to_string(&path)
                        .with_context(|| format!("cannot read index {}", path.display()))?;
                    content
                        .parse::<JumbledIndex>()
                        .map_err(|e| anyhow!("invalid index {}: {e}", path.display()))?
                }
                None => JumbledIndex::build(&read_text(text.as_deref(), file.as_deref())?),
            };
            let found = idx.query(x, y);
            println!("{}", if found { "yes" } else { "no" });
            Ok(if found { 0 } else { EXIT_NO })
        }
    }
}

fn cmd_verify(n: usize, mode: ModeArg) -> Result<u8> {
    let mode = match mode {
        ModeArg::Oracle => verify::Mode::Oracle,
        ModeArg::Graycode => verify::Mode::GrayCode,
        ModeArg::Bubble => verify::Mode::Bubble,
        ModeArg::Amortized => verify::Mode::Amortized,
    };
    match verify::run(mode, n)? {
        Outcome::Pass(summary) => {
            println!("pass: {summary}");
            Ok(0)
        }
        Outcome::Fail(failure) => {
            println!("fail: {failure}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_stats(
    max_n: usize,
    extended: bool,
    output: Option<&Path>,
    per_density: Option<&Path>,
) -> Result<u8> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let series = stats::series(max_n, budget(extended))?;
    let mut out = open_output(output)?;
    out.write_all(series.to_csv().as_bytes())?;
    out.flush()?;
    if let Some(path) = per_density {
        fs::write(path, series.per_density_csv())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(0)
}

fn cmd_random_pnf(n: usize, samples: u64, seed: u64, output: Option<&Path>) -> Result<u8> {
    if samples == 0 {
        bail!("--samples must be at least 1");
    }
    let report = stats::random_pnf_experiment(n, samples, seed);
    let mut out = open_output(output)?;
    out.write_all(report.to_csv().as_bytes())?;
    out.flush()?;
    Ok(0)
}
