use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcmult::corpus::{
    load_corpus, load_file, oracle_report, probe, search, verdict_report, CorpusEntry, ProbeOptions, ProbeReport,
    ResultCache, SearchOptions,
};
use pcmult::obstruction::Genus2Strategy;
use pcmult::pc::{check_consistency, parse_corpus_text, Limits, PcPresentation, WordDisplay};

#[derive(Parser)]
#[command(name = "pcmult", version, about = "Multiplier probes for finite solvable groups")]
struct Cli {
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_elements)]
    max_elements: u64,

    /// Largest number of element pairs that may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_pairs)]
    max_pairs: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    file: PathBuf,

    /// Group to pick when the file holds several stanzas.
    #[arg(long)]
    id: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplier, toral subgroup and verdict of one group.
    Probe {
        #[command(flatten)]
        input: Input,

        /// Also compute the genus-2 subgroup.
        #[arg(long)]
        genus2: bool,

        /// Skip random sampling in the genus-2 probe.
        #[arg(long)]
        exhaustive: bool,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Groups whose multiplier is not generated by toral classes.
    Search {
        #[arg(required = true)]
        paths: Vec<PathBuf>,

        #[arg(long, default_value_t = 1)]
        min_order: u64,

        #[arg(long, default_value_t = u64::MAX)]
        max_order: u64,

        #[arg(long, default_value_t = 1)]
        jobs: usize,

        #[arg(long)]
        cache: Option<PathBuf>,

        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Extension verdict with its evidence.
    Verdict {
        #[command(flatten)]
        input: Input,

        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bar-resolution H₂ against the tails multiplier (order ≤ 32).
    Oracle {
        #[command(flatten)]
        input: Input,
    },
    /// Runs the consistency tests and lists violations.
    Consistency {
        #[command(flatten)]
        input: Input,
    },
}

/// Failure carrying its own exit status.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn select<T>(items: Vec<T>, id: Option<&str>, name: impl Fn(&T) -> &str, file: &Path) -> Result<T> {
    match id {
        Some(id) => items
            .into_iter()
            .find(|x| name(x) == id)
            .with_context(|| format!("{}: no group with id {id}", file.display())),
        None if items.len() == 1 => Ok(items.into_iter().next().unwrap()),
        None => Err(Exit(
            1,
            format!("{} holds {} groups; choose one with --id", file.display(), items.len()),
        )
        .into()),
    }
}

fn load_entry(input: &Input) -> Result<CorpusEntry> {
    let entries = load_file(&input.file)?;
    select(entries, input.id.as_deref(), |e| e.presentation.name(), &input.file)
}

fn probe_text(r: &ProbeReport) -> String {
    let mut s = format!("id {}\ngroupOrder {}\n", r.id, r.group_order);
    if let Some(f) = &r.multiplier_factors {
        let parts: Vec<String> = f.iter().map(u64::to_string).collect();
        s += &format!("multiplier [{}] order {}\n", parts.join(","), r.multiplier_order().unwrap());
    }
    if let (Some(o), Some(g)) = (r.toral_order, r.toral_generated) {
        s += &format!("toral order {o} generated {g}\n");
    }
    if let (Some(o), Some(g)) = (r.genus2_order, r.genus2_generated) {
        s += &format!("genus2 order {o} generated {g}\n");
    }
    if let (Some(i), Some(sp)) = (r.involution_count, r.spherical_possible) {
        s += &format!("involutions {i} spherical {sp}\n");
    }
    if let Some(v) = r.verdict_kind {
        s += &format!("verdict {v}\n");
    }
    if let Some(f) = &r.failed_stage {
        s += &format!("failed {:?}: {}\n", f.stage, f.message);
    }
    s
}

fn run(cli: Cli) -> Result<u8> {
    let limits = Limits {
        max_elements: cli.max_elements,
        max_pairs: cli.max_pairs,
    };
    match cli.command {
        Command::Probe {
            input,
            genus2,
            exhaustive,
            seed,
            format,
        } => {
            let entry = load_entry(&input)?;
            let opts = ProbeOptions {
                genus2,
                strategy: if exhaustive {
                    Genus2Strategy::Exhaustive
                } else {
                    Genus2Strategy::RandomizedThenExhaustive
                },
                seed,
                limits,
            };
            let r = probe(&entry, &opts);
            match format {
                Format::Text => print!("{}", probe_text(&r)),
                Format::Jsonl => println!("{}", r.to_json_line()),
            }
            Ok(match &r.failed_stage {
                None => 0,
                Some(f) if f.guard_exceeded => 4,
                Some(f) => bail!("{:?} stage failed: {}", f.stage, f.message),
            })
        }
        Command::Search {
            paths,
            min_order,
            max_order,
            jobs,
            cache,
            format,
        } => {
            let entries = load_corpus(&paths)?;
            let mut cache = match &cache {
                Some(p) => ResultCache::open(p)?,
                None => ResultCache::in_memory(),
            };
            if cache.skipped_lines > 0 {
                eprintln!("warning: ignored {} unreadable cache lines", cache.skipped_lines);
            }
            let opts = SearchOptions {
                min_order,
                max_order,
                jobs,
                limits,
            };
            let report = search(&entries, &opts, &mut cache)?;
            for f in &report.flagged {
                match format {
                    Format::Text => println!("{}", f.to_text()),
                    Format::Jsonl => println!("{}", f.to_json_line()),
                }
            }
            eprintln!(
                "examined {} groups: {} computed, {} cached, {} flagged",
                report.examined,
                report.computed,
                report.cached,
                report.flagged.len()
            );
            for (id, msg) in &report.guard_failures {
                eprintln!("guard exceeded for {id}: {msg}");
            }
            Ok(if report.guard_failures.is_empty() { 0 } else { 4 })
        }
        Command::Verdict { input, format } => {
            let entry = load_entry(&input)?;
            let r = verdict_report(&entry, &limits)?;
            match format {
                Format::Text => println!("{}", r.to_text()),
                Format::Jsonl => println!("{}", r.to_json_line()),
            }
            Ok(0)
        }
        Command::Oracle { input } => {
            let entry = load_entry(&input)?;
            let r = oracle_report(&entry)?;
            println!("{}", r.to_text());
            Ok(if r.pass { 0 } else { 3 })
        }
        Command::Consistency { input } => {
            let text = std::fs::read_to_string(&input.file)
                .with_context(|| format!("reading {}", input.file.display()))?;
            let all = parse_corpus_text(&input.file.display().to_string(), &text)?;
            let p: PcPresentation = select(all, input.id.as_deref(), |p| p.name(), &input.file)?;
            let violations = check_consistency(&p);
            if violations.is_empty() {
                println!("{} consistent order {}", p.name(), p.order());
                return Ok(0);
            }
            for v in &violations {
                println!("{}: {} != {}", v.test, WordDisplay(&v.left), WordDisplay(&v.right));
            }
            println!("{} inconsistent: {} violations", p.name(), violations.len());
            Ok(3)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<pcmult::Error>() {
        Some(pcmult::Error::Parse { .. }) | Some(pcmult::Error::DuplicateId(_)) => 2,
        Some(pcmult::Error::Inconsistent { .. }) => 3,
        Some(pcmult::Error::GuardExceeded { .. }) => 4,
        Some(pcmult::Error::Io { .. }) => 1,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
