//! The `amen` command line: Reiter and Følner searches, the sofic word
//! problem decider, Følner functions, densities, translates and the generic
//! equality pipeline.

mod error;
mod source;
mod verify;

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use folner::{reiter_search, FolnerFunctionTable, ReiterOutcome, SubsetOrder};
use freegroup::{ball, Alphabet, FiniteWordSet};
use generic_ep::{generic_ep_to_wp, EpOracle, PipelineConfig, PipelineVerdict};
use genericity::{density_report, find_translate, sample_density, SetPredicate};
use presentations::{KernelKind, StagedKernel};
use serde_json::{json, Value};
use sofic_wp::{BoxSupplier, SoficDecider};

pub use error::CliError;
pub use source::Source;
pub use verify::verify_document;

#[derive(Debug, Parser)]
#[command(name = "amen", version, about = "Følner sets, Reiter functions and word problems")]
pub struct RunConfig {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    /// Revalidate a certificate file against its model and exit.
    #[arg(long, value_name = "FILE")]
    pub verify: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// A built-in model such as Z2, heisenberg, lamplighter, free2 or C6.
    #[arg(long, global = true, conflicts_with = "presentation")]
    pub builtin: Option<String>,

    /// A presentation file.
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for an n-invariant characteristic function.
    Reiter {
        #[arg(long)]
        n: u64,
        /// Macro-steps of the dovetail.
        #[arg(long, env = "AMEN_BUDGET_DEFAULT", default_value_t = 10_000)]
        budget: usize,
        /// staged, oracle or syllable; syllable by default for built-ins.
        #[arg(long)]
        kernel: Option<String>,
        /// staged or boxed.
        #[arg(long, default_value = "boxed")]
        order: String,
    },
    /// Decide a word with the sofic decider.
    Wp {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Kernel elements for the partial injections.
        #[arg(long, env = "AMEN_BUDGET_DEFAULT", default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Brute-force Følner function values as CSV.
    Ff {
        /// A value or an inclusive range `a..b`.
        #[arg(long)]
        n: String,
        /// Radius of the ball the subsets are drawn from; the largest n by default.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Exact ball density of a named set.
    Density {
        #[arg(long, alias = "builtin-pred")]
        pred: String,
        /// Rank of the free group.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Print the per-radius table as CSV.
        #[arg(long)]
        csv: bool,
        /// Estimate on the sphere from this many seeded samples instead.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Find y with B_r·y inside a named set.
    Translate {
        #[arg(long, alias = "builtin-pred")]
        pred: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        ball: usize,
        #[arg(long, env = "AMEN_BUDGET_DEFAULT", default_value_t = 100_000)]
        budget: usize,
    },
    /// Run the generic equality pipeline and compare it with the model.
    Pipeline {
        /// Words the equality oracle does not answer for.
        #[arg(long, default_value = "nothing")]
        exclude: String,
        #[arg(long, default_value_t = 5)]
        check_ball: usize,
        #[arg(long, env = "AMEN_BUDGET_DEFAULT", default_value_t = 40)]
        max_rounds: usize,
        /// Also write the transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

/// What a command prints and the exit code it ends with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub code: i32,
}

impl Report {
    fn ok(body: String) -> Report {
        Report { body, code: 0 }
    }
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    if let Some(path) = &config.verify {
        let doc: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
        let source = config.source.resolve_optional()?;
        return verify_document(&doc, source.as_ref());
    }
    let Some(command) = &config.command else {
        return Err(CliError::Usage("a command or --verify is required".into()));
    };
    match command {
        Command::Reiter {
            n,
            budget,
            kernel,
            order,
        } => cmd_reiter(&config.source.resolve()?, *n, *budget, kernel.as_deref(), order, config.seed),
        Command::Wp { word, budget } => cmd_wp(&config.source.resolve()?, word, *budget),
        Command::Ff { n, radius } => cmd_ff(&config.source.resolve()?, n, *radius),
        Command::Density {
            pred,
            d,
            n,
            csv,
            samples,
        } => cmd_density(pred, *d, *n, *csv, *samples, config.seed),
        Command::Translate { pred, d, ball, budget } => cmd_translate(pred, *d, *ball, *budget),
        Command::Pipeline {
            exclude,
            check_ball,
            max_rounds,
            transcript,
        } => cmd_pipeline(
            &config.source.resolve()?,
            exclude,
            *check_ball,
            *max_rounds,
            transcript.as_ref(),
            config.seed,
        ),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

pub fn cmd_reiter(
    source: &Source,
    n: u64,
    budget: usize,
    kernel: Option<&str>,
    order: &str,
    seed: u64,
) -> Result<Report, CliError> {
    if budget == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    let kind = source.kernel_kind(kernel)?;
    let order_kind = SubsetOrder::parse(order).ok_or_else(|| CliError::Usage(format!("unknown order {order:?}")))?;
    let stream = source.kernel(kind)?;
    let alphabet = source.alphabet();
    let outcome = reiter_search(alphabet, stream, n, order_kind, budget)?;
    let mut doc = json!({
        "command": "reiter",
        "seed": seed,
        "source": source.header(),
        "kernel": kernel_name(kind),
        "order": order,
        "n": n,
        "budget": budget,
    });
    let code = match &outcome {
        ReiterOutcome::Accepted {
            certificate,
            candidate,
            macro_step,
        } => {
            doc["outcome"] = json!("accepted");
            doc["candidate"] = json!(candidate);
            doc["macro_step"] = json!(macro_step);
            doc["certificate"] = serde_json::to_value(certificate.to_file(alphabet))?;
            0
        }
        ReiterOutcome::BudgetExhausted { macro_steps } => {
            doc["outcome"] = json!("budget_exhausted");
            doc["macro_steps"] = json!(macro_steps);
            2
        }
    };
    Ok(Report { body: pretty(&doc), code })
}

pub fn kernel_name(kind: KernelKind) -> &'static str {
    match kind {
        KernelKind::Staged => "staged",
        KernelKind::Oracle => "oracle",
        KernelKind::Syllable => "syllable",
    }
}

pub fn cmd_wp(source: &Source, word: &str, budget: usize) -> Result<Report, CliError> {
    let model = source
        .model()
        .ok_or_else(|| CliError::Usage("wp needs a built-in model".into()))?
        .clone();
    let w = model.alphabet().parse_word(word)?;
    let pres = model.presentation().clone();
    let mut decider = SoficDecider::new(
        BoxSupplier::new(model),
        Box::new(move || Box::new(StagedKernel::new(&pres))),
        budget,
    );
    let v = decider.decide(&w)?;
    Ok(Report::ok(v.to_json()))
}

/// `"3"` or `"1..5"`, both ends included.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, CliError> {
    let bad = || CliError::Usage(format!("bad range {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let r = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(text)?;
            v..=v
        }
    };
    if r.is_empty() || *r.start() == 0 {
        return Err(bad());
    }
    Ok(r)
}

pub fn cmd_ff(source: &Source, n: &str, radius: Option<usize>) -> Result<Report, CliError> {
    let model = source
        .model()
        .ok_or_else(|| CliError::Usage("ff needs a built-in model".into()))?;
    let range = parse_range(n)?;
    let radius = radius.unwrap_or(*range.end() as usize);
    let table = FolnerFunctionTable::compute(model.as_ref(), range, radius)?;
    Ok(Report::ok(table.to_csv()?))
}

/// Generators named x, y, z, w up to rank four, a, b, ... beyond.
pub fn free_alphabet(d: usize) -> Result<Alphabet, CliError> {
    let names = ['x', 'y', 'z', 'w'];
    Ok(if (1..=4).contains(&d) {
        Alphabet::with_names(&names[..d])?
    } else {
        Alphabet::new(d)?
    })
}

/// Named sets: `everything`, `nothing`, `ball-<r>`, `powers-<g>`,
/// `nonempty-powers-<g>`, and `not-<name>` for a complement. `<g>` is a
/// generator as written in words, such as `x` or `x2`.
pub fn parse_predicate(name: &str, alphabet: &Alphabet) -> Result<SetPredicate, CliError> {
    if let Some(rest) = name.strip_prefix("not-") {
        return Ok(parse_predicate(rest, alphabet)?.complement());
    }
    let generator = |g: &str| -> Result<usize, CliError> {
        let w = alphabet.parse_word(g)?;
        match w.letters() {
            [l] if !l.is_inverse() => Ok(l.generator()),
            _ => Err(CliError::Usage(format!("{g:?} is not a generator"))),
        }
    };
    if let Some(g) = name.strip_prefix("nonempty-powers-") {
        return Ok(SetPredicate::nonempty_powers_of(generator(g)?));
    }
    if let Some(g) = name.strip_prefix("powers-") {
        return Ok(SetPredicate::powers_of(generator(g)?));
    }
    if let Some(r) = name.strip_prefix("ball-") {
        let r = r.parse().map_err(|_| CliError::Usage(format!("bad radius in {name:?}")))?;
        return Ok(SetPredicate::ball(r));
    }
    match name {
        "everything" => Ok(SetPredicate::everything()),
        "nothing" => Ok(SetPredicate::nothing()),
        _ => Err(CliError::Usage(format!("unknown set {name:?}"))),
    }
}

pub fn cmd_density(
    pred: &str,
    d: usize,
    n: usize,
    csv: bool,
    samples: Option<u64>,
    seed: u64,
) -> Result<Report, CliError> {
    let alphabet = free_alphabet(d)?;
    let p = parse_predicate(pred, &alphabet)?;
    if let Some(s) = samples {
        let est = sample_density(&p, &alphabet, n, s, seed)?;
        return Ok(Report::ok(format!("{}/{} seed {seed}\n", est.hits, est.samples)));
    }
    let report = density_report(&p, &alphabet, n)?;
    if csv {
        return Ok(Report::ok(report.to_csv()?));
    }
    let last = report.rows.last().expect("radius 0 is always present");
    Ok(Report::ok(format!("{}/{}\n", last.hits, last.ball)))
}

pub fn cmd_translate(pred: &str, d: usize, radius: usize, budget: usize) -> Result<Report, CliError> {
    let alphabet = free_alphabet(d)?;
    let p = parse_predicate(pred, &alphabet)?;
    let f: FiniteWordSet = ball(&alphabet, radius).collect();
    let y = find_translate(&p, &f, &alphabet, budget)?;
    Ok(Report::ok(format!("{}\n", alphabet.format_word(&y))))
}

pub fn cmd_pipeline(
    source: &Source,
    exclude: &str,
    check_ball: usize,
    max_rounds: usize,
    transcript: Option<&PathBuf>,
    seed: u64,
) -> Result<Report, CliError> {
    let model = source
        .model()
        .ok_or_else(|| CliError::Usage("pipeline needs a built-in model".into()))?
        .clone();
    let excluded = parse_predicate(exclude, model.alphabet())?;
    let config = PipelineConfig {
        max_rounds,
        ..PipelineConfig::default()
    };
    let oracle = EpOracle::excluding(model.clone(), &excluded);
    let mut decider = generic_ep_to_wp(oracle, model.presentation().clone(), config);
    let (mut agree, mut wrong, mut undecided, mut total) = (0usize, Vec::new(), 0usize, 0usize);
    for w in ball(model.alphabet(), check_ball) {
        total += 1;
        match decider.decide(&w)? {
            PipelineVerdict::Decided(v) if v.is_trivial() == model.is_trivial(&w) => agree += 1,
            PipelineVerdict::Decided(v) => wrong.push(v.word),
            PipelineVerdict::Undecided { .. } => undecided += 1,
        }
    }
    let t = decider.transcript();
    if let Some(path) = transcript {
        fs::write(path, t.to_json())?;
    }
    let pct = |k: usize| k as f64 * 100.0 / total as f64;
    let body = format!(
        "seed {seed}\nmodel {}\nexcluded {}\nwords {total}\nagreement {}%\nundecided {undecided}\nqueries {}\n",
        model.name(),
        excluded.label(),
        fmt_pct(pct(agree)),
        t.queries.queries,
    );
    if let Some(w) = wrong.first() {
        return Err(CliError::Soundness(format!("pipeline disagrees with the model on {w:?}")));
    }
    let code = if undecided > 0 { 2 } else { 0 };
    Ok(Report { body, code })
}

fn fmt_pct(p: f64) -> String {
    if p.fract() == 0.0 {
        format!("{p:.0}")
    } else {
        format!("{p:.2}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").unwrap(), 1..=5);
        assert_eq!(parse_range("1..=3").unwrap(), 1..=3);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn predicates() {
        let a = free_alphabet(2).unwrap();
        let x3 = a.parse_word("xxx").unwrap();
        let e = a.parse_word("").unwrap();
        let p = parse_predicate("powers-x", &a).unwrap();
        assert!(p.contains(&x3).unwrap() && p.contains(&e).unwrap());
        let q = parse_predicate("not-nonempty-powers-x1", &a).unwrap();
        assert!(!q.contains(&x3).unwrap() && q.contains(&e).unwrap());
        assert!(parse_predicate("powers-X", &a).is_err());
        assert!(parse_predicate("powers-q", &a).is_err());
        assert!(parse_predicate("ball-2", &a).unwrap().contains(&a.parse_word("xy").unwrap()).unwrap());
    }

    #[test]
    fn density_of_a_cyclic_subgroup() {
        let r = cmd_density("powers-x", 2, 5, false, None, 0).unwrap();
        assert_eq!(r.body.trim(), "11/485");
    }
}
