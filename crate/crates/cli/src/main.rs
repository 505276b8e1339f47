use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gamma4::coset::{self, EnumerationConfig, FpPresentation, Outcome, Strategy};
use gamma4::homology::{self, binomial, HomologyMap};
use gamma4::normal_form::NormalFormEngine;
use gamma4::presentation::{Family, GroupWord, Presentation, Variant};
use gamma4::verify::{self, SweepReport};
use gamma4::QuadSymbol;

const QUOTIENT_BANNER: &str =
    "note: for n < 6 the normal form describes a finite quotient only, not the group itself";

#[derive(Parser)]
#[command(name = "gamma4", version, about = "Computation in the pentagon groups on quadruple symbols")]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputFlags {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,
    /// Emit plain text.
    #[arg(long, global = true)]
    plain: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Gamma,
    GammaHat,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Gamma => Variant::Gamma,
            VariantArg::GammaHat => Variant::GammaHat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Representation,
    CosetEnum,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, value_enum, default_value = "hlt")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = coset::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Table memory limit in bytes; accepts K, M, G suffixes.
    #[arg(long, env = "GAMMA4_MAX_MEMORY", default_value = "8G", value_parser = parse_size)]
    max_memory: usize,
    /// Disable lookahead when the table fills up.
    #[arg(long)]
    no_lookahead: bool,
}

impl EnumArgs {
    fn config(&self) -> EnumerationConfig {
        EnumerationConfig {
            strategy: self.strategy.into(),
            max_cosets: self.max_cosets,
            max_memory: self.max_memory,
            lookahead: !self.no_lookahead,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the defining presentation.
    Presentation {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "gamma")]
        variant: VariantArg,
    },
    /// Evaluate a word such as "(1 2 3 4)(1 2 3 5)^-1" to its normal form.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        /// Also print a hexadecimal coefficient dump.
        #[arg(long)]
        hex: bool,
    },
    /// Commutator of two words.
    Commutator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        with: String,
    },
    /// Group order, from the representation or by coset enumeration.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "representation")]
        method: Method,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Abelianization rank, and coordinates of a symbol if given.
    Homology {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        symbol: Option<String>,
    },
    /// Check relations and commutator identities in the representation.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated: involutive, commutative, pentagon, commutators,
        /// center, transport, or all.
        #[arg(long, default_value = "all")]
        families: String,
    },
    /// Todd-Coxeter coset enumeration.
    Enumerate {
        /// Build the presentation for this n (ignored with --input).
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "gamma")]
        variant: VariantArg,
        /// Read a presentation file instead of building one.
        #[arg(long)]
        input: Option<String>,
        /// Add every commutator of generators.
        #[arg(long)]
        abelianize: bool,
        /// Subgroup generators as words separated by ';'.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Recompute the pentagon case tables.
    Tables {
        #[arg(long, default_value_t = verify::DEFAULT_MAX_N)]
        n: usize,
    },
}

fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let (digits, shift) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 30),
        _ => (s, 0),
    };
    let base: usize = digits.parse().map_err(|_| format!("bad size {s:?}"))?;
    base.checked_mul(1 << shift)
        .ok_or_else(|| format!("size {s:?} overflows"))
}

/// A failure that should exit with status 1 rather than 2.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, plain: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            println!("{}", plain());
        }
        Ok(())
    }
}

fn quotient_note(out: &Output, n: usize) {
    if n < 6 && !out.json {
        eprintln!("{QUOTIENT_BANNER}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let report_default = matches!(
        cli.command,
        Command::Verify { .. } | Command::Enumerate { .. } | Command::Homology { .. } | Command::Tables { .. }
    );
    let out = Output {
        json: cli.output.json || (report_default && !cli.output.plain),
    };
    match cli.command {
        Command::Presentation { n, variant } => {
            let p = Presentation::build(variant.into(), n)?;
            let counts = p.family_counts();
            let value = json!({
                "variant": p.variant.to_string(),
                "n": n,
                "generators": p.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "relators": p.relators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "counts": Family::ALL.iter().map(|f| (f.to_string(), counts[f])).collect::<std::collections::BTreeMap<_, _>>(),
            });
            out.emit(&value, || p.serialize().trim_end().to_string())
        }
        Command::Eval { n, word, hex } => {
            let engine = NormalFormEngine::new(n)?;
            quotient_note(&out, n);
            let w = GroupWord::parse(n, &word)?;
            let x = engine.evaluate(&w)?;
            let value = json!({
                "n": n,
                "eps": x.eps as u8,
                "coeffs": x.coeffs.to_hex(),
                "normal_form": engine.display(&x).to_string(),
                "order": engine.element_order(&x)?,
                "quotient_only": !engine.is_faithful(),
            });
            out.emit(&value, || {
                let mut s = engine.display(&x).to_string();
                if hex {
                    s.push_str(&format!("\nhex {}", x.to_hex()));
                }
                s
            })
        }
        Command::Commutator { n, word, with } => {
            let engine = NormalFormEngine::new(n)?;
            quotient_note(&out, n);
            let x = engine.evaluate(&GroupWord::parse(n, &word)?)?;
            let y = engine.evaluate(&GroupWord::parse(n, &with)?)?;
            let c = engine.commutator(&x, &y)?;
            let value = json!({
                "n": n,
                "commutator": engine.display(&c).to_string(),
                "central": c.eps,
                "quotient_only": !engine.is_faithful(),
            });
            out.emit(&value, || engine.display(&c).to_string())
        }
        Command::Order { n, method, enumeration } => match method {
            Method::Representation => {
                let engine = NormalFormEngine::new(n)?;
                quotient_note(&out, n);
                let k = engine.image_order_log2();
                let order = if k < 128 { (1u128 << k).to_string() } else { format!("2^{k}") };
                let value = json!({
                    "n": n,
                    "method": "representation",
                    "order": order,
                    "log2": k,
                    "quotient_only": !engine.is_faithful(),
                });
                out.emit(&value, || order.clone())
            }
            Method::CosetEnum => {
                let p = Presentation::gamma(n)?;
                let fp = FpPresentation::try_from(&p)?;
                let r = coset::enumerate(&fp, &[], &enumeration.config())?;
                emit_enumeration(&out, &r)
            }
        },
        Command::Homology { n, symbol } => {
            let rank = homology::image_rank(n)?;
            let expected = binomial(n, 3) - 1;
            let mut value = json!({"n": n, "rank": rank, "expected": expected, "match": rank == expected});
            let mut plain = format!("rank {rank} (expected {expected})");
            if let Some(s) = symbol {
                let h = HomologyMap::new(n)?;
                let q = QuadSymbol::parse(n, &s)?;
                let coords = h.lambda_coordinates(q)?;
                let letters: Vec<String> = coords.ones().map(|i| h.basis()[i].to_string()).collect();
                value["symbol"] = json!(q.to_string());
                value["coordinates"] = json!(letters);
                plain.push_str(&format!("\n{q} = {}", letters.join(" + ")));
            }
            out.emit(&value, || plain)?;
            if rank != expected {
                return Err(VerificationFailed.into());
            }
            Ok(())
        }
        Command::Verify { n, families } => {
            quotient_note(&out, n);
            let reports = run_verify(n, &families)?;
            emit_reports(&out, &reports)
        }
        Command::Enumerate {
            n,
            variant,
            input,
            abelianize,
            subgroup,
            enumeration,
        } => {
            let p = match &input {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    Presentation::parse(&text)?
                }
                None => Presentation::build(variant.into(), n.expect("required by clap"))?,
            };
            let p = if abelianize { p.abelianized() } else { p };
            let fp = FpPresentation::try_from(&p)?;
            let words = subgroup
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let w = GroupWord::parse(p.n, s)?;
                    Ok(FpPresentation::word_from_group_word(&p, &w)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let r = coset::enumerate(&fp, &words, &enumeration.config())?;
            emit_enumeration(&out, &r)
        }
        Command::Tables { n } => {
            let report = verify::verify_pentagon_tables_at(n)?;
            emit_reports(&out, &[report])
        }
    }
}

fn run_verify(n: usize, families: &str) -> Result<Vec<SweepReport>> {
    let mut names: Vec<&str> = families.split(',').map(str::trim).collect();
    if names.contains(&"all") {
        names = vec!["involutive", "commutative", "pentagon", "commutators", "center"];
        if n >= 6 {
            names.push("transport");
        }
    }
    let mut relation_families = Vec::new();
    let mut reports = Vec::new();
    for name in names {
        match name {
            "commutators" => reports.push(verify::verify_commutator_classes(n)?),
            "center" => reports.push(verify::verify_center_candidates(n)?),
            "transport" => reports.push(verify::verify_commutator_transport(n)?),
            other => relation_families.push(other.parse::<Family>()?),
        }
    }
    if !relation_families.is_empty() {
        reports.insert(0, verify::verify_relations(n, &relation_families)?);
    }
    if reports.is_empty() {
        bail!("no families selected");
    }
    Ok(reports)
}

fn emit_reports(out: &Output, reports: &[SweepReport]) -> Result<()> {
    let passed = verify::all_passed(reports);
    let value = json!({"pass": passed, "reports": reports});
    out.emit(&value, || {
        reports
            .iter()
            .map(|r| {
                let status = if r.passed() { "pass" } else { "FAIL" };
                let mut line = format!(
                    "{status} {} n={} checked={} failures={} ({:.2} s)",
                    r.relator_family,
                    r.n,
                    r.checked,
                    r.failures.len(),
                    r.seconds
                );
                for f in r.failures.iter().take(10) {
                    line.push_str(&format!("\n  {f}"));
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    if passed {
        Ok(())
    } else {
        Err(VerificationFailed.into())
    }
}

fn emit_enumeration(out: &Output, r: &coset::EnumerationResult) -> Result<()> {
    let status = match r.outcome {
        Outcome::Closed { .. } => "closed",
        Outcome::LimitExceeded => "limit-exceeded",
    };
    let value = json!({
        "status": status,
        "index": r.index(),
        "defined": r.stats.defined,
        "live": r.stats.live,
        "max_live": r.stats.max_live,
        "deductions": r.stats.deductions,
        "coincidences": r.stats.coincidences,
        "peak_bytes": r.stats.peak_bytes,
        "seconds": r.stats.seconds,
    });
    out.emit(&value, || match r.index() {
        Some(i) => format!("{i}"),
        None => format!(
            "limit exceeded after defining {} cosets ({} live)",
            r.stats.defined, r.stats.live
        ),
    })?;
    if r.index().is_none() {
        return Err(VerificationFailed.into());
    }
    Ok(())
}
