//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::bijections::{self, BijectionError};
use crate::catalog::{self, CheckReport};
use crate::enumerate::{self, bfile, CountTable, Mode};
use crate::equiv::{self, Bounds, Conjecture, Relation};
use crate::expr;
use crate::word::{Ballot, CayleyWord, Letter, Pattern};

const AFTER_HELP: &str = "\
Patterns are Cayley permutations: undelimited digits when every letter is at
most 9 (e.g. 1342), comma-separated otherwise (e.g. 1,10,2,...).

Series expressions (`caypat series`):
  atoms      E  E+  Eeven  Eodd  E[k]  X  1  L  C  Cat  Fub
  postfix    '  (derivative)   ptg  (pointing)
  prefix     int( ... )        (integral)
  infix      o                 composition
             .  **  odot       species product, convolution, ordinal product
             +  -              sum, difference
  Binding, tightest first: postfix, int, o, then . ** odot (left-assoc; mixing
  them needs parentheses), then + -. `E+` is one atom unless an operand
  follows the plus sign.

Exit status: 0 success, 1 verification failure or backend mismatch, 2 usage error.
The worker count comes from --workers or CAYPAT_WORKERS (1 = sequential).";

#[derive(Debug, Parser)]
#[command(name = "caypat", version, about = "Pattern-avoiding Cayley permutations", after_help = AFTER_HELP)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "CAYPAT_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Bfile,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    MaxExactlyK,
    Kary,
    Primitive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::All => Mode::All,
            ModeArg::MaxExactlyK => Mode::MaxExactlyK,
            ModeArg::Kary => Mode::Kary,
            ModeArg::Primitive => Mode::Primitive,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count pattern avoiders for n = 0..=max-n.
    Count {
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        max_n: usize,
        /// Tabulate by maximum letter up to k.
        #[arg(long)]
        max_k: Option<Letter>,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        /// Largest n enumerated when a formula is also available.
        #[arg(long, default_value_t = 10)]
        enum_limit: usize,
    },
    /// Evaluate a species expression to a counting sequence.
    Series {
        expr: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Run identity checks.
    Verify {
        #[arg(long, required_unless_present_any = ["all", "list"], conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// List registered identities.
        #[arg(long)]
        list: bool,
        /// Override every check's default bound.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Compare patterns under an equivalence, or classify a set of patterns.
    Equiv {
        #[arg(long, num_args = 1.., conflicts_with = "length", required_unless_present = "length")]
        patterns: Vec<String>,
        /// Classify every pattern of this length.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value = "c")]
        relation: Relation,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Apply a bijection to one input, or run an exhaustive suite.
    Bij {
        /// cay2bal, bal2cay, to123, to132, simion-schmidt, simion-schmidt-inverse,
        /// prim-contract, prim-expand; or a suite: cay_bal, simion_schmidt, prim.
        #[arg(long)]
        name: String,
        /// A word, a ballot like {2}|{1,3}, or for prim-expand `slots;word;n`.
        #[arg(long)]
        input: Option<String>,
        /// Largest size for a suite run.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Bounded scan for counterexamples to a conjecture.
    Conjecture {
        /// cm_implies_sc, c_implies_cm, c_implies_equal_max, max_monotonicity or fixpoint.
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        /// Bounds for the 13442/14233 comparison attached to c_implies_cm.
        #[arg(long, default_value_t = 9)]
        pair_max_n: usize,
        #[arg(long, default_value_t = 5)]
        pair_max_k: usize,
    },
    /// Counts tabulated by length and maximum letter.
    Table {
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_k: Option<Letter>,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
}

struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0 }
    }
}

type Res = Result<Outcome, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_pattern(s: &str) -> Result<Pattern, Failure> {
    s.parse().map_err(|e| usage(format!("pattern `{s}`: {e}")))
}

fn unsupported(format: Format) -> Failure {
    usage(format!("--format {} is not available for this command", format_name(format)))
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Tsv => "tsv",
        Format::Bfile => "bfile",
        Format::Text => "text",
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn joined<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_count(pattern: Option<&Pattern>, max_n: usize, enum_limit: usize, format: Format) -> Res {
    let known = match pattern {
        Some(p) => catalog::known_counts(p, max_n).map(|k| (k.formula, k.counts)),
        None => Some(("ballot recurrence a_n = sum C(n,k) a_{n-k}", catalog::fubini(max_n))),
    };
    let mut counts: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    let mut backends: Vec<&'static str> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let formula = known.as_ref().map(|(_, c)| c.coeffs()[n].clone());
        let enumerate = formula.is_none() || n <= enum_limit;
        let counted = enumerate.then(|| {
            BigInt::from(match pattern {
                Some(p) => enumerate::count_avoiders(p, n),
                None => enumerate::count_cayley(n),
            })
        });
        match (counted, formula) {
            (Some(c), Some(f)) => {
                if c != f {
                    let name = known.as_ref().map_or("", |(name, _)| name);
                    return Err(Failure::Mismatch(format!(
                        "n={n}: enumeration gives {c} but the formula {name} gives {f}"
                    )));
                }
                counts.push(c);
                backends.push("enumeration+formula");
            }
            (Some(c), None) => {
                counts.push(c);
                backends.push("enumeration");
            }
            (None, Some(f)) => {
                counts.push(f);
                backends.push("formula");
            }
            (None, None) => unreachable!("enumeration runs whenever no formula exists"),
        }
    }
    let formula = known.as_ref().map(|(name, _)| *name);
    let body = match format {
        Format::Text => {
            let mut s = format!("{}\n", joined(&counts));
            let checked = backends.iter().filter(|b| **b == "enumeration+formula").count();
            let formula_only = backends.iter().filter(|b| **b == "formula").count();
            if let Some(f) = formula {
                let _ = writeln!(s, "# formula: {f}");
            }
            let _ = writeln!(
                s,
                "# backends: {} enumerated and cross-checked, {} enumerated only, {} from the formula",
                checked,
                backends.len() - checked - formula_only,
                formula_only
            );
            s
        }
        Format::Json => pretty(&json!({
            "pattern": pattern.map(|p| p.to_string()),
            "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "backend": backends,
            "formula": formula,
        })),
        Format::Tsv => {
            let mut s = String::from("n\tcount\tbackend\n");
            for (n, (c, b)) in counts.iter().zip(&backends).enumerate() {
                let _ = writeln!(s, "{n}\t{c}\t{b}");
            }
            s
        }
        Format::Bfile => bfile(&counts),
    };
    Ok(Outcome::ok(body))
}

fn table_text(t: &CountTable) -> String {
    let mut s = String::from("n\\k");
    for k in 0..=t.max_k {
        let _ = write!(s, " {k}");
    }
    s.push('\n');
    for (n, row) in t.counts.iter().enumerate() {
        let _ = writeln!(s, "{n} {}", joined(row));
    }
    s
}

fn cmd_table(pattern: Option<&Pattern>, mode: Mode, max_n: usize, max_k: Option<Letter>, format: Format) -> Res {
    let t = CountTable::build(pattern, mode, max_n, max_k);
    let body = match format {
        Format::Text => table_text(&t),
        Format::Json => pretty(&serde_json::to_value(&t).expect("serializable")),
        Format::Tsv => t.to_tsv(),
        Format::Bfile => t.to_bfile(),
    };
    Ok(Outcome::ok(body))
}

fn cmd_series(src: &str, max_n: usize, format: Format) -> Res {
    let parsed = expr::parse(src).map_err(|e| usage(format!("expression `{src}`: {e}")))?;
    let seq = parsed.eval(max_n).map_err(|e| usage(format!("expression `{src}`: {e}")))?;
    let body = match format {
        Format::Text => format!("{seq}\n"),
        Format::Json => pretty(&json!({ "expr": src, "parsed": parsed.to_string(), "counts": seq.to_json() })),
        Format::Tsv => {
            let mut s = String::from("n\tcount\n");
            for (n, c) in seq.coeffs().iter().enumerate() {
                let _ = writeln!(s, "{n}\t{c}");
            }
            s
        }
        Format::Bfile => seq.to_bfile(),
    };
    Ok(Outcome::ok(body))
}

fn cmd_verify(name: Option<&str>, list: bool, max_n: Option<usize>, format: Format) -> Res {
    if list {
        let mut s = String::new();
        for c in catalog::registry() {
            let tag = if c.conjecture { " [conjecture]" } else { "" };
            let _ = writeln!(s, "{:<18} n <= {:<2} {}{}", c.name, c.kind.default_bound(), c.formula, tag);
        }
        return Ok(Outcome::ok(s));
    }
    let reports: Vec<CheckReport> = match name {
        Some(n) => vec![catalog::verify_identity(n, max_n).map_err(usage)?],
        None => catalog::verify_all(max_n),
    };
    let failed = reports.iter().any(|r| !r.passed() && !r.conjecture);
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{}", r.to_text());
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            let _ = writeln!(s, "{passed}/{} checks passed", reports.len());
            s
        }
        Format::Json => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{}", r.to_json());
            }
            s
        }
        Format::Tsv => {
            let mut s = String::from("name\tbound\tverdict\tmismatch\tformula\n");
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let at = r.mismatch.as_ref().map_or("", |m| m.at.as_str());
                let _ = writeln!(s, "{}\t{}\t{verdict}\t{at}\t{}", r.name, r.bound, r.reference);
            }
            s
        }
        Format::Bfile => return Err(unsupported(format)),
    };
    Ok(Outcome { body, code: i32::from(failed) })
}

fn cmd_equiv(patterns: &[String], length: Option<usize>, rel: Relation, bounds: Bounds, format: Format) -> Res {
    let pats: Vec<Pattern> = match length {
        Some(0) => return Err(usage("--length must be positive")),
        Some(len) => equiv::patterns_of_length(len),
        None => patterns.iter().map(|s| parse_pattern(s)).collect::<Result<_, _>>()?,
    };
    if pats.len() == 2 && length.is_none() {
        let r = equiv::test_relation(&pats[0], &pats[1], rel, bounds);
        let max_witness = equiv::max_distinguisher(&pats[0], &pats[1]);
        return Ok(Outcome::ok(match format {
            Format::Text => {
                let mut s = format!("{}\n", r.to_text());
                if let Some(w) = max_witness {
                    let _ = writeln!(s, "# maxima differ; Cay^k witness {w}");
                }
                s
            }
            Format::Json => {
                let mut v = serde_json::to_value(&r).expect("serializable");
                v["max_witness"] = serde_json::to_value(max_witness).expect("serializable");
                pretty(&v)
            }
            _ => return Err(unsupported(format)),
        }));
    }
    let c = equiv::classify(&pats, rel, bounds);
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut s = format!("{}\n", c.to_text());
            let _ = writeln!(s, "# {} classes; equivalence holds up to the stated bounds only", c.classes.len());
            s
        }
        Format::Json => pretty(&serde_json::to_value(&c).expect("serializable")),
        Format::Tsv => {
            let mut s = String::from("class\tpattern\n");
            for (i, class) in c.classes.iter().enumerate() {
                for p in class {
                    let _ = writeln!(s, "{i}\t{p}");
                }
            }
            s
        }
        Format::Bfile => return Err(unsupported(format)),
    }))
}

fn bij_usage(e: BijectionError) -> Failure {
    usage(e)
}

fn cayley(s: &str) -> Result<CayleyWord, Failure> {
    s.parse().map_err(|e| usage(format!("input `{s}`: {e}")))
}

fn apply_bijection(name: &str, input: &str) -> Result<String, Failure> {
    Ok(match name {
        "cay2bal" => bijections::cay_to_ballot(&cayley(input)?).to_string(),
        "bal2cay" => {
            let b: Ballot = input.parse().map_err(|e| usage(format!("input `{input}`: {e}")))?;
            bijections::ballot_to_cay(&b).to_string()
        }
        "to123" => bijections::to_123_rep(&cayley(input)?).map_err(bij_usage)?.to_string(),
        "to132" => bijections::to_132_rep(&cayley(input)?).map_err(bij_usage)?.to_string(),
        "simion-schmidt" => bijections::simion_schmidt(&cayley(input)?).map_err(bij_usage)?.to_string(),
        "simion-schmidt-inverse" => {
            bijections::simion_schmidt_inverse(&cayley(input)?).map_err(bij_usage)?.to_string()
        }
        "prim-contract" => {
            let (slots, v) = bijections::prim_contract(&cayley(input)?).map_err(bij_usage)?;
            let slots: Vec<String> = slots.iter().map(|s| s.to_string()).collect();
            format!("{{{}}};{};{}", slots.join(","), v, v.len() + slots.len())
        }
        "prim-expand" => {
            let parts: Vec<&str> = input.split(';').map(str::trim).collect();
            let [slots, word, n] = parts[..] else {
                return Err(usage("prim-expand input is `slots;word;n`, e.g. `{2,3,7};325154;9`"));
            };
            let slots = slots
                .trim_start_matches('{')
                .trim_end_matches('}')
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|e| usage(format!("slot `{s}`: {e}"))))
                .collect::<Result<_, _>>()?;
            let n = n.parse::<usize>().map_err(|e| usage(format!("n `{n}`: {e}")))?;
            let v = if word.is_empty() { CayleyWord::empty() } else { cayley(word)? };
            bijections::prim_expand(&slots, &v, n).map_err(bij_usage)?.to_string()
        }
        _ => return Err(usage(format!("unknown bijection `{name}`"))),
    })
}

fn cmd_bij(name: &str, input: Option<&str>, max_n: Option<usize>, format: Format) -> Res {
    if bijections::SUITES.contains(&name) {
        let max_n = max_n.ok_or_else(|| usage("suites need --max-n"))?;
        let reports: Vec<_> =
            (0..=max_n).map(|n| bijections::bijection_suite(name, n).map_err(bij_usage)).collect::<Result<_, _>>()?;
        let failed = reports.iter().any(|r| !r.ok());
        let body = match format {
            Format::Text => {
                let mut s = String::new();
                for r in &reports {
                    let status = if r.ok() { "ok" } else { "FAILED" };
                    let _ = write!(
                        s,
                        "{} n={}: {} checked, round trip {}, properties {}: {status}",
                        r.name,
                        r.n,
                        r.checked,
                        if r.round_trip_ok { "ok" } else { "broken" },
                        if r.property_ok { "ok" } else { "broken" },
                    );
                    if let Some(f) = &r.first_failure {
                        let _ = write!(s, " ({f})");
                    }
                    s.push('\n');
                }
                s
            }
            Format::Json => pretty(&serde_json::to_value(&reports).expect("serializable")),
            _ => return Err(unsupported(format)),
        };
        return Ok(Outcome { body, code: i32::from(failed) });
    }
    let input = input.ok_or_else(|| usage("--input is required"))?;
    let out = apply_bijection(name, input)?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{out}\n"),
        Format::Json => pretty(&json!({ "name": name, "input": input, "output": out })),
        _ => return Err(unsupported(format)),
    }))
}

fn cmd_conjecture(
    which: &str,
    max_len: usize,
    bounds: Bounds,
    pair_bounds: Bounds,
    format: Format,
) -> Res {
    if which == "fixpoint" {
        let r = catalog::verify_identity("fixpoint_conj", Some(bounds.n)).map_err(usage)?;
        return Ok(Outcome::ok(match format {
            Format::Text => format!("{}\n", r.to_text()),
            Format::Json => format!("{}\n", r.to_json()),
            _ => return Err(unsupported(format)),
        }));
    }
    let conj: Conjecture = which.parse().map_err(usage)?;
    let report = equiv::conjecture_scan(conj, max_len, bounds);
    let pair = (conj == Conjecture::CImpliesCm).then(|| equiv::candidate_pair_report(pair_bounds));
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut s = format!("{}\n", report.to_text());
            if let Some(p) = &pair {
                let (a, b) = equiv::CANDIDATE_PAIR;
                let _ = writeln!(s, "  candidate pair {a} / {b}:");
                let _ = writeln!(s, "    {}", p.c.to_text());
                let _ = writeln!(s, "    {}", p.cm.to_text());
                if p.flagged {
                    let _ = writeln!(s, "    flagged: ~c holds within the bounds while ~cm fails");
                }
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("serializable");
            if let Some(p) = &pair {
                v["candidate_pair"] = serde_json::to_value(p).expect("serializable");
            }
            pretty(&v)
        }
        _ => return Err(unsupported(format)),
    }))
}

fn execute(cli: &Cli) -> Res {
    let format = cli.format;
    match &cli.command {
        Command::Count { pattern, max_n, max_k, mode, enum_limit } => {
            let p = pattern.as_deref().map(parse_pattern).transpose()?;
            if *mode == ModeArg::All && max_k.is_none() {
                cmd_count(p.as_ref(), *max_n, *enum_limit, format)
            } else {
                cmd_table(p.as_ref(), (*mode).into(), *max_n, *max_k, format)
            }
        }
        Command::Table { pattern, max_n, max_k, mode } => {
            let p = pattern.as_deref().map(parse_pattern).transpose()?;
            cmd_table(p.as_ref(), (*mode).into(), *max_n, *max_k, format)
        }
        Command::Series { expr, max_n } => cmd_series(expr, *max_n, format),
        Command::Verify { name, all: _, list, max_n } => cmd_verify(name.as_deref(), *list, *max_n, format),
        Command::Equiv { patterns, length, relation, max_n, max_k } => {
            cmd_equiv(patterns, *length, *relation, Bounds::new(*max_n, *max_k), format)
        }
        Command::Bij { name, input, max_n } => cmd_bij(name, input.as_deref(), *max_n, format),
        Command::Conjecture { which, max_len, max_n, max_k, pair_max_n, pair_max_k } => cmd_conjecture(
            which,
            *max_len,
            Bounds::new(*max_n, *max_k),
            Bounds::new(*pair_max_n, *pair_max_k),
            format,
        ),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0) as usize).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out.body),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(out.body.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            out.code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            1
        }
    }
}
