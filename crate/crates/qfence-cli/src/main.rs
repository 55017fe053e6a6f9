//! `qfence` — rank polynomials of (circular) fence posets, q-rationals, and
//! q-Markov numbers, with built-in verification sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 cross-check mismatch (an exactness guarantee failed at runtime).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qfence::fence;
use qfence::markov::{self, ChristoffelWord, Convention, WordTriple};
use qfence::poset::{self, Composition};
use qfence::qpoly::LaurentPoly;
use qfence::qrational::{self, Rational};
use qfence::verify::{self, SuiteReport, SweepRow};
use qfence::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qfence",
    version,
    about = "Exact rank polynomials of fence posets, q-rationals, and q-Markov numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank polynomial of the fence poset of a composition.
    Rank(RankArgs),
    /// The q-deformation of a rational number r/t >= 1.
    Qrat(QratArgs),
    /// q-Markov numbers of Christoffel words and the Markov tree.
    Markov(MarkovArgs),
    /// Batch verification sweeps.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RankArgs {
    /// Composition, e.g. `2,1,1,3` (repetition allowed: `2^3,1`).
    composition: String,
    /// Circular fence: the rank polynomial of the closed-up poset.
    #[arg(long)]
    circular: bool,
    /// Recompute by brute-force ideal enumeration and require equality.
    #[arg(long)]
    oracle: bool,
    /// Emit the polynomial in its JSON form.
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    /// Render exponents in LaTeX style (`q^{10}`).
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct QratArgs {
    /// Fraction `r/t` with r >= t >= 1 coprime (a bare integer means t = 1).
    fraction: String,
    /// Emit the full record in JSON.
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    /// Render polynomials in LaTeX style.
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["word", "depth", "path"]))]
struct MarkovArgs {
    /// Christoffel word over {a, b}, e.g. `aabab`.
    word: Option<String>,
    /// Print a word/fence/polynomial table of all words in the first N
    /// levels of the Markov tree.
    #[arg(long, conflicts_with_all = ["trace", "unimodular"])]
    depth: Option<usize>,
    /// Inspect the tree triple at an L/R path (empty string for the root).
    #[arg(long, conflicts_with_all = ["trace", "unimodular"], num_args = 0..=1, default_missing_value = "")]
    path: Option<String>,
    /// Print the trace of the word's Cohn-matrix product instead of the
    /// q-Markov number (defined for trivial words too).
    #[arg(long)]
    trace: bool,
    /// Use the unimodular normalization (shifts results by q^-(#a + 2#b)).
    #[arg(long)]
    unimodular: bool,
    /// Emit JSON.
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    /// Render polynomials in LaTeX style.
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which sweep to run.
    suite: Suite,
    /// Largest numerator for the `traces` sweep (default 40).
    #[arg(long)]
    rmax: Option<u64>,
    /// Largest composition size for `unimodal-sweep` (default 12).
    #[arg(long)]
    max_size: Option<u32>,
    /// Tree depth for `markov-eq` (default 3).
    #[arg(long)]
    depth: Option<usize>,
    /// RNG seed for `props` (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Randomized cases per law for `props` (default 200).
    #[arg(long)]
    count: Option<usize>,
    /// Write the sweep table as CSV (only `traces` and `unimodal-sweep`
    /// produce tables).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Props,
    Identities,
    Traces,
    MarkovEq,
    UnimodalSweep,
}

/// A failure that terminates the process with a specific exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            // An exactness guarantee failed mid-computation: two independent
            // computations of the same value disagreed.
            Error::InternalMismatch(_) | Error::NotDivisible => EXIT_MISMATCH,
            // Everything else is a problem with the request itself.
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (`qfence ... | head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Rank(args) => cmd_rank(&args),
        Command::Qrat(args) => cmd_qrat(&args),
        Command::Markov(args) => cmd_markov(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn render(p: &LaurentPoly, latex: bool) -> String {
    if latex {
        p.to_latex()
    } else {
        p.to_string()
    }
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

fn cmd_rank(args: &RankArgs) -> Result<u8, Failure> {
    let alpha = Composition::parse(&args.composition)?;
    let poly = if args.circular {
        fence::circular_rank(&alpha)?
    } else {
        fence::rank_of(&alpha)?
    };
    if args.oracle {
        let by_oracle = if args.circular {
            fence::circular_rank_oracle(&alpha)?
        } else {
            poset::fence(&alpha)?.rank_poly()?
        };
        if by_oracle != poly {
            return Err(Failure::mismatch(format!(
                "oracle mismatch for {alpha}: matrices give {poly}, ideal enumeration gives {by_oracle}"
            )));
        }
    }
    if args.json {
        println!("{}", serde_json::to_string(&poly).expect("serializable"));
    } else {
        println!("{}", render(&poly, args.latex));
        if args.oracle {
            println!("oracle: match");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// qrat
// ---------------------------------------------------------------------------

fn format_cf(cf: &[u64]) -> String {
    let inner: Vec<String> = cf.iter().map(|a| a.to_string()).collect();
    inner.join(", ")
}

/// The two circular compositions naming the traces: the regular CF with its
/// first entry lowered, and the regular CF itself.
fn trace_compositions(regular_cf: &[u64]) -> Result<(Composition, Composition), Error> {
    let parts: Vec<u32> = regular_cf
        .iter()
        .map(|&a| u32::try_from(a).expect("CF entries of parsed u64 fractions fit"))
        .collect();
    let mut lowered = parts.clone();
    lowered[0] -= 1;
    Ok((Composition::new(lowered)?, Composition::new(parts)?))
}

fn cmd_qrat(args: &QratArgs) -> Result<u8, Failure> {
    let x = Rational::parse(&args.fraction)?;
    let q = qrational::q_rational(&x)?;
    let traces = if x.is_one() {
        None
    } else {
        let report = qrational::trace_theorems(&x)?;
        if !report.all_hold() {
            return Err(Failure::mismatch(format!(
                "trace identification failed for {x}"
            )));
        }
        Some(report)
    };

    if args.json {
        let value = json!({
            "fraction": x.to_string(),
            "regular_cf": q.regular_cf,
            "negative_cf": q.negative_cf,
            "alpha": q.alpha.as_ref().map(|a| a.parts().to_vec()),
            "numerator": q.num,
            "denominator": q.den,
            "trace_m": traces.as_ref().map(|t| &t.trace_m),
            "trace_m_plus": traces.as_ref().map(|t| &t.trace_m_plus),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        return Ok(0);
    }

    println!("fraction: {x}");
    println!("regular continued fraction: [{}]", format_cf(&q.regular_cf));
    println!(
        "negative continued fraction: [[{}]]",
        format_cf(&q.negative_cf)
    );
    match &q.alpha {
        Some(alpha) => println!("alpha: {alpha}"),
        None => println!("alpha: (none: 1/1 has no fence composition)"),
    }
    println!("R(q) = {}", render(&q.num, args.latex));
    println!("T(q) = {}", render(&q.den, args.latex));
    if let Some(report) = &traces {
        let (lowered, plain) = trace_compositions(&q.regular_cf)?;
        println!(
            "tr M_q = circular rank of {lowered} = {}",
            render(&report.trace_m, args.latex)
        );
        println!(
            "tr M_q^+ = circular rank of {plain} = {}",
            render(&report.trace_m_plus, args.latex)
        );
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// markov
// ---------------------------------------------------------------------------

fn unimodular_shift(w: &ChristoffelWord) -> i64 {
    -(w.count_a() as i64 + 2 * w.count_b() as i64)
}

/// The q-Markov number in the requested normalization.
fn markov_poly(w: &ChristoffelWord, unimodular: bool) -> Result<LaurentPoly, Error> {
    let m = markov::q_markov(w)?;
    Ok(if unimodular {
        m.shifted(unimodular_shift(w))
    } else {
        m
    })
}

fn fence_column(w: &ChristoffelWord) -> Result<Option<Composition>, Error> {
    if w.is_single_letter() {
        Ok(None)
    } else {
        Ok(Some(markov::fence_composition(w)?))
    }
}

/// All distinct words in the first `levels` levels of the Markov tree, in
/// order of first appearance (the root triple is level 1).
fn tree_words(levels: usize) -> Result<Vec<ChristoffelWord>, Error> {
    let mut words: Vec<ChristoffelWord> = Vec::new();
    let mut push = |w: &ChristoffelWord| {
        if !words.iter().any(|seen| seen == w) {
            words.push(w.clone());
        }
    };
    for node in markov::tree_to_depth(levels - 1)? {
        push(&node.triple.left);
        push(&node.triple.middle);
        push(&node.triple.right);
    }
    Ok(words)
}

fn cmd_markov(args: &MarkovArgs) -> Result<u8, Failure> {
    if let Some(word) = &args.word {
        let w = ChristoffelWord::parse(word)?;
        if w.is_single_letter() && !args.trace {
            return Err(Failure::usage(format!(
                "`{word}` is a trivial word with no fence composition; pass --trace for its Cohn-matrix trace"
            )));
        }
        let poly = if args.trace {
            let convention = if args.unimodular {
                Convention::Unimodular
            } else {
                Convention::Standard
            };
            markov::word_trace(&w, convention)?
        } else {
            markov_poly(&w, args.unimodular)?
        };
        if args.json {
            println!("{}", serde_json::to_string(&poly).expect("serializable"));
        } else {
            println!("{}", render(&poly, args.latex));
        }
        return Ok(0);
    }

    if let Some(depth) = args.depth {
        if depth == 0 {
            return Err(Failure::usage("--depth must be at least 1"));
        }
        let words = tree_words(depth)?;
        let mut rows: Vec<(String, String, LaurentPoly)> = Vec::with_capacity(words.len());
        for w in &words {
            let fence = match fence_column(w)? {
                Some(alpha) => alpha.to_string(),
                None => "-".to_string(),
            };
            rows.push((w.as_str().to_string(), fence, markov::q_markov(w)?));
        }
        if args.json {
            let value: Vec<_> = words
                .iter()
                .zip(&rows)
                .map(|(w, (word, _, poly))| {
                    let fence = fence_column(w).expect("already computed once");
                    json!({
                        "word": word,
                        "fence": fence.map(|a| a.parts().to_vec()),
                        "polynomial": poly,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else {
            print_table(&rows, args.latex);
        }
        return Ok(0);
    }

    let path = args.path.as_deref().expect("clap guarantees one input");
    let triple = markov::triple_at_path(path)?;
    let holds = markov::equation_holds(&triple)?;
    print_triple(path, &triple, holds, args.json, args.latex)
}

fn print_table(rows: &[(String, String, LaurentPoly)], latex: bool) {
    let word_width = rows
        .iter()
        .map(|(w, _, _)| w.len())
        .max()
        .unwrap_or(0)
        .max("word".len());
    let fence_width = rows
        .iter()
        .map(|(_, f, _)| f.len())
        .max()
        .unwrap_or(0)
        .max("fence".len());
    println!(
        "{:word_width$}  {:fence_width$}  polynomial",
        "word", "fence"
    );
    for (word, fence, poly) in rows {
        println!(
            "{word:word_width$}  {fence:fence_width$}  {}",
            render(poly, latex)
        );
    }
}

fn print_triple(
    path: &str,
    triple: &WordTriple,
    equation_holds: bool,
    as_json: bool,
    latex: bool,
) -> Result<u8, Failure> {
    let entries = [
        ("left", &triple.left),
        ("middle", &triple.middle),
        ("right", &triple.right),
    ];
    if as_json {
        let mut value = serde_json::Map::new();
        value.insert("path".into(), json!(path));
        for (role, w) in entries {
            value.insert(
                role.into(),
                json!({
                    "word": w.as_str(),
                    "polynomial": markov::q_markov(w)?,
                }),
            );
        }
        value.insert("equation_holds".into(), json!(equation_holds));
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(value)).expect("serializable")
        );
        return Ok(0);
    }
    println!("triple at path \"{path}\":");
    for (role, w) in entries {
        let poly = markov::q_markov(w)?;
        println!("  {role}: {} = {}", w.as_str(), render(&poly, latex));
    }
    println!(
        "q-Markov equation: {}",
        if equation_holds { "holds" } else { "FAILS" }
    );
    if equation_holds {
        Ok(0)
    } else {
        Ok(EXIT_VERIFY_FAILED)
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn reject_inapplicable(args: &VerifyArgs) -> Result<(), Failure> {
    let claim = |present: bool, flag: &str, wanted: Suite| -> Result<(), Failure> {
        if present && args.suite != wanted {
            return Err(Failure::usage(format!(
                "--{flag} only applies to the `{}` suite",
                match wanted {
                    Suite::Props => "props",
                    Suite::Identities => "identities",
                    Suite::Traces => "traces",
                    Suite::MarkovEq => "markov-eq",
                    Suite::UnimodalSweep => "unimodal-sweep",
                }
            )));
        }
        Ok(())
    };
    claim(args.rmax.is_some(), "rmax", Suite::Traces)?;
    claim(args.max_size.is_some(), "max-size", Suite::UnimodalSweep)?;
    claim(args.depth.is_some(), "depth", Suite::MarkovEq)?;
    claim(args.seed.is_some(), "seed", Suite::Props)?;
    claim(args.count.is_some(), "count", Suite::Props)?;
    if args.csv.is_some()
        && args.suite != Suite::Traces
        && args.suite != Suite::UnimodalSweep
    {
        return Err(Failure::usage(
            "--csv only applies to the sweep-table suites `traces` and `unimodal-sweep`",
        ));
    }
    Ok(())
}

fn write_csv(path: &PathBuf, rows: &[SweepRow]) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot write CSV to {}: {e}", path.display()),
    })?;
    for row in rows {
        writer.serialize(row).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("CSV serialization failed: {e}"),
        })?;
    }
    writer.flush().map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot flush CSV: {e}"),
    })?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    reject_inapplicable(args)?;
    let parallel = !args.sequential;
    let (report, rows): (SuiteReport, Option<Vec<SweepRow>>) = match args.suite {
        Suite::Props => (
            verify::props_suite(args.seed.unwrap_or(42), args.count.unwrap_or(200), parallel),
            None,
        ),
        Suite::Identities => (verify::identities_suite(parallel)?, None),
        Suite::Traces => {
            let (report, rows) = verify::trace_theorem_sweep(args.rmax.unwrap_or(40), parallel)?;
            (report, Some(rows))
        }
        Suite::MarkovEq => (verify::markov_equation_suite(args.depth.unwrap_or(3))?, None),
        Suite::UnimodalSweep => {
            let (report, rows) = verify::unimodal_sweep(args.max_size.unwrap_or(12), parallel)?;
            (report, Some(rows))
        }
    };
    if let (Some(path), Some(rows)) = (&args.csv, &rows) {
        write_csv(path, rows)?;
        if !args.json {
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.passed { 0 } else { EXIT_VERIFY_FAILED })
}
