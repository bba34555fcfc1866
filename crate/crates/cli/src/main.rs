//! `gtl` — runs the verification suites, evaluates diagram expressions and
//! renders diagrams.
//!
//! Exit status: 0 when every check passes, 1 on a verification failure,
//! 2 on a usage error.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use graded_tl::basis_change::{verify_homomorphism, verify_inverse, verify_isometry};
use graded_tl::graded::verify_star_algebra;
use graded_tl::numeric::{verify_gram, verify_gram_cell, verify_moments, GramForm};
use graded_tl::pairing::{DiagramFilter, Pairing};
use graded_tl::render;
use graded_tl::report::Report;
use graded_tl::tower::{
    verify_commutator, verify_cup_action, verify_jones, verify_vpq,
};
use graded_tl::Element;

mod expr;

const USAGE_ERROR: i32 = 2;
const VERIFICATION_FAILURE: i32 = 1;

const SUITES: [&str; 10] = [
    "xy-inverse",
    "homomorphism",
    "isometry",
    "associativity",
    "vpq",
    "cup-action",
    "jones",
    "commutator",
    "moments",
    "gram",
];

#[derive(Parser)]
#[command(
    name = "gtl",
    version,
    about = "Exact verification suites for the graded Temperley-Lieb algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Epi,
    #[value(name = "non-nested-epi")]
    NonNestedEpi,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite (or all of them).
    Verify {
        /// Suite name; see `--list`.
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        /// Run the full battery with its default parameters.
        #[arg(long)]
        all: bool,
        /// List the available suites and exit.
        #[arg(long)]
        list: bool,
        /// Suite parameter override, repeatable: --param N=5 --param k=2.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Seed for the randomised checks.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Write the report here instead of stdout (a summary still prints).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timing in the report (breaks byte-identity).
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate a diagram expression and print the result as JSON.
    ///
    /// Grammar: cup(k), one(k), alpha(k), jones(i,k), xpq(e,p,q),
    /// star(a,b), bullet(a,b), x(e), y(e), expect(e), involution(e),
    /// include(e), add(a,b), sub(a,b), @file.json
    Compute {
        expression: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a diagram.
    Render {
        /// A pairing in its textual form, e.g. '4→2:{(B1,B2),(B3,T1),(B4,T2)}'.
        #[arg(long, conflicts_with = "element")]
        pairing: Option<String>,
        /// An element: inline JSON, @file.json, or 'P(n,k):{…}' text.
        #[arg(long)]
        element: Option<String>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate pairings between the given boundary sizes.
    Enumerate {
        #[arg(long)]
        bottom: usize,
        #[arg(long)]
        top: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Probe the norms of left multiplication by an element, compressed
    /// to grades ≤ N for N = 1..=nmax. Report-only: no pass/fail.
    NormProbe {
        /// Element expression, as for `compute`.
        expression: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Evaluation point s = √δ.
        #[arg(long, default_value_t = 1.4142135623730951)]
        s0: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct SuiteParams(HashMap<String, String>);

impl SuiteParams {
    fn parse(raw: &[String]) -> Result<Self, String> {
        let mut map = HashMap::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("bad --param '{item}': expected KEY=VALUE"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(SuiteParams(map))
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize, String> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|e| format!("bad value for {key}: {e}")),
        }
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, String> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| format!("bad value for {key}: {e}")),
        }
    }

    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

fn run_suite(name: &str, params: &SuiteParams, seed: u64) -> Result<Report, String> {
    match name {
        "xy-inverse" => Ok(verify_inverse(
            params.usize("N", 5)?,
            params.usize("k", 2)?,
        )),
        "homomorphism" => Ok(verify_homomorphism(
            params.usize("M", 4)?,
            params.usize("k", 2)?,
        )),
        "isometry" => Ok(verify_isometry(
            params.usize("M", 4)?,
            params.usize("k", 2)?,
        )),
        "associativity" => Ok(verify_star_algebra(
            params.usize("M", 4)?,
            params.usize("k", 1)?,
            params.usize("random", 100)?,
            seed,
        )),
        "vpq" => Ok(verify_vpq(
            params.usize("n", 1)?,
            params.usize("k", 1)?,
            params.usize("pq", 3)?,
            params.usize("span_n", 3)?,
            params.usize("span_k", 2)?,
        )),
        "cup-action" => Ok(verify_cup_action(
            params.usize("n", 1)?,
            params.usize("k", 1)?,
            params.usize("pmax", 3)?,
            params.usize("qmax", 3)?,
        )),
        "jones" => Ok(verify_jones(params.usize("kmax", 4)?, seed)),
        "commutator" => Ok(verify_commutator(
            params.usize("nmax", 4)?,
            params.usize("k", 0)?,
        )),
        "moments" => {
            let kmax = params.usize("kmax", params.usize("k", 2)?)?;
            Ok(verify_moments(params.usize("mmax", 8)?, kmax))
        }
        "gram" => {
            // A single (n, k) cell when both are given, the full battery
            // otherwise.
            if params.has("n") || params.has("k") {
                let form = match params.get("form").unwrap_or("orth") {
                    "orth" => GramForm::Orth,
                    "jux" => GramForm::Jux,
                    other => return Err(format!("bad form '{other}': use orth or jux")),
                };
                return Ok(verify_gram_cell(
                    params.usize("n", 0)?,
                    params.usize("k", 0)?,
                    form,
                    params.f64("s0")?.unwrap_or_else(|| 2f64.sqrt()),
                ));
            }
            let s0s = match params.f64("s0")? {
                Some(s0) => vec![s0],
                None => vec![2f64.sqrt(), 3f64.sqrt()],
            };
            Ok(verify_gram(
                params.usize("nk", 4)?,
                params.usize("jux_grade", 3)?,
                params.usize("jux_k", 1)?,
                &s0s,
            ))
        }
        other => Err(format!(
            "unknown suite '{other}'; available: {}",
            SUITES.join(", ")
        )),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}"))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Option<String>,
    all: bool,
    list: bool,
    raw_params: Vec<String>,
    seed: u64,
    format: OutputFormat,
    out: Option<PathBuf>,
    timing: bool,
) -> Result<i32, String> {
    if list {
        for s in SUITES {
            println!("{s}");
        }
        return Ok(0);
    }
    let params = SuiteParams::parse(&raw_params)?;
    let names: Vec<&str> = if all {
        SUITES.to_vec()
    } else {
        match &suite {
            Some(s) => vec![s.as_str()],
            None => return Err("pass --suite NAME or --all".to_string()),
        }
    };
    let mut reports = Vec::new();
    for name in &names {
        let start = Instant::now();
        let mut report = run_suite(name, &params, seed)?;
        if timing {
            report.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        reports.push(report);
    }
    let rendered = match format {
        OutputFormat::Json => {
            if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::to_string_pretty(&reports).expect("reports serialise")
            }
        }
        OutputFormat::Pretty => {
            let mut text = String::new();
            for r in &reports {
                let _ = write!(text, "{r}");
            }
            text.trim_end().to_string()
        }
    };
    emit(&rendered, &out)?;
    if out.is_some() {
        for r in &reports {
            println!("{}", r.summary());
        }
    }
    let all_passed = reports.iter().all(Report::passed);
    Ok(if all_passed { 0 } else { VERIFICATION_FAILURE })
}

fn parse_element_arg(text: &str) -> Result<Element, String> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        let data =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        return serde_json::from_str(&data).map_err(|e| format!("bad element JSON: {e}"));
    }
    if text.starts_with("P(") {
        let d: graded_tl::BoxDiagram = text.parse().map_err(|e| format!("{e}"))?;
        return Ok(Element::from_diagram(d));
    }
    serde_json::from_str(text).map_err(|e| format!("bad element JSON: {e}"))
}

fn cmd_render(
    pairing: Option<String>,
    element: Option<String>,
    format: RenderFormat,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let text = match (pairing, element) {
        (Some(p), None) => {
            let p: Pairing = p.parse().map_err(|e| format!("{e}"))?;
            match format {
                RenderFormat::Ascii => render::render_pairing_ascii(&p),
                RenderFormat::Svg => render::render_pairing_svg(&p),
            }
            .map_err(|e| format!("{e}"))?
        }
        (None, Some(e)) => {
            let e = parse_element_arg(&e)?;
            match format {
                RenderFormat::Ascii => render::render_element_ascii(&e),
                RenderFormat::Svg => render::render_element_svg(&e),
            }
            .map_err(|e| format!("{e}"))?
        }
        _ => return Err("pass exactly one of --pairing or --element".to_string()),
    };
    emit(text.trim_end(), &out)?;
    Ok(0)
}

fn cmd_norm_probe(
    expression: &str,
    nmax: usize,
    s0: f64,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let element = expr::evaluate(expression)?;
    let values =
        graded_tl::numeric::norm_probe(&element, nmax, s0).map_err(|e| format!("{e}"))?;
    let mut body = String::from("{\n");
    let _ = writeln!(body, "  \"expression\": {:?},", expression);
    let _ = writeln!(body, "  \"s0\": {s0},");
    let _ = writeln!(body, "  \"nmax\": {nmax},");
    let _ = writeln!(
        body,
        "  \"norms\": [{}]",
        values
            .iter()
            .map(|v| format!("{v:.12}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    body.push('}');
    emit(&body, &out)?;
    Ok(0)
}

fn cmd_enumerate(bottom: usize, top: usize, filter: FilterArg, count: bool) -> Result<i32, String> {
    let filter = match filter {
        FilterArg::All => DiagramFilter::All,
        FilterArg::Epi => DiagramFilter::Epi,
        FilterArg::NonNestedEpi => DiagramFilter::NonNestedEpi,
    };
    let diagrams = Pairing::enumerate(bottom, top, filter).map_err(|e| format!("{e}"))?;
    if count {
        println!("{}", diagrams.len());
    } else {
        for d in &diagrams {
            println!("{d}");
        }
        println!("count: {}", diagrams.len());
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            suite,
            all,
            list,
            params,
            seed,
            format,
            out,
            timing,
        } => cmd_verify(suite, all, list, params, seed, format, out, timing),
        Command::Compute { expression, out } => expr::cmd_compute(&expression, out.as_deref()),
        Command::Render {
            pairing,
            element,
            format,
            out,
        } => cmd_render(pairing, element, format, out),
        Command::Enumerate {
            bottom,
            top,
            filter,
            count,
        } => cmd_enumerate(bottom, top, filter, count),
        Command::NormProbe {
            expression,
            nmax,
            s0,
            out,
        } => cmd_norm_probe(&expression, nmax, s0, out),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(USAGE_ERROR);
        }
    }
}
