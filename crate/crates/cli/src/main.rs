//! `moonshine`: elliptic expansions of `j` at `rho` and `i`, flat
//! coordinates, and checks of the identities relating them.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain error.

mod output;
mod parse;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use moonshine_core::engine::{
    conj_rhs, flat_parts_series, flat_series, verify_numeric, verify_numeric_with_tolerance, DEFAULT_TERMS,
};
use moonshine_core::modular::{elliptic_expansion_i, elliptic_expansion_rho, j_eval, CmCase};
use moonshine_core::{Context, Error, HPComplex, PrecisionPolicy};
use serde_json::{json, Value};

use crate::parse::{parse_complex, parse_point, parse_rational};
use crate::suites::{SuiteOptions, Which};

#[derive(Parser, Debug)]
#[command(name = "moonshine", version, about = "Elliptic expansions of j at the CM points rho and i")]
struct Cli {
    /// Significant decimal digits of working precision.
    #[arg(long, global = true, env = "MOON_DIGITS", default_value_t = 50,
          value_parser = clap::value_parser!(u32).range(20..=5000))]
    digits: u32,

    /// Output format; JSON is the canonical one.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact coefficients b(0..=ORDER) of the elliptic expansion.
    Expand {
        #[arg(value_parser = parse_case)]
        case: CmCase,
        order: usize,
        /// Largest accepted ORDER.
        #[arg(long, default_value_t = 500)]
        max_order: usize,
    },
    /// Exact coefficients of the flat coordinate c = h/g, or its value at a point.
    Flatcoord {
        #[arg(value_parser = parse_case)]
        case: CmCase,
        /// Coefficients of c through t^ORDER.
        order: Option<usize>,
        /// Evaluate c at this t.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
        /// Highest power of t summed when evaluating.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
    },
    /// Numerical check of j(s^{-1}(c(t))) against the rational right-hand side.
    Verify {
        #[arg(value_parser = parse_case)]
        case: CmCase,
        /// A rational, a decimal, a complex literal, or sqrt3-1.
        #[arg(allow_hyphen_values = true)]
        t: String,
        /// Highest power of t summed.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        /// Pass threshold on |lhs - rhs| (default 10^(-digits/2)).
        #[arg(long)]
        tolerance: Option<String>,
    },
    /// Runs verification suites.
    Suite {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Seed for the sampled suites.
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        /// Samples per sampled check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// j(tau) for Im tau > 0.
    Jeval {
        /// A complex literal such as 0.5+0.5i or 1.4243556206i.
        #[arg(allow_hyphen_values = true)]
        tau: String,
    },
}

fn parse_case(s: &str) -> Result<CmCase, String> {
    s.parse::<CmCase>().map_err(|e| e.to_string())
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Domain(String),
    /// The record is still printed; the exit status is 1.
    Verification(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Output {
    json: Value,
    csv: String,
}

fn context(digits: u32, terms: usize) -> Context {
    Context::new(PrecisionPolicy::new(digits).for_series_terms(terms))
}

fn expand(case: CmCase, order: usize, max_order: usize) -> Result<Output, Failure> {
    if order > max_order {
        return Err(Failure::Usage(format!("order {order} exceeds the cap {max_order}")));
    }
    let b = match case {
        CmCase::Rho => elliptic_expansion_rho(order),
        CmCase::I => elliptic_expansion_i(order),
    };
    // The expansions are built at order >= 1; report exactly 0..=order.
    let b = b.truncate(order);
    let inputs = json!({ "case": case.name(), "order": order });
    let result = json!({ "coefficients": output::series(&b) });
    Ok(Output { json: output::record("expand", inputs, result), csv: output::csv_series(&b) })
}

fn flatcoord(case: CmCase, order: Option<usize>, eval: Option<String>, terms: usize, digits: u32) -> Result<Output, Failure> {
    let mut result = serde_json::Map::new();
    let mut csv = String::new();
    let order = match (order, &eval) {
        (None, None) => Some(10),
        (o, _) => o,
    };
    if let Some(order) = order {
        let f = flat_series(case, order);
        let (c, g, h) = (f.c.truncate(order), f.g.truncate(order), f.h.truncate(order));
        result.insert("c".into(), output::series(&c));
        result.insert("g".into(), output::series(&g));
        result.insert("h".into(), output::series(&h));
        csv = output::csv_series(&c);
    }
    if let Some(text) = &eval {
        let point = parse_point(text).map_err(Failure::Usage)?;
        let ctx = context(digits, terms / case.coefficient_gap());
        let t = point.to_complex(&ctx);
        let (g, h, used) = flat_parts_series(case, &t, terms, &ctx)?;
        result.insert("t".into(), json!(point.render()));
        result.insert("value".into(), output::complex(&(&h / &g), digits));
        result.insert("series_terms_used".into(), json!(used));
    }
    let inputs = json!({ "case": case.name(), "order": order, "eval": eval, "terms": terms, "digits": digits });
    let json = output::record("flatcoord", inputs, Value::Object(result));
    if eval.is_some() {
        csv = output::csv_flat(&json["result"]);
    }
    Ok(Output { json, csv })
}

fn verify(case: CmCase, text: &str, terms: usize, tolerance: Option<String>, digits: u32) -> Result<Output, Failure> {
    let point = parse_point(text).map_err(Failure::Usage)?;
    let ctx = context(digits, terms / case.coefficient_gap());
    let t = point.to_complex(&ctx);
    let report = match &tolerance {
        Some(s) => {
            let tol = ctx.rational(&parse_rational(s).map_err(Failure::Usage)?);
            verify_numeric_with_tolerance(case, &t, terms, &tol, &ctx)?
        }
        None => verify_numeric(case, &t, terms, &ctx)?,
    };
    let mut result = output::report(&report, digits);
    if let Some(q) = point.as_rational() {
        if let Ok(exact) = conj_rhs(case, q) {
            result["rhs_exact"] = output::rational(&exact);
        }
    }
    let inputs = json!({ "case": case.name(), "t": point.render(), "terms": terms, "digits": digits, "tolerance": tolerance });
    let json = output::record("verify", inputs, result);
    let csv = output::csv_flat(&json["result"]);
    if report.pass {
        Ok(Output { json, csv })
    } else {
        Err(Failure::Verification(Output { json, csv }))
    }
}

fn suite(which: Which, seed: u64, samples: usize, digits: u32) -> Result<Output, Failure> {
    let ctx = Context::with_digits(digits);
    let results = suites::run(which, SuiteOptions { seed, samples }, &ctx);
    let mut all_pass = true;
    let mut csv = String::from("suite,check,pass\n");
    let suites_json: Vec<Value> = results
        .iter()
        .map(|(name, checks)| {
            let pass = checks.iter().all(|c| c.pass);
            all_pass &= pass;
            for c in checks {
                csv.push_str(&format!("{name},\"{}\",{}\n", c.name, c.pass));
            }
            let checks: Vec<Value> =
                checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect();
            json!({ "suite": name, "pass": pass, "checks": checks })
        })
        .collect();
    let inputs = json!({ "which": format!("{which:?}").to_lowercase(), "seed": seed, "samples": samples, "digits": digits });
    let json = output::record("suite", inputs, json!({ "pass": all_pass, "suites": suites_json }));
    if all_pass {
        Ok(Output { json, csv })
    } else {
        Err(Failure::Verification(Output { json, csv }))
    }
}

fn jeval(text: &str, digits: u32) -> Result<Output, Failure> {
    let (re, im) = parse_complex(text).map_err(Failure::Usage)?;
    let ctx = Context::with_digits(digits);
    let tau = ctx.complex(&re, &im);
    let j: HPComplex = j_eval(&tau, &ctx)?;
    let inputs = json!({ "tau": text, "digits": digits });
    let json = output::record("jeval", inputs, json!({ "j": output::complex(&j, digits) }));
    let csv = output::csv_flat(&json["result"]);
    Ok(Output { json, csv })
}

fn emit(out: &Output, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
        Format::Csv => out.csv.clone(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = cli.digits;
    let outcome = match cli.command {
        Command::Expand { case, order, max_order } => expand(case, order, max_order),
        Command::Flatcoord { case, order, eval, terms } => flatcoord(case, order, eval, terms, digits),
        Command::Verify { case, t, terms, tolerance } => verify(case, &t, terms, tolerance, digits),
        Command::Suite { which, seed, samples } => suite(which, seed, samples, digits),
        Command::Jeval { tau } => jeval(&tau, digits),
    };
    match outcome {
        Ok(out) => {
            emit(&out, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            emit(&out, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
