//! Verification suites run by `moonshine suite`.
//!
//! Each suite is a list of independent checks. Checks run on separate
//! threads; results are reported in the order the checks are listed.

use moonshine_core::engine::{
    closed_form_g_i, closed_form_g_rho, closed_form_h_i, closed_form_h_rho, flat_parts_series, sector_check,
    sector_check_with_row, verify_exact, verify_numeric, DEFAULT_TERMS, SECTORS,
};
use moonshine_core::hypergeom::{
    f21_eval, j_from_gamma, j_from_lambda, tau_from_gamma, tau_from_lambda, transform_15_10_33,
    transform_quadratic_minus, transform_quadratic_plus, F21Params,
};
use moonshine_core::modular::{elliptic_expansion_i, j_eval, CmCase};
use moonshine_core::series::{int, rat};
use moonshine_core::{Context, Error, HPComplex, Rational, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Exact,
    Numeric,
    Sectors,
    Transformations,
    Inversion,
    All,
}

impl Which {
    fn expand(self) -> Vec<Which> {
        match self {
            Which::All => vec![Which::Exact, Which::Numeric, Which::Sectors, Which::Transformations, Which::Inversion],
            one => vec![one],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Which::Exact => "exact",
            Which::Numeric => "numeric",
            Which::Sectors => "sectors",
            Which::Transformations => "transformations",
            Which::Inversion => "inversion",
            Which::All => "all",
        }
    }
}

/// Outcome of one named check.
#[derive(Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

type Job<'a> = Box<dyn FnOnce() -> CheckResult + Send + 'a>;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: usize,
}

/// Runs the selected suites and returns `(suite name, results)` in order.
pub fn run(which: Which, opts: SuiteOptions, ctx: &Context) -> Vec<(&'static str, Vec<CheckResult>)> {
    which
        .expand()
        .into_iter()
        .map(|w| {
            let jobs = match w {
                Which::Exact => exact_jobs(),
                Which::Numeric => numeric_jobs(ctx),
                Which::Sectors => sector_jobs(ctx),
                Which::Transformations => transformation_jobs(opts, ctx),
                Which::Inversion => inversion_jobs(opts, ctx),
                Which::All => unreachable!(),
            };
            (w.name(), run_jobs(jobs))
        })
        .collect()
}

fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<CheckResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| CheckResult {
                    name: "check".into(),
                    pass: false,
                    detail: json!("panicked"),
                })
            })
            .collect()
    })
}

fn failed(name: impl Into<String>, e: Error) -> CheckResult {
    CheckResult { name: name.into(), pass: false, detail: json!({ "error": e.to_string() }) }
}

fn exact_jobs<'a>() -> Vec<Job<'a>> {
    let identity = |case: CmCase, order: usize| -> Job<'a> {
        Box::new(move || {
            let r = verify_exact(case, order);
            CheckResult {
                name: format!("{} identity through t^{order}", case.name()),
                pass: r.pass,
                detail: json!({ "first_mismatch": r.first_mismatch, "notes": r.notes }),
            }
        })
    };
    let values: Job<'a> = Box::new(|| {
        let b = elliptic_expansion_i(6);
        let expected = [(0, int(1728)), (2, int(20736)), (4, int(105984)), (6, rat(1594112, 5))];
        let pass = expected.iter().all(|(n, v)| b.coeff(*n) == v);
        CheckResult { name: "i expansion values".into(), pass, detail: output::series(&b) }
    });
    vec![identity(CmCase::Rho, 60), identity(CmCase::I, 40), values]
}

fn numeric_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let digits = ctx.policy().target_digits;
    let points: Vec<(CmCase, &'static str, HPComplex)> = vec![
        (CmCase::Rho, "sqrt3-1", HPComplex::from_real(&ctx.sqrt(&ctx.int(3)) - &ctx.int(1))),
        (CmCase::Rho, "1/2", ctx.complex(&rat(1, 2), &int(0))),
        (CmCase::I, "1/3", ctx.complex(&rat(1, 3), &int(0))),
        (CmCase::Rho, "0", HPComplex::zero(ctx.bits())),
        (CmCase::I, "0", HPComplex::zero(ctx.bits())),
    ];
    points
        .into_iter()
        .map(|(case, label, t)| -> Job<'_> {
            Box::new(move || {
                let name = format!("{} at t = {label}", case.name());
                match verify_numeric(case, &t, DEFAULT_TERMS, ctx) {
                    Ok(r) => CheckResult { name, pass: r.pass, detail: output::report(&r, digits) },
                    Err(e) => failed(name, e),
                }
            })
        })
        .collect()
}

/// `r exp(i (k + f) pi / 3)`.
fn sector_point(k: usize, r: &Rational, f: &Rational, ctx: &Context) -> HPComplex {
    let angle = &ctx.pi() * &ctx.rational(&((int(k as i64) + f) / int(3)));
    let (s, c) = ctx.sin_cos(&angle);
    HPComplex::new(c, s).scale(&ctx.rational(r))
}

fn sector_jobs(ctx: &Context) -> Vec<Job<'_>> {
    SECTORS
        .iter()
        .map(|spec| -> Job<'_> {
            Box::new(move || {
                let name = format!("sector {}", spec.label());
                let samples = [(rat(3, 10), rat(1, 4)), (rat(11, 20), rat(1, 2)), (rat(4, 5), rat(3, 4))];
                let mut rows = Vec::new();
                let mut pass = true;
                for (r, f) in &samples {
                    let t = sector_point(spec.index, r, f, ctx);
                    let own = match sector_check(spec, &t, ctx) {
                        Ok(rep) => rep,
                        Err(e) => return failed(name, e),
                    };
                    let mut others_rejected = true;
                    for other in SECTORS.iter().filter(|o| o.index != spec.index) {
                        match sector_check_with_row(other, &t, ctx) {
                            Ok(rep) => others_rejected &= !rep.pass,
                            Err(e) => return failed(name, e),
                        }
                    }
                    pass &= own.pass && others_rejected;
                    rows.push(json!({
                        "t": output::complex(&t, 12),
                        "pass": own.pass,
                        "worst_residual": output::small(&own.abs_residual),
                        "other_rows_rejected": others_rejected,
                    }));
                }
                CheckResult { name, pass, detail: Value::Array(rows) }
            })
        })
        .collect()
}

fn random_param(rng: &mut ChaCha8Rng) -> Rational {
    let den = [2, 3, 4, 5, 6, 7, 8, 12][rng.random_range(0..8)];
    rat(rng.random_range(-2 * den + 1..2 * den), den)
}

fn skippable(e: &Error) -> bool {
    matches!(e, Error::GammaPole(_) | Error::InvalidParameters(_))
}

fn rel_dist(a: &HPComplex, b: &HPComplex, ctx: &Context) -> Real {
    &a.dist(b) / &b.abs().max(ctx.int(1))
}

fn transformation_jobs(opts: SuiteOptions, ctx: &Context) -> Vec<Job<'_>> {
    let large: Job<'_> = Box::new(move || {
        let name = format!("large-z transformation, {} samples", opts.samples);
        let tol = ctx.contract_tolerance();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut worst = ctx.int(0);
        let mut done = 0;
        while done < opts.samples {
            let (a, b, c) = (random_param(&mut rng), random_param(&mut rng), random_param(&mut rng));
            let Ok(p) = F21Params::new(a, b, c) else { continue };
            let r = ctx.ratio(rng.random_range(120..400), 100);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            let (s, co) = ctx.sin_cos(&(&ctx.pi() * &ctx.ratio(sign * rng.random_range(5..90), 100)));
            let z = HPComplex::new(co, s).scale(&r);
            let via = match transform_15_10_33(&p, &z, ctx) {
                Ok(v) => v,
                Err(e) if skippable(&e) => continue,
                Err(e) => return failed(name, e),
            };
            match f21_eval(&p, &z, ctx) {
                Ok(direct) => worst = worst.max(rel_dist(&via, &direct, ctx)),
                Err(e) => return failed(name, e),
            }
            done += 1;
        }
        CheckResult { name, pass: worst < tol, detail: json!({ "worst_residual": output::small(&worst) }) }
    });
    let quadratic: Job<'_> = Box::new(move || {
        let name = format!("quadratic transformations, {} samples", opts.samples);
        let tol = ctx.contract_tolerance();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
        let mut worst = ctx.int(0);
        let mut done = 0;
        while done < opts.samples {
            let (a, b) = (random_param(&mut rng), random_param(&mut rng));
            let z = ctx.complex(&rat(rng.random_range(1..800), 1000), &int(0));
            let plus = done % 2 == 0;
            let Ok(p) = F21Params::new(a, b, if plus { rat(1, 2) } else { rat(3, 2) }) else { continue };
            let via = if plus { transform_quadratic_plus(&p, &z, ctx) } else { transform_quadratic_minus(&p, &z, ctx) };
            let via = match via {
                Ok(v) => v,
                Err(e) if skippable(&e) => continue,
                Err(e) => return failed(name, e),
            };
            match f21_eval(&p, &z, ctx) {
                Ok(direct) => worst = worst.max(rel_dist(&via, &direct, ctx)),
                Err(e) => return failed(name, e),
            }
            done += 1;
        }
        CheckResult { name, pass: worst < tol, detail: json!({ "worst_residual": output::small(&worst) }) }
    });
    let closed: Job<'_> = Box::new(move || {
        let name = "closed forms of g and h at t = 1/4, 1/3".to_string();
        let tol = ctx.contract_tolerance();
        let mut worst = ctx.int(0);
        for t in [rat(1, 4), rat(1, 3)] {
            let t = HPComplex::from_rational(&t, ctx.bits());
            for case in CmCase::ALL {
                let (g, h, _) = match flat_parts_series(case, &t, usize::MAX, ctx) {
                    Ok(v) => v,
                    Err(e) => return failed(name, e),
                };
                let forms = match case {
                    CmCase::Rho => closed_form_g_rho(&t, ctx).and_then(|g| Ok((g, closed_form_h_rho(&t, ctx)?))),
                    CmCase::I => closed_form_g_i(&t, ctx).and_then(|g| Ok((g, closed_form_h_i(&t, ctx)?))),
                };
                match forms {
                    Ok((gc, hc)) => {
                        worst = worst.max(rel_dist(&gc, &g, ctx)).max(rel_dist(&hc, &h, ctx));
                    }
                    Err(e) => return failed(name, e),
                }
            }
        }
        CheckResult { name, pass: worst < tol, detail: json!({ "worst_residual": output::small(&worst) }) }
    });
    vec![large, quadratic, closed]
}

fn inversion_jobs(opts: SuiteOptions, ctx: &Context) -> Vec<Job<'_>> {
    let spots: Job<'_> = Box::new(|| {
        let lambda = j_from_lambda(&rat(1, 2));
        let gamma = j_from_gamma(&rat(1, 2));
        CheckResult {
            name: "spot values at 1/2".into(),
            pass: lambda == Ok(int(1728)) && gamma == Ok(int(54000)),
            detail: json!({
                "lambda": lambda.map(|q| q.to_string()).unwrap_or_default(),
                "gamma": gamma.map(|q| q.to_string()).unwrap_or_default(),
            }),
        }
    });
    let sampled = |label: &'static str, seed: u64| -> Job<'_> {
        Box::new(move || {
            let name = format!("{label} parametrization, {} samples", opts.samples);
            let tol = ctx.pow10_neg(6);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = ctx.int(0);
            for _ in 0..opts.samples {
                let x = rat(rng.random_range(501..9500), 10_000);
                let xc = HPComplex::from_rational(&x, ctx.bits());
                let outcome = if label == "lambda" {
                    tau_from_lambda(&xc, ctx).and_then(|tau| Ok((j_eval(&tau, ctx)?, j_from_lambda(&x)?)))
                } else {
                    tau_from_gamma(&xc, ctx).and_then(|tau| Ok((j_eval(&tau, ctx)?, j_from_gamma(&x)?)))
                };
                match outcome {
                    Ok((j, exact)) => worst = worst.max(j.dist(&HPComplex::from_rational(&exact, ctx.bits()))),
                    Err(e) => return failed(name, e),
                }
            }
            CheckResult { name, pass: worst < tol, detail: json!({ "worst_residual": output::small(&worst) }) }
        })
    };
    vec![spots, sampled("lambda", opts.seed ^ 2), sampled("gamma", opts.seed ^ 3)]
}
