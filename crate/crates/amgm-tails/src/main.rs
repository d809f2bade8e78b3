#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use amgm_tails::applications::{
    bh_bound, bh_improved, bh_lambda, markov_bound, p1, p2, p3, p_opt, BHInput, SubGaussianInput,
};
use amgm_tails::bounds::{
    exact_tail_bound, simple_tail_bound, BoundRegion, MeanRatio, TailSide,
};
use amgm_tails::verify::{oracle_check_with_bound, two_point_sup};

/// Grid size used by the `verify` subcommand's two-point search.
const VERIFY_GRID: usize = 2000;

#[derive(Parser)]
#[command(
    name = "amgm-tails",
    version,
    about = "Tail bounds for positive random variables from the arithmetic-to-geometric mean ratio"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

impl From<Side> for TailSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Right => TailSide::Right,
            Side::Left => TailSide::Left,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact bound p, simple bound q and Markov baseline at one (mu, v) point
    Bound {
        #[arg(long)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sub-Gaussian bounds P1, P2, P3 (plus P_opt when --sigma/--y are given)
    Subgaussian {
        #[arg(long, conflicts_with_all = ["sigma", "y"])]
        t: Option<f64>,
        #[arg(long, requires = "y")]
        sigma: Option<f64>,
        #[arg(long, requires = "sigma")]
        y: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bennett-Hoeffding bound and its improvement at (y, sigma, b)
    Bh {
        #[arg(long)]
        y: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Table of (v, p_v, q_v) over a v-grid, with p = 1 on [1, mu]
    Figure1 {
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 0.01)]
        vmin: f64,
        #[arg(long, default_value_t = 3.0)]
        vmax: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Table of P2/P1, P3/P1 and P_opt/P1 over a t-grid
    Figure2 {
        #[arg(long, default_value_t = 6.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.01)]
        tmin: f64,
        #[arg(long, default_value_t = 4.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte-Carlo soundness check plus brute-force tightness check
    Verify {
        #[arg(long)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Test hook: replace the exact bound in all comparisons.
        #[arg(long, hide = true)]
        bound_override: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// All applicable bounds at one query point, side by side
    Compare {
        #[arg(long)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn side_str(side: TailSide) -> &'static str {
    match side {
        TailSide::Right => "right",
        TailSide::Left => "left",
    }
}

fn region_str(region: BoundRegion) -> &'static str {
    match region {
        BoundRegion::Nontrivial => "nontrivial",
        BoundRegion::DegenerateOne => "degenerate_one",
        BoundRegion::TrivialZero => "trivial_zero",
    }
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct BoundRecord {
    mu: f64,
    v: f64,
    side: &'static str,
    region: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    markov: Option<f64>,
}

#[derive(Serialize)]
struct SubGaussianRecord {
    t: f64,
    p1: f64,
    p2: f64,
    p3: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_opt: Option<f64>,
}

#[derive(Serialize)]
struct BhRecord {
    y: f64,
    sigma: f64,
    b: f64,
    lambda_star: f64,
    p_bh: f64,
    p_bh1: f64,
    ratio_to_bh: f64,
}

#[derive(Serialize)]
struct Figure1Row {
    v: f64,
    p: f64,
    q: f64,
}

#[derive(Serialize)]
struct Figure2Row {
    t: f64,
    p2_over_p1: f64,
    p3_over_p1: f64,
    p_opt_over_p1: f64,
    p3_above_cutoff: bool,
}

#[derive(Serialize)]
struct VerifyRecord {
    mu: f64,
    v: f64,
    side: &'static str,
    trials: u64,
    seed: u64,
    violations: u64,
    max_tail: f64,
    bound: f64,
    two_point_sup: f64,
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("records serialize"));
}

fn emit_csv(header: &str, rows: Vec<String>) {
    println!("{header}");
    for row in rows {
        println!("{row}");
    }
}

fn parse_mu(mu: f64) -> Result<MeanRatio, CliError> {
    MeanRatio::new(mu).map_err(usage)
}

fn check_finite(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {x}")))
    }
}

fn grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(min < max) || !(step > 0.0) || !min.is_finite() || !max.is_finite() {
        return Err(CliError::Usage(format!(
            "need min < max and step > 0, got [{min}, {max}) step {step}"
        )));
    }
    let count = ((max - min) / step - 1e-9).floor().max(0.0) as usize + 1;
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bound { mu, v, side, format } => {
            let mu = parse_mu(mu)?;
            check_finite("v", v)?;
            let side: TailSide = side.into();
            let res = exact_tail_bound(mu, v, side);
            let rec = BoundRecord {
                mu: mu.get(),
                v,
                side: side_str(side),
                region: region_str(res.region),
                z: res.z,
                p: res.p,
                q: simple_tail_bound(mu, v, side).ok(),
                markov: match side {
                    TailSide::Right => markov_bound(mu, v).ok(),
                    TailSide::Left => None,
                },
            };
            match format {
                Format::Json => emit_json(&rec),
                Format::Csv => emit_csv(
                    "mu,v,side,region,z,p,q,markov",
                    vec![format!(
                        "{},{},{},{},{},{},{},{}",
                        rec.mu,
                        rec.v,
                        rec.side,
                        rec.region,
                        opt_cell(rec.z),
                        rec.p,
                        opt_cell(rec.q),
                        opt_cell(rec.markov)
                    )],
                ),
            }
            Ok(())
        }
        Command::Subgaussian { t, sigma, y, format } => {
            let (t, popt) = match (t, sigma, y) {
                (Some(t), None, None) => {
                    if !(t > 0.0) || !t.is_finite() {
                        return Err(CliError::Usage(format!("t must be positive, got {t}")));
                    }
                    (t, None)
                }
                (None, Some(sigma), Some(y)) => {
                    let input = SubGaussianInput::new(sigma, y).map_err(usage)?;
                    let po = p_opt(sigma, y).map_err(usage)?;
                    (input.t(), Some(po))
                }
                _ => {
                    return Err(CliError::Usage(
                        "give either --t, or both --sigma and --y".into(),
                    ))
                }
            };
            let rec = SubGaussianRecord { t, p1: p1(t), p2: p2(t), p3: p3(t), p_opt: popt };
            match format {
                Format::Json => emit_json(&rec),
                Format::Csv => emit_csv(
                    "t,p1,p2,p3,p_opt",
                    vec![format!(
                        "{},{},{},{},{}",
                        rec.t,
                        rec.p1,
                        rec.p2,
                        rec.p3,
                        opt_cell(rec.p_opt)
                    )],
                ),
            }
            Ok(())
        }
        Command::Bh { y, sigma, b, format } => {
            BHInput::new(y, sigma, b).map_err(usage)?;
            let lambda_star = bh_lambda(y, sigma, b).map_err(usage)?;
            let p_bh = bh_bound(y, sigma, b).map_err(usage)?;
            let p_bh1 = bh_improved(y, sigma, b).map_err(usage)?;
            let rec = BhRecord { y, sigma, b, lambda_star, p_bh, p_bh1, ratio_to_bh: p_bh1 / p_bh };
            match format {
                Format::Json => emit_json(&rec),
                Format::Csv => emit_csv(
                    "y,sigma,b,lambda_star,p_bh,p_bh1,ratio_to_bh",
                    vec![format!(
                        "{},{},{},{},{},{},{}",
                        rec.y, rec.sigma, rec.b, rec.lambda_star, rec.p_bh, rec.p_bh1, rec.ratio_to_bh
                    )],
                ),
            }
            Ok(())
        }
        Command::Figure1 { mu, vmin, vmax, step, format } => {
            let mu = parse_mu(mu)?;
            if !(vmin > 0.0) {
                return Err(CliError::Usage(format!("vmin must be positive, got {vmin}")));
            }
            let rows: Vec<Figure1Row> = grid(vmin, vmax, step)?
                .into_iter()
                .map(|v| {
                    let p = if v < 1.0 {
                        exact_tail_bound(mu, v, TailSide::Left).p
                    } else if v <= mu.get() {
                        1.0
                    } else {
                        exact_tail_bound(mu, v, TailSide::Right).p
                    };
                    let side = if v < 1.0 { TailSide::Left } else { TailSide::Right };
                    let q = simple_tail_bound(mu, v, side)
                        .expect("grid v is inside the q domain for its side");
                    Figure1Row { v, p, q }
                })
                .collect();
            match format {
                Format::Json => emit_json(&rows),
                Format::Csv => emit_csv(
                    "v,p,q",
                    rows.iter().map(|r| format!("{},{},{}", r.v, r.p, r.q)).collect(),
                ),
            }
            Ok(())
        }
        Command::Figure2 { sigma, tmin, tmax, step, format } => {
            if !(sigma > 0.0) || !sigma.is_finite() {
                return Err(CliError::Usage(format!("sigma must be positive, got {sigma}")));
            }
            if !(tmin > 0.0) {
                return Err(CliError::Usage(format!("tmin must be positive, got {tmin}")));
            }
            let rows: Vec<Figure2Row> = grid(tmin, tmax, step)?
                .into_iter()
                .map(|t| {
                    let base = p1(t);
                    let r2 = p2(t) / base;
                    let r3 = p3(t) / base;
                    let ro = p_opt(sigma, sigma * t)
                        .expect("sigma and sigma*t are positive on the grid")
                        / base;
                    Figure2Row {
                        t,
                        p2_over_p1: r2,
                        p3_over_p1: r3,
                        p_opt_over_p1: ro,
                        p3_above_cutoff: r3 >= 1.08,
                    }
                })
                .collect();
            match format {
                Format::Json => emit_json(&rows),
                Format::Csv => emit_csv(
                    "t,p2_over_p1,p3_over_p1,p_opt_over_p1,p3_above_cutoff",
                    rows.iter()
                        .map(|r| {
                            format!(
                                "{},{},{},{},{}",
                                r.t, r.p2_over_p1, r.p3_over_p1, r.p_opt_over_p1, r.p3_above_cutoff
                            )
                        })
                        .collect(),
                ),
            }
            Ok(())
        }
        Command::Verify { mu, v, side, trials, seed, bound_override, format } => {
            let mu = parse_mu(mu)?;
            check_finite("v", v)?;
            if trials == 0 {
                return Err(CliError::Usage("trials must be at least 1".into()));
            }
            let side: TailSide = side.into();
            let exact = exact_tail_bound(mu, v, side);
            if exact.region != BoundRegion::Nontrivial {
                return Err(CliError::Usage(format!(
                    "(mu={}, v={v}, {}) is outside the nontrivial region",
                    mu.get(),
                    side_str(side)
                )));
            }
            let bound = bound_override.unwrap_or(exact.p);
            let report =
                oracle_check_with_bound(mu, v, side, trials, seed, bound).map_err(usage)?;
            let sup = two_point_sup(mu, v, side, VERIFY_GRID).map_err(usage)?;
            let rec = VerifyRecord {
                mu: mu.get(),
                v,
                side: side_str(side),
                trials,
                seed,
                violations: report.violations,
                max_tail: report.max_tail,
                bound,
                two_point_sup: sup,
            };
            match format {
                Format::Json => emit_json(&rec),
                Format::Csv => emit_csv(
                    "mu,v,side,trials,seed,violations,max_tail,bound,two_point_sup",
                    vec![format!(
                        "{},{},{},{},{},{},{},{},{}",
                        rec.mu,
                        rec.v,
                        rec.side,
                        rec.trials,
                        rec.seed,
                        rec.violations,
                        rec.max_tail,
                        rec.bound,
                        rec.two_point_sup
                    )],
                ),
            }
            if report.violations > 0 {
                return Err(CliError::Verification(format!(
                    "{} of {} sampled tails exceeded the bound {bound}",
                    report.violations, trials
                )));
            }
            if (sup - bound).abs() > 1e-6 {
                return Err(CliError::Verification(format!(
                    "two-point supremum {sup} does not match the bound {bound} within 1e-6"
                )));
            }
            Ok(())
        }
        Command::Compare { mu, v, side, format } => {
            let mu = parse_mu(mu)?;
            check_finite("v", v)?;
            let side: TailSide = side.into();
            let res = exact_tail_bound(mu, v, side);
            let q = simple_tail_bound(mu, v, side).ok();
            let markov = match side {
                TailSide::Right => markov_bound(mu, v).ok(),
                TailSide::Left => None,
            };
            #[derive(Serialize)]
            struct CompareRecord {
                mu: f64,
                v: f64,
                side: &'static str,
                region: &'static str,
                p: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                q: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                markov: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                p_over_q: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                p_over_markov: Option<f64>,
            }
            let rec = CompareRecord {
                mu: mu.get(),
                v,
                side: side_str(side),
                region: region_str(res.region),
                p: res.p,
                q,
                markov,
                p_over_q: q.map(|q| res.p / q),
                p_over_markov: markov.map(|m| res.p / m),
            };
            match format {
                Format::Json => emit_json(&rec),
                Format::Csv => emit_csv(
                    "mu,v,side,region,p,q,markov,p_over_q,p_over_markov",
                    vec![format!(
                        "{},{},{},{},{},{},{},{},{}",
                        rec.mu,
                        rec.v,
                        rec.side,
                        rec.region,
                        rec.p,
                        opt_cell(rec.q),
                        opt_cell(rec.markov),
                        opt_cell(rec.p_over_q),
                        opt_cell(rec.p_over_markov)
                    )],
                ),
            }
            Ok(())
        }
    }
}
