//! Grid evaluation. Points are independent pure computations, so they run on
//! a bounded worker pool; rows are sorted before writing, which keeps the
//! output bytes independent of the parallel schedule.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use unruh_core::measures::{
    boson_coherence, boson_entropy, boson_log_negativity, boson_negativity, coherence_anyon,
    entropy_anyon, fermion_coherence, fermion_entropy, fermion_log_negativity, fermion_negativity,
    log_negativity_anyon, negativity_anyon, Measure, MeasureRecord,
};
use unruh_core::unruh::{
    choose_truncation, AnyonCombination, CoeffConvention, CombinationMode, RindlerParams,
    U_MAX_BOSON,
};

use crate::config::{mode_label, Spacing, SweepConfig};
use crate::csvout::OutputRow;

pub const WORKERS_ENV: &str = "UNRUH_WORKERS";

/// Inclusive grid of `steps` accelerations between the bounds.
pub fn acceleration_grid(a_min: f64, a_max: f64, steps: usize, spacing: Spacing) -> Vec<f64> {
    assert!(steps >= 2);
    let denom = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let frac = i as f64 / denom;
            match spacing {
                Spacing::Linear => a_min + frac * (a_max - a_min),
                Spacing::Log => a_min * (a_max / a_min).powf(frac),
            }
        })
        .collect()
}

/// Worker pool sized from the environment; an unset variable means rayon's
/// default, anything unparseable fails loudly.
pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        let n: usize = raw
            .parse()
            .with_context(|| format!("{WORKERS_ENV} must be a positive integer, got '{raw}'"))?;
        if n == 0 {
            bail!("{WORKERS_ENV} must be a positive integer, got 0");
        }
        builder = builder.num_threads(n);
    }
    builder.build().context("cannot build worker pool")
}

fn truncation_for(
    p: &RindlerParams,
    eps_tail: f64,
    n_max_override: Option<usize>,
) -> Result<usize> {
    match n_max_override {
        Some(n) => Ok(n),
        None => Ok(choose_truncation(p, eps_tail)?),
    }
}

/// One anyonic evaluation at finite acceleration. Used for every sweep point
/// and for the single-point command; the statistical parameter spans the full
/// [0, 1] range, with the endpoints agreeing with the direct bosonic and
/// fermionic measures per the combination mode's reduction guarantees.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_anyon_record(
    measure: Measure,
    alpha: f64,
    a: f64,
    omega: f64,
    eps_tail: f64,
    n_max_override: Option<usize>,
    mode: CombinationMode,
    convention: CoeffConvention,
) -> Result<MeasureRecord> {
    let p = RindlerParams::new(a, omega)?;
    if p.thermal_factor() > U_MAX_BOSON {
        bail!(
            "thermal factor {:.8} exceeds {} at a = {a}, omega = {omega}; the bosonic sector \
             needs a finite truncation only below that bound (the infinite-acceleration limit \
             is available as a separate analytic value)",
            p.thermal_factor(),
            U_MAX_BOSON
        );
    }
    let n_max = truncation_for(&p, eps_tail, n_max_override)?;
    let comb = AnyonCombination::new(alpha, mode, n_max, convention)?;
    let value = match measure {
        Measure::Entropy => entropy_anyon(&comb, &p, &p)?,
        Measure::Negativity => negativity_anyon(&comb, &p, &p)?,
        Measure::LogNegativity => log_negativity_anyon(&comb, &p, &p)?,
        Measure::Coherence => coherence_anyon(&comb, &p, &p)?,
    };
    Ok(MeasureRecord {
        measure,
        alpha,
        acceleration: a,
        u: p.thermal_factor(),
        omega_f: omega,
        omega_b: omega,
        n_max,
        mode,
        value,
    })
}

pub fn record_to_row(figure: &str, rec: &MeasureRecord) -> OutputRow {
    OutputRow {
        figure: figure.to_string(),
        measure: rec.measure,
        alpha: rec.alpha,
        acceleration: rec.acceleration,
        omega: rec.omega_f,
        n_max: rec.n_max,
        mode: mode_label(rec.mode),
        value: rec.value,
    }
}

#[allow(clippy::too_many_arguments)]
pub fn evaluate_anyon_point(
    figure: &str,
    measure: Measure,
    alpha: f64,
    a: f64,
    omega: f64,
    eps_tail: f64,
    n_max_override: Option<usize>,
    mode: CombinationMode,
    convention: CoeffConvention,
) -> Result<OutputRow> {
    let rec = evaluate_anyon_record(
        measure,
        alpha,
        a,
        omega,
        eps_tail,
        n_max_override,
        mode,
        convention,
    )?;
    Ok(record_to_row(figure, &rec))
}

/// Direct bosonic (`alpha = 0`) or fermionic (`alpha = 1`) evaluation,
/// without the anyonic pairing machinery or its 1/4 counting.
pub fn evaluate_direct_point(
    figure: &str,
    measure: Measure,
    alpha: f64,
    a: f64,
    omega: f64,
    eps_tail: f64,
    convention: CoeffConvention,
) -> Result<OutputRow> {
    let p = RindlerParams::new(a, omega)?;
    let (value, n_max) = if alpha == 1.0 {
        let value = match measure {
            Measure::Entropy => fermion_entropy(&p),
            Measure::Negativity => fermion_negativity(&p),
            Measure::LogNegativity => fermion_log_negativity(&p),
            Measure::Coherence => fermion_coherence(&p),
        };
        (value, 0)
    } else if alpha == 0.0 {
        if p.thermal_factor() > U_MAX_BOSON {
            bail!(
                "thermal factor {:.8} exceeds {} at a = {a}; no finite bosonic truncation",
                p.thermal_factor(),
                U_MAX_BOSON
            );
        }
        let n_max = choose_truncation(&p, eps_tail)?;
        let value = match measure {
            Measure::Entropy => boson_entropy(&p, n_max, convention)?,
            Measure::Negativity => boson_negativity(&p, n_max, convention),
            Measure::LogNegativity => boson_log_negativity(&p, n_max, convention),
            Measure::Coherence => boson_coherence(&p, n_max, convention)?,
        };
        (value, n_max)
    } else {
        bail!("direct evaluation exists only at alpha = 0 (boson) or alpha = 1 (fermion)");
    };
    Ok(OutputRow {
        figure: figure.to_string(),
        measure,
        alpha,
        acceleration: a,
        omega,
        n_max,
        mode: "direct",
        value,
    })
}

/// Analytic infinite-acceleration value, where one exists in closed form:
/// all fermionic measures, and the vanishing bosonic negativity.
pub fn direct_limit_value(measure: Measure, alpha: f64) -> Option<f64> {
    let u1 = RindlerParams::from_thermal_factor(1.0).expect("u = 1 is valid");
    if alpha == 1.0 {
        Some(match measure {
            Measure::Entropy => fermion_entropy(&u1),
            Measure::Negativity => fermion_negativity(&u1),
            Measure::LogNegativity => fermion_log_negativity(&u1),
            Measure::Coherence => fermion_coherence(&u1),
        })
    } else if alpha == 0.0 {
        match measure {
            // the bosonic entanglement dies with the horizon; entropy and
            // coherence have no finite limit value
            Measure::Negativity | Measure::LogNegativity => Some(0.0),
            Measure::Entropy | Measure::Coherence => None,
        }
    } else {
        None
    }
}

pub fn limit_row(figure: &str, measure: Measure, alpha: f64, omega: f64) -> Option<OutputRow> {
    direct_limit_value(measure, alpha).map(|value| OutputRow {
        figure: figure.to_string(),
        measure,
        alpha,
        acceleration: f64::INFINITY,
        omega,
        n_max: 0,
        mode: "direct",
        value,
    })
}

/// Evaluates the full (alpha, a) grid of a sweep on the worker pool.
pub fn run_sweep(cfg: &SweepConfig, figure: &str) -> Result<Vec<OutputRow>> {
    cfg.validate()?;
    let grid = acceleration_grid(cfg.a_min, cfg.a_max, cfg.a_steps, cfg.a_spacing);
    let points: Vec<(f64, f64)> = cfg
        .alpha_list
        .iter()
        .flat_map(|&alpha| grid.iter().map(move |&a| (alpha, a)))
        .collect();
    let pool = worker_pool()?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(alpha, a)| {
                evaluate_anyon_point(
                    figure,
                    cfg.measure,
                    alpha,
                    a,
                    cfg.omega,
                    cfg.eps_tail,
                    cfg.n_max_override,
                    cfg.mode,
                    cfg.convention,
                )
            })
            .collect()
    })
}
