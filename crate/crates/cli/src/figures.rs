//! Preset datasets. Each preset pins its measure, curve family, and grids;
//! the acceleration axis is 120 log-spaced points in [0.1, 30] at omega = 1
//! (the thermal factor then sweeps essentially 0 to 0.81), with analytic
//! infinite-acceleration limit rows appended where a closed form exists.

use anyhow::{bail, Result};
use rayon::prelude::*;

use unruh_core::measures::Measure;
use unruh_core::unruh::{CoeffConvention, CombinationMode};

use crate::config::{Spacing, DEFAULT_A_MAX, DEFAULT_A_MIN, DEFAULT_A_STEPS, DEFAULT_OMEGA};
use crate::csvout::OutputRow;
use crate::sweep::{
    acceleration_grid, evaluate_anyon_point, evaluate_direct_point, limit_row, worker_pool,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        for id in FigureId::ALL {
            if id.label() == s {
                return Ok(id);
            }
        }
        bail!("unknown figure id '{s}' (expected fig1 through fig7)");
    }
}

/// Boson and fermion curves only.
const TWO_CURVES: [f64; 2] = [0.0, 1.0];
/// The seven-curve statistical-parameter grid.
const SEVEN_CURVES: [f64; 7] = [0.0, 0.2, 0.4, 0.5, 0.8, 0.9, 1.0];

fn step_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

struct Preset {
    measure: Measure,
    alphas: Vec<f64>,
    accelerations: Vec<f64>,
    direct: bool,
    limit_alphas: Vec<f64>,
}

fn preset(id: FigureId) -> Preset {
    let standard_a = acceleration_grid(DEFAULT_A_MIN, DEFAULT_A_MAX, DEFAULT_A_STEPS, Spacing::Log);
    match id {
        // entropy of the two pure-statistics curves
        FigureId::Fig1 => Preset {
            measure: Measure::Entropy,
            alphas: TWO_CURVES.to_vec(),
            accelerations: standard_a,
            direct: true,
            limit_alphas: vec![1.0],
        },
        FigureId::Fig2 => Preset {
            measure: Measure::LogNegativity,
            alphas: TWO_CURVES.to_vec(),
            accelerations: standard_a,
            direct: true,
            limit_alphas: vec![0.0, 1.0],
        },
        // entropy surface over (alpha, a)
        FigureId::Fig3 => Preset {
            measure: Measure::Entropy,
            alphas: step_grid(0.0, 1.0, 21),
            accelerations: standard_a,
            direct: false,
            limit_alphas: vec![],
        },
        FigureId::Fig4 => Preset {
            measure: Measure::Entropy,
            alphas: SEVEN_CURVES.to_vec(),
            accelerations: standard_a,
            direct: false,
            limit_alphas: vec![],
        },
        // entropy against alpha at four fixed accelerations
        FigureId::Fig5 => Preset {
            measure: Measure::Entropy,
            alphas: step_grid(0.0, 1.0, 51),
            accelerations: acceleration_grid(2.0, 30.0, 4, Spacing::Log),
            direct: false,
            limit_alphas: vec![],
        },
        FigureId::Fig6 => Preset {
            measure: Measure::LogNegativity,
            alphas: SEVEN_CURVES.to_vec(),
            accelerations: standard_a,
            direct: false,
            limit_alphas: vec![0.0, 1.0],
        },
        FigureId::Fig7 => Preset {
            measure: Measure::Coherence,
            alphas: SEVEN_CURVES.to_vec(),
            accelerations: standard_a,
            direct: false,
            limit_alphas: vec![1.0],
        },
    }
}

/// Every row of the preset dataset, unsorted (the CSV writer sorts).
pub fn figure_rows(id: FigureId) -> Result<Vec<OutputRow>> {
    let plan = preset(id);
    let label = id.label();
    let points: Vec<(f64, f64)> = plan
        .alphas
        .iter()
        .flat_map(|&alpha| plan.accelerations.iter().map(move |&a| (alpha, a)))
        .collect();
    let pool = worker_pool()?;
    let mut rows: Vec<OutputRow> = pool.install(|| {
        points
            .par_iter()
            .map(|&(alpha, a)| {
                if plan.direct {
                    evaluate_direct_point(
                        label,
                        plan.measure,
                        alpha,
                        a,
                        DEFAULT_OMEGA,
                        crate::config::DEFAULT_EPS_TAIL,
                        CoeffConvention::SqrtN,
                    )
                } else {
                    evaluate_anyon_point(
                        label,
                        plan.measure,
                        alpha,
                        a,
                        DEFAULT_OMEGA,
                        crate::config::DEFAULT_EPS_TAIL,
                        None,
                        CombinationMode::TraceWeighted,
                        CoeffConvention::SqrtN,
                    )
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    for &alpha in &plan.limit_alphas {
        rows.extend(limit_row(label, plan.measure, alpha, DEFAULT_OMEGA));
    }
    Ok(rows)
}
