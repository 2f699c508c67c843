//! Spectral measures on the constructed states: entanglement entropy,
//! negativity, logarithmic negativity, and the relative entropy of coherence.
//!
//! Two tolerance policies apply throughout: entropies clamp round-off
//! negatives in `[-PSD_TOL, 0)` and reject anything below, while negativities
//! always see the unclamped spectrum (the negative eigenvalues are the
//! signal). The 1/4 counting factor belongs to the paired-spectrum path only;
//! direct bosonic and fermionic measures never carry it.

use crate::error::CoreError;
use crate::matrixcore::{
    eigvals_sym, entropy_of_values, shannon_entropy_b2, Spectrum, SymMatrix, EIG_TOL,
};
use crate::unruh::{
    anyon_paired_diagonals, anyon_paired_spectra, anyon_pt_spectrum, boson_block_diag4,
    boson_pt_spectrum_blocks, boson_spectrum_truncated, fermion_diagonal, fermion_pt_spectrum,
    fermion_spectrum, AnyonCombination, CoeffConvention, CombinationMode, RindlerParams,
};

/// Positive-semidefiniteness tolerance: eigenvalues above `-PSD_TOL` count as
/// round-off zeros.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Entropy,
    Negativity,
    LogNegativity,
    Coherence,
}

impl Measure {
    pub fn label(&self) -> &'static str {
        match self {
            Measure::Entropy => "entropy",
            Measure::Negativity => "negativity",
            Measure::LogNegativity => "log_negativity",
            Measure::Coherence => "coherence",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Measure {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        match s {
            "entropy" => Ok(Measure::Entropy),
            "negativity" => Ok(Measure::Negativity),
            "log_negativity" => Ok(Measure::LogNegativity),
            "coherence" => Ok(Measure::Coherence),
            other => Err(CoreError::InvalidParam(format!(
                "unknown measure '{other}' (expected entropy, negativity, \
                 log_negativity, or coherence)"
            ))),
        }
    }
}

/// One evaluated measure at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecord {
    pub measure: Measure,
    pub alpha: f64,
    /// Proper acceleration; infinite encodes the analytic limit. When the
    /// point was specified by its thermal factor directly, this carries NaN
    /// and `u` is authoritative.
    pub acceleration: f64,
    pub u: f64,
    pub omega_f: f64,
    pub omega_b: f64,
    pub n_max: usize,
    pub mode: CombinationMode,
    pub value: f64,
}

// ---------------------------------------------------------------------------
// generic spectral measures
// ---------------------------------------------------------------------------

/// Von Neumann entropy (base 2) of a dense state via its eigendecomposition.
pub fn entropy_state(m: &SymMatrix) -> Result<f64, CoreError> {
    let s = eigvals_sym(m, EIG_TOL)?;
    shannon_entropy_b2(&s, PSD_TOL)
}

/// Negative-part sum `sum (|lambda| - lambda) / 2`, scaled by 1/4 on the
/// paired-spectrum path where every eigenvalue appears once per identity
/// dimension.
pub fn negativity_from_spectrum(s: &Spectrum, quarter: bool) -> f64 {
    let sum: f64 = s.values().iter().map(|&v| 0.5 * (v.abs() - v)).sum();
    if quarter {
        0.25 * sum
    } else {
        sum
    }
}

/// `log2(1 + 2N)`; zero exactly when the negativity is zero.
pub fn log_negativity(n: f64) -> f64 {
    debug_assert!(n >= 0.0, "negativity must be nonnegative, got {n}");
    (1.0 + 2.0 * n).log2()
}

/// Relative entropy of coherence `S(diag(rho)) - S(rho)` in the fixed
/// product basis. Exactly zero for diagonal inputs.
pub fn coherence_rel_entropy(m: &SymMatrix) -> Result<f64, CoreError> {
    let diag = Spectrum::new(m.diagonal(), m.dim())?;
    let s_diag = shannon_entropy_b2(&diag, PSD_TOL)?;
    Ok(s_diag - entropy_state(m)?)
}

// ---------------------------------------------------------------------------
// direct fermionic and bosonic measures (no 1/4 factor)
// ---------------------------------------------------------------------------

pub fn fermion_entropy(p: &RindlerParams) -> f64 {
    entropy_of_values(&fermion_spectrum(p), PSD_TOL).expect("closed-form spectrum is nonnegative")
}

pub fn fermion_negativity(p: &RindlerParams) -> f64 {
    fermion_pt_spectrum(p)
        .iter()
        .map(|&v| 0.5 * (v.abs() - v))
        .sum()
}

pub fn fermion_log_negativity(p: &RindlerParams) -> f64 {
    log_negativity(fermion_negativity(p))
}

pub fn fermion_coherence(p: &RindlerParams) -> f64 {
    let mut diag = fermion_diagonal(p);
    diag.sort_by(|a, b| b.total_cmp(a));
    let s_diag = entropy_of_values(&diag, PSD_TOL).expect("closed-form diagonal is nonnegative");
    s_diag - fermion_entropy(p)
}

/// Entropy of the truncated bosonic state from its blockwise spectrum.
/// Errors on the indefinite linear-coupling blocks.
pub fn boson_entropy(
    p: &RindlerParams,
    n_max: usize,
    conv: CoeffConvention,
) -> Result<f64, CoreError> {
    shannon_entropy_b2(&boson_spectrum_truncated(p, n_max, conv), PSD_TOL)
}

pub fn boson_negativity(p: &RindlerParams, n_max: usize, conv: CoeffConvention) -> f64 {
    boson_pt_spectrum_blocks(p, n_max, conv)
        .iter()
        .map(|e| 0.5 * (e.value.abs() - e.value))
        .sum()
}

pub fn boson_log_negativity(p: &RindlerParams, n_max: usize, conv: CoeffConvention) -> f64 {
    log_negativity(boson_negativity(p, n_max, conv))
}

pub fn boson_coherence(
    p: &RindlerParams,
    n_max: usize,
    conv: CoeffConvention,
) -> Result<f64, CoreError> {
    let mut diag: Vec<f64> = (0..=n_max)
        .flat_map(|n| boson_block_diag4(n, p, conv))
        .collect();
    diag.sort_by(|a, b| b.total_cmp(a));
    let s_diag = entropy_of_values(&diag, PSD_TOL)?;
    Ok(s_diag - boson_entropy(p, n_max, conv)?)
}

// ---------------------------------------------------------------------------
// anyonic measures (1/4 per-block counting)
// ---------------------------------------------------------------------------

/// Blockwise anyonic entropy: `sum_n (1/4) S(paired spectrum of block n)`.
pub fn entropy_anyon(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<f64, CoreError> {
    let mut total = 0.0;
    for block in anyon_paired_spectra(comb, p_f, p_b)? {
        total += 0.25 * entropy_of_values(&block, PSD_TOL)?;
    }
    Ok(total)
}

pub fn negativity_anyon(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<f64, CoreError> {
    Ok(negativity_from_spectrum(
        &anyon_pt_spectrum(comb, p_f, p_b)?,
        true,
    ))
}

pub fn log_negativity_anyon(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<f64, CoreError> {
    Ok(log_negativity(negativity_anyon(comb, p_f, p_b)?))
}

/// Blockwise anyonic coherence: the diagonal of each block pairs the factor
/// diagonals, so both entropies reuse the paired structure.
pub fn coherence_anyon(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<f64, CoreError> {
    let spectra = anyon_paired_spectra(comb, p_f, p_b)?;
    let diagonals = anyon_paired_diagonals(comb, p_f, p_b)?;
    let mut total = 0.0;
    for (spec, diag) in spectra.iter().zip(&diagonals) {
        let s_diag = entropy_of_values(diag, PSD_TOL)?;
        let s = entropy_of_values(spec, PSD_TOL)?;
        total += 0.25 * (s_diag - s);
    }
    Ok(total)
}
