//! Acceleration-dependent joint Alice/Rindler-region-I density matrices: the
//! fermionic 4x4 state, the block-diagonal bosonic state with its truncation
//! control, and the anyonic interpolation between them together with its
//! partial-transpose spectra.
//!
//! Everything is parametrized by the thermal factor `u = exp(-2 pi omega / a)`:
//! `u = 0` is the inertial (Bell-state) limit, `u = 1` the infinite-acceleration
//! limit.

use std::f64::consts::PI;

use crate::error::CoreError;
use crate::matrixcore::{kron, Spectrum, SymMatrix, MAX_DIM};

/// Cap on the bosonic truncation depth for block-resolved computations.
pub const TRUNCATION_CAP: usize = 1_000_000;

/// Above this thermal factor the bosonic sector is treated as the analytic
/// infinite-acceleration limit instead of a finite truncation.
pub const U_MAX_BOSON: f64 = 1.0 - 1e-6;

/// Acceleration/frequency pair with its derived thermal factor.
///
/// The alternative constructor [`RindlerParams::from_thermal_factor`] accepts
/// `u` directly (with `u = 1` encoding the infinite-acceleration limit) and
/// leaves the acceleration unset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerParams {
    a: Option<f64>,
    omega: Option<f64>,
    u: f64,
}

impl RindlerParams {
    pub fn new(a: f64, omega: f64) -> Result<Self, CoreError> {
        if a <= 0.0 || !a.is_finite() {
            return Err(CoreError::InvalidParam(format!(
                "acceleration must be positive and finite, got {a}"
            )));
        }
        if omega <= 0.0 || !omega.is_finite() {
            return Err(CoreError::InvalidParam(format!(
                "mode frequency must be positive and finite, got {omega}"
            )));
        }
        Ok(Self {
            a: Some(a),
            omega: Some(omega),
            u: (-2.0 * PI * omega / a).exp(),
        })
    }

    pub fn from_thermal_factor(u: f64) -> Result<Self, CoreError> {
        if !(0.0..=1.0).contains(&u) {
            return Err(CoreError::InvalidParam(format!(
                "thermal factor must lie in [0, 1], got {u}"
            )));
        }
        Ok(Self {
            a: None,
            omega: None,
            u,
        })
    }

    pub fn thermal_factor(&self) -> f64 {
        self.u
    }

    pub fn acceleration(&self) -> Option<f64> {
        self.a
    }

    pub fn omega(&self) -> Option<f64> {
        self.omega
    }
}

/// Off-diagonal coefficient of the bosonic blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffConvention {
    /// Coupling `(n+1) * sqrt(1-u)`: linear in the block index, which makes
    /// every block with `n >= 1` indefinite. Kept selectable so the defect is
    /// directly testable.
    LinearN,
    /// Coupling `sqrt(n+1) * sqrt(1-u)`: each weighted block is rank-1 PSD and
    /// the block traces sum to exactly 1. Default everywhere.
    SqrtN,
}

/// How the fermionic factor enters each anyonic block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinationMode {
    /// Unit weight in every block; blockwise measures then accumulate one
    /// full fermionic contribution per retained block and grow with the
    /// truncation depth.
    Uniform,
    /// The fermionic factor carries the block's share of the bosonic trace,
    /// normalized over the retained blocks, so the fermionic limit is
    /// recovered exactly at any truncation.
    TraceWeighted,
}

/// Statistical interpolation parameters: `alpha = 0` is bosonic,
/// `alpha = 1` fermionic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnyonCombination {
    pub alpha: f64,
    pub mode: CombinationMode,
    pub n_max: usize,
    pub convention: CoeffConvention,
}

impl AnyonCombination {
    pub fn new(
        alpha: f64,
        mode: CombinationMode,
        n_max: usize,
        convention: CoeffConvention,
    ) -> Result<Self, CoreError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(CoreError::InvalidParam(format!(
                "statistical parameter must lie in [0, 1], got {alpha}"
            )));
        }
        Ok(Self {
            alpha,
            mode,
            n_max,
            convention,
        })
    }
}

/// Eigenvalues and trace of one bosonic block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    pub block_index: usize,
    pub eigenvalues: Vec<f64>,
    pub block_trace: f64,
}

// ---------------------------------------------------------------------------
// fermionic state
// ---------------------------------------------------------------------------

fn fermion_coeffs(p: &RindlerParams) -> (f64, f64, f64) {
    let u = p.thermal_factor();
    let c2 = 1.0 / (1.0 + u);
    let s2 = u / (1.0 + u);
    (c2, s2, c2.sqrt())
}

/// Joint 4x4 Alice/region-I fermionic state on the ordered basis
/// |00>, |01>, |10>, |11>. Trace 1 and PSD for every thermal factor.
pub fn fermion_state(p: &RindlerParams) -> SymMatrix {
    let (c2, s2, c) = fermion_coeffs(p);
    let mut m = SymMatrix::zeros(4);
    m.set_sym(0, 0, 0.5 * c2);
    m.set_sym(1, 1, 0.5 * s2);
    m.set_sym(3, 3, 0.5);
    m.set_sym(0, 3, 0.5 * c);
    m
}

/// Closed-form spectrum {0, 0, s^2/2, (1+c^2)/2} of [`fermion_state`].
pub fn fermion_spectrum(p: &RindlerParams) -> [f64; 4] {
    let (c2, s2, _) = fermion_coeffs(p);
    [0.0, 0.0, 0.5 * s2, 0.5 * (1.0 + c2)]
}

/// Closed-form spectrum of the partial transpose of [`fermion_state`]:
/// {c^2/2, 1/2, (s^2 +- sqrt(s^4 + 4 c^2))/4}. The minus branch is negative
/// for every thermal factor, so the fermionic state stays entangled even in
/// the infinite-acceleration limit.
pub fn fermion_pt_spectrum(p: &RindlerParams) -> [f64; 4] {
    let (c2, s2, _) = fermion_coeffs(p);
    let disc = (s2 * s2 + 4.0 * c2).sqrt();
    [0.5 * c2, 0.5, 0.25 * (s2 + disc), 0.25 * (s2 - disc)]
}

/// Diagonal of [`fermion_state`] in basis order.
pub fn fermion_diagonal(p: &RindlerParams) -> [f64; 4] {
    let (c2, s2, _) = fermion_coeffs(p);
    [0.5 * c2, 0.5 * s2, 0.0, 0.5]
}

// ---------------------------------------------------------------------------
// bosonic blocks and truncation
// ---------------------------------------------------------------------------

/// Geometric weight `w_n = (1-u) u^n / 2` of block n.
pub fn block_weight(n: usize, p: &RindlerParams) -> f64 {
    let u = p.thermal_factor();
    0.5 * (1.0 - u) * u.powi(n as i32)
}

fn block_coupling(n: usize, p: &RindlerParams, conv: CoeffConvention) -> f64 {
    let root = (1.0 - p.thermal_factor()).sqrt();
    match conv {
        CoeffConvention::LinearN => (n as f64 + 1.0) * root,
        CoeffConvention::SqrtN => (n as f64 + 1.0).sqrt() * root,
    }
}

/// Trace `t_n = w_n (1 + (n+1)(1-u))` of the weighted block n; the t_n sum
/// to 1 over all blocks.
pub fn block_trace(n: usize, p: &RindlerParams) -> f64 {
    let u = p.thermal_factor();
    block_weight(n, p) * (1.0 + (n as f64 + 1.0) * (1.0 - u))
}

fn eig2(a: f64, b: f64, d: f64) -> (f64, f64) {
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    (half_tr + disc, half_tr - disc)
}

/// Weighted 2x2 matrix of block n on the ordered basis {|0,n>, |1,n+1>},
/// together with its eigenvalues and trace.
pub fn boson_block(
    n: usize,
    p: &RindlerParams,
    conv: CoeffConvention,
) -> (SymMatrix, BlockSpectrum) {
    let u = p.thermal_factor();
    let w = block_weight(n, p);
    let c = block_coupling(n, p, conv);
    let d = (n as f64 + 1.0) * (1.0 - u);
    let mut m = SymMatrix::zeros(2);
    m.set_sym(0, 0, w);
    m.set_sym(1, 1, w * d);
    m.set_sym(0, 1, w * c);
    let (hi, lo) = eig2(w, w * c, w * d);
    (
        m,
        BlockSpectrum {
            block_index: n,
            eigenvalues: vec![hi, lo],
            block_trace: block_trace(n, p),
        },
    )
}

/// Eigenvalues of block n promoted to its 4x4 basis
/// {|0,n>, |1,n>, |0,n+1>, |1,n+1>}; the two added rows are zero.
pub fn boson_block_eigs4(n: usize, p: &RindlerParams, conv: CoeffConvention) -> [f64; 4] {
    let u = p.thermal_factor();
    let w = block_weight(n, p);
    let c = block_coupling(n, p, conv);
    let d = (n as f64 + 1.0) * (1.0 - u);
    let (hi, lo) = eig2(w, w * c, w * d);
    [hi, lo, 0.0, 0.0]
}

/// Diagonal of the promoted 4x4 block in basis order. Independent of the
/// coupling convention, which only touches the off-diagonal.
pub fn boson_block_diag4(n: usize, p: &RindlerParams, _conv: CoeffConvention) -> [f64; 4] {
    let u = p.thermal_factor();
    let w = block_weight(n, p);
    [w, 0.0, 0.0, w * (n as f64 + 1.0) * (1.0 - u)]
}

/// Retained-trace deficit `1 - sum_{n<=n_max} t_n` in closed form.
pub fn truncation_tail(p: &RindlerParams, n_max: usize) -> f64 {
    let u = p.thermal_factor();
    0.5 * u.powi(n_max as i32 + 1) * ((1.0 + u) + (n_max as f64 + 2.0) * (1.0 - u))
}

/// Smallest truncation depth whose trace deficit is at most `eps_tail`.
/// Monotone nonincreasing in `eps_tail`.
pub fn choose_truncation(p: &RindlerParams, eps_tail: f64) -> Result<usize, CoreError> {
    if eps_tail <= 0.0 || eps_tail >= 1.0 || eps_tail.is_nan() {
        return Err(CoreError::InvalidParam(format!(
            "tail tolerance must lie in (0, 1), got {eps_tail}"
        )));
    }
    if truncation_tail(p, 0) <= eps_tail {
        return Ok(0);
    }
    let mut hi = 1usize;
    while truncation_tail(p, hi) > eps_tail {
        if hi >= TRUNCATION_CAP {
            return Err(CoreError::TruncationOverflow {
                required: estimate_required_depth(p, eps_tail),
                cap: TRUNCATION_CAP,
            });
        }
        hi = (hi * 2).min(TRUNCATION_CAP);
    }
    let mut lo = hi / 2; // tail(lo) > eps_tail here
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if truncation_tail(p, mid) <= eps_tail {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Rough depth estimate for the overflow diagnostic, from iterating
/// `n = (ln(2 eps) - ln(bracket)) / ln(u) - 1`.
fn estimate_required_depth(p: &RindlerParams, eps_tail: f64) -> usize {
    let u = p.thermal_factor();
    if u >= 1.0 {
        return usize::MAX;
    }
    let ln_u = u.ln();
    let mut n = ((2.0 * eps_tail).ln() / ln_u).max(1.0);
    for _ in 0..4 {
        let bracket = (1.0 + u) + (n + 2.0) * (1.0 - u);
        n = (((2.0 * eps_tail / bracket).ln()) / ln_u - 1.0).max(1.0);
    }
    if n >= usize::MAX as f64 {
        usize::MAX
    } else {
        n.ceil() as usize
    }
}

/// Dense truncated bosonic state on the product basis |A> (x) |n> with
/// `A in {0, 1}` and `n in 0..=n_max+1` (dimension `2 (n_max + 2)`).
pub fn boson_state_truncated(
    p: &RindlerParams,
    n_max: usize,
    conv: CoeffConvention,
) -> Result<SymMatrix, CoreError> {
    let db = n_max + 2;
    let dim = 2 * db;
    if dim > MAX_DIM {
        return Err(CoreError::DimensionOverflow { dim, max: MAX_DIM });
    }
    let u = p.thermal_factor();
    let mut m = SymMatrix::zeros(dim);
    let idx = |alice: usize, n: usize| alice * db + n;
    for n in 0..=n_max {
        let w = block_weight(n, p);
        let c = block_coupling(n, p, conv);
        let d = (n as f64 + 1.0) * (1.0 - u);
        m.set_sym(idx(0, n), idx(0, n), w);
        m.set_sym(idx(1, n + 1), idx(1, n + 1), w * d);
        m.set_sym(idx(0, n), idx(1, n + 1), w * c);
    }
    Ok(m)
}

/// Blockwise closed-form spectrum of the dense truncated state: the union of
/// the per-block eigenvalue pairs plus the two zeros from the uncoupled
/// |1,0> and |0,n_max+1> rows.
pub fn boson_spectrum_truncated(
    p: &RindlerParams,
    n_max: usize,
    conv: CoeffConvention,
) -> Spectrum {
    let mut vals = Vec::with_capacity(2 * (n_max + 2));
    for n in 0..=n_max {
        let e = boson_block_eigs4(n, p, conv);
        vals.push(e[0]);
        vals.push(e[1]);
    }
    vals.push(0.0);
    vals.push(0.0);
    Spectrum::new(vals, 2 * (n_max + 2)).expect("length matches by construction")
}

/// One eigenvalue of the partially transposed truncated state, labeled by the
/// block it belongs to in the exact 2x2 decomposition of the transposed
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtEigenvalue {
    pub block: usize,
    pub value: f64,
}

/// Full spectrum of `PT_A(boson_state_truncated)` from its exact block
/// structure.
///
/// The partial transpose moves the coupling of block n onto the pair
/// {|1,n>, |0,n+1>}, whose diagonal entries come from the neighboring blocks,
/// so the transposed matrix splits into n_max+1 2x2 blocks plus the two
/// uncoupled entries at |0,0> and |1,n_max+1>. Equal to dense
/// `partial_transpose_alice` + `eigvals_sym` to machine precision, at any
/// truncation depth.
pub fn boson_pt_spectrum_blocks(
    p: &RindlerParams,
    n_max: usize,
    conv: CoeffConvention,
) -> Vec<PtEigenvalue> {
    let u = p.thermal_factor();
    let mut out = Vec::with_capacity(2 * (n_max + 2));
    for n in 0..=n_max {
        // diag at |1,n| is block n-1's upper level, at |0,n+1| block n+1's weight
        let a = if n >= 1 {
            block_weight(n - 1, p) * n as f64 * (1.0 - u)
        } else {
            0.0
        };
        let d = if n < n_max {
            block_weight(n + 1, p)
        } else {
            0.0
        };
        let b = block_weight(n, p) * block_coupling(n, p, conv);
        let (hi, lo) = eig2(a, b, d);
        out.push(PtEigenvalue {
            block: n,
            value: hi,
        });
        out.push(PtEigenvalue {
            block: n,
            value: lo,
        });
    }
    out.push(PtEigenvalue {
        block: 0,
        value: block_weight(0, p),
    });
    out.push(PtEigenvalue {
        block: n_max,
        value: block_weight(n_max, p) * (n_max as f64 + 1.0) * (1.0 - u),
    });
    out
}

// ---------------------------------------------------------------------------
// anyonic combination
// ---------------------------------------------------------------------------

/// Per-block weights of the fermionic factor. Trace-weighted mode normalizes
/// over the retained blocks so the weights sum to exactly 1.
pub fn block_fermion_weights(
    comb: &AnyonCombination,
    p_b: &RindlerParams,
) -> Result<Vec<f64>, CoreError> {
    match comb.mode {
        CombinationMode::Uniform => Ok(vec![1.0; comb.n_max + 1]),
        CombinationMode::TraceWeighted => {
            let t: Vec<f64> = (0..=comb.n_max).map(|n| block_trace(n, p_b)).collect();
            let total: f64 = t.iter().sum();
            if total <= 0.0 || total.is_nan() {
                return Err(CoreError::InvalidParam(
                    "bosonic trace vanishes at thermal factor 1; \
                     the infinite-acceleration limit has no bosonic sector"
                        .into(),
                ));
            }
            Ok(t.into_iter().map(|v| v / total).collect())
        }
    }
}

fn check_block_index(n: usize, comb: &AnyonCombination) -> Result<(), CoreError> {
    if n > comb.n_max {
        return Err(CoreError::InvalidParam(format!(
            "block index {n} exceeds the combination's truncation depth {}",
            comb.n_max
        )));
    }
    Ok(())
}

/// Dense 16x16 block n of the anyonic state together with its spectrum from
/// the pairwise eigenvalue sums.
///
/// The block is `(1-alpha) B4 (x) I4 + alpha s_n I4 (x) F` where B4 is the
/// bosonic block promoted to its 4x4 basis, F the fermionic state, and `s_n`
/// the mode-dependent fermionic weight. The two Kronecker factors commute, so
/// the 16 eigenvalues are exactly the pairwise sums
/// `(1-alpha) lambda_i(B4) + alpha s_n lambda_j(F)`.
pub fn anyon_block(
    n: usize,
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<(SymMatrix, Spectrum), CoreError> {
    check_block_index(n, comb)?;
    let weights = block_fermion_weights(comb, p_b)?;
    let s = comb.alpha * weights[n];

    let u = p_b.thermal_factor();
    let w = block_weight(n, p_b);
    let c = block_coupling(n, p_b, comb.convention);
    let d = (n as f64 + 1.0) * (1.0 - u);
    let mut b4 = SymMatrix::zeros(4);
    b4.set_sym(0, 0, w);
    b4.set_sym(3, 3, w * d);
    b4.set_sym(0, 3, w * c);

    let f = fermion_state(p_f);
    let i4 = SymMatrix::identity(4);
    let left = kron(&b4, &i4)?;
    let right = kron(&i4, &f)?;
    let m = SymMatrix::from_fn_sym(16, |i, j| {
        (1.0 - comb.alpha) * left.get(i, j) + s * right.get(i, j)
    });

    let beigs = boson_block_eigs4(n, p_b, comb.convention);
    let feigs = fermion_spectrum(p_f);
    let mut vals = Vec::with_capacity(16);
    for &lb in &beigs {
        for &lf in &feigs {
            vals.push((1.0 - comb.alpha) * lb + s * lf);
        }
    }
    Ok((m, Spectrum::new(vals, 16)?))
}

/// Paired 16-value spectra of every retained anyonic block, in block order.
pub fn anyon_paired_spectra(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<Vec<[f64; 16]>, CoreError> {
    let weights = block_fermion_weights(comb, p_b)?;
    let feigs = fermion_spectrum(p_f);
    let mut out = Vec::with_capacity(comb.n_max + 1);
    for (n, &weight) in weights.iter().enumerate() {
        let beigs = boson_block_eigs4(n, p_b, comb.convention);
        let s = comb.alpha * weight;
        let mut vals = [0.0; 16];
        for (i, &lb) in beigs.iter().enumerate() {
            for (j, &lf) in feigs.iter().enumerate() {
                vals[i * 4 + j] = (1.0 - comb.alpha) * lb + s * lf;
            }
        }
        out.push(vals);
    }
    Ok(out)
}

/// Paired diagonals of every retained anyonic block: the diagonal of a
/// commuting Kronecker combination pairs the factor diagonals the same way
/// the spectrum pairs the factor eigenvalues.
pub fn anyon_paired_diagonals(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<Vec<[f64; 16]>, CoreError> {
    let weights = block_fermion_weights(comb, p_b)?;
    let fdiag = fermion_diagonal(p_f);
    let mut out = Vec::with_capacity(comb.n_max + 1);
    for (n, &weight) in weights.iter().enumerate() {
        let bdiag = boson_block_diag4(n, p_b, comb.convention);
        let s = comb.alpha * weight;
        let mut vals = [0.0; 16];
        for (i, &db) in bdiag.iter().enumerate() {
            for (j, &df) in fdiag.iter().enumerate() {
                vals[i * 4 + j] = (1.0 - comb.alpha) * db + s * df;
            }
        }
        out.push(vals);
    }
    Ok(out)
}

/// Spectrum of the partially transposed anyonic state.
///
/// Uniform mode pairs the 4 fermionic PT eigenvalues against the full
/// spectrum of the transposed bosonic state. Trace-weighted mode distributes
/// the fermionic PT spectrum over the blocks with the normalized weights and
/// pairs it against each block's share of the full bosonic PT spectrum
/// (padded with the promoted basis' zero rows to 4 values per block), so the
/// bosonic and fermionic limits are both recovered exactly.
pub fn anyon_pt_spectrum(
    comb: &AnyonCombination,
    p_f: &RindlerParams,
    p_b: &RindlerParams,
) -> Result<Spectrum, CoreError> {
    let fpt = fermion_pt_spectrum(p_f);
    let labeled = boson_pt_spectrum_blocks(p_b, comb.n_max, comb.convention);
    match comb.mode {
        CombinationMode::Uniform => {
            let mut vals = Vec::with_capacity(4 * labeled.len());
            for pe in &labeled {
                for &lf in &fpt {
                    vals.push(comb.alpha * lf + (1.0 - comb.alpha) * pe.value);
                }
            }
            let len = vals.len();
            Spectrum::new(vals, len)
        }
        CombinationMode::TraceWeighted => {
            let weights = block_fermion_weights(comb, p_b)?;
            let mut per_block: Vec<Vec<f64>> = vec![Vec::with_capacity(4); comb.n_max + 1];
            for pe in &labeled {
                per_block[pe.block].push(pe.value);
            }
            let mut vals = Vec::with_capacity(16 * (comb.n_max + 1));
            for (n, block_vals) in per_block.iter_mut().enumerate() {
                block_vals.resize(4, 0.0);
                let s = comb.alpha * weights[n];
                for &lb in block_vals.iter() {
                    for &lf in &fpt {
                        vals.push(s * lf + (1.0 - comb.alpha) * lb);
                    }
                }
            }
            let len = vals.len();
            Spectrum::new(vals, len)
        }
    }
}
