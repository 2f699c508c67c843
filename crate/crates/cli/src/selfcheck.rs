//! Built-in invariant suite behind the `selfcheck` subcommand: one named
//! check per structural claim the toolkit relies on, each reporting pass or
//! fail independently. The eigensolver residual contract is enforced here on
//! matrices produced by every construction path.

use unruh_core::anyonstat::wu_omega;
use unruh_core::matrixcore::{
    eigen_residual_max, eigen_sym, eigvals_sym, kron, partial_transpose_alice, shannon_entropy_b2,
    BipartiteDims, SymMatrix, EIG_TOL,
};
use unruh_core::measures::{
    boson_coherence, boson_entropy, boson_log_negativity, boson_negativity, coherence_anyon,
    entropy_anyon, fermion_coherence, fermion_log_negativity, fermion_negativity,
    log_negativity_anyon, negativity_anyon, PSD_TOL,
};
use unruh_core::unruh::{
    anyon_block, block_trace, boson_block, boson_pt_spectrum_blocks, boson_spectrum_truncated,
    boson_state_truncated, choose_truncation, fermion_spectrum, fermion_state, truncation_tail,
    AnyonCombination, CoeffConvention, CombinationMode, RindlerParams,
};

type Check = fn() -> Result<(), String>;

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

struct XorShift(u64);

impl XorShift {
    fn next_unit(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn next_sym(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn params_u(u: f64) -> RindlerParams {
    RindlerParams::from_thermal_factor(u).expect("valid thermal factor")
}

fn err_str(e: impl std::fmt::Display) -> String {
    e.to_string()
}

const SQRT_N: CoeffConvention = CoeffConvention::SqrtN;
const TW: CombinationMode = CombinationMode::TraceWeighted;

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let a = sorted_desc(a.to_vec());
    let b = sorted_desc(b.to_vec());
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

fn check_kron_mixed_product() -> Result<(), String> {
    let mut rng = XorShift(0x1234_5678_9abc_def1);
    for dim in [2usize, 3] {
        for _ in 0..8 {
            let a = SymMatrix::from_fn_sym(dim, |_, _| rng.next_sym());
            let b = SymMatrix::from_fn_sym(dim, |_, _| rng.next_sym());
            let ea = eigvals_sym(&a, EIG_TOL).map_err(err_str)?;
            let eb = eigvals_sym(&b, EIG_TOL).map_err(err_str)?;
            let mut pairwise = Vec::new();
            for &x in ea.values() {
                for &y in eb.values() {
                    pairwise.push(x * y);
                }
            }
            let dense = eigvals_sym(&kron(&a, &b).map_err(err_str)?, EIG_TOL).map_err(err_str)?;
            ensure(
                multiset_close(dense.values(), &pairwise, 1e-9),
                format!("mixed-product spectra diverge at dim {dim}"),
            )?;
        }
    }
    Ok(())
}

fn check_partial_transpose_involution() -> Result<(), String> {
    let mut rng = XorShift(0xfeed_face_dead_beef);
    let dims = BipartiteDims::new(2, 3).map_err(err_str)?;
    for _ in 0..10 {
        let m = SymMatrix::from_fn_sym(6, |_, _| rng.next_sym());
        let pt = partial_transpose_alice(&m, &dims).map_err(err_str)?;
        ensure(
            (pt.trace() - m.trace()).abs() <= 1e-14,
            "partial transpose changed the trace",
        )?;
        let back = partial_transpose_alice(&pt, &dims).map_err(err_str)?;
        ensure(back == m, "partial transpose is not involutive")?;
    }
    Ok(())
}

fn check_entropy_tensor_identity() -> Result<(), String> {
    let mut rng = XorShift(0x0bad_cafe_0000_0001);
    for _ in 0..10 {
        let g: Vec<f64> = (0..9).map(|_| rng.next_sym()).collect();
        let a = SymMatrix::from_fn_sym(2, |i, j| (0..2).map(|k| g[i * 2 + k] * g[j * 2 + k]).sum());
        let b = SymMatrix::from_fn_sym(3, |i, j| (0..3).map(|k| g[i * 3 + k] * g[j * 3 + k]).sum());
        let s = |m: &SymMatrix| -> Result<f64, String> {
            shannon_entropy_b2(&eigvals_sym(m, EIG_TOL).map_err(err_str)?, 1e-9).map_err(err_str)
        };
        let lhs = s(&kron(&a, &b).map_err(err_str)?)?;
        let rhs = a.trace() * s(&b)? + b.trace() * s(&a)?;
        ensure(
            (lhs - rhs).abs() <= 1e-8,
            format!("tensor identity violated: {lhs} vs {rhs}"),
        )?;
    }
    Ok(())
}

fn check_eigensolver_residual_contract() -> Result<(), String> {
    // every construction path must hand the solver matrices it can certify
    let mut produced: Vec<(String, SymMatrix)> = Vec::new();
    for u in [0.0, 0.3, 0.7, 1.0] {
        produced.push((format!("fermion u={u}"), fermion_state(&params_u(u))));
    }
    let p = params_u(0.5);
    let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
    let boson = boson_state_truncated(&p, n_max, SQRT_N).map_err(err_str)?;
    let dims = BipartiteDims::new(2, n_max + 2).map_err(err_str)?;
    produced.push((
        "boson pt u=0.5".into(),
        partial_transpose_alice(&boson, &dims).map_err(err_str)?,
    ));
    produced.push(("boson u=0.5".into(), boson));
    let comb = AnyonCombination::new(0.3, TW, n_max, SQRT_N).map_err(err_str)?;
    let (block, _) = anyon_block(2, &comb, &p, &p).map_err(err_str)?;
    produced.push(("anyon block n=2".into(), block));
    for (name, m) in produced {
        let eig = eigen_sym(&m, EIG_TOL).map_err(err_str)?;
        let bound = EIG_TOL * m.frobenius_norm().max(1.0);
        let res = eigen_residual_max(&m, &eig);
        ensure(
            res <= bound,
            format!("residual {res:e} exceeds {bound:e} for {name}"),
        )?;
    }
    Ok(())
}

fn check_fermion_closed_form_spectrum() -> Result<(), String> {
    for k in 0..50 {
        let a = 0.1 * (1000.0f64).powf(k as f64 / 49.0);
        let p = RindlerParams::new(a, 1.0).map_err(err_str)?;
        let dense = eigvals_sym(&fermion_state(&p), EIG_TOL).map_err(err_str)?;
        let closed = sorted_desc(fermion_spectrum(&p).to_vec());
        ensure(
            multiset_close(dense.values(), &closed, 1e-10),
            format!("fermion spectrum mismatch at a = {a}"),
        )?;
    }
    Ok(())
}

fn check_boson_rank1_blocks_and_unit_trace() -> Result<(), String> {
    for u in [0.2, 0.5, 0.9] {
        let p = params_u(u);
        let mut total = 0.0;
        for n in 0..=choose_truncation(&p, 1e-12).map_err(err_str)? {
            let (_, bspec) = boson_block(n, &p, SQRT_N);
            ensure(
                bspec.eigenvalues[1].abs() <= 1e-14,
                format!("block {n} at u={u} is not rank-1"),
            )?;
            ensure(bspec.eigenvalues[0] >= -1e-14, "negative block eigenvalue")?;
            total += bspec.block_trace;
        }
        ensure(
            (1.0 - total).abs() <= 1e-11,
            format!("block traces sum to {total} at u={u}"),
        )?;
    }
    Ok(())
}

fn check_boson_linear_coupling_indefinite() -> Result<(), String> {
    for u in [0.1, 0.5, 0.9] {
        let p = params_u(u);
        for n in 1..5 {
            let (_, bspec) = boson_block(n, &p, CoeffConvention::LinearN);
            ensure(
                bspec.eigenvalues[1] < 0.0,
                format!("linear coupling block {n} at u={u} is not indefinite"),
            )?;
        }
    }
    Ok(())
}

fn check_inertial_bell_limits() -> Result<(), String> {
    let u = 1e-12;
    let p = params_u(u);
    ensure(
        (fermion_log_negativity(&p) - 1.0).abs() <= 1e-9,
        "fermion log-negativity misses 1 at the inertial limit",
    )?;
    let n_max = choose_truncation(&p, 1e-12).map_err(err_str)?;
    ensure(
        (boson_log_negativity(&p, n_max, SQRT_N) - 1.0).abs() <= 1e-6,
        "boson log-negativity misses 1 at the inertial limit",
    )?;
    let fs = fermion_spectrum(&p);
    let s_f = shannon_entropy_b2(
        &unruh_core::matrixcore::Spectrum::new(fs.to_vec(), 4).map_err(err_str)?,
        PSD_TOL,
    )
    .map_err(err_str)?;
    ensure(
        s_f.abs() <= 1e-9,
        "fermion entropy nonzero at the inertial limit",
    )?;
    let s_b = boson_entropy(&p, n_max, SQRT_N).map_err(err_str)?;
    ensure(
        s_b.abs() <= 1e-9,
        "boson entropy nonzero at the inertial limit",
    )?;
    Ok(())
}

fn check_anyon_kronecker_sum_pairing() -> Result<(), String> {
    let mut rng = XorShift(0x5151_5151_aaaa_bbbb);
    for _ in 0..6 {
        let u_f = 0.9 * rng.next_unit();
        let u_b = 0.9 * rng.next_unit();
        let alpha = rng.next_unit();
        let n = (rng.next_unit() * 4.0) as usize;
        let comb = AnyonCombination::new(alpha, TW, 5, SQRT_N).map_err(err_str)?;
        let (m, paired) = anyon_block(n, &comb, &params_u(u_f), &params_u(u_b)).map_err(err_str)?;
        let dense = eigvals_sym(&m, EIG_TOL).map_err(err_str)?;
        ensure(
            multiset_close(dense.values(), paired.values(), 1e-10),
            format!("pairing mismatch at alpha={alpha} u_f={u_f} u_b={u_b} n={n}"),
        )?;
    }
    Ok(())
}

fn check_anyon_reductions() -> Result<(), String> {
    let p = params_u(0.5);
    let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
    for mode in [CombinationMode::Uniform, TW] {
        let comb = AnyonCombination::new(0.0, mode, n_max, SQRT_N).map_err(err_str)?;
        let ds = [
            (entropy_anyon(&comb, &p, &p).map_err(err_str)?
                - boson_entropy(&p, n_max, SQRT_N).map_err(err_str)?)
            .abs(),
            (negativity_anyon(&comb, &p, &p).map_err(err_str)?
                - boson_negativity(&p, n_max, SQRT_N))
            .abs(),
            (coherence_anyon(&comb, &p, &p).map_err(err_str)?
                - boson_coherence(&p, n_max, SQRT_N).map_err(err_str)?)
            .abs(),
        ];
        for d in ds {
            ensure(d <= 1e-12, format!("bosonic reduction off by {d:e}"))?;
        }
    }
    let comb = AnyonCombination::new(1.0, TW, n_max, SQRT_N).map_err(err_str)?;
    let dn = (negativity_anyon(&comb, &p, &p).map_err(err_str)? - fermion_negativity(&p)).abs();
    let dc = (coherence_anyon(&comb, &p, &p).map_err(err_str)? - fermion_coherence(&p)).abs();
    ensure(
        dn <= 1e-12,
        format!("fermionic negativity reduction off by {dn:e}"),
    )?;
    ensure(
        dc <= 1e-12,
        format!("fermionic coherence reduction off by {dc:e}"),
    )?;
    Ok(())
}

fn check_boson_lognegativity_decay() -> Result<(), String> {
    let mut prev = f64::INFINITY;
    for k in 0..20 {
        let u = 0.05 * k as f64;
        let p = params_u(u);
        let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
        let en = boson_log_negativity(&p, n_max, SQRT_N);
        ensure(en <= prev + 1e-12, format!("not monotone at u = {u}"))?;
        prev = en;
    }
    let p = params_u(0.999);
    let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
    let en = boson_log_negativity(&p, n_max, SQRT_N);
    ensure(
        en <= 0.05,
        format!("log-negativity {en} too large at u = 0.999"),
    )?;
    Ok(())
}

fn check_fermion_lognegativity_limits() -> Result<(), String> {
    ensure(
        (fermion_log_negativity(&params_u(0.0)) - 1.0).abs() <= 1e-9,
        "inertial fermion log-negativity is not 1",
    )?;
    ensure(
        (fermion_log_negativity(&params_u(1.0)) - 1.5f64.log2()).abs() <= 1e-9,
        "infinite-acceleration fermion log-negativity is not log2(3/2)",
    )?;
    Ok(())
}

fn check_acceleration_orderings() -> Result<(), String> {
    let grid = [0.0, 0.2, 0.4, 0.5, 0.8, 0.9, 1.0];
    let eval = |alpha: f64, a: f64| -> Result<f64, String> {
        let p = RindlerParams::new(a, 1.0).map_err(err_str)?;
        let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
        let comb = AnyonCombination::new(alpha, TW, n_max, SQRT_N).map_err(err_str)?;
        log_negativity_anyon(&comb, &p, &p).map_err(err_str)
    };
    let low: Vec<f64> = grid
        .iter()
        .map(|&al| eval(al, 2.0))
        .collect::<Result<_, _>>()?;
    let min_idx = (0..grid.len())
        .min_by(|&i, &j| low[i].total_cmp(&low[j]))
        .unwrap();
    ensure(
        grid[min_idx] == 0.5,
        format!("low-acceleration minimum sits at alpha = {}", grid[min_idx]),
    )?;
    ensure(
        eval(0.2, 50.0)? < eval(0.8, 50.0)?,
        "high-acceleration ordering alpha=0.2 < alpha=0.8 violated",
    )?;
    Ok(())
}

fn check_coherence_orderings() -> Result<(), String> {
    let grid = [0.0, 0.2, 0.4, 0.5, 0.8, 0.9, 1.0];
    for a in [2.0, 10.0, 50.0] {
        let p = RindlerParams::new(a, 1.0).map_err(err_str)?;
        let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
        let cr: Vec<f64> = grid
            .iter()
            .map(|&al| {
                let comb = AnyonCombination::new(al, TW, n_max, SQRT_N).map_err(err_str)?;
                coherence_anyon(&comb, &p, &p).map_err(err_str)
            })
            .collect::<Result<_, _>>()?;
        let min_idx = (0..grid.len())
            .min_by(|&i, &j| cr[i].total_cmp(&cr[j]))
            .unwrap();
        let max_idx = (0..grid.len())
            .max_by(|&i, &j| cr[i].total_cmp(&cr[j]))
            .unwrap();
        ensure(
            grid[min_idx] == 0.5,
            format!("coherence minimum at a={a} not at 0.5"),
        )?;
        ensure(
            grid[max_idx] == 0.0,
            format!("coherence maximum at a={a} not at 0"),
        )?;
        ensure(
            cr.iter().all(|&v| v > 0.0),
            format!("coherence not positive at a={a}"),
        )?;
    }
    Ok(())
}

fn check_wu_solver() -> Result<(), String> {
    let tol = 1e-12;
    ensure(
        (wu_omega(2.0, 0.0, tol).map_err(err_str)? - 1.0).abs() <= 1e-12,
        "bosonic endpoint broken",
    )?;
    ensure(
        (wu_omega(2.0, 1.0, tol).map_err(err_str)? - 2.0).abs() <= 1e-12,
        "fermionic endpoint broken",
    )?;
    let closed = 0.5 * (-1.0 + 17.0f64.sqrt());
    ensure(
        (wu_omega(2.0, 0.5, tol).map_err(err_str)? - closed).abs() <= 1e-12,
        "semion closed form broken",
    )?;
    let mut rng = XorShift(0x0123_4567_89ab_cdef);
    for _ in 0..1000 {
        let x = 0.2 + rng.next_unit() * 19.8;
        let alpha = 0.05 + rng.next_unit() * 0.95;
        let omega = wu_omega(x, alpha, tol).map_err(err_str)?;
        let residual = (omega.powf(alpha) * (1.0 + omega).powf(1.0 - alpha) - x).abs();
        ensure(
            residual <= tol * x,
            format!("residual {residual:e} at x={x} alpha={alpha}"),
        )?;
    }
    Ok(())
}

fn check_truncation_stability() -> Result<(), String> {
    let p = params_u(0.9);
    let n_max = choose_truncation(&p, 1e-10).map_err(err_str)?;
    ensure(
        truncation_tail(&p, n_max) <= 1e-10,
        "chosen truncation misses its tail bound",
    )?;
    let retained: f64 = (0..=n_max).map(|n| block_trace(n, &p)).sum();
    let doubled: f64 = (0..=2 * n_max).map(|n| block_trace(n, &p)).sum();
    ensure(
        (doubled - retained).abs() <= 1e-10,
        "trace moved past the tail bound",
    )?;
    let comb = AnyonCombination::new(0.5, TW, n_max, SQRT_N).map_err(err_str)?;
    let comb2 = AnyonCombination::new(0.5, TW, 2 * n_max, SQRT_N).map_err(err_str)?;
    let pairs = [
        (
            entropy_anyon(&comb, &p, &p).map_err(err_str)?,
            entropy_anyon(&comb2, &p, &p).map_err(err_str)?,
        ),
        (
            negativity_anyon(&comb, &p, &p).map_err(err_str)?,
            negativity_anyon(&comb2, &p, &p).map_err(err_str)?,
        ),
        (
            coherence_anyon(&comb, &p, &p).map_err(err_str)?,
            coherence_anyon(&comb2, &p, &p).map_err(err_str)?,
        ),
    ];
    for (base, double) in pairs {
        ensure(
            (base - double).abs() <= 1e-8,
            format!("measure moved by {:e} on doubling", base - double),
        )?;
    }
    // blockwise closed form against the dense route at an accessible size
    let small = params_u(0.5);
    let nm = choose_truncation(&small, 1e-10).map_err(err_str)?;
    let dense = eigvals_sym(
        &boson_state_truncated(&small, nm, SQRT_N).map_err(err_str)?,
        EIG_TOL,
    )
    .map_err(err_str)?;
    let blockwise = boson_spectrum_truncated(&small, nm, SQRT_N);
    ensure(
        multiset_close(dense.values(), blockwise.values(), 1e-12),
        "dense and blockwise spectra diverge",
    )?;
    let pt_blocks: Vec<f64> = boson_pt_spectrum_blocks(&small, nm, SQRT_N)
        .iter()
        .map(|e| e.value)
        .collect();
    let dims = BipartiteDims::new(2, nm + 2).map_err(err_str)?;
    let pt_dense = eigvals_sym(
        &partial_transpose_alice(
            &boson_state_truncated(&small, nm, SQRT_N).map_err(err_str)?,
            &dims,
        )
        .map_err(err_str)?,
        EIG_TOL,
    )
    .map_err(err_str)?;
    ensure(
        multiset_close(pt_dense.values(), &pt_blocks, 1e-12),
        "dense and blockwise transposed spectra diverge",
    )?;
    Ok(())
}

const CHECKS: &[(&str, Check)] = &[
    ("kron-mixed-product-spot-check", check_kron_mixed_product),
    (
        "partial-transpose-involution",
        check_partial_transpose_involution,
    ),
    ("entropy-tensor-identity", check_entropy_tensor_identity),
    (
        "eigensolver-residual-contract",
        check_eigensolver_residual_contract,
    ),
    (
        "fermion-closed-form-spectrum",
        check_fermion_closed_form_spectrum,
    ),
    (
        "boson-rank1-blocks-and-unit-trace",
        check_boson_rank1_blocks_and_unit_trace,
    ),
    (
        "boson-linear-coupling-indefinite",
        check_boson_linear_coupling_indefinite,
    ),
    ("inertial-bell-limits", check_inertial_bell_limits),
    (
        "anyon-kronecker-sum-pairing",
        check_anyon_kronecker_sum_pairing,
    ),
    ("anyon-boson-fermion-reductions", check_anyon_reductions),
    ("boson-lognegativity-decay", check_boson_lognegativity_decay),
    (
        "fermion-lognegativity-limits",
        check_fermion_lognegativity_limits,
    ),
    ("anyon-acceleration-orderings", check_acceleration_orderings),
    ("coherence-semion-minimum", check_coherence_orderings),
    ("wu-solver-residuals", check_wu_solver),
    ("truncation-stability", check_truncation_stability),
];

pub fn run_all() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| CheckResult {
            name,
            outcome: check(),
        })
        .collect()
}
