//! Dense real-symmetric linear algebra: construction, Kronecker products,
//! partial transposition over the Alice factor of a bipartite system, Jacobi
//! eigendecomposition, and spectral functionals.
//!
//! Every density matrix in this toolkit is real in its natural basis, so
//! complex support is deliberately omitted.

use crate::error::CoreError;

/// Hard cap on dense matrix dimension. Hitting it signals a runaway
/// truncation choice rather than a legitimate request.
pub const MAX_DIM: usize = 4096;

/// Default relative off-diagonal convergence threshold for the eigensolver.
pub const EIG_TOL: f64 = 1e-12;

/// Dense real symmetric matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
    sym_tol: f64,
}

impl SymMatrix {
    /// Validates shape and symmetry: requires `|M[i][j] - M[j][i]| <= sym_tol`
    /// for all pairs.
    pub fn new(dim: usize, entries: Vec<f64>, sym_tol: f64) -> Result<Self, CoreError> {
        if dim == 0 {
            return Err(CoreError::InvalidParam(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if dim > MAX_DIM {
            return Err(CoreError::DimensionOverflow { dim, max: MAX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(CoreError::DimensionMismatch {
                context: format!(
                    "a {dim}x{dim} matrix needs {} entries, got {}",
                    dim * dim,
                    entries.len()
                ),
            });
        }
        if sym_tol < 0.0 || sym_tol.is_nan() {
            return Err(CoreError::InvalidParam(
                "symmetry tolerance must be nonnegative".into(),
            ));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let delta = (entries[i * dim + j] - entries[j * dim + i]).abs();
                if delta > sym_tol || delta.is_nan() {
                    return Err(CoreError::NotSymmetric {
                        i,
                        j,
                        delta,
                        tol: sym_tol,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            entries,
            sym_tol,
        })
    }

    fn from_parts(dim: usize, entries: Vec<f64>, sym_tol: f64) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            entries,
            sym_tol,
        }
    }

    /// Zero matrix. Panics on a dimension outside `1..=MAX_DIM`; the dense
    /// carriers built internally are always within the cap.
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Self::from_parts(dim, vec![0.0; dim * dim], 0.0)
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = v;
        }
        m
    }

    /// Builds an exactly symmetric matrix by evaluating `f(i, j)` on the
    /// upper triangle and mirroring.
    pub fn from_fn_sym(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.entries[i * dim + j] = v;
                m.entries[j * dim + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sym_tol(&self) -> f64 {
        self.sym_tol
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`, keeping the matrix exactly symmetric.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.dim + j] = v;
        self.entries[j * self.dim + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Copy with every off-diagonal entry zeroed. Preserves the trace.
    pub fn diagonal_part(&self) -> SymMatrix {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            m.entries[i * self.dim + i] = self.get(i, i);
        }
        m
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Alice/region-I factor dimensions of a bipartite matrix. Alice is the
/// first (slow) index: entry `((i,k),(j,l))` sits at row `i*dim_b + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self, CoreError> {
        if dim_a == 0 || dim_b == 0 {
            return Err(CoreError::InvalidParam(
                "bipartite dimensions must be at least 1".into(),
            ));
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }
}

/// Eigenvalue list sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    source_dim: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, source_dim: usize) -> Result<Self, CoreError> {
        if values.len() != source_dim {
            return Err(CoreError::DimensionMismatch {
                context: format!(
                    "spectrum of {} values does not match source dimension {source_dim}",
                    values.len()
                ),
            });
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values, source_dim })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Smallest eigenvalue. The list is sorted descending, so this is the tail.
    pub fn min(&self) -> f64 {
        *self.values.last().expect("spectrum is never empty")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }
}

/// Kronecker product: `result[(i*Bdim+k)][(j*Bdim+l)] = A[i][j] * B[k][l]`.
pub fn kron(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix, CoreError> {
    let dim = a.dim.saturating_mul(b.dim);
    if dim > MAX_DIM {
        return Err(CoreError::DimensionOverflow { dim, max: MAX_DIM });
    }
    let mut e = vec![0.0; dim * dim];
    for i in 0..a.dim {
        for j in 0..a.dim {
            let aij = a.entries[i * a.dim + j];
            if aij == 0.0 {
                continue;
            }
            for k in 0..b.dim {
                for l in 0..b.dim {
                    e[(i * b.dim + k) * dim + (j * b.dim + l)] = aij * b.entries[k * b.dim + l];
                }
            }
        }
    }
    // |K[ij]-K[ji]| <= max|A| * tol_B + max|B| * tol_A
    let sym_tol = (a.max_abs() * b.sym_tol + b.max_abs() * a.sym_tol)
        .max(a.sym_tol)
        .max(b.sym_tol);
    Ok(SymMatrix::from_parts(dim, e, sym_tol))
}

/// Partial transpose over the Alice factor:
/// `result[(i,k)][(j,l)] = M[(j,k)][(i,l)]`. Involutive and trace-preserving.
pub fn partial_transpose_alice(
    m: &SymMatrix,
    dims: &BipartiteDims,
) -> Result<SymMatrix, CoreError> {
    if dims.total() != m.dim {
        return Err(CoreError::DimensionMismatch {
            context: format!(
                "bipartite dims {}x{} do not factor matrix dimension {}",
                dims.dim_a, dims.dim_b, m.dim
            ),
        });
    }
    let (da, db) = (dims.dim_a, dims.dim_b);
    let mut e = vec![0.0; m.dim * m.dim];
    for i in 0..da {
        for k in 0..db {
            for j in 0..da {
                for l in 0..db {
                    e[(i * db + k) * m.dim + (j * db + l)] =
                        m.entries[(j * db + k) * m.dim + (i * db + l)];
                }
            }
        }
    }
    Ok(SymMatrix::from_parts(m.dim, e, m.sym_tol))
}

/// Eigendecomposition result: `spectrum.values()[k]` belongs to the k-th
/// column of `vectors` (row-major, `vectors[r*dim + k]` is component r).
#[derive(Debug, Clone)]
pub struct EigenSym {
    pub spectrum: Spectrum,
    pub vectors: Vec<f64>,
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below `tol` relative
/// to the matrix norm; the rotation budget is `100 * dim^2`, after which a
/// `NoConvergence` error is returned rather than a silent partial result.
pub fn eigvals_sym(m: &SymMatrix, tol: f64) -> Result<Spectrum, CoreError> {
    jacobi(m, tol, false).map(|(s, _)| s)
}

/// Like [`eigvals_sym`] but also accumulates the orthogonal eigenvectors,
/// so the residual contract `||Mv - lambda v|| <= tol * max(1, ||M||)` can be
/// verified per eigenpair.
pub fn eigen_sym(m: &SymMatrix, tol: f64) -> Result<EigenSym, CoreError> {
    jacobi(m, tol, true).map(|(spectrum, v)| EigenSym {
        spectrum,
        vectors: v.expect("vectors requested"),
    })
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = a[i * n + j];
            s += 2.0 * v * v;
        }
    }
    s.sqrt()
}

fn jacobi(
    m: &SymMatrix,
    tol: f64,
    want_vectors: bool,
) -> Result<(Spectrum, Option<Vec<f64>>), CoreError> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(CoreError::InvalidParam(
            "eigensolver tolerance must be positive".into(),
        ));
    }
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut v = if want_vectors {
        SymMatrix::identity(n).entries
    } else {
        Vec::new()
    };

    // Converge a notch below the requested threshold so the per-eigenpair
    // residual stays within tol * max(1, ||M||) after vector round-off.
    let target = 0.25 * tol * m.frobenius_norm();
    let max_rotations = 100usize.saturating_mul(n).saturating_mul(n);
    let mut rotations = 0usize;

    loop {
        let off = off_norm(&a, n);
        if off <= target {
            break;
        }
        if rotations >= max_rotations {
            return Err(CoreError::NoConvergence { rotations, off });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                rotations += 1;
                let theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                a[p * n + p] -= h;
                a[q * n + q] += h;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let hh = a[r * n + q];
                    let np = g - s * (hh + g * tau);
                    let nq = hh + s * (g - hh * tau);
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
                if want_vectors {
                    for r in 0..n {
                        let g = v[r * n + p];
                        let hh = v[r * n + q];
                        v[r * n + p] = g - s * (hh + g * tau);
                        v[r * n + q] = hh + s * (g - hh * tau);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        let mut sorted = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[r * n + col] = v[r * n + src];
            }
        }
        Some(sorted)
    } else {
        None
    };
    Ok((Spectrum::new(values, n)?, vectors))
}

/// Largest eigenpair residual `max_k ||M v_k - lambda_k v_k||_2`.
pub fn eigen_residual_max(m: &SymMatrix, eig: &EigenSym) -> f64 {
    let n = m.dim;
    let mut worst = 0.0f64;
    for (k, &lambda) in eig.spectrum.values().iter().enumerate() {
        let mut norm2 = 0.0;
        for r in 0..n {
            let mut mv = 0.0;
            for c in 0..n {
                mv += m.entries[r * n + c] * eig.vectors[c * n + k];
            }
            let res = mv - lambda * eig.vectors[r * n + k];
            norm2 += res * res;
        }
        worst = worst.max(norm2.sqrt());
    }
    worst
}

/// Base-2 Shannon entropy `-sum(lambda * log2(lambda))` with `0 log 0 = 0`.
///
/// Round-off negatives in `[-tol, 0)` are treated as zero; anything below
/// `-tol` is rejected as a non-positive-semidefinite input.
pub fn shannon_entropy_b2(s: &Spectrum, tol: f64) -> Result<f64, CoreError> {
    entropy_of_values(s.values(), tol)
}

pub(crate) fn entropy_of_values(values: &[f64], tol: f64) -> Result<f64, CoreError> {
    let mut acc = 0.0;
    for &v in values {
        if v < -tol {
            return Err(CoreError::NotPsd { value: v, tol });
        }
        if v > 0.0 {
            acc -= v * v.log2();
        }
    }
    Ok(acc)
}

/// Whether the smallest eigenvalue is at least `-tol`.
pub fn is_psd(m: &SymMatrix, tol: f64) -> Result<bool, CoreError> {
    Ok(eigvals_sym(m, EIG_TOL)?.min() >= -tol)
}
