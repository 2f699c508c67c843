//! Occupation statistics for fractional exclusion: a solver for the monotone
//! functional equation `omega(x)^alpha * (1 + omega(x))^(1-alpha) = x` and the
//! occupation number `n = 1 / (omega + alpha)`.
//!
//! `alpha = 0` recovers Bose-Einstein occupation `1/(x-1)` and `alpha = 1`
//! Fermi-Dirac `1/(x+1)`. This module is standalone statistics; it shares the
//! parameter symbol with the density-matrix combination but carries no
//! contract linking the two.

use crate::error::CoreError;

/// Fugacity-like argument `x = exp((epsilon - mu) / kT)` plus the statistics
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WuQuery {
    pub x: f64,
    pub alpha: f64,
}

impl WuQuery {
    pub fn from_x(x: f64, alpha: f64) -> Result<Self, CoreError> {
        validate(x, alpha)?;
        Ok(Self { x, alpha })
    }

    pub fn from_physical(alpha: f64, epsilon: f64, mu: f64, k_t: f64) -> Result<Self, CoreError> {
        if k_t <= 0.0 || !k_t.is_finite() {
            return Err(CoreError::InvalidParam(format!(
                "temperature must be positive and finite, got {k_t}"
            )));
        }
        let x = ((epsilon - mu) / k_t).exp();
        validate(x, alpha)?;
        Ok(Self { x, alpha })
    }
}

fn validate(x: f64, alpha: f64) -> Result<(), CoreError> {
    if x <= 0.0 || !x.is_finite() {
        return Err(CoreError::InvalidParam(format!(
            "argument must be positive and finite, got {x}"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CoreError::InvalidParam(format!(
            "statistics parameter must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

const MAX_ITER: usize = 100;

/// Solves `omega^alpha (1+omega)^(1-alpha) = x` for the unique positive root.
///
/// The left side is strictly increasing in omega, so a bracket is cheap:
/// Newton steps on `t = ln(omega)` (keeping iterates positive) fall back to
/// bisection whenever they leave the bracket. The result satisfies
/// `|omega^alpha (1+omega)^(1-alpha) - x| <= tol * x`.
pub fn wu_omega(x: f64, alpha: f64, tol: f64) -> Result<f64, CoreError> {
    validate(x, alpha)?;
    if tol <= 0.0 || tol >= 0.1 || tol.is_nan() {
        return Err(CoreError::InvalidParam(format!(
            "residual tolerance must lie in (0, 0.1), got {tol}"
        )));
    }
    if alpha == 0.0 {
        // (1 + omega) = x has a positive root only past x = 1
        if x <= 1.0 {
            return Err(CoreError::Domain(format!(
                "at alpha = 0 the equation 1 + omega = x needs x > 1, got {x}"
            )));
        }
        return Ok(x - 1.0);
    }
    if alpha == 1.0 {
        return Ok(x);
    }

    let ln_x = x.ln();
    // g(t) = alpha t + (1-alpha) ln(1 + e^t) - ln x, monotone in t
    let g = |t: f64| {
        let w = t.exp();
        let dg = alpha + (1.0 - alpha) * w / (1.0 + w);
        (alpha * t + (1.0 - alpha) * w.ln_1p() - ln_x, dg)
    };

    // bracket: g(ln hi) >= 0 at hi = x since the left side dominates omega;
    // below, g(ln lo) <= 0 by construction
    let hi = x;
    let lo = if x > 1.0 {
        x - 1.0
    } else {
        (0.5 * x).powf(1.0 / alpha).max(1e-300)
    };
    let mut t_lo = lo.ln();
    let mut t_hi = hi.ln();
    let mut t = 0.5 * (t_lo + t_hi);

    for _ in 0..MAX_ITER {
        let (gv, dg) = g(t);
        // |LHS/x - 1| = |e^g - 1| ~ |g| near the root
        if gv.abs() <= 0.5 * tol {
            return Ok(t.exp());
        }
        if gv > 0.0 {
            t_hi = t;
        } else {
            t_lo = t;
        }
        let newton = t - gv / dg;
        t = if newton > t_lo && newton < t_hi {
            newton
        } else {
            0.5 * (t_lo + t_hi)
        };
    }
    Err(CoreError::RootNoConvergence(MAX_ITER))
}

/// Occupation number `n = 1 / (omega + alpha)`.
pub fn wu_occupation(q: &WuQuery, tol: f64) -> Result<f64, CoreError> {
    Ok(1.0 / (wu_omega(q.x, q.alpha, tol)? + q.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
    }

    #[test]
    fn bose_and_fermi_endpoints() {
        assert_close(wu_omega(2.0, 0.0, TOL).unwrap(), 1.0, 0.0);
        assert_close(wu_omega(2.0, 1.0, TOL).unwrap(), 2.0, 0.0);
        // Bose occupation 1/(x-1) and Fermi level occupation 1/2
        let q = WuQuery::from_x(2.0, 0.0).unwrap();
        assert_close(wu_occupation(&q, TOL).unwrap(), 1.0, 0.0);
        let q = WuQuery::from_physical(1.0, 3.0, 3.0, 1.0).unwrap();
        assert_close(wu_occupation(&q, TOL).unwrap(), 0.5, 1e-15);
    }

    #[test]
    fn semion_quadratic_closed_form() {
        // squaring the functional equation at alpha = 1/2 gives
        // omega^2 + omega - x^2 = 0
        let omega = wu_omega(2.0, 0.5, TOL).unwrap();
        let closed = 0.5 * (-1.0 + 17.0f64.sqrt());
        assert_close(omega, closed, 1e-12);
        let q = WuQuery::from_x(2.0, 0.5).unwrap();
        assert_close(wu_occupation(&q, TOL).unwrap(), 1.0 / (closed + 0.5), 1e-12);
    }

    #[test]
    fn bose_domain_error() {
        assert!(matches!(wu_omega(0.9, 0.0, TOL), Err(CoreError::Domain(_))));
        assert!(matches!(wu_omega(1.0, 0.0, TOL), Err(CoreError::Domain(_))));
    }

    #[test]
    fn continuity_at_the_bose_end() {
        let omega = wu_omega(2.0, 1e-9, TOL).unwrap();
        assert!((omega - 1.0).abs() < 1e-6);
    }

    #[test]
    fn residual_contract_holds() {
        let mut seed = 0x6a09e667f3bcc908u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let x = 0.2 + next() * 19.8;
            let alpha = 0.05 + next() * 0.95;
            let omega = wu_omega(x, alpha, TOL).unwrap();
            assert!(omega > 0.0);
            let residual = (omega.powf(alpha) * (1.0 + omega).powf(1.0 - alpha) - x).abs();
            assert!(
                residual <= TOL * x,
                "residual {residual:e} at x={x} alpha={alpha}"
            );
        }
    }

    #[test]
    fn occupation_is_monotone() {
        // decreasing in x at fixed alpha
        let mut prev = f64::INFINITY;
        for k in 1..20 {
            let x = 1.1 + 0.5 * k as f64;
            let n = wu_occupation(&WuQuery::from_x(x, 0.3).unwrap(), TOL).unwrap();
            assert!(n < prev);
            prev = n;
        }
        // decreasing in alpha at fixed x > 1: bosons crowd, fermions exclude
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let alpha = k as f64 / 10.0;
            let n = wu_occupation(&WuQuery::from_x(1.5, alpha).unwrap(), TOL).unwrap();
            assert!(n < prev, "occupation not decreasing at alpha={alpha}");
            prev = n;
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(wu_omega(-1.0, 0.5, TOL).is_err());
        assert!(wu_omega(2.0, 1.5, TOL).is_err());
        assert!(wu_omega(2.0, 0.5, 0.0).is_err());
        assert!(WuQuery::from_physical(0.5, 1.0, 0.0, -2.0).is_err());
    }
}
