//! Finite-difference oracle for the original equation
//! `−½ d/dt[(1 + λt²) dφ/dt] + V(t) φ = E φ` on `[−T, T]` with Dirichlet
//! ends.
//!
//! The flux form is discretized with `p = 1 + λt²` at half nodes, which
//! gives a symmetric tridiagonal matrix. Eigenvalues come from bisection on
//! LDLᵀ inertia counts.

use crate::exactalg::to_f64;
use crate::oscillator::ModelParams;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    /// Half-width `T` of the truncated domain.
    pub half_width: f64,
    /// Number of interior nodes `N`.
    pub interior: usize,
}

impl Grid {
    pub fn new(half_width: f64, interior: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "grid half-width must be positive, got {half_width}"
            )));
        }
        if interior < 3 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 3 interior nodes, got {interior}"
            )));
        }
        Ok(Self {
            half_width,
            interior,
        })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.interior + 1) as f64
    }

    /// `t_i = −T + i·h` for `i = 1..=N`.
    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    /// Same domain, half the spacing; the old nodes are a subset.
    pub fn refined(&self) -> Grid {
        Grid {
            half_width: self.half_width,
            interior: 2 * self.interior + 1,
        }
    }

    /// Same domain, roughly twice the spacing (nested when `N` is odd).
    pub fn coarsened(&self) -> Option<Grid> {
        let n = if self.interior % 2 == 1 {
            (self.interior - 1) / 2
        } else {
            self.interior / 2
        };
        (n >= 3).then_some(Grid {
            half_width: self.half_width,
            interior: n,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TridiagOp {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub grid: Grid,
    pub params: ModelParams,
}

/// `(Hφ)_i = [−p_{i+½}(φ_{i+1} − φ_i) + p_{i−½}(φ_i − φ_{i−1})]/(2h²) + V_i φ_i`
pub fn discretize(params: &ModelParams, grid: Grid) -> TridiagOp {
    let h = grid.spacing();
    let lambda = to_f64(params.lambda());
    let scale = 0.5 / (h * h);
    let p = |t: f64| 1.0 + lambda * t * t;
    let n = grid.interior;
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..=n {
        let t = grid.node(i);
        diag.push((p(t - 0.5 * h) + p(t + 0.5 * h)) * scale + params.potential(t));
        if i < n {
            offdiag.push(-p(t + 0.5 * h) * scale);
        }
    }
    TridiagOp {
        diag,
        offdiag,
        grid,
        params: params.clone(),
    }
}

impl TridiagOp {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// Number of eigenvalues strictly below `x`: the count of negative pivots
/// in the LDLᵀ factorization of `H − xI`.
pub fn eigen_count_below(op: &TridiagOp, x: f64) -> usize {
    let n = op.dim();
    if n == 0 {
        return 0;
    }
    let (glo, ghi) = op.gershgorin();
    let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * glo.abs().max(ghi.abs()));
    let mut count = 0;
    let mut q = op.diag[0] - x;
    for i in 0..n {
        if i > 0 {
            let e = op.offdiag[i - 1];
            q = op.diag[i] - x - e * e / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub eigenvalues: Vec<f64>,
    pub grid: Grid,
    /// Richardson error estimate `(E_h − E_2h)/3` when a coarse companion
    /// grid was solved, otherwise the bisection half-width.
    pub est_error: Vec<f64>,
}

/// The `m` smallest eigenvalues, each bracketed to width `≤ tol`.
pub fn lowest_eigenvalues(op: &TridiagOp, m: usize, tol: f64) -> Result<OracleResult> {
    if m > op.dim() {
        return Err(Error::InvalidArgument(format!(
            "requested {m} eigenvalues of a {}-dimensional operator",
            op.dim()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("bisection tolerance must be positive".into()));
    }
    let (glo, ghi) = op.gershgorin();
    let mut eigenvalues = Vec::with_capacity(m);
    let mut lo = glo;
    for k in 0..m {
        let mut a = lo;
        let mut b = ghi;
        while b - a > tol {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if eigen_count_below(op, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        let e = 0.5 * (a + b);
        eigenvalues.push(e);
        lo = a;
    }
    Ok(OracleResult {
        est_error: vec![0.5 * tol; m],
        eigenvalues,
        grid: op.grid,
    })
}

/// Solve on `grid` and on its coarsened companion, attaching Richardson
/// error estimates.
pub fn oracle_spectrum(params: &ModelParams, grid: Grid, m: usize, tol: f64) -> Result<OracleResult> {
    let mut fine = lowest_eigenvalues(&discretize(params, grid), m, tol)?;
    if let Some(coarse_grid) = grid.coarsened() {
        if coarse_grid.interior >= m {
            let coarse = lowest_eigenvalues(&discretize(params, coarse_grid), m, tol)?;
            fine.est_error = fine
                .eigenvalues
                .iter()
                .zip(&coarse.eigenvalues)
                .map(|(f, c)| (f - c) / 3.0)
                .collect();
        }
    }
    Ok(fine)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStudy {
    /// `values[g][j]`: eigenvalue `j` on grid `g`.
    pub values: Vec<Vec<f64>>,
    /// Richardson-extrapolated eigenvalues.
    pub extrapolated: Vec<f64>,
    /// Observed order from the three finest grids.
    pub order: Vec<f64>,
}

/// Grid-refinement study over grids whose spacing halves each step.
pub fn converge_study(params: &ModelParams, m: usize, grids: &[Grid], tol: f64) -> Result<ConvergenceStudy> {
    if grids.len() < 3 {
        return Err(Error::InvalidArgument(
            "a convergence study needs at least three grids".into(),
        ));
    }
    for w in grids.windows(2) {
        let ratio = w[0].spacing() / w[1].spacing();
        if (ratio - 2.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "grid spacings must halve, got ratio {ratio}"
            )));
        }
    }
    let values = grids
        .iter()
        .map(|g| lowest_eigenvalues(&discretize(params, *g), m, tol).map(|r| r.eigenvalues))
        .collect::<Result<Vec<_>>>()?;

    let mut extrapolated = Vec::with_capacity(m);
    let mut order = Vec::with_capacity(m);
    for j in 0..m {
        let diffs: Vec<f64> = values.windows(2).map(|w| w[0][j] - w[1][j]).collect();
        let mut orders = Vec::new();
        for d in diffs.windows(2) {
            let r = d[0] / d[1];
            if !(r.is_finite() && r > 1.0) {
                return Err(Error::NonmonotoneConvergence(format!(
                    "eigenvalue {j}: successive differences {:.3e}, {:.3e}",
                    d[0], d[1]
                )));
            }
            orders.push(r.log2());
        }
        for o in orders.windows(2) {
            if (o[0] - o[1]).abs() > 0.5 {
                return Err(Error::NonmonotoneConvergence(format!(
                    "eigenvalue {j}: observed orders {:.3} and {:.3} disagree",
                    o[0], o[1]
                )));
            }
        }
        let p = *orders.last().unwrap();
        let last = values[values.len() - 1][j];
        let prev = values[values.len() - 2][j];
        extrapolated.push(last + (last - prev) / (2f64.powf(p) - 1.0));
        order.push(p);
    }
    Ok(ConvergenceStudy {
        values,
        extrapolated,
        order,
    })
}

/// Default truncation: the `n_max` envelope `(1+λ̃τ²)^(−1/(2λ̃))·τⁿ` drops
/// below `1e-8` of its peak at `τ_cut` (capped at 400), `T = τ_cut/√ω`, and
/// spacing `0.005` in `τ` units.
pub fn default_grid(params: &ModelParams, n_max: u32) -> Grid {
    const TAU_CAP: f64 = 400.0;
    const H_TAU: f64 = 0.005;
    let lt = to_f64(&params.lambda_tilde());
    let log_env = |tau: f64| -> f64 {
        let base = if lt > 0.0 {
            -(lt * tau * tau).ln_1p() / (2.0 * lt)
        } else {
            -0.5 * tau * tau
        };
        base + n_max as f64 * tau.ln()
    };
    let mut tau = 0.0;
    let mut peak = f64::NEG_INFINITY;
    while tau < TAU_CAP {
        tau += 0.25;
        let v = log_env(tau);
        peak = peak.max(v);
        if v < peak + (1e-8f64).ln() {
            break;
        }
    }
    let tau_cut = tau.clamp(6.0, TAU_CAP);
    let sqrt_omega = to_f64(params.omega()).sqrt();
    let interior = ((2.0 * tau_cut / H_TAU).ceil() as usize).min(400_000);
    Grid {
        half_width: tau_cut / sqrt_omega,
        interior,
    }
}
