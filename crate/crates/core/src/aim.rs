//! The asymptotic iteration method for `y'' = λ₀(τ) y' + s₀(τ) y`.
//!
//! Both coefficient functions are rational in `τ` with a common denominator
//! `u(τ)`. After `k` iterations `λ_k = L_k / u^(k+1)` and
//! `s_k = S_k / u^(k+1)`, so the whole recursion runs on the numerators:
//!
//! ```text
//! L_k = L'_{k-1}·u − k·L_{k-1}·u' + S_{k-1}·u + L_0·L_{k-1}
//! S_k = S'_{k-1}·u − k·S_{k-1}·u' + S_0·L_{k-1}
//! ```
//!
//! Eigenvalues are the roots of `δ_k = λ_k s_{k-1} − λ_{k-1} s_k` at an
//! anchor point `τ₀` that persist as `k` grows.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{isolate_real_roots, rat, refine_root, to_f64, BiPoly, BigRat, UPoly};
use crate::quadrature;
use crate::{Error, Result};

#[derive(Debug)]
struct Seed {
    l0: BiPoly,
    s0: BiPoly,
    u: BiPoly,
    du: BiPoly,
}

/// `(λ_k, s_k)` as numerators over the shared denominator `u^denom_exp`.
#[derive(Clone, Debug)]
pub struct AimState {
    k: usize,
    l: BiPoly,
    s: BiPoly,
    denom_exp: u32,
    seed: Arc<Seed>,
}

/// Build the `k = 0` state from `λ₀ = l0/u` and `s₀ = s0/u`.
pub fn aim_seed(l0_num: BiPoly, s0_num: BiPoly, u: BiPoly) -> Result<AimState> {
    if l0_num.is_zero() {
        return Err(Error::LambdaZero);
    }
    if u.is_zero() {
        return Err(Error::InvalidArgument("denominator base u is zero".into()));
    }
    let du = u.diff_tau();
    Ok(AimState {
        k: 0,
        l: l0_num.clone(),
        s: s0_num.clone(),
        denom_exp: 1,
        seed: Arc::new(Seed {
            l0: l0_num,
            s0: s0_num,
            u,
            du,
        }),
    })
}

pub fn aim_iterate(state: &AimState) -> AimState {
    state.iterate()
}

impl AimState {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda_numer(&self) -> &BiPoly {
        &self.l
    }

    pub fn s_numer(&self) -> &BiPoly {
        &self.s
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn u_poly(&self) -> &BiPoly {
        &self.seed.u
    }

    pub fn iterate(&self) -> AimState {
        let Seed { l0, s0, u, du } = &*self.seed;
        let k_next = BigRat::from_integer((self.k + 1).into());
        let du_k = du.scale(&k_next);
        let l = &(&(&self.l.diff_tau() * u) - &(&self.l * &du_k)) + &(&(&self.s * u) + &(l0 * &self.l));
        let s = &(&(&self.s.diff_tau() * u) - &(&self.s * &du_k)) + &(s0 * &self.l);
        AimState {
            k: self.k + 1,
            l,
            s,
            denom_exp: self.denom_exp + 1,
            seed: Arc::clone(&self.seed),
        }
    }

    /// States `0..=k_max`, starting from `self`.
    pub fn iterates(&self, k_max: usize) -> Vec<AimState> {
        let mut out = vec![self.clone()];
        while out.last().unwrap().k < k_max {
            let next = out.last().unwrap().iterate();
            out.push(next);
        }
        out
    }

    /// `α = s_k/λ_k = S/L` at a point; the denominators cancel.
    pub fn alpha_at(&self, energy: &BigRat, tau: &BigRat) -> Result<BigRat> {
        let l = self.l.eval(tau, energy);
        if l.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.s.eval(tau, energy) / l)
    }
}

/// `δ_k` restricted to `τ = τ₀`, stripped of its rational content and made
/// to have a positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPoly {
    pub k: usize,
    pub poly: UPoly,
}

pub fn quantization_delta(curr: &AimState, prev: &AimState, tau0: &BigRat) -> Result<DeltaPoly> {
    if curr.k != prev.k + 1 {
        return Err(Error::InvalidArgument(format!(
            "quantization_delta needs consecutive iterates, got k = {} and {}",
            prev.k, curr.k
        )));
    }
    let delta = &(&curr.l * &prev.s) - &(&prev.l * &curr.s);
    let poly = delta.subs_tau(tau0);
    if poly.is_zero() {
        return Err(Error::DegenerateDelta { k: curr.k });
    }
    Ok(DeltaPoly {
        k: curr.k,
        poly: poly.normalized(),
    })
}

/// Settings for [`aim_eigenvalues`].
#[derive(Clone, Debug)]
pub struct EigenSearch {
    pub k_max: usize,
    pub tau0: BigRat,
    /// Largest drift between consecutive iterations for irrational roots.
    pub stab_tol: BigRat,
    /// Number of consecutive quantization polynomials, ending at `k_max`, a
    /// root must appear in to be accepted.
    pub persistence: usize,
}

impl Default for EigenSearch {
    fn default() -> Self {
        Self {
            k_max: 12,
            tau0: BigRat::zero(),
            stab_tol: rat(1, 10_000_000_000),
            persistence: 4,
        }
    }
}

impl EigenSearch {
    pub fn with_k_max(k_max: usize) -> Self {
        Self {
            k_max,
            ..Self::default()
        }
    }
}

/// A root followed across consecutive `δ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedRoot {
    /// Exact value, or the latest refined approximation.
    pub value: BigRat,
    pub exact: bool,
    pub first_k: usize,
    pub last_k: usize,
    /// Largest change between consecutive appearances (zero for exact roots).
    pub drift: BigRat,
}

impl TrackedRoot {
    pub fn run_length(&self) -> usize {
        self.last_k + 1 - self.first_k
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.value)
    }
}

#[derive(Clone, Debug)]
pub struct AimSpectrumReport {
    pub k_max: usize,
    pub tau0: BigRat,
    /// Stable roots ordered by first appearance, then value. For the
    /// oscillator seeds `δ_1` introduces the two lowest levels and every
    /// later `δ_k` adds one, so this order is the quantum-number order.
    pub accepted: Vec<TrackedRoot>,
    pub rejected: Vec<TrackedRoot>,
    /// `deg_Ẽ δ_k` for `k = 1..=k_max`.
    pub delta_degrees: Vec<usize>,
}

impl AimSpectrumReport {
    pub fn accepted_values(&self) -> Vec<BigRat> {
        self.accepted.iter().map(|r| r.value.clone()).collect()
    }

    pub fn contains_exact(&self, e: &BigRat) -> bool {
        self.accepted.iter().any(|r| r.exact && &r.value == e)
    }
}

/// Roots of `δ_k` as `(value, exact)`; irrational roots refined well below
/// the stability tolerance.
pub fn delta_roots(delta: &DeltaPoly, stab_tol: &BigRat) -> Result<Vec<(BigRat, bool)>> {
    let refine_tol = stab_tol / BigRat::from_integer(1000.into());
    Ok(isolate_real_roots(&delta.poly)?
        .into_iter()
        .map(|iv| match &iv.exact {
            Some(r) => (r.clone(), true),
            None => (refine_root(&delta.poly, &iv, &refine_tol), false),
        })
        .collect())
}

pub fn aim_eigenvalues(seed: &AimState, search: &EigenSearch) -> Result<AimSpectrumReport> {
    if search.k_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "k_max must be at least 2, got {}",
            search.k_max
        )));
    }
    if !search.stab_tol.is_positive() {
        return Err(Error::InvalidArgument("stab_tol must be positive".into()));
    }
    let states = seed.iterates(seed.k + search.k_max);
    let mut tracks: Vec<TrackedRoot> = Vec::new();
    let mut degrees = Vec::with_capacity(search.k_max);
    for pair in states.windows(2) {
        let delta = quantization_delta(&pair[1], &pair[0], &search.tau0)?;
        let k = delta.k;
        degrees.push(delta.poly.degree().unwrap_or(0));
        for (value, exact) in delta_roots(&delta, &search.stab_tol)? {
            let best = tracks
                .iter_mut()
                .filter(|t| t.last_k + 1 == k)
                .map(|t| {
                    let diff = (&t.value - &value).abs();
                    (diff, t)
                })
                .filter(|(diff, t)| {
                    if exact && t.exact {
                        diff.is_zero()
                    } else {
                        diff <= &search.stab_tol
                    }
                })
                .min_by(|a, b| a.0.cmp(&b.0));
            match best {
                Some((diff, t)) => {
                    if diff > t.drift {
                        t.drift = diff;
                    }
                    t.value = value;
                    t.exact = exact;
                    t.last_k = k;
                }
                None => tracks.push(TrackedRoot {
                    value,
                    exact,
                    first_k: k,
                    last_k: k,
                    drift: BigRat::zero(),
                }),
            }
        }
    }
    let k_end = seed.k + search.k_max;
    let (mut accepted, mut rejected): (Vec<_>, Vec<_>) = tracks
        .into_iter()
        .partition(|t| t.last_k == k_end && t.run_length() >= search.persistence);
    if accepted.is_empty() {
        return Err(Error::NoStableRoots {
            k_max: search.k_max,
        });
    }
    accepted.sort_by(|a, b| (a.first_k, &a.value).cmp(&(b.first_k, &b.value)));
    rejected.sort_by(|a, b| (a.first_k, &a.value).cmp(&(b.first_k, &b.value)));
    Ok(AimSpectrumReport {
        k_max: search.k_max,
        tau0: search.tau0.clone(),
        accepted,
        rejected,
        delta_degrees: degrees,
    })
}

/// A real pole of `α` at a fixed energy.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPole {
    pub tau: f64,
    pub residue: f64,
    /// `m` when the residue is `−m` for a positive integer `m`: the pole is
    /// then a node of multiplicity `m` of `exp(−∫α)`.
    pub node_order: Option<u32>,
}

/// Reduced `α(τ) = S(τ)/L(τ)` at a fixed energy, with its real poles.
#[derive(Clone, Debug)]
pub struct AlphaFunction {
    numer: UPoly,
    denom: UPoly,
    numer_f: Vec<f64>,
    denom_f: Vec<f64>,
    /// `α + Σ m/(τ − p)` over nodal poles, with the poles divided out.
    reg_numer_f: Vec<f64>,
    reg_denom_f: Vec<f64>,
    pub poles: Vec<AlphaPole>,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

impl AlphaFunction {
    pub fn new(state: &AimState, energy: &BigRat) -> Result<Self> {
        let l = state.l.subs_energy(energy);
        if l.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s = state.s.subs_energy(energy);
        let g = l.gcd(&s);
        let denom = l.div_rem(&g).0;
        let numer = s.div_rem(&g).0;

        let mut poles = Vec::new();
        let mut reg_numer = numer.clone();
        let mut reg_denom = denom.clone();
        if denom.degree().unwrap_or(0) > 0 {
            let d_denom = denom.derivative();
            let tol = rat(1, 1 << 40) * rat(1, 1 << 30);
            for iv in isolate_real_roots(&denom)? {
                let p = refine_root(&denom, &iv, &tol);
                let residue = to_f64(&(numer.eval(&p) / d_denom.eval(&p)));
                let m = (-residue).round();
                let node_order = (m >= 1.0 && (residue + m).abs() < 1e-8).then_some(m as u32);
                if let Some(order) = node_order {
                    // D = (τ−p)D₁ and N + mD₁ vanishes at p, so
                    // N/D + m/(τ−p) = [(N + mD₁)/(τ−p)]/D₁
                    let lin = UPoly::new(vec![-p.clone(), BigRat::one()]);
                    let d1 = reg_denom.div_rem(&lin).0;
                    let top = &reg_numer + &d1.scale(&BigRat::from_integer(order.into()));
                    reg_numer = top.div_rem(&lin).0;
                    reg_denom = d1;
                }
                poles.push(AlphaPole {
                    tau: to_f64(&p),
                    residue,
                    node_order,
                });
            }
        }
        Ok(Self {
            reg_numer_f: reg_numer.to_f64_coeffs(),
            reg_denom_f: reg_denom.to_f64_coeffs(),
            numer_f: numer.to_f64_coeffs(),
            denom_f: denom.to_f64_coeffs(),
            numer,
            denom,
            poles,
        })
    }

    pub fn numerator(&self) -> &UPoly {
        &self.numer
    }

    pub fn denominator(&self) -> &UPoly {
        &self.denom
    }

    pub fn eval(&self, tau: f64) -> f64 {
        horner(&self.numer_f, tau) / horner(&self.denom_f, tau)
    }

    /// `α` with the nodal poles subtracted: `α + Σ m/(τ − p)`.
    fn regular_part(&self, tau: f64) -> f64 {
        horner(&self.reg_numer_f, tau) / horner(&self.reg_denom_f, tau)
    }

    /// `f(τ) = exp(−∫₀^τ α)`, written as `∏ (τ − p)^m · exp(−∫₀^τ α_reg)`
    /// so that nodes of `f` are handled in closed form. The global scale is
    /// arbitrary.
    pub fn integrate_eigenfunction(&self, tau: f64, abs_tol: f64) -> Result<f64> {
        let (lo, hi) = if tau < 0.0 { (tau, 0.0) } else { (0.0, tau) };
        let mut cuts = vec![lo, hi];
        for p in &self.poles {
            if p.tau >= lo && p.tau <= hi {
                if p.node_order.is_none() {
                    return Err(Error::PoleOnGrid { tau: p.tau });
                }
                cuts.push(p.tau);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let integral: f64 = cuts
            .windows(2)
            .map(|w| {
                quadrature::integrate(|x| self.regular_part(x), w[0], w[1], abs_tol, 1e-14).value
            })
            .sum();
        let signed = if tau < 0.0 { -integral } else { integral };
        let product: f64 = self
            .poles
            .iter()
            .filter_map(|p| p.node_order.map(|m| (tau - p.tau).powi(m as i32)))
            .product();
        Ok(product * (-signed).exp())
    }
}

/// Eigenfunction from the converged ratio `α`, taking the polynomial branch
/// of the general solution (`C₁ = 0`, `C₂ = 1`).
pub fn eigenfunction_via_alpha(state: &AimState, energy: &BigRat, grid: &[f64]) -> Result<Vec<f64>> {
    let alpha = AlphaFunction::new(state, energy)?;
    grid.iter()
        .map(|&t| alpha.integrate_eigenfunction(t, 1e-15))
        .collect()
}
