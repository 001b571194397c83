//! The time-dependent-mass oscillator `m(t) = m0/(1 + λt²)`,
//! `V(t) = ½ m(t) ω² t²`, in units `ħ = c = m0 = 1`.
//!
//! After `τ = √ω t`, `λ̃ = λ/ω`, `Ẽ = 2E/ω` and the substitution
//! `φ = (1 + λ̃τ²)^(−1/(2λ̃)) f`, the reduced equation for `f` is
//!
//! ```text
//! (1 + λ̃τ²) f'' − 2(1 − λ̃) τ f' + (Ẽ − 1) f = 0
//! ```
//!
//! whose polynomial solutions give `Ẽ_n = 2n + 1 − n(n+1) λ̃`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::aim::{aim_seed, AimState};
use crate::exactalg::{int, to_f64, BiPoly, BigRat, UPoly};
use crate::quadrature;
use crate::{Error, Result};

/// Physical inputs. Units are fixed to `ħ = c = m0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    m0: BigRat,
    omega: BigRat,
    lambda: BigRat,
}

impl ModelParams {
    pub const UNITS: &'static str = "hbar = c = m0 = 1";

    pub fn new(omega: BigRat, lambda: BigRat) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::NonpositiveFrequency);
        }
        if lambda.is_negative() {
            return Err(Error::NegativeLambda);
        }
        Ok(Self {
            m0: BigRat::one(),
            omega,
            lambda,
        })
    }

    /// `ω = 1`, `λ = λ̃`.
    pub fn from_lambda_tilde(lambda_tilde: BigRat) -> Result<Self> {
        Self::new(BigRat::one(), lambda_tilde)
    }

    pub fn m0(&self) -> &BigRat {
        &self.m0
    }

    pub fn omega(&self) -> &BigRat {
        &self.omega
    }

    pub fn lambda(&self) -> &BigRat {
        &self.lambda
    }

    pub fn lambda_tilde(&self) -> BigRat {
        &self.lambda / &self.omega
    }

    pub fn mass(&self, t: f64) -> f64 {
        to_f64(&self.m0) / (1.0 + to_f64(&self.lambda) * t * t)
    }

    pub fn potential(&self, t: f64) -> f64 {
        let w = to_f64(&self.omega);
        0.5 * self.mass(t) * w * w * t * t
    }
}

/// Scaling maps between physical `(t, E)` and dimensionless `(τ, Ẽ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub lambda_tilde: BigRat,
    omega: BigRat,
    sqrt_omega: f64,
}

pub fn reduce_dimensionless(p: &ModelParams) -> Result<Reduction> {
    if !p.omega.is_positive() {
        return Err(Error::NonpositiveFrequency);
    }
    Ok(Reduction {
        lambda_tilde: p.lambda_tilde(),
        omega: p.omega.clone(),
        sqrt_omega: to_f64(&p.omega).sqrt(),
    })
}

impl Reduction {
    pub fn tau_of_time(&self, t: f64) -> f64 {
        self.sqrt_omega * t
    }

    pub fn time_of_tau(&self, tau: f64) -> f64 {
        tau / self.sqrt_omega
    }

    pub fn e_tilde_of_energy(&self, e: &BigRat) -> BigRat {
        int(2) * e / &self.omega
    }

    pub fn energy_of_e_tilde(&self, e_tilde: &BigRat) -> BigRat {
        &self.omega * e_tilde / int(2)
    }
}

/// Which sign of `λ₀` to feed the iteration. `Printed` reproduces the
/// literal `λ₀ = −2(1−λ̃)τ/u`, which does not yield the oscillator spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Corrected,
    Printed,
}

/// Seed numerators over the common denominator `u = 1 + λ̃τ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AimInputs {
    pub l0_num: BiPoly,
    pub s0_num: BiPoly,
    pub u: BiPoly,
}

fn check_window(lambda_tilde: &BigRat) -> Result<()> {
    if lambda_tilde.is_negative() || lambda_tilde > &BigRat::one() {
        return Err(Error::LambdaTildeOutOfRange(lambda_tilde.to_string()));
    }
    if lambda_tilde.is_one() {
        return Err(Error::LambdaZeroSeed);
    }
    Ok(())
}

pub fn aim_inputs(lambda_tilde: &BigRat) -> Result<AimInputs> {
    aim_inputs_with(lambda_tilde, SignConvention::Corrected)
}

pub fn aim_inputs_with(lambda_tilde: &BigRat, signs: SignConvention) -> Result<AimInputs> {
    check_window(lambda_tilde)?;
    let mut slope = int(2) * (BigRat::one() - lambda_tilde);
    if signs == SignConvention::Printed {
        slope = -slope;
    }
    Ok(AimInputs {
        l0_num: BiPoly::monomial(slope, 1, 0),
        s0_num: BiPoly::one() - BiPoly::energy(),
        u: BiPoly::one() + BiPoly::monomial(lambda_tilde.clone(), 2, 0),
    })
}

pub fn oscillator_seed(lambda_tilde: &BigRat, signs: SignConvention) -> Result<AimState> {
    let AimInputs { l0_num, s0_num, u } = aim_inputs_with(lambda_tilde, signs)?;
    aim_seed(l0_num, s0_num, u)
}

/// `Ẽ_n = −n(n+1)λ̃ + 2n + 1`
pub fn spectrum_closed_dimensionless(n: u32, lambda_tilde: &BigRat) -> BigRat {
    let n = BigRat::from_integer(n.into());
    -(&n * (&n + BigRat::one())) * lambda_tilde + int(2) * &n + BigRat::one()
}

/// `E_n = −n(n+1)λ/2 + (2n+1)ω/2`
pub fn spectrum_closed_physical(n: u32, omega: &BigRat, lambda: &BigRat) -> Result<BigRat> {
    if !omega.is_positive() {
        return Err(Error::NonpositiveFrequency);
    }
    let n = BigRat::from_integer(n.into());
    let half = BigRat::new(1.into(), 2.into());
    Ok(-(&n * (&n + BigRat::one())) * lambda * &half + (int(2) * &n + BigRat::one()) * omega * &half)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Aim,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Aim => "aim",
            Method::Oracle => "oracle",
        }
    }
}

/// An energy that is exact when it came from algebra and approximate when
/// it came from the finite-difference oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum Energy {
    Exact(BigRat),
    Approx(f64),
}

impl Energy {
    pub fn to_f64(&self) -> f64 {
        match self {
            Energy::Exact(r) => to_f64(r),
            Energy::Approx(x) => *x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    pub e_tilde: Energy,
    /// Physical energy, `(ω/2)·Ẽ`.
    pub energy: Energy,
    pub bound: bool,
    pub marginal: bool,
    pub source: Method,
}

impl SpectrumEntry {
    pub fn new(n: u32, e_tilde: Energy, params: &ModelParams, source: Method) -> Self {
        let energy = match &e_tilde {
            Energy::Exact(r) => Energy::Exact(params.omega() * r / int(2)),
            Energy::Approx(x) => Energy::Approx(to_f64(params.omega()) * x / 2.0),
        };
        let status = bound_status(n, &params.lambda_tilde());
        Self {
            n,
            e_tilde,
            energy,
            bound: status != BoundStatus::Unbound,
            marginal: status == BoundStatus::Marginal,
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundStateInfo {
    /// `lim τ→∞ τ²/(1+λ̃τ²) = 1/λ̃`, the asymptote of the potential term.
    pub threshold: BigRat,
    /// Bottom of the continuous spectrum, `1/λ̃ + λ̃/4`. The growing kinetic
    /// coefficient `1 + λ̃τ²` adds the `λ̃/4` above the potential asymptote.
    pub continuum_edge: BigRat,
    /// Largest `n` with `n < 1/λ̃ − 1/2`; `None` if no state is normalizable.
    pub max_normalizable_n: Option<u32>,
}

pub fn bound_state_info(lambda_tilde: &BigRat) -> Result<BoundStateInfo> {
    if lambda_tilde.is_zero() {
        return Err(Error::NoThreshold);
    }
    if lambda_tilde.is_negative() {
        return Err(Error::LambdaTildeOutOfRange(lambda_tilde.to_string()));
    }
    let threshold = lambda_tilde.recip();
    let continuum_edge = &threshold + lambda_tilde / int(4);
    // φ_n ~ τ^(n − 1/λ̃): square integrable iff n < 1/λ̃ − 1/2
    let cutoff = &threshold - BigRat::new(1.into(), 2.into());
    let max_normalizable_n = if cutoff.is_positive() {
        (cutoff.ceil() - BigRat::one()).to_integer().to_u32()
    } else {
        None
    };
    Ok(BoundStateInfo {
        threshold,
        continuum_edge,
        max_normalizable_n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundStatus {
    Bound,
    /// Normalizable, with `Ẽ_n` exactly at `1/λ̃`.
    Marginal,
    Unbound,
}

pub fn bound_status(n: u32, lambda_tilde: &BigRat) -> BoundStatus {
    let Ok(info) = bound_state_info(lambda_tilde) else {
        return BoundStatus::Bound;
    };
    match info.max_normalizable_n {
        Some(max) if n <= max => {
            if spectrum_closed_dimensionless(n, lambda_tilde) == info.threshold {
                BoundStatus::Marginal
            } else {
                BoundStatus::Bound
            }
        }
        _ => BoundStatus::Unbound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Envelope {
    /// `exp(−τ²/2)`, the `λ̃ = 0` limit.
    Gaussian,
    /// `(1 + λ̃τ²)^exponent` with `exponent = −1/(2λ̃)`.
    PowerLaw { exponent: BigRat },
}

/// `φ_n(τ) = N_n · envelope(τ) · f_n(τ)` with `f_n = Σ c_j τ^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenFunction {
    pub n: u32,
    pub lambda_tilde: BigRat,
    pub e_tilde: BigRat,
    pub coeffs: Vec<BigRat>,
    pub envelope: Envelope,
    /// `None` until normalized; evaluation then uses `N = 1`.
    pub norm: Option<f64>,
    coeffs_f: Vec<f64>,
    lt_f: f64,
}

/// Polynomial eigenfunction from the two-term recursion
/// `c_{j+2} = −[λ̃ j(j−1) − 2j(1−λ̃) + Ẽ_n − 1] c_j / ((j+2)(j+1))`,
/// which terminates at `j = n` when `Ẽ_n` is the closed-form level.
pub fn eigen_polynomial(n: u32, lambda_tilde: &BigRat) -> Result<EigenFunction> {
    if lambda_tilde.is_negative() || lambda_tilde >= &BigRat::one() {
        return Err(Error::LambdaTildeOutOfRange(lambda_tilde.to_string()));
    }
    let e_n = spectrum_closed_dimensionless(n, lambda_tilde);
    let lt = lambda_tilde;
    let factor = |j: u32| -> BigRat {
        let j = BigRat::from_integer(j.into());
        lt * &j * (&j - BigRat::one()) - int(2) * &j * (BigRat::one() - lt) + &e_n - BigRat::one()
    };
    let mut coeffs = vec![BigRat::zero(); n as usize + 1];
    let mut j = n % 2;
    coeffs[j as usize] = BigRat::one();
    while j < n {
        let next = -factor(j) * &coeffs[j as usize] / BigRat::from_integer(((j + 2) * (j + 1)).into());
        coeffs[j as usize + 2] = next;
        j += 2;
    }
    debug_assert!(factor(n).is_zero());
    if coeffs[n as usize].is_zero() {
        return Err(Error::DegenerateSeries { n });
    }
    let envelope = if lt.is_zero() {
        Envelope::Gaussian
    } else {
        Envelope::PowerLaw {
            exponent: -(int(2) * lt).recip(),
        }
    };
    Ok(EigenFunction {
        n,
        lambda_tilde: lt.clone(),
        e_tilde: e_n,
        coeffs_f: coeffs.iter().map(to_f64).collect(),
        coeffs,
        envelope,
        norm: None,
        lt_f: to_f64(lt),
    })
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

impl EigenFunction {
    pub fn poly(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    pub fn poly_f64(&self, tau: f64) -> f64 {
        horner(&self.coeffs_f, tau)
    }

    /// `(f, f', f'')` at `τ`.
    fn poly_derivs(&self, tau: f64) -> (f64, f64, f64) {
        let (mut f, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for &c in self.coeffs_f.iter().rev() {
            d2 = d2 * tau + 2.0 * d1;
            d1 = d1 * tau + f;
            f = f * tau + c;
        }
        (f, d1, d2)
    }

    pub fn envelope_f64(&self, tau: f64) -> f64 {
        match &self.envelope {
            Envelope::Gaussian => (-0.5 * tau * tau).exp(),
            Envelope::PowerLaw { exponent } => (to_f64(exponent) * (self.lt_f * tau * tau).ln_1p()).exp(),
        }
    }

    /// Unnormalized `envelope · f`.
    pub fn raw(&self, tau: f64) -> f64 {
        self.envelope_f64(tau) * self.poly_f64(tau)
    }

    pub fn normalized(mut self, quad_tol: f64) -> Result<Self> {
        self.norm = Some(normalization_constant(&self, quad_tol)?);
        Ok(self)
    }
}

pub fn wavefunction_eval(ef: &EigenFunction, tau: f64) -> f64 {
    ef.norm.unwrap_or(1.0) * ef.raw(tau)
}

/// `∫_{−R}^{R} (envelope·f)² dτ`, unnormalized.
pub fn norm_integral_truncated(ef: &EigenFunction, half_width: f64, quad_tol: f64) -> f64 {
    // even integrand
    2.0 * quadrature::integrate(|x| ef.raw(x).powi(2), 0.0, half_width, 1e-300, quad_tol).value
}

/// `N_n > 0` with `∫_{−∞}^{∞} φ_n² dτ = 1`.
pub fn normalization_constant(ef: &EigenFunction, quad_tol: f64) -> Result<f64> {
    if let Ok(info) = bound_state_info(&ef.lambda_tilde) {
        if info.max_normalizable_n.is_none_or(|max| ef.n > max) {
            return Err(Error::NotNormalizable {
                n: ef.n,
                max_n: info.max_normalizable_n,
            });
        }
    }
    let half = quadrature::integrate_half_line(|x| ef.raw(x).powi(2), 1e-300, quad_tol);
    Ok((2.0 * half.value).sqrt().recip())
}

/// Exact residual `u f'' − 2(1−λ̃)τ f' + (Ẽ_n − 1) f`; zero for a true
/// eigenfunction.
pub fn residual_check(ef: &EigenFunction) -> BiPoly {
    let f = BiPoly::from_univariate_tau(&ef.poly());
    let lt = &ef.lambda_tilde;
    let u = BiPoly::one() + BiPoly::monomial(lt.clone(), 2, 0);
    let drift = BiPoly::monomial(int(2) * (BigRat::one() - lt), 1, 0);
    let d1 = f.diff_tau();
    let d2 = d1.diff_tau();
    &(&(&u * &d2) - &(&drift * &d1)) + &f.scale(&(&ef.e_tilde - BigRat::one()))
}

/// Residual of the full dimensionless equation
/// `u φ'' + 2λ̃τ φ' + (Ẽ − τ²/u) φ` at `τ`, with analytic envelope
/// derivatives `g'/g = −τ/u`, `g''/g = ((1+λ̃)τ² − 1)/u²`.
pub fn full_residual(ef: &EigenFunction, tau: f64) -> f64 {
    let lt = ef.lt_f;
    let u = 1.0 + lt * tau * tau;
    let g = ef.norm.unwrap_or(1.0) * ef.envelope_f64(tau);
    let (f, d1, d2) = ef.poly_derivs(tau);
    let phi = g * f;
    let dphi = g * (d1 - tau * f / u);
    let ddphi = g * (d2 - 2.0 * tau * d1 / u + f * ((1.0 + lt) * tau * tau - 1.0) / (u * u));
    u * ddphi + 2.0 * lt * tau * dphi + (to_f64(&ef.e_tilde) - tau * tau / u) * phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{count_real_roots, rat};
    use std::f64::consts::PI;

    #[test]
    fn reduction_examples() {
        let p = ModelParams::new(int(10), int(1)).unwrap();
        let r = reduce_dimensionless(&p).unwrap();
        assert_eq!(r.lambda_tilde, rat(1, 10));
        assert_eq!(r.e_tilde_of_energy(&int(5)), int(1));
        assert_eq!(r.energy_of_e_tilde(&r.e_tilde_of_energy(&rat(7, 3))), rat(7, 3));
        let t = 0.37;
        assert!((r.time_of_tau(r.tau_of_time(t)) - t).abs() <= 2.0 * f64::EPSILON * t);

        let p = ModelParams::new(int(1), int(0)).unwrap();
        assert_eq!(reduce_dimensionless(&p).unwrap().lambda_tilde, int(0));
    }

    #[test]
    fn invalid_params() {
        assert_eq!(ModelParams::new(int(0), int(1)), Err(Error::NonpositiveFrequency));
        assert_eq!(ModelParams::new(int(-2), int(1)), Err(Error::NonpositiveFrequency));
        assert_eq!(ModelParams::new(int(1), int(-1)), Err(Error::NegativeLambda));
    }

    #[test]
    fn seed_inputs() {
        let a = aim_inputs(&int(0)).unwrap();
        assert_eq!(a.l0_num, BiPoly::monomial(int(2), 1, 0));
        assert_eq!(a.s0_num, BiPoly::one() - BiPoly::energy());
        assert_eq!(a.u, BiPoly::one());

        let a = aim_inputs(&rat(1, 10)).unwrap();
        assert_eq!(a.l0_num, BiPoly::monomial(rat(9, 5), 1, 0));
        assert_eq!(a.u, BiPoly::one() + BiPoly::monomial(rat(1, 10), 2, 0));

        assert_eq!(aim_inputs(&int(1)), Err(Error::LambdaZeroSeed));
        assert!(matches!(aim_inputs(&int(2)), Err(Error::LambdaTildeOutOfRange(_))));

        let p = aim_inputs_with(&rat(1, 10), SignConvention::Printed).unwrap();
        assert_eq!(p.l0_num, BiPoly::monomial(rat(-9, 5), 1, 0));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(spectrum_closed_dimensionless(0, &rat(3, 7)), int(1));
        assert_eq!(spectrum_closed_dimensionless(1, &rat(1, 2)), int(2));
        assert_eq!(spectrum_closed_dimensionless(3, &rat(1, 10)), rat(29, 5));

        assert_eq!(spectrum_closed_physical(0, &int(10), &int(1)).unwrap(), int(5));
        assert_eq!(spectrum_closed_physical(2, &int(10), &int(1)).unwrap(), int(22));
        assert_eq!(spectrum_closed_physical(4, &int(1), &int(0)).unwrap(), rat(9, 2));
        assert_eq!(
            spectrum_closed_physical(0, &int(0), &int(1)),
            Err(Error::NonpositiveFrequency)
        );
    }

    #[test]
    fn physical_is_half_omega_times_dimensionless() {
        for n in 0..8 {
            for (w, l) in [(10, 1), (12, 3), (7, 0)] {
                let p = ModelParams::new(int(w), int(l)).unwrap();
                let e = spectrum_closed_physical(n, p.omega(), p.lambda()).unwrap();
                let et = spectrum_closed_dimensionless(n, &p.lambda_tilde());
                assert_eq!(e, int(w) * et / int(2));
            }
        }
    }

    #[test]
    fn linear_in_lambda() {
        let (a, b) = (rat(1, 10), rat(3, 7));
        for n in 0..10u32 {
            let d = spectrum_closed_dimensionless(n, &b) - spectrum_closed_dimensionless(n, &a);
            let nn = int(n as i64);
            assert_eq!(d, -(&nn * (&nn + int(1))) * (&b - &a));
        }
    }

    #[test]
    fn bound_state_examples() {
        let i = bound_state_info(&rat(1, 10)).unwrap();
        assert_eq!(i.threshold, int(10));
        assert_eq!(i.max_normalizable_n, Some(9));
        assert_eq!(i.continuum_edge, int(10) + rat(1, 40));

        let i = bound_state_info(&rat(1, 4)).unwrap();
        assert_eq!(i.threshold, int(4));
        assert_eq!(i.max_normalizable_n, Some(3));

        assert_eq!(bound_state_info(&int(0)), Err(Error::NoThreshold));
        assert_eq!(bound_state_info(&int(3)).unwrap().max_normalizable_n, None);

        assert_eq!(bound_status(9, &rat(1, 10)), BoundStatus::Marginal);
        assert_eq!(bound_status(3, &rat(1, 4)), BoundStatus::Marginal);
        assert_eq!(bound_status(2, &rat(1, 4)), BoundStatus::Bound);
        assert_eq!(bound_status(4, &rat(1, 4)), BoundStatus::Unbound);
        assert_eq!(bound_status(40, &int(0)), BoundStatus::Bound);
    }

    #[test]
    fn series_examples() {
        let f0 = eigen_polynomial(0, &rat(1, 10)).unwrap();
        assert_eq!(f0.coeffs, vec![int(1)]);
        let f1 = eigen_polynomial(1, &rat(1, 10)).unwrap();
        assert_eq!(f1.coeffs, vec![int(0), int(1)]);
        assert_eq!(f1.e_tilde, rat(14, 5));
        // c₂ = (1 − Ẽ₂)/2 with Ẽ₂ = 22/5
        let f2 = eigen_polynomial(2, &rat(1, 10)).unwrap();
        assert_eq!(f2.coeffs, vec![int(1), int(0), rat(-17, 10)]);
        assert_eq!(f2.envelope, Envelope::PowerLaw { exponent: int(-5) });
    }

    #[test]
    fn series_window() {
        assert!(matches!(
            eigen_polynomial(1, &int(1)),
            Err(Error::LambdaTildeOutOfRange(_))
        ));
        // partner truncation at j = 0 for λ̃ = 2/3, n = 2
        assert_eq!(
            eigen_polynomial(2, &rat(2, 3)),
            Err(Error::DegenerateSeries { n: 2 })
        );
    }

    #[test]
    fn parity_and_degree() {
        for lt in [int(0), rat(1, 10), rat(1, 4)] {
            for n in 0..8u32 {
                let ef = eigen_polynomial(n, &lt).unwrap();
                assert_eq!(ef.coeffs.len(), n as usize + 1);
                for (j, c) in ef.coeffs.iter().enumerate() {
                    if (j as u32 + n) % 2 == 1 {
                        assert!(c.is_zero());
                    }
                }
                for tau in [0.3, 1.7, 4.2] {
                    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                    assert_eq!(ef.raw(-tau), s * ef.raw(tau));
                }
            }
        }
    }

    #[test]
    fn harmonic_limit_is_hermite() {
        // H_{n+1} = 2x H_n − 2n H_{n−1}
        let mut h = vec![UPoly::from_ints(&[1]), UPoly::from_ints(&[0, 2])];
        for n in 1..5 {
            let next = &(&UPoly::from_ints(&[0, 2]) * &h[n]) - &h[n - 1].scale(&int(2 * n as i64));
            h.push(next);
        }
        for (n, hn) in h.iter().enumerate() {
            let ef = eigen_polynomial(n as u32, &int(0)).unwrap();
            assert_eq!(ef.e_tilde, int(2 * n as i64 + 1));
            assert_eq!(ef.poly().monic(), hn.monic());
        }
    }

    #[test]
    fn node_count_equals_n() {
        for (lt, max_n) in [(int(0), 7u32), (rat(1, 10), 9), (rat(1, 4), 3)] {
            for n in 0..=max_n {
                let ef = eigen_polynomial(n, &lt).unwrap();
                assert_eq!(count_real_roots(&ef.poly()).unwrap(), n as usize);
            }
        }
    }

    #[test]
    fn exact_residual_vanishes() {
        for (n, lt) in [(2, rat(1, 10)), (3, rat(1, 4)), (5, int(0))] {
            assert!(residual_check(&eigen_polynomial(n, &lt).unwrap()).is_zero());
        }
        // off the eigenvalue the residual is a nonzero polynomial
        let mut ef = eigen_polynomial(2, &rat(1, 10)).unwrap();
        ef.e_tilde += int(1);
        assert!(!residual_check(&ef).is_zero());
    }

    #[test]
    fn full_residual_small() {
        let ef = eigen_polynomial(1, &rat(1, 10)).unwrap().normalized(1e-13).unwrap();
        assert!(full_residual(&ef, 0.7).abs() < 1e-9);
    }

    #[test]
    fn gaussian_normalization() {
        let ef = eigen_polynomial(0, &int(0)).unwrap().normalized(1e-13).unwrap();
        assert!((ef.norm.unwrap() - PI.powf(-0.25)).abs() < 1e-12);
        assert!((wavefunction_eval(&ef, 0.0) - PI.powf(-0.25)).abs() < 1e-12);
    }

    #[test]
    fn power_law_normalization_converges() {
        let ef = eigen_polynomial(0, &rat(1, 10)).unwrap();
        let tol = 1e-10;
        let n_full = normalization_constant(&ef, tol).unwrap();
        let a = norm_integral_truncated(&ef, 40.0, 1e-13);
        let b = norm_integral_truncated(&ef, 80.0, 1e-13);
        assert!(n_full > 0.0);
        assert!((a.sqrt().recip() - b.sqrt().recip()).abs() < tol);
        assert!((b.sqrt().recip() - n_full).abs() < tol);
    }

    #[test]
    fn not_normalizable_above_cutoff() {
        let ef = eigen_polynomial(4, &rat(1, 4)).unwrap();
        assert_eq!(
            normalization_constant(&ef, 1e-10),
            Err(Error::NotNormalizable { n: 4, max_n: Some(3) })
        );
    }

    #[test]
    fn gaussian_limit_of_envelope() {
        let ef = eigen_polynomial(0, &rat(1, 1_000_000)).unwrap();
        for tau in [0.0, 0.5, 1.0, 2.0] {
            assert!((ef.envelope_f64(tau) - (-0.5f64 * tau * tau).exp()).abs() < 1e-6);
        }
        let ef = eigen_polynomial(1, &rat(1, 4)).unwrap();
        assert_eq!(wavefunction_eval(&ef, 0.0), 0.0);
    }

    #[test]
    fn orthogonality() {
        let lt = rat(1, 10);
        let efs: Vec<_> = (0..4)
            .map(|n| eigen_polynomial(n, &lt).unwrap().normalized(1e-13).unwrap())
            .collect();
        for m in 0..4 {
            for n in 0..4 {
                let v = 2.0
                    * quadrature::integrate_half_line(
                        |x| wavefunction_eval(&efs[m], x) * wavefunction_eval(&efs[n], x),
                        1e-14,
                        1e-12,
                    )
                    .value;
                let (a, b) = (efs[m].n, efs[n].n);
                if a == b {
                    assert!((v - 1.0).abs() < 1e-10);
                } else if (a + b) % 2 == 0 {
                    assert!(v.abs() < 1e-10, "<{a}|{b}> = {v}");
                }
            }
        }
    }
}
