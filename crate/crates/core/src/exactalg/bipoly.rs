use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{BigRat, UPoly};
use crate::{Error, Result};

/// Sparse polynomial in `τ` (time) and `Ẽ` (dimensionless energy) with
/// exact rational coefficients.
///
/// Terms are keyed by `(deg_τ, deg_Ẽ)`. Zero coefficients are never stored,
/// so two polynomials are equal iff their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &BiPoly, b: &BiPoly, op: PolyOp) -> BiPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · τ^i · Ẽ^j`
    pub fn monomial(c: BigRat, tau_deg: u32, energy_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((tau_deg, energy_deg), c);
        }
        Self { terms }
    }

    pub fn tau() -> Self {
        Self::monomial(BigRat::one(), 1, 0)
    }

    pub fn energy() -> Self {
        Self::monomial(BigRat::one(), 0, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigRat)>,
    {
        let mut p = Self::zero();
        for (key, c) in terms {
            p.add_term(key, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tau_deg: u32, energy_deg: u32) -> BigRat {
        self.terms
            .get(&(tau_deg, energy_deg))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Degree in `τ`; `None` for the zero polynomial.
    pub fn degree_tau(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Degree in `Ẽ`; `None` for the zero polynomial.
    pub fn degree_energy(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `τ`, `Ẽ` held constant.
    pub fn diff_tau(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * BigRat::from_integer(i.into())))
                .collect(),
        }
    }

    pub fn eval(&self, tau: &BigRat, energy: &BigRat) -> BigRat {
        let mut tau_pows = PowCache::new(tau);
        let mut e_pows = PowCache::new(energy);
        let mut acc = BigRat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * tau_pows.get(i) * e_pows.get(j);
        }
        acc
    }

    /// Substitute `τ = τ0`, leaving a polynomial in `Ẽ`.
    pub fn subs_tau(&self, tau0: &BigRat) -> UPoly {
        let mut pows = PowCache::new(tau0);
        let deg = self.degree_energy().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[j as usize] += c * pows.get(i);
        }
        UPoly::new(coeffs)
    }

    /// Substitute `Ẽ = e0`, leaving a polynomial in `τ`.
    pub fn subs_energy(&self, e0: &BigRat) -> UPoly {
        let mut pows = PowCache::new(e0);
        let deg = self.degree_tau().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += c * pows.get(j);
        }
        UPoly::new(coeffs)
    }

    /// View a polynomial free of `τ` as a univariate polynomial in `Ẽ`.
    pub fn to_univariate_energy(&self) -> Result<UPoly> {
        if self.terms.keys().any(|k| k.0 != 0) {
            return Err(Error::NotUnivariate);
        }
        Ok(self.subs_tau(&BigRat::zero()))
    }

    /// View a polynomial free of `Ẽ` as a univariate polynomial in `τ`.
    pub fn to_univariate_tau(&self) -> Option<UPoly> {
        if self.terms.keys().any(|k| k.1 != 0) {
            return None;
        }
        Some(self.subs_energy(&BigRat::zero()))
    }

    pub fn from_univariate_tau(p: &UPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }
}

struct PowCache<'a> {
    base: &'a BigRat,
    pows: Vec<BigRat>,
}

impl<'a> PowCache<'a> {
    fn new(base: &'a BigRat) -> Self {
        Self {
            base,
            pows: vec![BigRat::one()],
        }
    }

    fn get(&mut self, e: u32) -> &BigRat {
        while self.pows.len() <= e as usize {
            let next = self.pows.last().unwrap() * self.base;
            self.pows.push(next);
        }
        &self.pows[e as usize]
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $f(self, rhs: BiPoly) -> BiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $f(self, rhs: &BiPoly) -> BiPoly {
                (&self).$f(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let neg = c < &BigRat::zero();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = if neg { -c } else { c.clone() };
            let is_const = key.0 == 0 && key.1 == 0;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut parts = Vec::new();
            match key.0 {
                0 => {}
                1 => parts.push("t".to_string()),
                d => parts.push(format!("t^{d}")),
            }
            match key.1 {
                0 => {}
                1 => parts.push("E".to_string()),
                d => parts.push(format!("E^{d}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;

    fn t() -> BiPoly {
        BiPoly::tau()
    }
    fn e() -> BiPoly {
        BiPoly::energy()
    }
    fn c(n: i64, d: i64) -> BiPoly {
        BiPoly::constant(rat(n, d))
    }

    #[test]
    fn difference_of_squares() {
        let p = (t() + c(1, 1)) * (t() - c(1, 1));
        assert_eq!(p, t() * t() - c(1, 1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn additive_identity() {
        let p = t() * e() + c(3, 7);
        assert_eq!(&p + &BiPoly::zero(), p);
        assert_eq!(poly_arith(&p, &BiPoly::zero(), PolyOp::Add), p);
    }

    #[test]
    fn scalar_scale() {
        let p = c(2, 1) * t() * e();
        assert_eq!(poly_arith(&p, &c(3, 2), PolyOp::Mul), c(3, 1) * t() * e());
        assert_eq!(p.scale(&rat(3, 2)), c(3, 1) * t() * e());
    }

    #[test]
    fn cancellation_prunes_terms() {
        let p = t() * e() + c(1, 1);
        let q = &p - &(t() * e());
        assert_eq!(q.num_terms(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!((t() * t() * t()).diff_tau(), c(3, 1) * t() * t());
        assert_eq!((e() * t() * t() + c(5, 1)).diff_tau(), c(2, 1) * e() * t());
        assert!(c(7, 1).diff_tau().is_zero());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!((t() * t() - c(1, 1)).eval(&int(1), &int(0)), int(0));
        assert_eq!((e() - c(1, 1)).eval(&int(0), &int(1)), int(0));
        assert_eq!((c(2, 1) * t() * e()).eval(&rat(1, 2), &int(3)), int(3));
    }

    #[test]
    fn substitution_splits_variables() {
        let p = c(2, 1) * t() * e() + t() * t() + c(1, 1);
        let in_e = p.subs_tau(&rat(1, 2));
        assert_eq!(in_e.coeffs(), &[rat(5, 4), int(1)]);
        let in_t = p.subs_energy(&int(3));
        assert_eq!(in_t.coeffs(), &[int(1), int(6), int(1)]);
        assert!(p.to_univariate_energy().is_err());
        assert_eq!(p.degree_tau(), Some(2));
        assert_eq!(p.degree_energy(), Some(1));
    }

    #[test]
    fn display_is_readable() {
        let p = c(-3, 2) * t() * t() * e() + c(1, 1);
        assert_eq!(p.to_string(), "-3/2*t^2*E + 1");
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..4, 0u32..3), -6i64..7, 1i64..5), 0..6).prop_map(|ts| {
            BiPoly::from_terms(ts.into_iter().map(|(k, n, d)| (k, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a - &b) + &b - a.clone()).is_zero());
        }

        #[test]
        fn product_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).diff_tau();
            let rhs = &(&a.diff_tau() * &b) + &(&a * &b.diff_tau());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn no_zero_coefficients_stored(a in arb_poly(), b in arb_poly()) {
            let p = &(&a * &b) - &(&b * &a) + &a;
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
