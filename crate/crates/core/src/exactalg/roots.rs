use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{to_f64, BigRat, UPoly};
use crate::{Error, Result};

/// An interval holding exactly one real root of some polynomial.
///
/// When the root is rational it is found exactly and `low == high == exact`.
/// Otherwise `low < high`, neither endpoint is a root, and the polynomial
/// changes sign across the interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub low: BigRat,
    pub high: BigRat,
    pub exact: Option<BigRat>,
}

impl RootInterval {
    pub fn exact(r: BigRat) -> Self {
        Self {
            low: r.clone(),
            high: r.clone(),
            exact: Some(r),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn width(&self) -> BigRat {
        &self.high - &self.low
    }

    pub fn midpoint(&self) -> BigRat {
        (&self.low + &self.high) / BigRat::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

/// Primitive integer polynomial used for sign evaluation.
#[derive(Clone, Debug)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_upoly(p: &UPoly) -> Self {
        Self(p.primitive_integer())
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn leading(&self) -> &BigInt {
        self.0.last().unwrap()
    }

    /// Sign of `p(n/d)` with `d > 0`, via the homogenized form
    /// `Σ a_i n^i d^(deg-i)`.
    fn sign_at(&self, x: &BigRat) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = self.leading().clone();
        let mut dpow = BigInt::one();
        for a in self.0.iter().rev().skip(1) {
            dpow *= d;
            acc = acc * n + a * &dpow;
        }
        sign_int(&acc)
    }

    /// Sign as `x → +∞` (`positive`) or `x → −∞`.
    fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = sign_int(self.leading());
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }
}

fn sign_int(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Sturm sequence of a square-free polynomial, each member scaled to a
/// primitive integer polynomial by a positive factor.
struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    fn new(p: &UPoly) -> Self {
        let mut chain = vec![p.primitive(), p.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive());
        }
        Self {
            polys: chain.iter().map(IntPoly::from_upoly).collect(),
        }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRat) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct roots in `(a, b]`.
    fn count_between(&self, a: &BigRat, b: &BigRat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots, by Sturm's theorem over `(−∞, ∞)`.
pub fn count_real_roots(p: &UPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    Ok(SturmChain::new(&p.square_free()).count_all())
}

/// Isolate every distinct real root of `p`.
///
/// The polynomial is reduced to its square-free part and the roots are
/// separated by Sturm-chain bisection. Each isolating interval is then
/// screened for a rational root: by the rational root theorem any rational
/// root `a/b` of the primitive integer square-free part has `b` dividing the
/// leading coefficient `L`, and two such rationals are at least `1/L²` apart.
/// Shrinking the interval below that width leaves at most one candidate, the
/// simplest rational inside, which is then tested exactly.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sqf = p.square_free();
    let int_poly = IntPoly::from_upoly(&sqf);
    let chain = SturmChain::new(&sqf);
    let lead = int_poly.leading().abs();
    let separation = BigRat::new(BigInt::one(), &lead * &lead);

    let bound = cauchy_bound(&sqf);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match chain.count_between(&a, &b) {
            0 => {}
            1 => out.push(identify_root(&int_poly, a, b, &separation)),
            _ => {
                let m = split_point(&int_poly, &a, &b);
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.low.cmp(&y.low));
    Ok(out)
}

/// Bisect an isolating interval down to `tol`, returning its midpoint.
/// Exact roots are returned unchanged.
pub fn refine_root(p: &UPoly, iv: &RootInterval, tol: &BigRat) -> BigRat {
    assert!(tol.is_positive(), "refinement tolerance must be positive");
    if let Some(r) = &iv.exact {
        return r.clone();
    }
    let q = IntPoly::from_upoly(&p.square_free());
    let (mut a, mut b) = (iv.low.clone(), iv.high.clone());
    let sa = q.sign_at(&a);
    let two = BigRat::from_integer(2.into());
    while &(&b - &a) > tol {
        let m = (&a + &b) / &two;
        match q.sign_at(&m) {
            0 => return m,
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    (a + b) / two
}

/// `1 + max |a_i / a_n|`: every root lies strictly inside `(−B, B)`.
fn cauchy_bound(p: &UPoly) -> BigRat {
    let lc = p.leading().unwrap().abs();
    let max = p
        .coeffs()
        .iter()
        .rev()
        .skip(1)
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRat::zero);
    BigRat::one() + max
}

/// A point strictly inside `(a, b)` that is not a root.
fn split_point(q: &IntPoly, a: &BigRat, b: &BigRat) -> BigRat {
    let width = b - a;
    let mut denom = BigInt::from(2);
    loop {
        let step = &width / BigRat::from_integer(denom.clone());
        let mut k = BigInt::one();
        while k < denom {
            let m = a + &step * BigRat::from_integer(k.clone());
            if q.sign_at(&m) != 0 {
                return m;
            }
            k += 2;
        }
        denom *= 2;
    }
}

fn identify_root(q: &IntPoly, mut a: BigRat, mut b: BigRat, separation: &BigRat) -> RootInterval {
    let sa = q.sign_at(&a);
    let two = BigRat::from_integer(2.into());
    let lead = q.leading().abs();
    let mut step = 0u32;
    loop {
        let narrow = &(&b - &a) < separation;
        if narrow || step.is_multiple_of(4) {
            let c = simplest_between(&a, &b);
            if c.denom() <= &lead && q.sign_at(&c) == 0 {
                return RootInterval::exact(c);
            }
            if narrow {
                return RootInterval {
                    low: a,
                    high: b,
                    exact: None,
                };
            }
        }
        let m = (&a + &b) / &two;
        match q.sign_at(&m) {
            0 => return RootInterval::exact(m),
            s if s == sa => a = m,
            _ => b = m,
        }
        step += 1;
    }
}

/// The rational with the smallest denominator in the open interval `(a, b)`.
pub(crate) fn simplest_between(a: &BigRat, b: &BigRat) -> BigRat {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return BigRat::zero();
    }
    if !b.is_positive() {
        return -simplest_above(&-b, Some(&-a));
    }
    simplest_above(a, Some(b))
}

/// Simplest rational in `(lo, hi)` for `lo ≥ 0`; `hi = None` means `+∞`.
fn simplest_above(lo: &BigRat, hi: Option<&BigRat>) -> BigRat {
    let fl = lo.floor();
    let cand = &fl + BigRat::one();
    match hi {
        None => cand,
        Some(h) if &cand < h => cand,
        Some(h) => {
            let x = lo - &fl;
            let y = h - &fl;
            let next_hi = if x.is_zero() { None } else { Some(x.recip()) };
            fl + simplest_above(&y.recip(), next_hi.as_ref()).recip()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{from_f64, int, rat};
    use proptest::prelude::*;

    fn exact_roots(ivs: &[RootInterval]) -> Vec<BigRat> {
        ivs.iter().map(|iv| iv.exact.clone().expect("exact")).collect()
    }

    #[test]
    fn harmonic_delta_roots() {
        // (Ẽ−1)(Ẽ−3)
        let p = UPoly::from_ints(&[3, -4, 1]);
        assert_eq!(exact_roots(&isolate_real_roots(&p).unwrap()), vec![int(1), int(3)]);
    }

    #[test]
    fn tenth_lambda_delta_roots() {
        let p = UPoly::from_roots(&[int(1), rat(14, 5)]);
        assert_eq!(
            exact_roots(&isolate_real_roots(&p).unwrap()),
            vec![int(1), rat(14, 5)]
        );
    }

    #[test]
    fn irrational_pair() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        let s2 = from_f64(2f64.sqrt()).unwrap();
        assert!(ivs.iter().all(|iv| !iv.is_exact()));
        assert!(ivs[0].low < -&s2 && -&s2 < ivs[0].high);
        assert!(ivs[1].low < s2 && s2 < ivs[1].high);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(isolate_real_roots(&UPoly::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(count_real_roots(&UPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn constants_and_rootless() {
        assert!(isolate_real_roots(&UPoly::from_ints(&[5])).unwrap().is_empty());
        assert!(isolate_real_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn repeated_roots_are_reported_once() {
        let p = UPoly::from_roots(&[int(2), int(2), rat(-1, 3), rat(-1, 3), rat(-1, 3)]);
        assert_eq!(
            exact_roots(&isolate_real_roots(&p).unwrap()),
            vec![rat(-1, 3), int(2)]
        );
        assert_eq!(count_real_roots(&p), Ok(2));
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (x − 7/3)(x² − 3)
        let p = &UPoly::from_roots(&[rat(7, 3)]) * &UPoly::from_ints(&[-3, 0, 1]);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 3);
        assert_eq!(ivs[2].exact, Some(rat(7, 3)));
        assert!(!ivs[0].is_exact() && !ivs[1].is_exact());
    }

    #[test]
    fn large_denominator_roots() {
        // the λ̃ = 10⁻⁶ levels have million-scale denominators
        let roots: Vec<BigRat> = (0..6)
            .map(|n: i64| int(2 * n + 1) - rat(n * (n + 1), 1_000_000))
            .collect();
        let p = UPoly::from_roots(&roots);
        assert_eq!(exact_roots(&isolate_real_roots(&p).unwrap()), roots);
    }

    #[test]
    fn refine_examples() {
        let p = UPoly::from_roots(&[rat(14, 5)]);
        let iv = RootInterval::exact(rat(14, 5));
        assert_eq!(refine_root(&p, &iv, &rat(1, 2)), rat(14, 5));

        let p = UPoly::from_ints(&[-2, 0, 1]);
        let iv = RootInterval {
            low: int(1),
            high: int(2),
            exact: None,
        };
        let r = refine_root(&p, &iv, &rat(1, 1_000_000));
        assert!((to_f64(&r) - 2f64.sqrt()).abs() <= 1e-6);

        let p = UPoly::from_ints(&[-1, 1]);
        let iv = RootInterval {
            low: int(0),
            high: int(2),
            exact: None,
        };
        assert_eq!(refine_root(&p, &iv, &rat(1, 1000)), int(1));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
        assert_eq!(simplest_between(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&int(2), &rat(5, 2)), rat(7, 3));
        assert_eq!(simplest_between(&rat(27, 10), &rat(29, 10)), rat(11, 4));
        assert_eq!(simplest_between(&rat(279, 100), &rat(281, 100)), rat(14, 5));
    }

    fn arb_roots() -> impl Strategy<Value = Vec<BigRat>> {
        prop::collection::btree_set((-30i64..30, 1i64..8), 1..7)
            .prop_map(|s| s.into_iter().map(|(n, d)| rat(n, d)).collect::<Vec<_>>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recovers_constructed_roots(roots in arb_roots()) {
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            let p = UPoly::from_roots(&roots);
            let ivs = isolate_real_roots(&p).unwrap();
            prop_assert_eq!(exact_roots(&ivs), distinct);
        }

        #[test]
        fn sturm_count_matches_isolation(roots in arb_roots(), extra in -5i64..5) {
            // multiply by x² − extra to mix in irrational or no roots
            let p = &UPoly::from_roots(&roots) * &UPoly::from_ints(&[-extra, 0, 1]);
            let ivs = isolate_real_roots(&p).unwrap();
            prop_assert_eq!(count_real_roots(&p).unwrap(), ivs.len());
            for w in ivs.windows(2) {
                prop_assert!(w[0].high <= w[1].low);
            }
        }
    }
}
