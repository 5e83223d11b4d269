//! Arbitrary-precision numeric evaluation: iterated q-Pochhammer symbols on
//! the extended parameter range, ring-element evaluation at sample points,
//! and the two-tier zero test (symbolic fast path, numeric certification).
//!
//! Arithmetic uses a fixed-point complex type with 320 fractional bits
//! (~96 decimal digits), enough headroom for 50-digit certification.
//! q-Pochhammer products need only +, -, *, / and integer square roots, so
//! no transcendental functions are involved and every run is reproducible
//! from the policy seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::ring::RingElement;
use crate::scalar::GaussRat;

/// Fractional bits of the fixed-point mantissas.
const FRAC_BITS: u32 = 320;

/// Complex number re + i*im with both parts scaled by 2^FRAC_BITS.
#[derive(Clone, PartialEq, Eq)]
pub struct CFix {
    re: BigInt,
    im: BigInt,
}

impl CFix {
    pub fn zero() -> Self {
        CFix { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        CFix { re: BigInt::one() << FRAC_BITS, im: BigInt::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        let scale = 2f64.powi(62);
        let re_hi = BigInt::from((re * scale) as i128) << (FRAC_BITS - 62);
        let im_hi = BigInt::from((im * scale) as i128) << (FRAC_BITS - 62);
        CFix { re: re_hi, im: im_hi }
    }

    pub fn from_rational(re: &BigRational, im: &BigRational) -> Self {
        CFix {
            re: (re.numer() << FRAC_BITS) / re.denom(),
            im: (im.numer() << FRAC_BITS) / im.denom(),
        }
    }

    pub fn from_gauss(g: &GaussRat) -> Self {
        CFix::from_rational(&g.re, &g.im)
    }

    pub fn add(&self, o: &CFix) -> CFix {
        CFix { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CFix) -> CFix {
        CFix { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> CFix {
        CFix { re: -&self.re, im: -&self.im }
    }

    pub fn mul(&self, o: &CFix) -> CFix {
        CFix {
            re: (&self.re * &o.re - &self.im * &o.im) >> FRAC_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FRAC_BITS,
        }
    }

    pub fn div(&self, o: &CFix) -> CFix {
        let den = &o.re * &o.re + &o.im * &o.im;
        assert!(!den.is_zero(), "complex division by zero");
        let nre = &self.re * &o.re + &self.im * &o.im;
        let nim = &self.im * &o.re - &self.re * &o.im;
        CFix { re: (nre << FRAC_BITS) / &den, im: (nim << FRAC_BITS) / &den }
    }

    pub fn inv(&self) -> CFix {
        CFix::one().div(self)
    }

    pub fn powi(&self, e: i64) -> CFix {
        if e == 0 {
            return CFix::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = CFix::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        acc
    }

    /// |z|^2 scaled by 2^(2*FRAC_BITS).
    fn abs2_raw(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// |z| as a fixed-point real (integer square root of the raw norm).
    pub fn abs(&self) -> CFix {
        CFix { re: self.abs2_raw().sqrt(), im: BigInt::zero() }
    }

    /// True iff |z| < tol (tol a small positive rational given as f64).
    pub fn abs_lt(&self, tol: f64) -> bool {
        let t = BigRational::from_float(tol).expect("tolerance must be finite");
        let lhs = self.abs2_raw() * t.denom() * t.denom();
        let rhs = (t.numer() * t.numer()) << (2 * FRAC_BITS);
        lhs < rhs
    }

    /// Principal complex square root, via real integer square roots.
    pub fn sqrt(&self) -> CFix {
        let r = self.abs().re;
        let half = |x: BigInt| -> BigInt { x >> 1 };
        let re2: BigInt = half(&r + &self.re) << FRAC_BITS;
        let im2: BigInt = half(&r - &self.re) << FRAC_BITS;
        let re = re2.max(BigInt::zero()).sqrt();
        let mut im = im2.max(BigInt::zero()).sqrt();
        if self.im.is_negative() {
            im = -im;
        }
        CFix { re, im }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let scale = 2f64.powi(-(FRAC_BITS as i32));
        let conv = |x: &BigInt| -> f64 {
            // Reduce to ~53 significant bits before converting.
            let bits = x.bits() as i64;
            if bits <= 62 {
                x.to_i64().unwrap_or(0) as f64 * scale
            } else {
                let shift = bits - 62;
                let hi = (x >> shift).to_i64().unwrap_or(0) as f64;
                hi * 2f64.powi(shift as i32) * scale
            }
        };
        (conv(&self.re), conv(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64();
        re.hypot(im)
    }
}

impl std::fmt::Debug for CFix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{:+.6e}{:+.6e}i", re, im)
    }
}

/// Evaluation policy: precision, truncation, tolerance, sampling.
#[derive(Clone, Debug)]
pub struct NumericPolicy {
    pub precision_digits: u32,
    pub max_product_index: u32,
    pub tol: f64,
    pub samples: u32,
    pub seed: u64,
}

impl NumericPolicy {
    pub fn new(precision_digits: u32, max_product_index: u32, tol: f64, samples: u32, seed: u64) -> Self {
        assert!(precision_digits > 0 && max_product_index >= 10 && samples > 0);
        assert!(tol > 0.0 && tol >= 10f64.powi(3 - precision_digits as i32), "tol inconsistent with precision");
        NumericPolicy { precision_digits, max_product_index, tol, samples, seed }
    }

    /// 50 digits / 1e-30, the exact-pipeline certification default.
    pub fn certification() -> Self {
        NumericPolicy::new(50, 220, 1e-30, 5, 42)
    }

    /// 1e-8, the Laumon-sum default.
    pub fn laumon() -> Self {
        NumericPolicy::new(50, 220, 1e-8, 2, 42)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy::certification()
    }
}

/// A sample point (Q, p, s) with chosen square roots, so half-integer
/// lattice exponents evaluate consistently.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub q: CFix,
    pub p: CFix,
    pub s: CFix,
    sqrt_q: CFix,
    sqrt_p: CFix,
    sqrt_s: CFix,
}

impl SamplePoint {
    pub fn new(q: CFix, p: CFix, s: CFix) -> Self {
        SamplePoint {
            sqrt_q: q.sqrt(),
            sqrt_p: p.sqrt(),
            sqrt_s: s.sqrt(),
            q,
            p,
            s,
        }
    }

    /// Value of the monomial with doubled exponents (eq, ep, es).
    pub fn monomial(&self, eq: i64, ep: i64, es: i64) -> CFix {
        let f = |sqrt: &CFix, full: &CFix, e: i64| -> CFix {
            if e % 2 == 0 {
                full.powi(e / 2)
            } else {
                sqrt.powi(e)
            }
        };
        f(&self.sqrt_q, &self.q, eq)
            .mul(&f(&self.sqrt_p, &self.p, ep))
            .mul(&f(&self.sqrt_s, &self.s, es))
    }

    /// Value of p^a s^b for an integer denominator vector.
    pub fn ps_vector(&self, a: i64, b: i64) -> CFix {
        self.p.powi(a).mul(&self.s.powi(b))
    }
}

/// Numeric evaluation errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumError {
    /// Some |p_i| is too close to 1 for the product to converge.
    NearUnitCircle,
    /// The truncated product's last factor still differs from 1 beyond tol.
    DidNotConverge,
    /// A pexp numerator coefficient is not a rational integer.
    NonIntegerCoefficient,
    /// A prefactor denominator vanished at the sample point.
    SingularPrefactor,
}

/// Margin around |w| = 1 within which parameters are rejected.
const UNIT_CIRCLE_MARGIN: f64 = 0.12;

fn log2_abs_approx(z: &CFix) -> f64 {
    let a = z.abs_f64();
    if a == 0.0 {
        f64::NEG_INFINITY
    } else {
        a.log2()
    }
}

/// Iterated q-Pochhammer symbol (z; p_1, ..., p_n) on the extended range:
/// parameters with |p_i| > 1 are folded by the inversion identity
/// (z; ..., p^-1, ...) = 1 / (p z; ..., p, ...), after which the absolutely
/// convergent product is truncated with a per-branch tail cut once factors
/// are indistinguishable from 1 at working precision.
pub fn poch_eval(z: &CFix, params: &[CFix], policy: &NumericPolicy) -> Result<CFix, NumError> {
    let mut zz = z.clone();
    let mut inv_count = 0usize;
    let mut pos_params = Vec::with_capacity(params.len());
    for w in params {
        let a = w.abs_f64();
        if a == 0.0 || (a - 1.0).abs() < UNIT_CIRCLE_MARGIN {
            return Err(NumError::NearUnitCircle);
        }
        if a > 1.0 {
            // (eps - 1)/2 = -1: multiply z by w^-1 and use w^-1 < 1.
            let winv = w.inv();
            zz = zz.mul(&winv);
            pos_params.push(winv);
            inv_count += 1;
        } else {
            pos_params.push(w.clone());
        }
    }
    let value = poch_all_inside(&zz, &pos_params, policy)?;
    if inv_count % 2 == 1 {
        Ok(value.inv())
    } else {
        Ok(value)
    }
}

/// The convergent branch: all |p_i| < 1.
fn poch_all_inside(z: &CFix, params: &[CFix], policy: &NumericPolicy) -> Result<CFix, NumError> {
    // Factors below 2^-cut of 1 are dropped.
    let cut = -((FRAC_BITS as f64) - 8.0);
    fn rec(
        z: &CFix,
        params: &[CFix],
        cut: f64,
        max_idx: u32,
    ) -> Result<CFix, NumError> {
        if log2_abs_approx(z) < cut {
            return Ok(CFix::one());
        }
        if params.is_empty() {
            return Ok(CFix::one().sub(z));
        }
        let w = &params[0];
        let rest = &params[1..];
        let mut acc = CFix::one();
        let mut t = z.clone();
        for i in 0..=max_idx {
            if log2_abs_approx(&t) < cut {
                return Ok(acc);
            }
            if i == max_idx {
                return Err(NumError::DidNotConverge);
            }
            acc = acc.mul(&rec(&t, rest, cut, max_idx)?);
            t = t.mul(w);
        }
        Ok(acc)
    }
    rec(z, params, cut, policy.max_product_index)
}

/// Evaluates a Laurent polynomial at the point.
pub fn laurent_eval(p: &LaurentPoly, pt: &SamplePoint) -> CFix {
    let mut acc = CFix::zero();
    for (e, c) in p.terms() {
        acc = acc.add(&CFix::from_gauss(c).mul(&pt.monomial(e.q, e.p, e.s)));
    }
    acc
}

/// Evaluates a rational function at the point.
pub fn ratfunc_eval(r: &RatFunc, pt: &SamplePoint) -> Result<CFix, NumError> {
    let den = laurent_eval(r.den(), pt);
    if den.abs_lt(1e-60) {
        return Err(NumError::SingularPrefactor);
    }
    Ok(laurent_eval(r.num(), pt).div(&den))
}

/// Evaluates a ring element at the point: sum over terms of
/// prefactor * prod over numerator monomials of poch(monomial; params)^coeff.
pub fn ring_eval(x: &RingElement, pt: &SamplePoint, policy: &NumericPolicy) -> Result<CFix, NumError> {
    let mut acc = CFix::zero();
    for (atom, pref) in x.terms() {
        let mut term = ratfunc_eval(pref, pt)?;
        if !atom.is_one() {
            let frac = atom.fraction();
            let params: Vec<CFix> =
                frac.den().iter().map(|(a, b)| pt.ps_vector(*a, *b)).collect();
            for (e, c) in frac.num().terms() {
                let c = c.to_i64().ok_or(NumError::NonIntegerCoefficient)?;
                let zval = pt.monomial(e.q, e.p, e.s);
                let poch = poch_eval(&zval, &params, policy)?;
                term = term.mul(&poch.powi(c));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Draws reproducible sample points on the safe annuli: |p|, |s| in
/// [0.05, 0.35], |Q| in [0.8, 1.25] bounded away from the roots of unity of
/// order dividing 8 (where 1/(1-Q^4)-type prefactors blow up).
pub fn sample_points(policy: &NumericPolicy, count: usize) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = random_on_annulus(&mut rng, 0.8, 1.25);
        let p = random_on_annulus(&mut rng, 0.05, 0.12);
        let s = random_on_annulus(&mut rng, 0.16, 0.35);
        // Reject Q too close to Q^4 = 1, Q^4 = -1 or Q^8 = 1.
        let q4 = q.powi(4);
        let bad = q4.sub(&CFix::one()).abs_f64() < 0.2
            || q4.add(&CFix::one()).abs_f64() < 0.2;
        if bad {
            continue;
        }
        out.push(SamplePoint::new(q, p, s));
    }
    out
}

/// A random point with |z| in [lo, hi] and a rational direction, exactly
/// representable so runs are reproducible across platforms.
fn random_on_annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> CFix {
    let radius = lo + (hi - lo) * rng.gen::<f64>();
    // Rational point on the unit circle: ((1-t^2) + 2t i)/(1+t^2).
    let t = -1.0 + 2.0 * rng.gen::<f64>();
    let denom = 1.0 + t * t;
    let re = radius * (1.0 - t * t) / denom;
    let im = radius * 2.0 * t / denom;
    CFix::from_f64(re, im)
}

/// Which tier decided a zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Symbolic,
    Numeric,
}

/// Outcome of the two-tier zero test.
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub is_zero: bool,
    pub tier: Tier,
    pub max_residual: f64,
}

/// Two-tier zero test: empty canonical term map decides symbolically;
/// otherwise the element is sampled at `policy.samples` random points and
/// declared "numerically zero, symbolically unreduced" if all residuals are
/// below `policy.tol`. Points that violate unit-circle margins for some
/// atom are redrawn.
pub fn ring_is_zero(x: &RingElement, policy: &NumericPolicy) -> Result<ZeroReport, NumError> {
    if x.is_zero_symbolic() {
        return Ok(ZeroReport { is_zero: true, tier: Tier::Symbolic, max_residual: 0.0 });
    }
    let mut max_residual = 0.0f64;
    let mut checked = 0u32;
    let mut attempt = 0u64;
    while checked < policy.samples {
        attempt += 1;
        if attempt > 20 * policy.samples as u64 {
            return Err(NumError::NearUnitCircle);
        }
        let pts = sample_points(&policy.clone().with_seed(policy.seed.wrapping_add(attempt)), 1);
        match ring_eval(x, &pts[0], policy) {
            Ok(v) => {
                max_residual = max_residual.max(v.abs_f64());
                checked += 1;
            }
            Err(NumError::NearUnitCircle) | Err(NumError::SingularPrefactor) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(ZeroReport { is_zero: max_residual < policy.tol, tier: Tier::Numeric, max_residual })
}
