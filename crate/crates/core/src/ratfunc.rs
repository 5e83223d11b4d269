//! Rational functions num/den of Laurent polynomials in (Q, p, s).
//!
//! These carry the scalar prefactors of ring elements, which in practice
//! depend only on Q. Normalization extracts the denominator's monomial
//! content and scales its leading coefficient to 1; when both numerator and
//! denominator are Q-only the common univariate gcd is divided out as well.
//! Equality is decided by cross-multiplication, so the gcd step is a size
//! optimization, not a correctness requirement.

use std::fmt;

use crate::laurent::{Exp3, LaurentPoly};
use crate::scalar::GaussRat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc { num: LaurentPoly::from_int_terms(&[(n, 0, 0, 0)]), den: LaurentPoly::one() }
    }

    pub fn from_scalar(c: GaussRat) -> Self {
        RatFunc { num: LaurentPoly::monomial(c, Exp3::new(0, 0, 0)), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_q_only(&self) -> bool {
        self.num.is_q_only() && self.den.is_q_only()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        if self.num.is_q_only() && self.den.is_q_only() {
            let g = q_gcd(&self.num, &self.den);
            if g.num_terms() > 1 {
                self.num = self.num.divide_exact(&g).expect("gcd divides numerator");
                self.den = self.den.divide_exact(&g).expect("gcd divides denominator");
            }
        }
        let dmin = self.den.min_exponents().unwrap();
        let dlead = self.den.leading_term().unwrap().1.clone();
        let unit = dlead.inv();
        self.num = self.num.mul_monomial(&unit, dmin.neg());
        self.den = self.den.mul_monomial(&unit, dmin.neg());
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.sub(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Equality by cross-multiplication; independent of normalization.
    pub fn eq_cross(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Applies a monomial substitution to numerator and denominator.
    pub fn subst_monomial(&self, m: &crate::freegroup::Sl2zMatrix) -> RatFunc {
        RatFunc::new(self.num.subst_monomial(m), self.den.subst_monomial(m))
    }

    /// True when the value is free of p and s after reduction. For q-only
    /// pairs this is immediate; mixed representations fall back to an
    /// exact-division probe.
    pub fn is_ps_free(&self) -> bool {
        if self.is_q_only() {
            return true;
        }
        match self.num.divide_exact(&self.den) {
            Some(q) => q.is_q_only(),
            None => false,
        }
    }
}

/// Monic univariate gcd for q-only Laurent polynomials, computed on the
/// doubled Q-exponent as the polynomial variable.
fn q_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = to_dense_q(a);
    let mut y = to_dense_q(b);
    while !y.1.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    // Make monic.
    if let Some(lead) = x.1.last() {
        let inv = lead.inv();
        for c in x.1.iter_mut() {
            *c = &*c * &inv;
        }
    }
    from_dense_q(&x)
}

type DenseQ = (i64, Vec<GaussRat>); // (offset of x^0 in doubled exponent, coefficients)

fn to_dense_q(p: &LaurentPoly) -> DenseQ {
    if p.is_zero() {
        return (0, Vec::new());
    }
    let min = p.min_exponents().unwrap().q;
    let max = p.max_exponents().unwrap().q;
    let mut coeffs = vec![GaussRat::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[(e.q - min) as usize] = c.clone();
    }
    (min, coeffs)
}

fn from_dense_q(d: &DenseQ) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (j, c) in d.1.iter().enumerate() {
        out.add_term(c.clone(), Exp3::new(d.0 + j as i64, 0, 0));
    }
    out
}

fn dense_rem(a: &DenseQ, b: &DenseQ) -> DenseQ {
    let mut r = a.1.clone();
    let bl = b.1.last().unwrap();
    while r.len() >= b.1.len() {
        let k = r.len() - b.1.len();
        let c = &r.last().unwrap().clone() / bl;
        for (j, bc) in b.1.iter().enumerate() {
            let t = &c * bc;
            r[k + j] -= &t;
        }
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() < b.1.len() {
            break;
        }
    }
    while r.first().map(|c| c.is_zero()).unwrap_or(false) {
        r.remove(0);
    }
    // Offsets are irrelevant for gcd purposes (monomials are units).
    (0, r)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Common scalar building blocks.
pub mod consts {
    use super::*;

    /// Q^k as a rational function.
    pub fn q_pow(k: i64) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int_terms(&[(1, k, 0, 0)]))
    }

    /// Q^2 - Q^-2.
    pub fn q2_minus_qm2() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int_terms(&[(1, 2, 0, 0), (-1, -2, 0, 0)]))
    }

    /// Q^8 - Q^-8 as a Laurent polynomial (the universal pexp numerator).
    pub fn q8_minus_qm8_poly() -> LaurentPoly {
        LaurentPoly::from_int_terms(&[(1, 8, 0, 0), (-1, -8, 0, 0)])
    }

    /// 1 - Q^4.
    pub fn one_minus_q4() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int_terms(&[(1, 0, 0, 0), (-1, 4, 0, 0)]))
    }

    /// The imaginary unit as a rational function.
    pub fn i() -> RatFunc {
        RatFunc::from_scalar(GaussRat::i())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn q_only_gcd_reduction() {
        // (1 - Q^4) / (1 - Q^2) reduces to (1 + Q^2) / 1
        let r = RatFunc::new(lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]), lp(&[(1, 0, 0, 0), (-1, 2, 0, 0)]));
        assert!(r.den().is_one());
        assert!(r.eq_cross(&RatFunc::from_poly(lp(&[(1, 0, 0, 0), (1, 2, 0, 0)]))));
    }

    #[test]
    fn cross_equality_ignores_form() {
        let a = RatFunc::new(lp(&[(2, 1, 0, 0)]), lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]));
        let b = RatFunc::new(
            lp(&[(2, 1, 0, 0), (2, 3, 0, 0)]),
            lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]).mul(&lp(&[(1, 0, 0, 0), (1, 2, 0, 0)])),
        );
        assert!(a.eq_cross(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(lp(&[(2, 1, 0, 0)]), lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]));
        assert!(a.mul(&a.inv()).is_one());
        assert!(a.sub(&a).is_zero());
        let b = consts::q2_minus_qm2();
        assert!(a.div(&b).mul(&b).eq_cross(&a));
    }

    #[test]
    fn ps_free_detection() {
        let a = consts::q2_minus_qm2();
        assert!(a.is_ps_free());
        let b = RatFunc::new(lp(&[(1, 0, 2, 0)]), lp(&[(1, 0, 0, 0)]));
        assert!(!b.is_ps_free());
        // (p^2 - p^2 Q^4) / (p^2) is secretly Q-only
        let c = RatFunc::new(lp(&[(1, 0, 2, 0), (-1, 4, 2, 0)]), lp(&[(1, 0, 2, 0)]));
        assert!(c.is_ps_free());
    }
}
