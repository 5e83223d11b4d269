//! The ring of pexp-expressions: finite sums of plethystic-exponential
//! atoms weighted by rational-function prefactors.
//!
//! A [`PexpAtom`] is a canonical reduced formal fraction; pexp of a general
//! fraction first canonicalizes, folds any polynomial component into the
//! rational prefactor via pexp(c Q^m p^a s^b : ()) = (1 - Q^m p^a s^b)^-c,
//! and keeps a single atom for the remaining proper part. Multiplication of
//! atoms uses the exponential property pexp(f) pexp(g) = pexp(f + g).

use std::collections::BTreeMap;
use std::fmt;

use crate::fraction::FormalFraction;
use crate::freegroup::Sl2zMatrix;
use crate::laurent::{Exp3, LaurentPoly};
use crate::ratfunc::RatFunc;
use crate::scalar::GaussRat;

/// A plethystic-exponential atom: a canonical reduced fraction with a
/// nonempty denominator. The unit atom (zero fraction) keys the pure
/// rational term of a ring element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PexpAtom {
    fraction: FormalFraction,
}

impl PexpAtom {
    pub fn one() -> Self {
        PexpAtom { fraction: FormalFraction::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.fraction.is_zero()
    }

    pub fn fraction(&self) -> &FormalFraction {
        &self.fraction
    }
}

/// Finite linear combination of pexp atoms over rational-function
/// prefactors; zero prefactors are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<PexpAtom, RatFunc>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RingElement::from_ratfunc(RatFunc::one())
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(PexpAtom::one(), r);
        }
        RingElement { terms }
    }

    pub fn from_int(n: i64) -> Self {
        RingElement::from_ratfunc(RatFunc::from_int(n))
    }

    /// The plethystic exponential of a formal fraction.
    /// Rejects numerators outside the module M (Q-degree-0 terms).
    ///
    /// A literally empty denominator uses the manual convention
    /// (z; ()) = 1/(1 - z), so pexp(c X : ()) = (1 - X)^-c. A nonempty
    /// denominator is evaluated function-faithfully: any polynomial
    /// component of the class folds as pexp(c X prod Delta : Delta)
    /// = (1 - X)^+c, the value obtained by peeling the convergent product
    /// (z; w) = (1 - z)(zw; w). The two conventions differ by inversion on
    /// polynomial classes; ring arithmetic only ever folds through the
    /// function-faithful branch, which keeps symbolic products consistent
    /// with numeric evaluation.
    pub fn pexp(f: &FormalFraction) -> Self {
        assert!(
            f.num().has_no_q_constant_part(),
            "pexp argument has a Q-degree-0 term: {}",
            f.num()
        );
        if f.den().is_empty() {
            return RingElement::from_ratfunc(fold_rational(f.num(), true));
        }
        Self::pexp_class(f)
    }

    /// pexp without the module-M restriction: the Laumon eigenfunctions
    /// carry Q-degree-0 numerator components (still perfectly well-defined
    /// as convergent products), which the strict constructor rejects.
    pub fn pexp_unrestricted(f: &FormalFraction) -> Self {
        if f.den().is_empty() {
            return RingElement::from_ratfunc(fold_rational(f.num(), true));
        }
        Self::pexp_class(f)
    }

    /// pexp of an arbitrary localization class (internal: used by atom
    /// multiplication, where the invariant is maintained by construction).
    fn pexp_class(f: &FormalFraction) -> Self {
        let c = f.canonicalize();
        let pref = fold_rational(&c.poly, false);
        match c.atom {
            None => RingElement::from_ratfunc(pref),
            Some(fraction) => {
                let mut terms = BTreeMap::new();
                terms.insert(PexpAtom { fraction }, pref);
                RingElement { terms }
            }
        }
    }

    pub fn is_zero_symbolic(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&PexpAtom::one()).map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PexpAtom, &RatFunc)> {
        self.terms.iter()
    }

    /// The single (atom, prefactor) pair if this element has one term.
    pub fn as_single_term(&self) -> Option<(&PexpAtom, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The rational prefactor of the unit atom, if this element is purely
    /// rational (zero or a single trivial-atom term).
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        if self.terms.is_empty() {
            return Some(RatFunc::zero());
        }
        if self.terms.len() == 1 {
            if let Some(r) = self.terms.get(&PexpAtom::one()) {
                return Some(r.clone());
            }
        }
        None
    }

    fn add_part(&mut self, atom: PexpAtom, pref: RatFunc) {
        if pref.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(atom) {
            Entry::Vacant(v) => {
                v.insert(pref);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&pref);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (a, r) in o.terms.iter() {
            out.add_part(a.clone(), r.clone());
        }
        out
    }

    pub fn neg(&self) -> RingElement {
        RingElement { terms: self.terms.iter().map(|(a, r)| (a.clone(), r.neg())).collect() }
    }

    pub fn sub(&self, o: &RingElement) -> RingElement {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &RatFunc) -> RingElement {
        if r.is_zero() {
            return RingElement::zero();
        }
        RingElement { terms: self.terms.iter().map(|(a, p)| (a.clone(), p.mul(r))).collect() }
    }

    pub fn scale_int(&self, n: i64) -> RingElement {
        self.scale(&RatFunc::from_int(n))
    }

    pub fn mul(&self, o: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (a1, r1) in self.terms.iter() {
            for (a2, r2) in o.terms.iter() {
                let pref = r1.mul(r2);
                if a1.is_one() && a2.is_one() {
                    out.add_part(PexpAtom::one(), pref);
                    continue;
                }
                let product = if a1.is_one() {
                    RingElement::from_single(a2.clone(), RatFunc::one())
                } else if a2.is_one() {
                    RingElement::from_single(a1.clone(), RatFunc::one())
                } else {
                    Self::pexp_class(&a1.fraction.add(&a2.fraction))
                };
                for (a, r) in product.terms {
                    out.add_part(a, r.mul(&pref));
                }
            }
        }
        out
    }

    fn from_single(atom: PexpAtom, pref: RatFunc) -> RingElement {
        let mut terms = BTreeMap::new();
        terms.insert(atom, pref);
        RingElement { terms }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = RingElement::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies an SL(2,Z) parameter shift: substitution in every atom
    /// fraction (with re-canonicalization) and in every prefactor.
    pub fn shift(&self, m: &Sl2zMatrix) -> RingElement {
        let mut out = RingElement::zero();
        for (a, r) in self.terms.iter() {
            let pref = r.subst_monomial(m);
            if a.is_one() {
                out.add_part(PexpAtom::one(), pref);
                continue;
            }
            let shifted = Self::pexp_class(&a.fraction.subst(m));
            for (a2, r2) in shifted.terms {
                out.add_part(a2, r2.mul(&pref));
            }
        }
        out
    }

    /// Multiplicative inverse of a single-term element.
    pub fn inverse_unit(&self) -> Result<RingElement, NotAUnit> {
        let (atom, pref) = self.as_single_term().ok_or(NotAUnit)?;
        if pref.is_zero() {
            return Err(NotAUnit);
        }
        let inv_pref = pref.inv();
        if atom.is_one() {
            return Ok(RingElement::from_ratfunc(inv_pref));
        }
        Ok(Self::pexp_class(&atom.fraction.neg()).scale(&inv_pref))
    }

    /// Division by a single-term unit.
    pub fn div_unit(&self, unit: &RingElement) -> Result<RingElement, NotAUnit> {
        Ok(self.mul(&unit.inverse_unit()?))
    }

    /// True when the element is manifestly free of p and s: only the unit
    /// atom with a p,s-free prefactor (atoms with proper denominators always
    /// depend on the elliptic parameters).
    pub fn is_ps_free(&self) -> bool {
        self.terms.iter().all(|(a, r)| a.is_one() && r.is_ps_free())
    }
}

/// Error for `inverse_unit` on elements with zero or several terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotAUnit;

/// Folds an integer-coefficient polynomial class into a rational function:
/// prod over terms c X of (1 - X)^+c (function-faithful peel), or of
/// (1 - X)^-c when `empty_convention` is set (the manual (z; ()) = 1/(1-z)
/// rule for literally empty denominators).
fn fold_rational(poly: &LaurentPoly, empty_convention: bool) -> RatFunc {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for (e, c) in poly.terms() {
        let c = c
            .to_i64()
            .unwrap_or_else(|| panic!("pexp numerator coefficient {} is not an integer", c));
        let into_num = (c > 0) != empty_convention;
        let one_minus = LaurentPoly::one().sub(&LaurentPoly::monomial(GaussRat::one(), *e));
        for _ in 0..c.unsigned_abs() {
            if into_num {
                num = num.mul(&one_minus);
            } else {
                den = den.mul(&one_minus);
            }
        }
    }
    RatFunc::new(num, den)
}

/// Convenience: pexp of (numerator, denominator vectors).
pub fn pexp(num: LaurentPoly, den: Vec<(i64, i64)>) -> RingElement {
    RingElement::pexp(&FormalFraction::new(num, den))
}

/// Convenience: a monomial numerator c Q^q p^p s^s (whole exponents).
pub fn mono(c: i64, q: i64, p: i64, s: i64) -> LaurentPoly {
    LaurentPoly::monomial(GaussRat::from_int(c), Exp3::whole(q, p, s))
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, r) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{}", r)?;
            } else if r.is_one() {
                write!(f, "pexp{}", a.fraction)?;
            } else {
                write!(f, "[{}]*pexp{}", r, a.fraction)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn pexp_zero_is_one() {
        let f = FormalFraction::new(LaurentPoly::zero(), vec![(0, 2)]);
        assert!(RingElement::pexp(&f).is_one());
    }

    #[test]
    fn pexp_rational_folding() {
        // pexp(Q^8 - Q^-8 : ()) = (1 - Q^-8)/(1 - Q^8) = -Q^-8
        let f = FormalFraction::from_poly(lp(&[(1, 8, 0, 0), (-1, -8, 0, 0)]));
        let x = RingElement::pexp(&f);
        let expected = RingElement::from_ratfunc(RatFunc::from_poly(lp(&[(-1, -8, 0, 0)])));
        assert_eq!(x, expected);
        // pexp(2(Q^8 - Q^-8)) = Q^-16
        let f2 = FormalFraction::from_poly(lp(&[(2, 8, 0, 0), (-2, -8, 0, 0)]));
        let x2 = RingElement::pexp(&f2);
        assert_eq!(x2, RingElement::from_ratfunc(RatFunc::from_poly(lp(&[(1, -16, 0, 0)]))));
    }

    #[test]
    fn pexp_paper_example_atom() {
        // pexp(Q/(p + p^-1)) -> atom with canonical fraction (Qp(1-p^2) : 1-p^4)
        let f = FormalFraction::new(lp(&[(1, 1, -1, 0), (-1, 1, -3, 0)]), vec![(-4, 0)]);
        let x = RingElement::pexp(&f);
        let (atom, pref) = x.as_single_term().unwrap();
        assert!(pref.is_one());
        assert_eq!(atom.fraction().num(), &lp(&[(1, 1, 1, 0), (-1, 1, 3, 0)]));
        assert_eq!(atom.fraction().den(), &[(4, 0)]);
    }

    #[test]
    fn exponential_property() {
        let f = FormalFraction::new(lp(&[(1, 1, 1, 1)]), vec![(2, 0), (0, 2)]);
        let g = FormalFraction::new(lp(&[(1, 2, 0, 1), (-1, 2, 1, 0)]), vec![(1, 1)]);
        let lhs = RingElement::pexp(&f.add(&g));
        let rhs = RingElement::pexp(&f).mul(&RingElement::pexp(&g));
        assert_eq!(lhs, rhs);
        // pexp(f) * pexp(-f) = 1
        assert!(RingElement::pexp(&f).mul(&RingElement::pexp(&f.neg())).is_one());
    }

    #[test]
    fn cancellation_rule() {
        // pexp(mu (1 - p^a s^b) : (1 - p^a s^b), Delta) = pexp(mu : Delta)
        let mu = lp(&[(1, 1, 0, 0), (3, -2, 1, -1)]);
        let with = FormalFraction::new(
            mu.mul(&LaurentPoly::one_minus_ps(1, -2)),
            vec![(1, -2), (0, 2)],
        );
        let without = FormalFraction::new(mu, vec![(0, 2)]);
        assert_eq!(RingElement::pexp(&with), RingElement::pexp(&without));
    }

    #[test]
    fn unit_inverse() {
        // inverse of -iQ pexp(f) is (1/(-iQ)) pexp(-f)
        let f = FormalFraction::new(lp(&[(1, 1, 1, 0)]), vec![(0, 2)]);
        let pref = RatFunc::from_poly(LaurentPoly::monomial(-GaussRat::i(), Exp3::whole(1, 0, 0)));
        let x = RingElement::pexp(&f).scale(&pref);
        let inv = x.inverse_unit().unwrap();
        assert!(x.mul(&inv).is_one());
        assert_eq!(RingElement::one().inverse_unit().unwrap(), RingElement::one());
        let two_terms = RingElement::one().add(&RingElement::pexp(&f));
        assert_eq!(two_terms.inverse_unit(), Err(NotAUnit));
    }

    #[test]
    fn product_folds_to_rational() {
        // pexp(Qps : 1-p^2) * pexp(-Qp^3 s : 1-p^2) collapses to the class
        // Qps(1-p^2)/(1-p^2) = Qps; the function value is the product peel
        // (Qps; p^2)/(Qp^3 s; p^2) = 1 - Qps.
        let x = pexp(lp(&[(1, 1, 1, 1)]), vec![(2, 0)]);
        let y = pexp(lp(&[(-1, 1, 3, 1)]), vec![(2, 0)]);
        let prod = x.mul(&y);
        let expected = RingElement::from_ratfunc(RatFunc::from_poly(
            LaurentPoly::one().sub(&lp(&[(1, 1, 1, 1)])),
        ));
        assert_eq!(prod, expected);
    }

    #[test]
    fn empty_denominator_uses_manual_convention() {
        // A literal empty denominator folds with (z; ()) = 1/(1-z), so
        // pexp(Qps : ()) = 1/(1 - Qps), the inverse of the cancelled form.
        let x = RingElement::pexp(&FormalFraction::from_poly(lp(&[(1, 1, 1, 1)])));
        let expected = RingElement::from_ratfunc(RatFunc::new(
            LaurentPoly::one(),
            LaurentPoly::one().sub(&lp(&[(1, 1, 1, 1)])),
        ));
        assert_eq!(x, expected);
    }

    #[test]
    fn product_scalars_cancel() {
        // (2Q/(1-Q^4)) pexp(f) * ((1-Q^4)/(2Q)) pexp(-f) = 1
        let f = FormalFraction::new(lp(&[(1, 1, 1, 1)]), vec![(0, 2)]);
        let a = RingElement::pexp(&f).scale(&RatFunc::new(
            lp(&[(2, 1, 0, 0)]),
            lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]),
        ));
        let b = RingElement::pexp(&f.neg()).scale(&RatFunc::new(
            lp(&[(1, 0, 0, 0), (-1, 4, 0, 0)]),
            lp(&[(2, 1, 0, 0)]),
        ));
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn shift_examples() {
        // pexp(Qps : 1-s^2) under (p,s) -> (ps,s) is pexp(Qps^2 : 1-s^2)
        let m = Sl2zMatrix::from_images((1, 1), (0, 1));
        let x = pexp(lp(&[(1, 1, 1, 1)]), vec![(0, 2)]);
        let y = pexp(lp(&[(1, 1, 1, 2)]), vec![(0, 2)]);
        assert_eq!(x.shift(&m), y);
        // identity shift
        assert_eq!(x.shift(&Sl2zMatrix::identity()), x);
    }

    #[test]
    fn shift_is_ring_homomorphism() {
        let m = Sl2zMatrix::from_images((1, -1), (0, 1));
        let x = pexp(lp(&[(1, 1, 1, 1)]), vec![(2, 0)]).add(&RingElement::from_int(3));
        let y = pexp(lp(&[(-1, 2, 0, 1)]), vec![(2, -2)]);
        assert_eq!(x.mul(&y).shift(&m), x.shift(&m).mul(&y.shift(&m)));
    }

    #[test]
    fn shift_composition_contravariance_matches_matrix_product() {
        // shift by n1 then n2 equals shift by n2 * n1
        let n1 = Sl2zMatrix::from_images((0, 1), (-1, 0));
        let n2 = Sl2zMatrix::from_images((1, 1), (0, 1));
        let x = pexp(lp(&[(1, 1, 2, -1)]), vec![(1, -1), (0, 2)]);
        assert_eq!(x.shift(&n1).shift(&n2), x.shift(&n2.mul(&n1)));
    }

    #[test]
    fn ps_free_detection() {
        assert!(RingElement::from_int(7).is_ps_free());
        let x = pexp(lp(&[(1, 1, 1, 0)]), vec![(0, 2)]);
        assert!(!x.is_ps_free());
        let q_atom = pexp(lp(&[(1, 8, 0, 0)]), vec![(0, 2)]);
        assert!(!q_atom.is_ps_free());
    }
}
