//! Formal fractions (mu : Delta) over the localized module: a Laurent
//! numerator with no Q-degree-0 part and a multiset of denominator factors
//! 1 - p^a s^b encoded as nonzero integer vectors (a, b).
//!
//! Two fractions are equal exactly when their cross-multiplied numerators
//! agree. On top of that, [`FormalFraction::canonicalize`] computes a unique
//! reduced representative per localization class:
//! 1. every denominator vector is oriented (a > 0, or a = 0 and b > 0),
//!    compensating the numerator by -p^-a s^-b per flipped factor;
//! 2. denominator factors are split over the basis B_d (B_1 = 1 - x,
//!    B_d = d-th cyclotomic polynomial) per primitive direction, and the
//!    maximal common part with the numerator is cancelled — this is a full
//!    gcd in the Laurent UFD, so the reduced data depends only on the class;
//! 3. the remaining basis factors are reassembled into factors 1 - x^k
//!    deterministically, compensating the numerator for any basis factor
//!    the reassembly introduces;
//! 4. the numerator is split by division with remainder against the full
//!    denominator product, so classes with a polynomial component get that
//!    component returned separately (the ring layer folds it into rational
//!    prefactors).

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::{cyclotomic_at, LaurentPoly};
use crate::scalar::GaussRat;
use crate::freegroup::Sl2zMatrix;
use crate::laurent::Exp3;

/// A denominator vector (a, b) for the factor 1 - p^a s^b.
pub type DenVec = (i64, i64);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalFraction {
    num: LaurentPoly,
    den: Vec<DenVec>,
}

/// Result of canonicalization: the class equals `poly + atom` where `atom`
/// is a fully reduced fraction (or absent when the class is polynomial).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Canonicalized {
    pub poly: LaurentPoly,
    pub atom: Option<FormalFraction>,
}

impl FormalFraction {
    /// A fraction with the given numerator and denominator vectors.
    /// Vectors must be nonzero; the numerator must lie in the module M
    /// (no Q-degree-0 terms).
    pub fn new(num: LaurentPoly, den: Vec<DenVec>) -> Self {
        assert!(den.iter().all(|v| *v != (0, 0)), "zero denominator vector");
        assert!(
            num.has_no_q_constant_part(),
            "numerator has a Q-degree-0 term: {}",
            num
        );
        FormalFraction { num, den }
    }

    /// Internal constructor without the module-M check (used by shifts and
    /// arithmetic, which preserve the invariant).
    fn raw(num: LaurentPoly, den: Vec<DenVec>) -> Self {
        FormalFraction { num, den }
    }

    /// Constructor admitting Q-degree-0 numerator terms, for the Laumon
    /// eigenfunctions whose printed arguments sit just outside the module M.
    pub fn new_unrestricted(num: LaurentPoly, den: Vec<DenVec>) -> Self {
        assert!(den.iter().all(|v| *v != (0, 0)), "zero denominator vector");
        FormalFraction { num, den }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        FormalFraction::new(num, Vec::new())
    }

    pub fn zero() -> Self {
        FormalFraction { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[DenVec] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The denominator as an expanded Laurent polynomial.
    pub fn den_product(&self) -> LaurentPoly {
        den_product(&self.den)
    }

    pub fn neg(&self) -> FormalFraction {
        FormalFraction::raw(self.num.neg(), self.den.clone())
    }

    /// Module addition: brings both fractions to the least common
    /// denominator multiset (after orientation) and adds numerators.
    pub fn add(&self, o: &FormalFraction) -> FormalFraction {
        let (n1, d1) = orient(&self.num, &self.den);
        let (n2, d2) = orient(&o.num, &o.den);
        let m1 = count(&d1);
        let m2 = count(&d2);
        let mut union = m1.clone();
        for (v, c) in &m2 {
            let e = union.entry(*v).or_insert(0);
            *e = (*e).max(*c);
        }
        let scale = |num: &LaurentPoly, have: &BTreeMap<DenVec, u32>| -> LaurentPoly {
            let mut out = num.clone();
            for (v, c) in &union {
                let missing = c - have.get(v).copied().unwrap_or(0);
                for _ in 0..missing {
                    out = out.mul(&LaurentPoly::one_minus_ps(v.0, v.1));
                }
            }
            out
        };
        let num = scale(&n1, &m1).add(&scale(&n2, &m2));
        let den = union.iter().flat_map(|(v, c)| std::iter::repeat(*v).take(*c as usize)).collect();
        FormalFraction::raw(num, den)
    }

    pub fn sub(&self, o: &FormalFraction) -> FormalFraction {
        self.add(&o.neg())
    }

    /// Scales the numerator by an integer-like constant.
    pub fn scale(&self, c: &GaussRat) -> FormalFraction {
        FormalFraction::raw(self.num.scale(c), self.den.clone())
    }

    /// Equality in the localized module, by cross-multiplication.
    pub fn equal(&self, o: &FormalFraction) -> bool {
        self.num.mul(&den_product(&o.den)) == o.num.mul(&den_product(&self.den))
    }

    /// Applies the SL(2,Z) substitution to numerator and denominator
    /// vectors. The result is not canonicalized.
    pub fn subst(&self, m: &Sl2zMatrix) -> FormalFraction {
        FormalFraction::raw(
            self.num.subst_monomial(m),
            self.den.iter().map(|v| m.apply_vector(*v)).collect(),
        )
    }

    /// The unique reduced representative of the localization class,
    /// together with its split-off polynomial part.
    pub fn canonicalize(&self) -> Canonicalized {
        if self.num.is_zero() {
            return Canonicalized { poly: LaurentPoly::zero(), atom: None };
        }
        let (mut num, den) = orient(&self.num, &self.den);

        // Cyclotomic exponent map per primitive direction.
        let mut dirs: BTreeMap<DenVec, BTreeMap<u32, u32>> = BTreeMap::new();
        for (a, b) in den {
            let g = gcd(a.unsigned_abs(), b.unsigned_abs()) as i64;
            let dir = (a / g, b / g);
            let m = dirs.entry(dir).or_default();
            for d in 1..=(g as u32) {
                if g as u32 % d == 0 {
                    *m.entry(d).or_insert(0) += 1;
                }
            }
        }

        // Cancel the numerator/denominator gcd over the basis.
        for (dir, m) in dirs.iter_mut() {
            for (d, mult) in m.iter_mut() {
                let phi = cyclotomic_at(*d, dir.0, dir.1);
                while *mult > 0 {
                    match num.divide_exact(&phi) {
                        Some(q) => {
                            num = q;
                            *mult -= 1;
                        }
                        None => break,
                    }
                }
            }
        }

        // Reassemble residual basis factors into 1 - x^k vectors.
        let mut vectors: Vec<DenVec> = Vec::new();
        for (dir, m) in dirs.iter() {
            let mut m: BTreeMap<u32, u32> = m.iter().filter(|(_, c)| **c > 0).map(|(d, c)| (*d, *c)).collect();
            while let Some((&d, _)) = m.iter().next_back() {
                vectors.push((dir.0 * d as i64, dir.1 * d as i64));
                for c in 1..=d {
                    if d % c != 0 {
                        continue;
                    }
                    match m.get_mut(&c) {
                        Some(cnt) if *cnt > 0 => {
                            *cnt -= 1;
                            if *cnt == 0 {
                                m.remove(&c);
                            }
                        }
                        _ => {
                            num = num.mul(&cyclotomic_at(c, dir.0, dir.1));
                        }
                    }
                }
            }
        }
        vectors.sort();

        if vectors.is_empty() {
            return Canonicalized { poly: num, atom: None };
        }

        // Split off the polynomial component when it folds rationally.
        let dprod = den_product(&vectors);
        let (quot, rem) = num.divide_rem(&dprod);
        if !quot.is_zero() && quot.has_integer_coeffs() {
            Canonicalized { poly: quot, atom: Some(FormalFraction::raw(rem, vectors)) }
        } else {
            Canonicalized { poly: LaurentPoly::zero(), atom: Some(FormalFraction::raw(num, vectors)) }
        }
    }

    /// Canonical reduced fraction including any polynomial part folded back
    /// over the common denominator (the spec-level `fraction_canonicalize`).
    pub fn canonical_form(&self) -> FormalFraction {
        let c = self.canonicalize();
        match c.atom {
            None => FormalFraction::raw(c.poly, Vec::new()),
            Some(atom) => {
                if c.poly.is_zero() {
                    atom
                } else {
                    let num = atom.num.add(&c.poly.mul(&den_product(&atom.den)));
                    FormalFraction::raw(num, atom.den)
                }
            }
        }
    }
}

fn count(den: &[DenVec]) -> BTreeMap<DenVec, u32> {
    let mut m = BTreeMap::new();
    for v in den {
        *m.entry(*v).or_insert(0) += 1;
    }
    m
}

fn den_product(den: &[DenVec]) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (a, b) in den {
        out = out.mul(&LaurentPoly::one_minus_ps(*a, *b));
    }
    out
}

/// Enforces the orientation convention on each vector, compensating the
/// numerator: 1/(1 - p^a s^b) = (-p^-a s^-b)/(1 - p^-a s^-b).
fn orient(num: &LaurentPoly, den: &[DenVec]) -> (LaurentPoly, Vec<DenVec>) {
    let mut num = num.clone();
    let mut out = Vec::with_capacity(den.len());
    for &(a, b) in den {
        if a < 0 || (a == 0 && b < 0) {
            num = num.mul_monomial(&GaussRat::from_int(-1), Exp3::whole(0, -a, -b));
            out.push((-a, -b));
        } else {
            out.push((a, b));
        }
    }
    out.sort();
    (num, out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for FormalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.num)?;
        for (a, b) in &self.den {
            write!(f, " : {}", LaurentPoly::one_minus_ps(*a, *b))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FormalFraction {
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
    fn canonicalize_paper_example() {
        // (Q p^-1 (1 - p^-2) : 1 - p^-4) -> (Q p (1 - p^2) : 1 - p^4)
        let f = FormalFraction::new(lp(&[(1, 1, -1, 0), (-1, 1, -3, 0)]), vec![(-4, 0)]);
        let c = f.canonical_form();
        assert_eq!(c.num(), &lp(&[(1, 1, 1, 0), (-1, 1, 3, 0)]));
        assert_eq!(c.den(), &[(4, 0)]);
        assert!(f.equal(&c));
    }

    #[test]
    fn canonicalize_cancels_shared_factor() {
        // (mu (1 - p s) : 1 - p s : 1 - s^2) -> (mu : 1 - s^2)
        let mu = lp(&[(1, 1, 0, 0), (2, -1, 1, 1)]);
        let f = FormalFraction::new(mu.mul(&LaurentPoly::one_minus_ps(1, 1)), vec![(1, 1), (0, 2)]);
        let c = f.canonical_form();
        assert_eq!(c.num(), &mu);
        assert_eq!(c.den(), &[(0, 2)]);
    }

    #[test]
    fn canonicalize_zero() {
        let f = FormalFraction::new(LaurentPoly::zero(), vec![(1, 0), (0, 2)]);
        let c = f.canonical_form();
        assert!(c.num().is_zero());
        assert!(c.den().is_empty());
    }

    #[test]
    fn canonical_is_class_invariant() {
        // mu / (1 - p) and mu (1 + p) / (1 - p^2) are the same class.
        let mu = lp(&[(1, 1, 0, 0), (1, 2, 0, 1)]);
        let f1 = FormalFraction::new(mu.clone(), vec![(1, 0)]);
        let f2 = FormalFraction::new(
            mu.mul(&lp(&[(1, 0, 0, 0), (1, 0, 1, 0)])),
            vec![(2, 0)],
        );
        assert!(f1.equal(&f2));
        assert_eq!(f1.canonicalize(), f2.canonicalize());
    }

    #[test]
    fn equality_vs_canonical_form() {
        let f = FormalFraction::new(lp(&[(1, 1, 1, 1), (-1, 1, 3, 1)]), vec![(2, 0), (0, 2), (2, 0)]);
        let c = f.canonical_form();
        assert!(f.equal(&c));
        // (Qp : 1-s) vs (Qp : 1-s^2) differ
        let a = FormalFraction::new(lp(&[(1, 1, 1, 0)]), vec![(0, 1)]);
        let b = FormalFraction::new(lp(&[(1, 1, 1, 0)]), vec![(0, 2)]);
        assert!(!a.equal(&b));
    }

    #[test]
    fn addition_common_denominator() {
        // Qps/(1-p^2) + Qp^3 s/(1-p^2) = Qps(1+p^2)/(1-p^2)
        let f1 = FormalFraction::new(lp(&[(1, 1, 1, 1)]), vec![(2, 0)]);
        let f2 = FormalFraction::new(lp(&[(1, 1, 3, 1)]), vec![(2, 0)]);
        let sum = f1.add(&f2);
        assert_eq!(sum.den(), &[(2, 0)]);
        assert_eq!(sum.num(), &lp(&[(1, 1, 1, 1), (1, 1, 3, 1)]));
    }

    #[test]
    fn addition_cancellation_to_polynomial() {
        // Qps/(1-p^2) - Qp^3 s/(1-p^2) = Qps(1-p^2)/(1-p^2) = Qps
        let f1 = FormalFraction::new(lp(&[(1, 1, 1, 1)]), vec![(2, 0)]);
        let f2 = FormalFraction::new(lp(&[(1, 1, 3, 1)]), vec![(2, 0)]);
        let c = f1.sub(&f2).canonicalize();
        assert_eq!(c.poly, lp(&[(1, 1, 1, 1)]));
        assert!(c.atom.is_none());
    }

    #[test]
    fn polynomial_split() {
        // (Q(1-s^2) + Qs) / (1-s^2) = Q + Qs/(1-s^2)
        let num = lp(&[(1, 1, 0, 0)]).mul(&LaurentPoly::one_minus_ps(0, 2)).add(&lp(&[(1, 1, 0, 1)]));
        let f = FormalFraction::new(num, vec![(0, 2)]);
        let c = f.canonicalize();
        assert_eq!(c.poly, lp(&[(1, 1, 0, 0)]));
        let atom = c.atom.unwrap();
        assert_eq!(atom.num(), &lp(&[(1, 1, 0, 1)]));
        assert_eq!(atom.den(), &[(0, 2)]);
    }

    #[test]
    fn subst_then_canonicalize() {
        // Q p s / (1 - s^2) under p -> ps: numerator Q p s^2.
        let m = Sl2zMatrix::from_images((1, 1), (0, 1));
        let f = FormalFraction::new(lp(&[(1, 1, 1, 1)]), vec![(0, 2)]);
        let g = f.subst(&m);
        assert_eq!(g.num(), &lp(&[(1, 1, 1, 2)]));
        assert_eq!(g.den(), &[(0, 2)]);
    }

    #[test]
    fn canonical_after_random_add_agrees_with_equal() {
        // canonicalize(f) is equal to f as a class, for assorted fractions.
        let cases = vec![
            FormalFraction::new(lp(&[(1, 1, -2, 3), (2, -1, 0, 0)]), vec![(1, -1), (0, 2)]),
            FormalFraction::new(lp(&[(1, 2, 2, -2)]), vec![(2, -2), (2, -2)]),
            FormalFraction::new(lp(&[(1, 1, 0, 0), (-1, 1, 4, 0)]), vec![(4, 0), (1, 0)]),
        ];
        for f in cases {
            let c = f.canonical_form();
            assert!(f.equal(&c), "canonical form changed the class of {}", f);
        }
    }
}
