//! Sparse Laurent polynomials in (Q, p, s) with Gaussian-rational
//! coefficients on the half-integer exponent lattice.
//!
//! Exponents live in (1/2)Z and are stored doubled, so the lattice is closed
//! under the monomial substitutions of the engine and under the half-power
//! specializations used by the Laumon character. Provided here:
//! - [`LaurentPoly`]: the sparse polynomial itself with ring arithmetic
//! - [`LaurentPoly::subst_monomial`]: SL(2,Z) monomial substitution on (p, s)
//! - [`LaurentPoly::divide_exact`] / [`LaurentPoly::divide_rem`]: exact and
//!   remaindered division by a single divisor
//! - [`cyclotomic_factor`] / [`cyclotomic_at`]: the factor basis B_d with
//!   1 - x^k = prod_{d | k} B_d(x)

use std::collections::BTreeMap;
use std::fmt;

use crate::freegroup::Sl2zMatrix;
use crate::scalar::GaussRat;

/// Exponent triple (e_Q, e_p, e_s), each entry twice the actual exponent.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exp3 {
    pub q: i64,
    pub p: i64,
    pub s: i64,
}

impl Exp3 {
    pub fn new(q: i64, p: i64, s: i64) -> Self {
        Exp3 { q, p, s }
    }

    /// Exponents given in whole units (stored doubled).
    pub fn whole(q: i64, p: i64, s: i64) -> Self {
        Exp3 { q: 2 * q, p: 2 * p, s: 2 * s }
    }

    pub fn add(self, o: Exp3) -> Self {
        Exp3 { q: self.q + o.q, p: self.p + o.p, s: self.s + o.s }
    }

    pub fn sub(self, o: Exp3) -> Self {
        Exp3 { q: self.q - o.q, p: self.p - o.p, s: self.s - o.s }
    }

    pub fn neg(self) -> Self {
        Exp3 { q: -self.q, p: -self.p, s: -self.s }
    }

    fn divides(self, other: Exp3) -> bool {
        self.q <= other.q && self.p <= other.p && self.s <= other.s
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp3, GaussRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(GaussRat::one(), Exp3::new(0, 0, 0))
    }

    pub fn monomial(c: GaussRat, e: Exp3) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from (coefficient, whole exponents) terms.
    pub fn from_terms(terms: &[(GaussRat, i64, i64, i64)]) -> Self {
        let mut out = LaurentPoly::zero();
        for (c, q, p, s) in terms {
            out.add_term(c.clone(), Exp3::whole(*q, *p, *s));
        }
        out
    }

    /// Builds a polynomial from integer (coefficient, whole exponents) terms.
    pub fn from_int_terms(terms: &[(i64, i64, i64, i64)]) -> Self {
        let mut out = LaurentPoly::zero();
        for (c, q, p, s) in terms {
            out.add_term(GaussRat::from_int(*c), Exp3::whole(*q, *p, *s));
        }
        out
    }

    /// The binomial 1 - p^a s^b for an integer vector (a, b).
    pub fn one_minus_ps(a: i64, b: i64) -> Self {
        let mut out = LaurentPoly::one();
        out.add_term(GaussRat::from_int(-1), Exp3::whole(0, a, b));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Exp3::new(0, 0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp3) -> GaussRat {
        self.terms.get(&e).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// The single (exponent, coefficient) pair if this is a monomial.
    pub fn as_monomial(&self) -> Option<(Exp3, GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
        } else {
            None
        }
    }

    /// True if every term has zero exponents in p and s.
    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|e| e.p == 0 && e.s == 0)
    }

    /// True if every term has nonzero Q-exponent (membership in the module M).
    pub fn has_no_q_constant_part(&self) -> bool {
        self.terms.keys().all(|e| e.q != 0)
    }

    /// True if every coefficient is a rational integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_rational_integer())
    }

    pub fn add_term(&mut self, c: GaussRat, e: Exp3) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms.iter() {
            out.add_term(c.clone(), *e);
        }
        out
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms.iter() {
            out.add_term(-c, *e);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in o.terms.iter() {
                out.add_term(c1 * c2, e1.add(*e2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, c: &GaussRat, e: Exp3) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            out.add_term(c1 * c, e1.add(e));
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term in the lexicographic order on (q, p, s).
    pub fn leading_term(&self) -> Option<(Exp3, &GaussRat)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum of all exponents (the monomial corner).
    pub fn min_exponents(&self) -> Option<Exp3> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| Exp3 { q: m.q.min(e.q), p: m.p.min(e.p), s: m.s.min(e.s) }))
    }

    /// Componentwise maximum of all exponents.
    pub fn max_exponents(&self) -> Option<Exp3> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| Exp3 { q: m.q.max(e.q), p: m.p.max(e.p), s: m.s.max(e.s) }))
    }

    /// Applies the monomial substitution on (p, s) encoded by `m`;
    /// Q-exponents are untouched.
    pub fn subst_monomial(&self, m: &Sl2zMatrix) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms.iter() {
            let (p2, s2) = m.apply_exponents(e.p, e.s);
            out.add_term(c.clone(), Exp3 { q: e.q, p: p2, s: s2 });
        }
        out
    }

    /// Exact division: returns h with self = g * h, or None.
    pub fn divide_exact(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (quot, rem) = self.divide_rem(g);
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Division with remainder by a single divisor: self = g * quot + rem,
    /// where no term of rem is entrywise-divisible by the leading term of
    /// the origin-shifted divisor. Both polynomials are first shifted so
    /// their supports sit in the positive octant, making this the standard
    /// single-divisor multivariate division; the (quot, rem) pair is then
    /// unique for the fixed lexicographic order, so rem can serve as a
    /// canonical representative modulo g.
    pub fn divide_rem(&self, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let fmin = self.min_exponents().unwrap();
        let gmin = g.min_exponents().unwrap();
        let fsh = self.mul_monomial(&GaussRat::one(), fmin.neg());
        let gsh = g.mul_monomial(&GaussRat::one(), gmin.neg());
        let (glead_e, glead_c) = {
            let (e, c) = gsh.leading_term().unwrap();
            (e, c.clone())
        };
        let mut rest = fsh;
        let mut quot = LaurentPoly::zero();
        let mut rem = LaurentPoly::zero();
        while let Some((e, c)) = rest.leading_term().map(|(e, c)| (e, c.clone())) {
            if glead_e.divides(e) {
                let t = e.sub(glead_e);
                let tc = &c / &glead_c;
                quot.add_term(tc.clone(), t);
                rest = rest.sub(&gsh.mul_monomial(&tc, t));
            } else {
                rest.terms.remove(&e);
                rem.add_term(c, e);
            }
        }
        (
            quot.mul_monomial(&GaussRat::one(), fmin.sub(gmin)),
            rem.mul_monomial(&GaussRat::one(), fmin),
        )
    }
}

/// The factor B_d(x) with 1 - x^k = prod over d | k of B_d(x):
/// B_1 = 1 - x and B_d is the d-th cyclotomic polynomial for d >= 2.
/// Returned as dense coefficients of x^0, x^1, ...
pub fn cyclotomic_factor(d: u32) -> Vec<i64> {
    assert!(d >= 1);
    if d == 1 {
        return vec![1, -1];
    }
    // x^d - 1 = (x - 1) * prod_{1 < c | d, c < d} Phi_c(x) * Phi_d(x).
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for c in 2..d {
        if d % c == 0 {
            num = poly_div_exact_i64(&num, &cyclotomic_factor(c));
        }
    }
    poly_div_exact_i64(&num, &[-1, 1])
}

/// Exact division of dense integer polynomials, used only for the
/// cyclotomic basis where divisions are known exact.
fn poly_div_exact_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut num = num.to_vec();
    let dn = den.len() - 1;
    let lead = *den.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = num[k + dn] / lead;
        quot[k] = c;
        for (j, dj) in den.iter().enumerate() {
            num[k + j] -= c * dj;
        }
    }
    assert!(num.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// B_d evaluated at the monomial x = p^a s^b (primitive integer vector).
pub fn cyclotomic_at(d: u32, a: i64, b: i64) -> LaurentPoly {
    let coeffs = cyclotomic_factor(d);
    let mut out = LaurentPoly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if *c != 0 {
            out.add_term(GaussRat::from_int(*c), Exp3::whole(0, a * j as i64, b * j as i64));
        }
    }
    out
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, sym: &str, doubled: i64) -> fmt::Result {
    if doubled == 0 {
        return Ok(());
    }
    if doubled == 2 {
        return write!(f, "{}", sym);
    }
    if doubled % 2 == 0 {
        write!(f, "{}^{}", sym, doubled / 2)
    } else {
        write!(f, "{}^({}/2)", sym, doubled)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_unit_mono = e.q == 0 && e.p == 0 && e.s == 0;
            if !c.is_one() || is_unit_mono {
                write!(f, "{}", c)?;
                if !is_unit_mono {
                    write!(f, "*")?;
                }
            }
            fmt_exp(f, "Q", e.q)?;
            fmt_exp(f, "p", e.p)?;
            fmt_exp(f, "s", e.s)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
