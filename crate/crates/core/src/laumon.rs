//! The affine Laumon character: partition combinatorics, Nekrasov edge
//! factors, the truncated character sum f^(gl_N-hat), the closed-form
//! eigenfunctions psi_ij, the eigen-relation with O_B^(1), and the
//! specialization conjecture checks in numeric and series mode.
//!
//! Each summand of the character is assembled as a multiset of binomial
//! factors (1 - M)^(+-1) with M a monomial in (Q, p^(1/2), s^(1/2)); exactly
//! equal numerator/denominator factors are cancelled before evaluation, which
//! is what makes the b >= a >= 1 product converge: the surviving factors
//! stabilize once bMax exceeds the partition supports by a few periods. The
//! stabilization monitor re-evaluates at bMax + N and maxBoxes + 1 and
//! reports TruncationUnstable when the result moves by more than the
//! tolerance.

use std::collections::BTreeMap;

use crate::fraction::FormalFraction;
use crate::laurent::{Exp3, LaurentPoly};
use crate::numeric::{ring_eval, CFix, NumError, NumericPolicy, SamplePoint};
use crate::ratfunc::{consts, RatFunc};
use crate::ring::{mono, RingElement};
use crate::scalar::GaussRat;

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The 1-based part lambda_i, zero beyond the length.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1] as i64
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// All partitions of exactly n.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            let top = n.min(max);
            for first in (1..=top).rev() {
                acc.push(first);
                rec(n - first, first, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All N-tuples of partitions with total size at most `max_boxes`.
    pub fn tuples(n: usize, max_boxes: u32) -> Vec<Vec<Partition>> {
        fn rec(slots: usize, budget: u32, acc: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
            if slots == 0 {
                out.push(acc.clone());
                return;
            }
            for size in 0..=budget {
                for p in Partition::all_of(size) {
                    acc.push(p);
                    rec(slots - 1, budget - size, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, max_boxes, &mut Vec::new(), &mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Monomials in (Q, p^(1/2), s^(1/2))
// ---------------------------------------------------------------------------

/// A monomial c Q^(e.q/2) p^(e.p/2) s^(e.s/2) (exponents doubled, as in the
/// Laurent lattice).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Mon {
    pub c: GaussRat,
    pub e: Exp3,
}

impl Mon {
    pub fn one() -> Self {
        Mon { c: GaussRat::one(), e: Exp3::new(0, 0, 0) }
    }

    pub fn new(c: GaussRat, e: Exp3) -> Self {
        Mon { c, e }
    }

    pub fn mul(&self, o: &Mon) -> Mon {
        Mon { c: &self.c * &o.c, e: self.e.add(o.e) }
    }

    pub fn inv(&self) -> Mon {
        Mon { c: self.c.inv(), e: self.e.neg() }
    }

    pub fn pow(&self, k: i64) -> Mon {
        Mon { c: self.c.pow(k), e: Exp3::new(self.e.q * k, self.e.p * k, self.e.s * k) }
    }

    pub fn eval(&self, pt: &SamplePoint) -> CFix {
        CFix::from_gauss(&self.c).mul(&pt.monomial(self.e.q, self.e.p, self.e.s))
    }
}

/// X_k = i Q^(k-2) for k in {1, 2, 3}.
pub fn x_k(k: usize) -> Mon {
    Mon::new(GaussRat::i(), Exp3::whole(k as i64 - 2, 0, 0))
}

// ---------------------------------------------------------------------------
// Nekrasov factors and the character sum
// ---------------------------------------------------------------------------

/// Arguments of the specialized character f^(gl_N-hat).
#[derive(Clone, Debug)]
pub struct LaumonParams {
    pub n: usize,
    pub x: Vec<Mon>,
    pub y: Vec<Mon>,
    /// The p-slot and s-slot values (monomials).
    pub p_slot: Mon,
    pub s_slot: Mon,
    pub q: Mon,
    pub t: Mon,
}

impl LaumonParams {
    /// The conjecture's specialization for a pair (i, j):
    /// f^(gl_2-hat)(X_i p^-1/2, X_i^-1, p^1/2 | X_j s^-1/2, X_j^-1, s^1/2 | Q^4, -Q^-4).
    pub fn conjecture(i: usize, j: usize) -> Self {
        let half_p = Mon::new(GaussRat::one(), Exp3::new(0, 1, 0));
        let half_s = Mon::new(GaussRat::one(), Exp3::new(0, 0, 1));
        LaumonParams {
            n: 2,
            x: vec![x_k(i).mul(&half_p.inv()), x_k(i).inv()],
            y: vec![x_k(j).mul(&half_s.inv()), x_k(j).inv()],
            p_slot: half_p,
            s_slot: half_s,
            q: Mon::new(GaussRat::one(), Exp3::whole(4, 0, 0)),
            t: Mon::new(-GaussRat::one(), Exp3::whole(-4, 0, 0)),
        }
    }

    fn x_at(&self, idx: i64) -> &Mon {
        // 1-based periodic index x_{n+N} = x_n.
        let m = (idx - 1).rem_euclid(self.n as i64) as usize;
        &self.x[m]
    }
}

/// A multiset of binomial factors (1 - M)^mult keyed by the monomial.
pub type FactorSet = BTreeMap<(Exp3, GaussRat), i64>;

fn add_factor(set: &mut FactorSet, m: Mon, mult: i64) {
    let key = (m.e, m.c);
    let e = set.entry(key.clone()).or_insert(0);
    *e += mult;
    if *e == 0 {
        set.remove(&key);
    }
}

/// Accumulates the factors of N^(k)_{lambda,mu}(u | q, s) up to b <= b_max:
/// (1 - u q^(-mu_a + lambda_{b+1}) s^(b-a))   when a - b - k = 0 mod N,
/// (1 - u q^(lambda_a - mu_b) s^(a-b-1))      when a - b + k + 1 = 0 mod N.
#[allow(clippy::too_many_arguments)]
pub fn nek_factors(
    k: i64,
    lambda: &Partition,
    mu: &Partition,
    u: &Mon,
    q: &Mon,
    s: &Mon,
    n: usize,
    b_max: usize,
    mult: i64,
    out: &mut FactorSet,
) {
    let n = n as i64;
    for b in 1..=b_max {
        for a in 1..=b {
            let (ai, bi) = (a as i64, b as i64);
            if (ai - bi - k).rem_euclid(n) == 0 {
                let m = u.mul(&q.pow(lambda.part(b + 1) - mu.part(a))).mul(&s.pow(bi - ai));
                add_factor(out, m, mult);
            }
            if (ai - bi + k + 1).rem_euclid(n) == 0 {
                let m = u.mul(&q.pow(lambda.part(a) - mu.part(b))).mul(&s.pow(ai - bi - 1));
                add_factor(out, m, mult);
            }
        }
    }
}

/// The full factor multiset of one character summand: the product over
/// (i, j) of N^(j-i) ratios, numerator factors with +1 and denominator
/// factors with -1. Each N is normalized by its own vacuum (empty
/// partitions, same u and truncation): the literal infinite product has
/// band factors of unbounded multiplicity, and for i = j the u = 1
/// denominators carry zero-weight factors; dividing by the vacuum makes the
/// empty-tuple summand exactly 1, leaves only factors supported near the
/// partitions (so the truncation stabilizes), and exposes the zero-weight
/// artifacts as literal (1 - 1) keys, which the caller discards.
pub fn term_factors(params: &LaumonParams, tuple: &[Partition], b_max: usize) -> FactorSet {
    let mut out = FactorSet::new();
    let qt = params.q.mul(&params.t.inv());
    let empty = Partition::empty();
    for i in 1..=params.n {
        for j in 1..=params.n {
            let k = j as i64 - i as i64;
            let yji = params.y[j - 1].mul(&params.y[i - 1].inv());
            let num_u = qt.mul(&yji);
            let (lam, mu) = (&tuple[i - 1], &tuple[j - 1]);
            let q = &params.q;
            let s = &params.s_slot;
            nek_factors(k, lam, mu, &num_u, q, s, params.n, b_max, 1, &mut out);
            nek_factors(k, &empty, &empty, &num_u, q, s, params.n, b_max, -1, &mut out);
            nek_factors(k, lam, mu, &yji, q, s, params.n, b_max, -1, &mut out);
            nek_factors(k, &empty, &empty, &yji, q, s, params.n, b_max, 1, &mut out);
        }
    }
    // Zero-weight artifacts: exact 1 - 1 factors from the u = 1 diagonal
    // denominators; the vacuum normalization leaves them with negative
    // multiplicity and they are excluded from the product.
    out.remove(&(Exp3::new(0, 0, 0), GaussRat::one()));
    out
}

/// The weight monomial
/// prod_beta prod_alpha (p t x_{alpha+beta} / (q x_{alpha+beta-1}))^(lambda^(beta)_alpha).
pub fn weight_monomial(params: &LaumonParams, tuple: &[Partition]) -> Mon {
    let mut acc = Mon::one();
    for beta in 1..=params.n {
        let lam = &tuple[beta - 1];
        for alpha in 1..=lam.len() {
            let base = params
                .p_slot
                .mul(&params.t)
                .mul(params.x_at((alpha + beta) as i64))
                .mul(&params.q.mul(params.x_at((alpha + beta - 1) as i64)).inv());
            acc = acc.mul(&base.pow(lam.part(alpha)));
        }
    }
    acc
}

/// Numeric value of one summand at a sample point.
fn term_value(
    params: &LaumonParams,
    tuple: &[Partition],
    b_max: usize,
    pt: &SamplePoint,
) -> Result<CFix, NumError> {
    let factors = term_factors(params, tuple, b_max);
    let mut acc = weight_monomial(params, tuple).eval(pt);
    for ((e, c), mult) in factors {
        let m = Mon::new(c, e).eval(pt);
        let f = CFix::one().sub(&m);
        if f.abs_lt(1e-40) {
            return Err(NumError::SingularPrefactor);
        }
        acc = acc.mul(&f.powi(mult));
    }
    Ok(acc)
}

/// Numeric evaluation of the character sum over tuples with at most
/// `max_boxes` boxes, factors truncated at `b_max`.
pub fn laumon_f_numeric(
    params: &LaumonParams,
    pt: &SamplePoint,
    max_boxes: u32,
    b_max: usize,
) -> Result<CFix, NumError> {
    let mut acc = CFix::zero();
    for tuple in Partition::tuples(params.n, max_boxes) {
        acc = acc.add(&term_value(params, &tuple, b_max, pt)?);
    }
    Ok(acc)
}

/// Result of a stabilized numeric evaluation.
#[derive(Clone, Debug)]
pub struct StabilizedValue {
    pub value: CFix,
    pub drift: f64,
    pub max_boxes: u32,
    pub b_max: usize,
}

/// Evaluates with the stabilization monitor: the result must move by less
/// than `tol` under b_max -> b_max + N and max_boxes -> max_boxes + 1,
/// growing the budget on instability up to a cap.
pub fn laumon_f_stabilized(
    params: &LaumonParams,
    pt: &SamplePoint,
    tol: f64,
    mut max_boxes: u32,
    mut b_max: usize,
) -> Result<StabilizedValue, NumError> {
    for _ in 0..4 {
        let v0 = laumon_f_numeric(params, pt, max_boxes, b_max)?;
        let v1 = laumon_f_numeric(params, pt, max_boxes, b_max + params.n)?;
        let v2 = laumon_f_numeric(params, pt, max_boxes + 1, b_max + params.n)?;
        let drift = v1.sub(&v0).abs_f64().max(v2.sub(&v0).abs_f64());
        if drift < tol {
            return Ok(StabilizedValue { value: v2, drift, max_boxes, b_max });
        }
        max_boxes += 2;
        b_max += 2 * params.n;
    }
    Err(NumError::DidNotConverge)
}

// ---------------------------------------------------------------------------
// The closed-form eigenfunctions psi_ij
// ---------------------------------------------------------------------------

/// psi_ij as an exact ring element, transcribed verbatim.
///
/// The first pexp factors of rows 1 and 3 carry a Q-degree-0 component
/// (e.g. (Q^4-Q^-4)(Q^4+s^2 Q^-4) expands with a 1 - s^2 part), so these
/// atoms live just outside the module M; the unrestricted pexp constructor
/// covers them.
pub fn psi_closed(i: usize, j: usize) -> RingElement {
    assert!((1..=3).contains(&i) && (1..=3).contains(&j));
    if (i, j) == (2, 2) {
        return RingElement::zero();
    }
    let q8 = consts::q8_minus_qm8_poly();
    // pexp((-(s+2) Q^4 + (2s^2+s) Q^-4) p^2 / (1-s^2)), the second factor
    // everywhere except column 2.
    let second_13 = {
        let num = LaurentPoly::from_int_terms(&[
            (-1, 4, 2, 1),
            (-2, 4, 2, 0),
            (2, -4, 2, 2),
            (1, -4, 2, 1),
        ]);
        RingElement::pexp(&FormalFraction::new(num, vec![(0, 2)]))
    };
    let first = match (i, j) {
        (1, 1) | (3, 1) | (1, 3) | (3, 3) => {
            // pexp(-(Q^4-Q^-4)(Q^4 + s^2 Q^-4) p / ((1-p^2)(1-s^2)));
            // the numerator expands to -p (Q^8 - 1 + s^2 - s^2 Q^-8).
            let num = LaurentPoly::from_int_terms(&[
                (-1, 8, 1, 0),
                (1, 0, 1, 0),
                (-1, 0, 1, 2),
                (1, -8, 1, 2),
            ]);
            RingElement::pexp_unrestricted(&FormalFraction::new_unrestricted(
                num,
                vec![(2, 0), (0, 2)],
            ))
        }
        (1, 2) | (3, 2) => {
            // pexp(-(Q^4-Q^-4)(Q^4 + s Q^-4) p / ((1-p^2)(1-s)))
            let num = LaurentPoly::from_int_terms(&[
                (-1, 8, 1, 0),
                (1, 0, 1, 0),
                (-1, 0, 1, 1),
                (1, -8, 1, 1),
            ]);
            RingElement::pexp_unrestricted(&FormalFraction::new_unrestricted(
                num,
                vec![(2, 0), (0, 1)],
            ))
        }
        (2, 1) | (2, 3) => {
            // pexp(-(Q^8-Q^-8) s p / ((1-p^2)(1-s^2)))
            let num = q8.neg().mul(&mono(1, 0, 1, 1));
            RingElement::pexp(&FormalFraction::new(num, vec![(2, 0), (0, 2)]))
        }
        _ => unreachable!(),
    };
    let second = match (i, j) {
        (1, 2) | (3, 2) => {
            // pexp(-2(Q^4 - s Q^-4)(s Q^4 + Q^-4) p^2 / (1-s^2)):
            // numerator -2 p^2 (s Q^8 + 1 - s^2 - s Q^-8)
            let num = LaurentPoly::from_int_terms(&[
                (-2, 8, 2, 1),
                (-2, 0, 2, 0),
                (2, 0, 2, 2),
                (2, -8, 2, 1),
            ]);
            RingElement::pexp_unrestricted(&FormalFraction::new_unrestricted(num, vec![(0, 2)]))
        }
        _ => second_13,
    };
    let qq = crate::freealgebra::qq();
    let pref = match (i, j) {
        (1, 1) | (3, 1) | (2, 1) => RatFunc::one(),
        (1, 2) => consts::i().neg().mul(&qq),
        (3, 2) => consts::i().mul(&qq),
        (2, 3) => qq.mul(&qq).div(&RatFunc::from_int(2)),
        (1, 3) | (3, 3) => qq.mul(&qq).div(&RatFunc::from_int(2)).neg(),
        _ => unreachable!(),
    };
    first.mul(&second).scale(&pref)
}

/// X_k + X_k^-1 as a rational function: 0 for k = 2, -+i(Q - Q^-1) otherwise.
pub fn eigenvalue(k: usize) -> RatFunc {
    let x = x_k(k);
    let xe = RatFunc::from_poly(LaurentPoly::monomial(x.c.clone(), x.e));
    xe.add(&xe.inv())
}

/// The eigen-relation residual sum_j (O_B^(1))_{ij} psi_{kj}
/// - (X_k + X_k^-1) psi_{ki} for one (k, i).
pub fn eigen_relation_residual(k: usize, i: usize) -> RingElement {
    let ob = crate::representation::ob1();
    let mut acc = RingElement::zero();
    for j in 1..=3 {
        acc = acc.add(&ob.entries[i - 1][j - 1].mul(&psi_closed(k, j)));
    }
    acc.sub(&psi_closed(k, i).scale(&eigenvalue(k)))
}

/// Numeric check of the conjecture for a pair (i, j): evaluates the
/// stabilized character sum and psi_ij at the point; returns
/// (f value, psi value, stabilization data).
pub fn conjecture_numeric(
    i: usize,
    j: usize,
    pt: &SamplePoint,
    policy: &NumericPolicy,
    tol: f64,
) -> Result<(CFix, CFix, StabilizedValue), NumError> {
    let params = LaumonParams::conjecture(i, j);
    let stab = laumon_f_stabilized(&params, pt, tol / 10.0, 6, 12)?;
    let psi = ring_eval(&psi_closed(i, j), pt, policy)?;
    Ok((stab.value.clone(), psi, stab))
}

/// Outcome of one conjecture comparison.
#[derive(Clone, Debug)]
pub struct ConjectureOutcome {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
    pub drift: f64,
    pub pass: bool,
}

/// Runs the numeric conjecture check for one pair at the standard sample
/// (|p|, |s|) = (0.1, 0.15) with a seeded Q, plus one extra random point.
///
/// The printed section-6 data is internally inconsistent (see the repo
/// notes: the eigen-relation forces (X_k+X_k^-1)^2 = -(Q^2-Q^-2)^2, the
/// psi-list violates the specialization's column structure at order p, and
/// the bare product formula needs a normalization convention); this check
/// therefore reports honest mismatches for most pairs while the trivial
/// (2,2) pair and the stabilization monitors pass.
pub fn conjecture_check(i: usize, j: usize, policy: &NumericPolicy, tol: f64) -> ConjectureOutcome {
    let pts = conjecture_sample_points(policy);
    let mut residual = 0.0f64;
    let mut drift = 0.0f64;
    for pt in &pts {
        match conjecture_numeric(i, j, pt, policy, tol) {
            Ok((f, psi, stab)) => {
                residual = residual.max(f.sub(&psi).abs_f64());
                drift = drift.max(stab.drift);
            }
            Err(_) => {
                residual = f64::INFINITY;
            }
        }
    }
    ConjectureOutcome { i, j, residual, drift, pass: residual < tol }
}

/// The required sample (p, s) = (0.1, 0.15) with a seeded generic Q, plus
/// one additional random sample from the policy seed.
pub fn conjecture_sample_points(policy: &NumericPolicy) -> Vec<SamplePoint> {
    let fixed = SamplePoint::new(
        CFix::from_f64(1.04, 0.11),
        CFix::from_f64(0.1, 0.0),
        CFix::from_f64(0.15, 0.0),
    );
    let extra = crate::numeric::sample_points(policy, 1).remove(0);
    vec![fixed, extra]
}

/// Eigen-relation check for one k: per-row two-tier zero reports.
pub fn eigen_relation_check(
    k: usize,
    policy: &NumericPolicy,
) -> Result<Vec<crate::numeric::ZeroReport>, NumError> {
    (1..=3)
        .map(|i| crate::numeric::ring_is_zero(&eigen_relation_residual(k, i), policy))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration() {
        assert_eq!(Partition::all_of(0).len(), 1);
        assert_eq!(Partition::all_of(4).len(), 5);
        assert_eq!(Partition::all_of(6).len(), 11);
        // pairs with total <= 2: (0,0); (1,0),(0,1); (2,0)x2,(0,2)x2,(1,1)
        assert_eq!(Partition::tuples(2, 2).len(), 8);
    }

    #[test]
    fn partition_parts_are_one_based() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.part(1), 3);
        assert_eq!(p.part(2), 1);
        assert_eq!(p.part(3), 0);
        assert_eq!(p.size(), 4);
    }

    #[test]
    fn delta_pattern_for_n2_k0() {
        // For N=2, k=0, the first factor family appears iff a = b mod 2:
        // with empty partitions and u = 1 the diagonal contributes (1 - 1)
        // monomials — count them.
        let mut out = FactorSet::new();
        let u = Mon::one();
        let q = Mon::new(GaussRat::one(), Exp3::whole(4, 0, 0));
        let s = Mon::new(GaussRat::one(), Exp3::new(0, 0, 1));
        nek_factors(0, &Partition::empty(), &Partition::empty(), &u, &q, &s, 2, 4, 1, &mut out);
        // (a,b) with a = b (mod 2), b <= 4: (1,1),(2,2),(3,3),(4,4),(1,3),(2,4)
        // giving s^0 four times and s^2 twice.
        let one_key = (Exp3::new(0, 0, 0), GaussRat::one());
        assert_eq!(out.get(&one_key), Some(&4));
        let s2_key = (Exp3::new(0, 0, 2), GaussRat::one());
        assert_eq!(out.get(&s2_key), Some(&2));
    }

    #[test]
    fn weight_monomial_single_box() {
        // For the tuple ((1), {}) with N=2 the weight is p t x_2 / (q x_1).
        let params = LaumonParams::conjecture(1, 1);
        let tuple = vec![Partition::new(vec![1]), Partition::empty()];
        let w = weight_monomial(&params, &tuple);
        let expect = params
            .p_slot
            .mul(&params.t)
            .mul(&params.x[1])
            .mul(&params.q.mul(&params.x[0]).inv());
        assert_eq!(w, expect);
    }

    #[test]
    fn psi_symmetries() {
        assert_eq!(psi_closed(3, 1), psi_closed(1, 1));
        assert_eq!(psi_closed(3, 3), psi_closed(1, 3));
        assert!(psi_closed(2, 2).is_zero_symbolic());
        // psi_23 = (Q^2-Q^-2)^2/2 * psi_21 and psi_32 = -psi_12
        let q22 = crate::freealgebra::qq().mul(&crate::freealgebra::qq());
        let scaled = psi_closed(2, 1).scale(&q22.div(&RatFunc::from_int(2)));
        assert_eq!(psi_closed(2, 3), scaled);
        assert_eq!(psi_closed(3, 2), psi_closed(1, 2).neg());
    }

    #[test]
    fn eigenvalue_values() {
        // X_2 + X_2^-1 = i + 1/i = 0
        assert!(eigenvalue(2).is_zero());
        assert!(!eigenvalue(1).is_zero());
        assert!(eigenvalue(1).eq_cross(&eigenvalue(3).neg()));
    }

    #[test]
    fn eigen_relation_k2_symbolic() {
        // For k = 2 the relation closes symbolically on every row.
        for i in 1..=3 {
            let r = eigen_relation_residual(2, i);
            assert!(r.is_zero_symbolic(), "row {} residual {}", i, r);
        }
    }
}
