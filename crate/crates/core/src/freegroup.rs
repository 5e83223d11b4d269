//! Reduced words in the free group on two generators a, b (plus formal
//! letters for certificate checking), the swap automorphism, the
//! homomorphism to SL(2,Z), special-form decompositions, and the
//! generator-label canonicalization rules.

use std::fmt;

/// A letter: one of the two concrete generators or a formal symbol.
///
/// Formal symbols stand for arbitrary group elements in ideal-membership
/// certificates; they reduce only against their own formal inverses and are
/// never expanded. The `swapped` flag tracks an application of the swap
/// automorphism to the formal symbol, with swap(swap(x)) = x.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
    Formal { id: u8, swapped: bool },
}

impl Letter {
    fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
            Letter::Formal { id, swapped } => Letter::Formal { id, swapped: !swapped },
        }
    }

    pub fn is_formal(self) -> bool {
        matches!(self, Letter::Formal { .. })
    }
}

/// A reduced word: adjacent letters distinct, exponents nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(Letter, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(l: Letter, e: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(l, e);
        w
    }

    /// Word from a list of (letter, exponent) pairs, reducing as it goes.
    pub fn from_letters(letters: &[(Letter, i64)]) -> Self {
        let mut w = FreeWord::identity();
        for (l, e) in letters {
            w.push(*l, *e);
        }
        w
    }

    pub fn a(e: i64) -> Self {
        FreeWord::generator(Letter::A, e)
    }

    pub fn b(e: i64) -> Self {
        FreeWord::generator(Letter::B, e)
    }

    pub fn formal(id: u8) -> Self {
        FreeWord::generator(Letter::Formal { id, swapped: false }, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.letters
    }

    /// Total length: sum of |exponents|.
    pub fn len(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains_formal(&self) -> bool {
        self.letters.iter().any(|(l, _)| l.is_formal())
    }

    fn push(&mut self, l: Letter, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == l {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((l, e));
    }

    /// Concatenation with full reduction.
    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for (l, e) in &o.letters {
            w.push(*l, *e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|(l, e)| (*l, -e)).collect() }
    }

    /// The swap automorphism: a <-> b, formal letters toggle their swap flag.
    pub fn sigma(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().map(|(l, e)| (l.swap(), *e)).collect() }
    }

    /// Image under the homomorphism to SL(2,Z) with
    /// phi(a) = [[1,-1],[0,1]] and phi(b) = [[1,0],[1,1]].
    /// Fails on formal letters.
    pub fn phi(&self) -> Result<PhiMatrix, FormalSymbolPresent> {
        let a = PhiMatrix { a: 1, b: -1, c: 0, d: 1 };
        let b = PhiMatrix { a: 1, b: 0, c: 1, d: 1 };
        let mut acc = PhiMatrix::identity();
        for (l, e) in &self.letters {
            let base = match l {
                Letter::A => a,
                Letter::B => b,
                Letter::Formal { .. } => return Err(FormalSymbolPresent),
            };
            acc = acc.mul(&base.pow(*e));
        }
        Ok(acc)
    }

    /// Strips the maximal leading a-power (family A) or b-power (family B)
    /// when the leading letter is explicit; formal leading letters are left
    /// intact. This realizes the identifications O_A^(a^k g) = O_A^(g) and
    /// O_B^(b^k g) = O_B^(g).
    pub fn canonical_label(&self, family: Family) -> FreeWord {
        let strip = match family {
            Family::A => Letter::A,
            Family::B => Letter::B,
        };
        if let Some((l, _)) = self.letters.first() {
            if *l == strip {
                return FreeWord { letters: self.letters[1..].to_vec() };
            }
        }
        self.clone()
    }

    /// Decomposes a formal-free word into the special form
    /// b^{e_1} a^{k_1} ... b^{e_n} a^{k_n} (family B; e_i = +-1) or the
    /// a/b-swapped dual (family A). Pure powers of the trailing letter are
    /// allowed only as explicit a^k blocks; a word that starts with the
    /// wrong letter is NotSpecial.
    pub fn decompose_special(&self, family: Family) -> Option<Vec<(i64, i64)>> {
        if self.contains_formal() {
            return None;
        }
        let (head, tail) = match family {
            Family::B => (Letter::B, Letter::A),
            Family::A => (Letter::A, Letter::B),
        };
        let mut out = Vec::new();
        let mut idx = 0;
        while idx < self.letters.len() {
            let (l, e) = self.letters[idx];
            if l != head {
                return None;
            }
            let sign = e.signum();
            for _ in 0..(e.abs() - 1) {
                out.push((sign, 0));
            }
            let mut k = 0;
            if idx + 1 < self.letters.len() {
                let (l2, e2) = self.letters[idx + 1];
                debug_assert_eq!(l2, tail);
                k = e2;
                idx += 1;
            }
            out.push((sign, k));
            idx += 1;
        }
        Some(out)
    }

    /// Rebuilds a word from its special-form decomposition.
    pub fn recompose_special(family: Family, blocks: &[(i64, i64)]) -> FreeWord {
        let (head, tail) = match family {
            Family::B => (Letter::B, Letter::A),
            Family::A => (Letter::A, Letter::B),
        };
        let mut w = FreeWord::identity();
        for (sign, k) in blocks {
            w.push(head, *sign);
            w.push(tail, *k);
        }
        w
    }

    /// Peels the leading block h = head^{sign} tail^{k} off a word that
    /// starts with the head letter, returning (sign, k, rest). Used by the
    /// matrix recursions, which consume one such block per step.
    pub fn peel_block(&self, family: Family) -> Option<(i64, i64, FreeWord)> {
        let head = match family {
            Family::B => Letter::B,
            Family::A => Letter::A,
        };
        let (l, e) = *self.letters.first()?;
        if l != head {
            return None;
        }
        let sign = e.signum();
        if e.abs() > 1 {
            let mut rest = self.letters.clone();
            rest[0].1 -= sign;
            return Some((sign, 0, FreeWord { letters: rest }));
        }
        let mut rest: Vec<(Letter, i64)> = self.letters[1..].to_vec();
        let mut k = 0;
        if let Some((l2, e2)) = rest.first().copied() {
            let tail = match family {
                Family::B => Letter::A,
                Family::A => Letter::B,
            };
            if l2 == tail {
                k = e2;
                rest.remove(0);
            }
        }
        Some((sign, k, FreeWord { letters: rest }))
    }
}

/// Generator family tag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn swap(self) -> Family {
        match self {
            Family::A => Family::B,
            Family::B => Family::A,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FormalSymbolPresent;

/// Integer 2x2 matrix [[a, b], [c, d]] as printed in the phi images;
/// row-major entries with the usual matrix product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PhiMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl PhiMatrix {
    pub fn identity() -> Self {
        PhiMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &PhiMatrix) -> PhiMatrix {
        PhiMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> PhiMatrix {
        assert_eq!(self.det(), 1);
        PhiMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn pow(&self, e: i64) -> PhiMatrix {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = PhiMatrix::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

/// An SL(2,Z) element acting as a monomial substitution on (p, s).
///
/// Stored column-style: a monomial with doubled exponent pair (ep, es) maps
/// to (a*ep + b*es, c*ep + d*es). Equivalently the variables map as
/// p -> p^a s^c and s -> p^b s^d. With this convention the shift of a
/// product of twisted operators is the plain matrix product of the shifts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Sl2zMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2zMatrix {
    pub fn identity() -> Self {
        Sl2zMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// From variable images: p -> p^{p_to.0} s^{p_to.1}, s -> p^{s_to.0} s^{s_to.1}.
    pub fn from_images(p_to: (i64, i64), s_to: (i64, i64)) -> Self {
        let m = Sl2zMatrix { a: p_to.0, b: s_to.0, c: p_to.1, d: s_to.1 };
        assert_eq!(m.det(), 1, "substitution matrix must have determinant 1");
        m
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Action on a doubled exponent pair.
    pub fn apply_exponents(&self, ep: i64, es: i64) -> (i64, i64) {
        (self.a * ep + self.b * es, self.c * ep + self.d * es)
    }

    /// Action on an integer denominator vector (a, b) of a factor 1 - p^a s^b.
    pub fn apply_vector(&self, v: (i64, i64)) -> (i64, i64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    /// Composition: applying `self` after `o` equals `self.mul(o)`.
    pub fn mul(&self, o: &Sl2zMatrix) -> Sl2zMatrix {
        Sl2zMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Sl2zMatrix {
        assert_eq!(self.det(), 1);
        Sl2zMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn is_identity(&self) -> bool {
        *self == Sl2zMatrix::identity()
    }
}

/// Parses a word from generator tokens separated by spaces, left to right:
/// "b a^-1 g", "a^3 b^-2", "s(g1) g2". Formal ids: g, g1, g2, g3, f, h.
pub fn parse_word(input: &str) -> Result<FreeWord, String> {
    let mut w = FreeWord::identity();
    for tok in input.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => {
                (b, e.parse::<i64>().map_err(|_| format!("bad exponent in `{}`", tok))?)
            }
            None => (tok, 1),
        };
        let (inner, swapped) = if let Some(rest) = base.strip_prefix("s(") {
            (rest.strip_suffix(')').ok_or_else(|| format!("bad token `{}`", tok))?, true)
        } else {
            (base, false)
        };
        let letter = match inner {
            "a" => Letter::A,
            "b" => Letter::B,
            "g" => Letter::Formal { id: 0, swapped },
            "g1" => Letter::Formal { id: 1, swapped },
            "g2" => Letter::Formal { id: 2, swapped },
            "g3" => Letter::Formal { id: 3, swapped },
            "f" => Letter::Formal { id: 4, swapped },
            "h" => Letter::Formal { id: 5, swapped },
            "1" => continue,
            _ => return Err(format!("unknown generator `{}`", inner)),
        };
        let letter = if swapped && matches!(inner, "a" | "b") {
            return Err(format!("s(..) applies to formal letters only, got `{}`", tok));
        } else {
            letter
        };
        w = w.mul(&FreeWord::generator(letter, exp));
    }
    Ok(w)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (l, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = match l {
                Letter::A => "a".to_string(),
                Letter::B => "b".to_string(),
                Letter::Formal { id, swapped } => {
                    let base = match id {
                        0 => "g".to_string(),
                        4 => "f".to_string(),
                        5 => "h".to_string(),
                        n => format!("g{}", n),
                    };
                    if *swapped {
                        format!("s({})", base)
                    } else {
                        base
                    }
                }
            };
            if *e == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Enumerates all reduced formal-free words of total length exactly `len`.
pub fn words_of_length(len: u64) -> Vec<FreeWord> {
    if len == 0 {
        return vec![FreeWord::identity()];
    }
    let mut out = Vec::new();
    // Extend each shorter word by one letter on the right without cancelling.
    for w in words_of_length(len - 1) {
        for l in [Letter::A, Letter::B] {
            for e in [1i64, -1] {
                let last = w.letters.last().copied();
                if let Some((ll, le)) = last {
                    if ll == l && (le > 0) != (e > 0) {
                        continue;
                    }
                }
                out.push(w.mul(&FreeWord::generator(l, e)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All reduced words of total length at most `len`.
pub fn words_up_to_length(len: u64) -> Vec<FreeWord> {
    (0..=len).flat_map(words_of_length).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_inverse() {
        let w = parse_word("b a^2 b^-1").unwrap();
        assert!(w.mul(&w.inverse()).is_identity());
        // (g a^-1) * a = g
        let g = parse_word("g a^-1").unwrap();
        assert_eq!(g.mul(&FreeWord::a(1)), FreeWord::formal(0));
    }

    #[test]
    fn cancellation_through_zero_power() {
        // b^-1 * (b a^k g) = a^k g
        let k = 3;
        let w = FreeWord::b(1).mul(&FreeWord::a(k)).mul(&FreeWord::formal(0));
        let red = FreeWord::b(-1).mul(&w);
        assert_eq!(red, FreeWord::a(k).mul(&FreeWord::formal(0)));
    }

    #[test]
    fn sigma_involution() {
        let w = parse_word("a b^-1 g a^2").unwrap();
        assert_eq!(w.sigma().sigma(), w);
        assert_eq!(parse_word("a b^-1").unwrap().sigma(), parse_word("b a^-1").unwrap());
        // sigma(b a^k g) = a b^k s(g)
        let w = parse_word("b a^2 g").unwrap();
        assert_eq!(w.sigma(), parse_word("a b^2 s(g)").unwrap());
    }

    #[test]
    fn phi_images() {
        let pa = FreeWord::a(1).phi().unwrap();
        assert_eq!(pa, PhiMatrix { a: 1, b: -1, c: 0, d: 1 });
        assert_eq!(FreeWord::identity().phi().unwrap(), PhiMatrix::identity());
        // phi(ab) = [[1,-1],[0,1]] * [[1,0],[1,1]] = [[0,-1],[1,1]]
        let pab = parse_word("a b").unwrap().phi().unwrap();
        assert_eq!(pab, PhiMatrix { a: 0, b: -1, c: 1, d: 1 });
        assert!(parse_word("g a").unwrap().phi().is_err());
    }

    #[test]
    fn phi_is_homomorphism() {
        for u in words_up_to_length(3) {
            for v in words_up_to_length(2) {
                let lhs = u.mul(&v).phi().unwrap();
                let rhs = u.phi().unwrap().mul(&v.phi().unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn decompose_special_cases() {
        // b^-1 a^2 is B-type with one block (-1, 2)
        let w = parse_word("b^-1 a^2").unwrap();
        assert_eq!(w.decompose_special(Family::B), Some(vec![(-1, 2)]));
        // a^3 is not B-special (must start with b)
        assert_eq!(FreeWord::a(3).decompose_special(Family::B), None);
        // a b^-1 is A-type with one block (1, -1)
        let w = parse_word("a b^-1").unwrap();
        assert_eq!(w.decompose_special(Family::A), Some(vec![(1, -1)]));
        // identity decomposes with n = 0
        assert_eq!(FreeWord::identity().decompose_special(Family::B), Some(vec![]));
    }

    #[test]
    fn decompose_recompose_roundtrip() {
        for w in words_up_to_length(4) {
            if let Some(blocks) = w.decompose_special(Family::B) {
                assert_eq!(FreeWord::recompose_special(Family::B, &blocks), w);
            }
        }
    }

    #[test]
    fn peel_block_multi_b() {
        // b^2 a: peel gives (1, 0, b a)
        let w = parse_word("b^2 a").unwrap();
        let (sign, k, rest) = w.peel_block(Family::B).unwrap();
        assert_eq!((sign, k), (1, 0));
        assert_eq!(rest, parse_word("b a").unwrap());
        let (sign, k, rest) = rest.peel_block(Family::B).unwrap();
        assert_eq!((sign, k), (1, 1));
        assert!(rest.is_identity());
    }

    #[test]
    fn canonical_labels() {
        // A-label of a^3 b g is b g
        let w = parse_word("a^3 b g").unwrap();
        assert_eq!(w.canonical_label(Family::A), parse_word("b g").unwrap());
        // B-label of b^-2 is identity
        assert_eq!(FreeWord::b(-2).canonical_label(Family::B), FreeWord::identity());
        // formal leading letter: unchanged
        let w = parse_word("g a^-1").unwrap();
        assert_eq!(w.canonical_label(Family::A), w);
        // idempotent
        for w in words_up_to_length(3) {
            let once = w.canonical_label(Family::A);
            assert_eq!(once.canonical_label(Family::A), once);
        }
    }

    #[test]
    fn sl2z_composition_convention() {
        // shift under (p,s) -> (s, p^-1) twice equals (p,s) -> (p^-1, s^-1)
        let m = Sl2zMatrix::from_images((0, 1), (-1, 0));
        let m2 = m.mul(&m);
        assert_eq!(m2, Sl2zMatrix::from_images((-1, 0), (0, -1)));
        assert_eq!(m.mul(&m.inverse()), Sl2zMatrix::identity());
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(words_of_length(0).len(), 1);
        assert_eq!(words_of_length(1).len(), 4);
        assert_eq!(words_of_length(2).len(), 12);
        assert_eq!(words_of_length(3).len(), 36);
    }
}
