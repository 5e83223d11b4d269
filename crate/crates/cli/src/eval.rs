//! The `eval` expression mini-language:
//!   pexp(<laurent fraction>)   e.g.  pexp(Q/(p+p^-1))
//!   DA | DB | S                the operator matrices
//!   OA(<word>) | OB(<word>)    recursive representation matrices
//!
//! Fraction grammar: + - * / ^ over the atoms Q, p, s, i and integers,
//! with parentheses. Denominators must factor into a monomial times
//! binomials with unit coefficient ratio (the (1 +- p^a s^b) shapes the
//! plethystic layer understands); a factor 1 + x is folded through
//! (1 - x^2)/(1 - x).

use edaha::fraction::FormalFraction;
use edaha::freegroup::{parse_word, Family};
use edaha::laurent::{Exp3, LaurentPoly};
use edaha::representation::RepCache;
use edaha::ring::RingElement;
use edaha::scalar::GaussRat;

pub fn evaluate(expr: &str) -> Result<String, String> {
    let trimmed = expr.trim();
    if let Some(rest) = trimmed.strip_prefix("OA(") {
        let word = rest.strip_suffix(')').ok_or("missing closing parenthesis")?;
        let w = parse_word(word)?;
        let mut cache = RepCache::new();
        return Ok(format!("{:?}", cache.o_matrix(Family::A, &w)));
    }
    if let Some(rest) = trimmed.strip_prefix("OB(") {
        let word = rest.strip_suffix(')').ok_or("missing closing parenthesis")?;
        let w = parse_word(word)?;
        let mut cache = RepCache::new();
        return Ok(format!("{:?}", cache.o_matrix(Family::B, &w)));
    }
    match trimmed {
        "DA" => return Ok(format!("{:?}", edaha::operators::build_da().mat)),
        "DB" => return Ok(format!("{:?}", edaha::operators::build_db().mat)),
        "S" => return Ok(format!("{:?}", edaha::operators::s_matrix())),
        _ => {}
    }
    if let Some(rest) = trimmed.strip_prefix("pexp(") {
        let inner = rest.strip_suffix(')').ok_or("missing closing parenthesis")?;
        let frac = parse_fraction(inner)?;
        let x = RingElement::pexp_unrestricted(&frac);
        return Ok(format!("{}", x));
    }
    Err("expected one of: pexp(<fraction>), DA, DB, S, OA(<word>), OB(<word>)".into())
}

/// Rational expression value: numerator / denominator of Laurent polynomials.
#[derive(Clone)]
struct Frac {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Frac {
    fn poly(p: LaurentPoly) -> Self {
        Frac { num: p, den: LaurentPoly::one() }
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    fn sub(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.den).sub(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    fn div(&self, o: &Frac) -> Result<Frac, String> {
        if o.num.is_zero() {
            return Err("division by zero".into());
        }
        Ok(Frac { num: self.num.mul(&o.den), den: self.den.mul(&o.num) })
    }

    fn pow(&self, e: i64) -> Result<Frac, String> {
        let mut acc = Frac::poly(LaurentPoly::one());
        let base = if e < 0 { self.clone().div(&acc.clone()).and_then(|_| {
            if self.num.as_monomial().is_none() && self.num.num_terms() > 1 {
                // general inverse is handled at the factoring stage
            }
            Ok(Frac { num: self.den.clone(), den: self.num.clone() })
        })? } else { self.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

fn parse_fraction(input: &str) -> Result<FormalFraction, String> {
    let mut p = Tokens::new(input)?;
    let f = parse_sum(&mut p)?;
    if !p.done() {
        return Err(format!("unexpected token `{:?}`", p.peek()));
    }
    // Split the denominator into a unit monomial and binomial factors.
    let mut num = f.num;
    let mut vecs = Vec::new();
    factor_into(&f.den, &mut num, &mut vecs)?;
    Ok(FormalFraction::new_unrestricted(num, vecs))
}

/// Factors `den` as monomial * prod (1 - x) / ... and accumulates the
/// corresponding denominator vectors, compensating `num`.
fn factor_into(den: &LaurentPoly, num: &mut LaurentPoly, vecs: &mut Vec<(i64, i64)>) -> Result<(), String> {
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    if let Some((e, c)) = den.as_monomial() {
        // divide num by c * monomial
        *num = num.mul_monomial(&c.inv(), e.neg());
        return Ok(());
    }
    if den.num_terms() == 2 {
        let terms: Vec<(Exp3, GaussRat)> = den.terms().map(|(e, c)| (*e, c.clone())).collect();
        let (e0, c0) = &terms[0];
        let (e1, c1) = &terms[1];
        let ratio = c1 / c0;
        let dv = e1.sub(*e0);
        if dv.q != 0 || dv.p % 2 != 0 || dv.s % 2 != 0 {
            return Err(format!("denominator factor `{}` is not of the (1 - p^a s^b) shape", den));
        }
        let (a, b) = (dv.p / 2, dv.s / 2);
        // den = c0 e0 (1 + ratio x) with x = p^a s^b
        *num = num.mul_monomial(&c0.inv(), e0.neg());
        if ratio == GaussRat::from_int(-1) {
            vecs.push((a, b));
            return Ok(());
        }
        if ratio == GaussRat::from_int(1) {
            // 1 + x = (1 - x^2)/(1 - x)
            *num = num.mul(&LaurentPoly::one_minus_ps(a, b));
            vecs.push((2 * a, 2 * b));
            return Ok(());
        }
        return Err(format!("binomial `{}` has coefficient ratio {} (want +-1)", den, ratio));
    }
    // Try splitting off a binomial factor built from a pair of exponents.
    let exps: Vec<Exp3> = den.terms().map(|(e, _)| *e).collect();
    for i in 0..exps.len() {
        for j in 0..exps.len() {
            if i == j {
                continue;
            }
            let dv = exps[j].sub(exps[i]);
            if dv.q != 0 || dv.p % 2 != 0 || dv.s % 2 != 0 || (dv.p == 0 && dv.s == 0) {
                continue;
            }
            for sign in [-1i64, 1] {
                let mut cand = LaurentPoly::one();
                cand.add_term(GaussRat::from_int(sign), dv);
                if let Some(quot) = den.divide_exact(&cand) {
                    factor_into(&cand, num, vecs)?;
                    return factor_into(&quot, num, vecs);
                }
            }
        }
    }
    Err(format!("cannot factor denominator `{}` into binomial factors", den))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Sym(char), // Q, p, s, i
    Op(char),  // + - * / ^ ( )
}

struct Tokens {
    toks: Vec<Tok>,
    pos: usize,
}

impl Tokens {
    fn new(s: &str) -> Result<Self, String> {
        let mut toks = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            match c {
                ' ' => {}
                '0'..='9' => {
                    let mut v = 0i64;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        v = v * 10 + (chars[k] as i64 - '0' as i64);
                        k += 1;
                    }
                    toks.push(Tok::Num(v));
                    continue;
                }
                'Q' | 'p' | 's' | 'i' => toks.push(Tok::Sym(c)),
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => toks.push(Tok::Op(c)),
                _ => return Err(format!("unexpected character `{}`", c)),
            }
            k += 1;
        }
        Ok(Tokens { toks, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

fn parse_sum(p: &mut Tokens) -> Result<Frac, String> {
    let mut acc = parse_product(p)?;
    while let Some(Tok::Op(op @ ('+' | '-'))) = p.peek().cloned() {
        p.next();
        let rhs = parse_product(p)?;
        acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
    }
    Ok(acc)
}

fn parse_product(p: &mut Tokens) -> Result<Frac, String> {
    let mut acc = parse_power(p)?;
    loop {
        match p.peek() {
            Some(Tok::Op('*')) => {
                p.next();
                acc = acc.mul(&parse_power(p)?);
            }
            Some(Tok::Op('/')) => {
                p.next();
                acc = acc.div(&parse_power(p)?)?;
            }
            // implicit multiplication: Qp, 2p, p(1-s)
            Some(Tok::Sym(_)) | Some(Tok::Num(_)) | Some(Tok::Op('(')) => {
                acc = acc.mul(&parse_power(p)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_power(p: &mut Tokens) -> Result<Frac, String> {
    let base = parse_atom(p)?;
    if let Some(Tok::Op('^')) = p.peek() {
        p.next();
        let mut sign = 1i64;
        if let Some(Tok::Op('-')) = p.peek() {
            p.next();
            sign = -1;
        }
        match p.next() {
            Some(Tok::Num(n)) => return base.pow(sign * n),
            other => return Err(format!("expected exponent, got {:?}", other)),
        }
    }
    Ok(base)
}

fn parse_atom(p: &mut Tokens) -> Result<Frac, String> {
    match p.next() {
        Some(Tok::Num(n)) => Ok(Frac::poly(LaurentPoly::from_int_terms(&[(n, 0, 0, 0)]))),
        Some(Tok::Sym('Q')) => Ok(Frac::poly(LaurentPoly::from_int_terms(&[(1, 1, 0, 0)]))),
        Some(Tok::Sym('p')) => Ok(Frac::poly(LaurentPoly::from_int_terms(&[(1, 0, 1, 0)]))),
        Some(Tok::Sym('s')) => Ok(Frac::poly(LaurentPoly::from_int_terms(&[(1, 0, 0, 1)]))),
        Some(Tok::Sym('i')) => {
            Ok(Frac::poly(LaurentPoly::monomial(GaussRat::i(), Exp3::new(0, 0, 0))))
        }
        Some(Tok::Op('-')) => {
            let inner = parse_atom(p)?;
            Ok(Frac::poly(LaurentPoly::zero()).sub(&inner))
        }
        Some(Tok::Op('(')) => {
            let inner = parse_sum(p)?;
            match p.next() {
                Some(Tok::Op(')')) => Ok(inner),
                other => Err(format!("expected `)`, got {:?}", other)),
            }
        }
        other => Err(format!("unexpected token {:?}", other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_example_roundtrip() {
        // pexp(Q/(p+p^-1)) prints the canonical fraction (Qp(1-p^2) : 1-p^4)
        let out = evaluate("pexp(Q/(p+p^-1))").unwrap();
        assert!(out.contains("Qp"), "got {}", out);
        let frac = parse_fraction("Q/(p+p^-1)").unwrap();
        let canon = frac.canonical_form();
        assert_eq!(canon.den(), &[(4, 0)]);
        assert_eq!(
            canon.num(),
            &LaurentPoly::from_int_terms(&[(1, 1, 1, 0), (-1, 1, 3, 0)])
        );
    }

    #[test]
    fn simple_fraction_parses() {
        let frac = parse_fraction("Q^8 - Q^-8").unwrap();
        assert!(frac.den().is_empty());
        let frac = parse_fraction("(Q^8-Q^-8)ps/((1-s^2)(1-p^2))").unwrap();
        assert_eq!(frac.den().len(), 2);
    }

    #[test]
    fn rejects_garbage() {
        assert!(evaluate("pexp(Q/(1+p+s))").is_err());
        assert!(evaluate("nonsense").is_err());
    }
}
