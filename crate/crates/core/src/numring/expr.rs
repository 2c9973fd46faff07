//! Text syntax for cyclotomic elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := number | 'i' | 'z'N | 'zeta(' N ')' | 'sqrt(' N ')' | 'cos2pi(' N ')' | '(' expr ')'
//! ```
//! `zN` is ζ_N = e^{2πi/N}, matching how elements are printed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::{parse_decimal, CycElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse().map_err(|_| Error::Parse(format!("expected an integer, found `{n}`")))
            }
            _ => Err(Error::Parse("expected an integer".into())),
        }
    }

    fn expr(&mut self) -> Result<CycElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycElement> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = self.int()?;
        let p = base.pow(e);
        if neg {
            p.inv()
        } else {
            Ok(p)
        }
    }

    fn call_arg(&mut self) -> Result<u32> {
        self.expect('(')?;
        let n = self.int()?;
        self.expect(')')?;
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<CycElement> {
        let tok = self.toks.get(self.pos).cloned().ok_or(Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(CycElement::from_rational(parse_decimal(&n)?)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(id) => match id.as_str() {
                "i" => Ok(CycElement::i()),
                "zeta" => Ok(CycElement::zeta(self.call_arg()?)),
                "sqrt" => sqrt_int(self.call_arg()? as u64),
                "cos2pi" => Ok(CycElement::cos_2pi_over(self.call_arg()?)),
                _ => match id.strip_prefix('z').and_then(|n| n.parse::<u32>().ok()) {
                    Some(n) if n > 0 => Ok(CycElement::zeta(n)),
                    _ => Err(Error::Parse(format!("unknown name `{id}`"))),
                },
            },
            Tok::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_element(s: &str) -> Result<CycElement> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// √p for a prime p, from a quadratic Gauss sum.
fn sqrt_prime(p: u64) -> Result<CycElement> {
    if p == 2 {
        return Ok(CycElement::sqrt2());
    }
    let n = u32::try_from(p).map_err(|_| Error::TooLarge(p as usize))?;
    let coeffs: Vec<(i64, BigRational)> =
        (1..p).map(|a| (a as i64, BigRational::from_integer(legendre(a, p).into()))).collect();
    let g = CycElement::new(n, &coeffs)?;
    // g² = p when p ≡ 1 (mod 4) and −p otherwise.
    if p % 4 == 1 {
        Ok(g)
    } else {
        Ok(-(&CycElement::i() * &g))
    }
}

/// The positive square root of a nonnegative integer, as a cyclotomic element.
pub fn sqrt_int(n: u64) -> Result<CycElement> {
    if n == 0 {
        return Ok(CycElement::zero());
    }
    let mut rest = n;
    let mut square = BigInt::from(1);
    let mut acc = CycElement::one();
    let mut p = 2u64;
    while p * p <= rest {
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if k > 0 {
            square *= BigInt::from(p).pow(k / 2);
            if k.is_odd() {
                acc = &acc * &sqrt_prime(p)?;
            }
        }
        p += 1;
    }
    if rest > 1 {
        acc = &acc * &sqrt_prime(rest)?;
    }
    Ok(acc.scale(&BigRational::from_integer(square)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(parse_element("1/2").unwrap(), CycElement::from_frac(1, 2));
        assert_eq!(parse_element("z8^2").unwrap(), CycElement::i());
        assert_eq!(parse_element("-(1 + i)*(1 - i)").unwrap(), CycElement::from_int(-2));
        assert_eq!(parse_element("sqrt(5)").unwrap(), CycElement::sqrt5());
        assert_eq!(parse_element("zeta(3)^-1").unwrap(), CycElement::omega3().conj());
        assert_eq!(parse_element("0.25").unwrap(), CycElement::from_frac(1, 4));
        assert!(parse_element("1 +").is_err());
        assert!(parse_element("q").is_err());
        assert!(parse_element("1/0").is_err());
    }

    #[test]
    fn square_roots() {
        for n in [2u64, 3, 5, 7, 11, 12, 13, 18, 30] {
            let s = sqrt_int(n).unwrap();
            assert_eq!(&s * &s, CycElement::from_int(n as i64), "n = {n}");
            assert_eq!(s.conj(), s);
        }
        assert_eq!(sqrt_int(2).unwrap(), CycElement::sqrt2());
        assert_eq!(sqrt_int(16).unwrap(), CycElement::from_int(4));
    }

    #[test]
    fn display_round_trip() {
        for x in [CycElement::omega8().pow(3).scale(&BigRational::new(3.into(), 7.into())), CycElement::cos_2pi_over(5)] {
            assert_eq!(parse_element(&x.to_string()).unwrap(), x);
        }
    }
}
