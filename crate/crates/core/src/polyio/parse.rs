use num_traits::{One, Zero};

use crate::algebra::{GaussRational, Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};

/// Parses a polynomial in dimension `n`.
///
/// ```text
/// expr   := ['-'] term { ('+'|'-') term }
/// term   := factor { '*' factor }
/// factor := coeff | var [ '^' nat ]
/// var    := 'z' nat | 'zb' nat | 'w'
/// coeff  := rat | rat 'i' | '(' rat [ ('+'|'-') rat 'i' ] ')'
/// rat    := nat [ '/' nat ]
/// ```
///
/// Whitespace is ignored. A bare `i` (and `(1+i)`) is accepted as shorthand
/// for `1i`.
pub fn parse_poly(text: &str, n: usize) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate_first = self.eat(b'-');
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'z') | Some(b'w') => {
                let v = self.var()?;
                let e = if self.eat(b'^') { self.nat_u32()? } else { 1 };
                Ok(Poly::monomial(self.n, Monomial::one(self.n).with_exp(v, e), GaussRational::one()))
            }
            Some(b'(') | Some(b'0'..=b'9') | Some(b'i') => {
                let c = self.coeff()?;
                Ok(Poly::constant(self.n, c))
            }
            Some(_) => Err(self.error("expected a coefficient or a variable")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn var(&mut self) -> Result<Var> {
        let start = self.pos;
        match self.src[self.pos] {
            b'w' => {
                self.pos += 1;
                Ok(Var::W)
            }
            _ => {
                self.pos += 1;
                let bar = self.src.get(self.pos) == Some(&b'b');
                if bar {
                    self.pos += 1;
                }
                let idx_pos = self.pos;
                let index = self.nat_usize_raw().ok_or_else(|| Error::Syntax {
                    pos: idx_pos,
                    msg: "expected a variable index".into(),
                })?;
                if index == 0 || index > self.n {
                    let _ = start;
                    return Err(Error::IndexOutOfRange { index, n: self.n });
                }
                Ok(if bar { Var::Zb(index) } else { Var::Z(index) })
            }
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn nat_usize_raw(&mut self) -> Option<usize> {
        self.digits()?.parse().ok()
    }

    fn nat_u32(&mut self) -> Result<u32> {
        self.skip_ws();
        let pos = self.pos;
        self.digits()
            .and_then(|d| d.parse().ok())
            .ok_or(Error::Syntax {
                pos,
                msg: "expected a natural number exponent".into(),
            })
    }

    fn rat(&mut self) -> Result<Rational> {
        self.skip_ws();
        let pos = self.pos;
        let num = self.digits().ok_or_else(|| self.error("expected a number"))?;
        let mut q: Rational = Rational::from_integer(num.parse().map_err(|_| self.error("bad number"))?);
        if self.eat(b'/') {
            self.skip_ws();
            let den = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
            let den: num_bigint::BigInt = den.parse().map_err(|_| self.error("bad number"))?;
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            q /= Rational::from_integer(den);
        }
        Ok(q)
    }

    /// `rat ['i']`, or a bare `i`.
    fn real_or_imag(&mut self) -> Result<GaussRational> {
        if self.eat(b'i') {
            return Ok(GaussRational::i());
        }
        let q = self.rat()?;
        if self.eat(b'i') {
            Ok(GaussRational::new(Rational::zero(), q))
        } else {
            Ok(GaussRational::real(q))
        }
    }

    fn coeff(&mut self) -> Result<GaussRational> {
        if !self.eat(b'(') {
            return self.real_or_imag();
        }
        let first = self.real_or_imag()?;
        let value = if self.eat(b'+') {
            &first + &self.imag_part()?
        } else if self.eat(b'-') {
            &first - &self.imag_part()?
        } else {
            first
        };
        if !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(value)
    }

    fn imag_part(&mut self) -> Result<GaussRational> {
        let v = self.real_or_imag()?;
        if v.is_real() {
            return Err(self.error("expected an imaginary part"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_defining_equation() {
        let p = parse_poly("zb1*z2 + zb2^3", 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::from_parts(&[0, 1], &[1, 0], 0)), GaussRational::one());
        assert_eq!(p.coeff(&Monomial::from_parts(&[0, 0], &[0, 3], 0)), GaussRational::one());
    }

    #[test]
    fn complex_coefficient() {
        let p = parse_poly("(1/2+3/4i)*z1^2*w", 1).unwrap();
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(*m, Monomial::from_parts(&[2], &[0], 1));
        assert_eq!(*c, GaussRational::from_frac(1, 2, 3, 4));
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(parse_poly("z3", 2), Err(Error::IndexOutOfRange { index: 3, n: 2 }));
        assert_eq!(parse_poly("zb0", 2), Err(Error::IndexOutOfRange { index: 0, n: 2 }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_poly("z1 + * z2", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("z1^", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(1+2)", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("z1 z2", 2), Err(Error::Syntax { .. })));
    }

    #[test]
    fn leading_minus_and_products_of_coefficients() {
        let p = parse_poly("-z1 + 2*3*w - 1i*zb2", 2).unwrap();
        let q = parse_poly("6*w - z1 - i*zb2", 2).unwrap();
        assert_eq!(p, q);
    }
}
