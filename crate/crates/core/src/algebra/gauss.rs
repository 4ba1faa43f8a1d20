//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element of Q[i].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRational::new(Rational::from_integer(v.into()), Rational::zero())
    }

    /// `re_num/re_den + (im_num/im_den) i`.
    pub fn from_frac(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRational::new(
            Rational::new(re_num.into(), re_den.into()),
            Rational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn real(re: Rational) -> Self {
        GaussRational::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }

    /// |x|² = re² + im².
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational::new(&self.re / &n, -&self.im / &n))
    }

    /// The integer value when `self` is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRational::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A square root inside Q[i], if one exists. Of the two roots, the one
    /// with positive real part (or positive imaginary part when real) is
    /// returned.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        // (x + iy)² = a + bi  =>  x² = (a + |z|)/2, y² = (|z| - a)/2
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(2.into());
        let x2 = (&modulus + &self.re) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = rational_sqrt(&x2)?;
        let y = if x.is_zero() {
            rational_sqrt(&y2)?
        } else {
            &self.im / (&two * &x)
        };
        let root = GaussRational::new(x, y);
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }
}

/// Nonnegative rational square root when the argument is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussRational {
    fn from(v: i64) -> Self {
        GaussRational::from_int(v)
    }
}

impl From<Rational> for GaussRational {
    fn from(v: Rational) -> Self {
        GaussRational::real(v)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        let inv = rhs.inv().expect("division by zero in Q[i]");
        self * &inv
    }
}

impl<'a> Neg for &'a GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &GaussRational) -> GaussRational { (&self).$m(rhs) }
        }
        impl<'a> $tr<GaussRational> for &'a GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl<'a> AddAssign<&'a GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> SubAssign<&'a GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> MulAssign<&'a GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rat(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl GaussRational {
    /// Renders the magnitude part of a coefficient (no leading sign) and
    /// reports whether the printed value must be negated. The rendering uses
    /// only the coefficient grammar: `rat`, `rat i`, or `(rat ± rat i)`.
    pub(crate) fn unsigned_parts(&self) -> (bool, String) {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => (false, "0".into()),
            (false, true) => (self.re.is_negative(), fmt_rat(&self.re.abs())),
            (true, false) => (self.im.is_negative(), format!("{}i", fmt_rat(&self.im.abs()))),
            (false, false) => {
                let neg = self.re.is_negative();
                let im = if neg { -&self.im } else { self.im.clone() };
                let sign = if im.is_negative() { '-' } else { '+' };
                (
                    neg,
                    format!("({}{}{}i)", fmt_rat(&self.re.abs()), sign, fmt_rat(&im.abs())),
                )
            }
        }
    }

    pub(crate) fn is_unit_magnitude_one(&self) -> bool {
        self.im.is_zero() && self.re.abs().is_one()
    }

    /// Decimal approximation, for display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = self.unsigned_parts();
        if neg {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    /// Accepts the coefficient sub-grammar with optional sign and optional
    /// parentheses: `3`, `-1/2`, `3/4i`, `1/2+3/4i`, `(1/2-3/4i)`, `-(1+2i)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::MalformedNumber(s.to_string());
        let (neg, body) = match compact.strip_prefix("-(") {
            Some(rest) => (true, rest.strip_suffix(')').ok_or_else(bad)?),
            None => match compact.strip_prefix('(') {
                Some(inner) => (false, inner.strip_suffix(')').ok_or_else(bad)?),
                None => (false, compact.as_str()),
            },
        };
        if body.is_empty() {
            return Err(bad());
        }
        // split at a sign that is not the first character
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i);
        let value = match split {
            Some(i) => {
                let re = parse_signed_rat(&body[..i]).ok_or_else(bad)?;
                let rest = &body[i..];
                let im_txt = rest.strip_suffix('i').ok_or_else(bad)?;
                let im = parse_imag(im_txt).ok_or_else(bad)?;
                GaussRational::new(re, im)
            }
            None => match body.strip_suffix('i') {
                Some(im_txt) => GaussRational::new(Rational::zero(), parse_imag(im_txt).ok_or_else(bad)?),
                None => GaussRational::real(parse_signed_rat(body).ok_or_else(bad)?),
            },
        };
        Ok(if neg { -value } else { value })
    }
}

fn parse_imag(txt: &str) -> Option<Rational> {
    match txt {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_signed_rat(txt),
    }
}

fn parse_signed_rat(txt: &str) -> Option<Rational> {
    let (neg, body) = match txt.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, txt.strip_prefix('+').unwrap_or(txt)),
    };
    let q = parse_rat(body)?;
    Some(if neg { -q } else { q })
}

/// `nat [ '/' nat ]` with a nonzero denominator.
pub(crate) fn parse_rat(txt: &str) -> Option<Rational> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match txt.split_once('/') {
        Some((n, d)) => {
            if !digits(n) || !digits(d) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.parse().ok()?, d))
        }
        None => {
            if !digits(txt) {
                return None;
            }
            Some(Rational::from_integer(txt.parse().ok()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn norm_of_half_plus_half_i() {
        let a = g("1/2+1/2i");
        let b = a.conj();
        assert_eq!(&a * &b, g("1/2"));
        assert_eq!(a.norm_sqr(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn parse_variants() {
        assert_eq!(g("-(1/2-3/4i)"), GaussRational::from_frac(-1, 2, 3, 4));
        assert_eq!(g("3/4i"), GaussRational::from_frac(0, 1, 3, 4));
        assert_eq!(g("-i"), GaussRational::from_frac(0, 1, -1, 1));
        assert_eq!(g("-3+4i"), GaussRational::from_frac(-3, 1, 4, 1));
        assert_eq!(g(" 2 "), GaussRational::from_int(2));
        assert!("1/0".parse::<GaussRational>().is_err());
        assert!("1.5".parse::<GaussRational>().is_err());
        assert!("abc".parse::<GaussRational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-3", "5/7i", "-(1/2-3/4i)", "(2+1/3i)", "-1i"] {
            let v = g(s);
            assert_eq!(g(&v.to_string()), v, "{s}");
        }
    }

    #[test]
    fn field_inverse_and_sqrt() {
        let a = g("3-4i");
        assert_eq!(&a * &a.inv().unwrap(), GaussRational::one());
        // (1+2i)^2 = -3+4i
        let r = g("-3+4i").sqrt().unwrap();
        assert_eq!(&r * &r, g("-3+4i"));
        assert!(g("2").sqrt().is_none());
        assert_eq!(g("-4").sqrt(), Some(g("2i")));
        assert_eq!(g("9/4").sqrt(), Some(g("3/2")));
    }

    #[test]
    fn conj_is_involution() {
        let a = g("-(2/3+7i)");
        assert_eq!(a.conj().conj(), a);
    }
}
