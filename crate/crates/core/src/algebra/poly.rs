//! Sparse polynomials in `z_1..z_n, zb_1..zb_n, w` over Q[i].
//!
//! The barred variables are independent indeterminates: this is the
//! complexified ring in which the CR equations and the restriction
//! `F(z, rho(z, zb))` are polynomial identities.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::monomial::{Monomial, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, GaussRational::one())
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        Poly::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: GaussRational) -> Self {
        assert_eq!(m.n(), n, "monomial dimension mismatch");
        let mut p = Poly::zero(n);
        p.add_term(m, c);
        p
    }

    /// The polynomial consisting of the single variable `v`.
    ///
    /// Panics if `v` is out of range; [`Poly::try_var`] is the checked form.
    pub fn var(n: usize, v: Var) -> Self {
        Poly::try_var(n, v).expect("variable out of range")
    }

    pub fn try_var(n: usize, v: Var) -> Result<Self> {
        v.slot(n).ok_or(Error::UnknownVariable(v))?;
        Ok(Poly::monomial(n, Monomial::one(n).with_exp(v, 1), GaussRational::one()))
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussRational)>,
    {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Poly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.mul_bounded(other, Some(max_degree))
    }

    fn mul_bounded(&self, other: &Poly, max_degree: Option<u32>) -> Poly {
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            for (mb, cb) in &other.terms {
                if let Some(max) = max_degree {
                    if da + mb.total_degree() > max {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, v: Var) -> Result<Poly> {
        let slot = v.slot(self.n).ok_or(Error::UnknownVariable(v))?;
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exps()[slot];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[slot] -= 1;
            out.add_term(Monomial::from_exps(exps), c * &GaussRational::from(e as i64));
        }
        Ok(out)
    }

    /// Complex conjugation on the w-free subring: swaps `z_i` and `zb_i` and
    /// conjugates coefficients.
    pub fn conjugate(&self) -> Result<Poly> {
        if self.contains_w() {
            return Err(Error::ContainsW);
        }
        let n = self.n;
        Ok(Poly {
            n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::from_parts(m.zb(), m.z(), 0), c.conj()))
                .collect(),
        })
    }

    pub fn contains_w(&self) -> bool {
        self.terms.keys().any(|m| m.w() > 0)
    }

    /// True when no `zb` variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.antiholomorphic_degree() == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weighted_degree).max()
    }

    /// Lowest total degree of a term, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::total_degree)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Terms of degree exactly `d`; `weighted` counts `w` twice.
    pub fn homogeneous_part(&self, d: u32, weighted: bool) -> Poly {
        self.filter_terms(|m| degree_of(m, weighted) == d)
    }

    /// All nonzero homogeneous parts, keyed by degree.
    pub fn homogeneous_parts(&self, weighted: bool) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(degree_of(m, weighted))
                .or_insert_with(|| Poly::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self, weighted: bool) -> bool {
        let mut degs = self.terms.keys().map(|m| degree_of(m, weighted));
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        self.filter_terms(|m| m.total_degree() <= max_degree)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            if m.exp(v) == e {
                out.add_term(m.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    /// Replaces `w` by `q` and expands.
    pub fn substitute_w(&self, q: &Poly) -> Result<Poly> {
        self.substitute_w_impl(q, None)
    }

    /// As [`Poly::substitute_w`], discarding terms of total degree above
    /// `max_degree` as they arise.
    pub fn substitute_w_truncated(&self, q: &Poly, max_degree: u32) -> Result<Poly> {
        self.substitute_w_impl(q, Some(max_degree))
    }

    fn substitute_w_impl(&self, q: &Poly, max_degree: Option<u32>) -> Result<Poly> {
        self.check_dim(q)?;
        if q.contains_w() {
            return Err(Error::ContainsW);
        }
        if !q.coeff(&Monomial::one(self.n)).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let trunc = |p: Poly| match max_degree {
            Some(d) => p.truncate(d),
            None => p,
        };
        // group by w exponent: self = sum_j c_j(z, zb) w^j
        let mut by_w: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_w.entry(m.w())
                .or_insert_with(|| Poly::zero(self.n))
                .add_term(m.with_exp(Var::W, 0), c.clone());
        }
        let mut out = Poly::zero(self.n);
        let mut power = Poly::one(self.n);
        let mut current = 0;
        for (j, coeff) in by_w {
            while current < j {
                power = match max_degree {
                    Some(d) => power.mul_truncated(q, d),
                    None => &power * q,
                };
                current += 1;
            }
            if power.is_zero() {
                break;
            }
            let term = match max_degree {
                Some(d) => coeff.mul_truncated(&power, d),
                None => &coeff * &power,
            };
            out = &out + &trunc(term);
        }
        Ok(out)
    }

    /// Substitutes `z_i -> z_images[i-1]`, `zb_i -> zb_images[i-1]` and keeps
    /// `w` as the `w` of the target ring. All images must share one ambient
    /// dimension `m`, which becomes the dimension of the result.
    pub fn compose(&self, z_images: &[Poly], zb_images: &[Poly]) -> Result<Poly> {
        if z_images.len() != self.n || zb_images.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: z_images.len().min(zb_images.len()),
            });
        }
        let m = z_images.first().map_or(self.n, Poly::n);
        if let Some(bad) = z_images.iter().chain(zb_images).find(|p| p.n != m) {
            return Err(Error::DimensionMismatch {
                left: m,
                right: bad.n,
            });
        }
        let images: Vec<&Poly> = z_images.iter().chain(zb_images).collect();
        let w_target = Poly::var(m, Var::W);
        // power caches per slot
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one(m)]; 2 * self.n + 1];
        let power = |slot: usize, e: u32, cache: &mut Vec<Vec<Poly>>| -> Poly {
            let base = if slot == 2 * self.n { &w_target } else { images[slot] };
            while cache[slot].len() <= e as usize {
                let next = cache[slot].last().unwrap() * base;
                cache[slot].push(next);
            }
            cache[slot][e as usize].clone()
        };
        let mut out = Poly::zero(m);
        for (mono, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (slot, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    term = &term * &power(slot, e, &mut cache);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn degree_of(m: &Monomial, weighted: bool) -> u32 {
    if weighted {
        m.weighted_degree()
    } else {
        m.total_degree()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on dimension mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussRational::one())
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly[n={}]({})", self.n, crate::polyio::format_poly(self))
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::polyio::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&p("zb1*z2") + &Poly::zero(2), p("zb1*z2"));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("z1 + zb1") * &p("z1 - zb1"), p("z1^2 - zb1^2"));
    }

    #[test]
    fn exact_modulus() {
        assert_eq!(&p("(1/2+1/2i)") * &p("(1/2-1/2i)"), p("1/2"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Poly::one(2);
        let b = Poly::one(3);
        assert!(matches!(a.checked_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn derivatives_of_example_defining_functions() {
        let q = p("zb1*z2");
        assert_eq!(q.differentiate(Var::Zb(1)).unwrap(), p("z2"));
        assert!(q.differentiate(Var::Zb(2)).unwrap().is_zero());
        let rho = p("zb1*z2 + zb2^3");
        assert_eq!(rho.differentiate(Var::Zb(2)).unwrap(), p("3*zb2^2"));
        assert_eq!(rho.differentiate(Var::Zb(3)), Err(Error::UnknownVariable(Var::Zb(3))));
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("i*z1").conjugate().unwrap(), p("-1i*zb1"));
        assert_eq!(p("zb1*z2 + zb2^3").conjugate().unwrap(), p("z1*zb2 + z2^3"));
        assert_eq!(p("w").conjugate(), Err(Error::ContainsW));
    }

    #[test]
    fn substitution_into_w() {
        let q = p("zb1*z2 + zb2^3");
        assert_eq!(p("w").substitute_w(&q).unwrap(), q);
        assert_eq!(
            p("w^2").substitute_w(&q).unwrap(),
            p("zb1^2*z2^2 + 2*zb1*z2*zb2^3 + zb2^6")
        );
        assert_eq!(p("z1 + w").substitute_w(&Poly::zero(2)).unwrap(), p("z1"));
        assert_eq!(p("w").substitute_w(&p("1 + z1")), Err(Error::ConstantTerm));
        assert_eq!(p("w").substitute_w(&p("w")), Err(Error::ContainsW));
    }

    #[test]
    fn truncated_substitution_matches_truncation() {
        let q = p("zb1*z2 + zb2^3");
        let f = p("w^3 + z1*w + w^2");
        assert_eq!(
            f.substitute_w_truncated(&q, 6).unwrap(),
            f.substitute_w(&q).unwrap().truncate(6)
        );
    }

    #[test]
    fn homogeneous_parts() {
        let f = p("z1 + z1*zb1 + w");
        assert_eq!(f.homogeneous_part(2, true), p("z1*zb1 + w"));
        assert_eq!(f.homogeneous_part(2, false), p("z1*zb1"));
        let sq = p("zb1*z2 + zb2^3").pow(2);
        assert_eq!(sq.homogeneous_part(6, false), p("zb2^6"));
        assert_eq!(sq.homogeneous_part(5, false), p("2*zb1*z2*zb2^3"));
        assert_eq!(sq.homogeneous_part(4, false), p("zb1^2*z2^2"));
    }

    #[test]
    fn compose_linear_swap() {
        // z1 <-> z2
        let f = p("zb1*z2");
        let z = [Poly::var(2, Var::Z(2)), Poly::var(2, Var::Z(1))];
        let zb = [Poly::var(2, Var::Zb(2)), Poly::var(2, Var::Zb(1))];
        assert_eq!(f.compose(&z, &zb).unwrap(), p("z1*zb2"));
    }
}
