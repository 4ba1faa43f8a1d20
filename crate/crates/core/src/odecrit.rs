//! Polynomial solutions of `(p + q eta) zeta = R(eta) zeta'` for the three
//! shapes of `R`:
//!
//! * case a: `R = r + s eta`, `s != 0`
//! * case b: `R = r + s eta + t eta^2`, `t != 0`, distinct roots
//! * case c: `R = t (eta - xi)^2`, `t != 0`
//!
//! The `decide_*` functions apply the closed-form criteria and build the
//! witness; [`brute_force_ode`] solves for the coefficients directly.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{GaussRational, Matrix};
use crate::error::{Error, Result};

/// Dense polynomial in one variable `eta`, lowest coefficient first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<GaussRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `a + b eta`.
    pub fn linear(a: GaussRational, b: GaussRational) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussRational::zero();
        UniPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, c: &GaussRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::constant(GaussRational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussRational::from_int(i as i64))
                .collect(),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = c.unsigned_parts();
            let var = match i {
                0 => String::new(),
                1 => "eta".into(),
                _ => format!("eta^{i}"),
            };
            let text = if var.is_empty() {
                body
            } else if c.is_unit_magnitude_one() {
                var
            } else {
                format!("{body}*{var}")
            };
            match (first, neg) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, false) => write!(f, " + ")?,
                (false, true) => write!(f, " - ")?,
            }
            write!(f, "{text}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OdeCase {
    A,
    B,
    C,
}

impl OdeCase {
    pub fn label(self) -> &'static str {
        match self {
            OdeCase::A => "a",
            OdeCase::B => "b",
            OdeCase::C => "c",
        }
    }
}

/// Coefficients of the equation; entries a case does not use are ignored
/// (`r, s` in case c, `t` in case a, `xi` outside case c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeParams {
    pub p: GaussRational,
    pub q: GaussRational,
    pub r: GaussRational,
    pub s: GaussRational,
    pub t: GaussRational,
    pub xi: GaussRational,
}

impl Default for OdeParams {
    fn default() -> Self {
        let z = GaussRational::zero;
        OdeParams {
            p: z(),
            q: z(),
            r: z(),
            s: z(),
            t: z(),
            xi: z(),
        }
    }
}

impl OdeParams {
    /// The polynomial multiplying `zeta'`.
    pub fn rhs_coefficient(&self, case: OdeCase) -> UniPoly {
        match case {
            OdeCase::A => UniPoly::linear(self.r.clone(), self.s.clone()),
            OdeCase::B => UniPoly::new(vec![self.r.clone(), self.s.clone(), self.t.clone()]),
            OdeCase::C => UniPoly::linear(-&self.xi, GaussRational::one())
                .pow(2)
                .scale(&self.t),
        }
    }

    pub fn lhs_coefficient(&self) -> UniPoly {
        UniPoly::linear(self.p.clone(), self.q.clone())
    }

    /// `(p + q eta) zeta - R zeta'`.
    pub fn residual(&self, case: OdeCase, zeta: &UniPoly) -> UniPoly {
        self.lhs_coefficient()
            .mul(zeta)
            .sub(&self.rhs_coefficient(case).mul(&zeta.derivative()))
    }

    pub fn satisfied_by(&self, case: OdeCase, zeta: &UniPoly) -> bool {
        self.residual(case, zeta).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NoNonzero,
    ConstantOnly,
    NonconstantPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeDecision {
    pub verdict: Verdict,
    /// A solution of maximal degree, for the two solvable verdicts.
    pub witness: Option<UniPoly>,
}

impl OdeDecision {
    fn none() -> Self {
        OdeDecision {
            verdict: Verdict::NoNonzero,
            witness: None,
        }
    }

    fn constant() -> Self {
        OdeDecision {
            verdict: Verdict::ConstantOnly,
            witness: Some(UniPoly::constant(GaussRational::one())),
        }
    }

    fn nonconstant(witness: UniPoly) -> Self {
        OdeDecision {
            verdict: Verdict::NonconstantPoly,
            witness: Some(witness),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.witness.as_ref().and_then(UniPoly::degree)
    }
}

fn nonnegative_integer(x: &GaussRational) -> Option<u32> {
    let k = x.as_integer()?;
    if k.is_negative() {
        return None;
    }
    k.to_u32()
}

fn positive_integer(x: &GaussRational) -> Option<u32> {
    nonnegative_integer(x).filter(|&k| k > 0)
}

/// `(p + q eta) zeta = (r + s eta) zeta'`: nonconstant solutions exist iff
/// `q = 0` and `p/s` is a positive integer; then `zeta = (s eta + r)^{p/s}`.
pub fn decide_case_a(p: &GaussRational, q: &GaussRational, r: &GaussRational, s: &GaussRational) -> Result<OdeDecision> {
    if s.is_zero() {
        return Err(Error::InvalidOdeParams("case a requires s != 0"));
    }
    if q.is_zero() {
        if let Some(k) = positive_integer(&(p / s)) {
            return Ok(OdeDecision::nonconstant(UniPoly::linear(r.clone(), s.clone()).pow(k)));
        }
        if p.is_zero() {
            return Ok(OdeDecision::constant());
        }
    }
    Ok(OdeDecision::none())
}

/// `(p + q eta) zeta = (r + s eta + t eta^2) zeta'` with distinct roots
/// `xi_1, xi_2`. The exponents `e_i = (q xi_i + p) / (t (xi_i - xi_j))` are
/// found as the roots of `x^2 - (q/t) x + e_1 e_2`, whose coefficients are
/// symmetric in the `xi_i` and so lie in Q[i].
pub fn decide_case_b(
    p: &GaussRational,
    q: &GaussRational,
    r: &GaussRational,
    s: &GaussRational,
    t: &GaussRational,
) -> Result<OdeDecision> {
    if t.is_zero() {
        return Err(Error::InvalidOdeParams("case b requires t != 0"));
    }
    let four = GaussRational::from_int(4);
    let disc = &(s * s) - &(&four * &(r * t));
    if disc.is_zero() {
        return Err(Error::InvalidOdeParams("case b requires distinct roots"));
    }
    if p.is_zero() && q.is_zero() {
        return Ok(OdeDecision::constant());
    }
    let sum = q / t;
    // e1 e2 = -(q^2 r - p q s + p^2 t) / (t (s^2 - 4 r t))
    let numer = &(&(&(q * q) * r) - &(&(p * q) * s)) + &(&(p * p) * t);
    let prod = -(&numer / &(t * &disc));
    let Some(root) = (&(&sum * &sum) - &(&four * &prod)).sqrt() else {
        return Ok(OdeDecision::none());
    };
    let half = GaussRational::from_frac(1, 2, 0, 1);
    let e1 = &(&sum + &root) * &half;
    let e2 = &(&sum - &root) * &half;
    let (Some(k1), Some(k2)) = (nonnegative_integer(&e1), nonnegative_integer(&e2)) else {
        return Ok(OdeDecision::none());
    };
    if k1 + k2 == 0 {
        return Ok(OdeDecision::none());
    }
    let quad = UniPoly::new(vec![r.clone(), s.clone(), t.clone()]);
    let witness = if k1 == k2 {
        quad.scale(&t.inv().expect("t != 0")).pow(k1)
    } else {
        // e1 - e2 = (2p - q s / t) / (t (xi1 - xi2)) fixes which root goes
        // with which exponent
        let diff = &(&(&GaussRational::from_int(2) * p) - &(&(q * s) / t)) / &(t * &(&e1 - &e2));
        let total = -(s / t);
        let xi1 = &(&total + &diff) * &half;
        let xi2 = &(&total - &diff) * &half;
        let f1 = UniPoly::linear(-xi1, GaussRational::one()).pow(k1);
        let f2 = UniPoly::linear(-xi2, GaussRational::one()).pow(k2);
        f1.mul(&f2)
    };
    Ok(OdeDecision::nonconstant(witness))
}

/// `(p + q eta) zeta = t (eta - xi)^2 zeta'`: nonconstant solutions exist
/// iff `q/t` is a positive integer and `q xi + p = 0`; then
/// `zeta = (eta - xi)^{q/t}`.
pub fn decide_case_c(p: &GaussRational, q: &GaussRational, t: &GaussRational, xi: &GaussRational) -> Result<OdeDecision> {
    if t.is_zero() {
        return Err(Error::InvalidOdeParams("case c requires t != 0"));
    }
    if (&(q * xi) + p).is_zero() {
        if let Some(k) = positive_integer(&(q / t)) {
            return Ok(OdeDecision::nonconstant(UniPoly::linear(-xi, GaussRational::one()).pow(k)));
        }
    }
    if p.is_zero() && q.is_zero() {
        return Ok(OdeDecision::constant());
    }
    Ok(OdeDecision::none())
}

/// Dispatches to the `decide_*` function for `case`.
pub fn decide(params: &OdeParams, case: OdeCase) -> Result<OdeDecision> {
    let OdeParams { p, q, r, s, t, xi } = params;
    match case {
        OdeCase::A => decide_case_a(p, q, r, s),
        OdeCase::B => decide_case_b(p, q, r, s, t),
        OdeCase::C => decide_case_c(p, q, t, xi),
    }
}

/// Solves for `zeta = sum_{m <= max_degree} c_m eta^m` directly and reports
/// the largest degree among the solutions.
pub fn brute_force_ode(params: &OdeParams, case: OdeCase, max_degree: u32) -> OdeDecision {
    let unknowns = max_degree as usize + 1;
    let columns: Vec<UniPoly> = (0..unknowns)
        .map(|m| {
            let mut c = vec![GaussRational::zero(); m + 1];
            c[m] = GaussRational::one();
            params.residual(case, &UniPoly::new(c))
        })
        .collect();
    let rows = columns.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let matrix = Matrix::from_fn(rows, unknowns, |i, j| {
        columns[j].coeffs().get(i).cloned().unwrap_or_else(GaussRational::zero)
    });
    let best = matrix
        .kernel()
        .into_iter()
        .map(UniPoly::new)
        .max_by_key(|z| z.degree());
    match best {
        None => OdeDecision::none(),
        Some(z) if z.degree() == Some(0) => OdeDecision {
            verdict: Verdict::ConstantOnly,
            witness: Some(z),
        },
        Some(z) => OdeDecision::nonconstant(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    fn params(p: &str, q: &str, r: &str, s: &str, t: &str, xi: &str) -> OdeParams {
        OdeParams {
            p: g(p),
            q: g(q),
            r: g(r),
            s: g(s),
            t: g(t),
            xi: g(xi),
        }
    }

    #[test]
    fn case_a_examples() {
        let d = decide_case_a(&g("2"), &g("0"), &g("0"), &g("1")).unwrap();
        assert_eq!(d.verdict, Verdict::NonconstantPoly);
        assert_eq!(d.witness.unwrap().to_string(), "eta^2");
        // p/s = -1/2
        let d = decide_case_a(&g("1"), &g("0"), &g("1"), &g("-2")).unwrap();
        assert_eq!(d.verdict, Verdict::NoNonzero);
        let d = decide_case_a(&g("0"), &g("0"), &g("5"), &g("1+i")).unwrap();
        assert_eq!(d.verdict, Verdict::ConstantOnly);
        assert!(decide_case_a(&g("1"), &g("0"), &g("1"), &g("0")).is_err());
    }

    #[test]
    fn case_b_example_with_distinct_exponents() {
        let d = decide_case_b(&g("1"), &g("3"), &g("0"), &g("1"), &g("1")).unwrap();
        assert_eq!(d.verdict, Verdict::NonconstantPoly);
        // eta (eta + 1)^2
        assert_eq!(d.witness.unwrap().to_string(), "eta + 2*eta^2 + eta^3");
        let d = decide_case_b(&g("1/3"), &g("0"), &g("0"), &g("1"), &g("1")).unwrap();
        assert_eq!(d.verdict, Verdict::NoNonzero);
        let d = decide_case_b(&g("0"), &g("0"), &g("2"), &g("3"), &g("1")).unwrap();
        assert_eq!(d.verdict, Verdict::ConstantOnly);
    }

    #[test]
    fn case_b_equal_exponents() {
        // roots 1, -1; q = 2, p = 0 gives e1 = e2 = 1
        let pr = params("0", "2", "-1", "0", "1", "0");
        let d = decide(&pr, OdeCase::B).unwrap();
        assert_eq!(d.verdict, Verdict::NonconstantPoly);
        assert!(pr.satisfied_by(OdeCase::B, d.witness.as_ref().unwrap()));
        assert_eq!(d.degree(), Some(2));
    }

    #[test]
    fn case_c_examples() {
        let d = decide_case_c(&g("0"), &g("2"), &g("1"), &g("0")).unwrap();
        assert_eq!(d.witness.unwrap().to_string(), "eta^2");
        assert_eq!(decide_case_c(&g("0"), &g("0"), &g("1"), &g("3")).unwrap().verdict, Verdict::ConstantOnly);
        assert_eq!(decide_case_c(&g("0"), &g("3"), &g("2"), &g("0")).unwrap().verdict, Verdict::NoNonzero);
    }

    #[test]
    fn brute_force_examples() {
        let d = brute_force_ode(&params("2", "0", "0", "1", "0", "0"), OdeCase::A, 5);
        assert_eq!((d.verdict, d.degree()), (Verdict::NonconstantPoly, Some(2)));
        let d = brute_force_ode(&params("1", "0", "1", "-2", "0", "0"), OdeCase::A, 12);
        assert_eq!(d.verdict, Verdict::NoNonzero);
        let d = brute_force_ode(&params("0", "0", "0", "0", "1", "2"), OdeCase::C, 12);
        assert_eq!(d.verdict, Verdict::ConstantOnly);
    }

    #[test]
    fn unipoly_display() {
        let u = UniPoly::new(vec![g("-1"), g("0"), g("1/2+i")]);
        assert_eq!(u.to_string(), "-1 + (1/2+1i)*eta^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
