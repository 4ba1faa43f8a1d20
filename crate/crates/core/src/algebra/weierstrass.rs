use num_traits::Zero;

use super::monomial::Var;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Divides `p` by `divisor` with respect to `main_var`.
///
/// The divisor must have degree `m >= 1` in `main_var` with a nonzero
/// constant leading coefficient. Returns `(quotient, remainder)` with
/// `p = quotient * divisor + remainder` and `deg_main(remainder) < m`;
/// the pair is unique.
pub fn weierstrass_divide(p: &Poly, divisor: &Poly, main_var: Var) -> Result<(Poly, Poly)> {
    if p.n() != divisor.n() {
        return Err(Error::DimensionMismatch {
            left: p.n(),
            right: divisor.n(),
        });
    }
    main_var.slot(p.n()).ok_or(Error::UnknownVariable(main_var))?;
    let m = divisor.degree_in(main_var);
    if m == 0 || divisor.is_zero() {
        return Err(Error::ZeroDegreeDivisor(main_var));
    }
    let lead = divisor.coefficient_of(main_var, m);
    let lead_const = match lead.terms().next() {
        Some((mono, c)) if lead.len() == 1 && mono.is_one() => c.clone(),
        _ => return Err(Error::NonConstantLeading(main_var)),
    };
    let lead_inv = lead_const.inv().expect("nonzero leading coefficient");
    debug_assert!(!lead_const.is_zero());

    let n = p.n();
    let mut quotient = Poly::zero(n);
    let mut rem = p.clone();
    loop {
        let e = rem.degree_in(main_var);
        if rem.is_zero() || e < m {
            break;
        }
        // every main_var^e term is cancelled in one step
        let top = rem.coefficient_of(main_var, e);
        let shift = Poly::var(n, main_var).pow(e - m);
        let q_term = &top.scale(&lead_inv) * &shift;
        rem = &rem - &(&q_term * divisor);
        quotient = &quotient + &q_term;
    }
    Ok((quotient, rem))
}
