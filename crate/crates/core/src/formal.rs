//! Order-by-order extension of CR functions on `w = Q + E` to a holomorphic
//! `F(z, w)`, truncated at a fixed total degree.

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::extend::extend_homogeneous;
use crate::manifold::Manifold;

/// Truncated extension with its certificate `residual = f - F(z, rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExtension {
    pub f: Poly,
    pub order: u32,
    pub residual: Poly,
    /// Lowest total degree in `residual`; `None` when it vanishes.
    pub residual_order: Option<u32>,
    /// Every homogeneous solve had a single solution.
    pub unique: bool,
    /// Degrees of the stages that produced a nonzero `F_k`.
    pub stages: Vec<u32>,
}

impl FormalExtension {
    /// `f - F(z, rho)` has no term of total degree `<= order`.
    pub fn certified(&self) -> bool {
        self.residual_order.is_none_or(|r| r > self.order)
    }
}

/// Builds `F` with `f - F(z, rho) = O(|z|^{order+1})`.
///
/// Each stage takes the lowest-degree part `f_k` of the remainder, extends
/// it on the quadric, and subtracts `F_k(z, rho)`. `f` is first checked to
/// be CR on `M` through `order`; a failure is reported at the degree of the
/// stage where it is detected.
pub fn formal_extend(m: &Manifold, f: &Poly, order: u32) -> Result<FormalExtension> {
    let n = m.n();
    if n < 2 {
        return Err(Error::RequiresNGe2);
    }
    if f.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: f.n() });
    }
    if f.contains_w() {
        return Err(Error::ContainsW);
    }
    if m.rank_condition() == 0 {
        return Err(Error::DegenerateQuadric);
    }
    let q = m.quadric();
    let model = Manifold::from_quadric(q.clone());
    let mut rem = f.truncate(order);
    if !m.cr_defect(&rem, order)?.is_empty() {
        return Err(Error::NotCRAtDegree(rem.order().unwrap_or(0)));
    }
    let mut ext = Poly::zero(n);
    let mut unique = true;
    let mut stages = Vec::new();
    while let Some(k) = rem.order() {
        let fk = rem.homogeneous_part(k, false);
        if !model.is_cr(&fk)?.holds {
            return Err(Error::NotCRAtDegree(k));
        }
        let step = extend_homogeneous(q, &fk)?;
        unique &= step.unique;
        rem = &rem - &step.f.substitute_w_truncated(m.rho(), order)?;
        debug_assert!(rem.order().is_none_or(|r| r > k));
        ext = &ext + &step.f;
        stages.push(k);
    }
    let residual = f - &ext.substitute_w(m.rho())?;
    Ok(FormalExtension {
        residual_order: residual.order(),
        f: ext,
        order,
        residual,
        unique,
        stages,
    })
}

/// True iff every stage of [`formal_extend`] had a unique solution. Requires
/// the rank condition.
pub fn check_formal_uniqueness(m: &Manifold, f: &Poly, order: u32) -> Result<bool> {
    match m.rank_condition() {
        0 => Err(Error::DegenerateQuadric),
        1 => Err(Error::RankTooLow(1)),
        _ => Ok(formal_extend(m, f, order)?.unique),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::extend::extend_polynomial;
    use crate::manifold::Quadric;
    use crate::polyio::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn ehot() -> Manifold {
        let a = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![0.into(), 0.into()]]);
        Manifold::new(Quadric::hermitian(a).unwrap(), p("zb2^3")).unwrap()
    }

    #[test]
    fn restriction_roundtrip_on_cubic_perturbation() {
        let m = ehot();
        let f = p("w^2 + z1").substitute_w(m.rho()).unwrap();
        let r = formal_extend(&m, &f, 8).unwrap();
        assert_eq!(r.f, p("z1 + w^2"));
        assert_eq!(r.residual_order, None);
        assert!(r.certified());
    }

    #[test]
    fn not_cr_is_rejected_at_first_stage() {
        assert_eq!(formal_extend(&ehot(), &p("zb1"), 8), Err(Error::NotCRAtDegree(1)));
    }

    #[test]
    fn degenerate_quadric() {
        let norm = p("z1*zb1 + z2*zb2");
        let m = Manifold::new(Quadric::zero(2), &norm * &norm).unwrap();
        assert_eq!(formal_extend(&m, &norm, 8), Err(Error::DegenerateQuadric));
    }

    #[test]
    fn uniqueness_checks() {
        let sq = Quadric::new(Matrix::zeros(2, 2), Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        let m = Manifold::from_quadric(sq.clone());
        assert!(check_formal_uniqueness(&m, &sq.to_poly(), 8).unwrap());
        assert_eq!(formal_extend(&m, &sq.to_poly(), 8).unwrap().f, p("w"));
        assert_eq!(check_formal_uniqueness(&ehot(), &p("z1"), 8), Err(Error::RankTooLow(1)));
    }

    #[test]
    fn agrees_with_polynomial_extension_when_e_vanishes() {
        let q = Quadric::hermitian(Matrix::identity(2)).unwrap();
        let f = p("z1 + 2*w^2 - i*z2*w + w^3").substitute_w(&q.to_poly()).unwrap();
        let formal = formal_extend(&Manifold::from_quadric(q.clone()), &f, 8).unwrap();
        assert_eq!(formal.f, extend_polynomial(&q, &f, true).unwrap().f);
    }

    #[test]
    fn higher_order_only_appends_terms() {
        let m = ehot();
        let f = p("z1*w + w^3 + z2^5").substitute_w(m.rho()).unwrap();
        let low = formal_extend(&m, &f, 5).unwrap();
        let high = formal_extend(&m, &f, 9).unwrap();
        assert!(low.certified() && high.certified());
        assert_eq!(high.f.filter_terms(|t| t.weighted_degree() <= 5), low.f);
    }
}
