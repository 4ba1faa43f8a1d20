//! Quadrics `w = Q(z, zb)`, manifolds `w = Q + E`, the CR vector fields and
//! the CR-function test.

use num_traits::Zero;

use crate::algebra::{GaussRational, Matrix, Monomial, Poly, Var};
use crate::error::{Error, Result};

/// `Q(z, zb) = z* A z + conj(z^t B z) + z^t C z`, with `B` and `C` symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    n: usize,
    a: Matrix,
    b: Matrix,
    c: Matrix,
}

impl Quadric {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        let n = a.rows();
        for m in [&a, &b, &c] {
            if !m.is_square() || m.rows() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: m.rows().max(m.cols()),
                });
            }
        }
        if n == 0 {
            return Err(Error::DimensionMismatch { left: 1, right: 0 });
        }
        if !b.is_symmetric() {
            return Err(Error::AsymmetricB);
        }
        if !c.is_symmetric() {
            return Err(Error::AsymmetricC);
        }
        Ok(Quadric { n, a, b, c })
    }

    /// `z* A z` alone.
    pub fn hermitian(a: Matrix) -> Result<Self> {
        let n = a.rows();
        Quadric::new(a, Matrix::zeros(n, n), Matrix::zeros(n, n))
    }

    pub fn zero(n: usize) -> Self {
        Quadric {
            n,
            a: Matrix::zeros(n, n),
            b: Matrix::zeros(n, n),
            c: Matrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    /// `Q` as a polynomial: `sum A_ij zb_i z_j + conj(B_ij) zb_i zb_j + C_ij z_i z_j`.
    pub fn to_poly(&self) -> Poly {
        let n = self.n;
        let mut p = Poly::zero(n);
        let unit = |i: usize, j: usize, bar_i: bool, bar_j: bool| {
            let vi = if bar_i { Var::Zb(i + 1) } else { Var::Z(i + 1) };
            let vj = if bar_j { Var::Zb(j + 1) } else { Var::Z(j + 1) };
            let m = Monomial::one(n).with_exp(vi, 1);
            let e = m.exp(vj) + 1;
            m.with_exp(vj, e)
        };
        for i in 0..n {
            for j in 0..n {
                p.add_term(unit(i, j, true, false), self.a.get(i, j).clone());
                p.add_term(unit(i, j, true, true), self.b.get(i, j).conj());
                p.add_term(unit(i, j, false, false), self.c.get(i, j).clone());
            }
        }
        p
    }

    /// `dQ/dzb_i = sum_j A_ij z_j + 2 sum_j conj(B_ij) zb_j`, for `i` in `1..=n`.
    pub fn dzbar(&self, i: usize) -> Poly {
        let n = self.n;
        let two = GaussRational::from_int(2);
        let mut p = Poly::zero(n);
        for j in 0..n {
            p.add_term(
                Monomial::one(n).with_exp(Var::Z(j + 1), 1),
                self.a.get(i - 1, j).clone(),
            );
            p.add_term(
                Monomial::one(n).with_exp(Var::Zb(j + 1), 1),
                &two * &self.b.get(i - 1, j).conj(),
            );
        }
        p
    }

    /// Rank of the stacked `2n x n` matrix `[A*; B]`.
    pub fn rank_condition(&self) -> usize {
        self.a.adjoint().stack(&self.b).rank()
    }

    /// Linear change of coordinates `z = T z'`:
    /// `A -> T* A T`, `B -> T^t B T`, `C -> T^t C T`.
    pub fn transform(&self, t: &Matrix) -> Result<Quadric> {
        check_transform(self.n, t)?;
        let tt = t.transpose();
        Ok(Quadric {
            n: self.n,
            a: t.adjoint().mul(&self.a).mul(t),
            b: tt.mul(&self.b).mul(t),
            c: tt.mul(&self.c).mul(t),
        })
    }

    /// Basis of `{v : sum v_i zb_i is CR on w = Q}`, i.e. the solutions of
    /// `Q_{zb_l} v_k - Q_{zb_k} v_l = 0` for all `k < l`.
    pub fn cr_linear_space(&self) -> Result<Vec<Vec<GaussRational>>> {
        let n = self.n;
        if n < 2 {
            return Err(Error::RequiresNGe2);
        }
        let partials: Vec<Poly> = (1..=n).map(|i| self.dzbar(i)).collect();
        // coefficient of each linear monomial, one row per (pair, monomial)
        let linear: Vec<Monomial> = (1..=n)
            .flat_map(|j| [Var::Z(j), Var::Zb(j)])
            .map(|v| Monomial::one(n).with_exp(v, 1))
            .collect();
        let mut rows = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                for m in &linear {
                    let mut row = vec![GaussRational::zero(); n];
                    row[k] = partials[l].coeff(m);
                    row[l] = -partials[k].coeff(m);
                    rows.push(row);
                }
            }
        }
        Ok(Matrix::from_rows(rows).kernel())
    }
}

fn check_transform(n: usize, t: &Matrix) -> Result<()> {
    if !t.is_square() || t.rows() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: t.rows(),
        });
    }
    if t.determinant().is_zero() {
        return Err(Error::SingularTransform);
    }
    Ok(())
}

/// `w = rho(z, zb) = Q + E` with `E` w-free of order at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifold {
    quadric: Quadric,
    e: Poly,
    rho: Poly,
}

/// `L_{k,l} = rho_{zb_l} d/dzb_k - rho_{zb_k} d/dzb_l`, with `k < l` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRField {
    pub k: usize,
    pub l: usize,
    pub coeff_k: Poly,
    pub coeff_l: Poly,
}

impl CRField {
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        Ok(&(&self.coeff_k * &f.differentiate(Var::Zb(self.k))?)
            + &(&self.coeff_l * &f.differentiate(Var::Zb(self.l))?))
    }

    /// As [`CRField::apply`], keeping only terms of total degree `<= max_degree`.
    pub fn apply_truncated(&self, f: &Poly, max_degree: u32) -> Result<Poly> {
        let f = f.truncate(max_degree);
        let dk = f.differentiate(Var::Zb(self.k))?;
        let dl = f.differentiate(Var::Zb(self.l))?;
        Ok(&self.coeff_k.mul_truncated(&dk, max_degree) + &self.coeff_l.mul_truncated(&dl, max_degree))
    }
}

/// Outcome of the CR test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrCheck {
    pub holds: bool,
    /// Set when every `rho_{zb_j}` vanishes: `M` is a complex manifold and
    /// the CR condition is empty.
    pub vacuous: bool,
}

impl Manifold {
    pub fn new(quadric: Quadric, e: Poly) -> Result<Self> {
        if e.n() != quadric.n() {
            return Err(Error::DimensionMismatch {
                left: quadric.n(),
                right: e.n(),
            });
        }
        if e.contains_w() {
            return Err(Error::ContainsW);
        }
        if let Some(low) = e.order().filter(|&d| d < 3) {
            return Err(Error::EOrderTooLow(low));
        }
        let rho = &quadric.to_poly() + &e;
        Ok(Manifold { quadric, e, rho })
    }

    pub fn from_quadric(quadric: Quadric) -> Self {
        let n = quadric.n();
        Manifold::new(quadric, Poly::zero(n)).expect("zero E is always valid")
    }

    pub fn n(&self) -> usize {
        self.quadric.n()
    }

    pub fn quadric(&self) -> &Quadric {
        &self.quadric
    }

    pub fn e(&self) -> &Poly {
        &self.e
    }

    pub fn rho(&self) -> &Poly {
        &self.rho
    }

    pub fn rank_condition(&self) -> usize {
        self.quadric.rank_condition()
    }

    pub fn cr_field(&self, k: usize, l: usize) -> Result<CRField> {
        let n = self.n();
        if n < 2 {
            return Err(Error::RequiresNGe2);
        }
        if !(1 <= k && k < l && l <= n) {
            return Err(Error::InvalidPair { k, l, n });
        }
        Ok(CRField {
            k,
            l,
            coeff_k: self.rho.differentiate(Var::Zb(l))?,
            coeff_l: -self.rho.differentiate(Var::Zb(k))?,
        })
    }

    /// All fields `L_{k,l}` with `k < l`, in lexicographic order.
    pub fn cr_fields(&self) -> Result<Vec<CRField>> {
        let n = self.n();
        if n < 2 {
            return Err(Error::RequiresNGe2);
        }
        let mut out = Vec::new();
        for k in 1..=n {
            for l in k + 1..=n {
                out.push(self.cr_field(k, l)?);
            }
        }
        Ok(out)
    }

    /// True iff `L_{k,l} f = 0` identically for every pair.
    pub fn is_cr(&self, f: &Poly) -> Result<CrCheck> {
        if f.contains_w() {
            return Err(Error::ContainsW);
        }
        if f.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: f.n(),
            });
        }
        let fields = self.cr_fields()?;
        let vacuous = (1..=self.n()).all(|j| {
            self.rho
                .differentiate(Var::Zb(j))
                .map(|p| p.is_zero())
                .unwrap_or(false)
        });
        for field in &fields {
            if !field.apply(f)?.is_zero() {
                return Ok(CrCheck {
                    holds: false,
                    vacuous,
                });
            }
        }
        Ok(CrCheck {
            holds: true,
            vacuous,
        })
    }

    /// Terms of total degree `<= max_degree` of every `L_{k,l} f`, summed
    /// over pairs into one list. Empty means `f` is CR through that degree.
    pub fn cr_defect(&self, f: &Poly, max_degree: u32) -> Result<Vec<(usize, usize, Poly)>> {
        if f.contains_w() {
            return Err(Error::ContainsW);
        }
        let mut out = Vec::new();
        for field in self.cr_fields()? {
            let d = field.apply_truncated(f, max_degree)?;
            if !d.is_zero() {
                out.push((field.k, field.l, d));
            }
        }
        Ok(out)
    }

    /// `z = T z'`: transforms the quadric and replaces `E(z, zb)` by
    /// `E(T z', conj(T) zb')`.
    pub fn transform(&self, t: &Matrix) -> Result<Manifold> {
        let quadric = self.quadric.transform(t)?;
        let n = self.n();
        let z_images: Vec<Poly> = (0..n)
            .map(|i| {
                Poly::from_terms(
                    n,
                    (0..n).map(|j| {
                        (Monomial::one(n).with_exp(Var::Z(j + 1), 1), t.get(i, j).clone())
                    }),
                )
            })
            .collect();
        let zb_images: Vec<Poly> = (0..n)
            .map(|i| {
                Poly::from_terms(
                    n,
                    (0..n).map(|j| {
                        (Monomial::one(n).with_exp(Var::Zb(j + 1), 1), t.get(i, j).conj())
                    }),
                )
            })
            .collect();
        let e = self.e.compose(&z_images, &zb_images)?;
        Manifold::new(quadric, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::parse_poly;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| g(s)).collect()).collect())
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn zb1z2() -> Quadric {
        Quadric::hermitian(mat(&[&["0", "1"], &["0", "0"]])).unwrap()
    }

    fn ehot() -> Manifold {
        Manifold::new(zb1z2(), p("zb2^3")).unwrap()
    }

    #[test]
    fn quadric_polynomial() {
        assert_eq!(zb1z2().to_poly(), p("zb1*z2"));
        let q = Quadric::new(
            mat(&[&["1", "0"], &["0", "0"]]),
            mat(&[&["i", "0"], &["0", "0"]]),
            mat(&[&["0", "1"], &["1", "0"]]),
        )
        .unwrap();
        assert_eq!(q.to_poly(), p("z1*zb1 - i*zb1^2 + 2*z1*z2"));
    }

    #[test]
    fn rank_condition_examples() {
        assert_eq!(zb1z2().rank_condition(), 1);
        let sq = Quadric::new(Matrix::zeros(2, 2), Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        assert_eq!(sq.rank_condition(), 2);
        assert_eq!(Quadric::hermitian(Matrix::identity(2)).unwrap().rank_condition(), 2);
        assert_eq!(Quadric::zero(3).rank_condition(), 0);
    }

    #[test]
    fn constructor_rejects_asymmetric() {
        let b = mat(&[&["0", "1"], &["0", "0"]]);
        assert_eq!(
            Quadric::new(Matrix::zeros(2, 2), b.clone(), Matrix::zeros(2, 2)),
            Err(Error::AsymmetricB)
        );
        assert_eq!(
            Quadric::new(Matrix::zeros(2, 2), Matrix::zeros(2, 2), b),
            Err(Error::AsymmetricC)
        );
    }

    #[test]
    fn cr_field_coefficients() {
        let f = Manifold::from_quadric(zb1z2()).cr_field(1, 2).unwrap();
        assert_eq!((f.coeff_k, f.coeff_l), (Poly::zero(2), p("-z2")));
        let f = ehot().cr_field(1, 2).unwrap();
        assert_eq!((f.coeff_k, f.coeff_l), (p("3*zb2^2"), p("-z2")));
        let norm = p("z1*zb1 + z2*zb2");
        let quartic = Manifold::new(Quadric::zero(2), &norm * &norm).unwrap();
        let f = quartic.cr_field(1, 2).unwrap();
        assert_eq!(f.coeff_k, &norm * &p("2*z2"));
        assert_eq!(f.coeff_l, &norm * &p("-2*z1"));
        assert!(matches!(quartic.cr_field(2, 1), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn is_cr_examples() {
        let m = Manifold::from_quadric(zb1z2());
        assert_eq!(m.is_cr(&p("zb1")).unwrap(), CrCheck { holds: true, vacuous: false });
        assert!(!ehot().is_cr(&p("zb1")).unwrap().holds);
        let norm = p("z1*zb1 + z2*zb2");
        let quartic = Manifold::new(Quadric::zero(2), &norm * &norm).unwrap();
        let check = quartic.is_cr(&norm).unwrap();
        assert!(check.holds && !check.vacuous);
        assert_eq!(m.is_cr(&p("w")), Err(Error::ContainsW));
    }

    #[test]
    fn vacuous_flag_for_holomorphic_rho() {
        let m = Manifold::new(Quadric::zero(2), p("z1^3")).unwrap();
        let check = m.is_cr(&p("zb1")).unwrap();
        assert!(check.holds && check.vacuous);
    }

    #[test]
    fn linear_cr_space() {
        assert_eq!(zb1z2().cr_linear_space().unwrap(), vec![vec![g("1"), g("0")]]);
        assert!(Quadric::hermitian(Matrix::identity(2)).unwrap().cr_linear_space().unwrap().is_empty());
        let q = Quadric::new(
            mat(&[&["1", "0"], &["0", "0"]]),
            mat(&[&["1", "0"], &["0", "0"]]),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        assert_eq!(q.cr_linear_space().unwrap(), vec![vec![g("1"), g("0")]]);
        assert_eq!(Quadric::zero(2).cr_linear_space().unwrap().len(), 2);
    }

    #[test]
    fn transform_by_swap() {
        let swap = mat(&[&["0", "1"], &["1", "0"]]);
        let q = zb1z2().transform(&swap).unwrap();
        assert_eq!(q.to_poly(), p("z1*zb2"));
        assert_eq!(zb1z2().transform(&Matrix::identity(2)).unwrap(), zb1z2());
        assert_eq!(
            zb1z2().transform(&mat(&[&["1", "1"], &["1", "1"]])),
            Err(Error::SingularTransform)
        );
    }

    #[test]
    fn manifold_transform_moves_e() {
        let swap = mat(&[&["0", "1"], &["1", "0"]]);
        let m = ehot().transform(&swap).unwrap();
        assert_eq!(m.rho(), &p("z1*zb2 + zb1^3"));
    }

    #[test]
    fn e_order_checked() {
        assert_eq!(Manifold::new(zb1z2(), p("zb1^2")), Err(Error::EOrderTooLow(2)));
        assert_eq!(Manifold::new(zb1z2(), p("zb1^3*w")), Err(Error::ContainsW));
    }
}
