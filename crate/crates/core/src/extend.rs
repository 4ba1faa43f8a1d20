//! Polynomial extension on quadrics: the matrix `X_d` of the CR equations on
//! degree-`d` polynomials, its kernel, the monomial-matching solve
//! `f = sum c_{alpha j} z^alpha Q^j`, and the linear counterexample for
//! rank-one quadrics.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{zzbar_monomials, GaussRational, Matrix, Monomial, Poly, Var};
use crate::error::{Error, Result};
use crate::manifold::{Manifold, Quadric};

/// Degree-`d` monomials in `(z, zb)` sorted by holomorphic degree, then the
/// `z` exponents, then the `zb` exponents, all ascending. For `n = 2` this is
/// `(a1 + a2, a1, b1)`.
pub fn ordered_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut ms = zzbar_monomials(n, d);
    ms.sort_by_cached_key(|m| {
        let mut key = vec![m.holomorphic_degree()];
        key.extend_from_slice(m.z());
        key.extend_from_slice(m.zb());
        key
    });
    ms
}

/// One row of `X_d`: the coefficient of `monomial` in `L_{k,l} f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub k: usize,
    pub l: usize,
    pub monomial: Monomial,
}

/// The matrix `X_d` with its row and column labels; `X_d c = 0` iff the
/// polynomial with coefficient vector `c` is CR on the quadric.
#[derive(Clone, Debug)]
pub struct CrMatrix {
    pub degree: u32,
    pub columns: Vec<Monomial>,
    pub rows: Vec<RowLabel>,
    pub matrix: Matrix,
}

impl CrMatrix {
    /// CSV dump: a header of column monomials, then one line per row
    /// labelled `L(k,l):monomial`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for (i, label) in self.rows.iter().enumerate() {
            out.push_str(&format!("L({},{}):{}", label.k, label.l, label.monomial));
            for v in self.matrix.row(i) {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Builds `X_d` for the quadric. Rows run over pairs `k < l` in
/// lexicographic order, and within a pair over the degree-`d` monomials in
/// column order.
pub fn build_xd(q: &Quadric, d: u32) -> CrMatrix {
    let n = q.n();
    let columns = ordered_monomials(n, d);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let partials: Vec<Poly> = (1..=n).map(|i| q.dzbar(i)).collect();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|k| (k + 1..=n).map(move |l| (k, l))).collect();
    let per_pair = columns.len();
    let mut matrix = Matrix::zeros(pairs.len() * per_pair, columns.len());
    let mut rows = Vec::with_capacity(pairs.len() * per_pair);
    for (p, &(k, l)) in pairs.iter().enumerate() {
        for m in &columns {
            rows.push(RowLabel {
                k,
                l,
                monomial: m.clone(),
            });
        }
        for (col, m) in columns.iter().enumerate() {
            // L_{k,l} m = Q_{zb_l} dm/dzb_k - Q_{zb_k} dm/dzb_l
            let image = &(&partials[l - 1] * &derivative(m, Var::Zb(k)))
                - &(&partials[k - 1] * &derivative(m, Var::Zb(l)));
            for (out, c) in image.terms() {
                matrix.set(p * per_pair + index[out], col, c.clone());
            }
        }
    }
    CrMatrix {
        degree: d,
        columns,
        rows,
        matrix,
    }
}

fn derivative(m: &Monomial, v: Var) -> Poly {
    let n = m.n();
    let e = m.exp(v);
    if e == 0 {
        return Poly::zero(n);
    }
    Poly::monomial(n, m.with_exp(v, e - 1), GaussRational::from_int(e as i64))
}

/// `R_d = sum_{j=1}^{d} 2 floor((j+1)/2) (d-j+1)`, the rank of `X_d` for
/// `Q = |z1|^2 + beta z2 zb1 + delta |z2|^2` with `delta != 0`.
pub fn rank_formula(d: u32) -> u64 {
    let d = d as u64;
    (1..=d).map(|j| 2 * ((j + 1) / 2) * (d - j + 1)).sum()
}

/// `floor((d+2)^2 / 4)`, the dimension of the degree-`d` CR space on an
/// `n = 2` quadric satisfying the rank condition.
pub fn cr_dimension_formula(d: u32) -> u64 {
    let d = d as u64;
    (d + 2) * (d + 2) / 4
}

/// Kernel of `X_d` as polynomials.
#[derive(Clone, Debug)]
pub struct CRSpace {
    pub degree: u32,
    pub basis: Vec<Poly>,
    /// Number of degree-`d` monomials in `(z, zb)`.
    pub monomials: usize,
    pub rank: usize,
}

impl CRSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn cr_homogeneous_basis(q: &Quadric, d: u32) -> CRSpace {
    let xd = build_xd(q, d);
    let red = xd.matrix.rref();
    let kernel = red.kernel(xd.columns.len());
    let n = q.n();
    let basis = kernel
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                n,
                xd.columns.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    CRSpace {
        degree: d,
        basis,
        monomials: xd.columns.len(),
        rank: red.pivots.len(),
    }
}

/// The unknowns `z^alpha w^j` with `|alpha| + 2j = d`, and the matrix whose
/// column for `z^alpha w^j` holds the coefficients of `z^alpha Q^j` over the
/// degree-`d` monomials in `(z, zb)` (rows in [`ordered_monomials`] order).
#[derive(Clone, Debug)]
pub struct MatchingSystem {
    pub degree: u32,
    pub unknowns: Vec<Monomial>,
    pub rows: Vec<Monomial>,
    pub matrix: Matrix,
}

pub fn matching_system(q: &Quadric, d: u32) -> MatchingSystem {
    let n = q.n();
    let qp = q.to_poly();
    let rows = ordered_monomials(n, d);
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut unknowns = Vec::new();
    let mut q_pow = Poly::one(n);
    let mut images = Vec::new();
    for j in 0..=d / 2 {
        for alpha in crate::algebra::compositions(n, d - 2 * j) {
            let zeros = vec![0; n];
            let m = Monomial::from_parts(&alpha, &zeros, j);
            let za = Poly::monomial(n, Monomial::from_parts(&alpha, &zeros, 0), GaussRational::one());
            images.push(&za * &q_pow);
            unknowns.push(m);
        }
        q_pow = &q_pow * &qp;
    }
    let mut matrix = Matrix::zeros(rows.len(), unknowns.len());
    for (col, image) in images.iter().enumerate() {
        for (m, c) in image.terms() {
            matrix.set(index[m], col, c.clone());
        }
    }
    MatchingSystem {
        degree: d,
        unknowns,
        rows,
        matrix,
    }
}

/// A holomorphic extension `F(z, w)` with `f - F(z, rho)` as certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub f: Poly,
    pub residual: Poly,
    pub unique: bool,
}

/// Solves `f = F(z, Q)` for homogeneous CR `f` of degree `d`, with `F`
/// weighted homogeneous of degree `d`.
pub fn extend_homogeneous(q: &Quadric, f: &Poly) -> Result<ExtensionResult> {
    let n = q.n();
    if n < 2 {
        return Err(Error::RequiresNGe2);
    }
    if f.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: f.n() });
    }
    if f.contains_w() {
        return Err(Error::ContainsW);
    }
    if !f.is_homogeneous(false) {
        return Err(Error::NotHomogeneous);
    }
    let d = f.total_degree().unwrap_or(0);
    let model = Manifold::from_quadric(q.clone());
    if !model.is_cr(f)?.holds {
        return Err(Error::NotCR { degree: d });
    }
    solve_matching(q, f, d)
}

fn solve_matching(q: &Quadric, f: &Poly, d: u32) -> Result<ExtensionResult> {
    let n = q.n();
    let sys = matching_system(q, d);
    let rhs: Vec<GaussRational> = sys.rows.iter().map(|m| f.coeff(m)).collect();
    let sol = sys.matrix.solve(&rhs).ok_or(Error::NoExtension { degree: d })?;
    let ext = Poly::from_terms(
        n,
        sys.unknowns.iter().cloned().zip(sol.particular).filter(|(_, c)| !c.is_zero()),
    );
    let residual = f - &ext.substitute_w(&q.to_poly())?;
    Ok(ExtensionResult {
        f: ext,
        residual,
        unique: sol.kernel.is_empty(),
    })
}

/// Extends each homogeneous part of `f` and sums the results. With
/// `require_rank`, quadrics failing the rank condition are rejected up
/// front.
pub fn extend_polynomial(q: &Quadric, f: &Poly, require_rank: bool) -> Result<ExtensionResult> {
    if require_rank {
        let r = q.rank_condition();
        if r < 2 {
            return Err(Error::RankTooLow(r));
        }
    }
    if f.contains_w() {
        return Err(Error::ContainsW);
    }
    let n = q.n();
    let mut total = Poly::zero(n);
    let mut unique = true;
    for part in f.homogeneous_parts(false).values() {
        let r = extend_homogeneous(q, part)?;
        unique &= r.unique;
        total = &total + &r.f;
    }
    let residual = f - &total.substitute_w(&q.to_poly())?;
    Ok(ExtensionResult {
        f: total,
        residual,
        unique,
    })
}

/// A linear CR function `h = sum v_i zb_i` with no holomorphic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCounterexample {
    pub v: Vec<GaussRational>,
    pub h: Poly,
}

/// For a rank-one quadric, a nonzero `v` with `v . zb` CR; `None` when the
/// rank condition holds. The result is checked before it is returned:
/// `h` is CR and its extension solve is inconsistent.
pub fn counterexample_linear(q: &Quadric) -> Result<Option<LinearCounterexample>> {
    let n = q.n();
    if n < 2 {
        return Err(Error::RequiresNGe2);
    }
    match q.rank_condition() {
        0 => return Err(Error::DegenerateQuadric),
        r if r >= 2 => return Ok(None),
        _ => {}
    }
    let v = q
        .cr_linear_space()?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Certificate("rank-one quadric with empty linear CR space".into()))?;
    let h = Poly::from_terms(
        n,
        v.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::one(n).with_exp(Var::Zb(i + 1), 1), c.clone())),
    );
    if !Manifold::from_quadric(q.clone()).is_cr(&h)?.holds {
        return Err(Error::Certificate(format!("{h} is not CR")));
    }
    match extend_homogeneous(q, &h) {
        Err(Error::NoExtension { .. }) => Ok(Some(LinearCounterexample { v, h })),
        Ok(_) => Err(Error::Certificate(format!("{h} extends"))),
        Err(e) => Err(e),
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

    fn hermitian(rows: &[&[&str]]) -> Quadric {
        Quadric::hermitian(mat(rows)).unwrap()
    }

    fn span_dim(polys: &[Poly], d: u32) -> usize {
        let cols = ordered_monomials(2, d);
        Matrix::from_rows(polys.iter().map(|f| cols.iter().map(|m| f.coeff(m)).collect()).collect()).rank()
    }

    fn sphere() -> Quadric {
        Quadric::hermitian(Matrix::identity(2)).unwrap()
    }

    #[test]
    fn column_order_for_two_variables() {
        let cols: Vec<String> = ordered_monomials(2, 2).iter().map(ToString::to_string).collect();
        assert_eq!(
            cols,
            [
                "zb2^2", "zb1*zb2", "zb1^2", "z2*zb2", "zb1*z2", "z1*zb2", "z1*zb1", "z2^2", "z1*z2", "z1^2"
            ]
        );
    }

    #[test]
    fn rank_formula_values() {
        assert_eq!([1, 2, 3].map(rank_formula), [2, 6, 14]);
        assert_eq!([1, 2, 3].map(cr_dimension_formula), [2, 4, 6]);
    }

    #[test]
    fn xd_for_hermitian_family() {
        let q = hermitian(&[&["1", "2/3"], &["0", "-5"]]);
        let x3 = build_xd(&q, 3);
        assert_eq!(x3.columns.len(), 20);
        assert_eq!(x3.rank(), 14);
        assert_eq!(build_xd(&Quadric::zero(2), 3).matrix.is_zero(), true);
    }

    #[test]
    fn csv_layout() {
        let csv = build_xd(&hermitian(&[&["0", "1"], &["0", "0"]]), 1).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,zb2,zb1,z2,z1");
        // L = -z2 d/dzb2 sends zb2 to -z2
        assert_eq!(lines[3], "L(1,2):z2,-1,0,0,0");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn cr_bases() {
        let s = cr_homogeneous_basis(&sphere(), 2);
        assert_eq!(s.dim(), 4);
        let mut all = s.basis.clone();
        all.extend(["z1*zb1 + z2*zb2", "z2^2", "z1*z2", "z1^2"].map(p));
        assert_eq!(span_dim(&all, 2), 4);
        assert_eq!(cr_homogeneous_basis(&sphere(), 1).dim(), 2);
        let lin = cr_homogeneous_basis(&hermitian(&[&["0", "1"], &["0", "0"]]), 1);
        assert_eq!(lin.dim(), 3);
        assert!(lin.basis.contains(&p("zb1")));
    }

    #[test]
    fn homogeneous_extensions() {
        let q = sphere();
        let r = extend_homogeneous(&q, &q.to_poly()).unwrap();
        assert_eq!((r.f, r.residual.is_zero(), r.unique), (p("w"), true, true));
        let f = &p("z1^2") + &q.to_poly().scale(&g("3"));
        assert_eq!(extend_homogeneous(&q, &f).unwrap().f, p("z1^2 + 3*w"));
        let exceptional = hermitian(&[&["0", "1"], &["0", "0"]]);
        assert_eq!(
            extend_homogeneous(&exceptional, &p("zb1")),
            Err(Error::NoExtension { degree: 1 })
        );
        assert_eq!(extend_homogeneous(&q, &p("zb1")), Err(Error::NotCR { degree: 1 }));
        assert_eq!(extend_homogeneous(&q, &p("z1 + z1^2")), Err(Error::NotHomogeneous));
    }

    #[test]
    fn polynomial_extensions() {
        let squares = Quadric::new(Matrix::zeros(2, 2), Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        let r = extend_polynomial(&squares, &p("zb1^2 + zb2^2 + z1"), true).unwrap();
        assert_eq!(r.f, p("z1 + w"));
        let q = sphere();
        let r = extend_polynomial(&q, &q.to_poly().pow(2), true).unwrap();
        assert_eq!(r.f, p("w^2"));
        let rank1 = Quadric::new(mat(&[&["1", "0"], &["0", "0"]]), mat(&[&["1", "0"], &["0", "0"]]), Matrix::zeros(2, 2))
            .unwrap();
        assert_eq!(extend_polynomial(&rank1, &p("zb1"), false), Err(Error::NoExtension { degree: 1 }));
        assert_eq!(extend_polynomial(&rank1, &p("zb1"), true), Err(Error::RankTooLow(1)));
    }

    #[test]
    fn linear_counterexample() {
        let c = counterexample_linear(&hermitian(&[&["0", "1"], &["0", "0"]])).unwrap().unwrap();
        assert_eq!(c.v, vec![g("1"), g("0")]);
        assert_eq!(c.h, p("zb1"));
        assert_eq!(counterexample_linear(&sphere()).unwrap(), None);
        assert_eq!(counterexample_linear(&Quadric::zero(2)), Err(Error::DegenerateQuadric));
    }
}
