//! Normal forms of quadrics failing the rank condition, the quadratic
//! classification of CR images, Levi-flat parametrizations, and checks on
//! candidate first integrals.
//!
//! For a rank-one quadric the decision reads two invariants off the
//! normalized data `A' = e_1 a^t`, `B' = beta E_11` (with `mu = conj(beta)`
//! the coefficient of `zb1^2`):
//!
//! * `a = 0` gives `zb1^2`;
//! * `a` supported on the first index gives `|z1|^2 + a zb1^2` with
//!   `a^2 = |mu|^2 / |a_1|^2`;
//! * otherwise `zb1 z2 + zb1^2` when `mu != 0` and `zb1 z2` when `mu = 0`.
//!
//! These rules follow the normalization steps (scaling `z1`, replacing `z2`
//! by `a . z`, rescaling `w`) rather than a full equivalence proof; the
//! test suites check that labels survive random coordinate changes.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{rat_to_f64, rational_sqrt, GaussRational, Matrix, Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::formal::{formal_extend, FormalExtension};
use crate::manifold::{Manifold, Quadric};
use crate::polyio::format_poly_with;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// The rank condition holds; carries the rank.
    NonExceptional(usize),
    RankZero,
    /// `w = zb1 z2 + zb1^2`
    Case1,
    /// `w = zb1 z2`
    Case2,
    /// `w = |z1|^2 + a zb1^2`, `a >= 0`, stored as `a^2`.
    Case3 { a_squared: Rational },
    /// `w = zb1^2`
    Case4,
}

impl ClassLabel {
    pub fn case_number(&self) -> Option<u8> {
        match self {
            ClassLabel::Case1 => Some(1),
            ClassLabel::Case2 => Some(2),
            ClassLabel::Case3 { .. } => Some(3),
            ClassLabel::Case4 => Some(4),
            _ => None,
        }
    }

    /// Decimal value of `a` for case 3.
    pub fn a_decimal(&self) -> Option<f64> {
        match self {
            ClassLabel::Case3 { a_squared } => Some(rat_to_f64(a_squared).sqrt()),
            _ => None,
        }
    }

    /// Exact `a` for case 3 when `a^2` is a rational square.
    pub fn a_exact(&self) -> Option<Rational> {
        match self {
            ClassLabel::Case3 { a_squared } => rational_sqrt(a_squared),
            _ => None,
        }
    }

    /// The normal form as text.
    pub fn normal_form(&self) -> String {
        match self {
            ClassLabel::NonExceptional(r) => format!("rank {r} (rank condition holds)"),
            ClassLabel::RankZero => "O(|z|^3) (no antiholomorphic quadratic part)".into(),
            ClassLabel::Case1 => "w = zb1*z2 + zb1^2".into(),
            ClassLabel::Case2 => "w = zb1*z2".into(),
            ClassLabel::Case3 { .. } => "w = z1*zb1 + a*zb1^2".into(),
            ClassLabel::Case4 => "w = zb1^2".into(),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::NonExceptional(r) => write!(f, "non-exceptional (rank {r})"),
            ClassLabel::RankZero => write!(f, "rank zero"),
            ClassLabel::Case3 { a_squared } => {
                write!(f, "case 3 (a^2 = {a_squared}")?;
                match self.a_exact() {
                    Some(a) => write!(f, ", a = {a})"),
                    None => write!(f, ", a ~ {:.6})", self.a_decimal().unwrap_or(f64::NAN)),
                }
            }
            other => write!(f, "case {}", other.case_number().unwrap_or(0)),
        }
    }
}

/// Coordinates `z = T z'` in which `[A'*; B']` is supported in its first
/// column: `A'` has only its first row nonzero and `B' = beta E_11`.
///
/// `T` is `[e_i | kernel basis of [A*; B]]`, with `e_i` the first standard
/// vector outside the kernel.
pub fn normalize_rank1(q: &Quadric) -> Result<(Matrix, Quadric)> {
    let n = q.n();
    let stacked = q.a().adjoint().stack(q.b());
    let rank = stacked.rank();
    if rank != 1 {
        return Err(Error::RankNotOne(rank));
    }
    let kernel = stacked.kernel();
    let first = (0..n)
        .find(|&i| stacked.column(i).iter().any(|c| !c.is_zero()))
        .expect("rank one has a nonzero column");
    let t = Matrix::from_fn(n, n, |i, j| {
        if j == 0 {
            if i == first {
                GaussRational::one()
            } else {
                GaussRational::zero()
            }
        } else {
            kernel[j - 1][i].clone()
        }
    });
    let normalized = q.transform(&t)?;
    Ok((t, normalized))
}

pub fn classify_quadric(q: &Quadric) -> Result<ClassLabel> {
    let n = q.n();
    if n < 2 {
        return Err(Error::RequiresNGe2);
    }
    match q.rank_condition() {
        0 => return Ok(ClassLabel::RankZero),
        r if r >= 2 => return Ok(ClassLabel::NonExceptional(r)),
        _ => {}
    }
    let (_, qn) = normalize_rank1(q)?;
    let a: Vec<GaussRational> = qn.a().row(0).to_vec();
    let mu = qn.b().get(0, 0).conj();
    if a.iter().all(Zero::is_zero) {
        return Ok(ClassLabel::Case4);
    }
    if a[1..].iter().all(Zero::is_zero) {
        return Ok(ClassLabel::Case3 {
            a_squared: mu.norm_sqr() / a[0].norm_sqr(),
        });
    }
    Ok(if mu.is_zero() {
        ClassLabel::Case2
    } else {
        ClassLabel::Case1
    })
}

/// Quadratic type of a manifold that may be a CR image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CRImageForm {
    Form1,
    Form2,
    Form3,
    Form4,
    /// `w = O(|z|^3)`.
    Form5,
    /// The rank condition holds, so `M` is not a CR image.
    NotApplicable,
}

pub fn classify_cr_image(m: &Manifold) -> Result<CRImageForm> {
    Ok(match classify_quadric(m.quadric())? {
        ClassLabel::NonExceptional(_) => CRImageForm::NotApplicable,
        ClassLabel::RankZero => CRImageForm::Form5,
        ClassLabel::Case1 => CRImageForm::Form1,
        ClassLabel::Case2 => CRImageForm::Form2,
        ClassLabel::Case3 { .. } => CRImageForm::Form3,
        ClassLabel::Case4 => CRImageForm::Form4,
    })
}

/// The normal-form quadric of a label in dimension `n`, with case 3 split
/// as `Q0 + a Q1`.
pub fn normal_form_quadric(label: &ClassLabel, n: usize) -> Result<(Poly, Poly)> {
    if n < 2 {
        return Err(Error::RequiresNGe2);
    }
    let v = |var: Var| Poly::var(n, var);
    let (z1, zb1, z2) = (v(Var::Z(1)), v(Var::Zb(1)), v(Var::Z(2)));
    let zero = Poly::zero(n);
    Ok(match label {
        ClassLabel::Case1 => (&(&zb1 * &z2) + &(&zb1 * &zb1), zero),
        ClassLabel::Case2 => (&zb1 * &z2, zero),
        ClassLabel::Case3 { .. } => (&z1 * &zb1, &zb1 * &zb1),
        ClassLabel::Case4 => (&zb1 * &zb1, zero),
        _ => return Err(Error::NotExceptional),
    })
}

/// `(s, t, xi) -> (s + i t, xi, Q(s + i t, xi, s - i t, conj(xi)))`.
///
/// Polynomials in the parameters reuse the slots of the ambient ring:
/// `s` in `z1`, `t` in `zb1`, `xi_j` in `z_j` and `conj(xi_j)` in `zb_j`
/// for `j >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviFlatParametrization {
    pub label: ClassLabel,
    pub n: usize,
    /// First coordinate, `s + i t`.
    pub z1: Poly,
    /// The `w` component; for case 3 the part independent of `a`.
    pub w: Poly,
    /// For case 3, the coefficient of `a` in the `w` component.
    pub w_a: Option<Poly>,
    /// Substituting the map into `w - Q` gives zero identically.
    pub verified: bool,
}

impl LeviFlatParametrization {
    pub fn render(&self) -> String {
        let name = |v: Var| match v {
            Var::Z(1) => "s".to_string(),
            Var::Zb(1) => "t".to_string(),
            Var::Z(j) => format!("xi{j}"),
            Var::Zb(j) => format!("conj(xi{j})"),
            Var::W => "w".to_string(),
        };
        let xis: Vec<String> = (2..=self.n).map(|j| format!("xi{j}")).collect();
        let mut w = format_poly_with(&self.w, &name);
        if let Some(wa) = &self.w_a {
            w = format!("{w} + a*({})", format_poly_with(wa, &name));
        }
        format!(
            "(s, t, {}) -> ({}, {}, {})",
            xis.join(", "),
            format_poly_with(&self.z1, &name),
            xis.join(", "),
            w
        )
    }
}

pub fn levi_flat_image_param(label: &ClassLabel, n: usize) -> Result<LeviFlatParametrization> {
    let (q0, q1) = normal_form_quadric(label, n)?;
    let s = Poly::var(n, Var::Z(1));
    let t = Poly::var(n, Var::Zb(1));
    let it = t.scale(&GaussRational::i());
    let plus = &s + &it;
    let minus = &s - &it;
    let xi2 = Poly::var(n, Var::Z(2));
    // the map's w component written out per case
    let (w, w_a) = match label {
        ClassLabel::Case1 => (&(&minus * &xi2) + &(&minus * &minus), None),
        ClassLabel::Case2 => (&minus * &xi2, None),
        ClassLabel::Case3 { .. } => (&minus * &plus, Some(&minus * &minus)),
        _ => (&minus * &minus, None),
    };
    let mut z_images = vec![plus.clone()];
    let mut zb_images = vec![minus.clone()];
    for j in 2..=n {
        z_images.push(Poly::var(n, Var::Z(j)));
        zb_images.push(Poly::var(n, Var::Zb(j)));
    }
    let on_image0 = q0.compose(&z_images, &zb_images)?;
    let on_image1 = q1.compose(&z_images, &zb_images)?;
    let verified = on_image0 == w && on_image1 == w_a.clone().unwrap_or_else(|| Poly::zero(n));
    Ok(LeviFlatParametrization {
        label: label.clone(),
        n,
        z1: plus,
        w,
        w_a,
        verified,
    })
}

/// Relation between the quadratic part of `g` and `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticMatch {
    /// `g_2 = alpha Q` with `alpha` real and nonzero.
    Proportional(Rational),
    NotProportional,
    /// `Q` is not real-valued (`A != A*` or `C != B`), so no real multiple
    /// of it can be the quadratic part of a real function.
    NormalizationRequired,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralReport {
    pub real_valued: bool,
    pub cr_through_order: bool,
    pub quadratic: QuadraticMatch,
    pub order: u32,
}

impl FirstIntegralReport {
    pub fn passes(&self) -> bool {
        self.real_valued && self.cr_through_order && matches!(self.quadratic, QuadraticMatch::Proportional(_))
    }
}

/// Checks a candidate first integral `g`: real-valued, CR on `M` through
/// total degree `order`, and quadratic part a real multiple of `Q`.
pub fn check_first_integral(m: &Manifold, g: &Poly, order: u32) -> Result<FirstIntegralReport> {
    let r = m.rank_condition();
    if r < 2 {
        return Err(Error::RankTooLow(r));
    }
    if g.contains_w() {
        return Err(Error::ContainsW);
    }
    let real_valued = &g.conjugate()? == g;
    let cr_through_order = m.cr_defect(g, order)?.is_empty();
    let q = m.quadric();
    let quadratic = if q.a() != &q.a().adjoint() || q.c() != q.b() {
        QuadraticMatch::NormalizationRequired
    } else {
        proportionality(&g.homogeneous_part(2, false), &q.to_poly())
    };
    Ok(FirstIntegralReport {
        real_valued,
        cr_through_order,
        quadratic,
        order,
    })
}

fn proportionality(g2: &Poly, q: &Poly) -> QuadraticMatch {
    let Some((m, c)) = q.terms().next() else {
        return QuadraticMatch::NotProportional;
    };
    let alpha = &g2.coeff(m) / c;
    if alpha.is_zero() || !alpha.is_real() || &q.scale(&alpha) != g2 {
        return QuadraticMatch::NotProportional;
    }
    QuadraticMatch::Proportional(alpha.re)
}

/// Extends a first integral `g` to `F(z, w)` with `g = F(z, rho)` through
/// `order`. Fails with `NotCRAtDegree` when `g` is not CR, and with
/// `NotFirstIntegral` when it is not real or its quadratic part is wrong.
pub fn flatten_from_first_integral(m: &Manifold, g: &Poly, order: u32) -> Result<FormalExtension> {
    let report = check_first_integral(m, g, order)?;
    let ext = formal_extend(m, g, order)?;
    if !report.real_valued {
        return Err(Error::NotFirstIntegral("not real-valued"));
    }
    match report.quadratic {
        QuadraticMatch::Proportional(_) => {}
        QuadraticMatch::NotProportional => {
            return Err(Error::NotFirstIntegral("quadratic part is not a real multiple of Q"))
        }
        QuadraticMatch::NormalizationRequired => {
            return Err(Error::NotFirstIntegral("Q is not real-valued"))
        }
    }
    if !ext.certified() {
        return Err(Error::Certificate("residual has terms at or below the order".into()));
    }
    Ok(ext)
}

/// `w = (zb2 + i|z1|^2 + |z1|^4)^2`, whose quadratic part is `zb2^2`.
pub fn squared_image_example() -> Manifold {
    let n = 2;
    let abs1 = Poly::monomial(n, Monomial::from_parts(&[1, 0], &[1, 0], 0), GaussRational::one());
    let inner = &(&Poly::var(n, Var::Zb(2)) + &abs1.scale(&GaussRational::i())) + &(&abs1 * &abs1);
    let rho = &inner * &inner;
    let b = Matrix::from_fn(2, 2, |i, j| {
        if i == 1 && j == 1 {
            GaussRational::one()
        } else {
            GaussRational::zero()
        }
    });
    let quadric = Quadric::new(Matrix::zeros(2, 2), b, Matrix::zeros(2, 2)).expect("symmetric");
    let e = &rho - &quadric.to_poly();
    Manifold::new(quadric, e).expect("valid higher-order part")
}
