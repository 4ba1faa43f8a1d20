//! Text and JSON forms of polynomials and manifolds.

mod parse;
mod spec;

pub use parse::parse_poly;
pub use spec::{load_manifold, ManifoldSpec};

use crate::algebra::{GaussRational, Monomial, Poly, Var};

/// Canonical text form: terms in ascending canonical order, coefficient 1
/// omitted, `0` for the zero polynomial. The output parses back to `p`.
pub fn format_poly(p: &Poly) -> String {
    format_poly_with(p, &|v: Var| v.to_string())
}

/// [`format_poly`] with caller-chosen variable names. Factor order is still
/// `z1, zb1, z2, zb2, ..., w`.
pub fn format_poly_with(p: &Poly, name: &dyn Fn(Var) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().enumerate() {
        let (neg, body) = c.unsigned_parts();
        let mono = format_monomial(m, name);
        let text = if m.is_one() {
            body
        } else if c.is_unit_magnitude_one() {
            mono
        } else {
            format!("{body}*{mono}")
        };
        match (idx, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&text);
    }
    out
}

fn format_monomial(m: &Monomial, name: &dyn Fn(Var) -> String) -> String {
    let vars = (1..=m.n())
        .flat_map(|i| [Var::Z(i), Var::Zb(i)])
        .chain([Var::W]);
    let factors: Vec<String> = vars
        .filter_map(|v| match m.exp(v) {
            0 => None,
            1 => Some(name(v)),
            e => Some(format!("{}^{e}", name(v))),
        })
        .collect();
    factors.join("*")
}

/// Text form of a coefficient vector, e.g. `[1, 0, (1/2-1i)]`.
pub fn format_vector(v: &[GaussRational]) -> String {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use crate::algebra::Monomial;

    #[test]
    fn canonical_strings() {
        let p = parse_poly("zb2^3 + z2*zb1", 2).unwrap();
        assert_eq!(format_poly(&p), "zb1*z2 + zb2^3");
        assert_eq!(format_poly(&Poly::zero(2)), "0");
        assert_eq!(format_poly(&parse_poly("w - z1", 2).unwrap()), "-z1 + w");
    }

    #[test]
    fn complex_coefficients_print_in_grammar() {
        let p = parse_poly("(1/2+3/4i)*z1 - (1/2-3/4i)*zb1 - 2i*w + 7", 1).unwrap();
        assert_eq!(format_poly(&p), "7 + (1/2+3/4i)*z1 - (1/2-3/4i)*zb1 - 2i*w");
        assert_eq!(parse_poly(&format_poly(&p), 1).unwrap(), p);
        let neg = parse_poly("-(1/2+1i)*z1", 1).unwrap();
        // (-1/2-i) prints as a negated (1/2+1i)
        assert_eq!(format_poly(&neg), "-(1/2+1i)*z1");
    }

    fn arb_coeff() -> impl Strategy<Value = GaussRational> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
            .prop_map(|(a, b, c, d)| GaussRational::from_frac(a, b, c, d))
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Poly> {
        let mono = proptest::collection::vec(0u32..3, 2 * n + 1).prop_map(move |e| {
            let (z, rest) = e.split_at(n);
            let (zb, w) = rest.split_at(n);
            Monomial::from_parts(z, zb, w[0])
        });
        proptest::collection::vec((mono, arb_coeff()), 0..6)
            .prop_map(move |terms| Poly::from_terms(n, terms))
    }

    proptest! {
        #[test]
        fn parse_format_roundtrip(p in arb_poly(3)) {
            let text = format_poly(&p);
            prop_assert_eq!(parse_poly(&text, 3).unwrap(), p);
        }
    }
}
