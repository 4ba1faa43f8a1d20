use serde::{Deserialize, Serialize};

use super::{format_poly, parse_poly};
use crate::algebra::{GaussRational, Matrix, Poly};
use crate::error::{Error, Result};
use crate::manifold::{Manifold, Quadric};

/// JSON form of a manifold `w = Q + E`.
///
/// ```json
/// {"n": 2, "A": [["0","1"],["0","0"]], "B": [["0","0"],["0","0"]],
///  "C": [["0","0"],["0","0"]], "E": "zb2^3"}
/// ```
///
/// Matrix entries use the coefficient grammar (`"1/2+3/4i"`). Omitted
/// matrices are zero; an omitted `E` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub n: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<String>>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<String>>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<String>>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<String>,
}

impl ManifoldSpec {
    pub fn from_manifold(m: &Manifold) -> Self {
        let q = m.quadric();
        let dump = |mat: &Matrix| {
            Some(
                (0..mat.rows())
                    .map(|i| mat.row(i).iter().map(ToString::to_string).collect())
                    .collect(),
            )
        };
        ManifoldSpec {
            n: m.n(),
            a: dump(q.a()),
            b: dump(q.b()),
            c: dump(q.c()),
            e: (!m.e().is_zero()).then(|| format_poly(m.e())),
        }
    }

    pub fn to_manifold(&self) -> Result<Manifold> {
        let n = self.n;
        if n == 0 {
            return Err(Error::MalformedDocument("n must be positive".into()));
        }
        let a = matrix(n, "A", self.a.as_ref())?;
        let b = matrix(n, "B", self.b.as_ref())?;
        let c = matrix(n, "C", self.c.as_ref())?;
        let quadric = Quadric::new(a, b, c)?;
        let e = match &self.e {
            Some(text) => parse_poly(text, n)?,
            None => Poly::zero(n),
        };
        Manifold::new(quadric, e)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

fn matrix(n: usize, name: &str, rows: Option<&Vec<Vec<String>>>) -> Result<Matrix> {
    let Some(rows) = rows else {
        return Ok(Matrix::zeros(n, n));
    };
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedDocument(format!("{name} must be {n}x{n}")));
    }
    let data = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| s.parse::<GaussRational>().map_err(|_| Error::MalformedNumber(s.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(data))
}

/// Parses and validates a manifold document.
pub fn load_manifold(document: &str) -> Result<Manifold> {
    let spec: ManifoldSpec =
        serde_json::from_str(document).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    spec.to_manifold()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_quadric_with_upper_entry() {
        let m = load_manifold(r#"{"n":2,"A":[["0","1"],["0","0"]],"B":[["0","0"],["0","0"]],"C":[["0","0"],["0","0"]]}"#)
            .unwrap();
        assert_eq!(format_poly(m.rho()), "zb1*z2");
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            load_manifold(r#"{"n":2,"B":[["0","1"],["0","0"]]}"#),
            Err(Error::AsymmetricB)
        );
        assert_eq!(
            load_manifold(r#"{"n":2,"C":[["0","1"],["0","0"]]}"#),
            Err(Error::AsymmetricC)
        );
        assert_eq!(
            load_manifold(r#"{"n":2,"A":[["0","1"],["0","0"]],"E":"zb1^2"}"#),
            Err(Error::EOrderTooLow(2))
        );
        assert_eq!(
            load_manifold(r#"{"n":2,"A":[["0","x"],["0","0"]]}"#),
            Err(Error::MalformedNumber("x".into()))
        );
        assert!(matches!(
            load_manifold(r#"{"n":2,"A":[["0","1"]]}"#),
            Err(Error::MalformedDocument(_))
        ));
        assert!(matches!(load_manifold("{"), Err(Error::MalformedDocument(_))));
        assert_eq!(load_manifold(r#"{"n":2,"E":"zb1^3*w"}"#), Err(Error::ContainsW));
    }

    #[test]
    fn spec_roundtrip() {
        let doc = r#"{"n":2,"A":[["1/2+3/4i","1"],["0","-i"]],"B":[["1","2"],["2","0"]],"E":"zb2^3 - z1*zb1*zb2"}"#;
        let m = load_manifold(doc).unwrap();
        let again = load_manifold(&ManifoldSpec::from_manifold(&m).to_json()).unwrap();
        assert_eq!(again, m);
    }
}
