//! The JSON polytope file format.
//!
//! ```json
//! { "ambient_dim": 3, "vertices": [[0, 0, 0], [4, 0, 0], [3, 6, 0], ["2", "1/2", 2]] }
//! ```
//!
//! Coordinates are JSON integers or strings holding an integer or a fraction
//! `p/q` with `q > 0`. Output uses bare integers where they fit in an `i64`
//! and strings otherwise, so documents survive a round trip exactly.

use std::fmt;
use std::str::FromStr;

use latticeface_core::{Int, Polytope, Rat};
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex {index} has {found} coordinates, expected {expected}")]
    WrongLength { index: usize, expected: usize, found: usize },
    #[error("invalid polytope: {0}")]
    Polytope(#[from] latticeface_core::Error),
}

/// An exact rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinate(pub Rat);

/// Parses `"n"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not an integer or a fraction p/q with q > 0");
    match s.split_once('/') {
        None => Int::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).map_err(|_| bad())?;
            let q = Int::from_str(q.trim()).map_err(|_| bad())?;
            if q <= Int::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

impl Serialize for Coordinate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.is_integer().then(|| self.0.to_integer().to_i64()).flatten() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coordinate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoordinateVisitor;

        impl Visitor<'_> for CoordinateVisitor {
            type Value = Coordinate;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coordinate, E> {
                Ok(Coordinate(Rat::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coordinate, E> {
                Ok(Coordinate(Rat::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coordinate, E> {
                Err(E::custom(format!("{v} is not exact; write fractions as strings \"p/q\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coordinate, E> {
                parse_rational(v).map(Coordinate).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CoordinateVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Coordinate>>,
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_polytope(&self) -> Result<Polytope, DocumentError> {
        for (index, v) in self.vertices.iter().enumerate() {
            if v.len() != self.ambient_dim {
                return Err(DocumentError::WrongLength { index, expected: self.ambient_dim, found: v.len() });
            }
        }
        let points = self.vertices.iter().map(|v| v.iter().map(|c| c.0.clone()).collect()).collect();
        Ok(Polytope::new(self.ambient_dim, points)?)
    }

    /// The document listing the vertices of `p` in its own order.
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDocument {
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| v.iter().cloned().map(Coordinate).collect()).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Reads a polytope from a JSON document.
pub fn parse_polytope(text: &str) -> Result<Polytope, DocumentError> {
    PolytopeDocument::parse(text)?.to_polytope()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn parses_integers_and_fractions() {
        let doc = PolytopeDocument::parse(r#"{"ambient_dim": 2, "vertices": [[0, "1/2"], ["-3", "6/4"]]}"#).unwrap();
        assert_eq!(doc.vertices[0][1].0, rat(1, 2));
        assert_eq!(doc.vertices[1][0].0, rat(-3, 1));
        assert_eq!(doc.vertices[1][1].0, rat(3, 2));
    }

    #[test]
    fn rejects_bad_coordinates() {
        for bad in [r#""1/0""#, r#""1/-2""#, r#""x""#, "0.5", r#""""#] {
            let text = format!(r#"{{"ambient_dim": 1, "vertices": [[{bad}]]}}"#);
            assert!(PolytopeDocument::parse(&text).is_err(), "{bad}");
        }
        assert!(PolytopeDocument::parse(r#"{"ambient_dim": 1, "vertices": [[1]], "extra": 1}"#).is_err());
    }

    #[test]
    fn rejects_wrong_lengths() {
        let doc = PolytopeDocument::parse(r#"{"ambient_dim": 2, "vertices": [[0, 0], [1]]}"#).unwrap();
        assert!(matches!(doc.to_polytope(), Err(DocumentError::WrongLength { index: 1, expected: 2, found: 1 })));
    }

    #[test]
    fn large_and_fractional_values_are_strings() {
        let big: Int = Int::from(i64::MAX) * 10;
        let p = Polytope::new(
            2,
            vec![vec![Rat::from_integer(big.clone()), rat(0, 1)], vec![rat(1, 3), rat(1, 1)], vec![rat(-7, 1), rat(0, 1)]],
        )
        .unwrap();
        let text = PolytopeDocument::from_polytope(&p).to_json_string();
        assert!(text.contains(&format!("\"{big}\"")) && text.contains("\"1/3\"") && text.contains("-7"), "{text}");
        assert_eq!(parse_polytope(&text).unwrap(), p);
    }

    #[test]
    fn empty_vertex_list_is_the_empty_polytope() {
        let p = parse_polytope(r#"{"ambient_dim": 3, "vertices": []}"#).unwrap();
        assert!(p.is_empty());
    }
}
