//! On-disk problem format.
//!
//! A problem file is a JSON document
//!
//! ```json
//! {
//!   "name": "quadrant",
//!   "n": 2,
//!   "m": 2,
//!   "objectives": [
//!     {"a": [0, -1], "alpha": 0, "b": [0, 0], "beta": 1},
//!     {"a": [0, 1], "alpha": 0, "b": [1, 1], "beta": 1}
//!   ],
//!   "constraints": {"C": [[-1, 0], [0, -1]], "d": [0, 0]},
//!   "points": [[0, 0], [1, 0]],
//!   "comment": "optional free text"
//! }
//! ```
//!
//! where every scalar is either a bare JSON integer or a string `"p/q"`
//! with `q > 0`. Floating-point literals are rejected; parse, serialize,
//! parse is the identity.

use std::fmt;

use lfvo_core::linalg::Matrix;
use lfvo_core::model::{LFObjective, Point, Polyhedron, Problem};
use lfvo_core::Rational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational_text::{format_rational, parse_rational};

/// A rational in a problem file: serialized as a bare integer when it is
/// one and fits in an `i64`, as a `"p/q"` string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatValue(pub Rational);

impl From<Rational> for RatValue {
    fn from(r: Rational) -> Self {
        RatValue(r)
    }
}

impl Serialize for RatValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(i) = self.0.numer().to_i64() {
                return serializer.serialize_i64(i);
            }
        }
        serializer.serialize_str(&format_rational(&self.0))
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = RatValue;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "an integer or a \"p/q\" string with q > 0")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatValue, E> {
        Ok(RatValue(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatValue, E> {
        Ok(RatValue(Rational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<RatValue, E> {
        Err(E::custom(format!(
            "floating-point literal {v} is not allowed; use an integer or \"p/q\""
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<RatValue, E> {
        parse_rational(v).map(RatValue).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for RatValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub a: Vec<RatValue>,
    pub alpha: RatValue,
    pub b: Vec<RatValue>,
    pub beta: RatValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    #[serde(rename = "C")]
    pub c: Vec<Vec<RatValue>>,
    pub d: Vec<RatValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub objectives: Vec<ObjectiveSpec>,
    pub constraints: ConstraintSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<RatValue>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError(pub String);

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FileError {}

fn rationals(values: &[RatValue]) -> Vec<Rational> {
    values.iter().map(|v| v.0.clone()).collect()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| FileError(format!("invalid problem file: {e}")))?;
        file.check_shape()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("problem files serialize");
        text.push('\n');
        text
    }

    fn check_shape(&self) -> Result<(), FileError> {
        if self.m != self.objectives.len() {
            return Err(FileError(format!(
                "field m = {} does not match {} objectives",
                self.m,
                self.objectives.len()
            )));
        }
        for (i, obj) in self.objectives.iter().enumerate() {
            if obj.a.len() != self.n || obj.b.len() != self.n {
                return Err(FileError(format!(
                    "objective {} has vectors of length {}/{}, expected n = {}",
                    i + 1,
                    obj.a.len(),
                    obj.b.len(),
                    self.n
                )));
            }
        }
        if self.constraints.c.len() != self.constraints.d.len() {
            return Err(FileError(format!(
                "constraint matrix has {} rows but d has {} entries",
                self.constraints.c.len(),
                self.constraints.d.len()
            )));
        }
        for (r, row) in self.constraints.c.iter().enumerate() {
            if row.len() != self.n {
                return Err(FileError(format!(
                    "constraint row {} has length {}, expected n = {}",
                    r + 1,
                    row.len(),
                    self.n
                )));
            }
        }
        if let Some(points) = &self.points {
            for (k, p) in points.iter().enumerate() {
                if p.len() != self.n {
                    return Err(FileError(format!(
                        "point {} has length {}, expected n = {}",
                        k + 1,
                        p.len(),
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_problem(&self) -> Result<Problem, FileError> {
        self.check_shape()?;
        let rows: Vec<Vec<Rational>> = self.constraints.c.iter().map(|r| rationals(r)).collect();
        let poly = Polyhedron::new(
            Matrix::from_rows(self.n, rows),
            rationals(&self.constraints.d),
        )
        .map_err(|e| FileError(e.to_string()))?;
        let objectives = self
            .objectives
            .iter()
            .map(|o| {
                LFObjective::new(
                    rationals(&o.a),
                    o.alpha.0.clone(),
                    rationals(&o.b),
                    o.beta.0.clone(),
                )
                .map_err(|e| FileError(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Problem::new(objectives, poly).map_err(|e| FileError(e.to_string()))
    }

    /// Sample points bundled with the file (possibly none).
    pub fn sample_points(&self) -> Vec<Point> {
        self.points
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|p| Point::new(rationals(p)))
            .collect()
    }

    pub fn from_problem(
        name: &str,
        problem: &Problem,
        points: Vec<Vec<Rational>>,
        comment: Option<String>,
    ) -> Self {
        let wrap = |xs: &[Rational]| xs.iter().cloned().map(RatValue).collect::<Vec<_>>();
        ProblemFile {
            name: name.to_string(),
            n: problem.dim(),
            m: problem.num_criteria(),
            objectives: problem
                .objectives()
                .iter()
                .map(|o| ObjectiveSpec {
                    a: wrap(o.a()),
                    alpha: RatValue(o.alpha().clone()),
                    b: wrap(o.b()),
                    beta: RatValue(o.beta().clone()),
                })
                .collect(),
            constraints: ConstraintSpec {
                c: problem
                    .polyhedron()
                    .constraint_matrix()
                    .rows()
                    .map(wrap)
                    .collect(),
                d: wrap(problem.polyhedron().rhs()),
            },
            points: if points.is_empty() {
                None
            } else {
                Some(points.into_iter().map(|p| wrap(&p)).collect())
            },
            comment,
        }
    }
}
