//! Bundled example instances.
//!
//! Five families: two pathological problems over the nonnegative quadrant,
//! the classic Choo-Atkins strip where every efficient point is properly
//! efficient, a three-variable simplex-like instance, and an m-parameterized
//! family (`hpy-family`, 2 <= m <= 8). Each file carries a description of
//! its efficient set and sample points on and off it.

use lfvo_core::rat;

use crate::problem_file::{ConstraintSpec, ObjectiveSpec, ProblemFile, RatValue};

fn rv(n: i64, d: i64) -> RatValue {
    RatValue(rat(n, d))
}

fn rvs(xs: &[i64]) -> Vec<RatValue> {
    xs.iter().map(|&x| rv(x, 1)).collect()
}

/// K = R^2_+, f1 = -x2, f2 = x2/(x1 + x2 + 1).
pub fn quadrant() -> ProblemFile {
    ProblemFile {
        name: "quadrant".into(),
        n: 2,
        m: 2,
        objectives: vec![
            ObjectiveSpec { a: rvs(&[0, -1]), alpha: rv(0, 1), b: rvs(&[0, 0]), beta: rv(1, 1) },
            ObjectiveSpec { a: rvs(&[0, 1]), alpha: rv(0, 1), b: rvs(&[1, 1]), beta: rv(1, 1) },
        ],
        constraints: ConstraintSpec {
            c: vec![rvs(&[-1, 0]), rvs(&[0, -1])],
            d: rvs(&[0, 0]),
        },
        points: Some(vec![rvs(&[0, 0]), rvs(&[1, 0]), rvs(&[0, 1])]),
        comment: Some(
            "Efficient set E = {(x1, 0) : x1 >= 0}; pathological: every efficient \
             solution is improperly efficient. Sample points: (0,0) and (1,0) on E, \
             (0,1) dominated."
                .into(),
        ),
    }
}

/// K = R^2_+, f1 = -x1 - x2, f2 = x2/(x1 + x2 + 1), f3 = x1 - x2.
pub fn three_criteria() -> ProblemFile {
    ProblemFile {
        name: "three-criteria".into(),
        n: 2,
        m: 3,
        objectives: vec![
            ObjectiveSpec { a: rvs(&[-1, -1]), alpha: rv(0, 1), b: rvs(&[0, 0]), beta: rv(1, 1) },
            ObjectiveSpec { a: rvs(&[0, 1]), alpha: rv(0, 1), b: rvs(&[1, 1]), beta: rv(1, 1) },
            ObjectiveSpec { a: rvs(&[1, -1]), alpha: rv(0, 1), b: rvs(&[0, 0]), beta: rv(1, 1) },
        ],
        constraints: ConstraintSpec {
            c: vec![rvs(&[-1, 0]), rvs(&[0, -1])],
            d: rvs(&[0, 0]),
        },
        points: Some(vec![rvs(&[0, 0]), rvs(&[1, 0]), rvs(&[0, 1])]),
        comment: Some(
            "Efficient set E = {x >= 0 : x2 < x1 + 1}; pathological despite two \
             affine criteria. Sample points: (0,0) and (1,0) on E, (0,1) dominated."
                .into(),
        ),
    }
}

/// K = {x1 >= 2, 0 <= x2 <= 4}, f1 = -x1/(x1+x2-1), f2 = -x1/(x1-x2+3).
pub fn choo_atkins() -> ProblemFile {
    ProblemFile {
        name: "choo-atkins".into(),
        n: 2,
        m: 2,
        objectives: vec![
            ObjectiveSpec { a: rvs(&[-1, 0]), alpha: rv(0, 1), b: rvs(&[1, 1]), beta: rv(-1, 1) },
            ObjectiveSpec { a: rvs(&[-1, 0]), alpha: rv(0, 1), b: rvs(&[1, -1]), beta: rv(3, 1) },
        ],
        constraints: ConstraintSpec {
            c: vec![rvs(&[-1, 0]), rvs(&[0, -1]), rvs(&[0, 1])],
            d: rvs(&[-2, 0, 4]),
        },
        points: Some(vec![rvs(&[2, 0]), rvs(&[3, 4]), rvs(&[3, 2])]),
        comment: Some(
            "Efficient set E = {(x1, 0) : x1 >= 2} union {(x1, 4) : x1 >= 2}; the \
             constraint set is unbounded yet every efficient point is properly \
             efficient. Sample points: (2,0) and (3,4) on E, (3,2) dominated."
                .into(),
        ),
    }
}

/// n = m = 3, simplex-like K, f_i = (-x_i + 1/2)/(x1 + x2 + x3 - 3/4).
pub fn hpy_simplexlike() -> ProblemFile {
    let objective = |i: usize| {
        let mut a = rvs(&[0, 0, 0]);
        a[i] = rv(-1, 1);
        ObjectiveSpec { a, alpha: rv(1, 2), b: rvs(&[1, 1, 1]), beta: rv(-3, 4) }
    };
    ProblemFile {
        name: "hpy-simplexlike".into(),
        n: 3,
        m: 3,
        objectives: (0..3).map(objective).collect(),
        constraints: ConstraintSpec {
            c: vec![
                rvs(&[1, 1, -2]),
                rvs(&[1, -2, 1]),
                rvs(&[-2, 1, 1]),
                rvs(&[-1, -1, -1]),
            ],
            d: rvs(&[1, 1, 1, -1]),
        },
        points: Some(vec![rvs(&[1, 0, 0]), rvs(&[2, 1, 1]), rvs(&[1, 1, 1])]),
        comment: Some(
            "Efficient set E is the union of the three rays {x1 >= 1, x2 = x3 = \
             x1 - 1} and its coordinate permutations; every efficient point is \
             properly efficient (E = E^Ge). Sample points: (1,0,0) and (2,1,1) on \
             E, (1,1,1) dominated."
                .into(),
        ),
    }
}

/// The m-parameterized family: n = m, K = {x >= 0, sum x >= 1},
/// f_i = (-x_i + 1/2)/(sum x - 3/4).
pub fn hpy_family(m: usize) -> Option<ProblemFile> {
    if !(2..=8).contains(&m) {
        return None;
    }
    let objective = |i: usize| {
        let mut a = rvs(&vec![0; m]);
        a[i] = rv(-1, 1);
        ObjectiveSpec { a, alpha: rv(1, 2), b: rvs(&vec![1; m]), beta: rv(-3, 4) }
    };
    let mut c: Vec<Vec<RatValue>> = (0..m)
        .map(|l| {
            let mut row = rvs(&vec![0; m]);
            row[l] = rv(-1, 1);
            row
        })
        .collect();
    c.push(rvs(&vec![-1; m]));
    let mut d = rvs(&vec![0; m]);
    d.push(rv(-1, 1));
    let mut e1 = rvs(&vec![0; m]);
    e1[0] = rv(1, 1);
    let ones = rvs(&vec![1; m]);
    Some(ProblemFile {
        name: format!("hpy-family-m{m}"),
        n: m,
        m,
        objectives: (0..m).map(objective).collect(),
        constraints: ConstraintSpec { c, d },
        points: Some(vec![e1, ones]),
        comment: Some(
            "Efficient set E is the union of the m axis rays {x_i >= 1, x_j = 0 \
             for j != i}; every efficient point is properly efficient (E = E^Ge). \
             Sample points: the first axis point on E, the all-ones point dominated."
                .into(),
        ),
    })
}

pub const NAMES: [&str; 5] = [
    "quadrant",
    "three-criteria",
    "choo-atkins",
    "hpy-simplexlike",
    "hpy-family",
];

/// Looks up a fixture by name; `hpy-family` takes the criteria count `m`
/// (default 3).
pub fn by_name(name: &str, m: Option<usize>) -> Option<ProblemFile> {
    match name {
        "quadrant" => Some(quadrant()),
        "three-criteria" => Some(three_criteria()),
        "choo-atkins" => Some(choo_atkins()),
        "hpy-simplexlike" => Some(hpy_simplexlike()),
        "hpy-family" => hpy_family(m.unwrap_or(3)),
        _ => None,
    }
}
