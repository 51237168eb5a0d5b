//! Shared problem instances for the integration tests.

#![allow(dead_code)]

use lfvo_core::linalg::Matrix;
use lfvo_core::model::{validate, LFObjective, Polyhedron, Problem, ValidatedProblem};
use lfvo_core::{rat, rats, Rational};

pub fn validated(problem: Problem) -> ValidatedProblem {
    validate(problem).expect("fixture validates")
}

/// K = R^2_+, f1 = -x2, f2 = x2 / (x1 + x2 + 1). Pathological; the
/// efficient set is the nonnegative x1-axis.
pub fn quadrant() -> Problem {
    let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
    let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
    let f1 = LFObjective::new(rats(&[0, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
    let f2 = LFObjective::new(rats(&[0, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap();
    Problem::new(vec![f1, f2], poly).unwrap()
}

/// K = R^2_+, f1 = -x1 - x2, f2 = x2 / (x1 + x2 + 1), f3 = x1 - x2.
/// Pathological with two affine criteria; E = {x >= 0 : x2 < x1 + 1}.
pub fn three_criteria() -> Problem {
    let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
    let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
    let f1 = LFObjective::new(rats(&[-1, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
    let f2 = LFObjective::new(rats(&[0, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap();
    let f3 = LFObjective::new(rats(&[1, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
    Problem::new(vec![f1, f2, f3], poly).unwrap()
}

/// K = {x1 >= 2, 0 <= x2 <= 4}, f1 = -x1/(x1 + x2 - 1),
/// f2 = -x1/(x1 - x2 + 3). Unbounded K; every efficient point is properly
/// efficient.
pub fn choo_atkins() -> Problem {
    let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1]), rats(&[0, 1])]);
    let poly = Polyhedron::new(c, rats(&[-2, 0, 4])).unwrap();
    let f1 = LFObjective::new(rats(&[-1, 0]), rat(0, 1), rats(&[1, 1]), rat(-1, 1)).unwrap();
    let f2 = LFObjective::new(rats(&[-1, 0]), rat(0, 1), rats(&[1, -1]), rat(3, 1)).unwrap();
    Problem::new(vec![f1, f2], poly).unwrap()
}

/// n = m = 3 instance with simplex-like K and the diagonal ray as recession
/// cone; f_i = (-x_i + 1/2) / (x1 + x2 + x3 - 3/4). E = E^Ge.
pub fn hpy_simplexlike() -> Problem {
    let c = Matrix::from_rows(
        3,
        vec![
            rats(&[1, 1, -2]),
            rats(&[1, -2, 1]),
            rats(&[-2, 1, 1]),
            rats(&[-1, -1, -1]),
        ],
    );
    let poly = Polyhedron::new(c, rats(&[1, 1, 1, -1])).unwrap();
    let objectives = (0..3)
        .map(|i| {
            let mut a = rats(&[0, 0, 0]);
            a[i] = rat(-1, 1);
            LFObjective::new(a, rat(1, 2), rats(&[1, 1, 1]), rat(-3, 4)).unwrap()
        })
        .collect();
    Problem::new(objectives, poly).unwrap()
}

/// The n = m family: K = {x >= 0, sum x >= 1},
/// f_i = (-x_i + 1/2) / (sum x - 3/4) for 1 <= i <= m. E = E^Ge.
pub fn hpy_family(m: usize) -> Problem {
    assert!(m >= 2);
    let mut c = Matrix::new(m);
    for l in 0..m {
        let mut row = rats(&vec![0; m]);
        row[l] = rat(-1, 1);
        c.push_row(row);
    }
    c.push_row(rats(&vec![-1; m]));
    let mut d = rats(&vec![0; m]);
    d.push(rat(-1, 1));
    let poly = Polyhedron::new(c, d).unwrap();
    let objectives = (0..m)
        .map(|i| {
            let mut a = rats(&vec![0; m]);
            a[i] = rat(-1, 1);
            LFObjective::new(a, rat(1, 2), rats(&vec![1; m]), rat(-3, 4)).unwrap()
        })
        .collect();
    Problem::new(objectives, poly).unwrap()
}

/// Bounded box instance for fast-path tests.
pub fn unit_box_linear() -> Problem {
    let c = Matrix::from_rows(
        2,
        vec![rats(&[1, 0]), rats(&[-1, 0]), rats(&[0, 1]), rats(&[0, -1])],
    );
    let poly = Polyhedron::new(c, rats(&[1, 0, 1, 0])).unwrap();
    let f1 = LFObjective::new(rats(&[1, 2]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
    let f2 = LFObjective::new(rats(&[-1, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap();
    Problem::new(vec![f1, f2], poly).unwrap()
}

/// All fixtures that must validate, paired with names for test output.
pub fn corpus() -> Vec<(&'static str, Problem)> {
    let mut all = vec![
        ("quadrant", quadrant()),
        ("three-criteria", three_criteria()),
        ("choo-atkins", choo_atkins()),
        ("hpy-simplexlike", hpy_simplexlike()),
        ("unit-box", unit_box_linear()),
    ];
    for m in 2..=5 {
        all.push(("hpy-family", hpy_family(m)));
    }
    all
}

/// Deterministic rational helper for oracle grids.
pub fn grid_quarters(max: i64) -> Vec<Rational> {
    (0..=max * 4).map(|k| rat(k, 4)).collect()
}
