//! Exact point-efficiency testing.
//!
//! With `r_i = f_i(x)` and positive denominators on `K`, the comparison
//! `f_i(y) <= r_i` is equivalent to the linear constraint
//! `(a_i - r_i b_i)^T y <= r_i beta_i - alpha_i`. Dominance of `x` is then
//! decided by `m` exact LPs over `K` intersected with all the comparison
//! constraints: maximize each criterion's slack; `x` is efficient iff every
//! maximum is exactly zero.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::linalg::{add_scaled, dot};
use crate::model::{Point, ValidatedProblem};
use crate::ratlp::{self, LinearProgram, LpOutcome};
use crate::Rational;

use super::AnalysisError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EfficiencyVerdict {
    Efficient,
    /// `witness` is feasible, improves at least one criterion strictly and
    /// worsens none.
    Dominated { witness: Point },
}

/// Decides whether `x` is an efficient (Pareto) solution.
pub fn is_efficient(
    problem: &ValidatedProblem,
    x: &Point,
) -> Result<EfficiencyVerdict, AnalysisError> {
    let p = problem.problem();
    let poly = p.polyhedron();
    if !poly.contains(x) {
        return Err(AnalysisError::InfeasiblePoint);
    }

    let values: Vec<Rational> = p
        .objectives()
        .iter()
        .map(|obj| obj.evaluate(x).expect("validated problems have positive denominators on K"))
        .collect();

    // K plus one comparison row per criterion.
    let mut a = poly.constraint_matrix().clone();
    let mut b = poly.rhs().to_vec();
    let mut rows = Vec::with_capacity(p.num_criteria());
    let mut rhs = Vec::with_capacity(p.num_criteria());
    for (obj, r) in p.objectives().iter().zip(&values) {
        let row: Vec<Rational> = obj
            .a()
            .iter()
            .zip(obj.b())
            .map(|(ai, bi)| ai - r * bi)
            .collect();
        let bound = r * obj.beta() - obj.alpha();
        a.push_row(row.clone());
        b.push(bound.clone());
        rows.push(row);
        rhs.push(bound);
    }

    for i in 0..p.num_criteria() {
        // maximize slack_i = rhs_i - rows_i . y  <=>  minimize rows_i . y
        let lp = LinearProgram::new(rows[i].clone(), a.clone(), b.clone())
            .expect("comparison rows share the problem dimension");
        match ratlp::solve(&lp).expect("dimensions consistent") {
            LpOutcome::Optimal { point, value } => {
                let slack = &rhs[i] - &value;
                debug_assert!(!slack.is_negative(), "x itself keeps every slack at zero");
                if slack.is_positive() {
                    let witness = Point::new(point);
                    debug_assert!(dominates(problem, &witness, &values));
                    return Ok(EfficiencyVerdict::Dominated { witness });
                }
            }
            LpOutcome::Unbounded { point, ray } => {
                // Slack grows linearly along the ray; truncate at the
                // smallest power of two making it at least one.
                let rate = -dot(&rows[i], &ray);
                debug_assert!(rate.is_positive());
                let start = &rhs[i] - dot(&rows[i], &point);
                let mut t = Rational::one();
                while &start + &t * &rate < Rational::one() {
                    t = &t + &t;
                }
                let witness = Point::new(add_scaled(&point, &t, &ray));
                debug_assert!(dominates(problem, &witness, &values));
                return Ok(EfficiencyVerdict::Dominated { witness });
            }
            LpOutcome::Infeasible => {
                unreachable!("x itself satisfies every comparison constraint")
            }
        }
    }
    Ok(EfficiencyVerdict::Efficient)
}

/// Exact check that `y` weakly improves every criterion value in `values`
/// and strictly improves at least one.
pub(crate) fn dominates(problem: &ValidatedProblem, y: &Point, values: &[Rational]) -> bool {
    let p = problem.problem();
    if !p.polyhedron().contains(y) {
        return false;
    }
    let mut strict = false;
    for (obj, r) in p.objectives().iter().zip(values) {
        match obj.evaluate(y) {
            Ok(fy) => {
                if &fy > r {
                    return false;
                }
                if &fy < r {
                    strict = true;
                }
            }
            Err(_) => return false,
        }
    }
    strict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::model::{validate, LFObjective, Polyhedron, Problem};
    use crate::{rat, rats};
    use alloc::vec;

    fn quadrant_problem() -> ValidatedProblem {
        let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
        let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
        let f1 = LFObjective::new(rats(&[0, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        let f2 = LFObjective::new(rats(&[0, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap();
        validate(Problem::new(vec![f1, f2], poly).unwrap()).unwrap()
    }

    fn three_criteria_problem() -> ValidatedProblem {
        let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
        let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
        let f1 = LFObjective::new(rats(&[-1, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        let f2 = LFObjective::new(rats(&[0, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap();
        let f3 = LFObjective::new(rats(&[1, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        validate(Problem::new(vec![f1, f2, f3], poly).unwrap()).unwrap()
    }

    #[test]
    fn quadrant_axis_is_efficient() {
        let vp = quadrant_problem();
        assert_eq!(
            is_efficient(&vp, &Point::new(rats(&[1, 0]))).unwrap(),
            EfficiencyVerdict::Efficient
        );
        assert_eq!(
            is_efficient(&vp, &Point::new(rats(&[0, 0]))).unwrap(),
            EfficiencyVerdict::Efficient
        );
    }

    #[test]
    fn quadrant_interior_vertical_is_dominated() {
        let vp = quadrant_problem();
        match is_efficient(&vp, &Point::new(rats(&[0, 1]))).unwrap() {
            EfficiencyVerdict::Dominated { witness } => {
                let values: Vec<_> = vp
                    .problem()
                    .objectives()
                    .iter()
                    .map(|o| o.evaluate(&Point::new(rats(&[0, 1]))).unwrap())
                    .collect();
                assert!(dominates(&vp, &witness, &values));
            }
            other => panic!("expected dominated, got {other:?}"),
        }
    }

    #[test]
    fn three_criteria_boundary_excluded() {
        // Points with x2 = x1 + 1 are outside the efficient set.
        let vp = three_criteria_problem();
        assert!(matches!(
            is_efficient(&vp, &Point::new(rats(&[0, 1]))).unwrap(),
            EfficiencyVerdict::Dominated { .. }
        ));
        assert_eq!(
            is_efficient(&vp, &Point::new(rats(&[1, 0]))).unwrap(),
            EfficiencyVerdict::Efficient
        );
    }

    #[test]
    fn infeasible_point_rejected() {
        let vp = quadrant_problem();
        assert_eq!(
            is_efficient(&vp, &Point::new(rats(&[-1, 0]))),
            Err(AnalysisError::InfeasiblePoint)
        );
    }
}
