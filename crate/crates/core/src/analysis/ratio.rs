//! Ratio probing along recession rays.
//!
//! At a base point `x` and recession direction `v`, every criterion value
//! `f_i(x + tv)` is monotone in `t >= 0`: its slope sign equals the sign of
//! the constant `(a_i^T v)(b_i^T x + beta_i) - (a_i^T x + alpha_i)(b_i^T v)`.
//! The probe picks the lexicographically smallest strictly decreasing
//! criterion as the loser, records its exact drop against every other
//! criterion's gain over a grid of step lengths, and reports the realized
//! trade-off ratios. Diverging ratios demonstrate improperness numerically;
//! the probe is a demonstrator, not a decision procedure.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::cone::Direction;
use crate::linalg::{add_scaled, dot};
use crate::model::{Point, ValidatedProblem};
use crate::Rational;

use super::AnalysisError;

/// One grid row: the exact drop of the loser, every other criterion's gain,
/// and the realized ratio for each criterion that actually gained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRecord {
    pub t: Rational,
    /// `f_loser(x) - f_loser(x + tv)`, strictly positive.
    pub drop: Rational,
    /// `(j, f_j(x + tv) - f_j(x))` for every `j != loser`, ascending.
    pub gains: Vec<(usize, Rational)>,
    /// `(j, drop / gain_j)` for the `j` with positive gain.
    pub ratios: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTrace {
    pub base: Point,
    pub direction: Direction,
    /// Index of the probed (strictly decreasing) criterion.
    pub loser: usize,
    pub records: Vec<RatioRecord>,
}

impl RatioTrace {
    /// Largest realized ratio per gaining criterion over the grid.
    pub fn suprema(&self) -> Vec<(usize, Rational)> {
        let mut best: Vec<(usize, Rational)> = Vec::new();
        for record in &self.records {
            for (j, ratio) in &record.ratios {
                match best.iter_mut().find(|(k, _)| k == j) {
                    Some((_, cur)) => {
                        if ratio > cur {
                            *cur = ratio.clone();
                        }
                    }
                    None => best.push((*j, ratio.clone())),
                }
            }
        }
        best.sort_by_key(|(j, _)| *j);
        best
    }
}

/// The default step schedule: powers of two `2^0 ..= 2^max_exp`.
pub fn geometric_grid(max_exp: u32) -> Vec<Rational> {
    let mut grid = Vec::with_capacity(max_exp as usize + 1);
    let mut t = Rational::one();
    for _ in 0..=max_exp {
        grid.push(t.clone());
        t = &t + &t;
    }
    grid
}

/// Probes trade-off ratios along `x + tv` for each `t` in `grid`.
///
/// `x` must be feasible, `v` a recession direction, and the grid strictly
/// increasing and positive. Fails with `NoDecreasingCriterion` when no
/// criterion strictly decreases along the ray.
pub fn ratio_probe(
    problem: &ValidatedProblem,
    x: &Point,
    v: &Direction,
    grid: &[Rational],
) -> Result<RatioTrace, AnalysisError> {
    let p = problem.problem();
    let poly = p.polyhedron();
    if !poly.contains(x) {
        return Err(AnalysisError::InfeasiblePoint);
    }
    if v.dim() != p.dim()
        || poly
            .constraint_matrix()
            .rows()
            .any(|row| dot(row, v.as_slice()).is_positive())
    {
        return Err(AnalysisError::DirectionNotInCone);
    }
    let increasing_positive = grid.first().is_some_and(|t0| t0.is_positive())
        && grid.windows(2).all(|w| w[0] < w[1]);
    if !increasing_positive {
        return Err(AnalysisError::InvalidGrid);
    }

    // Slope sign of t -> f_i(x + tv), constant along the ray.
    let slope_sign = |i: usize| -> Rational {
        let obj = p.objective(i);
        dot(obj.a(), v.as_slice()) * obj.denominator_at(x)
            - obj.numerator_at(x) * dot(obj.b(), v.as_slice())
    };
    let m = p.num_criteria();
    let loser = (0..m)
        .find(|&i| slope_sign(i).is_negative())
        .ok_or(AnalysisError::NoDecreasingCriterion)?;

    let base_values: Vec<Rational> = p
        .objectives()
        .iter()
        .map(|obj| obj.evaluate(x).expect("validated problems have positive denominators on K"))
        .collect();

    let mut records = Vec::with_capacity(grid.len());
    for t in grid {
        let y = Point::new(add_scaled(&x.coords, t, v.as_slice()));
        debug_assert!(poly.contains(&y), "recession direction must stay feasible");
        let drop = &base_values[loser]
            - p.objective(loser)
                .evaluate(&y)
                .expect("positive denominator on K");
        debug_assert!(drop.is_positive());
        let mut gains = Vec::with_capacity(m - 1);
        let mut ratios = Vec::new();
        for j in (0..m).filter(|&j| j != loser) {
            let gain = p.objective(j).evaluate(&y).expect("positive denominator on K")
                - &base_values[j];
            if gain.is_positive() {
                ratios.push((j, &drop / &gain));
            }
            gains.push((j, gain));
        }
        records.push(RatioRecord { t: t.clone(), drop, gains, ratios });
    }

    Ok(RatioTrace {
        base: x.clone(),
        direction: v.clone(),
        loser,
        records,
    })
}
