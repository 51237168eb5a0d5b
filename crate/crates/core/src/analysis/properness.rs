//! Necessary-condition scan and properness certification.
//!
//! An efficient point with unbounded trade-off ratios forces the existence
//! of a nonzero recession direction `v` with either
//!
//! - property (c): `b_i^T v = 0` and `a_i^T v <= 0` for some criterion, or
//! - property (d): `<grad f_j(x), v> = 0` for every criterion.
//!
//! When both families of systems contain only `v = 0`, the point is
//! certified properly efficient. A witnessing direction is *necessary*
//! evidence only, so the verdict in that case is `Inconclusive`, never
//! "improper". The three pairwise/triple regularity conditions used by the
//! comparison checks are decided the same way.

use alloc::vec::Vec;

use crate::cone::{nontrivial_member, strict_feasible, Direction, HomogeneousSystem};
use crate::model::{Point, ValidatedProblem};
use crate::Rational;

use super::AnalysisError;

/// Nonzero recession direction satisfying one of the necessary conditions
/// for improperness at the scanned point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyWitness {
    /// `b_i^T v = 0` and `a_i^T v <= 0`.
    PropertyC { criterion: usize, direction: Direction },
    /// `<grad f_j(x), v> = 0` for every `j`.
    PropertyD { direction: Direction },
}

/// Record of the systems whose only solution was `v = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropernessEvidence {
    /// Number of per-criterion property-(c) systems certified trivial.
    pub c_systems_checked: usize,
    /// Property-(d) system certified trivial.
    pub d_system_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropernessVerdict {
    /// Both property families admit no nonzero direction, so the scanned
    /// efficient point is properly efficient.
    Proper(PropernessEvidence),
    /// A necessary condition is satisfiable; properness is undecided.
    Inconclusive(PropertyWitness),
}

impl PropernessVerdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, PropernessVerdict::Proper(_))
    }
}

/// Scans the necessary conditions at a feasible point the caller asserts to
/// be efficient. Property-(c) systems are checked per criterion in
/// ascending order, then the property-(d) system; the first nonzero
/// direction found is returned as the `Inconclusive` witness.
pub fn necessary_condition_scan(
    problem: &ValidatedProblem,
    x: &Point,
) -> Result<PropernessVerdict, AnalysisError> {
    let p = problem.problem();
    if !p.polyhedron().contains(x) {
        return Err(AnalysisError::InfeasiblePoint);
    }

    for (i, obj) in p.objectives().iter().enumerate() {
        let mut sys = recession_base(problem);
        sys.push_cone_row(obj.a().to_vec());
        sys.push_zero_row(obj.b().to_vec());
        if let Some(direction) = nontrivial_member(&sys) {
            return Ok(PropernessVerdict::Inconclusive(PropertyWitness::PropertyC {
                criterion: i,
                direction,
            }));
        }
    }

    let mut sys = recession_base(problem);
    for grad in gradients(problem, x) {
        sys.push_zero_row(grad);
    }
    if let Some(direction) = nontrivial_member(&sys) {
        return Ok(PropernessVerdict::Inconclusive(PropertyWitness::PropertyD {
            direction,
        }));
    }

    Ok(PropernessVerdict::Proper(PropernessEvidence {
        c_systems_checked: p.num_criteria(),
        d_system_checked: true,
    }))
}

/// The three regularity conditions at a feasible point; each flag is true
/// iff the corresponding index-tuple systems admit no nonzero recession
/// direction. `c3` quantifies over triples and is vacuously true for
/// `m = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityFlags {
    /// No pair `(i, j)` with both gradient slopes zero.
    pub c1: bool,
    /// No pair `(i, j)` with `b_i^T v = 0`, `<grad f_i, v> <= 0`,
    /// `<grad f_j, v> > 0`.
    pub c2: bool,
    /// No triple `(i, j, k)` with gradient slopes `< 0`, `= 0`, `> 0`.
    pub c3: bool,
}

pub fn regularity_conditions(
    problem: &ValidatedProblem,
    x: &Point,
) -> Result<RegularityFlags, AnalysisError> {
    let p = problem.problem();
    let m = p.num_criteria();
    if m < 2 {
        return Err(AnalysisError::TooFewCriteria { found: m });
    }
    if !p.polyhedron().contains(x) {
        return Err(AnalysisError::InfeasiblePoint);
    }
    let grads = gradients(problem, x);

    let mut c1 = true;
    'c1: for i in 0..m {
        for j in i + 1..m {
            let mut sys = recession_base(problem);
            sys.push_zero_row(grads[i].clone());
            sys.push_zero_row(grads[j].clone());
            if nontrivial_member(&sys).is_some() {
                c1 = false;
                break 'c1;
            }
        }
    }

    let mut c2 = true;
    'c2: for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            let mut sys = recession_base(problem);
            sys.push_cone_row(grads[i].clone());
            sys.push_zero_row(p.objective(i).b().to_vec());
            sys.push_strict_pos_row(grads[j].clone());
            if strict_feasible(&sys).is_some() {
                c2 = false;
                break 'c2;
            }
        }
    }

    let mut c3 = true;
    if m >= 3 {
        'c3: for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                for k in (0..m).filter(|&k| k != i && k != j) {
                    let mut sys = recession_base(problem);
                    sys.push_strict_neg_row(grads[i].clone());
                    sys.push_zero_row(grads[j].clone());
                    sys.push_strict_pos_row(grads[k].clone());
                    if strict_feasible(&sys).is_some() {
                        c3 = false;
                        break 'c3;
                    }
                }
            }
        }
    }

    Ok(RegularityFlags { c1, c2, c3 })
}

fn recession_base(problem: &ValidatedProblem) -> HomogeneousSystem {
    crate::cone::recession_cone(problem.problem().polyhedron())
}

fn gradients(problem: &ValidatedProblem, x: &Point) -> Vec<Vec<Rational>> {
    problem
        .problem()
        .objectives()
        .iter()
        .map(|obj| {
            obj.gradient(x)
                .expect("validated problems have positive denominators on K")
        })
        .collect()
}
