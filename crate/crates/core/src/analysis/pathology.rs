//! Pathology certificates: sufficient conditions under which *every*
//! efficient solution has unbounded trade-off ratios, plus the limit vector
//! construction that exhibits the failure against the Benson cone criterion,
//! and a generator of certified-pathological instances.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::{strict_feasible, Direction, HomogeneousSystem};
use crate::linalg::{dot, Matrix};
use crate::model::{LFObjective, Point, Polyhedron, Problem, ValidatedProblem};
use crate::{rat, Rational};

use super::AnalysisError;

/// Role of a non-designated criterion `j` in a certificate: along the
/// witness direction either its denominator strictly grows
/// (`b_j^T v > 0`) or both its denominator slope is zero and its numerator
/// slope is nonpositive (`b_j^T v = 0`, `a_j^T v <= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitTag {
    StrictPos,
    ZeroNeg,
}

/// Which sufficient condition the certificate instantiates. `Thm31` is the
/// special case where every other criterion is `StrictPos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremTag {
    Thm31,
    Thm32,
}

/// A recession direction together with index data witnessing that the
/// problem is pathological: `v` is a nonzero recession direction with
/// `b_i^T v = 0` and `a_i^T v < 0` for the designated criterion, and each
/// other criterion satisfies its split tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathologyCertificate {
    /// Designated criterion index (0-based).
    pub criterion: usize,
    pub direction: Direction,
    /// `(j, tag)` for every `j != criterion`, ascending.
    pub split: Vec<(usize, SplitTag)>,
    pub theorem: TheoremTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    CriterionOutOfRange,
    WrongSplitIndexSet,
    WrongDimension,
    DirectionNotInCone,
    ConditionAViolated,
    SplitViolated { criterion: usize },
    Thm31RequiresAllStrictPos,
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::CriterionOutOfRange => write!(f, "criterion index out of range"),
            CertificateError::WrongSplitIndexSet => {
                write!(f, "split must cover every other criterion exactly once, ascending")
            }
            CertificateError::WrongDimension => write!(f, "direction has wrong dimension"),
            CertificateError::DirectionNotInCone => {
                write!(f, "direction is not a recession direction of the feasible set")
            }
            CertificateError::ConditionAViolated => {
                write!(f, "designated criterion must satisfy b_i^T v = 0 and a_i^T v < 0")
            }
            CertificateError::SplitViolated { criterion } => {
                write!(f, "split tag for criterion {} does not re-verify", criterion + 1)
            }
            CertificateError::Thm31RequiresAllStrictPos => {
                write!(f, "theorem-3.1 certificates require every split tag to be strict-pos")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CertificateError {}

impl PathologyCertificate {
    /// Re-verifies the certificate against raw problem data by exact
    /// substitution. Independent of the search path that produced it.
    pub fn verify(&self, problem: &Problem) -> Result<(), CertificateError> {
        let m = problem.num_criteria();
        if self.criterion >= m {
            return Err(CertificateError::CriterionOutOfRange);
        }
        let expected: Vec<usize> = (0..m).filter(|&j| j != self.criterion).collect();
        if self.split.iter().map(|(j, _)| *j).ne(expected.iter().copied()) {
            return Err(CertificateError::WrongSplitIndexSet);
        }
        let v = self.direction.as_slice();
        if v.len() != problem.dim() {
            return Err(CertificateError::WrongDimension);
        }
        let poly = problem.polyhedron();
        let in_cone = poly
            .constraint_matrix()
            .rows()
            .all(|row| !dot(row, v).is_positive());
        if !in_cone || v.iter().all(Zero::is_zero) {
            return Err(CertificateError::DirectionNotInCone);
        }
        let designated = problem.objective(self.criterion);
        if !dot(designated.b(), v).is_zero() || !dot(designated.a(), v).is_negative() {
            return Err(CertificateError::ConditionAViolated);
        }
        for &(j, tag) in &self.split {
            let obj = problem.objective(j);
            let bv = dot(obj.b(), v);
            let ok = match tag {
                SplitTag::StrictPos => bv.is_positive(),
                SplitTag::ZeroNeg => bv.is_zero() && !dot(obj.a(), v).is_positive(),
            };
            if !ok {
                return Err(CertificateError::SplitViolated { criterion: j });
            }
        }
        if self.theorem == TheoremTag::Thm31
            && self.split.iter().any(|&(_, tag)| tag != SplitTag::StrictPos)
        {
            return Err(CertificateError::Thm31RequiresAllStrictPos);
        }
        Ok(())
    }
}

fn require_multi_criteria(problem: &Problem) -> Result<(), AnalysisError> {
    let m = problem.num_criteria();
    if m < 2 {
        return Err(AnalysisError::TooFewCriteria { found: m });
    }
    Ok(())
}

/// Searches for a certificate with every other criterion `StrictPos`:
/// for each `k` in increasing order, decides strict feasibility of
/// `{Cv <= 0, b_k^T v = 0, a_k^T v < 0, b_j^T v > 0 for all j != k}` and
/// returns the first hit. A hit proves the problem pathological.
pub fn check_theorem31(
    problem: &ValidatedProblem,
) -> Result<Option<PathologyCertificate>, AnalysisError> {
    let p = problem.problem();
    require_multi_criteria(p)?;
    let m = p.num_criteria();
    for k in 0..m {
        let mut sys = HomogeneousSystem::new(p.dim());
        for row in p.polyhedron().constraint_matrix().rows() {
            sys.push_cone_row(row.to_vec());
        }
        sys.push_zero_row(p.objective(k).b().to_vec());
        sys.push_strict_neg_row(p.objective(k).a().to_vec());
        for j in (0..m).filter(|&j| j != k) {
            sys.push_strict_pos_row(p.objective(j).b().to_vec());
        }
        if let Some(direction) = strict_feasible(&sys) {
            let cert = PathologyCertificate {
                criterion: k,
                direction,
                split: (0..m)
                    .filter(|&j| j != k)
                    .map(|j| (j, SplitTag::StrictPos))
                    .collect(),
                theorem: TheoremTag::Thm31,
            };
            debug_assert_eq!(cert.verify(p), Ok(()));
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Searches the full disjunction: for each designated criterion `i` and each
/// of the `2^(m-1)` split assignments (in lexicographic order with
/// `StrictPos` before `ZeroNeg`), decides strict feasibility of the induced
/// homogeneous system and returns the first hit.
///
/// A `ZeroNeg` assignment for `j` only adds `b_j^T v <= 0` and
/// `a_j^T v <= 0`: on the recession cone of a validated problem
/// `b_j^T v >= 0` always holds, so the one-sided row already pins
/// `b_j^T v = 0`.
pub fn check_theorem32(
    problem: &ValidatedProblem,
) -> Result<Option<PathologyCertificate>, AnalysisError> {
    let p = problem.problem();
    require_multi_criteria(p)?;
    let m = p.num_criteria();
    let others = m - 1;
    for i in 0..m {
        let js: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        for mask in 0..(1usize << others) {
            let tags: Vec<SplitTag> = (0..others)
                .map(|pos| {
                    if mask >> (others - 1 - pos) & 1 == 1 {
                        SplitTag::ZeroNeg
                    } else {
                        SplitTag::StrictPos
                    }
                })
                .collect();
            let mut sys = HomogeneousSystem::new(p.dim());
            for row in p.polyhedron().constraint_matrix().rows() {
                sys.push_cone_row(row.to_vec());
            }
            for (pos, &j) in js.iter().enumerate() {
                if tags[pos] == SplitTag::ZeroNeg {
                    sys.push_cone_row(p.objective(j).b().to_vec());
                    sys.push_cone_row(p.objective(j).a().to_vec());
                }
            }
            sys.push_zero_row(p.objective(i).b().to_vec());
            sys.push_strict_neg_row(p.objective(i).a().to_vec());
            for (pos, &j) in js.iter().enumerate() {
                if tags[pos] == SplitTag::StrictPos {
                    sys.push_strict_pos_row(p.objective(j).b().to_vec());
                }
            }
            if let Some(direction) = strict_feasible(&sys) {
                let cert = PathologyCertificate {
                    criterion: i,
                    direction,
                    split: js.iter().copied().zip(tags).collect(),
                    theorem: TheoremTag::Thm32,
                };
                debug_assert_eq!(cert.verify(p), Ok(()));
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// The exact limit of the scaled image sequence along the certificate ray:
/// lying in the nonpositive orthant and nonzero, it exhibits the Benson cone
/// intersection that rules out bounded trade-off ratios at `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BensonWitness {
    /// One component per criterion; all `<= 0`, the designated one `< 0`.
    pub ybar: Vec<Rational>,
}

/// Computes the limit vector for a feasible base point and a verified
/// certificate: component `l` is `a_l^T v / (b_l^T x + beta_l)` when
/// `b_l^T v = 0` and `0` when `b_l^T v > 0`.
pub fn benson_witness(
    problem: &ValidatedProblem,
    x: &Point,
    cert: &PathologyCertificate,
) -> Result<BensonWitness, AnalysisError> {
    let p = problem.problem();
    cert.verify(p).map_err(AnalysisError::InvalidCertificate)?;
    if !p.polyhedron().contains(x) {
        return Err(AnalysisError::InfeasiblePoint);
    }
    let v = cert.direction.as_slice();
    let ybar: Vec<Rational> = p
        .objectives()
        .iter()
        .map(|obj| {
            if dot(obj.b(), v).is_zero() {
                dot(obj.a(), v) / obj.denominator_at(x)
            } else {
                Rational::zero()
            }
        })
        .collect();
    debug_assert!(ybar[cert.criterion].is_negative());
    debug_assert!(ybar.iter().all(|y| !y.is_positive()));
    Ok(BensonWitness { ybar })
}

/// Deterministically builds a pathological instance on the nonnegative
/// orthant: criterion 0 is affine with negative slope along `v = (1,..,1)`,
/// criterion 1 has a strictly positive denominator slope, criterion 2 (when
/// present) is affine with nonpositive slope, and further criteria flip a
/// seeded coin between the two shapes. By construction the instance
/// validates and carries a certificate at `i = 0`.
pub fn generate_pathological(n: usize, m: usize, seed: u64) -> Problem {
    assert!(n >= 2, "need n >= 2");
    assert!(m >= 2, "need m >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |lo: i64, hi: i64| -> i64 { rng.gen_range(lo..=hi) };

    // K = nonnegative orthant.
    let mut c = Matrix::new(n);
    for l in 0..n {
        let mut row = crate::rats(&alloc::vec![0; n]);
        row[l] = rat(-1, 1);
        c.push_row(row);
    }
    let poly = Polyhedron::new(c, crate::rats(&alloc::vec![0; n])).unwrap();

    let mut objectives = Vec::with_capacity(m);

    // Criterion 0: b = 0, a with strictly negative sum.
    let mut a0: Vec<i64> = (0..n).map(|_| draw(-3, 3)).collect();
    let drift: i64 = a0.iter().sum();
    if drift >= 0 {
        a0[n - 1] -= drift + 1;
    }
    objectives.push(
        LFObjective::new(
            crate::rats(&a0),
            rat(draw(-2, 2), 1),
            crate::rats(&alloc::vec![0; n]),
            rat(1, 1),
        )
        .unwrap(),
    );

    for j in 1..m {
        let strict_pos = if j == 1 {
            true
        } else if j == 2 {
            false
        } else {
            draw(0, 1) == 1
        };
        let (a, b, beta) = if strict_pos {
            let a: Vec<i64> = (0..n).map(|_| draw(-3, 3)).collect();
            let b: Vec<i64> = (0..n).map(|_| draw(1, 3)).collect();
            (a, b, draw(1, 3))
        } else {
            let mut a: Vec<i64> = (0..n).map(|_| draw(-3, 3)).collect();
            let sum: i64 = a.iter().sum();
            if sum > 0 {
                a[n - 1] -= sum;
            }
            (a, alloc::vec![0; n], draw(1, 3))
        };
        objectives.push(
            LFObjective::new(
                crate::rats(&a),
                rat(draw(-2, 2), 1),
                crate::rats(&b),
                rat(beta, 1),
            )
            .unwrap(),
        );
    }

    Problem::new(objectives, poly).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;
    use crate::rats;
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
    fn theorem31_quadrant() {
        let cert = check_theorem31(&quadrant_problem()).unwrap().unwrap();
        assert_eq!(cert.criterion, 0);
        assert_eq!(cert.direction.as_slice(), rats(&[0, 1]));
        assert_eq!(cert.theorem, TheoremTag::Thm31);
        assert_eq!(cert.verify(quadrant_problem().problem()), Ok(()));
    }

    #[test]
    fn theorem31_none_with_two_affine_criteria() {
        assert_eq!(check_theorem31(&three_criteria_problem()).unwrap(), None);
    }

    #[test]
    fn theorem32_three_criteria() {
        let cert = check_theorem32(&three_criteria_problem()).unwrap().unwrap();
        assert_eq!(cert.criterion, 0);
        assert_eq!(cert.direction.as_slice(), rats(&[1, 1]));
        assert_eq!(
            cert.split,
            vec![(1, SplitTag::StrictPos), (2, SplitTag::ZeroNeg)]
        );
    }

    #[test]
    fn theorem32_encompasses_quadrant() {
        let cert = check_theorem32(&quadrant_problem()).unwrap().unwrap();
        assert_eq!(cert.criterion, 0);
        assert_eq!(cert.direction.as_slice(), rats(&[0, 1]));
        assert_eq!(cert.split, vec![(1, SplitTag::StrictPos)]);
    }

    #[test]
    fn too_few_criteria() {
        let c = Matrix::from_rows(1, vec![rats(&[-1])]);
        let poly = Polyhedron::new(c, rats(&[0])).unwrap();
        let f = LFObjective::new(rats(&[1]), rat(0, 1), rats(&[0]), rat(1, 1)).unwrap();
        let vp = validate(Problem::new(vec![f], poly).unwrap()).unwrap();
        assert_eq!(
            check_theorem31(&vp),
            Err(AnalysisError::TooFewCriteria { found: 1 })
        );
        assert_eq!(
            check_theorem32(&vp),
            Err(AnalysisError::TooFewCriteria { found: 1 })
        );
    }

    #[test]
    fn benson_witness_three_criteria() {
        let vp = three_criteria_problem();
        let cert = check_theorem32(&vp).unwrap().unwrap();
        let w = benson_witness(&vp, &Point::new(rats(&[0, 0])), &cert).unwrap();
        assert_eq!(w.ybar, rats(&[-2, 0, 0]));
    }

    #[test]
    fn benson_witness_quadrant() {
        let vp = quadrant_problem();
        let cert = check_theorem31(&vp).unwrap().unwrap();
        let w = benson_witness(&vp, &Point::new(rats(&[0, 0])), &cert).unwrap();
        assert_eq!(w.ybar, rats(&[-1, 0]));
    }

    #[test]
    fn benson_rejects_invalid_certificate() {
        let vp = quadrant_problem();
        let bogus = PathologyCertificate {
            criterion: 0,
            direction: Direction::normalized(rats(&[1, 0])).unwrap(),
            split: vec![(1, SplitTag::StrictPos)],
            theorem: TheoremTag::Thm31,
        };
        assert!(matches!(
            benson_witness(&vp, &Point::new(rats(&[0, 0])), &bogus),
            Err(AnalysisError::InvalidCertificate(_))
        ));
    }

    #[test]
    fn generator_postconditions() {
        for seed in 0..5 {
            let problem = generate_pathological(3, 3, seed);
            let vp = validate(problem).unwrap();
            let cert = check_theorem32(&vp).unwrap().expect("generated pathological");
            assert_eq!(cert.verify(vp.problem()), Ok(()));
        }
    }

    #[test]
    fn generator_shapes() {
        // m = 2: single affine criterion, so the all-strict-pos search fires.
        let vp = validate(generate_pathological(2, 2, 0)).unwrap();
        assert!(check_theorem31(&vp).unwrap().is_some());
        // m = 3: a second affine criterion kills the all-strict-pos search.
        let vp = validate(generate_pathological(2, 3, 0)).unwrap();
        assert_eq!(check_theorem31(&vp).unwrap(), None);
        assert!(check_theorem32(&vp).unwrap().is_some());
    }

    #[test]
    fn generator_deterministic() {
        assert_eq!(generate_pathological(3, 3, 7), generate_pathological(3, 3, 7));
        assert_ne!(generate_pathological(3, 3, 7), generate_pathological(3, 3, 8));
    }
}
