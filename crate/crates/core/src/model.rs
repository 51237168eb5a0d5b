//! Problem representation: linear fractional objectives over a polyhedron,
//! exact evaluation and differentiation, and LP-backed validation of the
//! standing assumptions (nonempty feasible set, positive denominators).

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::cone;
use crate::linalg::{add_scaled, dot, Matrix};
use crate::ratlp::{self, LinearProgram, LpOutcome};
use crate::Rational;

/// One criterion `f(x) = (a^T x + alpha) / (b^T x + beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFObjective {
    a: Vec<Rational>,
    alpha: Rational,
    b: Vec<Rational>,
    beta: Rational,
}

/// A point of the ambient space. No intrinsic invariants; feasibility means
/// `Cx <= d` componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The feasible set `K = {x : Cx <= d}` with `p >= 1` rows and `n >= 1`
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    c: Matrix,
    d: Vec<Rational>,
}

/// A complete problem instance: `m >= 1` objectives sharing the polyhedron's
/// dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    objectives: Vec<LFObjective>,
    polyhedron: Polyhedron,
}

/// Structural error raised by the fallible constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub context: &'static str,
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension mismatch in {}: expected {}, found {}",
            self.context, self.expected, self.found
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DimensionMismatch {}

/// Error raised by evaluation at points where a denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroDenominator;

impl fmt::Display for ZeroDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "denominator evaluates to zero")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ZeroDenominator {}

impl LFObjective {
    pub fn new(
        a: Vec<Rational>,
        alpha: Rational,
        b: Vec<Rational>,
        beta: Rational,
    ) -> Result<Self, DimensionMismatch> {
        if a.len() != b.len() {
            return Err(DimensionMismatch {
                context: "objective vectors a and b",
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(LFObjective { a, alpha, b, beta })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// True if the criterion is affine (`b = 0`), in which case the
    /// denominator is the constant `beta`.
    pub fn is_affine(&self) -> bool {
        self.b.iter().all(Zero::is_zero)
    }

    pub fn numerator_at(&self, x: &Point) -> Rational {
        dot(&self.a, &x.coords) + &self.alpha
    }

    pub fn denominator_at(&self, x: &Point) -> Rational {
        dot(&self.b, &x.coords) + &self.beta
    }

    /// Exact value `(a^T x + alpha) / (b^T x + beta)`.
    pub fn evaluate(&self, x: &Point) -> Result<Rational, ZeroDenominator> {
        let den = self.denominator_at(x);
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        Ok(self.numerator_at(x) / den)
    }

    /// Exact gradient `[(b^T x + beta) a - (a^T x + alpha) b] / (b^T x + beta)^2`.
    pub fn gradient(&self, x: &Point) -> Result<Vec<Rational>, ZeroDenominator> {
        let den = self.denominator_at(x);
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        let num = self.numerator_at(x);
        let den_sq = &den * &den;
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .map(|(ai, bi)| (&den * ai - &num * bi) / &den_sq)
            .collect())
    }

    /// Residual of the exact increment identity for linear fractional
    /// functions:
    ///
    /// `[f(y) - f(x)] - [(b^T x + beta)/(b^T y + beta)] <grad f(x), y - x>`
    ///
    /// which is identically zero whenever both denominators are nonzero.
    pub fn fractional_identity_residual(
        &self,
        x: &Point,
        y: &Point,
    ) -> Result<Rational, ZeroDenominator> {
        let den_x = self.denominator_at(x);
        let den_y = self.denominator_at(y);
        if den_x.is_zero() || den_y.is_zero() {
            return Err(ZeroDenominator);
        }
        let lhs = self.evaluate(y)? - self.evaluate(x)?;
        let grad = self.gradient(x)?;
        let step: Vec<Rational> = y
            .coords
            .iter()
            .zip(&x.coords)
            .map(|(yi, xi)| yi - xi)
            .collect();
        Ok(lhs - (den_x / den_y) * dot(&grad, &step))
    }
}

impl Polyhedron {
    pub fn new(c: Matrix, d: Vec<Rational>) -> Result<Self, DimensionMismatch> {
        if c.num_rows() == 0 || c.num_cols() == 0 {
            return Err(DimensionMismatch {
                context: "polyhedron shape (need p >= 1 rows, n >= 1 columns)",
                expected: 1,
                found: 0,
            });
        }
        if d.len() != c.num_rows() {
            return Err(DimensionMismatch {
                context: "polyhedron right-hand side",
                expected: c.num_rows(),
                found: d.len(),
            });
        }
        Ok(Polyhedron { c, d })
    }

    pub fn dim(&self) -> usize {
        self.c.num_cols()
    }

    pub fn num_rows(&self) -> usize {
        self.c.num_rows()
    }

    pub fn constraint_matrix(&self) -> &Matrix {
        &self.c
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.d
    }

    /// Exact membership test `Cx <= d`.
    pub fn contains(&self, x: &Point) -> bool {
        x.coords.len() == self.dim()
            && self
                .c
                .rows()
                .zip(&self.d)
                .all(|(row, di)| dot(row, &x.coords) <= *di)
    }
}

impl Problem {
    pub fn new(
        objectives: Vec<LFObjective>,
        polyhedron: Polyhedron,
    ) -> Result<Self, DimensionMismatch> {
        if objectives.is_empty() {
            return Err(DimensionMismatch {
                context: "objective count (need m >= 1)",
                expected: 1,
                found: 0,
            });
        }
        let n = polyhedron.dim();
        for obj in &objectives {
            if obj.dim() != n {
                return Err(DimensionMismatch {
                    context: "objective dimension vs. polyhedron",
                    expected: n,
                    found: obj.dim(),
                });
            }
        }
        Ok(Problem { objectives, polyhedron })
    }

    /// Number of criteria `m`.
    pub fn num_criteria(&self) -> usize {
        self.objectives.len()
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.polyhedron.dim()
    }

    pub fn objectives(&self) -> &[LFObjective] {
        &self.objectives
    }

    pub fn objective(&self, i: usize) -> &LFObjective {
        &self.objectives[i]
    }

    pub fn polyhedron(&self) -> &Polyhedron {
        &self.polyhedron
    }
}

/// Per-criterion outcome of the denominator minimization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorMinimum {
    pub criterion: usize,
    pub minimum: Rational,
    pub argmin: Point,
}

/// Evidence gathered by [`validate`]: a feasible point, the attained positive
/// minimum of each denominator over `K`, and the recession-cone consistency
/// check on the denominator slopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub feasible_point: Point,
    pub denominator_minima: Vec<DenominatorMinimum>,
    pub recession_lemma_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationError {
    /// `K` is empty.
    EmptyFeasibleSet,
    /// Some denominator attains a value `<= 0` on `K` (or is unbounded
    /// below); `witness` is a feasible point realizing it.
    NonpositiveDenominator { criterion: usize, witness: Point },
    /// Consistency failure: a recession direction with `b_i^T v < 0` exists
    /// even though the denominator minimum came out positive. This signals a
    /// solver bug, never a property of a well-formed instance.
    RecessionLemmaViolation { criterion: usize, direction: Vec<Rational> },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::EmptyFeasibleSet => write!(f, "the feasible set is empty"),
            ValidationError::NonpositiveDenominator { criterion, .. } => write!(
                f,
                "denominator of criterion {} is not positive on the feasible set",
                criterion + 1
            ),
            ValidationError::RecessionLemmaViolation { criterion, .. } => write!(
                f,
                "internal inconsistency: recession direction with negative denominator slope for criterion {}",
                criterion + 1
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ValidationError {}

/// A problem whose standing assumptions have been certified by [`validate`].
/// Analysis entry points take this wrapper, so "unvalidated problem" errors
/// are unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedProblem {
    problem: Problem,
    report: ValidationReport,
}

impl ValidatedProblem {
    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }
}

/// Checks the standing assumptions by exact linear programming:
///
/// 1. `K` is nonempty (phase-one feasibility);
/// 2. for each criterion, the minimum of `b_i^T x + beta_i` over `K` is
///    attained and positive (an unbounded-below or nonpositive minimum fails
///    with a feasible witness);
/// 3. as a corollary of 2, no recession direction has `b_i^T v < 0`.
pub fn validate(problem: Problem) -> Result<ValidatedProblem, ValidationError> {
    let poly = problem.polyhedron();
    let feasible_point = match ratlp::feasible(
        poly.constraint_matrix(),
        poly.rhs(),
        &Matrix::new(poly.dim()),
        &[],
    )
    .expect("polyhedron dimensions are consistent by construction")
    {
        Some(x) => Point::new(x),
        None => return Err(ValidationError::EmptyFeasibleSet),
    };

    let mut minima = Vec::with_capacity(problem.num_criteria());
    for (i, obj) in problem.objectives().iter().enumerate() {
        let lp = LinearProgram::new(
            obj.b().to_vec(),
            poly.constraint_matrix().clone(),
            poly.rhs().to_vec(),
        )
        .expect("objective dimension matches polyhedron by construction");
        match ratlp::solve(&lp).expect("dimensions consistent") {
            LpOutcome::Optimal { point, value } => {
                let minimum = value + obj.beta();
                let argmin = Point::new(point);
                if minimum.is_positive() {
                    minima.push(DenominatorMinimum { criterion: i, minimum, argmin });
                } else {
                    return Err(ValidationError::NonpositiveDenominator {
                        criterion: i,
                        witness: argmin,
                    });
                }
            }
            LpOutcome::Unbounded { point, ray } => {
                // Walk down the ray until the denominator crosses zero.
                let mut t = Rational::one();
                loop {
                    let candidate = Point::new(add_scaled(&point, &t, &ray));
                    if !obj.denominator_at(&candidate).is_positive() {
                        return Err(ValidationError::NonpositiveDenominator {
                            criterion: i,
                            witness: candidate,
                        });
                    }
                    t = &t + &t;
                }
            }
            LpOutcome::Infeasible => unreachable!("feasibility already established"),
        }
    }

    if let Err(violation) = cone::lemma_denominator_check(&problem) {
        return Err(ValidationError::RecessionLemmaViolation {
            criterion: violation.criterion,
            direction: violation.direction.into_coords(),
        });
    }

    Ok(ValidatedProblem {
        problem,
        report: ValidationReport {
            feasible_point,
            denominator_minima: minima,
            recession_lemma_ok: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rats};
    use alloc::vec;

    fn quadrant_f2() -> LFObjective {
        // x2 / (x1 + x2 + 1)
        LFObjective::new(rats(&[0, 1]), rat(0, 1), rats(&[1, 1]), rat(1, 1)).unwrap()
    }

    fn hpy3_f1() -> LFObjective {
        // (-x1 + 1/2) / (x1 + x2 + x3 - 3/4)
        LFObjective::new(
            rats(&[-1, 0, 0]),
            rat(1, 2),
            rats(&[1, 1, 1]),
            rat(-3, 4),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_quadrant_example() {
        let x = Point::new(rats(&[1, 1]));
        assert_eq!(quadrant_f2().evaluate(&x).unwrap(), rat(1, 3));
    }

    #[test]
    fn evaluate_affine() {
        let f = LFObjective::new(rats(&[-1, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        assert_eq!(f.evaluate(&Point::new(rats(&[1, 0]))).unwrap(), rat(-1, 1));
    }

    #[test]
    fn evaluate_hpy3() {
        let x = Point::new(rats(&[1, 0, 0]));
        assert_eq!(hpy3_f1().evaluate(&x).unwrap(), rat(-2, 1));
    }

    #[test]
    fn evaluate_zero_denominator() {
        let f = LFObjective::new(rats(&[1]), rat(0, 1), rats(&[1]), rat(1, 1)).unwrap();
        assert_eq!(f.evaluate(&Point::new(rats(&[-1]))), Err(ZeroDenominator));
    }

    #[test]
    fn gradient_affine_is_a() {
        let f = LFObjective::new(rats(&[3, -2]), rat(5, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        let g = f.gradient(&Point::new(vec![rat(7, 3), rat(-1, 2)])).unwrap();
        assert_eq!(g, rats(&[3, -2]));
    }

    #[test]
    fn gradient_hpy3_closed_form() {
        // Two independent routes to the same gradient: the quotient-rule
        // formula implemented by `gradient`, and the expanded componentwise
        // closed form (-x2 - x3 + 1/4, x1 - 1/2, x1 - 1/2) / p(x) with
        // p(x) = (x1 + x2 + x3 - 3/4)^2.
        let f = hpy3_f1();
        let x = Point::new(rats(&[1, 0, 0]));
        let g = f.gradient(&x).unwrap();
        assert_eq!(g, rats(&[4, 8, 8]));

        let p = rat(1, 16);
        let closed_form: Vec<_> = [rat(1, 4), rat(1, 2), rat(1, 2)]
            .iter()
            .map(|c| c / &p)
            .collect();
        assert_eq!(g, closed_form);

        assert_eq!(dot(&g, &rats(&[1, 1, 1])), rat(20, 1));
        // ... which also matches 5*tau / (4 p(x)) at tau = 1.
        assert_eq!(rat(5, 1) / (rat(4, 1) * p), rat(20, 1));
    }

    #[test]
    fn identity_residual_trivial_and_examples() {
        let f2 = quadrant_f2();
        let x = Point::new(rats(&[0, 0]));
        assert_eq!(
            f2.fractional_identity_residual(&x, &x).unwrap(),
            rat(0, 1)
        );
        assert_eq!(
            f2.fractional_identity_residual(&x, &Point::new(rats(&[1, 1])))
                .unwrap(),
            rat(0, 1)
        );
        let f1 = hpy3_f1();
        assert_eq!(
            f1.fractional_identity_residual(
                &Point::new(rats(&[1, 0, 0])),
                &Point::new(rats(&[2, 1, 1]))
            )
            .unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn constructors_check_shapes() {
        assert!(LFObjective::new(rats(&[1, 2]), rat(0, 1), rats(&[1]), rat(1, 1)).is_err());
        let c = Matrix::from_rows(2, vec![rats(&[-1, 0])]);
        assert!(Polyhedron::new(c.clone(), rats(&[0, 0])).is_err());
        let poly = Polyhedron::new(c, rats(&[0])).unwrap();
        let bad_obj =
            LFObjective::new(rats(&[1]), rat(0, 1), rats(&[0]), rat(1, 1)).unwrap();
        assert!(Problem::new(vec![bad_obj], poly).is_err());
    }

    #[test]
    fn polyhedron_membership() {
        let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
        let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
        assert!(poly.contains(&Point::new(rats(&[1, 0]))));
        assert!(!poly.contains(&Point::new(rats(&[-1, 0]))));
    }

    fn quadrant_problem() -> Problem {
        let c = Matrix::from_rows(2, vec![rats(&[-1, 0]), rats(&[0, -1])]);
        let poly = Polyhedron::new(c, rats(&[0, 0])).unwrap();
        let f1 = LFObjective::new(rats(&[0, -1]), rat(0, 1), rats(&[0, 0]), rat(1, 1)).unwrap();
        Problem::new(vec![f1, quadrant_f2()], poly).unwrap()
    }

    #[test]
    fn validate_quadrant() {
        let vp = validate(quadrant_problem()).unwrap();
        let report = vp.report();
        assert!(vp.problem().polyhedron().contains(&report.feasible_point));
        assert_eq!(report.denominator_minima.len(), 2);
        // f1 is affine with constant denominator 1; f2's denominator
        // x1 + x2 + 1 attains its minimum 1 at the origin.
        assert_eq!(report.denominator_minima[0].minimum, rat(1, 1));
        assert_eq!(report.denominator_minima[1].minimum, rat(1, 1));
        assert_eq!(report.denominator_minima[1].argmin, Point::new(rats(&[0, 0])));
        assert!(report.recession_lemma_ok);
    }

    #[test]
    fn validate_classical_linear_case() {
        // b_i = 0, beta_i = 1: always valid on a nonempty K.
        let c = Matrix::from_rows(1, vec![rats(&[1])]);
        let poly = Polyhedron::new(c, rats(&[5])).unwrap();
        let f = LFObjective::new(rats(&[2]), rat(-1, 1), rats(&[0]), rat(1, 1)).unwrap();
        assert!(validate(Problem::new(vec![f], poly).unwrap()).is_ok());
    }

    #[test]
    fn validate_rejects_denominator_unbounded_below() {
        // K = {x <= 0}, f = x / (x + 1): denominator unbounded below on K;
        // the witness walks the ray to x = -1 where x + 1 = 0.
        let c = Matrix::from_rows(1, vec![rats(&[1])]);
        let poly = Polyhedron::new(c, rats(&[0])).unwrap();
        let f = LFObjective::new(rats(&[1]), rat(0, 1), rats(&[1]), rat(1, 1)).unwrap();
        let err = validate(Problem::new(vec![f], poly).unwrap()).unwrap_err();
        match err {
            ValidationError::NonpositiveDenominator { criterion, witness } => {
                assert_eq!(criterion, 0);
                assert_eq!(witness, Point::new(rats(&[-1])));
            }
            other => panic!("expected nonpositive denominator, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_attained_nonpositive_denominator() {
        // K = [2, 3], denominator x - 2 attains 0 at x = 2.
        let c = Matrix::from_rows(1, vec![rats(&[-1]), rats(&[1])]);
        let poly = Polyhedron::new(c, rats(&[-2, 3])).unwrap();
        let f = LFObjective::new(rats(&[1]), rat(0, 1), rats(&[1]), rat(-2, 1)).unwrap();
        let err = validate(Problem::new(vec![f], poly).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            ValidationError::NonpositiveDenominator { criterion: 0, .. }
        ));
    }

    #[test]
    fn validate_rejects_empty_feasible_set() {
        // 2 <= x <= 1
        let c = Matrix::from_rows(1, vec![rats(&[1]), rats(&[-1])]);
        let poly = Polyhedron::new(c, rats(&[1, -2])).unwrap();
        let f = LFObjective::new(rats(&[1]), rat(0, 1), rats(&[0]), rat(1, 1)).unwrap();
        let err = validate(Problem::new(vec![f], poly).unwrap()).unwrap_err();
        assert_eq!(err, ValidationError::EmptyFeasibleSet);
    }

    #[test]
    fn validated_problems_evaluate_everywhere_on_k() {
        let vp = validate(quadrant_problem()).unwrap();
        for x in [rats(&[0, 0]), rats(&[4, 0]), rats(&[1, 3]), rats(&[7, 2])] {
            let p = Point::new(x);
            for obj in vp.problem().objectives() {
                assert!(obj.evaluate(&p).is_ok());
            }
        }
    }
}
