//! Recession cones and homogeneous feasibility queries.
//!
//! Every question in the analysis layer reduces to deciding whether a
//! homogeneous system — cone rows `r^T v <= 0`, zero rows `z^T v = 0`, and
//! strict rows `s^T v < 0` / `t^T v > 0` — admits a nonzero solution. Strict
//! rows are decidable exactly because the system is invariant under positive
//! scaling of `v`: replacing them by the thresholds `s^T v <= -1` and
//! `t^T v >= 1` preserves feasibility. Without strict rows, a nonzero member
//! exists iff one of the `2n` coordinate-pinned probes `v_l = ±1` is
//! feasible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, negated, Matrix};
use crate::model::{Polyhedron, Problem};
use crate::ratlp;
use crate::Rational;

/// A nonzero direction, canonically scaled so that the largest absolute
/// component equals one. Scaling is by the positive factor `1 / max |v_l|`,
/// which preserves membership in every homogeneous system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction(Vec<Rational>);

impl Direction {
    /// Normalizes `v`; `None` when `v = 0`.
    pub fn normalized(v: Vec<Rational>) -> Option<Direction> {
        let scale = v.iter().map(|x| x.abs()).max()?;
        if scale.is_zero() {
            return None;
        }
        Some(Direction(v.into_iter().map(|x| x / &scale).collect()))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Homogeneous system in `v`: four row blocks with the semantics
/// `cone: r^T v <= 0`, `zero: z^T v = 0`, `strict_neg: s^T v < 0`,
/// `strict_pos: t^T v > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSystem {
    dim: usize,
    cone: Matrix,
    zero: Matrix,
    strict_neg: Matrix,
    strict_pos: Matrix,
}

impl HomogeneousSystem {
    pub fn new(dim: usize) -> Self {
        HomogeneousSystem {
            dim,
            cone: Matrix::new(dim),
            zero: Matrix::new(dim),
            strict_neg: Matrix::new(dim),
            strict_pos: Matrix::new(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push_cone_row(&mut self, row: Vec<Rational>) {
        self.cone.push_row(row);
    }

    pub fn push_zero_row(&mut self, row: Vec<Rational>) {
        self.zero.push_row(row);
    }

    pub fn push_strict_neg_row(&mut self, row: Vec<Rational>) {
        self.strict_neg.push_row(row);
    }

    pub fn push_strict_pos_row(&mut self, row: Vec<Rational>) {
        self.strict_pos.push_row(row);
    }

    pub fn cone_rows(&self) -> &Matrix {
        &self.cone
    }

    pub fn zero_rows(&self) -> &Matrix {
        &self.zero
    }

    pub fn strict_neg_rows(&self) -> &Matrix {
        &self.strict_neg
    }

    pub fn strict_pos_rows(&self) -> &Matrix {
        &self.strict_pos
    }

    pub fn has_strict_rows(&self) -> bool {
        !self.strict_neg.is_empty() || !self.strict_pos.is_empty()
    }

    /// Exact substitution of `v` into all four blocks, strict rows included.
    pub fn satisfied_by(&self, v: &[Rational]) -> bool {
        v.len() == self.dim
            && self.cone.rows().all(|r| !dot(r, v).is_positive())
            && self.zero.rows().all(|z| dot(z, v).is_zero())
            && self.strict_neg.rows().all(|s| dot(s, v).is_negative())
            && self.strict_pos.rows().all(|t| dot(t, v).is_positive())
    }
}

/// The recession cone of `K = {x : Cx <= d}` is `{v : Cv <= 0}`.
pub fn recession_cone(poly: &Polyhedron) -> HomogeneousSystem {
    let mut sys = HomogeneousSystem::new(poly.dim());
    for row in poly.constraint_matrix().rows() {
        sys.push_cone_row(row.to_vec());
    }
    sys
}

/// A nonzero direction satisfying all four blocks, or `None` with the
/// guarantee that no such direction exists.
///
/// With at least one strict row, the thresholded system `s^T v <= -1`,
/// `t^T v >= 1` is solved as one exact LP (any solution is automatically
/// nonzero). Without strict rows the query falls back to
/// [`nontrivial_member`].
pub fn strict_feasible(sys: &HomogeneousSystem) -> Option<Direction> {
    if !sys.has_strict_rows() {
        return nontrivial_member(sys);
    }
    let mut a = sys.cone.clone();
    let mut b = vec![Rational::zero(); a.num_rows()];
    for s in sys.strict_neg.rows() {
        a.push_row(s.to_vec());
        b.push(-Rational::one());
    }
    for t in sys.strict_pos.rows() {
        a.push_row(negated(t));
        b.push(-Rational::one());
    }
    let g = vec![Rational::zero(); sys.zero.num_rows()];
    let v = ratlp::feasible(&a, &b, &sys.zero, &g)
        .expect("system blocks share one dimension")?;
    let dir = Direction::normalized(v).expect("thresholded strict row forces v != 0");
    debug_assert!(sys.satisfied_by(dir.as_slice()));
    Some(dir)
}

/// A nonzero member of a system without strict rows, or `None` with the
/// guarantee that the solution set is `{0}`. Decided by `2n` coordinate
/// probes: the set contains a nonzero vector iff for some coordinate `l` and
/// sign, the system extended with `v_l = ±1` is feasible. Probes run in
/// fixed order (ascending `l`, then `+1` before `-1`), so the result is
/// deterministic.
pub fn nontrivial_member(sys: &HomogeneousSystem) -> Option<Direction> {
    assert!(
        !sys.has_strict_rows(),
        "nontrivial_member requires empty strict blocks"
    );
    let n = sys.dim;
    let b = vec![Rational::zero(); sys.cone.num_rows()];
    for l in 0..n {
        for sign in [Rational::one(), -Rational::one()] {
            let mut eq = sys.zero.clone();
            let mut pin = vec![Rational::zero(); n];
            pin[l] = Rational::one();
            eq.push_row(pin);
            let mut g = vec![Rational::zero(); sys.zero.num_rows()];
            g.push(sign);
            if let Some(v) = ratlp::feasible(&sys.cone, &b, &eq, &g)
                .expect("system blocks share one dimension")
            {
                let dir = Direction::normalized(v).expect("pinned coordinate is nonzero");
                debug_assert!(sys.satisfied_by(dir.as_slice()));
                return Some(dir);
            }
        }
    }
    None
}

/// Witness that some denominator slope is negative on the recession cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub criterion: usize,
    pub direction: Direction,
}

/// Consistency check: for a problem whose denominators are positive on all
/// of `K`, every recession direction `v` must satisfy `b_i^T v >= 0`. For
/// each criterion the system `{Cv <= 0, b_i^T v <= -1}` must therefore be
/// infeasible; a feasible point is returned as a violation witness (which
/// signals a broken instance, not a broken fact).
pub fn lemma_denominator_check(problem: &Problem) -> Result<(), LemmaViolation> {
    let poly = problem.polyhedron();
    for (i, obj) in problem.objectives().iter().enumerate() {
        let mut a = poly.constraint_matrix().clone();
        let mut b = vec![Rational::zero(); a.num_rows()];
        a.push_row(obj.b().to_vec());
        b.push(-Rational::one());
        if let Some(v) = ratlp::feasible(&a, &b, &Matrix::new(poly.dim()), &[])
            .expect("objective dimension matches polyhedron")
        {
            let direction = Direction::normalized(v).expect("b_i^T v <= -1 forces v != 0");
            return Err(LemmaViolation { criterion: i, direction });
        }
    }
    Ok(())
}

/// `K` is bounded iff its recession cone is `{0}`. Assumes `K` nonempty.
pub fn is_bounded(poly: &Polyhedron) -> bool {
    nontrivial_member(&recession_cone(poly)).is_none()
}
