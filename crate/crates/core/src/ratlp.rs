//! Exact rational linear programming kernel.
//!
//! A dense two-phase primal simplex over arbitrary-precision rationals with
//! Bland's anti-cycling pivot rule and a fixed variable order, so outcomes
//! are deterministic and termination is guaranteed. Free variables are split
//! into nonnegative pairs, equalities become double inequalities, and
//! infeasibility is certified by a positive phase-one optimum with explicit
//! artificial variables. Unbounded programs come with a feasible point and
//! an exact improving ray.
//!
//! Nothing here is tuned for scale: instances in this crate have a handful
//! of variables and rows, and exactness is the point.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, Matrix};
use crate::Rational;

/// Minimize `c^T x` subject to `Ax <= b` and optionally `Ex = g`, `x` free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Matrix,
    rhs: Vec<Rational>,
    eq_constraints: Matrix,
    eq_rhs: Vec<Rational>,
}

/// Exact outcome of [`solve`], with verifiable witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `point` satisfies all constraints exactly and attains `value`.
    Optimal { point: Vec<Rational>, value: Rational },
    /// No point satisfies the constraints (phase-one optimum is positive).
    Infeasible,
    /// `point` is feasible and `ray` satisfies `A ray <= 0`, `E ray = 0`,
    /// `c^T ray < 0`, so the objective is unbounded below along the ray.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    DimensionMismatch { context: &'static str, expected: usize, found: usize },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::DimensionMismatch { context, expected, found } => write!(
                f,
                "linear program dimension mismatch in {context}: expected {expected}, found {found}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LpError {}

impl LinearProgram {
    /// Program without equality constraints.
    pub fn new(
        objective: Vec<Rational>,
        constraints: Matrix,
        rhs: Vec<Rational>,
    ) -> Result<Self, LpError> {
        let n = constraints.num_cols();
        Self::with_equalities(objective, constraints, rhs, Matrix::new(n), Vec::new())
    }

    pub fn with_equalities(
        objective: Vec<Rational>,
        constraints: Matrix,
        rhs: Vec<Rational>,
        eq_constraints: Matrix,
        eq_rhs: Vec<Rational>,
    ) -> Result<Self, LpError> {
        let n = constraints.num_cols();
        if objective.len() != n {
            return Err(LpError::DimensionMismatch {
                context: "objective length",
                expected: n,
                found: objective.len(),
            });
        }
        if rhs.len() != constraints.num_rows() {
            return Err(LpError::DimensionMismatch {
                context: "inequality right-hand side",
                expected: constraints.num_rows(),
                found: rhs.len(),
            });
        }
        if eq_constraints.num_cols() != n {
            return Err(LpError::DimensionMismatch {
                context: "equality column count",
                expected: n,
                found: eq_constraints.num_cols(),
            });
        }
        if eq_rhs.len() != eq_constraints.num_rows() {
            return Err(LpError::DimensionMismatch {
                context: "equality right-hand side",
                expected: eq_constraints.num_rows(),
                found: eq_rhs.len(),
            });
        }
        Ok(LinearProgram { objective, constraints, rhs, eq_constraints, eq_rhs })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    /// Exact feasibility check of a candidate point against the raw data.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        self.constraints
            .rows()
            .zip(&self.rhs)
            .all(|(row, bi)| dot(row, x) <= *bi)
            && self
                .eq_constraints
                .rows()
                .zip(&self.eq_rhs)
                .all(|(row, gi)| dot(row, x) == *gi)
    }

    /// Exact check that `ray` is a feasible direction with negative cost.
    pub fn is_improving_ray(&self, ray: &[Rational]) -> bool {
        if ray.len() != self.num_vars() {
            return false;
        }
        self.constraints.rows().all(|row| !dot(row, ray).is_positive())
            && self.eq_constraints.rows().all(|row| dot(row, ray).is_zero())
            && dot(&self.objective, ray).is_negative()
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

static LP_SOLVES: AtomicUsize = AtomicUsize::new(0);

/// Process-wide count of simplex invocations. Reports built from this
/// counter take a delta around a call tree; concurrent solves on other
/// threads inflate the delta, so it is a usage gauge, not a precise metric.
pub fn lp_solve_count() -> usize {
    LP_SOLVES.load(Ordering::Relaxed)
}

/// Finds a point satisfying `Ax <= b`, `Ex = g`, or returns `None` with the
/// guarantee of infeasibility (positive phase-one optimum).
pub fn feasible(
    constraints: &Matrix,
    rhs: &[Rational],
    eq_constraints: &Matrix,
    eq_rhs: &[Rational],
) -> Result<Option<Vec<Rational>>, LpError> {
    let n = constraints.num_cols();
    let lp = LinearProgram::with_equalities(
        vec![Rational::zero(); n],
        constraints.clone(),
        rhs.to_vec(),
        eq_constraints.clone(),
        eq_rhs.to_vec(),
    )?;
    Ok(match solve(&lp)? {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    })
}

/// Solves the program exactly. Deterministic: identical input bits produce
/// identical outcome bits.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    LP_SOLVES.fetch_add(1, Ordering::Relaxed);
    let n = lp.num_vars();

    // Canonical inequality form: stack A, E, -E so one slack per row.
    let mut canon: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (row, bi) in lp.constraints.rows().zip(&lp.rhs) {
        canon.push((row.to_vec(), bi.clone()));
    }
    for (row, gi) in lp.eq_constraints.rows().zip(&lp.eq_rhs) {
        canon.push((row.to_vec(), gi.clone()));
        canon.push((row.iter().map(|v| -v).collect(), -gi));
    }

    let num_rows = canon.len();
    let slack_start = 2 * n;
    let art_start = slack_start + num_rows;
    let num_arts = canon.iter().filter(|(_, b)| b.is_negative()).count();
    let cols = art_start + num_arts;

    let mut t = Tableau {
        cols,
        rows: Vec::with_capacity(num_rows),
        basis: Vec::with_capacity(num_rows),
        obj: vec![Rational::zero(); cols + 1],
        allowed: cols,
    };

    // Row layout: u (n), w (n) for x = u - w, one slack per row, artificials.
    let mut art = art_start;
    for (i, (coef, b)) in canon.iter().enumerate() {
        let negate = b.is_negative();
        let mut row = vec![Rational::zero(); cols + 1];
        for k in 0..n {
            let v = if negate { -&coef[k] } else { coef[k].clone() };
            row[n + k] = -&v;
            row[k] = v;
        }
        row[slack_start + i] = if negate { -Rational::one() } else { Rational::one() };
        row[cols] = if negate { -b } else { b.clone() };
        if negate {
            row[art] = Rational::one();
            t.basis.push(art);
            art += 1;
        } else {
            t.basis.push(slack_start + i);
        }
        t.rows.push(row);
    }

    // Phase one: minimize the sum of artificials.
    for c in art_start..cols {
        t.obj[c] = Rational::one();
    }
    for r in 0..t.rows.len() {
        if t.basis[r] >= art_start {
            let row = t.rows[r].clone();
            for (o, v) in t.obj.iter_mut().zip(&row) {
                *o -= v;
            }
        }
    }
    match t.run_bland() {
        PivotEnd::Optimal => {}
        PivotEnd::Unbounded(_) => unreachable!("phase-one objective is bounded below by zero"),
    }
    // obj[cols] holds -(current objective value).
    if t.obj[cols].is_negative() {
        return Ok(LpOutcome::Infeasible);
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= art_start {
            debug_assert!(t.rows[r][t.cols].is_zero());
            match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                // Degenerate pivot: the row's value is zero, so feasibility
                // is preserved regardless of the pivot entry's sign.
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase two: original objective on x = u - w, artificials banned.
    t.allowed = art_start;
    let mut costs = vec![Rational::zero(); cols + 1];
    for k in 0..n {
        costs[n + k] = -&lp.objective[k];
        costs[k] = lp.objective[k].clone();
    }
    t.obj = costs.clone();
    for r in 0..t.rows.len() {
        let f = costs[t.basis[r]].clone();
        if !f.is_zero() {
            let row = t.rows[r].clone();
            for (o, v) in t.obj.iter_mut().zip(&row) {
                *o -= &f * v;
            }
        }
    }

    match t.run_bland() {
        PivotEnd::Optimal => {
            let x = t.extract_x(n);
            let value = lp.objective_value(&x);
            debug_assert!(lp.is_feasible_point(&x));
            Ok(LpOutcome::Optimal { point: x, value })
        }
        PivotEnd::Unbounded(enter) => {
            let point = t.extract_x(n);
            // Standard-form ray: entering column at 1, basics move by the
            // negated column; project back to x-space.
            let mut z = vec![Rational::zero(); t.cols];
            z[enter] = Rational::one();
            for r in 0..t.rows.len() {
                z[t.basis[r]] = -&t.rows[r][enter];
            }
            let ray: Vec<Rational> = (0..n).map(|k| &z[k] - &z[n + k]).collect();
            debug_assert!(lp.is_feasible_point(&point));
            debug_assert!(lp.is_improving_ray(&ray));
            Ok(LpOutcome::Unbounded { point, ray })
        }
    }
}

struct Tableau {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced-cost row; the last entry is the negated objective value.
    obj: Vec<Rational>,
    /// Columns `>= allowed` are ineligible for entering (banned artificials).
    allowed: usize,
}

enum PivotEnd {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        for (idx, row) in self.rows.iter_mut().enumerate() {
            if idx == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule: entering column is the lowest index with a negative
    /// reduced cost; the leaving row minimizes the ratio, ties broken by the
    /// lowest basic variable index. Guarantees termination over exact
    /// rationals.
    fn run_bland(&mut self) -> PivotEnd {
        loop {
            let enter = match (0..self.allowed).find(|&j| self.obj[j].is_negative()) {
                Some(j) => j,
                None => return PivotEnd::Optimal,
            };
            let mut leave: Option<usize> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][enter].is_positive() {
                    continue;
                }
                leave = Some(match leave {
                    None => r,
                    Some(cur) => {
                        let ratio_r = &self.rows[r][self.cols] / &self.rows[r][enter];
                        let ratio_cur = &self.rows[cur][self.cols] / &self.rows[cur][enter];
                        if ratio_r < ratio_cur
                            || (ratio_r == ratio_cur && self.basis[r] < self.basis[cur])
                        {
                            r
                        } else {
                            cur
                        }
                    }
                });
            }
            match leave {
                Some(r) => self.pivot(r, enter),
                None => return PivotEnd::Unbounded(enter),
            }
        }
    }

    fn extract_x(&self, n: usize) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.cols];
        for r in 0..self.rows.len() {
            z[self.basis[r]] = self.rows[r][self.cols].clone();
        }
        (0..n).map(|k| &z[k] - &z[n + k]).collect()
    }
}
