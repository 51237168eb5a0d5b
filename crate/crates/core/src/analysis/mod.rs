//! Certificate-level analysis: pathology checkers, point efficiency,
//! properness scans, regularity conditions, ratio probes, and the composed
//! classifier. Every verdict carries a witness that re-verifies against the
//! raw problem data by exact substitution.
//!
//! Classifiers require `m >= 2`: with a single criterion every efficient
//! point is trivially properly efficient and the trade-off machinery is
//! vacuous, so such problems are accepted by `model` but rejected here with
//! `TooFewCriteria`.

mod efficiency;
mod pathology;
mod properness;
mod ratio;

pub use efficiency::{is_efficient, EfficiencyVerdict};
pub use pathology::{
    benson_witness, check_theorem31, check_theorem32, generate_pathological, BensonWitness,
    CertificateError, PathologyCertificate, SplitTag, TheoremTag,
};
pub use properness::{
    necessary_condition_scan, regularity_conditions, PropernessEvidence, PropernessVerdict,
    PropertyWitness, RegularityFlags,
};
pub use ratio::{geometric_grid, ratio_probe, RatioRecord, RatioTrace};

use alloc::vec::Vec;
use core::fmt;

use crate::cone::{is_bounded, Direction};
use crate::model::{Point, ValidatedProblem};
use crate::ratlp::lp_solve_count;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// Classifiers need at least two criteria.
    TooFewCriteria { found: usize },
    InfeasiblePoint,
    /// No criterion strictly decreases along the probed ray.
    NoDecreasingCriterion,
    DirectionNotInCone,
    /// Probe grids must be strictly increasing and positive.
    InvalidGrid,
    InvalidCertificate(CertificateError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::TooFewCriteria { found } => {
                write!(f, "analysis requires at least 2 criteria, found {found}")
            }
            AnalysisError::InfeasiblePoint => write!(f, "point is not feasible"),
            AnalysisError::NoDecreasingCriterion => {
                write!(f, "no criterion strictly decreases along the ray")
            }
            AnalysisError::DirectionNotInCone => {
                write!(f, "direction is not a recession direction of the feasible set")
            }
            AnalysisError::InvalidGrid => {
                write!(f, "grid must be strictly increasing and positive")
            }
            AnalysisError::InvalidCertificate(e) => write!(f, "invalid certificate: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AnalysisError {}

/// Problem-level verdict of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverallVerdict {
    /// Bounded feasible set: efficiency and proper efficiency coincide.
    AllProper,
    /// A pathology certificate exists: every efficient solution is
    /// improperly efficient.
    Pathological,
    /// No certificate; every sampled efficient point scanned `Proper`
    /// (vacuously so when no points were supplied).
    SampledAllProper,
    /// No certificate, but some sampled point scanned `Inconclusive`.
    InconclusivePresent,
}

/// Condensed ratio evidence embedded in reports; the full per-t trace is
/// only produced by the ray probe itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTraceSummary {
    pub direction: Direction,
    pub loser: usize,
    /// Largest realized ratio per gaining criterion over the grid.
    pub suprema: Vec<(usize, Rational)>,
    pub grid_max_exp: u32,
}

/// Everything the analysis established about one sampled point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRecord {
    pub point: Point,
    pub feasible: bool,
    /// Present iff feasible.
    pub efficiency: Option<EfficiencyVerdict>,
    /// Present iff efficient.
    pub properness: Option<PropernessVerdict>,
    /// Present iff efficient.
    pub regularity: Option<RegularityFlags>,
    /// Present iff efficient and a pathology certificate exists.
    pub ratio_trace: Option<RatioTraceSummary>,
    /// Present iff efficient and a pathology certificate exists.
    pub benson: Option<BensonWitness>,
}

/// Per-problem and per-point verdicts with machine-checkable witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub bounded: bool,
    pub theorem31: Option<PathologyCertificate>,
    pub theorem32: Option<PathologyCertificate>,
    pub overall: OverallVerdict,
    pub points: Vec<PointRecord>,
    /// Simplex invocations observed during this classify call (process-wide
    /// counter delta, so concurrent solves on other threads inflate it).
    pub lp_calls: usize,
}

/// Composes the full analysis:
///
/// 1. bounded feasible set -> `AllProper` (no certificates searched);
/// 2. otherwise both certificate searches run; a hit makes the verdict
///    `Pathological` and each efficient sample point gets a ratio-trace
///    summary along the certificate direction plus a Benson limit vector;
/// 3. otherwise the verdict aggregates the per-point necessary-condition
///    scans.
///
/// Infeasible sample points are recorded as such and skipped. Identical
/// input bits yield identical reports (up to the `lp_calls` gauge).
pub fn classify(
    problem: &ValidatedProblem,
    points: &[Point],
    grid_max_exp: u32,
) -> Result<ClassificationReport, AnalysisError> {
    let lp_before = lp_solve_count();
    let p = problem.problem();
    if p.num_criteria() < 2 {
        return Err(AnalysisError::TooFewCriteria { found: p.num_criteria() });
    }
    let bounded = is_bounded(p.polyhedron());
    let (theorem31, theorem32) = if bounded {
        (None, None)
    } else {
        (check_theorem31(problem)?, check_theorem32(problem)?)
    };

    let grid = geometric_grid(grid_max_exp);
    let mut records = Vec::with_capacity(points.len());
    let mut any_inconclusive = false;
    for point in points {
        if !p.polyhedron().contains(point) {
            records.push(PointRecord {
                point: point.clone(),
                feasible: false,
                efficiency: None,
                properness: None,
                regularity: None,
                ratio_trace: None,
                benson: None,
            });
            continue;
        }
        let efficiency = is_efficient(problem, point)?;
        let mut record = PointRecord {
            point: point.clone(),
            feasible: true,
            efficiency: Some(efficiency.clone()),
            properness: None,
            regularity: None,
            ratio_trace: None,
            benson: None,
        };
        if efficiency == EfficiencyVerdict::Efficient {
            let scan = necessary_condition_scan(problem, point)?;
            any_inconclusive |= !scan.is_proper();
            record.properness = Some(scan);
            record.regularity = Some(regularity_conditions(problem, point)?);
            if let Some(cert) = &theorem32 {
                let trace = ratio_probe(problem, point, &cert.direction, &grid)?;
                record.ratio_trace = Some(RatioTraceSummary {
                    direction: cert.direction.clone(),
                    loser: trace.loser,
                    suprema: trace.suprema(),
                    grid_max_exp,
                });
                record.benson = Some(benson_witness(problem, point, cert)?);
            }
        }
        records.push(record);
    }

    let overall = if bounded {
        OverallVerdict::AllProper
    } else if theorem32.is_some() {
        OverallVerdict::Pathological
    } else if any_inconclusive {
        OverallVerdict::InconclusivePresent
    } else {
        OverallVerdict::SampledAllProper
    };

    Ok(ClassificationReport {
        bounded,
        theorem31,
        theorem32,
        overall,
        points: records,
        lp_calls: lp_solve_count().wrapping_sub(lp_before),
    })
}
