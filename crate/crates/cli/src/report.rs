//! Machine-readable classification reports and their independent
//! re-verification.
//!
//! The JSON schema is versioned and every rational is rendered as a string
//! (`"p"` or `"p/q"`), so reports are bit-exact. Criterion indices are
//! 1-based on the wire, matching the text report vocabulary. Exit codes are
//! a function of the report content alone: 0 for all-proper outcomes, 2 for
//! pathological problems, 3 when an inconclusive point verdict is present.
//!
//! [`verify_report`] re-reads a problem file and a report and substitutes
//! every witness into the raw data, sharing nothing with the search paths
//! that produced them.

use lfvo_core::analysis::{
    geometric_grid, ratio_probe, ClassificationReport, EfficiencyVerdict, OverallVerdict,
    PathologyCertificate, PropernessVerdict, PropertyWitness, SplitTag, TheoremTag,
};
use lfvo_core::cone::Direction;
use lfvo_core::linalg::dot;
use lfvo_core::model::{validate, Point, ValidatedProblem};
use lfvo_core::Rational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::problem_file::ProblemFile;
use crate::rational_text::{approx_f64, format_rational, parse_rational};

pub const SCHEMA_VERSION: u32 = 1;

/// Rational rendered as a string on the wire, always.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReportRat(pub String);

impl ReportRat {
    fn of(r: &Rational) -> Self {
        ReportRat(format_rational(r))
    }

    fn value(&self) -> Result<Rational, String> {
        parse_rational(&self.0)
    }
}

fn wire_vec(v: &[Rational]) -> Vec<ReportRat> {
    v.iter().map(ReportRat::of).collect()
}

fn read_vec(v: &[ReportRat]) -> Result<Vec<Rational>, String> {
    v.iter().map(ReportRat::value).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenominatorMinimumJson {
    pub criterion: usize,
    pub minimum: ReportRat,
    pub argmin: Vec<ReportRat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub feasible_point: Vec<ReportRat>,
    pub denominator_minima: Vec<DenominatorMinimumJson>,
    pub recession_lemma: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem31Json {
    pub k: usize,
    pub v: Vec<ReportRat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitJson {
    pub j: usize,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem32Json {
    pub i: usize,
    pub v: Vec<ReportRat>,
    pub split: Vec<SplitJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyWitnessJson {
    /// `"c"` or `"d"`.
    pub property: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub v: Vec<ReportRat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityJson {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupremumJson {
    pub j: usize,
    pub ratio: ReportRat,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummaryJson {
    pub direction: Vec<ReportRat>,
    pub loser: usize,
    pub suprema: Vec<SupremumJson>,
    pub grid_max_exp: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub point: Vec<ReportRat>,
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efficient: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domination_witness: Option<Vec<ReportRat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properness_witness: Option<PropertyWitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegularityJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_trace: Option<TraceSummaryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benson_witness: Option<Vec<ReportRat>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub problem: String,
    pub validation: ValidationJson,
    pub bounded: bool,
    pub theorem31: Option<Theorem31Json>,
    pub theorem32: Option<Theorem32Json>,
    pub overall: String,
    pub points: Vec<PointJson>,
    pub lp_calls: usize,
}

fn tag_str(tag: SplitTag) -> &'static str {
    match tag {
        SplitTag::StrictPos => "strict_pos",
        SplitTag::ZeroNeg => "zero_neg",
    }
}

fn overall_str(v: OverallVerdict) -> &'static str {
    match v {
        OverallVerdict::AllProper => "all_proper",
        OverallVerdict::Pathological => "pathological",
        OverallVerdict::SampledAllProper => "proper_at_sampled_points",
        OverallVerdict::InconclusivePresent => "inconclusive_present",
    }
}

fn cert31_json(cert: &PathologyCertificate) -> Theorem31Json {
    Theorem31Json {
        k: cert.criterion + 1,
        v: wire_vec(cert.direction.as_slice()),
    }
}

fn cert32_json(cert: &PathologyCertificate) -> Theorem32Json {
    Theorem32Json {
        i: cert.criterion + 1,
        v: wire_vec(cert.direction.as_slice()),
        split: cert
            .split
            .iter()
            .map(|&(j, tag)| SplitJson { j: j + 1, tag: tag_str(tag).into() })
            .collect(),
    }
}

/// Builds the wire report from a core classification report.
pub fn build_report(
    name: &str,
    problem: &ValidatedProblem,
    report: &ClassificationReport,
) -> ReportJson {
    let validation = ValidationJson {
        feasible_point: wire_vec(&problem.report().feasible_point.coords),
        denominator_minima: problem
            .report()
            .denominator_minima
            .iter()
            .map(|m| DenominatorMinimumJson {
                criterion: m.criterion + 1,
                minimum: ReportRat::of(&m.minimum),
                argmin: wire_vec(&m.argmin.coords),
            })
            .collect(),
        recession_lemma: "pass".into(),
    };
    let points = report
        .points
        .iter()
        .map(|record| {
            let (efficient, domination_witness) = match &record.efficiency {
                None => (None, None),
                Some(EfficiencyVerdict::Efficient) => (Some(true), None),
                Some(EfficiencyVerdict::Dominated { witness }) => {
                    (Some(false), Some(wire_vec(&witness.coords)))
                }
            };
            let (properness, properness_witness) = match &record.properness {
                None => (None, None),
                Some(PropernessVerdict::Proper(_)) => (Some("proper".to_string()), None),
                Some(PropernessVerdict::Inconclusive(w)) => {
                    let witness = match w {
                        PropertyWitness::PropertyC { criterion, direction } => {
                            PropertyWitnessJson {
                                property: "c".into(),
                                i: Some(criterion + 1),
                                v: wire_vec(direction.as_slice()),
                            }
                        }
                        PropertyWitness::PropertyD { direction } => PropertyWitnessJson {
                            property: "d".into(),
                            i: None,
                            v: wire_vec(direction.as_slice()),
                        },
                    };
                    (Some("inconclusive".to_string()), Some(witness))
                }
            };
            PointJson {
                point: wire_vec(&record.point.coords),
                feasible: record.feasible,
                efficient,
                domination_witness,
                properness,
                properness_witness,
                regularity: record.regularity.map(|r| RegularityJson {
                    c1: r.c1,
                    c2: r.c2,
                    c3: r.c3,
                }),
                ratio_trace: record.ratio_trace.as_ref().map(|t| TraceSummaryJson {
                    direction: wire_vec(t.direction.as_slice()),
                    loser: t.loser + 1,
                    suprema: t
                        .suprema
                        .iter()
                        .map(|(j, ratio)| SupremumJson {
                            j: j + 1,
                            ratio: ReportRat::of(ratio),
                            approx: approx_f64(ratio),
                        })
                        .collect(),
                    grid_max_exp: t.grid_max_exp,
                }),
                benson_witness: record.benson.as_ref().map(|b| wire_vec(&b.ybar)),
            }
        })
        .collect();
    ReportJson {
        schema_version: SCHEMA_VERSION,
        problem: name.to_string(),
        validation,
        bounded: report.bounded,
        theorem31: report.theorem31.as_ref().map(cert31_json),
        theorem32: report.theorem32.as_ref().map(cert32_json),
        overall: overall_str(report.overall).to_string(),
        points,
        lp_calls: report.lp_calls,
    }
}

/// Exit code mandated by the report content: 0 all-proper, 2 pathological,
/// 3 inconclusive present.
pub fn exit_code(report: &ClassificationReport) -> u8 {
    match report.overall {
        OverallVerdict::AllProper | OverallVerdict::SampledAllProper => 0,
        OverallVerdict::Pathological => 2,
        OverallVerdict::InconclusivePresent => 3,
    }
}

pub fn to_json_text(report: &ReportJson) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn wire_vector_text(v: &[ReportRat]) -> String {
    let parts: Vec<&str> = v.iter().map(|r| r.0.as_str()).collect();
    format!("({})", parts.join(", "))
}

/// Human-readable rendering of the same content.
pub fn to_text(report: &ReportJson) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("problem: {}", report.problem));
    line(format!(
        "validation: ok (feasible point {}; denominator minima: {})",
        wire_vector_text(&report.validation.feasible_point),
        report
            .validation
            .denominator_minima
            .iter()
            .map(|m| format!("f{}: {}", m.criterion, m.minimum.0))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    line(format!(
        "constraint set: {}",
        if report.bounded { "bounded" } else { "unbounded" }
    ));
    match (&report.theorem31, &report.theorem32) {
        (_, Some(t32)) => {
            line("verdict: PATHOLOGICAL - every efficient solution is improperly efficient".into());
            if let Some(t31) = &report.theorem31 {
                line(format!(
                    "  theorem31 certificate: k={}, v={}",
                    t31.k,
                    wire_vector_text(&t31.v)
                ));
            }
            line(format!(
                "  theorem32 certificate: i={}, v={}, split: {}",
                t32.i,
                wire_vector_text(&t32.v),
                t32.split
                    .iter()
                    .map(|s| format!("j={} {}", s.j, s.tag))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        (None, None) if report.bounded => {
            line("verdict: ALL PROPER - bounded constraint set, E = E^Ge".into());
        }
        _ => {
            line("verdict: no pathology certificate found; see per-point scans".into());
        }
    }
    for p in &report.points {
        let mut parts: Vec<String> = Vec::new();
        if !p.feasible {
            parts.push("infeasible".into());
        }
        if let Some(eff) = p.efficient {
            if eff {
                parts.push("efficient".into());
            } else if let Some(w) = &p.domination_witness {
                parts.push(format!("dominated by {}", wire_vector_text(w)));
            }
        }
        match p.properness.as_deref() {
            Some("proper") => parts.push("properly efficient".into()),
            Some("inconclusive") => {
                let w = p.properness_witness.as_ref().expect("witness accompanies verdict");
                let which = match (w.property.as_str(), w.i) {
                    ("c", Some(i)) => format!("property (c) with i={i}"),
                    _ => "property (d)".to_string(),
                };
                parts.push(format!(
                    "inconclusive: {} holds along v={} (necessary condition for \
                     improperness; not a proof)",
                    which,
                    wire_vector_text(&w.v)
                ));
            }
            _ => {}
        }
        if let Some(r) = &p.regularity {
            parts.push(format!(
                "regularity: c1={} c2={} c3={}",
                r.c1, r.c2, r.c3
            ));
        }
        if let Some(t) = &p.ratio_trace {
            let sup = t
                .suprema
                .iter()
                .map(|s| format!("A_{},{} <= {} (~{:.4e})", t.loser, s.j, s.ratio.0, s.approx))
                .collect::<Vec<_>>()
                .join(", ");
            parts.push(format!(
                "ratio probe along v={} up to t=2^{}: {}",
                wire_vector_text(&t.direction),
                t.grid_max_exp,
                if sup.is_empty() { "no gaining criterion".into() } else { sup }
            ));
        }
        if let Some(b) = &p.benson_witness {
            parts.push(format!("benson witness ybar={}", wire_vector_text(b)));
        }
        line(format!("point {}: {}", wire_vector_text(&p.point), parts.join("; ")));
    }
    line(format!("lp calls: {}", report.lp_calls));
    line(format!("overall: {}", report.overall));
    out
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn direction_from_wire(v: &[ReportRat]) -> Result<Direction, String> {
    Direction::normalized(read_vec(v)?).ok_or_else(|| "zero direction in report".to_string())
}

/// Re-reads a problem file and a JSON report and re-verifies every witness
/// by exact substitution into the freshly parsed problem.
pub fn verify_report(problem_text: &str, report_text: &str) -> Result<(), String> {
    let file = ProblemFile::from_json(problem_text).map_err(|e| e.to_string())?;
    let problem = file.to_problem().map_err(|e| e.to_string())?;
    let report: ReportJson =
        serde_json::from_str(report_text).map_err(|e| format!("invalid report: {e}"))?;
    if report.schema_version != SCHEMA_VERSION {
        return fail(format!("unknown schema version {}", report.schema_version));
    }
    let validated = validate(problem).map_err(|e| format!("problem does not validate: {e}"))?;
    let problem = validated.problem();

    let feasible_point = Point::new(read_vec(&report.validation.feasible_point)?);
    if !problem.polyhedron().contains(&feasible_point) {
        return fail("reported feasible point is not feasible");
    }
    for m in &report.validation.denominator_minima {
        if m.criterion == 0 || m.criterion > problem.num_criteria() {
            return fail("denominator minimum criterion out of range");
        }
        let argmin = Point::new(read_vec(&m.argmin)?);
        if !problem.polyhedron().contains(&argmin) {
            return fail("denominator argmin is not feasible");
        }
        let value = problem.objective(m.criterion - 1).denominator_at(&argmin);
        if value != m.minimum.value()? {
            return fail("denominator minimum does not match its argmin");
        }
        if !value.is_positive() {
            return fail("reported denominator minimum is not positive");
        }
    }

    let cert32 = match &report.theorem32 {
        None => None,
        Some(t32) => {
            if t32.i == 0 || t32.i > problem.num_criteria() {
                return fail("theorem32 index out of range");
            }
            let split = t32
                .split
                .iter()
                .map(|s| {
                    let tag = match s.tag.as_str() {
                        "strict_pos" => SplitTag::StrictPos,
                        "zero_neg" => SplitTag::ZeroNeg,
                        other => return Err(format!("unknown split tag {other:?}")),
                    };
                    if s.j == 0 {
                        return Err("split index out of range".into());
                    }
                    Ok((s.j - 1, tag))
                })
                .collect::<Result<Vec<_>, String>>()?;
            let cert = PathologyCertificate {
                criterion: t32.i - 1,
                direction: direction_from_wire(&t32.v)?,
                split,
                theorem: TheoremTag::Thm32,
            };
            cert.verify(problem)
                .map_err(|e| format!("theorem32 certificate fails re-verification: {e}"))?;
            Some(cert)
        }
    };
    if let Some(t31) = &report.theorem31 {
        if t31.k == 0 || t31.k > problem.num_criteria() {
            return fail("theorem31 index out of range");
        }
        let cert = PathologyCertificate {
            criterion: t31.k - 1,
            direction: direction_from_wire(&t31.v)?,
            split: (0..problem.num_criteria())
                .filter(|&j| j != t31.k - 1)
                .map(|j| (j, SplitTag::StrictPos))
                .collect(),
            theorem: TheoremTag::Thm31,
        };
        cert.verify(problem)
            .map_err(|e| format!("theorem31 certificate fails re-verification: {e}"))?;
    }

    for p in &report.points {
        let point = Point::new(read_vec(&p.point)?);
        let actually_feasible = problem.polyhedron().contains(&point);
        if p.feasible != actually_feasible {
            return fail("reported feasibility flag is wrong");
        }
        if !p.feasible {
            continue;
        }
        let values: Vec<Rational> = problem
            .objectives()
            .iter()
            .map(|o| o.evaluate(&point).expect("validated"))
            .collect();
        if let Some(w) = &p.domination_witness {
            let witness = Point::new(read_vec(w)?);
            if !problem.polyhedron().contains(&witness) {
                return fail("domination witness is not feasible");
            }
            let mut strict = false;
            for (obj, r) in problem.objectives().iter().zip(&values) {
                let fy = obj.evaluate(&witness).expect("validated");
                if fy > *r {
                    return fail("domination witness worsens a criterion");
                }
                strict |= fy < *r;
            }
            if !strict {
                return fail("domination witness improves nothing strictly");
            }
        }
        if let Some(w) = &p.properness_witness {
            let v = read_vec(&w.v)?;
            if v.iter().all(Zero::is_zero) {
                return fail("property witness direction is zero");
            }
            let in_cone = problem
                .polyhedron()
                .constraint_matrix()
                .rows()
                .all(|row| !dot(row, &v).is_positive());
            if !in_cone {
                return fail("property witness is not a recession direction");
            }
            match (w.property.as_str(), w.i) {
                ("c", Some(i)) => {
                    if i == 0 || i > problem.num_criteria() {
                        return fail("property (c) index out of range");
                    }
                    let obj = problem.objective(i - 1);
                    if !dot(obj.b(), &v).is_zero() || dot(obj.a(), &v).is_positive() {
                        return fail("property (c) witness fails its inequalities");
                    }
                }
                ("d", _) => {
                    for obj in problem.objectives() {
                        let grad = obj.gradient(&point).expect("validated");
                        if !dot(&grad, &v).is_zero() {
                            return fail("property (d) witness fails gradient orthogonality");
                        }
                    }
                }
                _ => return fail("malformed property witness"),
            }
        }
        if let Some(b) = &p.benson_witness {
            let cert = cert32
                .as_ref()
                .ok_or("benson witness without a theorem32 certificate")?;
            let ybar = read_vec(b)?;
            let expected: Vec<Rational> = problem
                .objectives()
                .iter()
                .map(|obj| {
                    let bv = dot(obj.b(), cert.direction.as_slice());
                    if bv.is_zero() {
                        dot(obj.a(), cert.direction.as_slice()) / obj.denominator_at(&point)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            if ybar != expected {
                return fail("benson witness does not match the limit formula");
            }
            if !ybar[cert.criterion].is_negative() || ybar.iter().any(|y| y.is_positive()) {
                return fail("benson witness leaves the nonpositive orthant");
            }
        }
        if let Some(t) = &p.ratio_trace {
            let cert = cert32
                .as_ref()
                .ok_or("ratio trace without a theorem32 certificate")?;
            let direction = direction_from_wire(&t.direction)?;
            if direction != cert.direction {
                return fail("ratio trace direction differs from the certificate");
            }
            let grid = geometric_grid(t.grid_max_exp);
            let trace = ratio_probe(&validated, &point, &direction, &grid)
                .map_err(|e| format!("ratio trace does not reproduce: {e}"))?;
            if trace.loser + 1 != t.loser {
                return fail("ratio trace loser differs");
            }
            let recomputed = trace.suprema();
            if recomputed.len() != t.suprema.len() {
                return fail("ratio trace suprema differ in length");
            }
            for (got, want) in t.suprema.iter().zip(&recomputed) {
                if got.j != want.0 + 1 || got.ratio.value()? != want.1 {
                    return fail("ratio trace supremum differs");
                }
            }
        }
    }
    Ok(())
}
