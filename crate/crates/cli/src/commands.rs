//! Subcommand implementations, decoupled from argument parsing so they can
//! be exercised directly by tests.
//!
//! Exit codes: 0 all-proper / success, 1 validation failure, 2 pathological,
//! 3 inconclusive verdict present, 64 unreadable or malformed input,
//! 65 infeasible point, 66 direction outside the recession cone.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lfvo_core::analysis::{
    classify, generate_pathological, geometric_grid, is_efficient, necessary_condition_scan,
    ratio_probe, regularity_conditions, AnalysisError, EfficiencyVerdict, PropernessVerdict,
    PropertyWitness,
};
use lfvo_core::cone::Direction;
use lfvo_core::linalg::add_scaled;
use lfvo_core::model::{validate, Point, ValidatedProblem};
use lfvo_core::Rational;
use serde::Serialize;

use crate::fixtures;
use crate::problem_file::ProblemFile;
use crate::rational_text::{approx_f64, format_rational, format_vector, parse_vector};
use crate::report::{self, PropertyWitnessJson, RegularityJson, ReportRat, SCHEMA_VERSION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_PATHOLOGICAL: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_PARSE: u8 = 64;
pub const EXIT_INFEASIBLE_POINT: u8 = 65;
pub const EXIT_DIRECTION: u8 = 66;

pub struct CmdOutput {
    pub stdout: String,
    pub code: u8,
}

pub struct CmdFailure {
    pub message: String,
    pub code: u8,
}

pub type CmdResult = Result<CmdOutput, CmdFailure>;

fn failure(code: u8, message: impl Into<String>) -> CmdFailure {
    CmdFailure { message: message.into(), code }
}

fn load_file(path: &Path) -> Result<ProblemFile, CmdFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| failure(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::from_json(&text).map_err(|e| failure(EXIT_PARSE, e.to_string()))
}

fn load_validated(path: &Path) -> Result<(ProblemFile, ValidatedProblem), CmdFailure> {
    let file = load_file(path)?;
    let problem = file
        .to_problem()
        .map_err(|e| failure(EXIT_PARSE, e.to_string()))?;
    let validated = validate(problem)
        .map_err(|e| failure(EXIT_VALIDATION, format!("validation failed: {e}")))?;
    Ok((file, validated))
}

fn parse_points_flag(flag: &str) -> Result<Vec<Point>, CmdFailure> {
    flag.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            parse_vector(s)
                .map(Point::new)
                .map_err(|e| failure(EXIT_PARSE, e))
        })
        .collect()
}

fn parse_point_arg(
    text: &str,
    problem: &ValidatedProblem,
    what: &str,
) -> Result<Point, CmdFailure> {
    let coords = parse_vector(text).map_err(|e| failure(EXIT_PARSE, e))?;
    if coords.len() != problem.problem().dim() {
        return Err(failure(
            EXIT_PARSE,
            format!(
                "{what} has {} components, problem dimension is {}",
                coords.len(),
                problem.problem().dim()
            ),
        ));
    }
    Ok(Point::new(coords))
}

pub fn cmd_classify(
    path: &Path,
    points_flag: Option<&str>,
    grid_max_exp: u32,
    json: bool,
) -> CmdResult {
    let (file, validated) = load_validated(path)?;
    let points = match points_flag {
        Some(flag) => parse_points_flag(flag)?,
        None => file.sample_points(),
    };
    let core_report = classify(&validated, &points, grid_max_exp).map_err(|e| match e {
        AnalysisError::TooFewCriteria { .. } => {
            failure(EXIT_VALIDATION, format!("cannot classify: {e}"))
        }
        other => failure(EXIT_VALIDATION, other.to_string()),
    })?;
    let wire = report::build_report(&file.name, &validated, &core_report);
    let stdout = if json {
        report::to_json_text(&wire)
    } else {
        report::to_text(&wire)
    };
    Ok(CmdOutput { stdout, code: report::exit_code(&core_report) })
}

#[derive(Serialize)]
struct CheckPointJson {
    schema_version: u32,
    problem: String,
    point: Vec<ReportRat>,
    efficient: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    domination_witness: Option<Vec<ReportRat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    properness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    properness_witness: Option<PropertyWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity: Option<RegularityJson>,
}

pub fn cmd_check_point(path: &Path, point_text: &str, json: bool) -> CmdResult {
    let (file, validated) = load_validated(path)?;
    let point = parse_point_arg(point_text, &validated, "point")?;
    if !validated.problem().polyhedron().contains(&point) {
        return Err(failure(EXIT_INFEASIBLE_POINT, "point is not feasible"));
    }
    let efficiency = is_efficient(&validated, &point).expect("feasibility checked");
    let mut payload = CheckPointJson {
        schema_version: SCHEMA_VERSION,
        problem: file.name.clone(),
        point: point.coords.iter().map(|r| ReportRat(format_rational(r))).collect(),
        efficient: matches!(efficiency, EfficiencyVerdict::Efficient),
        domination_witness: None,
        properness: None,
        properness_witness: None,
        regularity: None,
    };
    let mut code = EXIT_OK;
    match efficiency {
        EfficiencyVerdict::Dominated { witness } => {
            payload.domination_witness = Some(
                witness.coords.iter().map(|r| ReportRat(format_rational(r))).collect(),
            );
        }
        EfficiencyVerdict::Efficient => {
            let scan = necessary_condition_scan(&validated, &point).expect("feasibility checked");
            match &scan {
                PropernessVerdict::Proper(_) => payload.properness = Some("proper".into()),
                PropernessVerdict::Inconclusive(w) => {
                    code = EXIT_INCONCLUSIVE;
                    payload.properness = Some("inconclusive".into());
                    payload.properness_witness = Some(match w {
                        PropertyWitness::PropertyC { criterion, direction } => {
                            PropertyWitnessJson {
                                property: "c".into(),
                                i: Some(criterion + 1),
                                v: direction
                                    .as_slice()
                                    .iter()
                                    .map(|r| ReportRat(format_rational(r)))
                                    .collect(),
                            }
                        }
                        PropertyWitness::PropertyD { direction } => PropertyWitnessJson {
                            property: "d".into(),
                            i: None,
                            v: direction
                                .as_slice()
                                .iter()
                                .map(|r| ReportRat(format_rational(r)))
                                .collect(),
                        },
                    });
                }
            }
            let flags = regularity_conditions(&validated, &point).expect("m >= 2 and feasible");
            payload.regularity = Some(RegularityJson { c1: flags.c1, c2: flags.c2, c3: flags.c3 });
        }
    }
    let stdout = if json {
        let mut text = serde_json::to_string_pretty(&payload).expect("payload serializes");
        text.push('\n');
        text
    } else {
        let mut out = String::new();
        writeln!(out, "problem: {}", payload.problem).unwrap();
        writeln!(out, "point: {}", format_vector(&point.coords)).unwrap();
        if payload.efficient {
            writeln!(out, "efficient: yes").unwrap();
        } else {
            writeln!(
                out,
                "efficient: no (dominated by {})",
                payload
                    .domination_witness
                    .as_ref()
                    .map(|w| {
                        let parts: Vec<&str> = w.iter().map(|r| r.0.as_str()).collect();
                        format!("({})", parts.join(", "))
                    })
                    .unwrap_or_default()
            )
            .unwrap();
        }
        if let Some(p) = &payload.properness {
            writeln!(out, "properness: {p}").unwrap();
            if let Some(w) = &payload.properness_witness {
                let parts: Vec<&str> = w.v.iter().map(|r| r.0.as_str()).collect();
                match (w.property.as_str(), w.i) {
                    ("c", Some(i)) => writeln!(
                        out,
                        "  witness: property (c) with i={i}, v=({})",
                        parts.join(", ")
                    )
                    .unwrap(),
                    _ => writeln!(out, "  witness: property (d), v=({})", parts.join(", "))
                        .unwrap(),
                }
            }
        }
        if let Some(r) = &payload.regularity {
            writeln!(out, "regularity: c1={} c2={} c3={}", r.c1, r.c2, r.c3).unwrap();
        }
        out
    };
    Ok(CmdOutput { stdout, code })
}

fn parse_grid_flag(flag: &str) -> Result<Vec<Rational>, CmdFailure> {
    let grid: Vec<Rational> = flag
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| crate::rational_text::parse_rational(s).map_err(|e| failure(EXIT_PARSE, e)))
        .collect::<Result<_, _>>()?;
    let ok = !grid.is_empty()
        && grid.windows(2).all(|w| w[0] < w[1])
        && grid.first().is_some_and(|t| t > &Rational::from_integer(0.into()));
    if !ok {
        return Err(failure(
            EXIT_PARSE,
            "--ts must be a strictly increasing list of positive rationals",
        ));
    }
    Ok(grid)
}

pub fn cmd_probe_ray(
    path: &Path,
    point_text: &str,
    direction_text: &str,
    grid_max_exp: u32,
    ts_flag: Option<&str>,
) -> CmdResult {
    let (_, validated) = load_validated(path)?;
    let point = parse_point_arg(point_text, &validated, "point")?;
    if !validated.problem().polyhedron().contains(&point) {
        return Err(failure(EXIT_INFEASIBLE_POINT, "point is not feasible"));
    }
    let dir_coords = parse_point_arg(direction_text, &validated, "direction")?.coords;
    let direction = Direction::normalized(dir_coords)
        .ok_or_else(|| failure(EXIT_DIRECTION, "direction must be nonzero"))?;
    let grid = match ts_flag {
        Some(flag) => parse_grid_flag(flag)?,
        None => geometric_grid(grid_max_exp),
    };
    match ratio_probe(&validated, &point, &direction, &grid) {
        Ok(trace) => {
            let m = validated.problem().num_criteria();
            let loser = trace.loser;
            let mut out = String::new();
            let mut header = vec![format!("t"), format!("drop_{}", loser + 1), "drop_approx".into()];
            for j in (0..m).filter(|&j| j != loser) {
                header.push(format!("gain_{}", j + 1));
                header.push(format!("gain_{}_approx", j + 1));
                header.push(format!("ratio_{}", j + 1));
                header.push(format!("ratio_{}_approx", j + 1));
            }
            writeln!(out, "{}", header.join(",")).unwrap();
            for record in &trace.records {
                let mut row = vec![
                    format_rational(&record.t),
                    format_rational(&record.drop),
                    format!("{}", approx_f64(&record.drop)),
                ];
                for (j, gain) in &record.gains {
                    row.push(format_rational(gain));
                    row.push(format!("{}", approx_f64(gain)));
                    match record.ratios.iter().find(|(k, _)| k == j) {
                        Some((_, ratio)) => {
                            row.push(format_rational(ratio));
                            row.push(format!("{}", approx_f64(ratio)));
                        }
                        None => {
                            row.push(String::new());
                            row.push(String::new());
                        }
                    }
                }
                writeln!(out, "{}", row.join(",")).unwrap();
            }
            Ok(CmdOutput { stdout: out, code: EXIT_OK })
        }
        Err(AnalysisError::NoDecreasingCriterion) => {
            // No loser to take ratios against: emit per-criterion deltas.
            let p = validated.problem();
            let mut out = String::new();
            writeln!(
                out,
                "# no criterion strictly decreases along this ray; emitting per-criterion deltas"
            )
            .unwrap();
            let mut header = vec!["t".to_string()];
            for j in 0..p.num_criteria() {
                header.push(format!("delta_{}", j + 1));
                header.push(format!("delta_{}_approx", j + 1));
            }
            writeln!(out, "{}", header.join(",")).unwrap();
            let base: Vec<Rational> = p
                .objectives()
                .iter()
                .map(|o| o.evaluate(&point).expect("validated"))
                .collect();
            for t in &grid {
                let y = Point::new(add_scaled(&point.coords, t, direction.as_slice()));
                let mut row = vec![format_rational(t)];
                for (obj, b) in p.objectives().iter().zip(&base) {
                    let delta = obj.evaluate(&y).expect("validated") - b;
                    row.push(format_rational(&delta));
                    row.push(format!("{}", approx_f64(&delta)));
                }
                writeln!(out, "{}", row.join(",")).unwrap();
            }
            Ok(CmdOutput { stdout: out, code: EXIT_OK })
        }
        Err(AnalysisError::DirectionNotInCone) => Err(failure(
            EXIT_DIRECTION,
            "direction is not in the recession cone of the feasible set",
        )),
        Err(AnalysisError::InvalidGrid) => Err(failure(
            EXIT_PARSE,
            "grid must be strictly increasing and positive",
        )),
        Err(other) => Err(failure(EXIT_VALIDATION, other.to_string())),
    }
}

pub fn cmd_generate(n: usize, m: usize, seed: u64, out_path: &Path) -> CmdResult {
    if n < 2 || m < 2 {
        return Err(failure(EXIT_PARSE, "generate requires n >= 2 and m >= 2"));
    }
    let problem = generate_pathological(n, m, seed);
    let mut points = vec![vec![Rational::from_integer(0.into()); n]];
    points.push(vec![Rational::from_integer(1.into()); n]);
    let file = ProblemFile::from_problem(
        &format!("pathological-n{n}-m{m}-seed{seed}"),
        &problem,
        points,
        Some(format!(
            "Seeded pathological instance on the nonnegative orthant (n={n}, m={m}, \
             seed={seed}): criterion 1 decreases along v=(1,..,1) while every other \
             criterion either gains denominator or is affine and non-increasing, so \
             every efficient solution is improperly efficient."
        )),
    );
    fs::write(out_path, file.to_json()).map_err(|e| {
        failure(EXIT_VALIDATION, format!("cannot write {}: {e}", out_path.display()))
    })?;
    Ok(CmdOutput {
        stdout: format!("wrote {}\n", out_path.display()),
        code: EXIT_OK,
    })
}

pub fn cmd_examples(name: Option<&str>, m: Option<usize>, out: Option<&Path>) -> CmdResult {
    match name {
        None => {
            let mut stdout = String::new();
            for n in fixtures::NAMES {
                writeln!(stdout, "{n}").unwrap();
            }
            Ok(CmdOutput { stdout, code: EXIT_OK })
        }
        Some(name) => {
            let file = fixtures::by_name(name, m).ok_or_else(|| {
                failure(
                    EXIT_PARSE,
                    format!(
                        "unknown example {name:?} (hpy-family requires 2 <= m <= 8); known: {}",
                        fixtures::NAMES.join(", ")
                    ),
                )
            })?;
            let text = file.to_json();
            match out {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| {
                        failure(EXIT_VALIDATION, format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(CmdOutput {
                        stdout: format!("wrote {}\n", path.display()),
                        code: EXIT_OK,
                    })
                }
                None => Ok(CmdOutput { stdout: text, code: EXIT_OK }),
            }
        }
    }
}
