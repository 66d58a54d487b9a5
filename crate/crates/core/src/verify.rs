//! The invariant suite: every construction and closed form, run as named
//! checks with expected and actual values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analyze::{
    cantor_remainder, centroid_parts, centroid_residual, centroid_solve, curve_area_exact, curve_c_generate,
    curve_c_symmetry_check, detect_loops, dimension_closed, hausdorff_dimension, height, height_closed,
    length_by_steps, length_exact, middle_thirds, remove_loops, revolution_volume, simply_connected_check,
    tri_area_closed, tri_area_exact, Region,
};
use crate::construct::{generate_segments, rewrite_lsystem, turtle_run_with, z_at, z_stream, Polyline, TurtleRules};
use crate::lattice::{ratio, QOmega, SqrtThreeScalar};

pub const SCHEMA_VERSION: &str = "kochawave-verify/1";

pub const CHECK_NAMES: [&str; 14] = [
    "equivalence",
    "rescaling",
    "length",
    "triangle_area",
    "curve_area",
    "height",
    "centroid",
    "volume",
    "dimension",
    "cantor",
    "loops",
    "curve_c",
    "symmetry",
    "connectivity",
];

/// Deliberate defects for checking that the suite notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The turtle turns by 60° instead of 120° on `+`.
    TurtleRule,
    /// The z stream drops its last increment.
    ZStep,
}

impl FromStr for Fault {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s {
            "turtle-rule" => Ok(Fault::TurtleRule),
            "z-step" => Ok(Fault::ZStep),
            _ => Err(VerifyError::UnknownFault(s.into())),
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fault::TurtleRule => "turtle-rule",
            Fault::ZStep => "z-step",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown fault `{0}` (known: turtle-rule, z-step)")]
    UnknownFault(String),
    #[error("tolerance must be in (0, 1e-6], got {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n: u32,
    /// Tolerance for the float checks.
    pub tol: f64,
    /// Run only these checks; all when empty.
    pub only: Vec<String>,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { n: 5, tol: 1e-10, only: Vec::new(), fault: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn res(name: &str, expected: impl fmt::Display, actual: impl fmt::Display, passed: bool) -> CheckResult {
    CheckResult { name: name.into(), passed, expected: expected.to_string(), actual: actual.to_string() }
}

fn same<T: fmt::Display + PartialEq>(name: &str, expected: T, actual: T) -> CheckResult {
    let ok = expected == actual;
    res(name, expected, actual, ok)
}

fn failed(name: &str, expected: impl fmt::Display, e: impl fmt::Display) -> CheckResult {
    res(name, expected, format!("error: {e}"), false)
}

fn numeric(n: u32, fault: Option<Fault>) -> Polyline {
    let count = 4usize.pow(n) + 1;
    let mut v: Vec<_> = z_stream(count).collect();
    if fault == Some(Fault::ZStep) {
        if let [.., a, b] = v.as_mut_slice() {
            *b = *a;
        }
    }
    Polyline::new(n, v)
}

fn equivalence(cfg: &VerifyConfig) -> CheckResult {
    let rules = match cfg.fault {
        Some(Fault::TurtleRule) => TurtleRules { plus: (0, 2), ..TurtleRules::default() },
        _ => TurtleRules::default(),
    };
    let expected = "segments == numeric == lsystem for every m ≤ n";
    for m in 0..=cfg.n {
        let seg = match generate_segments(m) {
            Ok(p) => p,
            Err(e) => return failed("equivalence", expected, e),
        };
        let num = numeric(m, cfg.fault);
        let lsys = turtle_run_with(&rewrite_lsystem(m), rules);
        if num != seg {
            return res("equivalence", expected, format!("numeric differs from segments at m={m}"), false);
        }
        match lsys {
            Ok(l) if l == seg => {}
            Ok(_) => return res("equivalence", expected, format!("lsystem differs from segments at m={m}"), false),
            Err(e) => return failed("equivalence", expected, format!("lsystem at m={m}: {e}")),
        }
    }
    res("equivalence", expected, format!("identical for m = 0..={}", cfg.n), true)
}

fn rescaling(cfg: &VerifyConfig) -> CheckResult {
    let limit = 4u64.pow(cfg.n.min(6));
    let bad = (0..=limit).find(|&k| z_at(4 * k) != z_at(k) * 3);
    match bad {
        None => res("rescaling", "z(4k) = 3z(k)", format!("holds for k ≤ {limit}"), true),
        Some(k) => res("rescaling", "z(4k) = 3z(k)", format!("fails at k = {k}"), false),
    }
}

fn each<T: PartialEq + fmt::Display>(
    name: &str,
    n: u32,
    rule: &str,
    f: impl Fn(u32) -> Result<(T, T), String>,
) -> CheckResult {
    for m in 0..=n {
        match f(m) {
            Ok((want, got)) if want == got => {}
            Ok((want, got)) => return res(name, format!("{rule}; m={m}: {want}"), got, false),
            Err(e) => return failed(name, rule, e),
        }
    }
    let (want, got) = f(n).expect("checked above");
    res(name, format!("{rule}; m={n}: {want}"), got, true)
}

fn run_check(name: &str, cfg: &VerifyConfig) -> CheckResult {
    let n = cfg.n;
    match name {
        "equivalence" => equivalence(cfg),
        "rescaling" => rescaling(cfg),
        "length" => each(name, n, "(1+1/√3)^m = sum over steps", |m| {
            let closed = (&SqrtThreeScalar::from_int(1) + &SqrtThreeScalar::inv_sqrt3()).pow(m);
            let steps = length_by_steps(m);
            if length_exact(m) != closed {
                return Err(format!("binomial sum differs at m={m}"));
            }
            Ok((closed, steps))
        }),
        "triangle_area" => each(name, n, "(√3/4)(2/3)^m", |m| {
            Ok((tri_area_closed(m), tri_area_exact(m).map_err(|e| e.to_string())?))
        }),
        "curve_area" => each(name, n, "3A_m + T_m = √3/4", |m| {
            let lhs = &(&curve_area_exact(m) + &curve_area_exact(m)) + &curve_area_exact(m);
            Ok((SqrtThreeScalar::from_ratios(0, 1, 1, 4), &lhs + &tri_area_closed(m)))
        }),
        "height" => each(name, n, "0, 1/(2√3), then 2/(3√3)", |m| Ok((height_closed(m), height(m).height))),
        "centroid" => match centroid_solve() {
            Ok(m) => {
                let want = QOmega::from_ratios(59, 111, 17, 111);
                let zero = centroid_residual(&centroid_parts(), &m).is_zero();
                res(
                    name,
                    format!("{want}, residual 0"),
                    format!("{m}, residual {}", if zero { "0" } else { "≠ 0" }),
                    m == want && zero,
                )
            }
            Err(e) => failed(name, "(59+17ω)/111", e),
        },
        "volume" => match revolution_volume() {
            Ok(v) => same(name, ratio(17, 444), v),
            Err(e) => failed(name, "17/444", e),
        },
        "dimension" => {
            let want = dimension_closed();
            match hausdorff_dimension(cfg.tol) {
                Ok(d) => res(
                    name,
                    format!("{want:.15} ± {:e}", cfg.tol),
                    format!("{d:.15}"),
                    (d - want).abs() <= 2.0 * cfg.tol,
                ),
                Err(e) => failed(name, want, e),
            }
        }
        "cantor" => each(name, n, "middle-thirds Cantor iterate", |m| {
            let (a, b) = (cantor_remainder(m), middle_thirds(m));
            let show =
                |c: &crate::analyze::CantorIntervals| format!("{} intervals over {}", c.intervals.len(), c.denominator);
            Ok((show(&b), if a == b { show(&a) } else { format!("{:?}", a.intervals) }))
        }),
        "loops" => {
            let want = [0usize, 0, 1, 4, 13, 40, 121];
            each(name, n.min(6), "loop count 0,0,1,4,13,40,121; loop-free remainder", |m| {
                let p = generate_segments(m).map_err(|e| e.to_string())?;
                let loops = detect_loops(&p).map_err(|e| e.to_string())?;
                if loops.iter().any(|l| l.displacement() != crate::lattice::EisensteinInt::ZERO) {
                    return Err(format!("loop with net displacement at m={m}"));
                }
                let mut r = remove_loops(&p).vertices;
                let len = r.len();
                r.sort();
                r.dedup();
                if r.len() != len {
                    return Err(format!("repeated vertex after loop removal at m={m}"));
                }
                Ok((want[m as usize], loops.len()))
            })
        }
        "curve_c" => each(name, n, "two-rule curve = loop-removed iterate, bounds hold", |m| {
            let c = curve_c_generate(m).map_err(|e| e.to_string())?;
            let r = remove_loops(&generate_segments(m).map_err(|e| e.to_string())?);
            Ok((
                "equal, within bounds".to_string(),
                match (c.polyline == r, c.bounds_hold()) {
                    (true, true) => "equal, within bounds".to_string(),
                    (false, _) => format!("differs at m={m}"),
                    (true, false) => format!("length {} outside bounds at m={m}", c.length),
                },
            ))
        }),
        "symmetry" => {
            let d: Result<Vec<f64>, _> = (3..=5).map(|m| curve_c_symmetry_check(m).map(|r| r.distance)).collect();
            match d {
                Ok(d) => {
                    let ok = d[0] > d[1] && d[1] > d[2];
                    res(name, "strictly decreasing for n = 3, 4, 5", format!("{:.6} {:.6} {:.6}", d[0], d[1], d[2]), ok)
                }
                Err(e) => failed(name, "decreasing", e),
            }
        }
        "connectivity" => {
            // the closed segment iterate is hole-free only up to n = 2; its
            // loops are filled in by the triangle construction
            let (mt, ms) = (n.clamp(1, 5), n.clamp(1, 2));
            let tri = simply_connected_check(mt, Region::Triangles);
            let seg = simply_connected_check(ms, Region::Segments);
            let holes = simply_connected_check(mt, Region::Segments);
            match (tri, seg, holes) {
                (Ok(t), Ok(s), Ok(h)) => res(
                    name,
                    format!("triangle union simply connected at n={mt}; closed curve at n={ms}"),
                    format!(
                        "triangles {}, curve {}; closed curve at n={mt} has {} holes",
                        t.simply_connected,
                        s.simply_connected,
                        h.complement_components - 1
                    ),
                    t.simply_connected && s.simply_connected,
                ),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => failed(name, "simply connected", e),
            }
        }
        _ => res(name, "a known check", "unknown", false),
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    if !(cfg.tol > 0.0 && cfg.tol <= 1e-6) {
        return Err(VerifyError::BadTolerance(cfg.tol));
    }
    for o in &cfg.only {
        if !CHECK_NAMES.contains(&o.as_str()) {
            return Err(VerifyError::UnknownCheck(o.clone()));
        }
    }
    let names: Vec<&str> =
        CHECK_NAMES.iter().copied().filter(|n| cfg.only.is_empty() || cfg.only.iter().any(|o| o == n)).collect();
    let checks: Vec<CheckResult> = names.iter().map(|n| run_check(n, cfg)).collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { schema: SCHEMA_VERSION.into(), config: cfg.clone(), checks, passed })
}
