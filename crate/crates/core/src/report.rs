//! Analytic-versus-numeric comparison reports and their CSV/JSON encodings.
//!
//! Level `k` of the closed form is paired with the `k`-th lowest numeric
//! eigenvalue. This pairing is a convention: when the two routes disagree
//! on ordering the mismatch shows up in `rel_diff` rather than being
//! hidden by re-matching.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::analytic::{analytic_samples, analytic_spectrum, wavefunction_upper_limit, Normalization};
use crate::error::{Error, Result};
use crate::grid::build_grid;
use crate::model::{require_valid, ManifoldKind, ModelParams, PseudoSign, QuantumNumbers};
use crate::oracle::{numeric_spectrum, numeric_spectrum_on, ode_residual};

pub const DEFAULT_THETA_MAX: f64 = 20.0;
pub const THETA_MAX_STRETCH: f64 = 1.5;
pub const REL_DIFF_GUARD: f64 = 1e-300;
pub const CSV_HEADER: &str = "manifold,n,l,level,E_analytic,E_numeric,rel_diff,residual";

pub fn generated_by() -> String {
    format!("curved-kepler {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One report row. `rel_diff` is present iff both energies are.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelRow {
    pub level: usize,
    pub e_analytic: Option<f64>,
    pub e_numeric: Option<f64>,
    pub rel_diff: Option<f64>,
    pub residual: Option<f64>,
}

impl LevelRow {
    pub fn new(level: usize, e_analytic: Option<f64>, e_numeric: Option<f64>, residual: Option<f64>) -> Self {
        let rel_diff = match (e_analytic, e_numeric) {
            (Some(a), Some(b)) => Some(relative_difference(a, b)),
            _ => None,
        };
        Self {
            level,
            e_analytic,
            e_numeric,
            rel_diff,
            residual,
        }
    }
}

pub fn relative_difference(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(REL_DIFF_GUARD)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridMeta {
    pub intervals: usize,
    pub theta_max: Option<f64>,
    /// Largest level shift when the pseudosphere cut moves to
    /// `1.5·theta_max` at the same step.
    pub theta_max_shift: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub manifold: ManifoldKind,
    pub params: ModelParams,
    pub n: i64,
    pub l: i64,
    pub grid: Option<GridMeta>,
    pub levels: Vec<LevelRow>,
    pub generated_by: String,
}

pub fn resolve_theta_max(kind: ManifoldKind, theta_max: Option<f64>) -> Option<f64> {
    match kind {
        ManifoldKind::Sphere => None,
        ManifoldKind::Pseudosphere(_) => Some(theta_max.unwrap_or(DEFAULT_THETA_MAX)),
    }
}

/// Closed-form levels only.
pub fn spectrum_report(kind: ManifoldKind, p: &ModelParams, n: i64, l: i64, k_max: u32) -> Result<SpectrumReport> {
    let levels = analytic_spectrum(kind, p, n, l, k_max)?
        .iter()
        .map(|lv| LevelRow::new(lv.qn.k as usize, Some(lv.energy), None, None))
        .collect();
    Ok(SpectrumReport {
        manifold: kind,
        params: *p,
        n,
        l,
        grid: None,
        levels,
        generated_by: generated_by(),
    })
}

fn theta_max_shift(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    intervals: usize,
    theta_max: f64,
    energies: &[f64],
) -> Result<f64> {
    let stretched = (intervals as f64 * THETA_MAX_STRETCH).round() as usize;
    let wide = numeric_spectrum(
        kind,
        p,
        n,
        l,
        energies.len(),
        stretched,
        Some(theta_max * stretched as f64 / intervals as f64),
    )?;
    Ok(wide
        .iter()
        .zip(energies)
        .map(|(w, e)| (w.energy - e).abs())
        .fold(0.0, f64::max))
}

fn grid_meta(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    intervals: usize,
    theta_max: Option<f64>,
    energies: &[f64],
) -> Result<GridMeta> {
    let shift = match (kind, theta_max) {
        (ManifoldKind::Pseudosphere(_), Some(t)) if !energies.is_empty() => {
            Some(theta_max_shift(kind, p, n, l, intervals, t, energies)?)
        }
        _ => None,
    };
    Ok(GridMeta {
        intervals,
        theta_max,
        theta_max_shift: shift,
    })
}

/// Numeric levels only; `residual` is that of each computed eigenpair.
pub fn oracle_report(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    count: usize,
    intervals: usize,
    theta_max: Option<f64>,
) -> Result<SpectrumReport> {
    let theta_max = resolve_theta_max(kind, theta_max);
    let numeric = numeric_spectrum(kind, p, n, l, count, intervals, theta_max)?;
    let energies: Vec<f64> = numeric.iter().map(|lv| lv.energy).collect();
    let grid = grid_meta(kind, p, n, l, intervals, theta_max, &energies)?;
    Ok(SpectrumReport {
        manifold: kind,
        params: *p,
        n,
        l,
        grid: Some(grid),
        levels: numeric
            .iter()
            .map(|lv| LevelRow::new(lv.index, None, Some(lv.energy), Some(lv.residual)))
            .collect(),
        generated_by: generated_by(),
    })
}

/// Residual of the closed-form pair `(E_k, f_k)` in the radial equation,
/// on the part of the grid where the closed-form function is defined.
pub fn analytic_pair_residual(
    kind: ManifoldKind,
    p: &ModelParams,
    qn: QuantumNumbers,
    energy: f64,
    intervals: usize,
    theta_max: Option<f64>,
) -> Result<f64> {
    let grid = build_grid(kind, intervals, theta_max)?.restrict_to(wavefunction_upper_limit(kind));
    let samples = analytic_samples(kind, p, qn, Arc::new(grid), Normalization::UnitNorm)?;
    let r = ode_residual(kind, p, qn.n, qn.l, energy, &samples.values, &samples.grid)?;
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Numerical("analytic residual overflowed".into()))
    }
}

/// Closed-form levels `k = 0..=k_max` next to the lowest `k_max + 1`
/// numeric levels, with the relative difference and the residual of each
/// closed-form pair.
pub fn compare_report(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    k_max: u32,
    intervals: usize,
    theta_max: Option<f64>,
) -> Result<SpectrumReport> {
    require_valid(p)?;
    let theta_max = resolve_theta_max(kind, theta_max);
    let analytic = analytic_spectrum(kind, p, n, l, k_max)?;
    let grid = Arc::new(build_grid(kind, intervals, theta_max)?);
    let numeric = numeric_spectrum_on(kind, p, n, l, analytic.len(), grid)?;
    let energies: Vec<f64> = numeric.iter().map(|lv| lv.energy).collect();
    let meta = grid_meta(kind, p, n, l, intervals, theta_max, &energies)?;
    let levels = analytic
        .iter()
        .zip(&numeric)
        .map(|(a, num)| {
            let residual = analytic_pair_residual(kind, p, a.qn, a.energy, intervals, theta_max).ok();
            LevelRow::new(a.qn.k as usize, Some(a.energy), Some(num.energy), residual)
        })
        .collect();
    Ok(SpectrumReport {
        manifold: kind,
        params: *p,
        n,
        l,
        grid: Some(meta),
        levels,
        generated_by: generated_by(),
    })
}

/// `printf("%.17g")`: 17 significant digits, trailing zeros dropped.
/// Re-parsing the text gives back the same `f64`.
pub fn format_g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..PRECISION).contains(&exp) {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(format_g17).unwrap_or_default()
}

fn to_csv(report: &SpectrumReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &report.levels {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            report.manifold.name(),
            report.n,
            report.l,
            row.level,
            opt_cell(row.e_analytic),
            opt_cell(row.e_numeric),
            opt_cell(row.rel_diff),
            opt_cell(row.residual),
        );
    }
    out
}

fn ser_g17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    if !x.is_finite() {
        return Err(S::Error::custom(format!("non-finite value {x} in report")));
    }
    let raw = RawValue::from_string(format_g17(*x)).map_err(S::Error::custom)?;
    raw.serialize(s)
}

fn ser_opt_g17<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_g17(v, s),
        None => s.serialize_none(),
    }
}

fn de_opt<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    Option::<f64>::deserialize(d)
}

#[derive(Serialize, Deserialize)]
struct JsonParams {
    #[serde(serialize_with = "ser_g17")]
    mass: f64,
    #[serde(serialize_with = "ser_g17")]
    inertia: f64,
    #[serde(serialize_with = "ser_g17")]
    radius: f64,
    #[serde(serialize_with = "ser_g17")]
    alpha: f64,
    #[serde(serialize_with = "ser_g17")]
    hbar: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonMode {
    n: i64,
    l: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonGrid {
    #[serde(rename = "N")]
    intervals: Option<usize>,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    theta_max: Option<f64>,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    theta_max_shift: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
struct JsonLevel {
    n: i64,
    l: i64,
    level: usize,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    E_analytic: Option<f64>,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    E_numeric: Option<f64>,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    rel_diff: Option<f64>,
    #[serde(serialize_with = "ser_opt_g17", deserialize_with = "de_opt")]
    residual: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct JsonReport {
    manifold: String,
    sign: Option<PseudoSign>,
    params: JsonParams,
    mode: JsonMode,
    grid: JsonGrid,
    levels: Vec<JsonLevel>,
    generated_by: String,
}

impl From<&SpectrumReport> for JsonReport {
    fn from(r: &SpectrumReport) -> Self {
        let p = r.params;
        JsonReport {
            manifold: r.manifold.name().to_string(),
            sign: r.manifold.sign(),
            params: JsonParams {
                mass: p.mass,
                inertia: p.inertia,
                radius: p.radius,
                alpha: p.alpha,
                hbar: p.hbar,
            },
            mode: JsonMode { n: r.n, l: r.l },
            grid: JsonGrid {
                intervals: r.grid.map(|g| g.intervals),
                theta_max: r.grid.and_then(|g| g.theta_max),
                theta_max_shift: r.grid.and_then(|g| g.theta_max_shift),
            },
            levels: r
                .levels
                .iter()
                .map(|row| JsonLevel {
                    n: r.n,
                    l: r.l,
                    level: row.level,
                    E_analytic: row.e_analytic,
                    E_numeric: row.e_numeric,
                    rel_diff: row.rel_diff,
                    residual: row.residual,
                })
                .collect(),
            generated_by: r.generated_by.clone(),
        }
    }
}

impl TryFrom<JsonReport> for SpectrumReport {
    type Error = Error;

    fn try_from(j: JsonReport) -> Result<Self> {
        let manifold = match (j.manifold.as_str(), j.sign) {
            ("sphere", None) => ManifoldKind::Sphere,
            ("pseudosphere", Some(sign)) => ManifoldKind::Pseudosphere(sign),
            (m, s) => {
                return Err(Error::Numerical(format!(
                    "inconsistent manifold/sign pair in report: {m} / {s:?}"
                )))
            }
        };
        let grid = j.grid.intervals.map(|intervals| GridMeta {
            intervals,
            theta_max: j.grid.theta_max,
            theta_max_shift: j.grid.theta_max_shift,
        });
        Ok(SpectrumReport {
            manifold,
            params: ModelParams {
                mass: j.params.mass,
                inertia: j.params.inertia,
                radius: j.params.radius,
                alpha: j.params.alpha,
                hbar: j.params.hbar,
            },
            n: j.mode.n,
            l: j.mode.l,
            grid,
            levels: j
                .levels
                .into_iter()
                .map(|lv| LevelRow {
                    level: lv.level,
                    e_analytic: lv.E_analytic,
                    e_numeric: lv.E_numeric,
                    rel_diff: lv.rel_diff,
                    residual: lv.residual,
                })
                .collect(),
            generated_by: j.generated_by,
        })
    }
}

impl SpectrumReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s =
            serde_json::to_string_pretty(&JsonReport::from(self)).map_err(|e| Error::Numerical(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: JsonReport = serde_json::from_str(text).map_err(|e| Error::Numerical(e.to_string()))?;
        j.try_into()
    }

    pub fn to_csv(&self) -> String {
        to_csv(self)
    }
}

/// Encodes a report. CSV rows end in LF; JSON is pretty-printed with a
/// trailing newline. Both use 17 significant digits.
pub fn serialize_report(report: &SpectrumReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => Ok(report.to_csv().into_bytes()),
        Format::Json => report.to_json().map(String::into_bytes),
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn empty_report() -> SpectrumReport {
        SpectrumReport {
            manifold: ManifoldKind::Sphere,
            params: ModelParams::natural(),
            n: 0,
            l: 0,
            grid: None,
            levels: vec![],
            generated_by: generated_by(),
        }
    }

    #[test]
    fn g17_matches_printf() {
        let cases = [
            (-1.0, "-1"),
            (-1.5, "-1.5"),
            (0.1, "0.10000000000000001"),
            (1e-5, "1.0000000000000001e-05"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (0.0001, "0.0001"),
            (2.0f64.sqrt(), "1.4142135623730951"),
            (1e-300, "1e-300"),
            (1.5e-300, "1.5000000000000001e-300"),
            (0.0, "0"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g17(x), s, "{x:e}");
        }
    }

    #[test]
    fn empty_levels() {
        let r = empty_report();
        assert_eq!(r.to_csv(), format!("{CSV_HEADER}\n"));
        assert!(r.to_json().unwrap().contains("\"levels\": []"));
    }

    #[test]
    fn analytic_only_row() {
        let r = spectrum_report(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 0).unwrap();
        assert_eq!(r.to_csv(), format!("{CSV_HEADER}\nsphere,0,0,0,-1,,,\n"));
    }

    #[test]
    fn json_key_order() {
        let r = spectrum_report(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 1).unwrap();
        let json = r.to_json().unwrap();
        let keys = [
            "\"manifold\"",
            "\"sign\"",
            "\"params\"",
            "\"mode\"",
            "\"grid\"",
            "\"levels\"",
            "\"generated_by\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.contains("\"E_analytic\": -1.5"));
        assert!(json.contains("\"E_numeric\": null"));
    }

    #[test]
    fn rel_diff_presence() {
        assert_eq!(LevelRow::new(0, Some(1.0), None, None).rel_diff, None);
        assert_eq!(LevelRow::new(0, Some(2.0), Some(1.0), None).rel_diff, Some(0.5));
        assert_eq!(LevelRow::new(0, Some(0.0), Some(0.0), None).rel_diff, Some(0.0));
    }

    #[test]
    fn compare_rows_aligned() {
        let p = ModelParams::natural();
        let r = compare_report(ManifoldKind::Sphere, &p, 0, 0, 2, 400, None).unwrap();
        assert_eq!(r.levels.len(), 3);
        for (k, row) in r.levels.iter().enumerate() {
            assert_eq!(row.level, k);
            assert!(row.rel_diff.unwrap().is_finite());
            assert!(row.residual.unwrap().is_finite());
        }
        let single = compare_report(ManifoldKind::Sphere, &p, 0, 0, 0, 400, None).unwrap();
        assert_eq!(single.levels.len(), 1);
    }

    #[test]
    fn pseudosphere_carries_shift() {
        let kind = ManifoldKind::Pseudosphere(PseudoSign::Plus);
        let r = compare_report(kind, &ModelParams::natural(), 0, 0, 1, 400, Some(20.0)).unwrap();
        let shift = r.grid.unwrap().theta_max_shift.unwrap();
        assert!(shift.is_finite() && shift >= 0.0);
        assert!(r.to_json().unwrap().contains("\"theta_max_shift\""));
    }

    fn opt_f64() -> impl Strategy<Value = Option<f64>> {
        prop::option::of(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO)
    }

    proptest! {
        #[test]
        fn g17_reparses_exactly(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL) {
            let s = format_g17(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }

        #[test]
        fn json_round_trip(
            rows in prop::collection::vec((0usize..50, opt_f64(), opt_f64(), opt_f64(), opt_f64()), 0..6),
            n in -5i64..5, l in -5i64..5, pseudo in any::<bool>(), with_grid in any::<bool>(),
            mass in 0.01f64..100.0,
        ) {
            let manifold = if pseudo { ManifoldKind::Pseudosphere(PseudoSign::Minus) } else { ManifoldKind::Sphere };
            let report = SpectrumReport {
                manifold,
                params: ModelParams { mass, ..ModelParams::natural() },
                n, l,
                grid: with_grid.then_some(GridMeta {
                    intervals: 800,
                    theta_max: pseudo.then_some(17.5),
                    theta_max_shift: pseudo.then_some(3.25e-9),
                }),
                levels: rows.into_iter().map(|(level, e_analytic, e_numeric, rel_diff, residual)| LevelRow {
                    level, e_analytic, e_numeric, rel_diff, residual,
                }).collect(),
                generated_by: generated_by(),
            };
            let text = report.to_json().unwrap();
            prop_assert_eq!(SpectrumReport::from_json(&text).unwrap(), report);
        }
    }
}
