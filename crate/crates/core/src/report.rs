//! Per-degree analysis pipeline and the JSON report schema shared by the
//! command-line tool and the acceptance runs.

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::measures::{
    cauchy_residual, growth_exponent, ks_between, ks_distance, root_measure, ArcsineLaw,
    ProbeSettings, RootMeasure,
};
use crate::operator::{Degeneracy, DiffOperator, OperatorSpec};
use crate::poly::{parse_decimal, Poly};
use crate::roots::{find_roots_with, format_float, RootConfig, RootSet};

/// Significant digits used when floats are written into reports.
pub const REPORT_DIGITS: usize = 12;

#[derive(Debug, Clone)]
pub struct Settings {
    pub roots: RootConfig,
    pub probes: Vec<Complex>,
    pub law: Option<ArcsineLaw>,
    pub allow_degenerate: bool,
    pub realness_scale: Float,
}

impl Settings {
    pub fn new(target_digits: u32) -> Self {
        Settings {
            roots: RootConfig::new(target_digits),
            probes: vec![Complex::with_val(128, (2, 0))],
            law: None,
            allow_degenerate: false,
            realness_scale: Float::with_val(64, 1),
        }
    }

    pub fn probe_settings(&self) -> ProbeSettings {
        ProbeSettings {
            target_digits: self.roots.target_digits,
            scale: self.realness_scale.clone(),
        }
    }
}

/// Everything computed for one degree.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub n: usize,
    pub poly: Poly,
    pub free_indices: Vec<usize>,
    /// Roots after the realness pass.
    pub roots: RootSet,
    pub ks: Option<Float>,
    pub max_radius: Float,
    /// Residual at `x = 2`, when the leading coefficient has full degree.
    pub residual_x2: Option<Float>,
    pub probes: Vec<ProbeResult>,
}

#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub probe: Complex,
    pub residual: Result<Float>,
}

/// Eigenpolynomial, certified roots and diagnostics for degree `n`.
pub fn analyze(op: &DiffOperator, n: usize, settings: &Settings) -> Result<Analysis> {
    let mode = if settings.allow_degenerate {
        Degeneracy::ZeroFree
    } else {
        Degeneracy::Reject
    };
    let eigen = op.eigenpolynomial_with(n, mode)?;
    let raw = find_roots_with(&eigen.poly, &settings.roots)?;
    let roots = raw.realness(&settings.realness_scale);
    let max_radius = roots.max_radius();
    let ks = match &settings.law {
        Some(law) if roots.all_real() => Some(ks_distance(&root_measure(&roots)?, law)?),
        _ => None,
    };
    let probe_settings = settings.probe_settings();
    let two = Complex::with_val(128, (2, 0));
    let residual_x2 = cauchy_residual(op, &eigen.poly, &two, &probe_settings).ok();
    let probes = settings
        .probes
        .iter()
        .map(|x| ProbeResult {
            probe: x.clone(),
            residual: cauchy_residual(op, &eigen.poly, x, &probe_settings),
        })
        .collect();
    Ok(Analysis {
        n,
        poly: eigen.poly,
        free_indices: eigen.free_indices,
        roots,
        ks,
        max_radius,
        residual_x2,
        probes,
    })
}

fn fmt(x: &Float) -> String {
    format_float(x, REPORT_DIGITS)
}

/// `re+imi` / `re-imi` form used for probe points.
pub fn format_complex(z: &Complex) -> String {
    let re = fmt(z.real());
    let im = z.imag();
    if im.is_sign_negative() && !im.is_zero() {
        format!("{re}-{}i", fmt(&Float::with_val(im.prec(), -im)))
    } else {
        format!("{re}+{}i", fmt(im))
    }
}

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i` forms; parts may be
/// integers, fractions or decimals.
pub fn parse_complex(s: &str, prec: u32) -> Result<Complex, ParseError> {
    let bad = || ParseError::BadComplex(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        let re = parse_decimal(&t).map_err(|_| bad())?;
        return Ok(Complex::with_val(prec, (&re, 0)));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im_part = match im_part {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = parse_decimal(re_part).map_err(|_| bad())?;
    let im = parse_decimal(im_part).map_err(|_| bad())?;
    Ok(Complex::with_val(prec, (&re, &im)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub probe: String,
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub ks: Option<String>,
    pub max_radius: String,
    pub residual_x2: Option<String>,
    pub all_real: bool,
    pub min_certified_digits: u32,
    pub precision_bits: u32,
    pub residual_bound: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub free_indices: Vec<usize>,
    pub probes: Vec<ProbeRow>,
}

impl From<&Analysis> for ReportRow {
    fn from(a: &Analysis) -> Self {
        ReportRow {
            n: a.n,
            ks: a.ks.as_ref().map(fmt),
            max_radius: fmt(&a.max_radius),
            residual_x2: a.residual_x2.as_ref().map(fmt),
            all_real: a.roots.all_real(),
            min_certified_digits: a
                .roots
                .certified_digits()
                .iter()
                .copied()
                .min()
                .unwrap_or(0),
            precision_bits: a.roots.precision(),
            residual_bound: fmt(a.roots.residual_bound()),
            free_indices: a.free_indices.clone(),
            probes: a
                .probes
                .iter()
                .map(|p| ProbeRow {
                    probe: format_complex(&p.probe),
                    residual: p.residual.as_ref().ok().map(fmt),
                    error: p.residual.as_ref().err().map(Error::to_string),
                })
                .collect(),
        }
    }
}

/// Zero-distribution report: `{"op", "law", "rows", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport<C> {
    pub config: C,
    pub op: OperatorSpec,
    pub law: Option<ArcsineLaw>,
    pub rows: Vec<ReportRow>,
    pub growth_exponent: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub max_radius: String,
    pub scale: String,
    pub all_real: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessiveKs {
    pub from: usize,
    pub to: usize,
    pub ks: Option<String>,
}

/// Rescaled-measure convergence report for a sweep over degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport<C> {
    pub config: C,
    pub op: OperatorSpec,
    pub rescaling: String,
    pub rows: Vec<SweepRow>,
    pub successive_ks: Vec<SuccessiveKs>,
    pub growth_exponent: String,
}

/// Rescaled measure of one degree: atoms divided by the largest root modulus.
pub fn rescaled_measure(a: &Analysis) -> Result<RootMeasure> {
    root_measure(&a.roots)?.rescale(&a.max_radius)
}

/// Growth exponent of `max_radius` over analyses sorted by `n`.
pub fn radius_exponent(analyses: &[Analysis]) -> Result<Float> {
    let series: Vec<(usize, Float)> = analyses
        .iter()
        .map(|a| (a.n, a.max_radius.clone()))
        .collect();
    growth_exponent(&series)
}

/// Two-sample KS between consecutive rescaled measures; `None` where a
/// measure has non-real atoms.
pub fn successive_rescaled_ks(analyses: &[Analysis]) -> Result<Vec<(usize, usize, Option<Float>)>> {
    let measures = analyses
        .iter()
        .map(rescaled_measure)
        .collect::<Result<Vec<_>>>()?;
    Ok(analyses
        .windows(2)
        .zip(measures.windows(2))
        .map(|(a, m)| (a[0].n, a[1].n, ks_between(&m[0], &m[1]).ok()))
        .collect())
}

pub fn sweep_report<C>(
    config: C,
    op: &DiffOperator,
    analyses: &[Analysis],
) -> Result<SweepReport<C>> {
    let exponent = radius_exponent(analyses)?;
    let successive = successive_rescaled_ks(analyses)?;
    Ok(SweepReport {
        config,
        op: OperatorSpec::from(op),
        rescaling: "divide by max_radius".into(),
        rows: analyses
            .iter()
            .map(|a| SweepRow {
                n: a.n,
                max_radius: fmt(&a.max_radius),
                scale: fmt(&a.max_radius),
                all_real: a.roots.all_real(),
            })
            .collect(),
        successive_ks: successive
            .into_iter()
            .map(|(from, to, ks)| SuccessiveKs {
                from,
                to,
                ks: ks.as_ref().map(fmt),
            })
            .collect(),
        growth_exponent: fmt(&exponent),
    })
}

pub fn convergence_report<C>(
    config: C,
    op: &DiffOperator,
    law: Option<ArcsineLaw>,
    analyses: &[Analysis],
) -> ConvergenceReport<C> {
    let growth = radius_exponent(analyses).ok().map(|g| fmt(&g));
    let mut notes = Vec::new();
    if law.is_none() {
        notes.push("no arcsine law configured or inferable: ks omitted".to_string());
    } else if analyses.iter().any(|a| a.ks.is_none()) {
        notes.push("ks omitted for degrees with non-real roots".to_string());
    }
    ConvergenceReport {
        config,
        op: OperatorSpec::from(op),
        law,
        rows: analyses.iter().map(ReportRow::from).collect(),
        growth_exponent: growth,
        notes,
    }
}
