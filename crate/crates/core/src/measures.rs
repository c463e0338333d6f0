//! Root measures and the diagnostics run on them: KS distance to the
//! arcsine law, moments, empirical Cauchy transforms, the leading-term
//! Cauchy residual, growth exponents and rescaling.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::DiffOperator;
use crate::poly::{Poly, Rat};
use crate::roots::{cmp_complex, RootSet};

/// Precision used for CDF values and KS statistics.
pub const STAT_PREC: u32 = 128;

/// Normalized counting measure: mass `1/n` on each atom.
#[derive(Debug, Clone)]
pub struct RootMeasure {
    atoms: Vec<Complex>,
}

impl RootMeasure {
    pub fn new(mut atoms: Vec<Complex>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::TooFewPoints { needed: 1, got: 0 });
        }
        atoms.sort_by(cmp_complex);
        Ok(RootMeasure { atoms })
    }

    pub fn from_reals<I: IntoIterator<Item = Float>>(xs: I) -> Result<Self> {
        Self::new(
            xs.into_iter()
                .map(|x| {
                    let prec = x.prec();
                    Complex::with_val(prec, (x, 0))
                })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Complex] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight(&self) -> Rat {
        Rat::from((1, self.atoms.len() as u64))
    }

    pub fn is_real(&self) -> bool {
        self.atoms.iter().all(|z| z.imag().is_zero())
    }

    fn real_atoms(&self) -> Result<Vec<&Float>> {
        if !self.is_real() {
            return Err(Error::NonRealAtoms);
        }
        Ok(self.atoms.iter().map(|z| z.real()).collect())
    }

    fn prec(&self) -> u32 {
        self.atoms
            .iter()
            .map(|z| z.prec().0)
            .max()
            .unwrap_or(STAT_PREC)
    }

    /// `(1/n) Σ α_i^k`.
    pub fn moment(&self, k: u32) -> Complex {
        let prec = self.prec();
        let mut acc = Complex::with_val(prec, 0);
        for z in &self.atoms {
            acc += Complex::with_val(prec, z.pow(k));
        }
        acc / self.atoms.len() as u32
    }

    /// Divides every atom by `s > 0`.
    pub fn rescale(&self, s: &Float) -> Result<RootMeasure> {
        if !(s.is_finite() && s.cmp0() == Some(Ordering::Greater)) {
            return Err(Error::NonPositive(format!("scale {s}")));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|z| Complex::with_val(z.prec(), z / s))
            .collect();
        RootMeasure::new(atoms)
    }

    /// `(x, F_emp(x))` at each distinct atom, as CSV with header `x,F`.
    pub fn cdf_csv(&self, digits: usize) -> Result<String> {
        let xs = self.real_atoms()?;
        let n = xs.len();
        let mut out = String::from("x,F\n");
        for (end, x) in group_ends(&xs) {
            let f = Float::with_val(STAT_PREC, end) / n as u32;
            out.push_str(&format!(
                "{},{}\n",
                crate::roots::format_float(x, digits),
                crate::roots::format_float(&f, digits)
            ));
        }
        Ok(out)
    }
}

/// Normalized counting measure of a root set.
pub fn root_measure(rs: &RootSet) -> Result<RootMeasure> {
    RootMeasure::new(rs.roots().to_vec())
}

/// For sorted values, yields `(rank after the group, value)` per run of equal values.
fn group_ends<'a>(xs: &[&'a Float]) -> Vec<(usize, &'a Float)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i + 1;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        out.push((j, xs[i]));
        i = j;
    }
    out
}

/// The arcsine law on `[a, b]`, density `1 / (π √((b - x)(x - a)))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LawSpec", into = "LawSpec")]
pub struct ArcsineLaw {
    a: Rat,
    b: Rat,
}

#[derive(Serialize, Deserialize)]
struct LawSpec {
    a: String,
    b: String,
}

impl TryFrom<LawSpec> for ArcsineLaw {
    type Error = Error;

    fn try_from(s: LawSpec) -> Result<Self> {
        ArcsineLaw::new(crate::poly::parse_rat(&s.a)?, crate::poly::parse_rat(&s.b)?)
    }
}

impl From<ArcsineLaw> for LawSpec {
    fn from(l: ArcsineLaw) -> Self {
        LawSpec {
            a: l.a.to_string(),
            b: l.b.to_string(),
        }
    }
}

impl ArcsineLaw {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a >= b {
            return Err(Error::BadInterval);
        }
        Ok(ArcsineLaw { a, b })
    }

    /// The law on `[-1, 1]`.
    pub fn standard() -> Self {
        ArcsineLaw {
            a: Rat::from(-1),
            b: Rat::from(1),
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// `F(x) = (2/π) arcsin √((x - a)/(b - a))`, clamped to `[0, 1]`.
    pub fn cdf(&self, x: &Float) -> Float {
        let prec = x.prec().max(STAT_PREC);
        if *x <= self.a {
            return Float::with_val(prec, 0);
        }
        if *x >= self.b {
            return Float::with_val(prec, 1);
        }
        let width = Float::with_val(prec, Rat::from(&self.b - &self.a));
        let u = (Float::with_val(prec, x - &self.a) / width).sqrt();
        let pi = Float::with_val(prec, Constant::Pi);
        u.asin() * 2u32 / pi
    }

    /// `a + (b - a) sin²(π u / 2)`, the inverse of [`cdf`](Self::cdf).
    pub fn quantile(&self, u: &Float) -> Float {
        let prec = u.prec().max(STAT_PREC);
        let pi = Float::with_val(prec, Constant::Pi);
        let s = (Float::with_val(prec, u * pi) / 2u32).sin().square();
        Float::with_val(prec, Rat::from(&self.b - &self.a)) * s + &self.a
    }

    /// Density; zero outside the open interval.
    pub fn density(&self, x: &Float) -> Float {
        let prec = x.prec().max(STAT_PREC);
        if *x <= self.a || *x >= self.b {
            return Float::with_val(prec, 0);
        }
        let left = Float::with_val(prec, x - &self.a);
        let right = Float::with_val(prec, &self.b - x);
        let pi = Float::with_val(prec, Constant::Pi);
        (left * right).sqrt().recip() / pi
    }

    /// Exact `k`-th moment. On `[-1, 1]` the even moments are `C(2j, j) / 4^j`;
    /// other intervals follow from the affine image.
    pub fn moment(&self, k: u32) -> Rat {
        let half = Rat::from(&self.a + &self.b) / 2u32;
        let radius = Rat::from(&self.b - &self.a) / 2u32;
        let mut acc = Rat::new();
        for i in (0..=k).step_by(2) {
            // E[(c + r t)^k] with E[t^i] = C(i, i/2) / 2^i for even i.
            let binom = Integer::from(Integer::binomial_u(k, i));
            let t_moment = Rat::from((
                Integer::from(Integer::binomial_u(i, i / 2)),
                Integer::from(1) << i,
            ));
            let term = Rat::from((&radius).pow(i as i32))
                * Rat::from((&half).pow((k - i) as i32))
                * t_moment
                * binom;
            acc += term;
        }
        acc
    }
}

/// Exact KS statistic between the empirical CDF of real atoms and the law:
/// the sup over atoms of both one-sided gaps.
pub fn ks_distance(m: &RootMeasure, law: &ArcsineLaw) -> Result<Float> {
    let xs = m.real_atoms()?;
    let n = xs.len() as u32;
    let mut worst = Float::with_val(STAT_PREC, 0);
    let mut start = 0usize;
    for (end, x) in group_ends(&xs) {
        let f = law.cdf(x);
        let above = Float::with_val(STAT_PREC, end as u32) / n - &f;
        let below = Float::with_val(STAT_PREC, start as u32) / n - &f;
        for gap in [above.abs(), below.abs()] {
            if gap > worst {
                worst = gap;
            }
        }
        start = end;
    }
    Ok(worst)
}

/// Two-sample KS statistic `sup_x |F_1(x) - F_2(x)|` between real measures.
pub fn ks_between(m1: &RootMeasure, m2: &RootMeasure) -> Result<Float> {
    let (x1, x2) = (m1.real_atoms()?, m2.real_atoms()?);
    let (n1, n2) = (x1.len() as u32, x2.len() as u32);
    let (mut i, mut j) = (0usize, 0usize);
    let mut worst = Float::with_val(STAT_PREC, 0);
    while i < x1.len() || j < x2.len() {
        let next = match (x1.get(i), x2.get(j)) {
            (Some(a), Some(b)) => {
                if a <= b {
                    (*a).clone()
                } else {
                    (*b).clone()
                }
            }
            (Some(a), None) => (*a).clone(),
            (None, Some(b)) => (*b).clone(),
            (None, None) => unreachable!(),
        };
        while i < x1.len() && *x1[i] <= next {
            i += 1;
        }
        while j < x2.len() && *x2[j] <= next {
            j += 1;
        }
        let gap =
            Float::with_val(STAT_PREC, i as u32) / n1 - Float::with_val(STAT_PREC, j as u32) / n2;
        let gap = gap.abs();
        if gap > worst {
            worst = gap;
        }
    }
    Ok(worst)
}

/// Max over `1 <= k <= kmax` of `|moment(m, k) - law.moment(k)|`.
pub fn moment_discrepancy(m: &RootMeasure, law: &ArcsineLaw, kmax: u32) -> Float {
    let mut worst = Float::with_val(STAT_PREC, 0);
    for k in 1..=kmax {
        let exact = law.moment(k);
        let d = Complex::with_val(STAT_PREC, m.moment(k) - Float::with_val(STAT_PREC, &exact));
        let mag = Float::with_val(STAT_PREC, d.abs_ref());
        if mag > worst {
            worst = mag;
        }
    }
    worst
}

/// Probe-point settings for Cauchy transforms.
#[derive(Debug, Clone)]
pub struct ProbeSettings {
    pub target_digits: u32,
    /// Scale in `ε_real = scale · 10^(-target_digits / 3)`.
    pub scale: Float,
}

impl ProbeSettings {
    pub fn new(target_digits: u32) -> Self {
        ProbeSettings {
            target_digits,
            scale: Float::with_val(64, 1),
        }
    }

    pub fn realness_tolerance(&self) -> Float {
        let exp = -(self.target_digits as f64) / 3.0;
        Float::with_val(64, &self.scale * Float::with_val(64, 10).pow(exp))
    }

    /// Minimum distance from a probe to any root: `10 ε_real`.
    pub fn guard(&self) -> Float {
        self.realness_tolerance() * 10u32
    }

    fn precision_for(&self, degree: usize) -> u32 {
        let digits_bits = (self.target_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
        (digits_bits + 64 + 2 * degree as u32).max(128)
    }
}

/// Lower bound on the distance from `x` to the nearest root of `p`, from
/// the Taylor coefficients `b_k` of `p(x + h)`: no root lies within
/// `min_k (|b_0| / (n |b_k|))^{1/k}`.
pub fn root_free_radius(p: &Poly, x: &Complex, prec: u32) -> Float {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Float::with_val(64, rug::float::Special::Infinity),
    };
    // Taylor shift by repeated synthetic division.
    let mut b: Vec<Complex> = p
        .coeffs()
        .iter()
        .map(|c| Complex::with_val(prec, (c, 0)))
        .collect();
    for k in 0..n {
        for i in (k..n).rev() {
            let t = Complex::with_val(prec, &b[i + 1] * x);
            b[i] += t;
        }
    }
    let b0 = Float::with_val(64, b[0].abs_ref());
    if b0.is_zero() {
        return Float::with_val(64, 0);
    }
    let mut best = Float::with_val(64, rug::float::Special::Infinity);
    for (k, bk) in b.iter().enumerate().skip(1) {
        let mag = Float::with_val(64, bk.abs_ref());
        if mag.is_zero() {
            continue;
        }
        let ratio = Float::with_val(64, &b0 / (mag * n as u32));
        let r = ratio.root(k as u32);
        if r < best {
            best = r;
        }
    }
    // Rounding slack on the computed radius.
    best * 0.999
}

/// `C_n(x) = p'(x) / (n p(x))`, the Cauchy transform of the root measure
/// of a degree-`n` polynomial.
pub fn empirical_cauchy(
    p: &Poly,
    n: usize,
    x: &Complex,
    settings: &ProbeSettings,
) -> Result<Complex> {
    let degree = p.degree().unwrap_or(0);
    let prec = settings.precision_for(degree);
    let guard = settings.guard();
    let distance = root_free_radius(p, x, prec);
    if distance < guard {
        return Err(Error::ProbeTooCloseToRoot {
            distance: crate::roots::format_float(&distance, 6),
            guard: crate::roots::format_float(&guard, 6),
        });
    }
    let value = p.eval_complex(x, prec);
    let deriv = p.derivative(1).eval_complex(x, prec);
    Ok(deriv / value / n as u32)
}

/// `(1/n) Σ 1/(x - α_i)` straight from a root set.
pub fn cauchy_from_roots(rs: &RootSet, x: &Complex) -> Complex {
    let prec = rs.precision();
    let mut acc = Complex::with_val(prec, 0);
    for a in rs.roots() {
        acc += Complex::with_val(prec, x - a).recip();
    }
    acc / rs.len() as u32
}

/// `|C_n(x)^N ã_N(x) - 1|` for the degree-`n` eigenpolynomial, with `ã_N`
/// the monic normalization of the leading coefficient.
pub fn leading_term_residual(
    op: &DiffOperator,
    n: usize,
    x: &Complex,
    settings: &ProbeSettings,
) -> Result<Float> {
    check_leading_degree(op)?;
    if !op.is_admissible() {
        return Err(Error::NotAdmissible("operator fails deg a_k <= k".into()));
    }
    let p = op.eigenpolynomial(n)?;
    cauchy_residual(op, &p, x, settings)
}

/// The residual for an already computed eigenpolynomial `p` of `op`.
pub fn cauchy_residual(
    op: &DiffOperator,
    p: &Poly,
    x: &Complex,
    settings: &ProbeSettings,
) -> Result<Float> {
    check_leading_degree(op)?;
    let order = op.order();
    let n = p.degree().ok_or(Error::NoRoots)?;
    if n == 0 {
        return Err(Error::NoRoots);
    }
    let c = empirical_cauchy(p, n, x, settings)?;
    let prec = c.prec().0;
    let (leading, _) = op.leading().monic().expect("nonzero leading term");
    let a = leading.eval_complex(x, prec);
    let r = Complex::with_val(prec, (&c).pow(order as u32)) * a - 1u32;
    Ok(Float::with_val(prec, r.abs_ref()))
}

fn check_leading_degree(op: &DiffOperator) -> Result<()> {
    let order = op.order();
    let degree = op.leading().degree();
    if degree != Some(order) {
        return Err(Error::LeadingDegreeTooLow { order, degree });
    }
    Ok(())
}

/// Least-squares slope of `log r` against `log n`. Exactly zero when all
/// radii are equal.
pub fn growth_exponent(series: &[(usize, Float)]) -> Result<Float> {
    if series.len() < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            got: series.len(),
        });
    }
    if series.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::NotIncreasing);
    }
    if let Some((_, r)) = series
        .iter()
        .find(|(_, r)| r.cmp0() != Some(Ordering::Greater))
    {
        return Err(Error::NonPositive(format!("radius {r}")));
    }
    if series.iter().all(|(_, r)| *r == series[0].1) {
        return Ok(Float::with_val(STAT_PREC, 0));
    }
    let k = series.len() as u32;
    let xs: Vec<Float> = series
        .iter()
        .map(|(n, _)| Float::with_val(STAT_PREC, *n).ln())
        .collect();
    let ys: Vec<Float> = series
        .iter()
        .map(|(_, r)| Float::with_val(STAT_PREC, r).ln())
        .collect();
    let mean = |v: &[Float]| {
        v.iter()
            .fold(Float::with_val(STAT_PREC, 0), |acc, x| acc + x)
            / k
    };
    let (mx, my) = (mean(&xs), mean(&ys));
    let mut sxy = Float::with_val(STAT_PREC, 0);
    let mut sxx = Float::with_val(STAT_PREC, 0);
    for (x, y) in xs.iter().zip(&ys) {
        let dx = Float::with_val(STAT_PREC, x - &mx);
        sxy += Float::with_val(STAT_PREC, &dx * Float::with_val(STAT_PREC, y - &my));
        sxx += dx.square();
    }
    Ok(sxy / sxx)
}

/// KS distances between consecutive measures of a sequence.
pub fn successive_ks(measures: &[RootMeasure]) -> Result<Vec<Float>> {
    measures
        .windows(2)
        .map(|w| ks_between(&w[0], &w[1]))
        .collect()
}
