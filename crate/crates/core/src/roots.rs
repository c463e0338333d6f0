//! Certified roots of exact polynomials.
//!
//! Roots come from Aberth-Ehrlich simultaneous iteration in MPFR arithmetic.
//! Each pass runs at a fixed working precision; if the pass does not settle
//! or the inclusion disks it produces are too wide for the requested number
//! of digits, the precision doubles and the iteration restarts from the
//! previous approximations.
//!
//! Certification uses the Gerschgorin-type inclusion for monic `p`: the
//! disks `|z - z_i| <= n |p(z_i)| / |Π_{j != i} (z_i - z_j)|` cover all
//! roots, and a connected component made of `m` disks holds exactly `m`
//! roots. Components with `m > 1` are reported as clusters and are
//! certified to the digits the component radius supports.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Assign;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub const DEFAULT_INITIAL_PRECISION: u32 = 128;
pub const DEFAULT_PRECISION_CEILING: u32 = 1 << 16;
/// Angular offset of the starting points on the Fujiwara circle.
pub const START_ANGLE_OFFSET: f64 = 0.4;

/// Bits used for magnitudes, bounds and digit counts.
const AUX_PREC: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootConfig {
    pub target_digits: u32,
    pub initial_precision: u32,
    pub precision_ceiling: u32,
}

impl RootConfig {
    pub fn new(target_digits: u32) -> Self {
        RootConfig {
            target_digits: target_digits.max(1),
            initial_precision: DEFAULT_INITIAL_PRECISION,
            precision_ceiling: DEFAULT_PRECISION_CEILING,
        }
    }

    pub fn with_ceiling(mut self, ceiling: u32) -> Self {
        self.precision_ceiling = ceiling;
        self
    }
}

#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Complex>,
    certified_digits: Vec<u32>,
    cluster_sizes: Vec<usize>,
    real_flags: Vec<bool>,
    source_degree: usize,
    precision: u32,
    target_digits: u32,
    residual_bound: Float,
    realness_scale: Float,
}

impl RootSet {
    /// Builds a root set from already known values, e.g. for tests and
    /// synthetic measures. Every root counts as fully certified.
    pub fn from_values(roots: Vec<Complex>, target_digits: u32) -> RootSet {
        let precision = roots.iter().map(|z| z.prec().0).max().unwrap_or(AUX_PREC);
        let n = roots.len();
        let mut rs = RootSet {
            certified_digits: vec![target_digits; n],
            cluster_sizes: vec![1; n],
            real_flags: vec![false; n],
            source_degree: n,
            precision,
            target_digits,
            residual_bound: Float::with_val(AUX_PREC, 0),
            realness_scale: Float::with_val(AUX_PREC, 1),
            roots,
        };
        rs.sort();
        rs.real_flags = rs.compute_real_flags(&Float::with_val(AUX_PREC, 1));
        rs
    }

    pub fn roots(&self) -> &[Complex] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// Working precision, in bits, of the pass that certified the roots.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn certified_digits(&self) -> &[u32] {
        &self.certified_digits
    }

    /// Number of roots in the inclusion component each root belongs to.
    pub fn cluster_sizes(&self) -> &[usize] {
        &self.cluster_sizes
    }

    pub fn real_flags(&self) -> &[bool] {
        &self.real_flags
    }

    pub fn all_real(&self) -> bool {
        self.real_flags.iter().all(|&f| f)
    }

    /// Bound on `|p(α)| / ‖p‖` for every root and on the relative
    /// coefficient error of `Π (x - α_i)` against the monic input.
    pub fn residual_bound(&self) -> &Float {
        &self.residual_bound
    }

    /// `ε_real = scale · 10^(-target_digits / 3)`.
    pub fn realness_tolerance(&self, scale: &Float) -> Float {
        let exp = -(self.target_digits as f64) / 3.0;
        Float::with_val(AUX_PREC, scale * Float::with_val(AUX_PREC, 10).pow(exp))
    }

    /// Tolerance currently used for `real_flags`.
    pub fn current_realness_tolerance(&self) -> Float {
        self.realness_tolerance(&self.realness_scale)
    }

    fn compute_real_flags(&self, scale: &Float) -> Vec<bool> {
        let eps = self.realness_tolerance(scale);
        self.roots
            .iter()
            .map(|z| Float::with_val(AUX_PREC, z.imag().abs_ref()) <= eps)
            .collect()
    }

    /// Recomputes the real flags against `scale · 10^(-target/3)` and zeroes
    /// the imaginary part of every flagged root in the returned copy.
    pub fn realness(&self, scale: &Float) -> RootSet {
        let mut out = self.clone();
        out.realness_scale = Float::with_val(AUX_PREC, scale);
        out.real_flags = self.compute_real_flags(scale);
        for (z, &flag) in out.roots.iter_mut().zip(&out.real_flags) {
            if flag {
                let prec = z.imag().prec();
                *z.mut_imag() = Float::with_val(prec, 0);
            }
        }
        out.sort();
        out
    }

    /// `max_i |α_i|`.
    pub fn max_radius(&self) -> Float {
        self.roots
            .iter()
            .map(|z| Float::with_val(self.precision, z.abs_ref()))
            .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .expect("nonempty root set")
    }

    /// `Π (x - α_i)` with coefficients in ascending order, at `prec` bits.
    pub fn reconstruct(&self, prec: u32) -> Vec<Complex> {
        expand_from_roots(&self.roots, prec)
    }

    /// CSV with header `index,re,im,real_flag,certified_digits`.
    pub fn to_csv(&self) -> String {
        let digits = self.target_digits as usize;
        let mut out = String::from("index,re,im,real_flag,certified_digits\n");
        for (i, z) in self.roots.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                i,
                format_float(z.real(), digits),
                format_float(z.imag(), digits),
                self.real_flags[i],
                self.certified_digits[i]
            ));
        }
        out
    }

    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.roots.len()).collect();
        order.sort_by(|&a, &b| cmp_complex(&self.roots[a], &self.roots[b]));
        self.certified_digits = permute(&self.certified_digits, &order);
        self.cluster_sizes = permute(&self.cluster_sizes, &order);
        self.real_flags = permute(&self.real_flags, &order);
        self.roots = order.iter().map(|&i| self.roots[i].clone()).collect();
    }
}

fn permute<T: Copy>(v: &[T], order: &[usize]) -> Vec<T> {
    order.iter().map(|&i| v[i]).collect()
}

fn modulus(z: &Complex) -> Float {
    Float::with_val(AUX_PREC, z.abs_ref())
}

/// Orders by real part, then imaginary part.
pub fn cmp_complex(a: &Complex, b: &Complex) -> Ordering {
    a.real()
        .partial_cmp(b.real())
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.imag().partial_cmp(b.imag()).unwrap_or(Ordering::Equal))
}

/// Decimal string with `digits` significant digits, e.g. `-1.7320e0`.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

pub fn find_roots(p: &Poly, target_digits: u32) -> Result<RootSet> {
    find_roots_with(p, &RootConfig::new(target_digits))
}

pub fn find_roots_with(p: &Poly, config: &RootConfig) -> Result<RootSet> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::NoRoots),
    };
    let (monic, _) = p.monic().expect("nonzero");
    // Exact zero roots are split off; the iteration only sees the rest.
    let zeros = monic
        .coeffs()
        .iter()
        .take_while(|c| c.cmp0().is_eq())
        .count();
    let reduced = Poly::from_coeffs(monic.coeffs()[zeros..].to_vec());

    let (mut z, mut digits, mut sizes, prec) = if zeros == degree {
        (
            Vec::new(),
            Vec::new(),
            Vec::new(),
            config.initial_precision.max(AUX_PREC),
        )
    } else {
        iterate_to_certificate(&reduced, config)?
    };
    let max_digits = (prec as f64 * std::f64::consts::LOG10_2).floor() as u32;
    z.extend((0..zeros).map(|_| Complex::with_val(prec, 0)));
    digits.extend(std::iter::repeat_n(max_digits, zeros));
    sizes.extend(std::iter::repeat_n(zeros, zeros));

    let residual_bound = residual_bound(&monic, &z, prec);
    let mut rs = RootSet {
        certified_digits: digits,
        cluster_sizes: sizes,
        real_flags: vec![false; degree],
        source_degree: degree,
        precision: prec,
        target_digits: config.target_digits,
        residual_bound,
        realness_scale: Float::with_val(AUX_PREC, 1),
        roots: z,
    };
    rs.sort();
    rs.real_flags = rs.compute_real_flags(&Float::with_val(AUX_PREC, 1));
    Ok(rs)
}

/// Roots, certified digits, cluster sizes and the final working precision.
type Certified = (Vec<Complex>, Vec<u32>, Vec<usize>, u32);

/// Runs the precision-doubling loop on a monic polynomial with nonzero
/// constant term.
fn iterate_to_certificate(monic: &Poly, config: &RootConfig) -> Result<Certified> {
    let degree = monic.degree().expect("nonzero");
    let mut prec = config.initial_precision.max(AUX_PREC);
    let mut z = initial_guesses(monic, prec);
    let mut previous_clusters: Option<Vec<Vec<usize>>> = None;

    loop {
        let fp = FloatPoly::new(monic, prec);
        for zi in z.iter_mut() {
            zi.set_prec(prec);
        }
        let converged = aberth(&fp, &mut z, 64 + 4 * degree);
        let cert = certify(&fp, &z, config.target_digits);
        if converged && cert.accepts(config.target_digits, previous_clusters.as_deref()) {
            return Ok((z, cert.digits, cert.cluster_size, prec));
        }
        previous_clusters = Some(cert.clusters);
        match prec.checked_mul(2) {
            Some(next) if next <= config.precision_ceiling => prec = next,
            _ => {
                return Err(Error::NoConvergence {
                    target_digits: config.target_digits,
                    ceiling: config.precision_ceiling,
                })
            }
        }
    }
}

/// Monic polynomial with coefficients rounded to the working precision,
/// plus their magnitudes for running error bounds.
struct FloatPoly {
    prec: u32,
    coeffs: Vec<Float>,
    abs_coeffs: Vec<Float>,
    abs_coeffs_f64: Vec<Option<f64>>,
    unit: Float,
}

/// Scratch registers for Horner evaluation at a complex point.
struct HornerScratch {
    vr: Float,
    vi: Float,
    dr: Float,
    di: Float,
    t: Float,
    u: Float,
    w: Float,
}

impl HornerScratch {
    fn new(prec: u32) -> Self {
        let f = || Float::new(prec);
        HornerScratch {
            vr: f(),
            vi: f(),
            dr: f(),
            di: f(),
            t: f(),
            u: f(),
            w: f(),
        }
    }

    fn value(&self) -> Complex {
        Complex::with_val(self.vr.prec(), (&self.vr, &self.vi))
    }

    fn derivative(&self) -> Complex {
        Complex::with_val(self.dr.prec(), (&self.dr, &self.di))
    }
}

impl FloatPoly {
    fn new(p: &Poly, prec: u32) -> Self {
        let coeffs: Vec<Float> = p
            .coeffs()
            .iter()
            .map(|c| Float::with_val(prec, c))
            .collect();
        let abs_coeffs: Vec<Float> = coeffs
            .iter()
            .map(|c| Float::with_val(AUX_PREC, c.abs_ref()))
            .collect();
        let abs_coeffs_f64 = abs_coeffs
            .iter()
            .map(|c: &Float| {
                let v = c.to_f64();
                (v.is_finite() && (v == 0.0 || (1e-280..1e280).contains(&v))).then_some(v)
            })
            .collect();
        let n = (coeffs.len() - 1) as u32;
        let unit = Float::with_val(AUX_PREC, 2).pow(-(prec as i32)) * (8 * n + 8);
        FloatPoly {
            prec,
            coeffs,
            abs_coeffs,
            abs_coeffs_f64,
            unit,
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `p(x + iy)` and `p'(x + iy)` by Horner, left in `s`.
    fn eval_into(&self, x: &Float, y: &Float, s: &mut HornerScratch) {
        let n = self.degree();
        s.vr.assign(&self.coeffs[n]);
        s.vi.assign(0);
        s.dr.assign(0);
        s.di.assign(0);
        for c in self.coeffs[..n].iter().rev() {
            // d <- d z + v
            s.t.assign(&s.dr * x);
            s.w.assign(&s.di * y);
            s.t -= &s.w;
            s.t += &s.vr;
            s.u.assign(&s.dr * y);
            s.w.assign(&s.di * x);
            s.u += &s.w;
            s.u += &s.vi;
            std::mem::swap(&mut s.dr, &mut s.t);
            std::mem::swap(&mut s.di, &mut s.u);
            // v <- v z + c
            s.t.assign(&s.vr * x);
            s.w.assign(&s.vi * y);
            s.t -= &s.w;
            s.t += c;
            s.u.assign(&s.vr * y);
            s.w.assign(&s.vi * x);
            s.u += &s.w;
            std::mem::swap(&mut s.vr, &mut s.t);
            std::mem::swap(&mut s.vi, &mut s.u);
        }
    }

    fn eval_with_derivative(&self, z: &Complex, value: &mut Complex, deriv: &mut Complex) {
        let mut s = HornerScratch::new(self.prec);
        self.eval_into(z.real(), z.imag(), &mut s);
        *value = s.value();
        *deriv = s.derivative();
    }

    /// Upper bound on the rounding error of Horner at a point of modulus `r`.
    fn eval_error_bound_at_modulus(&self, r: &Float) -> Float {
        if let Some(fast) = self.eval_error_bound_f64(r) {
            return fast;
        }
        let mut acc = Float::with_val(AUX_PREC, 0);
        for c in self.abs_coeffs.iter().rev() {
            acc *= r;
            acc += c;
        }
        acc * &self.unit
    }

    /// Same bound in hardware floats, with a 2x margin for their own
    /// rounding; `None` when anything leaves the comfortable f64 range.
    fn eval_error_bound_f64(&self, r: &Float) -> Option<Float> {
        let rf = r.to_f64();
        if !(rf.is_finite() && (rf == 0.0 || (1e-100..1e100).contains(&rf))) {
            return None;
        }
        let mut acc = 0.0f64;
        for c in self.abs_coeffs_f64.iter().rev() {
            acc = acc * rf + (*c)?;
        }
        if !acc.is_finite() || acc > 1e280 {
            return None;
        }
        Some(Float::with_val(AUX_PREC, acc * 2.0) * &self.unit)
    }

    fn eval_error_bound(&self, z: &Complex) -> Float {
        self.eval_error_bound_at_modulus(&modulus(z))
    }
}

fn fujiwara_bound(p: &Poly) -> Float {
    let n = p.degree().expect("nonzero");
    let mut best = Float::with_val(AUX_PREC, 0);
    for k in 1..=n {
        let c = Float::with_val(AUX_PREC, p.coeff(n - k).abs());
        if c.is_zero() {
            continue;
        }
        let c = if k == n { c / 2 } else { c };
        let root = c.root(k as u32);
        if root > best {
            best = root;
        }
    }
    best * 2u32
}

fn initial_guesses(p: &Poly, prec: u32) -> Vec<Complex> {
    let n = p.degree().expect("nonzero");
    let mut radius = fujiwara_bound(p);
    if radius.is_zero() {
        // x^n: every root is zero; start on the unit circle.
        radius = Float::with_val(AUX_PREC, 1);
    }
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    (0..n)
        .map(|j| {
            let angle = Float::with_val(prec, &two_pi * j as u32) / n as u32 + START_ANGLE_OFFSET;
            let (s, c) = angle.sin_cos(Float::new(prec));
            Complex::with_val(prec, (c * &radius, s * &radius))
        })
        .collect()
}

/// Gauss-Seidel Aberth iteration. A root stops moving once its correction
/// is below the working precision or `p` at it is indistinguishable from
/// rounding noise. Returns whether every root stopped.
fn aberth(fp: &FloatPoly, z: &mut [Complex], max_iterations: usize) -> bool {
    let n = z.len();
    let prec = fp.prec;
    let mut xs: Vec<Float> = z.iter().map(|c| Float::with_val(prec, c.real())).collect();
    let mut ys: Vec<Float> = z.iter().map(|c| Float::with_val(prec, c.imag())).collect();
    let mut frozen = vec![false; n];
    let mut h = HornerScratch::new(prec);
    let (mut a, mut b, mut n2) = (Float::new(prec), Float::new(prec), Float::new(prec));
    let (mut sr, mut si) = (Float::new(prec), Float::new(prec));
    let mut r = Float::new(AUX_PREC);
    let mut mag = Float::new(AUX_PREC);
    let step_tol = Float::with_val(AUX_PREC, 2).pow(4 - prec as i32);
    let one = Complex::with_val(prec, 1);

    // Hardware mirrors of the approximations for the Aberth sum.
    let to_f64 = |v: &Float| v.to_f64();
    let mut fx: Vec<f64> = xs.iter().map(to_f64).collect();
    let mut fy: Vec<f64> = ys.iter().map(to_f64).collect();
    let in_range = |v: f64| v.is_finite() && (v == 0.0 || (1e-250..1e250).contains(&v.abs()));
    let fast = fx.iter().chain(&fy).all(|&v| in_range(v));
    let (mut slow_r, mut slow_i) = (Float::with_val(prec, 0), Float::with_val(prec, 0));

    let mut all_frozen = false;
    for _ in 0..max_iterations {
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            fp.eval_into(&xs[i], &ys[i], &mut h);
            r.assign(Float::hypot_ref(&xs[i], &ys[i]));
            mag.assign(Float::hypot_ref(&h.vr, &h.vi));
            if mag <= fp.eval_error_bound_at_modulus(&r) {
                frozen[i] = true;
                continue;
            }
            // Σ_{j != i} 1/(z_i - z_j). Only the convergence rate depends
            // on this sum, so hardware floats suffice unless two
            // approximations are too close for an f64 difference.
            let (mut fsr, mut fsi) = (0.0f64, 0.0f64);
            let scale = fx[i].abs() + fy[i].abs();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let (mut da, mut db) = (fx[i] - fx[j], fy[i] - fy[j]);
                if !fast || da.abs() + db.abs() <= 1e-6 * scale {
                    a.assign(&xs[i] - &xs[j]);
                    b.assign(&ys[i] - &ys[j]);
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let (ea, eb) = (
                        a.get_exp().unwrap_or(i32::MIN),
                        b.get_exp().unwrap_or(i32::MIN),
                    );
                    let shift = ea.max(eb);
                    if !fast || !(-900..900).contains(&shift) {
                        // Out of hardware range: accumulate in MPFR.
                        n2.assign(Float::mul_add_mul_ref(&a, &a, &b, &b));
                        n2.recip_mut();
                        a *= &n2;
                        b *= &n2;
                        slow_r += &a;
                        slow_i -= &b;
                        continue;
                    }
                    da = a.to_f64();
                    db = b.to_f64();
                }
                let inv = 1.0 / (da * da + db * db);
                fsr += da * inv;
                fsi -= db * inv;
            }
            sr.assign(&slow_r + fsr);
            si.assign(&slow_i + fsi);
            slow_r.assign(0);
            slow_i.assign(0);
            let (x, y) = (&mut xs[i], &mut ys[i]);
            if h.dr.is_zero() && h.di.is_zero() {
                // Stationary point of p: nudge off it.
                *x += Float::with_val(prec, 2).pow(-(prec as i32) / 2);
                fx[i] = x.to_f64();
                continue;
            }
            // w = (p/p') / (1 - (p/p') Σ 1/(z_i - z_j))
            let ratio = Complex::with_val(prec, h.value() / h.derivative());
            let sum = Complex::with_val(prec, (&sr, &si));
            let denom = Complex::with_val(prec, &one - Complex::with_val(prec, &ratio * &sum));
            let step = if denom.is_zero() {
                ratio
            } else {
                ratio / denom
            };
            *x -= step.real();
            *y -= step.imag();
            fx[i] = x.to_f64();
            fy[i] = y.to_f64();
            let step_mag = modulus(&step);
            r.assign(Float::hypot_ref(x, y));
            if step_mag <= Float::with_val(AUX_PREC, &step_tol * &r) {
                frozen[i] = true;
            }
        }
        if frozen.iter().all(|&f| f) {
            all_frozen = true;
            break;
        }
    }
    for (zi, (x, y)) in z.iter_mut().zip(xs.into_iter().zip(ys)) {
        *zi = Complex::with_val(prec, (x, y));
    }
    all_frozen
}

struct Certificate {
    digits: Vec<u32>,
    cluster_size: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Certificate {
    fn accepts(&self, target: u32, previous: Option<&[Vec<usize>]>) -> bool {
        self.clusters.iter().all(|members| {
            let got = self.digits[members[0]];
            let m = members.len() as u32;
            if m == 1 {
                got >= target
            } else {
                // A multiple-root cluster must persist across a precision
                // doubling before its reduced digit count is accepted.
                let persisted = previous.is_some_and(|prev| prev.iter().any(|c| c == members));
                persisted && got >= target.div_ceil(m)
            }
        })
    }
}

fn certify(fp: &FloatPoly, z: &[Complex], target: u32) -> Certificate {
    let n = z.len();
    let prec = fp.prec;
    let mut value = Complex::new(prec);
    let mut deriv = Complex::new(prec);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        fp.eval_with_derivative(&z[i], &mut value, &mut deriv);
        let bound = fp.eval_error_bound(&z[i]);
        let mag = modulus(&value);
        let residual = mag + bound;
        let mut prod = Float::with_val(AUX_PREC, 1);
        for j in 0..n {
            if j != i {
                let d = Complex::with_val(prec, &z[i] - &z[j]);
                prod *= modulus(&d);
            }
        }
        let radius = if prod.is_zero() {
            Float::with_val(AUX_PREC, rug::float::Special::Infinity)
        } else {
            Float::with_val(AUX_PREC, &residual * n as u32) / prod
        };
        radii.push(radius);
    }

    // Connected components of overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut k = i;
        while parent[k] != r {
            let next = parent[k];
            parent[k] = r;
            k = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = Complex::with_val(prec, &z[i] - &z[j]);
            let dist = modulus(&d);
            if dist <= Float::with_val(AUX_PREC, &radii[i] + &radii[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[r]].push(i);
    }

    let floor = Float::with_val(AUX_PREC, 10).pow(-(target as i32));
    let max_digits = (prec as f64 * std::f64::consts::LOG10_2).floor() as u32;
    let mut digits = vec![0; n];
    let mut cluster_size = vec![1; n];
    for members in &clusters {
        let m = members.len();
        let mut center = Complex::with_val(prec, (0, 0));
        for &i in members {
            center += &z[i];
        }
        center /= m as u32;
        let mut radius = Float::with_val(AUX_PREC, 0);
        for &i in members {
            let d = Complex::with_val(prec, &z[i] - &center);
            let extent = modulus(&d) + &radii[i];
            if extent > radius {
                radius = extent;
            }
        }
        let center_mag = modulus(&center);
        let scale = if center_mag > floor {
            center_mag
        } else {
            floor.clone()
        };
        let d = if radius.is_zero() {
            max_digits
        } else if radius.is_infinite() {
            0
        } else {
            let ratio = Float::with_val(AUX_PREC, &scale / &radius);
            let l = ratio.log10().to_f64().floor();
            if l <= 0.0 {
                0
            } else {
                (l as u32).min(max_digits)
            }
        };
        for &i in members {
            digits[i] = d;
            cluster_size[i] = m;
        }
    }
    Certificate {
        digits,
        cluster_size,
        clusters,
    }
}

fn expand_from_roots(roots: &[Complex], prec: u32) -> Vec<Complex> {
    let mut coeffs = vec![Complex::with_val(prec, 1)];
    for r in roots {
        let mut next = vec![Complex::with_val(prec, 0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= Complex::with_val(prec, c * r);
        }
        coeffs = next;
    }
    coeffs
}

/// Max of the per-root normalized residual (plus its rounding bound) and
/// the normwise relative error of `Π (x - z_i)` against `p`.
fn residual_bound(monic: &Poly, z: &[Complex], prec: u32) -> Float {
    let norm = Float::with_val(AUX_PREC, &monic.max_coeff_abs());
    let fp = FloatPoly::new(monic, prec);
    let mut value = Complex::new(prec);
    let mut deriv = Complex::new(prec);
    let mut bound = Float::with_val(AUX_PREC, 0);
    for zi in z {
        fp.eval_with_derivative(zi, &mut value, &mut deriv);
        let rel = (modulus(&value) + fp.eval_error_bound(zi)) / &norm;
        if rel > bound {
            bound = rel;
        }
    }
    let wide = 2 * prec;
    let rebuilt = expand_from_roots(z, wide);
    let mut worst = Float::with_val(AUX_PREC, 0);
    for (k, c) in rebuilt.iter().enumerate() {
        let exact = Float::with_val(wide, &monic.coeff(k));
        let mag = modulus(&Complex::with_val(wide, c - exact));
        if mag > worst {
            worst = mag;
        }
    }
    let backward = worst / &norm + Float::with_val(AUX_PREC, 2).pow(-(prec as i32));
    if backward > bound {
        backward
    } else {
        bound
    }
}
