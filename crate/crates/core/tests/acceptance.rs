//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use bochner::classical::{classical_monic, Family};
use bochner::measures::{cauchy_residual, growth_exponent, ks_between, ks_distance, root_measure};
use bochner::roots::{find_roots_with, RootConfig};
use bochner::{ArcsineLaw, DiffOperator, Poly, ProbeSettings, Rat, RootSet, KRALL_LEGENDRE_JSON};
use rug::{Complex, Float};

const DIGITS: u32 = 30;

struct Battery {
    ops: Vec<(&'static str, DiffOperator)>,
}

impl Battery {
    fn new() -> Self {
        let fam = |f: Family| f.bochner_operator().unwrap();
        Battery {
            ops: vec![
                ("hermite", fam(Family::Hermite)),
                ("legendre", fam(Family::Legendre)),
                (
                    "jacobi(1,2)",
                    fam(Family::jacobi(Rat::from(1), Rat::from(2)).unwrap()),
                ),
                ("chebyshev1", fam(Family::Chebyshev1)),
                (
                    "krall",
                    DiffOperator::from_json(KRALL_LEGENDRE_JSON).unwrap(),
                ),
            ],
        }
    }

    fn get(&self, name: &str) -> &DiffOperator {
        &self.ops.iter().find(|(n, _)| *n == name).unwrap().1
    }
}

/// Eigenpolynomials and root sets computed once and shared across criteria.
#[derive(Default)]
struct Cache {
    polys: BTreeMap<(&'static str, usize), Poly>,
    roots: BTreeMap<(&'static str, usize), RootSet>,
}

impl Cache {
    fn poly(&mut self, b: &Battery, name: &'static str, n: usize) -> Poly {
        self.polys
            .entry((name, n))
            .or_insert_with(|| b.get(name).eigenpolynomial(n).unwrap())
            .clone()
    }

    fn roots(&mut self, b: &Battery, name: &'static str, n: usize) -> RootSet {
        if let Some(rs) = self.roots.get(&(name, n)) {
            return rs.clone();
        }
        let p = self.poly(b, name, n);
        let rs = find_roots_with(&p, &RootConfig::new(DIGITS))
            .unwrap()
            .realness(&Float::with_val(64, 1));
        self.roots.insert((name, n), rs.clone());
        rs
    }
}

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn report(&mut self, id: u32, pass: bool, summary: String, started: Instant) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {id}: {summary} [{:.1}s]",
            started.elapsed().as_secs_f64()
        );
        if !pass {
            self.failures += 1;
        }
    }
}

fn f(x: &Float) -> String {
    format!("{:.4e}", x.to_f64())
}

fn exact_eigen_relation(b: &Battery, out: &mut Outcome) {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, op) in &b.ops {
        for n in 0..=40 {
            let Ok(p) = op.eigenpolynomial(n) else {
                continue;
            };
            checked += 1;
            if op.apply(&p) != p.scale(&op.eigenvalue(n)) {
                bad.push(format!("{name}:{n}"));
            }
        }
    }
    out.report(
        1,
        bad.is_empty() && t.elapsed().as_secs() < 60,
        format!("exact eigen-relation, {checked} (operator, n) pairs, n <= 40, failures {bad:?}"),
        t,
    );
}

fn oracle_equivalence(out: &mut Outcome) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let families = Family::catalog();
    for family in &families {
        let op = family.bochner_operator().unwrap();
        for n in 0..=25 {
            if op.eigenpolynomial(n).unwrap() != classical_monic(family, n).unwrap() {
                bad.push(format!("{family}:{n}"));
            }
        }
    }
    out.report(
        2,
        bad.is_empty(),
        format!(
            "eigenpolynomial = classical_monic for {} families, n <= 25, failures {bad:?}",
            families.len()
        ),
        t,
    );
}

fn eigenvalue_formula(b: &Battery, out: &mut Outcome) {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (name, op) in &b.ops {
        for n in 0..=60 {
            let image = op.apply(&Poly::monomial(Rat::from(1), n));
            if image.coeff(n) != op.eigenvalue(n) {
                bad.push(format!("{name}:{n}"));
            }
        }
    }
    out.report(
        3,
        bad.is_empty(),
        format!("closed-form eigenvalue, n <= 60, failures {bad:?}"),
        t,
    );
}

fn ks_series(b: &Battery, cache: &mut Cache, name: &'static str, ns: &[usize]) -> Vec<Float> {
    let law = ArcsineLaw::standard();
    ns.iter()
        .map(|&n| {
            let rs = cache.roots(b, name, n);
            ks_distance(&root_measure(&rs).unwrap(), &law).unwrap()
        })
        .collect()
}

fn strictly_decreasing(v: &[Float]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn legendre_ks(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let ns = [25, 50, 100, 200];
    let ks = ks_series(b, cache, "legendre", &ns);
    let pass = ks[3] < 0.03 && strictly_decreasing(&ks);
    let shown: Vec<String> = ks.iter().map(f).collect();
    out.report(
        4,
        pass,
        format!("Legendre KS at n={ns:?}: {shown:?} (need KS(200) < 0.03, decreasing)"),
        t,
    );
}

fn cauchy_residuals(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let ns = [25, 50, 100, 200];
    let x = Complex::with_val(128, (2, 0));
    let settings = ProbeSettings::new(DIGITS);
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["legendre", "krall"] {
        let op = b.get(name).clone();
        let r: Vec<Float> = ns
            .iter()
            .map(|&n| cauchy_residual(&op, &cache.poly(b, name, n), &x, &settings).unwrap())
            .collect();
        pass &= r[2] < 0.05 && strictly_decreasing(&r);
        parts.push(format!("{name} {:?}", r.iter().map(f).collect::<Vec<_>>()));
    }
    out.report(
        5,
        pass,
        format!(
            "residual at x=2, n={ns:?}: {} (need < 0.05 at n=100, decreasing)",
            parts.join("; ")
        ),
        t,
    );
}

const SWEEP: [usize; 6] = [10, 25, 50, 100, 150, 200];

fn dichotomy(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let series = |cache: &mut Cache, name: &'static str| -> Vec<(usize, Float)> {
        SWEEP
            .iter()
            .map(|&n| (n, cache.roots(b, name, n).max_radius()))
            .collect()
    };
    let hermite = series(cache, "hermite");
    let legendre = series(cache, "legendre");
    let gh = growth_exponent(&hermite).unwrap();
    let gl = growth_exponent(&legendre).unwrap();
    let bound = Float::with_val(128, 1) + Float::with_val(128, 1e-6);
    let bounded = legendre.iter().all(|(_, r)| *r <= bound);
    let pass = (0.4..=0.6).contains(&gh) && (-0.05..=0.05).contains(&gl) && bounded;
    out.report(
        6,
        pass,
        format!(
            "growth exponent over n={SWEEP:?}: hermite {} in [0.4, 0.6], legendre {} in [-0.05, 0.05], legendre max_radius <= 1+1e-6: {bounded}",
            f(&gh),
            f(&gl)
        ),
        t,
    );
}

fn krall_ks(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let rs = cache.roots(b, "krall", 150);
    let (pass, summary) = if rs.all_real() {
        let ks = ks_distance(&root_measure(&rs).unwrap(), &ArcsineLaw::standard()).unwrap();
        (
            ks < 0.05,
            format!("order-4 operator KS(150) = {} (need < 0.05)", f(&ks)),
        )
    } else {
        (
            false,
            "order-4 operator has non-real roots at n=150".to_string(),
        )
    };
    out.report(7, pass, summary, t);
}

fn hermite_sweep(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let rescaled = |cache: &mut Cache, n| {
        let rs = cache.roots(b, "hermite", n);
        root_measure(&rs)
            .unwrap()
            .rescale(&rs.max_radius())
            .unwrap()
    };
    let m100 = rescaled(cache, 100);
    let m200 = rescaled(cache, 200);
    let ks = ks_between(&m100, &m200).unwrap();
    out.report(
        8,
        ks < 0.05,
        format!(
            "Hermite measures rescaled by max radius: KS(100, 200) = {} (need < 0.05)",
            f(&ks)
        ),
        t,
    );
}

fn reconstruction_ok(p: &Poly, rs: &RootSet) -> bool {
    let (monic, _) = p.monic().unwrap();
    let n = monic.degree().unwrap();
    let prec = 2 * rs.precision();
    let rebuilt = rs.reconstruct(prec);
    let norm = Float::with_val(prec, monic.max_coeff_abs());
    let bound = Float::with_val(prec, rs.residual_bound() * &norm) * n as u32;
    monic.coeffs().iter().zip(&rebuilt).all(|(c, r)| {
        let diff = Complex::with_val(prec, r - Complex::with_val(prec, (c, 0)));
        Float::with_val(prec, diff.abs_ref()) <= bound
    })
}

fn certification(b: &Battery, cache: &mut Cache, out: &mut Outcome) {
    let t = Instant::now();
    let keys: Vec<(&'static str, usize)> = cache.roots.keys().copied().collect();
    let mut bad = Vec::new();
    for (name, n) in &keys {
        let p = cache.poly(b, name, *n);
        if !reconstruction_ok(&p, &cache.roots[&(*name, *n)]) {
            bad.push(format!("{name}:{n}"));
        }
    }
    let mut unstable = Vec::new();
    let mut doubled = 0;
    for (name, n) in keys.iter().filter(|(_, n)| *n <= 100) {
        let p = cache.poly(b, name, *n);
        let hi = find_roots_with(&p, &RootConfig::new(2 * DIGITS)).unwrap();
        doubled += 1;
        if hi.real_flags() != cache.roots[&(*name, *n)].real_flags() {
            unstable.push(format!("{name}:{n}"));
        }
    }
    out.report(
        9,
        bad.is_empty() && unstable.is_empty(),
        format!(
            "reconstruction bound on {} root sets (failures {bad:?}); realness flags stable at {} digits on {doubled} sets (changes {unstable:?})",
            keys.len(),
            2 * DIGITS
        ),
        t,
    );
}

fn main() {
    let b = Battery::new();
    let mut cache = Cache::default();
    let mut out = Outcome { failures: 0 };
    let t = Instant::now();
    exact_eigen_relation(&b, &mut out);
    oracle_equivalence(&mut out);
    eigenvalue_formula(&b, &mut out);
    legendre_ks(&b, &mut cache, &mut out);
    cauchy_residuals(&b, &mut cache, &mut out);
    dichotomy(&b, &mut cache, &mut out);
    krall_ks(&b, &mut cache, &mut out);
    hermite_sweep(&b, &mut cache, &mut out);
    certification(&b, &mut cache, &mut out);
    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - out.failures,
        t.elapsed().as_secs_f64()
    );
    if out.failures > 0 {
        std::process::exit(1);
    }
}
