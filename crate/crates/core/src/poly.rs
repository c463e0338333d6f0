//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order and the vector is kept
//! trimmed, so the zero polynomial is the empty vector and has no degree.
//! Floating evaluation goes through [`rug::Float`] / [`rug::Complex`] at an
//! explicit precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = Rational;

/// Extra working bits used when a caller asks for a value at a given precision.
const EVAL_GUARD_BITS: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::from(1))
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rat::from(1), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::new(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// `(x - r_1)(x - r_2)...`
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::from_coeffs(vec![Rat::from(-r), Rat::from(1)])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| Rat::from(c * s)).collect())
    }

    /// Divides by the leading coefficient. Returns the monic polynomial and
    /// the factor that was removed, or `None` for the zero polynomial.
    pub fn monic(&self) -> Option<(Poly, Rat)> {
        let lead = self.leading()?.clone();
        let inv = Rat::from(lead.recip_ref());
        Some((self.scale(&inv), lead))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Exact `j`-th derivative. The zero polynomial when `j > deg p`.
    pub fn derivative(&self, j: usize) -> Poly {
        if j == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= j {
            return Poly::zero();
        }
        let coeffs = self.coeffs[j..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let ff = falling_factorial((i + j) as u64, j as u64);
                Rat::from(c * &ff)
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Max coefficient magnitude; zero for the zero polynomial.
    pub fn max_coeff_abs(&self) -> Rat {
        self.coeffs
            .iter()
            .map(|c| Rat::from(c.abs_ref()))
            .max()
            .unwrap_or_default()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Real evaluation rounded to `prec` bits.
    pub fn eval_float(&self, x: &Float, prec: u32) -> Float {
        let work = prec + EVAL_GUARD_BITS + usize_bits(self.coeffs.len());
        let mut acc = Float::with_val(work, 0);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        Float::with_val(prec, acc)
    }

    /// Complex evaluation rounded to `prec` bits.
    pub fn eval_complex(&self, z: &Complex, prec: u32) -> Complex {
        let work = prec + EVAL_GUARD_BITS + usize_bits(self.coeffs.len());
        let mut acc = Complex::with_val(work, 0);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        Complex::with_val(prec, acc)
    }

    /// Coefficients as strings, the JSON wire form.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly, ParseError> {
        let coeffs = items
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

fn usize_bits(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`, one when `k == 0`.
pub fn falling_factorial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
    }
    acc
}

/// Parses an exact rational written as an integer literal or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    let bad = || ParseError::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num = parse_integer(num).ok_or_else(bad)?;
    let den = match den {
        Some(d) => parse_integer(d).ok_or_else(bad)?,
        None => Integer::from(1),
    };
    if den.cmp0().is_eq() {
        return Err(ParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::from((num, den)))
}

fn parse_integer(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Integer::from_str(s).ok()
}

/// Parses a decimal such as `-0.25` or `3e-2` exactly, in addition to the
/// forms accepted by [`parse_rat`]. Used for command-line values.
pub fn parse_decimal(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    if let Ok(r) = parse_rat(t) {
        return Ok(r);
    }
    let bad = || ParseError::BadRational(s.to_string());
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rat::from(Integer::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = Rat::from(10);
    if shift >= 0 {
        value *= ten.pow(shift as u32);
    } else {
        value /= ten.pow((-shift) as u32);
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => Rat::from(a + b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| Rat::from(-c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Rat::from(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Human-readable form, highest degree first: `x^3 - 3*x`, `x^2 - 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0().is_eq() {
                continue;
            }
            let negative = c.cmp0().is_lt();
            let mag = Rat::from(c.abs_ref());
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag == 1;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Poly::from_strings(&items).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        let q = p(&[3, 0, -2, 5]);
        assert_eq!(&q + &Poly::zero(), q);
        assert_eq!(&p(&[0, 2]) * &p(&[0, 0, 3]), p(&[0, 0, 0, 6]));
        assert_eq!(&q - &q, Poly::zero());
        assert_eq!((&q * &q).degree(), Some(6));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(Poly::from_i64s(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_i64s(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn derivatives() {
        let cube = Poly::monomial(Rat::from(1), 3);
        assert_eq!(cube.derivative(1), p(&[0, 0, 3]));
        assert_eq!(cube.derivative(4), Poly::zero());
        assert_eq!(p(&[-1, 0, 1]).derivative(2), p(&[2]));
        assert_eq!(cube.derivative(0), cube);
    }

    #[test]
    fn evaluation() {
        let q = p(&[-1, 0, 1]);
        assert_eq!(q.eval(&Rat::from(2)), 3);
        let s = p(&[7, -3, 4]);
        assert_eq!(s.eval(&Rat::new()), 7);
        let i = Complex::with_val(64, (0, 1));
        for prec in [53, 128, 512] {
            let v = p(&[1, 0, 1]).eval_complex(&i, prec);
            assert!(v.real().is_zero() && v.imag().is_zero());
            assert_eq!(v.prec(), (prec, prec));
        }
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(3, 5), 0);
        for n in 0..10u64 {
            assert_eq!(falling_factorial(n, 1), n);
            assert_eq!(falling_factorial(n, 0), 1);
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -3, 0, 1]).to_string(), "x^3 - 3*x");
        let leg = Poly::from_coeffs(vec![r("-1/3"), r("0"), r("1")]);
        assert_eq!(leg.to_string(), "x^2 - 1/3");
        assert_eq!(p(&[2, 0, -2]).to_string(), "-2*x^2 + 2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let leg = Poly::from_coeffs(vec![r("-1/3"), r("0"), r("1")]);
        let s = serde_json::to_string(&leg).unwrap();
        assert_eq!(s, r#"["-1/3","0","1"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, leg);
        assert!(serde_json::from_str::<Poly>(r#"["1/0"]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"["0.5"]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"["x"]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"[1]"#).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(r("4/-6"), Rat::from((-2, 3)));
        assert_eq!(r(" 10 "), 10);
        assert!(parse_rat("1/").is_err());
        assert!(parse_rat("").is_err());
        assert_eq!(parse_decimal("-0.25").unwrap(), Rat::from((-1, 4)));
        assert_eq!(parse_decimal("3e-2").unwrap(), Rat::from((3, 100)));
        assert_eq!(parse_decimal("1.5E1").unwrap(), 15);
        assert_eq!(parse_decimal("2/3").unwrap(), Rat::from((2, 3)));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal(".").is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rat::from((n, d)))
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(arb_rat(), 0..8).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), x in arb_rat()) {
            prop_assert_eq!((&a * &b).eval(&x), Rat::from(a.eval(&x) * b.eval(&x)));
            prop_assert_eq!((&a + &b).eval(&x), Rat::from(a.eval(&x) + b.eval(&x)));
        }

        #[test]
        fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative(1);
            let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn float_evaluation_stable_under_precision_doubling(
            a in prop::collection::vec(arb_rat(), 1..12).prop_map(Poly::from_coeffs),
            re in -2.0f64..2.0,
            im in -2.0f64..2.0,
            prec in 24u32..200,
        ) {
            prop_assume!(!a.is_zero());
            let z = Complex::with_val(prec, (re, im));
            let lo = a.eval_complex(&z, prec);
            let hi = a.eval_complex(&z, 2 * prec);
            let diff = Float::with_val(2 * prec, (hi - lo).abs().real());
            // Σ |a_i| |z|^i bounds the value: one rounding at `prec` plus slack.
            let modulus = Float::with_val(2 * prec, z.abs_ref());
            let mut size = Float::with_val(2 * prec, 0);
            for c in a.coeffs().iter().rev() {
                size *= &modulus;
                size += Float::with_val(2 * prec, Rat::from(c.abs_ref()));
            }
            let bound = size * Float::with_val(64, 2).pow(-(prec as i32) + 1);
            prop_assert!(diff <= bound, "diff {} bound {}", diff, bound);
        }
    }
}
