//! Classical orthogonal polynomial systems: three-term recurrences, moment
//! functionals with Gram-Schmidt, and the second-order Bochner operators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::operator::DiffOperator;
use crate::poly::{parse_decimal, Poly, Rat};

/// A catalog family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Jacobi { alpha: Rat, beta: Rat },
    Legendre,
    Chebyshev1,
    Chebyshev2,
    Hermite,
    Laguerre { alpha: Rat },
}

impl Family {
    pub fn jacobi(alpha: Rat, beta: Rat) -> Result<Family> {
        let f = Family::Jacobi { alpha, beta };
        f.check()?;
        Ok(f)
    }

    pub fn laguerre(alpha: Rat) -> Result<Family> {
        let f = Family::Laguerre { alpha };
        f.check()?;
        Ok(f)
    }

    /// One instance of every family; Jacobi with `α = 1, β = 2`, Laguerre with `α = 0`.
    pub fn catalog() -> Vec<Family> {
        vec![
            Family::Hermite,
            Family::Legendre,
            Family::Jacobi {
                alpha: Rat::from(1),
                beta: Rat::from(2),
            },
            Family::Chebyshev1,
            Family::Chebyshev2,
            Family::Laguerre { alpha: Rat::new() },
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Jacobi { .. } => "jacobi",
            Family::Legendre => "legendre",
            Family::Chebyshev1 => "chebyshev1",
            Family::Chebyshev2 => "chebyshev2",
            Family::Hermite => "hermite",
            Family::Laguerre { .. } => "laguerre",
        }
    }

    fn check(&self) -> Result<()> {
        let minus_one = Rat::from(-1);
        let bad = |reason: &str| Error::BadParameters {
            family: self.to_string(),
            reason: reason.into(),
        };
        match self {
            Family::Jacobi { alpha, beta } => {
                if *alpha <= minus_one || *beta <= minus_one {
                    return Err(bad("need alpha > -1 and beta > -1"));
                }
            }
            Family::Laguerre { alpha } if *alpha <= minus_one => {
                return Err(bad("need alpha > -1"));
            }
            _ => {}
        }
        Ok(())
    }

    /// Jacobi parameters for the compact families.
    fn jacobi_params(&self) -> Option<(Rat, Rat)> {
        let half = Rat::from((1, 2));
        match self {
            Family::Jacobi { alpha, beta } => Some((alpha.clone(), beta.clone())),
            Family::Legendre => Some((Rat::new(), Rat::new())),
            Family::Chebyshev1 => Some((-half.clone(), -half)),
            Family::Chebyshev2 => Some((half.clone(), half)),
            _ => None,
        }
    }

    /// Support interval for compact-type families, `None` for Hermite and Laguerre.
    pub fn interval(&self) -> Option<(Rat, Rat)> {
        self.jacobi_params().map(|_| (Rat::from(-1), Rat::from(1)))
    }

    pub fn is_compact(&self) -> bool {
        self.interval().is_some()
    }

    /// `(A_n, B_n)` in `p_{n+1} = (x - A_n) p_n - B_n p_{n-1}`, with `B_0 = 0`.
    pub fn recurrence(&self, n: usize) -> (Rat, Rat) {
        let nr = Rat::from(n as u64);
        match self {
            Family::Hermite => (Rat::new(), nr),
            Family::Laguerre { alpha } => {
                let a = Rat::from(2u32 * &nr) + alpha + 1u32;
                let b = Rat::from(&nr + alpha) * &nr;
                (a, b)
            }
            Family::Legendre => {
                let n2 = Rat::from(nr.square_ref());
                let b = if n == 0 {
                    Rat::new()
                } else {
                    Rat::from(&n2 / (Rat::from(4u32 * n2.clone()) - 1u32))
                };
                (Rat::new(), b)
            }
            Family::Chebyshev1 => {
                let b = match n {
                    0 => Rat::new(),
                    1 => Rat::from((1, 2)),
                    _ => Rat::from((1, 4)),
                };
                (Rat::new(), b)
            }
            Family::Chebyshev2 => (
                Rat::new(),
                if n == 0 {
                    Rat::new()
                } else {
                    Rat::from((1, 4))
                },
            ),
            Family::Jacobi { alpha, beta } => jacobi_recurrence(alpha, beta, n),
        }
    }

    /// The classical second-order operator `a_2 D² + a_1 D` with
    /// `a_2 ∈ {1 - x², 1, x}` (sign fixed so the x-free part is positive).
    pub fn bochner_operator(&self) -> Result<DiffOperator> {
        self.check()?;
        let (a2, a1) = match self {
            Family::Hermite => (Poly::from_i64s(&[1]), Poly::from_i64s(&[0, -1])),
            Family::Laguerre { alpha } => (
                Poly::x(),
                Poly::from_coeffs(vec![Rat::from(alpha + 1u32), Rat::from(-1)]),
            ),
            _ => {
                let (alpha, beta) = self.jacobi_params().expect("compact family");
                let c0 = Rat::from(&beta - &alpha);
                let c1 = -(Rat::from(&alpha + &beta) + 2u32);
                (
                    Poly::from_i64s(&[1, 0, -1]),
                    Poly::from_coeffs(vec![c0, c1]),
                )
            }
        };
        Ok(DiffOperator::new([(2, a2), (1, a1)])?)
    }
}

fn jacobi_recurrence(alpha: &Rat, beta: &Rat, n: usize) -> (Rat, Rat) {
    let ab = Rat::from(alpha + beta);
    let nr = Rat::from(n as u64);
    // s = 2n + α + β
    let s = Rat::from(2u32 * &nr) + &ab;
    let a = if n == 0 {
        Rat::from(beta - alpha) / (Rat::from(&ab + 2u32))
    } else {
        let num = Rat::from(beta.square_ref()) - Rat::from(alpha.square_ref());
        num / (Rat::from(&s * Rat::from(&s + 2u32)))
    };
    let b = match n {
        0 => Rat::new(),
        1 => {
            let num = Rat::from(alpha + 1u32) * Rat::from(beta + 1u32) * 4u32;
            let den = Rat::from(Rat::from(&ab + 2u32).square_ref()) * Rat::from(&ab + 3u32);
            num / den
        }
        _ => {
            let num =
                Rat::from(&nr + alpha) * Rat::from(&nr + beta) * Rat::from(&nr + &ab) * &nr * 4u32;
            let den = Rat::from(s.square_ref()) * Rat::from(&s + 1u32) * Rat::from(&s - 1u32);
            num / den
        }
    };
    (a, b)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Jacobi { alpha, beta } => write!(f, "jacobi:alpha={alpha},beta={beta}"),
            Family::Laguerre { alpha } => write!(f, "laguerre:alpha={alpha}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `hermite`, `legendre`, `chebyshev1`, `chebyshev2`,
    /// `laguerre[:alpha=a]` and `jacobi:alpha=a,beta=b`, optionally
    /// prefixed with `family=`.
    fn from_str(s: &str) -> Result<Family> {
        let spec = s.trim();
        let spec = spec.strip_prefix("family=").unwrap_or(spec);
        let (name, params) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let bad =
            |why: &str| Error::from(ParseError::BadFamilySpec(s.to_string(), why.to_string()));
        let mut alpha = None;
        let mut beta = None;
        if let Some(params) = params {
            for item in params.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| bad("expected key=value"))?;
                let value = parse_decimal(value.trim())?;
                let slot = match key.trim() {
                    "alpha" => &mut alpha,
                    "beta" => &mut beta,
                    _ => return Err(bad("unknown parameter")),
                };
                if slot.replace(value).is_some() {
                    return Err(bad("repeated parameter"));
                }
            }
        }
        let name = name.trim().to_ascii_lowercase();
        let plain = |f: Family| {
            if alpha.is_some() || beta.is_some() {
                Err(bad("family takes no parameters"))
            } else {
                Ok(f)
            }
        };
        match name.as_str() {
            "hermite" => plain(Family::Hermite),
            "legendre" => plain(Family::Legendre),
            "chebyshev1" | "chebyshev-1" | "chebyshev" => plain(Family::Chebyshev1),
            "chebyshev2" | "chebyshev-2" => plain(Family::Chebyshev2),
            "laguerre" => {
                if beta.is_some() {
                    return Err(bad("laguerre takes only alpha"));
                }
                Family::laguerre(alpha.unwrap_or_default())
            }
            "jacobi" => match (alpha, beta) {
                (Some(a), Some(b)) => Family::jacobi(a, b),
                _ => Err(bad("jacobi needs alpha and beta")),
            },
            _ => Err(ParseError::UnknownFamily(name).into()),
        }
    }
}

/// Monic orthogonal polynomials of one family, built by the recurrence and
/// cached by degree.
#[derive(Debug, Clone)]
pub struct RecurrenceOps {
    family: Family,
    polys: Vec<Poly>,
}

impl RecurrenceOps {
    pub fn new(family: Family) -> Result<Self> {
        family.check()?;
        Ok(RecurrenceOps {
            family,
            polys: vec![Poly::one()],
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn get(&mut self, n: usize) -> &Poly {
        while self.polys.len() <= n {
            let k = self.polys.len() - 1;
            let (a, b) = self.family.recurrence(k);
            let shifted = &self.polys[k] * &Poly::from_coeffs(vec![-a, Rat::from(1)]);
            let next = if k == 0 {
                shifted
            } else {
                &shifted - &self.polys[k - 1].scale(&b)
            };
            self.polys.push(next);
        }
        &self.polys[n]
    }
}

/// Monic degree-`n` orthogonal polynomial of the family.
pub fn classical_monic(family: &Family, n: usize) -> Result<Poly> {
    let mut ops = RecurrenceOps::new(family.clone())?;
    Ok(ops.get(n).clone())
}

/// Catalog operator for a family, see [`Family::bochner_operator`].
pub fn bochner_operator(family: &Family) -> Result<DiffOperator> {
    family.bochner_operator()
}

/// A linear functional on polynomials given by its moments `m_k = σ(x^k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentFunctional {
    #[serde(with = "rat_strings")]
    moments: Vec<Rat>,
}

mod rat_strings {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::poly::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect()
    }
}

impl MomentFunctional {
    pub fn new(moments: Vec<Rat>) -> Self {
        MomentFunctional { moments }
    }

    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("moments serialize")
    }

    /// `∫_a^b x^k w(x) dx` for `k < len`.
    pub fn from_polynomial_weight(w: &Poly, a: &Rat, b: &Rat, len: usize) -> Self {
        let moments = (0..len)
            .map(|k| {
                let integrand = w * &Poly::monomial(Rat::from(1), k);
                let mut antideriv = vec![Rat::new()];
                for (i, c) in integrand.coeffs().iter().enumerate() {
                    antideriv.push(Rat::from(c / (i as u64 + 1)));
                }
                let f = Poly::from_coeffs(antideriv);
                f.eval(b) - f.eval(a)
            })
            .collect();
        MomentFunctional { moments }
    }

    /// Lebesgue measure on `[-1, 1]`: `m_k = (1 + (-1)^k) / (k + 1)`.
    pub fn uniform(len: usize) -> Self {
        Self::from_polynomial_weight(&Poly::one(), &Rat::from(-1), &Rat::from(1), len)
    }

    /// `(1 - x²)^{-1/2}` on `[-1, 1]` divided by π: `m_{2j} = C(2j, j) / 4^j`.
    pub fn chebyshev1(len: usize) -> Self {
        let moments = (0..len)
            .map(|k| {
                if k % 2 == 1 {
                    return Rat::new();
                }
                let j = (k / 2) as u32;
                let c = rug::Integer::from(rug::Integer::binomial_u(2 * j, j));
                Rat::from((c, rug::Integer::from(1) << (2 * j)))
            })
            .collect();
        MomentFunctional { moments }
    }

    /// `(1 - x)^α (1 + x)^β` on `[-1, 1]` for nonnegative integer exponents.
    pub fn jacobi(alpha: u32, beta: u32, len: usize) -> Self {
        let w = &Poly::from_i64s(&[1, -1]).pow(alpha) * &Poly::from_i64s(&[1, 1]).pow(beta);
        Self::from_polynomial_weight(&w, &Rat::from(-1), &Rat::from(1), len)
    }

    pub fn moments(&self) -> &[Rat] {
        &self.moments
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// `σ(p)`.
    pub fn apply(&self, p: &Poly) -> Result<Rat> {
        let needed = p.coeffs().len();
        if needed > self.moments.len() {
            return Err(Error::InsufficientMoments {
                needed,
                have: self.moments.len(),
            });
        }
        let mut acc = Rat::new();
        for (c, m) in p.coeffs().iter().zip(&self.moments) {
            acc += Rat::from(c * m);
        }
        Ok(acc)
    }

    /// `det(m_{i+j})_{0 <= i, j <= k}`.
    pub fn hankel_determinant(&self, k: usize) -> Result<Rat> {
        if 2 * k + 1 > self.moments.len() {
            return Err(Error::InsufficientMoments {
                needed: 2 * k + 1,
                have: self.moments.len(),
            });
        }
        let size = k + 1;
        let mut m: Vec<Vec<Rat>> = (0..size)
            .map(|i| (0..size).map(|j| self.moments[i + j].clone()).collect())
            .collect();
        let mut det = Rat::from(1);
        for col in 0..size {
            let Some(pivot) = (col..size).find(|&r| m[r][col] != 0) else {
                return Ok(Rat::new());
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= &m[col][col];
            for r in col + 1..size {
                let factor = Rat::from(&m[r][col] / &m[col][col]);
                let (upper, lower) = m.split_at_mut(r);
                for (target, pivot_entry) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *target -= Rat::from(&factor * pivot_entry);
                }
            }
        }
        Ok(det)
    }
}

/// `⟨p, q⟩ = σ(p q)`.
pub fn inner_product(sigma: &MomentFunctional, p: &Poly, q: &Poly) -> Result<Rat> {
    sigma.apply(&(p * q))
}

/// Monic `p_0..p_n` orthogonal for `σ`. Fails at the first order `k` with
/// `⟨p_k, p_k⟩ <= 0`.
pub fn gram_schmidt_ops(sigma: &MomentFunctional, n: usize) -> Result<Vec<Poly>> {
    if 2 * n + 1 > sigma.len() {
        return Err(Error::InsufficientMoments {
            needed: 2 * n + 1,
            have: sigma.len(),
        });
    }
    let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
    let mut norms: Vec<Rat> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let xk = Poly::monomial(Rat::from(1), k);
        let mut p = xk.clone();
        for (q, norm) in out.iter().zip(&norms) {
            let c = inner_product(sigma, &xk, q)? / norm;
            p = &p - &q.scale(&c);
        }
        let norm = inner_product(sigma, &p, &p)?;
        if norm <= 0 {
            return Err(Error::NotPositiveDefinite {
                order: k,
                hankel: sigma.hankel_determinant(k)?.to_string(),
            });
        }
        out.push(p);
        norms.push(norm);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rat;

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn small_degree_examples() {
        assert_eq!(classical_monic(&Family::Hermite, 1).unwrap(), Poly::x());
        assert_eq!(
            classical_monic(&Family::Legendre, 2).unwrap().to_string(),
            "x^2 - 1/3"
        );
        assert_eq!(
            classical_monic(&Family::Chebyshev1, 2).unwrap().to_string(),
            "x^2 - 1/2"
        );
        assert_eq!(
            classical_monic(&Family::Hermite, 3).unwrap().to_string(),
            "x^3 - 3*x"
        );
        assert_eq!(
            classical_monic(&Family::Chebyshev2, 2).unwrap().to_string(),
            "x^2 - 1/4"
        );
        assert_eq!(
            classical_monic(&Family::laguerre(Rat::new()).unwrap(), 2).unwrap(),
            Poly::from_i64s(&[2, -4, 1])
        );
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(
            Family::jacobi(Rat::from(-1), Rat::new()),
            Err(Error::BadParameters { .. })
        ));
        assert!(Family::laguerre(r("-3/2")).is_err());
        let bad = Family::Jacobi {
            alpha: Rat::from(-2),
            beta: Rat::new(),
        };
        assert!(classical_monic(&bad, 2).is_err());
        assert!(bad.bochner_operator().is_err());
    }

    #[test]
    fn family_tags() {
        let f: Family = "jacobi:alpha=1,beta=2".parse().unwrap();
        assert_eq!(
            f,
            Family::Jacobi {
                alpha: Rat::from(1),
                beta: Rat::from(2)
            }
        );
        assert_eq!(f.to_string(), "jacobi:alpha=1,beta=2");
        assert_eq!("family=hermite".parse::<Family>().unwrap(), Family::Hermite);
        assert_eq!("Legendre".parse::<Family>().unwrap(), Family::Legendre);
        assert_eq!(
            "laguerre".parse::<Family>().unwrap(),
            Family::Laguerre { alpha: Rat::new() }
        );
        assert_eq!(
            "jacobi:alpha=-0.5,beta=1/2"
                .parse::<Family>()
                .unwrap()
                .to_string(),
            "jacobi:alpha=-1/2,beta=1/2"
        );
        for bad in [
            "jacobi:alpha=1",
            "hermite:alpha=1",
            "jacobi:alpha=1,beta=2,beta=3",
            "jacobi:gamma=1,beta=0",
        ] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
        assert!(matches!(
            "bessel".parse::<Family>(),
            Err(Error::Parse(ParseError::UnknownFamily(_)))
        ));
        for f in Family::catalog() {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn catalog_operators() {
        let h = Family::Hermite.bochner_operator().unwrap();
        assert_eq!(h.term(2), Poly::from_i64s(&[1]));
        assert_eq!(h.term(1), Poly::from_i64s(&[0, -1]));
        let l = Family::Legendre.bochner_operator().unwrap();
        assert_eq!(l.term(2), Poly::from_i64s(&[1, 0, -1]));
        assert_eq!(l.term(1), Poly::from_i64s(&[0, -2]));
        let j = Family::jacobi(Rat::from(1), Rat::from(2))
            .unwrap()
            .bochner_operator()
            .unwrap();
        assert_eq!(j.term(1), Poly::from_i64s(&[1, -5]));
    }

    #[test]
    fn eigen_relation_for_catalog() {
        for f in Family::catalog() {
            let op = f.bochner_operator().unwrap();
            for n in 0..=10 {
                let p = classical_monic(&f, n).unwrap();
                assert_eq!(op.apply(&p), p.scale(&op.eigenvalue(n)), "{f} n={n}");
            }
        }
    }

    #[test]
    fn oracle_agreement() {
        for f in Family::catalog() {
            let op = f.bochner_operator().unwrap();
            let mut ops = RecurrenceOps::new(f.clone()).unwrap();
            for n in 0..=25 {
                assert_eq!(&op.eigenpolynomial(n).unwrap(), ops.get(n), "{f} n={n}");
            }
        }
    }

    #[test]
    fn inner_products() {
        let u = MomentFunctional::uniform(8);
        assert_eq!(
            u.moments()[..5],
            [r("2"), r("0"), r("2/3"), r("0"), r("2/5")]
        );
        assert_eq!(inner_product(&u, &Poly::x(), &Poly::x()).unwrap(), r("2/3"));
        let q = Poly::from_coeffs(vec![r("-1/3"), Rat::new(), Rat::from(1)]);
        assert_eq!(inner_product(&u, &Poly::x(), &q).unwrap(), 0);
        assert_eq!(inner_product(&u, &Poly::one(), &Poly::one()).unwrap(), 2);
        assert!(matches!(
            inner_product(&u, &Poly::x().pow(4), &Poly::x().pow(4)),
            Err(Error::InsufficientMoments { needed: 9, have: 8 })
        ));
    }

    #[test]
    fn gram_schmidt_examples() {
        let u = MomentFunctional::uniform(5);
        let ps = gram_schmidt_ops(&u, 2).unwrap();
        assert_eq!(ps[0], Poly::one());
        assert_eq!(ps[1], Poly::x());
        assert_eq!(ps[2].to_string(), "x^2 - 1/3");
        assert_eq!(
            gram_schmidt_ops(&MomentFunctional::new(vec![r("3")]), 0).unwrap(),
            vec![Poly::one()]
        );
        let c = gram_schmidt_ops(&MomentFunctional::chebyshev1(5), 2).unwrap();
        assert_eq!(c[2].to_string(), "x^2 - 1/2");
    }

    #[test]
    fn not_positive_definite() {
        let sigma = MomentFunctional::new(vec![r("1"), r("2"), r("1")]);
        assert_eq!(sigma.hankel_determinant(1).unwrap(), -3);
        assert_eq!(
            gram_schmidt_ops(&sigma, 1),
            Err(Error::NotPositiveDefinite {
                order: 1,
                hankel: "-3".into()
            })
        );
        let ok = MomentFunctional::new(vec![r("1"), r("0"), r("1")]);
        assert!(gram_schmidt_ops(&ok, 1).is_ok());
        let zero_mass = MomentFunctional::new(vec![r("0")]);
        assert!(matches!(
            gram_schmidt_ops(&zero_mass, 0),
            Err(Error::NotPositiveDefinite { order: 0, .. })
        ));
    }

    #[test]
    fn gram_schmidt_matches_recurrence() {
        let cases = [
            (MomentFunctional::uniform(25), Family::Legendre),
            (MomentFunctional::chebyshev1(25), Family::Chebyshev1),
            (
                MomentFunctional::jacobi(1, 2, 25),
                Family::jacobi(Rat::from(1), Rat::from(2)).unwrap(),
            ),
        ];
        for (sigma, family) in cases {
            let ps = gram_schmidt_ops(&sigma, 12).unwrap();
            let mut ops = RecurrenceOps::new(family.clone()).unwrap();
            for (n, p) in ps.iter().enumerate() {
                assert_eq!(p, ops.get(n), "{family} n={n}");
            }
            // Three-term recurrence with B_n the ratio of norms.
            for n in 1..ps.len() - 1 {
                let norm = |p: &Poly| inner_product(&sigma, p, p).unwrap();
                let b = norm(&ps[n]) / norm(&ps[n - 1]);
                assert!(b > 0);
                let xp = &Poly::x() * &ps[n];
                let a = inner_product(&sigma, &xp, &ps[n]).unwrap() / norm(&ps[n]);
                let lhs = &(&ps[n + 1] - &(&xp - &ps[n].scale(&a))) + &ps[n - 1].scale(&b);
                assert!(lhs.is_zero(), "{family} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_operator_against_gram_schmidt() {
        for alpha in 0..=3u32 {
            for beta in 0..=3u32 {
                let sigma = MomentFunctional::jacobi(alpha, beta, 17);
                let ps = gram_schmidt_ops(&sigma, 8).unwrap();
                let op = Family::jacobi(Rat::from(alpha), Rat::from(beta))
                    .unwrap()
                    .bochner_operator()
                    .unwrap();
                for (n, p) in ps.iter().enumerate() {
                    assert_eq!(
                        &op.eigenpolynomial(n).unwrap(),
                        p,
                        "alpha={alpha} beta={beta} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn hankel_positive_for_measures() {
        let u = MomentFunctional::uniform(11);
        for k in 0..=5 {
            assert!(u.hankel_determinant(k).unwrap() > 0);
        }
    }

    #[test]
    fn moments_json() {
        let sigma =
            MomentFunctional::from_json(r#"{"moments": ["2", "0", "2/3", "0", "2/5"]}"#).unwrap();
        assert_eq!(sigma, MomentFunctional::uniform(5));
        assert_eq!(sigma.to_json(), r#"{"moments":["2","0","2/3","0","2/5"]}"#);
        assert!(MomentFunctional::from_json(r#"{"moments": ["x"]}"#).is_err());
        assert!(MomentFunctional::from_json(r#"{"moments": [], "extra": 1}"#).is_err());
    }
}
