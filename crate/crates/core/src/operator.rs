//! Finite-order differential operators `Σ_{k=1}^{N} a_k(x) d^k/dx^k` with
//! polynomial coefficients, and their monic polynomial eigenfunctions.
//!
//! When `deg a_k <= k` for every `k`, the operator maps polynomials of
//! degree `n` to polynomials of degree at most `n`. In the monomial basis
//! it is then triangular, the diagonal entry at `x^n` is the eigenvalue
//! `λ_n = Σ c_k n(n-1)...(n-k+1)` (with `c_k` the `x^k` coefficient of
//! `a_k`), and the monic eigenpolynomial of degree `n` falls out of a back
//! substitution whenever `λ_n` differs from every lower `λ_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::poly::{falling_factorial, Poly, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    /// `terms[k - 1]` is `a_k`; the last entry is nonzero.
    terms: Vec<Poly>,
}

impl DiffOperator {
    /// Builds an operator from `(k, a_k)` pairs. Orders must be distinct
    /// and at least 1; zero coefficients are dropped.
    pub fn new<I>(terms: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = (usize, Poly)>,
    {
        let mut slots: Vec<Option<Poly>> = Vec::new();
        for (k, a) in terms {
            if k == 0 {
                return Err(ParseError::ZeroOrder(k));
            }
            if slots.len() < k {
                slots.resize(k, None);
            }
            if slots[k - 1].is_some() {
                return Err(ParseError::DuplicateOrder(k));
            }
            slots[k - 1] = Some(a);
        }
        let mut terms: Vec<Poly> = slots.into_iter().map(Option::unwrap_or_default).collect();
        while terms.last().is_some_and(Poly::is_zero) {
            terms.pop();
        }
        if terms.is_empty() {
            return Err(ParseError::EmptyOperator);
        }
        Ok(DiffOperator { terms })
    }

    /// `coeffs[0]` is `a_1`, `coeffs[1]` is `a_2`, and so on.
    pub fn from_coefficients(coeffs: Vec<Poly>) -> Result<Self, ParseError> {
        Self::new(coeffs.into_iter().enumerate().map(|(i, a)| (i + 1, a)))
    }

    /// The order `N`.
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `a_k`, the zero polynomial when absent.
    pub fn term(&self, k: usize) -> Poly {
        match k {
            0 => Poly::zero(),
            _ => self.terms.get(k - 1).cloned().unwrap_or_default(),
        }
    }

    /// `a_N`.
    pub fn leading(&self) -> &Poly {
        self.terms.last().expect("operator has at least one term")
    }

    /// `(k, a_k)` for every nonzero term, ascending in `k`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i + 1, a))
    }

    /// The `x^k` coefficient of `a_k`.
    pub fn spectral_coeff(&self, k: usize) -> Rat {
        self.term(k).coeff(k)
    }

    pub fn scale(&self, s: &Rat) -> DiffOperator {
        DiffOperator {
            terms: self.terms.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn validate(&self) -> AdmissibilityReport {
        let mut violations = Vec::new();
        let mut has_equality_k = Vec::new();
        for (k, a) in self.terms() {
            let d = a.degree().expect("nonzero term");
            if d > k {
                violations.push((k, d));
            } else if d == k {
                has_equality_k.push(k);
            }
        }
        let n = self.order();
        AdmissibilityReport {
            admissible: violations.is_empty() && !has_equality_k.is_empty(),
            spectral_growth: self.leading().degree() == Some(n),
            violations,
            has_equality_k,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.validate().admissible
    }

    fn require_admissible(&self) -> Result<()> {
        let report = self.validate();
        if report.admissible {
            Ok(())
        } else if let Some((k, d)) = report.violations.first() {
            Err(Error::NotAdmissible(format!("deg a_{k} = {d} > {k}")))
        } else {
            Err(Error::NotAdmissible("no k with deg a_k = k".into()))
        }
    }

    /// `λ_n = Σ_k c_k n(n-1)...(n-k+1)`.
    pub fn eigenvalue(&self, n: usize) -> Rat {
        let mut acc = Rat::new();
        for (k, a) in self.terms() {
            let c = a.coeff(k);
            if c.cmp0().is_ne() {
                acc += c * falling_factorial(n as u64, k as u64);
            }
        }
        acc
    }

    /// `Σ_k a_k p^{(k)}`, exactly.
    pub fn apply(&self, p: &Poly) -> Poly {
        self.terms().fold(Poly::zero(), |acc, (k, a)| {
            let dk = p.derivative(k);
            if dk.is_zero() {
                acc
            } else {
                &acc + &(a * &dk)
            }
        })
    }

    /// The unique monic eigenpolynomial of degree `n`. Fails with
    /// [`Error::DegenerateSpectrum`] when some `λ_j = λ_n` with `j < n`
    /// leaves the triangular system singular there.
    pub fn eigenpolynomial(&self, n: usize) -> Result<Poly> {
        let eig = self.eigenpolynomial_with(n, Degeneracy::Reject)?;
        Ok(eig.poly)
    }

    pub fn eigenpolynomial_with(&self, n: usize, mode: Degeneracy) -> Result<Eigenpolynomial> {
        self.require_admissible()?;
        let lambdas: Vec<Rat> = (0..=n).map(|j| self.eigenvalue(j)).collect();
        let lambda_n = lambdas[n].clone();

        let mut coeffs = vec![Rat::new(); n + 1];
        let mut rhs = vec![Rat::new(); n + 1];
        let mut free = Vec::new();
        let mut inconsistent = Vec::new();

        coeffs[n] = Rat::from(1);
        self.scatter_below_diagonal(n, &coeffs[n], &mut rhs);
        for i in (0..n).rev() {
            let gap = Rat::from(&lambda_n - &lambdas[i]);
            if gap.cmp0().is_ne() {
                coeffs[i] = Rat::from(&rhs[i] / &gap);
            } else if rhs[i].cmp0().is_eq() {
                free.push(i);
            } else {
                inconsistent.push(i);
            }
            if coeffs[i].cmp0().is_ne() {
                let b = coeffs[i].clone();
                self.scatter_below_diagonal(i, &b, &mut rhs);
            }
        }

        free.reverse();
        inconsistent.reverse();
        let blocked = !inconsistent.is_empty() || (mode == Degeneracy::Reject && !free.is_empty());
        if blocked {
            let mut indices: Vec<usize> = free.iter().chain(&inconsistent).copied().collect();
            indices.sort_unstable();
            return Err(Error::DegenerateSpectrum {
                indices,
                inconsistent,
            });
        }
        Ok(Eigenpolynomial {
            n,
            eigenvalue: lambda_n,
            poly: Poly::from_coeffs(coeffs),
            free_indices: free,
        })
    }

    /// Adds the strictly-lower part of `op(b x^j)` into `rhs`.
    fn scatter_below_diagonal(&self, j: usize, b: &Rat, rhs: &mut [Rat]) {
        for (k, a) in self.terms() {
            if k > j {
                break;
            }
            let scaled = Rat::from(b * &falling_factorial(j as u64, k as u64));
            for (m, c) in a.coeffs().iter().enumerate().take(k) {
                if c.cmp0().is_ne() {
                    rhs[j - k + m] += Rat::from(c * &scaled);
                }
            }
        }
    }

    /// Checks whether `a_N = C ((x-a)(x-b))^{N/2}` with rational `a < b`.
    /// Returns `(C, a, b)`.
    pub fn leading_interval(&self) -> Option<(Rat, Rat, Rat)> {
        let n = self.order();
        if !n.is_multiple_of(2) || self.leading().degree() != Some(n) {
            return None;
        }
        let (monic, scale) = self.leading().monic()?;
        let m = (n / 2) as u32;
        // q = x^2 + s x + t with q^m = monic; read s and t off the top coefficients.
        let mf = Rat::from(m);
        let s = Rat::from(&monic.coeff(n - 1) / &mf);
        let binom = Rat::from(m * m.saturating_sub(1) / 2);
        let t = Rat::from((monic.coeff(n - 2) - binom * Rat::from(s.square_ref())) / &mf);
        let q = Poly::from_coeffs(vec![t.clone(), s.clone(), Rat::from(1)]);
        if q.pow(m) != monic {
            return None;
        }
        let disc = Rat::from(s.square_ref()) - Rat::from(4) * t;
        let root = rational_sqrt(&disc)?;
        if root.cmp0().is_le() {
            return None;
        }
        let a = Rat::from((-s.clone() - &root) / 2);
        let b = Rat::from((-s + &root) / 2);
        Some((scale, a, b))
    }
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.cmp0().is_lt() {
        return None;
    }
    let (num, den) = (r.numer(), r.denom());
    if !num.is_perfect_square() || !den.is_perfect_square() {
        return None;
    }
    Some(Rat::from((num.clone().sqrt(), den.clone().sqrt())))
}

/// How [`DiffOperator::eigenpolynomial_with`] treats free coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Degeneracy {
    #[default]
    Reject,
    /// Set free coordinates to zero and report them.
    ZeroFree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenpolynomial {
    pub n: usize,
    pub eigenvalue: Rat,
    pub poly: Poly,
    /// Coordinates fixed to zero by [`Degeneracy::ZeroFree`].
    pub free_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// `(k, deg a_k)` with `deg a_k > k`.
    pub violations: Vec<(usize, usize)>,
    pub has_equality_k: Vec<usize>,
    /// `deg a_N = N`, i.e. `λ_n` grows like `n^N`.
    pub spectral_growth: bool,
}

/// JSON wire form: `{"terms":[{"k":2,"coeffs":["-1","0","1"]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub k: usize,
    pub coeffs: Poly,
}

impl From<&DiffOperator> for OperatorSpec {
    fn from(op: &DiffOperator) -> Self {
        let mut terms: Vec<TermSpec> = op
            .terms()
            .map(|(k, a)| TermSpec {
                k,
                coeffs: a.clone(),
            })
            .collect();
        terms.reverse();
        OperatorSpec { terms }
    }
}

impl TryFrom<OperatorSpec> for DiffOperator {
    type Error = ParseError;

    fn try_from(spec: OperatorSpec) -> Result<Self, ParseError> {
        DiffOperator::new(spec.terms.into_iter().map(|t| (t.k, t.coeffs)))
    }
}

impl DiffOperator {
    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        let spec: OperatorSpec =
            serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        DiffOperator::try_from(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OperatorSpec::from(self)).expect("operator spec serializes")
    }
}

impl Serialize for DiffOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        OperatorSpec::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiffOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = OperatorSpec::deserialize(deserializer)?;
        DiffOperator::try_from(spec).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, a) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a}) D^{k}")?;
        }
        Ok(())
    }
}
