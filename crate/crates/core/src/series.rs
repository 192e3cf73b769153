//! Truncated Laurent series with exact rational coefficients.
//!
//! A [`TruncSeries`] is either exact (a Laurent polynomial, all
//! coefficients known) or truncated at a precision `N` (coefficients known
//! exactly for exponents `< N`, unknown from `N` on). Arithmetic tracks the
//! largest precision the result supports: sums truncate to the smaller
//! precision, and a product is known below `min(N₁ + v₂, N₂ + v₁)` where
//! `v_k` is a lower bound on the valuation of the other factor.
//!
//! Valuation queries distinguish three cases: a certified finite valuation,
//! a certified zero series (exact only), and "no nonzero coefficient in the
//! known range", which is an error. To keep downstream decisions away from
//! the truncation boundary, a finite valuation is only certified when its
//! witness coefficient sits at least [`PRECISION_SLACK`] exponents below the
//! precision.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::rational::Rat;
use crate::Result;

/// Margin between a valuation witness and the truncation boundary.
pub const PRECISION_SLACK: i64 = 8;

/// A Laurent series over the rationals, exact or truncated.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    /// Nonzero coefficients by exponent; all exponents are below `prec`
    /// when the series is truncated.
    coeffs: BTreeMap<i64, Rat>,
    /// `None` for an exact Laurent polynomial, `Some(n)` when coefficients
    /// are only known for exponents `< n`.
    prec: Option<i64>,
}

impl TruncSeries {
    /// The exact zero series.
    pub fn zero() -> TruncSeries {
        TruncSeries {
            coeffs: BTreeMap::new(),
            prec: None,
        }
    }

    /// The exact monomial `c·t^exp`.
    pub fn monomial(exp: i64, c: Rat) -> TruncSeries {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        TruncSeries { coeffs, prec: None }
    }

    pub fn one() -> TruncSeries {
        TruncSeries::monomial(0, Rat::one())
    }

    pub fn t_power(exp: i64) -> TruncSeries {
        TruncSeries::monomial(exp, Rat::one())
    }

    /// An exact Laurent polynomial from (exponent, coefficient) terms.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> TruncSeries {
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.entry(e).or_insert(Rat::zero());
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries { coeffs, prec: None }
    }

    /// The same series truncated at precision `n` (known below `n` only).
    pub fn with_prec(&self, n: i64) -> TruncSeries {
        let prec = match self.prec {
            None => n,
            Some(p) => p.min(n),
        };
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&e, _)| e < prec)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        TruncSeries {
            coeffs,
            prec: Some(prec),
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True only for the exact zero series.
    pub fn is_exactly_zero(&self) -> bool {
        self.prec.is_none() && self.coeffs.is_empty()
    }

    /// The coefficient of `t^k` if it is known, `None` if `k` is beyond the
    /// precision.
    pub fn coeff(&self, k: i64) -> Option<Rat> {
        match self.prec {
            Some(p) if k >= p => None,
            _ => Some(self.coeffs.get(&k).cloned().unwrap_or(Rat::zero())),
        }
    }

    /// Smallest exponent with a nonzero known coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Certified valuation: `Ok(Some(v))` when a nonzero coefficient sits
    /// safely below the precision, `Ok(None)` for the exact zero series, and
    /// a precision error when no decision can be certified.
    pub fn certified_valuation(&self) -> Result<Option<i64>> {
        match (self.valuation(), self.prec) {
            (Some(v), None) => Ok(Some(v)),
            (Some(v), Some(p)) if v < p - PRECISION_SLACK => Ok(Some(v)),
            (Some(v), Some(p)) => Err(Error::PrecisionExhausted(format!(
                "valuation witness at t^{v} is within {PRECISION_SLACK} of precision {p}"
            ))),
            (None, None) => Ok(None),
            (None, Some(p)) => Err(Error::PrecisionExhausted(format!(
                "no nonzero coefficient below precision {p}"
            ))),
        }
    }

    /// Lower bound on the valuation: the valuation itself, or the precision
    /// when every known coefficient vanishes.
    fn valuation_bound(&self) -> Option<i64> {
        self.valuation().or(self.prec)
    }

    pub fn scale(&self, c: Rat) -> TruncSeries {
        if c.is_zero() {
            return match self.prec {
                None => TruncSeries::zero(),
                Some(p) => TruncSeries::zero().with_prec(p),
            };
        }
        TruncSeries {
            coeffs: self.coeffs.iter().map(|(&e, a)| (e, a * &c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> TruncSeries {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
            prec: self.prec.map(|p| p + k),
        }
    }

    /// Drops all terms with exponent `≥ below`, as an exact polynomial when
    /// everything kept was known.
    pub fn truncate_terms(&self, below: i64) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&e, _)| e < below)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        let prec = match self.prec {
            Some(p) if below > p => Some(p),
            _ => None,
        };
        TruncSeries { coeffs, prec }
    }

    fn add_impl(&self, other: &TruncSeries) -> TruncSeries {
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(p), None) | (None, Some(p)) => Some(p),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert(Rat::zero());
            *entry += c;
        }
        coeffs.retain(|&e, c| !c.is_zero() && prec.map_or(true, |p| e < p));
        TruncSeries { coeffs, prec }
    }

    fn mul_impl(&self, other: &TruncSeries) -> TruncSeries {
        // Zero is absorbing regardless of the other factor's precision.
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return TruncSeries::zero();
        }
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            _ => {
                let p1 = self
                    .prec
                    .and_then(|p| other.valuation_bound().map(|v| p + v));
                let p2 = other
                    .prec
                    .and_then(|p| self.valuation_bound().map(|v| p + v));
                match (p1, p2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    // Both factors have empty known coefficients; no finite
                    // exponent of the product is known.
                    (None, None) => Some(i64::MIN),
                }
            }
        };
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                if prec.map_or(true, |p| e1 + e2 < p) {
                    let entry = coeffs.entry(e1 + e2).or_insert(Rat::zero());
                    *entry += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries { coeffs, prec }
    }

    /// Multiplicative inverse. Exact monomials invert exactly; a truncated
    /// series inverts up to the precision its leading term supports. An
    /// exact non-monomial polynomial has an infinite inverse expansion, so
    /// it must be truncated (see [`TruncSeries::with_prec`]) first.
    pub fn invert(&self) -> Result<TruncSeries> {
        if self.is_exactly_zero() {
            return Err(Error::NotAUnit(None));
        }
        if self.coeffs.len() == 1 && self.is_exact() {
            let (&e, c) = self.coeffs.iter().next().unwrap();
            return Ok(TruncSeries::monomial(-e, c.recip()));
        }
        if self.is_exact() {
            return Err(Error::InvalidArgument(
                "inverse of a non-monomial polynomial is an infinite series; \
                 truncate to a precision first"
                    .into(),
            ));
        }
        let v = match self.certified_valuation()? {
            Some(v) => v,
            None => return Err(Error::NotAUnit(None)),
        };
        let p = self.prec.expect("truncated series");
        // Normalize to valuation zero: u = t^v·(a₀ + a₁t + …), a₀ ≠ 0.
        let m = p - v; // known length of the unit part
        let a = |k: i64| self.coeffs.get(&(v + k)).cloned().unwrap_or(Rat::zero());
        let mut w = vec![Rat::zero(); m as usize];
        w[0] = a(0).recip();
        for k in 1..m {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += a(j) * &w[(k - j) as usize];
            }
            w[k as usize] = -acc / a(0);
        }
        let coeffs = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - v, c))
            .collect();
        // (t^v·unit)⁻¹ = t^{−v}·unit⁻¹, with the unit part known below m.
        Ok(TruncSeries {
            coeffs,
            prec: Some(m - v),
        })
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.add_impl(rhs)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.add_impl(&-rhs)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            prec: self.prec,
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = self.prec {
            write!(f, " + O(t^{p})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
