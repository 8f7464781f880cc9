//! Hypercentral potentials as sums of tagged analytic families, and their
//! classification by origin behavior.
//!
//! The classification follows the limit of r²V(r) as r → 0:
//! zero (regular), finite nonzero (soft-singular, ±V₀ with the minus sign for
//! attraction), infinite (singular, "falling to the center"). The tagged
//! representation makes the limit exact; a sampling fallback cross-checks
//! user-composed sums because limits at r → 0 are numerically fragile.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Radii used by the numeric classification fallback.
const FALLBACK_RADII: [f64; 6] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("potential undefined at r = {r}: requires r > 0")]
    NonPositiveRadius { r: f64 },
    #[error("potential evaluation overflowed at r = {r}")]
    Overflow { r: f64 },
    #[error("harmonic frequency must be >= 0, got {omega}")]
    NegativeFrequency { omega: f64 },
    #[error("non-finite parameter {value} in {family} term")]
    NonFiniteParameter { family: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error(
        "indeterminate classification: analytic path gives {analytic:?}, \
         numeric sampling gives {numeric:?}"
    )]
    Indeterminate {
        analytic: PotentialClass,
        numeric: PotentialClass,
    },
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// One analytic term of a hypercentral potential.
///
/// Serialized form uses the `family` tag, e.g.
/// `{"family":"coulomb","Z":1.0}` or `{"family":"inverse_square","g":-0.09375}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialTerm {
    /// -Z/r.
    Coulomb {
        #[serde(rename = "Z")]
        z: f64,
    },
    /// ω²r²/2.
    Harmonic { omega: f64 },
    /// c·r^p for any real p.
    PowerLaw { c: f64, p: f64 },
    /// g/r².
    InverseSquare { g: f64 },
}

impl PotentialTerm {
    fn evaluate(&self, r: f64) -> f64 {
        match *self {
            PotentialTerm::Coulomb { z } => -z / r,
            PotentialTerm::Harmonic { omega } => 0.5 * omega * omega * r * r,
            PotentialTerm::PowerLaw { c, p } => c * r.powf(p),
            PotentialTerm::InverseSquare { g } => g / (r * r),
        }
    }

    /// Leading (coefficient, exponent) of the term as r → 0.
    fn small_r_behavior(&self) -> (f64, f64) {
        match *self {
            PotentialTerm::Coulomb { z } => (-z, -1.0),
            PotentialTerm::Harmonic { omega } => (0.5 * omega * omega, 2.0),
            PotentialTerm::PowerLaw { c, p } => (c, p),
            PotentialTerm::InverseSquare { g } => (g, -2.0),
        }
    }

    fn validate(&self) -> Result<(), PotentialError> {
        fn finite(family: &'static str, value: f64) -> Result<(), PotentialError> {
            if value.is_finite() {
                Ok(())
            } else {
                Err(PotentialError::NonFiniteParameter { family, value })
            }
        }
        match *self {
            PotentialTerm::Coulomb { z } => finite("coulomb", z),
            PotentialTerm::Harmonic { omega } => {
                finite("harmonic", omega)?;
                if omega < 0.0 {
                    return Err(PotentialError::NegativeFrequency { omega });
                }
                Ok(())
            }
            PotentialTerm::PowerLaw { c, p } => {
                finite("power_law", c)?;
                finite("power_law", p)
            }
            PotentialTerm::InverseSquare { g } => finite("inverse_square", g),
        }
    }
}

/// A hypercentral potential: the sum of its terms, evaluable for all r > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Potential {
    pub terms: Vec<PotentialTerm>,
}

/// Origin classification by lim_{r->0} r²V(r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialClass {
    /// lim r²V = 0.
    Regular,
    /// lim r²V = -V₀ < 0 (attraction).
    SoftSingularAttractive { v0: f64 },
    /// lim r²V = +V₀ > 0 (repulsion).
    SoftSingularRepulsive { v0: f64 },
    /// lim r²V = ±∞; falling to the center.
    Singular,
}

impl PotentialClass {
    /// The V₀ entering P² = (L+1/2)² - 2·V₀(signed): positive for attraction,
    /// negative for repulsion, None unless soft-singular.
    pub fn signed_v0(&self) -> Option<f64> {
        match *self {
            PotentialClass::SoftSingularAttractive { v0 } => Some(v0),
            PotentialClass::SoftSingularRepulsive { v0 } => Some(-v0),
            _ => None,
        }
    }

    pub fn is_soft_singular(&self) -> bool {
        matches!(
            self,
            PotentialClass::SoftSingularAttractive { .. }
                | PotentialClass::SoftSingularRepulsive { .. }
        )
    }

    fn agrees_with(&self, other: &PotentialClass, v0_tol: f64) -> bool {
        use PotentialClass::*;
        match (self, other) {
            (Regular, Regular) | (Singular, Singular) => true,
            (SoftSingularAttractive { v0: a }, SoftSingularAttractive { v0: b })
            | (SoftSingularRepulsive { v0: a }, SoftSingularRepulsive { v0: b }) => {
                (a - b).abs() <= v0_tol * a.abs().max(1.0)
            }
            _ => false,
        }
    }
}

impl Potential {
    pub fn from_terms(terms: Vec<PotentialTerm>) -> Self {
        Self { terms }
    }

    /// The zero potential.
    pub fn free() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn coulomb(z: f64) -> Self {
        Self::from_terms(vec![PotentialTerm::Coulomb { z }])
    }

    pub fn harmonic(omega: f64) -> Self {
        Self::from_terms(vec![PotentialTerm::Harmonic { omega }])
    }

    pub fn power_law(c: f64, p: f64) -> Self {
        Self::from_terms(vec![PotentialTerm::PowerLaw { c, p }])
    }

    pub fn inverse_square(g: f64) -> Self {
        Self::from_terms(vec![PotentialTerm::InverseSquare { g }])
    }

    pub fn plus(mut self, term: PotentialTerm) -> Self {
        self.terms.push(term);
        self
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        for term in &self.terms {
            term.validate()?;
        }
        Ok(())
    }

    /// Sum of all terms at r; overflow is reported rather than returned as ±∞.
    pub fn evaluate(&self, r: f64) -> Result<f64, PotentialError> {
        if !(r > 0.0) {
            return Err(PotentialError::NonPositiveRadius { r });
        }
        let total: f64 = self.terms.iter().map(|t| t.evaluate(r)).sum();
        if total.is_finite() {
            Ok(total)
        } else {
            Err(PotentialError::Overflow { r })
        }
    }

    /// Characteristic length scale: 1/|Z| for Coulomb, 1/√ω harmonic,
    /// 1 otherwise; the minimum over terms.
    pub fn characteristic_length(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| match *t {
                PotentialTerm::Coulomb { z } if z != 0.0 => 1.0 / z.abs(),
                PotentialTerm::Harmonic { omega } if omega > 0.0 => 1.0 / omega.sqrt(),
                _ => 1.0,
            })
            .fold(1.0_f64, f64::min)
    }

    /// Leading (coefficient, exponent) of the summed potential as r → 0.
    /// Equal exponents are combined first, so exact cancellations drop out.
    /// Returns None for the zero potential.
    fn small_r_leading(&self) -> Option<(f64, f64)> {
        let mut groups: Vec<(f64, f64)> = Vec::new();
        for term in &self.terms {
            let (coeff, exponent) = term.small_r_behavior();
            if coeff == 0.0 {
                continue;
            }
            match groups.iter_mut().find(|(_, e)| *e == exponent) {
                Some((c, _)) => *c += coeff,
                None => groups.push((coeff, exponent)),
            }
        }
        groups.retain(|(c, _)| *c != 0.0);
        groups
            .into_iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(c, e)| (c, e))
    }

    fn classify_analytic(&self) -> PotentialClass {
        match self.small_r_leading() {
            None => PotentialClass::Regular,
            Some((coeff, exponent)) => {
                if exponent > -2.0 {
                    PotentialClass::Regular
                } else if exponent == -2.0 {
                    if coeff < 0.0 {
                        PotentialClass::SoftSingularAttractive { v0: -coeff }
                    } else {
                        PotentialClass::SoftSingularRepulsive { v0: coeff }
                    }
                } else {
                    PotentialClass::Singular
                }
            }
        }
    }

    /// Samples r²V(r) on a decade ladder and fits the exponent of the trend.
    fn classify_numeric(&self) -> Result<PotentialClass, PotentialError> {
        let mut log_r = Vec::new();
        let mut log_w = Vec::new();
        let mut last: Option<f64> = None;
        for &r in FALLBACK_RADII.iter() {
            let w = r * r * self.evaluate(r)?;
            if w.abs() > 1e-280 {
                log_r.push(r.ln());
                log_w.push(w.abs().ln());
                last = Some(w);
            }
        }
        if log_r.len() < 2 {
            // r²V below noise at every sample: vanishing limit.
            return Ok(PotentialClass::Regular);
        }
        let slope = least_squares_slope(&log_r, &log_w);
        let w_last = last.expect("at least two usable samples");
        Ok(if slope > 0.5 {
            PotentialClass::Regular
        } else if slope >= -0.5 {
            if w_last < 0.0 {
                PotentialClass::SoftSingularAttractive { v0: -w_last }
            } else {
                PotentialClass::SoftSingularRepulsive { v0: w_last }
            }
        } else {
            PotentialClass::Singular
        })
    }

    /// Origin classification. Analytic off the tags, cross-checked by the
    /// sampling fallback; disagreement is reported as indeterminate.
    pub fn classify(&self) -> Result<PotentialClass, ClassifyError> {
        self.validate()?;
        let analytic = self.classify_analytic();
        let numeric = self.classify_numeric()?;
        if analytic.agrees_with(&numeric, 1e-5) {
            Ok(analytic)
        } else {
            Err(ClassifyError::Indeterminate { analytic, numeric })
        }
    }
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}
