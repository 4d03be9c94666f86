//! Normalized deviation of a combined probability from the classical sum.
//!
//! Given the probabilities `p1`, `p2` of two alternatives and the observed
//! probability `p` of their union, the normalized deviation
//!
//! ```text
//! λ = (p − p1 − p2) / (2√(p1·p2))
//! ```
//!
//! places the triple in one of two regimes. For `|λ| ≤ 1` it is written as
//! `λ = cos θ` and linearized with complex amplitudes,
//! `p = |√p1 + e^{iθ}√p2|²`. For `|λ| ≥ 1` it is written as `λ = ±cosh θ` and
//! linearized over the hyperbolic algebra, `p = |√p1 ± e^{jθ}√p2|²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact;
use crate::hyperbolic::GNumber;
use crate::tolerance::{self, snap_probability};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Trigonometric,
    Hyperbolic,
    /// `|λ| = 1`: compatible with both parameterizations.
    Boundary,
    /// `p1·p2 = 0`: λ is undefined.
    Degenerate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Trigonometric => "trigonometric",
            Regime::Hyperbolic => "hyperbolic",
            Regime::Boundary => "boundary",
            Regime::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("'{other}' is not a sign (+ or -)"))),
        }
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { name, value })
    }
}

fn check_pair(p1: f64, p2: f64) -> Result<()> {
    check_probability("p1", p1)?;
    check_probability("p2", p2)
}

fn result_probability(raw: f64) -> Result<f64> {
    snap_probability(raw).ok_or(Error::NotAProbability { value: raw })
}

/// `(p − p1 − p2) / (2√(p1·p2))`, unclamped.
pub fn lambda_of(p1: f64, p2: f64, p: f64) -> Result<f64> {
    check_pair(p1, p2)?;
    check_probability("p", p)?;
    if p1 * p2 == 0.0 {
        return Err(Error::DegenerateContext { p1, p2 });
    }
    Ok((p - p1 - p2) / (2.0 * (p1 * p2).sqrt()))
}

/// Regime of a finite λ. Values within [`tolerance::PROBABILITY`] of `|λ| = 1`
/// are reported as [`Regime::Boundary`].
pub fn classify(lambda: f64) -> Regime {
    let a = lambda.abs();
    if (a - 1.0).abs() <= tolerance::PROBABILITY {
        Regime::Boundary
    } else if a < 1.0 {
        Regime::Trigonometric
    } else {
        Regime::Hyperbolic
    }
}

/// Canonical phase of λ: `(arccos λ, +)` with θ ∈ [0, π] when `|λ| ≤ 1`,
/// otherwise `(arccosh |λ|, sign λ)` with θ ≥ 0.
pub fn phase_of(lambda: f64) -> (f64, Sign) {
    match classify(lambda) {
        Regime::Hyperbolic => (lambda.abs().acosh(), Sign::of(lambda)),
        _ => (lambda.clamp(-1.0, 1.0).acos(), Sign::Plus),
    }
}

/// `p1 + p2 + 2√(p1p2) cos θ`.
pub fn interfere_trig(p1: f64, p2: f64, theta: f64) -> Result<f64> {
    check_pair(p1, p2)?;
    result_probability(p1 + p2 + 2.0 * (p1 * p2).sqrt() * theta.cos())
}

/// `p1 + p2 ± 2√(p1p2) cosh θ`.
pub fn interfere_hyp(p1: f64, p2: f64, theta: f64, sign: Sign) -> Result<f64> {
    check_pair(p1, p2)?;
    let ch = theta.cosh();
    if !ch.is_finite() {
        return Err(Error::PhaseOverflow { theta });
    }
    result_probability(p1 + p2 + sign.value() * 2.0 * (p1 * p2).sqrt() * ch)
}

/// Complex amplitudes `(√p1, e^{iθ}√p2)` whose sum has squared modulus
/// `interfere_trig(p1, p2, θ)`.
pub fn amplitudes_trig(p1: f64, p2: f64, theta: f64) -> Result<(Complex64, Complex64)> {
    check_pair(p1, p2)?;
    Ok((
        Complex64::new(p1.sqrt(), 0.0),
        Complex64::from_polar(p2.sqrt(), theta),
    ))
}

/// Hyperbolic amplitudes `(√p1, ±e^{jθ}√p2)` whose sum has 𝐆-norm
/// `interfere_hyp(p1, p2, θ, sign)`.
pub fn amplitudes_hyp(p1: f64, p2: f64, theta: f64, sign: Sign) -> Result<(GNumber, GNumber)> {
    check_pair(p1, p2)?;
    let rotor = GNumber::exp(theta)?;
    Ok((
        GNumber::real(p1.sqrt()),
        rotor.scale(sign.value() * p2.sqrt()),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterferenceRecord {
    pub p1: f64,
    pub p2: f64,
    pub p: f64,
    pub lambda: f64,
    pub regime: Regime,
    pub phase: f64,
    pub sign: Sign,
}

impl InterferenceRecord {
    /// Recomputes `p` from the fitted phase with the regime's rule. Boundary
    /// records use the trigonometric rule.
    pub fn reconstruct(&self) -> Result<f64> {
        match self.regime {
            Regime::Hyperbolic => interfere_hyp(self.p1, self.p2, self.phase, self.sign),
            Regime::Degenerate => Err(Error::DegenerateContext {
                p1: self.p1,
                p2: self.p2,
            }),
            _ => interfere_trig(self.p1, self.p2, self.phase),
        }
    }

    /// `δ = p − p1 − p2`.
    pub fn deviation(&self) -> f64 {
        self.p - self.p1 - self.p2
    }
}

pub fn fit_record(p1: f64, p2: f64, p: f64) -> Result<InterferenceRecord> {
    let lambda = lambda_of(p1, p2, p)?;
    let regime = classify(lambda);
    let (phase, sign) = phase_of(lambda);
    Ok(InterferenceRecord {
        p1,
        p2,
        p,
        lambda,
        regime,
        phase,
        sign,
    })
}

/// A trigonometric parameterization `θ(s) = arccos u(s)` sampled on a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedPhase {
    pub s: Vec<f64>,
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    /// Indices `i` where `|θ(s_{i+1}) − θ(s_i)| > π/2`.
    pub discontinuities: Vec<usize>,
}

/// Applies `θ(s) = arccos u(s)` pointwise for a caller-supplied deviation
/// `u` with `|u(s)| ≤ 1` on the grid, and flags jumps larger than π/2 between
/// adjacent samples.
pub fn parameterize<F: Fn(f64) -> f64>(grid: &[f64], u: F) -> Result<GeneralizedPhase> {
    let mut values = Vec::with_capacity(grid.len());
    let mut theta = Vec::with_capacity(grid.len());
    for &s in grid {
        let v = u(s);
        if v.is_nan() || v.abs() > 1.0 + tolerance::PROBABILITY {
            return Err(Error::InvalidGrid(format!(
                "u({s}) = {v} is outside [-1, 1]; no trigonometric phase exists"
            )));
        }
        values.push(v);
        theta.push(v.clamp(-1.0, 1.0).acos());
    }
    let discontinuities = theta
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[1] - w[0]).abs() > PI / 2.0)
        .map(|(i, _)| i)
        .collect();
    Ok(GeneralizedPhase {
        s: grid.to_vec(),
        u: values,
        theta,
        discontinuities,
    })
}

/// Exact λ for rational probabilities. `Ok(None)` when `√(p1·p2)` is
/// irrational and `p ≠ p1 + p2`.
pub fn lambda_exact(
    p1: &BigRational,
    p2: &BigRational,
    p: &BigRational,
) -> Result<Option<BigRational>> {
    for (name, v) in [("p1", p1), ("p2", p2), ("p", p)] {
        if !exact::is_probability(v) {
            return Err(Error::InvalidProbability {
                name,
                value: exact::to_f64(v),
            });
        }
    }
    if (p1 * p2).is_zero() {
        return Err(Error::DegenerateContext {
            p1: exact::to_f64(p1),
            p2: exact::to_f64(p2),
        });
    }
    let delta = p - p1 - p2;
    if delta.is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    Ok(exact::rational_sqrt(&(p1 * p2))
        .map(|root| delta / (root * BigRational::from_integer(2.into()))))
}

/// `p1 + p2 + 2√(p1p2)·λ` in exact arithmetic. λ = 0 always works; otherwise
/// `√(p1·p2)` must be rational.
pub fn interfere_exact(
    p1: &BigRational,
    p2: &BigRational,
    lambda: &BigRational,
) -> Result<BigRational> {
    let sum = p1 + p2;
    let value = if lambda.is_zero() {
        sum
    } else {
        let root = exact::rational_sqrt(&(p1 * p2))
            .ok_or_else(|| Error::Inexact(format!("sqrt({} * {}) is irrational", p1, p2)))?;
        sum + root * lambda * BigRational::from_integer(2.into())
    };
    if value.is_negative() || value > BigRational::from_integer(1.into()) {
        return Err(Error::NotAProbability {
            value: exact::to_f64(&value),
        });
    }
    Ok(value)
}
