//! Classical and perturbed formulas of total probability for two dichotomic
//! variables `a` and `b`.
//!
//! The classical formula is
//!
//! ```text
//! p_j^a = p_1^b p_{1j} + p_2^b p_{2j}
//! ```
//!
//! and the perturbed one adds a cross term `2√(p_1^b p_{1j} p_2^b p_{2j})·λ_j`
//! with `λ_j = cos θ_j` (trigonometric) or `λ_j = ε_j cosh θ_j` (hyperbolic).
//! Both perturbations are the squared norm of a linear map acting on square
//! roots of the prior probabilities.
//!
//! Phases sit on the second row of the amplitude matrix,
//! `d_{1j} = √p_{1j}`, `d_{2j} = e^{iθ_j}√p_{2j}`, so that `θ_j` is the relative
//! phase between the two paths into `a_j`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact;
use crate::hyperbolic::GNumber;
use crate::interference::{check_probability, Sign};
use crate::tolerance::{self, snap_probability};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Phases {
    Trigonometric { theta: [f64; 2] },
    Hyperbolic { theta: [f64; 2], signs: [Sign; 2] },
}

impl Phases {
    pub fn theta(&self) -> [f64; 2] {
        match *self {
            Phases::Trigonometric { theta } | Phases::Hyperbolic { theta, .. } => theta,
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Phases::Trigonometric { .. } => "trig",
            Phases::Hyperbolic { .. } => "hyp",
        }
    }
}

/// Priors `p_i^b`, conditionals `cond[i][j] = p(a_j | b_i)`, and phases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContextTransform {
    pub priors: [f64; 2],
    pub cond: [[f64; 2]; 2],
    pub phases: Phases,
}

/// Sum-to-one diagnostics for the perturbed outputs. Outputs are never
/// renormalized.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationDiagnostic {
    pub sum: f64,
    pub deviation: f64,
    pub doubly_stochastic: bool,
    /// `Σ_j λ_j √(p_{1j} p_{2j})`; the outputs sum to one iff this vanishes
    /// (or the prior is degenerate).
    pub cross_condition: f64,
    pub normalized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtTransform {
    /// `x_i = √p_i^b`
    pub x: [f64; 2],
    pub d: [[Complex64; 2]; 2],
    /// `y_j = Σ_i x_i d_{ij}`
    pub y: [Complex64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GTransform {
    pub x: [f64; 2],
    pub d: [[GNumber; 2]; 2],
    pub y: [GNumber; 2],
}

impl ContextTransform {
    pub fn trig(priors: [f64; 2], cond: [[f64; 2]; 2], theta: [f64; 2]) -> Result<Self> {
        let t = Self {
            priors,
            cond,
            phases: Phases::Trigonometric { theta },
        };
        t.validate()?;
        Ok(t)
    }

    pub fn hyp(
        priors: [f64; 2],
        cond: [[f64; 2]; 2],
        theta: [f64; 2],
        signs: [Sign; 2],
    ) -> Result<Self> {
        let t = Self {
            priors,
            cond,
            phases: Phases::Hyperbolic { theta, signs },
        };
        t.validate()?;
        Ok(t)
    }

    /// Checks that every entry is a probability, the priors sum to one and
    /// each row of `cond` sums to one.
    pub fn validate(&self) -> Result<()> {
        check_probability("p1b", self.priors[0])?;
        check_probability("p2b", self.priors[1])?;
        for row in &self.cond {
            for &v in row {
                check_probability("conditional", v)?;
            }
        }
        let mut problems = Vec::new();
        let prior_sum = self.priors[0] + self.priors[1];
        if (prior_sum - 1.0).abs() > tolerance::STOCHASTIC {
            problems.push(format!("priors sum to {prior_sum}"));
        }
        for (i, row) in self.cond.iter().enumerate() {
            let s = row[0] + row[1];
            if (s - 1.0).abs() > tolerance::STOCHASTIC {
                problems.push(format!("row {} of cond sums to {s}", i + 1));
            }
        }
        for theta in self.phases.theta() {
            if !theta.is_finite() {
                problems.push(format!("phase {theta} is not finite"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidContext(problems.join("; ")))
        }
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        (0..2).all(|j| (self.cond[0][j] + self.cond[1][j] - 1.0).abs() <= tolerance::STOCHASTIC)
    }

    fn classical_term(&self, j: usize) -> f64 {
        self.priors[0] * self.cond[0][j] + self.priors[1] * self.cond[1][j]
    }

    fn cross_root(&self, j: usize) -> f64 {
        (self.priors[0] * self.cond[0][j] * self.priors[1] * self.cond[1][j]).sqrt()
    }

    /// `p_j^a = Σ_i p_i^b p_{ij}`.
    pub fn total_prob_classical(&self) -> Result<[f64; 2]> {
        self.validate()?;
        Ok([self.classical_term(0), self.classical_term(1)])
    }

    /// `p_j^a = Σ_i p_i^b p_{ij} + 2√(p_1^b p_{1j} p_2^b p_{2j}) cos θ_j`.
    pub fn total_prob_quantum(&self) -> Result<[f64; 2]> {
        self.validate()?;
        let Phases::Trigonometric { theta } = self.phases else {
            return Err(Error::ModeMismatch {
                expected: "trigonometric",
            });
        };
        let mut out = [0.0; 2];
        for j in 0..2 {
            let raw = self.classical_term(j) + 2.0 * self.cross_root(j) * theta[j].cos();
            out[j] = snap_probability(raw).ok_or(Error::NotAProbability { value: raw })?;
        }
        Ok(out)
    }

    /// `p_j^a = Σ_i p_i^b p_{ij} + 2ε_j √(p_1^b p_{1j} p_2^b p_{2j}) cosh θ_j`.
    pub fn total_prob_hyperbolic(&self) -> Result<[f64; 2]> {
        self.validate()?;
        let Phases::Hyperbolic { theta, signs } = self.phases else {
            return Err(Error::ModeMismatch {
                expected: "hyperbolic",
            });
        };
        let mut out = [0.0; 2];
        for j in 0..2 {
            let ch = theta[j].cosh();
            if !ch.is_finite() {
                return Err(Error::PhaseOverflow { theta: theta[j] });
            }
            let raw = self.classical_term(j) + 2.0 * signs[j].value() * self.cross_root(j) * ch;
            out[j] = snap_probability(raw).ok_or(Error::NotAProbability { value: raw })?;
        }
        Ok(out)
    }

    /// The perturbed outputs for whichever mode the phases carry.
    pub fn total_prob_perturbed(&self) -> Result<[f64; 2]> {
        match self.phases {
            Phases::Trigonometric { .. } => self.total_prob_quantum(),
            Phases::Hyperbolic { .. } => self.total_prob_hyperbolic(),
        }
    }

    /// The ℂ-linear map on `x_i = √p_i^b` whose output moduli squared are
    /// the trigonometric total probabilities.
    pub fn sqrt_linear_transform(&self) -> Result<SqrtTransform> {
        self.validate()?;
        let Phases::Trigonometric { theta } = self.phases else {
            return Err(Error::ModeMismatch {
                expected: "trigonometric",
            });
        };
        let x = [self.priors[0].sqrt(), self.priors[1].sqrt()];
        let d = [
            [
                Complex64::new(self.cond[0][0].sqrt(), 0.0),
                Complex64::new(self.cond[0][1].sqrt(), 0.0),
            ],
            [
                Complex64::from_polar(self.cond[1][0].sqrt(), theta[0]),
                Complex64::from_polar(self.cond[1][1].sqrt(), theta[1]),
            ],
        ];
        let y = [0, 1].map(|j| d[0][j] * x[0] + d[1][j] * x[1]);
        Ok(SqrtTransform { x, d, y })
    }

    /// The 𝐆-linear analogue: `d_{2j} = ε_j e^{jθ_j}√p_{2j}`.
    pub fn g_linear_transform(&self) -> Result<GTransform> {
        self.validate()?;
        let Phases::Hyperbolic { theta, signs } = self.phases else {
            return Err(Error::ModeMismatch {
                expected: "hyperbolic",
            });
        };
        let x = [self.priors[0].sqrt(), self.priors[1].sqrt()];
        let mut d = [[GNumber::zero(); 2]; 2];
        for j in 0..2 {
            d[0][j] = GNumber::real(self.cond[0][j].sqrt());
            d[1][j] = GNumber::exp(theta[j])?.scale(signs[j].value() * self.cond[1][j].sqrt());
        }
        let y = [0, 1].map(|j| d[0][j].scale(x[0]) + d[1][j].scale(x[1]));
        Ok(GTransform { x, d, y })
    }

    /// Sum-to-one diagnostic for a set of perturbed outputs.
    pub fn normalization(&self, outputs: [f64; 2]) -> NormalizationDiagnostic {
        let lambdas = match self.phases {
            Phases::Trigonometric { theta } => theta.map(f64::cos),
            Phases::Hyperbolic { theta, signs } => [
                signs[0].value() * theta[0].cosh(),
                signs[1].value() * theta[1].cosh(),
            ],
        };
        let cross_condition: f64 = (0..2)
            .map(|j| lambdas[j] * (self.cond[0][j] * self.cond[1][j]).sqrt())
            .sum();
        let sum = outputs[0] + outputs[1];
        let deviation = sum - 1.0;
        NormalizationDiagnostic {
            sum,
            deviation,
            doubly_stochastic: self.is_doubly_stochastic(),
            cross_condition,
            normalized: deviation.abs() <= tolerance::PROBABILITY,
        }
    }

    /// Flat key-value form: `mode`, `pb1`, `pb2`, `p11`, `p12`, `p21`, `p22`,
    /// `theta1`, `theta2` and, in hyperbolic mode, `sign1`, `sign2`.
    pub fn to_kv(&self) -> BTreeMap<&'static str, String> {
        let mut kv = BTreeMap::new();
        kv.insert("mode", self.phases.mode_name().to_string());
        kv.insert("pb1", self.priors[0].to_string());
        kv.insert("pb2", self.priors[1].to_string());
        kv.insert("p11", self.cond[0][0].to_string());
        kv.insert("p12", self.cond[0][1].to_string());
        kv.insert("p21", self.cond[1][0].to_string());
        kv.insert("p22", self.cond[1][1].to_string());
        let theta = self.phases.theta();
        kv.insert("theta1", theta[0].to_string());
        kv.insert("theta2", theta[1].to_string());
        if let Phases::Hyperbolic { signs, .. } = self.phases {
            kv.insert("sign1", signs[0].as_char().to_string());
            kv.insert("sign2", signs[1].as_char().to_string());
        }
        kv
    }

    /// Inverse of [`ContextTransform::to_kv`]. Phases accept the forms of
    /// [`parse_phase`]. A missing `mode` defaults to `trig` unless signs are
    /// present.
    pub fn from_kv<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let map: BTreeMap<&str, &str> = pairs.into_iter().collect();
        let get = |k: &str| {
            map.get(k)
                .copied()
                .ok_or_else(|| Error::Parse(format!("missing field '{k}'")))
        };
        let num = |k: &str| -> Result<f64> {
            let v = get(k)?;
            exact::parse_rational(v)
                .map(|r| exact::to_f64(&r))
                .map_err(|e| Error::Parse(format!("field '{k}': {e}")))
        };
        let phase = |k: &str| -> Result<f64> {
            parse_phase(get(k)?).map_err(|e| Error::Parse(format!("field '{k}': {e}")))
        };
        let sign = |k: &str| -> Result<Sign> {
            Sign::parse(get(k)?).map_err(|e| Error::Parse(format!("field '{k}': {e}")))
        };
        let priors = [num("pb1")?, num("pb2")?];
        let cond = [[num("p11")?, num("p12")?], [num("p21")?, num("p22")?]];
        let theta = [phase("theta1")?, phase("theta2")?];
        let mode = match map.get("mode") {
            Some(m) => *m,
            None if map.contains_key("sign1") => "hyp",
            None => "trig",
        };
        match mode {
            "trig" | "trigonometric" => Self::trig(priors, cond, theta),
            "hyp" | "hyperbolic" => {
                Self::hyp(priors, cond, theta, [sign("sign1")?, sign("sign2")?])
            }
            other => Err(Error::Parse(format!(
                "field 'mode': unknown mode '{other}'"
            ))),
        }
    }
}

/// Parses a phase: a plain number (`1.0472`), or a multiple of π written as
/// `pi`, `-pi`, `pi/3`, `2pi/3`, `2*pi/3`.
pub fn parse_phase(text: &str) -> Result<f64> {
    let s = text.trim().to_ascii_lowercase().replace(' ', "");
    let Some(idx) = s.find("pi") else {
        return exact::parse_rational(&s).map(|r| exact::to_f64(&r));
    };
    let coeff = s[..idx].trim_end_matches('*');
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => exact::to_f64(&exact::parse_rational(c)?),
    };
    let rest = &s[idx + 2..];
    let divisor = match rest.strip_prefix('/') {
        Some(d) => exact::to_f64(&exact::parse_rational(d)?),
        None if rest.is_empty() => 1.0,
        None => return Err(Error::Parse(format!("'{text}' is not a phase"))),
    };
    if divisor == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(coeff * std::f64::consts::PI / divisor)
}

/// Relative phases `θ_j = (ξ_2 + ξ_{2j}) − (ξ_1 + ξ_{1j})` reduced to
/// `[0, 2π)`, for the state `Σ_i e^{iξ_i}√p_i^b |b_i⟩` with
/// `|b_i⟩ = Σ_j e^{iξ_{ij}}√p_{ij} |a_j⟩`.
pub fn phases_from_state_expansion(xi: [[f64; 2]; 2], xi_b: [f64; 2]) -> [f64; 2] {
    [0, 1].map(|j| {
        let t = ((xi_b[1] + xi[1][j]) - (xi_b[0] + xi[0][j])).rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π.
        if t >= TAU {
            0.0
        } else {
            t
        }
    })
}

/// Exact counterpart of [`ContextTransform`] for rational inputs. Phases are
/// given by their cosines.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactContext {
    pub priors: [BigRational; 2],
    pub cond: [[BigRational; 2]; 2],
    pub cos_theta: [BigRational; 2],
}

impl ExactContext {
    pub fn validate(&self) -> Result<()> {
        let one = BigRational::one();
        let entries = self.priors.iter().chain(self.cond.iter().flatten());
        if let Some(bad) = entries.clone().find(|v| !exact::is_probability(v)) {
            return Err(Error::InvalidContext(format!("{bad} is not a probability")));
        }
        let mut problems = Vec::new();
        let prior_sum = &self.priors[0] + &self.priors[1];
        if prior_sum != one {
            problems.push(format!("priors sum to {prior_sum}"));
        }
        for (i, row) in self.cond.iter().enumerate() {
            let s = &row[0] + &row[1];
            if s != one {
                problems.push(format!("row {} of cond sums to {s}", i + 1));
            }
        }
        if self.cos_theta.iter().any(|c| c.abs() > one) {
            problems.push("cosine outside [-1, 1]".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidContext(problems.join("; ")))
        }
    }

    fn classical_term(&self, j: usize) -> BigRational {
        &self.priors[0] * &self.cond[0][j] + &self.priors[1] * &self.cond[1][j]
    }

    pub fn total_prob_classical(&self) -> Result<[BigRational; 2]> {
        self.validate()?;
        Ok([self.classical_term(0), self.classical_term(1)])
    }

    /// Exact perturbed outputs. A cross term with `cos θ_j = 0` vanishes;
    /// otherwise its square root must be rational.
    pub fn total_prob_quantum(&self) -> Result<[BigRational; 2]> {
        self.validate()?;
        let two = BigRational::from_integer(2.into());
        let mut out = [BigRational::zero(), BigRational::zero()];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut v = self.classical_term(j);
            if !self.cos_theta[j].is_zero() {
                let prod = &self.priors[0] * &self.cond[0][j] * &self.priors[1] * &self.cond[1][j];
                let root = exact::rational_sqrt(&prod)
                    .ok_or_else(|| Error::Inexact(format!("sqrt({prod}) is irrational")))?;
                v += &two * root * &self.cos_theta[j];
            }
            if !exact::is_probability(&v) {
                return Err(Error::NotAProbability {
                    value: exact::to_f64(&v),
                });
            }
            *slot = v;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, LN_2, PI};

    fn close2(a: [f64; 2], b: [f64; 2], tol: f64) -> bool {
        (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol
    }

    const HALF: [[f64; 2]; 2] = [[0.5, 0.5], [0.5, 0.5]];

    #[test]
    fn classical() {
        let t = ContextTransform::trig([0.3, 0.7], [[0.5, 0.5], [0.2, 0.8]], [0.0; 2]).unwrap();
        let out = t.total_prob_classical().unwrap();
        assert!(close2(out, [0.29, 0.71], 1e-15));

        let id = [[1.0, 0.0], [0.0, 1.0]];
        let t = ContextTransform::trig([0.3, 0.7], id, [0.0; 2]).unwrap();
        assert_eq!(t.total_prob_classical().unwrap(), [0.3, 0.7]);

        let t = ContextTransform::trig([1.0, 0.0], [[0.4, 0.6], [0.2, 0.8]], [0.0; 2]).unwrap();
        assert_eq!(t.total_prob_classical().unwrap(), [0.4, 0.6]);
    }

    #[test]
    fn validation_names_the_offender() {
        let err =
            ContextTransform::trig([0.3, 0.6], [[0.5, 0.5], [0.2, 0.7]], [0.0; 2]).unwrap_err();
        let Error::InvalidContext(msg) = err else {
            panic!("wrong error")
        };
        assert!(msg.contains("priors sum to"));
        assert!(msg.contains("row 2"));
        assert!(!msg.contains("row 1"));
        assert!(ContextTransform::trig([0.3, 0.7], [[1.5, -0.5], [0.2, 0.8]], [0.0; 2]).is_err());
    }

    #[test]
    fn quantum() {
        let t = ContextTransform::trig([0.5, 0.5], HALF, [0.0, PI]).unwrap();
        assert!(close2(t.total_prob_quantum().unwrap(), [1.0, 0.0], 1e-15));

        let t =
            ContextTransform::trig([0.3, 0.7], [[0.5, 0.5], [0.2, 0.8]], [FRAC_PI_2; 2]).unwrap();
        let classical = t.total_prob_classical().unwrap();
        assert!(close2(t.total_prob_quantum().unwrap(), classical, 1e-15));

        let t = ContextTransform::trig([0.5, 0.5], HALF, [FRAC_PI_3, PI - FRAC_PI_3]).unwrap();
        assert!(close2(t.total_prob_quantum().unwrap(), [0.75, 0.25], 1e-15));

        let t = ContextTransform::trig([0.5, 0.5], [[0.9, 0.1], [0.9, 0.1]], [0.0; 2]).unwrap();
        assert!(matches!(
            t.total_prob_quantum(),
            Err(Error::NotAProbability { .. })
        ));
    }

    #[test]
    fn sqrt_transform() {
        let cond = [[0.36, 0.64], [0.5, 0.5]];
        let t = ContextTransform::trig([1.0, 0.0], cond, [0.0; 2]).unwrap();
        let s = t.sqrt_linear_transform().unwrap();
        assert!((s.y[0].re - 0.6).abs() < 1e-15 && (s.y[1].re - 0.8).abs() < 1e-15);

        let t = ContextTransform::trig([0.5, 0.5], HALF, [0.0, PI]).unwrap();
        let s = t.sqrt_linear_transform().unwrap();
        assert!(close2(
            [s.y[0].norm_sqr(), s.y[1].norm_sqr()],
            [1.0, 0.0],
            1e-15
        ));

        let h = ContextTransform::hyp([0.5, 0.5], HALF, [0.0; 2], [Sign::Plus; 2]).unwrap();
        assert!(matches!(
            h.sqrt_linear_transform(),
            Err(Error::ModeMismatch { .. })
        ));
        assert!(matches!(
            h.total_prob_quantum(),
            Err(Error::ModeMismatch { .. })
        ));
        assert!(matches!(
            t.total_prob_hyperbolic(),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn state_expansion_phases() {
        assert_eq!(
            phases_from_state_expansion([[0.0; 2]; 2], [0.0; 2]),
            [0.0, 0.0]
        );
        let t = phases_from_state_expansion([[0.0; 2]; 2], [0.0, FRAC_PI_3]);
        assert!(close2(t, [FRAC_PI_3, FRAC_PI_3], 1e-15));
        let t = phases_from_state_expansion([[0.0, 0.0], [PI, 0.0]], [0.0; 2]);
        assert!(close2(t, [PI, 0.0], 1e-15));
        let t = phases_from_state_expansion([[0.0, 0.0], [-FRAC_PI_2, 0.0]], [0.0; 2]);
        assert!(close2(t, [1.5 * PI, 0.0], 1e-15));
    }

    #[test]
    fn hyperbolic() {
        let t =
            ContextTransform::hyp([0.5, 0.5], HALF, [0.0; 2], [Sign::Plus, Sign::Minus]).unwrap();
        assert!(close2(
            t.total_prob_hyperbolic().unwrap(),
            [1.0, 0.0],
            1e-15
        ));

        let t =
            ContextTransform::hyp([0.5, 0.5], HALF, [LN_2; 2], [Sign::Plus, Sign::Minus]).unwrap();
        match t.total_prob_hyperbolic() {
            Err(Error::NotAProbability { value }) => assert!((value - (0.5 + 0.625)).abs() < 1e-12),
            other => panic!("expected range error, got {other:?}"),
        }

        let cond = [[0.3, 0.7], [0.6, 0.4]];
        for theta in [[0.0, 0.0], [1.0, 3.0], [7.0, 0.2]] {
            let t =
                ContextTransform::hyp([1.0, 0.0], cond, theta, [Sign::Minus, Sign::Plus]).unwrap();
            assert_eq!(t.total_prob_hyperbolic().unwrap(), [0.3, 0.7]);
        }
    }

    #[test]
    fn g_transform_matches() {
        let t =
            ContextTransform::hyp([0.9, 0.1], HALF, [0.2, 0.7], [Sign::Minus, Sign::Plus]).unwrap();
        let out = t.total_prob_hyperbolic().unwrap();
        let g = t.g_linear_transform().unwrap();
        assert!(close2([g.y[0].norm_sq(), g.y[1].norm_sq()], out, 1e-14));
    }

    #[test]
    fn normalization_detector() {
        let t =
            ContextTransform::trig([0.4, 0.6], [[0.7, 0.3], [0.3, 0.7]], [1.0, PI - 1.0]).unwrap();
        let diag = t.normalization(t.total_prob_quantum().unwrap());
        assert!(diag.doubly_stochastic && diag.normalized);
        assert!(diag.cross_condition.abs() < 1e-15);

        let t = ContextTransform::trig([0.4, 0.6], [[0.7, 0.3], [0.3, 0.7]], [1.0, 1.0]).unwrap();
        let diag = t.normalization(t.total_prob_quantum().unwrap());
        assert!(!diag.normalized);
        assert!((diag.sum - (1.0 + 2.0 * (0.24f64).sqrt() * diag.cross_condition)).abs() < 1e-14);
    }

    #[test]
    fn key_value_round_trip() {
        let t = ContextTransform::hyp(
            [0.25, 0.75],
            [[0.5, 0.5], [0.1, 0.9]],
            [0.5, 1.5],
            [Sign::Plus, Sign::Minus],
        )
        .unwrap();
        let kv = t.to_kv();
        let back = ContextTransform::from_kv(kv.iter().map(|(k, v)| (*k, v.as_str()))).unwrap();
        assert_eq!(back, t);

        let cfg = [
            ("pb1", "1/2"),
            ("pb2", "1/2"),
            ("p11", "0.5"),
            ("p12", "0.5"),
            ("p21", "0.5"),
            ("p22", "0.5"),
            ("theta1", "0"),
            ("theta2", "pi"),
        ];
        let t = ContextTransform::from_kv(cfg).unwrap();
        assert_eq!(t.phases, Phases::Trigonometric { theta: [0.0, PI] });

        let err = ContextTransform::from_kv([("pb1", "1/2")]).unwrap_err();
        assert!(err.to_string().contains("missing field 'pb2'"));
    }

    #[test]
    fn phase_syntax() {
        assert_eq!(parse_phase("pi").unwrap(), PI);
        assert_eq!(parse_phase("-pi").unwrap(), -PI);
        assert!((parse_phase("pi/3").unwrap() - FRAC_PI_3).abs() < 1e-15);
        assert_eq!(parse_phase("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_phase("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_phase("0.5").unwrap(), 0.5);
        assert!(parse_phase("pix").is_err());
        assert!(parse_phase("pi/0").is_err());
    }

    #[test]
    fn exact_collapse() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let c = ExactContext {
            priors: [r(3, 10), r(7, 10)],
            cond: [[r(1, 2), r(1, 2)], [r(1, 5), r(4, 5)]],
            cos_theta: [r(0, 1), r(0, 1)],
        };
        let classical = c.total_prob_classical().unwrap();
        assert_eq!(classical, [r(29, 100), r(71, 100)]);
        assert_eq!(&classical[0] + &classical[1], r(1, 1));
        assert_eq!(c.total_prob_quantum().unwrap(), classical);

        let c = ExactContext {
            priors: [r(1, 2), r(1, 2)],
            cond: [[r(1, 2), r(1, 2)], [r(1, 2), r(1, 2)]],
            cos_theta: [r(1, 2), r(-1, 2)],
        };
        assert_eq!(c.total_prob_quantum().unwrap(), [r(3, 4), r(1, 4)]);

        let bad = ExactContext {
            priors: [r(1, 2), r(1, 3)],
            ..c
        };
        assert!(bad.validate().is_err());
    }
}
