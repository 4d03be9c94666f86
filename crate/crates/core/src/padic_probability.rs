//! The p-adic rule for adding probabilistic alternatives,
//! `P = |α₁ + εα₂|²_p` with `P_i = |α_i|²_p` and `|ε|_p = 1`.
//!
//! The strong triangle inequality splits every amplitude pair into three
//! cases:
//!
//! - A, `P₁ > P₂`: `P = P₁` and `λ = −½√(P₂/P₁)`;
//! - B, `P₁ < P₂`: `P = P₂` and `λ = −½√(P₁/P₂)`;
//! - C, `P₁ = P₂`: writing `α_i = p^l ε_i`, `P = c·P₁` with
//!   `c = |ε₁ + εε₂|²_p ∈ [0, 1]` and `λ = c/2 − 1`.
//!
//! So `λ ∈ [−1, 0)` and `θ = arccos λ ∈ (π/2, π]`: a restricted window of the
//! ordinary trigonometric rule. All of P, λ and c are exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact;
use crate::padic::{integer_order, PadicRational, Prime};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicAmplitudePair {
    alpha1: PadicRational,
    alpha2: PadicRational,
    epsilon: PadicRational,
}

impl PadicAmplitudePair {
    /// Requires a common prime, nonzero amplitudes in the unit ball
    /// (`|α_i|_p ≤ 1`, so that `P_i ≤ 1`) and a unit `ε`.
    pub fn new(
        alpha1: PadicRational,
        alpha2: PadicRational,
        epsilon: PadicRational,
    ) -> Result<Self> {
        let p = alpha1.prime();
        for other in [&alpha2, &epsilon] {
            if other.prime() != p {
                return Err(Error::PrimeMismatch {
                    left: p.get(),
                    right: other.prime().get(),
                });
            }
        }
        for (name, a) in [("alpha1", &alpha1), ("alpha2", &alpha2)] {
            match a.order().finite() {
                None => return Err(Error::InvalidAmplitude(format!("{name} is zero"))),
                Some(v) if v < 0 => {
                    return Err(Error::InvalidAmplitude(format!(
                        "|{name}|_{p} = {p}^{} exceeds 1, so its probability exceeds 1",
                        -v
                    )))
                }
                Some(_) => {}
            }
        }
        if !epsilon.is_unit() {
            return Err(Error::InvalidAmplitude(format!(
                "epsilon = {epsilon} is not a {p}-adic unit"
            )));
        }
        Ok(Self {
            alpha1,
            alpha2,
            epsilon,
        })
    }

    /// Parses the three values over the same prime.
    pub fn parse(p: Prime, alpha1: &str, alpha2: &str, epsilon: &str) -> Result<Self> {
        Self::new(
            PadicRational::parse(p, alpha1)?,
            PadicRational::parse(p, alpha2)?,
            PadicRational::parse(p, epsilon)?,
        )
    }

    pub fn prime(&self) -> Prime {
        self.alpha1.prime()
    }

    pub fn alpha1(&self) -> &PadicRational {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &PadicRational {
        &self.alpha2
    }

    pub fn epsilon(&self) -> &PadicRational {
        &self.epsilon
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PadicCase {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PadicInterference {
    pub case: PadicCase,
    #[serde(serialize_with = "ser_ratio")]
    pub p: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub p1: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub p2: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: BigRational,
    /// `|ε₁ + εε₂|²_p`, present in case C only.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub c: Option<BigRational>,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::fmt_ratio(r))
}

fn ser_opt_ratio<S: serde::Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

impl PadicInterference {
    /// `θ = arccos λ`.
    pub fn theta(&self) -> f64 {
        exact::to_f64(&self.lambda).clamp(-1.0, 1.0).acos()
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `√(a/b)` for `a, b` exact even powers of `p`.
fn ratio_root(a: &BigRational, b: &BigRational) -> BigRational {
    exact::rational_sqrt(&(a / b)).expect("probabilities are even powers of p")
}

/// Evaluates the p-adic rule and its case decomposition.
pub fn padic_interfere(pair: &PadicAmplitudePair) -> PadicInterference {
    let p1 = pair.alpha1.abs_p_sq();
    let p2 = pair.alpha2.abs_p_sq();
    let combined = pair
        .alpha2
        .mul(&pair.epsilon)
        .and_then(|t| pair.alpha1.add(&t))
        .expect("primes checked on construction");
    let p = combined.abs_p_sq();
    let (case, lambda, c) = match p1.cmp(&p2) {
        std::cmp::Ordering::Greater => (PadicCase::A, -half() * ratio_root(&p2, &p1), None),
        std::cmp::Ordering::Less => (PadicCase::B, -half() * ratio_root(&p1, &p2), None),
        std::cmp::Ordering::Equal => {
            let (_, e1) = pair.alpha1.unit_decomposition().expect("nonzero");
            let (_, e2) = pair.alpha2.unit_decomposition().expect("nonzero");
            let unit_sum = e2
                .mul(&pair.epsilon)
                .and_then(|t| e1.add(&t))
                .expect("primes checked on construction");
            let c = unit_sum.abs_p_sq();
            let lambda = &c * half() - BigRational::one();
            (PadicCase::C, lambda, Some(c))
        }
    };
    PadicInterference {
        case,
        p,
        p1,
        p2,
        lambda,
        c,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaRangeCheck {
    pub case: PadicCase,
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: BigRational,
    pub theta: f64,
    /// Cases A/B: `λ ∈ (−½, 0)`; case C: `λ ∈ [−1, −½]`.
    pub within_claimed_range: bool,
}

pub fn lambda_range_check(pair: &PadicAmplitudePair) -> LambdaRangeCheck {
    let r = padic_interfere(pair);
    let minus_half = -half();
    let minus_one = -BigRational::one();
    let within = match r.case {
        PadicCase::A | PadicCase::B => r.lambda > minus_half && r.lambda < BigRational::zero(),
        PadicCase::C => r.lambda >= minus_one && r.lambda <= minus_half,
    };
    LambdaRangeCheck {
        case: r.case,
        theta: r.theta(),
        lambda: r.lambda,
        within_claimed_range: within,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlitPoint {
    pub epsilon: u64,
    /// `v_p(1 + ε)`
    pub valuation: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub p_exact: BigRational,
}

impl SlitPoint {
    pub fn p_float(&self) -> f64 {
        exact::to_f64(&self.p_exact)
    }
}

/// The symmetric two-slit sweep with `ε₁ = ε₂ = 1` and `A = p^{−2l}`:
/// `P(ε) = A·p^{−2 v_p(1+ε)}` for every natural `ε ≤ eps_max` not divisible
/// by `p`.
pub fn slit_profile(p: Prime, l: u32, eps_max: u64) -> Vec<SlitPoint> {
    let a = p.pow(-2 * i64::from(l));
    (1..=eps_max)
        .filter(|e| e % p.get() != 0)
        .map(|epsilon| {
            let one_plus = BigInt::from(epsilon) + 1;
            let valuation = integer_order(&one_plus, p).expect("1 + ε > 0");
            let p_exact = &a * p.pow(-2 * valuation as i64);
            SlitPoint {
                epsilon,
                valuation,
                p_exact,
            }
        })
        .collect()
}

/// CSV rendering of a slit sweep: `epsilon,v_p_of_1_plus_epsilon,P_exact,P_float`.
pub fn slit_profile_csv(points: &[SlitPoint]) -> String {
    let mut out = String::from("epsilon,v_p_of_1_plus_epsilon,P_exact,P_float\n");
    for pt in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            pt.epsilon,
            pt.valuation,
            exact::fmt_ratio(&pt.p_exact),
            crate::format::g12(pt.p_float())
        ));
    }
    out
}
