//! The two-dimensional hyperbolic (split-complex) algebra 𝐆.
//!
//! Elements are `x + jy` with `j² = 1`. The "norm" `|z|² = z·z̄ = x² − y²` is
//! indefinite: it vanishes on the light cone `x = ±y`, which is exactly where
//! the zero divisors live. Elements with `|z|² ≥ 0` form the multiplicative
//! semigroup 𝐆₊, and those with `|z|² > 0` the group 𝐆₊*.
//!
//! [`GNumber`] is generic over its scalar so the algebraic laws can be checked
//! exactly with `BigRational` components. The transcendental pieces
//! ([`GNumber::exp`], [`GNumber::polar`]) are only defined for `f64`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, ToPrimitive};
use serde::Serialize;

use crate::tolerance;
use crate::{Error, Result};

/// Scalar types usable as components of a [`GNumber`].
pub trait Scalar: Clone + PartialOrd + Num + Neg<Output = Self> + ToPrimitive + Debug {}

impl<T> Scalar for T where T: Clone + PartialOrd + Num + Neg<Output = T> + ToPrimitive + Debug {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GNumber<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> GNumber<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// The hyperbolic unit `j`.
    pub fn j() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn real(x: T) -> Self {
        Self::new(x, T::zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.clone(), -self.y.clone())
    }

    /// `x² − y²`; may be negative.
    pub fn norm_sq(&self) -> T {
        self.x.clone() * self.x.clone() - self.y.clone() * self.y.clone()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Membership in the semigroup 𝐆₊ = {z : |z|² ≥ 0}.
    pub fn in_plus(&self) -> bool {
        self.norm_sq() >= T::zero()
    }

    /// Membership in the group 𝐆₊* = {z : |z|² > 0}.
    pub fn in_plus_star(&self) -> bool {
        self.norm_sq() > T::zero()
    }

    /// Nonzero elements with `|z|² = 0` (the light cone) are zero divisors.
    pub fn is_zero_divisor(&self) -> bool {
        !self.is_zero() && self.norm_sq().is_zero()
    }

    /// `1/z = z̄ / |z|²`, defined on 𝐆₊*.
    ///
    /// Elements with negative norm are invertible in the algebra as well, but
    /// the group structure this crate works with is 𝐆₊*, so they are rejected.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n <= T::zero() {
            return Err(Error::NotInGPlusStar {
                norm_sq: n.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::new(self.x.clone() / n.clone(), -self.y.clone() / n))
    }
}

impl<T: Scalar> Add for GNumber<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for GNumber<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul for GNumber<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let x = self.x.clone() * rhs.x.clone() + self.y.clone() * rhs.y.clone();
        let y = self.x * rhs.y + rhs.x * self.y;
        Self::new(x, y)
    }
}

impl<T: Scalar> Neg for GNumber<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Scalar> Add for &GNumber<T> {
    type Output = GNumber<T>;

    fn add(self, rhs: Self) -> GNumber<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Scalar> Mul for &GNumber<T> {
    type Output = GNumber<T>;

    fn mul(self, rhs: Self) -> GNumber<T> {
        self.clone() * rhs.clone()
    }
}

/// Polar form `z = sign · |z| · e^{jθ}` of an element of 𝐆₊*.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GPolar {
    /// The sign of `x`, `±1`.
    pub sign: i8,
    pub modulus: f64,
    pub phase: f64,
}

impl GPolar {
    pub fn reconstruct(&self) -> Result<GNumber> {
        let unit = GNumber::exp(self.phase)?;
        Ok(unit.scale(f64::from(self.sign) * self.modulus))
    }
}

impl GNumber<f64> {
    /// Hyperbolic Euler formula `e^{jθ} = cosh θ + j sinh θ`.
    pub fn exp(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::PhaseOverflow { theta });
        }
        let (c, s) = (theta.cosh(), theta.sinh());
        if !c.is_finite() || !s.is_finite() {
            return Err(Error::PhaseOverflow { theta });
        }
        Ok(Self::new(c, s))
    }

    /// Decomposes `z ∈ 𝐆₊*` as `sign x · |z| · e^{jθ}` with `θ = artanh(y/x)`.
    ///
    /// The phase is unique: `x·sign x = |z| cosh θ` fixes `cosh θ` and the
    /// sign of `y·sign x` fixes the sign of `θ`.
    pub fn polar(&self) -> Result<GPolar> {
        let n = self.norm_sq();
        if n.is_nan() || n <= 0.0 {
            return Err(Error::NotInGPlusStar { norm_sq: n });
        }
        // x² > y² ≥ 0 forces x ≠ 0.
        debug_assert!(self.x != 0.0);
        let sign: i8 = if self.x > 0.0 { 1 } else { -1 };
        let modulus = n.sqrt();
        let phase = (self.y / self.x).atanh();
        Ok(GPolar {
            sign,
            modulus,
            phase,
        })
    }

    /// Same as [`GNumber::inverse`] but computed through the polar form,
    /// `1/z = (sign x / |z|) e^{−jθ}`.
    pub fn inverse_polar(&self) -> Result<Self> {
        let polar = self.polar()?;
        Ok(Self::exp(-polar.phase)?.scale(f64::from(polar.sign) / polar.modulus))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.x - other.x).abs() <= tol && (self.y - other.y).abs() <= tol
    }
}

/// Maximum component-wise deviation between a polar reconstruction and `z`,
/// relative to the larger component of `z`.
pub fn polar_round_trip_error(z: &GNumber) -> Result<f64> {
    let back = z.polar()?.reconstruct()?;
    let scale = z.x.abs().max(z.y.abs()).max(1.0);
    Ok(((back.x - z.x).abs().max((back.y - z.y).abs())) / scale)
}

/// True when `z` and its polar reconstruction agree to the shared
/// reconstruction tolerance.
pub fn polar_round_trips(z: &GNumber) -> bool {
    polar_round_trip_error(z).is_ok_and(|e| e <= tolerance::RECONSTRUCTION)
}
