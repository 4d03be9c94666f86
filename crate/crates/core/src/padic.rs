//! Exact p-adic valuation arithmetic on the rationals.
//!
//! A [`PadicRational`] is a reduced fraction paired with a prime `p`. Its
//! p-order `v` (the exponent of `p` in the numerator minus the exponent in the
//! denominator) is computed once at construction; `|x|_p = p^{−v}` and
//! `|0|_p = 0`. All comparisons of valuations are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact;
use crate::{Error, Result};

/// A prime number, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^k` as an exact rational, for any integer `k`.
    pub fn pow(self, k: i64) -> BigRational {
        let base = num_traits::pow(self.as_bigint(), k.unsigned_abs() as usize);
        if k >= 0 {
            BigRational::from_integer(base)
        } else {
            BigRational::new(BigInt::one(), base)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A p-order: a finite integer, or `+∞` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinity)
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinity) => Ordering::Less,
            (Order::Infinity, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinity, Order::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinity,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(v) => s.serialize_i64(*v),
            Order::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Multiplicity of `p` in a nonzero integer.
pub fn integer_order(n: &BigInt, p: Prime) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = p.as_bigint();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicRational {
    p: Prime,
    value: BigRational,
    order: Order,
}

impl PadicRational {
    pub fn new(p: Prime, numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_ratio(
            p,
            BigRational::new(numerator, denominator),
        ))
    }

    pub fn from_ratio(p: Prime, value: BigRational) -> Self {
        let order = match (
            integer_order(value.numer(), p),
            integer_order(value.denom(), p),
        ) {
            (None, _) => Order::Infinity,
            (Some(n), Some(d)) => Order::Finite(n as i64 - d as i64),
            (Some(_), None) => unreachable!("reduced denominator is nonzero"),
        };
        Self { p, value, order }
    }

    pub fn from_integer(p: Prime, n: i64) -> Self {
        Self::from_ratio(p, BigRational::from_integer(n.into()))
    }

    pub fn zero(p: Prime) -> Self {
        Self::from_integer(p, 0)
    }

    pub fn one(p: Prime) -> Self {
        Self::from_integer(p, 1)
    }

    /// Parses `num/den`, an integer, or a terminating decimal.
    pub fn parse(p: Prime, text: &str) -> Result<Self> {
        Ok(Self::from_ratio(p, exact::parse_rational(text)?))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The exponent `v` with `|x|_p = p^{−v}`.
    pub fn order(&self) -> Order {
        self.order
    }

    /// `|x|_p` as an exact rational.
    pub fn abs_p(&self) -> BigRational {
        match self.order {
            Order::Finite(v) => self.p.pow(-v),
            Order::Infinity => BigRational::zero(),
        }
    }

    pub fn abs_p_f64(&self) -> f64 {
        exact::to_f64(&self.abs_p())
    }

    /// `|x|²_p`, the p-adic probability of an amplitude.
    pub fn abs_p_sq(&self) -> BigRational {
        let a = self.abs_p();
        &a * &a
    }

    pub fn is_unit(&self) -> bool {
        self.order == Order::Finite(0)
    }

    /// Splits `x` as `p^l · ε` with `|ε|_p = 1`. `None` for zero.
    pub fn unit_decomposition(&self) -> Option<(i64, PadicRational)> {
        let l = self.order.finite()?;
        let unit = Self {
            p: self.p,
            value: &self.value * self.p.pow(-l),
            order: Order::Finite(0),
        };
        Some((l, unit))
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch {
                left: self.p.get(),
                right: other.p.get(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(Self::from_ratio(self.p, &self.value + &other.value))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(Self::from_ratio(self.p, &self.value - &other.value))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(Self {
            p: self.p,
            value: &self.value * &other.value,
            order: self.order + other.order,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_ratio(self.p, &self.value / &other.value))
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            value: -self.value.clone(),
            order: self.order,
        }
    }

    /// The ultrametric `ρ_p(x, y) = |x − y|_p`.
    pub fn distance(&self, other: &Self) -> Result<BigRational> {
        Ok(self.sub(other)?.abs_p())
    }

    /// The first `count` canonical digits of the expansion
    /// `x = Σ_{j ≥ v} a_j p^j`, `a_j ∈ {0, …, p−1}`, starting at `j = v`.
    pub fn digits(&self, count: usize) -> PadicExpansion {
        let Some((v, unit)) = self.unit_decomposition() else {
            return PadicExpansion {
                p: self.p,
                leading_exponent: Order::Infinity,
                digits: Vec::new(),
            };
        };
        // The unit's expansion is the base-p representation of its residue
        // modulo p^count.
        let p = self.p.as_bigint();
        let modulus = num_traits::pow(p.clone(), count);
        let inv = mod_inverse(unit.denom(), &modulus).expect("unit denominator is coprime to p");
        let mut residue = (unit.numer() * inv).mod_floor(&modulus);
        let mut digits = Vec::with_capacity(count);
        for _ in 0..count {
            let (q, r) = residue.div_rem(&p);
            digits.push(u64::try_from(r).expect("digit below p"));
            residue = q;
        }
        PadicExpansion {
            p: self.p,
            leading_exponent: Order::Finite(v),
            digits,
        }
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&exact::fmt_ratio(&self.value))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// A truncated canonical p-adic expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicExpansion {
    pub p: Prime,
    /// Exponent of the first digit; `Infinity` (with no digits) for zero.
    pub leading_exponent: Order,
    /// Digits in increasing exponent order.
    pub digits: Vec<u64>,
}

impl PadicExpansion {
    /// `Σ a_j p^j` over the retained digits.
    pub fn partial_sum(&self) -> BigRational {
        let Order::Finite(v) = self.leading_exponent else {
            return BigRational::zero();
        };
        self.digits
            .iter()
            .enumerate()
            .map(|(i, &a)| BigRational::from_integer(a.into()) * self.p.pow(v + i as i64))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// Conventional right-to-left notation `…a₂a₁a₀.a₋₁a₋₂`. Digits of primes
    /// above 10 are bracketed.
    pub fn to_notation(&self) -> String {
        let Order::Finite(v) = self.leading_exponent else {
            return "0".into();
        };
        let top = v + self.digits.len() as i64 - 1;
        let hi = top.max(0);
        let lo = v.min(0);
        let digit_at = |j: i64| -> u64 {
            if j >= v && j <= top {
                self.digits[(j - v) as usize]
            } else {
                0
            }
        };
        let wide = self.p.get() > 10;
        let mut out = String::from("…");
        for j in (lo..=hi).rev() {
            let d = digit_at(j);
            if wide {
                out.push_str(&format!("({d})"));
            } else {
                out.push_str(&d.to_string());
            }
            if j == 0 && lo < 0 {
                out.push('.');
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    /// `U_r(a) = {x : |x − a|_p ≤ r}`
    Closed,
    /// `U⁻_r(a) = {x : |x − a|_p < r}`
    Open,
    /// `S_r(a) = {x : |x − a|_p = r}`
    Sphere,
}

/// A p-adic ball or sphere of radius `p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicBall {
    pub center: PadicRational,
    /// `n` in `r = p^n`.
    pub radius_exponent: i64,
    pub kind: BallKind,
}

impl PadicBall {
    pub fn new(center: PadicRational, radius_exponent: i64, kind: BallKind) -> Self {
        Self {
            center,
            radius_exponent,
            kind,
        }
    }

    pub fn closed(center: PadicRational, radius_exponent: i64) -> Self {
        Self::new(center, radius_exponent, BallKind::Closed)
    }

    pub fn radius(&self) -> BigRational {
        self.center.prime().pow(self.radius_exponent)
    }

    pub fn contains(&self, x: &PadicRational) -> Result<bool> {
        let d = x.sub(&self.center)?.order();
        // |x − a|_p = p^{−d}; compare exponents rather than values.
        let n = Order::Finite(-self.radius_exponent);
        Ok(match self.kind {
            BallKind::Closed => d >= n,
            BallKind::Open => d > n,
            BallKind::Sphere => d == n,
        })
    }

    /// The same set described around a different center.
    pub fn recentered(&self, center: PadicRational) -> Self {
        Self {
            center,
            ..self.clone()
        }
    }

    /// Set inclusion for closed balls: `U_r(a) ⊆ U_s(b)` iff `r ≤ s` and
    /// `a ∈ U_s(b)`.
    pub fn is_subset_of(&self, other: &PadicBall) -> Result<bool> {
        closed_only(self)?;
        closed_only(other)?;
        Ok(self.radius_exponent <= other.radius_exponent && other.contains(&self.center)?)
    }

    /// Closed balls meet iff the distance between centers is at most the
    /// larger radius.
    pub fn intersects(&self, other: &PadicBall) -> Result<bool> {
        closed_only(self)?;
        closed_only(other)?;
        let bigger = if self.radius_exponent >= other.radius_exponent {
            self
        } else {
            other
        };
        let smaller = if std::ptr::eq(bigger, self) {
            other
        } else {
            self
        };
        bigger.contains(&smaller.center)
    }
}

fn closed_only(ball: &PadicBall) -> Result<()> {
    if ball.kind == BallKind::Closed {
        Ok(())
    } else {
        Err(Error::InvalidContext(
            "ball inclusion is only defined here for closed balls".into(),
        ))
    }
}
