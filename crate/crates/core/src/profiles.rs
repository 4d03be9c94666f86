//! Sampled brightness curves `r ↦ P(r)` for idealized interference pictures.
//!
//! For the trigonometric and hyperbolic kinds the radius is the phase itself,
//! `r = θ`. The hyperbolic curves are only probabilities on a window:
//! `P₊(θ) = P1 + P2 + 2√(P1P2) cosh θ` on `[0, θ_max]` and
//! `P₋(θ) = P1 + P2 − 2√(P1P2) cosh θ` on `[0, θ_min]`, where
//!
//! ```text
//! θ_max = ln(q₊ + √(q₊² − 1)),  q₊ = (1 − P1 − P2) / (2√(P1P2))
//! θ_min = ln(q₋ + √(q₋² − 1)),  q₋ = (P1 + P2) / (2√(P1P2))
//! ```
//!
//! The p-adic kind samples radii `r = 1 + ε` and is exact.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use crate::exact;
use crate::format::g12;
use crate::interference::{check_probability, interfere_hyp, interfere_trig, Sign};
use crate::padic::Prime;
use crate::padic_probability::slit_profile;
use crate::tolerance;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProfileKind {
    T,
    Ha,
    Hb,
    HaHb,
    Padic,
}

impl ProfileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::T => "T",
            ProfileKind::Ha => "Ha",
            ProfileKind::Hb => "Hb",
            ProfileKind::HaHb => "HaHb",
            ProfileKind::Padic => "Padic",
        }
    }

    fn for_sign(sign: Sign) -> Self {
        match sign {
            Sign::Plus => ProfileKind::Ha,
            Sign::Minus => ProfileKind::Hb,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ProfileMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub partition: Vec<Segment>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrightnessProfile {
    pub kind: ProfileKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Exact values when the kind admits them (p-adic).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_exact")]
    pub exact: Option<Vec<BigRational>>,
    /// Per-row kind; differs from `kind` only for piecewise profiles.
    pub row_kinds: Vec<ProfileKind>,
    pub meta: ProfileMeta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_min: Option<f64>,
    /// Grid points dropped because they fell outside a validity window.
    pub warnings: Vec<String>,
}

fn ser_exact<S: serde::Serializer>(
    v: &Option<Vec<BigRational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.iter().map(exact::fmt_ratio)),
        None => s.serialize_none(),
    }
}

impl BrightnessProfile {
    fn new(kind: ProfileKind, meta: ProfileMeta) -> Self {
        Self {
            kind,
            grid: Vec::new(),
            values: Vec::new(),
            exact: None,
            row_kinds: Vec::new(),
            meta,
            theta_max: None,
            theta_min: None,
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, r: f64, value: f64, kind: ProfileKind) {
        self.grid.push(r);
        self.values.push(value);
        self.row_kinds.push(kind);
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// CSV with a `#` metadata preamble and the header `r,P_float,P_exact,kind`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# probinterf {}", env!("CARGO_PKG_VERSION"));
        let _ = write!(out, "# kind={}", self.kind.as_str());
        if let Some(p1) = self.meta.p1 {
            let _ = write!(out, " p1={}", g12(p1));
        }
        if let Some(p2) = self.meta.p2 {
            let _ = write!(out, " p2={}", g12(p2));
        }
        if let Some(p) = self.meta.prime {
            let _ = write!(out, " p={p}");
        }
        if let Some(l) = self.meta.l {
            let _ = write!(out, " l={l}");
        }
        if let Some(t) = self.theta_max {
            let _ = write!(out, " theta_max={}", g12(t));
        }
        if let Some(t) = self.theta_min {
            let _ = write!(out, " theta_min={}", g12(t));
        }
        out.push('\n');
        if !self.meta.partition.is_empty() {
            let parts: Vec<String> = self.meta.partition.iter().map(Segment::to_spec).collect();
            let _ = writeln!(out, "# partition={}", parts.join(","));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "# warning: {w}");
        }
        out.push_str("r,P_float,P_exact,kind\n");
        for i in 0..self.len() {
            let exact = self
                .exact
                .as_ref()
                .map(|e| exact::fmt_ratio(&e[i]))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                g12(self.grid[i]),
                g12(self.values[i]),
                exact,
                self.row_kinds[i].as_str()
            );
        }
        out
    }
}

/// `n` evenly spaced samples over `[lo, hi]`, endpoints included.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::InvalidGrid(format!("bad window [{lo}, {hi}]")));
    }
    Ok(match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            let mut g: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
            g[n - 1] = hi;
            g
        }
    })
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if let Some(bad) = grid.iter().find(|r| !r.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite radius {bad}")));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid(format!(
            "radii must be ascending ({} before {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn pair_meta(p1: f64, p2: f64) -> ProfileMeta {
    ProfileMeta {
        p1: Some(p1),
        p2: Some(p2),
        ..ProfileMeta::default()
    }
}

/// Trigonometric picture `P(r) = P1 + P2 + 2√(P1P2) cos r`: maxima at
/// `r = 2πk`, minima at odd multiples of π.
pub fn profile_trig(p1: f64, p2: f64, grid: &[f64]) -> Result<BrightnessProfile> {
    check_probability("p1", p1)?;
    check_probability("p2", p2)?;
    check_grid(grid)?;
    let peak = p1 + p2 + 2.0 * (p1 * p2).sqrt();
    if peak > 1.0 + tolerance::PROBABILITY {
        return Err(Error::InvalidProfile(format!(
            "peak value P1 + P2 + 2sqrt(P1P2) = {peak} exceeds 1"
        )));
    }
    let mut prof = BrightnessProfile::new(ProfileKind::T, pair_meta(p1, p2));
    for &r in grid {
        prof.push(r, interfere_trig(p1, p2, r)?, ProfileKind::T);
    }
    Ok(prof)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaBounds {
    pub q_plus: f64,
    pub q_minus: f64,
    /// Absent when `q₊ < 1`, i.e. `P₊(0) > 1`.
    pub theta_max: Option<f64>,
    pub theta_min: f64,
}

impl ThetaBounds {
    pub fn window(&self, sign: Sign) -> Option<f64> {
        match sign {
            Sign::Plus => self.theta_max,
            Sign::Minus => Some(self.theta_min),
        }
    }
}

fn arccosh_log(q: f64) -> f64 {
    (q + (q * q - 1.0).max(0.0).sqrt()).ln()
}

pub fn theta_bounds(p1: f64, p2: f64) -> Result<ThetaBounds> {
    check_probability("p1", p1)?;
    check_probability("p2", p2)?;
    if p1 * p2 == 0.0 {
        return Err(Error::DegenerateContext { p1, p2 });
    }
    let denom = 2.0 * (p1 * p2).sqrt();
    let q_plus = (1.0 - p1 - p2) / denom;
    let q_minus = (p1 + p2) / denom;
    // q₋ ≥ 1 by AM-GM; rounding can land a hair below.
    debug_assert!(q_minus >= 1.0 - 1e-12);
    let theta_max = if q_plus >= 1.0 - tolerance::PROBABILITY {
        Some(arccosh_log(q_plus.max(1.0)))
    } else {
        None
    };
    Ok(ThetaBounds {
        q_plus,
        q_minus,
        theta_max,
        theta_min: arccosh_log(q_minus.max(1.0)),
    })
}

/// Hyperbolic picture (Ha for `+`, Hb for `−`). Grid points outside
/// `[0, θ_max]` (resp. `[0, θ_min]`) are dropped and reported in
/// [`BrightnessProfile::warnings`].
pub fn profile_hyp(p1: f64, p2: f64, sign: Sign, grid: &[f64]) -> Result<BrightnessProfile> {
    check_grid(grid)?;
    let bounds = theta_bounds(p1, p2)?;
    let kind = ProfileKind::for_sign(sign);
    let Some(limit) = bounds.window(sign) else {
        return Err(Error::InvalidProfile(format!(
            "empty valid window: q+ = {} < 1 so P+(0) already exceeds 1",
            bounds.q_plus
        )));
    };
    let mut prof = BrightnessProfile::new(kind, pair_meta(p1, p2));
    prof.theta_max = bounds.theta_max;
    prof.theta_min = Some(bounds.theta_min);
    let mut dropped = 0;
    for &r in grid {
        if r < 0.0 || r > limit {
            dropped += 1;
            continue;
        }
        prof.push(r, interfere_hyp(p1, p2, r, sign)?, kind);
    }
    if dropped > 0 {
        prof.warnings.push(format!(
            "clipped {dropped} grid point(s) outside the valid window [0, {}]",
            g12(limit)
        ));
    }
    if prof.is_empty() {
        return Err(Error::InvalidProfile(format!(
            "empty valid window: no grid point lies in [0, {}]",
            g12(limit)
        )));
    }
    Ok(prof)
}

/// One piece of a piecewise hyperbolic picture. Radii in the segment use
/// the local phase `θ = r − lo`, so each piece starts from the center
/// brightness of its branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    /// Excludes `lo` itself, as in `(a, b]`.
    pub lo_open: bool,
    pub sign: Sign,
}

impl Segment {
    pub fn closed(lo: f64, hi: f64, sign: Sign) -> Self {
        Self {
            lo,
            hi,
            lo_open: false,
            sign,
        }
    }

    pub fn left_open(lo: f64, hi: f64, sign: Sign) -> Self {
        Self {
            lo,
            hi,
            lo_open: true,
            sign,
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        let above = if self.lo_open {
            r > self.lo
        } else {
            r >= self.lo
        };
        above && r <= self.hi
    }

    /// `lo:hi:sign`, prefixed by `(` when left-open.
    pub fn to_spec(&self) -> String {
        format!(
            "{}{}:{}:{}",
            if self.lo_open { "(" } else { "" },
            g12(self.lo),
            g12(self.hi),
            self.sign.as_char()
        )
    }

    /// Parses `lo:hi:sign` or `(lo:hi:sign`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let (lo_open, body) = match s.strip_prefix('(') {
            Some(b) => (true, b),
            None => (false, s.strip_prefix('[').unwrap_or(s)),
        };
        let parts: Vec<&str> = body.split(':').collect();
        let [lo, hi, sign] = parts[..] else {
            return Err(Error::Parse(format!("segment '{spec}' is not lo:hi:sign")));
        };
        let num = |t: &str| crate::context::parse_phase(t);
        Ok(Self {
            lo: num(lo)?,
            hi: num(hi)?,
            lo_open,
            sign: Sign::parse(sign)?,
        })
    }
}

/// Alternates Ha and Hb pieces over a partition of the radius axis.
pub fn profile_piecewise(
    p1: f64,
    p2: f64,
    partition: &[Segment],
    grid: &[f64],
) -> Result<BrightnessProfile> {
    check_grid(grid)?;
    if partition.is_empty() {
        return Err(Error::InvalidPartition("no segments".into()));
    }
    let bounds = theta_bounds(p1, p2)?;
    let mut segs = partition.to_vec();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    for s in &segs {
        if !(s.lo.is_finite() && s.hi.is_finite()) || s.hi < s.lo || s.lo < 0.0 {
            return Err(Error::InvalidPartition(format!(
                "segment {} is not a valid interval",
                s.to_spec()
            )));
        }
        let window = bounds.window(s.sign).ok_or_else(|| {
            Error::InvalidPartition(format!(
                "segment {} uses the + branch but P+(0) > 1",
                s.to_spec()
            ))
        })?;
        if s.hi - s.lo > window + tolerance::PROBABILITY {
            return Err(Error::InvalidPartition(format!(
                "segment {} is longer than the {} window {}",
                s.to_spec(),
                s.sign.as_char(),
                g12(window)
            )));
        }
    }
    for w in segs.windows(2) {
        if w[0].hi > w[1].lo || (w[0].hi == w[1].lo && !w[1].lo_open) {
            return Err(Error::InvalidPartition(format!(
                "segments {} and {} overlap",
                w[0].to_spec(),
                w[1].to_spec()
            )));
        }
    }
    let mut prof = BrightnessProfile::new(
        ProfileKind::HaHb,
        ProfileMeta {
            partition: segs.clone(),
            ..pair_meta(p1, p2)
        },
    );
    prof.theta_max = bounds.theta_max;
    prof.theta_min = Some(bounds.theta_min);
    let mut uncovered = 0;
    for &r in grid {
        match segs.iter().find(|s| s.contains(r)) {
            Some(s) => {
                let local = (r - s.lo).min(bounds.window(s.sign).unwrap_or(0.0));
                let v = interfere_hyp(p1, p2, local, s.sign)?;
                prof.push(r, v, ProfileKind::for_sign(s.sign));
            }
            None => uncovered += 1,
        }
    }
    if uncovered > 0 {
        prof.warnings.push(format!(
            "skipped {uncovered} grid point(s) not covered by any segment"
        ));
    }
    Ok(prof)
}

/// p-adic picture: radii `r = 1 + ε` for `ε ∈ N_p`, `ε ≤ eps_max`, with
/// brightness `A·p^{−2 v_p(r)}`, `A = p^{−2l}`.
pub fn profile_padic(p: Prime, l: u32, eps_max: u64) -> BrightnessProfile {
    let points = slit_profile(p, l, eps_max);
    let mut prof = BrightnessProfile::new(
        ProfileKind::Padic,
        ProfileMeta {
            prime: Some(p.get()),
            l: Some(l),
            ..ProfileMeta::default()
        },
    );
    let mut exact = Vec::with_capacity(points.len());
    for pt in points {
        prof.push((pt.epsilon + 1) as f64, pt.p_float(), ProfileKind::Padic);
        exact.push(pt.p_exact);
    }
    prof.exact = Some(exact);
    prof
}
