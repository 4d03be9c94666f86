//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, even when output is piped.
//!
//! Each check compares the library against an oracle written here from the
//! defining formulas, not against the library's own helpers.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use probinterf::context::{phases_from_state_expansion, ContextTransform, ExactContext};
use probinterf::interference::{interfere_hyp, interfere_trig};
use probinterf::padic::PadicBall;
use probinterf::padic_probability::{padic_interfere, slit_profile, PadicAmplitudePair, PadicCase};
use probinterf::profiles::theta_bounds;
use probinterf::{GNumber, PadicRational, Prime, Sign};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow_ratio(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

/// Multiplicity of `p` in a nonzero integer.
fn valuation(mut n: BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `|x|²_p` for a rational `x`, as an exact rational (0 for 0).
fn abs_sq(x: &BigRational, p: u64) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let v = valuation(x.numer().clone(), p) - valuation(x.denom().clone(), p);
    pow_ratio(p, -2 * v)
}

fn padic(p: u64, x: BigRational) -> PadicRational {
    PadicRational::from_ratio(Prime::new(p).unwrap(), x)
}

// 1 -------------------------------------------------------------------------

fn slit_table() -> Outcome {
    let p = Prime::new(3).unwrap();
    let got: Vec<(u64, BigRational)> = slit_profile(p, 0, 8)
        .into_iter()
        .map(|s| (s.epsilon, s.p_exact))
        .collect();
    let expected: Vec<(u64, BigRational)> = [(1, 1), (2, 9), (4, 1), (5, 9), (7, 1), (8, 81)]
        .into_iter()
        .map(|(e, d)| (e, ratio(1, d)))
        .collect();
    if got != expected {
        return fail(format!("table {got:?}"));
    }
    // Oracle: direct |1 + ε|²_p of the amplitude sum with ε₁ = ε₂ = 1.
    for (eps, value) in &got {
        let direct = abs_sq(&BigRational::from_integer(BigInt::from(1 + eps)), 3);
        if &direct != value {
            return fail(format!("ε = {eps}: {value} vs |1+ε|² = {direct}"));
        }
    }
    pass("P = {1, 1/9, 1, 1/9, 1, 1/81} for ε = {1, 2, 4, 5, 7, 8}")
}

// 2 -------------------------------------------------------------------------

/// Sweeps α₁ = p^{k₁}u₁, α₂ = p^{k₂}u₂, ε for orders k ≤ 4 and ε over all
/// units mod p⁴. Scaling both amplitudes by a unit changes no p-adic norm,
/// so u₁ = 1 loses nothing; only εu₂ enters the case-C constant and it runs
/// over every unit as ε does, so u₂ ranges over a few representatives
/// (including −1 and a unit ≢ 1 mod p).
fn lambda_range() -> Outcome {
    let mut cases = 0u64;
    let mut violations = Vec::new();
    let minus_one = -BigRational::one();
    let minus_half = ratio(-1, 2);
    for p in [2u64, 3, 5] {
        let modulus = p.pow(4);
        let mut unit_reps: Vec<i64> = vec![1, -1];
        if p > 2 {
            unit_reps.push(2);
        }
        let epsilons: Vec<u64> = (1..modulus).filter(|e| e % p != 0).collect();
        for k1 in 0..=4i64 {
            for k2 in 0..=4i64 {
                for &u1 in &[1i64] {
                    for &u2 in &unit_reps {
                        let a1 = pow_ratio(p, k1) * BigRational::from_integer(u1.into());
                        let a2 = pow_ratio(p, k2) * BigRational::from_integer(u2.into());
                        let (pa1, pa2) = (padic(p, a1.clone()), padic(p, a2.clone()));
                        for &eps in &epsilons {
                            let e = BigRational::from_integer(BigInt::from(eps));
                            let pair = match PadicAmplitudePair::new(
                                pa1.clone(),
                                pa2.clone(),
                                padic(p, e.clone()),
                            ) {
                                Ok(pair) => pair,
                                Err(err) => {
                                    violations.push(format!("p={p} k=({k1},{k2}) ε={eps}: {err}"));
                                    continue;
                                }
                            };
                            let r = padic_interfere(&pair);
                            cases += 1;
                            // Oracle: λ from the defining ratio with
                            // √(P₁P₂) = p^{−(k₁+k₂)}.
                            let big_p = abs_sq(&(&a1 + &e * &a2), p);
                            let (p1, p2) = (abs_sq(&a1, p), abs_sq(&a2, p));
                            let root = pow_ratio(p, -(k1 + k2));
                            let lambda = (&big_p - &p1 - &p2) / (ratio(2, 1) * root);
                            let expected_case = match k1.cmp(&k2) {
                                // Smaller order, larger norm.
                                std::cmp::Ordering::Less => PadicCase::A,
                                std::cmp::Ordering::Greater => PadicCase::B,
                                std::cmp::Ordering::Equal => PadicCase::C,
                            };
                            let in_range = match expected_case {
                                PadicCase::A | PadicCase::B => {
                                    lambda > minus_half && lambda < BigRational::zero()
                                }
                                PadicCase::C => lambda >= minus_one && lambda <= minus_half,
                            };
                            let ok = r.case == expected_case
                                && r.lambda == lambda
                                && r.p == big_p
                                && in_range
                                && lambda >= minus_one
                                && !lambda.is_positive();
                            if !ok {
                                violations.push(format!(
                                    "p={p} α=({a1},{a2}) ε={eps}: case {:?} λ={} oracle λ={lambda}",
                                    r.case, r.lambda
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    if violations.is_empty() {
        pass(format!("{cases} exact cases, 0 violations"))
    } else {
        fail(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        ))
    }
}

// 3 -------------------------------------------------------------------------

fn amplitude_oracles() -> Outcome {
    const N: usize = 50;
    // p1, p2 ≤ 1/4 keeps √p1 + √p2 ≤ 1, so the trigonometric rule stays in [0, 1].
    let probs: Vec<f64> = (1..=N).map(|i| i as f64 / N as f64 * 0.25).collect();
    let trig_phases: Vec<f64> = (0..N).map(|i| 2.0 * PI * i as f64 / N as f64).collect();
    let hyp_phases: Vec<f64> = (0..N).map(|i| 3.0 * i as f64 / N as f64).collect();
    let (mut worst_trig, mut worst_hyp) = (0.0f64, 0.0f64);
    let (mut compared, mut rejected) = (0u64, 0u64);
    // Cancellation near zero makes the result-relative error meaningless, so
    // errors are relative to the larger of the result and p1 + p2.
    let rel = |a: f64, b: f64, p1: f64, p2: f64| (a - b).abs() / a.abs().max(b.abs()).max(p1 + p2);
    for &p1 in &probs {
        for &p2 in &probs {
            for i in 0..N {
                let theta = trig_phases[i];
                let amp = Complex64::new(p1.sqrt(), 0.0) + Complex64::from_polar(p2.sqrt(), theta);
                let oracle = amp.norm_sqr();
                match interfere_trig(p1, p2, theta) {
                    Ok(v) => {
                        worst_trig = worst_trig.max(rel(v, oracle, p1, p2));
                        compared += 1;
                    }
                    Err(e) => return fail(format!("trig({p1}, {p2}, {theta}): {e}")),
                }

                let theta = hyp_phases[i];
                for sign in [Sign::Plus, Sign::Minus] {
                    // 𝐆-norm of √p1 + ε√p2·e^{jθ}: (x² − y²).
                    let s = sign.value();
                    let x = p1.sqrt() + s * p2.sqrt() * theta.cosh();
                    let y = s * p2.sqrt() * theta.sinh();
                    let oracle = x * x - y * y;
                    match interfere_hyp(p1, p2, theta, sign) {
                        Ok(v) => {
                            worst_hyp = worst_hyp.max(rel(v, oracle, p1, p2));
                            compared += 1;
                        }
                        // Rejection is correct only when the norm leaves [0, 1].
                        Err(_) if !(-1e-12..=1.0 + 1e-12).contains(&oracle) => rejected += 1,
                        Err(e) => return fail(format!("hyp({p1}, {p2}, {theta}, {sign:?}): {e}")),
                    }
                }
            }
        }
    }
    let worst = worst_trig.max(worst_hyp);
    let detail = format!(
        "{compared} comparisons, {rejected} out-of-range rejections, max rel err trig {worst_trig:.2e} hyp {worst_hyp:.2e}"
    );
    if worst <= 1e-12 {
        pass(detail)
    } else {
        fail(detail)
    }
}

// 4 -------------------------------------------------------------------------

fn theta_closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        // q₊ ≥ 1  ⇔  √p1 + √p2 ≤ 1.
        let s1: f64 = rng.gen_range(0.01..0.98);
        let s2: f64 = rng.gen_range(0.005..(1.0 - s1));
        let (p1, p2) = (s1 * s1, s2 * s2);
        let b = match theta_bounds(p1, p2) {
            Ok(b) => b,
            Err(e) => return fail(format!("bounds({p1}, {p2}): {e}")),
        };
        let Some(tmax) = b.theta_max else {
            return fail(format!("no θ_max for p1={p1} p2={p2} (q₊ = {})", b.q_plus));
        };
        // Oracle: the hyperbolic rule written out.
        let root = 2.0 * (p1 * p2).sqrt();
        let at_max = p1 + p2 + root * tmax.cosh();
        let at_min = p1 + p2 - root * b.theta_min.cosh();
        worst = worst.max((at_max - 1.0).abs()).max(at_min.abs());
        match (
            interfere_hyp(p1, p2, tmax, Sign::Plus),
            interfere_hyp(p1, p2, b.theta_min, Sign::Minus),
        ) {
            (Ok(hi), Ok(lo)) => worst = worst.max((hi - 1.0).abs()).max(lo.abs()),
            (Err(e), _) | (_, Err(e)) => return fail(format!("p1={p1} p2={p2}: {e}")),
        }
    }
    let w1 = theta_bounds(1.0 / 16.0, 1.0 / 16.0)
        .ok()
        .and_then(|b| b.theta_max);
    let w1_expected = (7.0 + 4.0 * 3f64.sqrt()).ln();
    let w2 = theta_bounds(0.25, 1.0 / 16.0).map(|b| b.theta_min).ok();
    let witnesses = matches!(w1, Some(t) if (t - w1_expected).abs() <= 1e-12)
        && matches!(w2, Some(t) if (t - 2f64.ln()).abs() <= 1e-12);
    let detail = format!(
        "1000 draws, max |P₊(θ_max) − 1|, |P₋(θ_min)| = {worst:.2e}; θ_max(1/16,1/16) = {w1:?}, θ_min(1/4,1/16) = {w2:?}"
    );
    if worst <= 1e-12 && witnesses {
        pass(detail)
    } else {
        fail(detail)
    }
}

// 5 -------------------------------------------------------------------------

fn rand_ratio(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

fn hyperbolic_laws() -> Outcome {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..N {
        // Norm multiplicativity, exact over ℚ.
        let z = GNumber::new(rand_ratio(&mut rng, 50), rand_ratio(&mut rng, 50));
        let w = GNumber::new(rand_ratio(&mut rng, 50), rand_ratio(&mut rng, 50));
        let lhs = (z.clone() * w.clone()).norm_sq();
        if lhs != z.norm_sq() * w.norm_sq() {
            return fail(format!("norm multiplicativity fails for {z:?}, {w:?}"));
        }

        // Euler group law e^{ja}e^{jb} = e^{j(a+b)}, relative to cosh a cosh b.
        let (a, b) = (rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0));
        let (ea, eb, eab) = (
            GNumber::exp(a).unwrap(),
            GNumber::exp(b).unwrap(),
            GNumber::exp(a + b).unwrap(),
        );
        let prod = ea * eb;
        let scale = ea.x * eb.x;
        if (prod.x - eab.x).abs() > 1e-10 * scale || (prod.y - eab.y).abs() > 1e-10 * scale {
            return fail(format!("Euler law fails at a={a}, b={b}"));
        }
        // Oracle: cosh(a+b) by the addition formula.
        let add = a.cosh() * b.cosh() + a.sinh() * b.sinh();
        if (add - eab.x).abs() > 1e-10 * scale {
            return fail(format!(
                "exp(j(a+b)) disagrees with the addition formula at a={a}, b={b}"
            ));
        }

        // Polar round trip on 𝐆₊* (|y| < |x|).
        let x: f64 = rng.gen_range(0.01..100.0) * if rng.gen() { 1.0 } else { -1.0 };
        let y = x * rng.gen_range(-0.999..0.999);
        let z = GNumber::new(x, y);
        let polar = z.polar().unwrap();
        let back = GNumber::exp(polar.phase)
            .unwrap()
            .scale(f64::from(polar.sign) * polar.modulus);
        let tol = 1e-10 * x.abs().max(1.0);
        if (back.x - x).abs() > tol || (back.y - y).abs() > tol {
            return fail(format!("polar round trip fails for ({x}, {y})"));
        }
        if (polar.modulus - (x * x - y * y).sqrt()).abs() > tol {
            return fail(format!("polar modulus wrong for ({x}, {y})"));
        }

        // Light cone: (a, ±a) has zero norm and annihilates (b, ∓b).
        let a = rand_ratio(&mut rng, 50);
        let b = rand_ratio(&mut rng, 50);
        let u = GNumber::new(a.clone(), a.clone());
        let v = GNumber::new(b.clone(), -b.clone());
        let uv = u.clone() * v;
        if !u.norm_sq().is_zero() || !uv.x.is_zero() || !uv.y.is_zero() {
            return fail(format!("light cone fails for a={a}, b={b}"));
        }
        if !a.is_zero() && (!u.is_zero_divisor() || u.inverse().is_ok()) {
            return fail(format!("({a}, {a}) not recognised as a zero divisor"));
        }
    }
    pass(format!(
        "{N} cases each: norm, Euler law, polar round trip, light cone"
    ))
}

// 6 -------------------------------------------------------------------------

fn ultrametric() -> Outcome {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = [2u64, 3, 5, 7];
    let mut equality_branch = 0;
    for _ in 0..N {
        let p = primes[rng.gen_range(0..primes.len())];
        let gen = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(-3..=3);
            pow_ratio(p, k) * rand_ratio(rng, 200)
        };
        let (x, y) = (gen(&mut rng), gen(&mut rng));
        let (px, py) = (padic(p, x.clone()), padic(p, y.clone()));

        // Strong triangle inequality (on squared norms, which preserve order).
        let sum = px.add(&py).unwrap();
        let (ax, ay, asum) = (abs_sq(&x, p), abs_sq(&y, p), abs_sq(&(&x + &y), p));
        if sum.abs_p_sq() != asum || asum > ax.clone().max(ay.clone()) {
            return fail(format!("strong triangle fails for {x}, {y} (p={p})"));
        }
        if ax != ay {
            equality_branch += 1;
            if asum != ax.clone().max(ay.clone()) {
                return fail(format!("equality branch fails for {x}, {y} (p={p})"));
            }
        }

        // Multiplicativity.
        let prod = px.mul(&py).unwrap();
        if prod.abs_p() != px.abs_p() * py.abs_p() || prod.abs_p_sq() != abs_sq(&(&x * &y), p) {
            return fail(format!("multiplicativity fails for {x}, {y} (p={p})"));
        }

        // Every point of a closed ball is a center of it.
        let n = rng.gen_range(-3..=3i64);
        let ball = PadicBall::closed(px.clone(), n);
        let inside = padic(
            p,
            &x + pow_ratio(p, -n) * BigRational::from_integer(rng.gen_range(-50..=50).into()),
        );
        if !ball.contains(&inside).unwrap() {
            return fail(format!("{inside} should lie in U_{{p^{n}}}({x})"));
        }
        let moved = ball.recentered(inside);
        let probe = padic(p, gen(&mut rng));
        if ball.contains(&probe).unwrap() != moved.contains(&probe).unwrap() {
            return fail(format!("center invariance fails at {probe} (p={p})"));
        }

        // Two closed balls meet only if one contains the other.
        let m = rng.gen_range(-3..=3i64);
        let other = PadicBall::closed(py.clone(), m);
        let meets = ball.intersects(&other).unwrap();
        let nested = ball.is_subset_of(&other).unwrap() || other.is_subset_of(&ball).unwrap();
        // Oracle for "meets": |x − y|_p ≤ max radius.
        let d = abs_sq(&(&x - &y), p);
        let r = pow_ratio(p, 2 * n.max(m));
        if meets != nested || meets != (d <= r) {
            return fail(format!(
                "nesting fails for U({x}, p^{n}), U({y}, p^{m}) (p={p})"
            ));
        }
    }
    pass(format!(
        "{N} exact cases ({equality_branch} on the equality branch)"
    ))
}

// 7 -------------------------------------------------------------------------

fn total_probability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // θ = π/2 collapses to the classical formula, exactly.
    for _ in 0..1000 {
        let pb = ratio(rng.gen_range(0..=20), 20);
        let c1 = ratio(rng.gen_range(0..=20), 20);
        let c2 = ratio(rng.gen_range(0..=20), 20);
        let ctx = ExactContext {
            priors: [pb.clone(), BigRational::one() - &pb],
            cond: [
                [c1.clone(), BigRational::one() - &c1],
                [c2.clone(), BigRational::one() - &c2],
            ],
            cos_theta: [BigRational::zero(), BigRational::zero()],
        };
        let q = ctx.total_prob_quantum().unwrap();
        let oracle = [
            &pb * &c1 + (BigRational::one() - &pb) * &c2,
            &pb * (BigRational::one() - &c1)
                + (BigRational::one() - &pb) * (BigRational::one() - &c2),
        ];
        if q != oracle || ctx.total_prob_classical().unwrap() != oracle {
            return fail(format!(
                "θ = π/2 collapse fails for pb={pb}, cond=({c1}, {c2})"
            ));
        }
    }

    // Doubly stochastic cond with θ₂ = π − θ₁ stays normalized.
    let mut worst_norm = 0.0f64;
    for _ in 0..1000 {
        let pb: f64 = rng.gen_range(0.0..1.0);
        let c: f64 = rng.gen_range(0.0..1.0);
        let t1: f64 = rng.gen_range(0.0..PI);
        let ctx =
            ContextTransform::trig([pb, 1.0 - pb], [[c, 1.0 - c], [1.0 - c, c]], [t1, PI - t1])
                .unwrap();
        let out = match ctx.total_prob_quantum() {
            Ok(v) => v,
            Err(e) => return fail(format!("pb={pb} c={c} θ₁={t1}: {e}")),
        };
        worst_norm = worst_norm.max((out[0] + out[1] - 1.0).abs());
    }

    // Phases from the state expansion reproduce the direct amplitudes. A
    // doubly stochastic cond keeps every |ψ_j|² ≤ 1 (Cauchy–Schwarz).
    let mut worst_state = 0.0f64;
    for _ in 0..1000 {
        let pb: f64 = rng.gen_range(0.0..1.0);
        let c: f64 = rng.gen_range(0.0..1.0);
        let priors = [pb, 1.0 - pb];
        let cond = [[c, 1.0 - c], [1.0 - c, c]];
        let xi_b = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
        let xi = [
            [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)],
            [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)],
        ];
        let theta = phases_from_state_expansion(xi, xi_b);
        let ctx = ContextTransform::trig(priors, cond, theta).unwrap();
        let out = match ctx.total_prob_quantum() {
            Ok(v) => v,
            Err(e) => return fail(format!("state expansion: {e}")),
        };
        for j in 0..2 {
            // ψ_j = Σ_i e^{iξ_i}√p_i^b · e^{iξ_ij}√p_ij
            let psi: Complex64 = (0..2)
                .map(|i| Complex64::from_polar((priors[i] * cond[i][j]).sqrt(), xi_b[i] + xi[i][j]))
                .sum();
            worst_state = worst_state.max((psi.norm_sqr() - out[j]).abs());
        }
    }
    let detail = format!(
        "π/2 collapse exact on 1000 contexts; doubly-stochastic deviation {worst_norm:.2e}; state-expansion deviation {worst_state:.2e}"
    );
    if worst_norm <= 1e-12 && worst_state <= 1e-12 {
        pass(detail)
    } else {
        fail(detail)
    }
}

// 8 -------------------------------------------------------------------------

const EXAMPLES: &[&[&str]] = &[
    &["fit", "0.36", "0.16", "0.76"],
    &["fit", "0.25", "0.25", "0.5"],
    &["fit", "0.25", "0", "0.3"],
    &["fit", "0.36", "0.16", "0.76", "--mode", "exact"],
    &[
        "profile", "trig", "--p1", "0.25", "--p2", "0.25", "--max", "6.2832", "--n", "100",
    ],
    &["profile", "padic", "--p", "3", "--l", "0", "--eps-max", "8"],
    &[
        "profile",
        "hyp",
        "--p1",
        "0.0625",
        "--p2",
        "0.0625",
        "--sign",
        "+",
        "--auto-window",
    ],
    &[
        "profile",
        "piecewise",
        "--p1",
        "0.25",
        "--p2",
        "0.0625",
        "--segments",
        "0:1.5:+,(1.5:2.1:-",
        "--n",
        "43",
    ],
    &[
        "totalprob",
        "--pb1",
        "1/2",
        "--pb2",
        "1/2",
        "--p11",
        "1/2",
        "--p12",
        "1/2",
        "--p21",
        "1/2",
        "--p22",
        "1/2",
        "--theta1",
        "0",
        "--theta2",
        "pi",
    ],
    &[
        "padic",
        "--p",
        "3",
        "--alpha1",
        "1",
        "--alpha2",
        "1",
        "--epsilon",
        "2",
    ],
    &["padic", "--p", "3", "--slit", "--eps-max", "8"],
    &["check", "--cases", "100"],
];

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_probinterf");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map(|o| (o.status.code(), o.stdout, o.stderr))
    };
    for args in EXAMPLES {
        let (first, second) = match (run(args), run(args)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return fail(format!("cannot run {bin}: {e}")),
        };
        if first != second {
            return fail(format!("`{}` differs between runs", args.join(" ")));
        }
        if first.1.is_empty() && first.2.is_empty() {
            return fail(format!("`{}` produced no output", args.join(" ")));
        }
    }
    pass(format!(
        "{} example commands byte-identical across runs",
        EXAMPLES.len()
    ))
}

/// Name, check, time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 p-adic two-slit table",
            slit_table,
            Duration::from_secs(1),
        ),
        (
            "2 lambda-range theorem",
            lambda_range,
            Duration::from_secs(30),
        ),
        (
            "3 amplitude-oracle equivalence",
            amplitude_oracles,
            Duration::from_secs(10),
        ),
        (
            "4 theta_max/theta_min closed forms",
            theta_closed_forms,
            Duration::from_secs(1),
        ),
        ("5 hyperbolic laws", hyperbolic_laws, Duration::from_secs(5)),
        ("6 ultrametric suite", ultrametric, Duration::from_secs(5)),
        (
            "7 total-probability coherence",
            total_probability,
            Duration::from_secs(5),
        ),
        (
            "8 CLI determinism",
            cli_determinism,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = if in_time {
            String::new()
        } else {
            format!(" [over budget {budget:?}]")
        };
        println!(
            "{} criterion {name}: {} ({:.3}s){timing}",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
