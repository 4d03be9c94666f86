//! Deterministic number formatting for reports.

/// Formats `x` with 12 significant digits, `%g` style: fixed notation for
/// decimal exponents in `[-5, 12)`, scientific otherwise, trailing zeros
/// stripped.
pub fn g12(x: f64) -> String {
    const SIG: usize = 12;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIG - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG as i32 {
        format!("{}e{}", strip_zeros(mantissa), exp)
    } else {
        let decimals = (SIG as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to 12 significant digits, for JSON fields.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().expect("round trip")
}
