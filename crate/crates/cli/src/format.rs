//! Deterministic number formatting and the JSON output envelope.

use serde::Serialize;
use serde_json::Value;
use spacelike_core::Complex64;

/// Significant digits for every real number printed.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style rendering: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// `re + im*i`, with the sign of the imaginary part pulled out.
pub fn complex(z: Complex64) -> String {
    if z.im.is_sign_negative() && z.im != 0.0 {
        format!("{} - {}*i", real(z.re), real(-z.im))
    } else {
        format!("{} + {}*i", real(z.re), real(z.im.abs()))
    }
}

/// A JSON number carrying exactly the printed 12 significant digits.
pub fn json_real(v: f64) -> Value {
    real(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Machine-readable envelope shared by every command.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: &'static str,
    pub exit_status: i32,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, results: Value, exit_status: i32) -> Self {
        OutputRecord {
            command: command.into(),
            inputs,
            results,
            version: env!("CARGO_PKG_VERSION"),
            exit_status,
        }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("output record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(real(0.067_008_120_508_497_137), "0.0670081205085");
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-2.5), "-2.5");
        assert_eq!(real(123_456_789_012_345.0), "1.23456789012e14");
        assert_eq!(real(3.861_592_677_242_83e-13), "3.86159267724e-13");
        assert_eq!(real(1e-5), "0.00001");
        assert_eq!(real(0.1 + 0.2), "0.3");
    }

    #[test]
    fn complex_layout() {
        assert_eq!(complex(Complex64::new(0.5, 0.0)), "0.5 + 0*i");
        assert_eq!(complex(Complex64::new(0.5, -0.25)), "0.5 - 0.25*i");
    }

    #[test]
    fn json_numbers_round_to_printed_digits() {
        assert_eq!(json_real(0.1 + 0.2).to_string(), "0.3");
    }
}
