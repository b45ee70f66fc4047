//! Locale-independent number formatting for every emitted artifact.

use crate::error::{Error, Result};

/// Scientific notation with nine fractional digits, e.g. `3.678794412e-1`.
///
/// Negative zero prints as `0.000000000e0`.
pub fn format_number(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::NonFiniteNumber(x));
    }
    // `+ 0.0` turns -0.0 into +0.0
    Ok(format!("{:.9e}", x + 0.0))
}

/// Like [`format_number`], with `None` written as `nan`.
pub fn format_optional(x: Option<f64>) -> Result<String> {
    match x {
        Some(v) => format_number(v),
        None => Ok("nan".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_examples() {
        assert_eq!(format_number(0.0).unwrap(), "0.000000000e0");
        assert_eq!(format_number(-0.0).unwrap(), "0.000000000e0");
        assert_eq!(format_number(1.0).unwrap(), "1.000000000e0");
        assert_eq!(format_number((-1.0f64).exp()).unwrap(), "3.678794412e-1");
        assert_eq!(format_number(-12.5).unwrap(), "-1.250000000e1");
        assert_eq!(format_number(6.02214076e23).unwrap(), "6.022140760e23");
        assert_eq!(format_number(1e-300).unwrap(), "1.000000000e-300");
    }

    #[test]
    fn rounds_at_the_ninth_digit() {
        assert_eq!(format_number(1.2345678915).unwrap(), "1.234567892e0");
        assert_eq!(format_number(0.99999999996).unwrap(), "1.000000000e0");
    }

    #[test]
    fn non_finite_is_rejected() {
        for x in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(format_number(x).is_err());
        }
        assert_eq!(format_optional(None).unwrap(), "nan");
    }
}
