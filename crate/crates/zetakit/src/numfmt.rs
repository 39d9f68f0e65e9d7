//! Deterministic decimal rendering at a fixed number of significant digits.
//!
//! Used by the CSV/JSON emitters and the CLI so that identical inputs always
//! produce byte-identical text. Values are rounded to `digits` significant
//! decimal digits; trailing zeros of the fraction are trimmed. Magnitudes
//! far outside the decimal window keep scientific notation.

/// Format `v` with `digits` significant digits (1 ≤ digits ≤ 17).
pub fn format_significant(v: f64, digits: usize) -> String {
    assert!((1..=17).contains(&digits));
    if v == 0.0 {
        return "0".to_owned();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-5..18).contains(&exp) {
        return sci;
    }
    let neg = mant.starts_with('-');
    let m: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 0 {
        let ip = exp as usize + 1;
        if ip >= m.len() {
            out.push_str(&m);
            out.extend(std::iter::repeat('0').take(ip - m.len()));
        } else {
            out.push_str(&m[..ip]);
            let frac = m[ip..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-exp - 1) as usize));
        out.push_str(m.trim_end_matches('0'));
    }
    out
}

/// Round `v` to the value its 15-digit rendering parses back to.
///
/// Persisted ordinates are snapped through this so a write→read→write cycle
/// reproduces the file byte for byte.
pub fn snap15(v: f64) -> f64 {
    format_significant(v, 15).parse().expect("own rendering")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_decimals() {
        assert_eq!(format_significant(14.134725141734693, 15), "14.1347251417347");
        assert_eq!(format_significant(-1.4603545088095868, 10), "-1.460354509");
        assert_eq!(format_significant(25.0, 15), "25");
        assert_eq!(format_significant(0.5, 15), "0.5");
        assert_eq!(format_significant(-0.0, 15), "0");
        assert_eq!(format_significant(100.0, 10), "100");
    }

    #[test]
    fn scientific_window() {
        assert_eq!(format_significant(4.7e-10, 3), "4.70e-10");
        assert_eq!(format_significant(1.0e20, 5), "1.0000e20");
        assert_eq!(format_significant(0.0001234, 3), "0.000123");
    }

    #[test]
    fn rounding_carries() {
        assert_eq!(format_significant(0.99999999, 4), "1");
        assert_eq!(format_significant(999.96, 4), "1000");
    }

    #[test]
    fn snap_is_idempotent() {
        for &v in &[
            14.134725141734693,
            21.022039638771555,
            1.0 / 3.0,
            4.656612873077393e-10,
        ] {
            let s = snap15(v);
            assert_eq!(snap15(s), s);
            assert_eq!(format_significant(snap15(s), 15), format_significant(s, 15));
        }
    }
}
