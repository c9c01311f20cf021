use rug::ops::Pow;
use rug::Float;

use super::complex::MpComplex;

/// Significant digits used when nothing else is requested.
pub const DEFAULT_OUTPUT_DIGITS: usize = 10;

/// Scientific notation with `digits` significant digits: `d.ddde±XX`.
pub fn format_real(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    if x.is_zero() {
        return mantissa_with_exponent(false, &"0".repeat(digits), 0);
    }
    let (neg, s, exp) = x.to_sign_string_exp(10, Some(digits));
    // value = 0.s * 10^exp
    let exp = exp.expect("normal value has an exponent") - 1;
    mantissa_with_exponent(neg, &s, exp)
}

fn mantissa_with_exponent(neg: bool, s: &str, exp: i32) -> String {
    let mut out = String::with_capacity(s.len() + 6);
    if neg {
        out.push('-');
    }
    out.push_str(&s[..1]);
    if s.len() > 1 {
        out.push('.');
        out.push_str(&s[1..]);
    }
    out.push('e');
    out.push(if exp < 0 { '-' } else { '+' });
    out.push_str(&format!("{:02}", exp.unsigned_abs()));
    out
}

/// Renders a complex value in the `a+b*I` style accepted by
/// [`parse_complex`](super::parse_complex).
///
/// A part whose magnitude is below `10^-(digits+2)` of the other part is not
/// printed, so pure-real values come out as a single number.
pub fn format_complex(z: &MpComplex, digits: usize) -> String {
    let p = z.prec();
    let (show_re, show_im) = visible_parts(z, digits);
    match (show_re, show_im) {
        (false, false) => format_real(&Float::new(p), digits),
        (true, false) => format_real(&z.re, digits),
        (false, true) => format!("{}*I", format_real(&z.im, digits)),
        (true, true) => {
            let im = format_real(&z.im, digits);
            if im.starts_with('-') {
                format!("{}{}*I", format_real(&z.re, digits), im)
            } else {
                format!("{}+{}*I", format_real(&z.re, digits), im)
            }
        }
    }
}

/// Which parts of `z` survive the relative display floor.
pub(crate) fn visible_parts(z: &MpComplex, digits: usize) -> (bool, bool) {
    let p = z.prec();
    let rel = Float::with_val(64, 10).pow(-(digits as i32 + 2));
    let re = Float::with_val(p, z.re.abs_ref());
    let im = Float::with_val(p, z.im.abs_ref());
    let show_re = !re.is_zero() && re >= Float::with_val(p, &im * &rel);
    let show_im = !im.is_zero() && im >= Float::with_val(p, &re * &rel);
    (show_re, show_im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_transcript_styles() {
        let p = 256;
        assert_eq!(format_real(&Float::with_val(p, 0.5), 8), "5.0000000e-01");
        assert_eq!(format_real(&Float::with_val(p, 1), 10), "1.000000000e+00");
        assert_eq!(
            format_real(&Float::with_val(p, 0.25), 10),
            "2.500000000e-01"
        );
        assert_eq!(format_real(&Float::new(p), 8), "0.0000000e+00");
    }

    #[test]
    fn negative_values_and_large_exponents() {
        let p = 128;
        assert_eq!(format_real(&Float::with_val(p, -1234.5), 3), "-1.23e+03");
        assert_eq!(format_real(&Float::with_val(p, 1e-139), 3), "1.00e-139");
        assert_eq!(format_real(&Float::with_val(p, 7), 1), "7e+00");
    }

    #[test]
    fn complex_rendering() {
        let p = 128;
        assert_eq!(
            format_complex(&MpComplex::from_f64(0.5, p), 8),
            "5.0000000e-01"
        );
        assert_eq!(
            format_complex(&MpComplex::from_f64_parts(1.0, -2.0, p), 3),
            "1.00e+00-2.00e+00*I"
        );
        assert_eq!(
            format_complex(&MpComplex::from_f64_parts(0.0, 3.0, p), 3),
            "3.00e+00*I"
        );
        // roundoff residue in the imaginary part is not shown
        assert_eq!(
            format_complex(&MpComplex::from_f64_parts(0.5, 1e-70, p), 8),
            "5.0000000e-01"
        );
        assert_eq!(format_complex(&MpComplex::zero(p), 8), "0.0000000e+00");
    }
}
