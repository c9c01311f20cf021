use rug::ops::Pow;
use rug::{Float, Integer};

use super::complex::MpComplex;
use super::precision::{check_precision, default_precision};
use crate::error::{Error, Result};

/// Parses a complex literal at the default precision.
///
/// Accepted forms: a real number, `a+b*I`, `a+bi`, `a+bj`, and a lone
/// imaginary term such as `2.5*I` or `-j`. Numbers are decimal with an
/// optional fraction and exponent. Surrounding whitespace is ignored.
///
/// A part whose literal needs more bits than the default to be held exactly
/// (or, for non-dyadic decimals, to keep every given digit) is stored at that
/// larger precision.
pub fn parse_complex(text: &str) -> Result<MpComplex> {
    parse_complex_with_prec(text, default_precision())
}

pub fn parse_complex_with_prec(text: &str, prec: u32) -> Result<MpComplex> {
    check_precision(prec)?;
    Parser::new(text, prec).complex()
}

/// Parses a signed real decimal literal with the same precision rules.
pub fn parse_real_with_prec(text: &str, prec: u32) -> Result<Float> {
    check_precision(prec)?;
    let mut p = Parser::new(text, prec);
    p.skip_ws();
    let neg = p.sign();
    p.skip_ws();
    let x = p.number()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing characters after number"));
    }
    Ok(if neg { -x } else { x })
}

enum Term {
    Real(Float),
    Imag(Float),
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    prec: u32,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, prec: u32) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            prec,
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn is_unit(b: Option<u8>) -> bool {
        matches!(b, Some(b'I' | b'i' | b'j'))
    }

    fn complex(&mut self) -> Result<MpComplex> {
        self.skip_ws();
        if self.at_end() {
            return Err(self.error("empty literal"));
        }
        let neg = self.sign();
        self.skip_ws();
        let first = self.term(neg)?;
        self.skip_ws();
        let second = if self.at_end() {
            None
        } else {
            let neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Err(self.error("expected '+' or '-' between parts")),
            };
            self.pos += 1;
            self.skip_ws();
            let t = self.term(neg)?;
            self.skip_ws();
            if !self.at_end() {
                return Err(self.error("unexpected trailing characters"));
            }
            Some(t)
        };
        let (mut re, mut im) = (None, None);
        for t in std::iter::once(first).chain(second) {
            match t {
                Term::Real(x) if re.is_none() => re = Some(x),
                Term::Imag(x) if im.is_none() => im = Some(x),
                _ => return Err(self.error("real or imaginary part given twice")),
            }
        }
        let re = re.unwrap_or_else(|| Float::new(self.prec));
        let im = im.unwrap_or_else(|| Float::new(self.prec));
        Ok(MpComplex::from_parts(re, im))
    }

    fn term(&mut self, neg: bool) -> Result<Term> {
        let negate = |x: Float| if neg { -x } else { x };
        if Self::is_unit(self.peek()) {
            self.pos += 1;
            return Ok(Term::Imag(negate(Float::with_val(self.prec, 1))));
        }
        let x = negate(self.number()?);
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            if !Self::is_unit(self.peek()) {
                return Err(self.error("expected imaginary unit after '*'"));
            }
            self.pos += 1;
            return Ok(Term::Imag(x));
        }
        if Self::is_unit(self.peek()) && self.pos == save {
            self.pos += 1;
            return Ok(Term::Imag(x));
        }
        self.pos = save;
        Ok(Term::Real(x))
    }

    /// Unsigned decimal literal.
    fn number(&mut self) -> Result<Float> {
        let start = self.pos;
        let mut digits = String::new();
        let mut frac_len: i64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            digits.push(b as char);
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while let Some(b @ b'0'..=b'9') = self.peek() {
                digits.push(b as char);
                frac_len += 1;
                self.pos += 1;
            }
        }
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        let mut exp10: i64 = 0;
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.pos += 1;
            let neg = self.sign();
            let exp_start = self.pos;
            while let Some(b'0'..=b'9') = self.peek() {
                self.pos += 1;
            }
            if exp_start == self.pos {
                return Err(self.error("missing exponent digits"));
            }
            exp10 = self.src[exp_start..self.pos]
                .parse::<i64>()
                .map_err(|_| self.error("exponent out of range"))?;
            if neg {
                exp10 = -exp10;
            }
        }
        let literal = &self.src[start..self.pos];
        let prec = self
            .prec
            .max(bits_to_hold(&digits, exp10.saturating_sub(frac_len)));
        let parsed = Float::parse(literal).map_err(|e| Error::Parse {
            position: start,
            message: e.to_string(),
        })?;
        Ok(Float::with_val(prec, parsed))
    }
}

/// Bits needed to store `digits * 10^exp10` exactly when it is dyadic, or to
/// keep all significant digits otherwise.
fn bits_to_hold(digits: &str, exp10: i64) -> u32 {
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        return 2;
    }
    let significant = trimmed.trim_end_matches('0');
    let exp10 = exp10.saturating_add((trimmed.len() - significant.len()) as i64);
    let decimal_bits = (significant.len() as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    // exponents this large never give exact dyadic values
    if exp10.unsigned_abs() > 4096 {
        return decimal_bits.max(2);
    }
    let mut m: Integer = significant.parse().expect("digit string");
    if exp10 >= 0 {
        m *= Integer::from(5).pow(exp10 as u32);
    } else {
        let five_k = Integer::from(5).pow((-exp10) as u32);
        if !m.is_divisible(&five_k) {
            return decimal_bits.max(2);
        }
        m /= five_k;
    }
    let odd_bits = m.significant_bits() - m.find_one(0).unwrap_or(0);
    odd_bits.max(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> MpComplex {
        parse_complex_with_prec(s, 64).unwrap()
    }

    #[test]
    fn accepts_the_three_styles() {
        let z = MpComplex::from_f64_parts(3.0, 4.0, 64);
        assert_eq!(parse("3+4*I"), z);
        assert_eq!(parse("3+4i"), z);
        assert_eq!(parse("3+4j"), z);
        assert_eq!(parse("  3 + 4 * I "), z);
    }

    #[test]
    fn real_and_scientific_literals() {
        assert_eq!(parse("64919121"), MpComplex::from_f64(64919121.0, 64));
        assert_eq!(
            parse("1.5-2e3j"),
            MpComplex::from_f64_parts(1.5, -2000.0, 64)
        );
        assert_eq!(parse("-.25"), MpComplex::from_f64(-0.25, 64));
        assert_eq!(parse("-j"), MpComplex::from_f64_parts(0.0, -1.0, 64));
        assert_eq!(parse("2.5E-1*I"), MpComplex::from_f64_parts(0.0, 0.25, 64));
    }

    #[test]
    fn malformed_literals_report_position() {
        for (s, at) in [
            ("", 0),
            ("3+", 2),
            ("3+4*", 4),
            ("1e", 2),
            ("3 4", 2),
            ("1+2+3i", 3),
        ] {
            match parse_complex_with_prec(s, 64) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, at, "{s:?}"),
                other => panic!("{s:?} gave {other:?}"),
            }
        }
        assert!(parse_complex_with_prec("3i+4j", 64).is_err());
    }

    #[test]
    fn extreme_exponents_do_not_overflow() {
        let tiny = parse_complex_with_prec("0.25e-9223372036854775807", 64).unwrap();
        assert!(tiny.is_zero());
        let huge = parse_complex_with_prec("1e9223372036854775807", 64).unwrap();
        assert!(huge.re.is_infinite());
        assert!(parse_complex_with_prec("1e99999999999999999999", 64).is_err());
    }

    #[test]
    fn precision_escalates_to_hold_every_digit() {
        // 41869520.5 = 83739041 / 2 needs 27 significand bits.
        let z = parse_complex_with_prec("41869520.5", 16).unwrap();
        assert_eq!(z.re.prec(), 27);
        assert_eq!(z.re, Float::with_val(64, 41869520.5));
        // short literals stay at the requested precision
        assert_eq!(parse_complex_with_prec("0.5", 300).unwrap().prec(), 300);
        // a 40-digit non-dyadic literal needs ceil(40 log2 10) bits
        let long = "0.1234567890123456789012345678901234567891";
        assert_eq!(parse_complex_with_prec(long, 53).unwrap().re.prec(), 133);
    }

    #[test]
    fn bits_for_exact_values() {
        assert_eq!(bits_to_hold("64919121", 0), 26);
        assert_eq!(bits_to_hold("1024", 0), 2);
        assert_eq!(bits_to_hold("3", -1), 4); // 0.3 is not dyadic: one digit
        assert_eq!(bits_to_hold("0000", 0), 2);
    }
}
