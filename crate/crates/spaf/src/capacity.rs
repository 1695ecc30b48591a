//! Exact positive decimal capacities.
//!
//! Capacities are compared by exact value, never as floats: `5`, `5.0` and
//! `05.00` all normalize to the same `Capacity`, while `0.1` stays exactly
//! one tenth. Solvers never touch these directly — they work on dense ranks
//! (see `FlowRank`) and map back to values at the output boundary.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Result, SpafError};

/// Largest number of significant digits we accept in a literal. Keeps every
/// cross-scale comparison inside u128 without rounding.
const MAX_DIGITS: usize = 19;

/// A positive decimal number with exact comparison semantics.
///
/// Stored as `mantissa / 10^scale`, normalized so that either `scale == 0`
/// or `mantissa % 10 != 0`. The normalized form is what `Display` prints and
/// what hashing and equality use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Capacity {
    mantissa: u64,
    scale: u32,
}

impl Capacity {
    /// Parses a plain positive decimal literal (`12`, `0.5`, `7.25`).
    /// Exponent notation, signs, and zero are rejected.
    pub fn parse(literal: &str) -> Result<Capacity> {
        let err = |msg: &str| SpafError::InvalidCapacity {
            literal: literal.to_string(),
            msg: msg.to_string(),
        };

        let (int_part, frac_part) = match literal.split_once('.') {
            Some((i, f)) => (i, f),
            None => (literal, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("empty literal"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err("expected a plain decimal (digits and at most one '.')"));
        }

        // Strip leading zeros of the integer part and trailing zeros of the
        // fraction; what remains is the significand.
        let int_trim = int_part.trim_start_matches('0');
        let frac_trim = frac_part.trim_end_matches('0');

        let digits: String = int_trim.chars().chain(frac_trim.chars()).collect();
        if digits.is_empty() {
            return Err(err("capacity must be positive"));
        }
        if digits.len() > MAX_DIGITS {
            return Err(err("too many significant digits"));
        }
        let mut mantissa: u64 = digits.parse().map_err(|_| err("unparsable digits"))?;
        let mut scale = frac_trim.len() as u32;
        // `digits` may still carry trailing zeros from the integer part
        // (e.g. "50"): those stay — only fractional zeros were stripped.
        // Normalize fully: 5.10 -> (51,1) -> nothing further; 50 -> (50,0) ok.
        while scale > 0 && mantissa.is_multiple_of(10) {
            mantissa /= 10;
            scale -= 1;
        }
        if mantissa == 0 {
            return Err(err("capacity must be positive"));
        }
        Ok(Capacity { mantissa, scale })
    }

    /// Convenience constructor for whole-number capacities.
    pub fn from_u64(value: u64) -> Capacity {
        Capacity::parse(&value.to_string()).expect("positive integer literal")
    }

    /// Approximate value, for diagnostics only.
    pub fn as_f64(&self) -> f64 {
        self.mantissa as f64 / 10f64.powi(self.scale as i32)
    }
}

impl Ord for Capacity {
    fn cmp(&self, other: &Capacity) -> Ordering {
        // Align scales in u128; MAX_DIGITS keeps both products < 10^38.
        let (a, b) = (self.mantissa as u128, other.mantissa as u128);
        match self.scale.cmp(&other.scale) {
            Ordering::Equal => a.cmp(&b),
            Ordering::Less => (a * 10u128.pow(other.scale - self.scale)).cmp(&b),
            Ordering::Greater => a.cmp(&(b * 10u128.pow(self.scale - other.scale))),
        }
    }
}

impl PartialOrd for Capacity {
    fn partial_cmp(&self, other: &Capacity) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let digits = self.mantissa.to_string();
        let scale = self.scale as usize;
        if digits.len() > scale {
            let split = digits.len() - scale;
            write!(f, "{}.{}", &digits[..split], &digits[split..])
        } else {
            write!(f, "0.{}{}", "0".repeat(scale - digits.len()), digits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(s: &str) -> Capacity {
        Capacity::parse(s).unwrap()
    }

    #[test]
    fn normalizes_equivalent_literals() {
        assert_eq!(cap("5"), cap("5.0"));
        assert_eq!(cap("05.00"), cap("5"));
        assert_eq!(cap("0.50"), cap(".5"));
        assert_eq!(cap("5").to_string(), "5");
        assert_eq!(cap("5.0").to_string(), "5");
        assert_eq!(cap("12.50").to_string(), "12.5");
        assert_eq!(cap("0.005").to_string(), "0.005");
        assert_eq!(cap(".5").to_string(), "0.5");
    }

    #[test]
    fn exact_ordering_across_scales() {
        assert!(cap("0.1") < cap("0.2"));
        assert!(cap("2") < cap("10"));
        assert!(cap("9.99") < cap("10"));
        assert!(cap("0.3") > cap("0.25"));
        assert_eq!(cap("1.10").cmp(&cap("1.1")), Ordering::Equal);
        // Would collide under f32 and is awkward under f64 round-tripping.
        assert!(cap("0.30000000000000004") > cap("0.3"));
    }

    #[test]
    fn rejects_bad_literals() {
        for bad in ["0", "0.0", "00.0", "-1", "+1", "1e3", "", ".", "1.2.3", "a", "1 "] {
            assert!(Capacity::parse(bad).is_err(), "accepted {bad:?}");
        }
        // 20 significant digits: over the exactness budget.
        assert!(Capacity::parse("12345678901234567890").is_err());
        assert!(Capacity::parse("1234567890123456789").is_ok());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1", "42", "0.5", "0.005", "12.5", "1234567890123456789", "0.0000000000000000001"] {
            let c = cap(s);
            assert_eq!(Capacity::parse(&c.to_string()).unwrap(), c);
        }
    }
}
