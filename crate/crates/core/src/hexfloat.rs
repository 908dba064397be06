//! Lowercase hexadecimal binary64 literals, e.g. `-0x1.8p+1` for `-3`.
//!
//! Formatting is exact and parsing of anything this module prints returns
//! the same bits.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed hex float literal {0:?}")]
pub struct ParseHexError(pub String);

pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if exp_bits == 0 {
        (0, -1022)
    } else {
        (1, exp_bits - 1023)
    };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let dot = if digits.is_empty() { "" } else { "." };
    let esign = if exp >= 0 { "+" } else { "-" };
    format!("{sign}0x{lead}{dot}{digits}p{esign}{}", exp.abs())
}

/// `m · 2^e`, exact whenever the result is representable.
fn scale(m: u64, e: i32) -> f64 {
    let mut v = m as f64;
    let mut e = e;
    // Step in chunks that keep intermediates normal so only the last step rounds.
    while e > 1000 {
        v *= f64::powi(2.0, 1000);
        e -= 1000;
    }
    while e < -1000 {
        if v < f64::MIN_POSITIVE * f64::powi(2.0, 1000) {
            break;
        }
        v *= f64::powi(2.0, -1000);
        e += 1000;
    }
    if e < -1022 {
        v *= f64::powi(2.0, -1022);
        e += 1022;
    }
    v * f64::powi(2.0, e)
}

pub fn parse_hex(s: &str) -> Result<f64, ParseHexError> {
    let err = || ParseHexError(s.to_string());
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    match t {
        "inf" => return Ok(if neg { f64::NEG_INFINITY } else { f64::INFINITY }),
        "nan" => return Ok(f64::NAN),
        _ => {}
    }
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .ok_or_else(err)?;
    let (mant, exp) = t.split_once(['p', 'P']).ok_or_else(err)?;
    let exp: i32 = exp.parse().map_err(|_| err())?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let frac = frac_part.trim_end_matches('0');
    let joined = format!("{int_part}{frac}");
    let digits = joined.trim_start_matches('0');
    let frac_len = frac.len() as i32;
    if digits.len() > 15 {
        return Err(err());
    }
    let m = if digits.is_empty() {
        0
    } else {
        u64::from_str_radix(digits, 16).map_err(|_| err())?
    };
    let v = scale(m, exp - 4 * frac_len);
    if !v.is_finite() {
        return Err(err());
    }
    Ok(if neg { -v } else { v })
}

/// Binary64 that serializes as a hex literal and compares by bits.
#[derive(Clone, Copy)]
pub struct HexF64(pub f64);

impl PartialEq for HexF64 {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for HexF64 {}

impl fmt::Debug for HexF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:e})", format_hex(self.0), self.0)
    }
}

impl From<f64> for HexF64 {
    fn from(x: f64) -> Self {
        HexF64(x)
    }
}

impl Serialize for HexF64 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_hex(self.0))
    }
}

impl<'de> Deserialize<'de> for HexF64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex(&s).map(HexF64).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_literals() {
        assert_eq!(format_hex(1.0), "0x1p+0");
        assert_eq!(format_hex(-3.0), "-0x1.8p+1");
        assert_eq!(format_hex(0.1), "0x1.999999999999ap-4");
        assert_eq!(format_hex(0.0), "0x0p+0");
        assert_eq!(format_hex(-0.0), "-0x0p+0");
        assert_eq!(format_hex(f64::MIN_POSITIVE / 4.0), "0x0.4p-1022");
        assert_eq!(parse_hex("0x1.999999999999ap-4").unwrap(), 0.1);
        assert_eq!(parse_hex("0x10p-4").unwrap(), 1.0);
        assert_eq!(parse_hex("0x.8p+1").unwrap(), 1.0);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1.0", "0x", "0x1.0", "0xzp+0", "0x1p", "0x1.0000000000000001p+0"] {
            assert!(parse_hex(s).is_err(), "{s}");
        }
    }

    proptest! {
        #[test]
        fn round_trip_bits(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let back = parse_hex(&format_hex(x)).unwrap();
            prop_assert_eq!(back.to_bits(), bits);
        }
    }
}
