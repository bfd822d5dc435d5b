//! Exact rationals.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericsError;

/// Arbitrary-size rational in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// `n / d` as an [`ExactRational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `"p/q"` or `"p"`.
pub fn to_fraction_string(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"` / `"3e-2"`.
pub fn parse_rational(s: &str) -> Result<ExactRational, NumericsError> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return Err(NumericsError::Parse(format!("zero denominator in {s}")));
        }
        return Ok(n / d);
    }
    parse_decimal(s)
}

/// Parses a finite decimal literal with optional exponent.
pub fn parse_decimal(s: &str) -> Result<ExactRational, NumericsError> {
    let bad = || NumericsError::Parse(format!("not a number: {s:?}"));
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.as_bytes().first() {
        Some(b'-') => (true, &body[1..]),
        Some(b'+') => (false, &body[1..]),
        _ => (false, body),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut n: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let e10 = exp - fp.len() as i64;
    if e10.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let p = num_traits::pow(BigInt::from(10), e10.unsigned_abs() as usize);
    Ok(if e10 >= 0 {
        ExactRational::from_integer(n * p)
    } else {
        ExactRational::new(n, p)
    })
}

/// Rising factorial `(x)_k`.
pub fn pochhammer(x: &ExactRational, k: u32) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += ExactRational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * k)
}

/// Nearest `f64` (ties arbitrary), for reporting only.
pub fn rational_to_f64(q: &ExactRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let n = q.numer();
    let d = q.denom();
    let shift = d.bits() as i64 - n.bits() as i64 + 64;
    let scaled = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let bl = scaled.bits();
    let (m, e) = if bl > 62 {
        (&scaled >> (bl - 62) as usize, bl as i64 - 62 - shift)
    } else {
        (scaled.clone(), -shift)
    };
    let mf = i64::try_from(m.abs()).unwrap_or(i64::MAX) as f64;
    let v = libm::ldexp(mf, e.clamp(-3000, 3000) as i32);
    if q.is_negative() {
        -v
    } else {
        v
    }
}
