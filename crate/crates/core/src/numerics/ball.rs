//! Midpoint-radius real balls.
//!
//! The midpoint is a binary float with an arbitrary-size mantissa rounded to
//! the ball's working precision; the radius is a [`Mag`]. Each primitive rounds
//! the midpoint to nearest and adds the rounding error plus the propagated
//! operand radii, so the output always encloses every exact result obtainable
//! from points of the input balls.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mag::Mag;
use super::rational::ExactRational;
use super::{NumericsError, Sign};

/// Default working precision for freshly built balls.
pub const DEFAULT_PRECISION: u32 = 128;
/// Default cap for precision escalation loops.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// `man * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Float {
    pub(crate) man: BigInt,
    pub(crate) exp: i64,
}

impl Float {
    pub(crate) fn zero() -> Float {
        Float {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub(crate) fn from_int(n: BigInt) -> Float {
        Float { man: n, exp: 0 }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    fn bits(&self) -> u64 {
        self.man.bits()
    }

    fn neg(&self) -> Float {
        Float {
            man: -&self.man,
            exp: self.exp,
        }
    }

    fn add_exact(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Float { man: a + b, exp: e }
    }

    fn mul_exact(&self, other: &Float) -> Float {
        Float {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    /// Rounds to `prec` bits (nearest); returns the value and an error bound.
    pub(crate) fn round(self, prec: u32) -> (Float, Mag) {
        let bl = self.bits();
        if bl <= prec as u64 {
            return (self.normalized(), Mag::ZERO);
        }
        let shift = bl - prec as u64;
        let half = BigInt::one() << (shift - 1) as usize;
        let man = (self.man + half) >> shift as usize;
        let out = Float {
            man,
            exp: self.exp + shift as i64,
        };
        (out.normalized(), Mag::pow2(self.exp + shift as i64 - 1))
    }

    /// Strips trailing zero bits so equal values share one representation.
    fn normalized(self) -> Float {
        if self.man.is_zero() {
            return Float::zero();
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            return self;
        }
        Float {
            man: self.man >> tz as usize,
            exp: self.exp + tz as i64,
        }
    }

    /// `self / other` to `prec` bits: quotient plus error bound.
    fn div(&self, other: &Float, prec: u32) -> (Float, Mag) {
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let k = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0);
        let num = &self.man << k as usize;
        let (q, r) = num.div_rem(&other.man);
        let e = self.exp - other.exp - k;
        let trunc = if r.is_zero() { Mag::ZERO } else { Mag::pow2(e) };
        let (out, err) = Float { man: q, exp: e }.round(prec);
        (out, err.add_up(&trunc))
    }

    pub(crate) fn abs_up(&self) -> Mag {
        Mag::from_bigint_up(&self.man, self.exp)
    }

    pub(crate) fn abs_down(&self) -> Mag {
        Mag::from_bigint_down(&self.man, self.exp)
    }

    fn from_mag(m: &Mag) -> Float {
        let (man, exp) = m.to_bigint_exact();
        Float { man, exp }.normalized()
    }

    pub(crate) fn to_rational(&self) -> ExactRational {
        if self.exp >= 0 {
            ExactRational::from_integer(&self.man << self.exp as usize)
        } else {
            ExactRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub(crate) fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bl = self.bits();
        let (m, e) = if bl > 60 {
            let s = bl - 60;
            (&self.man >> s as usize, self.exp + s as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        let mf = i64::try_from(&m).unwrap_or(0) as f64;
        libm::ldexp(mf, e.clamp(-3000, 3000) as i32)
    }

    fn sign(&self) -> BigSign {
        self.man.sign()
    }
}

/// A real number enclosure `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BallReal {
    mid: Float,
    rad: Mag,
    prec: u32,
}

impl fmt::Debug for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BallReal({:e} +/- {:e}, {} bits)",
            self.mid.to_f64(),
            self.rad.to_f64(),
            self.prec
        )
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:.3e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

impl BallReal {
    pub(crate) fn from_parts(mid: Float, rad: Mag, prec: u32) -> BallReal {
        BallReal {
            mid: mid.normalized(),
            rad,
            prec: prec.max(2),
        }
    }

    pub fn zero(prec: u32) -> BallReal {
        Self::from_parts(Float::zero(), Mag::ZERO, prec)
    }

    pub fn one(prec: u32) -> BallReal {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> BallReal {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> BallReal {
        let (mid, rad) = Float::from_int(n).round(prec);
        Self::from_parts(mid, rad, prec)
    }

    /// Ball enclosing the rational `q` at `prec` bits.
    pub fn from_rational(q: &ExactRational, prec: u32) -> BallReal {
        let num = Float::from_int(q.numer().clone());
        let den = Float::from_int(q.denom().clone());
        let (mid, rad) = num.div(&den, prec);
        Self::from_parts(mid, rad, prec)
    }

    /// Exact ball `m * 2^e`, radius `r`.
    pub fn from_mid_rad(man: BigInt, exp: i64, rad: Mag, prec: u32) -> BallReal {
        let (mid, err) = Float { man, exp }.round(prec);
        Self::from_parts(mid, rad.add_up(&err), prec)
    }

    /// Ball containing `x` with radius inflated by one unit in the last place of `f64`.
    pub fn from_f64(x: f64, prec: u32) -> BallReal {
        let (man, exp) = decompose_f64(x);
        Self::from_mid_rad(man, exp, Mag::ZERO, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn midpoint_parts(&self) -> (&BigInt, i64) {
        (&self.mid.man, self.mid.exp)
    }

    pub fn midpoint_rational(&self) -> ExactRational {
        self.mid.to_rational()
    }

    pub fn radius_rational(&self) -> ExactRational {
        Float::from_mag(&self.rad).to_rational()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rad.is_zero() && self.mid.is_zero()
    }

    /// Certified sign of the ball.
    pub fn sign(&self) -> Sign {
        if self.is_exact_zero() {
            return Sign::Zero;
        }
        if self.rad.cmp_bigint(&self.mid.man, self.mid.exp) == Ordering::Less {
            match self.mid.sign() {
                BigSign::Plus => Sign::Positive,
                BigSign::Minus => Sign::Negative,
                BigSign::NoSign => Sign::Unknown,
            }
        } else {
            Sign::Unknown
        }
    }

    pub fn contains_zero(&self) -> bool {
        !matches!(self.sign(), Sign::Positive | Sign::Negative)
    }

    /// Whether `q` lies in the ball.
    pub fn contains_rational(&self, q: &ExactRational) -> bool {
        let diff = (q - self.mid.to_rational()).abs();
        diff <= self.radius_rational()
    }

    /// Whether the two balls share a point.
    pub fn overlaps(&self, other: &BallReal) -> bool {
        let d = (self.mid.to_rational() - other.mid.to_rational()).abs();
        d <= self.radius_rational() + other.radius_rational()
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &BallReal) -> bool {
        let d = (self.mid.to_rational() - other.mid.to_rational()).abs();
        d + other.radius_rational() <= self.radius_rational()
    }

    /// Re-rounds the midpoint to `bits`, inflating the radius by the rounding error.
    pub fn with_precision(&self, bits: u32) -> BallReal {
        let bits = bits.max(2);
        let (mid, err) = self.mid.clone().round(bits);
        Self::from_parts(mid, self.rad.add_up(&err), bits)
    }

    /// Adds `e` to the radius.
    pub fn add_error(&self, e: &Mag) -> BallReal {
        Self::from_parts(self.mid.clone(), self.rad.add_up(e), self.prec)
    }

    /// Upper bound on `|x|` for every `x` in the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid.abs_up().add_up(&self.rad)
    }

    /// Lower bound on `|x|` for every `x` in the ball (zero if the ball straddles 0).
    pub fn abs_lower(&self) -> Mag {
        self.mid.abs_down().sub_down(&self.rad)
    }

    fn out_prec(&self, other: &BallReal) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn neg(&self) -> BallReal {
        Self::from_parts(self.mid.neg(), self.rad, self.prec)
    }

    pub fn add(&self, other: &BallReal) -> BallReal {
        let prec = self.out_prec(other);
        let (mid, err) = self.mid.add_exact(&other.mid).round(prec);
        let rad = self.rad.add_up(&other.rad).add_up(&err);
        Self::from_parts(mid, rad, prec)
    }

    pub fn sub(&self, other: &BallReal) -> BallReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BallReal) -> BallReal {
        let prec = self.out_prec(other);
        let (mid, err) = self.mid.mul_exact(&other.mid).round(prec);
        let mut rad = err;
        if !other.rad.is_zero() {
            rad = rad.add_up(&self.mid.abs_up().mul_up(&other.rad));
        }
        if !self.rad.is_zero() {
            rad = rad.add_up(&other.mid.abs_up().mul_up(&self.rad));
            rad = rad.add_up(&self.rad.mul_up(&other.rad));
        }
        Self::from_parts(mid, rad, prec)
    }

    pub fn mul_int(&self, n: i64) -> BallReal {
        self.mul(&BallReal::from_int(n, self.prec))
    }

    /// `self * 2^e`, exact.
    pub fn mul_2exp(&self, e: i64) -> BallReal {
        let mid = Float {
            man: self.mid.man.clone(),
            exp: self.mid.exp + e,
        };
        Self::from_parts(mid, self.rad.mul_2exp(e), self.prec)
    }

    pub fn sqr(&self) -> BallReal {
        self.mul(self)
    }

    /// Division; fails unless the divisor is certified nonzero.
    pub fn div(&self, other: &BallReal) -> Result<BallReal, NumericsError> {
        match other.sign() {
            Sign::Zero => return Err(NumericsError::DivisionByZero),
            Sign::Unknown => return Err(NumericsError::SignUnknown),
            _ => {}
        }
        let prec = self.out_prec(other);
        let (q, err) = self.mid.div(&other.mid, prec);
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(Self::from_parts(q, err, prec));
        }
        // |a/b - am/bm| <= (ar + |am/bm| br) / (|bm| - br)
        let qa = q.abs_up().add_up(&err);
        let num = self.rad.add_up(&qa.mul_up(&other.rad));
        let den = other.mid.abs_down().sub_down(&other.rad);
        if den.is_zero() {
            return Err(NumericsError::SignUnknown);
        }
        let rad = num.div_up(&den).add_up(&err);
        Ok(Self::from_parts(q, rad, prec))
    }

    pub fn div_int(&self, n: i64) -> BallReal {
        assert!(n != 0, "division by integer zero");
        self.div(&BallReal::from_int(n, self.prec))
            .expect("nonzero integer divisor")
    }

    pub fn inv(&self) -> Result<BallReal, NumericsError> {
        BallReal::one(self.prec).div(self)
    }

    pub fn pow(&self, mut e: u32) -> BallReal {
        let mut base = self.clone();
        let mut acc = BallReal::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Union hull of two balls.
    pub fn hull(&self, other: &BallReal) -> BallReal {
        let prec = self.out_prec(other);
        let lo = (self.mid.to_rational() - self.radius_rational())
            .min(other.mid.to_rational() - other.radius_rational());
        let hi = (self.mid.to_rational() + self.radius_rational())
            .max(other.mid.to_rational() + other.radius_rational());
        BallReal::from_interval(&lo, &hi, prec)
    }

    /// Ball enclosing the rational interval `[lo, hi]`.
    pub fn from_interval(lo: &ExactRational, hi: &ExactRational, prec: u32) -> BallReal {
        let two = ExactRational::from_integer(BigInt::from(2));
        let mid = BallReal::from_rational(&((lo + hi) / &two), prec);
        let half = (hi - lo).abs() / two;
        let half = BallReal::from_rational(&half, 64);
        mid.add_error(&half.abs_upper())
    }

    /// Lower and upper endpoints as rationals.
    pub fn endpoints(&self) -> (ExactRational, ExactRational) {
        let m = self.mid.to_rational();
        let r = self.radius_rational();
        (&m - &r, m + r)
    }

    /// Exact decimal rendering of the midpoint.
    pub fn mid_decimal(&self) -> String {
        dyadic_to_decimal(&self.mid.man, self.mid.exp)
    }

    /// Exact decimal rendering of the radius.
    pub fn rad_decimal(&self) -> String {
        let (m, e) = self.rad.to_bigint_exact();
        dyadic_to_decimal(&m, e)
    }

    /// Inverse of [`mid_decimal`](Self::mid_decimal) / [`rad_decimal`](Self::rad_decimal).
    pub fn from_decimal_parts(mid: &str, rad: &str, bits: u32) -> Result<BallReal, NumericsError> {
        let (mm, me) = decimal_to_dyadic(mid)?;
        let (rm, re) = decimal_to_dyadic(rad)?;
        if rm.is_negative() {
            return Err(NumericsError::Parse(String::from("negative radius")));
        }
        let rad = Mag::from_bigint_up(&rm, re);
        if rad.cmp_bigint(&rm, re) != Ordering::Equal {
            return Err(NumericsError::Parse(String::from(
                "radius is not a representable magnitude",
            )));
        }
        Ok(Self::from_parts(Float { man: mm, exp: me }, rad, bits))
    }
}

fn decompose_f64(x: f64) -> (BigInt, i64) {
    if x == 0.0 || !x.is_finite() {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let m = BigInt::from(m);
    (if neg { -m } else { m }, e)
}

/// Exact decimal expansion of `m * 2^e`.
pub(crate) fn dyadic_to_decimal(m: &BigInt, e: i64) -> String {
    use alloc::format;
    use alloc::string::ToString;
    if m.is_zero() {
        return String::from("0");
    }
    if e >= 0 {
        return (m << e as usize).to_string();
    }
    // m / 2^k = m * 5^k / 10^k
    let k = (-e) as u32;
    let scaled = m.abs() * num_traits::pow(BigInt::from(5), k as usize);
    let digits = scaled.to_string();
    let k = k as usize;
    let (int_part, frac_part) = if digits.len() > k {
        (
            String::from(&digits[..digits.len() - k]),
            String::from(&digits[digits.len() - k..]),
        )
    } else {
        let mut pad = String::new();
        for _ in 0..(k - digits.len()) {
            pad.push('0');
        }
        (String::from("0"), pad + &digits)
    };
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if m.is_negative() { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Parses a finite decimal that denotes a dyadic rational.
pub(crate) fn decimal_to_dyadic(s: &str) -> Result<(BigInt, i64), NumericsError> {
    let s = s.trim();
    let q = super::rational::parse_decimal(s)?;
    let den = q.denom().clone();
    let tz = den.trailing_zeros().unwrap_or(0);
    if den != (BigInt::one() << tz as usize) {
        return Err(NumericsError::Parse(alloc::format!(
            "{s} is not a dyadic rational"
        )));
    }
    Ok((q.numer().clone(), -(tz as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn sign_examples() {
        let b = BallReal::from_mid_rad(BigInt::from(3), 0, Mag::from_u64_up(1), 64);
        assert_eq!(b.sign(), Sign::Positive);
        assert_eq!(BallReal::zero(64).sign(), Sign::Zero);
        // 0.1 +/- 0.2
        let b = BallReal::from_rational(&rat(1, 10), 64).add_error(&Mag::from_f64_up(0.2));
        assert_eq!(b.sign(), Sign::Unknown);
        let b = BallReal::from_rational(&rat(-5, 2), 64);
        assert_eq!(b.sign(), Sign::Negative);
    }

    #[test]
    fn one_third_at_64_bits() {
        let b = BallReal::from_rational(&rat(1, 3), 64);
        assert!(b.contains_rational(&rat(1, 3)));
        assert!(b.radius().ceil_log2() <= -62);
    }

    #[test]
    fn with_precision_encloses() {
        let two = BallReal::from_int(2, 64);
        for bits in [2u32, 3, 10, 200] {
            assert!(two.with_precision(bits).contains_rational(&rat(2, 1)));
        }
        let third = BallReal::from_rational(&rat(1, 3), 256);
        let low = third.with_precision(20);
        assert!(low.contains_rational(&rat(1, 3)));
        assert!(low.contains_ball(&third));
        let s = third.add(&third);
        assert!(s.contains_rational(&rat(2, 3)));
    }

    #[test]
    fn division_requires_certified_divisor() {
        let a = BallReal::one(64);
        let z = BallReal::zero(64);
        assert_eq!(a.div(&z), Err(NumericsError::DivisionByZero));
        let fuzzy = BallReal::from_rational(&rat(1, 100), 64).add_error(&Mag::from_f64_up(0.5));
        assert_eq!(a.div(&fuzzy), Err(NumericsError::SignUnknown));
        let q = a.div(&BallReal::from_int(7, 64)).unwrap();
        assert!(q.contains_rational(&rat(1, 7)));
    }

    #[test]
    fn decimal_roundtrip_is_bit_exact() {
        let b = BallReal::from_rational(&rat(-22, 7), 200).add_error(&Mag::pow2(-190));
        let back = BallReal::from_decimal_parts(&b.mid_decimal(), &b.rad_decimal(), 200).unwrap();
        assert_eq!(back, b);
        assert_eq!(dyadic_to_decimal(&BigInt::from(3), -2), "0.75");
        assert_eq!(dyadic_to_decimal(&BigInt::from(-1), -3), "-0.125");
        assert_eq!(dyadic_to_decimal(&BigInt::from(5), 2), "20");
        assert!(decimal_to_dyadic("0.1").is_err());
    }

    #[test]
    fn pow_and_hull() {
        let h = BallReal::from_rational(&rat(3, 2), 128).pow(5);
        assert!(h.contains_rational(&rat(243, 32)));
        let u = BallReal::from_int(1, 64).hull(&BallReal::from_int(3, 64));
        assert!(u.contains_rational(&rat(1, 1)) && u.contains_rational(&rat(3, 1)));
    }
}
