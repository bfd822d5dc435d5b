//! Low-precision unsigned magnitudes with directed rounding.
//!
//! A [`Mag`] stores `man * 2^exp` with a 30-bit mantissa. Every operation
//! suffixed `_up` returns a value no smaller than the exact result, every
//! `_down` operation a value no larger. Ball radii are carried as `Mag`.

use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::Zero;

pub(crate) const MAG_BITS: u32 = 30;
const MAG_TOP: u64 = 1 << MAG_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// `2^e`, exactly.
    pub fn pow2(e: i64) -> Mag {
        Mag {
            man: 1 << (MAG_BITS - 1),
            exp: e - (MAG_BITS as i64 - 1),
        }
    }

    pub fn from_u64_up(v: u64) -> Mag {
        Self::from_parts(v as u128, 0, true)
    }

    /// Rebuilds a magnitude from a stored mantissa/exponent pair.
    pub fn from_raw(man: u64, exp: i64) -> Mag {
        Self::from_parts(man as u128, exp, true)
    }

    fn from_parts(v: u128, e: i64, up: bool) -> Mag {
        if v == 0 {
            return Mag::ZERO;
        }
        let bl = 128 - v.leading_zeros();
        if bl > MAG_BITS {
            let shift = bl - MAG_BITS;
            let mut m = (v >> shift) as u64;
            let mut ex = e + shift as i64;
            if up && v & ((1u128 << shift) - 1) != 0 {
                m += 1;
                if m == MAG_TOP {
                    m >>= 1;
                    ex += 1;
                }
            }
            Mag { man: m, exp: ex }
        } else {
            let shift = MAG_BITS - bl;
            Mag {
                man: (v as u64) << shift,
                exp: e - shift as i64,
            }
        }
    }

    /// Upper bound for `|x| * 2^e`.
    pub fn from_bigint_up(x: &BigInt, e: i64) -> Mag {
        Self::from_biguint(x.magnitude(), e, true)
    }

    /// Lower bound for `|x| * 2^e`.
    pub fn from_bigint_down(x: &BigInt, e: i64) -> Mag {
        Self::from_biguint(x.magnitude(), e, false)
    }

    fn from_biguint(x: &BigUint, e: i64, up: bool) -> Mag {
        if x.is_zero() {
            return Mag::ZERO;
        }
        let bl = x.bits();
        if bl <= 64 {
            let v = x.iter_u64_digits().next().unwrap_or(0);
            return Self::from_parts(v as u128, e, up);
        }
        let shift = bl - 64;
        let top: BigUint = x >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0) as u128;
        let lost = up && x.trailing_zeros().is_some_and(|tz| tz < shift);
        let v = if lost { v + 1 } else { v };
        Self::from_parts(v, e + shift as i64, up)
    }

    /// Upper bound on an `f64` magnitude (for diagnostics and bounds derived in floating point).
    pub fn from_f64_up(x: f64) -> Mag {
        let x = x.abs();
        if x == 0.0 || !x.is_finite() {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts(m as u128, e, true)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        libm::ldexp(self.man as f64, e)
    }

    pub fn to_bigint_exact(&self) -> (BigInt, i64) {
        (BigInt::from(self.man), self.exp)
    }

    /// Exponent of the leading bit: `2^top <= self < 2^(top+1)`.
    fn top(&self) -> i64 {
        self.exp + (64 - self.man.leading_zeros()) as i64 - 1
    }

    /// Smallest `e` with `self <= 2^e`.
    pub fn ceil_log2(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 4;
        }
        if self.man.is_power_of_two() {
            self.top()
        } else {
            self.top() + 1
        }
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let d = hi.exp - lo.exp;
        if d > 90 {
            return Self::from_parts(((hi.man as u128) << 1) + 1, hi.exp - 1, true);
        }
        Self::from_parts(((hi.man as u128) << d) + lo.man as u128, lo.exp, true)
    }

    /// `max(self - other, 0)` rounded down.
    pub fn sub_down(&self, other: &Mag) -> Mag {
        if other.is_zero() {
            return *self;
        }
        if *self <= *other {
            return Mag::ZERO;
        }
        let d = self.exp - other.exp;
        if d > 90 {
            return Self::from_parts(((self.man as u128) << 1) - 1, self.exp - 1, false);
        }
        // normalised mantissas share a bit length, so self > other forces d >= 0
        let v = ((self.man as u128) << d) - other.man as u128;
        Self::from_parts(v, other.exp, false)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Self::from_parts(self.man as u128 * other.man as u128, self.exp + other.exp, true)
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Self::from_parts(self.man as u128 * other.man as u128, self.exp + other.exp, false)
    }

    /// Upper bound of `self / other`; `other` must be nonzero.
    pub fn div_up(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128;
        let r = num % other.man as u128;
        Self::from_parts(q + u128::from(r != 0), self.exp - other.exp - 64, true)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact comparison with `|x| * 2^e`.
    pub fn cmp_bigint(&self, x: &BigInt, e: i64) -> Ordering {
        if x.sign() == BigSign::NoSign {
            return if self.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Greater
            };
        }
        if self.is_zero() {
            return Ordering::Less;
        }
        let x_top = x.bits() as i64 - 1 + e;
        let s_top = self.top();
        if s_top != x_top {
            return s_top.cmp(&x_top);
        }
        let common = self.exp.min(e);
        let a = BigUint::from(self.man) << (self.exp - common) as usize;
        let b = x.magnitude() << (e - common) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // normalised mantissas share the same bit length
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}
