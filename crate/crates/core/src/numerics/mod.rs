//! Coefficient arithmetic: exact rationals and midpoint-radius balls behind
//! one [`Scalar`] trait, so polynomial code runs unchanged on either path.

use alloc::string::String;
use core::fmt;

mod ball;
mod elementary;
mod mag;
pub mod rational;

pub use ball::{BallReal, DEFAULT_PRECISION, DEFAULT_PRECISION_CAP};
pub use elementary::{exp, pi};
pub use mag::Mag;
pub use rational::{int, parse_rational, rat, ExactRational};

use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Unknown,
}

impl Sign {
    pub fn is_known(self) -> bool {
        self != Sign::Unknown
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            s => s,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (Sign::Unknown, _) | (_, Sign::Unknown) => Sign::Unknown,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    /// `+1`, `-1`, `0`; `None` when unknown.
    pub fn as_i32(self) -> Option<i32> {
        match self {
            Sign::Positive => Some(1),
            Sign::Negative => Some(-1),
            Sign::Zero => Some(0),
            Sign::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumericsError {
    DivisionByZero,
    /// A divisor ball straddles zero.
    SignUnknown,
    Parse(String),
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::DivisionByZero => write!(f, "division by zero"),
            NumericsError::SignUnknown => write!(f, "divisor sign could not be certified"),
            NumericsError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

/// Ball sign as a free function.
pub fn ball_sign(x: &BallReal) -> Sign {
    x.sign()
}

/// Coefficient kinds usable in polynomials and series.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Construction context: `()` for exact values, working precision for balls.
    type Ctx: Copy + fmt::Debug + PartialEq + Send + Sync;

    const EXACT: bool;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: Self::Ctx) -> Self;
    fn from_rational_in(q: &ExactRational, ctx: Self::Ctx) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, o: &Self) -> Result<Self, NumericsError>;

    fn sign(&self) -> Sign;
    /// True only for a value that is certainly zero.
    fn is_exact_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Exact value when the scalar carries no uncertainty.
    fn as_rational(&self) -> Option<ExactRational>;

    /// Converts a ball; exact scalars accept only zero-radius balls.
    fn from_ball(b: &BallReal) -> Option<Self>;

    /// Enclosing ball (exact values at the default precision).
    fn to_ball(&self) -> BallReal;

    fn one_in(ctx: Self::Ctx) -> Self {
        Self::from_rational_in(&ExactRational::one(), ctx)
    }

    fn from_i64_in(n: i64, ctx: Self::Ctx) -> Self {
        Self::from_rational_in(&int(n), ctx)
    }

    fn scale(&self, q: &ExactRational) -> Self {
        self.mul(&Self::from_rational_in(q, self.ctx()))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_in(self.ctx());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Scalar for ExactRational {
    type Ctx = ();
    const EXACT: bool = true;

    fn ctx(&self) {}
    fn zero_in(_: ()) -> Self {
        ExactRational::zero()
    }
    fn from_rational_in(q: &ExactRational, _: ()) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, o: &Self) -> Result<Self, NumericsError> {
        if o.is_zero() {
            Err(NumericsError::DivisionByZero)
        } else {
            Ok(self / o)
        }
    }
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn to_f64(&self) -> f64 {
        rational::rational_to_f64(self)
    }
    fn as_rational(&self) -> Option<ExactRational> {
        Some(self.clone())
    }
    fn to_ball(&self) -> BallReal {
        BallReal::from_rational(self, DEFAULT_PRECISION)
    }
    fn from_ball(b: &BallReal) -> Option<Self> {
        b.is_exact().then(|| b.midpoint_rational())
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Scalar for BallReal {
    type Ctx = u32;
    const EXACT: bool = false;

    fn ctx(&self) -> u32 {
        self.precision()
    }
    fn zero_in(p: u32) -> Self {
        BallReal::zero(p)
    }
    fn from_rational_in(q: &ExactRational, p: u32) -> Self {
        BallReal::from_rational(q, p)
    }
    fn add(&self, o: &Self) -> Self {
        BallReal::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BallReal::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BallReal::mul(self, o)
    }
    fn neg(&self) -> Self {
        BallReal::neg(self)
    }
    fn try_div(&self, o: &Self) -> Result<Self, NumericsError> {
        self.div(o)
    }
    fn sign(&self) -> Sign {
        BallReal::sign(self)
    }
    fn is_exact_zero(&self) -> bool {
        BallReal::is_exact_zero(self)
    }
    fn to_f64(&self) -> f64 {
        self.mid_f64()
    }
    fn as_rational(&self) -> Option<ExactRational> {
        if self.is_exact() {
            Some(self.midpoint_rational())
        } else {
            None
        }
    }
    fn to_ball(&self) -> BallReal {
        self.clone()
    }
    fn from_ball(b: &BallReal) -> Option<Self> {
        Some(b.clone())
    }
    fn pow(&self, e: u32) -> Self {
        BallReal::pow(self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = ExactRational> {
        (-1000i64..1000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn ball_ops_enclose_exact(a in small_rat(), b in small_rat(), bits in 8u32..200) {
            let x = BallReal::from_rational(&a, bits);
            let y = BallReal::from_rational(&b, bits);
            prop_assert!(x.add(&y).contains_rational(&(&a + &b)));
            prop_assert!(x.sub(&y).contains_rational(&(&a - &b)));
            prop_assert!(x.mul(&y).contains_rational(&(&a * &b)));
            prop_assert!(x.neg().contains_rational(&(-&a)));
            if !b.is_zero() {
                if let Ok(q) = x.div(&y) {
                    prop_assert!(q.contains_rational(&(&a / &b)));
                }
            }
        }

        #[test]
        fn ball_sign_is_sound(a in small_rat(), bits in 2u32..100) {
            let x = BallReal::from_rational(&a, bits);
            let exact = Scalar::sign(&a);
            let s = x.sign();
            prop_assert!(s == Sign::Unknown || s == exact);
        }

        #[test]
        fn widened_ops_enclose(a in small_rat(), b in small_rat(), e in -20i64..0) {
            let w = Mag::pow2(e);
            let x = BallReal::from_rational(&a, 64).add_error(&w);
            let y = BallReal::from_rational(&b, 64).add_error(&w);
            // perturb inside the balls
            let da = ExactRational::new(1.into(), num_bigint::BigInt::from(1) << ((-e) as usize + 1));
            let pa = &a + &da;
            let pb = &b - &da;
            prop_assert!(x.mul(&y).contains_rational(&(&pa * &pb)));
            prop_assert!(x.add(&y).contains_rational(&(&pa + &pb)));
            if let Ok(q) = x.div(&y) {
                prop_assert!(q.contains_rational(&(&pa / &pb)));
            }
        }

        #[test]
        fn exact_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&a.neg()), ExactRational::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&ExactRational::one().try_div(&a).unwrap()), ExactRational::one());
            }
        }
    }
}
