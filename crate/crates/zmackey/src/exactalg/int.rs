use alloc::boxed::Box;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer with an inline machine-word fast path.
///
/// Values that fit in an `i64` are always stored inline, so equality and
/// hashing can compare representations directly.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Large(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Large(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Large(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Large(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Large(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floor division.
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if !(*a == i64::MIN && *b == -1) {
                return Int::Small(Integer::div_floor(a, b));
            }
        }
        Int::from_big(Integer::div_floor(&self.to_big(), &d.to_big()))
    }

    /// Remainder in `[0, |d|)`; `d == 0` returns `self`.
    pub fn rem_euclid(&self, d: &Int) -> Int {
        if d.is_zero() {
            return self.clone();
        }
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if *b != i64::MIN {
                return Int::Small(a.rem_euclid(b.abs()));
            }
        }
        let m = d.to_big().abs();
        Int::from_big(Integer::mod_floor(&self.to_big(), &m))
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        let q = self.div_floor(d);
        debug_assert!((&q * d) == *self, "inexact division");
        q
    }

    pub fn divides(&self, x: &Int) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.rem_euclid(self).is_zero()
    }

    pub fn gcd(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if *a != i64::MIN && *b != i64::MIN {
                return Int::Small(a.gcd(b));
            }
        }
        Int::from_big(self.to_big().gcd(&o.to_big()))
    }

    pub fn lcm(&self, o: &Int) -> Int {
        if self.is_zero() || o.is_zero() {
            return Int::ZERO;
        }
        (self / &self.gcd(o) * o).abs()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g = gcd(self, o) ≥ 0`.
    pub fn ext_gcd(&self, o: &Int) -> (Int, Int, Int) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Int::ONE, Int::ZERO);
        let (mut t0, mut t1) = (Int::ZERO, Int::ONE);
        while !r1.is_zero() {
            let q = r0.div_floor(&r1);
            let r2 = &r0 - &(&q * &r1);
            r0 = core::mem::replace(&mut r1, r2);
            let s2 = &s0 - &(&q * &s1);
            s0 = core::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = core::mem::replace(&mut t1, t2);
        }
        if r0.is_negative() {
            (-r0, -s0, -t0)
        } else {
            (r0, s0, t0)
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut r = Int::ONE;
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Int {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl Default for Int {
    fn default() -> Int {
        Int::ZERO
    }
}

impl PartialEq for Int {
    fn eq(&self, o: &Int) -> bool {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Large(a), Int::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialEq<i64> for Int {
    fn eq(&self, o: &i64) -> bool {
        matches!(self, Int::Small(a) if a == o)
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl core::hash::Hash for Int {
    fn hash<H: core::hash::Hasher>(&self, h: &mut H) {
        match self {
            Int::Small(v) => v.hash(h),
            Int::Large(b) => b.to_string().hash(h),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{}", v),
            Int::Large(b) => write!(f, "{}", b),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident, $big:tt) => {
        impl<'a, 'b> $tr<&'b Int> for &'a Int {
            type Output = Int;
            fn $m(self, o: &'b Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, o) {
                    if let Some(r) = a.$checked(*b) {
                        return Int::Small(r);
                    }
                }
                Int::from_big(self.to_big() $big o.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, o: Int) -> Int {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b Int> for Int {
            type Output = Int;
            fn $m(self, o: &'b Int) -> Int {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            fn $m(self, o: Int) -> Int {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl<'a, 'b> core::ops::Div<&'b Int> for &'a Int {
    type Output = Int;
    /// Truncating division; use [`Int::div_floor`] for floor semantics.
    fn div(self, o: &'b Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = a.checked_div(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() / o.to_big())
    }
}

impl core::ops::Div<Int> for Int {
    type Output = Int;
    fn div(self, o: Int) -> Int {
        &self / &o
    }
}

impl<'a> Neg for &'a Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Large(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, o: &Int) {
        *self = &*self + o;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, o: &Int) {
        *self = &*self - o;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, o: &Int) {
        *self = &*self * o;
    }
}

impl core::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(it: I) -> Int {
        it.fold(Int::ZERO, |a, b| a + b)
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Int::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Large(_)));
        assert_eq!(&b - &Int::ONE, a);
        let sq = &a * &a;
        assert_eq!(sq.div_exact(&a), a);
        assert_eq!(-Int::from(i64::MIN), &Int::from(i64::MAX) + &Int::ONE);
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(-7).rem_euclid(&Int::from(2)), Int::from(1));
        assert_eq!(Int::from(7).rem_euclid(&Int::from(-3)), Int::from(1));
    }

    #[test]
    fn bezout() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, s, t) = Int::from(a).ext_gcd(&Int::from(b));
                assert_eq!(g, Int::from(a.gcd(&b)));
                assert_eq!(&(&s * &Int::from(a)) + &(&t * &Int::from(b)), g);
            }
        }
    }
}
