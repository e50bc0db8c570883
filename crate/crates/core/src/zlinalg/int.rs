//! Arbitrary-precision integers that stay inline while they fit in an `i64`.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// `Big` is used only for values outside the `i64` range, so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Int {
    Small(i64),
    Big(BigInt),
}

impl Default for Int {
    fn default() -> Self {
        Int::Small(0)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v.clone()),
        }
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        match v {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }
}

impl From<Int> for BigInt {
    fn from(v: Int) -> Self {
        match v {
            Int::Small(s) => BigInt::from(s),
            Int::Big(b) => b,
        }
    }
}

impl Int {
    pub fn one() -> Self {
        Int::Small(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1 | -1))
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(s) => s.checked_abs().map_or_else(|| Int::from(-BigInt::from(*s)), Int::Small),
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                i64::try_from(g).map_or_else(|_| Int::from(BigInt::from(g)), Int::Small)
            }
            _ => Int::from(BigInt::from(self).gcd(&BigInt::from(other))),
        }
    }

    /// Whether `self = k·d` for some integer `k`; only zero is a multiple of zero.
    pub fn is_multiple_of(&self, d: &Int) -> bool {
        match (self, d) {
            (_, Int::Small(0)) => self.is_zero(),
            (Int::Small(a), Int::Small(b)) => a.checked_rem(*b).is_none_or(|r| r == 0),
            _ => BigInt::from(self).is_multiple_of(&BigInt::from(d)),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => BigInt::from(self).cmp(&BigInt::from(other)),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from(BigInt::from(self).$method(BigInt::from(rhs)))
            }
        }

        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
// truncating, like `BigInt` division; callers divide exactly or want the
// truncated quotient
binop!(Div, div, checked_div);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(s) => s.checked_neg().map_or_else(|| Int::from(-BigInt::from(*s)), Int::Small),
            Int::Big(b) => Int::from(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}
