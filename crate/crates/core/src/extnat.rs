//! Extended naturals: group orders and subgroup indices that may be infinite.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinite,
}

impl ExtNat {
    pub fn one() -> Self {
        ExtNat::Finite(BigUint::one())
    }

    pub fn from_u64(n: u64) -> Self {
        ExtNat::Finite(BigUint::from(n))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtNat::Finite(n) if n.is_one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| n.to_u64())
    }

    /// `self^k`; `x^0 = 1` even for infinite `x` (empty product).
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return ExtNat::one();
        }
        match self {
            ExtNat::Finite(n) => {
                let mut acc = BigUint::one();
                for _ in 0..k {
                    acc *= n;
                }
                ExtNat::Finite(acc)
            }
            ExtNat::Infinite => ExtNat::Infinite,
        }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a ExtNat>>(items: I) -> Self {
        items.into_iter().fold(ExtNat::one(), |acc, x| &acc * x)
    }
}

impl Mul for &ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: &ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a * b),
            // a zero order never occurs for groups; treat 0·∞ as ∞ anyway
            _ => ExtNat::Infinite,
        }
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        &self * &rhs
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinite) => Ordering::Less,
            (ExtNat::Infinite, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinite, ExtNat::Infinite) => Ordering::Equal,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::from_u64(n)
    }
}

impl From<usize> for ExtNat {
    fn from(n: usize) -> Self {
        ExtNat::Finite(BigUint::from(n))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) if n.is_zero() => f.write_str("0"),
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("infinity"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ExtNat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(n) => serializer.serialize_u64(n),
            None => serializer.collect_str(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let two = ExtNat::from_u64(2);
        assert_eq!(&two * &ExtNat::from_u64(3), ExtNat::from_u64(6));
        assert_eq!(&two * &ExtNat::Infinite, ExtNat::Infinite);
        assert_eq!(two.pow(10), ExtNat::from_u64(1024));
        assert!(ExtNat::Infinite.pow(0).is_one());
        assert!(ExtNat::from_u64(7) < ExtNat::Infinite);
        assert_eq!(alloc::format!("{}", ExtNat::Infinite), "infinity");
    }
}
