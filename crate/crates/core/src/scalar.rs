use std::fmt;
use std::hash::Hash;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact coefficient field.
///
/// Everything in the crate is generic over this trait. Only exact fields
/// qualify: normal forms and cycle comparison rely on decidable equality, so
/// floating point types are deliberately not implemented.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Num
    + Signed
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Parses a decimal integer or `p/q` literal.
    fn parse_literal(s: &str) -> Option<Self>;

    fn is_integral(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the coefficient field")
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + fmt::Display + Hash + Send + Sync + 'static,
    Ratio<T>: FromPrimitive,
{
    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s),
        };
        if body.is_empty() || body.starts_with(['-', '+']) {
            return None;
        }
        let r = match body.split_once('/') {
            Some((n, d)) => {
                let n = T::from_str_radix(n.trim(), 10).ok()?;
                let d = T::from_str_radix(d.trim(), 10).ok()?;
                if d.is_zero() {
                    return None;
                }
                Ratio::new(n, d)
            }
            None => Ratio::from_integer(T::from_str_radix(body, 10).ok()?),
        };
        Some(if neg { -r } else { r })
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Rational multiple of a power of the formal unit `2πi`.
///
/// The unit is never evaluated numerically; it is tracked as an integer
/// exponent `tpi`. Zero is canonical with `tpi == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar<F> {
    pub rat: F,
    pub tpi: i32,
}

impl<F: Field> Scalar<F> {
    pub fn new(rat: F, tpi: i32) -> Self {
        if rat.is_zero() {
            Self::zero()
        } else {
            Scalar { rat, tpi }
        }
    }

    pub fn rational(rat: F) -> Self {
        Self::new(rat, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::new(F::from_int(n), 0)
    }

    pub fn zero() -> Self {
        Scalar { rat: F::zero(), tpi: 0 }
    }

    pub fn one() -> Self {
        Scalar { rat: F::one(), tpi: 0 }
    }

    /// `(2πi)^k`.
    pub fn two_pi_i(k: i32) -> Self {
        Scalar { rat: F::one(), tpi: k }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.rat.clone() * other.rat.clone(), self.tpi + other.tpi)
    }

    /// Sum of two scalars; `None` when the units differ.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.tpi == other.tpi).then(|| Self::new(self.rat.clone() + other.rat.clone(), self.tpi))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.rat.clone(), self.tpi)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.rat.clone() * c.clone(), self.tpi)
    }

    /// True when this is a positive integer with no `2πi` factor left.
    pub fn is_positive_integer(&self) -> bool {
        self.tpi == 0 && self.rat.is_integral() && self.rat.is_positive()
    }
}

impl<F: Field> Default for Scalar<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> fmt::Display for Scalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tpi {
            0 => write!(f, "{}", self.rat),
            1 => write!(f, "{}·(2πi)", self.rat),
            k => write!(f, "{}·(2πi)^{}", self.rat, k),
        }
    }
}

pub(crate) fn factorial<F: Field>(n: usize) -> F {
    (1..=n).fold(F::one(), |acc, k| acc * F::from_int(k as i64))
}

/// `(-1)^k` as a field element.
pub(crate) fn sign<F: Field>(negative: bool) -> F {
    if negative {
        -F::one()
    } else {
        F::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};
    use num_traits::Zero;

    #[test]
    fn zero_is_canonical() {
        let z = Scalar::new(BigRational::zero(), 3);
        assert_eq!(z.tpi, 0);
        assert_eq!(z, Scalar::zero());
    }

    #[test]
    fn units_multiply_and_refuse_mixed_sums() {
        let a = Scalar::<Rational64>::new(Rational64::new(1, 2), 1);
        let b = Scalar::<Rational64>::new(Rational64::new(4, 1), 1);
        assert_eq!(a.mul(&b), Scalar::new(Rational64::new(2, 1), 2));
        assert_eq!(a.checked_add(&b), Some(Scalar::new(Rational64::new(9, 2), 1)));
        assert!(a.checked_add(&Scalar::int(1)).is_none());
    }

    #[test]
    fn literals() {
        assert_eq!(
            BigRational::parse_literal("3/6"),
            Some(BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(Rational64::parse_literal("-7"), Some(Rational64::from_integer(-7)));
        assert!(Rational64::parse_literal("x").is_none());
        assert!(Scalar::<Rational64>::int(4).is_positive_integer());
        assert!(!Scalar::<Rational64>::new(Rational64::from_integer(4), 1).is_positive_integer());
    }
}
