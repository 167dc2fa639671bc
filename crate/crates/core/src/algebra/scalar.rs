use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for polynomials, matrices and the localized ring.
///
/// Any exact field with a conversion from machine integers qualifies:
/// `BigRational` is what the invariants use, `Ratio<i64>` works for small
/// experiments.
pub trait Scalar: Num + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + Debug {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar type cannot represent a machine integer")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("scalar type cannot represent a machine integer")
    }
}

impl<T> Scalar for T where T: Num + Neg<Output = T> + FromPrimitive + Clone + PartialEq + Debug {}

/// n! in the scalar type.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_count(k))
}

/// Binomial coefficient C(n, k) in the scalar type.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_count(n - i) / T::from_count(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Integer, Rational};
    use proptest::prelude::*;

    fn big(digits: &str, neg: bool) -> Integer {
        let v: Integer = digits.parse().unwrap();
        if neg {
            -v
        } else {
            v
        }
    }

    #[test]
    fn small_factorials_and_binomials() {
        assert_eq!(factorial::<Rational>(5), Rational::from_int(120));
        assert_eq!(binomial::<Rational>(6, 2), Rational::from_int(15));
        assert_eq!(binomial::<Rational>(2, 3), Rational::from_int(0));
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = Rational::new(Integer::from(0), Integer::from(17));
        assert_eq!(*z.denom(), Integer::from(1));
    }

    proptest! {
        #[test]
        fn rational_arithmetic_is_exact(
            a in "[1-9][0-9]{0,30}", b in "[1-9][0-9]{0,30}",
            c in "[1-9][0-9]{0,30}", d in "[1-9][0-9]{0,30}",
            sa: bool, sc: bool,
        ) {
            let x = Rational::new(big(&a, sa), big(&b, false));
            let y = Rational::new(big(&c, sc), big(&d, false));
            prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
            prop_assert_eq!((x.clone() * y.clone()) / y, x.clone());
            prop_assert!(*x.denom() >= Integer::from(1));
        }
    }
}
