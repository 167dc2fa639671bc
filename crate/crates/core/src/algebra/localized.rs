use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::poly::UniPoly;
use super::scalar::{binomial, Scalar};

/// Element `p(λ) / (1-λ)^k` of the polynomial ring localized at `1-λ`.
///
/// Kept in canonical form: either the pole order is zero or `1-λ` does not
/// divide the numerator. Zero is `0 / (1-λ)^0`. Canonical form is unique, so
/// structural equality is ring equality.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedRatio<T> {
    numerator: UniPoly<T>,
    pole: u32,
}

fn one_minus_lambda<T: Scalar>() -> UniPoly<T> {
    UniPoly::linear(T::one(), -T::one()).with_var('λ')
}

impl<T: Scalar> LocalizedRatio<T> {
    /// `numerator / (1-λ)^pole`, normalized.
    pub fn new(numerator: UniPoly<T>, pole: u32) -> Self {
        Self::normalize_parts(numerator.with_var('λ'), pole)
    }

    pub fn from_poly(p: UniPoly<T>) -> Self {
        Self::new(p, 0)
    }

    pub fn zero() -> Self {
        LocalizedRatio { numerator: UniPoly::zero().with_var('λ'), pole: 0 }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    /// `1 / (1-λ)`
    pub fn inverse_one_minus_lambda() -> Self {
        Self::new(UniPoly::one(), 1)
    }

    /// `λ / (1-λ)`
    pub fn lambda_ratio() -> Self {
        Self::new(UniPoly::var(), 1)
    }

    pub fn numerator(&self) -> &UniPoly<T> {
        &self.numerator
    }

    pub fn pole_order(&self) -> u32 {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn normalize_parts(mut numerator: UniPoly<T>, mut pole: u32) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        while pole > 0 {
            let (quot, rem) = numerator.div_linear(&T::one());
            if !rem.is_zero() {
                break;
            }
            // p = (λ - 1) q = (1 - λ)(-q)
            numerator = -quot;
            pole -= 1;
        }
        LocalizedRatio { numerator, pole }
    }

    /// Re-normalizes; a no-op on values built through this API.
    pub fn normalize(&self) -> Self {
        Self::normalize_parts(self.numerator.clone(), self.pole)
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Numerator over `(1-λ)^pole` for any `pole >= self.pole_order()`.
    pub fn numerator_at_pole(&self, pole: u32) -> UniPoly<T> {
        assert!(pole >= self.pole, "cannot lower the pole order");
        (&self.numerator * &one_minus_lambda::<T>().pow(pole - self.pole)).with_var('λ')
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::normalize_parts(self.numerator.scale(c), self.pole)
    }

    pub fn mul_poly(&self, p: &UniPoly<T>) -> Self {
        Self::normalize_parts((&self.numerator * p).with_var('λ'), self.pole)
    }

    /// Returns the polynomial when the pole order is zero.
    pub fn to_poly(&self) -> Option<UniPoly<T>> {
        (self.pole == 0).then(|| self.numerator.clone())
    }

    /// First `len` power-series coefficients about `λ = 0`, using
    /// `1/(1-λ)^k = Σ C(n+k-1, k-1) λ^n`.
    pub fn series(&self, len: usize) -> Vec<T> {
        let k = self.pole as usize;
        let expansion: Vec<T> = (0..len)
            .map(|n| {
                if k == 0 {
                    if n == 0 {
                        T::one()
                    } else {
                        T::zero()
                    }
                } else {
                    binomial(n + k - 1, k - 1)
                }
            })
            .collect();
        (0..len)
            .map(|n| (0..=n).fold(T::zero(), |acc, i| acc + self.numerator.coeff(i) * expansion[n - i].clone()))
            .collect()
    }
}

impl<T: Scalar> Add<&LocalizedRatio<T>> for &LocalizedRatio<T> {
    type Output = LocalizedRatio<T>;

    fn add(self, rhs: &LocalizedRatio<T>) -> LocalizedRatio<T> {
        let pole = self.pole.max(rhs.pole);
        let num = &self.numerator_at_pole(pole) + &rhs.numerator_at_pole(pole);
        LocalizedRatio::normalize_parts(num, pole)
    }
}

impl<T: Scalar> Sub<&LocalizedRatio<T>> for &LocalizedRatio<T> {
    type Output = LocalizedRatio<T>;

    fn sub(self, rhs: &LocalizedRatio<T>) -> LocalizedRatio<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul<&LocalizedRatio<T>> for &LocalizedRatio<T> {
    type Output = LocalizedRatio<T>;

    fn mul(self, rhs: &LocalizedRatio<T>) -> LocalizedRatio<T> {
        LocalizedRatio::normalize_parts((&self.numerator * &rhs.numerator).with_var('λ'), self.pole + rhs.pole)
    }
}

impl<T: Scalar> Neg for &LocalizedRatio<T> {
    type Output = LocalizedRatio<T>;

    fn neg(self) -> LocalizedRatio<T> {
        LocalizedRatio { numerator: -&self.numerator, pole: self.pole }
    }
}

impl<T: Scalar> std::iter::Sum for LocalizedRatio<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl<T: Scalar + Signed + fmt::Display> fmt::Display for LocalizedRatio<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pole {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (1 - λ)", self.numerator),
            k => write!(f, "({}) / (1 - λ)^{k}", self.numerator),
        }
    }
}
