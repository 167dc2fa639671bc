use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::scalar::Scalar;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `var^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector. The variable name is a display tag and takes no part in
/// equality.
#[derive(Clone, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
    var: char,
}

impl<T: Scalar> UniPoly<T> {
    pub const DEFAULT_VAR: char = 't';

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = UniPoly { coeffs, var: Self::DEFAULT_VAR };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new(), var: Self::DEFAULT_VAR }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * var^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `var` itself.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `a + b*var`
    pub fn linear(a: T, b: T) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn var_name(&self) -> char {
        self.var
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `var^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero().with_var(self.var);
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), var: self.var }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one().with_var(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(var))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
            .with_var(self.var)
    }

    /// `self(var + c)`
    pub fn shift(&self, c: &T) -> Self {
        self.compose(&Self::linear(c.clone(), T::one()))
    }

    /// `self(-var)`
    pub fn reflect(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect();
        Self::from_coeffs(coeffs).with_var(self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * T::from_count(i)).collect();
        Self::from_coeffs(coeffs).with_var(self.var)
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_count(i + 1));
        }
        Self::from_coeffs(coeffs).with_var(self.var)
    }

    /// Quotient and remainder of division by `var - root`.
    pub fn div_linear(&self, root: &T) -> (Self, T) {
        if self.coeffs.is_empty() {
            return (Self::zero().with_var(self.var), T::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for i in (0..n).rev() {
            let v = self.coeffs[i].clone() + carry * root.clone();
            if i == 0 {
                return (Self::from_coeffs(quot).with_var(self.var), v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl<T: PartialEq> PartialEq for UniPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Scalar + Eq> Eq for UniPoly<T> {}

impl<T: Scalar> Default for UniPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs).with_var(self.var)
    }
}

impl<T: Scalar> Sub<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs).with_var(self.var)
    }
}

impl<T: Scalar> Mul<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero().with_var(self.var);
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::from_coeffs(coeffs).with_var(self.var)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), var: self.var }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr<UniPoly<T>> for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: UniPoly<T>) -> UniPoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Scalar> $tr<&UniPoly<T>> for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: &UniPoly<T>) -> UniPoly<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for UniPoly<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

/// Descending powers with exact coefficients, e.g. `1/2·t^2 + 1/2·t`.
impl<T: Scalar + Signed + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{}", self.var)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}
