use super::poly::UniPoly;
use super::scalar::{factorial, Scalar};
use super::AlgebraError;

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(dim: usize) -> Self {
        Matrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::NotSquare);
        }
        Ok(Matrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..=i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Matrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { dim: self.dim, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, row: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for (k, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `ln(I + self)` for strictly upper-triangular `self`.
    ///
    /// The Mercator series `Σ (-1)^(k+1) A^k / k` terminates at `k = dim - 1`
    /// since `A^dim = 0`.
    pub fn log_unipotent(&self) -> Result<Self, AlgebraError> {
        if !self.is_strictly_upper_triangular() {
            return Err(AlgebraError::NotStrictlyUpperTriangular);
        }
        let mut out = Self::zero(self.dim);
        let mut power = self.clone();
        let mut k = 1usize;
        while !power.is_zero() {
            let mut coeff = T::one() / T::from_count(k);
            if k % 2 == 0 {
                coeff = -coeff;
            }
            out = out.add(&power.scale(&coeff));
            power = power.mul(self);
            k += 1;
        }
        Ok(out)
    }

    /// `exp(t · self)` as a matrix of polynomials in `t`, for strictly
    /// upper-triangular `self`.
    pub fn exp_scaled(&self) -> Result<PolyMatrix<T>, AlgebraError> {
        if !self.is_strictly_upper_triangular() {
            return Err(AlgebraError::NotStrictlyUpperTriangular);
        }
        let n = self.dim;
        let mut coeffs: Vec<Vec<T>> = vec![Vec::new(); n * n];
        let mut power = Self::identity(n);
        let mut k = 0usize;
        while !power.is_zero() {
            let inv_fact = T::one() / factorial::<T>(k);
            for (idx, slot) in coeffs.iter_mut().enumerate() {
                slot.resize(k + 1, T::zero());
                slot[k] = power.data[idx].clone() * inv_fact.clone();
            }
            power = power.mul(self);
            k += 1;
        }
        Ok(PolyMatrix { dim: n, data: coeffs.into_iter().map(UniPoly::from_coeffs).collect() })
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<T> {
    dim: usize,
    data: Vec<UniPoly<T>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly<T> {
        &self.data[i * self.dim + j]
    }

    pub fn eval(&self, x: &T) -> Matrix<T> {
        Matrix { dim: self.dim, data: self.data.iter().map(|p| p.eval(x)).collect() }
    }

    pub fn derivative(&self) -> Self {
        PolyMatrix { dim: self.dim, data: self.data.iter().map(UniPoly::derivative).collect() }
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_zero()) && *self.get(i, i) == UniPoly::one())
    }

    /// Multiplies by a scalar matrix on the right.
    pub fn mul_scalar_right(&self, m: &Matrix<T>) -> Self {
        let n = self.dim;
        let mut data = vec![UniPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = m.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] = &data[i * n + j] + &a.scale(b);
                    }
                }
            }
        }
        PolyMatrix { dim: n, data }
    }

    /// Multiplies by a scalar matrix on the left.
    pub fn mul_scalar_left(&self, m: &Matrix<T>) -> Self {
        let n = self.dim;
        let mut data = vec![UniPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = m.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = self.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] = &data[i * n + j] + &b.scale(a);
                    }
                }
            }
        }
        PolyMatrix { dim: n, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn log_of_zero_is_zero() {
        let z = Matrix::<Rational>::zero(4);
        assert!(z.log_unipotent().unwrap().is_zero());
    }

    #[test]
    fn log_two_by_two() {
        let mut a = Matrix::<Rational>::zero(2);
        a.set(0, 1, int(1));
        let phi = a.log_unipotent().unwrap();
        assert_eq!(*phi.get(0, 1), int(1));
    }

    #[test]
    fn log_three_chain() {
        let mut a = Matrix::<Rational>::zero(3);
        a.set(0, 1, int(1));
        a.set(1, 2, int(1));
        a.set(0, 2, int(1));
        let phi = a.log_unipotent().unwrap();
        assert_eq!(*phi.get(0, 2), q(1, 2));
        assert_eq!(*phi.get(0, 1), int(1));
        assert_eq!(*phi.get(1, 2), int(1));
    }

    #[test]
    fn rejects_non_strict_upper() {
        let mut a = Matrix::<Rational>::zero(2);
        a.set(1, 0, int(1));
        assert_eq!(a.log_unipotent(), Err(AlgebraError::NotStrictlyUpperTriangular));
        assert_eq!(Matrix::<Rational>::identity(2).exp_scaled(), Err(AlgebraError::NotStrictlyUpperTriangular));
    }

    #[test]
    fn exp_examples() {
        let theta = Matrix::<Rational>::zero(3).exp_scaled().unwrap();
        assert_eq!(theta.eval(&int(5)), Matrix::identity(3));
        let mut phi = Matrix::<Rational>::zero(2);
        phi.set(0, 1, int(1));
        let theta = phi.exp_scaled().unwrap();
        assert_eq!(*theta.get(0, 1), UniPoly::var());
        assert!(theta.is_unit_upper_triangular());
    }

    fn strict_upper(dim: usize, entries: &[(i64, i64)]) -> Matrix<Rational> {
        let mut m = Matrix::zero(dim);
        let mut it = entries.iter();
        for i in 0..dim {
            for j in (i + 1)..dim {
                if let Some(&(n, d)) = it.next() {
                    m.set(i, j, q(n, d));
                }
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn exp_log_round_trip(dim in 1usize..=8, entries in prop::collection::vec((-3i64..4, 1i64..4), 28)) {
            let a = strict_upper(dim, &entries);
            let theta = a.log_unipotent().unwrap().exp_scaled().unwrap();
            let i_plus_a = Matrix::identity(dim).add(&a);
            prop_assert_eq!(theta.eval(&int(1)), i_plus_a.clone());
            for m in 0..=5u32 {
                prop_assert_eq!(theta.eval(&int(m as i64)), i_plus_a.pow(m));
            }
        }
    }
}
