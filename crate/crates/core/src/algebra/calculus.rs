//! Finite-difference calculus on polynomials.
//!
//! The inverses are computed in the binomial basis `C(t, k)`, where the
//! forward difference is an index shift: `Δ C(t, k) = C(t, k-1)`. Every
//! `C(t, k)` with `k >= 1` vanishes at zero, which pins the constant.

use super::poly::UniPoly;
use super::scalar::Scalar;

/// `C(t, k)` as a polynomial in `t`.
pub fn binomial_poly<T: Scalar>(k: usize) -> UniPoly<T> {
    let mut acc = UniPoly::one();
    for i in 0..k {
        let factor = UniPoly::linear(-T::from_count(i), T::one()).scale(&(T::one() / T::from_count(i + 1)));
        acc = &acc * &factor;
    }
    acc
}

/// Coordinates of `p` in the basis `C(t, 0), C(t, 1), ...`.
///
/// The k-th coordinate is `(Δ^k p)(0)`, read off the forward-difference table
/// of `p(0), p(1), ..., p(deg)`.
pub fn to_binomial_basis<T: Scalar>(p: &UniPoly<T>) -> Vec<T> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut row: Vec<T> = (0..=deg).map(|j| p.eval(&T::from_count(j))).collect();
    let mut out = Vec::with_capacity(deg + 1);
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    out
}

pub fn from_binomial_basis<T: Scalar>(coords: &[T]) -> UniPoly<T> {
    let mut acc = UniPoly::zero();
    let mut basis = UniPoly::one();
    for (k, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis.scale(c);
        }
        let next = UniPoly::linear(-T::from_count(k), T::one()).scale(&(T::one() / T::from_count(k + 1)));
        basis = &basis * &next;
    }
    acc
}

/// `(Δp)(t) = p(t+1) - p(t)`
pub fn delta<T: Scalar>(p: &UniPoly<T>) -> UniPoly<T> {
    (&p.shift(&T::one()) - p).with_var(p.var_name())
}

/// The unique `g` with `Δg = p` and `g(0) = 0`.
pub fn delta_inverse<T: Scalar>(p: &UniPoly<T>) -> UniPoly<T> {
    let mut coords = to_binomial_basis(p);
    if coords.is_empty() {
        return UniPoly::zero().with_var(p.var_name());
    }
    coords.insert(0, T::zero());
    from_binomial_basis(&coords).with_var(p.var_name())
}

/// `(∇p)(t) = p(t) - p(t-1)`
pub fn nabla<T: Scalar>(p: &UniPoly<T>) -> UniPoly<T> {
    (p - &p.shift(&-T::one())).with_var(p.var_name())
}

/// The unique `g` with `∇g = p` and `g(0) = 0`.
///
/// Since `(∇g)(t) = (Δg)(t-1)`, this is `Δ⁻¹` applied to `p(t+1)`.
pub fn nabla_inverse<T: Scalar>(p: &UniPoly<T>) -> UniPoly<T> {
    delta_inverse(&p.shift(&T::one())).with_var(p.var_name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(cs: &[Rational]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(cs.to_vec())
    }

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&UniPoly::<Rational>::var()), UniPoly::one());
        // t(t-1)/2 -> t
        let tri = p(&[int(0), q(-1, 2), q(1, 2)]);
        assert_eq!(delta(&tri), UniPoly::var());
        assert!(delta(&UniPoly::constant(int(7))).is_zero());
    }

    #[test]
    fn delta_inverse_examples() {
        assert_eq!(delta_inverse(&UniPoly::<Rational>::one()), UniPoly::var());
        assert_eq!(delta_inverse(&UniPoly::<Rational>::var()), p(&[int(0), q(-1, 2), q(1, 2)]));
        // t(t-1)(2t-1)/6 = t^3/3 - t^2/2 + t/6
        let t2 = UniPoly::monomial(int(1), 2);
        assert_eq!(delta_inverse(&t2), p(&[int(0), q(1, 6), q(-1, 2), q(1, 3)]));
        assert!(delta_inverse(&UniPoly::<Rational>::zero()).is_zero());
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(nabla(&UniPoly::<Rational>::var()), UniPoly::one());
        assert_eq!(nabla_inverse(&UniPoly::<Rational>::one()), UniPoly::var());
        // t(t+1)/2
        assert_eq!(nabla_inverse(&UniPoly::<Rational>::var()), p(&[int(0), q(1, 2), q(1, 2)]));
    }

    #[test]
    fn binomial_poly_values() {
        let c3 = binomial_poly::<Rational>(3);
        for n in 0..8i64 {
            let want = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
            assert_eq!(c3.eval(&int(n)), int(want));
        }
    }

    #[test]
    fn nabla_inverse_is_partial_sum() {
        // g(t) = sum_{j=1}^t p(j) for p = t^3 - 2t + 5
        let poly = p(&[int(5), int(-2), int(0), int(1)]);
        let g = nabla_inverse(&poly);
        let mut acc = int(0);
        for n in 1..10 {
            acc += poly.eval(&int(n));
            assert_eq!(g.eval(&int(n)), acc);
        }
    }

    fn small_poly() -> impl Strategy<Value = UniPoly<Rational>> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..7)
            .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn delta_inverts_delta_inverse(f in small_poly()) {
            let g = delta_inverse(&f);
            prop_assert_eq!(delta(&g), f.clone());
            prop_assert!(g.eval(&int(0)).is_zero());
        }

        #[test]
        fn nabla_inverts_nabla_inverse(f in small_poly()) {
            let g = nabla_inverse(&f);
            prop_assert_eq!(nabla(&g), f.clone());
            prop_assert!(g.eval(&int(0)).is_zero());
        }

        #[test]
        fn binomial_basis_round_trip(f in small_poly()) {
            prop_assert_eq!(from_binomial_basis(&to_binomial_basis(&f)), f);
        }
    }
}
