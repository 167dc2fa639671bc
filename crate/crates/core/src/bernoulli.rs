//! Bernoulli numbers through strictly labeled shrubs.

use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, Scalar};
use crate::omega_graph::OmegaGraph;
use crate::order_poly::{order_poly_recursive, phi};
use crate::poset::{LabeledPoset, Poset};
use crate::{Integer, Poly, Rational};

/// `b_0..b_N` and `B_0(t)..B_N(t)` from the generating function
/// `x/(e^x - 1)`, via `Σ_{k=0}^{n} C(n+1, k) b_k = 0`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
    polynomials: Vec<Poly>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut numbers: Vec<Rational> = Vec::with_capacity(max + 1);
        numbers.push(Rational::one());
        for n in 1..=max {
            let sum: Rational = (0..n).map(|k| binomial::<Rational>(n + 1, k) * &numbers[k]).sum();
            numbers.push(-sum / Rational::from_count(n + 1));
        }
        let polynomials = (0..=max)
            .map(|n| {
                let coeffs = (0..=n).map(|j| binomial::<Rational>(n, j) * &numbers[n - j]).collect();
                Poly::from_coeffs(coeffs)
            })
            .collect();
        BernoulliTable { numbers, polynomials }
    }

    pub fn max(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, n: usize) -> &Rational {
        &self.numbers[n]
    }

    pub fn polynomial(&self, n: usize) -> &Poly {
        &self.polynomials[n]
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }
}

/// The shrub `S_n` with the order-reversing labeling.
pub fn strict_shrub(n: usize) -> LabeledPoset {
    LabeledPoset::strict(Poset::shrub(n))
}

/// `φ(S_n)` under the strict labeling.
pub fn bernoulli_from_shrub(n: usize) -> Rational {
    phi(&strict_shrub(n))
}

/// All compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=rest {
            current.push(part);
            go(rest - part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

/// `table[k]` = Σ over compositions of `n` into `k` parts of the multinomial
/// `C(n; n_1, .., n_k)`.
pub fn multinomial_sums(n: usize) -> Vec<Integer> {
    // sums[m][k] for compositions of m into k parts
    let mut sums = vec![vec![Integer::zero(); n + 1]; n + 1];
    sums[0][0] = Integer::one();
    for m in 1..=n {
        for k in 1..=m {
            let mut acc = Integer::zero();
            for first in 1..=m - k + 1 {
                let choose: Integer = binomial::<Rational>(m, first).to_integer();
                acc += choose * &sums[m - first][k - 1];
            }
            sums[m][k] = acc;
        }
    }
    sums.swap_remove(n)
}

/// `b_n = Σ_k (-1)^k / (k+1) Σ_{compositions into k parts} C(n; n_1..n_k)`.
pub fn bernoulli_multinomial(n: usize) -> Rational {
    multinomial_sums(n)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, m)| {
            let term = Rational::new(m, Integer::from(k + 1));
            if k % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `(n+1)! b_n` when it is an integer.
pub fn scaled_numerator(b: &Rational, n: usize) -> Option<Integer> {
    let scaled = b * factorial::<Rational>(n + 1);
    scaled.is_integer().then(|| scaled.to_integer())
}

/// Both sides of the composition identity
/// `Σ_k (-1)^k/(k+1) Σ 1/(n_1!⋯n_k!) = Σ_k (-1)^k Σ 1/((n_1+1)!⋯(n_k+1)!)`.
pub fn lemma_sums(n: usize) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for comp in compositions(n) {
        let k = comp.len();
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        let plain: Rational = comp.iter().map(|&p| factorial::<Rational>(p)).product();
        let lifted: Rational = comp.iter().map(|&p| factorial::<Rational>(p + 1)).product();
        lhs += &sign / (plain * Rational::from_count(k + 1));
        rhs += sign / lifted;
    }
    (lhs, rhs)
}

/// The two sides agree and `n!` times the right side is `b_n`.
pub fn lemma_identity_check(n: usize, table: &BernoulliTable) -> bool {
    let (lhs, rhs) = lemma_sums(n);
    lhs == rhs && rhs * factorial::<Rational>(n) == *table.number(n)
}

/// `Ω(S_n; t) = ∫_0^t B_n(u) du` for the strict labeling.
pub fn shrub_order_poly_check(n: usize, table: &BernoulliTable) -> bool {
    order_poly_recursive(&strict_shrub(n)) == table.polynomial(n).integral()
}

/// Path counts of the strict shrub's ω-graph predicted by compositions:
/// `c_0 = c_1 = 0` and `c_k` is the multinomial sum over `k - 1` parts.
pub fn shrub_chain_counts(n: usize) -> Vec<Integer> {
    let sums = multinomial_sums(n);
    let mut out = vec![Integer::zero(); n + 2];
    out[2..=n + 1].clone_from_slice(&sums[1..=n]);
    out
}

/// Compares [`shrub_chain_counts`] with path counting on the ω-graph.
pub fn shrub_chain_counts_check(n: usize) -> bool {
    let counts = OmegaGraph::build(&strict_shrub(n)).path_counts();
    shrub_chain_counts(n).iter().enumerate().all(|(k, c)| Integer::from(counts.get(k)) == *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn oracle_values() {
        let t = BernoulliTable::new(6);
        assert_eq!(t.numbers()[..5], [q(1, 1), q(-1, 2), q(1, 6), q(0, 1), q(-1, 30)]);
        assert_eq!(*t.polynomial(1), Poly::from_coeffs(vec![q(-1, 2), q(1, 1)]));
        for n in 1..=6 {
            assert_eq!(t.polynomial(n).eval(&q(0, 1)), *t.number(n));
            assert_eq!(t.polynomial(n).derivative(), t.polynomial(n - 1).scale(&Rational::from_count(n)));
            assert!(t.polynomial(n).integral().eval(&q(1, 1)).is_zero());
        }
    }

    #[test]
    fn shrub_values() {
        assert_eq!(bernoulli_from_shrub(1), q(-1, 2));
        assert_eq!(bernoulli_from_shrub(2), q(1, 6));
        assert_eq!(bernoulli_from_shrub(3), q(0, 1));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(bernoulli_multinomial(1), q(-1, 2));
        assert_eq!(bernoulli_multinomial(2), q(1, 6));
        let t = BernoulliTable::new(10);
        for n in 1..=10 {
            assert_eq!(bernoulli_multinomial(n), *t.number(n));
            assert!(scaled_numerator(t.number(n), n).is_some());
        }
        assert_eq!(scaled_numerator(&q(1, 7), 2), None);
    }

    #[test]
    fn composition_counts() {
        assert!(compositions(0).is_empty());
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        assert_eq!(compositions(6).len(), 32);
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_sums(1), (q(-1, 2), q(-1, 2)));
        assert_eq!(lemma_sums(2), (q(1, 12), q(1, 12)));
        let t = BernoulliTable::new(8);
        assert!((1..=8).all(|n| lemma_identity_check(n, &t)));
    }

    #[test]
    fn shrub_order_polys() {
        let t = BernoulliTable::new(5);
        assert!((1..=5).all(|n| shrub_order_poly_check(n, &t)));
    }

    #[test]
    fn shrub_path_counts() {
        assert_eq!(shrub_chain_counts(1), vec![Integer::zero(), Integer::zero(), Integer::one()]);
        assert!((1..=6).all(shrub_chain_counts_check));
    }
}
