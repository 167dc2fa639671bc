//! Eulerian polynomials `e(P, ω; λ)` and `ẽ = e / (1-λ)^{|P|+1}`.

use num_traits::Zero;

use crate::algebra::{binomial, Scalar};
use crate::framework::{recurse, Memo};
use crate::omega_graph::OmegaGraph;
use crate::order_poly::{order_poly_recursive, order_poly_recursive_with};
use crate::poset::{ElementSet, LabeledPoset};
use crate::{Localized, Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct EulerianPair {
    pub e: Poly,
    pub tilde: Localized,
}

fn lambda() -> Poly {
    Poly::var().with_var('λ')
}

fn one_minus_lambda() -> Poly {
    Poly::linear(Rational::from_int(1), Rational::from_int(-1)).with_var('λ')
}

fn count(c: u128) -> Rational {
    Rational::from_integer(c.into())
}

/// `Σ_k coeffs[k] μ^k` with `μ = λ/(1-λ)`, in the localized ring.
fn at_lambda_ratio(coeffs: &[Rational]) -> Localized {
    let mu = Localized::lambda_ratio();
    coeffs
        .iter()
        .rev()
        .fold(Localized::zero(), |acc, c| &(&acc * &mu) + &Localized::from_poly(Poly::constant(c.clone())))
}

/// `e = Σ c_k λ^k (1-λ)^{|P|-k}` and `ẽ = (1/(1-λ)) Σ c_k (λ/(1-λ))^k` from
/// the path counts of the ω-graph. The empty poset gives `e = 1`.
pub fn eulerian_from_chains(lp: &LabeledPoset) -> EulerianPair {
    let n = lp.len();
    if n == 0 {
        return EulerianPair { e: Poly::one().with_var('λ'), tilde: Localized::inverse_one_minus_lambda() };
    }
    let counts = OmegaGraph::build(lp).path_counts();
    let mut e = Poly::zero().with_var('λ');
    for (k, &c) in counts.c.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        let term = &lambda().pow(k as u32) * &one_minus_lambda().pow((n - k) as u32);
        e = &e + &term.scale(&count(c));
    }
    let coeffs: Vec<Rational> = counts.c.iter().map(|&c| count(c)).collect();
    let tilde = &Localized::inverse_one_minus_lambda() * &at_lambda_ratio(&coeffs);
    EulerianPair { e: e.with_var('λ'), tilde }
}

pub fn eulerian_recursive(lp: &LabeledPoset) -> Poly {
    eulerian_recursive_with(lp, &mut Memo::new())
}

/// `e(P) = λ Σ (1-λ)^{|S|-1} e(P \ S)` over nonempty ω-natural ideals `S`,
/// with `e(∅) = 1`.
pub fn eulerian_recursive_with(lp: &LabeledPoset, memo: &mut Memo<Poly>) -> Poly {
    let step = |children: &[(usize, Poly)]| -> Poly {
        let sum: Poly = children.iter().map(|(m, e)| &one_minus_lambda().pow(*m as u32 - 1) * e).sum();
        (&lambda() * &sum).with_var('λ')
    };
    recurse(lp, memo, &Poly::one().with_var('λ'), &step)
}

/// `ẽ(P) = (λ/(1-λ)) Σ ẽ(P \ S)` with `ẽ(∅) = 1/(1-λ)`.
pub fn eulerian_tilde_recursive(lp: &LabeledPoset) -> Localized {
    let step = |children: &[(usize, Localized)]| -> Localized {
        let sum: Localized = children.iter().map(|(_, v)| v.clone()).sum();
        &Localized::lambda_ratio() * &sum
    };
    recurse(lp, &mut Memo::new(), &Localized::inverse_one_minus_lambda(), &step)
}

/// `Σ_{n ≤ m} Ω(n) λ^n` agrees through degree `m` with the expansion of
/// `e / (1-λ)^{|P|+1}`, where `e` comes from the path counts.
pub fn eulerian_series_check(lp: &LabeledPoset, m: usize) -> bool {
    let size = lp.len();
    let omega = order_poly_recursive(lp);
    let e = eulerian_from_chains(lp).e;
    let expansion: Vec<Rational> = (0..=m).map(|n| binomial(n + size, size)).collect();
    (0..=m).all(|n| {
        let series = (0..=n).fold(Rational::zero(), |acc, i| acc + e.coeff(i) * &expansion[n - i]);
        series == omega.eval(&Rational::from_count(n))
    })
}

/// Matrix over the ideal lattice with entry `(I, I')` equal to `ẽ(I' \ I)`
/// when `I ⊆ I'` and zero otherwise.
pub fn e_matrix(lp: &LabeledPoset) -> Vec<Vec<Localized>> {
    let ideals = lp.poset().ideals();
    ideals
        .iter()
        .map(|&a| {
            ideals
                .iter()
                .map(|&b| {
                    if a.is_subset_of(b) {
                        eulerian_from_chains(&lp.induced(b.difference(a))).tilde
                    } else {
                        Localized::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Checks `(I - λ(I + A)) E = I` and `E = (1/(1-λ)) Σ_k (λ/(1-λ))^k A^k`.
pub fn e_matrix_check(lp: &LabeledPoset) -> (bool, bool) {
    let graph = OmegaGraph::build(lp);
    let e = e_matrix(lp);
    let dim = e.len();
    let lam = Localized::from_poly(lambda());
    let adjacent = |i: usize, j: usize| graph.successors(i).binary_search(&j).is_ok();

    let mut inverse_ok = true;
    for i in 0..dim {
        for j in 0..dim {
            // row i of (I - λ(I + A)) is (1 - λ) at i and -λ on successors
            let mut acc = &e[i][j] * &Localized::from_poly(one_minus_lambda());
            for &k in graph.successors(i) {
                acc = &acc - &(&lam * &e[k][j]);
            }
            let want = if i == j { Localized::one() } else { Localized::zero() };
            inverse_ok &= acc == want;
        }
    }

    // Σ μ^k A^k, with A^k tracked as integer path counts
    let mu = Localized::lambda_ratio();
    let mut power: Vec<Vec<u128>> = (0..dim).map(|i| (0..dim).map(|j| u128::from(i == j)).collect()).collect();
    let mut mu_k = Localized::one();
    let mut series = vec![vec![Localized::zero(); dim]; dim];
    while power.iter().any(|row| row.iter().any(|&v| v != 0)) {
        for i in 0..dim {
            for j in 0..dim {
                if power[i][j] != 0 {
                    series[i][j] = &series[i][j] + &mu_k.scale(&count(power[i][j]));
                }
            }
        }
        power = (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).filter(|&k| adjacent(k, j)).map(|k| power[i][k]).sum()).collect())
            .collect();
        mu_k = &mu_k * &mu;
    }
    let pole = Localized::inverse_one_minus_lambda();
    let series_ok = (0..dim).all(|i| (0..dim).all(|j| e[i][j] == &pole * &series[i][j]));
    (inverse_ok, series_ok)
}

/// Whether `ẽ = λ/(1-λ)² · c(λ/(1-λ))` and `e = λ(1-λ)^{|P|-1} c(λ/(1-λ))`
/// hold for the chain polynomial `c`.
pub fn chain_polynomial_identities(lp: &LabeledPoset, chain: &Poly) -> (bool, bool) {
    let n = lp.len();
    assert!(n > 0, "identities concern nonempty posets");
    let pair = eulerian_from_chains(lp);
    let c_at_mu = at_lambda_ratio(chain.coeffs());
    let prefactor = Localized::new(lambda(), 2);
    let tilde_ok = pair.tilde == &prefactor * &c_at_mu;
    let weight = Localized::from_poly(&lambda() * &one_minus_lambda().pow(n as u32 - 1));
    let e_ok = Localized::from_poly(pair.e) == &weight * &c_at_mu;
    (tilde_ok, e_ok)
}

/// Chain polynomial of the interior of the ω-graph counting only chains
/// that extend to full paths; satisfies both identities for every labeling.
pub fn anchored_chain_identities(lp: &LabeledPoset) -> (bool, bool) {
    chain_polynomial_identities(lp, &OmegaGraph::build(lp).anchored_chain_polynomial())
}

/// Chain polynomial of the interior graph with `c_k` = chains through `k`
/// vertices. Agrees with the anchored one when ω is natural.
pub fn interior_chain_identities(lp: &LabeledPoset) -> (bool, bool) {
    let chain = OmegaGraph::build(lp).interior().chain_polynomial().expect("ω-graph is acyclic");
    chain_polynomial_identities(lp, &chain)
}

/// `A_n(λ) = λ Σ_{k=1}^n C(n, k) A_{n-k}(λ) (1-λ)^{k-1}`, `A_0 = 1`.
pub fn antichain_eulerian_binomial(n: usize) -> Poly {
    let mut table: Vec<Poly> = vec![Poly::one().with_var('λ')];
    for m in 1..=n {
        let sum: Poly =
            (1..=m).map(|k| (&table[m - k] * &one_minus_lambda().pow(k as u32 - 1)).scale(&binomial(m, k))).sum();
        table.push((&lambda() * &sum).with_var('λ'));
    }
    table.swap_remove(n)
}

/// `A_n(λ) = λ(1-λ) A'_{n-1}(λ) + nλ A_{n-1}(λ)`, `A_0 = 1`.
pub fn antichain_eulerian_derivative(n: usize) -> Poly {
    let mut a = Poly::one().with_var('λ');
    for m in 1..=n {
        let weight = &lambda() * &one_minus_lambda();
        a = (&(&weight * &a.derivative()) + &(&lambda() * &a).scale(&Rational::from_count(m))).with_var('λ');
    }
    a
}

/// `(1-λ)/λ · Σ Ω(P; n) λ^n = Σ_S Σ Ω(P \ S; n) λ^n` through degree `m`,
/// which is `Ω(n+1) - Ω(n) = Σ_S Ω(P \ S; n)` read as power series.
pub fn difference_series_check(lp: &LabeledPoset, m: usize) -> bool {
    let mut memo = Memo::new();
    let omega = order_poly_recursive_with(lp, &mut memo);
    let ground = lp.ground();
    let rests: Vec<Poly> = lp
        .omega_natural_ideals()
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s: ElementSet| order_poly_recursive_with(&lp.induced(ground.difference(s)), &mut memo))
        .collect();
    (0..=m).all(|n| {
        let at = |k: usize| omega.eval(&Rational::from_count(k));
        let lhs = at(n + 1) - at(n);
        let rhs: Rational = rests.iter().map(|p| p.eval(&Rational::from_count(n))).sum();
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Labeling, Poset};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn lam(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| q(c)).collect()).with_var('λ')
    }

    fn labeled(n: usize, covers: &[(usize, usize)], labels: &[u32]) -> LabeledPoset {
        LabeledPoset::new(Poset::from_covers(n, covers).unwrap(), Labeling::new(labels.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn from_chains_examples() {
        assert_eq!(eulerian_from_chains(&LabeledPoset::natural(Poset::chain(1))).e, lam(&[0, 1]));
        assert_eq!(eulerian_from_chains(&LabeledPoset::natural(Poset::antichain(2))).e, lam(&[0, 1, 1]));
        assert_eq!(eulerian_from_chains(&labeled(2, &[(0, 1)], &[2, 1])).e, lam(&[0, 0, 1]));
        let empty = eulerian_from_chains(&LabeledPoset::natural(Poset::antichain(0)));
        assert_eq!(empty.e, Poly::one());
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(eulerian_recursive(&LabeledPoset::natural(Poset::chain(1))), lam(&[0, 1]));
        assert_eq!(eulerian_recursive(&LabeledPoset::natural(Poset::antichain(2))), lam(&[0, 1, 1]));
    }

    #[test]
    fn pair_is_consistent() {
        for lp in [
            labeled(3, &[(0, 1), (0, 2)], &[3, 1, 2]),
            labeled(4, &[(0, 2), (1, 2), (1, 3)], &[2, 4, 1, 3]),
            LabeledPoset::strict(Poset::shrub(3)),
        ] {
            let pair = eulerian_from_chains(&lp);
            assert_eq!(pair.tilde, Localized::new(pair.e.clone(), lp.len() as u32 + 1));
            assert!(pair.tilde.pole_order() <= lp.len() as u32 + 1);
            assert_eq!(eulerian_recursive(&lp), pair.e);
            assert_eq!(eulerian_tilde_recursive(&lp), pair.tilde);
            assert!(eulerian_series_check(&lp, 2 * lp.len() + 2));
            assert_eq!(e_matrix_check(&lp), (true, true));
            assert_eq!(anchored_chain_identities(&lp), (true, true));
            assert!(difference_series_check(&lp, 8));
        }
    }

    #[test]
    fn series_examples() {
        assert!(eulerian_series_check(&LabeledPoset::natural(Poset::chain(1)), 4));
        assert!(eulerian_series_check(&LabeledPoset::natural(Poset::antichain(2)), 4));
    }

    #[test]
    fn interior_chains_match_on_natural_labelings() {
        for lp in [
            LabeledPoset::natural(Poset::chain(1)),
            LabeledPoset::natural(Poset::antichain(2)),
            LabeledPoset::natural(Poset::chain(2)),
            LabeledPoset::natural(Poset::shrub(3)),
        ] {
            assert_eq!(interior_chain_identities(&lp), (true, true));
        }
        // a strict labeling removes arcs out of ∅, so unanchored chains overcount
        assert_ne!(interior_chain_identities(&labeled(2, &[(0, 1)], &[2, 1])), (true, true));
    }

    #[test]
    fn antichain_recursions() {
        assert_eq!(antichain_eulerian_binomial(0), Poly::one());
        assert_eq!(antichain_eulerian_binomial(1), lam(&[0, 1]));
        assert_eq!(antichain_eulerian_binomial(2), lam(&[0, 1, 1]));
        assert_eq!(antichain_eulerian_binomial(3), lam(&[0, 1, 4, 1]));
        for n in 0..8 {
            assert_eq!(antichain_eulerian_derivative(n), antichain_eulerian_binomial(n));
        }
    }
}
