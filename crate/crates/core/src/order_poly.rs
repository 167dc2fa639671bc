//! Order polynomials `Ω(P, ω; t)` and the φ-invariant.
//!
//! Three independent routes compute `Ω`: counting ω-order-preserving maps and
//! interpolating, the `(∅, P)` entry of `exp(t·ln(I + A))` on the ω-graph, and
//! the recursion `Ω(P) = Δ⁻¹ Σ Ω(P \ S)` over nonempty ω-natural ideals.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{binomial, factorial, lagrange_interpolate, AlgebraError, Scalar};
use crate::framework::{recurse, Memo};
use crate::omega_graph::OmegaGraph;
use crate::poset::{ElementSet, LabeledKey, LabeledPoset};
use crate::{Poly, RatMatrix, RatPolyMatrix, Rational};

/// Largest poset the brute-force route accepts unless told otherwise.
pub const DEFAULT_ORACLE_MAX: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("brute-force enumeration is limited to {max} elements, poset has {size}")]
    OracleBound { size: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Number of ω-order-preserving maps `P → [n]`, by trying all `n^|P|` maps.
pub fn count_omega_maps(lp: &LabeledPoset, n: usize) -> u128 {
    let size = lp.len();
    if size == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    let mut f = vec![1usize; size];
    let mut count = 0u128;
    loop {
        if lp.is_omega_order_preserving(&f) {
            count += 1;
        }
        let mut i = 0;
        while i < size && f[i] == n {
            f[i] = 1;
            i += 1;
        }
        if i == size {
            return count;
        }
        f[i] += 1;
    }
}

/// Brute-force route with the default size bound.
pub fn order_poly_bruteforce(lp: &LabeledPoset) -> Result<Poly, InvariantError> {
    order_poly_bruteforce_bounded(lp, DEFAULT_ORACLE_MAX)
}

/// Counts maps into `[1]..[|P|]` and interpolates through those values and
/// `Ω(0) = 0`.
pub fn order_poly_bruteforce_bounded(lp: &LabeledPoset, max: usize) -> Result<Poly, InvariantError> {
    let size = lp.len();
    if size > max {
        return Err(InvariantError::OracleBound { size, max });
    }
    if size == 0 {
        return Ok(Poly::one());
    }
    let points: Vec<(Rational, Rational)> =
        (0..=size).map(|n| (Rational::from_count(n), Rational::from_integer(count_omega_maps(lp, n).into()))).collect();
    Ok(lagrange_interpolate(&points)?)
}

/// `Φ = ln(I + A)` on the ω-graph.
pub fn phi_matrix(graph: &OmegaGraph) -> RatMatrix {
    graph.adjacency_matrix::<Rational>().log_unipotent().expect("ω-graph adjacency is strictly upper triangular")
}

/// `Θ(t) = exp(tΦ)` together with the ideal order indexing it.
#[derive(Clone, Debug)]
pub struct ThetaMatrix {
    ideals: Vec<ElementSet>,
    entries: RatPolyMatrix,
}

impl ThetaMatrix {
    pub fn ideals(&self) -> &[ElementSet] {
        &self.ideals
    }

    pub fn entries(&self) -> &RatPolyMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        self.entries.get(i, j)
    }

    /// The `(∅, P)` entry.
    pub fn order_poly(&self) -> Poly {
        self.entries.get(0, self.ideals.len() - 1).clone()
    }
}

pub fn theta_matrix(lp: &LabeledPoset) -> ThetaMatrix {
    let graph = OmegaGraph::build(lp);
    let entries = phi_matrix(&graph).exp_scaled().expect("Φ is strictly upper triangular");
    ThetaMatrix { ideals: graph.ideals().to_vec(), entries }
}

pub fn order_poly_matrix(lp: &LabeledPoset) -> Poly {
    theta_matrix(lp).order_poly()
}

pub fn order_poly_recursive(lp: &LabeledPoset) -> Poly {
    order_poly_recursive_with(lp, &mut Memo::new())
}

/// As [`order_poly_recursive`], sharing `memo` across posets.
pub fn order_poly_recursive_with(lp: &LabeledPoset, memo: &mut Memo<Poly>) -> Poly {
    let step = |children: &[(usize, Poly)]| -> Poly {
        let sum: Poly = children.iter().map(|(_, p)| p.clone()).sum();
        crate::algebra::delta_inverse(&sum)
    };
    recurse(lp, memo, &Poly::one(), &step)
}

/// `φ(P, ω) = Σ_k (-1)^{k-1} c_k / k`; zero for the empty poset.
pub fn phi(lp: &LabeledPoset) -> Rational {
    if lp.is_empty() {
        return Rational::zero();
    }
    phi_from_graph(&OmegaGraph::build(lp))
}

fn phi_from_graph(graph: &OmegaGraph) -> Rational {
    let counts = graph.path_counts();
    let mut acc = Rational::zero();
    for (k, &c) in counts.c.iter().enumerate().skip(1) {
        let term = Rational::new(c.into(), (k as u64).into());
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// φ and Ω of sub-posets of one labeled poset, cached by equivalence class.
pub struct SubposetCache<'a> {
    lp: &'a LabeledPoset,
    phis: HashMap<LabeledKey, Rational>,
    omegas: Memo<Poly>,
}

impl<'a> SubposetCache<'a> {
    pub fn new(lp: &'a LabeledPoset) -> Self {
        SubposetCache { lp, phis: HashMap::new(), omegas: Memo::new() }
    }

    pub fn phi(&mut self, set: ElementSet) -> Rational {
        if set.is_empty() {
            return Rational::zero();
        }
        let key = self.lp.key_within(set);
        if let Some(v) = self.phis.get(&key) {
            return v.clone();
        }
        let v = phi(&self.lp.induced(set));
        self.phis.insert(key, v.clone());
        v
    }

    pub fn omega(&mut self, set: ElementSet) -> Poly {
        order_poly_recursive_with(&self.lp.induced(set), &mut self.omegas)
    }
}

/// `flag_sums[r]` = sum over flags `∅ ≠ I_1 ⊊ .. ⊊ I_r = P` of ideals of
/// `φ(I_1) φ(I_2 \ I_1) ⋯ φ(I_r \ I_{r-1})`.
pub fn flag_sums(lp: &LabeledPoset) -> Vec<Rational> {
    let n = lp.len();
    let ideals = lp.poset().ideals();
    let mut cache = SubposetCache::new(lp);
    // by_len[r][j]: flags of length r ending at ideals[j]
    let mut by_len = vec![vec![Rational::zero(); ideals.len()]; n + 1];
    by_len[0][0] = Rational::one();
    for r in 1..=n {
        for j in 1..ideals.len() {
            let mut acc = Rational::zero();
            for i in 0..j {
                if by_len[r - 1][i].is_zero() || !ideals[i].is_subset_of(ideals[j]) || ideals[i] == ideals[j] {
                    continue;
                }
                let p = cache.phi(ideals[j].difference(ideals[i]));
                acc += &by_len[r - 1][i] * p;
            }
            by_len[r][j] = acc;
        }
    }
    let last = ideals.len() - 1;
    by_len.iter().map(|row| row[last].clone()).collect()
}

/// `Ω = Σ_r (flag_sums[r] / r!) t^r`.
pub fn omega_from_phi(lp: &LabeledPoset) -> Poly {
    if lp.is_empty() {
        return Poly::one();
    }
    let sums = flag_sums(lp);
    let coeffs = sums.into_iter().enumerate().map(|(r, s)| s / factorial::<Rational>(r)).collect();
    Poly::from_coeffs(coeffs)
}

/// `Σ_r flag_sums[r] / r!` equals 1 when ω is natural on `P` and 0 otherwise.
pub fn phi_recursion_check(lp: &LabeledPoset) -> bool {
    let total: Rational =
        flag_sums(lp).into_iter().enumerate().skip(1).map(|(r, s)| s / factorial::<Rational>(r)).sum();
    let expected = if lp.is_natural() { Rational::one() } else { Rational::zero() };
    total == expected
}

/// Coefficients `[i][j]` of `s^i t^j`.
type BiPoly = Vec<Vec<Rational>>;

fn bipoly_add_product(acc: &mut BiPoly, s_poly: &Poly, t_poly: &Poly) {
    for (i, a) in s_poly.coeffs().iter().enumerate() {
        for (j, b) in t_poly.coeffs().iter().enumerate() {
            acc[i][j] += a * b;
        }
    }
}

/// `Ω(P; s+t) = Σ_{S ideal} Ω(S; s) Ω(P \ S; t)` as bivariate polynomials.
pub fn convolution_check(lp: &LabeledPoset) -> bool {
    let n = lp.len();
    let mut cache = SubposetCache::new(lp);
    let omega = cache.omega(lp.ground());
    let mut lhs: BiPoly = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (k, a) in omega.coeffs().iter().enumerate() {
        for i in 0..=k {
            lhs[i][k - i] += a * binomial::<Rational>(k, i);
        }
    }
    let mut rhs: BiPoly = vec![vec![Rational::zero(); n + 1]; n + 1];
    for s in lp.poset().ideals() {
        let low = cache.omega(s);
        let high = cache.omega(lp.ground().difference(s));
        bipoly_add_product(&mut rhs, &low, &high);
    }
    lhs == rhs
}

/// `Ω' = Σ_{S ≠ ∅ ideal} φ(S) Ω(P \ S) = Σ_{S ≠ P ideal} φ(P \ S) Ω(S)`.
/// Returns whether each form holds.
pub fn derivative_identity_check(lp: &LabeledPoset) -> (bool, bool) {
    let ground = lp.ground();
    let mut cache = SubposetCache::new(lp);
    let derivative = cache.omega(ground).derivative();
    let ideals = lp.poset().ideals();
    let mut lower = Poly::zero();
    let mut upper = Poly::zero();
    for &s in &ideals {
        let rest = ground.difference(s);
        if !s.is_empty() {
            lower = &lower + &cache.omega(rest).scale(&cache.phi(s));
        }
        if !rest.is_empty() {
            upper = &upper + &cache.omega(s).scale(&cache.phi(rest));
        }
    }
    (lower == derivative, upper == derivative)
}

/// Every entry `(I, I')` of `Θ` equals the order polynomial of the labeled
/// sub-poset on `I' \ I`, and vanishes when `I ⊄ I'`.
pub fn theta_coherence_check(lp: &LabeledPoset) -> bool {
    let theta = theta_matrix(lp);
    let ideals = theta.ideals();
    let mut cache = SubposetCache::new(lp);
    for (i, &a) in ideals.iter().enumerate() {
        for (j, &b) in ideals.iter().enumerate() {
            let entry = theta.get(i, j);
            let ok = if a.is_subset_of(b) { *entry == cache.omega(b.difference(a)) } else { entry.is_zero() };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// `Θ(m) = (I + A)^m` for `m = 0..=max_power`.
pub fn exp_log_round_trip_check(lp: &LabeledPoset, max_power: u32) -> bool {
    let graph = OmegaGraph::build(lp);
    let a = graph.adjacency_matrix::<Rational>();
    let theta = phi_matrix(&graph).exp_scaled().expect("Φ is strictly upper triangular");
    let shifted = a.add(&RatMatrix::identity(a.dim()));
    (0..=max_power).all(|m| theta.eval(&Rational::from_int(m as i64)) == shifted.pow(m))
}
