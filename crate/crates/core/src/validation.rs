//! Cross-route consistency checks over the small-poset catalogs.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::factorial;
use crate::bernoulli::{
    bernoulli_from_shrub, bernoulli_multinomial, lemma_identity_check, scaled_numerator, shrub_chain_counts_check,
    shrub_order_poly_check, BernoulliTable,
};
use crate::catalog::{all_labelings, labeled_catalog, posets_up_to, sampled_catalog};
use crate::eulerian::{
    anchored_chain_identities, antichain_eulerian_binomial, antichain_eulerian_derivative, eulerian_from_chains,
    eulerian_recursive, eulerian_series_check, eulerian_tilde_recursive, interior_chain_identities,
};
use crate::framework::{qsym_direct, qsym_recursive, qsym_specialization_check, run_invariant, InvariantSpec};
use crate::order_poly::{
    convolution_check, derivative_identity_check, exp_log_round_trip_check, omega_from_phi, order_poly_bruteforce,
    order_poly_matrix, order_poly_recursive, phi_recursion_check, theta_coherence_check,
};
use crate::poset::{LabeledPoset, Poset};
use crate::unlabeled::{
    order_poly_unlabeled, reciprocity_check, recursion_call_count, signed_order_poly_nabla, strict_order_poly,
    strict_value_at_one_check, Flavor,
};
use crate::Rational;

/// Seed for the pseudo-random labelings of the sampled catalog.
pub const DEFAULT_SEED: u64 = 0x5eed;

const MAX_REPORTED: usize = 5;

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    /// First few failing cases, plus the total count.
    pub failures: Vec<String>,
    pub failed: usize,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome { name: name.to_string(), cases: 0, failures: Vec::new(), failed: 0 }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {} ({} cases", self.name, self.cases)?;
        if self.failed > 0 {
            write!(f, ", {} failed", self.failed)?;
        }
        f.write_str(")")?;
        for line in &self.failures {
            write!(f, "\n      {line}")?;
        }
        Ok(())
    }
}

/// Short description of a labeled poset for failure reports.
pub fn describe(lp: &LabeledPoset) -> String {
    format!("n={} covers={:?} labels={:?}", lp.len(), lp.poset().covers(), lp.labeling().labels())
}

fn describe_poset(p: &Poset) -> String {
    format!("n={} covers={:?}", p.len(), p.covers())
}

/// Brute force, matrix and recursive order polynomials agree.
pub fn check_order_poly_routes(max: usize, seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("order polynomial: brute force = matrix = recursion");
    for lp in sampled_catalog(max, seed) {
        let ok = match order_poly_bruteforce(&lp) {
            Ok(brute) => order_poly_matrix(&lp) == brute && order_poly_recursive(&lp) == brute,
            Err(_) => false,
        };
        out.record(ok, || describe(&lp));
    }
    out
}

/// Path-count and recursive Eulerian polynomials agree and expand to the
/// order-polynomial series.
pub fn check_eulerian(max: usize, seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("eulerian: chains = recursion, series through 2|P|+2");
    for lp in sampled_catalog(max, seed) {
        let pair = eulerian_from_chains(&lp);
        let ok = eulerian_recursive(&lp) == pair.e
            && eulerian_tilde_recursive(&lp) == pair.tilde
            && eulerian_series_check(&lp, 2 * lp.len() + 2);
        out.record(ok, || describe(&lp));
    }
    out
}

/// Sizes for [`check_bernoulli`].
#[derive(Clone, Copy, Debug)]
pub struct BernoulliSizes {
    pub shrub_phi: usize,
    pub closed_form: usize,
    pub integrality: usize,
    pub order_poly: usize,
    pub chain_counts: usize,
}

impl Default for BernoulliSizes {
    fn default() -> Self {
        BernoulliSizes { shrub_phi: 12, closed_form: 15, integrality: 20, order_poly: 8, chain_counts: 8 }
    }
}

pub fn check_bernoulli(sizes: BernoulliSizes) -> CheckOutcome {
    let mut out = CheckOutcome::new("bernoulli: shrub φ, closed form, integrality, ∫B_n");
    let top = [sizes.shrub_phi, sizes.closed_form, sizes.integrality, sizes.order_poly].into_iter().max().unwrap_or(0);
    let table = BernoulliTable::new(top);
    for n in 1..=sizes.shrub_phi {
        out.record(bernoulli_from_shrub(n) == *table.number(n), || format!("φ(S_{n}) ≠ b_{n}"));
    }
    for n in 1..=sizes.closed_form {
        out.record(bernoulli_multinomial(n) == *table.number(n), || format!("closed form b_{n}"));
    }
    for n in 1..=sizes.integrality {
        out.record(scaled_numerator(table.number(n), n).is_some(), || format!("(n+1)!·b_{n} not integral"));
    }
    for n in 1..=sizes.order_poly {
        out.record(shrub_order_poly_check(n, &table), || format!("Ω(S_{n}) ≠ ∫B_{n}"));
    }
    for n in 1..=sizes.chain_counts {
        out.record(shrub_chain_counts_check(n), || format!("path counts of S_{n}"));
    }
    out
}

pub fn check_lemma(max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("composition sums agree and reproduce b_n");
    let table = BernoulliTable::new(max);
    for n in 1..=max {
        out.record(lemma_identity_check(n, &table), || format!("n={n}"));
    }
    out
}

/// Binomial and derivative recursions, path counts of `A_n`, and `A_n(1) = n!`.
pub fn check_antichain_eulerian(max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("antichain eulerian: binomial = derivative = chains, A_n(1) = n!");
    for n in 1..=max {
        let binom = antichain_eulerian_binomial(n);
        let ok = antichain_eulerian_derivative(n) == binom
            && eulerian_from_chains(&LabeledPoset::natural(Poset::antichain(n))).e == binom
            && binom.eval(&Rational::one()) == factorial::<Rational>(n);
        out.record(ok, || format!("n={n}"));
    }
    out
}

/// Convolution, flag-sum and derivative identities on every labeled poset.
pub fn check_structural(flag_max: usize, convolution_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("structural: s+t convolution, flag sums, Ω from φ, Ω'");
    for lp in labeled_catalog(convolution_max) {
        out.record(convolution_check(&lp), || format!("convolution {}", describe(&lp)));
    }
    for lp in labeled_catalog(flag_max) {
        let ok = phi_recursion_check(&lp)
            && omega_from_phi(&lp) == order_poly_matrix(&lp)
            && derivative_identity_check(&lp) == (true, true);
        out.record(ok, || format!("flags/derivative {}", describe(&lp)));
    }
    out
}

/// Chain-polynomial identities: the anchored chain polynomial on every
/// labeled poset, the plain interior one on natural labelings.
pub fn check_chain_polynomials(max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("chain polynomial identities for ẽ and e");
    for lp in labeled_catalog(max) {
        out.record(anchored_chain_identities(&lp) == (true, true), || format!("anchored {}", describe(&lp)));
        if lp.is_natural() {
            out.record(interior_chain_identities(&lp) == (true, true), || format!("interior {}", describe(&lp)));
        }
    }
    out
}

/// The generic recursion reproduces Ω, ẽ, e and K.
pub fn check_framework(max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("framework: Ω, ẽ, e and K from their specs");
    let (omega, tilde, euler) = (InvariantSpec::omega(), InvariantSpec::eulerian_tilde(), InvariantSpec::eulerian());
    for lp in labeled_catalog(max) {
        let pair = eulerian_from_chains(&lp);
        let vars = lp.len() + 1;
        let ok = run_invariant(&omega, &lp).ok().and_then(|v| v.as_poly().cloned()) == Some(order_poly_matrix(&lp))
            && run_invariant(&tilde, &lp).ok().and_then(|v| v.as_localized().cloned()) == Some(pair.tilde)
            && run_invariant(&euler, &lp).ok().and_then(|v| v.as_poly().cloned()) == Some(pair.e)
            && qsym_recursive(&lp, vars) == qsym_direct(&lp, vars);
        out.record(ok, || describe(&lp));
    }
    out
}

/// Quasi-symmetry of `K` and the specialization `x_1..x_n ↦ 1`.
pub fn check_qsym(max: usize, max_vars: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("K: quasi-symmetric, specializes to Ω(n)");
    for lp in labeled_catalog(max) {
        for vars in 1..=max_vars {
            out.record(qsym_direct(&lp, vars).is_quasi_symmetric(), || format!("N={vars} {}", describe(&lp)));
            for n in 0..=vars {
                out.record(qsym_specialization_check(&lp, vars, n), || format!("N={vars} n={n} {}", describe(&lp)));
            }
        }
    }
    out
}

/// Unlabeled recursions against labeled routes, reciprocity, `-∇⁻¹` route,
/// antichain characterization, and the call-count comparison.
pub fn check_unlabeled(max: usize, labeled_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("unlabeled: both algorithms, reciprocity, ∇⁻¹, values at ±1");
    for p in posets_up_to(max) {
        out.record(reciprocity_check(&p), || format!("reciprocity {}", describe_poset(&p)));
        out.record(strict_value_at_one_check(&p), || format!("values at ±1 {}", describe_poset(&p)));
        let sign = if p.len() % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.record(signed_order_poly_nabla(&p).scale(&sign) == order_poly_unlabeled(&p), || {
            format!("∇⁻¹ route {}", describe_poset(&p))
        });
        out.record(
            recursion_call_count(&p, Flavor::MinimalSubsets) <= recursion_call_count(&p, Flavor::AllIdeals),
            || format!("call counts {}", describe_poset(&p)),
        );
        if p.len() <= labeled_max {
            let labelings = all_labelings(&p);
            let weak = order_poly_unlabeled(&p);
            let strict = strict_order_poly(&p);
            for lp in labelings.iter().filter(|lp| lp.is_natural()).take(2) {
                out.record(order_poly_matrix(lp) == weak, || format!("natural {}", describe(lp)));
            }
            for lp in labelings.iter().filter(|lp| lp.is_strict()).take(2) {
                out.record(order_poly_matrix(lp) == strict, || format!("strict {}", describe(lp)));
            }
        }
    }
    out
}

/// `Θ(n) = (I + A)^n` for `n <= max_power`, and Θ's entries are the order
/// polynomials of the corresponding sub-posets.
pub fn check_exp_log(max: usize, seed: u64, max_power: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("Θ(n) = (I + A)^n and sub-poset entries");
    for lp in sampled_catalog(max, seed) {
        let ok = exp_log_round_trip_check(&lp, max_power) && theta_coherence_check(&lp);
        out.record(ok, || describe(&lp));
    }
    out
}

/// The catalog-driven checks at one size bound, run in parallel and
/// reported in a fixed order.
pub fn run_check_suite(max_size: usize) -> Vec<CheckOutcome> {
    let checks: Vec<Box<dyn Fn() -> CheckOutcome + Sync>> = vec![
        Box::new(move || check_order_poly_routes(max_size, DEFAULT_SEED)),
        Box::new(move || check_eulerian(max_size, DEFAULT_SEED)),
        Box::new(move || check_structural(max_size, max_size)),
        Box::new(move || check_chain_polynomials(max_size)),
        Box::new(move || check_framework(max_size)),
        Box::new(move || check_qsym(max_size, max_size + 1)),
        Box::new(move || check_unlabeled(max_size, max_size)),
    ];
    checks.par_iter().map(|check| check()).collect()
}
