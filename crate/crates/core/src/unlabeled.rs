//! Invariants of unlabeled posets.
//!
//! Identifying a poset with its naturally labeled version turns the ω-natural
//! ideals into all ideals; identifying it with a strictly labeled version
//! turns them into the nonempty sets of minimal elements.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::framework::{CarrierValue, FrameworkError, SingleOperator};
use crate::poset::{CanonicalPoset, ElementSet, Poset};
use crate::{Poly, Rational};

/// Which sub-posets a step removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Every nonempty ideal.
    AllIdeals,
    /// Every nonempty subset of the minimal elements.
    MinimalSubsets,
}

impl Flavor {
    fn removable(self, p: &Poset, mask: ElementSet) -> Vec<ElementSet> {
        match self {
            Flavor::AllIdeals => p.ideals_within(mask).into_iter().filter(|s| !s.is_empty()).collect(),
            Flavor::MinimalSubsets => p.minimal_within(mask).subsets().filter(|s| !s.is_empty()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnlabeledInvariantSpec {
    pub base: CarrierValue,
    pub operator: SingleOperator,
    pub flavor: Flavor,
}

impl UnlabeledInvariantSpec {
    /// `Ω(P; t)`: base 1, `Δ⁻¹`, all ideals.
    pub fn order_poly() -> Self {
        UnlabeledInvariantSpec {
            base: CarrierValue::Poly(Poly::one()),
            operator: SingleOperator::DeltaInverse,
            flavor: Flavor::AllIdeals,
        }
    }

    /// `Ω̄(P; t)`: base 1, `Δ⁻¹`, subsets of minimal elements.
    pub fn strict_order_poly() -> Self {
        UnlabeledInvariantSpec { flavor: Flavor::MinimalSubsets, ..Self::order_poly() }
    }

    /// `(-1)^{|P|} Ω(P; t)`: base 1, `-∇⁻¹`, subsets of minimal elements.
    pub fn signed_order_poly() -> Self {
        UnlabeledInvariantSpec { operator: SingleOperator::NegNablaInverse, ..Self::strict_order_poly() }
    }
}

type UnlabeledMemo = HashMap<CanonicalPoset, CarrierValue>;

pub fn run_unlabeled(spec: &UnlabeledInvariantSpec, p: &Poset) -> Result<CarrierValue, FrameworkError> {
    if spec.base.kind() != spec.operator.carrier() {
        return Err(FrameworkError::CarrierMismatch {
            operator: spec.operator.name().to_string(),
            expected: spec.operator.carrier(),
            got: spec.base.kind(),
        });
    }
    Ok(run_within(spec, p, p.ground(), &mut UnlabeledMemo::new()))
}

fn run_within(spec: &UnlabeledInvariantSpec, p: &Poset, mask: ElementSet, memo: &mut UnlabeledMemo) -> CarrierValue {
    if mask.is_empty() {
        return spec.base.clone();
    }
    let key = p.induced(mask).0.canonical_form();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut sum = spec.base.zero_like();
    for s in spec.flavor.removable(p, mask) {
        let child = run_within(spec, p, mask.difference(s), memo);
        sum = sum.try_add(&child).expect("single carrier");
    }
    let value = spec.operator.apply(&sum).expect("carrier checked");
    memo.insert(key, value.clone());
    value
}

fn run_poly(spec: &UnlabeledInvariantSpec, p: &Poset) -> Poly {
    run_unlabeled(spec, p).expect("built-in spec").as_poly().expect("polynomial carrier").clone()
}

pub fn order_poly_unlabeled(p: &Poset) -> Poly {
    run_poly(&UnlabeledInvariantSpec::order_poly(), p)
}

pub fn strict_order_poly(p: &Poset) -> Poly {
    run_poly(&UnlabeledInvariantSpec::strict_order_poly(), p)
}

/// `Ω̃(P; t) = (-1)^{|P|} Ω(P; t)` through `-∇⁻¹`.
pub fn signed_order_poly_nabla(p: &Poset) -> Poly {
    run_poly(&UnlabeledInvariantSpec::signed_order_poly(), p)
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Ω(P; t) = (-1)^{|P|} Ω̄(P; -t)`.
pub fn reciprocity_check(p: &Poset) -> bool {
    order_poly_unlabeled(p) == strict_order_poly(p).reflect().scale(&sign(p.len()))
}

/// `Ω̄(P; 1)` is 1 exactly for antichains, and `Ω(P; -1)` is `(-1)^{|P|}`
/// for antichains and 0 otherwise.
pub fn strict_value_at_one_check(p: &Poset) -> bool {
    let antichain = p.is_antichain(p.ground());
    let indicator = if antichain { Rational::one() } else { Rational::zero() };
    let strict_ok = strict_order_poly(p).eval(&Rational::one()) == indicator;
    let weak_ok = order_poly_unlabeled(p).eval(&-Rational::one()) == sign(p.len()) * indicator;
    strict_ok && weak_ok
}

/// Number of invocations of the recursion without memoization, root
/// included.
pub fn recursion_call_count(p: &Poset, flavor: Flavor) -> u64 {
    fn go(p: &Poset, mask: ElementSet, flavor: Flavor) -> u64 {
        1 + flavor.removable(p, mask).into_iter().map(|s| go(p, mask.difference(s), flavor)).sum::<u64>()
    }
    go(p, p.ground(), flavor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_poly::order_poly_matrix;
    use crate::poset::LabeledPoset;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn weak_examples() {
        assert_eq!(order_poly_unlabeled(&Poset::chain(2)), p(&[(0, 1), (1, 2), (1, 2)]));
        for n in 0..5 {
            assert_eq!(order_poly_unlabeled(&Poset::antichain(n)), Poly::monomial(q(1, 1), n));
        }
    }

    #[test]
    fn strict_examples() {
        assert_eq!(strict_order_poly(&Poset::chain(2)), p(&[(0, 1), (-1, 2), (1, 2)]));
        assert_eq!(strict_order_poly(&Poset::antichain(3)), Poly::monomial(q(1, 1), 3));
        assert_eq!(strict_order_poly(&Poset::shrub(2)), p(&[(0, 1), (1, 6), (-1, 2), (1, 3)]));
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(signed_order_poly_nabla(&Poset::chain(1)), p(&[(0, 1), (-1, 1)]));
        assert_eq!(signed_order_poly_nabla(&Poset::antichain(2)), Poly::monomial(q(1, 1), 2));
        let shrub = Poset::shrub(2);
        assert_eq!(signed_order_poly_nabla(&shrub), order_poly_unlabeled(&shrub).scale(&q(-1, 1)));
    }

    #[test]
    fn labeled_agreement() {
        let y = Poset::from_covers(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        for poset in [Poset::chain(3), Poset::shrub(3), y] {
            assert_eq!(order_poly_unlabeled(&poset), order_poly_matrix(&LabeledPoset::natural(poset.clone())));
            assert_eq!(strict_order_poly(&poset), order_poly_matrix(&LabeledPoset::strict(poset.clone())));
            assert!(reciprocity_check(&poset));
            assert!(strict_value_at_one_check(&poset));
        }
    }

    #[test]
    fn antichain_characterization() {
        assert!(strict_value_at_one_check(&Poset::antichain(3)));
        assert_eq!(order_poly_unlabeled(&Poset::antichain(3)).eval(&q(-1, 1)), q(-1, 1));
        assert_eq!(strict_order_poly(&Poset::chain(2)).eval(&q(1, 1)), q(0, 1));
    }

    #[test]
    fn call_counts() {
        assert_eq!(recursion_call_count(&Poset::antichain(2), Flavor::AllIdeals), 6);
        assert_eq!(recursion_call_count(&Poset::chain(3), Flavor::MinimalSubsets), 4);
        assert_eq!(recursion_call_count(&Poset::chain(3), Flavor::AllIdeals), 8);
    }

    #[test]
    fn mismatched_carrier() {
        let spec =
            UnlabeledInvariantSpec { operator: SingleOperator::MulLambdaRatio, ..UnlabeledInvariantSpec::order_poly() };
        assert!(run_unlabeled(&spec, &Poset::chain(1)).is_err());
    }
}
