//! Recursive invariants over ω-natural ideals.
//!
//! An invariant is fixed by a base value `Ψ(∅)` and a step. A single-operator
//! step sets `Ψ(P) = Ξ(Σ Ψ(P \ S))`; a family step sets
//! `Ψ(P) = Σ Ξ_{|S|}(Ψ(P \ S))`. In both cases `S` runs over the nonempty
//! ω-natural ideals of `P`.

mod qsym;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{delta_inverse, nabla_inverse, Scalar};
use crate::poset::{ElementSet, LabeledKey, LabeledPoset};
use crate::{Localized, Poly, Rational};

pub use qsym::{qsym_direct, qsym_recursive, qsym_specialization_check, QSym};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameworkError {
    #[error("operator {operator} acts on {expected} values, got {got}")]
    CarrierMismatch { operator: String, expected: CarrierKind, got: CarrierKind },
    #[error("unknown invariant spec `{0}` (expected omega, etilde, eulerian or qsym:N)")]
    UnknownSpec(String),
    #[error("quasi-symmetric truncation needs at least one variable")]
    NoVariables,
}

/// Memo table keyed by labeled-poset equivalence class. Only reuse a table
/// with the invariant that filled it.
pub type Memo<V> = HashMap<LabeledKey, V>;

/// Runs the recursion on `lp`. `step` receives one `(|S|, Ψ(P \ S))` pair per
/// nonempty ω-natural ideal `S`.
pub fn recurse<V, F>(lp: &LabeledPoset, memo: &mut Memo<V>, base: &V, step: &F) -> V
where
    V: Clone,
    F: Fn(&[(usize, V)]) -> V,
{
    recurse_within(lp, lp.ground(), memo, base, step)
}

fn recurse_within<V, F>(lp: &LabeledPoset, mask: ElementSet, memo: &mut Memo<V>, base: &V, step: &F) -> V
where
    V: Clone,
    F: Fn(&[(usize, V)]) -> V,
{
    if mask.is_empty() {
        return base.clone();
    }
    let key = lp.key_within(mask);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let children: Vec<(usize, V)> = lp
        .omega_natural_ideals_within(mask)
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| (s.len(), recurse_within(lp, mask.difference(s), memo, base, step)))
        .collect();
    let value = step(&children);
    memo.insert(key, value.clone());
    value
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CarrierKind {
    Poly,
    Localized,
    QSym,
}

impl fmt::Display for CarrierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CarrierKind::Poly => "polynomial",
            CarrierKind::Localized => "localized",
            CarrierKind::QSym => "quasi-symmetric",
        })
    }
}

/// A value of one of the supported carrier spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum CarrierValue {
    Poly(Poly),
    Localized(Localized),
    QSym(QSym),
}

impl CarrierValue {
    pub fn kind(&self) -> CarrierKind {
        match self {
            CarrierValue::Poly(_) => CarrierKind::Poly,
            CarrierValue::Localized(_) => CarrierKind::Localized,
            CarrierValue::QSym(_) => CarrierKind::QSym,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            CarrierValue::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_localized(&self) -> Option<&Localized> {
        match self {
            CarrierValue::Localized(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_qsym(&self) -> Option<&QSym> {
        match self {
            CarrierValue::QSym(q) => Some(q),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &CarrierValue) -> Result<CarrierValue, FrameworkError> {
        match (self, other) {
            (CarrierValue::Poly(a), CarrierValue::Poly(b)) => Ok(CarrierValue::Poly(a + b)),
            (CarrierValue::Localized(a), CarrierValue::Localized(b)) => Ok(CarrierValue::Localized(a + b)),
            (CarrierValue::QSym(a), CarrierValue::QSym(b)) if a.vars() == b.vars() => Ok(CarrierValue::QSym(a + b)),
            _ => {
                Err(FrameworkError::CarrierMismatch { operator: "+".into(), expected: self.kind(), got: other.kind() })
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> CarrierValue {
        match self {
            CarrierValue::Poly(p) => CarrierValue::Poly(p.scale(c)),
            CarrierValue::Localized(r) => CarrierValue::Localized(r.scale(c)),
            CarrierValue::QSym(q) => CarrierValue::QSym(q.scale(c)),
        }
    }

    /// Zero of the same carrier (same variable name or variable count).
    pub fn zero_like(&self) -> CarrierValue {
        match self {
            CarrierValue::Poly(p) => CarrierValue::Poly(Poly::zero().with_var(p.var_name())),
            CarrierValue::Localized(_) => CarrierValue::Localized(Localized::zero()),
            CarrierValue::QSym(q) => CarrierValue::QSym(QSym::zero(q.vars())),
        }
    }
}

impl fmt::Display for CarrierValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierValue::Poly(p) => p.fmt(f),
            CarrierValue::Localized(r) => r.fmt(f),
            CarrierValue::QSym(q) => q.fmt(f),
        }
    }
}

/// Built-in linear operators for single-operator recursions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingleOperator {
    /// `Δ⁻¹` on polynomials.
    DeltaInverse,
    /// `-∇⁻¹` on polynomials.
    NegNablaInverse,
    /// Multiplication by `λ/(1-λ)` in the localized ring.
    MulLambdaRatio,
}

impl SingleOperator {
    pub fn carrier(self) -> CarrierKind {
        match self {
            SingleOperator::DeltaInverse | SingleOperator::NegNablaInverse => CarrierKind::Poly,
            SingleOperator::MulLambdaRatio => CarrierKind::Localized,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SingleOperator::DeltaInverse => "delta-inverse",
            SingleOperator::NegNablaInverse => "neg-nabla-inverse",
            SingleOperator::MulLambdaRatio => "mul-lambda-ratio",
        }
    }

    pub fn apply(self, v: &CarrierValue) -> Result<CarrierValue, FrameworkError> {
        match (self, v) {
            (SingleOperator::DeltaInverse, CarrierValue::Poly(p)) => Ok(CarrierValue::Poly(delta_inverse(p))),
            (SingleOperator::NegNablaInverse, CarrierValue::Poly(p)) => Ok(CarrierValue::Poly(-nabla_inverse(p))),
            (SingleOperator::MulLambdaRatio, CarrierValue::Localized(r)) => {
                Ok(CarrierValue::Localized(r * &Localized::lambda_ratio()))
            }
            _ => Err(mismatch(self.name(), self.carrier(), v.kind())),
        }
    }
}

/// Built-in operator families `Ξ_m`, indexed by the size `m` of the removed
/// ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyOperator {
    /// Multiplication by `λ(1-λ)^{m-1}`.
    EulerianWeight,
    /// `Λ_m = Σ_k x_k^m S^k` on truncated quasi-symmetric functions.
    Lambda,
}

impl FamilyOperator {
    pub fn carrier(self) -> CarrierKind {
        match self {
            FamilyOperator::EulerianWeight => CarrierKind::Poly,
            FamilyOperator::Lambda => CarrierKind::QSym,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyOperator::EulerianWeight => "eulerian-weight",
            FamilyOperator::Lambda => "lambda",
        }
    }

    pub fn apply(self, m: usize, v: &CarrierValue) -> Result<CarrierValue, FrameworkError> {
        match (self, v) {
            (FamilyOperator::EulerianWeight, CarrierValue::Poly(p)) => {
                let lambda = Poly::var().with_var(p.var_name());
                let one_minus = Poly::linear(Rational::from_int(1), Rational::from_int(-1));
                let weight = &lambda * &one_minus.pow(m as u32 - 1);
                Ok(CarrierValue::Poly((&weight * p).with_var(p.var_name())))
            }
            (FamilyOperator::Lambda, CarrierValue::QSym(q)) => Ok(CarrierValue::QSym(q.lambda(m))),
            _ => Err(mismatch(self.name(), self.carrier(), v.kind())),
        }
    }
}

fn mismatch(operator: &str, expected: CarrierKind, got: CarrierKind) -> FrameworkError {
    FrameworkError::CarrierMismatch { operator: operator.to_string(), expected, got }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Single(SingleOperator),
    Family(FamilyOperator),
}

impl Step {
    pub fn carrier(self) -> CarrierKind {
        match self {
            Step::Single(op) => op.carrier(),
            Step::Family(op) => op.carrier(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Step::Single(op) => op.name(),
            Step::Family(op) => op.name(),
        }
    }
}

/// Base value plus recursion step.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpec {
    pub base: CarrierValue,
    pub step: Step,
}

impl InvariantSpec {
    pub fn new(base: CarrierValue, step: Step) -> Result<Self, FrameworkError> {
        let spec = InvariantSpec { base, step };
        spec.validate()?;
        Ok(spec)
    }

    /// Order polynomial: `1 ∈ ℚ[t]` with `Δ⁻¹`.
    pub fn omega() -> Self {
        InvariantSpec { base: CarrierValue::Poly(Poly::one()), step: Step::Single(SingleOperator::DeltaInverse) }
    }

    /// `e/(1-λ)^{|P|+1}`: `1/(1-λ)` with multiplication by `λ/(1-λ)`.
    pub fn eulerian_tilde() -> Self {
        InvariantSpec {
            base: CarrierValue::Localized(Localized::inverse_one_minus_lambda()),
            step: Step::Single(SingleOperator::MulLambdaRatio),
        }
    }

    /// Eulerian polynomial: `1 ∈ ℚ[λ]` with the family `λ(1-λ)^{m-1}`.
    pub fn eulerian() -> Self {
        InvariantSpec {
            base: CarrierValue::Poly(Poly::one().with_var('λ')),
            step: Step::Family(FamilyOperator::EulerianWeight),
        }
    }

    /// `K(P, ω; x)` restricted to `x_1..x_vars`, through the `Λ_m` family.
    pub fn qsym(vars: usize) -> Result<Self, FrameworkError> {
        if vars == 0 {
            return Err(FrameworkError::NoVariables);
        }
        Ok(InvariantSpec { base: CarrierValue::QSym(QSym::one(vars)), step: Step::Family(FamilyOperator::Lambda) })
    }

    pub fn validate(&self) -> Result<(), FrameworkError> {
        if self.base.kind() == self.step.carrier() {
            Ok(())
        } else {
            Err(mismatch(self.step.name(), self.step.carrier(), self.base.kind()))
        }
    }
}

impl FromStr for InvariantSpec {
    type Err = FrameworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "omega" => Ok(InvariantSpec::omega()),
            "etilde" => Ok(InvariantSpec::eulerian_tilde()),
            "eulerian" => Ok(InvariantSpec::eulerian()),
            _ => match s.strip_prefix("qsym:").map(str::parse::<usize>) {
                Some(Ok(n)) => InvariantSpec::qsym(n),
                _ => Err(FrameworkError::UnknownSpec(s.to_string())),
            },
        }
    }
}

pub fn run_invariant(spec: &InvariantSpec, lp: &LabeledPoset) -> Result<CarrierValue, FrameworkError> {
    run_invariant_with(spec, lp, &mut Memo::new())
}

/// As [`run_invariant`], reusing `memo` across calls with the same spec.
pub fn run_invariant_with(
    spec: &InvariantSpec,
    lp: &LabeledPoset,
    memo: &mut Memo<CarrierValue>,
) -> Result<CarrierValue, FrameworkError> {
    spec.validate()?;
    let zero = spec.base.zero_like();
    let step = |children: &[(usize, CarrierValue)]| -> CarrierValue {
        let apply = |acc: CarrierValue, (m, v): &(usize, CarrierValue)| -> CarrierValue {
            let term = match spec.step {
                Step::Single(_) => v.clone(),
                Step::Family(op) => op.apply(*m, v).expect("carrier validated"),
            };
            acc.try_add(&term).expect("carrier validated")
        };
        let sum = children.iter().fold(zero.clone(), apply);
        match spec.step {
            Step::Single(op) => op.apply(&sum).expect("carrier validated"),
            Step::Family(_) => sum,
        }
    };
    Ok(recurse(lp, memo, &spec.base, &step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn chain2_strict() -> LabeledPoset {
        LabeledPoset::strict(Poset::chain(2))
    }

    #[test]
    fn omega_spec_examples() {
        let single = run_invariant(&InvariantSpec::omega(), &LabeledPoset::natural(Poset::chain(1))).unwrap();
        assert_eq!(single, CarrierValue::Poly(Poly::var()));
        let strict = run_invariant(&InvariantSpec::omega(), &chain2_strict()).unwrap();
        assert_eq!(strict.as_poly().unwrap(), &Poly::from_coeffs(vec![q(0, 1), q(-1, 2), q(1, 2)]));
    }

    #[test]
    fn eulerian_specs_on_antichain() {
        let a2 = LabeledPoset::natural(Poset::antichain(2));
        let e = run_invariant(&InvariantSpec::eulerian(), &a2).unwrap();
        assert_eq!(e.as_poly().unwrap(), &Poly::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]));
        let tilde = run_invariant(&InvariantSpec::eulerian_tilde(), &a2).unwrap();
        let want = Localized::new(Poly::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]), 3);
        assert_eq!(tilde.as_localized().unwrap(), &want);
    }

    #[test]
    fn empty_poset_gives_base() {
        let empty = LabeledPoset::natural(Poset::antichain(0));
        assert_eq!(run_invariant(&InvariantSpec::omega(), &empty).unwrap(), CarrierValue::Poly(Poly::one()));
    }

    #[test]
    fn carrier_mismatch_is_rejected() {
        let spec =
            InvariantSpec { base: CarrierValue::Poly(Poly::one()), step: Step::Single(SingleOperator::MulLambdaRatio) };
        let err = run_invariant(&spec, &chain2_strict()).unwrap_err();
        assert!(matches!(err, FrameworkError::CarrierMismatch { .. }));
        assert!(
            InvariantSpec::new(CarrierValue::QSym(QSym::one(2)), Step::Family(FamilyOperator::EulerianWeight)).is_err()
        );
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("omega".parse::<InvariantSpec>().unwrap(), InvariantSpec::omega());
        assert_eq!("qsym:3".parse::<InvariantSpec>().unwrap(), InvariantSpec::qsym(3).unwrap());
        assert_eq!("qsym:0".parse::<InvariantSpec>(), Err(FrameworkError::NoVariables));
        assert!(matches!("qsym:x".parse::<InvariantSpec>(), Err(FrameworkError::UnknownSpec(_))));
        assert!(matches!("delta".parse::<InvariantSpec>(), Err(FrameworkError::UnknownSpec(_))));
    }

    #[test]
    fn disjoint_union_need_not_multiply() {
        // Ω is multiplicative on naturally labeled forests, but a generic
        // spec such as base 2 with Ξ = Δ⁻¹ is not.
        let a = Poset::chain(2);
        let b = Poset::chain(1);
        let u = LabeledPoset::natural(a.disjoint_union(&b).unwrap());
        let omega = InvariantSpec::omega();
        let pa = run_invariant(&omega, &LabeledPoset::natural(a.clone())).unwrap();
        let pb = run_invariant(&omega, &LabeledPoset::natural(b.clone())).unwrap();
        let pu = run_invariant(&omega, &u).unwrap();
        assert_eq!(pu.as_poly().unwrap(), &(pa.as_poly().unwrap() * pb.as_poly().unwrap()));

        let other = InvariantSpec {
            base: CarrierValue::Poly(Poly::constant(Rational::from_int(2))),
            step: Step::Single(SingleOperator::DeltaInverse),
        };
        let qa = run_invariant(&other, &LabeledPoset::natural(a)).unwrap();
        let qb = run_invariant(&other, &LabeledPoset::natural(b)).unwrap();
        let qu = run_invariant(&other, &u).unwrap();
        assert_ne!(qu.as_poly().unwrap(), &(qa.as_poly().unwrap() * qb.as_poly().unwrap()));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..8).prop_map(|(n, d)| q(n, d))
    }

    fn poly(var: char) -> impl Strategy<Value = Poly> {
        prop::collection::vec(rational(), 0..6).prop_map(move |cs| Poly::from_coeffs(cs).with_var(var))
    }

    fn localized() -> impl Strategy<Value = Localized> {
        (poly('λ'), 0u32..4).prop_map(|(p, k)| Localized::new(p, k))
    }

    fn qsym(vars: usize) -> impl Strategy<Value = QSym> {
        prop::collection::vec((prop::collection::vec(0u32..3, vars), rational()), 0..6)
            .prop_map(move |terms| QSym::from_terms(vars, terms))
    }

    fn check_linear<F>(op: F, u: CarrierValue, v: CarrierValue, c: Rational) -> Result<(), TestCaseError>
    where
        F: Fn(&CarrierValue) -> CarrierValue,
    {
        prop_assert_eq!(op(&u.try_add(&v).unwrap()), op(&u).try_add(&op(&v)).unwrap());
        prop_assert_eq!(op(&u.scale(&c)), op(&u).scale(&c));
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn delta_inverse_is_linear(u in poly('t'), v in poly('t'), c in rational()) {
            check_linear(|x| SingleOperator::DeltaInverse.apply(x).unwrap(), CarrierValue::Poly(u), CarrierValue::Poly(v), c)?;
        }

        #[test]
        fn neg_nabla_inverse_is_linear(u in poly('t'), v in poly('t'), c in rational()) {
            check_linear(|x| SingleOperator::NegNablaInverse.apply(x).unwrap(), CarrierValue::Poly(u), CarrierValue::Poly(v), c)?;
        }

        #[test]
        fn lambda_ratio_is_linear(u in localized(), v in localized(), c in rational()) {
            check_linear(|x| SingleOperator::MulLambdaRatio.apply(x).unwrap(), CarrierValue::Localized(u), CarrierValue::Localized(v), c)?;
        }

        #[test]
        fn eulerian_weight_is_linear(u in poly('λ'), v in poly('λ'), c in rational(), m in 1usize..6) {
            check_linear(|x| FamilyOperator::EulerianWeight.apply(m, x).unwrap(), CarrierValue::Poly(u), CarrierValue::Poly(v), c)?;
        }

        #[test]
        fn lambda_family_is_linear(u in qsym(4), v in qsym(4), c in rational(), m in 1usize..4) {
            check_linear(|x| FamilyOperator::Lambda.apply(m, x).unwrap(), CarrierValue::QSym(u), CarrierValue::QSym(v), c)?;
        }
    }
}
