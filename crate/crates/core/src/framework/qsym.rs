//! Quasi-symmetric functions truncated to finitely many variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::{One, Signed, Zero};

use super::{run_invariant, InvariantSpec};
use crate::algebra::Scalar;
use crate::order_poly::order_poly_recursive;
use crate::poset::LabeledPoset;
use crate::Rational;

/// Polynomial in `x_1..x_N`. Every operation returns the exact restriction
/// of the infinite-variable object to monomials in those `N` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSym {
    vars: usize,
    // exponent vector (length `vars`) → nonzero coefficient
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl QSym {
    pub fn zero(vars: usize) -> Self {
        QSym { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::from_terms(vars, [(vec![0; vars], Rational::one())])
    }

    /// `x_i` for `1 <= i <= vars`.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i - 1] = 1;
        Self::from_terms(vars, [(e, Rational::one())])
    }

    /// Sums the given terms; exponent vectors must have length `vars`.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut out = QSym::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QSym::zero(self.vars);
        }
        QSym { vars: self.vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// `S^k`: substitutes `x_m → x_{m+k}`, dropping monomials that leave
    /// `x_1..x_N`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = QSym::zero(self.vars);
        for (e, c) in &self.terms {
            if e[self.vars.saturating_sub(k)..].iter().any(|&a| a > 0) {
                continue;
            }
            let k = k.min(self.vars);
            let mut shifted = vec![0; self.vars];
            shifted[k..].copy_from_slice(&e[..self.vars - k]);
            out.add_term(shifted, c.clone());
        }
        out
    }

    /// Multiplies by `x_i^m`.
    pub fn times_power(&self, i: usize, m: u32) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e[i - 1] += m;
            (e, c.clone())
        });
        QSym { vars: self.vars, terms: terms.collect() }
    }

    /// `Λ_m f = Σ_k x_k^m S^k f`.
    pub fn lambda(&self, m: usize) -> Self {
        let mut out = QSym::zero(self.vars);
        for k in 1..=self.vars {
            let shifted = self.shift(k);
            for (e, c) in shifted.times_power(k, m as u32).terms {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Value at `x_1 = .. = x_n = 1` and the remaining variables 0.
    pub fn specialize_ones(&self, n: usize) -> Rational {
        self.terms.iter().filter(|(e, _)| e[n.min(self.vars)..].iter().all(|&a| a == 0)).map(|(_, c)| c.clone()).sum()
    }

    /// Whether the coefficient of `x_{i_1}^{a_1} ⋯ x_{i_k}^{a_k}` depends only
    /// on `(a_1, .., a_k)` for all `i_1 < .. < i_k` in `1..=N`.
    pub fn is_quasi_symmetric(&self) -> bool {
        let mut by_shape: BTreeMap<Vec<u32>, &Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let shape: Vec<u32> = e.iter().copied().filter(|&a| a > 0).collect();
            match by_shape.get(&shape) {
                Some(&first) if first != c => return false,
                Some(_) => {}
                None => {
                    by_shape.insert(shape, c);
                }
            }
        }
        for (shape, &c) in &by_shape {
            let mut ok = true;
            for_each_placement(self.vars, shape, &mut |e| {
                if ok && self.terms.get(e) != Some(c) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

fn for_each_placement(vars: usize, shape: &[u32], visit: &mut dyn FnMut(&[u32])) {
    fn go(vars: usize, shape: &[u32], from: usize, e: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        let Some((&a, rest)) = shape.split_first() else {
            visit(e);
            return;
        };
        for i in from..vars {
            if vars - i < shape.len() {
                break;
            }
            e[i] = a;
            go(vars, rest, i + 1, e, visit);
            e[i] = 0;
        }
    }
    go(vars, shape, 0, &mut vec![0; vars], visit);
}

impl Add<&QSym> for &QSym {
    type Output = QSym;

    fn add(self, rhs: &QSym) -> QSym {
        assert_eq!(self.vars, rhs.vars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for QSym {
    type Output = QSym;

    fn add(self, rhs: QSym) -> QSym {
        &self + &rhs
    }
}

impl fmt::Display for QSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("·"))?;
            } else {
                write!(f, "{mag}·{}", factors.join("·"))?;
            }
        }
        Ok(())
    }
}

/// `K(P, ω; x)` in `vars` variables by enumerating ω-order-preserving maps
/// `P → [vars]`.
pub fn qsym_direct(lp: &LabeledPoset, vars: usize) -> QSym {
    let order = lp.poset().linear_extension();
    let mut values = vec![0usize; lp.len()];
    let mut exps = vec![0u32; vars];
    let mut out = QSym::zero(vars);
    assign(lp, &order, 0, vars, &mut values, &mut exps, &mut out);
    out
}

fn assign(
    lp: &LabeledPoset,
    order: &[usize],
    pos: usize,
    vars: usize,
    values: &mut [usize],
    exps: &mut [u32],
    out: &mut QSym,
) {
    let Some(&x) = order.get(pos) else {
        out.add_term(exps.to_vec(), Rational::one());
        return;
    };
    // Everything below x is already placed; its values bound f(x) from below.
    let mut low = 1;
    for y in lp.poset().below(x).iter() {
        let need = if lp.label(y) > lp.label(x) { values[y] + 1 } else { values[y] };
        low = low.max(need);
    }
    for v in low..=vars {
        values[x] = v;
        exps[v - 1] += 1;
        assign(lp, order, pos + 1, vars, values, exps, out);
        exps[v - 1] -= 1;
    }
}

/// `K(P, ω; x)` in `vars` variables through the `Λ_m` recursion.
pub fn qsym_recursive(lp: &LabeledPoset, vars: usize) -> QSym {
    if vars == 0 {
        return QSym::zero(0);
    }
    let spec = InvariantSpec::qsym(vars).expect("at least one variable");
    let v = run_invariant(&spec, lp).expect("built-in spec");
    v.as_qsym().expect("qsym carrier").clone()
}

/// Setting `x_1..x_n` to 1 and the rest to 0 in `K` counts ω-order-preserving
/// maps into `[n]`, which is `Ω(P, ω; n)`.
pub fn qsym_specialization_check(lp: &LabeledPoset, vars: usize, n: usize) -> bool {
    assert!(n <= vars, "specialization uses at most the available variables");
    let k = qsym_direct(lp, vars);
    k.specialize_ones(n) == order_poly_recursive(lp).eval(&Rational::from_count(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn x(vars: usize, i: usize) -> QSym {
        QSym::variable(vars, i)
    }

    fn mono(vars: usize, e: &[u32], c: i64) -> QSym {
        QSym::from_terms(vars, [(e.to_vec(), int(c))])
    }

    #[test]
    fn direct_examples() {
        let single = LabeledPoset::natural(Poset::chain(1));
        assert_eq!(qsym_direct(&single, 3), &(&x(3, 1) + &x(3, 2)) + &x(3, 3));
        let a2 = LabeledPoset::natural(Poset::antichain(2));
        let want = &(&mono(2, &[2, 0], 1) + &mono(2, &[1, 1], 2)) + &mono(2, &[0, 2], 1);
        assert_eq!(qsym_direct(&a2, 2), want);
        let strict = LabeledPoset::strict(Poset::chain(2));
        assert_eq!(qsym_direct(&strict, 2), mono(2, &[1, 1], 1));
    }

    #[test]
    fn shift_examples() {
        assert_eq!((&x(3, 1) + &x(3, 2)).shift(1), &x(3, 2) + &x(3, 3));
        assert!(x(2, 1).shift(2).is_zero());
        assert_eq!(QSym::one(3).shift(1), QSym::one(3));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(QSym::one(3).lambda(1), &(&x(3, 1) + &x(3, 2)) + &x(3, 3));
        assert_eq!(QSym::one(2).lambda(2), &mono(2, &[2, 0], 1) + &mono(2, &[0, 2], 1));
        assert_eq!(x(3, 1).lambda(1), &mono(3, &[1, 1, 0], 1) + &mono(3, &[0, 1, 1], 1));
    }

    #[test]
    fn recursive_examples() {
        let single = LabeledPoset::natural(Poset::chain(1));
        assert_eq!(qsym_recursive(&single, 3), qsym_direct(&single, 3));
        let a2 = LabeledPoset::natural(Poset::antichain(2));
        assert_eq!(qsym_recursive(&a2, 2), qsym_direct(&a2, 2));
        let strict = LabeledPoset::strict(Poset::chain(2));
        assert_eq!(qsym_recursive(&strict, 2), mono(2, &[1, 1], 1));
    }

    #[test]
    fn quasi_symmetry() {
        let shrub = LabeledPoset::strict(Poset::shrub(2));
        assert!(qsym_direct(&shrub, 4).is_quasi_symmetric());
        // x1^2 alone misses x2^2
        assert!(!mono(2, &[2, 0], 1).is_quasi_symmetric());
        // x1x2 + x1x3 + 2 x2x3
        let lopsided = &(&mono(3, &[1, 1, 0], 1) + &mono(3, &[1, 0, 1], 1)) + &mono(3, &[0, 1, 1], 2);
        assert!(!lopsided.is_quasi_symmetric());
        // symmetric is quasi-symmetric
        assert!((&mono(2, &[2, 0], 1) + &mono(2, &[0, 2], 1)).is_quasi_symmetric());
    }

    #[test]
    fn specialization() {
        let single = LabeledPoset::natural(Poset::chain(1));
        assert_eq!(qsym_direct(&single, 3).specialize_ones(3), int(3));
        let a2 = LabeledPoset::natural(Poset::antichain(2));
        assert_eq!(qsym_direct(&a2, 2).specialize_ones(2), int(4));
        assert!(qsym_specialization_check(&LabeledPoset::strict(Poset::shrub(2)), 5, 4));
    }

    #[test]
    fn display() {
        let a2 = LabeledPoset::natural(Poset::antichain(2));
        assert_eq!(qsym_direct(&a2, 2).to_string(), "x1^2 + 2·x1·x2 + x2^2");
        assert_eq!(QSym::zero(2).to_string(), "0");
    }
}
