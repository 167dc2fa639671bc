//! JSON result documents.
//!
//! Fractions are always written as `"num/den"` strings and polynomial
//! coefficients are listed by ascending power, so output is byte-identical
//! across runs for the same input.

use posetpoly::framework::{CarrierValue, QSym};
use posetpoly::{LabeledPoset, Localized, OmegaGraph, Poly, Rational};
use serde::Serialize;

pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn coefficients(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(fraction).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetEcho {
    pub elements: usize,
    pub labels: Vec<u32>,
    pub covers: Vec<[usize; 2]>,
}

impl PosetEcho {
    pub fn new(lp: &LabeledPoset) -> Self {
        PosetEcho {
            elements: lp.len(),
            labels: lp.labeling().labels().to_vec(),
            covers: lp.poset().covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub size: usize,
    pub ideals: usize,
    pub omega_natural_ideals: usize,
    pub chain_counts: Vec<String>,
}

impl Metadata {
    pub fn new(lp: &LabeledPoset) -> Self {
        let graph = OmegaGraph::build(lp);
        Metadata {
            size: lp.len(),
            ideals: graph.vertex_count(),
            omega_natural_ideals: lp.omega_natural_ideals().len(),
            chain_counts: graph.path_counts().c.iter().map(u128::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizedValue {
    /// Coefficients of the numerator in `λ`.
    pub numerator: Vec<String>,
    /// Power of `1 - λ` in the denominator.
    pub pole_order: u32,
}

impl LocalizedValue {
    pub fn new(r: &Localized) -> Self {
        let r = r.normalize();
        LocalizedValue { numerator: coefficients(r.numerator()), pole_order: r.pole_order() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QSymTerm {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

pub fn qsym_terms(q: &QSym) -> Vec<QSymTerm> {
    q.terms().map(|(e, c)| QSymTerm { exponents: e.to_vec(), coefficient: fraction(c) }).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphValue {
    pub vertices: Vec<Vec<usize>>,
    pub arcs: Vec<[usize; 2]>,
}

/// The computed value; exactly one kind per document.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Polynomial { variable: String, coefficients: Vec<String> },
    Scalar(String),
    Localized(LocalizedValue),
    Quasisymmetric { variables: usize, terms: Vec<QSymTerm> },
    Ideals(Vec<Vec<usize>>),
    Graph(GraphValue),
}

impl Value {
    pub fn poly(p: &Poly) -> Self {
        Value::Polynomial { variable: p.var_name().to_string(), coefficients: coefficients(p) }
    }

    pub fn carrier(v: &CarrierValue) -> Self {
        match v {
            CarrierValue::Poly(p) => Value::poly(p),
            CarrierValue::Localized(r) => Value::Localized(LocalizedValue::new(r)),
            CarrierValue::QSym(q) => Value::Quasisymmetric { variables: q.vars(), terms: qsym_terms(q) },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetEcho>,
    pub invariant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    /// Only present when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResultDocument {
    pub fn for_poset(lp: &LabeledPoset, invariant: &str, route: Option<&str>, value: Value) -> Self {
        ResultDocument {
            poset: Some(PosetEcho::new(lp)),
            invariant: invariant.to_string(),
            route: route.map(str::to_string),
            value,
            metadata: Some(Metadata::new(lp)),
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetpoly::Poset;

    #[test]
    fn fractions_round_trip() {
        for (n, d) in [(1, 2), (-3, 7), (4, 1), (0, 1)] {
            let q = Rational::new(n.into(), d.into());
            let s = fraction(&q);
            assert!(s.contains('/'));
            assert_eq!(s.parse::<Rational>().unwrap(), q);
        }
    }

    #[test]
    fn deterministic_layout() {
        let lp = LabeledPoset::natural(Poset::chain(2));
        let p = Poly::from_coeffs(vec![Rational::from_integer(0.into()), Rational::new(1.into(), 2.into())]);
        let doc = ResultDocument::for_poset(&lp, "order-poly", Some("matrix"), Value::poly(&p));
        let json = doc.to_json();
        assert_eq!(json, doc.to_json());
        let poset_at = json.find("\"poset\"").unwrap();
        let value_at = json.find("\"value\"").unwrap();
        assert!(poset_at < value_at);
        assert!(json.contains("\"0/1\""));
        assert!(!json.contains("elapsed_ms"));
    }
}
