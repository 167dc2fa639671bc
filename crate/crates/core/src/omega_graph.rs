//! The ω-graph of a labeled poset: ideals joined by ω-natural differences.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{Matrix, Scalar, UniPoly};
use crate::poset::{ElementSet, LabeledPoset};
use crate::Rational;

/// DAG on the ideal lattice with an arc `I → J` whenever `I ⊊ J` and `J \ I`
/// is ω-natural. Vertices follow [`crate::poset::Poset::ideals`] order, so
/// arcs always point to a larger index.
#[derive(Clone, Debug)]
pub struct OmegaGraph {
    ideals: Vec<ElementSet>,
    succ: Vec<Vec<usize>>,
}

impl OmegaGraph {
    pub fn build(lp: &LabeledPoset) -> Self {
        let ideals = lp.poset().ideals();
        let index: HashMap<ElementSet, usize> = ideals.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let ground = lp.ground();
        let mut succ = vec![Vec::new(); ideals.len()];
        for (i, &small) in ideals.iter().enumerate() {
            let rest = ground.difference(small);
            // Pick whichever enumeration is smaller: supersets through the
            // complement's subsets, or the later lattice entries.
            if rest.len() < 63 && (1usize << rest.len()) < ideals.len() - i {
                for diff in rest.subsets().skip(1) {
                    if let Some(&j) = index.get(&small.union(diff)) {
                        if lp.is_omega_natural(diff) {
                            succ[i].push(j);
                        }
                    }
                }
                succ[i].sort_unstable();
            } else {
                for (j, &big) in ideals.iter().enumerate().skip(i + 1) {
                    if small.is_subset_of(big) && lp.is_omega_natural(big.difference(small)) {
                        succ[i].push(j);
                    }
                }
            }
        }
        OmegaGraph { ideals, succ }
    }

    pub fn ideals(&self) -> &[ElementSet] {
        &self.ideals
    }

    pub fn vertex_count(&self) -> usize {
        self.ideals.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    /// Index of the empty ideal.
    pub fn source(&self) -> usize {
        0
    }

    /// Index of the whole poset.
    pub fn sink(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Number of elements of the poset.
    pub fn poset_size(&self) -> usize {
        self.ideals[self.sink()].len()
    }

    pub fn adjacency_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zero(self.ideals.len());
        for (i, j) in self.arcs() {
            m.set(i, j, T::one());
        }
        m
    }

    /// Path counts from the empty ideal to the whole poset by length.
    pub fn path_counts(&self) -> PathCounts {
        let n = self.poset_size();
        let v = self.ideals.len();
        // ways[u][k]: paths of length k from the source to u
        let mut ways = vec![vec![0u128; n + 1]; v];
        ways[self.source()][0] = 1;
        for u in 0..v {
            for &w in &self.succ[u] {
                for k in 0..n {
                    let add = ways[u][k];
                    if add != 0 {
                        ways[w][k + 1] = ways[w][k + 1].checked_add(add).expect("path count overflow");
                    }
                }
            }
        }
        PathCounts { c: ways.swap_remove(self.sink()) }
    }

    /// Multi-paths of length `len` from the empty ideal to the whole poset,
    /// i.e. the `(∅, P)` entry of `(I + A)^len`, by row-vector iteration.
    pub fn multipath_count(&self, len: usize) -> u128 {
        let v = self.ideals.len();
        let mut row = vec![0u128; v];
        row[self.source()] = 1;
        for _ in 0..len {
            let mut next = row.clone();
            for u in 0..v {
                if row[u] == 0 {
                    continue;
                }
                for &w in &self.succ[u] {
                    next[w] = next[w].checked_add(row[u]).expect("multi-path count overflow");
                }
            }
            row = next;
        }
        row[self.sink()]
    }

    /// The graph with the empty ideal and the whole poset removed.
    pub fn interior(&self) -> Digraph {
        let v = self.ideals.len();
        if v <= 2 {
            return Digraph::new(0);
        }
        let mut g = Digraph::new(v - 2);
        for (i, j) in self.arcs() {
            if i != self.source() && j != self.sink() {
                g.add_arc(i - 1, j - 1);
            }
        }
        g
    }

    /// Chain polynomial of the interior graph counting only chains that
    /// extend to paths from the empty ideal to the whole poset.
    ///
    /// `c_0` is 1 exactly when the arc `∅ → P` exists; `c_k` for `k >= 1`
    /// counts chains of `k` interior vertices whose first vertex is entered
    /// from `∅` and whose last vertex leads to `P`. Coefficient `k` equals
    /// `c_{k+1}` of the poset for every labeling.
    pub fn anchored_chain_polynomial(&self) -> UniPoly<Rational> {
        let counts = self.path_counts();
        let coeffs = counts.c.iter().skip(1).map(|&c| Rational::from_integer(c.into())).collect();
        UniPoly::from_coeffs(coeffs).with_var('μ')
    }

    /// Graphviz rendering; vertices are labeled by their ideal.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph omega {\n  rankdir=BT;\n");
        for (i, s) in self.ideals.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{s}\"];");
        }
        for (i, j) in self.arcs() {
            let _ = writeln!(out, "  v{i} -> v{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// `c[k]` = number of directed paths of length `k` from `∅` to `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCounts {
    pub c: Vec<u128>,
}

impl PathCounts {
    pub fn get(&self, k: usize) -> u128 {
        self.c.get(k).copied().unwrap_or(0)
    }

    /// Multi-path count of length `n` from the path counts:
    /// `a_n = Σ_k C(n, k) c_k`.
    pub fn multipaths(&self, n: usize) -> u128 {
        let mut total = 0u128;
        let mut binom = 1u128;
        for k in 0..=n {
            total = total.checked_add(binom.checked_mul(self.get(k)).expect("overflow")).expect("overflow");
            binom = binom * (n - k) as u128 / (k + 1) as u128;
        }
        total
    }
}

/// Plain directed graph on `0..n`.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { succ: vec![Vec::new(); n] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        self.succ[from].push(to);
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.succ.len();
        let mut indeg = vec![0usize; n];
        for s in &self.succ {
            for &w in s {
                indeg[w] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &self.succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// `Σ c_k μ^k` where `c_0 = 1` and `c_k` counts directed chains through
    /// `k` vertices. `None` if the graph has a cycle.
    pub fn chain_polynomial(&self) -> Option<UniPoly<Rational>> {
        let order = self.topological_order()?;
        let n = self.succ.len();
        // ending[v][k]: chains of k vertices ending at v
        let mut ending = vec![vec![0u128; n + 1]; n];
        let mut totals = vec![0u128; n + 1];
        totals[0] = 1;
        for &v in &order {
            ending[v][1] += 1;
            for k in 1..=n {
                let here = ending[v][k];
                if here == 0 {
                    continue;
                }
                totals[k] += here;
                if k < n {
                    for &w in &self.succ[v] {
                        ending[w][k + 1] += here;
                    }
                }
            }
        }
        let coeffs = totals.into_iter().map(|c| Rational::from_integer(c.into())).collect();
        Some(UniPoly::from_coeffs(coeffs).with_var('μ'))
    }
}
