//! Finite posets on dense element indices, labelings, ideals and
//! ω-natural subsets.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Largest supported ground set; element sets are single machine words.
pub const MAX_ELEMENTS: usize = 64;

/// Canonical forms of unlabeled posets search at most this many orderings.
const CANONICAL_SEARCH_LIMIT: usize = 40_320;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("poset has {0} elements, at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("element {index} out of range for a poset with {n} elements")]
    OutOfRange { index: usize, n: usize },
    #[error("relation #{relation} ({low} < {high}) closes a cycle")]
    Cycle { relation: usize, low: usize, high: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("label {0} is used more than once")]
    DuplicateLabel(u32),
    #[error("labels must be positive integers")]
    NonPositiveLabel,
}

/// Subset of the ground set `0..n` as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn singleton(x: usize) -> Self {
        ElementSet(1u64 << x)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn with(self, x: usize) -> Self {
        ElementSet(self.0 | 1u64 << x)
    }

    pub fn without(self, x: usize) -> Self {
        ElementSet(self.0 & !(1u64 << x))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(x)
        })
    }

    /// All subsets, the empty set first.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(ElementSet(cur))
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ElementSet::EMPTY, ElementSet::with)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Strict partial order on `0..n`, stored as transitively closed strict
/// down-sets and up-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    below: Vec<ElementSet>,
    above: Vec<ElementSet>,
}

impl Poset {
    /// Transitive closure of `relations`, each pair meaning `low < high`.
    pub fn from_covers(n: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut p = Poset { n, below: vec![ElementSet::EMPTY; n], above: vec![ElementSet::EMPTY; n] };
        for (relation, &(low, high)) in relations.iter().enumerate() {
            for index in [low, high] {
                if index >= n {
                    return Err(PosetError::OutOfRange { index, n });
                }
            }
            if low == high || p.less(high, low) {
                return Err(PosetError::Cycle { relation, low, high });
            }
            let downs = p.below[low].with(low);
            let ups = p.above[high].with(high);
            for y in ups.iter() {
                p.below[y] = p.below[y].union(downs);
            }
            for x in downs.iter() {
                p.above[x] = p.above[x].union(ups);
            }
        }
        Ok(p)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(n, &[]).expect("antichain size within bounds")
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("chain size within bounds")
    }

    /// One minimum (element 0) below `n` pairwise incomparable elements.
    pub fn shrub(n: usize) -> Self {
        let covers: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Self::from_covers(n + 1, &covers).expect("shrub size within bounds")
    }

    /// Disjoint union; the elements of `other` are renumbered after ours.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset, PosetError> {
        let shift = self.n;
        let mut rel = self.relations();
        rel.extend(other.relations().into_iter().map(|(a, b)| (a + shift, b + shift)));
        Poset::from_covers(self.n + other.n, &rel)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// `x < y`
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn below(&self, x: usize) -> ElementSet {
        self.below[x]
    }

    pub fn above(&self, x: usize) -> ElementSet {
        self.above[x]
    }

    /// All pairs `(x, y)` with `x < y`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|y| self.below[y].iter().map(move |x| (x, y))).collect()
    }

    /// Cover pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations().into_iter().filter(|&(x, y)| self.above[x].intersection(self.below[y]).is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> ElementSet {
        self.minimal_within(self.ground())
    }

    /// Minimal elements of the sub-poset induced on `mask`.
    pub fn minimal_within(&self, mask: ElementSet) -> ElementSet {
        mask.iter().filter(|&x| self.below[x].is_disjoint(mask)).collect()
    }

    pub fn is_antichain(&self, set: ElementSet) -> bool {
        set.iter().all(|x| self.below[x].is_disjoint(set))
    }

    pub fn is_ideal(&self, set: ElementSet) -> bool {
        self.is_ideal_within(set, self.ground())
    }

    /// Whether `set` is downward closed inside the sub-poset on `mask`.
    pub fn is_ideal_within(&self, set: ElementSet, mask: ElementSet) -> bool {
        set.is_subset_of(mask) && set.iter().all(|x| self.below[x].intersection(mask).is_subset_of(set))
    }

    /// Every ideal, sorted by size and then by bit pattern; the first is the
    /// empty set, the last the whole poset, and `I ⊊ J` puts `I` first.
    pub fn ideals(&self) -> Vec<ElementSet> {
        self.ideals_within(self.ground())
    }

    /// Ideals of the sub-poset induced on `mask`, in the same order.
    pub fn ideals_within(&self, mask: ElementSet) -> Vec<ElementSet> {
        let mut seen = HashSet::new();
        seen.insert(ElementSet::EMPTY);
        let mut stack = vec![ElementSet::EMPTY];
        while let Some(set) = stack.pop() {
            for x in mask.difference(set).iter() {
                if self.below[x].intersection(mask).is_subset_of(set) {
                    let next = set.with(x);
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.bits()));
        out
    }

    /// A linear extension, preferring smaller indices.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed = ElementSet::EMPTY;
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let x = (0..self.n)
                .find(|&x| !placed.contains(x) && self.below[x].is_subset_of(placed))
                .expect("a finite poset always has a minimal element");
            placed = placed.with(x);
            order.push(x);
        }
        order
    }

    /// Sub-poset on `set`, renumbered in increasing index order. Returns the
    /// poset and the map from new to old indices.
    pub fn induced(&self, set: ElementSet) -> (Poset, Vec<usize>) {
        let old: Vec<usize> = set.iter().collect();
        let mut rel = Vec::new();
        for (i, &x) in old.iter().enumerate() {
            for (j, &y) in old.iter().enumerate() {
                if self.less(x, y) {
                    rel.push((i, j));
                }
            }
        }
        let p = Poset::from_covers(old.len(), &rel).expect("restriction of a partial order");
        (p, old)
    }

    fn encode(&self, order: &[usize]) -> Vec<u64> {
        let mut pos = vec![0usize; self.n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        order.iter().map(|&x| self.below[x].iter().fold(0u64, |acc, y| acc | 1u64 << pos[y])).collect()
    }

    /// Isomorphism-invariant encoding of the relation matrix.
    ///
    /// Elements are grouped by (down-degree, up-degree) and the lexicographic
    /// minimum over all orderings inside the groups is taken. When that search
    /// would exceed a fixed budget, the sorted order with index tie-break is
    /// used instead; the key is still sound (equal keys mean isomorphic
    /// posets) but no longer guaranteed canonical, which `exact` reports.
    pub fn canonical_form(&self) -> CanonicalPoset {
        let mut order: Vec<usize> = (0..self.n).collect();
        let signature = |x: usize| (self.below[x].len(), self.above[x].len());
        order.sort_by_key(|&x| (signature(x), x));
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=self.n {
            if i == self.n || signature(order[i]) != signature(order[start]) {
                groups.push((start, i));
                start = i;
            }
        }
        let mut budget = 1usize;
        for &(a, b) in &groups {
            for k in 1..=(b - a) {
                budget = budget.saturating_mul(k);
            }
        }
        if budget > CANONICAL_SEARCH_LIMIT {
            return CanonicalPoset { rel: self.encode(&order), exact: false };
        }
        let mut best: Option<Vec<u64>> = None;
        let mut current = order.clone();
        search_group_orders(&groups, 0, &mut current, &mut |ord| {
            let code = self.encode(ord);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        CanonicalPoset { rel: best.unwrap_or_default(), exact: true }
    }

    /// Rebuilds a poset from its canonical encoding.
    pub fn from_canonical(form: &CanonicalPoset) -> Poset {
        let n = form.rel.len();
        let rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|y| ElementSet::from_bits(form.rel[y]).iter().map(move |x| (x, y)).collect::<Vec<_>>())
            .collect();
        Poset::from_covers(n, &rel).expect("canonical encoding of a partial order")
    }
}

fn search_group_orders(groups: &[(usize, usize)], g: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if g == groups.len() {
        visit(current);
        return;
    }
    let (a, b) = groups[g];
    permute_range(current, b, a, &mut |cur| search_group_orders(groups, g + 1, cur, visit));
}

/// Visits every ordering of `v[k..end]`.
fn permute_range(v: &mut Vec<usize>, end: usize, k: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if k + 1 >= end {
        visit(v);
        return;
    }
    for i in k..end {
        v.swap(k, i);
        permute_range(v, end, k + 1, visit);
        v.swap(k, i);
    }
}

/// Isomorphism key of an unlabeled poset: strict down-set bit rows under the
/// chosen element ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalPoset {
    rel: Vec<u64>,
    exact: bool,
}

impl CanonicalPoset {
    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

/// Injective map from elements to positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling(Vec<u32>);

impl Labeling {
    pub fn new(labels: Vec<u32>) -> Result<Self, PosetError> {
        let mut seen = HashSet::new();
        for &l in &labels {
            if l == 0 {
                return Err(PosetError::NonPositiveLabel);
            }
            if !seen.insert(l) {
                return Err(PosetError::DuplicateLabel(l));
            }
        }
        Ok(Labeling(labels))
    }

    /// Order-preserving labeling from a linear extension.
    pub fn natural(p: &Poset) -> Self {
        let mut labels = vec![0u32; p.len()];
        for (pos, x) in p.linear_extension().into_iter().enumerate() {
            labels[x] = pos as u32 + 1;
        }
        Labeling(labels)
    }

    /// Order-reversing labeling from a linear extension.
    pub fn reversed(p: &Poset) -> Self {
        let n = p.len() as u32;
        let mut labels = vec![0u32; p.len()];
        for (pos, x) in p.linear_extension().into_iter().enumerate() {
            labels[x] = n - pos as u32;
        }
        Labeling(labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, x: usize) -> u32 {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Same relative order, image exactly `1..=n`.
    pub fn canonical(&self) -> Self {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        Labeling(self.0.iter().map(|l| sorted.binary_search(l).expect("own label") as u32 + 1).collect())
    }

    /// Elements in increasing label order.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.0.len()).collect();
        idx.sort_by_key(|&x| self.0[x]);
        idx
    }
}

/// A poset with an injective labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    poset: Poset,
    labeling: Labeling,
    // violations[x]: elements y < x with ω(y) > ω(x)
    violations: Vec<ElementSet>,
    by_label: Vec<usize>,
}

impl LabeledPoset {
    pub fn new(poset: Poset, labeling: Labeling) -> Result<Self, PosetError> {
        if labeling.len() != poset.len() {
            return Err(PosetError::LabelCount { expected: poset.len(), got: labeling.len() });
        }
        let violations = (0..poset.len())
            .map(|x| poset.below(x).iter().filter(|&y| labeling.get(y) > labeling.get(x)).collect())
            .collect();
        let by_label = labeling.order();
        Ok(LabeledPoset { poset, labeling, violations, by_label })
    }

    pub fn natural(poset: Poset) -> Self {
        let l = Labeling::natural(&poset);
        Self::new(poset, l).expect("labeling sized to poset")
    }

    /// Order-reversing ("strict") labeling.
    pub fn strict(poset: Poset) -> Self {
        let l = Labeling::reversed(&poset);
        Self::new(poset, l).expect("labeling sized to poset")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn label(&self, x: usize) -> u32 {
        self.labeling.get(x)
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn ground(&self) -> ElementSet {
        self.poset.ground()
    }

    /// Whether ω restricted to `set` is order-preserving.
    pub fn is_omega_natural(&self, set: ElementSet) -> bool {
        set.iter().all(|x| self.violations[x].is_disjoint(set))
    }

    /// Whether ω is order-preserving on the whole poset.
    pub fn is_natural(&self) -> bool {
        self.is_omega_natural(self.ground())
    }

    /// Whether ω is order-reversing.
    pub fn is_strict(&self) -> bool {
        (0..self.len()).all(|x| self.violations[x] == self.poset.below(x))
    }

    pub fn omega_natural_ideals(&self) -> Vec<ElementSet> {
        self.omega_natural_ideals_within(self.ground())
    }

    /// ω-natural ideals of the sub-poset on `mask`, including the empty set.
    pub fn omega_natural_ideals_within(&self, mask: ElementSet) -> Vec<ElementSet> {
        self.poset.ideals_within(mask).into_iter().filter(|&s| self.is_omega_natural(s)).collect()
    }

    /// `f` (values in `1..`) is order-preserving and strict on every `y < x`
    /// with `ω(y) > ω(x)`.
    pub fn is_omega_order_preserving(&self, f: &[usize]) -> bool {
        (0..self.len()).all(|x| {
            self.poset.below(x).iter().all(|y| if self.violations[x].contains(y) { f[y] < f[x] } else { f[y] <= f[x] })
        })
    }

    /// Labeled sub-poset on `set` with canonicalized labels.
    pub fn induced(&self, set: ElementSet) -> LabeledPoset {
        let (p, old) = self.poset.induced(set);
        let labels = Labeling(old.iter().map(|&x| self.label(x)).collect()).canonical();
        LabeledPoset::new(p, labels).expect("labels sized to sub-poset")
    }

    /// Relabels to `1..=n` keeping the relative order.
    pub fn canonicalize(&self) -> LabeledPoset {
        LabeledPoset::new(self.poset.clone(), self.labeling.canonical()).expect("same size")
    }

    pub fn key(&self) -> LabeledKey {
        self.key_within(self.ground())
    }

    /// Equivalence-class key of the labeled sub-poset on `mask`.
    ///
    /// An equivalence of labeled posets must match elements rank by rank in
    /// label order, so the relation matrix in label order determines the class.
    pub fn key_within(&self, mask: ElementSet) -> LabeledKey {
        let order: Vec<usize> = self.by_label.iter().copied().filter(|&x| mask.contains(x)).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let rel = order
            .iter()
            .map(|&x| self.poset.below(x).intersection(mask).iter().fold(0u64, |acc, y| acc | 1u64 << pos[y]))
            .collect();
        LabeledKey { rel }
    }

    /// Rebuilds the canonical representative of a key.
    pub fn from_key(key: &LabeledKey) -> LabeledPoset {
        let n = key.rel.len();
        let rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|y| ElementSet::from_bits(key.rel[y]).iter().map(move |x| (x, y)).collect::<Vec<_>>())
            .collect();
        let p = Poset::from_covers(n, &rel).expect("key encodes a partial order");
        let labels = Labeling((1..=n as u32).collect());
        LabeledPoset::new(p, labels).expect("labels sized to poset")
    }
}

/// Key of a labeled poset up to equivalence: strict down-set rows with the
/// elements listed in increasing label order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledKey {
    rel: Vec<u64>,
}

impl LabeledKey {
    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }
}
