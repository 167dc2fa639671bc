//! Small posets up to isomorphism and labelings of them.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poset::{CanonicalPoset, LabeledKey, LabeledPoset, Labeling, Poset};

/// All posets on exactly `n` elements, one per isomorphism class, in a
/// deterministic order.
///
/// Every poset on `n + 1` elements arises from one on `n` elements by adding
/// a maximal element whose down-set is an ideal, so the classes are grown
/// size by size and deduplicated by canonical form.
pub fn posets_of_size(n: usize) -> Vec<Poset> {
    let mut level: BTreeMap<CanonicalPoset, Poset> = BTreeMap::new();
    level.insert(Poset::antichain(0).canonical_form(), Poset::antichain(0));
    for size in 0..n {
        let mut next = BTreeMap::new();
        for p in level.values() {
            for ideal in p.ideals() {
                let mut rel = p.relations();
                rel.extend(ideal.iter().map(|x| (x, size)));
                let grown = Poset::from_covers(size + 1, &rel).expect("new element is maximal");
                next.entry(grown.canonical_form()).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Posets with `1..=max` elements.
pub fn posets_up_to(max: usize) -> Vec<Poset> {
    (1..=max).flat_map(posets_of_size).collect()
}

/// A natural labeling, a reversed labeling and `random` shuffled labelings,
/// drawn from a generator seeded with `seed`.
pub fn sampled_labelings(p: &Poset, random: usize, seed: u64) -> Vec<LabeledPoset> {
    let mut out = vec![LabeledPoset::natural(p.clone()), LabeledPoset::strict(p.clone())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let mut labels: Vec<u32> = (1..=p.len() as u32).collect();
        labels.shuffle(&mut rng);
        let l = Labeling::new(labels).expect("a permutation is injective");
        out.push(LabeledPoset::new(p.clone(), l).expect("sized to poset"));
    }
    out
}

/// One labeled poset per equivalence class of labelings of `p`.
pub fn all_labelings(p: &Poset) -> Vec<LabeledPoset> {
    let mut seen: HashSet<LabeledKey> = HashSet::new();
    let mut out = Vec::new();
    for perm in (1..=p.len() as u32).permutations(p.len()) {
        let l = Labeling::new(perm).expect("a permutation is injective");
        let lp = LabeledPoset::new(p.clone(), l).expect("sized to poset");
        if seen.insert(lp.key()) {
            out.push(lp);
        }
    }
    out
}

/// The sampled catalog: every poset with `1..=max` elements under a natural,
/// a reversed and three pseudo-random labelings.
pub fn sampled_catalog(max: usize, seed: u64) -> Vec<LabeledPoset> {
    posets_up_to(max)
        .iter()
        .enumerate()
        .flat_map(|(i, p)| sampled_labelings(p, 3, seed.wrapping_add(i as u64)))
        .collect()
}

/// Every labeled poset with `1..=max` elements up to equivalence.
pub fn labeled_catalog(max: usize) -> Vec<LabeledPoset> {
    posets_up_to(max).iter().flat_map(all_labelings).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn sampled_labelings_shape() {
        let p = Poset::shrub(3);
        let ls = sampled_labelings(&p, 3, 7);
        assert_eq!(ls.len(), 5);
        assert!(ls[0].is_natural());
        assert!(ls[1].is_strict());
        assert_eq!(sampled_labelings(&p, 3, 7), ls);
    }

    #[test]
    fn labeling_classes() {
        // every labeling of an antichain is equivalent
        assert_eq!(all_labelings(&Poset::antichain(4)).len(), 1);
        // a chain distinguishes all n! labelings
        assert_eq!(all_labelings(&Poset::chain(4)).len(), 24);
        // the shrub's leaves are interchangeable: 3 root labels
        assert_eq!(all_labelings(&Poset::shrub(2)).len(), 3);
    }
}
