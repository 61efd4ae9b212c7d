//! Enumeration of small instances, one per class under relabeling of the
//! x-variables and reordering of the ideals.

use std::collections::BTreeSet;

use crate::ideal::{IdealSpec, Instance};

type Key = Vec<(Vec<usize>, u32)>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

fn canonical(key: &Key, perms: &[Vec<usize>]) -> Key {
    perms
        .iter()
        .map(|p| {
            let mut k: Key = key
                .iter()
                .map(|(s, a)| {
                    let mut t: Vec<usize> = s.iter().map(|&i| p[i - 1]).collect();
                    t.sort_unstable();
                    (t, *a)
                })
                .collect();
            k.sort();
            k
        })
        .min()
        .expect("at least one permutation")
}

/// Instances with `1 ≤ n ≤ max_n`, `1 ≤ r ≤ max_r`, powers `1..=max_a`,
/// using every variable, one representative per class; the representative
/// is the lexicographically least sorted list of `(support, power)`.
pub fn canonical_instances(max_n: usize, max_r: usize, max_a: u32) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let perms = permutations(n);
        let mut ideals: Vec<(Vec<usize>, u32)> = Vec::new();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            for a in 1..=max_a {
                ideals.push((s.clone(), a));
            }
        }
        ideals.sort();
        for r in 1..=max_r {
            let mut seen = BTreeSet::new();
            let mut idx = vec![0usize; r];
            loop {
                let key: Key = idx.iter().map(|&i| ideals[i].clone()).collect();
                let covered: BTreeSet<usize> = key.iter().flat_map(|(s, _)| s.iter().copied()).collect();
                if covered.len() == n {
                    let c = canonical(&key, &perms);
                    if seen.insert(c.clone()) {
                        let specs = c
                            .into_iter()
                            .map(|(s, a)| IdealSpec::new(s, a).expect("nonempty support"))
                            .collect();
                        out.push(Instance::new(n, specs).expect("valid indices"));
                    }
                }
                // next nondecreasing index tuple
                let mut k = r;
                while k > 0 && idx[k - 1] == ideals.len() - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                idx[k - 1] += 1;
                for m in k..r {
                    idx[m] = idx[k - 1];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(canonical_instances(1, 3, 2).len(), 2 + 3 + 4);
        assert_eq!(canonical_instances(2, 2, 2).len(), 2 + 3 + 2 + 10);
        assert_eq!(canonical_instances(4, 3, 2).len(), 482);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let set: BTreeSet<Vec<usize>> = permutations(4).into_iter().collect();
        assert_eq!(set.len(), 24);
    }
}
