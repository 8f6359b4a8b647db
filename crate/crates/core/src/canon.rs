//! Canonical forms for small posets, by color refinement plus
//! individualization. Two posets are isomorphic iff their forms are equal.

use crate::poset::Poset;

/// Lower-cover bitmasks and vertex colors after relabeling by the canonical
/// permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub down: Vec<u64>,
    pub colors: Vec<u32>,
}

pub fn canonical_form(p: &Poset) -> CanonicalForm {
    canonical_form_colored(p, &vec![0; p.len()])
}

/// Canonical form of `p` with element `i` colored `colors[i]`; isomorphisms
/// must preserve colors.
pub fn canonical_form_colored(p: &Poset, colors: &[u32]) -> CanonicalForm {
    let n = p.len();
    assert_eq!(colors.len(), n);
    let init: Vec<u32> = {
        let keys: Vec<(u32, usize, usize, usize)> = (0..n)
            .map(|i| {
                (
                    colors[i],
                    p.height(i),
                    p.strictly_below(i).len(),
                    p.strictly_above(i).len(),
                )
            })
            .collect();
        rank(&keys)
    };
    let mut best: Option<(Vec<u64>, Vec<u32>)> = None;
    search(p, colors, refine(p, init), &mut best);
    let (down, colors) = best.unwrap();
    CanonicalForm { n, down, colors }
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len()
        && a.covers().len() == b.covers().len()
        && canonical_form(a) == canonical_form(b)
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn refine(p: &Poset, mut colors: Vec<u32>) -> Vec<u32> {
    let n = colors.len();
    loop {
        let before = classes(&colors);
        let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut up: Vec<u32> = p.upper_covers(i).iter().map(|j| colors[j]).collect();
                let mut down: Vec<u32> = p.lower_covers(i).iter().map(|j| colors[j]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (colors[i], up, down)
            })
            .collect();
        colors = rank(&keys);
        if classes(&colors) == before {
            return colors;
        }
    }
}

fn search(p: &Poset, marks: &[u32], colors: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<u32>)>) {
    let n = colors.len();
    if classes(&colors) == n {
        let mut down = vec![0u64; n];
        let mut m = vec![0u32; n];
        for i in 0..n {
            m[colors[i] as usize] = marks[i];
            for j in p.lower_covers(i).iter() {
                down[colors[i] as usize] |= 1 << colors[j];
            }
        }
        let leaf = (down, m);
        if best.as_ref().is_none_or(|b| leaf < *b) {
            *best = Some(leaf);
        }
        return;
    }
    // Split the smallest nontrivial class on each of its members in turn.
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let target = (0..n as u32)
        .filter(|&c| counts[c as usize] > 1)
        .min_by_key(|&c| (counts[c as usize], c))
        .unwrap();
    for v in (0..n).filter(|&i| colors[i] == target) {
        let keys: Vec<(u32, bool)> = (0..n).map(|i| (colors[i], i != v)).collect();
        search(p, marks, refine(p, rank(&keys)), best);
    }
}
