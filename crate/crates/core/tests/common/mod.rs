#![allow(dead_code)]

pub mod criteria;
pub mod invariants;

use kjdt_core::tableau::IncreasingTableau;
use kjdt_core::{ElemSet, Poset};

/// Builds a poset from whitespace-separated `a<b` cover pairs; elements are
/// listed in order of first appearance.
pub fn poset(name: &str, covers: &str) -> Poset {
    let mut els: Vec<String> = Vec::new();
    let mut rel = Vec::new();
    for pair in covers.split_whitespace() {
        let (a, b) = pair.split_once('<').unwrap();
        for e in [a, b] {
            if !els.iter().any(|x| x == e) {
                els.push(e.to_string());
            }
        }
        rel.push((a.to_string(), b.to_string()));
    }
    Poset::new(
        name,
        els.iter().map(String::as_str),
        rel.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .unwrap()
}

pub fn set(p: &Poset, names: &str) -> ElemSet {
    let v: Vec<&str> = names.split_whitespace().collect();
    p.set_of(&v).unwrap()
}

/// `lambda` is a list of names, `labels` is `name=value` pairs.
pub fn tableau(p: &Poset, lambda: &str, labels: &str) -> IncreasingTableau {
    let lam = set(p, lambda);
    let mut lab = vec![0u8; p.len()];
    for kv in labels.split_whitespace() {
        let (k, v) = kv.split_once('=').unwrap();
        lab[p.index_of(k).unwrap()] = v.parse().unwrap();
    }
    let nu = lam.union(
        lab.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect(),
    );
    IncreasingTableau::new(p, nu, lam, &lab).unwrap()
}

/// The 10-element staircase poset of the sliding example.
pub fn staircase_example() -> Poset {
    poset(
        "S",
        "11<12 12<13 13<14 21<22 22<23 31<32 11<21 21<31 31<41 12<22 22<32 13<23",
    )
}

/// Rows of lengths 4, 3, 3.
pub fn two_rect_example() -> Poset {
    poset(
        "R",
        "11<12 12<13 13<14 21<22 22<23 31<32 32<33 11<21 12<22 13<23 21<31 22<32 23<33",
    )
}

pub fn diamond() -> Poset {
    poset("D", "b<l b<r l<t r<t")
}

pub fn diamond_top_tail() -> Poset {
    poset("P", "b<l b<r l<t r<t t<t1")
}

pub fn diamond_top_tail_bottom() -> Poset {
    poset("R", "b1<b b<l b<r l<t r<t t<t1")
}

/// The six-element running example, pairs under the componentwise order.
pub fn q6() -> Poset {
    poset("Q", "11<12 11<21 12<13 12<22 21<22 21<31")
}

/// Every connected poset on `n` elements, one per isomorphism class.
pub fn connected_posets(n: usize) -> Vec<Poset> {
    use std::collections::BTreeSet;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    for mask in 0u64..(1 << pairs.len()) {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        // natural labelings: keep only transitively closed relations
        let has = |a: usize, b: usize| rel.contains(&(a, b));
        let closed = rel
            .iter()
            .all(|&(a, b)| (b + 1..n).all(|c| !has(b, c) || has(a, c)));
        if !closed {
            continue;
        }
        let Ok(p) = Poset::new(
            &format!("P{n}_{mask}"),
            names.iter().map(String::as_str),
            rel.iter()
                .map(|&(a, b)| (names[a].as_str(), names[b].as_str())),
        ) else {
            continue;
        };
        if seen.insert(kjdt_core::canonical_form(&p)) {
            out.push(p);
        }
    }
    out
}

/// Every rooted tree (poset with a minimum, each other element covering
/// exactly one element) on `n` elements, one per isomorphism class.
pub fn rooted_trees(n: usize) -> Vec<Poset> {
    use std::collections::BTreeSet;
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    fn rec(i: usize, n: usize, parent: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == n {
            f(parent);
            return;
        }
        for p in 0..i {
            parent[i] = p;
            rec(i + 1, n, parent, f);
        }
    }
    rec(1, n, &mut parent, &mut |par| {
        let rel: Vec<(&str, &str)> = (1..n)
            .map(|i| (names[par[i]].as_str(), names[i].as_str()))
            .collect();
        let p = Poset::new(&format!("tree{n}"), names.iter().map(String::as_str), rel).unwrap();
        if seen.insert(kjdt_core::canonical_form(&p)) {
            out.push(p);
        }
    });
    out
}
