mod common;

use std::collections::BTreeSet;

use common::invariants::naive_rects;
use common::*;
use kjdt_core::enumerate::{fillings, for_each_filling};
use kjdt_core::tableau::minimal_tableau;
use kjdt_core::{canonical_form, rects, ElemSet, Poset, Rectifier, SkewShape};
use rayon::prelude::*;

fn brute_ideals(p: &Poset) -> Vec<ElemSet> {
    (0u64..1 << p.len())
        .map(ElemSet)
        .filter(|&s| s.iter().all(|x| p.strictly_below(x).is_subset(s)))
        .collect()
}

#[test]
fn poset_counts_match_known_sequences() {
    // connected unlabeled posets on 1..=6 points
    let counts: Vec<usize> = (1..=6).map(|n| connected_posets(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 10, 44, 238]);
    // rooted trees on 1..=7 points
    let trees: Vec<usize> = (1..=7).map(|n| rooted_trees(n).len()).collect();
    assert_eq!(trees, vec![1, 1, 2, 4, 9, 20, 48]);
}

#[test]
fn order_ideals_match_subset_filter() {
    for n in 1..=6 {
        for p in connected_posets(n) {
            let got: BTreeSet<ElemSet> =
                p.order_ideals().into_iter().map(|i| i.members()).collect();
            let want: BTreeSet<ElemSet> = brute_ideals(&p).into_iter().collect();
            assert_eq!(got, want, "{p:?}");
        }
    }
}

#[test]
fn rects_match_definition() {
    let posets: Vec<Poset> = (1..=5).flat_map(connected_posets).collect();
    posets.par_iter().for_each(|p| {
        let rect = Rectifier::new(p);
        for shape in p.skew_shapes() {
            for t in fillings(p, shape, &[1, 2, 3], false) {
                let mut start: Vec<i32> = vec![0; p.len()];
                for x in shape.lambda.iter() {
                    start[x] = -1;
                }
                for x in t.domain().iter() {
                    start[x] = t.label(x).unwrap() as i32;
                }
                let want = naive_rects(p, &start);
                let got: BTreeSet<Vec<i32>> = rects(p, &t)
                    .tableaux()
                    .iter()
                    .map(|u| u.label_vec(p.len()).iter().map(|&v| v as i32).collect())
                    .collect();
                assert_eq!(got, want, "{p:?} {}", t.display(p));
                assert_eq!(rect.rects(&t).to_vec(), rects(p, &t).tableaux());
            }
        }
    });
}

#[test]
fn minimal_tableau_is_nodewise_minimum() {
    let posets: Vec<Poset> = (1..=6).flat_map(connected_posets).collect();
    posets.par_iter().for_each(|p| {
        for lambda in p.order_ideals() {
            let m = minimal_tableau(p, lambda.members());
            m.validate(p).unwrap();
            let alphabet: Vec<u8> = (1..=lambda.len() as u8).collect();
            let mut min = vec![u8::MAX; p.len()];
            for_each_filling(p, SkewShape::straight(lambda), &alphabet, false, |t| {
                for x in lambda.members().iter() {
                    min[x] = min[x].min(t.label(x).unwrap());
                }
            });
            for x in lambda.members().iter() {
                assert_eq!(m.label(x), Some(min[x]));
            }
        }
    });
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    for p in connected_posets(5) {
        let n = p.len();
        let names: Vec<String> = (0..n).map(|i| format!("y{}", (i * 3 + 1) % n)).collect();
        let covers: Vec<(String, String)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect();
        let mut order: Vec<String> = names.clone();
        order.reverse();
        let q = Poset::new(
            "q",
            order.iter().map(String::as_str),
            covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }
}
