//! One check per acceptance criterion. Each returns a one-line summary or
//! the first failure found.

use std::collections::{BTreeSet, HashSet};

use kjdt_core::catalog::{self, CatalogPoset};
use kjdt_core::dcomplete::{find_intervals, is_dcomplete, IntervalKind};
use kjdt_core::enumerate::{all_straight_tableaux, fillings, for_each_filling};
use kjdt_core::kring::{verify_ring, FormalSum, KRing};
use kjdt_core::tableau::{minimal_tableau, slide};
use kjdt_core::{
    canonical_form, canonical_form_colored, rects, ElemSet, OrderIdeal, Poset, Rectifier, UrtOracle,
};
use rayon::prelude::*;

use super::*;

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn worked_slides() -> Outcome {
    let p = staircase_example();
    let t = tableau(&p, "11 12 21", "13=1 14=2 22=2 23=3 31=2 32=3 41=4");
    let cases = [
        (
            "12",
            tableau(&p, "11 21", "12=1 13=2 22=2 23=3 31=2 32=3 41=4"),
        ),
        ("21", tableau(&p, "11 12", "13=1 14=2 21=2 22=3 31=3 41=4")),
        ("12 21", tableau(&p, "11", "12=1 13=2 21=2 22=3 31=3 41=4")),
    ];
    for (gamma, want) in &cases {
        let got = slide(&p, &t, set(&p, gamma)).map_err(|e| e.to_string())?;
        ensure(&got == want, || {
            format!("gamma {{{gamma}}}: got {}", got.display(&p))
        })?;
    }
    Ok("3 slides reproduce the displayed tableaux".into())
}

pub fn two_rectifications() -> Outcome {
    let p = two_rect_example();
    let t = tableau(&p, "11 12 13 21 22", "14=2 23=2 31=1 32=3 33=4");
    let got = rects(&p, &t).tableaux();
    let mut want = vec![
        tableau(&p, "", "11=1 12=2 13=4 21=3"),
        tableau(&p, "", "11=1 12=2 13=4 21=3 22=4"),
    ];
    want.sort();
    ensure(got == want, || {
        format!(
            "got {:?}",
            got.iter().map(|u| u.display(&p)).collect::<Vec<_>>()
        )
    })?;
    Ok("exactly the 2 displayed rectifications".into())
}

pub fn ambient_poset_examples() -> Outcome {
    let p = diamond_top_tail();
    let t = tableau(&p, "b l r", "t=1 t1=2");
    let mut want = vec![
        tableau(&p, "", "b=1 l=2"),
        tableau(&p, "", "b=1 r=2"),
        tableau(&p, "", "b=1 l=2 r=2"),
    ];
    want.sort();
    ensure(rects(&p, &t).tableaux() == want, || {
        "rects(T_P) differs".into()
    })?;
    let r = diamond_top_tail_bottom();
    let tr = tableau(&r, "b1 b l r", "t=1 t1=2");
    ensure(
        rects(&r, &tr).tableaux() == vec![tableau(&r, "", "b1=1 b=2")],
        || "T_R does not rectify uniquely as displayed".into(),
    )?;
    let d = diamond();
    let in_d = kjdt_core::rectify::is_urt(&d, &tableau(&d, "", "b=1 l=2"))
        .map_err(|e| e.to_string())?
        .urt;
    let in_p = kjdt_core::rectify::is_urt(&p, &tableau(&p, "", "b=1 l=2"))
        .map_err(|e| e.to_string())?
        .urt;
    ensure(in_d && !in_p, || {
        format!("URT in diamond {in_d}, in diamond-plus-tail {in_p}")
    })?;
    Ok("3 rectifications of T_P; T_R unique; (1,2) URT in diamond only".into())
}

pub fn trees(max_nodes: usize, max_label: u8) -> Outcome {
    let alphabet: Vec<u8> = (1..=max_label).collect();
    let all: Vec<Poset> = (1..=max_nodes).flat_map(rooted_trees).collect();
    let checked = all
        .par_iter()
        .map(|p| -> Result<u64, String> {
            let oracle = UrtOracle::new(p);
            let us = all_straight_tableaux(p, &alphabet, false);
            for u in &us {
                let v = oracle.is_urt(u).map_err(|e| e.to_string())?;
                ensure(v.urt, || format!("{p:?}: {} is not a URT", u.display(p)))?;
            }
            Ok(us.len() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(format!(
        "{} trees, {checked} straight tableaux, all URTs",
        all.len()
    ))
}

/// Every `D(m,n,p)` with at most `max_elements` elements.
pub fn chained_diamonds(max_elements: usize) -> Vec<CatalogPoset> {
    let mut out = Vec::new();
    for n in 3..=max_elements {
        for m in 1..=max_elements {
            for q in 1..=max_elements {
                if m + q + 2 * n - 4 <= max_elements {
                    out.push(catalog::chained_dtd(m, n, q).unwrap());
                }
            }
        }
    }
    out
}

pub fn chained_diamonds_rectify_uniquely(max_elements: usize, max_label: u8) -> Outcome {
    let alphabet: Vec<u8> = (1..=max_label).collect();
    let mut total = 0u64;
    let family = chained_diamonds(max_elements);
    for c in &family {
        let p = &c.poset;
        let rect = Rectifier::new(p);
        let n = p
            .skew_shapes()
            .par_iter()
            .map(|&shape| -> Result<u64, String> {
                let mut n = 0u64;
                let mut bad = None;
                for_each_filling(p, shape, &alphabet, false, |t| {
                    n += 1;
                    if bad.is_none() && rect.rects(&t).len() != 1 {
                        bad = Some(t.display(p));
                    }
                });
                bad.map_or(Ok(n), |t| {
                    Err(format!("{}: {t} rectifies in more than one way", p.name()))
                })
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        total += n;
    }
    Ok(format!(
        "{} posets D(m,n,p), {total} skew tableaux, all rectify uniquely",
        family.len()
    ))
}

fn minuscule_components(max_elements: usize) -> Vec<CatalogPoset> {
    let mut out = Vec::new();
    for n in 1..=max_elements {
        out.push(catalog::chain(n).unwrap());
    }
    for m in 2..=max_elements {
        for n in m..=max_elements {
            if m * n <= max_elements {
                out.push(catalog::rectangle(m, n).unwrap());
            }
        }
    }
    for k in 3..=max_elements.div_ceil(2) + 1 {
        if 2 * k - 2 <= max_elements {
            out.push(catalog::dtd(k).unwrap());
        }
    }
    for n in 2..=max_elements {
        if n * (n + 1) / 2 <= max_elements {
            out.push(catalog::shifted_staircase(n).unwrap());
        }
    }
    out
}

/// Every iterated slant sum of minuscule components glued at distinct
/// acyclic nodes, with at most `max_elements` elements, up to isomorphism.
pub fn slant_sum_trees(max_elements: usize) -> Vec<Poset> {
    let comps = minuscule_components(max_elements);
    let key = |p: &Poset, free: ElemSet| {
        canonical_form_colored(
            p,
            &(0..p.len())
                .map(|i| u32::from(free.contains(i)))
                .collect::<Vec<_>>(),
        )
    };
    let mut seen_states = HashSet::new();
    let mut frontier: Vec<(Poset, ElemSet)> = Vec::new();
    for c in &comps {
        let c = c.renamed(&format!("k{}.", 0));
        let free = c
            .poset
            .set_of(&c.acyclic_nodes.iter().collect::<Vec<_>>())
            .unwrap();
        if seen_states.insert(key(&c.poset, free)) {
            frontier.push((c.poset.clone(), free));
        }
    }
    let mut posets: Vec<Poset> = Vec::new();
    let mut seen = HashSet::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (p, free) in frontier {
            if seen.insert(canonical_form(&p)) {
                posets.push(p.clone());
            }
            for a in free.iter() {
                for c in comps
                    .iter()
                    .filter(|c| p.len() + c.poset.len() <= max_elements)
                {
                    let c = c.renamed(&format!("k{}.", p.len()));
                    let q = p.slant_sum(p.name_of(a), &c.poset).unwrap();
                    let mut nfree = free;
                    nfree.remove(a);
                    for node in &c.acyclic_nodes {
                        nfree.insert(q.index_of(node).unwrap());
                    }
                    if seen_states.insert(key(&q, nfree)) {
                        next.push((q, nfree));
                    }
                }
            }
        }
        frontier = next;
    }
    posets
}

pub fn minuscule_slant_trees_are_urts(max_elements: usize) -> Outcome {
    let all = slant_sum_trees(max_elements);
    let targets = all
        .par_iter()
        .map(|p| -> Result<u64, String> {
            ensure(is_dcomplete(p).dcomplete, || {
                format!("{p:?} is not d-complete")
            })?;
            let oracle = UrtOracle::new(p);
            let ideals = p.order_ideals();
            for lambda in &ideals {
                let m = minimal_tableau(p, lambda.members());
                let v = oracle.is_urt(&m).map_err(|e| e.to_string())?;
                ensure(v.urt, || {
                    format!("{p:?}: M of {:?} is not a URT", lambda.names(p))
                })?;
            }
            Ok(ideals.len() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(format!(
        "{} slant-sum trees, {targets} minimal tableaux, all URTs",
        all.len()
    ))
}

fn minuscule_instances() -> Vec<CatalogPoset> {
    let mut v = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            v.push(catalog::rectangle(m, n).unwrap());
        }
    }
    for n in 1..=4 {
        v.push(catalog::shifted_staircase(n).unwrap());
    }
    for k in 3..=6 {
        v.push(catalog::dtd(k).unwrap());
    }
    v.push(catalog::cayley_moufang());
    v.push(catalog::bat());
    v
}

pub fn dcomplete_checker() -> Outcome {
    let inst = minuscule_instances();
    for c in &inst {
        let r = is_dcomplete(&c.poset);
        ensure(r.dcomplete, || {
            format!("{} fails: {:?}", c.poset.name(), r.violations)
        })?;
        let p = &c.poset;
        for k in 3..=p.len().div_ceil(2) + 1 {
            for w in find_intervals(p, IntervalKind::D, k) {
                let x = p.index_of(&w.x).unwrap();
                let covers = p.upper_covers(x).len();
                ensure(if k == 3 { covers == 2 } else { covers == 1 }, || {
                    format!(
                        "{}: bottom of [{}, {}] has {covers} covers",
                        p.name(),
                        w.x,
                        w.z
                    )
                })?;
            }
        }
    }
    let tail = is_dcomplete(&diamond_top_tail());
    ensure(
        !tail.dcomplete
            && tail.violations.len() == 1
            && tail.violations[0].k == 4
            && tail.violations[0].condition == 1,
        || format!("diamond-plus-tail report: {:?}", tail.violations),
    )?;
    let mut glued = 0;
    for c in inst.iter().chain(chained_diamonds(10).iter()) {
        for a in &c.acyclic_nodes {
            for len in 1..=3 {
                let ch = catalog::chain(len).unwrap().renamed("x.").poset;
                let q = c.poset.slant_sum(a, &ch).map_err(|e| e.to_string())?;
                ensure(is_dcomplete(&q).dcomplete, || {
                    format!(
                        "{} with chain({len}) at {a} is not d-complete",
                        c.poset.name()
                    )
                })?;
                glued += 1;
            }
        }
    }
    Ok(format!("{} minuscule instances pass; diamond-plus-tail fails with one incomplete D0(4); {glued} chain gluings at acyclic nodes pass", inst.len()))
}

/// Signed count of fillings of `nu / lambda` with the labels of `M_mu`
/// whose only rectification is `M_mu`, straight from `rects`.
fn brute_constant(p: &Poset, l: OrderIdeal, m: OrderIdeal, n: OrderIdeal) -> i64 {
    if !l.members().is_subset(n.members()) {
        return 0;
    }
    let mm = minimal_tableau(p, m.members());
    let shape = kjdt_core::SkewShape {
        nu: n.members(),
        lambda: l.members(),
    };
    let count = fillings(p, shape, &mm.range(), true)
        .iter()
        .filter(|t| rects(p, t).tableaux() == vec![mm.clone()])
        .count() as i64;
    if (n.len() + l.len() + m.len()).is_multiple_of(2) {
        count
    } else {
        -count
    }
}

pub fn kring() -> Outcome {
    let posets = [
        catalog::chain(3).unwrap().poset,
        catalog::dtd(3).unwrap().poset,
        catalog::dtd(4).unwrap().poset,
        catalog::rectangle(2, 2).unwrap().poset,
        catalog::rectangle(2, 3).unwrap().poset,
    ];
    let mut entries = 0;
    for p in &posets {
        let ring = KRing::new(p);
        let table = ring.full_table().map_err(|e| e.to_string())?;
        entries += table.entries.len();
        for &(l, m, n, t) in &table.entries {
            let d = n.len() as i64 - l.len() as i64 - m.len() as i64;
            ensure(t.signum() == if d % 2 == 0 { 1 } else { -1 }, || {
                format!("{}: sign of t = {t}", p.name())
            })?;
            ensure(l.members().is_subset(n.members()) && d >= 0, || {
                format!("{}: t = {t} outside lambda <= nu", p.name())
            })?;
        }
        let ideals = ring.ideals();
        for &l in ideals {
            for &m in ideals {
                for &n in ideals {
                    let t = table.get(l, m, n);
                    let b = brute_constant(p, l, m, n);
                    ensure(t == b, || format!("{}: t = {t}, brute force {b}", p.name()))?;
                }
            }
        }
        let rep = verify_ring(p).map_err(|e| e.to_string())?;
        ensure(rep.ok, || format!("{}: {:?}", p.name(), rep.violations))?;
    }
    let sq = &posets[3];
    let bx = sq.ideal_from_names(&["(1,1)"]).unwrap();
    let got = KRing::new(sq).multiply(bx, bx).map_err(|e| e.to_string())?;
    let want = FormalSum::zero()
        .plus(sq.ideal_from_names(&["(1,1)", "(1,2)"]).unwrap(), 1)
        .plus(sq.ideal_from_names(&["(1,1)", "(2,1)"]).unwrap(), 1)
        .plus(
            sq.ideal_from_names(&["(1,1)", "(1,2)", "(2,1)"]).unwrap(),
            -1,
        );
    ensure(got == want, || format!("box*box = {}", got.display(sq)))?;
    Ok(format!(
        "5 rings, {entries} nonzero constants, all match brute force; axioms hold; box*box = {}",
        got.display(sq)
    ))
}

pub fn invariants(max_elements: usize, max_label: u8) -> Outcome {
    let posets: Vec<Poset> = (1..=max_elements).flat_map(connected_posets).collect();
    let c = posets
        .par_iter()
        .map(|p| invariants::check_poset(p, max_label))
        .try_reduce(invariants::Counts::default, |a, b| Ok(a + b))?;
    Ok(format!(
        "{} posets, {} skew tableaux, {} slides, {} funnel checks",
        posets.len(),
        c.tableaux,
        c.slides,
        c.funnel_checks
    ))
}

/// Distinct canonical forms among `ps`.
pub fn distinct(ps: &[Poset]) -> usize {
    ps.iter().map(canonical_form).collect::<BTreeSet<_>>().len()
}
