//! Exhaustive invariant checks over every skew tableau of a poset.

use std::collections::BTreeSet;

use kjdt_core::enumerate::for_each_filling;
use kjdt_core::tableau::{add_dots, corresponding_tableau, slide, DottedTableau};
use kjdt_core::{ElemSet, IncreasingTableau, Poset, Rectifier, SkewShape, SubPoset};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub tableaux: u64,
    pub slides: u64,
    pub funnel_checks: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            tableaux: self.tableaux + o.tableaux,
            slides: self.slides + o.slides,
            funnel_checks: self.funnel_checks + o.funnel_checks,
        }
    }
}

fn nonempty_subsets(s: ElemSet) -> impl Iterator<Item = ElemSet> {
    let v: Vec<usize> = s.iter().collect();
    (1u64..(1 << v.len())).map(move |m| {
        v.iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

fn adjacent_to_dots(p: &Poset, d: &DottedTableau, n: u8) -> bool {
    d.dots()
        .iter()
        .any(|x| p.upper_covers(x).iter().any(|y| d.label(y) == Some(n)))
        || (0..p.len()).any(|y| d.label(y) == Some(n) && p.lower_covers(y).intersects(d.dots()))
}

/// Slides through the primitives, checking every intermediate dotted
/// tableau, and returns the result.
pub fn traced_slide(
    p: &Poset,
    t: &IncreasingTableau,
    gamma: ElemSet,
    max_label: u8,
) -> Result<IncreasingTableau, String> {
    let mut d = add_dots(p, t, gamma).map_err(|e| e.to_string())?;
    for n in 1..=max_label {
        if !p.is_antichain(d.dots()) {
            return Err(format!("dots not an antichain before swap {n}"));
        }
        d.validate(p)
            .map_err(|e| format!("intermediate before swap {n}: {e}"))?;
        let next = d.swap_unchecked(p, n);
        if !adjacent_to_dots(p, &d, n) && next != d {
            return Err(format!("swap {n} moved a non-adjacent value"));
        }
        d = next;
    }
    d.validate(p).map_err(|e| e.to_string())?;
    d.remove_dots(p).map_err(|e| e.to_string())
}

fn check_tableau(
    p: &Poset,
    rect: &Rectifier,
    funnels: &[(SubPoset, Rectifier)],
    t: &IncreasingTableau,
    max_label: u8,
    c: &mut Counts,
) -> Result<(), String> {
    let ctx = || t.display(p);
    let shape = SkewShape {
        nu: t.nu(),
        lambda: t.lambda(),
    };
    let ic = p.inner_corners(&shape);
    if !p.is_antichain(ic) {
        return Err(format!("inner corners of {} not an antichain", ctx()));
    }
    for gamma in nonempty_subsets(ic) {
        c.slides += 1;
        let s = traced_slide(p, t, gamma, max_label).map_err(|e| format!("{}: {e}", ctx()))?;
        if slide(p, t, gamma).map_err(|e| e.to_string())? != s {
            return Err(format!("{}: fast slide disagrees with primitives", ctx()));
        }
        if s.range() != t.range() {
            return Err(format!("{}: range changed", ctx()));
        }
        if !s.nu().is_subset(t.nu()) || s.lambda() != t.lambda().difference(gamma) {
            return Err(format!("{}: domain monotonicity", ctx()));
        }
    }
    let rs = rect.rects(t);
    if rs.is_empty()
        || rs
            .iter()
            .any(|u| !u.is_straight() || u.range() != t.range())
    {
        return Err(format!("{}: bad rectification set", ctx()));
    }
    let bc: Vec<usize> = p
        .topological_order()
        .iter()
        .copied()
        .filter(|&x| p.bottom_chain().members().contains(x))
        .collect();
    let range = t.range();
    let first: Vec<Option<u8>> = bc.iter().map(|&x| rs[0].label(x)).collect();
    for u in rs.iter() {
        let here: Vec<Option<u8>> = bc.iter().map(|&x| u.label(x)).collect();
        if here != first {
            return Err(format!(
                "{}: rectifications disagree on the bottom chain",
                ctx()
            ));
        }
        let got: Vec<u8> = here.iter().flatten().copied().collect();
        if got[..] != range[..got.len()] {
            return Err(format!(
                "{}: bottom chain does not carry the smallest labels",
                ctx()
            ));
        }
    }
    for (f, frect) in funnels {
        for u in rs.iter() {
            c.funnel_checks += 1;
            let ct = corresponding_tableau(p, f, t, u).map_err(|e| e.to_string())?;
            if !frect.rects(&ct).contains(&u.restrict(f)) {
                return Err(format!(
                    "{}: funnel restriction fails for {}",
                    ctx(),
                    u.display(p)
                ));
            }
        }
    }
    Ok(())
}

/// Runs every invariant on every skew tableau of `p` with labels in
/// `1..=max_label`.
pub fn check_poset(p: &Poset, max_label: u8) -> Result<Counts, String> {
    let rect = Rectifier::new(p);
    let subs: Vec<SubPoset> = (0..p.len())
        .map(|x| p.principal_filter(x))
        .filter(|&f| p.is_funnel(f))
        .map(|f| SubPoset::new(p, f).unwrap())
        .collect();
    let funnels: Vec<(SubPoset, Rectifier)> = subs
        .iter()
        .map(|s| (s.clone(), Rectifier::new(&s.poset)))
        .collect();
    let alphabet: Vec<u8> = (1..=max_label).collect();
    let mut c = Counts::default();
    let mut err = None;
    for shape in p.skew_shapes() {
        for_each_filling(p, shape, &alphabet, false, |t| {
            if err.is_some() {
                return;
            }
            c.tableaux += 1;
            if let Err(e) = check_tableau(p, &rect, &funnels, &t, max_label, &mut c) {
                err = Some(format!("{}: {e}", p.name()));
            }
        });
    }
    let _ = &subs;
    err.map_or(Ok(c), Err)
}

/// Rectification straight from the definitions, on label vectors: `0` is
/// empty, `-1` skewed out, `-2` a dot.
pub fn naive_rects(p: &Poset, labels: &[i32]) -> BTreeSet<Vec<i32>> {
    let ic: Vec<usize> = (0..p.len())
        .filter(|&x| labels[x] == -1 && p.upper_covers(x).iter().all(|y| labels[y] != -1))
        .collect();
    let mut out = BTreeSet::new();
    if ic.is_empty() {
        out.insert(labels.to_vec());
        return out;
    }
    for m in 1u64..(1 << ic.len()) {
        let mut cur = labels.to_vec();
        for (i, &x) in ic.iter().enumerate() {
            if m >> i & 1 == 1 {
                cur[x] = -2;
            }
        }
        let max = *labels.iter().max().unwrap();
        for n in 1..=max {
            let mut next = cur.clone();
            for x in 0..p.len() {
                if cur[x] == -2 && p.upper_covers(x).iter().any(|y| cur[y] == n) {
                    next[x] = n;
                }
                if cur[x] == n && p.lower_covers(x).iter().any(|y| cur[y] == -2) {
                    next[x] = -2;
                }
            }
            cur = next;
        }
        for v in cur.iter_mut() {
            if *v == -2 {
                *v = 0;
            }
        }
        out.extend(naive_rects(p, &cur));
    }
    out
}
