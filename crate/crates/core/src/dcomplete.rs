//! Recognition of double-tailed-diamond intervals and the d-complete
//! conditions built on them.

use serde::{Deserialize, Serialize};

use crate::poset::Poset;
use crate::set::ElemSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalKind {
    /// `D(k)`: two incomparable middles with `k - 2` element tails on each side.
    D,
    /// `D0(k)`: `D(k)` without its minimum.
    D0,
}

impl IntervalKind {
    /// Number of elements at each level of the model, bottom to top.
    fn profile(self, k: usize) -> Vec<usize> {
        let below = match self {
            IntervalKind::D => k - 2,
            IntervalKind::D0 => k - 3,
        };
        let mut levels = vec![1; below];
        levels.push(2);
        levels.extend(std::iter::repeat_n(1, k - 2));
        levels
    }
}

/// An interval `[x, z]` isomorphic to `D(k)` or `D0(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalWitness {
    pub kind: IntervalKind,
    pub k: usize,
    pub x: String,
    pub z: String,
    #[serde(skip)]
    pub(crate) xi: usize,
    #[serde(skip)]
    pub(crate) zi: usize,
    #[serde(skip)]
    pub(crate) members: ElemSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub k: usize,
    pub condition: u8,
    pub elements: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DCompleteReport {
    pub dcomplete: bool,
    pub violations: Vec<Violation>,
}

impl DCompleteReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        DCompleteReport {
            dcomplete: violations.is_empty(),
            violations,
        }
    }
}

/// Checks whether `[x, z]` has the level profile of the model: levels by
/// longest chain from `x`, and every element on one level covering exactly
/// the whole level beneath it.
fn matches_model(p: &Poset, x: usize, z: usize, members: ElemSet, profile: &[usize]) -> bool {
    let mut level = [usize::MAX; crate::set::MAX_ELEMENTS];
    let mut by_level: Vec<ElemSet> = vec![ElemSet::EMPTY; profile.len()];
    for &v in p.topological_order() {
        if !members.contains(v) {
            continue;
        }
        let l = if v == x {
            0
        } else {
            p.lower_covers(v)
                .intersection(members)
                .iter()
                .map(|u| level[u] + 1)
                .max()
                .unwrap()
        };
        if l >= profile.len() {
            return false;
        }
        level[v] = l;
        by_level[l].insert(v);
    }
    if by_level.iter().zip(profile).any(|(s, &n)| s.len() != n)
        || !by_level.last().unwrap().contains(z)
    {
        return false;
    }
    (1..profile.len()).all(|i| {
        by_level[i]
            .iter()
            .all(|v| p.lower_covers(v).intersection(members) == by_level[i - 1])
    })
}

/// All intervals of `p` isomorphic to the model, ordered by `(x, z)` index.
pub fn find_intervals(p: &Poset, kind: IntervalKind, k: usize) -> Vec<IntervalWitness> {
    let min_k = if kind == IntervalKind::D { 3 } else { 4 };
    if k < min_k {
        return Vec::new();
    }
    let profile = kind.profile(k);
    let size: usize = profile.iter().sum();
    let mut out = Vec::new();
    for x in 0..p.len() {
        for z in p.strictly_above(x).iter() {
            let members = p.interval(x, z);
            if members.len() == size && matches_model(p, x, z, members, &profile) {
                out.push(IntervalWitness {
                    kind,
                    k,
                    x: p.name_of(x).to_string(),
                    z: p.name_of(z).to_string(),
                    xi: x,
                    zi: z,
                    members,
                });
            }
        }
    }
    out
}

fn names(p: &Poset, els: &[usize]) -> Vec<String> {
    els.iter().map(|&i| p.name_of(i).to_string()).collect()
}

pub fn is_d3_complete(p: &Poset) -> DCompleteReport {
    let mut v = Vec::new();
    for z in 0..p.len() {
        let lower: Vec<usize> = p.lower_covers(z).iter().collect();
        for (i, &x) in lower.iter().enumerate() {
            for &y in &lower[i + 1..] {
                if !p.lower_covers(x).intersects(p.lower_covers(y)) {
                    v.push(Violation {
                        k: 3,
                        condition: 1,
                        elements: names(p, &[x, y, z]),
                        message: format!(
                            "{} covers {} and {}, which cover no common element",
                            p.name_of(z),
                            p.name_of(x),
                            p.name_of(y)
                        ),
                    });
                }
            }
        }
    }
    for w in find_intervals(p, IntervalKind::D, 3) {
        let mids = w.members.difference(ElemSet::singleton(w.xi).with(w.zi));
        let (x, y) = {
            let mut it = mids.iter();
            (it.next().unwrap(), it.next().unwrap())
        };
        if p.upper_covers(w.xi) != mids {
            v.push(Violation {
                k: 3,
                condition: 2,
                elements: names(p, &[w.xi, x, y, w.zi]),
                message: format!(
                    "{} is covered by elements outside the diamond [{}, {}]",
                    w.x, w.x, w.z
                ),
            });
        }
        let common = p.lower_covers(x).intersection(p.lower_covers(y));
        if common != ElemSet::singleton(w.xi) {
            let mut els = vec![x, y];
            els.extend(common.iter());
            v.push(Violation {
                k: 3,
                condition: 3,
                elements: names(p, &els),
                message: format!(
                    "{} and {} both cover more than one element",
                    p.name_of(x),
                    p.name_of(y)
                ),
            });
        }
    }
    DCompleteReport::from_violations(v)
}

/// The `D(k)` conditions for `k >= 4`. Two `D0(k)`-intervals with the same
/// top overlap when they agree after removing their minima, which for
/// `k >= 5` is the same as sharing the unique cover of the minimum.
pub fn is_dk_complete(p: &Poset, k: usize) -> DCompleteReport {
    assert!(k >= 4, "is_dk_complete needs k >= 4");
    let mut v = Vec::new();
    let full = find_intervals(p, IntervalKind::D, k);
    let truncated = find_intervals(p, IntervalKind::D0, k);
    for t in &truncated {
        let completed = full
            .iter()
            .any(|f| f.zi == t.zi && p.lower_covers(t.xi).contains(f.xi));
        if !completed {
            v.push(Violation {
                k,
                condition: 1,
                elements: vec![t.x.clone(), t.z.clone()],
                message: format!("D0({k})-interval [{}, {}] is incomplete", t.x, t.z),
            });
        }
    }
    for f in &full {
        if p.upper_covers(f.xi).len() != 1 {
            v.push(Violation {
                k,
                condition: 2,
                elements: vec![f.x.clone(), f.z.clone()],
                message: format!(
                    "minimum {} of D({k})-interval [{}, {}] has more than one cover",
                    f.x, f.x, f.z
                ),
            });
        }
    }
    for (i, a) in truncated.iter().enumerate() {
        for b in &truncated[i + 1..] {
            if a.zi == b.zi
                && a.members.difference(ElemSet::singleton(a.xi))
                    == b.members.difference(ElemSet::singleton(b.xi))
            {
                v.push(Violation {
                    k,
                    condition: 3,
                    elements: vec![a.x.clone(), b.x.clone(), a.z.clone()],
                    message: format!(
                        "D0({k})-intervals [{}, {}] and [{}, {}] overlap",
                        a.x, a.z, b.x, b.z
                    ),
                });
            }
        }
    }
    DCompleteReport::from_violations(v)
}

/// Checks every `k` from 3 up to the largest one for which a `D0(k)` model
/// (`2k - 3` elements) fits in `p`.
pub fn is_dcomplete(p: &Poset) -> DCompleteReport {
    let mut report = is_d3_complete(p);
    for k in 4..=(p.len() + 3) / 2 {
        report.violations.extend(is_dk_complete(p, k).violations);
    }
    DCompleteReport::from_violations(report.violations)
}
