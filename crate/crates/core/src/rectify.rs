//! Rectification sets, unique rectification targets and the chain
//! reduction for slant sums.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::enumerate::for_each_filling;
use crate::error::{Error, Result};
use crate::poset::{Poset, SubPoset};
use crate::set::ElemSet;
use crate::tableau::{slide_unchecked, IncreasingTableau};

/// `rects(T)` with one slide sequence reaching each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectificationSet {
    pub source: IncreasingTableau,
    /// Sorted by tableau.
    pub members: Vec<(IncreasingTableau, Vec<ElemSet>)>,
}

impl RectificationSet {
    pub fn tableaux(&self) -> Vec<IncreasingTableau> {
        self.members.iter().map(|(t, _)| t.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_unique(&self) -> bool {
        self.members.len() == 1
    }
}

/// Breadth-first search over all nonempty sets of inner corners at every
/// step, recording the first sequence (in canonical visiting order) that
/// reaches each rectification.
pub fn rects(p: &Poset, t: &IncreasingTableau) -> RectificationSet {
    let mut found: BTreeMap<IncreasingTableau, Vec<ElemSet>> = BTreeMap::new();
    let mut seen: HashSet<IncreasingTableau> = HashSet::new();
    let mut frontier: Vec<(IncreasingTableau, Vec<ElemSet>)> = vec![(t.clone(), Vec::new())];
    seen.insert(t.clone());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (s, path) in frontier {
            if s.is_straight() {
                found.entry(s).or_insert(path);
                continue;
            }
            for gamma in p.maximal_in(s.lambda()).nonempty_subsets() {
                let r = slide_unchecked(p, &s, gamma);
                if seen.insert(r.clone()) {
                    let mut path = path.clone();
                    path.push(gamma);
                    next.push((r, path));
                }
            }
        }
        next.sort();
        frontier = next;
    }
    RectificationSet {
        source: t.clone(),
        members: found.into_iter().collect(),
    }
}

pub fn rectifies_uniquely(p: &Poset, t: &IncreasingTableau) -> bool {
    Rectifier::new(p).rects(t).len() == 1
}

/// `{U|_Q : U in rects(T)}` as tableaux on the subposet `q`.
pub fn rects_restricted(p: &Poset, t: &IncreasingTableau, q: &SubPoset) -> Vec<IncreasingTableau> {
    let set: BTreeSet<IncreasingTableau> = Rectifier::new(p)
        .rects(t)
        .iter()
        .map(|u| u.restrict(q))
        .collect();
    set.into_iter().collect()
}

/// Memoized rectification sets over one poset, shareable across threads.
pub struct Rectifier<'a> {
    p: &'a Poset,
    memo: DashMap<IncreasingTableau, Arc<[IncreasingTableau]>>,
}

impl<'a> Rectifier<'a> {
    pub fn new(p: &'a Poset) -> Self {
        Rectifier {
            p,
            memo: DashMap::new(),
        }
    }

    pub fn poset(&self) -> &Poset {
        self.p
    }

    /// Sorted, deduplicated rectifications.
    pub fn rects(&self, t: &IncreasingTableau) -> Arc<[IncreasingTableau]> {
        if t.is_straight() {
            return Arc::from(vec![t.clone()]);
        }
        if let Some(hit) = self.memo.get(t) {
            return hit.clone();
        }
        let corners = self.p.maximal_in(t.lambda());
        let mut out: Vec<IncreasingTableau> = Vec::new();
        for gamma in corners.nonempty_subsets() {
            let s = slide_unchecked(self.p, t, gamma);
            out.extend(self.rects(&s).iter().cloned());
        }
        out.sort();
        out.dedup();
        let out: Arc<[IncreasingTableau]> = Arc::from(out);
        self.memo.insert(t.clone(), out.clone());
        out
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Every skew tableau with range exactly `1..=r`, rectified: which straight
/// tableaux are reached from a non-uniquely rectifying tableau, and how many
/// tableaux of each shape rectify uniquely to each target.
#[derive(Debug, Default)]
pub struct Census {
    pub r: u8,
    /// Non-URT target to the smallest tableau witnessing it.
    pub bad: HashMap<IncreasingTableau, IncreasingTableau>,
    /// `(lambda, nu, U)` to the number of tableaux of shape `nu / lambda`
    /// whose only rectification is `U`.
    pub unique: HashMap<(ElemSet, ElemSet, IncreasingTableau), u64>,
    pub tableaux: u64,
}

impl Census {
    fn merge(mut self, other: Census) -> Census {
        for (u, w) in other.bad {
            self.note_bad(u, w);
        }
        for (k, c) in other.unique {
            *self.unique.entry(k).or_default() += c;
        }
        self.tableaux += other.tableaux;
        self
    }

    fn note_bad(&mut self, u: IncreasingTableau, w: IncreasingTableau) {
        match self.bad.get_mut(&u) {
            Some(old) if *old <= w => {}
            Some(old) => *old = w,
            None => {
                self.bad.insert(u, w);
            }
        }
    }
}

pub fn census(rect: &Rectifier, r: u8) -> Census {
    let p = rect.poset();
    let alphabet: Vec<u8> = (1..=r).collect();
    let shapes = p.skew_shapes();
    let mut c = shapes
        .par_iter()
        .map(|&shape| {
            let mut local = Census {
                r,
                ..Census::default()
            };
            for_each_filling(p, shape, &alphabet, true, |t| {
                local.tableaux += 1;
                let rs = rect.rects(&t);
                if rs.len() == 1 {
                    *local
                        .unique
                        .entry((shape.lambda, shape.nu, rs[0].clone()))
                        .or_default() += 1;
                } else {
                    for u in rs.iter() {
                        local.note_bad(u.clone(), t.clone());
                    }
                }
            });
            local
        })
        .reduce(
            || Census {
                r,
                ..Census::default()
            },
            Census::merge,
        );
    c.r = r;
    c
}

/// A tableau rectifying to the target in more than one way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub witness: IncreasingTableau,
    pub rectifications: RectificationSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UrtVerdict {
    pub urt: bool,
    pub counterexample: Option<Counterexample>,
}

/// Answers URT questions on one poset, computing each census once. Slides
/// commute with strictly increasing relabeling, so a target is a URT exactly
/// when its standardization is.
pub struct UrtOracle<'a> {
    rect: Rectifier<'a>,
    censuses: Mutex<HashMap<u8, Arc<OnceLock<Arc<Census>>>>>,
}

impl<'a> UrtOracle<'a> {
    pub fn new(p: &'a Poset) -> Self {
        UrtOracle {
            rect: Rectifier::new(p),
            censuses: Mutex::new(HashMap::new()),
        }
    }

    pub fn poset(&self) -> &Poset {
        self.rect.poset()
    }

    pub fn rectifier(&self) -> &Rectifier<'a> {
        &self.rect
    }

    pub fn census(&self, r: u8) -> Arc<Census> {
        let cell = self.censuses.lock().unwrap().entry(r).or_default().clone();
        cell.get_or_init(|| Arc::new(census(&self.rect, r))).clone()
    }

    pub fn is_urt(&self, u: &IncreasingTableau) -> Result<UrtVerdict> {
        if !u.is_straight() {
            return Err(Error::NotStraight);
        }
        let (std, values) = u.standardize();
        let c = self.census(values.len() as u8);
        Ok(match c.bad.get(&std) {
            None => UrtVerdict {
                urt: true,
                counterexample: None,
            },
            Some(w) => {
                let witness = w.destandardize(&values);
                let rectifications = rects(self.poset(), &witness);
                UrtVerdict {
                    urt: false,
                    counterexample: Some(Counterexample {
                        witness,
                        rectifications,
                    }),
                }
            }
        })
    }

    /// Number of tableaux of shape `nu / lambda` whose rectification set is
    /// exactly `{u}`, for `u` standardized.
    pub fn unique_count(&self, lambda: ElemSet, nu: ElemSet, u: &IncreasingTableau) -> u64 {
        let r = u.range().len() as u8;
        let c = self.census(r);
        c.unique.get(&(lambda, nu, u.clone())).copied().unwrap_or(0)
    }
}

pub fn is_urt(p: &Poset, u: &IncreasingTableau) -> Result<UrtVerdict> {
    UrtOracle::new(p).is_urt(u)
}

/// A poset `base` with further posets slant-summed onto some of its points.
#[derive(Clone, Debug)]
pub struct SlantDecomposition {
    pub base: ElemSet,
    /// `(point, everything attached above it)`, by point index.
    pub attachments: Vec<(usize, ElemSet)>,
}

impl SlantDecomposition {
    /// Recovers the attachment points of `ambient` over the order ideal
    /// `base`: every element outside `base` must see exactly a principal
    /// ideal of `base` below it, and every attached component needs a
    /// minimum.
    pub fn new(ambient: &Poset, base: ElemSet) -> Result<Self> {
        if base.is_empty() || !ambient.is_ideal(base) {
            return Err(Error::InvalidDecomposition(
                "base must be a nonempty order ideal".into(),
            ));
        }
        let mut by_point: BTreeMap<usize, ElemSet> = BTreeMap::new();
        for x in ambient.all().difference(base).iter() {
            let under = ambient.strictly_below(x).intersection(base);
            let top = ambient.maximal_in(under);
            if top.len() != 1 {
                return Err(Error::InvalidDecomposition(format!(
                    "{} is not above a single point",
                    ambient.name_of(x)
                )));
            }
            let point = top.iter().next().unwrap();
            if under != ambient.principal_ideal(point) {
                return Err(Error::InvalidDecomposition(format!(
                    "{} is not above a single point",
                    ambient.name_of(x)
                )));
            }
            by_point.entry(point).or_default().insert(x);
        }
        for (&point, &part) in &by_point {
            for m in ambient.minimal_in(part).iter() {
                if ambient.lower_covers(m) != ElemSet::singleton(point) {
                    return Err(Error::InvalidDecomposition(format!(
                        "{} is not glued by a single cover",
                        ambient.name_of(m)
                    )));
                }
                let comp = component(ambient, part, m);
                if ambient.minimal_in(comp).len() != 1 {
                    return Err(Error::InvalidDecomposition(format!(
                        "component above {} has no minimum",
                        ambient.name_of(point)
                    )));
                }
            }
        }
        Ok(SlantDecomposition {
            base,
            attachments: by_point.into_iter().collect(),
        })
    }
}

fn component(p: &Poset, within: ElemSet, start: usize) -> ElemSet {
    let mut comp = ElemSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in p
            .upper_covers(v)
            .union(p.lower_covers(v))
            .intersection(within)
            .iter()
        {
            if !comp.contains(w) {
                comp.insert(w);
                stack.push(w);
            }
        }
    }
    comp
}

/// The poset `base` with a chain of size `k_i` slant-summed at each point
/// `p_i` (chains are `<point>~1 < <point>~2 < ...`), base elements first and
/// in their original relative order.
pub fn attach_chains(ambient: &Poset, base: ElemSet, chains: &[(usize, usize)]) -> Result<Poset> {
    let sub = SubPoset::new(ambient, base)?;
    let mut parts = Vec::new();
    for &(point, k) in chains {
        if k == 0 {
            continue;
        }
        let name = ambient.name_of(point);
        let els: Vec<String> = (1..=k).map(|r| format!("{name}~{r}")).collect();
        let rel: Vec<(&str, &str)> = els
            .windows(2)
            .map(|w| (w[0].as_str(), w[1].as_str()))
            .collect();
        parts.push((
            name.to_string(),
            Poset::new(
                &format!("chain@{name}"),
                els.iter().map(String::as_str),
                rel,
            )?,
        ));
    }
    let refs: Vec<(&str, &Poset)> = parts.iter().map(|(a, q)| (a.as_str(), q)).collect();
    Ok(sub
        .poset
        .iterated_slant_sum(&refs)?
        .with_name(&format!("{}+chains", ambient.name())))
}

/// The result of replacing every attached poset by a labeled chain.
#[derive(Clone, Debug)]
pub struct ChainReduction {
    pub poset: Poset,
    pub tableau: IncreasingTableau,
    /// Chain sizes per point, in point order.
    pub chains: Vec<(usize, usize)>,
}

/// Replaces everything attached at each point `p` by a chain of size
/// `|{x <= p}|` carrying the smallest distinct labels found in the attached
/// part, one per chain element from the bottom, keeping `T` on the base.
pub fn chain_reduction(
    ambient: &Poset,
    dec: &SlantDecomposition,
    t: &IncreasingTableau,
) -> Result<ChainReduction> {
    let chains: Vec<(usize, usize)> = dec
        .attachments
        .iter()
        .map(|&(p, _)| (p, ambient.principal_ideal(p).len()))
        .collect();
    let poset = attach_chains(ambient, dec.base, &chains)?;
    let base: Vec<usize> = dec.base.iter().collect();
    let n = poset.len();
    let mut labels = vec![0u8; n];
    let mut lambda = ElemSet::EMPTY;
    let amb = t.label_vec(ambient.len());
    for (i, &x) in base.iter().enumerate() {
        labels[i] = amb[x];
        if t.lambda().contains(x) {
            lambda.insert(i);
        }
    }
    for (&(point, part), &(_, k)) in dec.attachments.iter().zip(&chains) {
        let distinct: BTreeSet<u8> = part.iter().map(|x| amb[x]).filter(|&v| v != 0).collect();
        let name = ambient.name_of(point);
        for (r, &q) in distinct.iter().take(k).enumerate() {
            labels[poset.index_of(&format!("{name}~{}", r + 1))?] = q;
        }
    }
    let nu = lambda.union(
        labels
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect(),
    );
    let tableau = IncreasingTableau::new(&poset, nu, lambda, &labels)?;
    Ok(ChainReduction {
        poset,
        tableau,
        chains,
    })
}

/// A configuration of chain sizes on which a target fails to be a URT.
#[derive(Clone, Debug)]
pub struct ChainFailure {
    /// `(point, chain size)`; empty for the base poset itself.
    pub chains: Vec<(usize, usize)>,
    pub poset: Poset,
    pub counterexample: Counterexample,
}

/// Checks that `u` (a straight tableau on `p`) is a URT in `p` and in every
/// slant sum of `p` with chains of sizes `1..=bound` at each of `points`;
/// `bound` is `|{x <= point}|` unless `max_chain` is given.
pub fn is_pchain_urt(
    p: &Poset,
    u: &IncreasingTableau,
    points: ElemSet,
    max_chain: Option<usize>,
) -> Result<Option<ChainFailure>> {
    Ok(
        is_pchain_urt_all(p, std::slice::from_ref(u), points, max_chain)?
            .pop()
            .unwrap(),
    )
}

/// `is_pchain_urt` for many targets at once, building each chain
/// configuration and its census only once. Results are in input order.
pub fn is_pchain_urt_all(
    p: &Poset,
    us: &[IncreasingTableau],
    points: ElemSet,
    max_chain: Option<usize>,
) -> Result<Vec<Option<ChainFailure>>> {
    if us.iter().any(|u| !u.is_straight()) {
        return Err(Error::NotStraight);
    }
    if !points.is_subset(p.all()) {
        return Err(Error::InvalidParameter("point outside the poset".into()));
    }
    let mut out: Vec<Option<ChainFailure>> = vec![None; us.len()];
    let base = UrtOracle::new(p);
    for (i, u) in us.iter().enumerate() {
        if let Some(c) = base.is_urt(u)?.counterexample {
            out[i] = Some(ChainFailure {
                chains: vec![],
                poset: p.clone(),
                counterexample: c,
            });
        }
    }
    let pts: Vec<usize> = points.iter().collect();
    if pts.is_empty() {
        return Ok(out);
    }
    let bounds: Vec<usize> = pts
        .iter()
        .map(|&x| max_chain.unwrap_or_else(|| p.principal_ideal(x).len()))
        .collect();
    if bounds.contains(&0) {
        return Ok(out);
    }
    let mut sizes = vec![1usize; pts.len()];
    loop {
        if out.iter().all(Option::is_some) {
            return Ok(out);
        }
        let chains: Vec<(usize, usize)> = pts.iter().copied().zip(sizes.iter().copied()).collect();
        let big = attach_chains(p, p.all(), &chains)?;
        // base elements keep their indices in `big`
        let oracle = UrtOracle::new(&big);
        for (i, u) in us.iter().enumerate() {
            if out[i].is_some() {
                continue;
            }
            if let Some(c) = oracle.is_urt(u)?.counterexample {
                out[i] = Some(ChainFailure {
                    chains: chains.clone(),
                    poset: big.clone(),
                    counterexample: c,
                });
            }
        }
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return Ok(out);
            }
            if sizes[i] < bounds[i] {
                sizes[i] += 1;
                break;
            }
            sizes[i] = 1;
            i += 1;
        }
    }
}
