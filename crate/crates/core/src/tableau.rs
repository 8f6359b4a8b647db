//! Increasing and dotted tableaux and the sliding moves on them.
//!
//! A tableau does not own its poset; every operation that needs the order
//! takes it as an argument. Labels are stored as one element set per label
//! value, which makes a swap a handful of mask operations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, SubPoset};
use crate::set::ElemSet;

/// Size first, then lexicographic on member indices.
pub fn ideal_cmp(a: ElemSet, b: ElemSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

/// A strictly order-preserving labeling of the skew shape `nu / lambda`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncreasingTableau {
    lambda: ElemSet,
    /// `(value, cells)` sorted by value; every cell set is nonempty.
    classes: Vec<(u8, ElemSet)>,
}

impl IncreasingTableau {
    pub fn empty() -> Self {
        IncreasingTableau {
            lambda: ElemSet::EMPTY,
            classes: Vec::new(),
        }
    }

    /// Builds and validates a tableau from a label vector indexed by element
    /// (0 meaning "not in the domain").
    pub fn new(p: &Poset, nu: ElemSet, lambda: ElemSet, labels: &[u8]) -> Result<Self> {
        let mut by_value: BTreeMap<u8, ElemSet> = BTreeMap::new();
        let mut dom = ElemSet::EMPTY;
        for (i, &v) in labels.iter().enumerate() {
            if v != 0 {
                if i >= p.len() {
                    return Err(Error::InvalidTableau(format!(
                        "label on nonexistent element {i}"
                    )));
                }
                by_value.entry(v).or_default().insert(i);
                dom.insert(i);
            }
        }
        if dom != nu.difference(lambda) || !lambda.is_subset(nu) {
            return Err(Error::InvalidTableau(
                "labeled cells must be exactly nu \\ lambda".into(),
            ));
        }
        let t = IncreasingTableau {
            lambda,
            classes: by_value.into_iter().collect(),
        };
        t.validate(p)?;
        Ok(t)
    }

    pub(crate) fn from_classes(lambda: ElemSet, classes: Vec<(u8, ElemSet)>) -> Self {
        IncreasingTableau { lambda, classes }
    }

    /// Checks the shape and strict increase along every cover in the domain
    /// (the domain of a skew shape is convex, so covers suffice).
    pub fn validate(&self, p: &Poset) -> Result<()> {
        let nu = self.nu();
        if !nu.is_subset(p.all()) {
            return Err(Error::InvalidTableau("cells outside the poset".into()));
        }
        if !p.is_ideal(self.lambda) || !p.is_ideal(nu) {
            return Err(Error::InvalidTableau(
                "nu and lambda must be order ideals".into(),
            ));
        }
        let labels = self.label_vec(p.len());
        for x in self.domain().iter() {
            for y in p.upper_covers(x).intersection(self.domain()).iter() {
                if labels[x] >= labels[y] {
                    return Err(Error::InvalidTableau(format!(
                        "{} < {} but labels {} >= {}",
                        p.name_of(x),
                        p.name_of(y),
                        labels[x],
                        labels[y]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lambda(&self) -> ElemSet {
        self.lambda
    }

    pub fn domain(&self) -> ElemSet {
        self.classes
            .iter()
            .fold(ElemSet::EMPTY, |acc, &(_, s)| acc.union(s))
    }

    pub fn nu(&self) -> ElemSet {
        self.lambda.union(self.domain())
    }

    pub fn classes(&self) -> &[(u8, ElemSet)] {
        &self.classes
    }

    pub fn label(&self, x: usize) -> Option<u8> {
        self.classes
            .iter()
            .find(|(_, s)| s.contains(x))
            .map(|&(v, _)| v)
    }

    /// Labels indexed by element, 0 outside the domain.
    pub fn label_vec(&self, n: usize) -> Vec<u8> {
        let mut out = vec![0u8; n];
        for &(v, s) in &self.classes {
            for x in s.iter() {
                out[x] = v;
            }
        }
        out
    }

    /// Distinct labels in increasing order.
    pub fn range(&self) -> Vec<u8> {
        self.classes.iter().map(|&(v, _)| v).collect()
    }

    pub fn is_straight(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Labels form a bijection onto `1..=|domain|`.
    pub fn is_standard(&self) -> bool {
        self.classes
            .iter()
            .enumerate()
            .all(|(i, &(v, s))| v as usize == i + 1 && s.len() == 1)
    }

    /// Relabels through the order-preserving map of the range onto
    /// `1..=r`, returning the standardized tableau and the original range.
    pub fn standardize(&self) -> (IncreasingTableau, Vec<u8>) {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, &(_, s))| (i as u8 + 1, s))
            .collect();
        (
            IncreasingTableau {
                lambda: self.lambda,
                classes,
            },
            self.range(),
        )
    }

    /// Replaces label `i + 1` by `values[i]`; `values` must be increasing.
    pub fn destandardize(&self, values: &[u8]) -> IncreasingTableau {
        let classes = self
            .classes
            .iter()
            .map(|&(v, s)| (values[v as usize - 1], s))
            .collect();
        IncreasingTableau {
            lambda: self.lambda,
            classes,
        }
    }

    /// Restriction to an induced subposet: domain and lambda intersected
    /// with its members.
    pub fn restrict(&self, sub: &SubPoset) -> IncreasingTableau {
        let classes = self
            .classes
            .iter()
            .map(|&(v, s)| (v, sub.project(s)))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        IncreasingTableau {
            lambda: sub.project(self.lambda),
            classes,
        }
    }

    /// Same cells, same poset, only the cells of `q` kept (lambda untouched).
    pub fn restrict_cells(&self, q: ElemSet) -> IncreasingTableau {
        let classes = self
            .classes
            .iter()
            .map(|&(v, s)| (v, s.intersection(q)))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        IncreasingTableau {
            lambda: self.lambda,
            classes,
        }
    }

    /// Moves a tableau on a subposet back into the parent's indexing.
    pub fn lift(&self, sub: &SubPoset) -> IncreasingTableau {
        let classes = self
            .classes
            .iter()
            .map(|&(v, s)| (v, sub.lift(s)))
            .collect();
        IncreasingTableau {
            lambda: sub.lift(self.lambda),
            classes,
        }
    }

    pub fn to_json(&self, p: &Poset) -> TableauJson {
        TableauJson {
            nu: p.names_of(self.nu()),
            lambda: p.names_of(self.lambda),
            labels: self
                .classes
                .iter()
                .flat_map(|&(v, s)| s.iter().map(move |x| (p.name_of(x).to_string(), v as i64)))
                .collect(),
        }
    }

    pub fn from_json(p: &Poset, j: &TableauJson) -> Result<Self> {
        let nu = p.set_of(&j.nu)?;
        let lambda = p.set_of(&j.lambda)?;
        let mut labels = vec![0u8; p.len()];
        for (name, &v) in &j.labels {
            if !(1..=255).contains(&v) {
                return Err(Error::LabelOutOfRange(v));
            }
            labels[p.index_of(name)?] = v as u8;
        }
        IncreasingTableau::new(p, nu, lambda, &labels)
    }

    /// Compact rendering `name=label` in element order, with `lambda` cells
    /// shown as `name=*`.
    pub fn display(&self, p: &Poset) -> String {
        let labels = self.label_vec(p.len());
        let mut parts = Vec::new();
        for x in self.nu().iter() {
            if self.lambda.contains(x) {
                parts.push(format!("{}=*", p.name_of(x)));
            } else {
                parts.push(format!("{}={}", p.name_of(x), labels[x]));
            }
        }
        format!("{{{}}}", parts.join(", "))
    }
}

impl Ord for IncreasingTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        ideal_cmp(self.nu(), other.nu())
            .then_with(|| ideal_cmp(self.lambda, other.lambda))
            .then_with(|| {
                let n = 64 - (self.nu().0 | other.nu().0).leading_zeros() as usize;
                self.label_vec(n).cmp(&other.label_vec(n))
            })
    }
}

impl PartialOrd for IncreasingTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for IncreasingTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IncreasingTableau")
            .field("lambda", &self.lambda)
            .field("classes", &self.classes)
            .finish()
    }
}

/// Tableau JSON: `{"nu": [..], "lambda": [..], "labels": {element: label}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub nu: Vec<String>,
    pub lambda: Vec<String>,
    pub labels: BTreeMap<String, i64>,
}

/// A skew tableau in which the cells of `dots` carry the symbol `•`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DottedTableau {
    lambda: ElemSet,
    dots: ElemSet,
    classes: Vec<(u8, ElemSet)>,
}

impl DottedTableau {
    pub fn new(p: &Poset, lambda: ElemSet, dots: ElemSet, labels: &[u8]) -> Result<Self> {
        let mut by_value: BTreeMap<u8, ElemSet> = BTreeMap::new();
        for (i, &v) in labels.iter().enumerate() {
            if v != 0 {
                by_value.entry(v).or_default().insert(i);
            }
        }
        let t = DottedTableau {
            lambda,
            dots,
            classes: by_value.into_iter().collect(),
        };
        t.validate(p)?;
        Ok(t)
    }

    pub fn lambda(&self) -> ElemSet {
        self.lambda
    }

    pub fn dots(&self) -> ElemSet {
        self.dots
    }

    pub fn numeric(&self) -> ElemSet {
        self.classes
            .iter()
            .fold(ElemSet::EMPTY, |acc, &(_, s)| acc.union(s))
    }

    pub fn nu(&self) -> ElemSet {
        self.lambda.union(self.dots).union(self.numeric())
    }

    pub fn label(&self, x: usize) -> Option<u8> {
        self.classes
            .iter()
            .find(|(_, s)| s.contains(x))
            .map(|&(v, _)| v)
    }

    pub fn label_vec(&self, n: usize) -> Vec<u8> {
        let mut out = vec![0u8; n];
        for &(v, s) in &self.classes {
            for x in s.iter() {
                out[x] = v;
            }
        }
        out
    }

    /// The shape invariants plus the existence of a common value for the
    /// dots: dots form an antichain, numeric labels increase, and every
    /// label below a dot is smaller than every label above one.
    pub fn validate(&self, p: &Poset) -> Result<()> {
        let numeric = self.numeric();
        if numeric.intersects(self.dots) || self.lambda.intersects(self.dots.union(numeric)) {
            return Err(Error::InvalidDotted(
                "cells carry more than one kind of entry".into(),
            ));
        }
        if !p.is_ideal(self.lambda) || !p.is_ideal(self.nu()) || !self.nu().is_subset(p.all()) {
            return Err(Error::InvalidDotted(
                "nu and lambda must be order ideals".into(),
            ));
        }
        if !p.is_antichain(self.dots) {
            return Err(Error::InvalidDotted(
                "dotted cells are not an antichain".into(),
            ));
        }
        let labels = self.label_vec(p.len());
        for x in numeric.iter() {
            for y in p.upper_covers(x).intersection(numeric).iter() {
                if labels[x] >= labels[y] {
                    return Err(Error::InvalidDotted(format!(
                        "labels do not increase from {} to {}",
                        p.name_of(x),
                        p.name_of(y)
                    )));
                }
            }
        }
        let mut below = ElemSet::EMPTY;
        let mut above = ElemSet::EMPTY;
        for d in self.dots.iter() {
            below = below.union(p.strictly_below(d));
            above = above.union(p.strictly_above(d));
        }
        let hi = below.intersection(numeric).iter().map(|x| labels[x]).max();
        let lo = above.intersection(numeric).iter().map(|x| labels[x]).min();
        if let (Some(hi), Some(lo)) = (hi, lo) {
            if hi >= lo {
                return Err(Error::InvalidDotted(format!(
                    "no value fits the dots between {hi} and {lo}"
                )));
            }
        }
        Ok(())
    }

    /// Exchanges `•` and `n`: a dot takes `n` when one of its upper covers
    /// carries `n`, and a cell carrying `n` becomes a dot when one of its
    /// lower covers is dotted, simultaneously.
    pub fn swap(&self, p: &Poset, n: u8) -> Result<DottedTableau> {
        let out = self.swap_unchecked(p, n);
        out.validate(p)?;
        Ok(out)
    }

    pub fn swap_unchecked(&self, p: &Poset, n: u8) -> DottedTableau {
        let mut out = self.clone();
        let Ok(pos) = out.classes.binary_search_by_key(&n, |&(v, _)| v) else {
            return out;
        };
        let cells = out.classes[pos].1;
        let (gain, lose) = swap_masks(p, self.dots, cells);
        out.classes[pos].1 = cells.difference(lose).union(gain);
        out.dots = self.dots.difference(gain).union(lose);
        if out.classes[pos].1.is_empty() {
            out.classes.remove(pos);
        }
        out
    }

    /// Drops the dots, keeping `lambda`; the numeric cells must fill a skew
    /// shape over it.
    pub fn remove_dots(&self, p: &Poset) -> Result<IncreasingTableau> {
        let nu = self.lambda.union(self.numeric());
        if !p.is_ideal(nu) {
            return Err(Error::InvalidDotted(
                "numeric cells do not form a skew shape".into(),
            ));
        }
        Ok(IncreasingTableau::from_classes(
            self.lambda,
            self.classes.clone(),
        ))
    }
}

/// The dots that receive the value and the cells that become dots.
#[inline]
fn swap_masks(p: &Poset, dots: ElemSet, cells: ElemSet) -> (ElemSet, ElemSet) {
    let mut gain = ElemSet::EMPTY;
    for d in dots.iter() {
        if p.upper_covers(d).intersects(cells) {
            gain.insert(d);
        }
    }
    let mut lose = ElemSet::EMPTY;
    for c in cells.iter() {
        if p.lower_covers(c).intersects(dots) {
            lose.insert(c);
        }
    }
    (gain, lose)
}

/// Dots the inner corners in `gamma`.
pub fn add_dots(p: &Poset, t: &IncreasingTableau, gamma: ElemSet) -> Result<DottedTableau> {
    check_gamma(p, t, gamma)?;
    Ok(DottedTableau {
        lambda: t.lambda.difference(gamma),
        dots: gamma,
        classes: t.classes.clone(),
    })
}

fn check_gamma(p: &Poset, t: &IncreasingTableau, gamma: ElemSet) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::InvalidCorners("no corners given".into()));
    }
    let corners = p.maximal_in(t.lambda);
    if !gamma.is_subset(corners) {
        return Err(Error::InvalidCorners(format!(
            "{:?} are not inner corners",
            p.names_of(gamma.difference(corners))
        )));
    }
    Ok(())
}

/// `RemoveDots ∘ Swap_max ∘ ... ∘ Swap_1 ∘ AddDots_gamma`, going through the
/// checked primitives.
pub fn slide_checked(
    p: &Poset,
    t: &IncreasingTableau,
    gamma: ElemSet,
) -> Result<IncreasingTableau> {
    let mut d = add_dots(p, t, gamma)?;
    let max = t.classes.last().map_or(0, |&(v, _)| v);
    for n in 1..=max {
        d = d.swap(p, n)?;
    }
    d.remove_dots(p)
}

/// The same composite, skipping swaps with absent values and the
/// intermediate invariant checks.
pub fn slide(p: &Poset, t: &IncreasingTableau, gamma: ElemSet) -> Result<IncreasingTableau> {
    check_gamma(p, t, gamma)?;
    Ok(slide_unchecked(p, t, gamma))
}

pub(crate) fn slide_unchecked(
    p: &Poset,
    t: &IncreasingTableau,
    gamma: ElemSet,
) -> IncreasingTableau {
    let mut dots = gamma;
    let mut classes = Vec::with_capacity(t.classes.len());
    for &(v, cells) in &t.classes {
        let (gain, lose) = swap_masks(p, dots, cells);
        let cells = cells.difference(lose).union(gain);
        dots = dots.difference(gain).union(lose);
        if !cells.is_empty() {
            classes.push((v, cells));
        }
    }
    let out = IncreasingTableau {
        lambda: t.lambda.difference(gamma),
        classes,
    };
    debug_assert!(p.is_ideal(out.nu()));
    out
}

pub fn slide_sequence(
    p: &Poset,
    t: &IncreasingTableau,
    gammas: &[ElemSet],
) -> Result<IncreasingTableau> {
    let mut cur = t.clone();
    for &g in gammas {
        cur = slide(p, &cur, g)?;
    }
    Ok(cur)
}

/// `M_lambda`: each cell labeled by the length of the longest chain ending
/// there.
pub fn minimal_tableau(p: &Poset, lambda: ElemSet) -> IncreasingTableau {
    let mut by_value: BTreeMap<u8, ElemSet> = BTreeMap::new();
    for x in lambda.iter() {
        by_value.entry(p.height(x) as u8 + 1).or_default().insert(x);
    }
    IncreasingTableau {
        lambda: ElemSet::EMPTY,
        classes: by_value.into_iter().collect(),
    }
}

/// `(T -> U)|_F` as a tableau on the subposet `f`: the cells of `f` labeled
/// at least `U(min f)`, or the empty tableau when `u` leaves `min f` empty
/// (then `u` is empty on all of `f`). Everything of `f` below those cells is
/// skewed out.
pub fn corresponding_tableau(
    p: &Poset,
    f: &SubPoset,
    t: &IncreasingTableau,
    u: &IncreasingTableau,
) -> Result<IncreasingTableau> {
    if !p.is_funnel(f.members()) {
        return Err(Error::NotAFunnel(p.names_of(f.members())));
    }
    let min = p.minimal_in(f.members()).iter().next().unwrap();
    let Some(threshold) = u.label(min) else {
        return Ok(IncreasingTableau::empty());
    };
    let mut classes = Vec::new();
    let mut skewed = t.lambda.intersection(f.members());
    for &(v, s) in &t.classes {
        let inside = s.intersection(f.members());
        if inside.is_empty() {
            continue;
        }
        if v >= threshold {
            classes.push((v, f.project(inside)));
        } else {
            skewed = skewed.union(inside);
        }
    }
    Ok(IncreasingTableau {
        lambda: f.project(skewed),
        classes,
    })
}
