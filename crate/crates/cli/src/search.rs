//! Exhaustive searches for counterexamples to the URT-existence and
//! bottom-tree conjectures on a single d-complete poset.

use std::collections::BTreeSet;

use kjdt_core::enumerate::for_each_filling;
use kjdt_core::tableau::minimal_tableau;
use kjdt_core::{
    is_dcomplete, IncreasingTableau, Poset, PosetJson, Rectifier, TableauJson, UrtOracle,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Witnesses kept in a report; the total is always reported in `failures`.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    UrtExistence,
    BottomTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Counterexample,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tableau: TableauJson,
    /// Two rectifications of `tableau` that differ (on the bottom tree, for
    /// that target).
    pub rectifications: [TableauJson; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: Target,
    pub poset: PosetJson,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Largest label range searched, for the bottom-tree target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_bound: Option<usize>,
    /// Targets (URT search) or skew tableaux (bottom-tree search) examined.
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<Witness>,
}

impl SearchReport {
    fn new(target: Target, p: &Poset) -> Self {
        SearchReport {
            target,
            poset: PosetJson::from(p),
            status: Status::Verified,
            reason: None,
            label_bound: None,
            checked: 0,
            failures: 0,
            witnesses: vec![],
        }
    }

    fn skip_unless_dcomplete(target: Target, p: &Poset) -> Option<Self> {
        let rep = is_dcomplete(p);
        if rep.dcomplete {
            return None;
        }
        let v = &rep.violations[0];
        let mut r = SearchReport::new(target, p);
        r.status = Status::Skipped;
        r.reason = Some(format!("not d-complete: {}", v.message));
        Some(r)
    }

    /// Re-runs rectification on every witness and confirms it still fails.
    pub fn replay(&self) -> kjdt_core::Result<bool> {
        let p = self.poset.to_poset()?;
        let bottom = p.bottom_tree().members();
        for w in &self.witnesses {
            let t = IncreasingTableau::from_json(&p, &w.tableau)?;
            let rs = kjdt_core::rects(&p, &t).tableaux();
            let a = IncreasingTableau::from_json(&p, &w.rectifications[0])?;
            let b = IncreasingTableau::from_json(&p, &w.rectifications[1])?;
            if !rs.contains(&a) || !rs.contains(&b) || a == b {
                return Ok(false);
            }
            if self.target == Target::BottomTree
                && a.restrict_cells(bottom) == b.restrict_cells(bottom)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks that `M_lambda` is a URT for every order ideal `lambda`.
pub fn conjecture_urt(p: &Poset) -> kjdt_core::Result<SearchReport> {
    if let Some(r) = SearchReport::skip_unless_dcomplete(Target::UrtExistence, p) {
        return Ok(r);
    }
    let mut report = SearchReport::new(Target::UrtExistence, p);
    let oracle = UrtOracle::new(p);
    for lambda in p.order_ideals() {
        report.checked += 1;
        let m = minimal_tableau(p, lambda.members());
        if let Some(c) = oracle.is_urt(&m)?.counterexample {
            report.failures += 1;
            if report.witnesses.len() < MAX_WITNESSES {
                let rs = c.rectifications.tableaux();
                let other = rs
                    .iter()
                    .find(|u| **u != m)
                    .expect("two rectifications")
                    .clone();
                report.witnesses.push(Witness {
                    tableau: c.witness.to_json(p),
                    rectifications: [m.to_json(p), other.to_json(p)],
                });
            }
        }
    }
    if report.failures > 0 {
        report.status = Status::Counterexample;
    }
    Ok(report)
}

/// Checks that all rectifications of every skew tableau agree on the bottom
/// tree. Tableaux are searched up to strictly increasing relabeling, with
/// label ranges `1..=r` for `r <= bound` (default `|P|`, which is exhaustive
/// since no tableau has more distinct labels than cells).
pub fn conjecture_bottom_tree(p: &Poset, bound: Option<usize>) -> kjdt_core::Result<SearchReport> {
    if let Some(r) = SearchReport::skip_unless_dcomplete(Target::BottomTree, p) {
        return Ok(r);
    }
    let bound = bound.unwrap_or(p.len()).min(p.len()).min(u8::MAX as usize);
    let mut report = SearchReport::new(Target::BottomTree, p);
    report.label_bound = Some(bound);
    let bottom = p.bottom_tree().members();
    let rect = Rectifier::new(p);
    let shapes = p.skew_shapes();
    type Found = (IncreasingTableau, IncreasingTableau, IncreasingTableau);
    let (checked, failures): (u64, BTreeSet<Found>) = (1..=bound as u8)
        .flat_map(|r| shapes.iter().map(move |&s| (r, s)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(r, shape)| {
            let alphabet: Vec<u8> = (1..=r).collect();
            let mut n = 0u64;
            let mut bad = BTreeSet::new();
            for_each_filling(p, shape, &alphabet, true, |t| {
                n += 1;
                let rs = rect.rects(&t);
                if rs.len() < 2 {
                    return;
                }
                let first = rs[0].restrict_cells(bottom);
                if let Some(other) = rs[1..].iter().find(|u| u.restrict_cells(bottom) != first) {
                    bad.insert((t.clone(), rs[0].clone(), other.clone()));
                }
            });
            (n, bad)
        })
        .reduce(
            || (0, BTreeSet::new()),
            |(a, mut x), (b, y)| {
                x.extend(y);
                (a + b, x)
            },
        );
    report.checked = checked;
    report.failures = failures.len() as u64;
    for (t, a, b) in failures.into_iter().take(MAX_WITNESSES) {
        report.witnesses.push(Witness {
            tableau: t.to_json(p),
            rectifications: [a.to_json(p), b.to_json(p)],
        });
    }
    if report.failures > 0 {
        report.status = Status::Counterexample;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kjdt_core::catalog;

    #[test]
    fn rectangle_passes_both() {
        let p = catalog::rectangle(2, 3).unwrap().poset;
        assert_eq!(conjecture_urt(&p).unwrap().status, Status::Verified);
        let r = conjecture_bottom_tree(&catalog::rectangle(2, 2).unwrap().poset, Some(4)).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.label_bound, Some(4));
        assert!(r.checked > 0);
    }

    #[test]
    fn skips_non_dcomplete() {
        let p = Poset::new(
            "P",
            ["b", "l", "r", "t", "t1"],
            [("b", "l"), ("b", "r"), ("l", "t"), ("r", "t"), ("t", "t1")],
        )
        .unwrap();
        let r = conjecture_urt(&p).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.unwrap().contains("D0(4)"));
    }

    #[test]
    fn report_round_trips() {
        let p = catalog::dtd(4).unwrap().poset;
        let r = conjecture_bottom_tree(&p, None).unwrap();
        assert_eq!(r.status, Status::Verified);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<SearchReport>(&s).unwrap(), r);
        assert!(r.replay().unwrap());
    }
}
