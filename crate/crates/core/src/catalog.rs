//! Named poset families: the minuscule posets, chained double-tailed
//! diamonds and chains, each annotated with its acyclic nodes, and a builder
//! for slant-sum trees of them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rectangle,
    ShiftedStaircase,
    DoubleTailedDiamond,
    ChainedDtd,
    CayleyMoufang,
    Bat,
    Chain,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "rectangle" => Family::Rectangle,
            "shifted_staircase" | "staircase" => Family::ShiftedStaircase,
            "double_tailed_diamond" | "dtd" => Family::DoubleTailedDiamond,
            "chained_dtd" => Family::ChainedDtd,
            "cayley_moufang" => Family::CayleyMoufang,
            "bat" => Family::Bat,
            "chain" => Family::Chain,
            other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Rectangle => 2,
            Family::ShiftedStaircase | Family::DoubleTailedDiamond | Family::Chain => 1,
            Family::ChainedDtd => 3,
            Family::CayleyMoufang | Family::Bat => 0,
        }
    }

    pub fn is_minuscule(self) -> bool {
        !matches!(self, Family::ChainedDtd)
    }
}

/// A catalog poset together with the nodes at which further components may
/// be slant-summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogPoset {
    pub poset: Poset,
    pub family: Family,
    pub params: Vec<usize>,
    pub acyclic_nodes: BTreeSet<String>,
}

impl CatalogPoset {
    pub fn build(family: Family, params: &[usize]) -> Result<CatalogPoset> {
        if params.len() != family.arity() {
            return Err(Error::InvalidParameter(format!(
                "{family:?} takes {} parameter(s), got {}",
                family.arity(),
                params.len()
            )));
        }
        match family {
            Family::Rectangle => rectangle(params[0], params[1]),
            Family::ShiftedStaircase => shifted_staircase(params[0]),
            Family::DoubleTailedDiamond => dtd(params[0]),
            Family::ChainedDtd => chained_dtd(params[0], params[1], params[2]),
            Family::CayleyMoufang => Ok(cayley_moufang()),
            Family::Bat => Ok(bat()),
            Family::Chain => chain(params[0]),
        }
    }

    /// Prefixes every element name, keeping the acyclic-node annotation in
    /// sync.
    pub fn renamed(&self, prefix: &str) -> CatalogPoset {
        CatalogPoset {
            poset: self.poset.renamed(prefix),
            family: self.family,
            params: self.params.clone(),
            acyclic_nodes: self
                .acyclic_nodes
                .iter()
                .map(|a| format!("{prefix}{a}"))
                .collect(),
        }
    }
}

fn make(
    name: String,
    family: Family,
    params: Vec<usize>,
    els: Vec<String>,
    covers: Vec<(String, String)>,
    acyclic: &[String],
) -> CatalogPoset {
    let poset = Poset::new(
        &name,
        els.iter().map(String::as_str),
        covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .expect("catalog data is a valid poset");
    CatalogPoset {
        poset,
        family,
        params,
        acyclic_nodes: acyclic.iter().cloned().collect(),
    }
}

fn cell(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// The product of chains of sizes `m` and `n`, on cells `(i,j)`.
pub fn rectangle(m: usize, n: usize) -> Result<CatalogPoset> {
    need(m >= 1 && n >= 1, "rectangle needs m, n >= 1")?;
    need(m * n <= crate::set::MAX_ELEMENTS, "rectangle too large")?;
    let mut els = Vec::new();
    let mut covers = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            els.push(cell(i, j));
            if j < n {
                covers.push((cell(i, j), cell(i, j + 1)));
            }
            if i < m {
                covers.push((cell(i, j), cell(i + 1, j)));
            }
        }
    }
    let acyclic = [cell(1, n), cell(m, 1)];
    Ok(make(
        format!("rectangle({m},{n})"),
        Family::Rectangle,
        vec![m, n],
        els,
        covers,
        &acyclic,
    ))
}

/// Cells `(i,j)` with `i >= j` of the `n x n` square.
pub fn shifted_staircase(n: usize) -> Result<CatalogPoset> {
    need(n >= 1, "shifted staircase needs n >= 1")?;
    need(
        n * (n + 1) / 2 <= crate::set::MAX_ELEMENTS,
        "shifted staircase too large",
    )?;
    let mut els = Vec::new();
    let mut covers = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            els.push(cell(i, j));
            if i < n {
                covers.push((cell(i, j), cell(i + 1, j)));
            }
            if j < i {
                covers.push((cell(i, j), cell(i, j + 1)));
            }
        }
    }
    Ok(make(
        format!("shifted_staircase({n})"),
        Family::ShiftedStaircase,
        vec![n],
        els,
        covers,
        &[cell(n, 1)],
    ))
}

fn chain_names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// Two incomparable middles `l1`, `r1` with tails `b_{k-2} < ... < b1` below
/// and `t1 < ... < t_{k-2}` above.
pub fn dtd(k: usize) -> Result<CatalogPoset> {
    need(k >= 3, "double-tailed diamond needs k >= 3")?;
    need(
        2 * k - 2 <= crate::set::MAX_ELEMENTS,
        "double-tailed diamond too large",
    )?;
    let (els, covers) = dtd_data(k, 1, 1);
    let acyclic = ["l1".to_string(), "r1".to_string()];
    Ok(make(
        format!("dtd({k})"),
        Family::DoubleTailedDiamond,
        vec![k],
        els,
        covers,
        &acyclic,
    ))
}

fn dtd_data(k: usize, m: usize, p: usize) -> (Vec<String>, Vec<(String, String)>) {
    let tail = k - 2;
    let mut els: Vec<String> = chain_names("b", 1..=tail).into_iter().rev().collect();
    els.extend(chain_names("l", 1..=m));
    els.extend(chain_names("r", 1..=p));
    els.extend(chain_names("t", 1..=tail));
    let mut covers = Vec::new();
    let step = |prefix: &str, len: usize, covers: &mut Vec<(String, String)>| {
        for i in 1..len {
            covers.push((format!("{prefix}{i}"), format!("{prefix}{}", i + 1)));
        }
    };
    for i in 1..tail {
        covers.push((format!("b{}", i + 1), format!("b{i}")));
    }
    step("t", tail, &mut covers);
    step("l", m, &mut covers);
    step("r", p, &mut covers);
    for mid in ["l1", "r1"] {
        covers.push(("b1".to_string(), mid.to_string()));
        covers.push((mid.to_string(), "t1".to_string()));
    }
    (els, covers)
}

/// `D(n)` with its left middle extended to a chain `l1 < ... < lm` and its
/// right middle to `r1 < ... < rp`; `D(1,n,1) = D(n)`.
pub fn chained_dtd(m: usize, n: usize, p: usize) -> Result<CatalogPoset> {
    need(
        m >= 1 && p >= 1,
        "chained double-tailed diamond needs m, p >= 1",
    )?;
    need(n >= 3, "chained double-tailed diamond needs n >= 3")?;
    need(
        m + p + 2 * n - 4 <= crate::set::MAX_ELEMENTS,
        "chained double-tailed diamond too large",
    )?;
    let (els, covers) = dtd_data(n, m, p);
    let mut acyclic = vec!["l1".to_string(), "r1".to_string()];
    for (side, len) in [("l", m), ("r", p)] {
        if len >= 2 {
            acyclic.push(format!("{side}2"));
            acyclic.push(format!("{side}{len}"));
        }
    }
    Ok(make(
        format!("chained_dtd({m},{n},{p})"),
        Family::ChainedDtd,
        vec![m, n, p],
        els,
        covers,
        &acyclic,
    ))
}

/// `c1 < ... < cn`.
pub fn chain(n: usize) -> Result<CatalogPoset> {
    need(n >= 1, "chain needs n >= 1")?;
    need(n <= crate::set::MAX_ELEMENTS, "chain too large")?;
    let els = chain_names("c", 1..=n);
    let covers = (1..n)
        .map(|i| (format!("c{i}"), format!("c{}", i + 1)))
        .collect();
    let acyclic = ["c1".to_string(), format!("c{n}")];
    Ok(make(
        format!("chain({n})"),
        Family::Chain,
        vec![n],
        els,
        covers,
        &acyclic,
    ))
}

fn exceptional(
    name: &str,
    family: Family,
    chains: &[(&str, usize)],
    cross: &[(&str, &str)],
) -> CatalogPoset {
    let mut els = Vec::new();
    let mut covers = Vec::new();
    for &(prefix, len) in chains {
        els.extend(chain_names(prefix, 1..=len));
        covers.extend((1..len).map(|i| (format!("{prefix}{i}"), format!("{prefix}{}", i + 1))));
    }
    covers.extend(cross.iter().map(|&(a, b)| (a.to_string(), b.to_string())));
    make(name.to_string(), family, vec![], els, covers, &[])
}

/// The 16-element Cayley-Moufang swivel.
pub fn cayley_moufang() -> CatalogPoset {
    exceptional(
        "cayley_moufang",
        Family::CayleyMoufang,
        &[("a", 5), ("b", 3), ("c", 3), ("d", 5)],
        &[
            ("a3", "b1"),
            ("a4", "b2"),
            ("a5", "b3"),
            ("b2", "c1"),
            ("b3", "c2"),
            ("c1", "d1"),
            ("c2", "d2"),
            ("c3", "d3"),
        ],
    )
}

/// The 27-element bat.
pub fn bat() -> CatalogPoset {
    exceptional(
        "bat",
        Family::Bat,
        &[("a", 6), ("b", 3), ("c", 3), ("d", 5), ("e", 5), ("f", 5)],
        &[
            ("a4", "b1"),
            ("a5", "b2"),
            ("a6", "b3"),
            ("b2", "c1"),
            ("b3", "c2"),
            ("c1", "d1"),
            ("c2", "d2"),
            ("c3", "d3"),
            ("d1", "e1"),
            ("d2", "e2"),
            ("d3", "e3"),
            ("d4", "e4"),
            ("d5", "e5"),
            ("e4", "f1"),
            ("e5", "f2"),
        ],
    )
}

/// A component together with the subtrees slant-summed onto its nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlantTreeSpec {
    pub family: Family,
    #[serde(default)]
    pub params: Vec<usize>,
    /// Prepended to every element name of this component.
    #[serde(default)]
    pub prefix: String,
    #[serde(default)]
    pub children: Vec<Attachment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    /// Element of the parent component, without the parent's prefix.
    pub at: String,
    pub tree: SlantTreeSpec,
}

impl SlantTreeSpec {
    pub fn leaf(family: Family, params: &[usize], prefix: &str) -> Self {
        SlantTreeSpec {
            family,
            params: params.to_vec(),
            prefix: prefix.to_string(),
            children: vec![],
        }
    }

    pub fn attach(mut self, at: &str, tree: SlantTreeSpec) -> Self {
        self.children.push(Attachment {
            at: at.to_string(),
            tree,
        });
        self
    }
}

/// Builds the iterated slant sum described by `spec`. Attachment points
/// must be acyclic nodes of their component unless `allow_any_node` is set.
pub fn slant_sum_tree(spec: &SlantTreeSpec, allow_any_node: bool) -> Result<Poset> {
    let root = CatalogPoset::build(spec.family, &spec.params)?.renamed(&spec.prefix);
    let mut attachments: Vec<(String, Poset)> = Vec::new();
    for child in &spec.children {
        let at = format!("{}{}", spec.prefix, child.at);
        root.poset.index_of(&at)?;
        if !allow_any_node && !root.acyclic_nodes.contains(&at) {
            return Err(Error::NotAcyclic {
                component: root.poset.name().to_string(),
                node: child.at.clone(),
            });
        }
        attachments.push((at, slant_sum_tree(&child.tree, allow_any_node)?));
    }
    let refs: Vec<(&str, &Poset)> = attachments.iter().map(|(a, q)| (a.as_str(), q)).collect();
    root.poset.iterated_slant_sum(&refs)
}
