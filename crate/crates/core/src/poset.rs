//! Finite connected posets stored by their Hasse diagram, plus the order
//! ideal, skew shape and slant-sum machinery everything else builds on.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::set::{ElemSet, MAX_ELEMENTS};

/// A finite, nonempty, connected poset.
///
/// Elements are opaque names; internally they are indexed `0..len()` in the
/// order they were given, and that order is the canonical order used for all
/// set-valued output.
#[derive(Clone)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    above: Vec<ElemSet>,
    below: Vec<ElemSet>,
    height: Vec<usize>,
    topo: Vec<usize>,
}

impl Poset {
    /// Builds a poset from an arbitrary (possibly redundant) list of
    /// relations `lower < upper`. The relations are closed transitively and
    /// reduced to the Hasse diagram.
    pub fn new<S, I, P>(name: &str, elements: I, relations: P) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = S>,
        P: IntoIterator<Item = (S, S)>,
    {
        let names: Vec<String> = elements
            .into_iter()
            .map(|s| s.as_ref().to_string())
            .collect();
        if names.is_empty() {
            return Err(Error::EmptyPoset);
        }
        if names.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut rel = Vec::new();
        for (a, b) in relations {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(Error::Cycle(names[a].clone()));
            }
            rel.push((a, b));
        }
        Self::from_index_relations(name.to_string(), names, index, &rel)
    }

    fn from_index_relations(
        name: String,
        names: Vec<String>,
        index: HashMap<String, usize>,
        rel: &[(usize, usize)],
    ) -> Result<Self> {
        let n = names.len();
        let mut succ = vec![ElemSet::EMPTY; n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in rel {
            if !succ[a].contains(b) {
                succ[a].insert(b);
                indeg[b] += 1;
            }
        }
        // Kahn's algorithm; smallest index first keeps the order deterministic.
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            topo.push(v);
            for w in succ[v].iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::Cycle(names[stuck].clone()));
        }
        let mut below = vec![ElemSet::EMPTY; n];
        for &v in &topo {
            for w in succ[v].iter() {
                below[w] = below[w].union(below[v]).with(v);
            }
        }
        let mut above = vec![ElemSet::EMPTY; n];
        for (v, b) in below.iter().enumerate() {
            for u in b.iter() {
                above[u].insert(v);
            }
        }
        let mut up = vec![ElemSet::EMPTY; n];
        let mut down = vec![ElemSet::EMPTY; n];
        for b in 0..n {
            for a in below[b].iter() {
                if !above[a].intersects(below[b]) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        let mut height = vec![0usize; n];
        for &v in &topo {
            height[v] = down[v].iter().map(|u| height[u] + 1).max().unwrap_or(0);
        }
        let poset = Poset {
            name,
            names,
            index,
            up,
            down,
            above,
            below,
            height,
            topo,
        };
        poset.check_connected()?;
        Ok(poset)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.len();
        let mut seen = ElemSet::singleton(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for w in self.up[v].union(self.down[v]).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        match (0..n).find(|&i| !seen.contains(i)) {
            Some(i) => Err(Error::Disconnected(
                self.names[0].clone(),
                self.names[i].clone(),
            )),
            None => Ok(()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[String] {
        &self.names
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn names_of(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Elements covering `i`.
    #[inline]
    pub fn upper_covers(&self, i: usize) -> ElemSet {
        self.up[i]
    }

    /// Elements covered by `i`.
    #[inline]
    pub fn lower_covers(&self, i: usize) -> ElemSet {
        self.down[i]
    }

    #[inline]
    pub fn strictly_above(&self, i: usize) -> ElemSet {
        self.above[i]
    }

    #[inline]
    pub fn strictly_below(&self, i: usize) -> ElemSet {
        self.below[i]
    }

    /// Length (number of covers) of the longest chain ending at `i`.
    #[inline]
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    /// A linear extension of the poset.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    #[inline]
    pub fn leq_idx(&self, x: usize, y: usize) -> bool {
        x == y || self.below[y].contains(x)
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    /// Cover pairs `(lower, upper)` sorted by index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                out.push((a, b));
            }
        }
        out
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below[i].is_empty() && self.above[i].len() + 1 == self.len())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.above[i].is_empty() && self.below[i].len() + 1 == self.len())
    }

    /// Minimal elements of `set` (with respect to the induced order).
    pub fn minimal_in(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&i| !self.below[i].intersects(set))
            .collect()
    }

    /// Maximal elements of `set`.
    pub fn maximal_in(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&i| !self.above[i].intersects(set))
            .collect()
    }

    pub fn is_ideal(&self, set: ElemSet) -> bool {
        set.iter().all(|i| self.below[i].is_subset(set))
    }

    pub fn is_filter(&self, set: ElemSet) -> bool {
        set.iter().all(|i| self.above[i].is_subset(set))
    }

    pub fn is_antichain(&self, set: ElemSet) -> bool {
        set.iter().all(|i| !self.below[i].intersects(set))
    }

    /// Checks that `set` is totally ordered.
    pub fn is_chain_set(&self, set: ElemSet) -> bool {
        set.iter().all(|i| {
            set.difference(self.below[i]).difference(self.above[i]) == ElemSet::singleton(i)
        })
    }

    /// `{x : x <= p}`.
    pub fn principal_ideal(&self, p: usize) -> ElemSet {
        self.below[p].with(p)
    }

    pub fn principal_filter(&self, p: usize) -> ElemSet {
        self.above[p].with(p)
    }

    /// The interval `[x, z]`, empty unless `x <= z`.
    pub fn interval(&self, x: usize, z: usize) -> ElemSet {
        if !self.leq_idx(x, z) {
            return ElemSet::EMPTY;
        }
        self.principal_filter(x)
            .intersection(self.principal_ideal(z))
    }

    pub fn ideal(&self, members: ElemSet) -> Result<OrderIdeal> {
        if self.is_ideal(members) {
            Ok(OrderIdeal(members))
        } else {
            Err(Error::NotAnIdeal(format!("{:?}", self.names_of(members))))
        }
    }

    pub fn ideal_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<OrderIdeal> {
        self.ideal(self.set_of(names)?)
    }

    /// Every order ideal (including the empty one) exactly once, sorted by
    /// size and then lexicographically by member indices.
    pub fn order_ideals(&self) -> Vec<OrderIdeal> {
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![ElemSet::EMPTY];
        seen.insert(ElemSet::EMPTY);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for ideal in frontier {
                for x in self.all().difference(ideal).iter() {
                    if self.down[x].is_subset(ideal) {
                        let grown = ideal.with(x);
                        if seen.insert(grown) {
                            next.push(grown);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<OrderIdeal> = seen.into_iter().map(OrderIdeal).collect();
        out.sort();
        out
    }

    /// All skew shapes `nu / lambda` with `lambda ⊆ nu` ideals.
    pub fn skew_shapes(&self) -> Vec<SkewShape> {
        let ideals = self.order_ideals();
        let mut out = Vec::new();
        for lambda in &ideals {
            for nu in &ideals {
                if lambda.0.is_subset(nu.0) {
                    out.push(SkewShape {
                        nu: nu.0,
                        lambda: lambda.0,
                    });
                }
            }
        }
        out
    }

    /// Maximal elements of `lambda`.
    pub fn inner_corners(&self, shape: &SkewShape) -> ElemSet {
        self.maximal_in(shape.lambda)
    }

    pub fn is_tree(&self) -> bool {
        self.minimum().is_some()
            && (0..self.len()).all(|i| self.below[i].is_empty() || self.down[i].len() == 1)
    }

    pub fn is_chain(&self) -> bool {
        self.is_chain_set(self.all())
    }

    /// Repeatedly adjoins the minimum of what is left, while one exists.
    pub fn bottom_chain(&self) -> OrderIdeal {
        let mut chain = ElemSet::EMPTY;
        loop {
            let rest = self.all().difference(chain);
            let mins = self.minimal_in(rest);
            // a unique minimal element of a finite set is its minimum
            if rest.is_empty() || mins.len() != 1 {
                return OrderIdeal(chain);
            }
            chain = chain.union(mins);
        }
    }

    /// Elements whose principal ideal is a chain: the largest tree-shaped
    /// order ideal when the poset has a minimum.
    pub fn bottom_tree(&self) -> OrderIdeal {
        if self.minimum().is_none() {
            return OrderIdeal(ElemSet::EMPTY);
        }
        OrderIdeal(
            (0..self.len())
                .filter(|&x| self.is_chain_set(self.principal_ideal(x)))
                .collect(),
        )
    }

    /// An order filter with a minimum such that every element outside it
    /// lying below some member lies below the minimum.
    pub fn is_funnel(&self, set: ElemSet) -> bool {
        if set.is_empty() || !self.is_filter(set) {
            return false;
        }
        let mins = self.minimal_in(set);
        if mins.len() != 1 {
            return false;
        }
        let min = mins.iter().next().unwrap();
        let under: ElemSet = set
            .iter()
            .fold(ElemSet::EMPTY, |acc, f| acc.union(self.below[f]));
        under.difference(set).is_subset(self.below[min])
    }

    /// Copy of the poset with every element name prefixed.
    pub fn renamed(&self, prefix: &str) -> Poset {
        let names: Vec<String> = self.names.iter().map(|n| format!("{prefix}{n}")).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Poset {
            names,
            index,
            ..self.clone()
        }
    }

    /// The induced subposet on `set`, which must be nonempty and connected.
    pub fn induced(&self, name: &str, set: ElemSet) -> Result<Poset> {
        let keep: Vec<usize> = set.iter().collect();
        let names: Vec<String> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut rel = Vec::new();
        for &a in &keep {
            for &b in &keep {
                if self.below[b].contains(a) {
                    rel.push((self.names[a].as_str(), self.names[b].as_str()));
                }
            }
        }
        Poset::new(name, names.iter().map(String::as_str), rel)
    }

    /// The slant sum: `q` glued above `p` by the single new cover
    /// `(p, min q)`.
    pub fn slant_sum(&self, p: &str, q: &Poset) -> Result<Poset> {
        self.iterated_slant_sum(&[(p, q)])
    }

    /// Slant-sums every attached poset onto its point. Attachment order does
    /// not affect the resulting order relation.
    pub fn iterated_slant_sum<S: AsRef<str>>(&self, attachments: &[(S, &Poset)]) -> Result<Poset> {
        let mut names = self.names.clone();
        let mut covers: Vec<(String, String)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        let mut taken: std::collections::HashSet<String> = names.iter().cloned().collect();
        for (p, q) in attachments {
            let p = p.as_ref();
            self.index_of(p)?;
            let min = q
                .minimum()
                .ok_or_else(|| Error::NoMinimum(q.name.clone()))?;
            for n in &q.names {
                if !taken.insert(n.clone()) {
                    return Err(Error::NameCollision(n.clone()));
                }
                names.push(n.clone());
            }
            covers.extend(
                q.covers()
                    .into_iter()
                    .map(|(a, b)| (q.names[a].clone(), q.names[b].clone())),
            );
            covers.push((p.to_string(), q.names[min].clone()));
        }
        let name = if attachments.is_empty() {
            self.name.clone()
        } else {
            format!("{}+slant", self.name)
        };
        Poset::new(
            &name,
            names.iter().map(String::as_str),
            covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    /// Graphviz rendering with elements ranked by height.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "digraph {} {{\n  rankdir=BT;\n",
            dot_id(&self.name)
        ));
        for i in 0..self.len() {
            out.push_str(&format!("  {};\n", dot_id(&self.names[i])));
        }
        let max_h = self.height.iter().copied().max().unwrap_or(0);
        for h in 0..=max_h {
            let row: Vec<String> = (0..self.len())
                .filter(|&i| self.height[i] == h)
                .map(|i| dot_id(&self.names[i]))
                .collect();
            out.push_str(&format!("  {{ rank=same; {}; }}\n", row.join("; ")));
        }
        for (a, b) in self.covers() {
            out.push_str(&format!(
                "  {} -> {};\n",
                dot_id(&self.names[a]),
                dot_id(&self.names[b])
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// An induced subposet together with its embedding into the parent. Member
/// `i` of the subposet is the `i`-th element (in index order) of the set it
/// was built from.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub poset: Poset,
    members: ElemSet,
    to_parent: Vec<usize>,
}

impl SubPoset {
    pub fn new(parent: &Poset, members: ElemSet) -> Result<Self> {
        let name = format!("{}|{}", parent.name, members.len());
        let poset = parent.induced(&name, members)?;
        Ok(SubPoset {
            poset,
            members,
            to_parent: members.iter().collect(),
        })
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn to_parent(&self, i: usize) -> usize {
        self.to_parent[i]
    }

    /// Parent-indexed set to subposet-indexed set, dropping non-members.
    pub fn project(&self, set: ElemSet) -> ElemSet {
        self.to_parent
            .iter()
            .enumerate()
            .filter(|&(_, &j)| set.contains(j))
            .map(|(i, _)| i)
            .collect()
    }

    /// Subposet-indexed set to parent-indexed set.
    pub fn lift(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|i| self.to_parent[i]).collect()
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Labeled equality: same element names and the same cover relation,
/// regardless of element order.
impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let cover_names = |p: &Poset| -> BTreeSet<(String, String)> {
            p.covers()
                .into_iter()
                .map(|(a, b)| (p.names[a].clone(), p.names[b].clone()))
                .collect()
        };
        self.names.iter().all(|n| other.index.contains_key(n))
            && cover_names(self) == cover_names(other)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.names[a].as_str(), self.names[b].as_str()))
            .collect();
        f.debug_struct("Poset")
            .field("name", &self.name)
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

/// A downward-closed set of elements.
///
/// Ordered by size, then lexicographically by member indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OrderIdeal(pub(crate) ElemSet);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal(ElemSet::EMPTY);

    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn names(self, poset: &Poset) -> Vec<String> {
        poset.names_of(self.0)
    }
}

impl Ord for OrderIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for OrderIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `nu / lambda` for order ideals `lambda ⊆ nu`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SkewShape {
    pub nu: ElemSet,
    pub lambda: ElemSet,
}

impl SkewShape {
    pub fn new(poset: &Poset, nu: ElemSet, lambda: ElemSet) -> Result<Self> {
        poset.ideal(nu)?;
        poset.ideal(lambda)?;
        if !lambda.is_subset(nu) {
            return Err(Error::NotNested);
        }
        Ok(SkewShape { nu, lambda })
    }

    pub fn straight(nu: OrderIdeal) -> Self {
        SkewShape {
            nu: nu.0,
            lambda: ElemSet::EMPTY,
        }
    }

    /// The cells `nu \ lambda`.
    pub fn cells(&self) -> ElemSet {
        self.nu.difference(self.lambda)
    }

    pub fn is_straight(&self) -> bool {
        self.lambda.is_empty()
    }
}
