//! Exhaustive generation of increasing tableaux.

use crate::poset::{Poset, SkewShape};
use crate::set::ElemSet;
use crate::tableau::IncreasingTableau;

/// Calls `f` on every increasing filling of `shape` with labels drawn from
/// the strictly increasing `alphabet`. With `surjective`, only fillings
/// using every letter are produced.
pub fn for_each_filling<F: FnMut(IncreasingTableau)>(
    p: &Poset,
    shape: SkewShape,
    alphabet: &[u8],
    surjective: bool,
    mut f: F,
) {
    debug_assert!(alphabet.windows(2).all(|w| w[0] < w[1]));
    let cells_set = shape.cells();
    let cells: Vec<usize> = p
        .topological_order()
        .iter()
        .copied()
        .filter(|&x| cells_set.contains(x))
        .collect();
    if surjective && cells.len() < alphabet.len() {
        return;
    }
    // longest chain strictly above each cell inside the shape, to prune
    // labels that leave no room for the cells above
    let mut above = vec![0usize; p.len()];
    for &x in cells.iter().rev() {
        above[x] = p
            .upper_covers(x)
            .intersection(cells_set)
            .iter()
            .map(|y| above[y] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut st = State {
        p,
        cells: &cells,
        cells_set,
        alphabet,
        surjective,
        above,
        slot: vec![usize::MAX; p.len()],
        used: vec![0; alphabet.len()],
        distinct: 0,
    };
    st.go(0, &mut f, shape.lambda);
}

struct State<'a> {
    p: &'a Poset,
    cells: &'a [usize],
    cells_set: ElemSet,
    alphabet: &'a [u8],
    surjective: bool,
    above: Vec<usize>,
    /// alphabet position assigned to each cell
    slot: Vec<usize>,
    used: Vec<u32>,
    distinct: usize,
}

impl State<'_> {
    fn go<F: FnMut(IncreasingTableau)>(&mut self, i: usize, f: &mut F, lambda: ElemSet) {
        if i == self.cells.len() {
            if !self.surjective || self.distinct == self.alphabet.len() {
                let mut classes: Vec<(u8, ElemSet)> = Vec::new();
                for (k, &v) in self.alphabet.iter().enumerate() {
                    if self.used[k] > 0 {
                        let s: ElemSet = self
                            .cells
                            .iter()
                            .copied()
                            .filter(|&x| self.slot[x] == k)
                            .collect();
                        classes.push((v, s));
                    }
                }
                f(IncreasingTableau::from_classes(lambda, classes));
            }
            return;
        }
        let x = self.cells[i];
        let lo = self
            .p
            .lower_covers(x)
            .intersection(self.cells_set)
            .iter()
            .map(|y| self.slot[y] + 1)
            .max()
            .unwrap_or(0);
        let remaining = self.cells.len() - i - 1;
        for k in lo..self.alphabet.len() {
            if k + self.above[x] >= self.alphabet.len() {
                break;
            }
            let fresh = self.used[k] == 0;
            if self.surjective {
                let missing = self.alphabet.len() - self.distinct - usize::from(fresh);
                if missing > remaining {
                    continue;
                }
            }
            self.slot[x] = k;
            self.used[k] += 1;
            self.distinct += usize::from(fresh);
            self.go(i + 1, f, lambda);
            self.used[k] -= 1;
            self.distinct -= usize::from(fresh);
        }
        self.slot[x] = usize::MAX;
    }
}

pub fn fillings(
    p: &Poset,
    shape: SkewShape,
    alphabet: &[u8],
    surjective: bool,
) -> Vec<IncreasingTableau> {
    let mut out = Vec::new();
    for_each_filling(p, shape, alphabet, surjective, |t| out.push(t));
    out
}

/// Every skew tableau of every skew shape of `p` over `alphabet`, shapes in
/// canonical order.
pub fn all_skew_tableaux(p: &Poset, alphabet: &[u8], surjective: bool) -> Vec<IncreasingTableau> {
    p.skew_shapes()
        .into_iter()
        .flat_map(|s| fillings(p, s, alphabet, surjective))
        .collect()
}

/// Every straight-shape tableau of `p` over `alphabet`.
pub fn all_straight_tableaux(
    p: &Poset,
    alphabet: &[u8],
    surjective: bool,
) -> Vec<IncreasingTableau> {
    p.order_ideals()
        .into_iter()
        .flat_map(|nu| fillings(p, SkewShape::straight(nu), alphabet, surjective))
        .collect()
}
