//! The ring `K(P)`: the free abelian group on order ideals with the product
//! `lambda * mu = sum_nu t(lambda, mu; nu) nu`, where `t` counts skew
//! tableaux of shape `nu / lambda` rectifying to `M_mu`, signed by degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{OrderIdeal, Poset};
use crate::rectify::UrtOracle;
use crate::set::ElemSet;
use crate::tableau::minimal_tableau;

/// An integer combination of order ideals. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<OrderIdeal, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn basis(ideal: OrderIdeal) -> Self {
        FormalSum::zero().plus(ideal, 1)
    }

    pub fn plus(mut self, ideal: OrderIdeal, c: i64) -> Self {
        self.add_term(ideal, c);
        self
    }

    pub fn add_term(&mut self, ideal: OrderIdeal, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(ideal).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&ideal);
        }
    }

    pub fn add(&mut self, other: &FormalSum, scale: i64) {
        for (&i, &c) in &other.terms {
            self.add_term(i, c * scale);
        }
    }

    pub fn coefficient(&self, ideal: OrderIdeal) -> i64 {
        self.terms.get(&ideal).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (OrderIdeal, i64)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn display(&self, p: &Poset) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if k > 0 {
                s.push(' ');
            }
            if c.abs() != 1 {
                s.push_str(&format!("{}", c.abs()));
            }
            s.push_str(&format!("{{{}}}", i.names(p).join(",")));
        }
        s
    }
}

/// Structure constants of one poset. Queries check the URT premise for each
/// `mu` once and share one rectification memo.
pub struct KRing<'a> {
    oracle: UrtOracle<'a>,
    ideals: Vec<OrderIdeal>,
    verified: Mutex<HashMap<OrderIdeal, bool>>,
}

impl<'a> KRing<'a> {
    pub fn new(p: &'a Poset) -> Self {
        KRing {
            oracle: UrtOracle::new(p),
            ideals: p.order_ideals(),
            verified: Mutex::new(HashMap::new()),
        }
    }

    pub fn poset(&self) -> &Poset {
        self.oracle.poset()
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    fn require_urt(&self, mu: OrderIdeal) -> Result<()> {
        if let Some(&ok) = self.verified.lock().unwrap().get(&mu) {
            return if ok {
                Ok(())
            } else {
                Err(Error::NotUrt(mu.names(self.poset())))
            };
        }
        let ok = self
            .oracle
            .is_urt(&minimal_tableau(self.poset(), mu.members()))?
            .urt;
        self.verified.lock().unwrap().insert(mu, ok);
        if ok {
            Ok(())
        } else {
            Err(Error::NotUrt(mu.names(self.poset())))
        }
    }

    pub fn structure_constant(
        &self,
        lambda: OrderIdeal,
        mu: OrderIdeal,
        nu: OrderIdeal,
    ) -> Result<i64> {
        self.require_urt(mu)?;
        if !lambda.members().is_subset(nu.members()) {
            return Ok(0);
        }
        let m = minimal_tableau(self.poset(), mu.members());
        let count = self.oracle.unique_count(lambda.members(), nu.members(), &m) as i64;
        let degree = nu.len() as i64 - lambda.len() as i64 - mu.len() as i64;
        Ok(if degree.rem_euclid(2) == 0 {
            count
        } else {
            -count
        })
    }

    pub fn multiply(&self, lambda: OrderIdeal, mu: OrderIdeal) -> Result<FormalSum> {
        self.require_urt(mu)?;
        let mut out = FormalSum::zero();
        for &nu in &self.ideals {
            out.add_term(nu, self.structure_constant(lambda, mu, nu)?);
        }
        Ok(out)
    }

    /// The bilinear extension of `multiply`.
    pub fn multiply_sums(&self, a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::zero();
        for (l, c) in a.terms() {
            for (m, d) in b.terms() {
                out.add(&self.multiply(l, m)?, c * d);
            }
        }
        Ok(out)
    }

    pub fn full_table(&self) -> Result<StructureConstantTable> {
        for &mu in &self.ideals {
            self.require_urt(mu)?;
        }
        let pairs: Vec<(OrderIdeal, OrderIdeal)> = self
            .ideals
            .iter()
            .flat_map(|&l| self.ideals.iter().map(move |&m| (l, m)))
            .collect();
        let rows: Vec<Vec<(OrderIdeal, OrderIdeal, OrderIdeal, i64)>> = pairs
            .par_iter()
            .map(|&(l, m)| -> Result<_> {
                Ok(self
                    .multiply(l, m)?
                    .terms()
                    .map(|(n, t)| (l, m, n, t))
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(StructureConstantTable {
            entries: rows.into_iter().flatten().collect(),
        })
    }
}

pub fn structure_constant(
    p: &Poset,
    lambda: OrderIdeal,
    mu: OrderIdeal,
    nu: OrderIdeal,
) -> Result<i64> {
    KRing::new(p).structure_constant(lambda, mu, nu)
}

pub fn multiply(p: &Poset, lambda: OrderIdeal, mu: OrderIdeal) -> Result<FormalSum> {
    KRing::new(p).multiply(lambda, mu)
}

pub fn full_table(p: &Poset) -> Result<StructureConstantTable> {
    KRing::new(p).full_table()
}

/// Nonzero structure constants, sorted by `(lambda, mu, nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantTable {
    pub entries: Vec<(OrderIdeal, OrderIdeal, OrderIdeal, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub nu: Vec<String>,
    pub t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub poset: crate::io::PosetJson,
    pub entries: Vec<EntryJson>,
}

impl StructureConstantTable {
    pub fn get(&self, lambda: OrderIdeal, mu: OrderIdeal, nu: OrderIdeal) -> i64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1, e.2).cmp(&(lambda, mu, nu)))
            .map(|i| self.entries[i].3)
            .unwrap_or(0)
    }

    /// Entries whose sign disagrees with the parity of
    /// `|nu| - |lambda| - |mu|`.
    pub fn sign_violations(&self) -> Vec<(OrderIdeal, OrderIdeal, OrderIdeal, i64)> {
        self.entries
            .iter()
            .copied()
            .filter(|&(l, m, n, t)| {
                let odd = (n.len() as i64 - l.len() as i64 - m.len() as i64).rem_euclid(2) == 1;
                t != 0 && (t < 0) != odd
            })
            .collect()
    }

    pub fn to_json(&self, p: &Poset) -> TableJson {
        TableJson {
            poset: crate::io::PosetJson::from(p),
            entries: self
                .entries
                .iter()
                .map(|&(l, m, n, t)| EntryJson {
                    lambda: l.names(p),
                    mu: m.names(p),
                    nu: n.names(p),
                    t,
                })
                .collect(),
        }
    }

    pub fn from_json(p: &Poset, j: &TableJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(j.entries.len());
        for e in &j.entries {
            entries.push((
                p.ideal_from_names(&e.lambda)?,
                p.ideal_from_names(&e.mu)?,
                p.ideal_from_names(&e.nu)?,
                e.t,
            ));
        }
        entries.sort();
        Ok(StructureConstantTable { entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingViolation {
    pub axiom: String,
    pub ideals: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub ok: bool,
    pub violations: Vec<RingViolation>,
}

/// Checks commutativity, associativity, the empty ideal as identity and the
/// sign pattern over every basis pair and triple.
pub fn verify_ring(p: &Poset) -> Result<RingReport> {
    let ring = KRing::new(p);
    let table = ring.full_table()?;
    let ideals = ring.ideals().to_vec();
    let product = |l: OrderIdeal, m: OrderIdeal| -> FormalSum {
        let mut s = FormalSum::zero();
        for &n in &ideals {
            s.add_term(n, table.get(l, m, n));
        }
        s
    };
    let names = |v: &[OrderIdeal]| v.iter().map(|i| i.names(p)).collect::<Vec<_>>();
    let mut violations = Vec::new();
    for (l, m, n, _) in table.sign_violations() {
        violations.push(RingViolation {
            axiom: "sign".into(),
            ideals: names(&[l, m, n]),
        });
    }
    let empty = OrderIdeal(ElemSet::EMPTY);
    for &l in &ideals {
        if product(l, empty) != FormalSum::basis(l) || product(empty, l) != FormalSum::basis(l) {
            violations.push(RingViolation {
                axiom: "identity".into(),
                ideals: names(&[l]),
            });
        }
        for &m in &ideals {
            if product(l, m) != product(m, l) {
                violations.push(RingViolation {
                    axiom: "commutativity".into(),
                    ideals: names(&[l, m]),
                });
            }
        }
    }
    let assoc: Vec<RingViolation> = ideals
        .par_iter()
        .flat_map_iter(|&a| {
            let mut out = Vec::new();
            for &b in &ideals {
                let ab = product(a, b);
                for &c in &ideals {
                    let mut left = FormalSum::zero();
                    for (x, k) in ab.terms() {
                        left.add(&product(x, c), k);
                    }
                    let mut right = FormalSum::zero();
                    for (x, k) in product(b, c).terms() {
                        right.add(&product(a, x), k);
                    }
                    if left != right {
                        out.push(RingViolation {
                            axiom: "associativity".into(),
                            ideals: names(&[a, b, c]),
                        });
                    }
                }
            }
            out
        })
        .collect();
    violations.extend(assoc);
    Ok(RingReport {
        ok: violations.is_empty(),
        violations,
    })
}
