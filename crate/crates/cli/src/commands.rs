//! Subcommand bodies. Each returns the text to print and an exit code:
//! 0 when the property holds, 1 when it fails (with a witness), 2 on bad
//! input.

use std::path::Path;

use kjdt_core::catalog::{slant_sum_tree, CatalogPoset, Family, SlantTreeSpec};
use kjdt_core::kring::KRing;
use kjdt_core::rectify::{is_pchain_urt, UrtOracle};
use kjdt_core::{
    is_dcomplete, ElemSet, IncreasingTableau, OrderIdeal, Poset, PosetJson, TableauJson,
};
use serde::Serialize;

use crate::search::{self, SearchReport, Status};

pub const OK: i32 = 0;
pub const FAILS: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: OK }
    }

    fn holds(stdout: String, holds: bool) -> Self {
        Outcome {
            stdout,
            code: if holds { OK } else { FAILS },
        }
    }
}

/// An input problem; reported on stderr with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<kjdt_core::Error> for InputError {
    fn from(e: kjdt_core::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(format!("json: {e}"))
    }
}

type Result<T> = std::result::Result<T, InputError>;

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    Ok(serde_json::from_str::<PosetJson>(&read(path)?)?.to_poset()?)
}

pub fn load_tableau(p: &Poset, path: &Path) -> Result<IncreasingTableau> {
    Ok(IncreasingTableau::from_json(
        p,
        &serde_json::from_str::<TableauJson>(&read(path)?)?,
    )?)
}

/// A list of element names: a JSON array, or comma-separated names when the
/// text does not start with `[`.
pub fn parse_names(s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    if s.starts_with('[') {
        return Ok(serde_json::from_str(s)?);
    }
    Ok(s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect())
}

fn parse_ideal(p: &Poset, s: &str) -> Result<OrderIdeal> {
    Ok(p.ideal_from_names(&parse_names(s)?)?)
}

#[derive(Serialize)]
struct CatalogJson<'a> {
    #[serde(flatten)]
    poset: PosetJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    params: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    acyclic_nodes: Vec<&'a str>,
}

pub fn catalog(family: &str, params: &[usize], prefix: Option<&str>, dot: bool) -> Result<Outcome> {
    let mut c = CatalogPoset::build(Family::parse(family)?, params)?;
    if let Some(pre) = prefix {
        c = c.renamed(pre);
    }
    if dot {
        return Ok(Outcome::ok(c.poset.to_dot()));
    }
    let j = CatalogJson {
        poset: PosetJson::from(&c.poset),
        family: Some(c.family),
        params: c.params.clone(),
        acyclic_nodes: c.acyclic_nodes.iter().map(String::as_str).collect(),
    };
    Ok(Outcome::ok(to_json(&j)))
}

pub fn catalog_tree(spec: &Path, allow_any_node: bool, dot: bool) -> Result<Outcome> {
    let spec: SlantTreeSpec = serde_json::from_str(&read(spec)?)?;
    let p = slant_sum_tree(&spec, allow_any_node)?;
    Ok(Outcome::ok(if dot {
        p.to_dot()
    } else {
        to_json(&PosetJson::from(&p))
    }))
}

#[derive(Serialize)]
struct Summary<'a> {
    valid: bool,
    name: &'a str,
    elements: usize,
    covers: usize,
    order_ideals: usize,
    minimum: Option<&'a str>,
    bottom_tree: Vec<String>,
}

pub fn poset_validate(path: &Path) -> Result<Outcome> {
    let p = load_poset(path)?;
    let s = Summary {
        valid: true,
        name: p.name(),
        elements: p.len(),
        covers: p.covers().len(),
        order_ideals: p.order_ideals().len(),
        minimum: p.minimum().map(|m| p.name_of(m)),
        bottom_tree: p.bottom_tree().names(&p),
    };
    Ok(Outcome::ok(to_json(&s)))
}

pub fn poset_dot(path: &Path) -> Result<Outcome> {
    Ok(Outcome::ok(load_poset(path)?.to_dot()))
}

pub fn dcomplete_check(path: &Path, json: bool) -> Result<Outcome> {
    let p = load_poset(path)?;
    let r = is_dcomplete(&p);
    let text = if json {
        to_json(&r)
    } else if r.dcomplete {
        format!("{} is d-complete\n", p.name())
    } else {
        let mut s = format!("{} is not d-complete\n", p.name());
        for v in &r.violations {
            s.push_str(&format!(
                "  k={} condition {}: {}\n",
                v.k, v.condition, v.message
            ));
        }
        s
    };
    Ok(Outcome::holds(text, r.dcomplete))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectifyOutput {
    All,
    Count,
    /// One slide at the named inner corners.
    Slide(String),
}

#[derive(Serialize)]
struct RectificationJson {
    tableau: TableauJson,
    /// Inner corners slid at each step of one sequence reaching `tableau`.
    slides: Vec<Vec<String>>,
}

pub fn rectify(poset: &Path, tableau: &Path, out: RectifyOutput) -> Result<Outcome> {
    let p = load_poset(poset)?;
    let t = load_tableau(&p, tableau)?;
    if let RectifyOutput::Slide(gamma) = &out {
        let g = p.set_of(&parse_names(gamma)?)?;
        return Ok(Outcome::ok(to_json(
            &kjdt_core::tableau::slide(&p, &t, g)?.to_json(&p),
        )));
    }
    let rs = kjdt_core::rects(&p, &t);
    Ok(Outcome::ok(match out {
        RectifyOutput::Count => to_json(&serde_json::json!({ "count": rs.len() })),
        _ => to_json(
            &rs.members
                .iter()
                .map(|(u, path)| RectificationJson {
                    tableau: u.to_json(&p),
                    slides: path.iter().map(|&g| p.names_of(g)).collect(),
                })
                .collect::<Vec<_>>(),
        ),
    }))
}

#[derive(Serialize)]
struct UrtJson {
    urt: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<TableauJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rectifications: Vec<RectificationJson>,
    /// Chains `(point, size)` slant-summed on when the failure occurred.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    chains: Vec<(String, usize)>,
}

fn rectification_json(p: &Poset, rs: &kjdt_core::RectificationSet) -> Vec<RectificationJson> {
    rs.members
        .iter()
        .map(|(u, path)| RectificationJson {
            tableau: u.to_json(p),
            slides: path.iter().map(|&g| p.names_of(g)).collect(),
        })
        .collect()
}

pub fn urt_check(
    poset: &Path,
    tableau: &Path,
    points: Option<&str>,
    max_chain: Option<usize>,
) -> Result<Outcome> {
    let p = load_poset(poset)?;
    let u = load_tableau(&p, tableau)?;
    let j = match points {
        None => {
            let v = UrtOracle::new(&p).is_urt(&u)?;
            let (witness, rectifications) = match v.counterexample {
                Some(c) => (
                    Some(c.witness.to_json(&p)),
                    rectification_json(&p, &c.rectifications),
                ),
                None => (None, vec![]),
            };
            UrtJson {
                urt: v.urt,
                points: None,
                witness,
                rectifications,
                chains: vec![],
            }
        }
        Some(pts) => {
            let names = parse_names(pts)?;
            let set: ElemSet = p.set_of(&names)?;
            match is_pchain_urt(&p, &u, set, max_chain)? {
                None => UrtJson {
                    urt: true,
                    points: Some(p.names_of(set)),
                    witness: None,
                    rectifications: vec![],
                    chains: vec![],
                },
                Some(f) => UrtJson {
                    urt: false,
                    points: Some(p.names_of(set)),
                    witness: Some(f.counterexample.witness.to_json(&f.poset)),
                    rectifications: rectification_json(&f.poset, &f.counterexample.rectifications),
                    chains: f
                        .chains
                        .iter()
                        .map(|&(x, k)| (p.name_of(x).to_string(), k))
                        .collect(),
                },
            }
        }
    };
    let urt = j.urt;
    Ok(Outcome::holds(to_json(&j), urt))
}

#[derive(Serialize)]
struct TermJson {
    nu: Vec<String>,
    t: i64,
}

pub fn kring_constants(
    poset: &Path,
    lambda: Option<&str>,
    mu: Option<&str>,
    nu: Option<&str>,
    table: Option<&Path>,
) -> Result<Outcome> {
    let p = load_poset(poset)?;
    let ring = KRing::new(&p);
    let text = match (lambda, mu) {
        (Some(l), Some(m)) => {
            let (l, m) = (parse_ideal(&p, l)?, parse_ideal(&p, m)?);
            match nu {
                Some(n) => {
                    let t = ring.structure_constant(l, m, parse_ideal(&p, n)?)?;
                    to_json(&serde_json::json!({ "t": t }))
                }
                None => {
                    let prod = ring.multiply(l, m)?;
                    to_json(
                        &prod
                            .terms()
                            .map(|(n, t)| TermJson { nu: n.names(&p), t })
                            .collect::<Vec<_>>(),
                    )
                }
            }
        }
        (None, None) if nu.is_none() => {
            let t = ring.full_table()?;
            let s = to_json(&t.to_json(&p));
            if let Some(path) = table {
                std::fs::write(path, &s)
                    .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                format!("wrote {} entries to {}\n", t.entries.len(), path.display())
            } else {
                s
            }
        }
        _ => {
            return Err(InputError(
                "--lambda and --mu go together; --nu needs both".into(),
            ))
        }
    };
    Ok(Outcome::ok(text))
}

fn report(r: SearchReport) -> Outcome {
    let holds = r.status != Status::Counterexample;
    Outcome::holds(to_json(&r), holds)
}

pub fn conjecture_urt(poset: &Path) -> Result<Outcome> {
    Ok(report(search::conjecture_urt(&load_poset(poset)?)?))
}

pub fn conjecture_bottom_tree(poset: &Path, max_label: Option<usize>) -> Result<Outcome> {
    Ok(report(search::conjecture_bottom_tree(
        &load_poset(poset)?,
        max_label,
    )?))
}
