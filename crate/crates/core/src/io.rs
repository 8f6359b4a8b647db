//! JSON forms of posets: `{"name": .., "elements": [..], "covers": [[a, b], ..]}`
//! with `a` covered by `b`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub name: String,
    pub elements: Vec<String>,
    /// Any relations generating the order; emitted as the cover relation.
    pub covers: Vec<(String, String)>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson {
            name: p.name().to_string(),
            elements: p.elements().to_vec(),
            covers: p
                .covers()
                .into_iter()
                .map(|(a, b)| (p.name_of(a).to_string(), p.name_of(b).to_string()))
                .collect(),
        }
    }
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset> {
        Poset::new(
            &self.name,
            self.elements.iter().map(String::as_str),
            self.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }
}

pub fn poset_from_json(s: &str) -> Result<Poset> {
    serde_json::from_str::<PosetJson>(s)?.to_poset()
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetJson::from(p)).expect("poset serializes")
}
