//! Jeu de taquin on d-complete and general finite posets: posets and their
//! shapes, increasing tableaux and slides, rectification, unique
//! rectification targets and the K-theoretic structure constants they define.

pub mod canon;
pub mod catalog;
pub mod dcomplete;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod kring;
pub mod poset;
pub mod rectify;
pub mod set;
pub mod tableau;

pub use canon::{canonical_form, canonical_form_colored, is_isomorphic, CanonicalForm};
pub use catalog::{CatalogPoset, Family, SlantTreeSpec};
pub use dcomplete::{is_dcomplete, DCompleteReport, IntervalKind};
pub use error::{Error, Result};
pub use io::PosetJson;
pub use kring::{FormalSum, KRing, StructureConstantTable};
pub use poset::{OrderIdeal, Poset, SkewShape, SubPoset};
pub use rectify::{rects, RectificationSet, Rectifier, UrtOracle, UrtVerdict};
pub use set::ElemSet;
pub use tableau::{DottedTableau, IncreasingTableau, TableauJson};

/// Caps the global worker pool at `KJDT_THREADS` threads when that variable
/// is set. Has no effect once the pool exists.
pub fn init_threads_from_env() {
    if let Some(n) = std::env::var("KJDT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}
