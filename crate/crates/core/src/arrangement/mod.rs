//! Counting connected components: polytopes cut by hyperplanes, the regular
//! set of the window, singular translates and lattice points in a window.

pub mod chords;
pub mod cut;
pub mod lemma1;
pub mod planar;
pub mod translates;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ser_elems, FieldElement};

pub use chords::count_faces_chords;
pub use cut::count_components_hyperplane_cut;
pub use lemma1::lemma1_count;
pub use planar::{count_components_regn, CellCount, Subdivision};
pub use translates::{enumerate_singular_translates, TranslateFamily};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("dimension {0} is not supported")]
    UnsupportedDimension(usize),
    #[error("arrangement has {cells} cells, above the cap of {cap}")]
    CellCapExceeded { cells: usize, cap: usize },
}

/// The locus `normal · x = offset` in F-coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct AffineHyperplane {
    #[serde(serialize_with = "ser_elems")]
    pub normal: Vec<FieldElement>,
    #[serde(serialize_with = "ser_one")]
    pub offset: FieldElement,
}

fn ser_one<S: serde::Serializer>(e: &FieldElement, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&e.to_strings(), s)
}

/// Cap on arrangement sizes from `QC_MAX_CELLS`, if set.
pub fn max_cells() -> Option<usize> {
    std::env::var("QC_MAX_CELLS").ok().and_then(|v| v.trim().parse().ok())
}

pub(crate) fn check_cap(cells: usize) -> Result<(), ArrangementError> {
    match max_cells() {
        Some(cap) if cells > cap => Err(ArrangementError::CellCapExceeded { cells, cap }),
        _ => Ok(()),
    }
}
