//! Graded rings of Rees type and their finitely generated graded modules.
//!
//! Every graded object is interrogated through its pieces, which are
//! finitely presented modules over the base ring.

mod embedded;
mod module;
mod ops;
mod resolution;
mod ring;

pub use embedded::EmbeddedFree;
pub use module::{vector_degree, GradedHom, GradedModule, GradedMorphism, GradedPieces};
pub use ops::{hilbert_data, is_n_stable_pieces, is_torsion, truncate, HilbertEntry, TorsionCertificate};
pub(crate) use resolution::{block_sum, hom_blocks, hom_differential, Blocks};
pub use resolution::{ext_from_resolution, free_resolution, graded_ext, hom_complex_piece, ExtEntry, FreeResolution};
pub use ring::GradedRing;

use serde::{Deserialize, Serialize};

/// Finite range of degrees `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        DegreeWindow { lo, hi }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }
}

impl std::fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
