//! Beamformer construction at the full-duplex node.

mod design;
mod eigen;
mod hybrid;
mod subspace;

pub use design::{
    design_case_a, design_case_b, design_eigen_only, design_eigen_omp, BfcDesign, CodebookPair, DesignCase,
};
pub use eigen::{eigen_combiner, eigen_precoder, EigenBeams};
pub use hybrid::{exact_hybrid_decomposition, omp_hybrid_approx, HybridBeamformer};
pub use subspace::{null_space_basis, project_onto};
