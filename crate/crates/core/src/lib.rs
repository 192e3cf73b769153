//! Normal crystals for semisimple root data.
//!
//! The crate builds the highest weight crystals `B(λ)` as finite colored
//! weighted digraphs, forms Kashiwara tensor products, decomposes them into
//! highest weight components, and branches crystals to Levi subdiagrams.
//! All lattice arithmetic is exact (integers and rationals); there is no
//! floating point anywhere.
//!
//! A companion module models the affine Grassmannian of `PGL(2)` at desk
//! scale: lattice points are 2×2 matrices over truncated Laurent series with
//! exact rational coefficients, and orbit/Iwasawa labels, stratum censuses
//! and convolution products are computed by valuation arithmetic.

pub mod builders;
pub mod crystal;
pub mod decompose;
pub mod error;
pub mod io;
pub mod pgl2;
pub mod rational;
pub mod root_data;
pub mod series;
pub mod tensor;

pub use crate::builders::{
    build_b, build_b_from_factors, fundamental_crystal_a, sl2_crystal, standard_crystal_a,
    verify_closed_family, SeedTable,
};
pub use crate::crystal::{AxiomReport, Character, Crystal, HighestWeightCheck};
pub use crate::decompose::{
    branch_to_levi, decompose, i_string_decomposition, lr_multiplicities, BranchingReport,
    DecompositionReport, ReportEntry,
};
pub use crate::error::Error;
pub use crate::pgl2::{
    admissible_strata, convolve_samples, crystal_from_pgl2, strata_census, stratum_parameter_count,
    ConvolutionStats, GrassmannianPoint,
};
pub use crate::rational::Rat;
pub use crate::root_data::{DominanceMode, RootDatum, Weight};
pub use crate::series::{TruncSeries, PRECISION_SLACK};
pub use crate::tensor::{check_associator, tensor};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
