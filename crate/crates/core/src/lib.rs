//! Exact commutative algebra over `Q` and `F_p`: polynomial rings, Gröbner bases,
//! ideal calculus, Hilbert series, minimal free resolutions and sheaf cohomology of
//! twists of structure sheaves of projective schemes.

pub mod cohomology;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod ringmap;

pub use cohomology::{
    kunneth_dim, sheaf_cohomology_dim, CohomologyTable, ProjectiveScheme, SheafCohomologyQuery,
};
pub use error::{AlgebraError, Result};
pub use field::{Field, Scalar};
pub use groebner::{GbOptions, GbStats, GroebnerBasis, Ideal};
pub use hilbert::{hilbert_function, hilbert_series, krull_dimension, HilbertData};
pub use ideal::{kernel_of_map, kernel_of_map_mod};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_document, parse_polynomial, parse_ring, Document};
pub use poly::Polynomial;
pub use resolution::{
    betti_table, free_resolution, is_cohen_macaulay, is_gorenstein_graded, BettiTable, Resolution,
};
pub use ring::{PolyRing, Ring};
pub use ringmap::RingMap;
