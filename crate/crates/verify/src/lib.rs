//! Cones over Segre products, their blow-ups along cone divisors, and verifiers that
//! package the computable ingredients of the exceptional-fiber, projective-normality,
//! Gorenstein and nonvanishing claims into deterministic certificates.

pub mod certificate;
pub mod jacobian;
pub mod rees;
pub mod segre;
pub mod threads;
pub mod verifiers;

pub use jacobian::{is_projectively_smooth, jacobian_singular_locus};
pub use rees::{blowup_chart, fiber_cone, rees_presentation, ReesPresentation};
pub use segre::{build_product_instance, build_segre, ProductConeInstance, SegreContext};
pub use certificate::{Certificate, Check, ClaimId, Status, Verdict};
pub use verifiers::{
    check_blowup_gorenstein, check_exceptional_fiber, check_projective_normality, verify_example_e1,
    E1Options, GorensteinMode,
};
