//! Quantitative checks on generator sets: worst-case growth of products over
//! ℤ, spectral radii of periodic words, girth of the Cayley graph mod p,
//! birthday collision search, random-product growth, and bitstream tests.

mod collision;
mod girth;
mod growth;
mod lyapunov;
mod report;
mod spectral;
mod stream;

pub use collision::{collision_search_birthday, CollisionWitness};
pub use girth::{exact_girth_bfs, GirthReport, LengthMeasure, DEFAULT_STATE_CAP};
pub use growth::{
    default_cap, enumerate_growth, enumerate_growth_capped, enumerate_scheme_growth, GrowthReport,
};
pub use lyapunov::{random_growth, LyapunovReport};
pub use report::KeyValue;
pub use spectral::{
    girth_lower_bound, ln_biguint, ln_spectral_radius, periodic_spectral_radius,
    COOKIE_FORMULA_VALUE, COOKIE_QUOTED_VALUE,
};
pub use stream::{emit_stream, monobit_test, runs_test, StatTest, SIGNIFICANCE};
