//! Root data, Weyl groups, parabolic cosets and orbit censuses.

mod census;
mod datum;
mod orbits;
mod weyl;

pub use census::{
    block_sizes, census, langlands_dim_check, longest_elements, longest_in_coset_intersection, omega_weight,
    partial_flag_dim, Census, CensusRecord, LanglandsReport, OrbitSummary,
};
pub use datum::{CartanDatum, DatumKind, FiniteType, Subset, Weight, MAX_EPSILON_RANK, MAX_RANK};
pub use orbits::{compositions, double_coset_reps, weyl_orbit, Orbit, OrbitData, OrbitTable, QfSpec, MAX_BOX};
pub use weyl::{format_word, weyl_order, WeylElement, WeylGroup, MAX_GROUP_ORDER};
