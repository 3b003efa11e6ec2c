//! p-variation statistics over nested dyadic partitions.

mod estimate;
mod sums;

pub use estimate::{estimate_index, estimate_index_from_profiles, weighted_slope, IndexEstimate};
pub use sums::{
    dyadic_max_sums, dyadic_sums, dyadic_sums_multi, exact_p_variation, write_profiles_csv,
    SumKind, VariationProfile, EXACT_MAX_LEN,
};
