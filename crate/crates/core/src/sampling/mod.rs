//! Reproducible random streams and exact samplers for the stable, M-Wright,
//! and Mittag-Leffler laws.

mod rng;
mod stable;

pub use rng::{derive_stream, RngStream};
pub use stable::{
    sample_m_wright, sample_ml_waiting_time, sample_positive_stable, stable_increment,
    StableParams,
};
