//! Capacity-planning models for ultra-broadband access networks.
//!
//! The crate answers the planning questions that come up when the target is
//! application-layer throughput rather than raw channel bit-rate:
//!
//! - [`throughput`] — closed-form TCP congestion-avoidance throughput, its cap
//!   by the channel bit-rate, and inverse solvers for latency/loss targets.
//! - [`plane`] — classification of service requirements on the
//!   bandwidth/latency plane into bit-rate-limited vs latency-limited regions.
//! - [`contention`] — peak-hour arithmetic for shared links: simultaneity
//!   coefficient, per-user bit-rate, backhaul sizing, demand growth.
//! - [`pon`] — exact binomial oversubscription dimensioning of PON downstream
//!   capacity, with a Monte Carlo cross-check.
//! - [`cache`] — bandwidth ledger of a transparent edge cache: efficiency,
//!   speedup, and upstream load.
//!
//! All models are generic over the scalar type through the [`Real`] trait, so
//! they run in `f32` or `f64`. The `*64` aliases at the crate root pick the
//! `f64` instantiation, which is what the bundled CLI uses and what every
//! documented tolerance assumes. All rates are bit/s and all times are seconds
//! internally; formatting into Mbit/s or milliseconds is left to callers.

pub mod cache;
pub mod contention;
pub mod error;
pub mod plane;
pub mod pon;
pub mod throughput;

pub use error::{Error, Result};

use core::fmt;
use num_traits::{Float, FromPrimitive};

/// Scalar type the models are generic over: `f32`, `f64`, or any other
/// IEEE-style float exposing the `num-traits` surface used here.
pub trait Real: Float + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Real for T where T: Float + FromPrimitive + fmt::Debug + fmt::Display {}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant must be representable in the scalar type")
}

// Concrete `f64` aliases — the default working precision.
pub type NetworkPath64 = throughput::NetworkPath<f64>;
pub type Throughput64 = throughput::Throughput<f64>;
pub type ServiceRequirement64 = plane::ServiceRequirement<f64>;
pub type RegionVerdict64 = plane::RegionVerdict<f64>;
pub type ContentionScenario64 = contention::ContentionScenario<f64>;
pub type PonStandard64 = pon::PonStandard<f64>;
pub type PonScenario64 = pon::PonScenario<f64>;
pub type ActiveUserDistribution64 = pon::ActiveUserDistribution<f64>;
pub type DimensioningTable64 = pon::DimensioningTable<f64>;
pub type CacheNode64 = cache::CacheNode<f64>;

// Single-precision aliases for callers that want the smaller footprint.
pub type NetworkPath32 = throughput::NetworkPath<f32>;
pub type Throughput32 = throughput::Throughput<f32>;
