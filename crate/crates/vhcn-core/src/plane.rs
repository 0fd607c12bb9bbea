//! The bandwidth/latency service plane.
//!
//! A service is a dot on that plane: the bandwidth it needs and the worst
//! latency it tolerates. A network path splits the plane into a
//! bit-rate-limited region (throughput equals the channel rate) and a
//! latency-limited region (the congestion-avoidance ceiling bites first).
//! This module classifies services against a path, decides feasibility, and
//! samples the boundary curve between the two regions for plotting.

use crate::error::{Error, Result};
use crate::throughput::{critical_rtt, NetworkPath};
use crate::{real, Real};

/// Minimum bandwidth and maximum tolerable latency of one service.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceRequirement<F> {
    name: String,
    min_bandwidth: F,
    max_latency: F,
}

impl<F: Real> ServiceRequirement<F> {
    /// `min_bandwidth` in bit/s, `max_latency` in seconds, both positive.
    pub fn new(name: impl Into<String>, min_bandwidth: F, max_latency: F) -> Result<Self> {
        if !(min_bandwidth > F::zero() && min_bandwidth.is_finite()) {
            return Err(Error::invalid(
                "min_bandwidth",
                min_bandwidth,
                "positive and finite",
            ));
        }
        if !(max_latency > F::zero() && max_latency.is_finite()) {
            return Err(Error::invalid(
                "max_latency",
                max_latency,
                "positive and finite",
            ));
        }
        Ok(Self {
            name: name.into(),
            min_bandwidth,
            max_latency,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn min_bandwidth(&self) -> F {
        self.min_bandwidth
    }

    pub fn max_latency(&self) -> F {
        self.max_latency
    }
}

/// Which side of the boundary a path operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Throughput equals the channel bit-rate; bandwidth and latency are
    /// independent here.
    BitRateLimited,
    /// The congestion-avoidance ceiling is below the channel bit-rate;
    /// raising the bit-rate alone buys nothing.
    LatencyLimited,
}

/// Which requirement a service misses on a path, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitingFactor {
    None,
    BandwidthShortfall,
    LatencyExceeded,
    Both,
}

/// Outcome of checking one service against one path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict<F> {
    pub region: Region,
    pub feasible: bool,
    /// Effective throughput of the path in bit/s (independent of the
    /// service).
    pub achieved_throughput: F,
    pub limiting_factor: LimitingFactor,
}

/// Classifies a service requirement against a path profile.
///
/// The region comes from the min-selection between the congestion-avoidance
/// ceiling and the channel rate (a tie counts as bit-rate limited). The
/// service is feasible when the delivered throughput covers its bandwidth
/// need and the path round-trip time does not exceed its latency budget —
/// the two verdicts are deliberately independent.
pub fn classify_service<F: Real>(
    service: &ServiceRequirement<F>,
    path: &NetworkPath<F>,
) -> RegionVerdict<F> {
    let region = if path.mathis_throughput().at_least(path.bit_rate()) {
        Region::BitRateLimited
    } else {
        Region::LatencyLimited
    };
    let achieved = path.effective_throughput();
    let bandwidth_ok = achieved >= service.min_bandwidth();
    let latency_ok = path.rtt() <= service.max_latency();
    let limiting_factor = match (bandwidth_ok, latency_ok) {
        (true, true) => LimitingFactor::None,
        (false, true) => LimitingFactor::BandwidthShortfall,
        (true, false) => LimitingFactor::LatencyExceeded,
        (false, false) => LimitingFactor::Both,
    };
    RegionVerdict {
        region,
        feasible: bandwidth_ok && latency_ok,
        achieved_throughput: achieved,
        limiting_factor,
    }
}

/// Samples the region boundary: `points` log-spaced bandwidths across
/// `bandwidth_range` (inclusive), each paired with the critical round-trip
/// time at which that bandwidth stops being deliverable.
///
/// The result is strictly decreasing in latency as bandwidth grows. `plr`
/// must be in `(0, 1)` — with zero loss there is no boundary.
pub fn boundary_curve<F: Real>(
    plr: F,
    mss: F,
    mathis_c: F,
    bandwidth_range: (F, F),
    points: usize,
) -> Result<Vec<(F, F)>> {
    let (lo, hi) = bandwidth_range;
    if !(lo > F::zero() && lo.is_finite()) {
        return Err(Error::invalid("bandwidth_range.0", lo, "positive and finite"));
    }
    if !(hi > lo && hi.is_finite()) {
        return Err(Error::invalid(
            "bandwidth_range.1",
            hi,
            "greater than the range start",
        ));
    }
    if points < 2 {
        return Err(Error::invalid("points", points, "at least 2"));
    }

    let ratio = hi / lo;
    let last = points - 1;
    (0..points)
        .map(|i| {
            // Pin the endpoints exactly; log-space the interior.
            let bandwidth = if i == 0 {
                lo
            } else if i == last {
                hi
            } else {
                lo * ratio.powf(real(i as f64 / last as f64))
            };
            critical_rtt(bandwidth, plr, mss, mathis_c).map(|rtt| (bandwidth, rtt))
        })
        .collect()
}

/// Classifies every service of a catalog against one path, preserving input
/// order. Fails on an empty catalog.
pub fn catalog_report<'a, F: Real>(
    catalog: &'a [ServiceRequirement<F>],
    path: &NetworkPath<F>,
) -> Result<Vec<(&'a ServiceRequirement<F>, RegionVerdict<F>)>> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    Ok(catalog
        .iter()
        .map(|service| (service, classify_service(service, path)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gaming() -> ServiceRequirement<f64> {
        ServiceRequirement::new("real-time gaming", 10e6, 0.100).unwrap()
    }

    fn collaboration() -> ServiceRequirement<f64> {
        ServiceRequirement::new("3D collaboration", 100e6, 0.010).unwrap()
    }

    #[test]
    fn latency_limited_yet_feasible() {
        // Ceiling 73.4 Mbit/s < 100 Mbit/s channel, but gaming only needs
        // 10 Mbit/s under 100 ms.
        let path = NetworkPath::with_defaults(100e6, 0.050, 1e-5).unwrap();
        let verdict = classify_service(&gaming(), &path);
        assert_eq!(verdict.region, Region::LatencyLimited);
        assert!(verdict.feasible);
        assert_eq!(verdict.limiting_factor, LimitingFactor::None);
        assert_relative_eq!(
            verdict.achieved_throughput,
            73_364_841.715_906_4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn both_requirements_missed() {
        // Ceiling 23.2 Mbit/s < 100 Mbit/s needed, and 50 ms > 10 ms budget.
        let path = NetworkPath::with_defaults(1e9, 0.050, 1e-4).unwrap();
        let verdict = classify_service(&collaboration(), &path);
        assert!(!verdict.feasible);
        assert_eq!(verdict.limiting_factor, LimitingFactor::Both);
        assert_relative_eq!(
            verdict.achieved_throughput,
            23.2e6,
            max_relative = 1e-12
        );
    }

    #[test]
    fn lossless_path_is_bit_rate_limited() {
        let path = NetworkPath::with_defaults(100e6, 0.010, 0.0).unwrap();
        let verdict = classify_service(&gaming(), &path);
        assert_eq!(verdict.region, Region::BitRateLimited);
        assert!(verdict.feasible);
    }

    #[test]
    fn bit_rate_limited_yet_infeasible() {
        // Lossless 5 Mbit/s channel cannot carry a 10 Mbit/s service.
        let path = NetworkPath::with_defaults(5e6, 0.010, 0.0).unwrap();
        let verdict = classify_service(&gaming(), &path);
        assert_eq!(verdict.region, Region::BitRateLimited);
        assert!(!verdict.feasible);
        assert_eq!(verdict.limiting_factor, LimitingFactor::BandwidthShortfall);
    }

    #[test]
    fn latency_exceeded_alone() {
        let path = NetworkPath::with_defaults(1e9, 0.200, 1e-6).unwrap();
        let verdict = classify_service(&gaming(), &path);
        assert!(!verdict.feasible);
        assert_eq!(verdict.limiting_factor, LimitingFactor::LatencyExceeded);
    }

    #[test]
    fn verdict_throughput_delegates_to_effective() {
        let path = NetworkPath::with_defaults(100e6, 0.050, 1e-5).unwrap();
        let verdict = classify_service(&gaming(), &path);
        assert_eq!(verdict.achieved_throughput, path.effective_throughput());
    }

    #[test]
    fn boundary_reference_points() {
        let curve = boundary_curve(1e-4, 1450.0, 1.0, (10e6, 1e9), 3).unwrap();
        assert_eq!(curve.len(), 3);
        assert_eq!(curve[0].0, 10e6);
        assert_eq!(curve[2].0, 1e9);
        assert_relative_eq!(curve[0].1, 0.116, max_relative = 1e-12);
        assert_relative_eq!(curve[1].1, 0.0116, max_relative = 1e-9);
        assert_relative_eq!(curve[2].1, 0.00116, max_relative = 1e-12);
    }

    #[test]
    fn boundary_is_strictly_decreasing() {
        let curve = boundary_curve(1e-4, 1450.0, 1.0, (10e6, 1e9), 50).unwrap();
        assert_eq!(curve.len(), 50);
        for pair in curve.windows(2) {
            assert!(pair[1].0 > pair[0].0);
            assert!(pair[1].1 < pair[0].1);
        }
    }

    #[test]
    fn doubling_plr_scales_boundary_by_inv_sqrt2() {
        let base = boundary_curve(1e-4, 1450.0, 1.0, (10e6, 1e9), 5).unwrap();
        let doubled = boundary_curve(2e-4, 1450.0, 1.0, (10e6, 1e9), 5).unwrap();
        for (b, d) in base.iter().zip(&doubled) {
            assert_relative_eq!(d.1, b.1 / 2f64.sqrt(), max_relative = 1e-12);
        }
    }

    #[test]
    fn boundary_coherence_around_critical_rtt() {
        let curve = boundary_curve(1e-4, 1450.0, 1.0, (10e6, 1e9), 9).unwrap();
        for &(bandwidth, rtt_star) in &curve {
            let below = NetworkPath::with_defaults(bandwidth, rtt_star * 0.999, 1e-4).unwrap();
            let above = NetworkPath::with_defaults(bandwidth, rtt_star * 1.001, 1e-4).unwrap();
            assert_eq!(
                classify_service(&gaming(), &below).region,
                Region::BitRateLimited
            );
            assert_eq!(
                classify_service(&gaming(), &above).region,
                Region::LatencyLimited
            );
        }
    }

    #[test]
    fn boundary_rejects_bad_inputs() {
        assert!(boundary_curve(0.0, 1450.0, 1.0, (10e6, 1e9), 3).is_err());
        assert!(boundary_curve(1e-4, 1450.0, 1.0, (1e9, 10e6), 3).is_err());
        assert!(boundary_curve(1e-4, 1450.0, 1.0, (10e6, 1e9), 1).is_err());
    }

    #[test]
    fn catalog_report_preserves_order_and_duplicates() {
        let path = NetworkPath::with_defaults(100e6, 0.050, 1e-5).unwrap();
        let catalog = vec![gaming(), collaboration(), gaming()];
        let report = catalog_report(&catalog, &path).unwrap();
        assert_eq!(report.len(), 3);
        assert_eq!(report[0].0.name(), "real-time gaming");
        assert_eq!(report[1].0.name(), "3D collaboration");
        assert_eq!(report[2].0.name(), "real-time gaming");
        assert_eq!(report[0].1, report[2].1);
        assert_eq!(report[0].1, classify_service(&gaming(), &path));
    }

    #[test]
    fn empty_catalog_is_an_error() {
        let path = NetworkPath::with_defaults(100e6, 0.050, 1e-5).unwrap();
        let catalog: Vec<ServiceRequirement<f64>> = Vec::new();
        assert_eq!(
            catalog_report(&catalog, &path).unwrap_err(),
            Error::EmptyCatalog
        );
    }
}
