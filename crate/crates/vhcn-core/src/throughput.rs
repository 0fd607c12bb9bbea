//! Application-layer throughput model.
//!
//! For a TCP flow governed by the congestion-avoidance algorithm, the
//! achievable throughput has the closed form
//!
//! ```text
//! Th(CA) = c * MSS / (RTT * sqrt(PLR))
//! ```
//!
//! and the throughput actually delivered is `min(Th(CA), BR)` where `BR` is
//! the channel bit-rate. The "distance" between endpoints, as far as
//! throughput is concerned, is the product `RTT * sqrt(PLR)`. This module
//! provides the forward model and the inverse solvers (the RTT or PLR needed
//! to sustain a target rate).

use crate::error::{Error, Result};
use crate::{real, Real};

/// Default maximum segment size in bytes: the usual largest value that avoids
/// IP fragmentation.
pub const DEFAULT_MSS_BYTES: f64 = 1450.0;

/// Default congestion-avoidance constant (typical values span 0.9..=1.2).
pub const DEFAULT_MATHIS_C: f64 = 1.0;

const BITS_PER_BYTE: f64 = 8.0;

/// End-to-end transport profile of a network path.
///
/// Validated on construction: `bit_rate`, `rtt`, `mss` and `mathis_c` must be
/// positive and finite, `plr` must lie in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkPath<F> {
    bit_rate: F,
    rtt: F,
    plr: F,
    mss: F,
    mathis_c: F,
}

impl<F: Real> NetworkPath<F> {
    /// `bit_rate` in bit/s, `rtt` in seconds, `plr` as a fraction in `[0, 1)`,
    /// `mss` in bytes, `mathis_c` dimensionless.
    pub fn new(bit_rate: F, rtt: F, plr: F, mss: F, mathis_c: F) -> Result<Self> {
        ensure_positive("bit_rate", bit_rate)?;
        ensure_positive("rtt", rtt)?;
        ensure_loss_rate("plr", plr)?;
        ensure_positive("mss", mss)?;
        ensure_positive("mathis_c", mathis_c)?;
        Ok(Self {
            bit_rate,
            rtt,
            plr,
            mss,
            mathis_c,
        })
    }

    /// Path with the default segment size and congestion-avoidance constant.
    pub fn with_defaults(bit_rate: F, rtt: F, plr: F) -> Result<Self> {
        Self::new(
            bit_rate,
            rtt,
            plr,
            real(DEFAULT_MSS_BYTES),
            real(DEFAULT_MATHIS_C),
        )
    }

    /// Channel bit-rate in bit/s.
    pub fn bit_rate(&self) -> F {
        self.bit_rate
    }

    /// Round-trip time in seconds.
    pub fn rtt(&self) -> F {
        self.rtt
    }

    /// Packet-loss rate as a fraction.
    pub fn plr(&self) -> F {
        self.plr
    }

    /// Maximum segment size in bytes.
    pub fn mss(&self) -> F {
        self.mss
    }

    /// Congestion-avoidance constant.
    pub fn mathis_c(&self) -> F {
        self.mathis_c
    }

    /// Congestion-avoidance throughput ceiling (Mathis law) in bit/s.
    ///
    /// Unbounded on a loss-free path: congestion avoidance imposes no ceiling
    /// when nothing is ever lost.
    pub fn mathis_throughput(&self) -> Throughput<F> {
        if self.plr.is_zero() {
            return Throughput::Unbounded;
        }
        Throughput::Finite(
            self.mathis_c * self.mss * real(BITS_PER_BYTE) / (self.rtt * self.plr.sqrt()),
        )
    }

    /// Throughput delivered to the application in bit/s: the Mathis ceiling
    /// capped by the channel bit-rate. Always finite.
    pub fn effective_throughput(&self) -> F {
        self.mathis_throughput().min(self.bit_rate)
    }

    /// The throughput-limiting "distance" of this path, `rtt * sqrt(plr)`,
    /// in seconds.
    pub fn distance_metric(&self) -> F {
        self.rtt * self.plr.sqrt()
    }

    /// Round-trip time at which the Mathis ceiling equals this path's
    /// bit-rate. Below it the path is bit-rate limited, above it
    /// latency limited. Fails with [`Error::NoBoundary`] when `plr` is zero.
    pub fn critical_rtt(&self) -> Result<F> {
        critical_rtt(self.bit_rate, self.plr, self.mss, self.mathis_c)
    }
}

/// Throughput in bit/s, or unbounded when the congestion-avoidance law puts
/// no ceiling on a loss-free path. Never surfaces as a float infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Throughput<F> {
    Finite(F),
    Unbounded,
}

impl<F: Real> Throughput<F> {
    /// The finite value, if there is one.
    pub fn finite(self) -> Option<F> {
        match self {
            Throughput::Finite(v) => Some(v),
            Throughput::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Throughput::Unbounded)
    }

    /// Smaller of this throughput and a finite cap; always finite.
    pub fn min(self, cap: F) -> F {
        match self {
            Throughput::Finite(v) if v < cap => v,
            _ => cap,
        }
    }

    /// Whether this throughput reaches `rate` (an unbounded ceiling reaches
    /// everything).
    pub fn at_least(self, rate: F) -> bool {
        match self {
            Throughput::Finite(v) => v >= rate,
            Throughput::Unbounded => true,
        }
    }
}

/// `rtt * sqrt(plr)`, the quantity that decides how far a server effectively
/// is from a client. `rtt` in seconds, `plr` a fraction in `[0, 1)`.
pub fn distance_metric<F: Real>(rtt: F, plr: F) -> Result<F> {
    ensure_positive("rtt", rtt)?;
    ensure_loss_rate("plr", plr)?;
    Ok(rtt * plr.sqrt())
}

/// Round-trip time at which the Mathis ceiling equals `bit_rate`:
/// `rtt* = c * mss * 8 / (bit_rate * sqrt(plr))`.
///
/// For `rtt < rtt*` the path is bit-rate limited, for `rtt > rtt*` latency
/// limited. With `plr = 0` the boundary does not exist (every RTT is bit-rate
/// limited) and the distinct [`Error::NoBoundary`] is returned.
pub fn critical_rtt<F: Real>(bit_rate: F, plr: F, mss: F, mathis_c: F) -> Result<F> {
    ensure_positive("bit_rate", bit_rate)?;
    ensure_loss_rate("plr", plr)?;
    ensure_positive("mss", mss)?;
    ensure_positive("mathis_c", mathis_c)?;
    if plr.is_zero() {
        return Err(Error::NoBoundary);
    }
    Ok(mathis_c * mss * real(BITS_PER_BYTE) / (bit_rate * plr.sqrt()))
}

/// Largest round-trip time (seconds) at which the Mathis ceiling still
/// reaches `target` bit/s, for a given loss rate.
pub fn required_rtt<F: Real>(target: F, plr: F, mss: F, mathis_c: F) -> Result<F> {
    ensure_positive("target", target)?;
    ensure_positive("mss", mss)?;
    ensure_positive("mathis_c", mathis_c)?;
    if !(plr > F::zero() && plr < F::one()) || plr.is_nan() {
        return Err(Error::invalid("plr", plr, "within (0, 1)"));
    }
    Ok(mathis_c * mss * real(BITS_PER_BYTE) / (target * plr.sqrt()))
}

/// Largest packet-loss rate at which the Mathis ceiling still reaches
/// `target` bit/s at round-trip time `rtt`: `(c * mss * 8 / (target * rtt))^2`,
/// clamped into `[0, 1)`.
pub fn required_plr<F: Real>(target: F, rtt: F, mss: F, mathis_c: F) -> Result<F> {
    ensure_positive("target", target)?;
    ensure_positive("rtt", rtt)?;
    ensure_positive("mss", mss)?;
    ensure_positive("mathis_c", mathis_c)?;
    let ratio = mathis_c * mss * real(BITS_PER_BYTE) / (target * rtt);
    let plr = ratio * ratio;
    let below_one = F::one() - F::epsilon();
    Ok(if plr < below_one { plr } else { below_one })
}

fn ensure_positive<F: Real>(name: &'static str, value: F) -> Result<()> {
    if value > F::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "positive and finite"))
    }
}

fn ensure_loss_rate<F: Real>(name: &'static str, value: F) -> Result<()> {
    if value >= F::zero() && value < F::one() {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "within [0, 1)"))
    }
}
