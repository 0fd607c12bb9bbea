//! Bandwidth ledger of a transparent edge cache.
//!
//! The node serves `b_out` toward its clients; `b_cache` of that comes out
//! of the local store and `b_load` rides the upstream link to keep the store
//! fresh. Cache efficiency is the served fraction `b_cache / b_out`, the
//! speedup is its reciprocal, and the upstream link carries what the cache
//! does not cover plus the refill traffic.

use crate::error::{Error, Result};
use crate::Real;

/// Bandwidth accounting of one cache node, all in bit/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheNode<F> {
    b_out: F,
    b_cache: F,
    b_load: F,
}

impl<F: Real> CacheNode<F> {
    /// All bandwidths must be nonnegative and finite; the cache cannot serve
    /// more than the node outputs.
    pub fn new(b_out: F, b_cache: F, b_load: F) -> Result<Self> {
        ensure_bandwidth("b_out", b_out)?;
        ensure_bandwidth("b_cache", b_cache)?;
        ensure_bandwidth("b_load", b_load)?;
        if b_cache > b_out {
            return Err(Error::invalid(
                "b_cache",
                b_cache,
                "no more than the output bandwidth",
            ));
        }
        Ok(Self {
            b_out,
            b_cache,
            b_load,
        })
    }

    pub fn b_out(&self) -> F {
        self.b_out
    }

    pub fn b_cache(&self) -> F {
        self.b_cache
    }

    pub fn b_load(&self) -> F {
        self.b_load
    }

    /// Fraction of the output bandwidth served from the cache, in `[0, 1]`.
    /// Undefined (error) when the node serves nothing.
    pub fn efficiency(&self) -> Result<F> {
        if self.b_out.is_zero() {
            return Err(Error::ZeroOutputBandwidth);
        }
        Ok(self.b_cache / self.b_out)
    }

    /// Speedup of this node, `1 / efficiency`.
    pub fn speedup(&self) -> Result<Speedup<F>> {
        cache_speedup(self.efficiency()?)
    }

    /// Bandwidth the upstream link must carry: the output not covered by the
    /// cache plus the refill traffic (`b_out - b_cache + b_load`).
    pub fn upstream_bandwidth(&self) -> F {
        self.b_out - self.b_cache + self.b_load
    }

    /// How much larger the served output is than the upstream draw,
    /// `b_out / upstream_bandwidth`. This is the prose reading of "speedup"
    /// (relief of the upstream link); unbounded when the cache covers the
    /// whole output and needs no refill.
    pub fn upstream_reduction(&self) -> Speedup<F> {
        let upstream = self.upstream_bandwidth();
        if upstream.is_zero() {
            Speedup::Unbounded
        } else {
            Speedup::Finite(self.b_out / upstream)
        }
    }
}

/// A speedup ratio, or unbounded when the denominator vanishes. Never
/// surfaces as a float infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Speedup<F> {
    Finite(F),
    Unbounded,
}

impl<F: Real> Speedup<F> {
    pub fn finite(self) -> Option<F> {
        match self {
            Speedup::Finite(v) => Some(v),
            Speedup::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Speedup::Unbounded)
    }
}

/// Speedup for a given cache efficiency, `1 / efficiency`; unbounded for an
/// absent or ineffective cache (`efficiency = 0`).
pub fn cache_speedup<F: Real>(efficiency: F) -> Result<Speedup<F>> {
    if !(efficiency >= F::zero() && efficiency <= F::one()) {
        return Err(Error::invalid("efficiency", efficiency, "within [0, 1]"));
    }
    if efficiency.is_zero() {
        return Ok(Speedup::Unbounded);
    }
    Ok(Speedup::Finite(F::one() / efficiency))
}

fn ensure_bandwidth<F: Real>(name: &'static str, value: F) -> Result<()> {
    if value >= F::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "nonnegative and finite"))
    }
}
