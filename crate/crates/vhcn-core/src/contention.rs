//! Peak-hour arithmetic for shared links.
//!
//! A concentration node serves `N` connected users of which only a fraction
//! `s_c` (the simultaneity coefficient) transfer data at the same time.
//! Neglecting overheads and assuming fair sharing, each active user gets
//! `BR_a / (s_c * N)` of the link capacity `BR_a`. The module also inverts
//! that relation for backhaul sizing and projects demand growth over years.

use crate::error::{Error, Result};
use crate::{real, Real};

/// A shared link: capacity, connected users, and the fraction of them active
/// at peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContentionScenario<F> {
    link_capacity: F,
    connected_users: u64,
    simultaneity: F,
}

impl<F: Real> ContentionScenario<F> {
    /// `link_capacity` in bit/s, `simultaneity` a fraction in `(0, 1]`.
    pub fn new(link_capacity: F, connected_users: u64, simultaneity: F) -> Result<Self> {
        if !(link_capacity > F::zero() && link_capacity.is_finite()) {
            return Err(Error::invalid(
                "link_capacity",
                link_capacity,
                "positive and finite",
            ));
        }
        if connected_users == 0 {
            return Err(Error::invalid("connected_users", connected_users, "at least 1"));
        }
        if !(simultaneity > F::zero() && simultaneity <= F::one()) {
            return Err(Error::invalid("simultaneity", simultaneity, "within (0, 1]"));
        }
        Ok(Self {
            link_capacity,
            connected_users,
            simultaneity,
        })
    }

    /// Builds the scenario from user counts instead of a coefficient:
    /// `simultaneity = simultaneous_users / connected_users`.
    pub fn from_counts(
        link_capacity: F,
        connected_users: u64,
        simultaneous_users: u64,
    ) -> Result<Self> {
        if simultaneous_users == 0 {
            return Err(Error::invalid(
                "simultaneous_users",
                simultaneous_users,
                "at least 1",
            ));
        }
        if simultaneous_users > connected_users {
            return Err(Error::invalid(
                "simultaneous_users",
                simultaneous_users,
                "no more than the connected users",
            ));
        }
        let simultaneity =
            real::<F>(simultaneous_users as f64) / real::<F>(connected_users as f64);
        Self::new(link_capacity, connected_users, simultaneity)
    }

    pub fn link_capacity(&self) -> F {
        self.link_capacity
    }

    pub fn connected_users(&self) -> u64 {
        self.connected_users
    }

    pub fn simultaneity(&self) -> F {
        self.simultaneity
    }

    /// Expected simultaneously-active users `s_c * N`. May be fractional.
    pub fn simultaneous_users(&self) -> F {
        self.simultaneity * real(self.connected_users as f64)
    }

    /// Bit-rate available to each active user at peak:
    /// `link_capacity / (s_c * N)`.
    pub fn per_user_bitrate(&self) -> F {
        self.link_capacity / self.simultaneous_users()
    }

    /// Like [`per_user_bitrate`](Self::per_user_bitrate) but with the active
    /// count rounded up to a whole user, which sizes toward safety.
    pub fn per_user_bitrate_conservative(&self) -> F {
        self.link_capacity / self.simultaneous_users().ceil()
    }

    /// Average peak rate over all connected lines, `link_capacity / N` —
    /// the figure regulators usually publish.
    pub fn per_connected_user_rate(&self) -> F {
        self.link_capacity / real(self.connected_users as f64)
    }
}

/// Link capacity needed so that each of the `simultaneity * connected_users`
/// active users gets `per_user_target` bit/s. Inverse of
/// [`ContentionScenario::per_user_bitrate`].
pub fn required_link_capacity<F: Real>(
    per_user_target: F,
    connected_users: u64,
    simultaneity: F,
) -> Result<F> {
    if !(per_user_target > F::zero() && per_user_target.is_finite()) {
        return Err(Error::invalid(
            "per_user_target",
            per_user_target,
            "positive and finite",
        ));
    }
    if connected_users == 0 {
        return Err(Error::invalid("connected_users", connected_users, "at least 1"));
    }
    if !(simultaneity > F::zero() && simultaneity <= F::one()) {
        return Err(Error::invalid("simultaneity", simultaneity, "within (0, 1]"));
    }
    Ok(per_user_target * simultaneity * real(connected_users as f64))
}

/// Compounds `base` bit/s by `annual_growth` (fraction per year) over
/// `years`: `base * (1 + g)^years`.
pub fn project_demand<F: Real>(base: F, annual_growth: F, years: u32) -> Result<F> {
    if !(base > F::zero() && base.is_finite()) {
        return Err(Error::invalid("base", base, "positive and finite"));
    }
    if !(annual_growth >= F::zero() && annual_growth.is_finite()) {
        return Err(Error::invalid(
            "annual_growth",
            annual_growth,
            "zero or positive",
        ));
    }
    Ok(base * (F::one() + annual_growth).powi(years as i32))
}
