//! Oversubscription dimensioning of PON downstream capacity.
//!
//! A splitter tree shares one downstream channel of capacity `C` among the
//! users connected to it. With independent activity (each connected user
//! active with the same probability), the number of simultaneously active
//! users is binomial, and equal sharing gives each active user `C / K`
//! capped at the commercial ceiling `b_max`. Two figures of merit follow:
//!
//! - the bandwidth exceeded in a fraction `availability` of the time
//!   ([`b_percentile`]), and
//! - the probability that a user enjoys the full capped speed
//!   ([`prob_full_speed`]).
//!
//! The distribution is evaluated exactly (term recurrence, no normal or
//! Poisson approximation); [`monte_carlo_estimate`] provides an independent
//! simulation cross-check. For correlated traffic the percentile bandwidth
//! computed here is an upper bound: independence is the favorable case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::{real, Real};

/// Default splitting factor (1:64).
pub const DEFAULT_SPLITTING_FACTOR: u32 = 64;
/// Default probability that a connected user is active at a given instant.
pub const DEFAULT_ACTIVITY_FACTOR: f64 = 0.15;
/// Default commercial bandwidth cap in bit/s (operators block higher values).
pub const DEFAULT_B_MAX: f64 = 1e9;
/// Default availability for the percentile bandwidth (99% of the time).
pub const DEFAULT_AVAILABILITY: f64 = 0.99;
/// Fewest Monte Carlo draws accepted by [`monte_carlo_estimate`].
pub const MIN_MONTE_CARLO_SAMPLES: u64 = 10_000;

/// Samples per deterministic Monte Carlo shard. The shard plan depends only
/// on the sample count, so results do not change with the execution order or
/// the number of workers replaying the shards.
const SHARD_SAMPLES: u64 = 1 << 16;

/// One PON generation: a name and its shared downstream capacity in bit/s.
#[derive(Debug, Clone, PartialEq)]
pub struct PonStandard<F> {
    name: String,
    downstream_capacity: F,
}

impl<F: Real> PonStandard<F> {
    pub fn new(name: impl Into<String>, downstream_capacity: F) -> Result<Self> {
        if !(downstream_capacity > F::zero() && downstream_capacity.is_finite()) {
            return Err(Error::invalid(
                "downstream_capacity",
                downstream_capacity,
                "positive and finite",
            ));
        }
        Ok(Self {
            name: name.into(),
            downstream_capacity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Shared downstream capacity in bit/s.
    pub fn downstream_capacity(&self) -> F {
        self.downstream_capacity
    }
}

/// Operating conditions of a splitter tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PonScenario<F> {
    splitting_factor: u32,
    filling_factor: F,
    activity_factor: F,
    b_max: F,
    availability: F,
}

impl<F: Real> PonScenario<F> {
    /// `filling_factor` and `activity_factor` are fractions in `(0, 1]`,
    /// `b_max` in bit/s, `availability` in `(0, 1)`.
    pub fn new(
        splitting_factor: u32,
        filling_factor: F,
        activity_factor: F,
        b_max: F,
        availability: F,
    ) -> Result<Self> {
        if splitting_factor == 0 {
            return Err(Error::invalid("splitting_factor", splitting_factor, "at least 1"));
        }
        ensure_unit_fraction("filling_factor", filling_factor)?;
        ensure_unit_fraction("activity_factor", activity_factor)?;
        if !(b_max > F::zero() && b_max.is_finite()) {
            return Err(Error::invalid("b_max", b_max, "positive and finite"));
        }
        if !(availability > F::zero() && availability < F::one()) {
            return Err(Error::invalid("availability", availability, "within (0, 1)"));
        }
        Ok(Self {
            splitting_factor,
            filling_factor,
            activity_factor,
            b_max,
            availability,
        })
    }

    /// Same scenario with a different filling factor.
    pub fn with_filling(&self, filling_factor: F) -> Result<Self> {
        Self::new(
            self.splitting_factor,
            filling_factor,
            self.activity_factor,
            self.b_max,
            self.availability,
        )
    }

    pub fn splitting_factor(&self) -> u32 {
        self.splitting_factor
    }

    pub fn filling_factor(&self) -> F {
        self.filling_factor
    }

    pub fn activity_factor(&self) -> F {
        self.activity_factor
    }

    pub fn b_max(&self) -> F {
        self.b_max
    }

    pub fn availability(&self) -> F {
        self.availability
    }

    /// Users connected to the tree under this filling factor.
    pub fn connected_users(&self) -> u32 {
        // Invariants guarantee the arguments, so this cannot fail.
        connected_users(self.splitting_factor, self.filling_factor)
            .expect("scenario invariants hold")
    }
}

/// Occupied ports of a splitter: `floor(splitting_factor * filling_factor)`,
/// never less than one user.
pub fn connected_users<F: Real>(splitting_factor: u32, filling_factor: F) -> Result<u32> {
    if splitting_factor == 0 {
        return Err(Error::invalid("splitting_factor", splitting_factor, "at least 1"));
    }
    ensure_unit_fraction("filling_factor", filling_factor)?;
    let exact = real::<F>(splitting_factor as f64) * filling_factor;
    // Guard against the product rounding a hair below the exact integer.
    let users = (exact + real(1e-9)).floor();
    let users = users.to_u64().unwrap_or(0).min(splitting_factor as u64) as u32;
    Ok(users.max(1))
}

/// Exact distribution of the simultaneously active users among `trials`
/// connected ones, each independently active with probability
/// `success_prob`.
///
/// The mass function is evaluated with the standard two-term recurrence
/// starting from the most reliable tail, which keeps every term exact to a
/// few ulp for the tree sizes that occur in access networks.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveUserDistribution<F> {
    trials: u32,
    success_prob: F,
    pmf: Vec<F>,
    cdf: Vec<F>,
}

impl<F: Real> ActiveUserDistribution<F> {
    pub fn new(trials: u32, success_prob: F) -> Result<Self> {
        if !(success_prob >= F::zero() && success_prob <= F::one()) {
            return Err(Error::invalid("success_prob", success_prob, "within [0, 1]"));
        }
        let pmf = binomial_pmf(trials, success_prob);
        let mut cdf = Vec::with_capacity(pmf.len());
        let mut acc = F::zero();
        for &term in &pmf {
            acc = acc + term;
            // A probability never exceeds one; shave the rounding overshoot.
            cdf.push(acc.min(F::one()));
        }
        // The distribution is exhaustive: the final cumulative value is 1 by
        // definition, not 1 minus a rounding residue.
        *cdf.last_mut().expect("at least one outcome") = F::one();
        Ok(Self {
            trials,
            success_prob,
            pmf,
            cdf,
        })
    }

    pub fn trials(&self) -> u32 {
        self.trials
    }

    pub fn success_prob(&self) -> F {
        self.success_prob
    }

    /// `P(K = count)`.
    pub fn pmf(&self, count: u32) -> Result<F> {
        self.check_range(count)?;
        Ok(self.pmf[count as usize])
    }

    /// `P(K <= count)`, exact cumulative probability.
    pub fn cdf(&self, count: u32) -> Result<F> {
        self.check_range(count)?;
        Ok(self.cdf[count as usize])
    }

    /// Smallest count not exceeded with probability at least `availability`:
    /// the minimal `k` with `cdf(k) >= availability`.
    pub fn percentile(&self, availability: F) -> Result<u32> {
        if !(availability > F::zero() && availability < F::one()) {
            return Err(Error::invalid("availability", availability, "within (0, 1)"));
        }
        Ok(self
            .cdf
            .iter()
            .position(|&c| c >= availability)
            .unwrap_or(self.trials as usize) as u32)
    }

    fn check_range(&self, count: u32) -> Result<()> {
        if count > self.trials {
            return Err(Error::CountOutOfRange {
                count,
                trials: self.trials,
            });
        }
        Ok(())
    }
}

fn binomial_pmf<F: Real>(trials: u32, success_prob: F) -> Vec<F> {
    let n = trials as usize;
    let mut pmf = vec![F::zero(); n + 1];
    if success_prob.is_zero() {
        pmf[0] = F::one();
        return pmf;
    }
    if success_prob == F::one() {
        pmf[n] = F::one();
        return pmf;
    }
    // Recurse upward from k = 0 with the smaller of p and q as the "success"
    // side, then mirror; the starting term max(p,q)^n never underflows for
    // realistic tree sizes.
    let half = real::<F>(0.5);
    let flipped = success_prob > half;
    let p = if flipped {
        F::one() - success_prob
    } else {
        success_prob
    };
    let q = F::one() - p;
    let ratio = p / q;
    let mut term = q.powi(trials as i32);
    for k in 0..=n {
        let slot = if flipped { n - k } else { k };
        pmf[slot] = term;
        if k < n {
            term = term * ratio * real((n - k) as f64) / real((k + 1) as f64);
        }
    }
    pmf
}

/// Bandwidth exceeded in a fraction `availability` of the time: the capacity
/// split equally among the `availability`-percentile count of active users,
/// capped at `b_max`. An all-idle tree constrains nobody, so the divisor is
/// never below one user.
pub fn b_percentile<F: Real>(standard: &PonStandard<F>, scenario: &PonScenario<F>) -> Result<F> {
    let dist = ActiveUserDistribution::new(scenario.connected_users(), scenario.activity_factor())?;
    let busy = dist.percentile(scenario.availability())?.max(1);
    let share = standard.downstream_capacity() / real(busy as f64);
    Ok(share.min(scenario.b_max()))
}

/// Probability that an active user gets the full capped speed `b_max`: the
/// probability that no more than `floor(C / b_max)` users are active.
pub fn prob_full_speed<F: Real>(standard: &PonStandard<F>, scenario: &PonScenario<F>) -> Result<F> {
    let users = scenario.connected_users();
    let dist = ActiveUserDistribution::new(users, scenario.activity_factor())?;
    let threshold = full_speed_threshold(standard.downstream_capacity(), scenario.b_max())
        .min(users as u64) as u32;
    dist.cdf(threshold)
}

/// How many simultaneously active users still allow everyone the full capped
/// speed.
fn full_speed_threshold<F: Real>(capacity: F, b_max: F) -> u64 {
    let ratio = capacity / b_max;
    // Same rounding guard as connected_users.
    let floored = (ratio + real(1e-9)).floor();
    floored.to_u64().unwrap_or(u64::MAX)
}

/// One cell of the dimensioning grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensioningCell<F> {
    pub filling_factor: F,
    pub connected_users: u32,
    /// Bandwidth exceeded with the scenario's availability, bit/s.
    pub b_percentile: F,
    /// Probability of enjoying the full capped speed.
    pub full_speed_probability: F,
}

/// One standard evaluated across all filling factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensioningRow<F> {
    pub standard: PonStandard<F>,
    pub cells: Vec<DimensioningCell<F>>,
}

/// Cross-product grid of standards and filling factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensioningTable<F> {
    pub fillings: Vec<F>,
    pub rows: Vec<DimensioningRow<F>>,
}

/// Evaluates every standard under every filling factor, preserving input
/// order in both dimensions.
pub fn dimensioning_table<F: Real>(
    standards: &[PonStandard<F>],
    fillings: &[F],
    scenario: &PonScenario<F>,
) -> Result<DimensioningTable<F>> {
    if standards.is_empty() {
        return Err(Error::invalid("standards", "[]", "a non-empty list"));
    }
    if fillings.is_empty() {
        return Err(Error::invalid("fillings", "[]", "a non-empty list"));
    }
    let rows = standards
        .iter()
        .map(|standard| {
            let cells = fillings
                .iter()
                .map(|&filling| {
                    let cell_scenario = scenario.with_filling(filling)?;
                    Ok(DimensioningCell {
                        filling_factor: filling,
                        connected_users: cell_scenario.connected_users(),
                        b_percentile: b_percentile(standard, &cell_scenario)?,
                        full_speed_probability: prob_full_speed(standard, &cell_scenario)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DimensioningRow {
                standard: standard.clone(),
                cells,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensioningTable {
        fillings: fillings.to_vec(),
        rows,
    })
}

/// Simulation estimate of the percentile bandwidth and full-speed
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate<F> {
    /// Empirical counterpart of [`b_percentile`], bit/s.
    pub b_percentile: F,
    /// Empirical counterpart of [`prob_full_speed`].
    pub full_speed_probability: F,
    pub samples: u64,
}

/// Draws `samples` independent active-user counts and reads the percentile
/// bandwidth and full-speed probability off the empirical distribution.
///
/// Deterministic for a fixed `seed`: sampling is split into fixed-size
/// shards, each drawn from its own counter-derived stream, so the merged
/// histogram does not depend on how the shards would be scheduled.
pub fn monte_carlo_estimate<F: Real>(
    standard: &PonStandard<F>,
    scenario: &PonScenario<F>,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate<F>> {
    if samples < MIN_MONTE_CARLO_SAMPLES {
        return Err(Error::invalid(
            "samples",
            samples,
            "at least 10^4 for a usable estimate",
        ));
    }
    let users = scenario.connected_users();
    let activity = scenario
        .activity_factor()
        .to_f64()
        .expect("activity factor fits f64");
    let binomial = Binomial::new(users as u64, activity).expect("validated activity factor");

    let mut histogram = vec![0u64; users as usize + 1];
    let mut remaining = samples;
    let mut shard = 0u64;
    while remaining > 0 {
        let count = remaining.min(SHARD_SAMPLES);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        for _ in 0..count {
            histogram[binomial.sample(&mut rng) as usize] += 1;
        }
        remaining -= count;
        shard += 1;
    }

    let availability = scenario
        .availability()
        .to_f64()
        .expect("availability fits f64");
    let needed = ((availability * samples as f64) - 1e-9).ceil() as u64;
    let mut cumulative = 0u64;
    let mut active_at_availability = users;
    for (k, &count) in histogram.iter().enumerate() {
        cumulative += count;
        if cumulative >= needed {
            active_at_availability = k as u32;
            break;
        }
    }

    let share = standard.downstream_capacity() / real(active_at_availability.max(1) as f64);
    let b = share.min(scenario.b_max());

    let threshold = full_speed_threshold(standard.downstream_capacity(), scenario.b_max())
        .min(users as u64) as usize;
    let full_speed_draws: u64 = histogram[..=threshold].iter().sum();
    let beta = real::<F>(full_speed_draws as f64) / real(samples as f64);

    Ok(MonteCarloEstimate {
        b_percentile: b,
        full_speed_probability: beta,
        samples,
    })
}

/// Simulation estimate of the percentile bandwidth alone.
pub fn monte_carlo_b_percentile<F: Real>(
    standard: &PonStandard<F>,
    scenario: &PonScenario<F>,
    samples: u64,
    seed: u64,
) -> Result<F> {
    monte_carlo_estimate(standard, scenario, samples, seed).map(|e| e.b_percentile)
}

fn ensure_unit_fraction<F: Real>(name: &'static str, value: F) -> Result<()> {
    if value > F::zero() && value <= F::one() {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "within (0, 1]"))
    }
}
