//! Scenario and catalog file loading.
//!
//! Files are TOML: named sections with `key = value` entries, editable by
//! hand (see `data/example-scenario.toml` for a commented walkthrough).
//! Quantities are either bare numbers in SI base units or strings with a
//! unit suffix. Loading validates every section against its model invariants
//! and records every default it injects.

use serde::Deserialize;

use vhcn_core::cache::CacheNode;
use vhcn_core::contention::ContentionScenario;
use vhcn_core::plane::ServiceRequirement;
use vhcn_core::pon::{
    PonScenario, PonStandard, DEFAULT_ACTIVITY_FACTOR, DEFAULT_AVAILABILITY, DEFAULT_B_MAX,
    DEFAULT_SPLITTING_FACTOR,
};
use vhcn_core::throughput::{NetworkPath, DEFAULT_MATHIS_C, DEFAULT_MSS_BYTES};

use crate::error::{CliError, Result};
use crate::report::OutputFormat;
use crate::units::{parse_fraction, parse_rate, parse_time};

/// Bundled default PON standards (also shipped at `data/pon-standards.toml`).
pub const DEFAULT_STANDARDS_TOML: &str = include_str!("../../../data/pon-standards.toml");

/// Default filling factors for the dimensioning grid.
pub const DEFAULT_FILLINGS: [f64; 4] = [1.0, 0.60, 0.25, 0.08];

/// A quantity given either as a bare number (SI base unit) or as a string
/// with a unit suffix.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

impl Quantity {
    fn rate(&self, field: &str) -> Result<f64> {
        self.parse_with(field, parse_rate)
    }

    fn time(&self, field: &str) -> Result<f64> {
        self.parse_with(field, parse_time)
    }

    fn fraction(&self, field: &str) -> Result<f64> {
        self.parse_with(field, parse_fraction)
    }

    fn parse_with(&self, field: &str, parse: fn(&str) -> std::result::Result<f64, String>) -> Result<f64> {
        match self {
            Quantity::Number(v) => Ok(*v),
            Quantity::Text(s) => {
                parse(s).map_err(|e| CliError::Validation(format!("{field}: {e}")))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    title: Option<String>,
    format: Option<String>,
    path: Option<RawPath>,
    services: Option<Vec<RawService>>,
    contention: Option<RawContention>,
    pon: Option<RawPon>,
    cache: Option<RawCache>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPath {
    bit_rate: Quantity,
    rtt: Quantity,
    plr: Quantity,
    mss: Option<f64>,
    mathis_c: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawService {
    name: String,
    min_bandwidth: Quantity,
    max_latency: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContention {
    link_capacity: Quantity,
    connected_users: u64,
    simultaneity: Option<Quantity>,
    simultaneous_users: Option<u64>,
    per_user_target: Option<Quantity>,
    annual_growth: Option<Quantity>,
    years: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPon {
    split: Option<u32>,
    activity: Option<Quantity>,
    b_max: Option<Quantity>,
    availability: Option<f64>,
    fillings: Option<Vec<Quantity>>,
    standards: Option<Vec<RawStandard>>,
    mc_samples: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStandard {
    name: String,
    capacity: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCache {
    b_out: Quantity,
    b_cache: Quantity,
    b_load: Option<Quantity>,
}

/// Catalog files hold only service entries.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    services: Vec<RawService>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStandardsFile {
    standards: Vec<RawStandard>,
}

/// Contention section plus its optional sizing and growth extras.
#[derive(Debug, Clone)]
pub struct ContentionSection {
    pub scenario: ContentionScenario<f64>,
    pub per_user_target: Option<f64>,
    pub annual_growth: Option<f64>,
    pub years: Option<u32>,
}

/// PON section resolved against defaults.
#[derive(Debug, Clone)]
pub struct PonSection {
    pub standards: Vec<PonStandard<f64>>,
    pub fillings: Vec<f64>,
    pub scenario: PonScenario<f64>,
    pub mc_samples: Option<u64>,
}

/// A fully validated scenario with every default filled in and recorded.
#[derive(Debug, Clone, Default)]
pub struct Scenario {
    pub title: Option<String>,
    pub format: Option<OutputFormat>,
    pub path: Option<NetworkPath<f64>>,
    pub services: Option<Vec<ServiceRequirement<f64>>>,
    pub contention: Option<ContentionSection>,
    pub pon: Option<PonSection>,
    pub cache: Option<CacheNode<f64>>,
    pub defaults_applied: Vec<String>,
}

/// Parses and validates a scenario file.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario =
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;

    if raw.path.is_none()
        && raw.services.is_none()
        && raw.contention.is_none()
        && raw.pon.is_none()
        && raw.cache.is_none()
    {
        return Err(CliError::Validation(
            "scenario contains no sections; add at least one of [path], [[services]], \
             [contention], [pon], [cache]"
                .into(),
        ));
    }

    let mut defaults = Vec::new();

    let path = raw
        .path
        .map(|p| build_path(p, &mut defaults))
        .transpose()?;

    let services = raw
        .services
        .map(build_services)
        .transpose()?;
    if services.is_some() && path.is_none() {
        return Err(CliError::Validation(
            "[[services]] requires a [path] section to classify against".into(),
        ));
    }

    let contention = raw
        .contention
        .map(build_contention)
        .transpose()?;

    let pon = raw.pon.map(|p| build_pon(p, &mut defaults)).transpose()?;

    let cache = raw
        .cache
        .map(|c| build_cache(c, &mut defaults))
        .transpose()?;

    let format = match raw.format.as_deref() {
        None => None,
        Some("text") => Some(OutputFormat::Text),
        Some("csv") => Some(OutputFormat::Csv),
        Some(other) => {
            return Err(CliError::Validation(format!(
                "format: unknown value {other:?} (must be \"text\" or \"csv\")"
            )))
        }
    };

    Ok(Scenario {
        title: raw.title,
        format,
        path,
        services,
        contention,
        pon,
        cache,
        defaults_applied: defaults,
    })
}

/// Parses a catalog file (`[[services]]` entries only).
pub fn load_catalog(text: &str) -> Result<Vec<ServiceRequirement<f64>>> {
    let raw: RawCatalog = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    build_services(raw.services)
}

/// Parses a standards file (`[[standards]]` entries only).
pub fn load_standards(text: &str) -> Result<Vec<PonStandard<f64>>> {
    let raw: RawStandardsFile =
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    build_standards(raw.standards)
}

/// The bundled GPON / XG-PON / TWDM-PON defaults.
pub fn default_standards() -> Vec<PonStandard<f64>> {
    load_standards(DEFAULT_STANDARDS_TOML).expect("bundled standards file is valid")
}

fn build_path(raw: RawPath, defaults: &mut Vec<String>) -> Result<NetworkPath<f64>> {
    let mss = match raw.mss {
        Some(v) => v,
        None => {
            defaults.push(format!("path.mss = {DEFAULT_MSS_BYTES} byte"));
            DEFAULT_MSS_BYTES
        }
    };
    let mathis_c = match raw.mathis_c {
        Some(v) => v,
        None => {
            defaults.push(format!("path.mathis_c = {DEFAULT_MATHIS_C}"));
            DEFAULT_MATHIS_C
        }
    };
    NetworkPath::new(
        raw.bit_rate.rate("path.bit_rate")?,
        raw.rtt.time("path.rtt")?,
        raw.plr.fraction("path.plr")?,
        mss,
        mathis_c,
    )
    .map_err(|e| CliError::Validation(format!("[path] {e}")))
}

fn build_services(raw: Vec<RawService>) -> Result<Vec<ServiceRequirement<f64>>> {
    if raw.is_empty() {
        return Err(CliError::Validation(
            "[[services]] is present but empty".into(),
        ));
    }
    raw.into_iter()
        .map(|s| {
            let min_bandwidth = s.min_bandwidth.rate(&format!("services.{}.min_bandwidth", s.name))?;
            let max_latency = s.max_latency.time(&format!("services.{}.max_latency", s.name))?;
            ServiceRequirement::new(s.name.clone(), min_bandwidth, max_latency)
                .map_err(|e| CliError::Validation(format!("service {:?}: {e}", s.name)))
        })
        .collect()
}

fn build_contention(raw: RawContention) -> Result<ContentionSection> {
    let capacity = raw.link_capacity.rate("contention.link_capacity")?;
    let scenario = match (&raw.simultaneity, raw.simultaneous_users) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "[contention] give either simultaneity or simultaneous_users, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation(
                "[contention] needs simultaneity or simultaneous_users".into(),
            ))
        }
        (Some(q), None) => ContentionScenario::new(
            capacity,
            raw.connected_users,
            q.fraction("contention.simultaneity")?,
        ),
        (None, Some(active)) => {
            ContentionScenario::from_counts(capacity, raw.connected_users, active)
        }
    }
    .map_err(|e| CliError::Validation(format!("[contention] {e}")))?;

    if raw.annual_growth.is_some() != raw.years.is_some() {
        return Err(CliError::Validation(
            "[contention] annual_growth and years go together".into(),
        ));
    }

    Ok(ContentionSection {
        scenario,
        per_user_target: raw
            .per_user_target
            .map(|q| q.rate("contention.per_user_target"))
            .transpose()?,
        annual_growth: raw
            .annual_growth
            .map(|q| q.fraction("contention.annual_growth"))
            .transpose()?,
        years: raw.years,
    })
}

fn build_pon(raw: RawPon, defaults: &mut Vec<String>) -> Result<PonSection> {
    let split = match raw.split {
        Some(v) => v,
        None => {
            defaults.push(format!("pon.split = {DEFAULT_SPLITTING_FACTOR}"));
            DEFAULT_SPLITTING_FACTOR
        }
    };
    let activity = match raw.activity {
        Some(q) => q.fraction("pon.activity")?,
        None => {
            defaults.push(format!(
                "pon.activity = {}%",
                DEFAULT_ACTIVITY_FACTOR * 100.0
            ));
            DEFAULT_ACTIVITY_FACTOR
        }
    };
    let b_max = match raw.b_max {
        Some(q) => q.rate("pon.b_max")?,
        None => {
            defaults.push(format!("pon.b_max = {} Mbit/s", DEFAULT_B_MAX / 1e6));
            DEFAULT_B_MAX
        }
    };
    let availability = match raw.availability {
        Some(v) => v,
        None => {
            defaults.push(format!("pon.availability = {DEFAULT_AVAILABILITY}"));
            DEFAULT_AVAILABILITY
        }
    };
    let fillings = match raw.fillings {
        Some(list) => {
            if list.is_empty() {
                return Err(CliError::Validation("pon.fillings is empty".into()));
            }
            list.iter()
                .map(|q| q.fraction("pon.fillings"))
                .collect::<Result<Vec<_>>>()?
        }
        None => {
            defaults.push("pon.fillings = 100%, 60%, 25%, 8%".into());
            DEFAULT_FILLINGS.to_vec()
        }
    };
    let standards = match raw.standards {
        Some(list) => {
            if list.is_empty() {
                return Err(CliError::Validation("pon.standards is empty".into()));
            }
            build_standards(list)?
        }
        None => {
            defaults.push("pon.standards = GPON, XG-PON, TWDM-PON".into());
            default_standards()
        }
    };
    // The grid swaps its own filling in per cell; seed with the first one
    // and vet the rest now so bad fillings fail at load time.
    let scenario = PonScenario::new(split, fillings[0], activity, b_max, availability)
        .map_err(|e| CliError::Validation(format!("[pon] {e}")))?;
    for &filling in &fillings[1..] {
        scenario
            .with_filling(filling)
            .map_err(|e| CliError::Validation(format!("[pon] {e}")))?;
    }
    Ok(PonSection {
        standards,
        fillings,
        scenario,
        mc_samples: raw.mc_samples,
    })
}

fn build_standards(raw: Vec<RawStandard>) -> Result<Vec<PonStandard<f64>>> {
    raw.into_iter()
        .map(|s| {
            let capacity = s.capacity.rate(&format!("standards.{}.capacity", s.name))?;
            PonStandard::new(s.name.clone(), capacity)
                .map_err(|e| CliError::Validation(format!("standard {:?}: {e}", s.name)))
        })
        .collect()
}

fn build_cache(raw: RawCache, defaults: &mut Vec<String>) -> Result<CacheNode<f64>> {
    let b_load = match raw.b_load {
        Some(q) => q.rate("cache.b_load")?,
        None => {
            defaults.push("cache.b_load = 0 bit/s".into());
            0.0
        }
    };
    CacheNode::new(
        raw.b_out.rate("cache.b_out")?,
        raw.b_cache.rate("cache.b_cache")?,
        b_load,
    )
    .map_err(|e| CliError::Validation(format!("[cache] {e}")))
}
