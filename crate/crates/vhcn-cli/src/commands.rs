//! Report builders: one section per model, no arithmetic beyond the library
//! calls being wrapped.

use vhcn_core::cache::{CacheNode, Speedup};
use vhcn_core::contention::{project_demand, required_link_capacity};
use vhcn_core::plane::{catalog_report, LimitingFactor, Region, ServiceRequirement};
use vhcn_core::pon::{dimensioning_table, monte_carlo_estimate};
use vhcn_core::throughput::{NetworkPath, Throughput};

use crate::error::{CliError, Result};
use crate::report::{Column, Report, Section, Table, Value};
use crate::scenario::{ContentionSection, PonSection, Scenario};
use crate::units::{format_percent, format_rate};

/// Threshold for the gigabit-target verdict line.
const GIGABIT: f64 = 1e9;

pub fn throughput_section(path: &NetworkPath<f64>) -> Section {
    let mut table = Table::key_value();
    table.push_kv("bit_rate", Value::Rate(path.bit_rate()));
    table.push_kv("rtt", Value::Seconds(path.rtt()));
    table.push_kv("plr", Value::Percent(path.plr()));
    table.push_kv("mss (byte)", Value::Num(path.mss()));
    table.push_kv("mathis_c", Value::Num(path.mathis_c()));
    table.push_kv("distance_metric", Value::Seconds(path.distance_metric()));
    table.push_kv(
        "ca_ceiling",
        match path.mathis_throughput() {
            Throughput::Finite(v) => Value::Rate(v),
            Throughput::Unbounded => Value::Text("unbounded".into()),
        },
    );
    let effective = path.effective_throughput();
    table.push_kv("effective_throughput", Value::Rate(effective));
    table.push_kv(
        "region",
        Value::Text(region_text(region_of(path)).into()),
    );
    table.push_kv(
        "critical_rtt",
        match path.critical_rtt() {
            Ok(rtt) => Value::Seconds(rtt),
            Err(_) => Value::Text("none (zero loss)".into()),
        },
    );
    table.push_kv(
        "gigabit_target",
        Value::Text(if effective >= GIGABIT {
            "met".into()
        } else {
            format!("NOT met ({} < 1.0 Gbit/s)", format_rate(effective))
        }),
    );
    Section::new("throughput", table)
}

pub fn services_section(
    catalog: &[ServiceRequirement<f64>],
    path: &NetworkPath<f64>,
) -> Result<Section> {
    let report = catalog_report(catalog, path)
        .map_err(|e| CliError::Compute(format!("[services] {e}")))?;
    let mut table = Table::new(vec![
        Column::new("service", "service"),
        Column::new("min bandwidth", "min_bandwidth_bit_per_s"),
        Column::new("max latency", "max_latency_s"),
        Column::new("region", "region"),
        Column::new("feasible", "feasible"),
        Column::new("achieved", "achieved_bit_per_s"),
        Column::new("limiting factor", "limiting_factor"),
    ]);
    for (service, verdict) in report {
        table.push(vec![
            Value::Text(service.name().to_string()),
            Value::Rate(service.min_bandwidth()),
            Value::Seconds(service.max_latency()),
            Value::Text(region_text(verdict.region).into()),
            Value::Text(if verdict.feasible { "yes" } else { "no" }.into()),
            Value::Rate(verdict.achieved_throughput),
            Value::Text(limiting_text(verdict.limiting_factor).into()),
        ]);
    }
    Ok(Section::new("services", table))
}

pub fn boundary_section(curve: &[(f64, f64)]) -> Section {
    let mut table = Table::new(vec![
        Column::new("bandwidth", "bandwidth_bit_per_s"),
        Column::new("critical rtt", "critical_rtt_s"),
    ]);
    for &(bandwidth, rtt) in curve {
        table.push(vec![Value::Rate(bandwidth), Value::Seconds(rtt)]);
    }
    Section::new("boundary", table)
}

pub fn contention_section(section: &ContentionSection) -> Result<Section> {
    let scenario = &section.scenario;
    let mut table = Table::key_value();
    table.push_kv("link_capacity", Value::Rate(scenario.link_capacity()));
    table.push_kv("connected_users", Value::Count(scenario.connected_users()));
    table.push_kv("simultaneity", Value::Percent(scenario.simultaneity()));
    table.push_kv("simultaneous_users", Value::Num(scenario.simultaneous_users()));
    table.push_kv("per_user_bitrate", Value::Rate(scenario.per_user_bitrate()));
    table.push_kv(
        "per_user_bitrate_conservative",
        Value::Rate(scenario.per_user_bitrate_conservative()),
    );
    table.push_kv(
        "per_connected_user_rate",
        Value::Rate(scenario.per_connected_user_rate()),
    );
    if let Some(target) = section.per_user_target {
        let capacity = required_link_capacity(
            target,
            scenario.connected_users(),
            scenario.simultaneity(),
        )
        .map_err(|e| CliError::Compute(format!("[contention] {e}")))?;
        table.push_kv(
            &format!("required_link_capacity for {}", format_rate(target)),
            Value::Rate(capacity),
        );
    }
    if let (Some(growth), Some(years)) = (section.annual_growth, section.years) {
        let projected = project_demand(scenario.per_user_bitrate(), growth, years)
            .map_err(|e| CliError::Compute(format!("[contention] {e}")))?;
        table.push_kv(
            &format!(
                "per_user_bitrate after {years} years at {}/year",
                format_percent(growth)
            ),
            Value::Rate(projected),
        );
    }
    Ok(Section::new("contention", table))
}

pub fn pon_section(section: &PonSection, seed: u64) -> Result<Section> {
    let grid = dimensioning_table(&section.standards, &section.fillings, &section.scenario)
        .map_err(|e| CliError::Compute(format!("[pon] {e}")))?;

    let mut columns = vec![
        Column::new("standard", "standard"),
        Column::new("capacity", "capacity_bit_per_s"),
        Column::new("filling", "filling_frac"),
        Column::new("users", "users"),
        Column::new("B99 (Mbit/s)", "b_availability_bit_per_s"),
        Column::new("full-speed prob", "full_speed_prob_frac"),
    ];
    if section.mc_samples.is_some() {
        columns.push(Column::new("B99 mc (Mbit/s)", "b_availability_mc_bit_per_s"));
        columns.push(Column::new("full-speed mc", "full_speed_prob_mc_frac"));
    }
    let mut table = Table::new(columns);

    for row in &grid.rows {
        for cell in &row.cells {
            let mut record = vec![
                Value::Text(row.standard.name().to_string()),
                Value::Rate(row.standard.downstream_capacity()),
                Value::Percent(cell.filling_factor),
                Value::Count(cell.connected_users as u64),
                Value::RateMbit(cell.b_percentile),
                Value::Percent(cell.full_speed_probability),
            ];
            if let Some(samples) = section.mc_samples {
                let cell_scenario = section
                    .scenario
                    .with_filling(cell.filling_factor)
                    .map_err(|e| CliError::Compute(format!("[pon] {e}")))?;
                let estimate =
                    monte_carlo_estimate(&row.standard, &cell_scenario, samples, seed)
                        .map_err(|e| CliError::Compute(format!("[pon] {e}")))?;
                record.push(Value::RateMbit(estimate.b_percentile));
                record.push(Value::Percent(estimate.full_speed_probability));
            }
            table.push(record);
        }
    }

    let scn = &section.scenario;
    let mut section_out = Section::new("pon", table).with_note(format!(
        "split 1:{}, activity {}, availability {}, cap {}",
        scn.splitting_factor(),
        format_percent(scn.activity_factor()),
        format_percent(scn.availability()),
        format_rate(scn.b_max()),
    ));
    if let Some(samples) = section.mc_samples {
        section_out = section_out.with_note(format!(
            "monte carlo columns: {samples} samples per cell, seed {seed}"
        ));
    }
    Ok(section_out)
}

pub fn cache_section(node: &CacheNode<f64>) -> Result<Section> {
    let mut table = Table::key_value();
    table.push_kv("b_out", Value::Rate(node.b_out()));
    table.push_kv("b_cache", Value::Rate(node.b_cache()));
    table.push_kv("b_load", Value::Rate(node.b_load()));
    let efficiency = node
        .efficiency()
        .map_err(|e| CliError::Compute(format!("[cache] {e}")))?;
    table.push_kv("efficiency", Value::Percent(efficiency));
    table.push_kv(
        "speedup",
        match node
            .speedup()
            .map_err(|e| CliError::Compute(format!("[cache] {e}")))?
        {
            Speedup::Finite(v) => Value::Num(v),
            Speedup::Unbounded => Value::Text("unbounded".into()),
        },
    );
    table.push_kv("upstream_bandwidth", Value::Rate(node.upstream_bandwidth()));
    table.push_kv(
        "upstream_reduction",
        match node.upstream_reduction() {
            Speedup::Finite(v) => Value::Num(v),
            Speedup::Unbounded => Value::Text("unbounded".into()),
        },
    );
    Ok(Section::new("cache", table))
}

/// Builds the full report for a loaded scenario, sections in file-schema
/// order.
pub fn scenario_report(scenario: &Scenario, seed: u64) -> Result<Report> {
    let mut report = Report {
        title: scenario.title.clone(),
        defaults_applied: scenario.defaults_applied.clone(),
        sections: Vec::new(),
    };
    if let Some(path) = &scenario.path {
        report.push(throughput_section(path));
    }
    if let (Some(services), Some(path)) = (&scenario.services, &scenario.path) {
        report.push(services_section(services, path)?);
    }
    if let Some(contention) = &scenario.contention {
        report.push(contention_section(contention)?);
    }
    if let Some(pon) = &scenario.pon {
        report.push(pon_section(pon, seed)?);
    }
    if let Some(cache) = &scenario.cache {
        report.push(cache_section(cache)?);
    }
    Ok(report)
}

fn region_of(path: &NetworkPath<f64>) -> Region {
    if path.mathis_throughput().at_least(path.bit_rate()) {
        Region::BitRateLimited
    } else {
        Region::LatencyLimited
    }
}

fn region_text(region: Region) -> &'static str {
    match region {
        Region::BitRateLimited => "bit-rate limited",
        Region::LatencyLimited => "latency limited",
    }
}

fn limiting_text(factor: LimitingFactor) -> &'static str {
    match factor {
        LimitingFactor::None => "none",
        LimitingFactor::BandwidthShortfall => "bandwidth shortfall",
        LimitingFactor::LatencyExceeded => "latency exceeded",
        LimitingFactor::Both => "bandwidth and latency",
    }
}
