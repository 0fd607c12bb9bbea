//! Parsing and display of rates, times, and fractions.
//!
//! Rates accept `bit`, `kbit`, `Mbit`, `Gbit`, `Tbit` (optionally followed
//! by `/s`) and the `bps` spellings; bare numbers are bit/s. Times accept
//! `s`, `ms`, `us`/`µs`, `ns`; bare numbers are seconds. Fractions accept a
//! trailing `%`. Unit matching is case-insensitive.

/// Parses a data rate into bit/s.
pub fn parse_rate(input: &str) -> Result<f64, String> {
    let (value, suffix) = split_unit(input)?;
    let suffix = suffix.strip_suffix("/s").unwrap_or(&suffix);
    let scale = match suffix {
        "" | "bit" | "bps" => 1.0,
        "kbit" | "kbps" => 1e3,
        "mbit" | "mbps" => 1e6,
        "gbit" | "gbps" => 1e9,
        "tbit" | "tbps" => 1e12,
        other => return Err(format!("unknown rate unit {other:?} in {input:?}")),
    };
    Ok(value * scale)
}

/// Parses a duration into seconds.
pub fn parse_time(input: &str) -> Result<f64, String> {
    let (value, suffix) = split_unit(input)?;
    let scale = match suffix.as_str() {
        "" | "s" => 1.0,
        "ms" => 1e-3,
        "us" | "µs" => 1e-6,
        "ns" => 1e-9,
        other => return Err(format!("unknown time unit {other:?} in {input:?}")),
    };
    Ok(value * scale)
}

/// Parses a fraction, accepting percent notation (`10%` == `0.1`).
pub fn parse_fraction(input: &str) -> Result<f64, String> {
    let trimmed = input.trim();
    if let Some(percent) = trimmed.strip_suffix('%') {
        let value: f64 = percent
            .trim()
            .parse()
            .map_err(|_| format!("not a number: {input:?}"))?;
        Ok(value / 100.0)
    } else {
        trimmed
            .parse()
            .map_err(|_| format!("not a number: {input:?}"))
    }
}

fn split_unit(input: &str) -> Result<(f64, String), String> {
    let trimmed = input.trim();
    let split = trimmed
        .char_indices()
        .find(|(_, c)| c.is_alphabetic() || *c == 'µ')
        .map(|(i, _)| i)
        .unwrap_or(trimmed.len());
    let (number, unit) = trimmed.split_at(split);
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {input:?}"))?;
    Ok((value, unit.trim().to_ascii_lowercase()))
}

/// Human rate with one decimal, choosing the natural prefix.
pub fn format_rate(bits_per_s: f64) -> String {
    if bits_per_s >= 1e9 {
        format!("{:.1} Gbit/s", bits_per_s / 1e9)
    } else if bits_per_s >= 1e6 {
        format!("{:.1} Mbit/s", bits_per_s / 1e6)
    } else if bits_per_s >= 1e3 {
        format!("{:.1} kbit/s", bits_per_s / 1e3)
    } else {
        format!("{:.1} bit/s", bits_per_s)
    }
}

/// Rate in Mbit/s with one decimal, no unit suffix (for table cells whose
/// header carries the unit).
pub fn format_mbit(bits_per_s: f64) -> String {
    format!("{:.1}", bits_per_s / 1e6)
}

/// Fraction as percent with one decimal.
pub fn format_percent(fraction: f64) -> String {
    format!("{:.1}%", fraction * 100.0)
}

/// Duration in milliseconds with three significant digits.
pub fn format_latency(seconds: f64) -> String {
    let ms = seconds * 1e3;
    if ms <= 0.0 || !ms.is_finite() {
        return format!("{ms} ms");
    }
    let digits = (2 - ms.abs().log10().floor() as i32).max(0) as usize;
    format!("{ms:.digits$} ms")
}
