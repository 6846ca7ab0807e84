//! On-disk formats: benchmark CSV and the flat scenario dump.
//!
//! CSV: one header line, then one row per record, UTF-8 with LF
//! endings. Floats use 17 significant digits so every value round-trips
//! bit-exactly through [`parse_csv`]; a spike record's missing
//! `rel_error` is an empty field.
//!
//! Scenario dump: `# key = value` comment lines carrying the full
//! configuration, then one node per line as `kind,x,y,cluster_index`
//! with kind `bs` or `user`, in placement order.

use crate::bench::BenchmarkRecord;
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::geometry::{NetworkScenario, Position};
use std::path::Path;

pub const CSV_HEADER: &str =
    "method,j_m,k_m,beta,capacity_mean,capacity_std,rel_error,wall_time_s,trials,seed";

/// 17 significant digits: the shortest count that round-trips every f64.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_to_string(records: &[BenchmarkRecord]) -> String {
    let mut out = String::with_capacity(64 + 160 * records.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let rel = r.rel_error.map(fmt_float).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.method,
            r.j_m,
            r.k_m,
            fmt_float(r.beta),
            fmt_float(r.capacity_mean),
            fmt_float(r.capacity_std),
            rel,
            fmt_float(r.wall_time_s),
            r.trials,
            r.seed,
        ));
    }
    out
}

/// Writes the records as CSV to `path`.
pub fn emit_csv(records: &[BenchmarkRecord], path: &Path) -> Result<()> {
    std::fs::write(path, csv_to_string(records)).map_err(|e| Error::io(path, e))
}

fn parse_field<T: std::str::FromStr>(name: &'static str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| {
        Error::invalid(
            name,
            format!("line {line}: cannot parse `{value}`"),
        )
    })
}

/// Parses CSV produced by [`csv_to_string`] back into records.
pub fn parse_csv(text: &str) -> Result<Vec<BenchmarkRecord>> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::invalid("csv", "empty input"));
    };
    if header != CSV_HEADER {
        return Err(Error::invalid(
            "csv",
            format!("unexpected header `{header}`"),
        ));
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 10 {
            return Err(Error::invalid(
                "csv",
                format!("line {lineno}: expected 10 fields, got {}", parts.len()),
            ));
        }
        records.push(BenchmarkRecord {
            method: parse_field("method", parts[0], lineno)?,
            j_m: parse_field("j_m", parts[1], lineno)?,
            k_m: parse_field("k_m", parts[2], lineno)?,
            beta: parse_field("beta", parts[3], lineno)?,
            capacity_mean: parse_field("capacity_mean", parts[4], lineno)?,
            capacity_std: parse_field("capacity_std", parts[5], lineno)?,
            rel_error: if parts[6].is_empty() {
                None
            } else {
                Some(parse_field("rel_error", parts[6], lineno)?)
            },
            wall_time_s: parse_field("wall_time_s", parts[7], lineno)?,
            trials: parse_field("trials", parts[8], lineno)?,
            seed: parse_field("seed", parts[9], lineno)?,
        });
    }
    Ok(records)
}

pub fn scenario_to_string(scenario: &NetworkScenario, config: &ScenarioConfig) -> String {
    let mut out = String::new();
    for line in config.to_kv_lines() {
        out.push_str("# ");
        out.push_str(&line);
        out.push('\n');
    }
    let mut node = |kind: &str, p: &Position, c: usize| {
        out.push_str(&format!(
            "{kind},{},{},{c}\n",
            fmt_float(p.x),
            fmt_float(p.y)
        ));
    };
    for (p, &c) in scenario.bs_positions.iter().zip(&scenario.cluster_of_bs) {
        node("bs", p, c);
    }
    for (p, &c) in scenario.user_positions.iter().zip(&scenario.cluster_of_user) {
        node("user", p, c);
    }
    out
}

/// Writes the scenario dump (config header plus node lines) to `path`.
pub fn write_scenario(
    scenario: &NetworkScenario,
    config: &ScenarioConfig,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, scenario_to_string(scenario, config)).map_err(|e| Error::io(path, e))
}

/// Parses a scenario dump back into the scenario and the configuration
/// recorded in its header. Node counts and cluster indices must agree
/// with that configuration.
pub fn parse_scenario(text: &str) -> Result<(NetworkScenario, ScenarioConfig)> {
    let mut config = ScenarioConfig::default();
    let mut bs_positions = Vec::new();
    let mut cluster_of_bs = Vec::new();
    let mut user_positions = Vec::new();
    let mut cluster_of_user = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once('=') {
                config.apply_kv(k.trim(), v.trim())?;
            }
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::invalid(
                "scenario",
                format!("line {lineno}: expected `kind,x,y,cluster`"),
            ));
        }
        let p = Position {
            x: parse_field("x", parts[1], lineno)?,
            y: parse_field("y", parts[2], lineno)?,
        };
        let c: usize = parse_field("cluster", parts[3], lineno)?;
        match parts[0] {
            "bs" => {
                bs_positions.push(p);
                cluster_of_bs.push(c);
            }
            "user" => {
                user_positions.push(p);
                cluster_of_user.push(c);
            }
            other => {
                return Err(Error::invalid(
                    "scenario",
                    format!("line {lineno}: unknown node kind `{other}`"),
                ));
            }
        }
    }

    config.validate()?;
    if bs_positions.len() != config.num_bs {
        return Err(Error::invalid(
            "scenario",
            format!(
                "{} bs lines but the header declares num_bs = {}",
                bs_positions.len(),
                config.num_bs
            ),
        ));
    }
    if user_positions.len() != config.num_users() {
        return Err(Error::invalid(
            "scenario",
            format!(
                "{} user lines but the header implies {} users",
                user_positions.len(),
                config.num_users()
            ),
        ));
    }
    let m = config.num_clusters;
    if let Some(&c) = cluster_of_bs
        .iter()
        .chain(&cluster_of_user)
        .find(|&&c| c >= m)
    {
        return Err(Error::invalid(
            "scenario",
            format!("cluster index {c} out of range (num_clusters = {m})"),
        ));
    }

    let scenario = NetworkScenario {
        bs_positions,
        user_positions,
        area: config.area_shape(),
        cluster_of_bs,
        cluster_of_user,
        num_clusters: m,
    };
    Ok((scenario, config))
}

/// Reads a scenario dump from `path`.
pub fn read_scenario(path: &Path) -> Result<(NetworkScenario, ScenarioConfig)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Method;
    use crate::geometry::build_scenario;

    fn sample_record() -> BenchmarkRecord {
        BenchmarkRecord {
            method: Method::Tose,
            j_m: 100,
            k_m: 50,
            beta: 0.5,
            capacity_mean: 12.345678901234567,
            capacity_std: 0.009876543210987654,
            rel_error: Some(0.0123),
            wall_time_s: 1.5e-6,
            trials: 200,
            seed: 7,
        }
    }

    #[test]
    fn empty_record_list_gives_a_header_only_file() {
        assert_eq!(csv_to_string(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn one_record_gives_two_lines_of_ten_fields() {
        let text = csv_to_string(&[sample_record()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1].split(',').count(), 10);
        assert!(lines[1].starts_with("tose,100,50,"));
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let mut base = sample_record();
        base.method = Method::ExactHadamard;
        base.rel_error = None;
        let records = vec![base, sample_record()];
        let parsed = parse_csv(&csv_to_string(&records)).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("method,beta\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\ntose,1,2\n")).is_err());
        assert!(parse_csv(&format!(
            "{CSV_HEADER}\nwarp,1,2,3e0,4e0,5e0,,6e0,7,8\n"
        ))
        .is_err());
    }

    #[test]
    fn scenario_dump_round_trips() {
        let config = ScenarioConfig {
            num_bs: 200,
            num_clusters: 4,
            ..Default::default()
        };
        let scenario = build_scenario(&config).unwrap();
        let text = scenario_to_string(&scenario, &config);
        assert!(text.starts_with("# area = square\n"));
        let (back, back_config) = parse_scenario(&text).unwrap();
        assert_eq!(back, scenario);
        assert_eq!(back_config, config);
    }

    #[test]
    fn scenario_parser_checks_consistency() {
        let config = ScenarioConfig {
            num_bs: 200,
            num_clusters: 4,
            ..Default::default()
        };
        let scenario = build_scenario(&config).unwrap();
        let text = scenario_to_string(&scenario, &config);

        let missing_node = text.trim_end().rsplit_once('\n').unwrap().0;
        assert!(parse_scenario(missing_node).is_err());

        let bad_kind = text.replacen("bs,", "tower,", 1);
        assert!(parse_scenario(&bad_kind).is_err());

        let bad_cluster = text.replacen(",0\n", ",99\n", 1);
        assert!(parse_scenario(&bad_cluster).is_err());
    }
}
