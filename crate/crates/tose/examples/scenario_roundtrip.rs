//! Serializes a scenario to its text dump (config header plus one node
//! per line) and benchmark records to CSV, then parses both back and
//! verifies the round trips are exact. The dump pins node layouts so a
//! run can be reproduced or inspected outside the library.
//!
//! Run with: `cargo run --example scenario_roundtrip`

use tose::{
    build_scenario, parse_csv, parse_scenario, run_accuracy, scenario_to_string,
    csv_to_string, ClusterPick, ScenarioConfig,
};

fn main() -> Result<(), tose::Error> {
    let config = ScenarioConfig {
        num_bs: 60,
        num_clusters: 3,
        trials: 5,
        ..ScenarioConfig::default()
    };

    let scenario = build_scenario(&config)?;
    let dump = scenario_to_string(&scenario, &config);

    println!("scenario dump, first 8 lines:");
    for line in dump.lines().take(8) {
        println!("  {line}");
    }
    let nodes = dump.lines().filter(|l| !l.starts_with('#')).count();
    println!("  ... {nodes} node lines total");

    let (parsed, parsed_config) = parse_scenario(&dump)?;
    println!(
        "scenario round trip exact: {}",
        parsed == scenario && parsed_config == config
    );

    let records = run_accuracy(&config, ClusterPick::Central)?;
    let csv = csv_to_string(&records);
    println!();
    println!("benchmark CSV:");
    for line in csv.lines() {
        println!("  {line}");
    }
    // Floats are printed with 17 significant digits, so parsing recovers
    // bit-identical values.
    let reparsed = parse_csv(&csv)?;
    println!("csv round trip exact: {}", reparsed == records);
    Ok(())
}
