//! Drives the command runner on a spec file, as the binary does.
//!
//! cargo run --example json_spec -- growth crates/core/examples/data/free2.json --radius 5 --format csv

use semigroup_envelope::cli::{parse_spec, spec_to_json, RunConfig};
use semigroup_envelope::cli::{execute, Command};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() > 1 {
        std::process::exit(semigroup_envelope::cli::main_with_args(args));
    }
    let text = r#"{"semigroup": {"type": "free", "rank": 2}, "weights": {"kind": "explicit", "values": [1, 1]}}"#;
    let spec = parse_spec(text).expect("valid spec");
    println!("normalised spec: {}", spec_to_json(&spec));
    let mut config = RunConfig::new(Command::Growth, "inline");
    config.radius = 5.0;
    config.format = semigroup_envelope::cli::FormatArg::Csv;
    print!("{}", execute(&config, &spec).expect("growth").document);
}
