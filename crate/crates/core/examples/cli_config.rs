//! Driving the config-file workflows from code instead of the binary.

use nmlln::cli::{run, Command, Overrides};

const CONFIG: &str = r#"{
  "points": ["a", "b", "c", "d"],
  "weights": ["1/4", "1/4", "1/4", "1/4"],
  "field": [["a", "b"], ["c", "d"]],
  "psi": ["0", "1", "1", "2"],
  "plan": {"variant": "constant-mixture", "target": "5/4"},
  "run": {"n_max": 1000, "trials": 3, "seed": 1}
}"#;

fn main() {
    let overrides = Overrides::default();
    for command in [Command::Analyze, Command::Simulate] {
        match run(command, CONFIG, &overrides, false) {
            Ok(out) => print!("{out}"),
            Err(e) => {
                eprintln!("error ({}): {e}", e.code);
                std::process::exit(e.code);
            }
        }
        println!();
    }
}
