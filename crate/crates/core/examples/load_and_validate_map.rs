//! Load a map file (or a shipped map by name) and report on it.
//!
//! ```text
//! cargo run --example load_and_validate_map -- crates/core/maps/lake8-a.fl.json
//! cargo run --example load_and_validate_map -- lake4-b
//! ```

use mip::domain::{load_map, validate_map, AgentKind};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "lake8-a".into());
    let text = match std::fs::read_to_string(&arg) {
        Ok(t) => t,
        Err(_) => mip::maps::builtin_text(&arg).unwrap_or_else(|| panic!("no file or shipped map `{arg}`")).to_string(),
    };
    let map = match load_map(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{arg}: {e}");
            std::process::exit(1);
        }
    };
    let report = validate_map(&map);
    println!("{arg}: {}x{}, start {} goal {}", map.size(), map.size(), map.start(), map.goal());
    println!("warnings: {:?}", report.warnings);
    for agent in [AgentKind::Human, AgentKind::Robot] {
        let e = map.view_errors(agent);
        println!("{agent:?} view: {} false positives, {} false negatives", e.false_positives, e.false_negatives);
    }
    let fogged: Vec<String> = map.cells().filter(|&c| map.is_fogged(c)).map(|c| c.to_string()).collect();
    println!("fog: {}", fogged.join(" "));
}
