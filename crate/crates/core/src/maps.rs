//! Maps shipped with the crate.
//!
//! Every map has exactly one hazard-free route from start to goal, the same
//! number of mistakes in the human's and the robot's views, and some fog.

use std::path::Path;

use crate::domain::{load_map, GridMap};

const BUILTIN: [(&str, &str); 7] = [
    ("lake4-a", include_str!("../maps/lake4-a.fl.json")),
    ("lake4-b", include_str!("../maps/lake4-b.fl.json")),
    ("lake8-a", include_str!("../maps/lake8-a.fl.json")),
    ("lake8-b", include_str!("../maps/lake8-b.fl.json")),
    ("lake8-c", include_str!("../maps/lake8-c.fl.json")),
    ("lake8-d", include_str!("../maps/lake8-d.fl.json")),
    ("lake8-e", include_str!("../maps/lake8-e.fl.json")),
];

/// Ids of the shipped maps, 4×4 first.
pub fn builtin_ids() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(id, _)| *id)
}

/// Ids of the shipped maps of side `size`.
pub fn builtin_ids_of_size(size: usize) -> Vec<&'static str> {
    builtin_ids().filter(|id| builtin(id).is_some_and(|m| m.size() == size)).collect()
}

pub fn builtin_text(id: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(i, _)| *i == id).map(|(_, t)| *t)
}

pub fn builtin(id: &str) -> Option<GridMap> {
    builtin_text(id).map(|t| load_map(t).expect("shipped maps are valid"))
}

/// `dir/lake8-a.fl.json` → `lake8-a`.
pub fn map_id_from_path(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.strip_suffix(".fl.json").unwrap_or(&name).to_string()
}
