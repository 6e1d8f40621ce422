//! Map documents, per-agent views and map validation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::grid::{Cell, CellSet, Direction, MAX_SIZE};
use super::world::WorldState;
use crate::pathfinding;

/// Ground-truth content of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Free,
    Hole,
    Slippery,
    Goal,
    Start,
}

impl CellKind {
    /// Landing here makes the agent fall.
    pub fn is_hazard(self) -> bool {
        matches!(self, CellKind::Hole | CellKind::Slippery)
    }

    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '.' => CellKind::Free,
            'H' => CellKind::Hole,
            '~' => CellKind::Slippery,
            'A' => CellKind::Start,
            'G' => CellKind::Goal,
            _ => return None,
        })
    }

    fn to_char(self) -> char {
        match self {
            CellKind::Free => '.',
            CellKind::Hole => 'H',
            CellKind::Slippery => '~',
            CellKind::Start => 'A',
            CellKind::Goal => 'G',
        }
    }
}

/// What an agent believes about a cell's slipperiness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViewCell {
    BelievedSafe,
    BelievedSlippery,
    Unknown,
}

impl ViewCell {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '.' => ViewCell::BelievedSafe,
            's' => ViewCell::BelievedSlippery,
            '?' => ViewCell::Unknown,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            ViewCell::BelievedSafe => '.',
            ViewCell::BelievedSlippery => 's',
            ViewCell::Unknown => '?',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentKind {
    Human,
    Robot,
}

/// One neighbor in a local observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborReport {
    OutOfBounds,
    Hole,
    Safe,
    Slippery,
    Unknown,
}

/// The static world: ground truth plus what each agent believes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    size: usize,
    true_grid: Vec<CellKind>,
    human_view: Vec<ViewCell>,
    robot_view: Vec<ViewCell>,
    fog: Vec<bool>,
    start: Cell,
    goal: Cell,
}

#[derive(Debug, Error)]
pub enum MapError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid map: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),
}

/// A map-level constraint that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnsupportedSize { size: usize },
    MissingStart,
    DuplicateStart { count: usize },
    MissingGoal,
    DuplicateGoal { count: usize },
    StartMismatch { declared: Cell },
    GoalMismatch { declared: Cell },
    ViewDisagrees { layer: AgentKind, cell: Cell },
    FogNotUnknown { cell: Cell },
    FogOverHole { cell: Cell },
    AsymmetricErrors { human: usize, robot: usize },
    NoSafePath,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsupportedSize { size } => write!(f, "unsupported size {size}"),
            Violation::MissingStart => f.write_str("no start cell"),
            Violation::DuplicateStart { count } => write!(f, "{count} start cells"),
            Violation::MissingGoal => f.write_str("no goal cell"),
            Violation::DuplicateGoal { count } => write!(f, "{count} goal cells"),
            Violation::StartMismatch { declared } => write!(f, "declared start {declared} is not the A cell"),
            Violation::GoalMismatch { declared } => write!(f, "declared goal {declared} is not the G cell"),
            Violation::ViewDisagrees { layer, cell } => {
                write!(f, "{layer:?} view disagrees with the true layer at {cell}")
            }
            Violation::FogNotUnknown { cell } => write!(f, "fogged cell {cell} must be '?' in the human layer"),
            Violation::FogOverHole { cell } => write!(f, "fog covers hole {cell}"),
            Violation::AsymmetricErrors { human, robot } => {
                write!(f, "human view has {human} errors but robot view has {robot}")
            }
            Violation::NoSafePath => f.write_str("no hazard-free path from start to goal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    MultipleSafePaths,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// View-error tally against the true layer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ViewErrors {
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl ViewErrors {
    pub fn total(&self) -> usize {
        self.false_positives + self.false_negatives
    }
}

/// On-disk form of a map (`*.fl.json`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub size: usize,
    pub start: Cell,
    pub goal: Cell,
    pub layers: Layers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layers {
    #[serde(rename = "true")]
    pub truth: Vec<String>,
    pub human: Vec<String>,
    pub robot: Vec<String>,
    pub fog: Vec<String>,
}

/// Parse and validate a map document.
pub fn load_map(text: &str) -> Result<GridMap, MapError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.starts_with(char::is_whitespace) || body.ends_with(char::is_whitespace) {
        return Err(MapError::Syntax("unexpected leading or trailing whitespace".into()));
    }
    let doc: MapDocument = serde_json::from_str(body).map_err(|e| MapError::Syntax(e.to_string()))?;
    let map = GridMap::from_document(&doc)?;
    let report = validate_map(&map);
    if report.is_ok() {
        Ok(map)
    } else {
        Err(MapError::Validation(report.violations))
    }
}

fn parse_layer<T>(
    name: &str,
    rows: &[String],
    size: usize,
    parse: impl Fn(char) -> Option<T>,
) -> Result<Vec<T>, MapError> {
    if rows.len() != size {
        return Err(MapError::Syntax(format!("layer `{name}` has {} rows, expected {size}", rows.len())));
    }
    let mut out = Vec::with_capacity(size * size);
    for (r, row) in rows.iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != size {
            return Err(MapError::Syntax(format!("layer `{name}` row {r} has {} cells, expected {size}", chars.len())));
        }
        for (c, ch) in chars.into_iter().enumerate() {
            let v = parse(ch)
                .ok_or_else(|| MapError::Syntax(format!("layer `{name}` has invalid character {ch:?} at ({r},{c})")))?;
            out.push(v);
        }
    }
    Ok(out)
}

impl GridMap {
    /// Build a map from a parsed document. Only syntax is checked here; see [`validate_map`].
    pub fn from_document(doc: &MapDocument) -> Result<GridMap, MapError> {
        let size = doc.size;
        if size == 0 || size > MAX_SIZE {
            return Err(MapError::Validation(vec![Violation::UnsupportedSize { size }]));
        }
        for (name, c) in [("start", doc.start), ("goal", doc.goal)] {
            if c.row >= size || c.col >= size {
                return Err(MapError::Syntax(format!("{name} {c} outside the grid")));
            }
        }
        let true_grid = parse_layer("true", &doc.layers.truth, size, CellKind::from_char)?;
        let human_view = parse_layer("human", &doc.layers.human, size, ViewCell::from_char)?;
        let robot_view = parse_layer("robot", &doc.layers.robot, size, ViewCell::from_char)?;
        let fog = parse_layer("fog", &doc.layers.fog, size, |c| match c {
            '#' => Some(true),
            '.' => Some(false),
            _ => None,
        })?;
        Ok(GridMap { size, true_grid, human_view, robot_view, fog, start: doc.start, goal: doc.goal })
    }

    pub fn to_document(&self) -> MapDocument {
        let rows = |f: &dyn Fn(usize) -> char| -> Vec<String> {
            (0..self.size).map(|r| (0..self.size).map(|c| f(r * self.size + c)).collect()).collect()
        };
        MapDocument {
            size: self.size,
            start: self.start,
            goal: self.goal,
            layers: Layers {
                truth: rows(&|i| self.true_grid[i].to_char()),
                human: rows(&|i| self.human_view[i].to_char()),
                robot: rows(&|i| self.robot_view[i].to_char()),
                fog: rows(&|i| if self.fog[i] { '#' } else { '.' }),
            },
        }
    }

    /// Serialize as a map document with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("map document serializes");
        s.push('\n');
        s
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn goal(&self) -> Cell {
        self.goal
    }

    pub fn kind(&self, cell: Cell) -> CellKind {
        self.true_grid[cell.index(self.size)]
    }

    pub fn view(&self, agent: AgentKind, cell: Cell) -> ViewCell {
        let i = cell.index(self.size);
        match agent {
            AgentKind::Robot => self.robot_view[i],
            AgentKind::Human if self.fog[i] => ViewCell::Unknown,
            AgentKind::Human => self.human_view[i],
        }
    }

    pub fn is_fogged(&self, cell: Cell) -> bool {
        self.fog[cell.index(self.size)]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.size).flat_map(move |r| (0..self.size).map(move |c| Cell::new(r, c)))
    }

    pub fn neighbor(&self, cell: Cell, dir: Direction) -> Option<Cell> {
        cell.step(dir, self.size)
    }

    /// Holes are visible to everyone.
    pub fn holes(&self) -> CellSet {
        self.cells().filter(|&c| self.kind(c) == CellKind::Hole).collect()
    }

    pub fn true_hazards(&self) -> CellSet {
        self.cells().filter(|&c| self.kind(c).is_hazard()).collect()
    }

    /// Cells `agent` currently believes would make it fall. Sensor readings and
    /// observed falls override the static view; unknown cells count as safe.
    pub fn believed_hazards(&self, agent: AgentKind, state: &WorldState) -> CellSet {
        let mut out = state.fall_cells.union(self.holes());
        for cell in self.cells() {
            if matches!(self.kind(cell), CellKind::Start | CellKind::Goal) {
                continue;
            }
            let hazard = if state.revealed.contains(cell) {
                self.kind(cell).is_hazard()
            } else {
                self.view(agent, cell) == ViewCell::BelievedSlippery
            };
            if hazard {
                out.insert(cell);
            }
        }
        out
    }

    /// Everything the human can know: static view, fog, sensor readings and falls.
    pub fn human_view(&self, state: &WorldState) -> HumanView {
        let hazards = self.believed_hazards(AgentKind::Human, state);
        HumanView { size: self.size, start: self.start, goal: self.goal, hazards, revealed: state.revealed }
    }

    /// A copy of this map whose ground truth is what the robot believes: robot
    /// view with sensor readings and observed falls applied, unknown cells safe.
    /// Planner simulations run on this map since the robot cannot see the truth.
    pub fn as_believed_by_robot(&self, state: &WorldState) -> GridMap {
        let hazards = self.believed_hazards(AgentKind::Robot, state);
        let mut believed = self.clone();
        for cell in self.cells() {
            let i = cell.index(self.size);
            let k = self.true_grid[i];
            believed.true_grid[i] = match k {
                CellKind::Start | CellKind::Goal | CellKind::Hole => k,
                _ if hazards.contains(cell) => CellKind::Slippery,
                _ => CellKind::Free,
            };
        }
        believed
    }

    /// Errors of a view against the true layer, after fog is applied.
    pub fn view_errors(&self, agent: AgentKind) -> ViewErrors {
        let mut errs = ViewErrors::default();
        for cell in self.cells() {
            match (self.kind(cell), self.view(agent, cell)) {
                (CellKind::Free, ViewCell::BelievedSlippery) => errs.false_positives += 1,
                (CellKind::Slippery, ViewCell::BelievedSafe) => errs.false_negatives += 1,
                _ => {}
            }
        }
        errs
    }
}

/// The human's knowledge of the map. Built only through [`GridMap::human_view`],
/// so simulated humans never touch the true layer except via sensor readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HumanView {
    pub size: usize,
    pub start: Cell,
    pub goal: Cell,
    /// Cells the human believes are holes or slippery.
    pub hazards: CellSet,
    pub revealed: CellSet,
}

impl HumanView {
    pub fn with_extra_hazards(mut self, extra: CellSet) -> HumanView {
        self.hazards = self.hazards.union(extra.difference(self.revealed));
        self.hazards.remove(self.goal);
        self
    }
}

/// Check every map-level constraint.
pub fn validate_map(map: &GridMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    if map.size != 4 && map.size != 8 {
        report.violations.push(Violation::UnsupportedSize { size: map.size });
    }
    let starts: Vec<Cell> = map.cells().filter(|&c| map.kind(c) == CellKind::Start).collect();
    let goals: Vec<Cell> = map.cells().filter(|&c| map.kind(c) == CellKind::Goal).collect();
    match starts.len() {
        0 => report.violations.push(Violation::MissingStart),
        1 if starts[0] != map.start => report.violations.push(Violation::StartMismatch { declared: map.start }),
        1 => {}
        n => report.violations.push(Violation::DuplicateStart { count: n }),
    }
    match goals.len() {
        0 => report.violations.push(Violation::MissingGoal),
        1 if goals[0] != map.goal => report.violations.push(Violation::GoalMismatch { declared: map.goal }),
        1 => {}
        n => report.violations.push(Violation::DuplicateGoal { count: n }),
    }

    for cell in map.cells() {
        let i = cell.index(map.size);
        let kind = map.true_grid[i];
        let required = match kind {
            CellKind::Hole => Some(ViewCell::BelievedSlippery),
            CellKind::Start | CellKind::Goal => Some(ViewCell::BelievedSafe),
            _ => None,
        };
        if let Some(req) = required {
            if map.robot_view[i] != req {
                report.violations.push(Violation::ViewDisagrees { layer: AgentKind::Robot, cell });
            }
            if !map.fog[i] && map.human_view[i] != req {
                report.violations.push(Violation::ViewDisagrees { layer: AgentKind::Human, cell });
            }
        }
        if map.fog[i] {
            if kind == CellKind::Hole {
                report.violations.push(Violation::FogOverHole { cell });
            } else if map.human_view[i] != ViewCell::Unknown {
                report.violations.push(Violation::FogNotUnknown { cell });
            }
        }
    }

    let human = map.view_errors(AgentKind::Human).total();
    let robot = map.view_errors(AgentKind::Robot).total();
    if human != robot {
        report.violations.push(Violation::AsymmetricErrors { human, robot });
    }

    if map.start.row < map.size && map.goal.row < map.size && map.start.col < map.size && map.goal.col < map.size {
        let blocked = map.true_hazards();
        match pathfinding::safe_path_count(map.size, blocked, map.start, map.goal) {
            pathfinding::PathCount::None => report.violations.push(Violation::NoSafePath),
            pathfinding::PathCount::Unique => {}
            pathfinding::PathCount::Multiple => report.warnings.push(Warning::MultipleSafePaths),
        }
    }
    report
}

/// Local observation of the four orthogonal neighbors, in canonical direction order.
pub fn agent_view(map: &GridMap, state: &WorldState, agent: AgentKind) -> [NeighborReport; 4] {
    Direction::ALL.map(|d| match map.neighbor(state.pos, d) {
        None => NeighborReport::OutOfBounds,
        Some(cell) => {
            let kind = map.kind(cell);
            if kind == CellKind::Hole {
                NeighborReport::Hole
            } else if agent == AgentKind::Human && state.revealed.contains(cell) {
                if kind.is_hazard() {
                    NeighborReport::Slippery
                } else {
                    NeighborReport::Safe
                }
            } else {
                match map.view(agent, cell) {
                    ViewCell::BelievedSafe => NeighborReport::Safe,
                    ViewCell::BelievedSlippery => NeighborReport::Slippery,
                    ViewCell::Unknown => NeighborReport::Unknown,
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::world::WorldState;

    pub(crate) fn doc(truth: &[&str], human: &[&str], robot: &[&str], fog: &[&str]) -> String {
        let size = truth.len();
        let find = |ch: char| {
            truth
                .iter()
                .enumerate()
                .find_map(|(r, row)| row.find(ch).map(|c| format!("[{r},{c}]")))
                .unwrap_or_else(|| "[0,0]".into())
        };
        let layer = |rows: &[&str]| rows.iter().map(|r| format!("\"{r}\"")).collect::<Vec<_>>().join(",");
        format!(
            "{{\"size\":{size},\"start\":{},\"goal\":{},\"layers\":{{\"true\":[{}],\"human\":[{}],\"robot\":[{}],\"fog\":[{}]}}}}\n",
            find('A'),
            find('G'),
            layer(truth),
            layer(human),
            layer(robot),
            layer(fog)
        )
    }

    const CLEAR4: [&str; 4] = ["....", "....", "....", "...."];

    #[test]
    fn loads_simple_map() {
        let text = doc(
            &["A...", ".H..", "....", "...G"],
            &["....", ".s..", "....", "...."],
            &["....", ".s..", "....", "...."],
            &CLEAR4,
        );
        let map = load_map(&text).unwrap();
        assert_eq!(map.size(), 4);
        assert_eq!(map.start(), Cell::new(0, 0));
        assert_eq!(map.goal(), Cell::new(3, 3));
        assert_eq!(map.kind(Cell::new(1, 1)), CellKind::Hole);
    }

    #[test]
    fn two_errors_each_loads() {
        // human: FN at (1,2), FP at (2,0); robot: FN at (2,2), FP at (3,2)
        let text = doc(
            &["A.~.", "..~.", "..~.", "...G"],
            &["..s.", "....", "s.s.", "...."],
            &["..s.", "..s.", "....", "..s."],
            &CLEAR4,
        );
        let map = load_map(&text).unwrap();
        assert_eq!(map.view_errors(AgentKind::Human).total(), 2);
        assert_eq!(map.view_errors(AgentKind::Robot).total(), 2);
    }

    #[test]
    fn two_goals_rejected() {
        let text = doc(&["A..G", "....", "....", "...G"], &CLEAR4, &CLEAR4, &CLEAR4);
        match load_map(&text) {
            Err(MapError::Validation(v)) => assert!(v.contains(&Violation::DuplicateGoal { count: 2 })),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(load_map("{"), Err(MapError::Syntax(_))));
        let bad_char = doc(&["A..X", "....", "....", "...G"], &CLEAR4, &CLEAR4, &CLEAR4);
        assert!(matches!(load_map(&bad_char), Err(MapError::Syntax(_))));
        let short_row = doc(&["A..", "....", "....", "...G"], &CLEAR4, &CLEAR4, &CLEAR4);
        assert!(matches!(load_map(&short_row), Err(MapError::Syntax(_))));
        let good = doc(&["A...", "....", "....", "...G"], &CLEAR4, &CLEAR4, &CLEAR4);
        assert!(load_map(&format!(" {good}")).is_err());
        assert!(load_map(&format!("{good}\n")).is_err());
        assert!(load_map(good.trim_end()).is_ok());
        let extra_key = good.replacen("\"size\"", "\"name\":\"x\",\"size\"", 1);
        assert!(matches!(load_map(&extra_key), Err(MapError::Syntax(_))));
    }

    #[test]
    fn corridor_is_ok_and_blocked_corridor_is_not() {
        let truth = ["A.HH", "H.HH", "H.HH", "H..G"];
        let view = ["..ss", "s.ss", "s.ss", "s..."];
        let map = GridMap::from_document(&serde_json::from_str(&doc(&truth, &view, &view, &CLEAR4)).unwrap()).unwrap();
        let report = validate_map(&map);
        assert!(report.is_ok(), "{report:?}");
        assert!(report.warnings.is_empty());

        let truth = ["A.HH", "H~HH", "H.HH", "H..G"];
        let map = GridMap::from_document(&serde_json::from_str(&doc(&truth, &view, &view, &CLEAR4)).unwrap()).unwrap();
        let report = validate_map(&map);
        assert!(report.violations.contains(&Violation::NoSafePath));
    }

    #[test]
    fn asymmetric_errors_reported() {
        let truth = ["A...", "....", "....", "...G"];
        let human = [".sss", "....", "....", "...."];
        let robot = [".ss.", "....", "....", "...."];
        let map =
            GridMap::from_document(&serde_json::from_str(&doc(&truth, &human, &robot, &CLEAR4)).unwrap()).unwrap();
        let report = validate_map(&map);
        assert!(report.violations.contains(&Violation::AsymmetricErrors { human: 3, robot: 2 }));
    }

    #[test]
    fn open_grid_warns_multiple_paths() {
        let map = load_map(&doc(&["A...", "....", "....", "...G"], &CLEAR4, &CLEAR4, &CLEAR4)).unwrap();
        assert_eq!(validate_map(&map).warnings, vec![Warning::MultipleSafePaths]);
    }

    #[test]
    fn fog_must_hide_human_layer() {
        let fog = ["....", ".#..", "....", "...."];
        let text = doc(&["A...", "....", "....", "...G"], &CLEAR4, &CLEAR4, &fog);
        assert!(load_map(&text).is_err());
        let human = ["....", ".?..", "....", "...."];
        let text = doc(&["A...", "....", "....", "...G"], &human, &CLEAR4, &fog);
        assert!(load_map(&text).is_ok());
    }

    fn fog_map() -> GridMap {
        let truth = ["A...", ".~..", "....", "...G"];
        let human = ["....", ".?..", "....", "...."];
        let robot = ["....", ".s..", "....", "...."];
        let fog = ["....", ".#..", "....", "...."];
        load_map(&doc(&truth, &human, &robot, &fog)).unwrap()
    }

    #[test]
    fn corner_view_has_two_out_of_bounds() {
        let map = fog_map();
        let state = WorldState::initial(&map, None);
        let v = agent_view(&map, &state, AgentKind::Robot);
        assert_eq!(v.iter().filter(|r| **r == NeighborReport::OutOfBounds).count(), 2);
        assert_eq!(
            v,
            [NeighborReport::OutOfBounds, NeighborReport::Safe, NeighborReport::OutOfBounds, NeighborReport::Safe]
        );
    }

    #[test]
    fn fog_hides_and_sensor_reveals() {
        let map = fog_map();
        let mut state = WorldState::initial(&map, None);
        state.pos = Cell::new(0, 1);
        let human = agent_view(&map, &state, AgentKind::Human);
        assert_eq!(human[Direction::Down.index()], NeighborReport::Unknown);
        let robot = agent_view(&map, &state, AgentKind::Robot);
        assert_eq!(robot[Direction::Down.index()], NeighborReport::Slippery);

        state.revealed.insert(Cell::new(1, 1));
        let human = agent_view(&map, &state, AgentKind::Human);
        assert_eq!(human[Direction::Down.index()], NeighborReport::Slippery);
    }

    #[test]
    fn document_roundtrip() {
        let map = fog_map();
        assert_eq!(load_map(&map.to_text()).unwrap(), map);
    }

    #[test]
    fn robot_belief_map_uses_robot_view() {
        let map = fog_map();
        let state = WorldState::initial(&map, None);
        let believed = map.as_believed_by_robot(&state);
        assert_eq!(believed.kind(Cell::new(1, 1)), CellKind::Slippery);
        assert_eq!(believed.true_hazards(), map.believed_hazards(AgentKind::Robot, &state));
    }
}
