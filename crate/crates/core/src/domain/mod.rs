//! The Frozen Lake mixed-initiative environment.
//!
//! A [`GridMap`] holds the ground truth together with the human's and the
//! robot's error-prone beliefs about which cells are slippery. The human
//! proposes an action each turn; the robot lets it through, blocks it, or
//! substitutes its own move. [`step_world`] applies the joint action and emits
//! the per-step score delta so that the final [`game_score`] always equals
//! `max_steps` plus the sum of those deltas.

mod grid;
mod map;
mod world;

pub use grid::{Cell, CellSet, Direction, MAX_SIZE};
pub use map::{
    agent_view, load_map, validate_map, AgentKind, CellKind, GridMap, HumanView, Layers, MapDocument, MapError,
    NeighborReport, ValidationReport, ViewCell, ViewErrors, Violation, Warning,
};
pub use world::{
    game_score, step_world, Explanation, HumanAction, IllegalAction, Reason, RewardParams, RobotAction,
    RobotActionKind, StepEvents, WorldState,
};
