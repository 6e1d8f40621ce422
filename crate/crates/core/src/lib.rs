//! Mixed-initiative planning for a human and a robot crossing a frozen lake.
//!
//! The human proposes moves; the robot may let them through, interrupt them,
//! or take control, optionally explaining why. [`planner`] decides with an
//! online tree search whose simulated human is driven by a beta-particle
//! belief over how compliant the real human is.

pub mod agent;
pub mod belief;
pub mod domain;
pub mod harness;
pub mod heuristic;
pub mod humans;
pub mod maps;
pub mod pathfinding;
pub mod planner;
pub mod service;
