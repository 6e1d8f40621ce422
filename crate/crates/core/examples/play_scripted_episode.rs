//! Drive the world by hand: a fixed list of joint actions on lake4-a.

use mip::domain::{step_world, Direction, HumanAction, RewardParams, RobotAction, WorldState};

fn main() {
    let map = mip::maps::builtin("lake4-a").unwrap();
    let params = RewardParams::benchmark(4);
    let mut state = WorldState::initial(&map, Some(2));
    let script = [
        (HumanAction::Down, RobotAction::NoAssist),
        (HumanAction::Detect, RobotAction::NoAssist),
        (HumanAction::Down, RobotAction::Interrupt),
        (HumanAction::Down, RobotAction::TakeControl { mv: Direction::Right }),
        (HumanAction::Down, RobotAction::NoAssist),
        (HumanAction::Down, RobotAction::NoAssist),
        (HumanAction::Right, RobotAction::NoAssist),
        (HumanAction::Down, RobotAction::NoAssist),
        (HumanAction::Right, RobotAction::NoAssist),
    ];
    for (human, robot) in script {
        if state.done {
            break;
        }
        let (next, ev) = step_world(&map, &state, human, &robot, &params).expect("legal step");
        println!(
            "{:>6?} + {:<12} -> {}  fell {:<5} detected {:?} reward {:+}",
            human,
            format!("{:?}", robot.kind()),
            next.pos,
            ev.fell,
            ev.detected,
            ev.reward
        );
        state = next;
    }
    println!(
        "score {} after {} steps ({} falls, goal {})",
        state.score(&params),
        state.steps_taken,
        state.falls,
        state.goal_reached
    );
}
