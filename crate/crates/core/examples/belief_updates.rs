//! Beta particles learning how often a user accepts interventions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mip::belief::{classify_response, init_belief, root_belief_update, Outcome};
use mip::domain::{Direction, HumanAction, RobotAction};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut belief = init_belief(100).unwrap();
    for step in 1..=200 {
        let o = if rng.random_bool(0.8) { Outcome::Comply } else { Outcome::Oppose };
        belief = root_belief_update(belief.particles(), Some(o), 100, &mut rng).belief;
        if step % 40 == 0 {
            println!("after {step:>3} outcomes: mean compliance {:.3}", belief.mean().unwrap());
        }
    }

    // How a human's reply to an interrupt on `Right` is read.
    for reply in HumanAction::ALL {
        println!(
            "interrupt on right, reply {reply:?}: {:?}",
            classify_response(&RobotAction::Interrupt, Direction::Right, reply)
        );
    }
}
