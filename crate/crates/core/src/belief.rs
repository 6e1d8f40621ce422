//! Beta-particle beliefs over how often the human accepts an intervention.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Direction, HumanAction, RobotAction};

/// Beta pseudo-counts: `a` for complying, `b` for opposing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct BetaParticle {
    pub a: f64,
    pub b: f64,
}

impl From<(f64, f64)> for BetaParticle {
    fn from((a, b): (f64, f64)) -> Self {
        BetaParticle { a, b }
    }
}

impl From<BetaParticle> for (f64, f64) {
    fn from(p: BetaParticle) -> Self {
        (p.a, p.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Comply,
    Oppose,
}

impl BetaParticle {
    pub const UNIFORM: BetaParticle = BetaParticle { a: 1.0, b: 1.0 };

    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0, "beta counts must be positive, got ({a}, {b})");
        BetaParticle { a, b }
    }

    pub fn mean(self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn updated(self, outcome: Outcome) -> Self {
        match outcome {
            Outcome::Comply => BetaParticle { a: self.a + 1.0, ..self },
            Outcome::Oppose => BetaParticle { b: self.b + 1.0, ..self },
        }
    }
}

pub fn update_particle(p: BetaParticle, outcome: Outcome) -> BetaParticle {
    p.updated(outcome)
}

/// Bernoulli draw with the particle's mean as success probability.
pub fn sample_compliance<R: Rng + ?Sized>(p: BetaParticle, rng: &mut R) -> Outcome {
    if rng.random::<f64>() < p.mean() {
        Outcome::Comply
    } else {
        Outcome::Oppose
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error("belief capacity must be at least 1")]
    ZeroCapacity,
}

/// Unweighted particle set with a size cap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeliefSet {
    particles: Vec<BetaParticle>,
    capacity: usize,
}

pub fn init_belief(capacity: usize) -> Result<BeliefSet, BeliefError> {
    if capacity == 0 {
        return Err(BeliefError::ZeroCapacity);
    }
    Ok(BeliefSet { particles: vec![BetaParticle::UNIFORM; capacity], capacity })
}

impl BeliefSet {
    /// An empty set that fills up during search.
    pub fn empty(capacity: usize) -> Self {
        BeliefSet { particles: Vec::new(), capacity }
    }

    pub fn from_particles(particles: Vec<BetaParticle>, capacity: usize) -> Self {
        let mut particles = particles;
        particles.truncate(capacity);
        BeliefSet { particles, capacity }
    }

    pub fn particles(&self) -> &[BetaParticle] {
        &self.particles
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    /// Adds a particle unless the set is full.
    pub fn push(&mut self, p: BetaParticle) {
        if self.particles.len() < self.capacity {
            self.particles.push(p);
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<BetaParticle> {
        self.particles.choose(rng).copied()
    }

    /// Average compliance over particles.
    pub fn mean(&self) -> Option<f64> {
        if self.particles.is_empty() {
            return None;
        }
        Some(self.particles.iter().map(|p| p.mean()).sum::<f64>() / self.particles.len() as f64)
    }
}

/// Root belief after a real step, and whether it had to start over.
#[derive(Debug, Clone, PartialEq)]
pub struct RootUpdate {
    pub belief: BeliefSet,
    pub degenerate: bool,
}

/// Next root belief from the particles collected in the matching child node.
///
/// When the robot intervened, `outcome` carries the real response and every
/// particle is updated with it. Missing particles are refilled by resampling
/// with U(-0.5, 0.5) jitter on both counts, floored at 0.1.
pub fn root_belief_update<R: Rng + ?Sized>(
    child: &[BetaParticle],
    outcome: Option<Outcome>,
    capacity: usize,
    rng: &mut R,
) -> RootUpdate {
    let capacity = capacity.max(1);
    if child.is_empty() {
        tracing::debug!("no particles matched the observed step; resetting belief to uniform");
        return RootUpdate {
            belief: BeliefSet { particles: vec![BetaParticle::UNIFORM; capacity], capacity },
            degenerate: true,
        };
    }
    let mut particles: Vec<BetaParticle> = child
        .iter()
        .take(capacity)
        .map(|&p| match outcome {
            Some(o) => p.updated(o),
            None => p,
        })
        .collect();
    let base = particles.len();
    while particles.len() < capacity {
        let p = particles[rng.random_range(0..base)];
        let a = (p.a + rng.random_range(-0.5..0.5)).max(0.1);
        let b = (p.b + rng.random_range(-0.5..0.5)).max(0.1);
        particles.push(BetaParticle { a, b });
    }
    RootUpdate { belief: BeliefSet { particles, capacity }, degenerate: false }
}

/// Whether the human's next action accepted the intervention on `blocked`.
///
/// Opposing means detecting, repeating the blocked move, or moving the
/// opposite way: reversing the blocked move after an interrupt, undoing the
/// robot's move after a take-over. Anything else complies. `None` when the
/// robot did not intervene.
pub fn classify_response(robot: &RobotAction, blocked: Direction, response: HumanAction) -> Option<Outcome> {
    if !robot.is_intervention() {
        return None;
    }
    let Some(d) = response.direction() else {
        return Some(Outcome::Oppose);
    };
    let opposite = robot.replacement().unwrap_or(blocked).reverse();
    if d == blocked || d == opposite {
        Some(Outcome::Oppose)
    } else {
        Some(Outcome::Comply)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn init_and_capacity() {
        let b = init_belief(100).unwrap();
        assert_eq!(b.len(), 100);
        assert!(b.particles().iter().all(|p| p.mean() == 0.5));
        assert_eq!(init_belief(1).unwrap().particles(), &[BetaParticle::UNIFORM]);
        assert_eq!(init_belief(0), Err(BeliefError::ZeroCapacity));
    }

    #[test]
    fn conjugate_updates() {
        let p = update_particle(BetaParticle::UNIFORM, Outcome::Comply);
        assert_eq!(p, BetaParticle::new(2.0, 1.0));
        assert!((p.mean() - 2.0 / 3.0).abs() < 1e-12);
        let mut q = BetaParticle::UNIFORM;
        for _ in 0..8 {
            q = q.updated(Outcome::Comply);
        }
        for _ in 0..2 {
            q = q.updated(Outcome::Oppose);
        }
        assert_eq!(q, BetaParticle::new(9.0, 3.0));
        assert_eq!(q.mean(), 0.75);
        assert_eq!(BetaParticle::new(20.0, 80.0).updated(Outcome::Oppose), BetaParticle::new(20.0, 81.0));
    }

    #[test]
    fn compliance_frequency() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = BetaParticle::new(80.0, 20.0);
        let n = 100_000;
        let k = (0..n).filter(|_| sample_compliance(p, &mut rng) == Outcome::Comply).count();
        assert!((k as f64 / n as f64 - 0.80).abs() <= 0.01);
        let stubborn = BetaParticle::new(1.0, 1e12);
        assert!((0..1000).all(|_| sample_compliance(stubborn, &mut rng) == Outcome::Oppose));
    }

    #[test]
    fn draws_are_reproducible() {
        let p = BetaParticle::new(3.0, 4.0);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..64).map(|_| sample_compliance(p, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(run(11), run(11));
    }

    #[test]
    fn root_update_applies_real_outcome() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let child = vec![BetaParticle::new(2.0, 5.0); 100];
        let up = root_belief_update(&child, Some(Outcome::Comply), 100, &mut rng);
        assert!(!up.degenerate);
        assert!(up.belief.particles().iter().all(|p| *p == BetaParticle::new(3.0, 5.0)));
        let up = root_belief_update(&child, None, 100, &mut rng);
        assert_eq!(up.belief.particles(), child.as_slice());
    }

    #[test]
    fn root_update_refills() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = vec![BetaParticle::new(0.2, 4.0); 7];
        let up = root_belief_update(&child, Some(Outcome::Oppose), 50, &mut rng);
        assert_eq!(up.belief.len(), 50);
        for p in up.belief.particles() {
            assert!(p.a >= 0.1 && p.b >= 0.1);
            assert!(p.a <= 0.7 && (p.b - 5.0).abs() <= 0.5);
        }
        let up = root_belief_update(&[], Some(Outcome::Oppose), 20, &mut rng);
        assert!(up.degenerate);
        assert_eq!(up.belief.particles(), vec![BetaParticle::UNIFORM; 20].as_slice());
    }

    #[test]
    fn response_classes() {
        use Direction::*;
        let int = RobotAction::Interrupt;
        assert_eq!(classify_response(&RobotAction::NoAssist, Right, HumanAction::Right), None);
        assert_eq!(classify_response(&int, Right, HumanAction::Right), Some(Outcome::Oppose));
        assert_eq!(classify_response(&int, Right, HumanAction::Detect), Some(Outcome::Oppose));
        assert_eq!(classify_response(&int, Right, HumanAction::Left), Some(Outcome::Oppose));
        assert_eq!(classify_response(&int, Right, HumanAction::Down), Some(Outcome::Comply));
        let tc = RobotAction::TakeControl { mv: Down };
        assert_eq!(classify_response(&tc, Right, HumanAction::Up), Some(Outcome::Oppose));
        assert_eq!(classify_response(&tc, Right, HumanAction::Right), Some(Outcome::Oppose));
        assert_eq!(classify_response(&tc, Right, HumanAction::Left), Some(Outcome::Comply));
        assert_eq!(classify_response(&tc, Right, HumanAction::Down), Some(Outcome::Comply));
    }
}
