use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mip::belief::{classify_response, init_belief, root_belief_update, BeliefSet, BetaParticle, Outcome};
use mip::domain::{
    load_map, step_world, validate_map, Cell, CellSet, Direction, Explanation, HumanAction, Reason, RewardParams,
    RobotAction, RobotActionKind, WorldState,
};
use mip::harness::{run_episode, summarize, EpisodeParams, RecordOptions};
use mip::humans::default_population;
use mip::maps;
use mip::pathfinding::{astar_cost, astar_next, DistanceField};
use mip::planner::{greedy_select, ucb_select, HistoryNode};

fn outcome() -> impl Strategy<Value = Outcome> {
    prop_oneof![Just(Outcome::Comply), Just(Outcome::Oppose)]
}

fn blocked_set(size: usize) -> impl Strategy<Value = CellSet> {
    proptest::collection::vec(any::<bool>(), size * size).prop_map(move |bits| {
        let mut s = CellSet::default();
        for (i, b) in bits.into_iter().enumerate() {
            // Keep the goal corner open and block about a third of the rest.
            if b && i % 3 == 0 && i != size * size - 1 {
                s.insert(Cell::new(i / size, i % size));
            }
        }
        s
    })
}

proptest! {
    #[test]
    fn conjugate_counts(outcomes in proptest::collection::vec(outcome(), 0..400)) {
        let p = outcomes.iter().fold(BetaParticle::UNIFORM, |p, &o| p.updated(o));
        let comply = outcomes.iter().filter(|&&o| o == Outcome::Comply).count() as f64;
        prop_assert_eq!((p.a, p.b), (1.0 + comply, 1.0 + outcomes.len() as f64 - comply));
    }

    #[test]
    fn updates_move_the_mean(a in 0.1f64..500.0, b in 0.1f64..500.0) {
        let p = BetaParticle::new(a, b);
        prop_assert!(p.updated(Outcome::Comply).mean() > p.mean());
        prop_assert!(p.updated(Outcome::Oppose).mean() < p.mean());
    }

    #[test]
    fn root_update_fills_capacity(
        counts in proptest::collection::vec((0.1f64..50.0, 0.1f64..50.0), 0..40),
        capacity in 1usize..120,
        seed in any::<u64>(),
        o in proptest::option::of(outcome()),
    ) {
        let child: Vec<BetaParticle> = counts.iter().map(|&(a, b)| BetaParticle::new(a, b)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = root_belief_update(&child, o, capacity, &mut rng);
        prop_assert_eq!(out.belief.len(), capacity);
        prop_assert_eq!(out.degenerate, child.is_empty());
        prop_assert!(out.belief.particles().iter().all(|p| p.a >= 0.1 && p.b >= 0.1));
    }

    #[test]
    fn belief_push_is_capped(n in 0usize..300, capacity in 1usize..100) {
        let mut b = BeliefSet::empty(capacity);
        for _ in 0..n {
            b.push(BetaParticle::UNIFORM);
        }
        prop_assert_eq!(b.len(), n.min(capacity));
    }

    #[test]
    fn no_classification_without_intervention(blocked in 0usize..4, response in 0usize..5) {
        let r = classify_response(&RobotAction::NoAssist, Direction::ALL[blocked], HumanAction::ALL[response]);
        prop_assert_eq!(r, None);
    }

    #[test]
    fn astar_matches_distance_field(blocked in blocked_set(8), row in 0usize..8, col in 0usize..8) {
        let goal = Cell::new(7, 7);
        let from = Cell::new(row, col);
        prop_assume!(!blocked.contains(from));
        let field = DistanceField::new(8, blocked, goal);
        let cost = astar_cost(8, blocked, from, goal);
        prop_assert_eq!(cost, field.distance(from).map(|d| d as usize));
        if let (Some(c), Some(d)) = (cost, astar_next(8, blocked, from, goal)) {
            let next = from.step(d, 8).unwrap();
            prop_assert!(!blocked.contains(next));
            prop_assert_eq!(astar_cost(8, blocked, next, goal), Some(c - 1));
        }
    }

    #[test]
    fn score_accounting(seed in any::<u64>(), max_steps in 1u32..40, actions in proptest::collection::vec((0usize..5, 0usize..5, 0usize..4), 1..120)) {
        let ids: Vec<&str> = maps::builtin_ids().collect();
        let map = maps::builtin(ids[(seed % ids.len() as u64) as usize]).unwrap();
        let params = RewardParams { max_steps, ..RewardParams::default() };
        let mut state = WorldState::initial(&map, Some(2));
        let mut total = max_steps as i64;
        for (h, k, m) in actions {
            if state.done {
                break;
            }
            let human = HumanAction::ALL[h];
            if human == HumanAction::Detect && !state.can_detect() {
                continue;
            }
            let kind = if human == HumanAction::Detect { RobotActionKind::NoAssist } else { RobotActionKind::ALL[k] };
            let robot = kind.with_payload(Direction::ALL[m], Explanation { reason: Reason::HazardAhead, cell: state.pos });
            let (next, ev) = step_world(&map, &state, human, &robot, &params).unwrap();
            prop_assert!(next.steps_taken == state.steps_taken + 1);
            prop_assert!(next.steps_taken <= max_steps);
            total += ev.reward;
            state = next;
            prop_assert_eq!(state.score(&params), total);
        }
    }

    #[test]
    fn ucb_tries_unvisited_first(visited in proptest::collection::vec(any::<bool>(), 5), c in 0.0f64..50.0) {
        let mut node = HistoryNode::new(init_belief(1).unwrap());
        for (i, &v) in visited.iter().enumerate() {
            if v {
                let a = node.actions[i].get_or_insert_with(Default::default);
                a.visits = 3;
                a.value = i as f64;
                node.visits += 3;
            }
        }
        let pick = ucb_select(&node, &RobotActionKind::ALL, c);
        match visited.iter().position(|&v| !v) {
            Some(first) => prop_assert_eq!(pick.index(), first),
            None => {
                prop_assert_eq!(greedy_select(&node, &RobotActionKind::ALL), RobotActionKind::TakeControlExplain);
            }
        }
    }
}

#[test]
fn shipped_maps_round_trip() {
    for id in maps::builtin_ids() {
        let map = maps::builtin(id).unwrap();
        let again = load_map(&map.to_text()).unwrap();
        assert_eq!(map, again, "{id}");
        assert!(validate_map(&again).is_ok());
    }
}

#[test]
fn summary_ignores_record_order() {
    let map = maps::builtin("lake4-a").unwrap();
    let params = EpisodeParams::benchmark(4);
    let mut records = Vec::new();
    for agent in ["no-assist", "pomcp@20", "heuristic-interrupt"] {
        for human in default_population() {
            for seed in 0..3 {
                records.push(run_episode(
                    "lake4-a",
                    &map,
                    &agent.parse().unwrap(),
                    &human,
                    seed,
                    &params,
                    RecordOptions::default(),
                ));
            }
        }
    }
    let forward = summarize(&records);
    records.reverse();
    let backward = summarize(&records);
    assert_eq!(forward.len(), 3);
    for (a, b) in forward.iter().zip(&backward) {
        assert_eq!((a.mean_score, a.std_score, a.episodes), (b.mean_score, b.std_score, b.episodes));
    }
}

#[test]
fn episodes_are_consistent_records() {
    let map = maps::builtin("lake8-c").unwrap();
    let params = EpisodeParams::benchmark(8);
    for human in default_population() {
        let r = run_episode(
            "lake8-c",
            &map,
            &"bayes-pomcp@50".parse().unwrap(),
            &human,
            4,
            &params,
            RecordOptions::default(),
        );
        assert!(r.is_completed());
        assert_eq!(r.steps as usize, r.trace.len());
        let sum: i64 = r.trace.iter().map(|s| s.events.reward).sum();
        assert_eq!(r.score, params.reward.max_steps as i64 + sum);
        let report = mip::harness::replay(&r).unwrap();
        assert!(report.is_faithful(), "{report:?}");
    }
}
