use crate::costs::stage_pair_penalty;
use crate::error::{Error, Result};
use crate::game::{Action, StrategyProfile};
use crate::vehicle::{position_2d, step, AgentGeometry, WorldState};

use super::{BehaviorKind, ConstantSpeed, ScenarioConfig};

/// The action in `actions` whose one-step speed lands closest to `desired`;
/// the first such action on ties.
pub fn tracking_action(v: f64, desired: f64, dt: f64, actions: &[f64]) -> Action {
    let mut best = (f64::INFINITY, 0.0);
    for &a in actions {
        let miss = ((v + dt * a).max(0.0) - desired).abs();
        if miss < best.0 {
            best = (miss, a);
        }
    }
    Action(best.1)
}

/// Action committed by `target` this epoch under `cfg.behavior`. Player 0 is
/// the ego and has already committed `ego_action`; `equilibrium` is the
/// ego's solved profile and is required for [`BehaviorKind::Ideal`].
pub fn behavior_action(
    cfg: &ScenarioConfig,
    target: usize,
    world: &WorldState,
    geoms: &[AgentGeometry],
    equilibrium: Option<&StrategyProfile>,
    ego_action: Action,
) -> Result<Action> {
    let params = &cfg.cost;
    let actions = &cfg.actions;
    match cfg.behavior {
        BehaviorKind::ConstantSpeed => Ok(match cfg.constant_speed {
            ConstantSpeed::Current => Action(0.0),
            ConstantSpeed::Desired => {
                let v = world.agents[target].v;
                tracking_action(v, params.desired(target), world.dt, actions)
            }
        }),
        BehaviorKind::Ideal => equilibrium
            .map(|p| p.get(target).first_action())
            .ok_or_else(|| Error::InvalidConfig("ideal behaviour needs the solved profile".into())),
        BehaviorKind::SimpleRules => {
            let me = world.agents[target];
            let cruise = tracking_action(me.v, params.desired(target), world.dt, actions);
            let ego_dist = geoms[0].distance_to_center(&world.agents[0]);
            let yields = geoms[target].distance_to_center(&me) > ego_dist;
            if !yields {
                return Ok(cruise);
            }
            let brake = actions.iter().copied().fold(f64::INFINITY, f64::min);
            let mine = position_2d(&geoms[target], &step(me, cruise, world.dt));
            let danger = world.agents.iter().enumerate().any(|(j, &s)| {
                if j == target {
                    return false;
                }
                let u = if j == 0 { ego_action } else { Action(0.0) };
                let theirs = position_2d(&geoms[j], &step(s, u, world.dt));
                stage_pair_penalty(mine, theirs, params) > 0.0
            });
            Ok(if danger { Action(brake) } else { cruise })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Strategy, DEFAULT_ACTIONS};
    use crate::vehicle::{Heading, LongitudinalState};

    fn geoms() -> Vec<AgentGeometry> {
        vec![AgentGeometry::approach(Heading::PosY, 1.5), AgentGeometry::approach(Heading::NegX, 1.5)]
    }

    fn act(behavior: BehaviorKind, w: &WorldState, eq: Option<&StrategyProfile>) -> Action {
        let cfg = ScenarioConfig { behavior, ..Default::default() };
        behavior_action(&cfg, 1, w, &geoms(), eq, Action(0.0)).unwrap()
    }

    #[test]
    fn constant_speed_ignores_everyone() {
        let w = WorldState::new(vec![LongitudinalState::new(-40.0, 4.0), LongitudinalState::new(-50.0, 10.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::ConstantSpeed, &w, None), Action(0.0));
        // Below the desired speed it speeds up, even straight into the ego.
        let w = WorldState::new(vec![LongitudinalState::new(-2.0, 4.0), LongitudinalState::new(-4.0, 7.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::ConstantSpeed, &w, None), Action(2.0));
        let cfg = ScenarioConfig {
            behavior: BehaviorKind::ConstantSpeed,
            constant_speed: ConstantSpeed::Current,
            ..Default::default()
        };
        assert_eq!(behavior_action(&cfg, 1, &w, &geoms(), None, Action(0.0)).unwrap(), Action(0.0));
    }

    #[test]
    fn ideal_plays_first_action_of_profile() {
        let w = WorldState::new(vec![LongitudinalState::new(-40.0, 4.0), LongitudinalState::new(-50.0, 7.0)], 0.5).unwrap();
        let p = StrategyProfile(vec![
            Strategy::two_segment(0.0, 0.0, 8).unwrap(),
            Strategy::two_segment(-1.0, 2.0, 8).unwrap(),
        ]);
        assert_eq!(act(BehaviorKind::Ideal, &w, Some(&p)), Action(-1.0));
        assert!(behavior_action(&ScenarioConfig::default(), 1, &w, &geoms(), None, Action(0.0)).is_err());
    }

    #[test]
    fn simple_rules_cruise_without_danger() {
        let w = WorldState::new(vec![LongitudinalState::new(-40.0, 4.0), LongitudinalState::new(-60.0, 10.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::SimpleRules, &w, None), Action(0.0));
        let w = WorldState::new(vec![LongitudinalState::new(-40.0, 4.0), LongitudinalState::new(-60.0, 4.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::SimpleRules, &w, None), Action(2.0));
    }

    #[test]
    fn simple_rules_brakes_when_yielding_into_the_box() {
        // Ego 2 m short of the centre, target 4 m short: both inside the box next step.
        let w = WorldState::new(vec![LongitudinalState::new(-2.0, 4.0), LongitudinalState::new(-4.0, 4.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::SimpleRules, &w, None), Action(-2.0));
        // Same geometry but the target is closer: it has right of way.
        let w = WorldState::new(vec![LongitudinalState::new(-4.0, 4.0), LongitudinalState::new(-2.0, 4.0)], 0.5).unwrap();
        assert_eq!(act(BehaviorKind::SimpleRules, &w, None), Action(2.0));
    }

    #[test]
    fn tracking_action_picks_closest_speed() {
        assert_eq!(tracking_action(10.0, 10.0, 0.5, &DEFAULT_ACTIONS), Action(0.0));
        assert_eq!(tracking_action(9.5, 10.0, 0.5, &DEFAULT_ACTIONS), Action(1.0));
        assert_eq!(tracking_action(12.0, 10.0, 0.5, &DEFAULT_ACTIONS), Action(-2.0));
    }
}
