use std::fs;

use igames::costs::MatrixGame;
use igames::stackelberg::{stackelberg_2p, stackelberg_2p_all, verify_stackelberg_2p, StackelbergMode};
use igames::{brute_force_nash, deviation_report, verify_nash, Error};

use crate::{Failure, ModeArg, VerifyArgs};

const LEADER: usize = 0;

fn pair(m: &MatrixGame, p: &[usize]) -> String {
    format!("({}, {})", m.leader_actions[p[0]], m.follower_actions[p[1]])
}

fn with_costs(m: &MatrixGame, p: &[usize]) -> String {
    format!("{} costs ({}, {})", pair(m, p), m.leader_costs[p[0]][p[1]], m.follower_costs[p[0]][p[1]])
}

pub fn demo() -> Result<u8, Failure> {
    let m = MatrixGame::study2();
    let game = m.to_game()?;
    println!("Leader/follower costs (row = leader action, column = follower action)");
    print!("{m}");
    println!();

    let strong = stackelberg_2p(&game, LEADER, StackelbergMode::Strong)?;
    println!("strong Stackelberg (leader = row):");
    println!("  {}", with_costs(&m, &strong.indices));
    let weak = stackelberg_2p(&game, LEADER, StackelbergMode::Weak)?;
    println!("weak Stackelberg (leader = row):");
    for p in stackelberg_2p_all(&game, LEADER, StackelbergMode::Weak)? {
        let mark = if p == weak.indices { "  <- selected" } else { "" };
        println!("  {}{mark}", with_costs(&m, &p));
    }
    println!("pure Nash:");
    for p in brute_force_nash(&game)? {
        println!("  {}", with_costs(&m, &p));
    }
    Ok(0)
}

fn parse_profile(m: &MatrixGame, text: &str) -> Result<Vec<usize>, Failure> {
    let bad = |msg: String| Failure { code: 2, message: msg };
    let values: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad(format!("bad action {t:?} in profile"))))
        .collect::<Result<_, _>>()?;
    let [l, f] = values[..] else {
        return Err(bad(format!("profile needs 2 actions, got {}", values.len())));
    };
    let find = |actions: &[f64], a: f64| {
        actions.iter().position(|&x| x == a).ok_or_else(|| Failure::from(Error::ActionOutOfDomain(a)))
    };
    Ok(vec![find(&m.leader_actions, l)?, find(&m.follower_actions, f)?])
}

pub fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let m = match &args.file {
        Some(path) => MatrixGame::parse(&fs::read_to_string(path)?)?,
        None => MatrixGame::study2(),
    };
    let game = m.to_game()?;
    let profile = parse_profile(&m, &args.profile)?;

    let mut ok = verify_nash(&game, &profile)?;
    println!("profile {}", pair(&m, &profile));
    for d in deviation_report(&game, &profile)? {
        let (role, actions) = if d.player == LEADER { ("leader", &m.leader_actions) } else { ("follower", &m.follower_actions) };
        print!("  {role:<8} cost {:>8}  best deviation gain {:>8}", d.current_cost, d.gain());
        if d.gain() > game.tie_tolerance() {
            print!("  (improves by playing {})", actions[d.best_strategy]);
        }
        println!();
    }
    println!("Nash: {}", if ok { "yes" } else { "no" });

    if let Some(mode) = args.stackelberg {
        let (mode, name) = match mode {
            ModeArg::Strong => (StackelbergMode::Strong, "strong"),
            ModeArg::Weak => (StackelbergMode::Weak, "weak"),
        };
        let st = verify_stackelberg_2p(&game, LEADER, mode, &profile)?;
        println!("{name} Stackelberg: {}", if st { "yes" } else { "no" });
        ok = st;
    }
    Ok(if ok { 0 } else { 1 })
}
