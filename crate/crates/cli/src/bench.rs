use std::fmt::Write as _;
use std::fs;

use igames::sim::{run_batch, GameKind, ScenarioConfig, Setting, SummaryStats};

use crate::manifest::RunManifest;
use crate::{BenchArgs, Failure};

struct Row {
    n: usize,
    game: GameKind,
    setting: Setting,
    stats: SummaryStats,
}

fn cells(n: usize) -> Vec<(GameKind, Setting)> {
    let mut out: Vec<_> = GameKind::ALL.iter().map(|&g| (g, Setting::Multiplayer)).collect();
    if n > 2 {
        out.extend(GameKind::ALL.iter().map(|&g| (g, Setting::Pairwise)));
    }
    out
}

/// Scenarios run one at a time so decision times are not skewed by
/// contention between worker threads.
pub fn run(args: &BenchArgs) -> Result<u8, Failure> {
    let mut configs: Vec<ScenarioConfig> = Vec::new();
    for &n in &args.players {
        for (game, setting) in cells(n) {
            let cfg = args.scenario.config(n, game, setting, args.behavior);
            cfg.validate()?;
            configs.push(cfg);
        }
    }

    let mut rows = Vec::new();
    for cfg in &configs {
        let results = run_batch(cfg, args.scenario.scenarios)?;
        rows.push(Row { n: cfg.n_players, game: cfg.game, setting: cfg.setting, stats: SummaryStats::from_results(&results) });
    }

    let mut csv = String::from("n_players,game,setting,decisions,mean_decision_time_s,ratio_to_nbr\n");
    println!(
        "{:<3} {:<5} {:<12} {:>10} {:>16} {:>10}",
        "N", "game", "setting", "decisions", "mean time (s)", "vs nbr"
    );
    for r in &rows {
        let base = rows
            .iter()
            .find(|b| b.n == r.n && b.game == GameKind::NashBrd && b.setting == Setting::Multiplayer)
            .map_or(f64::NAN, |b| b.stats.mean_decision_time);
        let ratio = r.stats.mean_decision_time / base;
        println!(
            "{:<3} {:<5} {:<12} {:>10} {:>16.7} {:>10.2}",
            r.n,
            r.game.as_str(),
            r.setting.as_str(),
            r.stats.decision_count,
            r.stats.mean_decision_time,
            ratio
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.n,
            r.game,
            r.setting,
            r.stats.decision_count,
            r.stats.mean_decision_time,
            ratio
        );
    }

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        let path = dir.join("bench.csv");
        fs::write(&path, csv)?;
        let mut manifest = RunManifest::new("bench", args.scenario.seed, args.scenario.scenarios, configs);
        manifest.outputs = vec![path];
        manifest.write(dir)?;
    }
    Ok(0)
}
