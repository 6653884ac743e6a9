use std::fs;
use std::io::{self, Write};

use igames::sim::{
    read_csv, run_batch, run_batch_parallel, write_csv, BatchSummary, BehaviorKind, GameKind,
    ScenarioRow, SummaryStats,
};

use crate::manifest::RunManifest;
use crate::{Failure, Format, SimulateArgs};

struct Cell {
    game: GameKind,
    behavior: BehaviorKind,
    summary: BatchSummary,
}

pub fn run(args: &SimulateArgs) -> Result<u8, Failure> {
    let mut configs = Vec::new();
    for &game in &args.game {
        for &behavior in &args.behavior {
            let cfg = args.scenario.config(args.players, game, args.setting, behavior);
            cfg.validate()?;
            configs.push(cfg);
        }
    }
    if configs.is_empty() || args.scenario.scenarios == 0 {
        return Err(Failure { code: 2, message: "nothing to run".into() });
    }

    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for cfg in &configs {
        let results = if args.sequential {
            run_batch(cfg, args.scenario.scenarios)?
        } else {
            run_batch_parallel(cfg, args.scenario.scenarios)?
        };
        rows.extend(results.iter().map(|r| ScenarioRow::new(cfg, r)));
        cells.push(Cell {
            game: cfg.game,
            behavior: cfg.behavior,
            summary: BatchSummary { config: cfg.clone(), summary: SummaryStats::from_results(&results) },
        });
    }

    let summaries: Vec<&BatchSummary> = cells.iter().map(|c| &c.summary).collect();
    let stdout = io::stdout();
    match args.format {
        Format::Table => print_table(&mut stdout.lock(), args, &cells)?,
        Format::Csv => write_csv(stdout.lock(), &rows)?,
        Format::Json => writeln!(stdout.lock(), "{}", serde_json::to_string_pretty(&summaries)?)?,
    }

    let dir = &args.out;
    fs::create_dir_all(dir)?;
    let csv_path = dir.join("scenarios.csv");
    let mut buf = Vec::new();
    write_csv(&mut buf, &rows)?;
    fs::write(&csv_path, &buf)?;
    if read_csv(buf.as_slice())? != rows {
        return Err(Failure { code: 4, message: "scenario CSV does not round-trip".into() });
    }
    let summary_path = dir.join("summary.json");
    fs::write(&summary_path, serde_json::to_string_pretty(&summaries)?)?;

    let mut manifest = RunManifest::new("simulate", args.scenario.seed, args.scenario.scenarios, configs);
    manifest.outputs = vec![csv_path, summary_path];
    let path = manifest.write(dir)?;
    eprintln!("wrote {}", path.display());
    Ok(0)
}

type Metric = fn(&SummaryStats) -> String;

fn print_table(out: &mut impl Write, args: &SimulateArgs, cells: &[Cell]) -> io::Result<()> {
    writeln!(
        out,
        "{} players, {} setting, {} scenarios per cell, seed {}",
        args.players, args.setting, args.scenario.scenarios, args.scenario.seed
    )?;
    let metrics: [(&str, Metric); 3] = [
        ("Crashes per 100 Games", |s| format!("{}", s.crashes_per_100)),
        ("Ave. Ego Speed (m/s)", |s| format!("{:.3}", s.mean_ego_speed)),
        ("Ave. Decision Time (s)", |s| format!("{:.6}", s.mean_decision_time)),
    ];
    for (title, metric) in metrics {
        writeln!(out)?;
        writeln!(out, "{title}")?;
        write!(out, "{:<10}", "behavior")?;
        for g in &args.game {
            write!(out, "{:>12}", g.as_str())?;
        }
        writeln!(out)?;
        for b in &args.behavior {
            write!(out, "{:<10}", b.as_str())?;
            for g in &args.game {
                let cell = cells.iter().find(|c| c.game == *g && c.behavior == *b);
                let text = cell.map_or_else(|| "-".to_string(), |c| metric(&c.summary.summary));
                write!(out, "{text:>12}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}
