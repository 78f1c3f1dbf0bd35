//! Executing a check graph.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::harness::graph::{CheckContext, CheckGraph};
use crate::harness::report::{CheckReport, CheckResult, CheckStatus};

/// Runs every node after its prerequisites. Nodes of equal depth run in
/// parallel on `config.workers` threads; results are placed by topological
/// index, so the report does not depend on scheduling.
pub fn run_suite(graph: &CheckGraph, config: &RunConfig) -> Result<CheckReport> {
    let order = graph.topological_order()?;
    let nodes = graph.nodes();
    let position = |name: &str| {
        order
            .iter()
            .position(|&i| nodes[i].name == name)
            .expect("prerequisites exist")
    };

    let mut depth = vec![0usize; order.len()];
    for (pos, &i) in order.iter().enumerate() {
        depth[pos] = nodes[i]
            .prerequisites
            .iter()
            .map(|p| depth[position(p)] + 1)
            .max()
            .unwrap_or(0);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let ctx = CheckContext {
        config,
        seed: config.seed,
    };

    let mut results: Vec<Option<CheckResult>> = vec![None; order.len()];
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    for level in 0..=max_depth {
        let batch: Vec<usize> = (0..order.len()).filter(|&p| depth[p] == level).collect();
        let done: Vec<(usize, CheckResult)> = pool.install(|| {
            batch
                .par_iter()
                .map(|&pos| {
                    let node = &nodes[order[pos]];
                    let blocked: Vec<&str> = node
                        .prerequisites
                        .iter()
                        .filter(|p| {
                            results[position(p)].as_ref().map(|r| r.status)
                                != Some(CheckStatus::Pass)
                        })
                        .map(String::as_str)
                        .collect();
                    if !blocked.is_empty() {
                        return (
                            pos,
                            CheckResult {
                                name: node.name.clone(),
                                status: CheckStatus::Skipped,
                                instances: 0,
                                worst_margin: None,
                                failing_params: None,
                                note: Some(format!("prerequisite not passed: {}", blocked.join(", "))),
                                elapsed_ms: 0,
                            },
                        );
                    }
                    let start = Instant::now();
                    let tally = (node.runner)(&ctx);
                    let elapsed = start.elapsed().as_millis() as u64;
                    (pos, tally.into_result(&node.name, elapsed))
                })
                .collect()
        });
        for (pos, r) in done {
            results[pos] = Some(r);
        }
    }

    let mut echo = config.clone();
    echo.workers = None;
    echo.output = None;
    echo.format = Default::default();
    Ok(CheckReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        config: echo,
        timestamp,
        results: results.into_iter().map(|r| r.expect("every level ran")).collect(),
    })
}
