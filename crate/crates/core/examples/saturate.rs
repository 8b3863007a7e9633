//! Run the labelled-graph construction on a pool of terms, checking
//! coherence after every step, and dump the final stage as DOT.

use domran::saturation::{parse_element_pool, run_saturation_with};
use domran::{coherence_check, Decider};

fn main() -> domran::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/pool.txt").into());
    let pool = parse_element_pool(&std::fs::read_to_string(path)?)?;

    let mut decider = Decider::new();
    let mut incoherent = 0;
    let run = run_saturation_with(&mut decider, &pool, 300, 1, |d, g, _| {
        if !coherence_check(d, g)?.is_coherent() {
            incoherent += 1;
        }
        Ok(())
    })?;

    let applied = run.steps.iter().filter(|s| s.outcome.applied()).count();
    println!("{} steps, {applied} applied, {} nodes, {} edges", run.steps.len(), run.graph.node_count(), run.graph.edge_count());
    println!("incoherent stages: {incoherent}");
    println!("initial defects: {}, uncured: {}, now: {}", run.initial_defects.len(), run.uncured_initial_defects().len(), run.defects.len());
    println!("{}", run.graph.to_dot());
    Ok(())
}
