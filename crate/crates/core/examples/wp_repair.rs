//! Wagner-Preston representation of a finite algebra and range-defect repair.
//!
//! The bundled `ea.json` is not cycle-free, so the checked repair refuses
//! it; the unsafe round shows what goes wrong.

use domran::demonic_repr::{range_defects_unchecked, repair};
use domran::{verify_partial_repr, wagner_preston, FiniteAlgebra, RepairMode};

fn main() -> domran::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/ea.json").into());
    let alg = FiniteAlgebra::from_json(&std::fs::read_to_string(path)?)?;

    let wp = wagner_preston(&alg)?;
    for el in alg.elements() {
        println!("element {el}: {:?}", wp.edges[el]);
    }
    println!("verified: {}", verify_partial_repr(&alg, &wp).passes());
    println!("range defects: {:?}", range_defects_unchecked(&alg, &wp));

    match repair(&alg, wp.clone(), 3, RepairMode::Checked) {
        Ok(h) => println!("checked repair: {} rounds, converged {}", h.rounds.len(), h.converged),
        Err(e) => println!("checked repair refused: {e}"),
    }
    let h = repair(&alg, wp, 1, RepairMode::Unsafe)?;
    let report = verify_partial_repr(&alg, &h.repr);
    println!("after one unsafe round: {} points, defects {:?}", h.repr.point_count(), range_defects_unchecked(&alg, &h.repr));
    for f in report.hypothesis_one.iter().chain(&report.connectors) {
        println!("  {}", f.detail);
    }
    Ok(())
}
