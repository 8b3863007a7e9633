//! Count small algebras of the demonic signature under various law sets.

use domran::algebra::canonical_form;
use domran::axioms::{cycle_free_laws, demonic_catalog, restriction_semigroup_laws};
use domran::{enumerate_algebras, Law};

fn main() -> domran::Result<()> {
    let axd: Vec<Law> = demonic_catalog().equations.iter().map(|a| a.as_law()).collect();
    let mut cycle_free = axd.clone();
    cycle_free.extend(cycle_free_laws());

    for (name, laws) in [("restriction semigroups", restriction_semigroup_laws()), ("demonic axioms", axd), ("cycle-free", cycle_free)] {
        print!("{name:<24}");
        for n in 1..=3 {
            let (found, outcome) = enumerate_algebras(n, &laws)?;
            let mut classes: Vec<String> = found.iter().map(|a| canonical_form(a).to_json()).collect();
            classes.sort();
            classes.dedup();
            print!("  n={n}: {:>3} ({} up to iso, {} nodes)", found.len(), classes.len(), outcome.nodes_visited);
        }
        println!();
    }
    Ok(())
}
