//! Print both catalogs and the cycle-freeness status of a few algebras.

use domran::{check_cycle_free, AxiomCatalog, CatalogName, FiniteAlgebra};

fn main() -> domran::Result<()> {
    for name in [CatalogName::AxA, CatalogName::AxD] {
        let cat = AxiomCatalog::get(name);
        println!("== {name} ({} equations)", cat.equations.len());
        print!("{}", cat.listing());
    }

    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    for file in ["ea.json", "chain.json"] {
        let a = FiniteAlgebra::from_json(&std::fs::read_to_string(format!("{dir}/{file}"))?)?;
        let report = check_cycle_free(&a);
        println!("{file}: cycle-free {}", report.is_cycle_free());
        for v in &report.violations {
            println!("  {} fails at {:?}", v.law, v.assignment);
        }
    }
    Ok(())
}
