//! Soundness scans of both catalogs, plus the twisted law under the wrong
//! semantics.

use domran::axioms::{angelic_catalog, demonic_catalog, Axiom};
use domran::{parse_term, soundness_scan, Mode, ScanConfig};

fn main() -> domran::Result<()> {
    let config = ScanConfig { models: 200, seed: 7, ..ScanConfig::default() };
    for (cat, mode) in [(angelic_catalog(), Mode::Angelic), (demonic_catalog(), Mode::Demonic)] {
        let r = soundness_scan(&cat, mode, &config)?;
        println!("{mode}: {} models, {} instances, {} violations", r.models_tested, r.instances_checked, r.violations.len());
    }

    // the twisted domain law is demonic only
    let mut cat = angelic_catalog();
    cat.equations.push(Axiom { label: "twisted".into(), lhs: parse_term("x;dom(y)")?, rhs: parse_term("dom(x;y);x")? });
    let r = soundness_scan(&cat, Mode::Angelic, &ScanConfig { models: 50, ..config })?;
    if let Some(v) = r.violations.first() {
        println!("twisted law fails angelically in model {} at {:?}:", v.model_index, v.witness);
        println!("{}", v.model.to_json());
    }
    Ok(())
}
