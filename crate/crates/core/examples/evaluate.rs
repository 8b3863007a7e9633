//! Evaluate terms in a concrete model under both compositions.

use domran::{eval, parse_term, Mode, RelationalModel};

fn main() -> domran::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/model.json").into());
    let model = RelationalModel::from_json(&std::fs::read_to_string(path)?)?;

    for text in ["x", "y", "x;y", "dom(x)", "ran(x;y)", "x;dom(y)", "dom(x;y);x"] {
        let t = parse_term(text)?;
        let a = eval(&t, &model, Mode::Angelic)?;
        let d = eval(&t, &model, Mode::Demonic)?;
        println!("{:<12} angelic {:?}", t.to_string(), a.pairs());
        println!("{:<12} demonic {:?}", "", d.pairs());
    }
    Ok(())
}
