//! Write a verdict to disk, read it back and check it independently.

use domran::decision::Verdict;
use domran::{certify, decide_eq, parse_term};

fn main() -> domran::Result<()> {
    let (s, t) = (parse_term("x;dom(y)")?, parse_term("dom(x;y);x")?);
    let v = decide_eq(&s, &t)?;
    let path = std::env::temp_dir().join("domran-verdict.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v)?)?;

    let back: Verdict = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    println!("{s} = {t}: valid {}", back.valid);
    println!("certified for the same pair: {}", certify(&back, &s, &t));
    println!("certified for the swapped pair: {}", certify(&back, &t, &s));
    Ok(())
}
