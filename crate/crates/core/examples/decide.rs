//! Decide a few inequations of the angelic signature and print verdicts.
//!
//! cargo run --example decide -- 'dom(x;y);x' 'x;dom(y)'

use domran::{certify, parse_term, Decider};

fn main() -> domran::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [l, r] => vec![(l.clone(), r.clone())],
        _ => [("x;ran(x)", "x"), ("dom(x)", "x"), ("dom(x;y);x", "x;dom(y)"), ("x;dom(y)", "dom(x;y);x"), ("dom(x;y)", "dom(x;dom(y))")]
            .iter()
            .map(|(l, r)| (l.to_string(), r.to_string()))
            .collect(),
    };

    let mut decider = Decider::new();
    for (l, r) in pairs {
        let (s, t) = (parse_term(&l)?, parse_term(&r)?);
        let v = decider.decide_leq(&s, &t)?;
        print!("{s} <= {t}: {}", if v.valid { "valid" } else { "invalid" });
        if let Some(c) = &v.counterexample {
            print!("  (witness {:?} in a {}-point model)", c.witness, c.model.universe());
        }
        println!("  certified: {}", certify(&v, &s, &t));
    }
    Ok(())
}
