//! Times one enumeration: `cargo run --release --example timing -- half-turn 10`.

use std::time::Instant;

use asmsym::asm::{genfun, SymmetryClass};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let [_, class, n] = args.as_slice() else {
        eprintln!("usage: timing CLASS N");
        std::process::exit(1);
    };
    let class: SymmetryClass = class.parse().unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1)
    });
    let n: usize = n.parse().expect("N must be a non-negative integer");
    let t = Instant::now();
    let g = genfun(n, class);
    println!("{class} n={n} count={} ({:.2?})", g.count, t.elapsed());
}
