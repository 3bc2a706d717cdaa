//! Render the portrait of a word as GraphViz DOT on stdout.
//!
//! Usage: cargo run --example portrait_dot -- "[b,a]" 3

use branchgroups::words::{parse_word, AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let word = args.get(1).map(String::as_str).unwrap_or("[b,a]");
    let depth: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let family = Family::new(FamilyKind::Egs, AccompanyingVector::new(3, &[1, 2])?);
    let aut = parse_word(word, &family)?.to_aut();
    print!("{}", aut.portrait(depth)?.to_dot());
    Ok(())
}
