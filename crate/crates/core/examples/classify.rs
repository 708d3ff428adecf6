//! Run both classification searches and print the resulting families.
//!
//! `cargo run --release --example classify -- 6`

use std::time::Instant;

use kdouble::classify::{enumerate, enumerate_by_characters, family_table, SearchConfig};

fn main() -> kdouble::Result<()> {
    let k_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);

    let start = Instant::now();
    let families = enumerate(&SearchConfig::with_k_max(k_max))?;
    println!(
        "branch-degree search up to k = {k_max}: {:?}",
        start.elapsed()
    );
    println!(
        "{:<6}{:>3}{:>5}{:>5}{:>6}{:>7}  d",
        "label", "k", "K^2", "deg", "moduli", "type"
    );
    for f in &families {
        println!(
            "{:<6}{:>3}{:>5}{:>5}{:>6}{:>7}  {:?}",
            f.label,
            f.k,
            f.k2,
            f.deg_canonical,
            f.modular_dimension,
            f.cover_type.to_string(),
            f.d
        );
    }

    let table = family_table();
    let expected = table.iter().filter(|t| t.k <= k_max).count();
    println!(
        "{} of {} tabulated families found",
        families.len(),
        expected
    );

    if k_max <= 5 {
        let start = Instant::now();
        let by_chars = enumerate_by_characters(&SearchConfig::with_k_max(k_max))?;
        println!(
            "character search agrees: {} ({:?})",
            by_chars == families,
            start.elapsed()
        );
    }
    Ok(())
}
