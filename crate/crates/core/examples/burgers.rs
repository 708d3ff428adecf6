//! Triple K3 burgers: involutions whose quotients are K3 surfaces, one for
//! each canonical character.
//!
//! `cargo run --example burgers`

use kdouble::classify::{family_table, CoverType};
use kdouble::group::bit_string;
use kdouble::quotient::{burger_check, burger_conditions};
use kdouble::verify::standard_involutions;

fn main() -> kdouble::Result<()> {
    for f in family_table()
        .into_iter()
        .filter(|f| f.cover_type != CoverType::A)
    {
        let bd = f.building_data();
        let triples = burger_check(&bd)?;
        print!("{:<3} {:>3} triples", f.label, triples.len());
        if let Some(t) = triples.first() {
            let s: Vec<String> = t.sigmas.iter().map(|&g| bit_string(g, f.k)).collect();
            let nodes: Vec<i64> = t.reports.iter().map(|r| r.invariants.nodes).collect();
            print!(", e.g. {} with nodes {:?}", s.join(" "), nodes);
        }
        println!();
        let sigmas = standard_involutions(f.k);
        let c = burger_conditions(&bd, sigmas)?;
        let s: Vec<String> = sigmas.iter().map(|&g| bit_string(g, f.k)).collect();
        println!(
            "    {}: K3 quotients {:?}, splits the canonical characters: {}",
            s.join(" "),
            c.k3,
            c.splits_characters()
        );
    }
    Ok(())
}
