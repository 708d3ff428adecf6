//! Every intermediate quotient of a family, one line per symmetry orbit,
//! followed by its K3 towers.
//!
//! `cargo run --example quotients -- D4`

use kdouble::classify::lookup;
use kdouble::group::bit_string;
use kdouble::quotient::{grouped_quotient_reports, k3_towers, subgroup_name};

fn main() -> kdouble::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "E3".into());
    let family = lookup(&label)?;
    let bd = family.building_data();
    println!("{} quotients (d = {:?})", family.label, family.d);
    for orbit in grouped_quotient_reports(&bd)? {
        let r = &orbit.representative;
        println!(
            "  |H| = {:<3} {:<28} x{:<3} {}",
            r.order,
            subgroup_name(&r.subgroup(family.k), family.k),
            orbit.members.len(),
            r.invariants.display_name()
        );
    }
    let towers = k3_towers(&bd)?;
    println!("{} maximal K3 towers", towers.len());
    for t in &towers {
        let gens: Vec<String> = t.chains[0]
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&g| bit_string(g, family.k))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        println!(
            "  nodes {:?}  via {}  ({} chains)",
            t.nodes,
            gens.join(" < "),
            t.chains.len()
        );
    }
    Ok(())
}
