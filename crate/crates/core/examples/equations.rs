//! Weighted projective model of a family before and after elimination.
//!
//! `cargo run --example equations -- B2 latex`

use kdouble::classify::lookup;
use kdouble::equations::{build_model, check_homogeneous, eliminate, render};
use kdouble::json::OutputFormat;

fn main() -> kdouble::Result<()> {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "A2".into());
    let format: OutputFormat = args.next().as_deref().unwrap_or("text").parse()?;

    let family = lookup(&label)?;
    let full = build_model(&family.building_data())?;
    let reduced = eliminate(&full);
    eprintln!(
        "{}: {} relations in {}, homogeneous: {}",
        family.label,
        full.equations.len(),
        full.ambient_name(),
        check_homogeneous(&full)
    );
    eprintln!(
        "after elimination: {} relations in {}, homogeneous: {}",
        reduced.equations.len(),
        reduced.ambient_name(),
        check_homogeneous(&reduced)
    );
    print!("{}", render(&reduced, format)?);
    Ok(())
}
