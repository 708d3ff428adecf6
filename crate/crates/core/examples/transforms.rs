//! Moving between line-bundle degrees `l` and branch degrees `d`, and the
//! invariants read off from them.
//!
//! `cargo run --example transforms -- 0,0,0,2,1,1,1,3`

use kdouble::building::{d_from_l, l_from_d, surface_invariants, BuildingDataNumeric};
use kdouble::group::bit_string;
use kdouble::verify::cyclic_example_data;
use kdouble::{Error, FiniteAbelianGroup};

fn main() -> kdouble::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "0,3,3,3".into());
    let d: Vec<i64> = arg
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidData(arg.clone()))
        })
        .collect::<kdouble::Result<_>>()?;
    let k = d.len().trailing_zeros() as usize;
    if 1 << k != d.len() {
        return Err(Error::LengthMismatch {
            expected: 1 << k,
            got: d.len(),
        });
    }

    let bd = BuildingDataNumeric::from_branch_degrees(k, d)?;
    println!("(Z/2)^{k} cover of the plane");
    println!("  {:<6} {:>3} {:>3}", "", "d", "l");
    for i in 0..bd.d.len() {
        println!("  {:<6} {:>3} {:>3}", bit_string(i, k), bd.d[i], bd.l[i]);
    }
    let back = d_from_l(&bd.group, &bd.l)?.integral();
    println!(
        "  d recovered from l: {}",
        back.as_deref() == Some(bd.d.as_slice())
    );
    if !bd.is_valid() {
        println!("  violations: {:?}", bd.validate());
        return Ok(());
    }
    let inv = surface_invariants(&bd)?;
    println!(
        "  p_g = {}, q = {}, K^2 = {}, base points = {}, deg phi = {:?}",
        inv.p_g, inv.q, inv.k2, inv.base_points, inv.deg_canonical
    );

    // Over a cyclic group of order 5 the degrees l no longer determine d.
    let (a, b) = cyclic_example_data();
    println!("Z/5 covers of the line");
    for x in [&a, &b] {
        println!("  d = {:?} -> l = {:?}", x.d, x.l);
    }
    let z5 = FiniteAbelianGroup::cyclic(5)?;
    println!(
        "  l_from_d agrees: {}",
        l_from_d(&z5, &a.d).integral() == l_from_d(&z5, &b.d).integral()
    );
    println!("  d_from_l: {}", d_from_l(&z5, &a.l).unwrap_err());
    Ok(())
}
