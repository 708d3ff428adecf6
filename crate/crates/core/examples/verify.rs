//! Run the verification ledger and print failures only.
//!
//! `cargo run --release --example verify -- quotients burgers`

use kdouble::verify::{run, VerifyOptions};

fn main() -> kdouble::Result<()> {
    let options = VerifyOptions {
        sections: std::env::args().skip(1).collect(),
        ..Default::default()
    };
    let ledger = run(&options)?;
    print!("{}", ledger.failure_summary(usize::MAX));
    let failed = ledger.failures().count();
    println!("{} checks, {failed} failed", ledger.checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
