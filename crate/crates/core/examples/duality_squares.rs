//! The comparison maps between the resolution and its dual, with homotopies.

use gwa_bv::duality::{build_duality, verify_homotopies, verify_squares};
use gwa_bv::presets::preset_podles;
use gwa_bv::scalars::rat;

fn main() -> gwa_bv::Result<()> {
    let spec = preset_podles(&rat(0, 1), &rat(1, 1))?;
    let dd = build_duality(&spec)?;
    println!("Bezout data: {:?}", dd.bezout());
    for rep in [verify_squares(&dd)?, verify_homotopies(&dd)?] {
        for c in &rep.checks {
            println!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
    }
    Ok(())
}
