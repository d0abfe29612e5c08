//! Verify the free resolution exactly for the standard family of algebras.

use gwa_bv::presets::{seed_from_env, standard_specs};
use gwa_bv::resolution::{build_resolution, verify_resolution};

fn main() -> gwa_bv::Result<()> {
    for named in standard_specs(seed_from_env())? {
        let rep = verify_resolution(&build_resolution(&named.spec))?;
        println!("{:<28} {}", named.name, rep.summary());
        for c in rep.failures() {
            println!("    failed: {}", c.name);
        }
    }
    Ok(())
}
