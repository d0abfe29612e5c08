//! Truncated dimension estimates of HH^*(A) next to the explicit basis.

use gwa_bv::homology::{cohomology_basis, cohomology_dims, DEFAULT_GRID};
use gwa_bv::presets::{custom, preset_wpl, specialize_seeded};
use gwa_bv::report::render_vector;
use gwa_bv::resolution::{build_resolution, Side};

fn main() -> gwa_bv::Result<()> {
    for (name, spec) in [("p = z", custom("z", 1)?), ("WP l=2", preset_wpl(2)?)] {
        let (q0, s) = specialize_seeded(&spec, 1)?;
        let table = cohomology_dims(&build_resolution(&s), Side::S, &[0, 1, -1], 5, &DEFAULT_GRID)?;
        println!("{name} at q = {q0}");
        for w in [0, 1, -1] {
            println!("  weight {w:>2}: {:?}", table.dims_at(w));
        }
        for b in &cohomology_basis(&s)?.elems {
            println!("  {} (deg {}): {}", b.label, b.degree, render_vector(&b.rep));
        }
    }
    Ok(())
}
