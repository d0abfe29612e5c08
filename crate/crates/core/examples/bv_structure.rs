//! Cup products, Δ and Gerstenhaber brackets for the example algebras.

use gwa_bv::bv::bv_table;
use gwa_bv::presets::{custom, preset_podles, specialize_seeded};
use gwa_bv::scalars::rat;

fn main() -> gwa_bv::Result<()> {
    let specs = [
        ("p = z^2 - 1", custom("z^2 - 1", 1)?),
        ("Podles (0, 1)", preset_podles(&rat(0, 1), &rat(1, 1))?),
        ("Podles (1, 1)", preset_podles(&rat(1, 1), &rat(1, 1))?),
    ];
    for (name, spec) in &specs {
        let (q0, s) = specialize_seeded(spec, 1)?;
        println!("== {name} at q = {q0}");
        print!("{}", bv_table(&s)?.render_text());
    }
    println!("== p = z over Q(q)");
    print!("{}", bv_table(&custom("z", 1)?)?.render_text());
    Ok(())
}
