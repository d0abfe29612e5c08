//! Normal forms, the twist σ and the Bezout certificate for a few algebras.

use gwa_bv::gwa::{skew_cy_analyze, GwaElem};
use gwa_bv::presets::{custom, preset_podles, preset_wpl};
use gwa_bv::scalars::rat;

fn main() -> gwa_bv::Result<()> {
    let specs = [
        ("p = z^2 - 1", custom("z^2 - 1", 1)?),
        ("Podles (1, 1)", preset_podles(&rat(1, 1), &rat(1, 1))?),
        ("WP l=1", preset_wpl(1)?),
    ];
    for (name, spec) in &specs {
        let (x, y, z) = (GwaElem::x(), GwaElem::y(), GwaElem::z());
        println!("{name}: p = {}, e = {}", spec.p(), spec.e());
        println!("  y·x = {}", spec.mul(&y, &x));
        println!("  x·y = {}", spec.mul(&x, &y));
        println!("  x·z = {}", spec.mul(&x, &z));
        let xyz = spec.parse_elem("x*y*z + y")?;
        println!("  ν(xyz + y) = {}", spec.nakayama(&xyz));
        let cy = skew_cy_analyze(spec);
        println!("  squarefree: {}, n = {}, ℓ = {:?}", cy.squarefree, cy.n, cy.ell);
        println!("  Bezout: {:?}", cy.bezout);
    }
    let bad = custom("z^2", 1)?;
    println!("p = z^2 squarefree: {}", skew_cy_analyze(&bad).squarefree);
    Ok(())
}
