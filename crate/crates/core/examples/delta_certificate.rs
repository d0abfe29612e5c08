//! Δ on each basis class, with the size of the Hochschild boundary certifying it.

use gwa_bv::bv::bv_context;
use gwa_bv::presets::custom;
use num_traits::Zero;

fn main() -> gwa_bv::Result<()> {
    let ctx = bv_context(&custom("z", 1)?)?;
    for label in ctx.basis().labels() {
        let d = ctx.delta_on_class(&label)?;
        let coords: Vec<String> = d.coords.iter().filter(|(_, c)| !c.is_zero()).map(|(l, c)| format!("{c}·{l}")).collect();
        println!(
            "Δ({label}) = [{}]  certified: {}  witness terms: {}",
            coords.join(", "),
            d.certified,
            d.witness.len()
        );
    }
    Ok(())
}
