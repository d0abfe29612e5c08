//! Hochschild boundary and Connes' operator on small chains.

use gwa_bv::bv::{connes_b, hoch_boundary, verify_connes, HochChain};
use gwa_bv::gwa::GwaElem;
use gwa_bv::presets::custom;
use gwa_bv::scalars::RatFunc;

fn main() -> gwa_bv::Result<()> {
    let spec = custom("z", 1)?;
    let (x, y, z) = (GwaElem::<RatFunc>::x(), GwaElem::y(), GwaElem::z());
    let c0 = HochChain::from_elems(&z, &[]);
    println!("B({c0}) = {}", connes_b(&spec, &c0)?);
    let c1 = HochChain::from_elems(&x, &[y.clone()])
        .sub(&HochChain::from_elems(&y, &[x.clone()]).scale(&spec.qe_pow(-1)));
    println!("∂({c1}) = {}", hoch_boundary(&spec, &c1));
    println!("B({c1}) = {}", connes_b(&spec, &c1)?);
    let (_, s) = gwa_bv::presets::specialize_seeded(&custom("z^2 - 1", 1)?, 1)?;
    println!("random chains: {}", verify_connes(&s, 1, 50)?.summary());
    Ok(())
}
