//! The comparison with the bar resolution and the image of the fundamental class.

use gwa_bv::bv::{build_eta, to_bar, verify_eta};
use gwa_bv::duality::build_duality;
use gwa_bv::gwa::GwaElem;
use gwa_bv::presets::custom;

fn main() -> gwa_bv::Result<()> {
    let spec = custom("z^2 - 1", 1)?;
    let cd = build_eta(&spec);
    for (k, names) in gwa_bv::bv::eta::GENERATOR_NAMES.iter().enumerate() {
        for (name, e) in names.iter().zip(cd.eta(k)) {
            println!("η{k}({name}) = {e}");
        }
    }
    let dd = build_duality(&spec)?;
    println!("{}", verify_eta(&cd, dd.resolution())?.summary());
    let g0 = dd.transfer_g(0, &[GwaElem::one()])?;
    println!("fundamental class = {}", to_bar(&cd, 2, &g0));
    Ok(())
}
