//! Named example algebras and seeded random specs.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gwa::{skew_cy_analyze, GwaSpec};
use crate::scalars::{parse_zpoly, RatFunc, Rational, Scalar, ZPoly};

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "GWABV_SEED";
pub const DEFAULT_SEED: u64 = 1;

/// A spec with a display name.
#[derive(Clone, Debug)]
pub struct NamedSpec {
    pub name: String,
    pub spec: GwaSpec<RatFunc>,
}

pub fn custom(p: &str, e: i64) -> Result<GwaSpec<RatFunc>> {
    if e == 0 {
        return Err(Error::InvalidSpec("e must be nonzero for quantum type".into()));
    }
    GwaSpec::exact(parse_zpoly(p)?, e)
}

/// Quantum weighted projective line: `p = z·∏_{i=1}^{l}(1 − q^{−2i} z)`, `e = 2l`.
pub fn preset_wpl(l: u32) -> Result<GwaSpec<RatFunc>> {
    if l == 0 {
        return Err(Error::InvalidConfig("weighted projective line needs l ≥ 1".into()));
    }
    let z = ZPoly::<RatFunc>::var();
    let q = RatFunc::q();
    let mut p = z.clone();
    for i in 1..=l as i64 {
        let factor = &ZPoly::one() - &z.scale(&q.powi(-2 * i));
        p = &p * &factor;
    }
    GwaSpec::exact(p, 2 * l as i64)
}

/// Podleś sphere: `p = −z² − uz + v`, `e = 2`; needs `u² + 4v ≠ 0`.
pub fn preset_podles(u: &Rational, v: &Rational) -> Result<GwaSpec<RatFunc>> {
    if (u * u + Rational::from_integer(4.into()) * v).is_zero() {
        return Err(Error::MultipleRoot);
    }
    let c = |r: &Rational| RatFunc::from_rational(r);
    let p = ZPoly::new(vec![c(v), -c(u), -RatFunc::one()]);
    GwaSpec::exact(p, 2)
}

/// `count` squarefree cubics with small integer coefficients, `e = 1`.
pub fn random_cubics(seed: u64, count: usize) -> Vec<NamedSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let lead = [1, -1, 2, -2, 3][rng.gen_range(0..5)];
        let cs = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3), lead];
        let p = ZPoly::from_ints(&cs);
        let spec = GwaSpec::exact(p.clone(), 1).expect("nonzero exponent");
        if skew_cy_analyze(&spec).squarefree {
            out.push(NamedSpec { name: format!("cubic {}", p), spec });
        }
    }
    out
}

/// The fixed list used by the resolution and duality suites.
pub fn standard_specs(seed: u64) -> Result<Vec<NamedSpec>> {
    let r = |n: i64| Rational::from_integer(n.into());
    let mut v = vec![
        NamedSpec { name: "p = z".into(), spec: custom("z", 1)? },
        NamedSpec { name: "p = z^2 - 1".into(), spec: custom("z^2 - 1", 1)? },
        NamedSpec { name: "Podles (0, 1)".into(), spec: preset_podles(&r(0), &r(1))? },
        NamedSpec { name: "Podles (1, 1)".into(), spec: preset_podles(&r(1), &r(1))? },
        NamedSpec { name: "WP l=1".into(), spec: preset_wpl(1)? },
        NamedSpec { name: "WP l=2".into(), spec: preset_wpl(2)? },
    ];
    v.extend(random_cubics(seed, 5));
    Ok(v)
}

/// A seeded generic rational value for `q`, avoiding poles of the spec.
pub fn specialize_seeded(spec: &GwaSpec<RatFunc>, seed: u64) -> Result<(Rational, GwaSpec<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..64 {
        let (a, b): (i64, i64) = (rng.gen_range(2..=13), rng.gen_range(2..=13));
        if a == b {
            continue;
        }
        let q0 = Rational::new(a.into(), b.into());
        if let Ok(s) = spec.specialize(&q0) {
            if skew_cy_analyze(&s).squarefree == skew_cy_analyze(spec).squarefree {
                return Ok((q0, s));
            }
        }
    }
    Err(Error::SpecializationPole("no admissible value found".into()))
}

/// Seed from the environment, falling back to the default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn wpl_shapes() {
        let s1 = preset_wpl(1).unwrap();
        assert_eq!(s1.p().to_string(), custom("z - q^-2 z^2", 2).unwrap().p().to_string());
        assert_eq!(s1.e(), 2);
        let s2 = preset_wpl(2).unwrap();
        let cy = skew_cy_analyze(&s2);
        assert_eq!((cy.n, cy.ell, cy.squarefree), (3, Some(1), true));
        assert!(preset_wpl(0).is_err());
    }

    #[test]
    fn podles_shapes() {
        let s = preset_podles(&rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(skew_cy_analyze(&s).ell, Some(2));
        let s = preset_podles(&rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(skew_cy_analyze(&s).ell, Some(1));
        assert_eq!(preset_podles(&rat(2, 1), &rat(-1, 1)).unwrap_err(), Error::MultipleRoot);
    }

    #[test]
    fn cubics_reproducible() {
        let a: Vec<String> = random_cubics(3, 5).into_iter().map(|n| n.name).collect();
        let b: Vec<String> = random_cubics(3, 5).into_iter().map(|n| n.name).collect();
        assert_eq!(a, b);
        for n in random_cubics(3, 5) {
            assert!(skew_cy_analyze(&n.spec).squarefree);
            assert_eq!(n.spec.n(), 3);
        }
        let (q1, _) = specialize_seeded(&preset_wpl(1).unwrap(), 1).unwrap();
        let (q2, _) = specialize_seeded(&preset_wpl(1).unwrap(), 1).unwrap();
        assert_eq!(q1, q2);
    }
}
