use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gwa_bv::bv::{connes_b, hoch_boundary, random_weight_zero_chain};
use gwa_bv::gwa::GwaSpec;
use gwa_bv::scalars::{parse_zpoly, rat, Rational};

fn spec(p: &str, e: i64) -> GwaSpec<Rational> {
    GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap().specialize(&rat(5, 3)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hochschild_identities(seed in any::<u64>(), len in 0usize..3, pick in 0usize..3) {
        let s = [spec("z", 1), spec("z^2 - 1", 1), spec("-z^2 - z + 1", 2)][pick].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_weight_zero_chain(&mut rng, len, 4);
        let dc = hoch_boundary(&s, &c);
        prop_assert!(hoch_boundary(&s, &dc).is_zero());
        let bc = connes_b(&s, &c).unwrap();
        prop_assert!(connes_b(&s, &bc).unwrap().is_zero());
        prop_assert!(hoch_boundary(&s, &bc).add(&connes_b(&s, &dc).unwrap()).is_zero());
    }

    #[test]
    fn products_associate(a in -2i64..3, b in -2i64..3, c in -2i64..3, i in 0u32..3) {
        use gwa_bv::gwa::{GwaElem, Monomial};
        let s = spec("z^2 - 1", 1);
        let one = Rational::from_integer(1.into());
        let m = |w: i64, zi: u32| GwaElem::monomial(Monomial::from_weight(w, zi), one.clone());
        let (u, v, w) = (m(a, i), m(b, 1), m(c, i + 1));
        prop_assert_eq!(s.mul(&s.mul(&u, &v), &w), s.mul(&u, &s.mul(&v, &w)));
    }
}
