//! Exact scalars: ℚ, ℚ(q), and polynomials in `z` over either.

pub mod field;
pub mod parse;
pub mod poly;
pub mod ratfunc;

use std::fmt;

pub use field::{int, rat, Rational, Scalar};
pub use parse::{parse_ratfunc, parse_rational, parse_zpoly};
pub use poly::{Poly, QPoly, ZPoly};
pub use ratfunc::{rf_normalize, rf_specialize, RatFunc};

/// Bézout certificate `alpha·p + beta·r = gcd`.
#[derive(Clone, PartialEq)]
pub struct BezoutData<F> {
    pub alpha: ZPoly<F>,
    pub beta: ZPoly<F>,
    pub gcd: ZPoly<F>,
}

impl<F: Scalar> fmt::Debug for BezoutData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·p + ({})·r = {}", self.alpha, self.beta, self.gcd)
    }
}

impl<F: Scalar> BezoutData<F> {
    pub fn is_unit(&self) -> bool {
        self.gcd.degree() == Some(0)
    }
}

/// `φ(z) ↦ φ(q^e z)` over ℚ(q).
pub fn zp_sigma(phi: &ZPoly<RatFunc>, e: i64) -> ZPoly<RatFunc> {
    phi.scale_var(&RatFunc::q().powi(e))
}

/// Extended Euclid on `(p, r)`; the gcd is monic.
pub fn zp_extended_gcd<F: Scalar>(p: &ZPoly<F>, r: &ZPoly<F>) -> BezoutData<F> {
    let (gcd, alpha, beta) = p.ext_gcd(r);
    BezoutData { alpha, beta, gcd }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_substitutes_q_power() {
        let p = parse_zpoly("z^2 + z").unwrap();
        assert_eq!(zp_sigma(&p, 1), parse_zpoly("q^2 z^2 + q z").unwrap());
        assert_eq!(zp_sigma(&p, 2), parse_zpoly("q^4 z^2 + q^2 z").unwrap());
        assert_eq!(zp_sigma(&ZPoly::one(), 5), ZPoly::one());
    }

    #[test]
    fn extended_gcd_examples() {
        let b = zp_extended_gcd(&parse_zpoly("z").unwrap(), &ZPoly::one());
        assert!(b.is_unit());
        assert!(b.alpha.is_zero());
        assert_eq!(b.beta, ZPoly::one());

        let p = parse_zpoly("-z^2 + 1").unwrap();
        let b = zp_extended_gcd(&p, &p.derivative());
        assert_eq!(b.alpha, ZPoly::one());
        assert_eq!(b.beta, parse_zpoly("-z/2").unwrap());

        let p = parse_zpoly("z^2").unwrap();
        let b = zp_extended_gcd(&p, &p.derivative());
        assert_eq!(b.gcd, parse_zpoly("z").unwrap());
    }
}
