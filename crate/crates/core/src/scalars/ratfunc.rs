//! The rational function field ℚ(q) in canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Rational, Scalar};
use super::poly::QPoly;
use crate::error::{Error, Result};

/// An element `num/den` of ℚ(q). The denominator is monic and coprime to
/// the numerator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

/// Reduce `n/d` to canonical form.
pub fn rf_normalize(n: QPoly, d: QPoly) -> Result<RatFunc> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(RatFunc::reduce(n, d))
}

/// Evaluate at `q = q0`.
pub fn rf_specialize(r: &RatFunc, q0: &Rational) -> Result<Rational> {
    let d = r.den.eval(q0);
    if d.is_zero() {
        return Err(Error::SpecializationPole(q0.to_string()));
    }
    Ok(r.num.eval(q0) / d)
}

impl RatFunc {
    fn reduce(n: QPoly, d: QPoly) -> RatFunc {
        if n.is_zero() {
            return RatFunc::zero();
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (n, d)
        } else {
            (n.divrem(&g).0, d.divrem(&g).0)
        };
        let lead = d.lead();
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    /// The indeterminate `q`.
    pub fn q() -> RatFunc {
        RatFunc { num: QPoly::var(), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> RatFunc {
        RatFunc { num: p, den: QPoly::one() }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    /// The constant value, when this element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    fn den_is_one(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl Scalar for RatFunc {
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_poly(QPoly::constant(r.clone()))
    }

    fn is_compound(&self) -> bool {
        if !self.den_is_one() {
            return true;
        }
        let mut terms = self.num.terms();
        match (terms.next(), terms.next()) {
            (None, _) => false,
            (Some((_, c)), None) => c.is_compound(),
            _ => true,
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: QPoly::zero(), den: QPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: QPoly::one(), den: QPoly::one() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den_is_one() && rhs.den_is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den);
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(n, &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den_is_one() && rhs.den_is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying keeps the gcds small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = (self.num.divrem(&g1).0, rhs.den.divrem(&g1).0);
        let (n2, d1) = (rhs.num.divrem(&g2).0, self.den.divrem(&g2).0);
        let n = &n1 * &n2;
        let d = &d1 * &d2;
        let lead = d.lead();
        if lead.is_one() {
            RatFunc { num: n, den: d }
        } else {
            let inv = Rational::one() / lead;
            RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
        }
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(q)");
        let inv = RatFunc::reduce(rhs.den, rhs.num);
        self * inv
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_with("q");
        if self.den_is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", self.den.display_with("q"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::field::{int, rat};

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let r = rf_normalize(qp(&[-1, 0, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(r, RatFunc::from_poly(qp(&[1, 1])));
    }

    #[test]
    fn normalize_inverse_q() {
        let r = rf_normalize(qp(&[1]), qp(&[0, 1])).unwrap();
        assert_eq!(r.numer(), &qp(&[1]));
        assert_eq!(r.denom(), &qp(&[0, 1]));
    }

    #[test]
    fn normalize_zero_fully() {
        let r = rf_normalize(qp(&[]), qp(&[2, 0, 0, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.denom(), &qp(&[1]));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(rf_normalize(qp(&[1]), qp(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn specialize_examples() {
        let r = rf_normalize(qp(&[1, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(rf_specialize(&r, &int(5)).unwrap(), rat(3, 2));
        let q2 = RatFunc::from_poly(qp(&[0, 0, 1]));
        assert_eq!(rf_specialize(&q2, &rat(2, 3)).unwrap(), rat(4, 9));
        let pole = rf_normalize(qp(&[1]), qp(&[-1, 1])).unwrap();
        assert!(matches!(rf_specialize(&pole, &int(1)), Err(Error::SpecializationPole(_))));
    }

    #[test]
    fn denominator_is_monic() {
        let r = rf_normalize(qp(&[3]), qp(&[0, 2])).unwrap();
        assert_eq!(r.denom(), &qp(&[0, 1]));
        assert_eq!(r.numer().coeff(0), rat(3, 2));
    }
}
