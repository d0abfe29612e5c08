//! Generalized Weyl algebras of quantum type over `k[z]`.
//!
//! `A = k⟨x, y, z⟩ / (xz = σ(z)x, yz = σ⁻¹(z)y, yx = p, xy = σ(p))` with
//! `σ(z) = q^e z`. Elements are kept in the normal-form basis
//! `y^k z^i x^j` (`kj = 0`), grouped by weight `j − k`: the weight-`w`
//! component is `φ(z)·x^w` for `w ≥ 0` and `y^{-w}·φ(z)` for `w < 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::parse::{parse_expr, Evaluator};
use crate::scalars::{rf_specialize, zp_extended_gcd, BezoutData, RatFunc, Rational, Scalar, ZPoly};

/// Basis monomial `y^k z^i x^j` with `k·j = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub k: u32,
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { k: 0, i: 0, j: 0 };

    pub fn new(k: u32, i: u32, j: u32) -> Monomial {
        assert!(k == 0 || j == 0, "y^k z^i x^j requires kj = 0");
        Monomial { k, i, j }
    }

    /// The basis monomial of weight `w` and z-degree `i`.
    pub fn from_weight(w: i64, i: u32) -> Monomial {
        if w >= 0 {
            Monomial { k: 0, i, j: w as u32 }
        } else {
            Monomial { k: (-w) as u32, i, j: 0 }
        }
    }

    pub fn weight(&self) -> i64 {
        self.j as i64 - self.k as i64
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (letter, pw) in [('y', self.k), ('z', self.i), ('x', self.j)] {
            match pw {
                0 => {}
                1 => parts.push(letter.to_string()),
                _ => parts.push(format!("{letter}^{pw}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An element of the algebra in normal form.
#[derive(Clone, PartialEq)]
pub struct GwaElem<F> {
    comps: BTreeMap<i64, ZPoly<F>>,
}

impl<F: Scalar> GwaElem<F> {
    pub fn zero() -> Self {
        GwaElem { comps: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(c: F) -> Self {
        Self::homogeneous(0, ZPoly::constant(c))
    }

    /// `φ x^w` (w ≥ 0) or `y^{-w} φ` (w < 0).
    pub fn homogeneous(w: i64, phi: ZPoly<F>) -> Self {
        let mut comps = BTreeMap::new();
        if !phi.is_zero() {
            comps.insert(w, phi);
        }
        GwaElem { comps }
    }

    pub fn poly(phi: ZPoly<F>) -> Self {
        Self::homogeneous(0, phi)
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        Self::homogeneous(m.weight(), ZPoly::monomial(c, m.i as usize))
    }

    pub fn x() -> Self {
        Self::monomial(Monomial::new(0, 0, 1), F::one())
    }

    pub fn y() -> Self {
        Self::monomial(Monomial::new(1, 0, 0), F::one())
    }

    pub fn z() -> Self {
        Self::monomial(Monomial::new(0, 1, 0), F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Weight components `w ↦ φ_w`.
    pub fn components(&self) -> impl Iterator<Item = (i64, &ZPoly<F>)> {
        self.comps.iter().map(|(w, p)| (*w, p))
    }

    pub fn component(&self, w: i64) -> ZPoly<F> {
        self.comps.get(&w).cloned().unwrap_or_else(ZPoly::zero)
    }

    /// Nonzero terms in the basis `y^k z^i x^j`.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, F)> + '_ {
        self.comps.iter().flat_map(|(&w, p)| {
            p.terms().map(move |(i, c)| (Monomial::from_weight(w, i as u32), c.clone()))
        })
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.comps
            .get(&m.weight())
            .map(|p| p.coeff(m.i as usize))
            .unwrap_or_else(F::zero)
    }

    /// The element is a scalar multiple of 1.
    pub fn as_scalar(&self) -> Option<F> {
        match self.comps.len() {
            0 => Some(F::zero()),
            1 => {
                let p = self.comps.get(&0)?;
                (p.degree() == Some(0)).then(|| p.coeff(0))
            }
            _ => None,
        }
    }

    /// Max z-degree over all terms (`None` for zero).
    pub fn z_degree(&self) -> Option<usize> {
        self.comps.values().filter_map(|p| p.degree()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut comps = self.comps.clone();
        for (w, p) in &other.comps {
            let s = match comps.get(w) {
                Some(a) => a + p,
                None => p.clone(),
            };
            if s.is_zero() {
                comps.remove(w);
            } else {
                comps.insert(*w, s);
            }
        }
        GwaElem { comps }
    }

    pub fn neg(&self) -> Self {
        GwaElem { comps: self.comps.iter().map(|(w, p)| (*w, -p)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GwaElem { comps: self.comps.iter().map(|(w, p)| (*w, p.scale(c))).collect() }
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> GwaElem<G> {
        let mut out = GwaElem::zero();
        for (w, p) in &self.comps {
            out = out.add(&GwaElem::homogeneous(*w, p.map(&f)));
        }
        out
    }
}

impl<F: Scalar> fmt::Display for GwaElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                if m.is_one() {
                    if c.is_compound() {
                        format!("({c})")
                    } else {
                        c.to_string()
                    }
                } else if c.is_one() {
                    m.to_string()
                } else if c.is_compound() {
                    format!("({c})*{m}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> fmt::Debug for GwaElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Defining data of a quantum GWA: `p(z)` and `σ(z) = q^e z`.
#[derive(Clone)]
pub struct GwaSpec<F> {
    p: ZPoly<F>,
    e: i64,
    q: F,
    qe: F,
    qe_inv: F,
    cache: Arc<RwLock<HashMap<(i64, i64), ZPoly<F>>>>,
}

impl<F: Scalar> fmt::Debug for GwaSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaSpec {{ p = {}, e = {}, q = {} }}", self.p, self.e, self.q)
    }
}

impl GwaSpec<RatFunc> {
    /// Spec over ℚ(q) with `q` the formal indeterminate.
    pub fn exact(p: ZPoly<RatFunc>, e: i64) -> Result<Self> {
        GwaSpec::new(p, e, RatFunc::q())
    }

    /// Evaluate all scalars at `q = q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<GwaSpec<Rational>> {
        let p = self.p.try_map(|c| rf_specialize(c, q0))?;
        if p.degree() != self.p.degree() {
            return Err(Error::SpecializationPole(q0.to_string()));
        }
        if q0.is_zero() {
            return Err(Error::SpecializationPole(q0.to_string()));
        }
        GwaSpec::new(p, self.e, q0.clone())
    }
}

impl<F: Scalar> GwaSpec<F> {
    pub fn new(p: ZPoly<F>, e: i64, q: F) -> Result<Self> {
        if p.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidSpec("deg p must be at least 1".into()));
        }
        if e < 1 {
            return Err(Error::InvalidSpec("exponent e must be positive".into()));
        }
        let qe = q.powi(e);
        let qe_inv = qe.inv().ok_or_else(|| Error::InvalidSpec("q must be nonzero".into()))?;
        Ok(GwaSpec { p, e, q, qe, qe_inv, cache: Arc::default() })
    }

    pub fn p(&self) -> &ZPoly<F> {
        &self.p
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `Q = q^e`, the scalar with `σ(z) = Qz`.
    pub fn big_q(&self) -> &F {
        &self.qe
    }

    /// `Q^k` for any integer `k`.
    pub fn qe_pow(&self, k: i64) -> F {
        if k >= 0 {
            self.qe.powi(k)
        } else {
            self.qe_inv.powi(-k)
        }
    }

    pub fn n(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    /// `a_i` in `p = Σ a_i z^{n-i}`.
    pub fn a(&self, i: usize) -> F {
        self.p.coeff(self.n() - i)
    }

    /// `σ^k(φ)`, i.e. `φ(Q^k z)`.
    pub fn sigma(&self, phi: &ZPoly<F>, k: i64) -> ZPoly<F> {
        if k == 0 {
            return phi.clone();
        }
        phi.scale_var(&self.qe_pow(k))
    }

    /// `σ^k` applied to each z-polynomial component, i.e. `z ↦ Q^k z`
    /// with `x, y` fixed. Only meaningful on `k[z]`.
    pub fn sigma_elem(&self, a: &GwaElem<F>, k: i64) -> GwaElem<F> {
        GwaElem { comps: a.comps.iter().map(|(w, p)| (*w, self.sigma(p, k))).collect() }
    }

    pub fn p_tilde(&self) -> ZPoly<F> {
        self.sigma(&self.p, 1)
    }

    /// `Π_{i=lo}^{hi} σ^i(p)` (empty product is 1).
    fn sigma_p_product(&self, lo: i64, hi: i64) -> ZPoly<F> {
        if lo > hi {
            return ZPoly::one();
        }
        if let Some(v) = self.cache.read().expect("cache lock").get(&(lo, hi)) {
            return v.clone();
        }
        let mut acc = ZPoly::one();
        for i in lo..=hi {
            acc = &acc * &self.sigma(&self.p, i);
        }
        self.cache.write().expect("cache lock").insert((lo, hi), acc.clone());
        acc
    }

    /// Product of two homogeneous components.
    fn mul_homogeneous(&self, w1: i64, phi: &ZPoly<F>, w2: i64, psi: &ZPoly<F>) -> (i64, ZPoly<F>) {
        match (w1 >= 0, w2 >= 0) {
            (true, true) => (w1 + w2, phi * &self.sigma(psi, w1)),
            (false, false) => (w1 + w2, &self.sigma(phi, -w2) * psi),
            (true, false) => {
                let (a, b) = (w1, -w2);
                if a >= b {
                    let r = self.sigma_p_product(a - b + 1, a);
                    (a - b, &(phi * &r) * &self.sigma(psi, a - b))
                } else {
                    let r = self.sigma_p_product(b - a + 1, b);
                    (a - b, &(&self.sigma(phi, b - a) * &r) * psi)
                }
            }
            (false, true) => {
                let (a, b) = (-w1, w2);
                let chi = phi * psi;
                if a >= b {
                    let r = self.sigma_p_product(-(b - 1), 0);
                    (b - a, &self.sigma(&chi, -b) * &r)
                } else {
                    let r = self.sigma_p_product(-(a - 1), 0);
                    (b - a, &self.sigma(&chi, -a) * &r)
                }
            }
        }
    }

    /// Product in normal form.
    pub fn mul(&self, a: &GwaElem<F>, b: &GwaElem<F>) -> GwaElem<F> {
        let mut comps: BTreeMap<i64, ZPoly<F>> = BTreeMap::new();
        for (w1, phi) in &a.comps {
            for (w2, psi) in &b.comps {
                let (w, r) = self.mul_homogeneous(*w1, phi, *w2, psi);
                let entry = comps.entry(w).or_insert_with(ZPoly::zero);
                *entry = &*entry + &r;
            }
        }
        comps.retain(|_, p| !p.is_zero());
        GwaElem { comps }
    }

    pub fn mul3(&self, a: &GwaElem<F>, b: &GwaElem<F>, c: &GwaElem<F>) -> GwaElem<F> {
        self.mul(&self.mul(a, b), c)
    }

    /// The Nakayama automorphism: scales weight `w` by `Q^w`.
    pub fn nakayama(&self, a: &GwaElem<F>) -> GwaElem<F> {
        GwaElem {
            comps: a.comps.iter().map(|(w, p)| (*w, p.scale(&self.qe_pow(*w)))).collect(),
        }
    }

    /// Parse an element, e.g. `"(q+1)*y^2 z + z x - 3"`.
    pub fn parse_elem(&self, src: &str) -> Result<GwaElem<F>> {
        ElemEval { spec: self }.eval(&parse_expr(src)?)
    }
}

/// Split an element into weight components.
pub fn gwa_weight<F: Scalar>(a: &GwaElem<F>) -> BTreeMap<i64, GwaElem<F>> {
    a.components().map(|(w, p)| (w, GwaElem::homogeneous(w, p.clone()))).collect()
}

struct ElemEval<'a, F> {
    spec: &'a GwaSpec<F>,
}

impl<F: Scalar> Evaluator for ElemEval<'_, F> {
    type Value = GwaElem<F>;

    fn int(&self, n: &BigInt) -> Result<Self::Value> {
        Ok(GwaElem::scalar(F::from_rational(&Rational::from_integer(n.clone()))))
    }

    fn var(&self, c: char) -> Result<Self::Value> {
        match c {
            'x' => Ok(GwaElem::x()),
            'y' => Ok(GwaElem::y()),
            'z' => Ok(GwaElem::z()),
            'q' => Ok(GwaElem::scalar(self.spec.q.clone())),
            _ => Err(Error::Parse(format!("unknown variable '{c}'"))),
        }
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        a.add(&b)
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        self.spec.mul(&a, &b)
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        a.neg()
    }

    fn one(&self) -> Self::Value {
        GwaElem::one()
    }

    fn inverse(&self, a: &Self::Value) -> Result<Self::Value> {
        let c = a
            .as_scalar()
            .ok_or_else(|| Error::Parse("division by a non-scalar element".into()))?;
        Ok(GwaElem::scalar(c.inv().ok_or(Error::DivisionByZero)?))
    }
}

/// Skew Calabi–Yau analysis of the defining polynomial.
#[derive(Clone, PartialEq)]
pub struct SkewCYData<F> {
    pub squarefree: bool,
    pub bezout: BezoutData<F>,
    pub n: usize,
    /// `min { j | j·a_j ≠ 0 }`; absent exactly when `p ∼ z`.
    pub ell: Option<usize>,
    pub p_sim_z: bool,
}

pub fn skew_cy_analyze<F: Scalar>(spec: &GwaSpec<F>) -> SkewCYData<F> {
    let p = spec.p();
    let bezout = zp_extended_gcd(p, &p.derivative());
    let n = spec.n();
    let ell = (1..=n).find(|&j| !(spec.a(j) * F::from_i64(j as i64)).is_zero());
    let p_sim_z = n == 1 && spec.a(1).is_zero();
    SkewCYData { squarefree: bezout.is_unit(), bezout, n, ell, p_sim_z }
}

impl<F: Scalar> fmt::Debug for SkewCYData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewCYData")
            .field("squarefree", &self.squarefree)
            .field("bezout", &self.bezout)
            .field("n", &self.n)
            .field("ell", &self.ell)
            .field("p_sim_z", &self.p_sim_z)
            .finish()
    }
}

impl<F: Scalar> SkewCYData<F> {
    pub fn require_squarefree(&self, p: &ZPoly<F>) -> Result<()> {
        if self.squarefree {
            Ok(())
        } else {
            Err(Error::NotSkewCalabiYau(p.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_zpoly;

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    #[test]
    fn x_times_z() {
        let s = spec("z^2 - 1", 2);
        let xz = s.mul(&GwaElem::x(), &GwaElem::z());
        assert_eq!(xz, s.parse_elem("q^2 z x").unwrap());
    }

    #[test]
    fn y_times_x_is_p() {
        let s = spec("z^2 - 1", 1);
        assert_eq!(s.mul(&GwaElem::y(), &GwaElem::x()), GwaElem::poly(s.p().clone()));
        let xy = s.mul(&GwaElem::x(), &GwaElem::y());
        assert_eq!(xy, GwaElem::poly(s.p_tilde()));
    }

    #[test]
    fn x_times_y_squared() {
        let s = spec("z^2 - z + 3", 1);
        let y2 = s.mul(&GwaElem::y(), &GwaElem::y());
        let lhs = s.mul(&GwaElem::x(), &y2);
        let rhs = s.mul(&GwaElem::y(), &GwaElem::poly(s.sigma(s.p(), 2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_split() {
        let s = spec("z", 1);
        let a = s.parse_elem("x + y").unwrap();
        let parts = gwa_weight(&a);
        assert_eq!(parts[&1], GwaElem::x());
        assert_eq!(parts[&-1], GwaElem::y());
        let z3 = s.parse_elem("z^3").unwrap();
        assert_eq!(gwa_weight(&z3).keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn nakayama_on_generators() {
        let s = spec("z^2 - 1", 3);
        assert_eq!(s.nakayama(&GwaElem::x()), s.parse_elem("q^3 x").unwrap());
        let z5 = s.parse_elem("z^5").unwrap();
        assert_eq!(s.nakayama(&z5), z5);
        let zx2 = s.parse_elem("z x^2").unwrap();
        assert_eq!(s.nakayama(&zx2), s.parse_elem("q^6 z x^2").unwrap());
    }

    #[test]
    fn skew_cy_examples() {
        let d = skew_cy_analyze(&spec("-z^2 + 1", 2));
        assert!(d.squarefree);
        assert_eq!((d.n, d.ell, d.p_sim_z), (2, Some(2), false));
        let d = skew_cy_analyze(&spec("z", 1));
        assert!(d.squarefree && d.p_sim_z && d.n == 1 && d.ell.is_none());
        assert!(!skew_cy_analyze(&spec("z^2", 1)).squarefree);
    }

    #[test]
    fn printing_round_trips() {
        let s = spec("z^2 - 1", 1);
        let a = s.parse_elem("(q+1)/(q-1)*y^2 z^3 - 2 z x + 1/2 + q y").unwrap();
        let printed = a.to_string();
        assert_eq!(s.parse_elem(&printed).unwrap(), a);
    }
}
