//! Normalized Hochschild chains `m[a₁,…,a_n]` with coefficients in `A^ν`,
//! the boundary `∂` and the Connes operator `B`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::Report;
use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaSpec, Monomial};
use crate::scalars::{Rational, Scalar};

type Key = (Monomial, Vec<Monomial>);

/// Expand a tuple of elements multilinearly into monomial tuples. Slots
/// flagged `bar` drop their scalar component.
pub(crate) fn expand<F: Scalar>(elems: &[&GwaElem<F>], bar: impl Fn(usize) -> bool) -> Vec<(Vec<Monomial>, F)> {
    let mut acc: Vec<(Vec<Monomial>, F)> = vec![(Vec::with_capacity(elems.len()), F::one())];
    for (pos, e) in elems.iter().enumerate() {
        let terms: Vec<(Monomial, F)> = e.terms().filter(|(m, _)| !(bar(pos) && m.is_one())).collect();
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for (word, c) in &acc {
            for (m, d) in &terms {
                let mut w = word.clone();
                w.push(*m);
                next.push((w, c.clone() * d.clone()));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

pub(crate) fn mono<F: Scalar>(m: Monomial) -> GwaElem<F> {
    GwaElem::monomial(m, F::one())
}

/// A finite sum of normalized chains `m[a₁,…,a_n]` over basis monomials.
#[derive(Clone, PartialEq)]
pub struct HochChain<F> {
    terms: BTreeMap<Key, F>,
}

impl<F: Scalar> Default for HochChain<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> HochChain<F> {
    pub fn zero() -> Self {
        HochChain { terms: BTreeMap::new() }
    }

    /// `c·m[a₁,…,a_n]`; zero if some `a_i` is `1`.
    pub fn term(c: F, m: Monomial, slots: Vec<Monomial>) -> Self {
        let mut h = Self::zero();
        h.add_term(c, m, slots);
        h
    }

    /// `m[a₁,…,a_n]` for arbitrary elements, expanded and normalized.
    pub fn from_elems(m: &GwaElem<F>, slots: &[GwaElem<F>]) -> Self {
        let mut h = Self::zero();
        h.add_elems(&F::one(), m, slots);
        h
    }

    pub(crate) fn add_term(&mut self, c: F, m: Monomial, slots: Vec<Monomial>) {
        if c.is_zero() || slots.iter().any(Monomial::is_one) {
            return;
        }
        let key = (m, slots);
        let v = self.terms.remove(&key).map_or(c.clone(), |v| v + c);
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub(crate) fn add_elems(&mut self, c: &F, m: &GwaElem<F>, slots: &[GwaElem<F>]) {
        let mut all: Vec<&GwaElem<F>> = vec![m];
        all.extend(slots.iter());
        for (word, d) in expand(&all, |pos| pos > 0) {
            let mut it = word.into_iter();
            let head = it.next().expect("coefficient slot");
            self.add_term(c.clone() * d, head, it.collect());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[Monomial], &F)> {
        self.terms.iter().map(|((m, s), c)| (m, s.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor lengths occurring in the chain.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|(_, s)| s.len()).collect()
    }

    /// Total weights `w(m) + Σ w(a_i)` occurring in the chain.
    pub fn weights(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|(m, s)| total_weight(m, s)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, s), c) in &other.terms {
            out.add_term(c.clone(), *m, s.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HochChain { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> HochChain<G> {
        let mut out = HochChain::zero();
        for ((m, s), c) in &self.terms {
            out.add_term(f(c), *m, s.clone());
        }
        out
    }
}

fn total_weight(m: &Monomial, s: &[Monomial]) -> i64 {
    m.weight() + s.iter().map(Monomial::weight).sum::<i64>()
}

fn sign<F: Scalar>(odd: bool) -> F {
    if odd {
        -F::one()
    } else {
        F::one()
    }
}

/// `∂(m[a₁,…,a_n]) = m·ν(a₁)[a₂,…] + Σ (−1)^i m[…,a_i a_{i+1},…] + (−1)^n a_n·m[a₁,…,a_{n−1}]`.
pub fn hoch_boundary<F: Scalar>(spec: &GwaSpec<F>, c: &HochChain<F>) -> HochChain<F> {
    let mut out = HochChain::zero();
    for ((m, s), coef) in &c.terms {
        let n = s.len();
        if n == 0 {
            continue;
        }
        let me = mono::<F>(*m);
        let slots: Vec<GwaElem<F>> = s.iter().map(|a| mono(*a)).collect();
        let head = spec.mul(&me, &spec.nakayama(&slots[0]));
        out.add_elems(coef, &head, &slots[1..]);
        for i in 0..n - 1 {
            let mut merged = slots.clone();
            let ab = spec.mul(&slots[i], &slots[i + 1]);
            merged.splice(i..i + 2, [ab]);
            out.add_elems(&(coef.clone() * sign::<F>(i % 2 == 0)), &me, &merged);
        }
        let tail = spec.mul(&slots[n - 1], &me);
        out.add_elems(&(coef.clone() * sign::<F>(n % 2 == 1)), &tail, &slots[..n - 1]);
    }
    out
}

/// `B(a₀[a₁,…,a_n]) = Σ_{i=1}^{n+1} (−1)^{in} 1[a_i,…,a_n, a₀, ν(a₁),…,ν(a_{i−1})]`
/// on the weight-zero part.
pub fn connes_b<F: Scalar>(spec: &GwaSpec<F>, c: &HochChain<F>) -> Result<HochChain<F>> {
    let mut out = HochChain::zero();
    for ((m, s), coef) in &c.terms {
        let w = total_weight(m, s);
        if w != 0 {
            return Err(Error::NonZeroWeight(w));
        }
        let n = s.len();
        for i in 1..=n + 1 {
            let mut slots: Vec<Monomial> = s[i - 1..].to_vec();
            slots.push(*m);
            let mut factor = sign::<F>((i * n) % 2 == 1);
            for a in &s[..i - 1] {
                slots.push(*a);
                factor = factor * spec.qe_pow(a.weight());
            }
            out.add_term(coef.clone() * factor, Monomial::ONE, slots);
        }
    }
    Ok(out)
}

/// A nonzero weight-zero chain of tensor length `len` with slot z-degrees `≤ zmax`.
pub fn random_weight_zero_chain<F: Scalar>(rng: &mut impl Rng, len: usize, zmax: u32) -> HochChain<F> {
    let mut c = HochChain::zero();
    while c.is_zero() {
        for _ in 0..3 {
            let ws: Vec<i64> = (0..len).map(|_| rng.gen_range(-2..=2)).collect();
            let w0 = -ws.iter().sum::<i64>();
            let m = Monomial::from_weight(w0, rng.gen_range(0..=zmax));
            let slots = ws.iter().map(|&w| Monomial::from_weight(w, rng.gen_range(0..=zmax))).collect();
            let coef = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into());
            c.add_term(F::from_rational(&coef), m, slots);
        }
    }
    c
}

/// `∂² = 0`, `B² = 0` and `∂B + B∂ = 0` on `count` seeded weight-zero
/// chains of tensor length `≤ 2` and z-degree `≤ 5`.
pub fn verify_connes<F: Scalar>(spec: &GwaSpec<F>, seed: u64, count: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut dd, mut bb, mut anti) = (Vec::new(), Vec::new(), Vec::new());
    for trial in 0..count {
        let c = random_weight_zero_chain::<F>(&mut rng, trial % 3, 5);
        if !hoch_boundary(spec, &hoch_boundary(spec, &c)).is_zero() {
            dd.push(trial);
        }
        let b = connes_b(spec, &c)?;
        if !connes_b(spec, &b)?.is_zero() {
            bb.push(trial);
        }
        if !hoch_boundary(spec, &b).add(&connes_b(spec, &hoch_boundary(spec, &c))?).is_zero() {
            anti.push(trial);
        }
    }
    let mut rep = Report::new();
    let detail = |v: &Vec<usize>| if v.is_empty() { format!("{count} chains") } else { format!("failing chains {v:?}") };
    rep.push("∂∂ = 0", dd.is_empty(), detail(&dd));
    rep.push("B² = 0", bb.is_empty(), detail(&bb));
    rep.push("∂B + B∂ = 0", anti.is_empty(), detail(&anti));
    Ok(rep)
}

impl<F: Scalar> fmt::Display for HochChain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, s), c)| {
                let slots = s.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
                format!("({c})·{m}[{slots}]")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> fmt::Debug for HochChain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_zpoly, rat, RatFunc, Rational};
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    fn el(s: &GwaSpec<RatFunc>, src: &str) -> GwaElem<RatFunc> {
        s.parse_elem(src).unwrap()
    }

    #[test]
    fn normalization_drops_unit_slots() {
        let s = spec("z", 1);
        let c = HochChain::from_elems(&GwaElem::one(), &[el(&s, "z + 3")]);
        assert_eq!(c, HochChain::term(RatFunc::one(), Monomial::ONE, vec![Monomial::new(0, 1, 0)]));
        assert!(HochChain::<RatFunc>::from_elems(&GwaElem::z(), &[GwaElem::one(), GwaElem::z()]).is_zero());
    }

    #[test]
    fn boundary_examples() {
        let s = spec("z^2 - 1", 1);
        let x_nu = HochChain::from_elems(&GwaElem::one(), &[GwaElem::x()]);
        let want = HochChain::from_elems(&GwaElem::x().scale(&(s.big_q().clone() - RatFunc::one())), &[]);
        assert_eq!(hoch_boundary(&s, &x_nu), want);
        assert!(hoch_boundary(&s, &HochChain::from_elems(&GwaElem::one(), &[GwaElem::z()])).is_zero());

        // ∂(x[y] − Q⁻¹y[x]) = 2Q⁻¹σ(p) − 2p, zero exactly when p ∼ z.
        for (p, e) in [("z^2 - 1", 1), ("z", 1), ("3 z", 2)] {
            let s = spec(p, e);
            let qi = s.qe_pow(-1);
            let c = HochChain::from_elems(&GwaElem::x(), &[GwaElem::y()])
                .sub(&HochChain::from_elems(&GwaElem::y(), &[GwaElem::x()]).scale(&qi));
            let two = RatFunc::from_i64(2);
            let want = GwaElem::poly(s.p_tilde()).scale(&(two.clone() * qi)).sub(&GwaElem::poly(s.p().clone()).scale(&two));
            assert_eq!(hoch_boundary(&s, &c), HochChain::from_elems(&want, &[]));
            assert_eq!(hoch_boundary(&s, &c).is_zero(), p != "z^2 - 1");
        }
    }

    #[test]
    fn connes_examples() {
        let s = spec("z", 1);
        let b = connes_b(&s, &HochChain::from_elems(&GwaElem::z(), &[])).unwrap();
        assert_eq!(b, HochChain::from_elems(&GwaElem::one(), &[GwaElem::z()]));
        assert!(connes_b(&s, &HochChain::from_elems(&GwaElem::one(), &[])).unwrap().is_zero());
        assert!(connes_b(&s, &HochChain::from_elems(&GwaElem::one(), &[GwaElem::z()])).unwrap().is_zero());
        let qi = s.qe_pow(-1);
        let c = HochChain::from_elems(&GwaElem::x(), &[GwaElem::y()])
            .sub(&HochChain::from_elems(&GwaElem::y(), &[GwaElem::x()]).scale(&qi));
        let two = RatFunc::from_i64(2);
        let want = HochChain::from_elems(&GwaElem::one(), &[GwaElem::y(), GwaElem::x()])
            .scale(&-two.clone())
            .add(&HochChain::from_elems(&GwaElem::one(), &[GwaElem::x(), GwaElem::y()]).scale(&(two * qi)));
        assert_eq!(connes_b(&s, &c).unwrap(), want);
        assert_eq!(
            connes_b(&s, &HochChain::from_elems(&GwaElem::x(), &[])),
            Err(Error::NonZeroWeight(1))
        );
    }

    #[test]
    fn b_and_boundary_relations() {
        let s = spec("z^2 - 1", 1).specialize(&rat(5, 3)).unwrap();
        let rep = verify_connes(&s, 7, 20).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c: HochChain<Rational> = random_weight_zero_chain(&mut rng, 2, 5);
        assert_eq!(c.weights().into_iter().collect::<Vec<_>>(), vec![0]);
        assert!(c.degrees().iter().all(|&d| d == 2));
    }
}
