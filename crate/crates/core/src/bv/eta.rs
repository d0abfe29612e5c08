//! The comparison `η : F → Bar(A)` in degrees `0, 1, 2` and the induced
//! chain map `T → C(A, A^ν)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::bv::chain::{expand, mono, HochChain};
use crate::check::Report;
use crate::envelope::{dd, EnvElem};
use crate::error::Result;
use crate::gwa::{GwaElem, GwaSpec, Monomial};
use crate::resolution::{degree_rank, instantiate, ResolutionData, Side, TruncationWindow};
use crate::scalars::Scalar;

type Key = (Monomial, Vec<Monomial>, Monomial);

/// A sum of bar elements `a₀[a₁,…,a_k]a_{k+1}` with normalized interior slots.
#[derive(Clone, PartialEq)]
pub struct BarElem<F> {
    terms: BTreeMap<Key, F>,
}

impl<F: Scalar> BarElem<F> {
    pub fn zero() -> Self {
        BarElem { terms: BTreeMap::new() }
    }

    pub fn from_elems(a0: &GwaElem<F>, slots: &[GwaElem<F>], last: &GwaElem<F>) -> Self {
        let mut b = Self::zero();
        b.add_elems(&F::one(), a0, slots, last);
        b
    }

    fn add_term(&mut self, c: F, key: Key) {
        if c.is_zero() || key.1.iter().any(Monomial::is_one) {
            return;
        }
        let v = self.terms.remove(&key).map_or(c.clone(), |v| v + c);
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    fn add_elems(&mut self, c: &F, a0: &GwaElem<F>, slots: &[GwaElem<F>], last: &GwaElem<F>) {
        let mut all: Vec<&GwaElem<F>> = vec![a0];
        all.extend(slots.iter());
        all.push(last);
        let k = slots.len();
        for (mut word, d) in expand(&all, |pos| pos >= 1 && pos <= k) {
            let tail = word.pop().expect("right slot");
            let head = word.remove(0);
            self.add_term(c.clone() * d, (head, word, tail));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[Monomial], &Monomial, &F)> {
        self.terms.iter().map(|((a, s, b), c)| (a, s.as_slice(), b, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(v.clone() * c.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }
}

impl<F: Scalar> fmt::Display for BarElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, s, b), c)| {
                let slots = s.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
                format!("({c})·{a}[{slots}]{b}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> fmt::Debug for BarElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The bar differential `b′`.
pub fn b_prime<F: Scalar>(spec: &GwaSpec<F>, e: &BarElem<F>) -> BarElem<F> {
    let mut out = BarElem::zero();
    for ((a0, s, last), c) in &e.terms {
        let n = s.len();
        if n == 0 {
            continue;
        }
        let (a0, last) = (mono::<F>(*a0), mono::<F>(*last));
        let slots: Vec<GwaElem<F>> = s.iter().map(|m| mono(*m)).collect();
        out.add_elems(c, &spec.mul(&a0, &slots[0]), &slots[1..], &last);
        for i in 0..n - 1 {
            let mut merged = slots.clone();
            let ab = spec.mul(&slots[i], &slots[i + 1]);
            merged.splice(i..i + 2, [ab]);
            let sc = if i % 2 == 0 { -c.clone() } else { c.clone() };
            out.add_elems(&sc, &a0, &merged, &last);
        }
        let sc = if n % 2 == 1 { -c.clone() } else { c.clone() };
        out.add_elems(&sc, &a0, &slots[..n - 1], &spec.mul(&slots[n - 1], &last));
    }
    out
}

/// `(a ⊗ b)·(a₀[…]a′) = a·a₀[…]a′·b`.
pub fn env_act<F: Scalar>(spec: &GwaSpec<F>, u: &EnvElem<F>, e: &BarElem<F>) -> BarElem<F> {
    let mut out = BarElem::zero();
    for (a, b, cu) in u.terms() {
        let (a, b) = (mono::<F>(*a), mono::<F>(*b));
        for ((a0, s, last), c) in &e.terms {
            let slots: Vec<GwaElem<F>> = s.iter().map(|m| mono(*m)).collect();
            let left = spec.mul(&a, &mono(*a0));
            let right = spec.mul(&mono(*last), &b);
            out.add_elems(&(cu.clone() * c.clone()), &left, &slots, &right);
        }
    }
    out
}

/// Images of the free generators of `F₀, F₁, F₂` in the bar resolution.
#[derive(Clone)]
pub struct ComparisonData<F> {
    spec: GwaSpec<F>,
    eta: [Vec<BarElem<F>>; 3],
}

pub const GENERATOR_NAMES: [&[&str]; 3] = [&["1⊗1"], &["e_x", "e_y", "e_z"], &["e1", "e2", "e3", "e4"]];

pub fn build_eta<F: Scalar>(spec: &GwaSpec<F>) -> ComparisonData<F> {
    let one = GwaElem::<F>::one();
    let (x, y, z) = (GwaElem::x(), GwaElem::y(), GwaElem::z());
    let q = spec.big_q().clone();
    let z_t = spec.sigma_elem(&z, 1);
    let bar = |a: &GwaElem<F>, s: &[GwaElem<F>], b: &GwaElem<F>| BarElem::from_elems(a, s, b);

    let eta0 = vec![bar(&one, &[], &one)];
    let eta1 = vec![bar(&one, &[x.clone()], &one), bar(&one, &[y.clone()], &one), bar(&one, &[z.clone()], &one)];

    // Σ 1[p₁, z]p₂ and Σ 1[p̃₁, z̃]p̃₂ over the terms of dd(p).
    let mut pz = BarElem::zero();
    let mut pz_t = BarElem::zero();
    for (p1, p2, c) in dd(spec.p()).terms() {
        let (p1, p2) = (mono::<F>(*p1), mono::<F>(*p2));
        pz = pz.add(&bar(&one, &[p1.clone(), z.clone()], &p2).scale(c));
        let (p1t, p2t) = (spec.sigma_elem(&p1, 1), spec.sigma_elem(&p2, 1));
        pz_t = pz_t.add(&bar(&one, &[p1t, z_t.clone()], &p2t).scale(c));
    }
    let eta2 = vec![
        bar(&one, &[y.clone(), x.clone()], &one).sub(&pz),
        bar(&one, &[x.clone(), y.clone()], &one).sub(&pz_t),
        bar(&one, &[z.clone(), x.clone()], &one).scale(&q).sub(&bar(&one, &[x.clone(), z.clone()], &one)),
        bar(&one, &[z.clone(), y.clone()], &one).sub(&bar(&one, &[y, z], &one).scale(&q)),
    ];
    ComparisonData { spec: spec.clone(), eta: [eta0, eta1, eta2] }
}

impl<F: Scalar> ComparisonData<F> {
    pub fn spec(&self) -> &GwaSpec<F> {
        &self.spec
    }

    /// `η_k` on the free generators of `F_k`, `k ≤ 2`.
    pub fn eta(&self, k: usize) -> &[BarElem<F>] {
        &self.eta[k]
    }
}

/// `m ⊗ a₀[…]a′ ↦ (a′·m·ν(a₀))[…]` summed over the generators of `T_k`.
pub fn to_bar<F: Scalar>(cd: &ComparisonData<F>, k: usize, t: &[GwaElem<F>]) -> HochChain<F> {
    assert!(k <= 2, "comparison is only built up to degree 2");
    let spec = cd.spec();
    let mut out = HochChain::zero();
    for (m, gen) in t.iter().zip(cd.eta(k)) {
        if m.is_zero() {
            continue;
        }
        for ((a0, s, last), c) in &gen.terms {
            let coeff = spec.mul3(&mono(*last), m, &spec.nakayama(&mono(*a0)));
            let slots: Vec<GwaElem<F>> = s.iter().map(|a| mono(*a)).collect();
            out.add_elems(c, &coeff, &slots);
        }
    }
    out
}

/// Chain-map squares `b′ η_k(e) = η_{k−1}(d_k e)` for every generator, and
/// compatibility of `to_bar` with both differentials on a small window.
pub fn verify_eta<F: Scalar>(cd: &ComparisonData<F>, res: &ResolutionData<F>) -> Result<Report> {
    let spec = cd.spec();
    let mut rep = Report::new();
    for k in 1..=2 {
        let d = res.d(k);
        for c in 0..degree_rank(k) {
            let lhs = b_prime(spec, &cd.eta(k)[c]);
            let mut rhs = BarElem::zero();
            for r in 0..degree_rank(k - 1) {
                rhs = rhs.add(&env_act(spec, d.get(c, r), &cd.eta(k - 1)[r]));
            }
            let diff = lhs.sub(&rhs);
            let name = GENERATOR_NAMES[k][c];
            rep.push(format!("b′η{k}({name}) = η{}(d{k} {name})", k - 1), diff.is_zero(), diff.to_string());
        }
    }
    let cx = instantiate(res, Side::T);
    for k in 1..=2 {
        let mut bad = Vec::new();
        let win = TruncationWindow { weight: 0, zmax: 2 };
        for (c, m) in cx.basis(k, win) {
            let v = cx.unit(k, c, m);
            let lhs = crate::bv::hoch_boundary(spec, &to_bar(cd, k, &v));
            let rhs = to_bar(cd, k - 1, &cx.apply(k, &v)?);
            if lhs != rhs {
                bad.push(format!("({c}, {m})"));
            }
        }
        rep.push(format!("∂ ∘ η = η ∘ ∂ on T{k}"), bad.is_empty(), bad.join(", "));
    }
    Ok(rep)
}
