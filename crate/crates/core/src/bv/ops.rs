//! Derivations, cup products of 1-cocycles and the BV operator `Δ`
//! transported from `B` through the duality and the comparison.

use std::collections::HashMap;
use std::fmt;

use crate::bv::chain::{connes_b, hoch_boundary, mono, HochChain};
use crate::bv::eta::{build_eta, to_bar, ComparisonData};
use crate::duality::{build_duality, DualityData};
use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaSpec, Monomial};
use crate::homology::{boundary_solve, cohomology_basis, homology_coordinates, t_simple_cycles, BoundarySearch, CohomologyBasis};
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::{instantiate, Side, TruncationWindow};
use crate::scalars::{Scalar, ZPoly};

/// Windows tried, in order, when solving for classes.
pub const WINDOW_CAP: [usize; 5] = [4, 6, 8, 10, 12];

/// A derivation of `A`, given by its values on `x, y, z`.
#[derive(Clone)]
pub struct Derivation<F> {
    pub values: [GwaElem<F>; 3],
}

impl<F: Scalar> Derivation<F> {
    /// Leibniz rule along the word `y^k z^i x^j`.
    pub fn apply_monomial(&self, spec: &GwaSpec<F>, m: Monomial) -> GwaElem<F> {
        let mut out = GwaElem::zero();
        let letters = [(m.k, 1usize), (m.i, 2), (m.j, 0)];
        let mut before = [0u32; 3];
        for &(count, letter) in &letters {
            for _ in 0..count {
                let prefix = Monomial { k: before[1], i: before[2], j: before[0] };
                before[letter] += 1;
                let suffix = Monomial {
                    k: m.k - before[1],
                    i: m.i - before[2],
                    j: m.j - before[0],
                };
                out = out.add(&spec.mul3(&mono(prefix), &self.values[letter], &mono(suffix)));
            }
        }
        out
    }

    pub fn apply(&self, spec: &GwaSpec<F>, a: &GwaElem<F>) -> GwaElem<F> {
        let mut out = GwaElem::zero();
        for (m, c) in a.terms() {
            out = out.add(&self.apply_monomial(spec, m).scale(&c));
        }
        out
    }
}

/// Read an `S¹` cocycle `(δ(x), δ(y), δ(z))` as a derivation, checking
/// that all four defining relations are preserved.
pub fn cocycle_to_derivation<F: Scalar>(spec: &GwaSpec<F>, c: &[GwaElem<F>]) -> Result<Derivation<F>> {
    if c.len() != 3 {
        return Err(Error::DimensionMismatch(format!("a 1-cochain has 3 entries, got {}", c.len())));
    }
    let d = Derivation { values: [c[0].clone(), c[1].clone(), c[2].clone()] };
    let (x, y, z) = (GwaElem::x(), GwaElem::y(), GwaElem::z());
    let leib = |a: &GwaElem<F>, b: &GwaElem<F>| spec.mul(&d.apply(spec, a), b).add(&spec.mul(a, &d.apply(spec, b)));
    let q = spec.big_q().clone();
    let checks = [
        ("xz = σ(z)x", leib(&x, &z).sub(&leib(&z, &x).scale(&q))),
        ("yz = σ⁻¹(z)y", leib(&y, &z).sub(&leib(&z, &y).scale(&spec.qe_pow(-1)))),
        ("yx = p", leib(&y, &x).sub(&d.apply(spec, &GwaElem::poly(spec.p().clone())))),
        ("xy = σ(p)", leib(&x, &y).sub(&d.apply(spec, &GwaElem::poly(spec.p_tilde())))),
    ];
    let broken: Vec<&str> = checks.iter().filter(|(_, v)| !v.is_zero()).map(|(n, _)| *n).collect();
    if !broken.is_empty() {
        return Err(Error::RelationsNotPreserved(broken.join(", ")));
    }
    Ok(d)
}

/// `δ₁ ⌣ δ₂` evaluated on `η₂` of the four generators of `F₂`, with
/// `(δ₁ ⌣ δ₂)(a, b) = −δ₁(a)δ₂(b)`.
pub fn cup11<F: Scalar>(cd: &ComparisonData<F>, d1: &Derivation<F>, d2: &Derivation<F>) -> Vec<GwaElem<F>> {
    let spec = cd.spec();
    cd.eta(2)
        .iter()
        .map(|gen| {
            let mut acc = GwaElem::zero();
            for (a0, s, last, c) in gen.terms() {
                let inner = spec.mul(&d1.apply_monomial(spec, s[0]), &d2.apply_monomial(spec, s[1]));
                acc = acc.sub(&spec.mul3(&mono(*a0), &inner, &mono(*last)).scale(c));
            }
            acc
        })
        .collect()
}

/// `w_j` with `1[z^j] = j·z^{j−1}[z] + ∂w_j`.
pub fn z_power_correction<F: Scalar>(spec: &GwaSpec<F>, j: usize) -> HochChain<F> {
    let zp = |i: usize| GwaElem::poly(ZPoly::monomial(F::one(), i));
    let mut w = HochChain::zero();
    for i in 2..=j {
        let mut shifted = HochChain::zero();
        for (m, s, c) in w.terms() {
            let mz = spec.mul(&GwaElem::z(), &mono(*m));
            let slots: Vec<GwaElem<F>> = s.iter().map(|a| mono(*a)).collect();
            shifted = shifted.add(&HochChain::from_elems(&mz, &slots).scale(c));
        }
        w = shifted.sub(&HochChain::from_elems(&GwaElem::one(), &[zp(i - 1), GwaElem::z()]));
    }
    w
}

/// Everything the BV computation needs for one algebra.
#[derive(Clone)]
pub struct BvContext<F> {
    dd: DualityData<F>,
    cd: ComparisonData<F>,
    basis: CohomologyBasis<F>,
}

/// `Δ` of a basis class, with its certificate
/// `B(η g(a)) − Σ c_b η g(b) = ∂W`.
#[derive(Clone)]
pub struct DeltaValue<F> {
    pub label: String,
    /// Coefficients over the basis classes of one degree lower, in basis order.
    pub coords: Vec<(String, F)>,
    pub witness: HochChain<F>,
    pub certified: bool,
}

impl<F: Scalar> fmt::Debug for DeltaValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({}) = {:?} (certified: {})", self.label, self.coords, self.certified)
    }
}

pub fn bv_context<F: Scalar>(spec: &GwaSpec<F>) -> Result<BvContext<F>> {
    let dd = build_duality(spec)?;
    let cd = build_eta(spec);
    let basis = cohomology_basis(spec)?;
    Ok(BvContext { dd, cd, basis })
}

impl<F: Scalar> BvContext<F> {
    pub fn spec(&self) -> &GwaSpec<F> {
        self.dd.spec()
    }

    pub fn duality(&self) -> &DualityData<F> {
        &self.dd
    }

    pub fn comparison(&self) -> &ComparisonData<F> {
        &self.cd
    }

    pub fn basis(&self) -> &CohomologyBasis<F> {
        &self.basis
    }

    fn rep(&self, label: &str) -> Result<(usize, &[GwaElem<F>])> {
        let b = self.basis.get(label).ok_or_else(|| Error::InvalidConfig(format!("no basis class {label}")))?;
        Ok((b.degree, &b.rep))
    }

    /// The Hochschild cycle `η g^k(a)` of a basis class.
    pub fn hoch_image(&self, label: &str) -> Result<HochChain<F>> {
        let (k, rep) = self.rep(label)?;
        Ok(to_bar(&self.cd, 2 - k, &self.dd.transfer_g(k, rep)?))
    }

    /// The derivation of a degree-1 basis class.
    pub fn derivation(&self, label: &str) -> Result<Derivation<F>> {
        let (k, rep) = self.rep(label)?;
        if k != 1 {
            return Err(Error::InvalidConfig(format!("{label} has degree {k}, not 1")));
        }
        cocycle_to_derivation(self.spec(), rep)
    }

    fn coordinates(
        &self,
        side: Side,
        k: usize,
        v: &[GwaElem<F>],
        basis: &[Vec<GwaElem<F>>],
    ) -> Result<(Vec<F>, Vec<GwaElem<F>>)> {
        let cx = instantiate(self.dd.resolution(), side);
        for &zmax in &WINDOW_CAP {
            if let Some(found) = homology_coordinates(&cx, k, 0, v, basis, zmax)? {
                return Ok(found);
            }
        }
        Err(Error::Undetermined(*WINDOW_CAP.last().unwrap() as u32))
    }

    /// Coordinates of an `S^k` cocycle over the degree-`k` basis classes.
    pub fn s_coordinates(&self, k: usize, v: &[GwaElem<F>]) -> Result<(Vec<(String, F)>, Vec<GwaElem<F>>)> {
        let elems: Vec<_> = self.basis.degree(k).collect();
        let reps: Vec<Vec<GwaElem<F>>> = elems.iter().map(|b| b.rep.clone()).collect();
        let (c, xi) = self.coordinates(Side::S, k, v, &reps)?;
        Ok((elems.iter().map(|b| b.label.clone()).zip(c).collect(), xi))
    }

    /// `g` of the degree-`k` basis classes, as `T_{2−k}` cycles.
    fn g_basis(&self, k: usize) -> Result<Vec<(String, Vec<GwaElem<F>>)>> {
        self.basis.degree(k).map(|b| Ok((b.label.clone(), self.dd.transfer_g(k, &b.rep)?))).collect()
    }

    /// A `T_r` element `m` with `η(m) = chain`, searched in a window.
    pub fn lift_to_t(&self, r: usize, chain: &HochChain<F>, zmax: usize) -> Option<Vec<GwaElem<F>>> {
        let cx = instantiate(self.dd.resolution(), Side::T);
        let basis = cx.basis(r, TruncationWindow { weight: 0, zmax });
        let mut index: HashMap<(Monomial, Vec<Monomial>), usize> = HashMap::new();
        let mut key = |m: &Monomial, s: &[Monomial]| {
            let n = index.len();
            *index.entry((*m, s.to_vec())).or_insert(n)
        };
        let mut coords = |h: &HochChain<F>| -> SparseVec<F> { h.terms().map(|(m, s, c)| (key(m, s), c.clone())).collect() };
        let mut ech = Echelon::new(true);
        for (c, m) in &basis {
            ech.insert(coords(&to_bar(&self.cd, r, &cx.unit(r, *c, *m))));
        }
        let target = coords(chain);
        let combo = ech.solve(&target)?;
        let mut v = vec![GwaElem::zero(); cx.rank(r)];
        for (idx, a) in combo {
            let (c, m) = basis[idx];
            v[c] = v[c].add(&GwaElem::monomial(m, a));
        }
        (to_bar(&self.cd, r, &v) == *chain).then_some(v)
    }

    /// Reduce `B η τ` for a simple `T_r` cycle `τ`: coefficients over `g` of
    /// the degree-`(1 − r)` classes and a Hochschild witness.
    fn reduce_simple(&self, r: usize, tau: &[GwaElem<F>]) -> Result<(Vec<F>, HochChain<F>)> {
        let spec = self.spec();
        let k = 1 - r;
        let targets = self.g_basis(k)?;
        let tvecs: Vec<Vec<GwaElem<F>>> = targets.iter().map(|(_, v)| v.clone()).collect();
        let chain = connes_b(spec, &to_bar(&self.cd, r, tau))?;
        if chain.is_zero() {
            return Ok((vec![F::zero(); targets.len()], HochChain::zero()));
        }
        match r {
            0 => {
                // τ = z^j, B(z^j[]) = 1[z^j] = j·η((0,0,z^{j−1})) + ∂w_j.
                let j = tau[0].z_degree().expect("nonzero");
                let zj1 = GwaElem::poly(ZPoly::monomial(F::from_i64(j as i64), j - 1));
                let v = vec![GwaElem::zero(), GwaElem::zero(), zj1];
                let (c, xi) = self.coordinates(Side::T, 1, &v, &tvecs)?;
                Ok((c, z_power_correction(spec, j).add(&to_bar(&self.cd, 2, &xi))))
            }
            1 => {
                for &zmax in &WINDOW_CAP {
                    if let Some(m) = self.lift_to_t(2, &chain, zmax) {
                        let (c, xi) = self.coordinates(Side::T, 2, &m, &tvecs)?;
                        if xi.iter().all(GwaElem::is_zero) {
                            return Ok((c, HochChain::zero()));
                        }
                        break;
                    }
                }
                Err(Error::Undetermined(*WINDOW_CAP.last().unwrap() as u32))
            }
            _ => unreachable!("simple cycles only reduced in degrees 0 and 1"),
        }
    }

    /// `Δ` on a basis class, certified by an exact Hochschild boundary.
    pub fn delta_on_class(&self, label: &str) -> Result<DeltaValue<F>> {
        let spec = self.spec();
        let (k, rep) = self.rep(label)?;
        if k == 0 {
            return Ok(DeltaValue { label: label.into(), coords: Vec::new(), witness: HochChain::zero(), certified: true });
        }
        let r = 2 - k;
        let t = self.dd.transfer_g(k, rep)?;
        let simple = t_simple_cycles(&self.dd, r)?;
        let (c, xi) = self.coordinates(Side::T, r, &t, &simple)?;
        let targets = self.g_basis(k - 1)?;
        let mut coeffs = vec![F::zero(); targets.len()];
        let mut witness = connes_b(spec, &to_bar(&self.cd, r + 1, &xi))?.neg();
        for (cj, tau) in c.iter().zip(&simple) {
            if cj.is_zero() {
                continue;
            }
            let (lam, w) = self.reduce_simple(r, tau)?;
            for (acc, l) in coeffs.iter_mut().zip(lam) {
                *acc = acc.clone() + cj.clone() * l;
            }
            witness = witness.add(&w.scale(cj));
        }
        let mut lhs = connes_b(spec, &to_bar(&self.cd, r, &t))?;
        for ((_, g), c) in targets.iter().zip(&coeffs) {
            lhs = lhs.sub(&to_bar(&self.cd, r + 1, g).scale(c));
        }
        let certified = lhs == hoch_boundary(spec, &witness);
        let coords = targets.into_iter().map(|(l, _)| l).zip(coeffs).collect();
        Ok(DeltaValue { label: label.into(), coords, witness, certified })
    }

    /// A Hochschild chain `W` with `∂W = 1[z^j]`, built from a `T`-side
    /// boundary of `(0, 0, z^{j−1})`; `None` if that search fails.
    pub fn z_power_boundary(&self, j: usize) -> Result<Option<HochChain<F>>> {
        let spec = self.spec();
        let cx = instantiate(self.dd.resolution(), Side::T);
        let v = vec![GwaElem::zero(), GwaElem::zero(), GwaElem::poly(ZPoly::monomial(F::one(), j - 1))];
        let BoundarySearch::Found { witness, .. } = boundary_solve(&cx, 1, 0, &v, WINDOW_CAP[1])? else {
            return Ok(None);
        };
        let w = z_power_correction(spec, j).add(&to_bar(&self.cd, 2, &witness).scale(&F::from_i64(j as i64)));
        let target = HochChain::from_elems(&GwaElem::one(), &[GwaElem::poly(ZPoly::monomial(F::one(), j))]);
        Ok((hoch_boundary(spec, &w) == target).then_some(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_zpoly, rat, RatFunc, Rational};

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    fn spec_q(p: &str, e: i64) -> GwaSpec<Rational> {
        spec(p, e).specialize(&rat(7, 3)).unwrap()
    }

    #[test]
    fn derivation_eigenvalues() {
        let s = spec("z", 1);
        let ctx = bv_context(&s).unwrap();
        let d1 = ctx.derivation("s").unwrap();
        let d2 = ctx.derivation("t").unwrap();
        for (k, i, j) in [(0, 0, 3), (2, 1, 0), (0, 4, 1), (3, 2, 0), (0, 0, 0)] {
            let m = Monomial::new(k, i, j);
            let me = GwaElem::monomial(m, RatFunc::from_i64(1));
            assert_eq!(d1.apply_monomial(&s, m), me.scale(&RatFunc::from_i64(j as i64 - k as i64)));
            assert_eq!(d2.apply_monomial(&s, m), me.scale(&RatFunc::from_i64((k + 2 * i + j) as i64)));
        }
    }

    #[test]
    fn non_cocycle_rejected() {
        let s = spec("z^2 - 1", 1);
        let c = vec![GwaElem::zero(), GwaElem::zero(), GwaElem::one()];
        assert!(matches!(cocycle_to_derivation(&s, &c), Err(Error::RelationsNotPreserved(_))));
    }

    #[test]
    fn cup_s_t_vector() {
        let s = spec("z", 1);
        let ctx = bv_context(&s).unwrap();
        let v = cup11(ctx.comparison(), &ctx.derivation("s").unwrap(), &ctx.derivation("t").unwrap());
        let want: Vec<GwaElem<RatFunc>> = ["z", "-q z", "2 x z", "-2 q y z"].iter().map(|e| s.parse_elem(e).unwrap()).collect();
        assert_eq!(v, want);
        let (coords, _) = ctx.s_coordinates(2, &v).unwrap();
        let m2 = RatFunc::from_i64(-2);
        assert_eq!(coords, vec![("v".to_string(), m2), ("u".to_string(), RatFunc::from_i64(0))]);
    }

    #[test]
    fn z_power_corrections() {
        let s = spec("z^2 - 1", 1);
        for j in 1..=5 {
            let lhs = HochChain::from_elems(&GwaElem::one(), &[GwaElem::poly(ZPoly::monomial(RatFunc::from_i64(1), j))]);
            let zj1 = GwaElem::poly(ZPoly::monomial(RatFunc::from_i64(j as i64), j - 1));
            let rhs = HochChain::from_elems(&zj1, &[GwaElem::z()]).add(&hoch_boundary(&s, &z_power_correction(&s, j)));
            assert_eq!(lhs, rhs, "j = {j}");
        }
    }

    #[test]
    fn fundamental_class_formula() {
        let s = spec("z^2 - 1", 1);
        let ctx = bv_context(&s).unwrap();
        let (alpha, beta) = (&ctx.duality().bezout().alpha, &ctx.duality().bezout().beta);
        let qi = s.qe_pow(-1);
        let (x, y, z) = (GwaElem::x(), GwaElem::y(), GwaElem::z());
        let b = GwaElem::poly(beta.clone());
        let a_y = s.mul(&GwaElem::poly(alpha.clone()), &y);
        let mut want = HochChain::from_elems(&b, &[y.clone(), x.clone()])
            .sub(&HochChain::from_elems(&GwaElem::poly(s.sigma(beta, 1)), &[x.clone(), y.clone()]).scale(&qi))
            .sub(&HochChain::from_elems(&a_y, &[x.clone(), z.clone()]).scale(&qi))
            .add(&HochChain::from_elems(&a_y, &[z.clone(), x.clone()]));
        for (p1, p2, c) in crate::envelope::dd(s.p()).terms() {
            let bp2 = GwaElem::poly(beta.clone()).scale(c);
            let bp2 = s.mul(&bp2, &mono(*p2));
            want = want.sub(&HochChain::from_elems(&bp2, &[mono(*p1), z.clone()]));
            let bp2t = s.sigma_elem(&bp2, 1);
            let p1t = s.sigma_elem(&mono(*p1), 1);
            want = want.add(&HochChain::from_elems(&bp2t, &[p1t, s.sigma_elem(&z, 1)]).scale(&qi));
        }
        assert_eq!(ctx.hoch_image("1").unwrap(), want);
    }

    #[test]
    fn delta_p_not_z() {
        let s = spec_q("z^2 - 1", 1);
        let ctx = bv_context(&s).unwrap();
        let dv = ctx.delta_on_class("v").unwrap();
        assert!(dv.certified);
        assert_eq!(dv.coords, vec![("s".to_string(), rat(1, 1))]);
        for l in ["s", "u^1"] {
            let d = ctx.delta_on_class(l).unwrap();
            assert!(d.certified, "{l}");
            assert!(d.coords.iter().all(|(_, c)| *c == rat(0, 1)), "{l}: {:?}", d.coords);
        }
        for j in 2..=5 {
            assert!(ctx.z_power_boundary(j).unwrap().is_some(), "1[z^{j}]");
        }
    }

    #[test]
    fn delta_p_is_z() {
        let s = spec("z", 1);
        let ctx = bv_context(&s).unwrap();
        let dt = ctx.delta_on_class("t").unwrap();
        assert!(dt.certified);
        assert_eq!(dt.coords, vec![("1".to_string(), RatFunc::from_i64(-2))]);
        let dv = ctx.delta_on_class("v").unwrap();
        assert!(dv.certified);
        assert_eq!(dv.coords, vec![("s".to_string(), RatFunc::from_i64(1)), ("t".to_string(), RatFunc::from_i64(0))]);
    }
}
