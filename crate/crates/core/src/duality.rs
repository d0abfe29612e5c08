//! Explicit Van den Bergh duality: the comparison maps `g : S → T[-2]`,
//! `f : T[-2] → S` and the homotopies `s`, `t` exhibiting them as mutually
//! quasi-inverse.

use crate::check::Report;
use crate::envelope::{dd, mat_apply_hom, mat_mul, EnvElem, EnvMatrix};
use crate::error::{Error, Result};
use crate::gwa::{skew_cy_analyze, GwaElem, GwaSpec};
use crate::resolution::{build_resolution, degree_rank, ResolutionData};
use crate::scalars::{BezoutData, Scalar, ZPoly};

/// The matrices `g⁰, g¹, g², f⁰, f¹, f²`, `s¹…s⁴` and `t², t¹, t⁰, t⁻¹`.
#[derive(Clone)]
pub struct DualityData<F> {
    res: ResolutionData<F>,
    bezout: BezoutData<F>,
    g: [EnvMatrix<F>; 3],
    f: [EnvMatrix<F>; 3],
    s: [EnvMatrix<F>; 4],
    /// `t², t¹, t⁰, t⁻¹` in that order.
    t: [EnvMatrix<F>; 4],
}

struct Builder<'a, F> {
    spec: &'a GwaSpec<F>,
    alpha: ZPoly<F>,
    beta: ZPoly<F>,
    q: F,
    qi: F,
}

impl<F: Scalar> Builder<'_, F> {
    fn t(&self, a: &GwaElem<F>, b: &GwaElem<F>) -> EnvElem<F> {
        EnvElem::tensor(a, b)
    }

    fn one(&self) -> GwaElem<F> {
        GwaElem::one()
    }

    fn poly(&self, phi: &ZPoly<F>) -> GwaElem<F> {
        GwaElem::poly(phi.clone())
    }

    fn sig(&self, phi: &ZPoly<F>) -> ZPoly<F> {
        self.spec.sigma(phi, 1)
    }

    /// `αy`.
    fn alpha_y(&self) -> GwaElem<F> {
        self.spec.mul(&self.poly(&self.alpha), &GwaElem::y())
    }

    /// `1 ⊗ φ`.
    fn r(&self, phi: &ZPoly<F>) -> EnvElem<F> {
        self.t(&self.one(), &self.poly(phi))
    }

    /// `Σ L(p₁) ⊗ R(p₂)` (or `R(p₂′)` with `deriv`) over `𝔡(p)`.
    fn sweedler(
        &self,
        left: impl Fn(&ZPoly<F>) -> ZPoly<F>,
        right: impl Fn(&ZPoly<F>) -> ZPoly<F>,
        deriv: bool,
    ) -> EnvElem<F> {
        let mut out = EnvElem::zero();
        for (a, b, c) in dd(self.spec.p()).terms() {
            let p1 = ZPoly::monomial(F::one(), a.i as usize);
            let mut p2 = ZPoly::monomial(F::one(), b.i as usize);
            if deriv {
                p2 = p2.derivative();
            }
            out = out.add(&self.t(&self.poly(&left(&p1)), &self.poly(&right(&p2))).scale(c));
        }
        out
    }

    fn id(phi: &ZPoly<F>) -> ZPoly<F> {
        phi.clone()
    }

    /// `p₁ ⊗ βp₂′`.
    fn p1_bp2d(&self) -> EnvElem<F> {
        self.sweedler(Self::id, |p| &self.beta * p, true)
    }

    /// `p̃₁ ⊗ βp₂′`.
    fn p1t_bp2d(&self) -> EnvElem<F> {
        self.sweedler(|p| self.sig(p), |p| &self.beta * p, true)
    }

    /// `p₁ ⊗ (βp₂′)~`.
    fn p1_bp2dt(&self) -> EnvElem<F> {
        self.sweedler(Self::id, |p| self.sig(&(&self.beta * p)), true)
    }

    /// `p̃₁ ⊗ (βp₂′)~`.
    fn p1t_bp2dt(&self) -> EnvElem<F> {
        self.sweedler(|p| self.sig(p), |p| self.sig(&(&self.beta * p)), true)
    }

    fn g(&self) -> [EnvMatrix<F>; 3] {
        let (q, qi) = (&self.q, &self.qi);
        let b = self.r(&self.beta);
        let bt = self.r(&self.sig(&self.beta));
        let ay = self.t(&self.one(), &self.alpha_y());
        let z = EnvElem::zero;
        let g0 = EnvMatrix::from_rows(vec![vec![b.clone()], vec![bt.scale(qi).neg()], vec![ay.scale(qi)], vec![z()]]);
        let g1 = EnvMatrix::from_rows(vec![
            vec![z(), bt.scale(qi).neg(), ay.scale(qi).neg()],
            vec![b.clone(), z(), z()],
            vec![ay.clone(), z(), self.p1t_bp2dt().scale(q).sub(&self.p1_bp2d())],
        ]);
        let g2 = EnvMatrix::from_rows(vec![vec![b.neg(), bt.scale(qi), ay.scale(qi).neg(), z()]]);
        [g0, g1, g2]
    }

    fn f(&self) -> [EnvMatrix<F>; 3] {
        let q = &self.q;
        let (o, x, y) = (self.one(), GwaElem::x(), GwaElem::y());
        let z = EnvElem::zero;
        let sig = |p: &ZPoly<F>| self.sig(p);
        let pp = self.sweedler(Self::id, Self::id, false);
        let ptp = self.sweedler(sig, Self::id, false);
        let ppt = self.sweedler(Self::id, sig, false);
        let ptpt = self.sweedler(sig, sig, false);
        let f0 = EnvMatrix::from_rows(vec![vec![pp, z(), self.t(&o, &x).scale(q), self.t(&y, &o).neg()]]);
        let f1 = EnvMatrix::from_rows(vec![
            vec![z(), ptp, self.t(&o, &x)],
            vec![ppt.scale(q).neg(), z(), self.t(&y, &o).neg()],
            vec![self.t(&o, &x).scale(q).neg(), self.t(&y, &o), z()],
        ]);
        let f2 = EnvMatrix::from_rows(vec![
            vec![z()],
            vec![ptpt.scale(q)],
            vec![self.t(&o, &x).scale(q).neg()],
            vec![self.t(&y, &o).scale(q)],
        ]);
        [f0, f1, f2]
    }

    fn s(&self) -> [EnvMatrix<F>; 4] {
        let z = EnvElem::zero;
        let b = self.r(&self.beta);
        let bt = self.r(&self.sig(&self.beta));
        let ay = self.t(&self.one(), &self.alpha_y());
        let s1 = EnvMatrix::from_rows(vec![vec![z(), z(), self.p1_bp2d()]]);
        let s2 = EnvMatrix::from_rows(vec![
            vec![z(), z(), self.p1t_bp2d(), z()],
            vec![ay.neg(), z(), z(), self.p1_bp2dt()],
            vec![b.clone(), z(), z(), z()],
        ]);
        let s3 = EnvMatrix::from_rows(vec![
            vec![z(), z(), self.p1_bp2d(), z()],
            vec![ay.clone(), z(), z(), self.p1t_bp2dt()],
            vec![b.clone(), z(), z(), z()],
            vec![z(), bt.clone(), ay.clone(), z()],
        ]);
        let s4 = EnvMatrix::from_rows(vec![
            vec![z(), z(), self.p1t_bp2d(), z()],
            vec![ay.neg(), z(), z(), self.p1_bp2dt()],
            vec![b, z(), z(), z()],
            vec![z(), bt, ay.neg(), z()],
        ]);
        [s1, s2, s3, s4]
    }

    fn t_maps(&self) -> [EnvMatrix<F>; 4] {
        let (q, qi) = (&self.q, &self.qi);
        let z = EnvElem::zero;
        let b = self.r(&self.beta);
        let bt = self.r(&self.sig(&self.beta));
        let ay = self.t(&self.one(), &self.alpha_y());
        let t2 = EnvMatrix::from_rows(vec![vec![z()], vec![z()], vec![self.p1t_bp2dt().scale(q).neg()]]);
        let t1 = EnvMatrix::from_rows(vec![
            vec![z(), z(), z()],
            vec![z(), ay.scale(qi).neg(), bt.scale(qi)],
            vec![self.p1_bp2dt().neg(), z(), z()],
            vec![z(), self.p1t_bp2d().neg(), z()],
        ]);
        let t0 = EnvMatrix::from_rows(vec![
            vec![ay.scale(qi).neg(), z(), bt.clone(), z()],
            vec![z(), z(), z(), b.clone()],
            vec![self.p1_bp2d().neg(), z(), z(), z()],
            vec![z(), self.p1t_bp2dt().neg(), z(), ay.scale(qi)],
        ]);
        let tm1 = EnvMatrix::from_rows(vec![
            vec![z(), z(), b, z()],
            vec![z(), ay.scale(qi).neg(), z(), bt],
            vec![self.p1_bp2dt().neg(), z(), ay.scale(qi), z()],
            vec![z(), self.p1t_bp2d().neg(), z(), z()],
        ]);
        [t2, t1, t0, tm1]
    }
}

/// Build the duality data from the Bézout pair of `p` and `p′`.
pub fn build_duality<F: Scalar>(spec: &GwaSpec<F>) -> Result<DualityData<F>> {
    let cy = skew_cy_analyze(spec);
    cy.require_squarefree(spec.p())?;
    build_duality_with(spec, cy.bezout)
}

/// Build the duality data from a given pair with `αp + βp′ = 1`.
pub fn build_duality_with<F: Scalar>(spec: &GwaSpec<F>, bezout: BezoutData<F>) -> Result<DualityData<F>> {
    let lhs = &(&bezout.alpha * spec.p()) + &(&bezout.beta * &spec.p().derivative());
    if lhs != ZPoly::one() {
        return Err(Error::NotSkewCalabiYau(spec.p().to_string()));
    }
    let b = Builder {
        spec,
        alpha: bezout.alpha.clone(),
        beta: bezout.beta.clone(),
        q: spec.big_q().clone(),
        qi: spec.qe_pow(-1),
    };
    Ok(DualityData {
        res: build_resolution(spec),
        g: b.g(),
        f: b.f(),
        s: b.s(),
        t: b.t_maps(),
        bezout,
    })
}

impl<F: Scalar> DualityData<F> {
    pub fn spec(&self) -> &GwaSpec<F> {
        self.res.spec()
    }

    pub fn resolution(&self) -> &ResolutionData<F> {
        &self.res
    }

    pub fn bezout(&self) -> &BezoutData<F> {
        &self.bezout
    }

    /// `g^k : S^k → T_{2-k}` for `k ≤ 2`.
    pub fn g(&self, k: usize) -> &EnvMatrix<F> {
        &self.g[k]
    }

    /// `f^k : T_{2-k} → S^k` for `k ≤ 2`.
    pub fn f(&self, k: usize) -> &EnvMatrix<F> {
        &self.f[k]
    }

    /// `s^k : S^k → S^{k-1}`, `k ≥ 1`, with `s^k = s^{k-2}` for `k ≥ 5`.
    pub fn s(&self, k: usize) -> &EnvMatrix<F> {
        assert!(k >= 1);
        let k = if k <= 4 { k } else { 3 + (k - 3) % 2 };
        &self.s[k - 1]
    }

    /// `t^k` for `k ≤ 2` (zero above), with `t^k = t^{k+2}` for `k ≤ -2`.
    pub fn t(&self, k: i64) -> Option<&EnvMatrix<F>> {
        if k >= 3 {
            return None;
        }
        let k = if k >= -1 { k } else { -k.rem_euclid(2) };
        Some(&self.t[(2 - k) as usize])
    }

    /// Printed `∂^{k}_{[-2]} = ∂^{k-2}` on `T[-2]`, for `k ≤ 1`.
    pub fn dt(&self, k: i64) -> &EnvMatrix<F> {
        assert!(k <= 1);
        self.res.partial((2 - k) as usize)
    }

    /// Replace the Bézout `β` used in the matrices, for negative controls.
    pub fn with_beta(&self, beta: ZPoly<F>) -> Self {
        let spec = self.spec();
        let b = Builder { spec, alpha: self.bezout.alpha.clone(), beta, q: spec.big_q().clone(), qi: spec.qe_pow(-1) };
        DualityData { g: b.g(), f: b.f(), s: b.s(), t: b.t_maps(), ..self.clone() }
    }

    /// `g^k` applied to an `S^k(A)` cochain, giving a `T_{2-k}(A)` chain.
    pub fn transfer_g(&self, k: usize, c: &[GwaElem<F>]) -> Result<Vec<GwaElem<F>>> {
        if k > 2 {
            return Ok(Vec::new());
        }
        mat_apply_hom(self.spec(), self.g(k), c)
    }

    /// `f^k` applied to a `T_{2-k}(A)` chain.
    pub fn transfer_f(&self, k: usize, c: &[GwaElem<F>]) -> Result<Vec<GwaElem<F>>> {
        if k > 2 {
            return Ok(Vec::new());
        }
        mat_apply_hom(self.spec(), self.f(k), c)
    }
}

fn record<F: Scalar>(rep: &mut Report, name: &str, lhs: &EnvMatrix<F>, rhs: &EnvMatrix<F>) -> Result<()> {
    let bad = lhs.sub(rhs)?.nonzero_entries();
    let detail = bad.iter().map(|(i, j)| format!("({}, {})", i + 1, j + 1)).collect::<Vec<_>>().join(", ");
    rep.push(name, bad.is_empty(), detail);
    Ok(())
}

/// The six commuting squares of `g` and `f` over `A^e`.
pub fn verify_squares<F: Scalar>(dd: &DualityData<F>) -> Result<Report> {
    let spec = dd.spec();
    let res = dd.resolution();
    let mm = |a: &EnvMatrix<F>, b: &EnvMatrix<F>| mat_mul(spec, a, b);
    let mut rep = Report::new();
    record(&mut rep, "g1·d1 = ∂^-2·g0", &mm(dd.g(1), res.d(1))?, &mm(res.partial(2), dd.g(0))?)?;
    record(&mut rep, "g2·d2 = ∂^-1·g1", &mm(dd.g(2), res.d(2))?, &mm(res.partial(1), dd.g(1))?)?;
    record(&mut rep, "f0·∂^-3 = 0", &mm(dd.f(0), res.partial(3))?, &EnvMatrix::zeros(1, 4))?;
    record(&mut rep, "f1·∂^-2 = d1·f0", &mm(dd.f(1), res.partial(2))?, &mm(res.d(1), dd.f(0))?)?;
    record(&mut rep, "f2·∂^-1 = d2·f1", &mm(dd.f(2), res.partial(1))?, &mm(res.d(2), dd.f(1))?)?;
    record(&mut rep, "d3·f2 = 0", &mm(res.d(3), dd.f(2))?, &EnvMatrix::zeros(4, 1))?;
    Ok(rep)
}

/// `fg ≃ 1` via `s` (degrees 0–6) and `gf ≃ 1` via `t` (degrees 2 down to −4).
pub fn verify_homotopies<F: Scalar>(dd: &DualityData<F>) -> Result<Report> {
    let spec = dd.spec();
    let res = dd.resolution();
    let mm = |a: &EnvMatrix<F>, b: &EnvMatrix<F>| mat_mul(spec, a, b);
    let mut rep = Report::new();

    let b = Builder {
        spec,
        alpha: dd.bezout.alpha.clone(),
        beta: dd.bezout.beta.clone(),
        q: spec.big_q().clone(),
        qi: spec.qe_pow(-1),
    };
    let beta = dd.bezout.beta.clone();
    let alpha_p = &dd.bezout.alpha * spec.p();
    let fg0 = b.sweedler(Builder::<F>::id, |p| &beta * p, false).add(&b.r(&alpha_p));
    record(&mut rep, "f0·g0 = p1⊗βp2 + 1⊗αp", &mm(dd.f(0), dd.g(0))?, &EnvMatrix::from_rows(vec![vec![fg0]]))?;
    let gf2 = b
        .sweedler(|p| b.sig(p), |p| b.sig(&(p * &beta)), false)
        .add(&b.r(&b.sig(&alpha_p)));
    record(&mut rep, "g2·f2 = p̃1⊗(p2β)~ + 1⊗(αp)~", &mm(dd.g(2), dd.f(2))?, &EnvMatrix::from_rows(vec![vec![gf2]]))?;

    for k in 0..=6usize {
        let r = degree_rank(k);
        let lhs = if k <= 2 { mm(dd.f(k), dd.g(k))? } else { EnvMatrix::zeros(r, r) };
        let mut rhs = EnvMatrix::identity(r).add(&mm(dd.s(k + 1), res.d(k + 1))?)?;
        if k >= 1 {
            rhs = rhs.add(&mm(res.d(k), dd.s(k))?)?;
        }
        record(&mut rep, &format!("S degree {k}: f·g = 1 + s·d + d·s"), &lhs, &rhs)?;
    }

    for k in (-4..=2i64).rev() {
        let r = degree_rank((2 - k) as usize);
        let lhs = if k >= 0 { mm(dd.g(k as usize), dd.f(k as usize))? } else { EnvMatrix::zeros(r, r) };
        let mut rhs = EnvMatrix::identity(r);
        if let Some(t_next) = dd.t(k + 1) {
            rhs = rhs.add(&mm(t_next, dd.dt(k))?)?;
        }
        if let Some(tk) = dd.t(k) {
            rhs = rhs.add(&mm(dd.dt(k - 1), tk)?)?;
        }
        record(&mut rep, &format!("T degree {k}: g·f = 1 + t·∂ + ∂·t"), &lhs, &rhs)?;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_zpoly, RatFunc};

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    #[test]
    fn squares_and_homotopies() {
        for (p, e) in [("z", 1), ("z^2 - 1", 1), ("-z^2 + 1", 2), ("z^3 - z + 2", 1)] {
            let d = build_duality(&spec(p, e)).unwrap();
            let sq = verify_squares(&d).unwrap();
            assert!(sq.passed(), "{p}: {:?}", sq.failures().collect::<Vec<_>>());
            let h = verify_homotopies(&d).unwrap();
            assert!(h.passed(), "{p}: {:?}", h.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn g0_for_p_equal_z() {
        let s = spec("z", 1);
        let d = build_duality(&s).unwrap();
        assert_eq!(d.bezout().beta, ZPoly::one());
        assert!(d.bezout().alpha.is_zero());
        let img = d.transfer_g(0, &[GwaElem::one()]).unwrap();
        let qi = s.qe_pow(-1);
        assert_eq!(img, vec![GwaElem::one(), GwaElem::scalar(-qi), GwaElem::zero(), GwaElem::zero()]);
    }

    #[test]
    fn corrupted_beta_breaks_g1_square() {
        let s = spec("z^2 - 1", 1);
        let d = build_duality(&s).unwrap();
        let bad = d.with_beta(&d.bezout().beta + &ZPoly::one());
        let rep = verify_squares(&bad).unwrap();
        assert!(!rep.get("g1·d1 = ∂^-2·g0").unwrap().passed);
    }

    #[test]
    fn non_squarefree_is_refused() {
        assert!(matches!(build_duality(&spec("z^2", 1)), Err(Error::NotSkewCalabiYau(_))));
    }
}
