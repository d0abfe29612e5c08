//! Cohomology of `S` and homology of `T` with coefficients in `A`:
//! explicit bases, exact cocycle checks, truncated dimension tables and
//! boundary solving.

use serde::{Deserialize, Serialize};

use crate::check::Report;
use crate::duality::DualityData;
use crate::error::{Error, Result};
use crate::gwa::{skew_cy_analyze, GwaElem, GwaSpec};
use crate::linalg::Echelon;
use crate::resolution::{instantiate, Complex, ResolutionData, Side, TruncationWindow};
use crate::scalars::{Scalar, ZPoly};

pub const DEFAULT_GRID: [usize; 4] = [6, 8, 10, 12];

/// A labelled cohomology class representative.
#[derive(Clone)]
pub struct BasisElem<F> {
    pub label: String,
    pub degree: usize,
    pub rep: Vec<GwaElem<F>>,
}

/// Representatives for a basis of `H^*(S)`.
#[derive(Clone)]
pub struct CohomologyBasis<F> {
    pub elems: Vec<BasisElem<F>>,
}

impl<F: Scalar> CohomologyBasis<F> {
    pub fn degree(&self, k: usize) -> impl Iterator<Item = &BasisElem<F>> {
        self.elems.iter().filter(move |b| b.degree == k)
    }

    pub fn get(&self, label: &str) -> Option<&BasisElem<F>> {
        self.elems.iter().find(|b| b.label == label)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=2).map(|k| self.degree(k).count()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elems.iter().map(|b| b.label.clone()).collect()
    }
}

fn poly<F: Scalar>(phi: ZPoly<F>) -> GwaElem<F> {
    GwaElem::poly(phi)
}

/// Indices `i` whose `𝔲^i = (z^i, z̃^i, 0, 0)ᵀ` survive the relations
/// `Σ a_i 𝔲^{n-i} = 0` and `Σ (n-i) a_i 𝔲^{n-i} = 0`, read off as the
/// non-pivot columns of the system with columns ordered `𝔲^n, …, 𝔲^0`.
pub fn u_independent_set<F: Scalar>(spec: &GwaSpec<F>) -> Vec<usize> {
    let n = spec.n();
    let mut rows: Vec<Vec<F>> = vec![
        (0..=n).map(|i| spec.a(i)).collect(),
        (0..=n).map(|i| spec.a(i) * F::from_i64((n - i) as i64)).collect(),
    ];
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let prow: Vec<F> = rows[r].iter().map(|v| v.clone() * inv.clone()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        rows[r] = prow;
        pivots.push(c);
        r += 1;
    }
    let mut keep: Vec<usize> = (0..=n).filter(|c| !pivots.contains(c)).map(|c| n - c).collect();
    keep.sort_unstable_by(|a, b| b.cmp(a));
    keep
}

/// The index rule `0 ≤ i < n, i ≠ n − ℓ` (or `{0}` when `p ∼ z`).
pub fn u_index_rule<F: Scalar>(spec: &GwaSpec<F>) -> Vec<usize> {
    let cy = skew_cy_analyze(spec);
    match cy.ell {
        None => vec![0],
        Some(ell) => (0..cy.n).rev().filter(|&i| i != cy.n - ell).collect(),
    }
}

pub fn cohomology_basis<F: Scalar>(spec: &GwaSpec<F>) -> Result<CohomologyBasis<F>> {
    let cy = skew_cy_analyze(spec);
    cy.require_squarefree(spec.p())?;
    let (x, y, z) = (GwaElem::<F>::x(), GwaElem::<F>::y(), GwaElem::<F>::z());
    let xz = spec.mul(&x, &z);
    let zy = spec.mul(&z, &y);
    let mut elems = vec![
        BasisElem { label: "1".into(), degree: 0, rep: vec![GwaElem::one()] },
        BasisElem { label: "s".into(), degree: 1, rep: vec![x.clone(), y.neg(), GwaElem::zero()] },
    ];
    if cy.p_sim_z {
        elems.push(BasisElem { label: "t".into(), degree: 1, rep: vec![x, y, z.scale(&F::from_i64(2))] });
        elems.push(BasisElem {
            label: "v".into(),
            degree: 2,
            rep: vec![GwaElem::zero(), poly(spec.p_tilde()), xz.neg(), zy],
        });
        elems.push(BasisElem {
            label: "u".into(),
            degree: 2,
            rep: vec![GwaElem::one(), GwaElem::one(), GwaElem::zero(), GwaElem::zero()],
        });
    } else {
        let zpd = &ZPoly::var() * &spec.p().derivative();
        elems.push(BasisElem {
            label: "v".into(),
            degree: 2,
            rep: vec![GwaElem::zero(), poly(spec.sigma(&zpd, 1)), xz.neg(), zy],
        });
        for i in u_independent_set(spec) {
            let zi = ZPoly::monomial(F::one(), i);
            elems.push(BasisElem {
                label: format!("u^{i}"),
                degree: 2,
                rep: vec![poly(zi.clone()), poly(spec.sigma(&zi, 1)), GwaElem::zero(), GwaElem::zero()],
            });
        }
    }
    Ok(CohomologyBasis { elems })
}

/// `U ∈ S^k(A)` is a cocycle.
pub fn is_cocycle_s<F: Scalar>(res: &ResolutionData<F>, c: &[GwaElem<F>], k: usize) -> Result<bool> {
    instantiate(res, Side::S).is_cycle(k, c)
}

/// Coboundary witnesses behind the relations among the `𝔲^i`.
pub fn verify_coboundary_witnesses<F: Scalar>(res: &ResolutionData<F>) -> Result<Report> {
    let spec = res.spec();
    let cy = skew_cy_analyze(spec);
    cy.require_squarefree(spec.p())?;
    let cx = instantiate(res, Side::S);
    let mut rep = Report::new();
    let zero = GwaElem::zero;
    for j in 0..4usize {
        let zj = ZPoly::monomial(F::one(), j);
        let src = vec![zero(), spec.mul(&poly(zj.clone()), &GwaElem::y()), zero()];
        let zjp = &zj * spec.p();
        let want = vec![poly(zjp.clone()), poly(spec.sigma(&zjp, 1)), zero(), zero()];
        rep.push(format!("d1((0, z^{j} y, 0)) = (z^{j}p, (z^{j}p)~, 0, 0)"), cx.apply(1, &src)? == want, "");
    }
    let zpd = &ZPoly::var() * &spec.p().derivative();
    let want = vec![poly(zpd.clone()), poly(spec.sigma(&zpd, 1)), zero(), zero()];
    let got = cx.apply(1, &[zero(), zero(), GwaElem::z().neg()])?;
    rep.push("d1((0, 0, -z)) = (zp', (zp')~, 0, 0)", got == want, "");

    let keep = u_independent_set(spec);
    let expected_rank = if cy.p_sim_z { 1 } else { 2 };
    let rank = spec.n() + 1 - keep.len();
    rep.push("u-relation system rank", rank == expected_rank, format!("rank {rank}, kept {keep:?}"));
    let rule = u_index_rule(spec);
    rep.push(
        "u index set agrees with i != n - ell",
        keep == rule,
        format!("rank computation {keep:?}, index rule {rule:?}"),
    );
    Ok(rep)
}

/// Outcome of a boundary search.
#[derive(Clone)]
pub enum BoundarySearch<F> {
    Found { witness: Vec<GwaElem<F>>, zmax: usize },
    NotFound { zmax: usize },
}

impl<F> BoundarySearch<F> {
    pub fn is_found(&self) -> bool {
        matches!(self, BoundarySearch::Found { .. })
    }
}

/// Solve `d ξ = v` for a cycle `v` of degree `k` and weight `w`,
/// widening the window once by `n` before giving up.
pub fn boundary_solve<F: Scalar>(
    cx: &Complex<'_, F>,
    k: usize,
    w: i64,
    v: &[GwaElem<F>],
    zmax: usize,
) -> Result<BoundarySearch<F>> {
    if !cx.is_cycle(k, v)? {
        return Err(Error::NotACycle);
    }
    let n = cx.spec().n();
    for zm in [zmax, zmax + n] {
        if let Some(witness) = cx.solve_boundary(k, w, v, zm)? {
            return Ok(BoundarySearch::Found { witness, zmax: zm });
        }
    }
    Ok(BoundarySearch::NotFound { zmax: zmax + n })
}

/// Write a cycle `v` as `Σ c_j·basis_j + d ξ` with `ξ` in the window.
/// Returns `(c, ξ)`; the identity is checked exactly.
pub fn homology_coordinates<F: Scalar>(
    cx: &Complex<'_, F>,
    k: usize,
    w: i64,
    v: &[GwaElem<F>],
    basis: &[Vec<GwaElem<F>>],
    zmax: usize,
) -> Result<Option<(Vec<F>, Vec<GwaElem<F>>)>> {
    let mut ech = Echelon::new(true);
    for b in basis {
        ech.insert(cx.coords(k, w, b));
    }
    let (win_basis, images) = match cx.source(k) {
        Some(s) => {
            let win = TruncationWindow { weight: w, zmax };
            (cx.basis(s, win), cx.truncate(s, win)?)
        }
        None => (Vec::new(), Vec::new()),
    };
    for img in images {
        ech.insert(img);
    }
    let Some(combo) = ech.solve(&cx.coords(k, w, v)) else {
        return Ok(None);
    };
    let nb = basis.len();
    let mut coeffs = vec![F::zero(); nb];
    let s = cx.source(k).unwrap_or(0);
    let mut xi = vec![GwaElem::zero(); if cx.source(k).is_some() { cx.rank(s) } else { 0 }];
    for (idx, a) in combo {
        if idx < nb {
            coeffs[idx] = a;
        } else {
            let (c, m) = win_basis[idx - nb];
            xi[c] = xi[c].add(&GwaElem::monomial(m, a));
        }
    }
    let mut lhs: Vec<GwaElem<F>> = vec![GwaElem::zero(); cx.rank(k)];
    for (b, c) in basis.iter().zip(&coeffs) {
        for (l, bi) in lhs.iter_mut().zip(b) {
            *l = l.add(&bi.scale(c));
        }
    }
    if !xi.is_empty() {
        for (l, d) in lhs.iter_mut().zip(cx.apply(s, &xi)?) {
            *l = l.add(&d);
        }
    }
    assert!(lhs.as_slice() == v, "homology coordinates failed exact verification");
    Ok(Some((coeffs, xi)))
}

/// Dimension estimates of one `(weight, degree)` cell across a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub weight: i64,
    pub degree: usize,
    pub grid: Vec<usize>,
    pub estimates: Vec<usize>,
    /// The last three estimates agree.
    pub stabilized: bool,
}

impl DimRow {
    pub fn value(&self) -> Option<usize> {
        self.stabilized.then(|| *self.estimates.last().expect("nonempty grid"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub side: Side,
    pub rows: Vec<DimRow>,
}

impl DimTable {
    /// Stabilized dims at weight `w` in degree order (`None` if unstable).
    pub fn dims_at(&self, w: i64) -> Vec<Option<usize>> {
        self.rows.iter().filter(|r| r.weight == w).map(DimRow::value).collect()
    }
}

pub fn cohomology_dims<F: Scalar>(
    res: &ResolutionData<F>,
    side: Side,
    weights: &[i64],
    degrees: usize,
    grid: &[usize],
) -> Result<DimTable> {
    assert!(!grid.is_empty());
    let cx = instantiate(res, side);
    let mut rows = Vec::new();
    for &w in weights {
        for k in 0..degrees {
            let estimates = grid.iter().map(|&n| cx.homology_estimate(k, w, n)).collect::<Result<Vec<_>>>()?;
            let tail = &estimates[estimates.len().saturating_sub(3)..];
            let stabilized = tail.len() == 3.min(grid.len()) && tail.iter().all(|v| *v == tail[0]);
            rows.push(DimRow { weight: w, degree: k, grid: grid.to_vec(), estimates, stabilized });
        }
    }
    Ok(DimTable { side, rows })
}

/// Explicit `T`-cycles spanning `H_k(T)`: `z^j` in degree 0, `(0,0,1)`
/// (and `(−q⁻¹y, x, 0)` when `p ∼ z`) in degree 1, `g⁰(1)` in degree 2.
pub fn t_simple_cycles<F: Scalar>(dd: &DualityData<F>, k: usize) -> Result<Vec<Vec<GwaElem<F>>>> {
    let spec = dd.spec();
    let cy = skew_cy_analyze(spec);
    let zero = GwaElem::zero;
    Ok(match k {
        0 => {
            let count = if cy.p_sim_z { 2 } else { spec.n() };
            (0..count).map(|j| vec![z_power(j)]).collect()
        }
        1 => {
            let mut v = vec![vec![zero(), zero(), GwaElem::one()]];
            if cy.p_sim_z {
                v.push(vec![GwaElem::y().scale(&spec.qe_pow(-1)).neg(), GwaElem::x(), zero()]);
            }
            v
        }
        2 => vec![dd.transfer_g(0, &[GwaElem::one()])?],
        _ => Vec::new(),
    })
}

fn z_power<F: Scalar>(i: usize) -> GwaElem<F> {
    GwaElem::poly(ZPoly::monomial(F::one(), i))
}

/// Explicit witness `u` with `∂₂(u) = (0, 0, z^i)`, `i ≥ 1`.
pub fn z_power_witness<F: Scalar>(dd: &DualityData<F>, i: usize) -> Vec<GwaElem<F>> {
    let spec = dd.spec();
    let (alpha, beta) = (&dd.bezout().alpha, &dd.bezout().beta);
    let zi = ZPoly::monomial(F::one(), i);
    let c = (F::one() - spec.qe_pow(i as i64)).inv().expect("q generic");
    let bzi = beta * &zi;
    vec![
        poly(bzi.clone()).scale(&c).neg(),
        poly(spec.sigma(&bzi, 1)).scale(&(c.clone() * spec.qe_pow(-1))),
        GwaElem::zero(),
        spec.mul(&GwaElem::x(), &poly(alpha * &zi)).scale(&c),
    ]
}

/// Exact facts about `T` that the BV computation relies on.
pub fn verify_t_homology<F: Scalar>(dd: &DualityData<F>, grid: &[usize]) -> Result<Report> {
    let spec = dd.spec();
    let cy = skew_cy_analyze(spec);
    let res = dd.resolution();
    let cx = instantiate(res, Side::T);
    let mut rep = Report::new();
    for k in 0..=2 {
        for (j, c) in t_simple_cycles(dd, k)?.iter().enumerate() {
            rep.push(format!("T{k} basis cycle #{j} is a cycle"), cx.is_cycle(k, c)?, format!("{c:?}"));
        }
    }
    let basis = cohomology_basis(spec)?;
    let s_rep = &basis.get("s").expect("s").rep;
    let mut diff = dd.transfer_g(1, s_rep)?;
    diff[2] = diff[2].sub(&GwaElem::one());
    let beta_t = poly(spec.sigma(&dd.bezout().beta, 1)).scale(&spec.qe_pow(-1));
    let u = vec![GwaElem::zero(), beta_t, GwaElem::zero(), GwaElem::zero()];
    rep.push("g1(s) - (0,0,1) = ∂2((0, q^-1 β~, 0, 0))", cx.apply(2, &u)? == diff, "");
    for i in 1..=4 {
        let want = vec![GwaElem::zero(), GwaElem::zero(), z_power(i)];
        let got = cx.apply(2, &z_power_witness(dd, i))?;
        rep.push(format!("∂2(u_{i}) = (0, 0, z^{i})"), got == want, "");
    }
    if let Some(v) = basis.get("v") {
        let z = GwaElem::z();
        let got = dd.transfer_g(2, &v.rep)?;
        let want = if cy.p_sim_z { z.scale(&spec.a(0)) } else { z };
        rep.push("g2(v) = z", got == vec![want], format!("{got:?}"));
    }
    let table = cohomology_dims(res, Side::T, &[0], 3, grid)?;
    let got = table.dims_at(0);
    let want: Vec<Option<usize>> = (0..=2).map(|k| Some(t_simple_cycles(dd, k).map(|c| c.len()).unwrap_or(0))).collect();
    rep.push("T dims match basis cycle counts", got == want, format!("{got:?} vs {want:?}"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::build_duality;
    use crate::resolution::build_resolution;
    use crate::scalars::{parse_zpoly, RatFunc};

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    #[test]
    fn u_sets() {
        assert_eq!(u_independent_set(&spec("z^2 - 1", 1)), vec![1]);
        assert_eq!(u_independent_set(&spec("z", 1)), vec![0]);
        assert_eq!(u_independent_set(&spec("z^3 - z", 1)), vec![2, 0]);
        assert_eq!(u_independent_set(&spec("-z^2 - z + 1", 2)), vec![0]);
    }

    #[test]
    fn cocycle_examples() {
        let s = spec("z^2 - 1", 1);
        let res = build_resolution(&s);
        let basis = cohomology_basis(&s).unwrap();
        for b in &basis.elems {
            assert!(is_cocycle_s(&res, &b.rep, b.degree).unwrap(), "{}", b.label);
        }
        let z = GwaElem::z();
        let bad = vec![z.clone(), z, GwaElem::zero(), GwaElem::zero()];
        assert!(!is_cocycle_s(&res, &bad, 2).unwrap());
    }

    #[test]
    fn witnesses_and_t_facts() {
        let s = spec("z^2 - 1", 1).specialize(&crate::scalars::rat(5, 3)).unwrap();
        let d = build_duality(&s).unwrap();
        let rep = verify_coboundary_witnesses(d.resolution()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let rep = verify_t_homology(&d, &DEFAULT_GRID).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
