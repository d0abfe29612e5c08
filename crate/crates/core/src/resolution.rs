//! The period-two free resolution `F` of `A` over `A^e`, the complexes
//! `S = Hom(F, A)` and `T = A^ν ⊗ F`, and their finite truncations.

use serde::{Deserialize, Serialize};

use crate::check::Report;
use crate::envelope::{dd, mat_apply_hom, mat_mul, mu, EnvElem, EnvMatrix};
use crate::error::Result;
use crate::gwa::{GwaElem, GwaSpec, Monomial};
use crate::linalg::{rank, Echelon, SparseVec};
use crate::scalars::Scalar;

/// Rank of `F_k`.
pub fn degree_rank(k: usize) -> usize {
    match k {
        0 => 1,
        1 => 3,
        _ => 4,
    }
}

/// Weights attached to the free generators of `F_k`.
pub fn position_weights(k: usize) -> &'static [i64] {
    match k {
        0 => &[0],
        1 => &[1, -1, 0],
        k if k % 2 == 0 => &[0, 0, 1, -1],
        _ => &[1, -1, 0, 0],
    }
}

/// Named elements used to write the matrices down.
pub(crate) struct Letters<F> {
    pub one: GwaElem<F>,
    pub x: GwaElem<F>,
    pub y: GwaElem<F>,
    pub z: GwaElem<F>,
    /// `z̃ = σ(z)`.
    pub zt: GwaElem<F>,
    pub q: F,
    pub qi: F,
    /// `p₁ ⊗ p₂ = 𝔡(p)`.
    pub pp: EnvElem<F>,
    /// `p̃₁ ⊗ p₂`.
    pub ptp: EnvElem<F>,
    /// `p₁ ⊗ p̃₂`.
    pub ppt: EnvElem<F>,
    /// `p̃₁ ⊗ p̃₂`.
    pub ptpt: EnvElem<F>,
}

impl<F: Scalar> Letters<F> {
    pub fn new(spec: &GwaSpec<F>) -> Self {
        let pp = dd(spec.p());
        let sig = |a: &GwaElem<F>| spec.sigma_elem(a, 1);
        let id = |a: &GwaElem<F>| a.clone();
        Letters {
            one: GwaElem::one(),
            x: GwaElem::x(),
            y: GwaElem::y(),
            z: GwaElem::z(),
            zt: GwaElem::z().scale(spec.big_q()),
            q: spec.big_q().clone(),
            qi: spec.qe_pow(-1),
            ptp: pp.map_legs(sig, id),
            ppt: pp.map_legs(id, sig),
            ptpt: pp.map_legs(sig, sig),
            pp,
        }
    }

    pub fn t(&self, a: &GwaElem<F>, b: &GwaElem<F>) -> EnvElem<F> {
        EnvElem::tensor(a, b)
    }

    pub fn zero(&self) -> EnvElem<F> {
        EnvElem::zero()
    }
}

fn build_d<F: Scalar>(l: &Letters<F>) -> [EnvMatrix<F>; 4] {
    let (o, x, y, z, zt) = (&l.one, &l.x, &l.y, &l.z, &l.zt);
    let t = |a, b| l.t(a, b);
    let q = &l.q;
    let d1 = EnvMatrix::from_rows(vec![
        vec![t(x, o).sub(&t(o, x))],
        vec![t(y, o).sub(&t(o, y))],
        vec![t(z, o).sub(&t(o, z))],
    ]);
    let d2 = EnvMatrix::from_rows(vec![
        vec![t(y, o), t(o, x), l.pp.neg()],
        vec![t(o, y), t(x, o), l.ptpt.scale(q).neg()],
        vec![t(zt, o).sub(&t(o, z)), l.zero(), t(o, x).scale(q).sub(&t(x, o))],
        vec![l.zero(), t(z, o).sub(&t(o, zt)), t(o, y).sub(&t(y, o).scale(q))],
    ]);
    let d3 = EnvMatrix::from_rows(vec![
        vec![t(x, o), t(o, x).neg(), l.ptp.neg(), l.zero()],
        vec![t(o, y).neg(), t(y, o), l.zero(), l.ppt.neg()],
        vec![t(z, o).sub(&t(o, z)), l.zero(), t(y, o).neg(), t(o, x).neg()],
        vec![l.zero(), t(zt, o).sub(&t(o, zt)), t(o, y).neg(), t(x, o).neg()],
    ]);
    let d4 = EnvMatrix::from_rows(vec![
        vec![t(y, o), t(o, x), l.pp.neg(), l.zero()],
        vec![t(o, y), t(x, o), l.zero(), l.ptpt.neg()],
        vec![t(zt, o).sub(&t(o, z)), l.zero(), t(x, o).neg(), t(o, x)],
        vec![l.zero(), t(z, o).sub(&t(o, zt)), t(o, y), t(y, o).neg()],
    ]);
    [d1, d2, d3, d4]
}

/// The tensor-side differentials `∂^{-1}, …, ∂^{-4}` as listed entrywise.
fn build_partial<F: Scalar>(l: &Letters<F>) -> [EnvMatrix<F>; 4] {
    let (o, x, y, z, zt) = (&l.one, &l.x, &l.y, &l.z, &l.zt);
    let t = |a, b| l.t(a, b);
    let (q, qi) = (&l.q, &l.qi);
    let p1 = EnvMatrix::from_rows(vec![vec![
        t(o, x).scale(q).sub(&t(x, o)),
        t(o, y).scale(qi).sub(&t(y, o)),
        t(o, z).sub(&t(z, o)),
    ]]);
    let p2 = EnvMatrix::from_rows(vec![
        vec![t(o, y).scale(qi), t(y, o), t(o, zt).sub(&t(z, o)), l.zero()],
        vec![t(x, o), t(o, x).scale(q), l.zero(), t(o, z).sub(&t(zt, o))],
        vec![
            l.pp.neg(),
            l.ptpt.scale(q).neg(),
            t(x, o).scale(q).sub(&t(o, x).scale(q)),
            t(y, o).sub(&t(o, y)),
        ],
    ]);
    let p3 = EnvMatrix::from_rows(vec![
        vec![t(o, x).scale(q), t(y, o).neg(), t(o, z).sub(&t(z, o)), l.zero()],
        vec![t(x, o).neg(), t(o, y).scale(qi), l.zero(), t(o, zt).sub(&t(zt, o))],
        vec![l.ppt.neg(), l.zero(), t(o, y).scale(qi).neg(), t(y, o).neg()],
        vec![l.zero(), l.ptp.neg(), t(x, o).neg(), t(o, x).scale(q).neg()],
    ]);
    let p4 = EnvMatrix::from_rows(vec![
        vec![t(o, y).scale(qi), t(y, o), t(o, zt).sub(&t(z, o)), l.zero()],
        vec![t(x, o), t(o, x).scale(q), l.zero(), t(o, z).sub(&t(zt, o))],
        vec![l.pp.neg(), l.zero(), t(o, x).scale(q).neg(), t(y, o)],
        vec![l.zero(), l.ptpt.neg(), t(x, o), t(o, y).scale(qi).neg()],
    ]);
    [p1, p2, p3, p4]
}

/// `F` together with the listed tensor-side matrices.
#[derive(Clone)]
pub struct ResolutionData<F> {
    spec: GwaSpec<F>,
    d: [EnvMatrix<F>; 4],
    partial: [EnvMatrix<F>; 4],
}

pub fn build_resolution<F: Scalar>(spec: &GwaSpec<F>) -> ResolutionData<F> {
    let l = Letters::new(spec);
    ResolutionData { spec: spec.clone(), d: build_d(&l), partial: build_partial(&l) }
}

/// Reduce `k ≥ 1` to the representative degree in `1..=4`.
fn periodic(k: usize) -> usize {
    assert!(k >= 1, "degree must be positive");
    if k <= 4 {
        k
    } else {
        3 + (k - 3) % 2
    }
}

impl<F: Scalar> ResolutionData<F> {
    pub fn spec(&self) -> &GwaSpec<F> {
        &self.spec
    }

    /// `d_k : F_k → F_{k-1}` as a `rank_k × rank_{k-1}` matrix.
    pub fn d(&self, k: usize) -> &EnvMatrix<F> {
        &self.d[periodic(k) - 1]
    }

    /// The listed `∂^{-k}`, a `rank_{k-1} × rank_k` matrix.
    pub fn partial(&self, k: usize) -> &EnvMatrix<F> {
        &self.partial[periodic(k) - 1]
    }

    /// `∂^{-k}` recomputed from `d_k`: apply `ν ⊗ 1`, swap the legs, transpose.
    pub fn partial_derived(&self, k: usize) -> EnvMatrix<F> {
        self.d(k).map(|e| e.nu_left(&self.spec).flip()).transpose()
    }

    /// Replace one entry of `d_k` (0-indexed), for negative controls.
    pub fn with_entry(mut self, k: usize, i: usize, j: usize, v: EnvElem<F>) -> Self {
        self.d[periodic(k) - 1].set(i, j, v);
        self
    }
}

fn entry_list(entries: &[(usize, usize)]) -> String {
    entries.iter().map(|(i, j)| format!("({}, {})", i + 1, j + 1)).collect::<Vec<_>>().join(", ")
}

/// Check every entry of `m : F_k → F_{k-1}` (rows in degree `k`) for
/// weight homogeneity.
fn homogeneity_failures<F: Scalar>(m: &EnvMatrix<F>, k: usize) -> Vec<(usize, usize)> {
    let (wr, wc) = (position_weights(k), position_weights(k - 1));
    let mut bad = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let ws = m.get(i, j).weights();
            if ws.iter().any(|&w| w != wr[i] - wc[j]) {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// All structural identities of `F`.
pub fn verify_resolution<F: Scalar>(res: &ResolutionData<F>) -> Result<Report> {
    let spec = &res.spec;
    let mut rep = Report::new();
    for k in 1..=4 {
        let prod = mat_mul(spec, res.d(k + 1), res.d(k))?;
        let bad = prod.nonzero_entries();
        let detail = if bad.is_empty() {
            String::new()
        } else {
            format!("k={k}, entry {}", entry_list(&bad))
        };
        rep.push(format!("d{}·d{} = 0", k + 1, k), bad.is_empty(), detail);
    }
    let bad: Vec<usize> =
        (0..3).filter(|&i| !mu(spec, res.d(1).get(i, 0)).is_zero()).collect();
    rep.push("μ∘d1 = 0", bad.is_empty(), format!("{bad:?}"));
    for k in 1..=4 {
        let bad = homogeneity_failures(res.d(k), k);
        rep.push(format!("d{k} weight-homogeneous"), bad.is_empty(), entry_list(&bad));
    }
    for k in 1..=4 {
        let diff = res.partial(k).sub(&res.partial_derived(k))?;
        let bad = diff.nonzero_entries();
        rep.push(format!("∂^-{k} = (ν⊗1)d{k}, transposed"), bad.is_empty(), entry_list(&bad));
    }
    Ok(rep)
}

/// Which of the two complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `S^k = Hom(F_k, A)`, cohomological.
    S,
    /// `T_k = A^ν ⊗ F_k`, homological.
    T,
}

/// `S` or `T` with coefficients in `A`; cochains are column vectors.
#[derive(Clone, Copy)]
pub struct Complex<'a, F> {
    res: &'a ResolutionData<F>,
    side: Side,
}

pub fn instantiate<F: Scalar>(res: &ResolutionData<F>, side: Side) -> Complex<'_, F> {
    Complex { res, side }
}

/// Weight `w` and z-degree bound `zmax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub weight: i64,
    pub zmax: usize,
}

impl<'a, F: Scalar> Complex<'a, F> {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn resolution(&self) -> &'a ResolutionData<F> {
        self.res
    }

    pub fn spec(&self) -> &'a GwaSpec<F> {
        &self.res.spec
    }

    pub fn rank(&self, k: usize) -> usize {
        degree_rank(k)
    }

    /// Weight of the component at position `c` of a degree-`k` element of
    /// total weight `w`.
    pub fn slot_weight(&self, k: usize, c: usize, w: i64) -> i64 {
        match self.side {
            Side::S => w + position_weights(k)[c],
            Side::T => w - position_weights(k)[c],
        }
    }

    /// Degree reached by the differential leaving degree `k`.
    pub fn target(&self, k: usize) -> Option<usize> {
        match self.side {
            Side::S => Some(k + 1),
            Side::T => k.checked_sub(1),
        }
    }

    /// Degree whose differential lands in degree `k`.
    pub fn source(&self, k: usize) -> Option<usize> {
        match self.side {
            Side::S => k.checked_sub(1),
            Side::T => Some(k + 1),
        }
    }

    /// Matrix of the differential leaving degree `k`.
    pub fn differential(&self, k: usize) -> Option<&'a EnvMatrix<F>> {
        match self.side {
            Side::S => Some(self.res.d(k + 1)),
            Side::T => (k >= 1).then(|| self.res.partial(k)),
        }
    }

    /// Apply the differential leaving degree `k`.
    pub fn apply(&self, k: usize, v: &[GwaElem<F>]) -> Result<Vec<GwaElem<F>>> {
        match self.differential(k) {
            Some(m) => mat_apply_hom(self.spec(), m, v),
            None => Ok(Vec::new()),
        }
    }

    pub fn is_cycle(&self, k: usize, v: &[GwaElem<F>]) -> Result<bool> {
        Ok(self.apply(k, v)?.iter().all(GwaElem::is_zero))
    }

    /// Window basis: `(position, monomial)` pairs ordered by coordinate key.
    pub fn basis(&self, k: usize, win: TruncationWindow) -> Vec<(usize, Monomial)> {
        let r = self.rank(k);
        let mut out = Vec::new();
        for i in 0..=win.zmax {
            for c in 0..r {
                out.push((c, Monomial::from_weight(self.slot_weight(k, c, win.weight), i as u32)));
            }
        }
        out
    }

    /// Coordinate key of `m` at position `c`; z-degree-major so windows nest.
    pub fn key(&self, k: usize, c: usize, m: &Monomial) -> usize {
        m.i as usize * self.rank(k) + c
    }

    /// Keys at or above this bound have z-degree above `zmax`.
    pub fn key_bound(&self, k: usize, zmax: usize) -> usize {
        (zmax + 1) * self.rank(k)
    }

    /// Coordinates of a homogeneous vector of weight `w`. Components of
    /// other weights are an error in the caller; they are ignored here.
    pub fn coords(&self, k: usize, w: i64, v: &[GwaElem<F>]) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (c, vc) in v.iter().enumerate() {
            let p = vc.component(self.slot_weight(k, c, w));
            for (i, a) in p.terms() {
                out.insert(i * self.rank(k) + c, a.clone());
            }
        }
        out
    }

    pub fn from_coords(&self, k: usize, w: i64, sv: &SparseVec<F>) -> Vec<GwaElem<F>> {
        let r = self.rank(k);
        let mut v = vec![GwaElem::zero(); r];
        for (key, a) in sv {
            let (i, c) = (key / r, key % r);
            let m = Monomial::from_weight(self.slot_weight(k, c, w), i as u32);
            v[c] = v[c].add(&GwaElem::monomial(m, a.clone()));
        }
        v
    }

    pub fn unit(&self, k: usize, c: usize, m: Monomial) -> Vec<GwaElem<F>> {
        let mut v = vec![GwaElem::zero(); self.rank(k)];
        v[c] = GwaElem::monomial(m, F::one());
        v
    }

    /// Images of the window basis under the differential leaving degree `k`.
    pub fn truncate(&self, k: usize, win: TruncationWindow) -> Result<Vec<SparseVec<F>>> {
        let Some(t) = self.target(k) else {
            return Ok(vec![SparseVec::new(); self.basis(k, win).len()]);
        };
        self.basis(k, win)
            .into_iter()
            .map(|(c, m)| Ok(self.coords(t, win.weight, &self.apply(k, &self.unit(k, c, m))?)))
            .collect()
    }

    /// Estimated `dim H` in degree `k`, weight `w`, from the window of
    /// z-degree `≤ zmax`: cycles in the window minus boundaries that land
    /// in it, the latter computed from preimages of z-degree `≤ zmax + n`.
    pub fn homology_estimate(&self, k: usize, w: i64, zmax: usize) -> Result<usize> {
        let win = TruncationWindow { weight: w, zmax };
        let images = self.truncate(k, win)?;
        let cycles = images.len() - rank(images);
        let boundaries = match self.source(k) {
            None => 0,
            Some(s) => {
                let big = TruncationWindow { weight: w, zmax: zmax + self.spec().n() };
                let imgs = self.truncate(s, big)?;
                let bound = self.key_bound(k, zmax);
                let outside: Vec<SparseVec<F>> =
                    imgs.iter().map(|v| v.range(bound..).map(|(a, b)| (*a, b.clone())).collect()).collect();
                let total = rank(imgs.iter().cloned());
                total - rank(outside)
            }
        };
        Ok(cycles - boundaries)
    }

    /// Find `ξ` with `d ξ = v` where `v` lies in degree `k`; the preimage
    /// is searched among z-degree `≤ zmax`. The witness is checked exactly.
    pub fn solve_boundary(&self, k: usize, w: i64, v: &[GwaElem<F>], zmax: usize) -> Result<Option<Vec<GwaElem<F>>>> {
        let Some(s) = self.source(k) else {
            return Ok(None);
        };
        let win = TruncationWindow { weight: w, zmax };
        let basis = self.basis(s, win);
        let mut ech = Echelon::new(true);
        for img in self.truncate(s, win)? {
            ech.insert(img);
        }
        let Some(combo) = ech.solve(&self.coords(k, w, v)) else {
            return Ok(None);
        };
        let mut xi = vec![GwaElem::zero(); self.rank(s)];
        for (idx, a) in combo {
            let (c, m) = basis[idx];
            xi[c] = xi[c].add(&GwaElem::monomial(m, a));
        }
        let back = self.apply(s, &xi)?;
        let ok = back.len() == v.len() && back.iter().zip(v).all(|(a, b)| a == b);
        assert!(ok, "boundary witness failed exact verification");
        Ok(Some(xi))
    }
}
