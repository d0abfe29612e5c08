//! The enveloping algebra `A^e = A ⊗ A^op`, its matrices, and the two
//! ways it acts on `A`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaSpec, Monomial};
use crate::scalars::{Scalar, ZPoly};

/// A finite sum `Σ c·(a ⊗ b)` over pairs of basis monomials.
#[derive(Clone, PartialEq)]
pub struct EnvElem<F> {
    terms: BTreeMap<(Monomial, Monomial), F>,
}

impl<F: Scalar> EnvElem<F> {
    pub fn zero() -> Self {
        EnvElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(F::one(), Monomial::ONE, Monomial::ONE)
    }

    pub fn scalar(c: F) -> Self {
        Self::term(c, Monomial::ONE, Monomial::ONE)
    }

    pub fn term(c: F, a: Monomial, b: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        EnvElem { terms }
    }

    /// `a ⊗ b`, expanded bilinearly.
    pub fn tensor(a: &GwaElem<F>, b: &GwaElem<F>) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(ma, mb, ca.clone() * cb);
            }
        }
        out
    }

    fn add_term(&mut self, a: Monomial, b: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let s = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &F)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        EnvElem { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EnvElem { terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())).collect() }
    }

    /// Distinct weights `w(a) + w(b)` occurring.
    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self.terms.keys().map(|(a, b)| a.weight() + b.weight()).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(&self) -> Self {
        EnvElem { terms: self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect() }
    }

    /// Apply linear maps to the two legs termwise.
    pub fn map_legs(
        &self,
        f1: impl Fn(&GwaElem<F>) -> GwaElem<F>,
        f2: impl Fn(&GwaElem<F>) -> GwaElem<F>,
    ) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let fa = f1(&GwaElem::monomial(*a, F::one()));
            let fb = f2(&GwaElem::monomial(*b, F::one()));
            out = out.add(&Self::tensor(&fa, &fb).scale(c));
        }
        out
    }

    /// `ν ⊗ 1`.
    pub fn nu_left(&self, spec: &GwaSpec<F>) -> Self {
        EnvElem {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((*a, *b), c.clone() * spec.qe_pow(a.weight())))
                .collect(),
        }
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> EnvElem<G> {
        let mut out = EnvElem::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, f(c));
        }
        out
    }

    /// Group terms by their left leg: `Σ_a a ⊗ (Σ_b c·b)`.
    fn by_left(&self) -> BTreeMap<Monomial, GwaElem<F>> {
        let mut out: BTreeMap<Monomial, GwaElem<F>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let e = out.entry(*a).or_insert_with(GwaElem::zero);
            *e = e.add(&GwaElem::monomial(*b, c.clone()));
        }
        out
    }
}

/// `(a⊗b)(c⊗d) = ac ⊗ db`.
pub fn env_mul<F: Scalar>(spec: &GwaSpec<F>, u: &EnvElem<F>, v: &EnvElem<F>) -> EnvElem<F> {
    let mut out = EnvElem::zero();
    for ((a, b), c1) in &u.terms {
        for ((c, d), c2) in &v.terms {
            let left = spec.mul(&GwaElem::monomial(*a, F::one()), &GwaElem::monomial(*c, F::one()));
            let right = spec.mul(&GwaElem::monomial(*d, F::one()), &GwaElem::monomial(*b, F::one()));
            let coef = c1.clone() * c2.clone();
            for (ml, cl) in left.terms() {
                for (mr, cr) in right.terms() {
                    out.add_term(ml, mr, coef.clone() * cl.clone() * cr);
                }
            }
        }
    }
    out
}

/// The divided difference `𝔡(z^i) = Σ_{j=1}^{i} z^{i−j} ⊗ z^{j−1}`.
pub fn dd<F: Scalar>(phi: &ZPoly<F>) -> EnvElem<F> {
    let mut out = EnvElem::zero();
    for (i, c) in phi.terms() {
        for j in 1..=i {
            let a = Monomial::new(0, (i - j) as u32, 0);
            let b = Monomial::new(0, (j - 1) as u32, 0);
            out.add_term(a, b, c.clone());
        }
    }
    out
}

/// `d/dz` on the second leg of an element supported on `k[z] ⊗ k[z]`.
pub fn d_second<F: Scalar>(u: &EnvElem<F>) -> EnvElem<F> {
    let mut out = EnvElem::zero();
    for ((a, b), c) in &u.terms {
        assert!(b.weight() == 0, "d_second expects a z-polynomial second leg");
        if b.i > 0 {
            out.add_term(*a, Monomial::new(0, b.i - 1, 0), c.clone() * F::from_i64(b.i as i64));
        }
    }
    out
}

/// Hom-side action `(a⊗b)·m = a m b`.
pub fn act_hom<F: Scalar>(spec: &GwaSpec<F>, u: &EnvElem<F>, m: &GwaElem<F>) -> GwaElem<F> {
    let mut out = GwaElem::zero();
    if m.is_zero() {
        return out;
    }
    for (a, bs) in u.by_left() {
        let am = spec.mul(&GwaElem::monomial(a, F::one()), m);
        out = out.add(&spec.mul(&am, &bs));
    }
    out
}

/// Tensor-side action `(a⊗b)·m = b m ν(a)`.
pub fn act_twisted<F: Scalar>(spec: &GwaSpec<F>, u: &EnvElem<F>, m: &GwaElem<F>) -> GwaElem<F> {
    let mut out = GwaElem::zero();
    if m.is_zero() {
        return out;
    }
    for (a, bs) in u.by_left() {
        let nu_a = spec.nakayama(&GwaElem::monomial(a, F::one()));
        out = out.add(&spec.mul3(&bs, m, &nu_a));
    }
    out
}

/// Multiplication `μ(a⊗b) = ab`.
pub fn mu<F: Scalar>(spec: &GwaSpec<F>, u: &EnvElem<F>) -> GwaElem<F> {
    act_hom(spec, u, &GwaElem::one())
}

impl<F: Scalar> fmt::Display for EnvElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let body = format!("{a}⊗{b}");
                if c.is_one() {
                    body
                } else if c.is_compound() {
                    format!("({c})*{body}")
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> fmt::Debug for EnvElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dense matrix over `A^e`.
#[derive(Clone, PartialEq)]
pub struct EnvMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<EnvElem<F>>,
}

impl<F: Scalar> EnvMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EnvMatrix { rows, cols, entries: vec![EnvElem::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, EnvElem::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<EnvElem<F>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        EnvMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &EnvElem<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: EnvElem<F>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(EnvElem::is_zero)
    }

    pub fn map(&self, f: impl Fn(&EnvElem<F>) -> EnvElem<F>) -> Self {
        EnvMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> EnvMatrix<G> {
        EnvMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.map_scalars(&f)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(EnvMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.map(EnvElem::neg))
    }

    /// Positions of nonzero entries, for failure reports.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .collect()
    }
}

pub fn mat_mul<F: Scalar>(spec: &GwaSpec<F>, m: &EnvMatrix<F>, n: &EnvMatrix<F>) -> Result<EnvMatrix<F>> {
    if m.cols != n.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} · {}x{}",
            m.rows, m.cols, n.rows, n.cols
        )));
    }
    let mut out = EnvMatrix::zeros(m.rows, n.cols);
    for i in 0..m.rows {
        for j in 0..n.cols {
            let mut acc = EnvElem::zero();
            for k in 0..m.cols {
                let (a, b) = (m.get(i, k), n.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&env_mul(spec, a, b));
                }
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

fn apply_with<F: Scalar>(
    m: &EnvMatrix<F>,
    v: &[GwaElem<F>],
    act: impl Fn(&EnvElem<F>, &GwaElem<F>) -> GwaElem<F>,
) -> Result<Vec<GwaElem<F>>> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on vector of length {}",
            m.rows,
            m.cols,
            v.len()
        )));
    }
    Ok((0..m.rows)
        .map(|i| {
            let mut acc = GwaElem::zero();
            for (j, vj) in v.iter().enumerate() {
                let e = m.get(i, j);
                if !e.is_zero() && !vj.is_zero() {
                    acc = acc.add(&act(e, vj));
                }
            }
            acc
        })
        .collect())
}

/// `M·v` on a column vector with the Hom-side action.
pub fn mat_apply_hom<F: Scalar>(
    spec: &GwaSpec<F>,
    m: &EnvMatrix<F>,
    v: &[GwaElem<F>],
) -> Result<Vec<GwaElem<F>>> {
    apply_with(m, v, |e, x| act_hom(spec, e, x))
}

/// `M·v` on a column vector with the tensor-side action.
pub fn mat_apply_twisted<F: Scalar>(
    spec: &GwaSpec<F>,
    m: &EnvMatrix<F>,
    v: &[GwaElem<F>],
) -> Result<Vec<GwaElem<F>>> {
    apply_with(m, v, |e, x| act_twisted(spec, e, x))
}

impl<F: Scalar> fmt::Display for EnvMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                let c = &cells[i * self.cols + j];
                let pad = width - c.chars().count();
                write!(f, "{c}{}", " ".repeat(pad))?;
                if j + 1 < self.cols {
                    write!(f, " | ")?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for EnvMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_zpoly, RatFunc};

    fn spec(p: &str, e: i64) -> GwaSpec<RatFunc> {
        GwaSpec::exact(parse_zpoly(p).unwrap(), e).unwrap()
    }

    fn t(s: &GwaSpec<RatFunc>, a: &str, b: &str) -> EnvElem<RatFunc> {
        EnvElem::tensor(&s.parse_elem(a).unwrap(), &s.parse_elem(b).unwrap())
    }

    #[test]
    fn opposite_order_in_second_leg() {
        let s = spec("z^2 - 1", 1);
        let prod = env_mul(&s, &t(&s, "1", "x"), &t(&s, "1", "y"));
        assert_eq!(prod, EnvElem::tensor(&GwaElem::one(), &GwaElem::poly(s.p().clone())));
        let prod = env_mul(&s, &t(&s, "y", "1"), &t(&s, "x", "1"));
        assert_eq!(prod, EnvElem::tensor(&GwaElem::poly(s.p().clone()), &GwaElem::one()));
        assert_eq!(env_mul(&s, &t(&s, "x", "1"), &t(&s, "1", "x")), t(&s, "x", "x"));
    }

    #[test]
    fn dd_examples() {
        let s = spec("z", 1);
        assert!(dd(&parse_zpoly("1").unwrap()).is_zero());
        assert_eq!(dd(&parse_zpoly("z^2").unwrap()), t(&s, "z", "1").add(&t(&s, "1", "z")));
        let want = t(&s, "z^2", "1").add(&t(&s, "z", "z")).add(&t(&s, "1", "z^2"));
        assert_eq!(dd(&parse_zpoly("z^3").unwrap()), want);
    }

    #[test]
    fn action_examples() {
        let s = spec("z^2 - 1", 2);
        let u = t(&s, "x", "1").sub(&t(&s, "1", "x"));
        assert_eq!(act_hom(&s, &u, &GwaElem::z()), s.parse_elem("(q^2 - 1) z x").unwrap());
        assert_eq!(act_twisted(&s, &t(&s, "x", "1"), &GwaElem::one()), s.parse_elem("q^2 x").unwrap());
        assert_eq!(act_twisted(&s, &t(&s, "1", "y"), &GwaElem::one()), GwaElem::y());
        let m = s.parse_elem("y z + x").unwrap();
        assert_eq!(act_twisted(&s, &t(&s, "z", "1"), &m), s.mul(&m, &GwaElem::z()));
    }
}
