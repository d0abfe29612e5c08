//! The full BV table: cup products, `Δ` and brackets on a basis of `HH^*(A)`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::bv::ops::{bv_context, cup11, BvContext};
use crate::check::Report;
use crate::error::Result;
use crate::gwa::{GwaElem, GwaSpec};
use crate::scalars::Scalar;

/// Coefficient vector over the whole basis.
pub type Coords<F> = Vec<F>;

pub struct BvTable<F> {
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    /// `cup[i][j] = e_i ⌣ e_j`.
    pub cup: Vec<Vec<Coords<F>>>,
    /// `Δ(e_i)`.
    pub delta: Vec<Coords<F>>,
    /// `[e_i, e_j]` from the BV identity.
    pub bracket: Vec<Vec<Coords<F>>>,
    /// Raw `S²` cochains of the degree-one cup products, keyed by label pair.
    pub cup_cochains: Vec<(String, String, Vec<GwaElem<F>>)>,
    pub checks: Report,
}

fn zeros<F: Scalar>(n: usize) -> Coords<F> {
    vec![F::zero(); n]
}

fn axpy<F: Scalar>(acc: &mut Coords<F>, c: &F, v: &Coords<F>) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.clone() + c.clone() * b.clone();
    }
}

fn sign<F: Scalar>(odd: bool) -> F {
    if odd {
        -F::one()
    } else {
        F::one()
    }
}

impl<F: Scalar> BvTable<F> {
    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn unit(&self, i: usize) -> Coords<F> {
        let mut v = zeros(self.labels.len());
        v[i] = F::one();
        v
    }

    /// Bilinear extension of the cup table.
    pub fn cup_of(&self, a: &Coords<F>, b: &Coords<F>) -> Coords<F> {
        let mut out = zeros(self.labels.len());
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(ai.clone() * bj.clone()), &self.cup[i][j]);
            }
        }
        out
    }

    pub fn delta_of(&self, a: &Coords<F>) -> Coords<F> {
        let mut out = zeros(self.labels.len());
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, ai, &self.delta[i]);
        }
        out
    }

    /// `[a, b] = (−1)^{|a|}(Δ(a⌣b) − Δ(a)⌣b − (−1)^{|a|} a⌣Δ(b))` on basis elements.
    fn bracket_basis(&self, i: usize, j: usize) -> Coords<F> {
        let (a, b) = (self.unit(i), self.unit(j));
        let sa = sign::<F>(self.degrees[i] % 2 == 1);
        let mut out = self.delta_of(&self.cup[i][j]);
        axpy(&mut out, &-F::one(), &self.cup_of(&self.delta[i], &b));
        axpy(&mut out, &-sa.clone(), &self.cup_of(&a, &self.delta[j]));
        out.iter().map(|c| c.clone() * sa.clone()).collect()
    }

    /// A readable linear combination such as `-2·v + s`.
    pub fn render(&self, v: &Coords<F>) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                let cs = c.to_string();
                match (c.is_one(), c.is_compound() && !cs.starts_with('(')) {
                    (true, _) => l.clone(),
                    (false, true) => format!("({cs})·{l}"),
                    (false, false) => format!("{cs}·{l}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn coords_json(&self, v: &Coords<F>) -> Value {
        let mut m = Map::new();
        for (c, l) in v.iter().zip(&self.labels) {
            if !c.is_zero() {
                m.insert(l.clone(), Value::String(c.to_string()));
            }
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> Value {
        let n = self.labels.len();
        let basis: Vec<Value> =
            self.labels.iter().zip(&self.degrees).map(|(l, d)| json!({"label": l, "degree": d})).collect();
        let matrix = |m: &Vec<Vec<Coords<F>>>| -> Value {
            Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| self.coords_json(&m[i][j])).collect())).collect())
        };
        json!({
            "basis": basis,
            "cup": matrix(&self.cup),
            "delta": self.delta.iter().map(|v| self.coords_json(v)).collect::<Vec<_>>(),
            "bracket": matrix(&self.bracket),
            "checks": self.checks,
        })
    }

    /// Text summary in the style of a structure theorem.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let basis: Vec<String> = self.labels.iter().zip(&self.degrees).map(|(l, d)| format!("{l} (deg {d})")).collect();
        let _ = writeln!(s, "basis of HH^*(A): {}", basis.join(", "));
        let _ = writeln!(s, "cup products (1 is the unit):");
        let mut any = false;
        for i in 0..self.labels.len() {
            for j in 0..self.labels.len() {
                if self.degrees[i] > 0 && self.degrees[j] > 0 && self.cup[i][j].iter().any(|c| !c.is_zero()) {
                    any = true;
                    let _ = writeln!(s, "  {} ⌣ {} = {}", self.labels[i], self.labels[j], self.render(&self.cup[i][j]));
                }
            }
        }
        if !any {
            let _ = writeln!(s, "  all products of positive-degree classes vanish");
        }
        let _ = writeln!(s, "BV operator:");
        let mut any = false;
        for (l, v) in self.labels.iter().zip(&self.delta) {
            if v.iter().any(|c| !c.is_zero()) {
                any = true;
                let _ = writeln!(s, "  Δ({l}) = {}", self.render(v));
            }
        }
        let _ = writeln!(s, "  {}", if any { "Δ vanishes on the other basis elements" } else { "Δ vanishes identically" });
        let nonzero = self.bracket.iter().flatten().filter(|v| v.iter().any(|c| !c.is_zero())).count();
        if nonzero == 0 {
            let _ = writeln!(s, "Gerstenhaber bracket: identically zero");
        } else {
            let _ = writeln!(s, "Gerstenhaber bracket: {nonzero} nonzero entries");
            for i in 0..self.labels.len() {
                for j in 0..self.labels.len() {
                    if self.bracket[i][j].iter().any(|c| !c.is_zero()) {
                        let _ = writeln!(s, "  [{}, {}] = {}", self.labels[i], self.labels[j], self.render(&self.bracket[i][j]));
                    }
                }
            }
        }
        let _ = writeln!(s, "checks: {}", self.checks.summary());
        s
    }
}

/// Compute the whole table from a context.
pub fn bv_table_from<F: Scalar>(ctx: &BvContext<F>) -> Result<BvTable<F>> {
    let basis = ctx.basis();
    let labels = basis.labels();
    let degrees: Vec<usize> = basis.elems.iter().map(|b| b.degree).collect();
    let n = labels.len();
    let pos = |l: &str| labels.iter().position(|x| x == l).expect("label in basis");
    let lift = |pairs: &[(String, F)]| -> Coords<F> {
        let mut v = zeros(n);
        for (l, c) in pairs {
            v[pos(l)] = c.clone();
        }
        v
    };
    let mut checks = Report::new();

    let mut cup = vec![vec![zeros::<F>(n); n]; n];
    let mut cup_cochains = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (di, dj) = (degrees[i], degrees[j]);
            cup[i][j] = if di == 0 {
                let mut v = zeros(n);
                v[j] = F::one();
                v
            } else if dj == 0 {
                let mut v = zeros(n);
                v[i] = F::one();
                v
            } else if di == 1 && dj == 1 {
                let raw = cup11(ctx.comparison(), &ctx.derivation(&labels[i])?, &ctx.derivation(&labels[j])?);
                let (c, _) = ctx.s_coordinates(2, &raw)?;
                cup_cochains.push((labels[i].clone(), labels[j].clone(), raw));
                lift(&c)
            } else {
                // Lands in HH^{≥3} = 0.
                zeros(n)
            };
        }
    }
    let mut comm = true;
    for i in 0..n {
        for j in 0..n {
            let s = sign::<F>(degrees[i] * degrees[j] % 2 == 1);
            let other: Coords<F> = cup[j][i].iter().map(|c| c.clone() * s.clone()).collect();
            comm &= cup[i][j] == other;
        }
    }
    checks.push("cup graded commutative", comm, "");

    let mut delta = Vec::with_capacity(n);
    for l in &labels {
        let dv = ctx.delta_on_class(l)?;
        checks.push(format!("Δ({l}) certified by a Hochschild boundary"), dv.certified, format!("{dv:?}"));
        delta.push(lift(&dv.coords));
    }

    let mut table = BvTable { labels, degrees, cup, delta, bracket: Vec::new(), cup_cochains, checks };
    let dd_zero = (0..n).all(|i| table.delta_of(&table.delta[i]).iter().all(|c| c.is_zero()));
    table.checks.push("Δ² = 0", dd_zero, "");
    table.bracket = (0..n).map(|i| (0..n).map(|j| table.bracket_basis(i, j)).collect()).collect();
    let all_zero = table.bracket.iter().flatten().all(|v| v.iter().all(|c| c.is_zero()));
    table.checks.push("all brackets vanish", all_zero, "");
    Ok(table)
}

pub fn bv_table<F: Scalar>(spec: &GwaSpec<F>) -> Result<BvTable<F>> {
    bv_table_from(&bv_context(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalars::{parse_zpoly, rat, RatFunc};

    #[test]
    fn p_not_z_table() {
        let s = GwaSpec::exact(parse_zpoly("z^2 - 1").unwrap(), 1).unwrap().specialize(&rat(7, 3)).unwrap();
        let t = bv_table(&s).unwrap();
        assert!(t.checks.passed(), "{}", t.render_text());
        assert_eq!(t.labels, vec!["1", "s", "v", "u^1"]);
        assert_eq!(t.render(&t.delta[t.index("v").unwrap()]), "s");
        assert!(t.render_text().contains("identically zero"));
    }

    #[test]
    fn p_is_z_table() {
        let s = GwaSpec::exact(parse_zpoly("z").unwrap(), 1).unwrap();
        let t = bv_table(&s).unwrap();
        let failed: Vec<&str> = t.checks.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["all brackets vanish"], "{}", t.render_text());
        let (si, ti, vi) = (t.index("s").unwrap(), t.index("t").unwrap(), t.index("v").unwrap());
        let mut want = vec![RatFunc::from_i64(0); t.labels.len()];
        want[vi] = RatFunc::from_i64(-2);
        assert_eq!(t.cup[si][ti], want);
        assert_eq!(t.render(&t.delta[ti]), "(-2)·1");
        assert_eq!(t.render(&t.delta[vi]), "s");
        // Δ(t) = −2 and Δ(u) = 0 force [t, u] = −2u through the BV identity.
        let ui = t.index("u").unwrap();
        assert_eq!(t.render(&t.bracket[ti][ui]), "(-2)·u");
        let js = t.to_json();
        assert_eq!(js["basis"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn refuses_multiple_roots() {
        let s = GwaSpec::exact(parse_zpoly("z^2").unwrap(), 1).unwrap();
        assert!(matches!(bv_table(&s), Err(Error::NotSkewCalabiYau(_))));
    }
}
