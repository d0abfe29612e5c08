//! Run configuration, suite execution and the JSON report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bv::{bv_context, bv_table_from, verify_connes, verify_eta};
use crate::check::Report;
use crate::duality::{build_duality, verify_homotopies, verify_squares};
use crate::error::{Error, Result};
use crate::gwa::{skew_cy_analyze, GwaElem, GwaSpec};
use crate::homology::{cohomology_basis, cohomology_dims, is_cocycle_s, verify_coboundary_witnesses, verify_t_homology};
use crate::presets::{custom, preset_podles, preset_wpl, specialize_seeded};
use crate::resolution::{build_resolution, instantiate, verify_resolution, Side};
use crate::scalars::{parse_rational, RatFunc, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Specialize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecSource {
    Custom { p: String, e: i64 },
    Wpl { l: u32 },
    Podles { u: String, v: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    Resolution,
    Duality,
    Cohomology,
    THomology,
    BvTable,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Resolution, Suite::Duality, Suite::Cohomology, Suite::THomology, Suite::BvTable];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Resolution => "resolution",
            Suite::Duality => "duality",
            Suite::Cohomology => "cohomology",
            Suite::THomology => "t-homology",
            Suite::BvTable => "bv-table",
        }
    }

    fn needs_squarefree(self) -> bool {
        self != Suite::Resolution
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub source: SpecSource,
    pub mode: Mode,
    pub seed: u64,
    /// Ascending z-degree windows.
    pub grid: Vec<usize>,
    /// Nonzero weights `1 ≤ |w| ≤ wmax` are checked to carry no cohomology.
    pub wmax: i64,
    pub suites: Vec<Suite>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() || self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!("N grid must be nonempty and ascending, got {:?}", self.grid)));
        }
        if self.wmax < 1 {
            return Err(Error::InvalidConfig(format!("weight window must be at least 1, got {}", self.wmax)));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidConfig("no suites selected".into()));
        }
        Ok(())
    }

    pub fn build_spec(&self) -> Result<GwaSpec<RatFunc>> {
        match &self.source {
            SpecSource::Custom { p, e } => custom(p, *e),
            SpecSource::Wpl { l } => preset_wpl(*l),
            SpecSource::Podles { u, v } => preset_podles(&parse_rational(u)?, &parse_rational(v)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub passed: bool,
    pub details: Vec<crate::check::Check>,
}

impl From<Report> for SuiteResult {
    fn from(r: Report) -> Self {
        SuiteResult { passed: r.passed(), details: r.checks }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec: Value,
    pub mode: Mode,
    pub suites: BTreeMap<String, SuiteResult>,
    pub bv_table: Option<Value>,
    /// Human-readable rendering of the BV table, if computed.
    #[serde(skip)]
    pub bv_text: Option<String>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.suites.values().all(|s| s.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec,
            "mode": self.mode,
            "suites": self.suites,
            "bv_table": self.bv_table,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("spec: {}\nmode: {:?}\n", self.spec, self.mode);
        for (name, s) in &self.suites {
            let failed = s.details.iter().filter(|c| !c.passed).count();
            let tag = if s.passed { "PASS" } else { "FAIL" };
            out += &format!("[{tag}] {name}: {}/{} checks passed\n", s.details.len() - failed, s.details.len());
            for c in s.details.iter().filter(|c| !c.passed) {
                out += &format!("    failed: {} {}\n", c.name, c.detail);
            }
        }
        if let Some(t) = &self.bv_text {
            out += "\n";
            out += t;
        }
        out
    }
}

/// Resolution and duality identities, always over ℚ(q).
fn exact_suite(spec: &GwaSpec<RatFunc>, suite: Suite) -> Result<Report> {
    match suite {
        Suite::Resolution => verify_resolution(&build_resolution(spec)),
        Suite::Duality => {
            let dd = build_duality(spec)?;
            let mut rep = verify_squares(&dd)?;
            rep.absorb("", verify_homotopies(&dd)?);
            Ok(rep)
        }
        _ => unreachable!("not an exact-only suite"),
    }
}

/// Dimensions, explicit cocycles and the `𝔳` non-boundary check.
pub fn cohomology_suite<F: Scalar>(spec: &GwaSpec<F>, grid: &[usize], wmax: i64) -> Result<Report> {
    let res = build_resolution(spec);
    let basis = cohomology_basis(spec)?;
    let mut rep = Report::new();
    let mut want: Vec<Option<usize>> = basis.dims().into_iter().map(Some).collect();
    want.extend([Some(0), Some(0)]);
    let mut weights = vec![0];
    for w in 1..=wmax {
        weights.extend([w, -w]);
    }
    let table = cohomology_dims(&res, Side::S, &weights, 5, grid)?;
    let got = table.dims_at(0);
    rep.push("weight-0 dims in degrees 0..4", got == want, format!("{got:?} vs {want:?}"));
    for &w in &weights[1..] {
        let got = table.dims_at(w);
        rep.push(format!("weight {w} dims vanish"), got.iter().all(|d| *d == Some(0)), format!("{got:?}"));
    }
    for b in &basis.elems {
        rep.push(format!("{} is a cocycle", b.label), is_cocycle_s(&res, &b.rep, b.degree)?, "");
    }
    rep.absorb("", verify_coboundary_witnesses(&res)?);
    if let Some(v) = basis.get("v") {
        let cx = instantiate(&res, Side::S);
        let mut hits = Vec::new();
        for &n in grid {
            if cx.solve_boundary(2, 0, &v.rep, n)?.is_some() {
                hits.push(n);
            }
        }
        rep.push("v is not a coboundary in any window", hits.is_empty(), format!("windows {grid:?}"));
    }
    Ok(rep)
}

pub fn t_homology_suite<F: Scalar>(spec: &GwaSpec<F>, grid: &[usize]) -> Result<Report> {
    verify_t_homology(&build_duality(spec)?, grid)
}

/// The comparison, Connes relations, `⟨1[z^j]⟩ = 0` and the full table.
pub fn bv_suite<F: Scalar>(spec: &GwaSpec<F>, seed: u64) -> Result<(Report, Value, String)> {
    let ctx = bv_context(spec)?;
    let mut rep = verify_eta(ctx.comparison(), ctx.duality().resolution())?;
    rep.absorb("", verify_connes(spec, seed, 50)?);
    for j in 2..=5 {
        let found = ctx.z_power_boundary(j)?.is_some();
        rep.push(format!("1[z^{j}] is a Hochschild boundary"), found, "");
    }
    let table = bv_table_from(&ctx)?;
    rep.absorb("", table.checks.clone());
    Ok((rep, table.to_json(), table.render_text()))
}

fn spec_json(config: &RunConfig, spec: &GwaSpec<RatFunc>, q0: Option<String>) -> Value {
    json!({
        "source": config.source,
        "p": spec.p().to_string(),
        "e": spec.e(),
        "seed": config.seed,
        "q0": q0,
    })
}

/// Run the selected suites. Errors are returned only for invalid input;
/// failures inside a suite are recorded in its result.
pub fn run_report(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let spec = config.build_spec()?;
    if config.suites.iter().any(|s| s.needs_squarefree()) {
        skew_cy_analyze(&spec).require_squarefree(spec.p())?;
    }
    let specialized = match config.mode {
        Mode::Specialize => Some(specialize_seeded(&spec, config.seed)?),
        Mode::Exact => None,
    };
    let mut suites = BTreeMap::new();
    let (mut bv_table, mut bv_text) = (None, None);
    let mut suites_sel = config.suites.clone();
    suites_sel.sort();
    suites_sel.dedup();
    for suite in suites_sel {
        let outcome: Result<Report> = match (suite, &specialized) {
            (Suite::Resolution | Suite::Duality, _) => exact_suite(&spec, suite),
            (Suite::Cohomology, Some((_, s))) => cohomology_suite(s, &config.grid, config.wmax),
            (Suite::Cohomology, None) => cohomology_suite(&spec, &config.grid, config.wmax),
            (Suite::THomology, Some((_, s))) => t_homology_suite(s, &config.grid),
            (Suite::THomology, None) => t_homology_suite(&spec, &config.grid),
            (Suite::BvTable, sp) => {
                let r = match sp {
                    Some((_, s)) => bv_suite(s, config.seed),
                    None => bv_suite(&spec, config.seed),
                };
                r.map(|(rep, js, text)| {
                    bv_table = Some(js);
                    bv_text = Some(text);
                    rep
                })
            }
        };
        let result = outcome.unwrap_or_else(|e| {
            let mut r = Report::new();
            r.push("suite completed", false, e.to_string());
            r
        });
        suites.insert(suite.name().to_string(), result.into());
    }
    let q0 = specialized.map(|(q, _)| q.to_string());
    Ok(RunReport { spec: spec_json(config, &spec, q0), mode: config.mode, suites, bv_table, bv_text })
}

/// A cochain written as `(a, b, …)`.
pub fn render_vector<F: Scalar>(v: &[GwaElem<F>]) -> String {
    format!("({})", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(source: SpecSource, suites: Vec<Suite>) -> RunConfig {
        RunConfig { source, mode: Mode::Specialize, seed: 1, grid: vec![6, 8, 10, 12], wmax: 1, suites }
    }

    #[test]
    fn podles_duality_report_round_trips() {
        let c = config(SpecSource::Podles { u: "0".into(), v: "1".into() }, vec![Suite::Duality]);
        let r = run_report(&c).unwrap();
        assert!(r.passed());
        assert!(r.suites["duality"].details.iter().any(|c| c.name == "d3·f2 = 0"));
        let js = r.to_json();
        let back: RunReport = serde_json::from_value(js.clone()).unwrap();
        assert_eq!(back.suites, r.suites);
        assert_eq!(back.to_json(), js);
    }

    #[test]
    fn invalid_inputs() {
        let mut c = config(SpecSource::Custom { p: "z^2".into(), e: 1 }, vec![Suite::BvTable]);
        assert!(matches!(run_report(&c), Err(Error::NotSkewCalabiYau(_))));
        c.suites = vec![Suite::Resolution];
        assert!(run_report(&c).unwrap().passed());
        c.grid = vec![8, 6];
        assert!(matches!(run_report(&c), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn seeded_runs_reproducible() {
        let c = config(SpecSource::Custom { p: "z^2 - 1".into(), e: 1 }, vec![Suite::BvTable]);
        let a = run_report(&c).unwrap().to_json();
        let b = run_report(&c).unwrap().to_json();
        assert_eq!(a, b);
        assert_eq!(a["suites"]["bv-table"]["passed"], Value::Bool(true));
    }
}
