//! Acceptance criteria 1–8, one line each. Runs without the libtest harness so
//! the lines are printed by a plain `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gwa_bv::bv::{bv_context, bv_table, bv_table_from, connes_b, verify_connes, verify_eta, HochChain};
use gwa_bv::check::Report;
use gwa_bv::duality::{build_duality, verify_homotopies, verify_squares};
use gwa_bv::envelope::EnvElem;
use gwa_bv::gwa::{GwaElem, GwaSpec};
use gwa_bv::homology::{cohomology_basis, cohomology_dims, is_cocycle_s, verify_coboundary_witnesses, verify_t_homology, DEFAULT_GRID};
use gwa_bv::presets::{custom, preset_podles, preset_wpl, specialize_seeded, standard_specs, NamedSpec};
use gwa_bv::resolution::{build_resolution, instantiate, verify_resolution, Side};
use gwa_bv::scalars::{rat, RatFunc, Rational, Scalar};
use gwa_bv::{Error, Result};

const SEED: u64 = 1;
const WMAX: i64 = 3;

struct Outcome {
    report: Report,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.passed() && self.elapsed <= self.limit
    }
}

fn check_all(rep: &mut Report, prefix: &str, sub: Report) {
    for c in sub.checks {
        rep.push(format!("{prefix}: {}", c.name), c.passed, c.detail);
    }
}

/// The p ≁ z specs of the cohomology and BV criteria with their expected `n`.
fn p_not_z_family() -> Result<Vec<(String, GwaSpec<RatFunc>, usize)>> {
    Ok(vec![
        ("p = z^2 - 1".into(), custom("z^2 - 1", 1)?, 2),
        ("Podles (0, 1)".into(), preset_podles(&rat(0, 1), &rat(1, 1))?, 2),
        ("Podles (1, 1)".into(), preset_podles(&rat(1, 1), &rat(1, 1))?, 2),
        ("WP l=2".into(), preset_wpl(2)?, 3),
    ])
}

fn c1_resolution(specs: &[NamedSpec]) -> Result<Report> {
    let mut rep = Report::new();
    for s in specs {
        check_all(&mut rep, &s.name, verify_resolution(&build_resolution(&s.spec))?);
    }
    Ok(rep)
}

fn c2_duality(specs: &[NamedSpec]) -> Result<Report> {
    let mut rep = Report::new();
    for s in specs {
        let dd = build_duality(&s.spec)?;
        let squares = verify_squares(&dd)?;
        let homotopies = verify_homotopies(&dd)?;
        rep.push(format!("{}: six squares", s.name), squares.checks.len() == 6, "");
        for name in ["f0·g0 = p1⊗βp2 + 1⊗αp", "g2·f2 = p̃1⊗(p2β)~ + 1⊗(αp)~"] {
            rep.push(format!("{}: {name} present", s.name), homotopies.get(name).is_some(), "");
        }
        check_all(&mut rep, &s.name, squares);
        check_all(&mut rep, &s.name, homotopies);
    }
    Ok(rep)
}

fn c3_dims() -> Result<Report> {
    let mut rep = Report::new();
    let mut cases: Vec<(String, GwaSpec<RatFunc>, Vec<usize>)> =
        p_not_z_family()?.into_iter().map(|(name, s, n)| (name, s, vec![1, 1, n, 0, 0])).collect();
    cases.push(("p = z".into(), custom("z", 1)?, vec![1, 2, 2, 0, 0]));
    let mut weights = vec![0];
    for w in 1..=WMAX {
        weights.extend([w, -w]);
    }
    for (name, spec, want) in cases {
        let (q0, s) = specialize_seeded(&spec, SEED)?;
        let table = cohomology_dims(&build_resolution(&s), Side::S, &weights, 5, &DEFAULT_GRID)?;
        let want: Vec<Option<usize>> = want.into_iter().map(Some).collect();
        let got = table.dims_at(0);
        rep.push(format!("{name}: weight 0 dims"), got == want, format!("q0 = {q0}, got {got:?}"));
        for &w in &weights[1..] {
            let got = table.dims_at(w);
            rep.push(format!("{name}: weight {w} vanishes"), got.iter().all(|d| *d == Some(0)), format!("{got:?}"));
        }
    }
    Ok(rep)
}

fn c4_witnesses() -> Result<Report> {
    let mut rep = Report::new();
    let mut cases: Vec<(String, GwaSpec<RatFunc>)> = p_not_z_family()?.into_iter().map(|(n, s, _)| (n, s)).collect();
    cases.push(("p = z".into(), custom("z", 1)?));
    for (name, spec) in cases {
        let res = build_resolution(&spec);
        for b in &cohomology_basis(&spec)?.elems {
            rep.push(format!("{name}: {} is a cocycle", b.label), is_cocycle_s(&res, &b.rep, b.degree)?, "");
        }
        check_all(&mut rep, &name, verify_coboundary_witnesses(&res)?);
        let t = verify_t_homology(&build_duality(&spec)?, &DEFAULT_GRID[..1])?;
        for i in 1..=4 {
            let key = format!("∂2(u_{i}) = (0, 0, z^{i})");
            rep.push(format!("{name}: {key}"), t.get(&key).is_some_and(|c| c.passed), "");
        }
        let (_, s) = specialize_seeded(&spec, SEED)?;
        let sres = build_resolution(&s);
        let v = cohomology_basis(&s)?.get("v").expect("v").rep.clone();
        let cx = instantiate(&sres, Side::S);
        for n in DEFAULT_GRID {
            rep.push(format!("{name}: v not a coboundary at N = {n}"), cx.solve_boundary(2, 0, &v, n)?.is_none(), "");
        }
    }
    Ok(rep)
}

fn c5_connes() -> Result<Report> {
    let mut rep = Report::new();
    for (name, spec, _) in p_not_z_family()?.into_iter().chain([("p = z".into(), custom("z", 1)?, 1)]) {
        let ctx = bv_context(&spec)?;
        check_all(&mut rep, &format!("{name} exact"), verify_eta(ctx.comparison(), ctx.duality().resolution())?);
        let b = connes_b(&spec, &HochChain::from_elems(&GwaElem::z(), &[]))?;
        rep.push(format!("{name}: B(z[]) = 1[z]"), b == HochChain::from_elems(&GwaElem::one(), &[GwaElem::z()]), b.to_string());
        let (_, s) = specialize_seeded(&spec, SEED)?;
        check_all(&mut rep, &format!("{name} specialized"), verify_connes(&s, SEED, 50)?);
        let sctx = bv_context(&s)?;
        for i in 1..=4 {
            let found = sctx.z_power_boundary(i + 1)?.is_some();
            rep.push(format!("{name}: 1[z^{}] is a boundary", i + 1), found, "");
        }
    }
    Ok(rep)
}

fn nonzero<F: Scalar>(v: &[F]) -> bool {
    v.iter().any(|c| !c.is_zero())
}

fn c6_bv() -> Result<Report> {
    let mut rep = Report::new();
    for (name, spec, _) in p_not_z_family()?.into_iter().take(3) {
        let (_, s) = specialize_seeded(&spec, SEED)?;
        let t = bv_table(&s)?;
        let dims: Vec<usize> = (0..=2).map(|k| t.degrees.iter().filter(|d| **d == k).count()).collect();
        rep.push(format!("{name}: basis sizes (1, 1, 2)"), dims == [1, 1, 2], format!("{dims:?}"));
        let vi = t.index("v").expect("v");
        rep.push(format!("{name}: Δ(v) = s"), t.render(&t.delta[vi]) == "s", t.render(&t.delta[vi]));
        let others = (0..t.labels.len()).filter(|&i| i != vi).all(|i| !nonzero(&t.delta[i]));
        rep.push(format!("{name}: other Δ vanish"), others, "");
        let cups = (0..t.labels.len())
            .flat_map(|i| (0..t.labels.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| t.degrees[i] > 0 && t.degrees[j] > 0)
            .all(|(i, j)| !nonzero(&t.cup[i][j]));
        rep.push(format!("{name}: positive-degree cups vanish"), cups, "");
        rep.push(format!("{name}: brackets vanish"), !t.bracket.iter().flatten().any(|v| nonzero(v)), "");
        let certified = t.labels.iter().all(|l| t.checks.get(&format!("Δ({l}) certified by a Hochschild boundary")).is_some_and(|c| c.passed));
        rep.push(format!("{name}: Δ certified"), certified, "");
    }

    let spec = custom("z", 1)?;
    let ctx = bv_context(&spec)?;
    let t = bv_table_from(&ctx)?;
    rep.push("p = z: basis {1, s, t, v, u}", t.labels == ["1", "s", "t", "v", "u"], format!("{:?}", t.labels));
    let (si, ti, vi) = (t.index("s").unwrap(), t.index("t").unwrap(), t.index("v").unwrap());
    rep.push("p = z: s ⌣ t = -2v", t.render(&t.cup[si][ti]) == "(-2)·v", t.render(&t.cup[si][ti]));
    let (x, y, z) = (GwaElem::x(), GwaElem::y(), GwaElem::z());
    let two = RatFunc::from_i64(2);
    let want = vec![
        GwaElem::poly(spec.p().clone()),
        GwaElem::poly(spec.p_tilde()).neg(),
        spec.mul(&x, &z).scale(&two),
        spec.mul(&y, &z).scale(&(-two * spec.q().clone())),
    ];
    let raw = t.cup_cochains.iter().find(|(a, b, _)| a == "s" && b == "t").map(|(_, _, v)| v.clone());
    rep.push("p = z: cup cochain (p, -p~, 2xz, -2qyz)", raw.as_ref() == Some(&want), format!("{raw:?}"));
    rep.push("p = z: Δ(t) = -2", t.render(&t.delta[ti]) == "(-2)·1", t.render(&t.delta[ti]));
    rep.push("p = z: Δ(v) = s", t.render(&t.delta[vi]) == "s", t.render(&t.delta[vi]));
    let certified = t.labels.iter().all(|l| t.checks.get(&format!("Δ({l}) certified by a Hochschild boundary")).is_some_and(|c| c.passed));
    rep.push("p = z: Δ certified", certified, "");
    let nonzero_brackets: Vec<String> = (0..t.labels.len())
        .flat_map(|i| (0..t.labels.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| nonzero(&t.bracket[i][j]))
        .map(|(i, j)| format!("[{}, {}] = {}", t.labels[i], t.labels[j], t.render(&t.bracket[i][j])))
        .collect();
    rep.push("p = z: brackets vanish", nonzero_brackets.is_empty(), nonzero_brackets.join("; "));
    Ok(rep)
}

fn c7_headline() -> Result<Report> {
    let mut rep = Report::new();
    for l in 1..=3u32 {
        let spec = preset_wpl(l)?;
        let total = cohomology_basis(&spec)?.elems.len();
        rep.push(format!("WP l={l}: basis size l+3"), total == l as usize + 3, format!("{total}"));
        let (_, s) = specialize_seeded(&spec, SEED)?;
        let dims = cohomology_dims(&build_resolution(&s), Side::S, &[0], 5, &DEFAULT_GRID)?.dims_at(0);
        let sum: Option<usize> = dims.iter().copied().sum();
        rep.push(format!("WP l={l}: stabilized total l+3"), sum == Some(l as usize + 3), format!("{dims:?}"));
    }
    let podles: [(Rational, Rational, &str); 3] =
        [(rat(0, 1), rat(1, 1), "u^1"), (rat(1, 1), rat(1, 1), "u^0"), (rat(-3, 2), rat(2, 1), "u^0")];
    for (u, v, star) in podles {
        let b = cohomology_basis(&preset_podles(&u, &v)?)?;
        let labels = b.labels();
        rep.push(format!("Podles ({u}, {v}): total 4"), labels.len() == 4, format!("{labels:?}"));
        rep.push(format!("Podles ({u}, {v}): u* = {star}"), labels.iter().any(|l| l == star), format!("{labels:?}"));
    }
    Ok(rep)
}

fn c8_negative() -> Result<Report> {
    let mut rep = Report::new();
    let err = bv_table(&custom("z^2", 1)?).err();
    rep.push("p = z^2 refused", matches!(err, Some(Error::NotSkewCalabiYau(_))), format!("{err:?}"));
    let spec = custom("z^2 - 1", 1)?;
    let bad = build_resolution(&spec).with_entry(2, 0, 0, EnvElem::tensor(&GwaElem::x(), &GwaElem::one()));
    let caught = verify_resolution(&bad)?;
    let names: Vec<&str> = caught.failures().map(|c| c.name.as_str()).collect();
    rep.push("corrupted D2 caught", !names.is_empty(), names.join("; "));
    Ok(rep)
}

fn main() -> ExitCode {
    let specs = standard_specs(SEED).expect("standard specs");
    let secs = Duration::from_secs;
    type Runner<'a> = Box<dyn Fn() -> Result<Report> + 'a>;
    let criteria: Vec<(u32, &str, Duration, Runner)> = vec![
        (1, "resolution identities", secs(30), Box::new(|| c1_resolution(&specs))),
        (2, "duality squares and homotopies", secs(60), Box::new(|| c2_duality(&specs))),
        (3, "cohomology dimensions", secs(300), Box::new(c3_dims)),
        (4, "cocycle and boundary witnesses", secs(60), Box::new(c4_witnesses)),
        (5, "Connes operator and comparison map", secs(120), Box::new(c5_connes)),
        (6, "BV tables", secs(300), Box::new(c6_bv)),
        (7, "headline dimensions", secs(300), Box::new(c7_headline)),
        (8, "negative controls", secs(60), Box::new(c8_negative)),
    ];
    let mut outcomes = Vec::new();
    for (n, title, limit, run) in &criteria {
        let start = Instant::now();
        let report = run().unwrap_or_else(|e| {
            let mut r = Report::new();
            r.push("completed", false, e.to_string());
            r
        });
        let o = Outcome { report, elapsed: start.elapsed(), limit: *limit };
        let tag = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {n} [{tag}] {title}: {} in {:.1}s (limit {}s)",
            o.report.summary(),
            o.elapsed.as_secs_f64(),
            limit.as_secs()
        );
        for c in o.report.failures() {
            println!("    failed: {} {}", c.name, c.detail);
        }
        outcomes.push((*n, o));
    }

    // Criterion 6 has one known failure: for p = z the BV identity forces
    // [t, u] = -2u from Δ(t) = -2 and Δ(u) = 0, so the brackets cannot all vanish.
    // The target passes only if every other line passes and that is the sole failure.
    let mut ok = true;
    for (n, o) in &outcomes {
        if *n == 6 {
            let failed: Vec<&str> = o.report.failures().map(|c| c.name.as_str()).collect();
            let expected = failed == ["p = z: brackets vanish"]
                && o.report.get("p = z: brackets vanish").is_some_and(|c| c.detail.contains("[t, u] = (-2)·u"))
                && o.elapsed <= o.limit;
            println!("criterion 6 known failure confined to p = z brackets: {}", if expected { "yes" } else { "NO" });
            ok &= expected;
        } else {
            ok &= o.passed();
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
