//! One line per acceptance criterion; the test fails if any line fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{body, cube, random_hull, slab};
use facetwise::cli::generate::Family;
use facetwise::covering::{covering_number_bounds, verify_covering, CoverOptions, GridOptions};
use facetwise::polytope::{facet_enumeration, EnumerationOptions, Point, Polytope};
use facetwise::sphere::{exact_cap_measure, exp_cap_bound, sample_sphere, sharp_cap_bound, SeedStream};
use facetwise::verify::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn cap_oracles() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for k in 1..=99 {
        let h = k as f64 / 100.0;
        let e3 = (exact_cap_measure(3, h).map_err(|e| e.to_string())? - (1.0 - h) / 2.0).abs();
        let e2 = (exact_cap_measure(2, h).map_err(|e| e.to_string())? - h.acos() / std::f64::consts::PI).abs();
        worst = worst.max(e3).max(e2);
    }
    ensure(worst <= 1e-12, || format!("max error {worst:e}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("max error {worst:.1e} over 99 heights"))
}

fn bound_domination() -> Outcome {
    let start = Instant::now();
    let mut violations = 0;
    let mut checked = 0;
    for n in 3..=40 {
        for k in 1..=19 {
            let h = 0.05 * k as f64;
            let exact = exact_cap_measure(n, h).map_err(|e| e.to_string())?;
            let a = exp_cap_bound(n, h).map_err(|e| e.to_string())?;
            let b = sharp_cap_bound(n, h).map_err(|e| e.to_string())?.value();
            checked += 1;
            if exact > a.min(b) {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("0 violations in {checked} (n, h) pairs"))
}

fn facet_counts() -> Outcome {
    let start = Instant::now();
    let count = |f: Family, n: usize| body(f, n).facets().len();
    for n in 2..=5 {
        ensure(count(Family::Cube, n) == 2 * n, || format!("cube n={n}"))?;
    }
    for n in 2..=6 {
        ensure(count(Family::Cross, n) == 1 << n, || format!("cross n={n}"))?;
        ensure(count(Family::Simplex, n) == n + 1, || format!("simplex n={n}"))?;
    }
    let mut duals = 0;
    for p in [body(Family::Cube, 4), body(Family::Cross, 5), body(Family::Simplex, 6), random_hull(4, 60, 3)] {
        let q = p.polar().map_err(|e| e.to_string())?;
        ensure(q.facets().len() == p.vertices().len() && q.vertices().len() == p.facets().len(), || {
            "polar counts differ".into()
        })?;
        duals += 1;
    }
    let v = common::vertices(Family::Cross, 4);
    let brute = facet_enumeration(&v, &EnumerationOptions::exhaustive()).map_err(|e| e.to_string())?;
    ensure(brute.len() == 16, || "exhaustive cross n=4".into())?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("cube n<=5, cross n<=6, simplex n<=6, {duals} polar pairs"))
}

fn metric_functionals() -> Outcome {
    let mut checks = Vec::new();
    for n in 2..=6 {
        checks.push((format!("cube n={n}"), body(Family::Cube, n), 1.0));
        checks.push((format!("cross n={n}"), body(Family::Cross, n), 1.0 / (n as f64).sqrt()));
    }
    checks.push(("slab(1.8, 0.1)".into(), slab(3, 1.8, 0.1), 0.1));
    checks.push(("slab(1.8, 0.1) n=2".into(), slab(2, 1.8, 0.1), 0.1));
    let mut worst: f64 = 0.0;
    for (name, p, r) in &checks {
        let err = (p.inradius_at_origin() - r).abs();
        ensure(err <= 1e-9, || format!("{name}: inradius off by {err:e}"))?;
        let stream = SeedStream::new(p.dim() as u64);
        for i in 0..1000 {
            let theta = sample_sphere(p.dim(), &mut stream.rng(i));
            let rho = p.radial(&theta).map_err(|e| e.to_string())?;
            let x: Vec<f64> = theta.iter().map(|c| c * 0.5).collect();
            let product = p.gauge(&x).map_err(|e| e.to_string())? / 0.5 * rho;
            worst = worst.max((product - 1.0).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("gauge * radial off by {worst:e}"))?;
    Ok(format!("{} bodies, max |gauge*radial - 1| = {worst:.1e}", checks.len()))
}

fn covering_sandwich() -> Outcome {
    let start = Instant::now();
    let bounds = |p: &Polytope| covering_number_bounds(p, &CoverOptions::for_dim(p.dim())).map_err(|e| e.to_string());
    let s = bounds(&slab(2, 1.8, 0.1))?;
    ensure(s.n_low == 2 && s.n_up == Some(2) && s.certificate().is_certified(), || {
        format!("slab gave ({}, {:?})", s.n_low, s.n_up)
    })?;
    let q = bounds(&cube(2, 0.5))?;
    ensure(q.n_low == 1 && q.n_up == Some(1), || format!("square gave ({}, {:?})", q.n_low, q.n_up))?;
    let generated = [
        body(Family::Cube, 2),
        body(Family::Cube, 3),
        body(Family::Cross, 3),
        body(Family::Cross, 4),
        body(Family::Simplex, 3),
        slab(3, 1.8, 0.1),
        cube(2, 2.0),
        random_hull(3, 40, 5),
        random_hull(4, 300, 1),
    ];
    for p in &generated {
        let b = bounds(p)?;
        let up = b.n_up.ok_or("no certified cover")?;
        ensure(b.n_low <= up, || format!("N_low {} > N_up {up}", b.n_low))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("slab (2, 2), square (1, 1), N_low <= N_up on {} bodies", generated.len()))
}

struct PointwiseRun {
    name: &'static str,
    claims: Vec<ClaimReport>,
}

fn pointwise_runs() -> Result<Vec<PointwiseRun>, String> {
    let opts = PointwiseOptions { epsilon: 0.3, samples: 10_000, seed: 2024 };
    let s = slab(3, 1.8, 0.1);
    let sb = covering_number_bounds(&s, &CoverOptions::for_dim(3)).map_err(|e| e.to_string())?;
    ensure(sb.n_up == Some(2) && sb.certificate().is_certified(), || "slab cover is not a certified pair".into())?;
    let h = random_hull(4, 300, 1);
    ensure(h.circumradius_at_origin() <= 1.0 + 1e-12, || "hull leaves the ball".into())?;
    let hc = verify_covering(&h, &[Point::origin(4)], GridOptions::for_dim(4)).map_err(|e| e.to_string())?;
    ensure(hc.is_certified(), || "trivial cover not certified".into())?;

    let mut runs = Vec::new();
    // the slab at eps 0.6 keeps the exact union bound positive
    let wide = PointwiseOptions { epsilon: 0.6, ..opts };
    for (name, p, cert, o) in [
        ("slab", &s, sb.certificate(), &opts),
        ("random hull", &h, &hc, &opts),
        ("slab at eps 0.6", &s, sb.certificate(), &wide),
    ] {
        let mut claims = check_radial_bound(p, cert, o).map_err(|e| e.to_string())?;
        claims.extend(check_normal_alignment(p, cert, o).map_err(|e| e.to_string())?);
        runs.push(PointwiseRun { name, claims });
    }
    Ok(runs)
}

fn pointwise(runs: &[PointwiseRun], start: Instant) -> Outcome {
    let mut accepted = Vec::new();
    for run in runs {
        for id in [ClaimKind::RadialPointwise, ClaimKind::NormalAlignment, ClaimKind::NormalNet] {
            let c = run.claims.iter().find(|c| c.id == id).ok_or("missing claim")?;
            let mc = c.monte_carlo.ok_or("missing sample info")?;
            ensure(mc.accepted >= 10_000, || format!("{}: {} accepted", run.name, mc.accepted))?;
            ensure(c.verdict == Verdict::Pass, || {
                format!("{} {:?}: {} exceptions", run.name, id, c.details["exceptions"])
            })?;
            if id == ClaimKind::RadialPointwise {
                accepted.push(format!("{} {}", run.name, mc.accepted));
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("0 exceptions; accepted: {}", accepted.join(", ")))
}

fn measure(runs: &[PointwiseRun]) -> Outcome {
    let mut summary = Vec::new();
    for run in runs {
        let c = run
            .claims
            .iter()
            .find(|c| c.id == ClaimKind::NearOrthogonalExactUnion)
            .ok_or("missing claim")?;
        ensure(c.passed(), || format!("{}: {:?}", run.name, c.details))?;
        summary.push(format!("{} {:?}", run.name, c.verdict).to_lowercase());
    }
    Ok(summary.join(", "))
}

fn formula_suite() -> Outcome {
    let mut checks = 0;
    for n in [30usize, 50, 100] {
        let top = ((n as f64 / 8.0).exp().ceil() as u64 - 1).min(200);
        let lo = 3.0 * 3f64.sqrt() / (n as f64).sqrt();
        for big_n in 3..top {
            for k in 0..=10 {
                let r = lo + (1.0 - lo) * k as f64 / 10.0;
                let here = facet_lower_bound(n, big_n, r).map_err(|e| e.to_string())?;
                let next = facet_lower_bound(n, big_n + 1, r).map_err(|e| e.to_string())?;
                ensure(next.ln() < here.ln(), || format!("not decreasing in N at n={n} N={big_n}"))?;
                if k < 10 {
                    let up = facet_lower_bound(n, big_n, r + (1.0 - lo) / 10.0).map_err(|e| e.to_string())?;
                    ensure(up.ln() > here.ln(), || format!("not increasing in r at n={n} N={big_n}"))?;
                }
                checks += 2;
            }
        }
        for big_n in 3..=20 {
            ensure(check_simplified_consistency(n, big_n).verdict == Verdict::Pass, || {
                format!("simplified bound exceeds full at n={n} N={big_n}")
            })?;
            let steps = check_proof_steps(n, big_n, 1.0);
            ensure(steps.verdict == Verdict::Pass, || format!("proof steps fail at n={n} N={big_n}"))?;
            checks += 2;
        }
    }
    Ok(format!("{checks} comparisons in log space"))
}

fn desk_scale_substitute() -> Outcome {
    // An end-to-end instance needs n >= 27 and a certified N in [3, e^{n/8});
    // grid certification there is out of reach, so each ingredient is
    // checked on its own (criteria 6-8) and the bound on synthetic tuples.
    let tuples = [(100usize, 3u64, 1.0, 67.0, Verdict::Pass), (100, 3, 1.0, 60.0, Verdict::Fail), (100, 10, 0.9, 40.0, Verdict::Pass), (10, 3, 1.0, 5.0, Verdict::Skipped)];
    for (n, big_n, r, log10, expected) in tuples {
        let c = check_facet_bound(&FacetBoundInputs { n, covering: big_n, provenance: Provenance::Exact, r, facet_count_log10: log10 });
        ensure(c.verdict == expected, || format!("({n}, {big_n}, {r}, 10^{log10}) gave {:?}", c.verdict))?;
    }
    let h = random_hull(3, 30, 2);
    let b = covering_number_bounds(&h, &CoverOptions::for_dim(3)).map_err(|e| e.to_string())?;
    let gated = check_theorem(&h, &b);
    ensure(gated[0].verdict == Verdict::Skipped, || "low-dimensional polytope was not gated".into())?;
    Ok("not reproducible end to end at desk scale; ingredients and 4 synthetic tuples checked".into())
}

fn determinism() -> Outcome {
    let cases: [&[&str]; 3] = [
        &["verify-prop3", "--family", "slab", "--n", "3", "--a", "1.8", "--b", "0.1", "--epsilon", "0.3", "--samples", "20000", "--seed", "11"],
        &["verify-prop4", "--family", "random-hull", "--n", "4", "--m", "300", "--seed", "1", "--cover", "origin", "--epsilon", "0.3", "--samples", "20000"],
        &["verify-theorem", "--family", "random-hull", "--n", "3", "--m", "30", "--seed", "5"],
    ];
    for args in cases {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "4", "1"] {
            let out = Command::new(env!("CARGO_BIN_EXE_facetwise"))
                .args(args)
                .env("FW_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(!out.stdout.is_empty(), || format!("{}: {}", args[0], String::from_utf8_lossy(&out.stderr)))?;
            outputs.push(out.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{} output differs", args[0]))?;
    }
    Ok(format!("{} commands byte-identical under FW_THREADS 1 and 4", cases.len()))
}

#[test]
fn acceptance() {
    let pointwise_start = Instant::now();
    let runs = pointwise_runs();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "cap-measure oracles", cap_oracles()),
        (2, "bound domination", bound_domination()),
        (3, "facet counts", facet_counts()),
        (4, "metric functionals", metric_functionals()),
        (5, "covering sandwich", covering_sandwich()),
        (6, "pointwise radial and normal checks", runs.as_ref().map_err(Clone::clone).and_then(|r| pointwise(r, pointwise_start))),
        (7, "near-orthogonal measure", runs.as_ref().map_err(Clone::clone).and_then(|r| measure(r))),
        (8, "facet bound formula suite", formula_suite()),
        (9, "end-to-end instance (substitute)", desk_scale_substitute()),
        (10, "determinism", determinism()),
    ];
    let mut failed = Vec::new();
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail}"),
            Err(why) => {
                println!("criterion {k:>2} FAIL  {name}: {why}");
                failed.push(*k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
