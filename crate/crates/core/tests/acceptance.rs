//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs with `cargo test --test acceptance`.

mod common;

use std::f64::consts::SQRT_2;
use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ri_interp::counterexamples::{l1_tail_upper_bound, l1q_growth_lower_bound, sequence_rows};
use ri_interp::hardy::GridConfig;
use ri_interp::harness::{
    functor_configs, generate_corpus, hardy_configs, pointwise_configs, verify_functor_equivalence,
    verify_hardy_equivalence, verify_k_properties, verify_pointwise_bounds, CorpusFlags, RatioReport,
    DEFAULT_EQUIVALENCE_BOUND, ENCLOSURE_SLACK,
};
use ri_interp::interp::{functor_norm_with, LorentzCouple};
use ri_interp::lorentz::{
    aoki_rolewicz_kappa, estimate_boyd_indices, estimate_dilation_norm, estimate_quasi_triangle_constant,
    lorentz_norm,
};
use ri_interp::{FunctorParams, LorentzParams, SpaceDescriptor, StepFunction};

const INF: f64 = f64::INFINITY;
const SEED: u64 = 7;
const CORPUS_SIZE: usize = 1000;

/// Largest Hardy-average to norm ratio observed on the seed-7 corpus, per
/// bounded configuration of `hardy_configs`, rounded up in the third digit.
const HARDY_RATIO_CEILINGS: [f64; 5] = [1.72, 1.42, 1.74, 6.01, 4.01];

/// Empirical quasi-triangle constant of `L_{1,1/2}` on the seeded pairs.
const L1_HALF_QUASI_TRIANGLE: f64 = 1.9213962700473801;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn lorentz(p: f64, q: f64) -> LorentzParams {
    LorentzParams::new(p, q).unwrap()
}

fn space(p: f64, q: f64) -> SpaceDescriptor {
    SpaceDescriptor::lorentz(lorentz(p, q)).unwrap()
}

fn rearrangement() -> Outcome {
    let mut checked = 0usize;
    let mut bad = 0usize;
    for flags in [(false, false), (false, true), (true, true)] {
        for f in corpus_with(SEED, CORPUS_SIZE, flags.0, flags.1).functions {
            let fs = f.rearrange();
            let mut levels: Vec<f64> = f.values().to_vec();
            levels.push(f.tail());
            levels.push(0.0);
            levels.sort_by(f64::total_cmp);
            levels.dedup();
            let mids: Vec<f64> = levels.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            levels.extend(mids);
            levels.push(2.0 * f.sup());
            let equal = levels.iter().all(|&lam| f.distribution(lam) == fs.distribution(lam));
            let idempotent = fs.rearrange() == fs;
            checked += 1;
            if !(equal && idempotent && fs.is_non_increasing()) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{checked} functions, {bad} mismatches"))
}

fn lorentz_exactness() -> Outcome {
    let grid = [0.5, 1.0, 2.0, 3.0];
    let fs = corpus_with(SEED, CORPUS_SIZE, false, true).functions;
    let mut worst = 0.0f64;
    for (i, f) in fs.iter().enumerate() {
        let (p, q) = (grid[i % 4], grid[(i / 4) % 4]);
        worst = worst.max(rel_err(lorentz_norm(f, lorentz(p, q)), lorentz_norm_oracle(f, p, q)));
    }
    let degenerate_ok = fs
        .iter()
        .all(|f| [0.5, 1.0, 2.0].iter().all(|&q| lorentz_norm(f, lorentz(INF, q)) == INF));
    outcome(
        worst <= 1e-8 && degenerate_ok,
        format!(
            "{} cases, max relative error {worst:.2e} (tol 1e-8); (inf, q<inf) all infinite: {degenerate_ok}",
            fs.len()
        ),
    )
}

fn space_axioms() -> Outcome {
    let finite = corpus_with(SEED, CORPUS_SIZE, false, true).functions;
    let tails = corpus_with(SEED + 1, 200, true, true).functions;
    let mut params = Vec::new();
    for &p in &[0.5, 1.0, 2.0, INF] {
        for &q in &[0.5, 1.0, 2.0, INF] {
            if lorentz(p, q).is_nontrivial() {
                params.push(lorentz(p, q));
            }
        }
    }
    let mut failures: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for &ps in &params {
        let mut homogeneity = 0;
        let mut lattice = 0;
        let mut fatou = 0;
        let mut indicator = 0;
        for (i, f) in finite.iter().enumerate() {
            let n = lorentz_norm(f, ps);
            for lambda in [0.125, 2.0, 32.0] {
                if lorentz_norm(&f.scale(lambda).unwrap(), ps) != lambda * n {
                    homogeneity += 1;
                }
            }
            let g = &finite[(i + 1) % finite.len()];
            let smaller = [f.pointwise_min(g), f.capped_at(0.5 * f.sup()), f.excess_over(0.25 * f.sup())];
            if smaller.iter().any(|h| lorentz_norm(h, ps) > n * (1.0 + 1e-12)) {
                lattice += 1;
            }
            let (ok, _) = truncations_converge(f, ps);
            if !ok {
                fatou += 1;
            }
            let a = rng.gen_range(0.0..16.0);
            let b = a + rng.gen_range(-10.0f64..10.0).exp2();
            let m = lorentz_norm(&StepFunction::indicator(a, b).unwrap(), ps);
            if !(m.is_finite() && m > 0.0) {
                indicator += 1;
            }
        }
        for f in &tails {
            let (ok, _) = truncations_converge(f, ps);
            if !ok {
                fatou += 1;
            }
        }
        if homogeneity + lattice + fatou + indicator > 0 {
            failures.push(format!(
                "{ps}: P1 {homogeneity}, P2 {lattice}, P3 {fatou}, P4 {indicator}"
            ));
        }
    }
    let detail = if failures.is_empty() {
        format!("{} spaces x {} functions (+{} with positive tail), no violations", params.len(), finite.len(), tails.len())
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

/// Norms of `min(f, n) χ_(0,n]` for `n = 2^-4 .. 2^47` are non-decreasing and
/// reach `‖f‖`, or keep growing when `‖f‖ = ∞`.
fn truncations_converge(f: &StepFunction, ps: LorentzParams) -> (bool, f64) {
    let mut prev = 0.0;
    let mut midway = 0.0;
    let mut monotone = true;
    for k in -4..48 {
        let n = (k as f64).exp2();
        let cur = lorentz_norm(&f.truncate(n, n).unwrap(), ps);
        monotone &= cur >= prev * (1.0 - 1e-12);
        prev = cur;
        if k == 24 {
            midway = cur;
        }
    }
    let full = lorentz_norm(f, ps);
    let limit = if full.is_finite() { rel_err(prev, full) <= 1e-12 } else { prev > 2.0 * midway };
    (monotone && limit, prev)
}

fn dilation_and_boyd() -> Outcome {
    let fs = corpus(SEED, 200).functions;
    let mut worst = 0.0f64;
    for (p, q) in [(0.5, 1.0), (1.0, 1.0), (1.0, 0.5), (2.0, 2.0), (3.0, 1.0), (2.0, INF)] {
        let e = space(p, q);
        for a in [1.0 / 32.0, 1.0 / 3.0, 1.0, 3.0, 128.0] {
            let est = estimate_dilation_norm(&e, a, &fs).unwrap();
            worst = worst.max(rel_err(est, a.powf(-1.0 / p)));
        }
    }
    let s_values = [2.0, 32.0, 1024.0, (20.0f64).exp2()];
    let mut boyd_ok = true;
    let mut boyd = Vec::new();
    for (p, q) in [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0), (1.0, INF), (3.0, 3.0), (3.0, 1.0)] {
        let (lo, hi) = estimate_boyd_indices(&space(p, q), &s_values, &fs).unwrap();
        boyd_ok &= (lo - p).abs() <= 0.05 && (hi - p).abs() <= 0.05;
        boyd.push(format!("L_{{{p},{q}}}=({lo:.4},{hi:.4})"));
    }
    let e = space(3.0, 1.0);
    let grid: Vec<f64> = s_values.iter().flat_map(|&s| [s, 1.0 / s]).collect();
    let mut submult = true;
    for &a in &grid {
        for &b in &grid {
            let ab = estimate_dilation_norm(&e, a * b, &fs).unwrap();
            let prod = estimate_dilation_norm(&e, a, &fs).unwrap() * estimate_dilation_norm(&e, b, &fs).unwrap();
            submult &= ab <= prod * (1.0 + 1e-12);
        }
    }
    outcome(
        worst <= 1e-10 && boyd_ok && submult,
        format!(
            "max relative error of ||D_a|| {worst:.2e} (tol 1e-10); Boyd {}; submultiplicative: {submult}",
            boyd.join(" ")
        ),
    )
}

fn summarize(reports: &[RatioReport]) -> String {
    reports
        .iter()
        .map(|r| {
            format!(
                "[{}: {} min {:.6} max {:.6} violations {}]",
                r.config, if r.pass { "ok" } else { "failed" }, r.min_ratio, r.max_ratio, r.violations
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn pointwise_bounds() -> Outcome {
    let corpus = generate_corpus(SEED, CORPUS_SIZE, CorpusFlags::default()).unwrap();
    let reports: Vec<RatioReport> = pointwise_configs()
        .into_iter()
        .map(|op| verify_pointwise_bounds(&corpus, op, &GridConfig::default()).unwrap())
        .collect();
    let pass = reports.iter().all(|r| r.violations == 0);
    outcome(pass, summarize(&reports))
}

fn hardy_equivalence() -> Outcome {
    let corpus = generate_corpus(SEED, CORPUS_SIZE, CorpusFlags::default()).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut ceilings = HARDY_RATIO_CEILINGS.iter();
    for (e, op) in hardy_configs() {
        let r = verify_hardy_equivalence(&corpus, &e, op, &GridConfig::default()).unwrap();
        if ri_interp::hardy::expected_bounded(&e, op.kind, op.index, op.w) {
            let c = *ceilings.next().expect("one ceiling per bounded configuration");
            let ok = r.pass && r.min_ratio >= 1.0 - ENCLOSURE_SLACK && r.max_ratio <= c;
            pass &= ok;
            parts.push(format!("[{}: ratios in [{:.6}, {:.6}], C = {c}]", r.config, r.min_ratio, r.max_ratio));
        } else {
            pass &= r.pass;
            parts.push(format!("[{}: {}]", r.config, r.note));
        }
    }
    outcome(pass, parts.join(" "))
}

fn k_suite() -> Outcome {
    let corpus = generate_corpus(SEED, CORPUS_SIZE, CorpusFlags::default()).unwrap();
    let reports = verify_k_properties(&corpus, 200).unwrap();
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .map(|r| format!("[{}: {}]", r.check, if r.pass { "ok" } else { "failed" }))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(pass, detail)
}

fn functor_equivalence() -> Outcome {
    let corpus = generate_corpus(SEED, CORPUS_SIZE, CorpusFlags::default()).unwrap();
    let reports: Vec<RatioReport> = functor_configs()
        .into_iter()
        .map(|(e, couple, theta)| {
            verify_functor_equivalence(&corpus, &e, &couple, theta, DEFAULT_EQUIVALENCE_BOUND, &GridConfig::default())
                .unwrap()
        })
        .collect();
    let spreads_ok = reports.iter().all(|r| r.pass);

    let fine = GridConfig::with_points_per_decade(256).unwrap();
    let fp = FunctorParams::new(1.0, 1.0, space(2.0, 2.0)).unwrap();
    let chi = StepFunction::indicator(0.0, 1.0).unwrap();
    let enc = functor_norm_with(&chi, &fp, &LorentzCouple::l1_linf(), &fine).unwrap();
    let encloses = enc.lo <= SQRT_2 * (1.0 + 1e-12) && SQRT_2 <= enc.hi * (1.0 + 1e-12);
    let calibrated = encloses && enc.width() <= 1e-3;
    let spreads = reports.iter().map(|r| format!("[{}: {}]", r.config, r.note)).collect::<Vec<_>>().join(" ");
    outcome(
        spreads_ok && calibrated,
        format!("{spreads}; calibration [{}, {}] width {:.2e}", enc.lo, enc.hi, enc.width()),
    )
}

fn counterexample() -> Outcome {
    let q = 0.5;
    let rows = sequence_rows(q, &[1_000, 1_000_000]).unwrap();
    let growth = rows[1].l1q_partial - rows[0].l1q_partial;
    let growth_bound = l1q_growth_lower_bound(q, 1_000, 1_000_000).unwrap();
    let grows = growth >= growth_bound && growth_bound >= 1.0;

    // Σ_{k>10^3} f_k: the summed block up to 10^6 plus a bound on the rest.
    let tail_bound = l1_tail_upper_bound(q, 1_000).unwrap();
    let tail = rows[1].l1_partial - rows[0].l1_partial + l1_tail_upper_bound(q, 1_000_000).unwrap();
    let tail_ok = tail <= tail_bound && tail_bound < 0.15;

    let fs = corpus(SEED, 200).functions;
    let s_values = [2.0, 32.0, 1024.0, (20.0f64).exp2()];
    let (lo, hi) = estimate_boyd_indices(&space(1.0, 0.5), &s_values, &fs).unwrap();
    let boyd_ok = (lo - 1.0).abs() <= 0.05 && (hi - 1.0).abs() <= 0.05;
    outcome(
        grows && tail_ok && boyd_ok,
        format!(
            "l_(1,1/2) growth {growth:.4} >= integral bound {growth_bound:.4} >= 1: {grows}; \
             l_1 tail beyond 10^3 at most {tail:.4}, integral bound {tail_bound:.4}, bound < 0.15: {}; \
             Boyd of L_{{1,1/2}} ({lo:.4}, {hi:.4})",
            tail_bound < 0.15
        ),
    )
}

fn quasi_triangle() -> Outcome {
    let exact = aoki_rolewicz_kappa(1.0).unwrap() == 1.0 && aoki_rolewicz_kappa(2.0).unwrap() == 0.5;
    let fs = corpus_with(SEED, 20_000, false, true).functions;
    let pairs: Vec<(StepFunction, StepFunction)> = fs.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let c = estimate_quasi_triangle_constant(lorentz(1.0, 0.5), &pairs).unwrap();
    let in_range = (1.0..=2.0).contains(&c);
    let regression = c == L1_HALF_QUASI_TRIANGLE;
    outcome(
        exact && in_range && regression,
        format!(
            "kappa(1) = 1, kappa(2) = 1/2: {exact}; L_{{1,1/2}} constant on {} pairs {c:?} (recorded {L1_HALF_QUASI_TRIANGLE:?})",
            pairs.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("rearrangement correctness", rearrangement),
        ("Lorentz norm exactness", lorentz_exactness),
        ("space axioms", space_axioms),
        ("dilations and Boyd indices", dilation_and_boyd),
        ("pointwise Hardy inequalities", pointwise_bounds),
        ("Hardy average norm equivalence", hardy_equivalence),
        ("K-functional suite", k_suite),
        ("interpolation functor equivalence", functor_equivalence),
        ("L_1 and L_inf function outside L_(1,1/2)", counterexample),
        ("quasi-triangle constants", quasi_triangle),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{}] {name} ({:.1}s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
