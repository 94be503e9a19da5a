//! Seeded corpora and the verification drivers built on them.
//!
//! Every driver evaluates corpus members in parallel, collects per-member
//! tallies in index order and reduces them sequentially, so a report depends
//! only on the seed and the configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enclosure::extended_real;
use crate::error::{Error, Result};
use crate::hardy::{envelope_norm, expected_bounded, hardy, GridConfig, HardyKind};
use crate::interp::{
    default_levels, functor_norm_with, holmstedt_k, intersection_norm, k_exact_l1_linf, k_upper_oracle,
    FunctorParams, LorentzCouple,
};
use crate::lorentz::{fmt_exp, LorentzParams, SpaceDescriptor};
use crate::stepfn::StepFunction;

/// Relative slack for pointwise and exact inequalities.
pub const EXACT_SLACK: f64 = 1e-12;
/// Relative slack for the lower end of the Hardy norm equivalence.
pub const ENCLOSURE_SLACK: f64 = 1e-6;
/// Tolerance of the K-functional oracle comparison.
pub const ORACLE_TOL: f64 = 1e-9;
/// Default bound on `max/min` of the functor-norm ratios.
pub const DEFAULT_EQUIVALENCE_BOUND: f64 = 64.0;
/// Default corpus size.
pub const DEFAULT_CORPUS_SIZE: usize = 1000;
/// Number of `(f, t)` pairs in the K-functional oracle comparison.
pub const DEFAULT_K_PAIRS: usize = 200;

/// Breakpoints are rounded to multiples of this, so that piece widths and
/// their partial sums are exact in `f64`.
const BREAKPOINT_QUANTUM: f64 = 1.0 / (1u64 << 36) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CorpusFlags {
    /// Give every member a positive tail value.
    pub positive_tail: bool,
    /// Zero out about a fifth of the pieces.
    pub allow_gaps: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub seed: u64,
    pub flags: CorpusFlags,
    pub functions: Vec<StepFunction>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    fn nonempty(&self) -> Result<()> {
        if self.functions.is_empty() {
            Err(Error::EmptyCorpus("verification needs at least one function".into()))
        } else {
            Ok(())
        }
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo_log2: f64, hi_log2: f64) -> f64 {
    rng.gen_range(lo_log2..hi_log2).exp2()
}

fn random_function(rng: &mut ChaCha8Rng, flags: CorpusFlags) -> StepFunction {
    let n = rng.gen_range(1..=12usize);
    let mut breakpoints: Vec<f64> = (0..n)
        .map(|_| (log_uniform(rng, -10.0, 10.0) / BREAKPOINT_QUANTUM).round() * BREAKPOINT_QUANTUM)
        .collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();
    let mut values: Vec<f64> = breakpoints.iter().map(|_| log_uniform(rng, -8.0, 8.0)).collect();
    if flags.allow_gaps {
        for v in values.iter_mut() {
            if rng.gen_bool(0.2) {
                *v = 0.0;
            }
        }
        if values.iter().all(|&v| v == 0.0) {
            values[0] = log_uniform(rng, -8.0, 8.0);
        }
    }
    let tail = if flags.positive_tail { log_uniform(rng, -8.0, 8.0) } else { 0.0 };
    StepFunction::new(breakpoints, values, tail).expect("generated pieces are valid")
}

/// `size` nonzero step functions: 1 to 12 pieces, breakpoints log-uniform in
/// `[2^-10, 2^10]`, values log-uniform in `[2^-8, 2^8]`.
pub fn generate_corpus(seed: u64, size: usize, flags: CorpusFlags) -> Result<Corpus> {
    if size == 0 {
        return Err(Error::EmptyCorpus("corpus size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions = (0..size).map(|_| random_function(&mut rng, flags)).collect();
    Ok(Corpus { seed, flags, functions })
}

/// Outcome of one check over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub check: String,
    pub config: String,
    #[serde(with = "extended_real")]
    pub min_ratio: f64,
    #[serde(with = "extended_real")]
    pub max_ratio: f64,
    /// Largest relative enclosure width seen (`0` for exact checks).
    #[serde(with = "extended_real")]
    pub max_width: f64,
    pub evaluated: usize,
    pub violations: usize,
    pub pass: bool,
    pub note: String,
    /// JSON of the first violating function, with the offending point.
    pub witness: Option<String>,
}

impl RatioReport {
    pub const CSV_HEADER: &'static str = "check,config,min_ratio,max_ratio,max_width,evaluated,violations,pass,note";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            csv_field(&self.check),
            csv_field(&self.config),
            self.min_ratio,
            self.max_ratio,
            self.max_width,
            self.evaluated,
            self.violations,
            self.pass,
            csv_field(&self.note)
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn reports_to_csv(reports: &[RatioReport]) -> String {
    let mut out = String::from(RatioReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn reports_to_json(reports: &[RatioReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

/// Per-member accumulator, merged in index order.
#[derive(Debug, Clone)]
struct Tally {
    min: f64,
    max: f64,
    width: f64,
    evaluated: usize,
    violations: usize,
    witness: Option<String>,
}

impl Default for Tally {
    fn default() -> Self {
        Self {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            width: 0.0,
            evaluated: 0,
            violations: 0,
            witness: None,
        }
    }
}

impl Tally {
    fn ratio(&mut self, r: f64) {
        self.min = self.min.min(r);
        self.max = self.max.max(r);
        self.evaluated += 1;
    }

    fn violation(&mut self, f: &StepFunction, at: impl FnOnce() -> String) {
        self.violations += 1;
        if self.witness.is_none() {
            self.witness = Some(format!("{{\"function\":{},{}}}", f.to_json(), at()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.width = self.width.max(other.width);
        self.evaluated += other.evaluated;
        self.violations += other.violations;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    fn report(self, check: &str, config: String, pass: bool, note: String) -> RatioReport {
        let (min, max) = if self.evaluated == 0 { (f64::NAN, f64::NAN) } else { (self.min, self.max) };
        RatioReport {
            check: check.to_string(),
            config,
            min_ratio: min,
            max_ratio: max,
            max_width: self.width,
            evaluated: self.evaluated,
            violations: self.violations,
            pass,
            note,
            witness: self.witness,
        }
    }
}

fn tally_corpus<F>(corpus: &Corpus, per_member: F) -> Result<Tally>
where
    F: Fn(&StepFunction) -> Result<Tally> + Send + Sync,
{
    corpus.nonempty()?;
    let tallies: Vec<Tally> = corpus.functions.par_iter().map(per_member).collect::<Result<_>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), Tally::merge))
}

/// A Hardy operator `H^{(U,W)}` or `H_{(V,W)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyOp {
    pub kind: HardyKind,
    pub index: f64,
    pub w: f64,
}

impl HardyOp {
    pub fn upper(u: f64, w: f64) -> Self {
        Self {
            kind: HardyKind::Upper,
            index: u,
            w,
        }
    }

    pub fn lower(v: f64, w: f64) -> Self {
        Self {
            kind: HardyKind::Lower,
            index: v,
            w,
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            HardyKind::Upper => format!("upper U={} W={}", fmt_exp(self.index), fmt_exp(self.w)),
            HardyKind::Lower => format!("lower V={} W={}", fmt_exp(self.index), fmt_exp(self.w)),
        }
    }
}

fn below(lhs: f64, rhs: f64, slack: f64) -> bool {
    lhs < rhs * (1.0 - slack)
}

/// Pointwise bounds at every grid point of every member:
/// `H^{(U,W)} f >= H^{(U,∞)} f >= f*` for the upper operator, and
/// `H_{(V,W)} f(t) >= f*(2t)` for the lower one. Passes iff no inequality
/// fails by more than [`EXACT_SLACK`].
///
/// For the lower operator the note also counts failures of the weaker bound
/// `H_{(V,W)} f(t) >= c f*(2t)`, `c = ((V/W)(2^{W/V} - 1))^{1/W}`, which is what
/// restricting the integral to `(t, 2t]` yields.
pub fn verify_pointwise_bounds(corpus: &Corpus, op: HardyOp, grid: &GridConfig) -> Result<RatioReport> {
    let scaled_constant = if op.w.is_infinite() {
        2f64.powf(1.0 / op.index)
    } else {
        ((op.index / op.w) * ((op.w / op.index).exp2() - 1.0)).powf(1.0 / op.w)
    };
    let scaled_failures = std::sync::atomic::AtomicUsize::new(0);
    let tally = tally_corpus(corpus, |f| {
        let mut t = Tally::default();
        let fs = f.rearrange();
        let env = hardy(op.kind, f, op.index, op.w, grid)?;
        match op.kind {
            HardyKind::Upper => {
                let sup = if op.w.is_infinite() {
                    None
                } else {
                    Some(hardy(HardyKind::Upper, f, op.index, f64::INFINITY, grid)?)
                };
                for &x in env.grid() {
                    let g = env.value_at(x);
                    let star = fs.value_at(x);
                    let mid = sup.as_ref().map_or(g, |s| s.value_at(x));
                    if sup.is_some() {
                        t.ratio(g / mid);
                        if below(g, mid, EXACT_SLACK) {
                            t.violation(f, || format!("\"t\":{x},\"lhs\":{g},\"rhs\":{mid}"));
                        }
                    }
                    if star > 0.0 {
                        t.ratio(mid / star);
                        if below(mid, star, EXACT_SLACK) {
                            t.violation(f, || format!("\"t\":{x},\"lhs\":{mid},\"rhs\":{star}"));
                        }
                    }
                }
            }
            HardyKind::Lower => {
                for &x in env.grid() {
                    let g = env.value_at(x);
                    let star = fs.value_at(2.0 * x);
                    if star == 0.0 {
                        continue;
                    }
                    t.ratio(g / star);
                    if below(g, star, EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{x},\"lhs\":{g},\"rhs\":{star}"));
                    }
                    if below(g, scaled_constant * star, EXACT_SLACK) {
                        scaled_failures.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    }
                }
            }
        }
        Ok(t)
    })?;
    let (check, note) = match op.kind {
        HardyKind::Upper => ("pointwise upper average dominates sup form and f*".to_string(), String::new()),
        HardyKind::Lower => (
            "pointwise lower average dominates f*(2t)".to_string(),
            format!(
                "failures of the bound with constant c={scaled_constant}: {}",
                scaled_failures.into_inner()
            ),
        ),
    };
    let pass = tally.violations == 0;
    Ok(tally.report(&check, op.describe(), pass, note))
}

/// Ratios `‖Hf‖_E / ‖f‖_E` (upper enclosure endpoint) over the corpus.
///
/// When the operator is expected to be bounded on `E`, passes iff every upper
/// endpoint is finite and the smallest ratio is at least `1 - ENCLOSURE_SLACK`.
/// Otherwise passes iff some compactly supported member has an infinite upper
/// endpoint, i.e. the divergence is detected. Members with infinite or zero
/// `‖f‖_E` are skipped.
pub fn verify_hardy_equivalence(
    corpus: &Corpus,
    space: &SpaceDescriptor,
    op: HardyOp,
    grid: &GridConfig,
) -> Result<RatioReport> {
    let bounded = expected_bounded(space, op.kind, op.index, op.w);
    let divergent_witnesses = std::sync::atomic::AtomicUsize::new(0);
    let tally = tally_corpus(corpus, |f| {
        let mut t = Tally::default();
        let norm = space.norm(f);
        if !(norm > 0.0 && norm.is_finite()) {
            return Ok(t);
        }
        let env = hardy(op.kind, f, op.index, op.w, grid)?;
        let enc = envelope_norm(&env, space.params);
        let ratio = enc.hi / norm;
        t.ratio(ratio);
        t.width = enc.relative_width();
        if enc.hi.is_infinite() && f.tail() == 0.0 {
            divergent_witnesses.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        if bounded && (enc.hi.is_infinite() || below(ratio, 1.0, ENCLOSURE_SLACK)) {
            t.violation(f, || format!("\"enclosure\":{},\"norm\":{norm}", enc_json(enc)));
        }
        Ok(t)
    })?;
    let divergent = divergent_witnesses.into_inner();
    let (pass, note) = if bounded {
        (
            tally.violations == 0 && tally.evaluated > 0,
            "expected bounded; ratio uses the upper enclosure endpoint".to_string(),
        )
    } else {
        (
            divergent > 0,
            format!("expected unbounded; {divergent} compactly supported members with infinite norm"),
        )
    };
    Ok(tally.report(
        "Hardy average norm equivalent to norm",
        format!("E={} {}", space.params, op.describe()),
        pass,
        note,
    ))
}

fn enc_json(e: crate::Enclosure) -> String {
    serde_json::to_string(&e).expect("enclosure serializes")
}

/// Ratios of the functor norm (with `r = p_0`) to `‖f‖_E`.
///
/// Passes iff every enclosure is finite and `max(hi/‖f‖) / min(lo/‖f‖) <= bound`.
pub fn verify_functor_equivalence(
    corpus: &Corpus,
    space: &SpaceDescriptor,
    couple: &LorentzCouple,
    theta: f64,
    bound: f64,
    grid: &GridConfig,
) -> Result<RatioReport> {
    let fp = FunctorParams::new(theta, couple.x0.p(), *space)?;
    let tally = tally_corpus(corpus, |f| {
        let mut t = Tally::default();
        let norm = space.norm(f);
        if !(norm > 0.0 && norm.is_finite()) {
            return Ok(t);
        }
        let enc = functor_norm_with(f, &fp, couple, grid)?;
        t.width = enc.relative_width();
        // min over lo/‖f‖ and max over hi/‖f‖
        t.min = enc.lo / norm;
        t.max = enc.hi / norm;
        t.evaluated = 1;
        if !enc.is_finite() {
            t.violation(f, || format!("\"enclosure\":{},\"norm\":{norm}", enc_json(enc)));
        }
        Ok(t)
    })?;
    let spread = tally.max / tally.min;
    let pass = tally.violations == 0 && tally.evaluated > 0 && spread <= bound;
    let note = format!("max/min ratio {spread} against bound {bound}");
    Ok(tally.report(
        "interpolation functor norm equivalent to norm",
        format!("E={} couple={} theta={} r={}", space.params, couple, theta, fp.r),
        pass,
        note,
    ))
}

fn k_grid() -> Vec<f64> {
    (-56..=56).map(|k| (k as f64 / 4.0).exp2()).collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// K-functional properties for `(L_1, L_∞)` on the corpus:
///
/// * the exact formula matches the truncation oracle on `pairs` seeded `(f, t)`;
/// * `K(·, f)` is non-decreasing, `K(t, f)/t` non-increasing, `K` midpoint-concave;
/// * `min(1, t) K(1, f) <= K(t, f) <= min(1, t) ‖f‖_{L_1 ∩ L_∞}`;
/// * `K(t, f + g) <= K(t, f) + K(t, g)` for consecutive members;
/// * Holmstedt's expression lies in `[1, 2]` times the exact K.
pub fn verify_k_properties(corpus: &Corpus, pairs: usize) -> Result<Vec<RatioReport>> {
    corpus.nonempty()?;
    let couple = LorentzCouple::l1_linf();
    let config = format!("couple={couple}");
    let mut reports = Vec::new();

    // oracle agreement on seeded pairs
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed ^ 0x4b5f_0ac1e);
    let sample: Vec<(usize, f64)> = (0..pairs)
        .map(|i| (i % corpus.len(), log_uniform(&mut rng, -12.0, 12.0)))
        .collect();
    let tallies: Vec<Tally> = sample
        .par_iter()
        .map(|&(i, t)| -> Result<Tally> {
            let f = &corpus.functions[i];
            let mut tally = Tally::default();
            let exact = k_exact_l1_linf(f, t)?;
            let oracle = k_upper_oracle(f, t, &couple, &default_levels(f))?;
            tally.ratio(oracle / exact);
            if !rel_close(oracle, exact, ORACLE_TOL) {
                tally.violation(f, || format!("\"t\":{t},\"oracle\":{oracle},\"exact\":{exact}"));
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let pass = t.violations == 0;
    reports.push(t.report(
        "exact K matches truncation oracle",
        format!("{config} pairs={pairs} tol={ORACLE_TOL}"),
        pass,
        String::new(),
    ));

    let grid = k_grid();
    type Check<'a> = (&'static str, Box<dyn Fn(&StepFunction, usize, &[f64]) -> Result<Tally> + Sync + 'a>);
    let checks: Vec<Check<'_>> = vec![
        (
            "K non-decreasing in t",
            Box::new(|f, _, ks| {
                let mut t = Tally::default();
                for (j, w) in ks.windows(2).enumerate() {
                    t.ratio(w[1] / w[0]);
                    if below(w[1], w[0], EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{}", k_grid()[j + 1]));
                    }
                }
                Ok(t)
            }),
        ),
        (
            "K(t)/t non-increasing in t",
            Box::new(|f, _, ks| {
                let mut t = Tally::default();
                let g = k_grid();
                for j in 0..ks.len() - 1 {
                    let (a, b) = (ks[j] / g[j], ks[j + 1] / g[j + 1]);
                    t.ratio(a / b);
                    if below(a, b, EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{}", g[j + 1]));
                    }
                }
                Ok(t)
            }),
        ),
        (
            "K midpoint concave",
            Box::new(|f, _, ks| {
                let mut t = Tally::default();
                let g = k_grid();
                for j in 0..ks.len() - 1 {
                    let mid = k_exact_l1_linf(f, 0.5 * (g[j] + g[j + 1]))?;
                    let chord = 0.5 * (ks[j] + ks[j + 1]);
                    t.ratio(mid / chord);
                    if below(mid, chord, EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{}", g[j]));
                    }
                }
                Ok(t)
            }),
        ),
        (
            "min(1,t) sum norm <= K <= min(1,t) intersection norm",
            Box::new(|f, _, ks| {
                let mut t = Tally::default();
                let g = k_grid();
                let k1 = k_exact_l1_linf(f, 1.0)?;
                let cap = intersection_norm(f, &LorentzCouple::l1_linf());
                for (j, &k) in ks.iter().enumerate() {
                    let m = g[j].min(1.0);
                    t.ratio(k / (m * k1));
                    if below(k, m * k1, EXACT_SLACK) || below(m * cap, k, EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{}", g[j]));
                    }
                }
                Ok(t)
            }),
        ),
        (
            "K triangle inequality",
            Box::new(|f, i, ks| {
                let mut t = Tally::default();
                let g = k_grid();
                let other = &corpus.functions[(i + 1) % corpus.len()];
                let sum = f.add(other);
                for (j, &k) in ks.iter().enumerate() {
                    let lhs = k_exact_l1_linf(&sum, g[j])?;
                    let rhs = k + k_exact_l1_linf(other, g[j])?;
                    t.ratio(lhs / rhs);
                    if below(rhs, lhs, EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{},\"other\":{}", g[j], other.to_json()));
                    }
                }
                Ok(t)
            }),
        ),
        (
            "Holmstedt expression within [1,2] of K",
            Box::new(|f, _, ks| {
                let mut t = Tally::default();
                let g = k_grid();
                for (j, &k) in ks.iter().enumerate() {
                    let h = holmstedt_k(f, g[j], &LorentzCouple::l1_linf(), 1.0)?;
                    let r = h / k;
                    t.ratio(r);
                    if below(r, 1.0, EXACT_SLACK) || r > 2.0 * (1.0 + EXACT_SLACK) {
                        t.violation(f, || format!("\"t\":{}", g[j]));
                    }
                }
                Ok(t)
            }),
        ),
    ];
    let ks: Vec<Vec<f64>> = corpus
        .functions
        .par_iter()
        .map(|f| grid.iter().map(|&t| k_exact_l1_linf(f, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for (name, check) in &checks {
        let tallies: Vec<Tally> = corpus
            .functions
            .par_iter()
            .enumerate()
            .map(|(i, f)| check(f, i, &ks[i]))
            .collect::<Result<_>>()?;
        let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
        let pass = t.violations == 0;
        reports.push(t.report(name, format!("{config} t=2^(k/4), |k|<=56"), pass, String::new()));
    }
    Ok(reports)
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pointwise,
    Hardy,
    Functor,
    KProperties,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub corpus_size: usize,
    pub grid: GridConfig,
    pub equivalence_bound: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            corpus_size: DEFAULT_CORPUS_SIZE,
            grid: GridConfig::default(),
            equivalence_bound: DEFAULT_EQUIVALENCE_BOUND,
        }
    }
}

/// Operators of the pointwise suite.
pub fn pointwise_configs() -> Vec<HardyOp> {
    let inf = f64::INFINITY;
    vec![
        HardyOp::upper(1.0, 1.0),
        HardyOp::upper(1.0, inf),
        HardyOp::upper(2.0, 1.0),
        HardyOp::lower(2.0, 1.0),
        HardyOp::lower(3.0, inf),
    ]
}

/// `(E, operator)` pairs of the Hardy equivalence suite; the last two sit on
/// the boundary where the operator is unbounded.
pub fn hardy_configs() -> Vec<(SpaceDescriptor, HardyOp)> {
    let inf = f64::INFINITY;
    let l22 = lorentz_space(2.0, 2.0);
    let l31 = lorentz_space(3.0, 1.0);
    vec![
        (l22, HardyOp::upper(1.0, 1.0)),
        (l22, HardyOp::upper(1.0, inf)),
        (l22, HardyOp::lower(3.0, 2.0)),
        (l31, HardyOp::upper(2.0, 1.0)),
        (l31, HardyOp::lower(4.0, inf)),
        (l22, HardyOp::upper(2.0, 1.0)),
        (l22, HardyOp::lower(2.0, 1.0)),
    ]
}

/// `(E, couple, Θ)` triples of the functor suite.
pub fn functor_configs() -> Vec<(SpaceDescriptor, LorentzCouple, f64)> {
    let inf = f64::INFINITY;
    let couple = |p0, q0, p1, q1| {
        LorentzCouple::new(LorentzParams::new(p0, q0).unwrap(), LorentzParams::new(p1, q1).unwrap()).unwrap()
    };
    vec![
        (lorentz_space(2.0, 2.0), couple(1.0, 1.0, 4.0, 4.0), 4.0 / 3.0),
        (lorentz_space(2.0, 2.0), couple(1.0, 2.0, inf, inf), 1.0),
        (lorentz_space(3.0, 1.0), couple(1.0, 1.0, inf, inf), 1.0),
        (lorentz_space(inf, inf), couple(1.0, 1.0, inf, inf), 1.0),
    ]
}

fn lorentz_space(p: f64, q: f64) -> SpaceDescriptor {
    SpaceDescriptor::lorentz(LorentzParams::new(p, q).unwrap()).unwrap()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<RatioReport>> {
    let corpus = generate_corpus(cfg.seed, cfg.corpus_size, CorpusFlags::default())?;
    let mut reports = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Pointwise {
        for op in pointwise_configs() {
            reports.push(verify_pointwise_bounds(&corpus, op, &cfg.grid)?);
        }
    }
    if all || suite == Suite::Hardy {
        for (e, op) in hardy_configs() {
            reports.push(verify_hardy_equivalence(&corpus, &e, op, &cfg.grid)?);
        }
    }
    if all || suite == Suite::Functor {
        for (e, couple, theta) in functor_configs() {
            reports.push(verify_functor_equivalence(
                &corpus,
                &e,
                &couple,
                theta,
                cfg.equivalence_bound,
                &cfg.grid,
            )?);
        }
    }
    if all || suite == Suite::KProperties {
        reports.extend(verify_k_properties(&corpus, DEFAULT_K_PAIRS)?);
    }
    Ok(reports)
}
