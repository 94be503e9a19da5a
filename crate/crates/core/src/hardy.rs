//! Hardy-type averaging operators applied to the rearrangement.
//!
//! * upper: `(H^{(U,W)} f)(t) = t^{-1/U} (∫_0^t [v^{1/U} f*(v)]^W dv/v)^{1/W}`,
//!   and `t^{-1/U} sup_{0<v<t} v^{1/U} f*(v)` for `W = ∞`;
//! * lower: `(H_{(V,W)} f)(t) = t^{-1/V} (∫_t^∞ [v^{1/V} f*(v)]^W dv/v)^{1/W}`,
//!   and `t^{-1/V} sup_{v>t} v^{1/V} f*(v)` for `W = ∞`.
//!
//! On a step function the inner integrals are sums of power differences, so
//! both operators evaluate exactly. Norms of the outputs are not closed-form;
//! [`MonotoneEnvelope`] brackets them between piecewise power functions.
//!
//! The brackets rest on two monotonicity facts. Writing `g = H^{(U,W)} f` and
//! substituting `v = ts`, `g(t) = (∫_0^1 [s^{1/U} f*(ts)]^W ds/s)^{1/W}`, which
//! is non-increasing because `f*` is; and `t^{1/U} g(t)` is non-decreasing as
//! the integral of a nonnegative function over `(0, t)`. For
//! `g = H_{(V,W)} f` the same substitution over `(1, ∞)` shows `g` is
//! non-increasing, and `t^{1/V} g(t)` is non-increasing directly. So on a grid
//! cell `[a, b]`, `g` is squeezed between `g(b)`, `g(a)` and the powers through
//! those values with exponent `1/U` (resp. `1/V`).

use serde::{Deserialize, Serialize};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::kernel::power_integral;
use crate::lorentz::{fmt_exp, LorentzParams, SpaceDescriptor};
use crate::power::{PowerPiece, PowerPieces};
use crate::stepfn::StepFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardyKind {
    /// Averages over `(0, t)`, index `U`.
    Upper,
    /// Averages over `(t, ∞)`, index `V`.
    Lower,
}

/// Sampling grid of an envelope: log-spaced from the first breakpoint of `f*`
/// times `2^{-margin_log2}` to the last times `2^{margin_log2}`, merged with
/// the breakpoints of `f*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub points_per_decade: u32,
    pub margin_log2: i32,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            points_per_decade: 64,
            margin_log2: 20,
        }
    }
}

impl GridConfig {
    pub fn with_points_per_decade(points_per_decade: u32) -> Result<Self> {
        if points_per_decade == 0 {
            return Err(Error::Domain("grid needs at least one point per decade".into()));
        }
        Ok(Self {
            points_per_decade,
            ..Self::default()
        })
    }
}

/// Lower and upper bound of `g` on the head `(0, g_0]` or tail `(g_m, ∞)`.
/// Equal bounds mean the closed form is a single power there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub lower: PowerPiece,
    pub upper: PowerPiece,
}

impl Region {
    fn exact(p: PowerPiece) -> Self {
        Self { lower: p, upper: p }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// `f*/‖f‖_∞` as pieces `c[k]` on `(s[k-1], s[k]]` plus a tail value.
#[derive(Debug, Clone, PartialEq)]
struct Profile {
    s: Vec<f64>,
    c: Vec<f64>,
    tail: f64,
}

impl Profile {
    fn left(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.s[k - 1]
        }
    }

    fn value(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(self.tail)
    }

    fn locate(&self, t: f64) -> usize {
        self.s.partition_point(|&b| b < t)
    }
}

/// Per-piece closed forms of `H f / ‖f‖_∞`.
#[derive(Debug, Clone, PartialEq)]
enum Evaluator {
    Zero,
    Infinite,
    /// `g^W = A[k] t^{-γ} + c_k^W ∫_{s_{k-1}/t}^1 u^{γ-1} du`, `γ = W/U`.
    UpperIntegral { prof: Profile, w: f64, gamma: f64, prefix: Vec<f64> },
    /// `g = max(M[k] t^{-α}, c_k)`.
    UpperSup { prof: Profile, alpha: f64, prefix_max: Vec<f64> },
    /// `g^W = B[k+1] t^{-γ} + c_k^W ∫_1^{s_k/t} u^{γ-1} du`, `γ = W/V`.
    LowerIntegral { prof: Profile, w: f64, gamma: f64, suffix: Vec<f64> },
    /// `g = S[k] t^{-β}`.
    LowerSup { prof: Profile, beta: f64, suffix_max: Vec<f64> },
}

impl Evaluator {
    fn eval(&self, t: f64) -> f64 {
        match self {
            Evaluator::Zero => 0.0,
            Evaluator::Infinite => f64::INFINITY,
            Evaluator::UpperIntegral { prof, w, gamma, prefix } => {
                let k = prof.locate(t);
                let c = prof.value(k);
                let mut acc = if prefix[k] > 0.0 { prefix[k] * t.powf(-gamma) } else { 0.0 };
                if c > 0.0 {
                    acc += c.powf(*w) * power_integral(*gamma, prof.left(k) / t, 1.0);
                }
                acc.powf(1.0 / w)
            }
            Evaluator::UpperSup { prof, alpha, prefix_max } => {
                let k = prof.locate(t);
                let m = prefix_max[k];
                let from_left = if m > 0.0 { m * t.powf(-alpha) } else { 0.0 };
                from_left.max(prof.value(k))
            }
            Evaluator::LowerIntegral { prof, w, gamma, suffix } => {
                let k = prof.locate(t);
                if k >= prof.c.len() {
                    return 0.0;
                }
                let rest = suffix[k + 1];
                let mut acc = if rest > 0.0 { rest * t.powf(-gamma) } else { 0.0 };
                acc += prof.c[k].powf(*w) * power_integral(*gamma, 1.0, prof.s[k] / t);
                acc.powf(1.0 / w)
            }
            Evaluator::LowerSup { prof, beta, suffix_max } => {
                let k = prof.locate(t);
                if k >= prof.c.len() {
                    return 0.0;
                }
                suffix_max[k] * t.powf(-beta)
            }
        }
    }
}

/// Exact evaluator of a non-increasing Hardy average `g` together with
/// certified piecewise power brackets `lower <= g <= upper` on all of `(0, ∞)`.
///
/// Internally everything is normalized by `scale = ‖f‖_∞`, so scaling `f` by
/// a power of two scales every output bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneEnvelope {
    kind: HardyKind,
    index: f64,
    w: f64,
    scale: f64,
    eval: Evaluator,
    grid: Vec<f64>,
    grid_values: Vec<f64>,
    head: Option<Region>,
    tail: Option<Region>,
    lower: PowerPieces,
    upper: PowerPieces,
}

/// One row of the plot-ready sample table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl MonotoneEnvelope {
    pub fn kind(&self) -> HardyKind {
        self.kind
    }

    /// `U` for the upper operator, `V` for the lower one.
    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// `‖f‖_∞`; brackets are stored divided by it.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Whether the operator diverges at every `t` (lower operator on a
    /// function with a positive tail value).
    pub fn is_divergent(&self) -> bool {
        matches!(self.eval, Evaluator::Infinite)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("evaluation point must be positive and finite, got {t}")));
        }
        Ok(self.value_at(t))
    }

    pub(crate) fn value_at(&self, t: f64) -> f64 {
        crate::kernel::ext_mul(self.scale, self.eval.eval(t))
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// `g` at the grid points.
    pub fn grid_values(&self) -> Vec<f64> {
        self.grid_values.iter().map(|&v| crate::kernel::ext_mul(self.scale, v)).collect()
    }

    /// Analytic bounds on `(0, g_0]`, absent for zero or divergent envelopes.
    pub fn head(&self) -> Option<Region> {
        self.head.map(|r| self.scaled_region(r))
    }

    /// Analytic bounds on `(g_m, ∞)`, absent for zero or divergent envelopes.
    pub fn tail(&self) -> Option<Region> {
        self.tail.map(|r| self.scaled_region(r))
    }

    fn scaled_region(&self, r: Region) -> Region {
        let sc = |p: PowerPiece| PowerPiece {
            value: crate::kernel::ext_mul(p.value, self.scale),
            ..p
        };
        Region {
            lower: sc(r.lower),
            upper: sc(r.upper),
        }
    }

    pub fn lower(&self) -> PowerPieces {
        self.lower.scaled(self.scale)
    }

    pub fn upper(&self) -> PowerPieces {
        self.upper.scaled(self.scale)
    }

    /// Brackets divided by [`scale`](Self::scale).
    pub(crate) fn normalized_brackets(&self) -> (&PowerPieces, &PowerPieces) {
        (&self.lower, &self.upper)
    }

    /// Value and brackets at every grid point and at the geometric midpoint
    /// of every grid cell.
    pub fn samples(&self) -> Vec<Sample> {
        let mut ts = Vec::with_capacity(2 * self.grid.len());
        for (i, &t) in self.grid.iter().enumerate() {
            if i > 0 {
                ts.push((self.grid[i - 1] * t).sqrt());
            }
            ts.push(t);
        }
        ts.into_iter()
            .map(|t| Sample {
                t,
                value: self.value_at(t),
                lower: crate::kernel::ext_mul(self.scale, self.lower.eval(t)),
                upper: crate::kernel::ext_mul(self.scale, self.upper.eval(t)),
            })
            .collect()
    }

    pub fn norm(&self, params: LorentzParams) -> Enclosure {
        envelope_norm(self, params)
    }

    pub fn describe(&self) -> String {
        let name = match self.kind {
            HardyKind::Upper => "upper",
            HardyKind::Lower => "lower",
        };
        format!("{name}(index={}, W={})", fmt_exp(self.index), fmt_exp(self.w))
    }
}

fn check_index(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("{name} must be a positive real, got {v}")))
    }
}

fn check_w(w: f64) -> Result<()> {
    if w > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("W must lie in (0, inf], got {w}")))
    }
}

fn profile(f: &StepFunction) -> (Profile, f64) {
    let fs = f.rearrange();
    let m = fs.sup();
    let prof = Profile {
        s: fs.breakpoints().to_vec(),
        c: fs.values().iter().map(|&c| c / m).collect(),
        tail: fs.tail() / m,
    };
    (prof, m)
}

/// `H^{(U,W)} f` on the default grid.
pub fn hardy_upper(f: &StepFunction, u: f64, w: f64) -> Result<MonotoneEnvelope> {
    hardy_upper_with(f, u, w, &GridConfig::default())
}

/// `H_{(V,W)} f` on the default grid.
pub fn hardy_lower(f: &StepFunction, v: f64, w: f64) -> Result<MonotoneEnvelope> {
    hardy_lower_with(f, v, w, &GridConfig::default())
}

/// `f**_{(U)} = H^{(U,U)} f`; `U = 1` is the maximal average `f**`.
pub fn double_star(f: &StepFunction, u: f64) -> Result<MonotoneEnvelope> {
    hardy_upper(f, u, u)
}

/// `P_α f = H^{(1/α, 1)} f`.
pub fn p_alpha(f: &StepFunction, alpha: f64) -> Result<MonotoneEnvelope> {
    hardy_upper(f, 1.0 / alpha, 1.0)
}

/// `Q_α f = H_{(1/α, 1)} f`.
pub fn q_alpha(f: &StepFunction, alpha: f64) -> Result<MonotoneEnvelope> {
    hardy_lower(f, 1.0 / alpha, 1.0)
}

/// Dispatches on `kind`.
pub fn hardy(kind: HardyKind, f: &StepFunction, index: f64, w: f64, grid: &GridConfig) -> Result<MonotoneEnvelope> {
    match kind {
        HardyKind::Upper => hardy_upper_with(f, index, w, grid),
        HardyKind::Lower => hardy_lower_with(f, index, w, grid),
    }
}

pub fn hardy_upper_with(f: &StepFunction, u: f64, w: f64, grid: &GridConfig) -> Result<MonotoneEnvelope> {
    check_index("U", u)?;
    check_w(w)?;
    if f.is_zero() {
        return Ok(trivial(HardyKind::Upper, u, w, Evaluator::Zero));
    }
    let (prof, scale) = profile(f);
    let alpha = 1.0 / u;
    let n = prof.c.len();
    let (eval, head_value, tail_limit) = if w.is_infinite() {
        let mut prefix_max = vec![0.0f64; n + 1];
        for k in 0..n {
            prefix_max[k + 1] = prefix_max[k].max(prof.c[k] * prof.s[k].powf(alpha));
        }
        let head = prof.value(0);
        let limit = prof.tail;
        (Evaluator::UpperSup { prof, alpha, prefix_max }, head, limit)
    } else {
        let gamma = w / u;
        let mut prefix = vec![0.0; n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] + prof.c[k].powf(w) * power_integral(gamma, prof.left(k), prof.s[k]);
        }
        // On (0, s_1] the average of a constant is the constant times (U/W)^{1/W}.
        let factor = (u / w).powf(1.0 / w);
        let head = prof.value(0) * factor;
        let limit = prof.tail * factor;
        (Evaluator::UpperIntegral { prof, w, gamma, prefix }, head, limit)
    };
    let grid_pts = build_grid(profile_breakpoints(&eval), grid);
    let values: Vec<f64> = grid_pts.iter().map(|&t| eval.eval(t)).collect();
    let g0 = grid_pts[0];
    let gm = *grid_pts.last().unwrap();
    let vm = *values.last().unwrap();

    let head = Region::exact(PowerPiece::constant(0.0, g0, head_value));
    let tail = if tail_limit > 0.0 {
        Region {
            lower: PowerPiece::constant(gm, f64::INFINITY, tail_limit),
            upper: PowerPiece::constant(gm, f64::INFINITY, vm),
        }
    } else {
        Region::exact(PowerPiece::power(gm, f64::INFINITY, vm, gm, alpha))
    };

    let mut lower = vec![head.lower];
    let mut upper = vec![head.upper];
    for i in 0..grid_pts.len() - 1 {
        let (a, b) = (grid_pts[i], grid_pts[i + 1]);
        let (ga, gb) = (values[i], values[i + 1]);
        // lower: max(g(b), g(a)(a/t)^α), crossing at t_c
        if ga > gb {
            let tc = (a * (ga / gb).powf(u)).clamp(a, b);
            push_piece(&mut lower, PowerPiece::power(a, tc, ga, a, alpha));
            push_piece(&mut lower, PowerPiece::constant(tc, b, gb));
            // upper: min(g(a), g(b)(b/t)^α), crossing at t_u
            let tu = (b * (gb / ga).powf(u)).clamp(a, b);
            push_piece(&mut upper, PowerPiece::constant(a, tu, ga));
            push_piece(&mut upper, PowerPiece::power(tu, b, gb, b, alpha));
        } else {
            push_piece(&mut lower, PowerPiece::constant(a, b, gb));
            push_piece(&mut upper, PowerPiece::constant(a, b, ga));
        }
    }
    lower.push(tail.lower);
    upper.push(tail.upper);

    Ok(MonotoneEnvelope {
        kind: HardyKind::Upper,
        index: u,
        w,
        scale,
        eval,
        grid: grid_pts,
        grid_values: values,
        head: Some(head),
        tail: Some(tail),
        lower: PowerPieces::new(lower),
        upper: PowerPieces::new(upper),
    })
}

pub fn hardy_lower_with(f: &StepFunction, v: f64, w: f64, grid: &GridConfig) -> Result<MonotoneEnvelope> {
    check_index("V", v)?;
    check_w(w)?;
    if f.is_zero() {
        return Ok(trivial(HardyKind::Lower, v, w, Evaluator::Zero));
    }
    let (prof, scale) = profile(f);
    if prof.tail > 0.0 {
        // ∫_t^∞ v^{W/V - 1} dv diverges, as does sup_{v>t} v^{1/V}.
        return Ok(trivial(HardyKind::Lower, v, w, Evaluator::Infinite));
    }
    let beta = 1.0 / v;
    let n = prof.c.len();
    let (eval, total) = if w.is_infinite() {
        let mut suffix_max = vec![0.0f64; n + 1];
        for k in (0..n).rev() {
            suffix_max[k] = suffix_max[k + 1].max(prof.c[k] * prof.s[k].powf(beta));
        }
        (Evaluator::LowerSup { prof, beta, suffix_max }, None)
    } else {
        let gamma = w / v;
        let mut suffix = vec![0.0; n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] + prof.c[k].powf(w) * power_integral(gamma, prof.left(k), prof.s[k]);
        }
        let total = suffix[0];
        (Evaluator::LowerIntegral { prof, w, gamma, suffix }, Some(total))
    };
    let grid_pts = build_grid(profile_breakpoints(&eval), grid);
    let values: Vec<f64> = grid_pts.iter().map(|&t| eval.eval(t)).collect();
    let g0 = grid_pts[0];
    let gm = *grid_pts.last().unwrap();

    let exact_head = PowerPiece::power(0.0, g0, values[0], g0, beta);
    let head = match total {
        None => Region::exact(exact_head),
        // g(t) <= t^{-1/V} (∫_0^∞ ...)^{1/W}
        Some(total) => Region {
            lower: exact_head,
            upper: PowerPiece::power(0.0, g0, total.powf(1.0 / w) * g0.powf(-beta), g0, beta),
        },
    };
    let tail = Region::exact(PowerPiece::constant(gm, f64::INFINITY, 0.0));

    let mut lower = vec![head.lower];
    let mut upper = vec![head.upper];
    for i in 0..grid_pts.len() - 1 {
        let (a, b) = (grid_pts[i], grid_pts[i + 1]);
        push_piece(&mut lower, PowerPiece::power(a, b, values[i + 1], b, beta));
        push_piece(&mut upper, PowerPiece::power(a, b, values[i], a, beta));
    }
    lower.push(tail.lower);
    upper.push(tail.upper);

    Ok(MonotoneEnvelope {
        kind: HardyKind::Lower,
        index: v,
        w,
        scale,
        eval,
        grid: grid_pts,
        grid_values: values,
        head: Some(head),
        tail: Some(tail),
        lower: PowerPieces::new(lower),
        upper: PowerPieces::new(upper),
    })
}

fn trivial(kind: HardyKind, index: f64, w: f64, eval: Evaluator) -> MonotoneEnvelope {
    let value = if matches!(eval, Evaluator::Infinite) { f64::INFINITY } else { 0.0 };
    let pieces = PowerPieces::new(vec![PowerPiece::constant(0.0, f64::INFINITY, value)]);
    MonotoneEnvelope {
        kind,
        index,
        w,
        scale: 1.0,
        eval,
        grid: Vec::new(),
        grid_values: Vec::new(),
        head: None,
        tail: None,
        lower: pieces.clone(),
        upper: pieces,
    }
}

fn push_piece(out: &mut Vec<PowerPiece>, p: PowerPiece) {
    if p.hi > p.lo {
        out.push(p);
    }
}

fn profile_breakpoints(eval: &Evaluator) -> &[f64] {
    match eval {
        Evaluator::UpperIntegral { prof, .. }
        | Evaluator::UpperSup { prof, .. }
        | Evaluator::LowerIntegral { prof, .. }
        | Evaluator::LowerSup { prof, .. } => &prof.s,
        Evaluator::Zero | Evaluator::Infinite => &[],
    }
}

fn build_grid(breakpoints: &[f64], cfg: &GridConfig) -> Vec<f64> {
    let (first, last) = match (breakpoints.first(), breakpoints.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (1.0, 1.0),
    };
    let margin = 2f64.powi(cfg.margin_log2);
    let lo = first / margin;
    let hi = last * margin;
    let span = (hi / lo).ln();
    let steps = ((span / std::f64::consts::LN_10) * cfg.points_per_decade as f64).ceil().max(1.0) as usize;
    let step = span / steps as f64;
    let mut grid: Vec<f64> = (0..steps).map(|j| lo * (j as f64 * step).exp()).collect();
    grid.push(hi);
    grid.extend_from_slice(breakpoints);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Certified `[lo, hi] ∋ ‖g‖_{p,q}`: the Lorentz functional of the lower and
/// upper brackets. The functional is monotone and agrees with the Lorentz
/// quasi-norm on non-increasing functions, so it orders the brackets around
/// the true norm.
pub fn envelope_norm(env: &MonotoneEnvelope, params: LorentzParams) -> Enclosure {
    let (p, q) = (params.p(), params.q());
    let lo = env.lower.lorentz_functional(p, q);
    let hi = env.upper.lorentz_functional(p, q);
    Enclosure::new(lo.min(hi), hi).scale(env.scale)
}

/// Whether the operator is expected to be bounded on `E`: the upper operator
/// iff `p_E > U`, the lower one iff `q_E < V`. For `W = ∞` only the "if"
/// direction holds, and this returns that sufficient condition.
pub fn expected_bounded(space: &SpaceDescriptor, kind: HardyKind, index: f64, _w: f64) -> bool {
    match kind {
        HardyKind::Upper => space.boyd_lower > index,
        HardyKind::Lower => space.boyd_upper < index,
    }
}
