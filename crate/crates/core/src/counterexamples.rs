//! A function in `L_1 ∩ L_∞` that is not in `L_{1,q}` for `q < 1`.
//!
//! Take `f_k = 1 / (k (ln(k+1))^α)` with `α = (1 + 1/q)/2`, so `1 < α < 1/q`,
//! and `f = f_k` on `(k-1, k]`. Then `Σ f_k` converges (`α > 1`) while
//! `Σ k^{q-1} f_k^q = Σ 1/(k (ln(k+1))^{αq})` diverges (`αq < 1`). Since
//! `f = f*`, `‖f‖_1 = Σ f_k`, `‖f‖_∞ = f_1` and
//! `‖f‖_{1,q}^q = Σ f_k^q (k^q - (k-1)^q)/q >= Σ k^{q-1} f_k^q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_norm, LorentzParams};
use crate::stepfn::StepFunction;

/// Partial sums of `Σ f_k` and `Σ k^{q-1} f_k^q` up to `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceReport {
    pub n: u64,
    pub q: f64,
    pub l1_partial: f64,
    /// `q`-th power of the truncated `l_{1,q}` quasi-norm.
    pub l1q_partial: f64,
}

/// Norms of the truncated step function on `(0, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionNorms {
    pub l1: f64,
    pub linf: f64,
    pub l1q: f64,
}

fn check(q: f64, n: u64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {q}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

/// `α = (1 + 1/q)/2`.
pub fn exponent_alpha(q: f64) -> f64 {
    0.5 * (1.0 + 1.0 / q)
}

/// `f_k = 1/(k (ln(k+1))^α)`.
pub fn term(q: f64, k: u64) -> f64 {
    let k = k as f64;
    1.0 / (k * k.ln_1p().powf(exponent_alpha(q)))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct Sum {
    total: f64,
    carry: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.total + x;
        if self.total.abs() >= x.abs() {
            self.carry += (self.total - t) + x;
        } else {
            self.carry += (x - t) + self.total;
        }
        self.total = t;
    }

    fn value(&self) -> f64 {
        self.total + self.carry
    }
}

pub fn sequence_report(q: f64, n: u64) -> Result<SequenceReport> {
    Ok(*sequence_rows(q, &[n])?.last().unwrap())
}

/// One report per requested `N` (sorted ascending), from a single pass.
pub fn sequence_rows(q: f64, ns: &[u64]) -> Result<Vec<SequenceReport>> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        check(q, n)?;
    }
    let mut rows = Vec::with_capacity(ns.len());
    let (mut l1, mut l1q) = (Sum::default(), Sum::default());
    let mut k = 0u64;
    for &n in &ns {
        while k < n {
            k += 1;
            let f = term(q, k);
            l1.add(f);
            l1q.add((k as f64).powf(q - 1.0) * f.powf(q));
        }
        rows.push(SequenceReport {
            n,
            q,
            l1_partial: l1.value(),
            l1q_partial: l1q.value(),
        });
    }
    Ok(rows)
}

/// `f = f_k` on `(k-1, k]` for `k <= N`, zero after, with its `L_1`, `L_∞`
/// and `L_{1,q}` norms.
pub fn truncated_function(q: f64, n: u64) -> Result<(StepFunction, FunctionNorms)> {
    check(q, n)?;
    let breakpoints: Vec<f64> = (1..=n).map(|k| k as f64).collect();
    let values: Vec<f64> = (1..=n).map(|k| term(q, k)).collect();
    let f = StepFunction::new(breakpoints, values, 0.0)?;
    let norms = FunctionNorms {
        l1: lorentz_norm(&f, LorentzParams::new(1.0, 1.0)?),
        linf: lorentz_norm(&f, LorentzParams::new(f64::INFINITY, f64::INFINITY)?),
        l1q: lorentz_norm(&f, LorentzParams::new(1.0, q)?),
    };
    Ok((f, norms))
}

/// Integral-test bound `Σ_{k>N} f_k <= ∫_N^∞ dx/(x (ln x)^α) = (ln N)^{1-α}/(α-1)`.
pub fn l1_tail_upper_bound(q: f64, n: u64) -> Result<f64> {
    check(q, n)?;
    let alpha = exponent_alpha(q);
    Ok((n as f64).ln().powf(1.0 - alpha) / (alpha - 1.0))
}

/// Integral-test bound `Σ_{N_1<k<=N_2} k^{q-1} f_k^q >= G(N_2+2) - G(N_1+2)`
/// with `G(y) = (ln y)^{1-αq}/(1-αq)`, from `k^{q-1} f_k^q >= 1/((k+1) ln(k+1)^{αq})`.
pub fn l1q_growth_lower_bound(q: f64, n1: u64, n2: u64) -> Result<f64> {
    check(q, n1)?;
    check(q, n2)?;
    let e = 1.0 - exponent_alpha(q) * q;
    let g = |y: f64| y.ln().powf(e) / e;
    Ok(g(n2 as f64 + 2.0) - g(n1 as f64 + 2.0))
}

/// CSV with header `N,l1_partial,l1q_partial`.
pub fn rows_to_csv(rows: &[SequenceReport]) -> String {
    let mut out = String::from("N,l1_partial,l1q_partial\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.n, r.l1_partial, r.l1q_partial));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_decrease() {
        let q = 0.5;
        assert_eq!(exponent_alpha(q), 1.5);
        for k in 1..2000 {
            assert!(term(q, k + 1) < term(q, k) && term(q, k + 1) > 0.0);
        }
    }

    #[test]
    fn small_n() {
        let r = sequence_report(0.5, 2).unwrap();
        assert!(r.l1_partial.is_finite() && r.l1_partial > 0.0);
        assert!(r.l1q_partial.is_finite() && r.l1q_partial > 0.0);
        assert!(sequence_report(1.0, 10).is_err());
        assert!(sequence_report(0.5, 1).is_err());
    }

    #[test]
    fn partials_are_monotone() {
        let rows = sequence_rows(0.5, &[10, 2, 100, 1000]).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 10, 100, 1000]);
        assert!(rows.windows(2).all(|w| w[0].l1_partial < w[1].l1_partial && w[0].l1q_partial < w[1].l1q_partial));
    }

    #[test]
    fn function_norms() {
        let q = 0.5;
        let (f, norms) = truncated_function(q, 500).unwrap();
        let seq = sequence_report(q, 500).unwrap();
        assert_eq!(f.rearrange(), f);
        assert_eq!(norms.linf, term(q, 1));
        assert!((norms.l1 - seq.l1_partial).abs() <= 1e-12 * seq.l1_partial);
        assert!(norms.l1q.powf(q) >= seq.l1q_partial);
    }

    #[test]
    fn csv_layout() {
        let rows = sequence_rows(0.5, &[2]).unwrap();
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("N,l1_partial,l1q_partial\n2,"));
    }
}
