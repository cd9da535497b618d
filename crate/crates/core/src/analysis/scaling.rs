use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::{cluster_s0_bound, search_sensitivity_lower};
use crate::constructions::{Construction, LabeledMinterm, MintermFunction};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: u32,
    pub k: u32,
    pub support: u128,
    /// `s1 <= C1 <= |p|`.
    pub s1_bound: u128,
    pub s0_bound: u128,
    pub s_lower: usize,
    /// Search lower bounds restricted to 0- and 1-inputs.
    pub s0_lower: usize,
    pub s1_lower: usize,
    /// Zero unless timing was requested, so reports stay reproducible.
    pub seconds: f64,
}

impl ScalingRow {
    pub fn s_bound(&self) -> u128 {
        self.s1_bound.max(self.s0_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub construction: Construction,
    pub k: u32,
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `log max(s1_bound, s0_bound)` against `log n`.
    pub slope: f64,
}

pub const CSV_HEADER: &str = "n,k,support,s1_bound,s0_bound,s_lower,seconds";

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:.3}",
                r.n, r.k, r.support, r.s1_bound, r.s0_bound, r.s_lower, r.seconds
            );
        }
        out
    }
}

/// Ordinary least-squares slope of `ys` on `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(invalid("slope fit needs at least two paired points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(invalid("slope fit needs two distinct x values"));
    }
    Ok(sxy / sxx)
}

/// Options for [`scaling_report`].
#[derive(Clone, Debug)]
pub struct ScalingOptions {
    /// Search restarts per grid point.
    pub effort: usize,
    pub seed: u64,
    pub cap: u64,
    pub timing: bool,
}

/// Bounds on `s` for one construction across a grid of `n`.
pub fn scaling_report(
    construction: Construction,
    k: u32,
    grid: &[u32],
    opts: &ScalingOptions,
) -> Result<ScalingReport> {
    let mut rows = Vec::with_capacity(grid.len());
    for &n in grid {
        let start = Instant::now();
        let m = LabeledMinterm::new(construction, n, k)?;
        let support = m.support_size();
        let s0 = cluster_s0_bound(&m, opts.cap)?;
        let f = MintermFunction::structured(m);
        let search = search_sensitivity_lower(&f, opts.effort, opts.seed)?;
        rows.push(ScalingRow {
            n,
            k,
            support,
            s1_bound: support,
            s0_bound: s0.bound,
            s_lower: search.report.value,
            s0_lower: search.s0,
            s1_lower: search.s1,
            seconds: if opts.timing {
                start.elapsed().as_secs_f64()
            } else {
                0.0
            },
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| (r.s_bound() as f64).ln()).collect();
    let slope = ols_slope(&xs, &ys)?;
    Ok(ScalingReport {
        construction,
        k,
        rows,
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::support_size_formula;

    #[test]
    fn slope_of_power_law() {
        let xs: Vec<f64> = (1..6).map(|x| (x as f64).ln()).collect();
        let ys: Vec<f64> = (1..6).map(|x| (3.0 * (x as f64).powi(2)).ln()).collect();
        assert!((ols_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert!(ols_slope(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn small_thm1_report() {
        let opts = ScalingOptions {
            effort: 2,
            seed: 0,
            cap: u64::MAX,
            timing: false,
        };
        let rep = scaling_report(Construction::Thm1, 3, &[9, 10], &opts).unwrap();
        for r in &rep.rows {
            assert_eq!(r.support, support_size_formula(r.n, 1, 1).unwrap());
            assert!(r.s0_lower as u128 <= r.s0_bound && r.s1_lower as u128 <= r.s1_bound);
        }
        let csv = rep.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(
            csv,
            scaling_report(Construction::Thm1, 3, &[9, 10], &opts)
                .unwrap()
                .to_csv()
        );
    }

    #[test]
    fn partite_support_is_linear() {
        for n in 4..10 {
            let m = LabeledMinterm::thm3(n, 3).unwrap();
            // Three full rows plus columns 1, 2, 3 of the generic rows.
            assert_eq!(m.support_size(), (3 * n + 3 * (n - 3)) as u128);
        }
    }
}
