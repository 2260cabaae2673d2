//! Masses of planar regions under `dx dy / (x - y)^2`.
//!
//! The y-axis is compactified by `y = y1 + 1 - 1/u`, which turns the
//! density on `[x0,x1] × [y0,y1]` into the bounded integrand
//! `1 / ((x - y1 - 1) u + 1)^2` on `[x0,x1] × [u0,1]`.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rng;
use rand::Rng;
use serde::Serialize;
use std::sync::Arc;

pub type Indicator = Arc<dyn Fn(f64, f64) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Region {
    /// `[x0, x1] × [y0, y1]`; `y0` may be `-∞`.
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    /// Points of a bounding rectangle accepted by `inside(x, y)`.
    Predicate { x0: f64, x1: f64, y0: f64, y1: f64, inside: Indicator },
    /// Union of almost-disjoint rectangles `(x0, x1, y0, y1)`.
    Cells(Vec<(f64, f64, f64, f64)>),
}

impl std::fmt::Debug for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Region::Cells(c) = self {
            return write!(f, "cells[{}]", c.len());
        }
        let (x0, x1, y0, y1) = self.bounds();
        let kind = if matches!(self, Region::Rect { .. }) { "rect" } else { "predicate" };
        write!(f, "{kind}[{x0}, {x1}] x [{y0}, {y1}]")
    }
}

impl Region {
    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Region {
        Region::Rect { x0, x1, y0, y1 }
    }

    /// Bounding box `(x0, x1, y0, y1)`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match self {
            Region::Rect { x0, x1, y0, y1 } | Region::Predicate { x0, x1, y0, y1, .. } => (*x0, *x1, *y0, *y1),
            Region::Cells(cells) => cells.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
                |b, c| (b.0.min(c.0), b.1.max(c.1), b.2.min(c.2), b.3.max(c.3)),
            ),
        }
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        match self {
            Region::Predicate { inside, .. } => inside(x, y),
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Composite Gauss-Legendre with `panels^2` cells of 16x16 nodes.
    Quadrature { panels: usize },
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

struct Chart {
    x0: f64,
    x1: f64,
    u0: f64,
    y1: f64,
}

impl Chart {
    /// `None` for an empty box.
    fn new(region: &Region) -> Result<Option<Chart>> {
        let (x0, x1, y0, y1) = region.bounds();
        if x0.is_nan() || x1.is_nan() || y0.is_nan() || y1.is_nan() || y1.is_infinite() || x0.is_infinite() || x1.is_infinite() {
            return Err(Error::Domain(format!("bad region bounds {region:?}")));
        }
        if x0 >= x1 || y0 >= y1 {
            return Ok(None);
        }
        if x0.max(y0) <= x1.min(y1) {
            return Err(Error::DivergentIntegral(format!("{region:?} meets the diagonal x = y")));
        }
        let u0 = if y0.is_infinite() { 0.0 } else { 1.0 / (y1 + 1.0 - y0) };
        Ok(Some(Chart { x0, x1, u0, y1 }))
    }

    fn y(&self, u: f64) -> f64 {
        if u == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.y1 + 1.0 - 1.0 / u
        }
    }

    fn integrand(&self, x: f64, u: f64) -> f64 {
        let h = (x - self.y1 - 1.0) * u + 1.0;
        1.0 / (h * h)
    }

    fn area(&self) -> f64 {
        (self.x1 - self.x0) * (1.0 - self.u0)
    }
}

fn quadrature(region: &Region, chart: &Chart, panels: usize, exec: Execution) -> MeasureEstimate {
    let rule = gauss_legendre(16);
    let panels = panels.max(1);
    let hx = (chart.x1 - chart.x0) / panels as f64;
    let hu = (1.0 - chart.u0) / panels as f64;
    let rows: Vec<f64> = exec.map_range(panels as u64, |i| {
        let mut acc = 0.0;
        for j in 0..panels {
            let (cx, cu) = (chart.x0 + (i as f64 + 0.5) * hx, chart.u0 + (j as f64 + 0.5) * hu);
            for &(sx, wx) in &rule {
                let x = cx + 0.5 * hx * sx;
                for &(su, wu) in &rule {
                    let u = cu + 0.5 * hu * su;
                    if region.contains(x, chart.y(u)) {
                        acc += wx * wu * chart.integrand(x, u);
                    }
                }
            }
        }
        acc * 0.25 * hx * hu
    });
    MeasureEstimate { value: rows.iter().sum(), stderr: 0.0 }
}

fn monte_carlo(region: &Region, chart: &Chart, samples: u64, seed: u64, exec: Execution) -> MeasureEstimate {
    const CHUNKS: u64 = 64;
    let per = samples.div_ceil(CHUNKS);
    let area = chart.area();
    let sums: Vec<(f64, f64, u64)> = exec.map_range(CHUNKS, |c| {
        let mut r = rng::stream(seed, c);
        let n = per.min(samples.saturating_sub(c * per));
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = r.gen_range(chart.x0..chart.x1);
            let u = chart.u0 + (1.0 - chart.u0) * r.gen::<f64>();
            let v = if region.contains(x, chart.y(u)) { area * chart.integrand(x, u) } else { 0.0 };
            s += v;
            s2 += v * v;
        }
        (s, s2, n)
    });
    let (s, s2, n) = sums.iter().fold((0.0, 0.0, 0u64), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let n_f = n as f64;
    let mean = s / n_f;
    let var = (s2 / n_f - mean * mean).max(0.0) * n_f / (n_f - 1.0).max(1.0);
    MeasureEstimate { value: mean, stderr: (var / n_f).sqrt() }
}

/// Mass of `region` under `dx dy / (x - y)^2`.
pub fn measure_estimate(region: &Region, method: Method, exec: Execution) -> Result<MeasureEstimate> {
    if let Region::Cells(cells) = region {
        return cells_estimate(cells, method, exec);
    }
    let Some(chart) = Chart::new(region)? else {
        return Ok(MeasureEstimate { value: 0.0, stderr: 0.0 });
    };
    Ok(match method {
        Method::Quadrature { panels } => quadrature(region, &chart, panels, exec),
        Method::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(Error::Precondition("Monte Carlo needs at least 2 samples".into()));
            }
            monte_carlo(region, &chart, samples, seed, exec)
        }
    })
}

fn cells_estimate(cells: &[(f64, f64, f64, f64)], method: Method, exec: Execution) -> Result<MeasureEstimate> {
    let method = match method {
        Method::MonteCarlo { samples, seed } => {
            Method::MonteCarlo { samples: (samples / cells.len().max(1) as u64).max(2), seed }
        }
        m => m,
    };
    let parts: Vec<Result<MeasureEstimate>> = exec.map(cells, |&(x0, x1, y0, y1)| {
        measure_estimate(&Region::Rect { x0, x1, y0, y1 }, method, Execution::Sequential)
    });
    let (mut value, mut var) = (0.0, 0.0);
    for p in parts {
        let p = p?;
        value += p.value;
        var += p.stderr * p.stderr;
    }
    Ok(MeasureEstimate { value, stderr: var.sqrt() })
}

/// Closed-form mass of `[x0,x1] × [y0,y1]` for `y1 < x0`.
pub fn rect_mass(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let top = ((x1 - y1) / (x0 - y1)).ln();
    if y0.is_infinite() {
        top
    } else {
        top - ((x1 - y0) / (x0 - y0)).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(16);
        let s: f64 = rule.iter().map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-13);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn empty_region_has_zero_mass() {
        let r = Region::rect(0.5, 0.5, -3.0, -1.0);
        let m = measure_estimate(&r, Method::Quadrature { panels: 1 }, Execution::Sequential).unwrap();
        assert_eq!(m.value, 0.0);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for &(x0, x1, y0, y1) in &[(0.0, 1.0, f64::NEG_INFINITY, -1.0), (-0.4, 0.3, -5.0, -2.5), (0.5, 1.0, -1.5, -1.0)] {
            let q = measure_estimate(&Region::rect(x0, x1, y0, y1), Method::Quadrature { panels: 4 }, Execution::Parallel)
                .unwrap();
            assert!((q.value - rect_mass(x0, x1, y0, y1)).abs() < 1e-12, "{x0} {x1} {y0} {y1}");
        }
    }

    #[test]
    fn diagonal_contact_diverges() {
        let r = Region::Rect { x0: 0.0, x1: 1.0, y0: f64::NEG_INFINITY, y1: 0.0 };
        assert!(matches!(
            measure_estimate(&r, Method::Quadrature { panels: 2 }, Execution::Sequential),
            Err(Error::DivergentIntegral(_))
        ));
    }
}
