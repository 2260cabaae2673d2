//! Birkhoff frequencies of cylinder sets along single orbits, and the
//! normality diagnostics built from them.

use super::orbit::Flat1Walker;
use super::symbols::{parse_word, DeltaSymbol};
use crate::arith::ExactReal;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expansion::Alpha;
use crate::natext::{flat1_start, sample_domain, CoordinateSystem, TaggedPoint};
use crate::rng;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// A cylinder: a digit word and the map family it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CylinderSpec {
    /// `⟨c_1, ..., c_ℓ⟩_α` in signed `G_α` digits.
    AlphaCf(Vec<i64>),
    /// Two-sided `⟨b_k, ..., b_{k+ℓ-1}⟩_{α,(k, k+ℓ-1)}` of `Ĝ*_α`, with
    /// `start = k`.
    Window { start: i64, digits: Vec<i64> },
    /// δ-word of `F̂_{α,♭,1}`.
    Flat1(Vec<DeltaSymbol>),
    /// η-word of `F̂_{α,♭,2}`.
    Flat2(Vec<DeltaSymbol>),
}

fn check_signed_digits(digits: &[i64]) -> Result<()> {
    for &c in digits {
        if c == 0 || c == -1 {
            return Err(Error::Grammar(format!("signed digit {c} is impossible; need c >= 1 or c <= -2")));
        }
    }
    Ok(())
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad digit '{t}'")))).collect()
}

impl CylinderSpec {
    pub fn len(&self) -> usize {
        match self {
            CylinderSpec::AlphaCf(d) | CylinderSpec::Window { digits: d, .. } => d.len(),
            CylinderSpec::Flat1(w) | CylinderSpec::Flat2(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CylinderSpec::AlphaCf(d) | CylinderSpec::Window { digits: d, .. } => check_signed_digits(d),
            CylinderSpec::Flat1(w) | CylinderSpec::Flat2(w) => {
                if w.iter().any(|s| s.k == 0) {
                    return Err(Error::Grammar("delta digits start at 1".into()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for CylinderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        match self {
            CylinderSpec::AlphaCf(d) => write!(f, "cf:{}", join(d.iter().map(i64::to_string).collect())),
            CylinderSpec::Window { start, digits } => {
                write!(f, "window:{start}:{}", join(digits.iter().map(i64::to_string).collect()))
            }
            CylinderSpec::Flat1(w) => write!(f, "flat1:{}", join(w.iter().map(ToString::to_string).collect())),
            CylinderSpec::Flat2(w) => write!(f, "flat2:{}", join(w.iter().map(ToString::to_string).collect())),
        }
    }
}

impl Serialize for CylinderSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CylinderSpec {
    type Err = Error;

    /// `cf:1,-3`, `window:-1:2,3`, `flat1:-2,z2,+3` or `flat2:z2,+3`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("cylinder '{s}' lacks a family prefix")))?;
        let spec = match family {
            "cf" => CylinderSpec::AlphaCf(parse_ints(rest)?),
            "window" => {
                let (k, d) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("window '{s}' needs start:digits")))?;
                let start = k.trim().parse().map_err(|_| Error::Parse(format!("bad window start '{k}'")))?;
                CylinderSpec::Window { start, digits: parse_ints(d)? }
            }
            "flat1" => CylinderSpec::Flat1(parse_word(rest)?),
            "flat2" => CylinderSpec::Flat2(parse_word(rest)?),
            _ => return Err(Error::Parse(format!("unknown cylinder family '{family}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Frequency {
    pub freq: f64,
    pub count: u64,
    pub n: u64,
}

/// Signed `G_α` digits `c_1, ..., c_len` of `x`.
pub fn signed_digits(alpha: &Alpha, x: &ExactReal, len: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(len);
    let mut x = x.clone();
    while out.len() < len {
        let Some((d, image)) = alpha.step(&x)? else { return Err(Error::TerminatedOrbit(out.len())) };
        out.push(d.signed().to_i64().ok_or_else(|| Error::Domain(format!("digit {} too large", d.a)))?);
        x = image;
    }
    Ok(out)
}

fn count_windows<T: PartialEq>(seq: &[T], word: &[T], positions: std::ops::Range<usize>) -> u64 {
    positions.filter(|&m| seq[m..m + word.len()] == *word).count() as u64
}

/// Fraction of `0 <= m < n` whose orbit point lies in the cylinder.
pub fn cylinder_frequency(alpha: &Alpha, start: &TaggedPoint, spec: &CylinderSpec, n: usize) -> Result<Frequency> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let len = spec.len();
    let need = n + len.saturating_sub(1);
    let count = match spec {
        CylinderSpec::AlphaCf(word) => count_windows(&signed_digits(alpha, &start.point.x, need)?, word, 0..n),
        CylinderSpec::Window { start: k, digits } => {
            let shift = (1 - k).max(0) as usize;
            let seq = signed_digits(alpha, &start.point.x, need + shift)?;
            let offset = (shift as i64 + k - 1) as usize;
            (0..n).filter(|&m| seq[m + offset..m + offset + len] == digits[..]).count() as u64
        }
        CylinderSpec::Flat1(word) => {
            let visits = Flat1Walker::new(alpha, start)?.take_visits(need)?;
            let seq: Vec<DeltaSymbol> = visits.iter().map(|v| v.symbol).collect();
            count_windows(&seq, word, 0..n)
        }
        CylinderSpec::Flat2(word) => {
            let mut w = Flat1Walker::new(alpha, start)?;
            let mut seq = Vec::with_capacity(need);
            let mut first = true;
            while seq.len() < need {
                let v = w.next_visit()?.ok_or(Error::TerminatedOrbit(seq.len()))?;
                if first && !v.in_flat2 {
                    return Err(Error::Domain("start point is not in V_alpha,flat,2".into()));
                }
                first = false;
                if v.in_flat2 {
                    seq.push(v.symbol);
                }
            }
            count_windows(&seq, word, 0..n)
        }
    };
    Ok(Frequency { freq: count as f64 / n as f64, count, n: n as u64 })
}

/// An irrational start point in `I_α` from the field of α: a large-radicand
/// surd for rational α, a point of `Q(√d)` with large coefficients for surd
/// α.
pub fn typical_start(alpha: &Alpha, rng: &mut rng::StreamRng) -> Result<ExactReal> {
    if let Some(a) = alpha.value.as_rational() {
        let lo = a - BigRational::from_integer(BigInt::from(1));
        return rng::normal_like_surd(rng, &lo, a);
    }
    match alpha.value.field() {
        Some(d) => rng::surd_in(rng, &alpha.lower, &alpha.value, d),
        None => Err(Error::Precondition("long orbits need an exact alpha".into())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecReport {
    pub spec: CylinderSpec,
    pub freq: f64,
    pub count: u64,
    pub mu_estimate: f64,
    pub stderr: f64,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub alpha: ExactReal,
    pub x: ExactReal,
    #[serde(rename = "N")]
    pub n: u64,
    pub seed: u64,
    pub specs: Vec<SpecReport>,
    pub n2_fraction: f64,
    /// `μ_{α,♭,1}` of the zero symbols, from the mass of `Ω*_α ∩ {-1/2 <= x < 0}`.
    pub n2_mu_estimate: f64,
    pub n2_stderr: f64,
    pub n2_verdict: &'static str,
}

fn verdict(freq: f64, mu: f64, sigma: f64) -> &'static str {
    if (freq - mu).abs() <= 3.0 * sigma {
        "consistent"
    } else {
        "inconsistent"
    }
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Settings for the Monte Carlo side of the normality report.
#[derive(Clone, Copy, Debug)]
pub struct ReportSettings {
    pub seed: u64,
    /// Independent orbits used to estimate each cylinder measure.
    pub orbits: usize,
    pub orbit_len: usize,
    /// Points of the `Ω*_α` cloud behind the zero-symbol measure.
    pub cloud_points: usize,
    pub exec: Execution,
}

impl Default for ReportSettings {
    fn default() -> Self {
        ReportSettings { seed: 1, orbits: 32, orbit_len: 20_000, cloud_points: 200_000, exec: Execution::Parallel }
    }
}

/// Empirical frequencies along the orbit of `(x, -∞)` against measure
/// estimates from independent seeded orbits, plus the `N2` fraction
/// against `μ_{α,♭,1}` of the zero symbols.
pub fn farey_normality_report(
    alpha_value: &ExactReal,
    x: &ExactReal,
    specs: &[CylinderSpec],
    n: usize,
    settings: ReportSettings,
) -> Result<NormalityReport> {
    let alpha = Alpha::new(alpha_value)?;
    if !alpha.contains(x)? {
        return Err(Error::Domain(format!("{x} not in [alpha-1, alpha)")));
    }
    let start = flat1_start(x.clone());
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        let f = cylinder_frequency(&alpha, &start, spec, n)?;
        let per_orbit: Vec<Result<f64>> = settings.exec.map_range(settings.orbits as u64, |i| {
            let mut r = rng::stream(settings.seed, i);
            let x0 = typical_start(&alpha, &mut r)?;
            Ok(cylinder_frequency(&alpha, &flat1_start(x0), spec, settings.orbit_len)?.freq)
        });
        let values = per_orbit.into_iter().collect::<Result<Vec<f64>>>()?;
        let (mu, se) = mean_and_stderr(&values);
        let sigma = (se * se + f.freq * (1.0 - f.freq) / n as f64).sqrt();
        reports.push(SpecReport { spec: spec.clone(), freq: f.freq, count: f.count, mu_estimate: mu, stderr: se, verdict: verdict(f.freq, mu, sigma) });
    }

    let decomposition = super::orbit::orbit_decomposition(&alpha, &start, n)?;
    let cloud = sample_domain(alpha_value, CoordinateSystem::OmegaStar, settings.cloud_points, settings.seed, settings.exec)?;
    let batch: Vec<f64> = cloud
        .points
        .chunks(cloud.orbit_length)
        .map(|c| c.iter().filter(|p| (-0.5..0.0).contains(&p.point.x.to_f64())).count() as f64 / c.len() as f64)
        .collect();
    let (p, p_se) = mean_and_stderr(&batch);
    let mu = p / (1.0 + p);
    let mu_se = p_se / (1.0 + p).powi(2);
    let frac = decomposition.n2_fraction();
    let sigma = (mu_se * mu_se + frac * (1.0 - frac) / n as f64).sqrt();
    Ok(NormalityReport {
        alpha: alpha_value.clone(),
        x: x.clone(),
        n: n as u64,
        seed: settings.seed,
        specs: reports,
        n2_fraction: frac,
        n2_mu_estimate: mu,
        n2_stderr: mu_se,
        n2_verdict: if alpha.is_one() && frac == 0.0 { "consistent" } else { verdict(frac, mu, sigma) },
    })
}
