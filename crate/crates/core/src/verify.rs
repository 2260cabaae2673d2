//! Self-check suites behind the `verify` command. Each suite compares two
//! independent computations over seeded inputs and reports a pass/fail
//! summary.

use crate::arith::{ExactReal, MobiusMatrix};
use crate::ergodic::{
    check_delta_word, delta_to_eta, eta_to_delta, matching_detect, orbit_decomposition, random_delta_word, typical_start,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expansion::{alpha_expand_with, alpha_gauss_step, rcf_expand, vahlen_borel_check, Alpha};
use crate::farey::{farey_orbit, flat_mediant_sequence, induced_fj, mediant_sequence, pi_product, ConvergentKind};
use crate::natext::{
    branch_matrices, components, conjugacy_residual, density_ratio, flat1_start, measure_estimate, sample_domain,
    CoordinateSystem, Method, Region,
};
use crate::rng;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    InducedGauss,
    PiProduct,
    FlatStream,
    Conjugacy,
    Density,
    VahlenBorel,
    Matching,
    Measure,
    Geometry,
    Recoding,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::InducedGauss,
        Suite::PiProduct,
        Suite::FlatStream,
        Suite::Conjugacy,
        Suite::Density,
        Suite::VahlenBorel,
        Suite::Matching,
        Suite::Measure,
        Suite::Geometry,
        Suite::Recoding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::InducedGauss => "induced-gauss",
            Suite::PiProduct => "pi-product",
            Suite::FlatStream => "flat-stream",
            Suite::Conjugacy => "conjugacy",
            Suite::Density => "density",
            Suite::VahlenBorel => "vahlen-borel",
            Suite::Matching => "matching",
            Suite::Measure => "measure",
            Suite::Geometry => "geometry",
            Suite::Recoding => "recoding",
        }
    }

    /// Default sample count.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::InducedGauss => 10_000,
            Suite::PiProduct => 1_000,
            Suite::FlatStream => 500,
            Suite::Conjugacy => 10_000,
            Suite::Density => 1_000,
            Suite::VahlenBorel => 1_000,
            Suite::Matching => 200,
            Suite::Measure => 1_000_000,
            Suite::Geometry => 100_000,
            Suite::Recoding => 1_000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    pub detail: String,
    pub first_failure: Option<String>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} checked, {} failed; {}", if self.passed { "PASS" } else { "FAIL" }, self.suite, self.checked, self.failures, self.detail)?;
        if let Some(s) = &self.first_failure {
            write!(f, "; first failure: {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Parameters to test; empty means the suite's default list.
    pub alphas: Vec<ExactReal>,
    pub exec: Execution,
}

/// The parameters exercised by default.
pub fn default_alphas() -> Vec<ExactReal> {
    let q = |p, r| ExactReal::ratio(p, r).unwrap();
    vec![q(1, 10), q(3, 10), q(2, 5), ExactReal::sqrt2_minus_1(), q(9, 20), q(11, 20), q(7, 10), q(4, 5), ExactReal::one()]
}

/// Tallies outcomes of independent cases.
struct Tally {
    checked: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: 0, first: None }
    }

    fn add(&mut self, outcome: Result<Option<String>>) {
        self.checked += 1;
        let msg = match outcome {
            Ok(None) => return,
            Ok(Some(m)) => m,
            Err(e) => format!("error: {e}"),
        };
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(msg);
        }
    }

    fn report(self, suite: Suite, detail: String) -> SuiteReport {
        SuiteReport { suite, passed: self.failures == 0 && self.checked > 0, checked: self.checked, failures: self.failures, detail, first_failure: self.first }
    }
}

fn tally(outcomes: Vec<Result<Option<String>>>) -> Tally {
    let mut t = Tally::new();
    for o in outcomes {
        t.add(o);
    }
    t
}

fn alphas_of(cfg: &VerifyConfig) -> Result<Vec<Alpha>> {
    let list = if cfg.alphas.is_empty() { default_alphas() } else { cfg.alphas.clone() };
    list.iter().map(Alpha::new).collect()
}

fn rational_start(alpha: &Alpha, r: &mut rng::StreamRng) -> Result<ExactReal> {
    rng::rational_in(r, &alpha.lower, &alpha.value, 64)
}

/// `F_α^{j(x)+1}(x) = G_α(x)` exactly.
fn induced_gauss(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let alphas = alphas_of(cfg)?;
    let t = tally(cfg.exec.map_range(cfg.samples as u64, |i| {
        let a = &alphas[i as usize % alphas.len()];
        let x = rational_start(a, &mut rng::stream(cfg.seed, i))?;
        let lhs = induced_fj(a, &x, 1 << 24)?;
        let rhs = alpha_gauss_step(&a.value, &x)?;
        Ok((lhs != rhs).then(|| format!("alpha {} x {x}: {lhs} != {rhs}", a.value)))
    }));
    Ok(t.report(Suite::InducedGauss, format!("{} parameters", alphas.len())))
}

/// `Π_k` against the convergent matrices at `k = S_n` and the mediant
/// columns in between, for `n <= 20`.
fn pi_product_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let alphas = alphas_of(cfg)?;
    let t = tally(cfg.exec.map_range(cfg.samples as u64, |i| {
        let a = &alphas[i as usize % alphas.len()];
        let x = rational_start(a, &mut rng::stream(cfg.seed, i))?;
        let e = alpha_expand_with(a, &x, 20)?;
        let sums = e.partial_sums();
        let total = sums.last().unwrap().to_usize().ok_or_else(|| Error::Domain("digit sum too large".into()))?;
        let steps = farey_orbit(a, &x, total.min(1 << 16))?;
        let mut m = MobiusMatrix::identity();
        let mut n = 0usize;
        for (k, (_, tag)) in steps.iter().enumerate() {
            m = m.mul(&tag.matrix());
            let k = k + 1;
            while n < e.len() && sums[n + 1] < BigInt::from(k) {
                n += 1;
            }
            let expected = if sums[n + 1] == BigInt::from(k) {
                e.matrix(n + 1)?
            } else {
                let ell = BigInt::from(k) - &sums[n];
                let eps = BigInt::from(e.digits[n].eps);
                let (p0, q0) = e.convergent(n as i64 - 1)?;
                let (p1, q1) = e.convergent(n as i64)?;
                MobiusMatrix::new(&ell * &p1 + &eps * p0, p1, &ell * &q1 + &eps * q0, q1)
            };
            if m != expected {
                return Ok(Some(format!("alpha {} x {x} k {k}: {m:?} != {expected:?}", a.value)));
            }
        }
        let direct = pi_product(a, &x, steps.len())?;
        Ok((direct != m).then(|| format!("alpha {} x {x}: pi_product disagrees with the running product", a.value)))
    }));
    Ok(t.report(Suite::PiProduct, "principal and mediant columns".into()))
}

/// The flat stream is the full stream without the `(n, a_n - 1)` mediants
/// followed by a negative digit, checked on irrational starts.
fn flat_stream(cfg: &VerifyConfig) -> Result<SuiteReport> {
    const DIGITS: usize = 24;
    let alphas = alphas_of(cfg)?;
    let t = tally(cfg.exec.map_range(cfg.samples as u64, |i| {
        let a = &alphas[i as usize % alphas.len()];
        let x = typical_start(a, &mut rng::stream(cfg.seed, i))?;
        let e = alpha_expand_with(a, &x, DIGITS + 1)?;
        let sums = e.partial_sums();
        let horizon = sums[DIGITS - 1].to_usize().ok_or_else(|| Error::Domain("digit sum too large".into()))?;
        let full = mediant_sequence(a, &x, horizon)?;
        let flat = flat_mediant_sequence(a, &x, horizon)?;
        let expected: Vec<(usize, BigInt, BigInt)> = full
            .entries
            .iter()
            .filter(|en| match en.kind {
                ConvergentKind::Mediant { n, ell } => !(BigInt::from(ell + 1) == e.digits[n - 1].a && e.digits[n].eps < 0),
                _ => true,
            })
            .map(|en| (en.k, en.p.clone(), en.q.clone()))
            .collect();
        let got: Vec<(usize, BigInt, BigInt)> =
            flat.entries.iter().filter(|en| en.full_index <= horizon).map(|en| (en.full_index, en.p.clone(), en.q.clone())).collect();
        Ok((got != expected).then(|| format!("alpha {} x {x}: flat stream differs from the predicted subsequence", a.value)))
    }));
    Ok(t.report(Suite::FlatStream, format!("first {} digit blocks", DIGITS - 1)))
}

fn conjugacy(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let alphas: Vec<Alpha> = if cfg.alphas.is_empty() {
        let q = |p, r| ExactReal::ratio(p, r).unwrap();
        [q(1, 10), q(3, 10), ExactReal::sqrt2_minus_1(), q(2, 5)].iter().map(Alpha::new).collect::<Result<_>>()?
    } else {
        alphas_of(cfg)?
    };
    let mut t = Tally::new();
    for a in &alphas {
        let cloud = sample_domain(&a.value, CoordinateSystem::VOne, cfg.samples, cfg.seed, cfg.exec)?;
        for o in cfg.exec.map(&cloud.points, |p| {
            let r = conjugacy_residual(a, p)?;
            Ok((!r.is_zero()).then(|| format!("alpha {} point ({}, {}): residual {r}", a.value, p.point.x, p.point.y)))
        }) {
            t.add(o);
        }
    }
    Ok(t.report(Suite::Conjugacy, format!("{} parameters, max residual 0 required", alphas.len())))
}

/// Exact rational pair with `x != y`, avoiding the pole of `m`.
fn density_point(r: &mut rng::StreamRng, m: &MobiusMatrix) -> Result<(ExactReal, ExactReal)> {
    let (lo, hi) = (ExactReal::from(-4), ExactReal::from(4));
    loop {
        let x = rng::rational_in(r, &lo, &hi, 32)?;
        let y = rng::rational_in(r, &ExactReal::from(-40), &ExactReal::zero(), 32)?;
        let pole = |v: &ExactReal| -> Result<bool> { Ok(v.mul_int(&m.a21)?.add_int(&m.a22)?.is_zero()) };
        if x != y && !pole(&x)? && !pole(&y)? {
            return Ok((x, y));
        }
    }
}

fn density(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let matrices = branch_matrices(12);
    let jobs: Vec<(usize, u64)> = (0..matrices.len()).flat_map(|m| (0..cfg.samples as u64).map(move |i| (m, i))).collect();
    let t = tally(cfg.exec.map(&jobs, |&(mi, i)| {
        let (name, m) = &matrices[mi];
        let (x, y) = density_point(&mut rng::stream(cfg.seed ^ (mi as u64) << 32, i), m)?;
        let r = density_ratio(m, &x, &y)?;
        Ok((!r.is_one()).then(|| format!("{name} at ({x}, {y}): ratio {r}")))
    }));
    Ok(t.report(Suite::Density, format!("{} branch matrices", matrices.len())))
}

fn vahlen_borel(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let t = tally(cfg.exec.map_range(cfg.samples as u64, |i| {
        let x = rng::normal_like_surd(&mut rng::stream(cfg.seed, i), &zero, &one)?;
        let e = rcf_expand(&x, 52)?;
        for n in 1..=50 {
            let c = vahlen_borel_check(&e, n)?;
            if !(c.vahlen && c.borel) {
                return Ok(Some(format!("x {x} n {n}: {c:?}")));
            }
        }
        Ok(None)
    }));
    Ok(t.report(Suite::VahlenBorel, "1 <= n <= 50".into()))
}

fn matching(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let q = |p, r| ExactReal::ratio(p, r).unwrap();
    let cases: Vec<(ExactReal, Option<(usize, usize)>)> = if cfg.alphas.is_empty() {
        vec![(q(11, 20), Some((2, 2))), (q(7, 10), Some((2, 1))), (q(3, 10), None)]
    } else {
        cfg.alphas.iter().map(|a| (a.clone(), None)).collect()
    };
    let steps = cfg.samples.max(101);
    let mut t = Tally::new();
    let mut found = Vec::new();
    for (a, want) in &cases {
        t.add(matching_detect(a, steps, 256).map(|m| match (m, want) {
            (None, _) => Some(format!("alpha {a}: no match within {steps} steps")),
            (Some(m), Some(w)) if (m.alpha_steps, m.alpha_minus_one_steps) != *w => {
                Some(format!("alpha {a}: got ({}, {}), expected {w:?}", m.alpha_steps, m.alpha_minus_one_steps))
            }
            (Some(m), _) if m.tail_len < 100 => Some(format!("alpha {a}: tail agreement {} < 100", m.tail_len)),
            (Some(m), _) => {
                found.push(format!("{a} -> ({}, {})", m.alpha_steps, m.alpha_minus_one_steps));
                None
            }
        }));
    }
    Ok(t.report(Suite::Matching, found.join(", ")))
}

/// Gauss-measure checks for `α = 1`: the mass of `[0,1) × [-∞,-1]` is
/// `log 2`, and `⟨1⟩` carries `log2(4/3)` of it.
fn measure(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ln2 = std::f64::consts::LN_2;
    let whole = Region::rect(0.0, 1.0, f64::NEG_INFINITY, -1.0);
    let mut t = Tally::new();
    let quad = measure_estimate(&whole, Method::Quadrature { panels: 64 }, cfg.exec)?;
    t.add(Ok(((quad.value - ln2).abs() > 1e-3).then(|| format!("quadrature {} vs log 2", quad.value))));
    let mc = measure_estimate(&whole, Method::MonteCarlo { samples: cfg.samples as u64, seed: cfg.seed }, cfg.exec)?;
    t.add(Ok(((mc.value - ln2).abs() > 3.0 * mc.stderr).then(|| format!("monte carlo {} +- {} vs log 2", mc.value, mc.stderr))));
    let one = measure_estimate(&Region::rect(0.5, 1.0, f64::NEG_INFINITY, -1.0), Method::Quadrature { panels: 64 }, cfg.exec)?;
    let ratio = one.value / quad.value;
    let target = (4.0f64 / 3.0).log2();
    t.add(Ok(((ratio - target).abs() > 5e-3).then(|| format!("<1> mass {ratio} vs {target}"))));
    Ok(t.report(Suite::Measure, format!("quadrature {:.6}, monte carlo {:.6} +- {:.1e}, <1> share {ratio:.5}", quad.value, mc.value, mc.stderr)))
}

/// Connected components of the `Ω*_α` cloud at gap 0.05 in `(x, -1/y)`.
fn geometry(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let cases = [(ExactReal::sqrt2_minus_1(), 2usize), (ExactReal::ratio(4, 5)?, 1)];
    let mut t = Tally::new();
    let mut seen = Vec::new();
    for (a, want) in &cases {
        let cloud = sample_domain(a, CoordinateSystem::OmegaStar, cfg.samples, cfg.seed, cfg.exec)?;
        let n = components(&cloud.compactified(), 0.05).len();
        seen.push(format!("{a}: {n}"));
        t.add(Ok((n != *want).then(|| format!("alpha {a}: {n} components, expected {want}"))));
    }
    Ok(t.report(Suite::Geometry, seen.join(", ")))
}

/// δ/η round trips on random grammatical words, and the transition rules
/// along one long orbit.
fn recoding(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let alpha = Alpha::new(&ExactReal::ratio(3, 10)?)?;
    let k0 = alpha.k0.to_u64().unwrap_or(1);
    let mut t = tally(cfg.exec.map_range(cfg.samples as u64, |i| {
        let mut r = rng::stream(cfg.seed, i);
        let len = (i as usize % 1000) + 1;
        let w = random_delta_word(&mut r, len, k0, 12);
        check_delta_word(&w, k0)?;
        let back = eta_to_delta(&delta_to_eta(&w, k0)?, k0)?;
        Ok((back != w).then(|| format!("word {i} of length {len} does not round trip")))
    }));
    let x = typical_start(&alpha, &mut rng::stream(cfg.seed, u64::MAX))?;
    let steps = 100 * cfg.samples;
    let d = orbit_decomposition(&alpha, &flat1_start(x), steps)?;
    t.add(Ok((!d.violations.is_empty()).then(|| format!("{} rule violations, first {:?}", d.violations.len(), d.violations[0]))));
    Ok(t.report(Suite::Recoding, format!("{} words, {steps} orbit steps", cfg.samples)))
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::InducedGauss => induced_gauss(cfg),
        Suite::PiProduct => pi_product_suite(cfg),
        Suite::FlatStream => flat_stream(cfg),
        Suite::Conjugacy => conjugacy(cfg),
        Suite::Density => density(cfg),
        Suite::VahlenBorel => vahlen_borel(cfg),
        Suite::Matching => matching(cfg),
        Suite::Measure => measure(cfg),
        Suite::Geometry => geometry(cfg),
        Suite::Recoding => recoding(cfg),
    }
}
