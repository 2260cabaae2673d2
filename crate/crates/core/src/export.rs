//! Serialization helpers and the JSON/CSV/SVG writers.
//!
//! Every file starts with a header recording the crate version, α, the seed
//! and the working precision. CSV headers are `#` comment lines; JSON files
//! wrap the payload as `{"header": ..., "data": ...}`.

use crate::arith::ExactReal;
use crate::expansion::{Alpha, AlphaDigit};
use crate::farey::{ConvergentKind, MediantStream};
use crate::natext::DomainCloud;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::{self, Write};

pub(crate) fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&n.to_string())?;
    }
    seq.end()
}

pub(crate) fn ser_pairs<S: Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, q) in v {
        seq.serialize_element(&[p.to_string(), q.to_string()])?;
    }
    seq.end()
}

#[derive(Serialize)]
#[serde(untagged)]
enum IntText {
    Small(i64),
    Big(String),
}

/// Digits as `[eps, a]` pairs; `a` is a JSON number when it fits in `i64`.
pub(crate) fn ser_digits<S: Serializer>(v: &[AlphaDigit], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        let a = d.a.to_i64().map(IntText::Small).unwrap_or_else(|| IntText::Big(d.a.to_string()));
        seq.serialize_element(&(d.eps, a))?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub version: &'static str,
    pub command: String,
    pub alpha: Option<String>,
    pub seed: Option<u64>,
    pub precision: u32,
}

impl Header {
    pub fn new(command: &str, alpha: Option<&ExactReal>, seed: Option<u64>, precision: u32) -> Header {
        Header { version: env!("CARGO_PKG_VERSION"), command: command.into(), alpha: alpha.map(|a| a.to_string()), seed, precision }
    }

    pub fn comment_lines(&self) -> String {
        let mut s = format!("# alpha-farey {}\n# command: {}\n", self.version, self.command);
        let _ = writeln!(s, "# alpha: {}", self.alpha.as_deref().unwrap_or("none"));
        let _ = writeln!(s, "# seed: {}", self.seed.map_or("none".to_string(), |v| v.to_string()));
        let _ = writeln!(s, "# precision: {}", self.precision);
        s
    }
}

#[derive(Serialize)]
struct Wrapped<'a, T: Serialize> {
    header: &'a Header,
    data: &'a T,
}

pub fn write_json<W: Write, T: Serialize>(w: &mut W, header: &Header, data: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, &Wrapped { header, data })?;
    writeln!(w)
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Mediant stream as CSV with columns `k, p, q, kind, n, ell`; `n` and `ell`
/// are empty where they do not apply.
pub fn write_stream_csv<W: Write>(w: &mut W, header: &Header, stream: &MediantStream) -> io::Result<()> {
    w.write_all(header.comment_lines().as_bytes())?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["k", "p", "q", "kind", "n", "ell"]).map_err(csv_error)?;
    for e in &stream.entries {
        let (n, ell) = match &e.kind {
            ConvergentKind::Principal { n } => (n.to_string(), String::new()),
            ConvergentKind::Mediant { n, ell } => (n.to_string(), ell.to_string()),
            ConvergentKind::Terminal => (String::new(), String::new()),
        };
        out.write_record([e.k.to_string(), e.p.to_string(), e.q.to_string(), e.kind.label().to_string(), n, ell]).map_err(csv_error)?;
    }
    out.flush()
}

/// Cloud as CSV with columns `x, y, tag` in exact text form.
pub fn write_cloud_csv<W: Write>(w: &mut W, header: &Header, cloud: &DomainCloud) -> io::Result<()> {
    w.write_all(header.comment_lines().as_bytes())?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "y", "tag"]).map_err(csv_error)?;
    for p in &cloud.points {
        out.write_record([p.point.x.to_string(), p.point.y.to_string(), p.tag.to_string()]).map_err(csv_error)?;
    }
    out.flush()
}

/// A labelled tick: value in plot coordinates and its text.
#[derive(Clone, Debug, PartialEq)]
pub struct Tick {
    pub at: f64,
    pub label: String,
}

/// Axis landmarks for a cloud: `α - 1`, `(α - 1)/2`, `0`, `α` and `1` on
/// the x axis; `y = -1, -φ, -φ - 1, -2, -∞` placed at `-1/y` on the
/// vertical axis, with `φ` the golden ratio.
pub fn landmarks(alpha: &Alpha) -> (Vec<Tick>, Vec<Tick>) {
    let a = alpha.value.to_f64();
    let name = alpha.value.to_string();
    let x = vec![
        Tick { at: a - 1.0, label: format!("{name} - 1") },
        Tick { at: (a - 1.0) / 2.0, label: format!("({name} - 1)/2") },
        Tick { at: 0.0, label: "0".into() },
        Tick { at: a, label: name.clone() },
        Tick { at: 1.0, label: "1".into() },
    ];
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let y = vec![
        Tick { at: 0.0, label: "-inf".into() },
        Tick { at: 1.0 / (phi + 1.0), label: "-(sqrt5+3)/2".into() },
        Tick { at: 0.5, label: "-2".into() },
        Tick { at: 1.0 / phi, label: "-(sqrt5+1)/2".into() },
        Tick { at: 1.0, label: "-1".into() },
    ];
    (x, y)
}

const SVG_SIZE: f64 = 640.0;
const SVG_MARGIN: f64 = 90.0;

/// Static scatter plot of the cloud in `(x, -1/y)` coordinates with the
/// landmark ticks that fall inside the plotted window.
pub fn write_cloud_svg<W: Write>(w: &mut W, header: &Header, cloud: &DomainCloud, alpha: &Alpha) -> io::Result<()> {
    let pts: Vec<(f64, f64)> = cloud.compactified().into_iter().filter(|(x, u)| x.is_finite() && u.is_finite()).collect();
    let (mut x0, mut x1, mut u0, mut u1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, u) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        u0 = u0.min(u);
        u1 = u1.max(u);
    }
    if pts.is_empty() {
        (x0, x1, u0, u1) = (alpha.lower.to_f64(), alpha.value.to_f64(), 0.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let d = ((hi - lo) * 0.05).max(1e-3);
        (lo - d, hi + d)
    };
    let ((x0, x1), (u0, u1)) = (pad(x0, x1), pad(u0, u1));
    let inner = SVG_SIZE - 2.0 * SVG_MARGIN;
    let sx = |x: f64| SVG_MARGIN + (x - x0) / (x1 - x0) * inner;
    let sy = |u: f64| SVG_MARGIN + (u - u0) / (u1 - u0) * inner;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#);
    let _ = writeln!(s, "<!--\n{}-->", header.comment_lines());
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" font-size="14" text-anchor="middle">{} for alpha = {}, coordinates (x, -1/y)</text>"#, SVG_SIZE / 2.0, cloud.system, alpha.value);
    let _ = writeln!(s, r#"<g fill="black" fill-opacity="0.5">"#);
    for (x, u) in &pts {
        let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="1" height="1"/>"#, sx(*x), sy(*u));
    }
    let _ = writeln!(s, "</g>");
    let base = SVG_SIZE - SVG_MARGIN;
    let _ = writeln!(s, r#"<g stroke="black" font-size="10"><line x1="{SVG_MARGIN}" y1="{base}" x2="{base}" y2="{base}"/><line x1="{SVG_MARGIN}" y1="{SVG_MARGIN}" x2="{SVG_MARGIN}" y2="{base}"/>"#);
    let (xt, yt) = landmarks(alpha);
    for t in xt.iter().filter(|t| (x0..=x1).contains(&t.at)) {
        let px = sx(t.at);
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{}"/><text x="{px:.2}" y="{}" text-anchor="end" transform="rotate(-35 {px:.2} {})" stroke="none">{}</text>"#, base + 6.0, base + 20.0, base + 20.0, t.label);
    }
    for t in yt.iter().filter(|t| (u0..=u1).contains(&t.at)) {
        let py = sy(t.at);
        let _ = writeln!(s, r#"<line x1="{}" y1="{py:.2}" x2="{SVG_MARGIN}" y2="{py:.2}"/><text x="{}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#, SVG_MARGIN - 6.0, SVG_MARGIN - 8.0, py + 3.0, t.label);
    }
    let _ = writeln!(s, "</g>\n</svg>");
    w.write_all(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::alpha_expand;
    use crate::farey::mediant_sequence;
    use crate::natext::{sample_domain, CoordinateSystem};
    use crate::Execution;

    fn q(p: i64, r: i64) -> ExactReal {
        ExactReal::ratio(p, r).unwrap()
    }

    #[test]
    fn expansion_json_lists_digit_pairs() {
        let e = alpha_expand(&q(2, 5), &q(-3, 8), 10).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["digits"], serde_json::json!([[-1, 3], [-1, 3]]));
        assert_eq!(v["alpha"], "2/5");
    }

    #[test]
    fn stream_csv_has_header_and_columns() {
        let a = Alpha::new(&ExactReal::one()).unwrap();
        let s = mediant_sequence(&a, &q(3, 10), 3).unwrap();
        let mut buf = Vec::new();
        write_stream_csv(&mut buf, &Header::new("mediants", Some(&a.value), None, 256), &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(lines[0], "k,p,q,kind,n,ell");
        assert_eq!(lines.len(), 4);
        assert!(text.contains("# alpha: 1/1"));
    }

    #[test]
    fn cloud_writers_are_deterministic() {
        let c = sample_domain(&ExactReal::sqrt2_minus_1(), CoordinateSystem::OmegaStar, 200, 5, Execution::Parallel).unwrap();
        let a = Alpha::new(&c.alpha).unwrap();
        let h = Header::new("domain", Some(&c.alpha), Some(5), 256);
        let render = || {
            let (mut csv, mut svg) = (Vec::new(), Vec::new());
            write_cloud_csv(&mut csv, &h, &c).unwrap();
            write_cloud_svg(&mut svg, &h, &c, &a).unwrap();
            (csv, svg)
        };
        let (csv, svg) = render();
        assert_eq!(render(), (csv.clone(), svg.clone()));
        let svg = String::from_utf8(svg).unwrap();
        assert!(svg.contains("-(sqrt5+1)/2") && svg.contains("# seed: 5"));
        assert_eq!(String::from_utf8(csv).unwrap().lines().filter(|l| !l.starts_with('#')).count(), 201);
    }
}
