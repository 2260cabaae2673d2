//! Streams of α-convergents and α-mediant convergents read off `Π_k(-∞)`.

use super::maps::{alpha_farey_step_tagged, flat_branch, flat_branch_symbols, FareyTag};
use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Position of `Π_k(-∞)` in the convergent hierarchy. With `S_n` the
/// cumulative digit sums, `k = S_n` gives the principal convergent
/// `p_{n-1}/q_{n-1}` and `k = S_n + ℓ` with `0 < ℓ < a_{n+1}` gives the
/// `(n+1, ℓ)` mediant. After the orbit reaches 0 the stream is frozen at
/// `x` itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvergentKind {
    Principal { n: usize },
    Mediant { n: usize, ell: usize },
    Terminal,
}

impl ConvergentKind {
    pub fn label(&self) -> &'static str {
        match self {
            ConvergentKind::Principal { .. } => "principal",
            ConvergentKind::Mediant { .. } => "mediant",
            ConvergentKind::Terminal => "terminal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StreamEntry {
    pub k: usize,
    /// Index in the full `F_α` stream; equals `k` for the full stream.
    pub full_index: usize,
    #[serde(serialize_with = "crate::export::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::export::ser_bigint")]
    pub q: BigInt,
    #[serde(flatten)]
    pub kind: ConvergentKind,
}

impl StreamEntry {
    pub fn value(&self) -> Result<ExactReal> {
        ExactReal::big_ratio(self.p.clone(), self.q.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MediantStream {
    pub alpha: ExactReal,
    pub x: ExactReal,
    pub flat: bool,
    pub entries: Vec<StreamEntry>,
}

/// Labels symbols by counting completed blocks: every block ends in `R`.
struct Labeler {
    blocks: usize,
    ell: usize,
    done: bool,
}

impl Labeler {
    fn new() -> Self {
        Labeler { blocks: 0, ell: 0, done: false }
    }

    fn push(&mut self, t: FareyTag) -> ConvergentKind {
        if self.done || t == FareyTag::Id {
            self.done = true;
            return ConvergentKind::Terminal;
        }
        if t == FareyTag::R {
            self.blocks += 1;
            self.ell = 0;
            ConvergentKind::Principal { n: self.blocks - 1 }
        } else {
            self.ell += 1;
            ConvergentKind::Mediant { n: self.blocks + 1, ell: self.ell }
        }
    }
}

fn entry(k: usize, full_index: usize, m: &MobiusMatrix, kind: ConvergentKind) -> Result<StreamEntry> {
    let (p, q) = if kind == ConvergentKind::Terminal {
        (m.a12.clone(), m.a22.clone())
    } else {
        (m.a11.clone(), m.a21.clone())
    };
    if q.is_zero() {
        return Err(Error::Pole(format!("Π_{k}(-inf) is infinite")));
    }
    let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
    Ok(StreamEntry { k, full_index, p, q, kind })
}

/// `Π_k(-∞)` for `k = 1..=count` along the `F_α` orbit of `x`.
pub fn mediant_sequence(alpha: &Alpha, x: &ExactReal, count: usize) -> Result<MediantStream> {
    let mut cur = x.clone();
    let mut m = MobiusMatrix::identity();
    let mut labels = Labeler::new();
    let mut entries = Vec::with_capacity(count);
    for k in 1..=count {
        let (y, t) = alpha_farey_step_tagged(alpha, &cur)?;
        m = m.mul(&t.matrix());
        entries.push(entry(k, k, &m, labels.push(t))?);
        cur = y;
    }
    Ok(MediantStream { alpha: alpha.value.clone(), x: x.clone(), flat: false, entries })
}

/// The same stream sampled only at the `F_{α,♭}` times, for `x ∈ [α-1, 1]`.
pub fn flat_mediant_sequence(alpha: &Alpha, x: &ExactReal, count: usize) -> Result<MediantStream> {
    let mut cur = x.clone();
    let mut m = MobiusMatrix::identity();
    let mut labels = Labeler::new();
    let mut full = 0usize;
    let mut entries = Vec::with_capacity(count);
    for k in 1..=count {
        let b = flat_branch(alpha, &cur)?;
        let mut kind = ConvergentKind::Terminal;
        for &t in flat_branch_symbols(b, cur.is_zero()) {
            m = m.mul(&t.matrix());
            kind = labels.push(t);
            full += 1;
        }
        entries.push(entry(k, full, &m, kind)?);
        let (mat, _) = super::maps::flat_branch_matrix(b);
        cur = mat
            .apply_finite(&cur)?
            .finite()
            .cloned()
            .ok_or_else(|| Error::Pole("flat branch pole".into()))?;
    }
    Ok(MediantStream { alpha: alpha.value.clone(), x: x.clone(), flat: true, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> ExactReal {
        ExactReal::ratio(p, q).unwrap()
    }

    fn values(s: &MediantStream) -> Vec<String> {
        s.entries.iter().map(|e| format!("{}/{}", e.p, e.q)).collect()
    }

    #[test]
    fn rcf_stream_for_three_tenths() {
        let a = Alpha::new(&q(1, 1)).unwrap();
        let s = mediant_sequence(&a, &q(3, 10), 3).unwrap();
        assert_eq!(values(&s), ["1/1", "1/2", "0/1"]);
        assert_eq!(s.entries[2].kind, ConvergentKind::Principal { n: 0 });
        let long = mediant_sequence(&a, &q(3, 10), 9).unwrap();
        assert_eq!(long.entries.last().unwrap().value().unwrap(), q(3, 10));
    }

    #[test]
    fn two_fifths_full_and_flat() {
        let a = Alpha::new(&q(2, 5)).unwrap();
        let full = mediant_sequence(&a, &q(-3, 8), 6).unwrap();
        assert_eq!(values(&full), ["-1/1", "-1/2", "0/1", "-1/2", "-2/5", "-1/3"]);
        let flat = flat_mediant_sequence(&a, &q(-3, 8), 4).unwrap();
        assert_eq!(values(&flat), ["-1/1", "0/1", "-1/2", "-1/3"]);
        let idx: Vec<usize> = flat.entries.iter().map(|e| e.full_index).collect();
        assert_eq!(idx, [1, 3, 4, 6]);
    }
}
