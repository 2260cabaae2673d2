//! The δ alphabet of the induced Farey maps and the δ/η word recodings.

use crate::error::{Error, Result};
use crate::rng::StreamRng;
use rand::Rng;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DeltaClass {
    Minus,
    Plus,
    Zero,
}

/// `δ_{-,k}`, `δ_{+,k}` or `δ_{0,k}`, written `-k`, `+k`, `zk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSymbol {
    pub class: DeltaClass,
    pub k: u64,
}

impl DeltaSymbol {
    pub fn minus(k: u64) -> Self {
        DeltaSymbol { class: DeltaClass::Minus, k }
    }

    pub fn plus(k: u64) -> Self {
        DeltaSymbol { class: DeltaClass::Plus, k }
    }

    pub fn zero(k: u64) -> Self {
        DeltaSymbol { class: DeltaClass::Zero, k }
    }

    pub fn is_zero_class(self) -> bool {
        self.class == DeltaClass::Zero
    }

    fn is_minus2(self) -> bool {
        self == DeltaSymbol::minus(2)
    }

    fn is_zero2(self) -> bool {
        self == DeltaSymbol::zero(2)
    }
}

impl fmt::Display for DeltaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            DeltaClass::Minus => write!(f, "-{}", self.k),
            DeltaClass::Plus => write!(f, "+{}", self.k),
            DeltaClass::Zero => write!(f, "z{}", self.k),
        }
    }
}

impl Serialize for DeltaSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for DeltaSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad delta symbol '{s}'; expected -k, +k or zk"));
        let (class, rest) = match s.chars().next().ok_or_else(bad)? {
            '-' => (DeltaClass::Minus, &s[1..]),
            '+' => (DeltaClass::Plus, &s[1..]),
            'z' => (DeltaClass::Zero, &s[1..]),
            _ => return Err(bad()),
        };
        let k = rest.parse().map_err(|_| bad())?;
        Ok(DeltaSymbol { class, k })
    }
}

pub fn parse_word(s: &str) -> Result<Vec<DeltaSymbol>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Checks the transition rules of δ-words of `F̂_{α,♭,1}` orbits:
/// `δ_{0,k}` only right after `δ_{-,k}`, `δ_{-,k}` (k >= 3) always followed
/// by `δ_{0,k}`, `δ_{0,2}` followed by a plus symbol, plus symbols at least
/// `k0`, and minus and zero symbols at least 2.
pub fn check_delta_word(word: &[DeltaSymbol], k0: u64) -> Result<()> {
    let err = |i: usize, why: &str| Err(Error::Grammar(format!("position {i} ({}): {why}", word[i])));
    for (i, &s) in word.iter().enumerate() {
        match s.class {
            DeltaClass::Plus if s.k < k0.max(1) => return err(i, "plus digit below k0"),
            DeltaClass::Minus | DeltaClass::Zero if s.k < 2 => return err(i, "digit below 2"),
            _ => {}
        }
        let next = word.get(i + 1).copied();
        if s.is_zero_class() && (i == 0 || word[i - 1] != DeltaSymbol::minus(s.k)) {
            return err(i, "zero symbol not preceded by the matching minus symbol");
        }
        match (s.class, next) {
            (DeltaClass::Minus, Some(n)) if s.k >= 3 && n != DeltaSymbol::zero(s.k) => {
                return err(i, "minus symbol with k >= 3 must be followed by its zero symbol")
            }
            (DeltaClass::Minus, Some(n)) if s.k == 2 && n.class == DeltaClass::Plus => {
                return err(i, "minus 2 is followed by zero 2 or a minus symbol")
            }
            (DeltaClass::Plus, Some(n)) | (DeltaClass::Zero, Some(n)) if n.is_zero_class() => {
                return err(i + 1, "zero symbol not preceded by the matching minus symbol")
            }
            _ => {}
        }
        if s.is_zero2() && next.is_some_and(|n| n.class != DeltaClass::Plus) {
            return err(i, "zero 2 must be followed by a plus symbol");
        }
    }
    Ok(())
}

fn insert_minus2(word: &[DeltaSymbol]) -> Vec<DeltaSymbol> {
    let mut out = Vec::with_capacity(word.len() + word.len() / 4);
    for &s in word {
        if s.is_zero2() {
            out.push(DeltaSymbol::minus(2));
        }
        out.push(s);
    }
    out
}

/// η-words are the images of δ-words under `delta_to_eta`.
pub fn check_eta_word(word: &[DeltaSymbol], k0: u64) -> Result<()> {
    check_delta_word(&insert_minus2(word), k0)
}

/// Deletes every `δ_{-,2}` that is followed by `δ_{0,2}`.
pub fn delta_to_eta(word: &[DeltaSymbol], k0: u64) -> Result<Vec<DeltaSymbol>> {
    check_delta_word(word, k0)?;
    Ok(word
        .iter()
        .enumerate()
        .filter(|&(i, s)| !(s.is_minus2() && word.get(i + 1).is_some_and(|n| n.is_zero2())))
        .map(|(_, &s)| s)
        .collect())
}

/// Inserts `δ_{-,2}` before every `δ_{0,2}`.
pub fn eta_to_delta(word: &[DeltaSymbol], k0: u64) -> Result<Vec<DeltaSymbol>> {
    let out = insert_minus2(word);
    check_delta_word(&out, k0)?;
    Ok(out)
}

/// A random grammar-valid δ-word of the given length with digits at most
/// `max_k`.
pub fn random_delta_word(rng: &mut StreamRng, len: usize, k0: u64, max_k: u64) -> Vec<DeltaSymbol> {
    let k0 = k0.max(1);
    let max_k = max_k.max(k0).max(3);
    let fresh = |rng: &mut StreamRng| {
        if rng.gen_bool(0.5) {
            DeltaSymbol::minus(rng.gen_range(2..=max_k))
        } else {
            DeltaSymbol::plus(rng.gen_range(k0..=max_k))
        }
    };
    let mut out: Vec<DeltaSymbol> = Vec::with_capacity(len);
    while out.len() < len {
        let next = match out.last() {
            None => fresh(rng),
            Some(s) if s.class == DeltaClass::Minus && s.k >= 3 => DeltaSymbol::zero(s.k),
            Some(s) if s.is_minus2() => {
                if rng.gen_bool(0.5) {
                    DeltaSymbol::zero(2)
                } else {
                    DeltaSymbol::minus(rng.gen_range(2..=max_k))
                }
            }
            Some(s) if s.is_zero2() => DeltaSymbol::plus(rng.gen_range(k0..=max_k)),
            Some(_) => fresh(rng),
        };
        out.push(next);
    }
    out
}
