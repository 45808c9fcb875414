//! Words in the free monoid on `m` generators `x1..xm`.
//!
//! Words are ordered graded-lexicographically (length first, then letter by
//! letter). The cyclic class of a word is represented by its least rotation;
//! the aperiodic classes (classes of primitive words) index the free
//! generators of the abelianized algebras.

use crate::error::{input_err, Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// A word, stored as zero-based generator indices. The empty word is the
/// identity monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u8>);

/// Multidegree: component `h` is the number of occurrences of `x_{h+1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Word from zero-based letters.
    pub fn from_letters(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    /// Word from one-based generator indices, as used in text and JSON.
    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                if i == 0 || i > 255 {
                    Err(Error::Input(format!("generator index {i} out of range 1..=255")))
                } else {
                    Ok((i - 1) as u8)
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    pub fn generator(h: u8) -> Self {
        Word(vec![h])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// One-based indices.
    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|&l| u32::from(l) + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generators needed to write this word.
    pub fn min_alphabet(&self) -> usize {
        self.0.iter().max().map_or(0, |&l| usize::from(l) + 1)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn multidegree(&self, m: usize) -> DegreeVector {
        let mut d = vec![0u32; m.max(self.min_alphabet())];
        for &l in &self.0 {
            d[usize::from(l)] += 1;
        }
        DegreeVector(d)
    }

    /// Rotation starting at offset `i`.
    pub fn rotate(&self, i: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let i = i % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |i| self.rotate(i))
    }

    /// A word is primitive iff it is not `u^k` for `k >= 2`, equivalently iff
    /// it does not occur in `w.w` at an offset strictly between 0 and `|w|`.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_empty() {
            return input_err("primitivity is undefined for the empty word");
        }
        Ok(self.smallest_period_divisor() == self.len())
    }

    /// Smallest interior offset at which `w` occurs in `w.w`, or `|w|`.
    fn smallest_period_divisor(&self) -> usize {
        let l = self.len();
        let doubled = [self.0.as_slice(), self.0.as_slice()].concat();
        (1..l).find(|&i| doubled[i..i + l] == self.0[..]).unwrap_or(l)
    }

    /// `(u, k)` with `u` primitive and `self = u^k`.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return input_err("the empty word has no primitive root");
        }
        let p = self.smallest_period_divisor();
        Ok((Word(self.0[..p].to_vec()), self.len() / p))
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Result<Word> {
        if self.is_empty() {
            return input_err("the empty word has no cyclic class");
        }
        Ok(self.rotations().min_by(|a, b| a.0.cmp(&b.0)).expect("nonempty"))
    }

    /// True when the word is the least rotation of a primitive word.
    pub fn is_necklace_rep(&self) -> bool {
        !self.is_empty() && self.is_primitive().unwrap_or(false) && self.canonical_rotation().ok().as_ref() == Some(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "x{}", u32::from(*l) + 1)?;
        }
        Ok(())
    }
}

/// Parses `x1.x2.x1`; `1` is the empty word.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut indices = Vec::new();
        for part in s.split('.') {
            let digits = part
                .trim()
                .strip_prefix('x')
                .ok_or_else(|| Error::Input(format!("bad generator {part:?} in word {s:?}")))?;
            let i: u32 = digits.parse().map_err(|_| Error::Input(format!("bad generator {part:?} in word {s:?}")))?;
            indices.push(i);
        }
        Word::from_indices(&indices)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Word::from_indices(&v).map_err(serde::de::Error::custom)
    }
}

/// All aperiodic necklaces of length `1..=max_len` over `m` letters, each as
/// its least rotation, sorted graded-lex.
///
/// Generated with Duval's successor rule, which emits exactly the least
/// rotations of primitive words (Lyndon words) of length `<= max_len`.
pub fn enumerate_necklaces(m: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 || max_len == 0 {
        return out;
    }
    let top = (m.min(256) - 1) as u8;
    let mut cur: Vec<u8> = vec![0];
    loop {
        out.push(Word(cur.clone()));
        let period = cur.len();
        while cur.len() < max_len {
            cur.push(cur[cur.len() - period]);
        }
        while cur.last() == Some(&top) {
            cur.pop();
        }
        match cur.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    debug_assert!(out.iter().all(Word::is_necklace_rep));
    out.sort();
    out
}

/// Number of aperiodic necklaces of length `len` over `m` letters:
/// `(1/len) Σ_{d | len} μ(d) m^{len/d}`.
pub fn necklace_count(m: usize, len: usize) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    if len == 0 {
        return BigInt::from(0);
    }
    let mut total = BigInt::from(0);
    for d in (1..=len).filter(|d| len.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu != 0 {
            total += BigInt::from(mu) * num_traits::pow(BigInt::from(m), len / d);
        }
    }
    total / BigInt::from(len)
}

fn mobius(mut k: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if k > 1 {
        mu = -mu;
    }
    mu
}

/// All nonempty words whose multidegree is componentwise at most `bound`, sorted graded-lex.
pub fn words_below(bound: &DegreeVector) -> Vec<Word> {
    fn rec(bound: &mut [u32], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if !cur.is_empty() {
            out.push(Word(cur.clone()));
        }
        for h in 0..bound.len() {
            if bound[h] > 0 {
                bound[h] -= 1;
                cur.push(h as u8);
                rec(bound, cur, out);
                cur.pop();
                bound[h] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut b = bound.0.clone();
    rec(&mut b, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl DegreeVector {
    pub fn zero(m: usize) -> Self {
        DegreeVector(vec![0; m])
    }

    pub fn unit(m: usize, h: usize) -> Self {
        let mut d = vec![0; m];
        d[h] = 1;
        DegreeVector(d)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `<=`; vectors of different lengths are padded with 0.
    pub fn is_below(&self, other: &DegreeVector) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|i| self.0.get(i).copied().unwrap_or(0) <= other.0.get(i).copied().unwrap_or(0))
    }

    pub fn scaled(&self, k: u32) -> DegreeVector {
        DegreeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self - other` when `other <= self`.
    pub fn checked_sub(&self, other: &DegreeVector) -> Option<DegreeVector> {
        if !other.is_below(self) {
            return None;
        }
        Some(DegreeVector(
            (0..self.0.len()).map(|i| self.0[i] - other.0.get(i).copied().unwrap_or(0)).collect(),
        ))
    }

    /// Every vector in `N^m` of total degree `<= max_total`, ordered by total
    /// degree and then with larger leading components first.
    pub fn all_up_to(m: usize, max_total: u32) -> Vec<DegreeVector> {
        fn rec(m: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<DegreeVector>) {
            if cur.len() + 1 == m {
                cur.push(remaining);
                out.push(DegreeVector(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=remaining).rev() {
                cur.push(c);
                rec(m, remaining - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            out.push(DegreeVector(Vec::new()));
            return out;
        }
        for d in 0..=max_total {
            rec(m, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;
    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        let n = self.0.len().max(rhs.0.len());
        DegreeVector((0..n).map(|i| self.0.get(i).copied().unwrap_or(0) + rhs.0.get(i).copied().unwrap_or(0)).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
