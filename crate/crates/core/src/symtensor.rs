//! Symmetric tensors `TS^n(F)` in the orbit-sum basis, and the free object
//! that lifts their product to all weights at once.
//!
//! A basis element is indexed by an [`ExponentMap`] `α`, a finitely
//! supported map from nonempty words to positive integers; in
//! `Truncated(n)` mode it stands for the orbit sum `e_α^n` (and requires
//! `|α| <= n`), in `Free` mode for the formal symbol `f_α`. Both modes share
//! [`basis_mul`]; the free mode simply never drops terms by weight.

use crate::error::{input_err, Error, Result};
use crate::limits::Limits;
use crate::polyring::{multinomial, write_lincomb, Coeff};
use crate::words::{words_below, DegreeVector, Word};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Finitely supported map from nonempty words to positive exponents,
/// sorted by word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExponentMap(Vec<(Word, u32)>);

impl ExponentMap {
    pub fn identity() -> Self {
        ExponentMap(Vec::new())
    }

    /// Builds a map from arbitrary entries; repeated words are summed, zero
    /// exponents dropped. The empty word is rejected.
    pub fn new(entries: impl IntoIterator<Item = (Word, u32)>) -> Result<Self> {
        let mut map: BTreeMap<Word, u32> = BTreeMap::new();
        for (w, e) in entries {
            if w.is_empty() {
                return input_err("the empty word cannot carry an exponent");
            }
            if e > 0 {
                *map.entry(w).or_insert(0) += e;
            }
        }
        Ok(ExponentMap(map.into_iter().collect()))
    }

    /// `{w: i}`, the index of `e_i(w)`.
    pub fn single(w: Word, i: u32) -> Result<Self> {
        Self::new([(w, i)])
    }

    pub fn entries(&self) -> &[(Word, u32)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α|`, the sum of the exponents.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn multidegree(&self, m: usize) -> DegreeVector {
        let mut d = DegreeVector::zero(m);
        for (w, e) in &self.0 {
            d = &d + &w.multidegree(m).scaled(*e);
        }
        d
    }

    pub fn min_alphabet(&self) -> usize {
        self.0.iter().map(|(w, _)| w.min_alphabet()).max().unwrap_or(0)
    }

    /// The map with the first support block removed.
    pub fn without_first(&self) -> ExponentMap {
        ExponentMap(self.0[1..].to_vec())
    }
}

impl fmt::Display for ExponentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (w, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}:{e}")?;
        }
        f.write_str("}")
    }
}

/// Parses `{x1:2, x1.x2:1}`; `{}` is the identity.
impl FromStr for ExponentMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Input(format!("exponent map must be written {{word:exp, ...}}, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(ExponentMap::identity());
        }
        let mut entries = Vec::new();
        for item in inner.split(',') {
            let (w, e) = item
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("missing ':' in exponent map entry {item:?}")))?;
            let w: Word = w.parse()?;
            let e: u32 = e.trim().parse().map_err(|_| Error::Input(format!("bad exponent in {item:?}")))?;
            if e == 0 {
                return input_err(format!("zero exponent in {item:?}"));
            }
            entries.push((w, e));
        }
        ExponentMap::new(entries)
    }
}

impl Serialize for ExponentMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<(Word, u32)>::deserialize(d)?;
        if v.iter().any(|(_, e)| *e == 0) {
            return Err(serde::de::Error::custom("exponents must be positive"));
        }
        ExponentMap::new(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `TS^n(F)`: weights are capped at `n`.
    Truncated(u32),
    /// The free object: no weight cap.
    Free,
}

impl Mode {
    fn admits(&self, weight: u32) -> bool {
        match self {
            Mode::Truncated(n) => weight <= *n,
            Mode::Free => true,
        }
    }
}

/// Exact linear combination of basis elements in a given mode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymElement {
    mode: Mode,
    terms: BTreeMap<ExponentMap, Coeff>,
}

impl SymElement {
    pub fn zero(mode: Mode) -> Self {
        SymElement { mode, terms: BTreeMap::new() }
    }

    pub fn identity(mode: Mode) -> Self {
        Self::basis(mode, ExponentMap::identity()).expect("identity has weight 0")
    }

    pub fn basis(mode: Mode, alpha: ExponentMap) -> Result<Self> {
        Self::term(mode, alpha, Coeff::one())
    }

    pub fn term(mode: Mode, alpha: ExponentMap, c: Coeff) -> Result<Self> {
        let mut e = Self::zero(mode);
        e.add_term(alpha, c)?;
        Ok(e)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMap, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &ExponentMap) -> Coeff {
        self.terms.get(alpha).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, alpha: ExponentMap, c: Coeff) -> Result<()> {
        if !self.mode.admits(alpha.weight()) {
            return input_err(format!("{alpha} has weight {} above the truncation {:?}", alpha.weight(), self.mode));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &Coeff::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-Coeff::one())
    }

    pub fn add_scaled(&self, other: &Self, c: &Coeff) -> Result<Self> {
        if self.mode != other.mode {
            return input_err(format!("mode mismatch: {:?} vs {:?}", self.mode, other.mode));
        }
        let mut out = self.clone();
        for (a, d) in &other.terms {
            out.add_term(a.clone(), d * c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.mode);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(a, d)| (a.clone(), d * c)).collect();
        }
        out
    }

    /// Components of multidegree `delta`.
    pub fn homogeneous_part(&self, delta: &DegreeVector) -> Self {
        let m = delta.m();
        SymElement {
            mode: self.mode,
            terms: self.terms.iter().filter(|(a, _)| &a.multidegree(m) == delta).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    pub fn min_alphabet(&self) -> usize {
        self.terms.keys().map(ExponentMap::min_alphabet).max().unwrap_or(0)
    }
}

/// Writes one basis symbol: `1`, `e2[x1]` for a single block, `e{x1:1, x2:1}`
/// otherwise (`f` instead of `e` in free mode).
pub fn basis_label(mode: Mode, alpha: &ExponentMap) -> String {
    let sym = match mode {
        Mode::Truncated(_) => 'e',
        Mode::Free => 'f',
    };
    match alpha.entries() {
        [] => "1".to_string(),
        [(w, i)] => format!("{sym}{i}[{w}]"),
        _ => format!("{sym}{alpha}"),
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_lincomb(&mut s, self.terms.iter().map(|(a, c)| (basis_label(self.mode, a), c)));
        f.write_str(&s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: ExponentMap,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    mode: Mode,
    terms: Vec<TermJson>,
}

impl Serialize for SymElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            mode: self.mode,
            terms: self.terms.iter().map(|(a, c)| TermJson { alpha: a.clone(), coeff: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let mut e = SymElement::zero(raw.mode);
        for t in raw.terms {
            let c: Coeff = t.coeff.parse().map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            e.add_term(t.alpha, c).map_err(serde::de::Error::custom)?;
        }
        Ok(e)
    }
}

/// All `α` with `|α| <= n` and multidegree `delta`: the basis `B_{n,δ}`,
/// sorted by `α`.
pub fn enumerate_basis(n: u32, delta: &DegreeVector) -> Vec<ExponentMap> {
    let mut out = Vec::new();
    let _ = visit_basis(n, delta, usize::MAX, |a| out.push(a));
    out.sort();
    out
}

/// [`enumerate_basis`] that refuses to produce more than `limits.max_basis`
/// elements.
pub fn enumerate_basis_capped(n: u32, delta: &DegreeVector, limits: &Limits) -> Result<Vec<ExponentMap>> {
    let mut out = Vec::new();
    let complete = visit_basis(n, delta, limits.max_basis, |a| out.push(a));
    if !complete {
        return Err(Error::ResourceCap(format!(
            "basis of TS^{n} in multidegree {delta} has more than {} elements",
            limits.max_basis
        )));
    }
    out.sort();
    Ok(out)
}

/// Visits basis elements until `cap` of them have been produced; returns
/// whether the enumeration finished.
fn visit_basis(n: u32, delta: &DegreeVector, cap: usize, mut visit: impl FnMut(ExponentMap)) -> bool {
    let m = delta.m();
    let words: Vec<(Word, DegreeVector)> = words_below(delta).into_iter().map(|w| {
        let d = w.multidegree(m);
        (w, d)
    }).collect();

    struct Search<'a, F> {
        words: &'a [(Word, DegreeVector)],
        n: u32,
        cap: usize,
        produced: usize,
        visit: F,
        chosen: Vec<(Word, u32)>,
    }
    impl<F: FnMut(ExponentMap)> Search<'_, F> {
        fn go(&mut self, start: usize, remaining: &DegreeVector, weight: u32) -> bool {
            if remaining.is_zero() {
                if self.produced >= self.cap {
                    return false;
                }
                self.produced += 1;
                (self.visit)(ExponentMap(self.chosen.clone()));
                return true;
            }
            for idx in start..self.words.len() {
                let (w, d) = &self.words[idx];
                let mut rem = remaining.clone();
                let mut e = 0;
                while let Some(r) = rem.checked_sub(d) {
                    e += 1;
                    if weight + e > self.n {
                        break;
                    }
                    rem = r;
                    self.chosen.push((w.clone(), e));
                    let ok = self.go(idx + 1, &rem, weight + e);
                    self.chosen.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
    }
    let mut s = Search { words: &words, n, cap, produced: 0, visit: &mut visit, chosen: Vec::new() };
    s.go(0, delta, 0)
}

/// Calls `visit` on every `h × k` matrix of naturals whose row sums are at
/// most `row_caps` and column sums at most `col_caps`, and whose total is at
/// least `min_total`. Matrices are visited in lexicographic order of their
/// row-major entries.
pub fn for_each_inner_table(row_caps: &[u32], col_caps: &[u32], min_total: u32, mut visit: impl FnMut(&[u32])) {
    let h = row_caps.len();
    let k = col_caps.len();
    let mut table = vec![0u32; h * k];
    let mut row_left = row_caps.to_vec();
    let mut col_left = col_caps.to_vec();
    // Upper bound on what the cells from `cell` on can still add.
    fn reachable(cell: usize, k: usize, row_left: &[u32], col_left: &[u32]) -> u32 {
        let i = cell / k.max(1);
        let rows: u32 = row_left[i.min(row_left.len())..].iter().sum();
        let cols: u32 = col_left.iter().sum();
        rows.min(cols)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cell: usize,
        k: usize,
        total: u32,
        min_total: u32,
        table: &mut [u32],
        row_left: &mut [u32],
        col_left: &mut [u32],
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if cell == table.len() {
            if total >= min_total {
                visit(table);
            }
            return;
        }
        if total + reachable(cell, k, row_left, col_left) < min_total {
            return;
        }
        let (i, j) = (cell / k, cell % k);
        let top = row_left[i].min(col_left[j]);
        for v in 0..=top {
            table[cell] = v;
            row_left[i] -= v;
            col_left[j] -= v;
            rec(cell + 1, k, total + v, min_total, table, row_left, col_left, visit);
            row_left[i] += v;
            col_left[j] += v;
        }
        table[cell] = 0;
    }
    if h == 0 || k == 0 {
        if min_total == 0 {
            visit(&table);
        }
        return;
    }
    rec(0, k, 0, min_total, &mut table, &mut row_left, &mut col_left, &mut visit);
}

/// Product of two basis elements by the Product Formula.
///
/// With `α` supported on `r_1..r_h` and `β` on `s_1..s_k`, every inner table
/// `γ_ij` (row sums `<= α_i`, column sums `<= β_j`) contributes the list
/// `(r_i, α_i - Σ_j γ_ij)`, `(s_j, β_j - Σ_i γ_ij)`, `(r_i s_j, γ_ij)`.
/// Words repeated in the list are merged with a multinomial coefficient,
/// since `e_(c_1..c_t)(w, .., w) = (Σc)!/(c_1!..c_t!) e_Σc(w)`. In
/// `Truncated(n)` mode contributions of weight above `n` are dropped.
pub fn basis_mul(alpha: &ExponentMap, beta: &ExponentMap, mode: Mode) -> Result<SymElement> {
    if !mode.admits(alpha.weight()) || !mode.admits(beta.weight()) {
        return input_err(format!("factors {alpha} and {beta} exceed the truncation {mode:?}"));
    }
    let rows: Vec<u32> = alpha.entries().iter().map(|(_, e)| *e).collect();
    let cols: Vec<u32> = beta.entries().iter().map(|(_, e)| *e).collect();
    let full = alpha.weight() + beta.weight();
    // each unit placed in the inner table lowers the weight by one
    let min_inner = match mode {
        Mode::Truncated(n) => full.saturating_sub(n),
        Mode::Free => 0,
    };
    let k = cols.len();
    let mut acc: BTreeMap<ExponentMap, Coeff> = BTreeMap::new();
    for_each_inner_table(&rows, &cols, min_inner, |table| {
        let mut slots: BTreeMap<Word, Vec<u32>> = BTreeMap::new();
        let mut push = |w: Word, c: u32| {
            if c > 0 {
                slots.entry(w).or_default().push(c);
            }
        };
        for (i, (r, a)) in alpha.entries().iter().enumerate() {
            let used: u32 = table[i * k..(i + 1) * k].iter().sum();
            push(r.clone(), a - used);
        }
        for (j, (s, b)) in beta.entries().iter().enumerate() {
            let used: u32 = (0..rows.len()).map(|i| table[i * k + j]).sum();
            push(s.clone(), b - used);
        }
        for (i, (r, _)) in alpha.entries().iter().enumerate() {
            for (j, (s, _)) in beta.entries().iter().enumerate() {
                push(r.concat(s), table[i * k + j]);
            }
        }
        let mut coeff = num_bigint::BigInt::one();
        let mut gamma = Vec::with_capacity(slots.len());
        for (w, counts) in slots {
            coeff *= multinomial(&counts);
            gamma.push((w, counts.iter().sum()));
        }
        let gamma = ExponentMap(gamma);
        *acc.entry(gamma).or_insert_with(Coeff::zero) += Coeff::from_integer(coeff);
    });
    acc.retain(|_, c| !c.is_zero());
    Ok(SymElement { mode, terms: acc })
}

/// Bilinear extension of [`basis_mul`].
pub fn elem_mul(a: &SymElement, b: &SymElement) -> Result<SymElement> {
    if a.mode != b.mode {
        return input_err(format!("mode mismatch: {:?} vs {:?}", a.mode, b.mode));
    }
    let mut out = SymElement::zero(a.mode);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let prod = basis_mul(x, y, a.mode)?;
            let c = cx * cy;
            for (g, cg) in prod.terms {
                out.add_term(g, cg * &c)?;
            }
        }
    }
    Ok(out)
}

/// `σ_n`: drops every term of weight above `n` and reads the rest in
/// `TS^n`.
pub fn truncate(a: &SymElement, n: u32) -> Result<SymElement> {
    if a.mode != Mode::Free {
        return input_err("truncate expects an element of the free object");
    }
    Ok(SymElement {
        mode: Mode::Truncated(n),
        terms: a.terms.iter().filter(|(al, _)| al.weight() <= n).map(|(al, c)| (al.clone(), c.clone())).collect(),
    })
}
