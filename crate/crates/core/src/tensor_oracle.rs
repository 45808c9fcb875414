//! Brute-force model of `T^n(F)`: explicit linear combinations of
//! `n`-tuples of words with slotwise multiplication.
//!
//! This is the reference the Product Formula is checked against. It is
//! exponential by nature and hard-capped at `n <= 6` and a million terms.

use crate::error::{input_err, Error, Result};
use crate::polyring::Coeff;
use crate::symtensor::{ExponentMap, Mode, SymElement};
use crate::words::Word;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_SLOTS: u32 = 6;
pub const MAX_TERMS: usize = 1_000_000;

/// An `n`-tuple of words; empty slots hold the empty word.
pub type TensorWord = Vec<Word>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    n: u32,
    terms: BTreeMap<TensorWord, Coeff>,
}

fn check_slots(n: u32) -> Result<()> {
    if n > MAX_SLOTS {
        return Err(Error::ResourceCap(format!("tensor oracle is limited to n <= {MAX_SLOTS}, got {n}")));
    }
    Ok(())
}

fn check_terms(count: usize) -> Result<()> {
    if count > MAX_TERMS {
        return Err(Error::ResourceCap(format!("tensor oracle exceeded {MAX_TERMS} terms")));
    }
    Ok(())
}

impl TensorElement {
    pub fn zero(n: u32) -> Self {
        TensorElement { n, terms: BTreeMap::new() }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn one(n: u32) -> Self {
        Self::from_terms(n, [(vec![Word::empty(); n as usize], Coeff::one())]).expect("well-formed")
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (TensorWord, Coeff)>) -> Result<Self> {
        check_slots(n)?;
        let mut t = Self::zero(n);
        for (tw, c) in terms {
            if tw.len() != n as usize {
                return input_err(format!("tensor word has {} slots, expected {n}", tw.len()));
            }
            t.add_term(tw, c);
        }
        Ok(t)
    }

    fn add_term(&mut self, tw: TensorWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tw) {
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
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tw: &TensorWord) -> Coeff {
        self.terms.get(tw).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Invariant under all slot permutations; adjacent transpositions
    /// generate `S_n`, so they are the only ones checked.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(TensorWord, usize)> {
        for (tw, c) in &self.terms {
            for i in 0..tw.len().saturating_sub(1) {
                let mut swapped = tw.clone();
                swapped.swap(i, i + 1);
                if &self.coeff(&swapped) != c {
                    return Some((tw.clone(), i));
                }
            }
        }
        None
    }
}

/// Orbit sum of `υ_1^{⊗α_1} ⊗ ... ⊗ 1^{⊗(n-|α|)}`: every distinct
/// arrangement of the slot multiset, each with coefficient one.
pub fn orbit_expand(alpha: &ExponentMap, n: u32) -> Result<TensorElement> {
    check_slots(n)?;
    if alpha.weight() > n {
        return input_err(format!("{alpha} has weight {} > n = {n}", alpha.weight()));
    }
    let mut slots: Vec<Word> = Vec::with_capacity(n as usize);
    for (w, e) in alpha.entries() {
        slots.extend(std::iter::repeat_n(w.clone(), *e as usize));
    }
    slots.extend(std::iter::repeat_n(Word::empty(), (n - alpha.weight()) as usize));
    slots.sort();
    let mut out = TensorElement::zero(n);
    loop {
        out.terms.insert(slots.clone(), Coeff::one());
        check_terms(out.terms.len())?;
        if !next_permutation(&mut slots) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next lexicographic permutation of a multiset.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Slotwise product: `(a_1⊗..⊗a_n)(b_1⊗..⊗b_n) = a_1b_1⊗..⊗a_nb_n`.
pub fn tensor_mul(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    if a.n != b.n {
        return input_err(format!("tensor orders differ: {} vs {}", a.n, b.n));
    }
    check_terms(a.terms.len().saturating_mul(b.terms.len()).min(MAX_TERMS + 1))?;
    let mut out = TensorElement::zero(a.n);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let tw: TensorWord = x.iter().zip(y).map(|(p, q)| p.concat(q)).collect();
            out.add_term(tw, cx * cy);
        }
    }
    Ok(out)
}

/// Coordinates of a symmetric tensor in the orbit-sum basis. Each orbit
/// contains exactly one sorted tuple, whose coefficient is the coordinate.
pub fn project_to_basis(t: &TensorElement) -> Result<SymElement> {
    if let Some((tw, i)) = t.first_asymmetry() {
        return Err(Error::NotInvariant(format!(
            "swapping slots {} and {} of {} changes the coefficient",
            i + 1,
            i + 2,
            show_tensor_word(&tw)
        )));
    }
    let mut out = SymElement::zero(Mode::Truncated(t.n));
    for (tw, c) in &t.terms {
        if tw.windows(2).all(|p| p[0] <= p[1]) {
            let alpha = ExponentMap::new(tw.iter().filter(|w| !w.is_empty()).map(|w| (w.clone(), 1)))?;
            out.add_term(alpha, c.clone())?;
        }
    }
    Ok(out)
}

/// Expands a whole element of `TS^n` into tensors.
pub fn expand_element(e: &SymElement) -> Result<TensorElement> {
    let Mode::Truncated(n) = e.mode() else {
        return input_err("only truncated elements live in a tensor power");
    };
    let mut out = TensorElement::zero(n);
    for (alpha, c) in e.terms() {
        for (tw, d) in orbit_expand(alpha, n)?.terms {
            out.add_term(tw, d * c);
        }
        check_terms(out.terms.len())?;
    }
    Ok(out)
}

/// Reference product in `TS^n`: expand both factors, multiply slotwise,
/// read coordinates back.
pub fn oracle_product(alpha: &ExponentMap, beta: &ExponentMap, n: u32) -> Result<SymElement> {
    project_to_basis(&tensor_mul(&orbit_expand(alpha, n)?, &orbit_expand(beta, n)?)?)
}

fn show_tensor_word(tw: &TensorWord) -> String {
    tw.iter().map(ToString::to_string).collect::<Vec<_>>().join("⊗")
}

/// Debug form: `c*u⊗v⊗1 + ...`, terms sorted.
impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        crate::polyring::write_lincomb(&mut s, self.terms.iter().map(|(tw, c)| (show_tensor_word(tw), c)));
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{coeff, multinomial};
    use num_bigint::BigInt;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn al(s: &str) -> ExponentMap {
        s.parse().unwrap()
    }

    fn tw(s: &str) -> TensorWord {
        s.split('⊗').map(w).collect()
    }

    #[test]
    fn orbit_of_two_one_in_three_slots() {
        let f = "x1";
        let g = "x2";
        let t = orbit_expand(&al(&format!("{{{f}:2, {g}:1}}")), 3).unwrap();
        let expected: Vec<TensorWord> = ["x1⊗x1⊗x2", "x1⊗x2⊗x1", "x2⊗x1⊗x1"].iter().map(|s| tw(s)).collect();
        assert_eq!(t.terms().map(|(k, _)| k.clone()).collect::<Vec<_>>(), expected);
        assert!(t.terms().all(|(_, c)| c == &coeff(1)));
    }

    #[test]
    fn orbit_with_unit_slot() {
        assert_eq!(orbit_expand(&al("{x1:2, x2:1}"), 4).unwrap().len(), 12);
        let one = orbit_expand(&ExponentMap::identity(), 2).unwrap();
        assert_eq!(one, TensorElement::one(2));
        assert_eq!(one.to_string(), "1⊗1");
        assert!(orbit_expand(&al("{x1:3}"), 2).is_err());
    }

    #[test]
    fn slotwise_products() {
        let a = TensorElement::from_terms(2, [(tw("x1⊗1"), coeff(1))]).unwrap();
        let b = TensorElement::from_terms(2, [(tw("1⊗x1"), coeff(1))]).unwrap();
        assert_eq!(tensor_mul(&a, &b).unwrap(), TensorElement::from_terms(2, [(tw("x1⊗x1"), coeff(1))]).unwrap());
        let s = TensorElement::from_terms(2, [(tw("x1⊗1"), coeff(1)), (tw("1⊗x1"), coeff(1))]).unwrap();
        let sq = tensor_mul(&s, &s).unwrap();
        let expected = TensorElement::from_terms(
            2,
            [(tw("x1.x1⊗1"), coeff(1)), (tw("x1⊗x1"), coeff(2)), (tw("1⊗x1.x1"), coeff(1))],
        )
        .unwrap();
        assert_eq!(sq, expected);
        let p = tensor_mul(&orbit_expand(&al("{x1:1}"), 2).unwrap(), &orbit_expand(&al("{x2:1}"), 2).unwrap()).unwrap();
        let expected = TensorElement::from_terms(
            2,
            ["x1.x2⊗1", "x1⊗x2", "x2⊗x1", "1⊗x1.x2"].iter().map(|s| (tw(s), coeff(1))),
        )
        .unwrap();
        assert_eq!(p, expected);
        assert!(tensor_mul(&TensorElement::one(2), &TensorElement::one(3)).is_err());
    }

    #[test]
    fn projection_examples() {
        let a = al("{x1:1, x1.x2:2}");
        let e = project_to_basis(&orbit_expand(&a, 4).unwrap()).unwrap();
        assert_eq!(e, SymElement::basis(Mode::Truncated(4), a).unwrap());
        let xx = TensorElement::from_terms(2, [(tw("x1⊗x1"), coeff(1))]).unwrap();
        assert_eq!(project_to_basis(&xx).unwrap(), SymElement::basis(Mode::Truncated(2), al("{x1:2}")).unwrap());
        let x1 = TensorElement::from_terms(2, [(tw("x1⊗1"), coeff(1))]).unwrap();
        assert!(matches!(project_to_basis(&x1), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn orbit_sizes_match_multinomial() {
        let words = [w("x1"), w("x2"), w("x1.x2"), w("x2.x1")];
        // all α of weight <= 4 on distinct words
        let mut alphas = vec![ExponentMap::identity()];
        for word in &words {
            let mut next = Vec::new();
            for a in &alphas {
                for e in 0..=4u32 {
                    if a.weight() + e <= 4 {
                        let mut entries = a.entries().to_vec();
                        entries.push((word.clone(), e));
                        next.push(ExponentMap::new(entries).unwrap());
                    }
                }
            }
            alphas = next;
        }
        for a in &alphas {
            for n in a.weight()..=5 {
                let mut parts: Vec<u32> = a.entries().iter().map(|(_, e)| *e).collect();
                parts.push(n - a.weight());
                let t = orbit_expand(a, n).unwrap();
                assert_eq!(BigInt::from(t.len()), multinomial(&parts));
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(orbit_expand(&ExponentMap::identity(), 7), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn next_permutation_enumerates_multiset() {
        let mut v = vec![1, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }
}
