//! The abelianized free object: the commutative polynomial ring on the
//! generators `f[i;υ]` (`i >= 1`, `υ` a primitive word in canonical
//! rotation), the rewriting of orbit sums into it, and graded dimensions of
//! abelianized symmetric tensors.

use crate::error::{input_err, Error, Result};
use crate::limits::Limits;
use crate::polyring::{Monomial, MultiPoly, SparseEchelon, SparseVec};
use crate::symmfunc::{plethysm_p, EPolynomial};
use crate::symtensor::{basis_mul, elem_mul, enumerate_basis_capped, ExponentMap, Mode, SymElement};
use crate::words::{enumerate_necklaces, words_below, DegreeVector, Word};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

/// The generator `f[i;υ]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FGen {
    index: u32,
    word: Word,
}

pub type AbelianPoly = MultiPoly<FGen>;

impl FGen {
    /// Rejects `i = 0` and words that are not primitive necklace
    /// representatives.
    pub fn new(index: u32, word: Word) -> Result<Self> {
        if index == 0 {
            return input_err("generator index must be at least 1");
        }
        if !word.is_necklace_rep() {
            return input_err(format!("{word} is not a primitive word in canonical rotation"));
        }
        Ok(FGen { index, word })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn multidegree(&self, m: usize) -> DegreeVector {
        self.word.multidegree(m).scaled(self.index)
    }
}

impl fmt::Display for FGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{};{}]", self.index, self.word)
    }
}

impl FromStr for FGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("f[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Input(format!("expected f[i;word], got {s:?}")))?;
        let (i, w) = body.split_once(';').ok_or_else(|| Error::Input(format!("expected f[i;word], got {s:?}")))?;
        let index: u32 = i.trim().parse().map_err(|_| Error::Input(format!("bad generator index {i:?}")))?;
        FGen::new(index, w.trim().parse()?)
    }
}

/// Multidegree of an abelian monomial.
pub fn monomial_multidegree(mono: &Monomial<FGen>, m: usize) -> DegreeVector {
    mono.factors().iter().fold(DegreeVector::zero(m), |acc, (g, e)| &acc + &g.multidegree(m).scaled(*e))
}

/// Memoizing rewriter of orbit sums `f_α` of the free object into the
/// generators `f[i;υ]`.
#[derive(Default)]
pub struct AbRewriter {
    memo: HashMap<ExponentMap, AbelianPoly>,
    plethysm: HashMap<(u32, u32), EPolynomial>,
}

impl AbRewriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rewrite(&mut self, alpha: &ExponentMap) -> AbelianPoly {
        if alpha.is_identity() {
            return AbelianPoly::one();
        }
        if let Some(p) = self.memo.get(alpha) {
            return p.clone();
        }
        let out = if alpha.entries().len() == 1 {
            let (w, i) = &alpha.entries()[0];
            self.rewrite_block(w, *i)
        } else {
            // f_α = f_{a1}(r1) · f_rest − (lower-weight terms of the product)
            let (w1, a1) = &alpha.entries()[0];
            let head = ExponentMap::single(w1.clone(), *a1).expect("nonempty word");
            let rest = alpha.without_first();
            let product = basis_mul(&head, &rest, Mode::Free).expect("free products never fail");
            let lead = product.coeff(alpha);
            debug_assert!(lead.is_one(), "disjoint supports multiply with leading coefficient 1");
            let mut acc = &self.rewrite(&head) * &self.rewrite(&rest);
            for (gamma, c) in product.terms() {
                if gamma != alpha {
                    let lower = self.rewrite(gamma);
                    acc.add_scaled(&lower, &-c.clone());
                }
            }
            acc.scale(&lead.recip())
        };
        self.memo.insert(alpha.clone(), out.clone());
        out
    }

    /// `f_i(w)`: writes `w = u^k` with `u` primitive, expands `e_i` of a
    /// `k`-th power through `P_{i,k}`, and rotates `u` to canonical form.
    fn rewrite_block(&mut self, w: &Word, i: u32) -> AbelianPoly {
        let (root, k) = w.primitive_root().expect("nonempty word");
        let root = root.canonical_rotation().expect("nonempty word");
        let gen = |j: u32| AbelianPoly::var(FGen { index: j, word: root.clone() });
        if k == 1 {
            return gen(i);
        }
        let p = self
            .plethysm
            .entry((i, k as u32))
            .or_insert_with(|| plethysm_p(i, k as u32).expect("i, k >= 1"));
        p.substitute(|e| gen(e.0))
    }
}

/// Image of `f_α` in the abelianized free object, in the generators
/// `f[i;υ]`.
pub fn ab_rewrite(alpha: &ExponentMap) -> AbelianPoly {
    AbRewriter::new().rewrite(alpha)
}

/// All generators `f[i;υ]` whose multidegree is at most `delta`, with
/// `i <= cap` when a cap is given.
pub fn generators_below(delta: &DegreeVector, cap: Option<u32>) -> Vec<FGen> {
    let m = delta.m();
    let mut out = Vec::new();
    for word in enumerate_necklaces(m, delta.total() as usize) {
        let d = word.multidegree(m);
        let mut i = 1;
        while d.scaled(i).is_below(delta) && cap.is_none_or(|c| i <= c) {
            out.push(FGen { index: i, word: word.clone() });
            i += 1;
        }
    }
    out.sort();
    out
}

/// Every monomial in the generators `f[i;υ]` of multidegree exactly
/// `delta` (with all `i <= cap` if given), sorted.
pub fn fgen_monomials(delta: &DegreeVector, cap: Option<u32>) -> Vec<Monomial<FGen>> {
    let m = delta.m();
    let gens: Vec<(FGen, DegreeVector)> = generators_below(delta, cap).into_iter().map(|g| {
        let d = g.multidegree(m);
        (g, d)
    }).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(FGen, u32)> = Vec::new();
    fn go(
        gens: &[(FGen, DegreeVector)],
        start: usize,
        remaining: &DegreeVector,
        chosen: &mut Vec<(FGen, u32)>,
        out: &mut Vec<Monomial<FGen>>,
    ) {
        if remaining.is_zero() {
            out.push(Monomial::from_pairs(chosen.iter().cloned()));
            return;
        }
        for idx in start..gens.len() {
            let (g, d) = &gens[idx];
            let mut rem = remaining.clone();
            let mut e = 0;
            while let Some(r) = rem.checked_sub(d) {
                e += 1;
                rem = r;
                chosen.push((g.clone(), e));
                go(gens, idx + 1, &rem, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&gens, 0, delta, &mut chosen, &mut out);
    out.sort();
    out
}

/// Number of monomials in the free generators of multidegree `delta`,
/// i.e. the graded dimension of the polynomial ring they generate.
pub fn free_monomial_count(delta: &DegreeVector, cap: Option<u32>) -> usize {
    fgen_monomials(delta, cap).len()
}

fn coordinates(e: &SymElement) -> SparseVec<ExponentMap> {
    e.terms().map(|(a, c)| (a.clone(), c.clone())).collect()
}

/// Graded pieces `B_{n,ε}` for every `ε <= delta`, keyed by `ε`.
fn sub_bases(n: u32, delta: &DegreeVector, limits: &Limits) -> Result<BTreeMap<DegreeVector, Vec<ExponentMap>>> {
    let mut out = BTreeMap::new();
    for eps in sub_degrees(delta) {
        let basis = enumerate_basis_capped(n, &eps, limits)?;
        out.insert(eps, basis);
    }
    Ok(out)
}

/// All `ε` with `0 <= ε <= delta` componentwise.
pub fn sub_degrees(delta: &DegreeVector) -> Vec<DegreeVector> {
    let mut out = vec![DegreeVector::zero(delta.m())];
    for (h, &top) in delta.0.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=top).map(move |x| {
                    let mut w = v.clone();
                    w.0[h] = x;
                    w
                })
            })
            .collect();
    }
    out
}

/// Dimension over the rationals of the multidegree-`delta` piece of
/// `TS^n(F)^ab`: `|B_{n,δ}|` minus the rank of the commutator ideal's
/// graded piece.
///
/// Over the rationals `TS^n(F)` is generated by the `e_1(w)`, so the ideal
/// is spanned by the elements `c·[e_1(w), b]` with `b`, `c` basis elements.
/// Two-sided multiples reduce to these by `[a,b]d = [a,bd] + b[d,a]` and
/// `[gh, b] = g[h,b] + [g,bh] + b[h,g]`.
pub fn commutator_quotient_dim(n: u32, delta: &DegreeVector, limits: &Limits) -> Result<usize> {
    if n == 0 {
        return input_err("n must be at least 1");
    }
    let mode = Mode::Truncated(n);
    let target = enumerate_basis_capped(n, delta, limits)?;
    if delta.is_zero() {
        return Ok(target.len());
    }
    let bases = sub_bases(n, delta, limits)?;
    let m = delta.m();
    let gens: Vec<(Word, DegreeVector)> = words_below(delta).into_iter().map(|w| {
        let d = w.multidegree(m);
        (w, d)
    }).collect();

    // (g, ε_b, ε_c) triples of degrees, counted before any product is formed
    let mut plan = Vec::new();
    let mut rows = 0usize;
    for (g, dg) in &gens {
        let Some(rest) = delta.checked_sub(dg) else { continue };
        for eps_b in sub_degrees(&rest) {
            if eps_b.is_zero() {
                continue;
            }
            let eps_c = rest.checked_sub(&eps_b).expect("sub-degree");
            rows += bases[&eps_b].len() * bases[&eps_c].len();
            plan.push((g, eps_b, eps_c));
        }
    }
    limits.check_rows("commutator span", rows)?;

    let mut ech: SparseEchelon<ExponentMap> = SparseEchelon::new();
    let mut left_cache: HashMap<ExponentMap, SymElement> = HashMap::new();
    'outer: for (g, eps_b, eps_c) in plan {
        let g_alpha = ExponentMap::single(g.clone(), 1)?;
        for b in &bases[&eps_b] {
            let comm = basis_mul(&g_alpha, b, mode)?.sub(&basis_mul(b, &g_alpha, mode)?)?;
            if comm.is_zero() {
                continue;
            }
            for c in &bases[&eps_c] {
                let prod = if c.is_identity() {
                    comm.clone()
                } else {
                    let left = left_cache.entry(c.clone()).or_insert_with(|| SymElement::basis(mode, c.clone()).expect("weight <= n"));
                    elem_mul(left, &comm)?
                };
                ech.insert(coordinates(&prod));
                if ech.rank() == target.len() {
                    break 'outer;
                }
            }
        }
    }
    Ok(target.len() - ech.rank())
}

/// Whether every monomial of `p` has multidegree `delta`.
pub fn is_homogeneous(p: &AbelianPoly, delta: &DegreeVector) -> bool {
    p.terms().all(|(mono, c)| c.is_zero() || &monomial_multidegree(mono, delta.m()) == delta)
}

/// Coefficient vector of an abelian polynomial, for rank computations.
pub fn abelian_coordinates(p: &AbelianPoly) -> SparseVec<Monomial<FGen>> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{coeff, sparse_rank};
    use crate::symtensor::enumerate_basis;

    fn al(s: &str) -> ExponentMap {
        s.parse().unwrap()
    }

    fn f(i: u32, w: &str) -> AbelianPoly {
        AbelianPoly::var(FGen::new(i, w.parse().unwrap()).unwrap())
    }

    fn dv(v: &[u32]) -> DegreeVector {
        DegreeVector(v.to_vec())
    }

    #[test]
    fn fgen_validation_and_text() {
        assert!(FGen::new(0, "x1".parse().unwrap()).is_err());
        assert!(FGen::new(1, "x2.x1".parse().unwrap()).is_err());
        assert!(FGen::new(1, "x1.x1".parse().unwrap()).is_err());
        let g: FGen = "f[2;x1.x2]".parse().unwrap();
        assert_eq!(g.to_string(), "f[2;x1.x2]");
        assert_eq!(g.multidegree(2), dv(&[2, 2]));
        assert!("f[1;x2.x1]".parse::<FGen>().is_err());
        assert!("g[1;x1]".parse::<FGen>().is_err());
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(ab_rewrite(&al("{x2.x1:1}")), f(1, "x1.x2"));
        assert_eq!(ab_rewrite(&al("{x2.x1:1}")).to_string(), "f[1;x1.x2]");
        assert_eq!(ab_rewrite(&al("{x1:1, x2:1}")), &(&f(1, "x1") * &f(1, "x2")) - &f(1, "x1.x2"));
        let expected = &(&f(2, "x1").pow(2) - &(&f(1, "x1") * &f(3, "x1")).scale(&coeff(2))) + &f(4, "x1").scale(&coeff(2));
        assert_eq!(ab_rewrite(&al("{x1.x1:2}")), expected);
        assert_eq!(ab_rewrite(&ExponentMap::identity()), AbelianPoly::one());
    }

    #[test]
    fn rewrite_is_homogeneous() {
        for d in DegreeVector::all_up_to(2, 4) {
            for alpha in enumerate_basis(4, &d) {
                let p = ab_rewrite(&alpha);
                assert!(is_homogeneous(&p, &d), "{alpha}: {p}");
            }
        }
    }

    #[test]
    fn rewrite_is_cyclic_invariant() {
        for len in 1..=4 {
            for w in words_below(&dv(&[len, len])) {
                if w.len() != len as usize {
                    continue;
                }
                for i in 1..=2 {
                    let base = ab_rewrite(&ExponentMap::single(w.clone(), i).unwrap());
                    for r in w.rotations() {
                        assert_eq!(ab_rewrite(&ExponentMap::single(r, i).unwrap()), base, "{w} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn rewrites_span_the_free_piece() {
        // the images of B_{n,δ} (n > |δ|) span the free polynomial piece
        for d in DegreeVector::all_up_to(2, 4) {
            let n = d.total() + 1;
            let basis = enumerate_basis(n, &d);
            let images = basis.iter().map(|a| abelian_coordinates(&ab_rewrite(a)));
            assert_eq!(sparse_rank(images), free_monomial_count(&d, None), "δ = {d}");
        }
    }

    #[test]
    fn free_monomial_count_examples() {
        assert_eq!(free_monomial_count(&dv(&[1, 0]), None), 1);
        assert_eq!(free_monomial_count(&dv(&[2, 0]), None), 2);
        assert_eq!(free_monomial_count(&dv(&[0, 0]), None), 1);
        // m = 1: partitions of d, or of d into parts <= cap
        assert_eq!(free_monomial_count(&dv(&[6]), None), 11);
        assert_eq!(free_monomial_count(&dv(&[6]), Some(2)), 4);
        // one necklace in multidegree (1,1), so two monomials
        let printed: Vec<String> = fgen_monomials(&dv(&[1, 1]), None).iter().map(|m| m.to_string()).collect();
        assert_eq!(printed, ["f[1;x1.x2]", "f[1;x1]*f[1;x2]"]);
        assert_eq!(free_monomial_count(&dv(&[1, 1]), None), 2);
    }

    #[test]
    fn commutator_quotient_examples() {
        let lim = Limits::default();
        assert_eq!(commutator_quotient_dim(2, &dv(&[1, 1]), &lim).unwrap(), 2);
        assert_eq!(commutator_quotient_dim(1, &dv(&[1, 1]), &lim).unwrap(), 1);
        assert_eq!(commutator_quotient_dim(3, &dv(&[0, 0]), &lim).unwrap(), 1);
        // n = 1: the commutative polynomial ring, one monomial per degree
        for d in DegreeVector::all_up_to(2, 4) {
            assert_eq!(commutator_quotient_dim(1, &d, &lim).unwrap(), 1, "δ = {d}");
        }
    }

    /// The literal definition: all basis triples `c·[a,b]`, plus right
    /// multiples `[a,b]·c`.
    fn commutator_quotient_dim_naive(n: u32, delta: &DegreeVector) -> usize {
        let mode = Mode::Truncated(n);
        let target = enumerate_basis(n, delta);
        let subs = sub_degrees(delta);
        let mut ech = SparseEchelon::new();
        for ea in &subs {
            for eb in &subs {
                let Some(rest) = delta.checked_sub(ea).and_then(|r| r.checked_sub(eb)) else { continue };
                for a in enumerate_basis(n, ea) {
                    for b in enumerate_basis(n, eb) {
                        let comm = basis_mul(&a, &b, mode).unwrap().sub(&basis_mul(&b, &a, mode).unwrap()).unwrap();
                        for c in enumerate_basis(n, &rest) {
                            let ce = SymElement::basis(mode, c).unwrap();
                            ech.insert(coordinates(&elem_mul(&ce, &comm).unwrap()));
                            ech.insert(coordinates(&elem_mul(&comm, &ce).unwrap()));
                        }
                    }
                }
            }
        }
        target.len() - ech.rank()
    }

    #[test]
    fn generator_commutators_match_all_triples() {
        let lim = Limits::default();
        for n in 1..=3 {
            for d in DegreeVector::all_up_to(2, 3) {
                assert_eq!(commutator_quotient_dim(n, &d, &lim).unwrap(), commutator_quotient_dim_naive(n, &d), "n={n} δ={d}");
            }
        }
    }

    #[test]
    fn commutator_respects_caps() {
        let lim = Limits { max_basis: 2, max_rows: 20000 };
        assert!(matches!(commutator_quotient_dim(2, &dv(&[1, 1]), &lim), Err(Error::ResourceCap(_))));
        let lim = Limits { max_basis: 5000, max_rows: 1 };
        assert!(matches!(commutator_quotient_dim(2, &dv(&[2, 1]), &lim), Err(Error::ResourceCap(_))));
    }
}
