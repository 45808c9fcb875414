//! Symmetric polynomials in `N` variables `y1..yN`: elementary functions,
//! power sums, rewriting into the elementary basis, Newton's formulas and
//! the polynomials `P_{h,k} = e_h(y_1^k, .., y_N^k)` in the `e`-basis.

use crate::error::{input_err, Error, Result};
use crate::polyring::{Coeff, Monomial, MultiPoly};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;

/// The variable `y_i` (one-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Y(pub u32);

/// The formal symbol `E_i` standing for the `i`-th elementary symmetric
/// function (one-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct E(pub u32);

impl fmt::Display for Y {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}", self.0)
    }
}

impl fmt::Display for E {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

pub type SymPoly = MultiPoly<Y>;
/// Polynomial in the `E_i`; prints as `E1^2 - 2*E2`.
pub type EPolynomial = MultiPoly<E>;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All partitions of `d` with every part at most `max_part`.
    pub fn all(d: u32, max_part: u32) -> Vec<Partition> {
        fn rec(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=cap.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, max_part, &mut Vec::new(), &mut out);
        out
    }
}

/// `e_k(y_1..y_N)`: the sum over `k`-subsets; `e_0 = 1`, zero for `k > N`.
pub fn elementary(k: u32, nvars: u32) -> SymPoly {
    if k > nvars {
        return SymPoly::zero();
    }
    let mut out = SymPoly::zero();
    let mut subset: Vec<u32> = (1..=k).collect();
    loop {
        out.add_term(Monomial::from_pairs(subset.iter().map(|&i| (Y(i), 1))), Coeff::from_integer(BigInt::from(1)));
        // next k-subset in lexicographic order
        let mut i = k as usize;
        while i > 0 && subset[i - 1] == nvars - k + i as u32 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k as usize {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out
}

/// `p_r = Σ y_i^r`.
pub fn power_sum(r: u32, nvars: u32) -> Result<SymPoly> {
    if r == 0 {
        return input_err("power sums start at r = 1");
    }
    Ok(SymPoly::from_terms((1..=nvars).map(|i| (Monomial::from_pairs([(Y(i), r)]), Coeff::from_integer(1.into())))))
}

/// Swaps `y_i` and `y_{i+1}`.
fn transpose(f: &SymPoly, i: u32) -> SymPoly {
    f.map_vars(|v| match v.0 {
        x if x == i => Y(i + 1),
        x if x == i + 1 => Y(i),
        _ => *v,
    })
}

/// Symmetric in `y_1..y_N`: fixed by the `N - 1` adjacent transpositions,
/// which generate `S_N`. Variables beyond `y_N` make it non-symmetric.
pub fn is_symmetric(f: &SymPoly, nvars: u32) -> bool {
    if f.variables().iter().any(|v| v.0 == 0 || v.0 > nvars) {
        return false;
    }
    (1..nvars).all(|i| &transpose(f, i) == f)
}

/// Rewrites a symmetric polynomial in `y_1..y_N` as a polynomial in the
/// elementary functions.
///
/// Repeatedly takes the graded-lex leading term `c·y^λ` (with `λ`
/// necessarily weakly decreasing) and subtracts `c·e_1^{λ1-λ2} e_2^{λ2-λ3}
/// ... e_N^{λN}`, whose leading term is exactly `c·y^λ`.
pub fn ftsp_rewrite(f: &SymPoly, nvars: u32) -> Result<EPolynomial> {
    if !is_symmetric(f, nvars) {
        return Err(Error::Input(format!("polynomial is not symmetric in y1..y{nvars}")));
    }
    let mut cache = ElementaryCache::new(nvars);
    let mut rest = f.clone();
    let mut out = EPolynomial::zero();
    while let Some((lead, c)) = rest.leading_term() {
        let lambda: Vec<u32> = (1..=nvars).map(|i| lead.exponent(&Y(i))).collect();
        debug_assert!(lambda.windows(2).all(|w| w[0] >= w[1]), "leading exponent of a symmetric polynomial is a partition");
        let c = c.clone();
        let e_mono = Monomial::from_pairs((0..nvars as usize).map(|i| {
            let next = lambda.get(i + 1).copied().unwrap_or(0);
            (E(i as u32 + 1), lambda[i] - next)
        }));
        let product = cache.product(&e_mono);
        rest.add_scaled(&product, &-c.clone());
        out.add_term(e_mono, c);
    }
    Ok(out)
}

/// Memoized products of elementary polynomials in a fixed number of
/// variables.
struct ElementaryCache {
    nvars: u32,
    products: HashMap<Monomial<E>, SymPoly>,
}

impl ElementaryCache {
    fn new(nvars: u32) -> Self {
        ElementaryCache { nvars, products: HashMap::new() }
    }

    fn product(&mut self, m: &Monomial<E>) -> SymPoly {
        if let Some(p) = self.products.get(m) {
            return p.clone();
        }
        let p = match m.factors().last() {
            None => SymPoly::one(),
            Some((E(k), _)) => {
                // peel one factor of the largest E
                let rest = m.checked_div(&Monomial::var(E(*k))).expect("factor present");
                let base = self.product(&rest);
                &base * &elementary(*k, self.nvars)
            }
        };
        self.products.insert(m.clone(), p.clone());
        p
    }
}

/// Substitutes `E_i ↦ e_i(y_1..y_N)`.
pub fn eval_in_variables(p: &EPolynomial, nvars: u32) -> SymPoly {
    p.substitute(|e| elementary(e.0, nvars))
}

/// `p_k` in the `E`-basis via Newton's formulas
/// `(-1)^k p_{k+1} + Σ_{i=1}^k (-1)^{i-1} p_i e_{k+1-i} = (k+1) e_{k+1}`,
/// with `E_i = 0` for `i > N`.
pub fn newton_p_in_e(k: u32, nvars: u32) -> Result<EPolynomial> {
    if k == 0 {
        return input_err("power sums start at k = 1");
    }
    let e = |i: u32| if i <= nvars { EPolynomial::var(E(i)) } else { EPolynomial::zero() };
    let sign = |i: u32| Coeff::from_integer(if i.is_multiple_of(2) { 1.into() } else { (-1).into() });
    let mut p: Vec<EPolynomial> = vec![EPolynomial::zero()];
    p.push(e(1));
    for j in 1..k {
        // solve for p_{j+1}
        let mut rhs = e(j + 1).scale(&Coeff::from_integer(BigInt::from(j + 1)));
        for i in 1..=j {
            let term = (&p[i as usize] * &e(j + 1 - i)).scale(&sign(i - 1));
            rhs = &rhs - &term;
        }
        p.push(rhs.scale(&sign(j)));
    }
    Ok(p.swap_remove(k as usize))
}

/// `P_{h,k}`: the `E`-basis expression of `e_h(y_1^k, .., y_N^k)`, computed
/// in `N = h·k` variables (every monomial of `e_h∘p_k` has at most `h·k`
/// nonzero exponents, so the expression is stable from there on).
pub fn plethysm_p(h: u32, k: u32) -> Result<EPolynomial> {
    plethysm_p_in(h, k, h.saturating_mul(k))
}

/// [`plethysm_p`] computed in an explicit number of variables.
pub fn plethysm_p_in(h: u32, k: u32, nvars: u32) -> Result<EPolynomial> {
    if h == 0 || k == 0 {
        return input_err("P_{h,k} needs h >= 1 and k >= 1");
    }
    let composed = elementary(h, nvars).substitute(|y| MultiPoly::monomial(Monomial::from_pairs([(*y, k)]), Coeff::from_integer(1.into())));
    ftsp_rewrite(&composed, nvars)
}

/// The monomial symmetric function `m_λ` in `N` variables.
pub fn monomial_symmetric(lambda: &Partition, nvars: u32) -> SymPoly {
    let mut exps: Vec<u32> = lambda.parts().to_vec();
    if exps.len() > nvars as usize {
        return SymPoly::zero();
    }
    exps.resize(nvars as usize, 0);
    exps.sort();
    let mut out = SymPoly::zero();
    loop {
        out.add_term(Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (Y(i as u32 + 1), e))), Coeff::from_integer(1.into()));
        if !next_perm(&mut exps) {
            break;
        }
    }
    out
}

fn next_perm(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Largest `i` with `E_i` occurring in `p`, or 0 for constants.
pub fn max_e_index(p: &EPolynomial) -> u32 {
    p.variables().iter().map(|e| e.0).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ev(i: u32) -> EPolynomial {
        EPolynomial::var(E(i))
    }

    fn c(n: i64) -> Coeff {
        coeff(n)
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(1, 2).to_string(), "y1 + y2");
        assert_eq!(elementary(2, 3).to_string(), "y1*y2 + y1*y3 + y2*y3");
        assert!(elementary(4, 3).is_zero());
        assert_eq!(elementary(0, 3), SymPoly::one());
    }

    #[test]
    fn generating_function_identity() {
        // Π (1 + t y_i) = Σ t^k e_k, checked at t = 1 and t = 2 numerically
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let ys: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
            for t in [1i64, 2, -3] {
                let lhs: i64 = ys.iter().map(|y| 1 + t * y).product();
                let rhs: Coeff = (0..=4)
                    .map(|k| elementary(k, 4).eval(|v| c(ys[(v.0 - 1) as usize])) * c(t.pow(k)))
                    .sum();
                assert_eq!(c(lhs), rhs);
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(1, 3).unwrap().to_string(), "y1 + y2 + y3");
        assert_eq!(power_sum(2, 2).unwrap().to_string(), "y1^2 + y2^2");
        assert_eq!(power_sum(3, 1).unwrap().to_string(), "y1^3");
        assert!(power_sum(0, 2).is_err());
    }

    #[test]
    fn ftsp_examples() {
        let p2 = ftsp_rewrite(&power_sum(2, 2).unwrap(), 2).unwrap();
        assert_eq!(p2, &ev(1).pow(2) - &ev(2).scale(&c(2)));
        // evaluation at (1,2): 5 = 9 - 4
        assert_eq!(p2.eval(|e| if e.0 == 1 { c(3) } else { c(2) }), c(5));
        assert_eq!(ftsp_rewrite(&elementary(3, 4), 4).unwrap(), ev(3));
        let m21 = monomial_symmetric(&Partition::new(vec![2, 1]), 3);
        assert_eq!(ftsp_rewrite(&m21, 3).unwrap(), &(&ev(1) * &ev(2)) - &ev(3).scale(&c(3)));
    }

    #[test]
    fn ftsp_rejects_nonsymmetric() {
        let f = SymPoly::var(Y(1));
        assert!(ftsp_rewrite(&f, 2).is_err());
        assert!(ftsp_rewrite(&SymPoly::var(Y(3)), 2).is_err());
    }

    #[test]
    fn ftsp_round_trip_on_twenty_polynomials() {
        // sums and products of monomial symmetric functions of degree <= 6
        let nvars = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mut suite = Vec::new();
        for d in 1..=6 {
            for lambda in Partition::all(d, 6) {
                if lambda.parts().len() <= nvars as usize {
                    suite.push(monomial_symmetric(&lambda, nvars));
                }
            }
        }
        let mut checked = 0;
        while checked < 20 {
            let a = &suite[rng.gen_range(0..suite.len())];
            let b = &suite[rng.gen_range(0..suite.len())];
            let f = if a.total_degree().unwrap() + b.total_degree().unwrap() <= 6 && rng.gen_bool(0.5) {
                a * b
            } else {
                &a.scale(&c(rng.gen_range(-3..=3))) + b
            };
            let e = ftsp_rewrite(&f, nvars).unwrap();
            assert_eq!(eval_in_variables(&e, nvars), f);
            checked += 1;
        }
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_p_in_e(1, 5).unwrap(), ev(1));
        assert_eq!(newton_p_in_e(2, 5).unwrap(), &ev(1).pow(2) - &ev(2).scale(&c(2)));
        let p3 = &(&ev(1).pow(3) - &(&ev(1) * &ev(2)).scale(&c(3))) + &ev(3).scale(&c(3));
        assert_eq!(newton_p_in_e(3, 5).unwrap(), p3);
        for n in 3..=5 {
            assert_eq!(ftsp_rewrite(&power_sum(3, n).unwrap(), n).unwrap(), p3);
        }
        assert_eq!(newton_p_in_e(2, 5).unwrap().to_string(), "E1^2 - 2*E2");
    }

    #[test]
    fn newton_recurrence_is_exact_identity() {
        let n = 8;
        let p: Vec<EPolynomial> = (1..=9).map(|k| newton_p_in_e(k, n).unwrap()).collect();
        let e = |i: u32| if i <= n { ev(i) } else { EPolynomial::zero() };
        for k in 1..=8u32 {
            let mut lhs = p[k as usize].scale(&c(if k % 2 == 0 { 1 } else { -1 }));
            for i in 1..=k {
                let t = (&p[(i - 1) as usize] * &e(k + 1 - i)).scale(&c(if i % 2 == 1 { 1 } else { -1 }));
                lhs = &lhs + &t;
            }
            assert_eq!(lhs, e(k + 1).scale(&c(i64::from(k) + 1)), "k = {k}");
        }
        // and each p_k really is the power sum
        for k in 1..=6 {
            assert_eq!(eval_in_variables(&newton_p_in_e(k, 6).unwrap(), 6), power_sum(k, 6).unwrap());
        }
    }

    #[test]
    fn plethysm_examples() {
        assert_eq!(plethysm_p(1, 1).unwrap(), ev(1));
        assert_eq!(plethysm_p(1, 2).unwrap(), &ev(1).pow(2) - &ev(2).scale(&c(2)));
        let p22 = &(&ev(2).pow(2) - &(&ev(1) * &ev(3)).scale(&c(2))) + &ev(4).scale(&c(2));
        assert_eq!(plethysm_p(2, 2).unwrap(), p22);
        assert!(plethysm_p(0, 2).is_err());
    }

    #[test]
    fn plethysm_is_stable_in_the_number_of_variables() {
        for h in 1..=3 {
            for k in 1..=3 {
                if h * k > 6 {
                    continue; // the larger cases run in the integration suite
                }
                let base = plethysm_p(h, k).unwrap();
                assert_eq!(base, plethysm_p_in(h, k, h * k + 2).unwrap(), "h={h} k={k}");
                assert!(max_e_index(&base) <= h * k);
            }
        }
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4, 4).len(), 5);
        assert_eq!(Partition::all(4, 2).len(), 3);
        assert_eq!(Partition::all(6, 3).len(), 7);
        assert_eq!(Partition::new(vec![1, 0, 3]).parts(), &[3, 1]);
    }
}
