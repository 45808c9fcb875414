//! Generic matrices `ξ_h = (ξ[i,j,h])`, their characteristic coefficients
//! `ς_i`, the determinant map from the abelianized generators, and graded
//! dimensions of the trace algebra and of the conjugation invariants.

use crate::abelian::{fgen_monomials, AbelianPoly, FGen};
use crate::error::{input_err, Result};
use crate::limits::Limits;
use crate::polyring::{binomial, Coeff, ExactMatrix, Monomial, MultiPoly, SparseEchelon};
use crate::symtensor::ExponentMap;
use crate::words::{DegreeVector, Word};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// The entry `ξ[i,j,h]` (one-based) of the `h`-th generic matrix. Ordered
/// by matrix, then row, then column.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Xi {
    pub h: u32,
    pub i: u32,
    pub j: u32,
}

impl fmt::Display for Xi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi[{},{},{}]", self.i, self.j, self.h)
    }
}

/// Polynomial in the `ξ` variables.
pub type InvariantPoly = MultiPoly<Xi>;

/// Square or rectangular matrix of polynomials, row-major.
pub type PolyMatrix<V> = Vec<Vec<MultiPoly<V>>>;

/// `m` generic `n × n` matrices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenericContext {
    n: u32,
    m: u32,
}

impl GenericContext {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return input_err(format!("need n >= 1 and m >= 1, got n = {n}, m = {m}"));
        }
        Ok(GenericContext { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The generic matrix `ξ_h` (`h` one-based).
    pub fn generic_matrix(&self, h: u32) -> PolyMatrix<Xi> {
        (1..=self.n).map(|i| (1..=self.n).map(|j| InvariantPoly::var(Xi { h, i, j })).collect()).collect()
    }

    /// `ξ_{h_1} ⋯ ξ_{h_L}` for `w = x_{h_1} ⋯ x_{h_L}`.
    pub fn word_matrix(&self, w: &Word) -> Result<PolyMatrix<Xi>> {
        if w.is_empty() {
            return input_err("word_matrix needs a nonempty word");
        }
        if w.min_alphabet() > self.m as usize {
            return input_err(format!("{w} uses more than {} generators", self.m));
        }
        let mut letters = w.indices().into_iter();
        let mut acc = self.generic_matrix(letters.next().expect("nonempty"));
        for h in letters {
            acc = mat_mul(&acc, &self.generic_matrix(h));
        }
        Ok(acc)
    }

    /// Number of monomials of multidegree `delta` in the `ξ` variables.
    pub fn monomial_count(&self, delta: &DegreeVector) -> BigInt {
        let vars = u64::from(self.n * self.n);
        delta.0.iter().map(|&d| binomial(vars + u64::from(d) - 1, u64::from(d))).product()
    }
}

pub fn mat_mul<V: crate::polyring::Var>(a: &PolyMatrix<V>, b: &PolyMatrix<V>) -> PolyMatrix<V> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = MultiPoly::zero();
                    for t in 0..inner {
                        s += &(&row[t] * &b[t][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn check_square<V: crate::polyring::Var>(m: &PolyMatrix<V>) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return input_err("characteristic polynomial of a non-square matrix");
    }
    Ok(n)
}

/// `[ς_1, .., ς_n]` with `det(t - M) = t^n + Σ (-1)^i ς_i t^{n-i}`; `ς_1`
/// is the trace and `ς_n` the determinant.
pub fn charpoly_coeffs<V: crate::polyring::Var>(m: &PolyMatrix<V>) -> Result<Vec<MultiPoly<V>>> {
    let n = check_square(m)?;
    charpoly_coeffs_upto(m, n)
}

/// The first `max_i` of [`charpoly_coeffs`], by Berkowitz's division-free
/// algorithm.
///
/// The coefficient vector of `det(t - M)` is a product of lower-triangular
/// Toeplitz matrices, one per leading principal corner, so entries below
/// `max_i` never need anything beyond the first `max_i + 1` rows.
pub fn charpoly_coeffs_upto<V: crate::polyring::Var>(m: &PolyMatrix<V>, max_i: usize) -> Result<Vec<MultiPoly<V>>> {
    let n = check_square(m)?;
    if max_i > n {
        return input_err(format!("characteristic coefficient {max_i} of a {n}x{n} matrix"));
    }
    if n == 0 || max_i == 0 {
        return Ok(Vec::new());
    }
    let keep = max_i + 1;
    // coefficients of det(t - A) for the trailing s×s corner A, highest first
    let mut v: Vec<MultiPoly<V>> = vec![MultiPoly::one(), -&m[n - 1][n - 1]];
    v.truncate(keep);
    for k in (0..n - 1).rev() {
        let s = n - k; // size of the corner starting at k
        // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        let mut col: Vec<MultiPoly<V>> = vec![MultiPoly::one(), -&m[k][k]];
        let mut rvec: Vec<MultiPoly<V>> = m[k][k + 1..].to_vec(); // R · A^j
        while col.len() < keep.min(s + 1) {
            let mut dot = MultiPoly::zero();
            for (t, r) in rvec.iter().enumerate() {
                dot += &(r * &m[k + 1 + t][k]);
            }
            col.push(-&dot);
            if col.len() < keep.min(s + 1) {
                rvec = (0..s - 1)
                    .map(|j| {
                        let mut acc = MultiPoly::zero();
                        for (t, r) in rvec.iter().enumerate() {
                            acc += &(r * &m[k + 1 + t][k + 1 + j]);
                        }
                        acc
                    })
                    .collect();
            }
        }
        let len = keep.min(s + 1);
        let next: Vec<MultiPoly<V>> = (0..len)
            .map(|i| {
                let mut acc = MultiPoly::zero();
                for j in 0..=i.min(v.len() - 1) {
                    if i - j < col.len() {
                        acc += &(&col[i - j] * &v[j]);
                    }
                }
                acc
            })
            .collect();
        v = next;
    }
    Ok(v.into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| if i % 2 == 1 { -&c } else { c })
        .collect())
}

/// `ς_i(w)` of the `n × n` generic matrices.
pub fn sigma(ctx: &GenericContext, i: u32, w: &Word) -> Result<InvariantPoly> {
    if i == 0 || i > ctx.n {
        return input_err(format!("sigma index {i} outside 1..={}", ctx.n));
    }
    let mat = ctx.word_matrix(w)?;
    Ok(charpoly_coeffs_upto(&mat, i as usize)?.pop().expect("i >= 1"))
}

/// Memo of `ς_1(w) .. ς_k(w)` per word.
pub struct SigmaTable {
    ctx: GenericContext,
    table: HashMap<Word, Vec<InvariantPoly>>,
}

impl SigmaTable {
    pub fn new(ctx: GenericContext) -> Self {
        SigmaTable { ctx, table: HashMap::new() }
    }

    /// `ς_i(w)`, zero for `i > n`.
    pub fn get(&mut self, i: u32, w: &Word) -> Result<InvariantPoly> {
        if i == 0 {
            return input_err("sigma index must be at least 1");
        }
        if i > self.ctx.n {
            return Ok(InvariantPoly::zero());
        }
        let have = self.table.get(w).map_or(0, |v| v.len());
        if have < i as usize {
            let mat = self.ctx.word_matrix(w)?;
            self.table.insert(w.clone(), charpoly_coeffs_upto(&mat, i as usize)?);
        }
        Ok(self.table[w][i as usize - 1].clone())
    }
}

/// `δ_n`: substitutes `f[i;υ] ↦ ς_i(υ)`, which is zero for `i > n`.
pub fn delta_apply(ctx: &GenericContext, p: &AbelianPoly) -> Result<InvariantPoly> {
    let mut table = SigmaTable::new(*ctx);
    delta_apply_with(&mut table, p)
}

pub fn delta_apply_with(table: &mut SigmaTable, p: &AbelianPoly) -> Result<InvariantPoly> {
    let mut images: BTreeMap<FGen, InvariantPoly> = BTreeMap::new();
    for g in p.variables() {
        let img = table.get(g.index(), g.word())?;
        images.insert(g, img);
    }
    Ok(p.substitute(|g| images[g].clone()))
}

/// Variables of `det(1 + Σ t_υ ξ(υ))`: the auxiliary `t_s` and the `ξ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum DetVar {
    T(usize),
    X(Xi),
}

impl fmt::Display for DetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetVar::T(s) => write!(f, "t{s}"),
            DetVar::X(x) => x.fmt(f),
        }
    }
}

/// Coefficient of `t^α` in `det(1 + Σ_υ t_υ ξ(υ))`, by Leibniz expansion
/// with every partial product cut down to `t`-exponents `<= α`.
pub fn delta_coeff(ctx: &GenericContext, alpha: &ExponentMap) -> Result<InvariantPoly> {
    if alpha.weight() > ctx.n {
        return input_err(format!("|α| = {} exceeds n = {}", alpha.weight(), ctx.n));
    }
    let n = ctx.n as usize;
    let caps: Vec<u32> = alpha.entries().iter().map(|(_, e)| *e).collect();
    let mut mat: PolyMatrix<DetVar> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { MultiPoly::one() } else { MultiPoly::zero() }).collect())
        .collect();
    for (s, (w, _)) in alpha.entries().iter().enumerate() {
        let wm = ctx.word_matrix(w)?;
        let t = Monomial::var(DetVar::T(s));
        for i in 0..n {
            for j in 0..n {
                let entry = wm[i][j].map_vars(|x| DetVar::X(*x)).mul_monomial(&t, &Coeff::one());
                mat[i][j] += &entry;
            }
        }
    }
    let within = |mono: &Monomial<DetVar>| {
        mono.factors().iter().all(|(v, e)| match v {
            DetVar::T(s) => *e <= caps[*s],
            DetVar::X(_) => true,
        })
    };
    let mut det = MultiPoly::<DetVar>::zero();
    for (perm, sign) in permutations(n) {
        let mut prod = MultiPoly::<DetVar>::one();
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul_filtered(&mat[i][j], within);
            if prod.is_zero() {
                break;
            }
        }
        if sign {
            det += &prod;
        } else {
            det -= &prod;
        }
    }
    let target = Monomial::from_pairs(caps.iter().enumerate().map(|(s, &e)| (DetVar::T(s), e)));
    let mut out = InvariantPoly::zero();
    for (mono, c) in det.terms() {
        let (ts, xs) = mono.split_by(|v| matches!(v, DetVar::T(_)));
        if ts == target {
            let xs = xs.map_vars(|v| match v {
                DetVar::X(x) => *x,
                DetVar::T(_) => unreachable!("split off"),
            });
            out.add_term(xs, c.clone());
        }
    }
    Ok(out)
}

/// All permutations of `0..n` with their parity (`true` = even).
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| prefix[a] > prefix[b]).count();
            out.push((prefix.clone(), inversions % 2 == 0));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Dimension of the multidegree-`delta` piece of the algebra generated by
/// the `ς_i(υ)`, `i <= max_i`: rank of all products `∏ ς_{i_t}(υ_t)` over
/// monomials in the generators `f[i;υ]` of that multidegree.
pub fn cn_graded_dim(ctx: &GenericContext, delta: &DegreeVector, max_i: u32, limits: &Limits) -> Result<usize> {
    check_degree(ctx, delta)?;
    let monos = fgen_monomials(delta, Some(max_i.min(ctx.n)));
    limits.check_rows("trace algebra spanning set", monos.len())?;
    let mut table = SigmaTable::new(*ctx);
    let mut ech = SparseEchelon::new();
    for mono in monos {
        let p = delta_apply_with(&mut table, &AbelianPoly::monomial(mono, Coeff::one()))?;
        ech.insert(p.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    }
    Ok(ech.rank())
}

fn check_degree(ctx: &GenericContext, delta: &DegreeVector) -> Result<()> {
    if delta.m() != ctx.m as usize {
        return input_err(format!("multidegree {delta} has {} components, expected {}", delta.m(), ctx.m));
    }
    Ok(())
}

/// All monomials in the `ξ` of multidegree `delta`.
pub fn xi_monomials(ctx: &GenericContext, delta: &DegreeVector) -> Vec<Monomial<Xi>> {
    let n = ctx.n;
    let mut out = vec![Monomial::one()];
    for (h0, &d) in delta.0.iter().enumerate() {
        let vars: Vec<Xi> = (1..=n).flat_map(|i| (1..=n).map(move |j| Xi { h: h0 as u32 + 1, i, j })).collect();
        let mut per: Vec<Monomial<Xi>> = Vec::new();
        multisets(&vars, d, 0, &mut Vec::new(), &mut per);
        out = out.iter().flat_map(|a| per.iter().map(move |b| a.mul(b))).collect();
    }
    out.sort();
    out
}

fn multisets(vars: &[Xi], left: u32, start: usize, cur: &mut Vec<(Xi, u32)>, out: &mut Vec<Monomial<Xi>>) {
    if left == 0 {
        out.push(Monomial::from_pairs(cur.iter().copied()));
        return;
    }
    for idx in start..vars.len() {
        for e in 1..=left {
            cur.push((vars[idx], e));
            multisets(vars, left - e, idx + 1, cur, out);
            cur.pop();
        }
    }
}

/// Torus weight of a monomial: per index `a`, occurrences as a row index
/// minus occurrences as a column index.
fn torus_weight(mono: &Monomial<Xi>, n: u32) -> Vec<i64> {
    let mut w = vec![0i64; n as usize];
    for (x, e) in mono.factors() {
        w[x.i as usize - 1] += i64::from(*e);
        w[x.j as usize - 1] -= i64::from(*e);
    }
    w
}

/// `D_ab(ξ[i,j,h]) = [E_ab, ξ_h]_ij = δ_ia ξ[b,j,h] - δ_jb ξ[i,a,h]`.
fn derivation_on_var(a: u32, b: u32, x: &Xi) -> Vec<(Xi, i64)> {
    let mut out = Vec::new();
    if x.i == a {
        out.push((Xi { h: x.h, i: b, j: x.j }, 1));
    }
    if x.j == b {
        out.push((Xi { h: x.h, i: x.i, j: a }, -1));
    }
    out
}

/// The derivation `D_ab` of the conjugation action, extended to
/// polynomials by the product rule.
pub fn conjugation_derivation(a: u32, b: u32, p: &InvariantPoly) -> InvariantPoly {
    let mut out = InvariantPoly::zero();
    for (mono, c) in p.terms() {
        for (v, e) in mono.factors() {
            let rest = mono.checked_div(&Monomial::var(*v)).expect("factor present");
            for (img, s) in derivation_on_var(a, b, v) {
                let k = Coeff::from_integer(BigInt::from(s * i64::from(*e)));
                out.add_term(rest.mul(&Monomial::var(img)), c * &k);
            }
        }
    }
    out
}

/// Dimension of the multidegree-`delta` polynomials in the `ξ` killed by
/// every `D_ab`.
///
/// The diagonal `D_aa` act on a monomial by its torus weight, so their
/// common kernel is spanned by the weight-zero monomials; the result is the
/// nullity of the off-diagonal `D_ab` on that span.
pub fn gl_invariant_dim(ctx: &GenericContext, delta: &DegreeVector, limits: &Limits) -> Result<usize> {
    check_degree(ctx, delta)?;
    let total = ctx.monomial_count(delta);
    let size = total.to_usize().unwrap_or(usize::MAX);
    limits.check_basis(&format!("monomials of A_n in multidegree {delta}"), size)?;
    let n = ctx.n;
    let zero_weight: Vec<Monomial<Xi>> = xi_monomials(ctx, delta).into_iter().filter(|m| torus_weight(m, n).iter().all(|&w| w == 0)).collect();
    if n == 1 {
        return Ok(zero_weight.len());
    }
    let mut columns: BTreeMap<(u32, u32, Monomial<Xi>), usize> = BTreeMap::new();
    let mut images: Vec<Vec<(usize, Coeff)>> = Vec::with_capacity(zero_weight.len());
    for mono in &zero_weight {
        let p = InvariantPoly::monomial(mono.clone(), Coeff::one());
        let mut row = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a == b {
                    continue;
                }
                for (img, c) in conjugation_derivation(a, b, &p).terms() {
                    let next = columns.len();
                    let col = *columns.entry((a, b, img.clone())).or_insert(next);
                    row.push((col, c.clone()));
                }
            }
        }
        images.push(row);
    }
    limits.check_rows("stacked derivation matrix", columns.len())?;
    let mut mat = ExactMatrix::zeros(images.len(), columns.len());
    for (r, row) in images.into_iter().enumerate() {
        for (c, v) in row {
            mat.set(r, c, v);
        }
    }
    Ok(zero_weight.len() - mat.rank())
}

/// Whether all `n²` derivations annihilate `p`.
pub fn is_conjugation_invariant(ctx: &GenericContext, p: &InvariantPoly) -> bool {
    (1..=ctx.n).all(|a| (1..=ctx.n).all(|b| conjugation_derivation(a, b, p).is_zero()))
}
