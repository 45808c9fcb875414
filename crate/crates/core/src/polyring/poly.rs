use super::{write_lincomb, Coeff, Monomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Variable types usable in [`MultiPoly`]. The ordering of the variable type
/// fixes which variable is most significant in the monomial order.
pub trait Var: Ord + Clone + fmt::Debug + fmt::Display {}
impl<T: Ord + Clone + fmt::Debug + fmt::Display> Var for T {}

/// Sparse commutative polynomial with exact rational coefficients.
///
/// The variable set is the type parameter, so operands of an arithmetic
/// operation always share it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<V: Var> {
    terms: BTreeMap<Monomial<V>, Coeff>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<V: Var>(a: &MultiPoly<V>, b: &MultiPoly<V>, op: ArithOp) -> MultiPoly<V> {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl<V: Var> Default for MultiPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Var> MultiPoly<V> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Monomial::var(v), Coeff::one())
    }

    pub fn monomial(m: Monomial<V>, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial<V>) -> bool) -> Self {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Product with every term of the result passed through `keep` first;
    /// used to bound expansions by a degree or divisibility constraint.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial<V>) -> bool) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    /// Ring homomorphism defined by sending each variable to a polynomial
    /// (possibly over another variable set). Images are requested once per
    /// variable.
    pub fn substitute<W: Var>(&self, mut image: impl FnMut(&V) -> MultiPoly<W>) -> MultiPoly<W> {
        let mut cache: HashMap<(usize, u32), MultiPoly<W>> = HashMap::new();
        let mut var_ids: Vec<V> = Vec::new();
        let mut base: Vec<MultiPoly<W>> = Vec::new();
        let mut out = MultiPoly::<W>::zero();
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::<W>::constant(c.clone());
            for (v, e) in m.factors() {
                let id = match var_ids.iter().position(|w| w == v) {
                    Some(id) => id,
                    None => {
                        var_ids.push(v.clone());
                        base.push(image(v));
                        var_ids.len() - 1
                    }
                };
                let power = cache.entry((id, *e)).or_insert_with(|| base[id].pow(*e));
                acc = &acc * power;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Evaluates at a point given by `value` for each variable.
    pub fn eval(&self, mut value: impl FnMut(&V) -> Coeff) -> Coeff {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                t *= num_traits::pow(value(v), *e as usize);
            }
            total += t;
        }
        total
    }

    pub fn map_vars<W: Var>(&self, f: impl Fn(&V) -> W) -> MultiPoly<W> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// All variables occurring with a nonzero exponent.
    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| v.clone())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.checked_div(&Monomial::var(v.clone())).expect("exponent is positive");
            out.add_term(reduced, c * Coeff::from_integer(BigInt::from(e)));
        }
        out
    }
}

impl<'a, V: Var> Add<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn add(self, rhs: &'a MultiPoly<V>) -> MultiPoly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, V: Var> Sub<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn sub(self, rhs: &'a MultiPoly<V>) -> MultiPoly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, V: Var> Mul<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn mul(self, rhs: &'a MultiPoly<V>) -> MultiPoly<V> {
        self.mul_filtered(rhs, |_| true)
    }
}

impl<V: Var> Neg for &MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn neg(self) -> MultiPoly<V> {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<V: Var> AddAssign<&MultiPoly<V>> for MultiPoly<V> {
    fn add_assign(&mut self, rhs: &MultiPoly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<V: Var> SubAssign<&MultiPoly<V>> for MultiPoly<V> {
    fn sub_assign(&mut self, rhs: &MultiPoly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<V: Var> Add for MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<V: Var> Sub for MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<V: Var> Mul for MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Canonical text form: terms in descending graded-lex order.
impl<V: Var> fmt::Display for MultiPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_lincomb(&mut s, self.terms.iter().rev().map(|(m, c)| (m.to_string(), c)));
        f.write_str(&s)
    }
}
