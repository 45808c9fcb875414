use std::cmp::Ordering;
use std::fmt;

/// A power product of variables, stored as `(variable, exponent)` pairs
/// sorted by variable with every exponent positive.
///
/// Ordering is graded lexicographic: total degree first, then the exponent
/// vectors compared lexicographically with the smallest variable as the
/// most significant one (so `x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V> Default for Monomial<V> {
    fn default() -> Self {
        Monomial { factors: Vec::new() }
    }
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut factors: Vec<(V, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(V, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.factors.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(v, e)| (v.clone(), e * k)).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (v, e) in &self.factors {
            let mut e = *e;
            if j < other.factors.len() && other.factors[j].0 == *v {
                let d = other.factors[j].1;
                if d > e {
                    return None;
                }
                e -= d;
                j += 1;
            } else if j < other.factors.len() && other.factors[j].0 < *v {
                return None;
            }
            if e > 0 {
                out.push((v.clone(), e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Splits into the part whose variables satisfy `pred` and the rest.
    pub fn split_by(&self, pred: impl Fn(&V) -> bool) -> (Self, Self) {
        let (yes, no): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial { factors: yes }, Monomial { factors: no })
    }

    pub fn map_vars<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> Monomial<W> {
        Monomial::from_pairs(self.factors.iter().map(|(v, e)| (f(v), *e)))
    }
}

impl<V: Ord + Clone> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.factors.iter().zip(other.factors.iter()) {
            match a.0.cmp(&b.0) {
                // `self` has a positive exponent on a more significant variable.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl<V: Ord + Clone> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}
