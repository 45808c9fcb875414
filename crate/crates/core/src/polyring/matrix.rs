use super::Coeff;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Coeff::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        ExactMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Coeff::from_integer(BigInt::from(v))).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coeff::one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rows scaled by the lcm of their denominators; rank-preserving.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
            })
            .collect()
    }

    /// Bareiss elimination. After step `k` every remaining entry equals a
    /// `(k+1)`-minor of the input, so the division by the previous pivot is
    /// exact even when pivot columns are skipped.
    fn echelon(&self) -> Echelon {
        let mut a = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in bottom.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = pivot * &row[j] - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon { rows: a, pivots }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Integer basis of the right nullspace `{x : M x = 0}`; each vector is
    /// primitive (content 1) with a positive entry at its free column.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        self.rank_and_nullspace().1
    }

    pub fn rank_and_nullspace(&self) -> (usize, Vec<Vec<BigInt>>) {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Coeff::zero(); self.cols];
            x[free] = Coeff::one();
            for (k, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[k];
                let mut s = Coeff::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Coeff::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Coeff::from_integer(row[pc].clone());
            }
            basis.push(primitive_integer_vector(&x));
        }
        (rank, basis)
    }
}

fn primitive_integer_vector(x: &[Coeff]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = x.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Plain Gauss-Jordan elimination over the rationals.
    fn rational_rank(m: &ExactMatrix) -> usize {
        let mut a: Vec<Vec<Coeff>> = (0..m.nrows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.ncols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = Coeff::one() / &a[rank][c];
            for j in 0..m.ncols() {
                a[rank][j] = &a[rank][j] * &inv;
            }
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..m.ncols() {
                        let d = &f * &a[rank][j];
                        a[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> ExactMatrix {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        // low-rank products show up often enough to exercise skipped pivots
        if rng.gen_bool(0.4) {
            let k = rng.gen_range(1..=3);
            let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..k).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let p: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<i64>().clamp(-9, 9)).collect())
                .collect();
            return ExactMatrix::from_int_rows(&p);
        }
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        ExactMatrix::from_int_rows(&data)
    }

    #[test]
    fn small_ranks() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(2, 3).rank(), 0);
        assert_eq!(ExactMatrix::from_int_rows(&[vec![0, 1, 2], vec![0, 2, 4], vec![1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn six_by_six_matches_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        for _ in 0..10 {
            let data: Vec<Vec<i64>> = (0..6).map(|_| (0..6).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = ExactMatrix::from_int_rows(&data);
            assert_eq!(m.rank(), rational_rank(&m));
        }
    }

    #[test]
    fn hundred_random_matrices_match_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let m = random_matrix(&mut rng);
            assert_eq!(m.rank(), rational_rank(&m));
        }
    }

    #[test]
    fn rank_ignores_row_and_column_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let m = random_matrix(&mut rng);
            let mut rows: Vec<usize> = (0..m.nrows()).collect();
            let mut cols: Vec<usize> = (0..m.ncols()).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let shuffled =
                ExactMatrix::from_rows(rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect());
            assert_eq!(shuffled.rank(), m.rank());
            assert_eq!(m.transpose().rank(), m.rank());
        }
    }

    #[test]
    fn nullspace_vectors_are_primitive_kernel_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = random_matrix(&mut rng);
            let (rank, ns) = m.rank_and_nullspace();
            assert_eq!(rank + ns.len(), m.ncols());
            for v in &ns {
                for r in 0..m.nrows() {
                    let dot: Coeff = m.row(r).iter().zip(v).map(|(a, b)| a * Coeff::from_integer(b.clone())).sum();
                    assert!(dot.is_zero());
                }
                let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                assert!(g.is_one());
            }
            // basis vectors are independent
            if !ns.is_empty() {
                let k = ExactMatrix::from_rows(ns.iter().map(|v| v.iter().map(|x| Coeff::from_integer(x.clone())).collect()).collect());
                assert_eq!(k.rank(), ns.len());
            }
        }
    }

    #[test]
    fn rational_entries() {
        let half = Coeff::new(BigInt::from(1), BigInt::from(2));
        let m = ExactMatrix::from_rows(vec![vec![half.clone(), Coeff::one()], vec![Coeff::one(), Coeff::from_integer(BigInt::from(2))]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec![BigInt::from(-2), BigInt::from(1)]]);
    }
}
