//! Exact coefficients, sparse commutative polynomials and fraction-free
//! linear algebra.
//!
//! Everything in the crate bottoms out here: there is no floating point
//! anywhere. Coefficients are [`BigRational`]s kept in lowest terms; the
//! polynomial constructions downstream (generic matrices, symmetric
//! functions) only ever produce integral coefficients, and ranks are taken
//! over the rationals by Bareiss elimination on cleared-denominator rows, or
//! by sparse incremental echelon forms for wide, sparse spans.

mod echelon;
mod matrix;
mod monomial;
mod poly;

pub use echelon::{sparse_rank, SparseEchelon, SparseVec};
pub use matrix::ExactMatrix;
pub use monomial::Monomial;
pub use poly::{poly_arith, ArithOp, MultiPoly, Var};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coeff_ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n choose k` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `(c_1 + ... + c_t)! / (c_1! ... c_t!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &c in parts {
        total += u64::from(c);
        acc *= binomial(total, u64::from(c));
    }
    acc
}

/// Writes a linear combination `c_1*t_1 + c_2*t_2 - ...` in the canonical
/// text form shared by every printable element type. A term label of `"1"`
/// stands for the unit and prints as the bare coefficient.
pub(crate) fn write_lincomb<'a, I>(out: &mut String, terms: I)
where
    I: IntoIterator<Item = (String, &'a Coeff)>,
{
    let mut first = true;
    for (label, c) in terms {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if first {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        first = false;
        let unit = label == "1";
        if magnitude.is_one() {
            out.push_str(&label);
        } else {
            let _ = write!(out, "{}", magnitude);
            if !unit {
                out.push('*');
                out.push_str(&label);
            }
        }
    }
    if first {
        out.push('0');
    }
}
