//! Graded comparison of the abelianized symmetric tensors, the trace
//! algebra and the conjugation invariants of generic matrices.

use crate::abelian::commutator_quotient_dim;
use crate::error::{input_err, Result};
use crate::genmat::{cn_graded_dim, gl_invariant_dim, GenericContext};
use crate::limits::Limits;
use crate::symtensor::enumerate_basis_capped;
use crate::words::DegreeVector;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub delta: DegreeVector,
    pub dim_ts_ab: usize,
    pub dim_c_n: usize,
    pub dim_invariants: usize,
    pub agree: bool,
    /// Wall-clock time; left out of reports meant to be compared byte for
    /// byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub m: u32,
    pub max_total_degree: u32,
    pub rows: Vec<VerifyRow>,
    pub verdict: bool,
}

impl VerifyReport {
    /// Sorts rows by multidegree order and sets the verdict.
    pub fn from_rows(n: u32, m: u32, max_total_degree: u32, mut rows: Vec<VerifyRow>) -> Self {
        rows.sort_by(|a, b| degree_order(&a.delta, &b.delta));
        let verdict = rows.iter().all(|r| r.agree);
        VerifyReport { n, m, max_total_degree, rows, verdict }
    }
}

/// The order of [`DegreeVector::all_up_to`]: total degree, then larger
/// leading components first.
fn degree_order(a: &DegreeVector, b: &DegreeVector) -> std::cmp::Ordering {
    a.total().cmp(&b.total()).then_with(|| b.0.cmp(&a.0))
}

/// Multidegrees covered by a report, in report order.
pub fn report_degrees(m: u32, max_total_degree: u32) -> Vec<DegreeVector> {
    DegreeVector::all_up_to(m as usize, max_total_degree)
}

/// Checks the size caps for every row before any rank is computed, in
/// increasing total degree so an oversized request fails at its first
/// oversized piece.
pub fn preflight(n: u32, m: u32, max_total_degree: u32, limits: &Limits) -> Result<()> {
    let ctx = GenericContext::new(n, m)?;
    for delta in report_degrees(m, max_total_degree) {
        let count = ctx.monomial_count(&delta).to_usize().unwrap_or(usize::MAX);
        limits.check_basis(&format!("monomials of A_n in multidegree {delta}"), count)?;
        enumerate_basis_capped(n, &delta, limits)?;
    }
    Ok(())
}

/// The three dimensions in multidegree `delta`.
pub fn verify_row(n: u32, m: u32, delta: &DegreeVector, limits: &Limits) -> Result<VerifyRow> {
    if delta.m() != m as usize {
        return input_err(format!("multidegree {delta} does not have {m} components"));
    }
    let ctx = GenericContext::new(n, m)?;
    let dim_ts_ab = commutator_quotient_dim(n, delta, limits)?;
    let dim_c_n = cn_graded_dim(&ctx, delta, n, limits)?;
    let dim_invariants = gl_invariant_dim(&ctx, delta, limits)?;
    Ok(VerifyRow {
        delta: delta.clone(),
        dim_ts_ab,
        dim_c_n,
        dim_invariants,
        agree: dim_ts_ab == dim_c_n && dim_c_n == dim_invariants,
        elapsed_ms: None,
    })
}

/// Sequential report over all multidegrees of total degree at most
/// `max_total_degree`.
pub fn verify_iso(n: u32, m: u32, max_total_degree: u32, limits: &Limits) -> Result<VerifyReport> {
    preflight(n, m, max_total_degree, limits)?;
    let rows = report_degrees(m, max_total_degree)
        .iter()
        .map(|d| verify_row(n, m, d, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport::from_rows(n, m, max_total_degree, rows))
}
