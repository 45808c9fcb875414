//! `tsab`: symmetric tensors of free algebras, their abelianization, and
//! invariants of generic matrices.

mod expr;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::process::ExitCode;
use std::time::Instant;
use tsab::abelian::{ab_rewrite, AbelianPoly};
use tsab::genmat::{delta_apply, delta_apply_with, delta_coeff, sigma, GenericContext, SigmaTable};
use tsab::limits::Limits;
use tsab::symmfunc::plethysm_p_in;
use tsab::symtensor::{elem_mul, enumerate_basis, Mode, SymElement};
use tsab::tensor_oracle::{expand_element, project_to_basis, tensor_mul};
use tsab::verify::{preflight, report_degrees, verify_row, VerifyReport, VerifyRow};
use tsab::words::{enumerate_necklaces, necklace_count, Word};
use tsab::{Error, Result};

const GRAMMAR: &str = "\
Element syntax:
  e<i>[w]        e_i of the word w in TS^n, e.g. e2[x1.x2]
  e{w:i, ..}     orbit sum with several blocks, e.g. e{x1:1, x2.x1:2}
  f<i>[w], f{..} the same in the free object (no truncation)
  f[i;w]         generator of the abelianization (w primitive, least rotation)
  sums and differences of terms, each an optional rational coefficient times
  one of the above: 2*e2[x1] - 3/4*e1[x1.x2] + 1
Words are generator indices joined by dots: x1.x2.x1.
Size caps come from TSAB_MAX_BASIS and TSAB_MAX_ROWS.";

#[derive(Parser)]
#[command(name = "tsab", version, about = "Symmetric tensors, abelianization and matrix invariants", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List aperiodic necklaces (least rotations of primitive words).
    Necklaces {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=255))]
        m: u32,
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two elements of TS^n (or of the free object with --free).
    Mul {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// Recompute the product in the tensor power and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Expand an element of TS^n into the tensor power.
    Expand {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Write an element of the free object in the abelian generators f[i;w].
    Rewrite {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Print P_{h,k} = e_h(y1^k, y2^k, ..) in the elementary functions E_i.
    Newton {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        h: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Number of variables (default h*k, from which on the result is stable).
        #[arg(long)]
        vars: Option<u32>,
    },
    /// Print sigma_i(w) for n x n generic matrices.
    Sigma {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        i: u32,
        #[arg(long)]
        word: String,
    },
    /// Apply the determinant map to an abelian polynomial (--poly) or to
    /// e_alpha (--alpha, computed both ways and compared).
    Delta {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha", required_unless_present = "alpha")]
        poly: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Compare graded dimensions of TS^n(F)^ab, the trace algebra C_n and
    /// the conjugation invariants.
    VerifyIso(VerifyArgs),
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "free", conflicts_with = "free")]
    n: Option<u32>,
    /// Work in the free object instead of TS^n.
    #[arg(long)]
    free: bool,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        match self.n {
            Some(n) => Mode::Truncated(n),
            None => Mode::Free,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=255))]
    m: u32,
    #[arg(long)]
    max_deg: u32,
    #[arg(long)]
    json: bool,
    /// Seed for the per-row spot checks of the determinant map.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Record per-row wall-clock times.
    #[arg(long)]
    timings: bool,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1: mathematical mismatch, 2: invalid input, 3: size cap.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::NotInvariant(_) => 1,
        Error::ResourceCap(_) => 3,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Necklaces { m, max_deg, json } => necklaces(m as usize, max_deg as usize, json, &limits),
        Command::Mul { mode, lhs, rhs, oracle, json } => mul(mode.mode(), &lhs, &rhs, oracle, json),
        Command::Expand { n, elem } => {
            let e = expr::parse_sym_element(&elem, Mode::Truncated(n))?;
            println!("{}", expand_element(&e)?);
            Ok(Outcome::Ok)
        }
        Command::Rewrite { alpha } => {
            let e = expr::parse_sym_element_any_label(&alpha, Mode::Free)?;
            println!("{}", rewrite(&e));
            Ok(Outcome::Ok)
        }
        Command::Newton { h, k, vars } => {
            let p = plethysm_p_in(h, k, vars.unwrap_or(h.saturating_mul(k)))?;
            println!("{p}");
            Ok(Outcome::Ok)
        }
        Command::Sigma { n, i, word } => {
            let w: Word = word.parse()?;
            let ctx = GenericContext::new(n, w.min_alphabet().max(1) as u32)?;
            println!("{}", sigma(&ctx, i, &w)?);
            Ok(Outcome::Ok)
        }
        Command::Delta { n, poly, alpha } => delta(n, poly.as_deref(), alpha.as_deref()),
        Command::VerifyIso(args) => verify_iso(&args, &limits),
    }
}

fn rewrite(e: &SymElement) -> AbelianPoly {
    let mut out = AbelianPoly::zero();
    for (alpha, c) in e.terms() {
        out.add_scaled(&ab_rewrite(alpha), c);
    }
    out
}

#[derive(Serialize)]
struct NecklaceGroup {
    length: usize,
    count: usize,
    necklaces: Vec<Word>,
}

fn necklaces(m: usize, max_len: usize, json: bool, limits: &Limits) -> Result<Outcome> {
    for len in 1..=max_len {
        let count = necklace_count(m, len);
        if count > num_bigint::BigInt::from(limits.max_basis) {
            return Err(Error::ResourceCap(format!("{count} necklaces of length {len} exceed the cap of {}", limits.max_basis)));
        }
    }
    let all = enumerate_necklaces(m, max_len);
    let groups: Vec<NecklaceGroup> = (1..=max_len)
        .map(|len| {
            let necklaces: Vec<Word> = all.iter().filter(|w| w.len() == len).cloned().collect();
            NecklaceGroup { length: len, count: necklaces.len(), necklaces }
        })
        .collect();
    if json {
        println!("{}", serde_json::to_string_pretty(&groups).expect("serializable"));
    } else {
        for g in &groups {
            let words: Vec<String> = g.necklaces.iter().map(Word::to_string).collect();
            if words.is_empty() {
                println!("length {}: 0", g.length);
            } else {
                println!("length {}: {} {}", g.length, g.count, words.join(" "));
            }
        }
        println!("total: {}", all.len());
    }
    Ok(Outcome::Ok)
}

fn mul(mode: Mode, lhs: &str, rhs: &str, oracle: bool, json: bool) -> Result<Outcome> {
    let a = expr::parse_sym_element(lhs, mode)?;
    let b = expr::parse_sym_element(rhs, mode)?;
    let product = elem_mul(&a, &b)?;
    if json {
        println!("{}", serde_json::to_string(&product).expect("serializable"));
    } else {
        println!("{product}");
    }
    if oracle {
        if mode == Mode::Free {
            return Err(Error::Input("--oracle needs a finite --n".into()));
        }
        let expected = project_to_basis(&tensor_mul(&expand_element(&a)?, &expand_element(&b)?)?)?;
        if expected == product {
            eprintln!("oracle: ok");
        } else {
            eprintln!("oracle: MISMATCH, tensor power gives {expected}");
            return Ok(Outcome::Mismatch);
        }
    }
    Ok(Outcome::Ok)
}

fn delta(n: u32, poly: Option<&str>, alpha: Option<&str>) -> Result<Outcome> {
    match (poly, alpha) {
        (Some(p), _) => {
            let p = expr::parse_abelian_poly(p)?;
            let m = p.variables().iter().map(|g| g.word().min_alphabet()).max().unwrap_or(1).max(1);
            println!("{}", delta_apply(&GenericContext::new(n, m as u32)?, &p)?);
            Ok(Outcome::Ok)
        }
        (None, Some(a)) => {
            let e = expr::parse_sym_element_any_label(a, Mode::Truncated(n))?;
            let ctx = GenericContext::new(n, e.min_alphabet().max(1) as u32)?;
            let mut direct = tsab::genmat::InvariantPoly::zero();
            for (alpha, c) in e.terms() {
                direct.add_scaled(&delta_coeff(&ctx, alpha)?, c);
            }
            println!("{direct}");
            let via_generators = delta_apply(&ctx, &rewrite(&e))?;
            if via_generators == direct {
                eprintln!("pipelines: ok");
                Ok(Outcome::Ok)
            } else {
                eprintln!("pipelines: MISMATCH, through the generators: {via_generators}");
                Ok(Outcome::Mismatch)
            }
        }
        (None, None) => Err(Error::Input("give --poly or --alpha".into())),
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(flatten)]
    report: &'a VerifyReport,
    seed: u64,
    spot_checks: usize,
}

/// One row plus its determinant-map spot checks.
fn verify_one(args: &VerifyArgs, index: usize, delta: &tsab::words::DegreeVector, limits: &Limits) -> Result<(VerifyRow, usize, bool)> {
    let start = Instant::now();
    let mut row = verify_row(args.n, args.m, delta, limits)?;
    // up to two random basis elements of this degree, drawn from a stream
    // that depends only on the seed and the row
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let basis = enumerate_basis(args.n, delta);
    let ctx = GenericContext::new(args.n, args.m)?;
    let mut table = SigmaTable::new(ctx);
    let mut spot_ok = true;
    let picks: Vec<_> = basis.choose_multiple(&mut rng, 2).cloned().collect();
    for alpha in &picks {
        let via_generators = delta_apply_with(&mut table, &ab_rewrite(alpha))?;
        if via_generators != delta_coeff(&ctx, alpha)? {
            eprintln!("spot check failed at {alpha}");
            spot_ok = false;
        }
    }
    if args.timings {
        row.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok((row, picks.len(), spot_ok))
}

fn verify_iso(args: &VerifyArgs, limits: &Limits) -> Result<Outcome> {
    preflight(args.n, args.m, args.max_deg, limits)?;
    let degrees = report_degrees(args.m, args.max_deg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker threads: {e}")))?;
    let results: Vec<(VerifyRow, usize, bool)> = pool.install(|| {
        degrees
            .par_iter()
            .enumerate()
            .map(|(i, d)| verify_one(args, i, d, limits))
            .collect::<Result<Vec<_>>>()
    })?;
    let spot_checks = results.iter().map(|r| r.1).sum();
    let spots_ok = results.iter().all(|r| r.2);
    let rows = results.into_iter().map(|r| r.0).collect();
    let report = VerifyReport::from_rows(args.n, args.m, args.max_deg, rows);
    if args.json {
        let out = VerifyOutput { report: &report, seed: args.seed, spot_checks };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("n = {}, m = {}, total degree <= {}", report.n, report.m, report.max_total_degree);
        println!("{:<12} {:>10} {:>6} {:>11}  agree", "delta", "TS^n(F)^ab", "C_n", "invariants");
        for r in &report.rows {
            let time = r.elapsed_ms.map(|t| format!("  {t} ms")).unwrap_or_default();
            println!(
                "{:<12} {:>10} {:>6} {:>11}  {}{}",
                r.delta.to_string(),
                r.dim_ts_ab,
                r.dim_c_n,
                r.dim_invariants,
                if r.agree { "yes" } else { "NO" },
                time
            );
        }
        println!("spot checks of the determinant map: {spot_checks}{}", if spots_ok { "" } else { " (FAILED)" });
        println!("verdict: {}", if report.verdict { "all rows agree" } else { "MISMATCH" });
    }
    Ok(if report.verdict && spots_ok { Outcome::Ok } else { Outcome::Mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Input(String::new())), 2);
        assert_eq!(exit_code(&Error::NotInvariant(String::new())), 1);
        assert_eq!(exit_code(&Error::ResourceCap(String::new())), 3);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
