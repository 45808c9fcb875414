//! Text input for elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | integer '/' integer | atom ['^' integer]
//! atom   := e<i>[w] | e{w:i, ..} | f<i>[w] | f{w:i, ..} | {w:i, ..} | 1
//!         | f[i;w]
//! ```
//!
//! Words are written `x1.x2.x1`. The `e`/`f` atoms are orbit-sum basis
//! elements (truncated and free respectively), `f[i;w]` is a generator of
//! the abelianized free object.

use num_bigint::BigInt;
use std::str::FromStr;
use tsab::abelian::{AbelianPoly, FGen};
use tsab::polyring::{Coeff, Monomial};
use tsab::symtensor::{ExponentMap, Mode, SymElement};
use tsab::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Atom {
    Number(Coeff),
    /// Orbit-sum basis element; `Some('e')`/`Some('f')` records the prefix.
    Basis(Option<char>, ExponentMap),
    Gen(FGen),
}

/// A parsed sum of products of atoms.
struct Expr {
    terms: Vec<(bool, Vec<(Atom, u32)>)>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// Splits at top-level occurrences of the separators, keeping each
/// separator with the piece that follows it.
fn split_top(s: &str, seps: &[char]) -> Result<Vec<(Option<char>, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut lead: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(format!("unbalanced brackets in {s:?}")));
                }
            }
            _ => {}
        }
        if depth == 0 && seps.contains(&ch) {
            out.push((lead, std::mem::take(&mut cur)));
            lead = Some(ch);
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(bad(format!("unbalanced brackets in {s:?}")));
    }
    out.push((lead, cur));
    Ok(out)
}

fn parse_number(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (q != BigInt::from(0)).then(|| Coeff::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Coeff::from_integer),
    }
}

fn parse_atom(s: &str) -> Result<Atom> {
    if let Some(c) = parse_number(s) {
        return Ok(Atom::Number(c));
    }
    if s.starts_with('{') {
        return Ok(Atom::Basis(None, s.parse()?));
    }
    if s.starts_with("f[") {
        return Ok(Atom::Gen(s.parse()?));
    }
    let prefix = s.chars().next().filter(|c| *c == 'e' || *c == 'f');
    let Some(p) = prefix else {
        return Err(bad(format!("cannot read {s:?}; expected e<i>[w], e{{..}}, f<i>[w], f[i;w] or a number")));
    };
    let rest = &s[1..];
    if rest.starts_with('{') {
        return Ok(Atom::Basis(Some(p), rest.parse()?));
    }
    let (i, w) = rest
        .strip_suffix(']')
        .and_then(|r| r.split_once('['))
        .ok_or_else(|| bad(format!("cannot read {s:?}; expected {p}<i>[word]")))?;
    let i: u32 = i.parse().map_err(|_| bad(format!("bad exponent in {s:?}")))?;
    if i == 0 {
        return Err(bad(format!("{s:?}: the exponent must be positive")));
    }
    let alpha = ExponentMap::single(w.parse()?, i)?;
    Ok(Atom::Basis(Some(p), alpha))
}

fn parse_factor(s: &str) -> Result<(Atom, u32)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty factor"));
    }
    let pieces = split_top(s, &['^'])?;
    match pieces.as_slice() {
        [(_, a)] => Ok((parse_atom(a.trim())?, 1)),
        [(_, a), (_, e)] => {
            let e: u32 = e.trim().parse().map_err(|_| bad(format!("bad power in {s:?}")))?;
            Ok((parse_atom(a.trim())?, e))
        }
        _ => Err(bad(format!("repeated '^' in {s:?}"))),
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty expression"));
    }
    let mut terms = Vec::new();
    for (i, (sign, body)) in split_top(s, &['+', '-'])?.into_iter().enumerate() {
        let body = body.trim();
        if body.is_empty() {
            if i == 0 && sign.is_none() {
                continue; // leading sign
            }
            return Err(bad(format!("missing term in {s:?}")));
        }
        let factors = split_top(body, &['*'])?
            .into_iter()
            .map(|(_, f)| parse_factor(&f))
            .collect::<Result<Vec<_>>>()?;
        terms.push((sign == Some('-'), factors));
    }
    Ok(Expr { terms })
}

fn pow_coeff(c: &Coeff, e: u32) -> Coeff {
    num_traits::pow(c.clone(), e as usize)
}

/// Reads a linear combination of orbit-sum basis elements in `mode`.
///
/// `e` labels require a truncated mode and `f` labels the free one; bare
/// `{..}` and `1` fit either.
pub fn parse_sym_element(s: &str, mode: Mode) -> Result<SymElement> {
    parse_sym_element_lenient(s, mode, false)
}

/// Like [`parse_sym_element`], but accepting both label styles.
pub fn parse_sym_element_any_label(s: &str, mode: Mode) -> Result<SymElement> {
    parse_sym_element_lenient(s, mode, true)
}

fn parse_sym_element_lenient(s: &str, mode: Mode, any_label: bool) -> Result<SymElement> {
    let mut out = SymElement::zero(mode);
    for (neg, factors) in parse_expr(s)?.terms {
        let mut c = Coeff::from_integer(BigInt::from(if neg { -1 } else { 1 }));
        let mut basis: Option<ExponentMap> = None;
        for (atom, e) in factors {
            match atom {
                Atom::Number(x) => c *= pow_coeff(&x, e),
                Atom::Basis(prefix, alpha) => {
                    if e != 1 {
                        return Err(bad("powers of basis elements are not accepted; use the mul command"));
                    }
                    if basis.is_some() {
                        return Err(bad("a term may contain only one basis element; use the mul command for products"));
                    }
                    let ok = match (prefix, mode) {
                        (None, _) => true,
                        _ if any_label => true,
                        (Some('e'), Mode::Truncated(_)) | (Some('f'), Mode::Free) => true,
                        _ => false,
                    };
                    if !ok {
                        let want = if mode == Mode::Free { "f" } else { "e" };
                        return Err(bad(format!("label {alpha} uses the wrong prefix here; write {want}<i>[w]")));
                    }
                    basis = Some(alpha);
                }
                Atom::Gen(g) => return Err(bad(format!("{g} is an abelian generator, not a basis element"))),
            }
        }
        out.add_term(basis.unwrap_or_else(ExponentMap::identity), c)?;
    }
    Ok(out)
}

/// Reads a polynomial in the generators `f[i;w]`.
pub fn parse_abelian_poly(s: &str) -> Result<AbelianPoly> {
    let mut out = AbelianPoly::zero();
    for (neg, factors) in parse_expr(s)?.terms {
        let mut c = Coeff::from_integer(BigInt::from(if neg { -1 } else { 1 }));
        let mut mono = Monomial::one();
        for (atom, e) in factors {
            match atom {
                Atom::Number(x) => c *= pow_coeff(&x, e),
                Atom::Gen(g) => mono = mono.mul(&Monomial::var(g).pow(e)),
                Atom::Basis(..) => return Err(bad("expected generators f[i;w], found an orbit-sum basis element")),
            }
        }
        out.add_term(mono, c);
    }
    Ok(out)
}
