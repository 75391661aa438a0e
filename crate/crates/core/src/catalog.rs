//! The ten NIST fields and the custom-polynomial spec grammar.
//!
//! Binary fields are identified by degree t, prime fields by modulus bit
//! length n. Custom binary fields come in through a text spec of the form
//! `"t:e_k,...,e_1,e_0"` with strictly decreasing exponents, e.g.
//! `"163:7,6,3,0"`. Structural constraints are enforced; irreducibility
//! is not checked (callers are expected to take polynomials from
//! published tables), and the CLI warns on any non-catalog polynomial.

use std::fmt;

use crate::binfield::BinaryFieldParams;
use crate::error::{Error, Result};
use crate::primefield::PrimeFieldParams;
use crate::words::WordSize;

/// Degrees of the catalog binary fields.
pub const BINARY_SIZES: [usize; 5] = [163, 233, 283, 409, 571];

/// Bit lengths of the catalog prime fields.
pub const PRIME_SIZES: [usize; 5] = [192, 224, 256, 384, 521];

/// Reduction-term exponents (ascending, without the leading x^t term).
const BINARY_EXPS: [(usize, &[usize]); 5] = [
    (163, &[0, 3, 6, 7]),
    (233, &[0, 74]),
    (283, &[0, 5, 7, 12]),
    (409, &[0, 87]),
    (571, &[0, 2, 5, 10]),
];

/// NIST primes: bit length, modulus hex, power-term description.
const PRIMES: [(usize, &str, &str); 5] = [
    (
        192,
        "fffffffffffffffffffffffffffffffeffffffffffffffff",
        "2^192 - 2^64 - 1",
    ),
    (
        224,
        "ffffffffffffffffffffffffffffffff000000000000000000000001",
        "2^224 - 2^96 + 1",
    ),
    (
        256,
        "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff",
        "2^256 - 2^224 + 2^192 + 2^96 - 1",
    ),
    (
        384,
        "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffe\
         ffffffff0000000000000000ffffffff",
        "2^384 - 2^128 - 2^96 + 2^32 - 1",
    ),
    (
        521,
        "1ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff\
         ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff",
        "2^521 - 1",
    ),
];

/// Catalog binary field of degree t.
pub fn binary_field(t: usize, size: WordSize) -> Result<BinaryFieldParams> {
    let exps = BINARY_EXPS
        .iter()
        .find(|(deg, _)| *deg == t)
        .map(|(_, e)| *e)
        .ok_or(Error::UnknownField {
            family: "binary",
            size: t,
        })?;
    BinaryFieldParams::new(t, exps, size)
}

/// Catalog prime field of bit length `bits`.
pub fn prime_field(bits: usize, size: WordSize) -> Result<PrimeFieldParams> {
    let hex = PRIMES
        .iter()
        .find(|(n, _, _)| *n == bits)
        .map(|(_, h, _)| *h)
        .ok_or(Error::UnknownField {
            family: "prime",
            size: bits,
        })?;
    PrimeFieldParams::new(bits, hex, size)
}

/// Power-term expression of a catalog prime, e.g. `2^521 - 1`.
pub fn prime_description(bits: usize) -> Option<&'static str> {
    PRIMES
        .iter()
        .find(|(n, _, _)| *n == bits)
        .map(|(_, _, d)| *d)
}

/// Whether (t, exps) is one of the five catalog polynomials.
pub fn is_catalog_poly(t: usize, exps: &[usize]) -> bool {
    BINARY_EXPS
        .iter()
        .any(|(deg, e)| *deg == t && *e == exps)
}

/// Parse a custom binary-field spec of the form `"t:e_k,...,e_1,e_0"`.
///
/// The exponents after the colon are the reduction terms in strictly
/// decreasing order; the leading x^t term is implied by the degree before
/// the colon. Irreducibility is not verified.
pub fn parse_poly_spec(spec: &str, size: WordSize) -> Result<BinaryFieldParams> {
    let parse_err = |reason: &str| Error::PolySpecParse {
        input: spec.to_string(),
        reason: reason.to_string(),
    };
    let invalid = |constraint: &'static str, detail: String| Error::PolySpecInvalid {
        input: spec.to_string(),
        constraint,
        detail,
    };

    let (t_part, exps_part) = spec.split_once(':').ok_or_else(|| parse_err("missing ':'"))?;
    let t: usize = t_part
        .trim()
        .parse()
        .map_err(|_| parse_err("degree before ':' is not a number"))?;
    if exps_part.trim().is_empty() {
        return Err(parse_err("no exponents after ':'"));
    }
    let mut exps = Vec::new();
    for tok in exps_part.split(',') {
        let e: usize = tok
            .trim()
            .parse()
            .map_err(|_| parse_err("exponent is not a number"))?;
        exps.push(e);
    }
    if !exps.windows(2).all(|p| p[0] > p[1]) {
        return Err(parse_err("exponents must be strictly decreasing"));
    }
    exps.reverse();

    if exps.len() != 2 && exps.len() != 4 {
        return Err(invalid(
            "3-or-5-terms",
            format!(
                "polynomial has {} terms including x^{t}; only trinomials and pentanomials are supported",
                exps.len() + 1
            ),
        ));
    }
    if exps[0] != 0 {
        return Err(invalid(
            "constant-term",
            format!("lowest exponent is {}, expected 0", exps[0]),
        ));
    }
    let top = *exps.last().unwrap();
    if top >= t {
        return Err(invalid(
            "exponent-below-degree",
            format!("exponent {top} is not below the degree {t}"),
        ));
    }
    let d = t - top;
    if 2 * d < t - 1 {
        return Err(invalid(
            "2d>=t-1",
            format!("d = t - {top} = {d}, but 2d = {} < t - 1 = {}", 2 * d, t - 1),
        ));
    }
    BinaryFieldParams::new(t, &exps, size)
}

/// Inverse of [`parse_poly_spec`]: `"t:e_k,...,e_0"`.
pub fn render_poly_spec(params: &BinaryFieldParams) -> String {
    let exps: Vec<String> = params
        .exps()
        .iter()
        .rev()
        .map(|e| e.to_string())
        .collect();
    format!("{}:{}", params.t(), exps.join(","))
}

/// Field family tag used across the catalog, bench and CLI layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldFamily {
    Binary,
    Prime,
}

impl fmt::Display for FieldFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldFamily::Binary => f.write_str("binary"),
            FieldFamily::Prime => f.write_str("prime"),
        }
    }
}

/// Params of either family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldParams {
    Binary(BinaryFieldParams),
    Prime(PrimeFieldParams),
}

/// One catalog entry: family, size and ready-to-use params.
#[derive(Debug, Clone)]
pub struct FieldDescriptor {
    pub family: FieldFamily,
    pub size: usize,
    pub description: String,
    pub params: FieldParams,
}

/// All ten catalog fields, binary first, each family by ascending size.
pub fn all_fields(size: WordSize) -> Vec<FieldDescriptor> {
    let mut out = Vec::with_capacity(10);
    for t in BINARY_SIZES {
        let params = binary_field(t, size).expect("catalog binary field");
        out.push(FieldDescriptor {
            family: FieldFamily::Binary,
            size: t,
            description: params.to_string(),
            params: FieldParams::Binary(params),
        });
    }
    for bits in PRIME_SIZES {
        let params = prime_field(bits, size).expect("catalog prime field");
        out.push(FieldDescriptor {
            family: FieldFamily::Prime,
            size: bits,
            description: prime_description(bits).expect("catalog prime").to_string(),
            params: FieldParams::Prime(params),
        });
    }
    out
}
