//! Browser playground for the `limbfield` crate.
//!
//! Every export takes and returns plain strings and integers so the
//! JavaScript side needs no glue beyond `JSON.parse`. The same functions
//! compile to ordinary Rust on native targets, which is how this crate is
//! unit-tested without a wasm toolchain; `#[wasm_bindgen]` only changes
//! the ABI when building for wasm32.
//!
//! Exports:
//! - [`catalog_json`]: the ten catalog fields, for populating a picker.
//! - [`evaluate`]: one arithmetic operation on user-supplied hex operands.
//! - [`random_operands`]: deterministic operand pairs from a small seed.
//! - [`run_op_iters`]: a timing loop the page wraps in `performance.now()`;
//!   the crate itself never reads a clock, so it needs no JS time imports.

use std::sync::Arc;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use limbfield::binfield::{BinaryFieldParams, GFElement};
use limbfield::catalog::{self, FieldFamily, FieldParams};
use limbfield::primefield::{FpElement, PrimeFieldParams};
use limbfield::{WordSize, WordVec};

/// One row of the field picker.
#[derive(Serialize)]
struct CatalogEntry {
    family: String,
    size: usize,
    description: String,
    hex_digits: usize,
}

/// JSON array describing the ten catalog fields, binary first.
#[wasm_bindgen]
pub fn catalog_json() -> String {
    let entries: Vec<CatalogEntry> = catalog::all_fields(WordSize::W16)
        .into_iter()
        .map(|f| CatalogEntry {
            family: f.family.to_string(),
            size: f.size,
            description: f.description,
            hex_digits: match &f.params {
                FieldParams::Binary(p) => p.element_hex_digits(),
                FieldParams::Prime(p) => p.element_hex_digits(),
            },
        })
        .collect();
    serde_json::to_string(&entries).expect("catalog serializes")
}

/// Run one operation and return `{"ok":true,"result":hex}` or
/// `{"ok":false,"error":message}`.
///
/// `op` is one of `add`, `sub`, `mul`, `square`, `inv`, `div`; `b_hex` is
/// ignored (and may be empty) for `square` and `inv`. In a binary field
/// subtraction is the same XOR as addition, and squaring in a prime field
/// is served by the general multiply, mirroring the CLI benchmark.
#[wasm_bindgen]
pub fn evaluate(
    family: &str,
    size: u32,
    word_bits: u32,
    op: &str,
    a_hex: &str,
    b_hex: &str,
) -> String {
    wrap(evaluate_impl(family, size, word_bits, op, a_hex, b_hex))
}

/// Deterministic nonzero operand pair as `{"ok":true,"a":hex,"b":hex}`.
///
/// The same `(family, size, seed)` triple always yields the same pair, at
/// every word size, so results seen in the page can be reproduced with
/// the CLI or in tests.
#[wasm_bindgen]
pub fn random_operands(family: &str, size: u32, seed: u32) -> String {
    wrap(random_operands_impl(family, size, seed))
}

/// Run `op` for `iters` iterations over a small pregenerated operand pool
/// and return `{"ok":true,"sink":n}`.
///
/// The caller measures wall time around this call. The sink hashes every
/// result (FNV-1a over the low 32 bits) so the optimizer cannot discard
/// the loop and repeated pool passes cannot cancel; it is word-size
/// independent, so runs at different word sizes can cross-check each
/// other. Division keeps the per-iteration inverse, so its cost is
/// comparable to `inv`.
#[wasm_bindgen]
pub fn run_op_iters(family: &str, size: u32, word_bits: u32, op: &str, iters: u32, seed: u32) -> String {
    wrap(run_op_iters_impl(family, size, word_bits, op, iters, seed))
}

/// Lift an implementation result into the JSON envelope shared by all
/// fallible exports.
fn wrap(result: Result<serde_json::Value, String>) -> String {
    match result {
        Ok(mut value) => {
            value["ok"] = json!(true);
            value.to_string()
        }
        Err(error) => json!({ "ok": false, "error": error }).to_string(),
    }
}

/// Either family's params behind one dispatch point.
enum Field {
    Binary(Arc<BinaryFieldParams>),
    Prime(Arc<PrimeFieldParams>),
}

impl Field {
    fn open(family: &str, size: u32, word_bits: u32) -> Result<Field, String> {
        let word_size = WordSize::from_bits(word_bits).map_err(|e| e.to_string())?;
        let size = size as usize;
        match family {
            "binary" => {
                let params = catalog::binary_field(size, word_size).map_err(|e| e.to_string())?;
                Ok(Field::Binary(Arc::new(params)))
            }
            "prime" => {
                let params = catalog::prime_field(size, word_size).map_err(|e| e.to_string())?;
                Ok(Field::Prime(Arc::new(params)))
            }
            other => Err(format!("unknown family {other:?}; expected \"binary\" or \"prime\"")),
        }
    }

    fn family(&self) -> FieldFamily {
        match self {
            Field::Binary(_) => FieldFamily::Binary,
            Field::Prime(_) => FieldFamily::Prime,
        }
    }

    fn size(&self) -> usize {
        match self {
            Field::Binary(p) => p.t(),
            Field::Prime(p) => p.n(),
        }
    }
}

/// Whether `op` consumes the second operand.
fn needs_b(op: &str) -> Result<bool, String> {
    match op {
        "add" | "sub" | "mul" | "div" => Ok(true),
        "square" | "inv" => Ok(false),
        other => Err(format!(
            "unknown op {other:?}; expected add, sub, mul, square, inv or div"
        )),
    }
}

/// User-typed hex: trim, drop an optional 0x prefix.
fn clean_hex(s: &str) -> Result<&str, String> {
    let s = s.trim();
    let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    if s.is_empty() {
        return Err("empty operand".to_string());
    }
    Ok(s)
}

fn evaluate_impl(
    family: &str,
    size: u32,
    word_bits: u32,
    op: &str,
    a_hex: &str,
    b_hex: &str,
) -> Result<serde_json::Value, String> {
    let field = Field::open(family, size, word_bits)?;
    needs_b(op)?;
    let result = match &field {
        Field::Binary(params) => {
            let a = parse_gf(params, a_hex).map_err(|e| format!("operand a: {e}"))?;
            match op {
                "add" | "sub" => a.add(&parse_gf_b(params, b_hex)?).map_err(|e| e.to_string())?,
                "mul" => a.mul(&parse_gf_b(params, b_hex)?).map_err(|e| e.to_string())?,
                "square" => a.square(),
                "inv" => a.inv().map_err(|e| e.to_string())?,
                "div" => a.div(&parse_gf_b(params, b_hex)?).map_err(|e| e.to_string())?,
                _ => unreachable!("op validated above"),
            }
            .to_hex()
        }
        Field::Prime(params) => {
            let a = parse_fp(params, a_hex).map_err(|e| format!("operand a: {e}"))?;
            match op {
                "add" => a.add(&parse_fp_b(params, b_hex)?).map_err(|e| e.to_string())?,
                "sub" => a.sub(&parse_fp_b(params, b_hex)?).map_err(|e| e.to_string())?,
                "mul" => a.mul(&parse_fp_b(params, b_hex)?).map_err(|e| e.to_string())?,
                "square" => a.mul(&a).map_err(|e| e.to_string())?,
                "inv" => a.inv().map_err(|e| e.to_string())?,
                "div" => a.div(&parse_fp_b(params, b_hex)?).map_err(|e| e.to_string())?,
                _ => unreachable!("op validated above"),
            }
            .to_hex()
        }
    };
    Ok(json!({
        "family": field.family().to_string(),
        "size": field.size(),
        "op": op,
        "result": result,
    }))
}

fn parse_gf(params: &Arc<BinaryFieldParams>, hex: &str) -> Result<GFElement, String> {
    GFElement::from_hex(params, clean_hex(hex)?).map_err(|e| e.to_string())
}

fn parse_gf_b(params: &Arc<BinaryFieldParams>, hex: &str) -> Result<GFElement, String> {
    parse_gf(params, hex).map_err(|e| format!("operand b: {e}"))
}

fn parse_fp(params: &Arc<PrimeFieldParams>, hex: &str) -> Result<FpElement, String> {
    FpElement::from_hex(params, clean_hex(hex)?).map_err(|e| e.to_string())
}

fn parse_fp_b(params: &Arc<PrimeFieldParams>, hex: &str) -> Result<FpElement, String> {
    parse_fp(params, hex).map_err(|e| format!("operand b: {e}"))
}

/// Stream cipher keyed by `(seed, size, family)`; identical derivation at
/// every word size so the pair only depends on the field.
fn demo_rng(family: FieldFamily, size: usize, seed: u32) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..4].copy_from_slice(&seed.to_le_bytes());
    key[4..8].copy_from_slice(&(size as u32).to_le_bytes());
    key[8] = match family {
        FieldFamily::Binary => 0,
        FieldFamily::Prime => 1,
    };
    ChaCha20Rng::from_seed(key)
}

/// Uniform `bits`-bit value in a `len`-word vector.
///
/// Always consumes `ceil(bits / 64)` RNG draws, however narrow the target
/// words, so one `(family, size, seed)` stream yields the same values at
/// every word size and cross-word-size runs stay comparable.
fn sample_bits(rng: &mut ChaCha20Rng, size: WordSize, len: usize, bits: usize) -> WordVec {
    let mut limbs = vec![0u64; bits.div_ceil(64)];
    for limb in limbs.iter_mut() {
        *limb = rng.next_u64();
    }
    if !bits.is_multiple_of(64) {
        let last = limbs.len() - 1;
        limbs[last] &= (1u64 << (bits % 64)) - 1;
    }
    let l = size.bits();
    let mut words = vec![0u64; len];
    // l divides 64, so a word never straddles two limbs
    for (j, w) in words.iter_mut().enumerate() {
        let bitpos = j * l;
        if bitpos < bits {
            *w = (limbs[bitpos / 64] >> (bitpos % 64)) & size.mask();
        }
    }
    WordVec::from_words(size, &words).expect("masked words are in range")
}

fn sample_gf(rng: &mut ChaCha20Rng, params: &Arc<BinaryFieldParams>) -> GFElement {
    loop {
        let v = sample_bits(rng, params.word_size(), params.m(), params.t());
        let e = GFElement::from_wordvec(params, v).expect("degree-masked value");
        if !e.is_zero() {
            return e;
        }
    }
}

fn sample_fp(rng: &mut ChaCha20Rng, params: &Arc<PrimeFieldParams>) -> FpElement {
    loop {
        let v = sample_bits(rng, params.word_size(), params.m(), params.n());
        // rejection sampling: n-bit draws land below p more than half the time
        match FpElement::from_wordvec(params, v) {
            Ok(e) if !e.is_zero() => return e,
            _ => continue,
        }
    }
}

fn random_operands_impl(family: &str, size: u32, seed: u32) -> Result<serde_json::Value, String> {
    // Sampling yields the same values at every word size; W64 is merely
    // the cheapest representation to draw into.
    let field = Field::open(family, size, 64)?;
    let mut rng = demo_rng(field.family(), field.size(), seed);
    let (a, b) = match &field {
        Field::Binary(params) => (
            sample_gf(&mut rng, params).to_hex(),
            sample_gf(&mut rng, params).to_hex(),
        ),
        Field::Prime(params) => (
            sample_fp(&mut rng, params).to_hex(),
            sample_fp(&mut rng, params).to_hex(),
        ),
    };
    Ok(json!({
        "family": field.family().to_string(),
        "size": field.size(),
        "seed": seed,
        "a": a,
        "b": b,
    }))
}

/// Operand pairs per timing loop; enough to defeat value-specific
/// shortcuts, few enough that generation is negligible next to the loop.
const BENCH_POOL: usize = 16;

/// Low 32 bits of a vector regardless of its word size, so the sinks of
/// timing runs at different word sizes can be cross-checked for equality.
fn low32(v: &WordVec) -> u32 {
    let l = v.size().bits();
    let mut out = 0u64;
    for j in 0..v.len().min(32usize.div_ceil(l)) {
        out |= v.word(j) << (j * l);
    }
    out as u32
}

/// One FNV-1a step. Cheap next to any field op, and free of the
/// cancellation a xor or rotate-xor accumulator shows on a stream that
/// repeats with the pool period.
fn fold_sink(sink: u32, value: u32) -> u32 {
    (sink ^ value).wrapping_mul(0x0100_0193)
}

fn run_op_iters_impl(
    family: &str,
    size: u32,
    word_bits: u32,
    op: &str,
    iters: u32,
    seed: u32,
) -> Result<serde_json::Value, String> {
    if iters == 0 {
        return Err("iters must be at least 1".to_string());
    }
    needs_b(op)?;
    let field = Field::open(family, size, word_bits)?;
    let mut rng = demo_rng(field.family(), field.size(), seed);
    let mut sink = 0x811c_9dc5u32; // FNV offset basis
    match &field {
        Field::Binary(params) => {
            let pool: Vec<(GFElement, GFElement)> = (0..BENCH_POOL)
                .map(|_| (sample_gf(&mut rng, params), sample_gf(&mut rng, params)))
                .collect();
            for i in 0..iters as usize {
                let (a, b) = &pool[i % BENCH_POOL];
                let out = match op {
                    "add" | "sub" => a.add(b).expect("same field"),
                    "mul" => a.mul(b).expect("same field"),
                    "square" => a.square(),
                    "inv" => a.inv().expect("nonzero operand"),
                    "div" => a.div(b).expect("nonzero divisor"),
                    _ => unreachable!("op validated above"),
                };
                sink = fold_sink(sink, low32(out.value()));
            }
        }
        Field::Prime(params) => {
            let pool: Vec<(FpElement, FpElement)> = (0..BENCH_POOL)
                .map(|_| (sample_fp(&mut rng, params), sample_fp(&mut rng, params)))
                .collect();
            for i in 0..iters as usize {
                let (a, b) = &pool[i % BENCH_POOL];
                let out = match op {
                    "add" => a.add(b).expect("same field"),
                    "sub" => a.sub(b).expect("same field"),
                    "mul" => a.mul(b).expect("same field"),
                    "square" => a.mul(a).expect("same field"),
                    "inv" => a.inv().expect("nonzero operand"),
                    "div" => a.div(b).expect("nonzero divisor"),
                    _ => unreachable!("op validated above"),
                };
                sink = fold_sink(sink, low32(out.value()));
            }
        }
    }
    Ok(json!({
        "family": field.family().to_string(),
        "size": field.size(),
        "op": op,
        "iters": iters,
        "sink": sink,
    }))
}
