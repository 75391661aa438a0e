//! Benchmark harness: times field operations over deterministic operand
//! streams and renders CSV or table reports.
//!
//! Operand streams are frozen so runs are comparable across machines and
//! reimplementations: each (family, size, op) stream is ChaCha20 with a
//! 32-byte key laid out as seed (bytes 0..8, little endian), field size
//! (bytes 8..16, little endian), family tag (byte 16: 0 binary, 1 prime)
//! and op tag (byte 17: add 0, sq 1, mul 2, inv 3, div 4), zero padded.
//! Element words are drawn least significant word first via `next_u64`,
//! masked to the field's bit length; prime-field operands are rejection
//! sampled below p, and operands that must be nonzero are redrawn.
//!
//! Timing uses the monotonic clock around the whole loop, divided by the
//! iteration count; per-call timing at nanosecond scale would be noise.
//! Each cell runs a short warmup and then three full repeats, reporting
//! the median repeat. Operands are generated before the timed region,
//! results are folded into a sink value that is handed to
//! [`std::hint::black_box`], and the timed loops neither allocate nor
//! touch the oracle.

pub mod cli;
mod selftest;

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::binfield::{BinaryFieldParams, GfScratch};
use crate::catalog::{self, FieldFamily};
use crate::error::{Error, Result};
use crate::primefield::{FpScratch, PrimeFieldParams};
use crate::words::{cmp_words, Emulation, WordSize, WordVec};

pub use selftest::run_selftest;

/// Operations the harness can time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BenchOp {
    Add,
    Sq,
    Mul,
    Inv,
    Div,
}

impl BenchOp {
    pub const ALL: [BenchOp; 5] = [
        BenchOp::Add,
        BenchOp::Sq,
        BenchOp::Mul,
        BenchOp::Inv,
        BenchOp::Div,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Add => "add",
            BenchOp::Sq => "sq",
            BenchOp::Mul => "mul",
            BenchOp::Inv => "inv",
            BenchOp::Div => "div",
        }
    }

    fn tag(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(BenchOp::Add),
            "sq" => Ok(BenchOp::Sq),
            "mul" => Ok(BenchOp::Mul),
            "inv" => Ok(BenchOp::Inv),
            "div" => Ok(BenchOp::Div),
            other => Err(Error::InvalidConfig(format!(
                "unknown op {other:?}; expected add, sq, mul, inv or div"
            ))),
        }
    }
}

/// Which field families a run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FamilyFilter {
    Binary,
    Prime,
    #[default]
    Both,
}

impl fmt::Display for FamilyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyFilter::Binary => f.write_str("binary"),
            FamilyFilter::Prime => f.write_str("prime"),
            FamilyFilter::Both => f.write_str("both"),
        }
    }
}

impl FromStr for FamilyFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(FamilyFilter::Binary),
            "prime" => Ok(FamilyFilter::Prime),
            "both" => Ok(FamilyFilter::Both),
            other => Err(Error::InvalidConfig(format!(
                "unknown family {other:?}; expected binary, prime or both"
            ))),
        }
    }
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            other => Err(Error::InvalidConfig(format!(
                "unknown format {other:?}; expected csv or table"
            ))),
        }
    }
}

/// Ops timed when none are requested, matching the published reference
/// tables.
pub const DEFAULT_OPS: [BenchOp; 2] = [BenchOp::Mul, BenchOp::Inv];

/// One published reference measurement.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceTiming {
    pub family: FieldFamily,
    pub size: usize,
    pub op: BenchOp,
    pub millis: u32,
}

/// Hardware the reference timings were taken on.
pub const REFERENCE_HOST: &str = "ATmega168 @ 16 MHz (8-bit AVR)";

/// Reference timings measured on [`REFERENCE_HOST`] with 16-bit words,
/// kept as context for reports; they are documentation, never an
/// assertion target.
pub const ATMEGA168_REFERENCE_MS: [ReferenceTiming; 20] = {
    const fn r(family: FieldFamily, size: usize, op: BenchOp, millis: u32) -> ReferenceTiming {
        ReferenceTiming {
            family,
            size,
            op,
            millis,
        }
    }
    use BenchOp::{Inv, Mul};
    use FieldFamily::{Binary, Prime};
    [
        r(Binary, 163, Mul, 16),
        r(Binary, 233, Mul, 29),
        r(Binary, 283, Mul, 40),
        r(Binary, 409, Mul, 80),
        r(Binary, 571, Mul, 149),
        r(Binary, 163, Inv, 60),
        r(Binary, 233, Inv, 105),
        r(Binary, 283, Inv, 145),
        r(Binary, 409, Inv, 282),
        r(Binary, 571, Inv, 505),
        r(Prime, 192, Mul, 6),
        r(Prime, 224, Mul, 7),
        r(Prime, 256, Mul, 9),
        r(Prime, 384, Mul, 18),
        r(Prime, 521, Mul, 29),
        r(Prime, 192, Inv, 234),
        r(Prime, 224, Inv, 344),
        r(Prime, 256, Inv, 490),
        r(Prime, 384, Inv, 1442),
        r(Prime, 521, Inv, 3258),
    ]
};

/// Look up a reference timing, if one was published for this cell.
pub fn reference_ms(family: FieldFamily, size: usize, op: BenchOp) -> Option<u32> {
    ATMEGA168_REFERENCE_MS
        .iter()
        .find(|r| r.family == family && r.size == size && r.op == op)
        .map(|r| r.millis)
}

/// Full description of one benchmark run.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: FamilyFilter,
    /// Field sizes (t or n); empty means the whole catalog of the family.
    pub sizes: Vec<usize>,
    /// Ops to time; empty means [`DEFAULT_OPS`].
    pub ops: Vec<BenchOp>,
    pub iters: u64,
    pub word_bits: WordSize,
    pub seed: u64,
    pub format: ReportFormat,
    pub strict_emulation: bool,
    /// Custom binary reduction polynomial spec; replaces `sizes`.
    pub custom_poly: Option<String>,
    /// Dump every generated operand to stderr before timing.
    pub dump_operands: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: FamilyFilter::Both,
            sizes: Vec::new(),
            ops: Vec::new(),
            iters: 1000,
            word_bits: WordSize::W16,
            seed: 42,
            format: ReportFormat::Csv,
            strict_emulation: false,
            custom_poly: None,
            dump_operands: false,
        }
    }
}

/// One timed (family, size, op) cell.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub family: FieldFamily,
    pub size: usize,
    pub word_bits: usize,
    pub op: BenchOp,
    pub iters: u64,
    pub total_ns: u128,
    pub ns_per_op: f64,
}

/// All rows of a run plus the metadata needed to reproduce it.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub seed: u64,
    pub strict_emulation: bool,
    pub host: String,
}

enum Target {
    Binary(Arc<BinaryFieldParams>),
    Prime(Arc<PrimeFieldParams>),
}

impl Target {
    fn family(&self) -> FieldFamily {
        match self {
            Target::Binary(_) => FieldFamily::Binary,
            Target::Prime(_) => FieldFamily::Prime,
        }
    }

    fn size(&self) -> usize {
        match self {
            Target::Binary(p) => p.t(),
            Target::Prime(p) => p.n(),
        }
    }
}

fn stream_key(seed: u64, family: FieldFamily, size: usize, op: BenchOp) -> [u8; 32] {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(size as u64).to_le_bytes());
    key[16] = match family {
        FieldFamily::Binary => 0,
        FieldFamily::Prime => 1,
    };
    key[17] = op.tag();
    key
}

/// Uniform value below 2^bits in `len` words.
fn sample_bits(rng: &mut ChaCha20Rng, size: WordSize, len: usize, bits: usize) -> WordVec {
    let mut v = WordVec::zero(size, len);
    let l = size.bits();
    let top_bits = bits - (len - 1) * l;
    let top_mask = if top_bits == l {
        size.mask()
    } else {
        (1u64 << top_bits) - 1
    };
    for j in 0..len {
        let word = rng.next_u64() & if j + 1 == len { top_mask } else { size.mask() };
        v.words_mut()[j] = word;
    }
    v
}

fn sample_binary(rng: &mut ChaCha20Rng, params: &BinaryFieldParams, nonzero: bool) -> WordVec {
    loop {
        let v = sample_bits(rng, params.word_size(), params.m(), params.t());
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

fn sample_prime(rng: &mut ChaCha20Rng, params: &PrimeFieldParams, nonzero: bool) -> WordVec {
    loop {
        let v = sample_bits(rng, params.word_size(), params.m(), params.n());
        if cmp_words(v.words(), params.modulus().words()) == std::cmp::Ordering::Less
            && (!nonzero || !v.is_zero())
        {
            return v;
        }
    }
}

/// Run every requested (family, size, op) cell and collect the report.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.iters == 0 {
        return Err(Error::InvalidConfig("iters must be at least 1".to_string()));
    }
    let mut ops = if config.ops.is_empty() {
        DEFAULT_OPS.to_vec()
    } else {
        config.ops.clone()
    };
    ops.sort();
    ops.dedup();

    let targets = resolve_targets(config)?;
    let mut rows = Vec::with_capacity(targets.len() * ops.len());
    for target in &targets {
        for &op in &ops {
            rows.push(run_cell(config, target, op));
        }
    }
    Ok(BenchReport {
        rows,
        seed: config.seed,
        strict_emulation: config.strict_emulation,
        host: format!(
            "{}-{}, monotonic clock",
            std::env::consts::OS,
            std::env::consts::ARCH
        ),
    })
}

fn resolve_targets(config: &BenchConfig) -> Result<Vec<Target>> {
    if let Some(spec) = &config.custom_poly {
        if config.family == FamilyFilter::Prime {
            return Err(Error::InvalidConfig(
                "a custom polynomial defines a binary field; drop --family prime".to_string(),
            ));
        }
        if !config.sizes.is_empty() {
            return Err(Error::InvalidConfig(
                "--size cannot be combined with --custom-poly".to_string(),
            ));
        }
        let params = catalog::parse_poly_spec(spec, config.word_bits)?;
        return Ok(vec![Target::Binary(Arc::new(params))]);
    }

    let emulation = if config.strict_emulation {
        Emulation::Strict
    } else {
        Emulation::Native
    };
    let binary_wanted = config.family != FamilyFilter::Prime;
    let prime_wanted = config.family != FamilyFilter::Binary;
    let mut binary_sizes = Vec::new();
    let mut prime_sizes = Vec::new();
    if config.sizes.is_empty() {
        if binary_wanted {
            binary_sizes.extend(catalog::BINARY_SIZES);
        }
        if prime_wanted {
            prime_sizes.extend(catalog::PRIME_SIZES);
        }
    } else {
        for &size in &config.sizes {
            if binary_wanted && catalog::BINARY_SIZES.contains(&size) {
                binary_sizes.push(size);
            } else if prime_wanted && catalog::PRIME_SIZES.contains(&size) {
                prime_sizes.push(size);
            } else {
                return Err(Error::UnknownField {
                    family: match config.family {
                        FamilyFilter::Binary => "binary",
                        FamilyFilter::Prime => "prime",
                        FamilyFilter::Both => "binary or prime",
                    },
                    size,
                });
            }
        }
    }
    binary_sizes.sort_unstable();
    binary_sizes.dedup();
    prime_sizes.sort_unstable();
    prime_sizes.dedup();

    let mut targets = Vec::new();
    for t in binary_sizes {
        targets.push(Target::Binary(Arc::new(catalog::binary_field(
            t,
            config.word_bits,
        )?)));
    }
    for n in prime_sizes {
        targets.push(Target::Prime(Arc::new(
            catalog::prime_field(n, config.word_bits)?.with_emulation(emulation),
        )));
    }
    Ok(targets)
}

/// Time `pass(count)` with a short warmup, then take the median of three
/// full repeats; the median damps scheduler and frequency-scaling noise
/// without hiding systematic cost.
fn time_median(iters: usize, mut pass: impl FnMut(usize)) -> u128 {
    pass(iters.min(64));
    let mut totals = [0u128; 3];
    for total in totals.iter_mut() {
        let start = Instant::now();
        pass(iters);
        *total = start.elapsed().as_nanos();
    }
    totals.sort_unstable();
    totals[1]
}

fn run_cell(config: &BenchConfig, target: &Target, op: BenchOp) -> BenchRow {
    let family = target.family();
    let size = target.size();
    let mut rng = ChaCha20Rng::from_seed(stream_key(config.seed, family, size, op));
    let iters = config.iters as usize;
    let needs_b = matches!(op, BenchOp::Add | BenchOp::Mul | BenchOp::Div);
    let a_nonzero = matches!(op, BenchOp::Inv);
    let b_nonzero = matches!(op, BenchOp::Div);
    let mut sink = 0u64;

    let total_ns = match target {
        Target::Binary(params) => {
            let a_ops: Vec<WordVec> = (0..iters)
                .map(|_| sample_binary(&mut rng, params, a_nonzero))
                .collect();
            let b_ops: Vec<WordVec> = if needs_b {
                (0..iters)
                    .map(|_| sample_binary(&mut rng, params, b_nonzero))
                    .collect()
            } else {
                Vec::new()
            };
            if config.dump_operands {
                dump_operands(family, size, op, &a_ops, &b_ops);
            }
            let mut scratch = GfScratch::new(params);
            let mut out = WordVec::zero(params.word_size(), params.m());
            time_median(iters, |count| {
                for i in 0..count {
                    match op {
                        BenchOp::Add => params.add_into(&mut out, &a_ops[i], &b_ops[i]),
                        BenchOp::Sq => params.square_table_into(&mut out, &a_ops[i], &mut scratch),
                        BenchOp::Mul => {
                            params.mul_into(&mut out, &a_ops[i], &b_ops[i], &mut scratch)
                        }
                        BenchOp::Inv => params
                            .inv_into(&mut out, &a_ops[i], &mut scratch)
                            .expect("catalog modulus, nonzero operand"),
                        BenchOp::Div => params
                            .div_into(&mut out, &a_ops[i], &b_ops[i], &mut scratch)
                            .expect("catalog modulus, nonzero divisor"),
                    }
                    sink ^= out.word(0);
                }
            })
        }
        Target::Prime(params) => {
            let a_ops: Vec<WordVec> = (0..iters)
                .map(|_| sample_prime(&mut rng, params, a_nonzero))
                .collect();
            let b_ops: Vec<WordVec> = if needs_b {
                (0..iters)
                    .map(|_| sample_prime(&mut rng, params, b_nonzero))
                    .collect()
            } else {
                Vec::new()
            };
            if config.dump_operands {
                dump_operands(family, size, op, &a_ops, &b_ops);
            }
            let mut scratch = FpScratch::new(params);
            let mut out = WordVec::zero(params.word_size(), params.m());
            time_median(iters, |count| {
                for i in 0..count {
                    match op {
                        BenchOp::Add => params.add_into(&mut out, &a_ops[i], &b_ops[i]),
                        // no dedicated squaring path exists for primes; time mul(a, a)
                        BenchOp::Sq => {
                            params.mul_into(&mut out, &a_ops[i], &a_ops[i], &mut scratch)
                        }
                        BenchOp::Mul => {
                            params.mul_into(&mut out, &a_ops[i], &b_ops[i], &mut scratch)
                        }
                        BenchOp::Inv => params
                            .inv_into(&mut out, &a_ops[i], &mut scratch)
                            .expect("catalog modulus, nonzero operand"),
                        BenchOp::Div => params
                            .div_into(&mut out, &a_ops[i], &b_ops[i], &mut scratch)
                            .expect("catalog modulus, nonzero divisor"),
                    }
                    sink ^= out.word(0);
                }
            })
        }
    };
    black_box(sink);

    BenchRow {
        family,
        size,
        word_bits: config.word_bits.bits(),
        op,
        iters: config.iters,
        total_ns,
        ns_per_op: total_ns as f64 / config.iters as f64,
    }
}

fn dump_operands(family: FieldFamily, size: usize, op: BenchOp, a_ops: &[WordVec], b_ops: &[WordVec]) {
    for (i, a) in a_ops.iter().enumerate() {
        match b_ops.get(i) {
            Some(b) => eprintln!("operand,{family},{size},{op},{i},{},{}", a.to_hex(), b.to_hex()),
            None => eprintln!("operand,{family},{size},{op},{i},{},", a.to_hex()),
        }
    }
}

/// Render a report as CSV (fixed header, one line per row) or as one
/// aligned grid per family with sizes as columns and ops as rows.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    match format {
        ReportFormat::Csv => {
            let mut out = String::from("family,size,word_bits,op,iters,total_ns,ns_per_op\n");
            for row in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{:.2}\n",
                    row.family, row.size, row.word_bits, row.op, row.iters, row.total_ns, row.ns_per_op
                ));
            }
            Ok(out)
        }
        ReportFormat::Table => Ok(emit_table(report)),
    }
}

fn fmt_cell(ns: f64) -> String {
    if ns >= 1e6 {
        format!("{:.2} ms", ns / 1e6)
    } else if ns >= 1e3 {
        format!("{:.2} us", ns / 1e3)
    } else {
        format!("{ns:.0} ns")
    }
}

fn emit_table(report: &BenchReport) -> String {
    const CELL: usize = 12;
    let mut out = String::new();
    for family in [FieldFamily::Binary, FieldFamily::Prime] {
        let rows: Vec<&BenchRow> = report.rows.iter().filter(|r| r.family == family).collect();
        if rows.is_empty() {
            continue;
        }
        let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let mut ops: Vec<BenchOp> = rows.iter().map(|r| r.op).collect();
        ops.sort();
        ops.dedup();
        let word_bits = rows[0].word_bits;
        let iters = rows[0].iters;

        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!(
            "{family} fields: word size {word_bits} bits, {iters} iterations per op, seed {}{}\n",
            report.seed,
            if report.strict_emulation {
                ", strict emulation"
            } else {
                ""
            }
        ));
        out.push_str(&format!("{:<6}", "op"));
        for size in &sizes {
            out.push_str(&format!("{size:>CELL$}"));
        }
        out.push('\n');
        for &op in &ops {
            out.push_str(&format!("{:<6}", op.name()));
            for &size in &sizes {
                let cell = rows
                    .iter()
                    .find(|r| r.size == size && r.op == op)
                    .map(|r| fmt_cell(r.ns_per_op))
                    .unwrap_or_else(|| "-".to_string());
                out.push_str(&format!("{cell:>CELL$}"));
            }
            out.push('\n');
        }

        let ref_ops: Vec<BenchOp> = ops
            .iter()
            .copied()
            .filter(|&op| sizes.iter().any(|&s| reference_ms(family, s, op).is_some()))
            .collect();
        if !ref_ops.is_empty() {
            out.push_str(&format!("reference, {REFERENCE_HOST}, 16-bit words, ms per op:\n"));
            for &op in &ref_ops {
                out.push_str(&format!("{:<6}", op.name()));
                for &size in &sizes {
                    let cell = reference_ms(family, size, op)
                        .map(|ms| ms.to_string())
                        .unwrap_or_else(|| "-".to_string());
                    out.push_str(&format!("{cell:>CELL$}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_count_and_determinism() {
        let config = BenchConfig {
            family: FamilyFilter::Binary,
            sizes: vec![163],
            ops: vec![BenchOp::Mul, BenchOp::Inv],
            iters: 50,
            word_bits: WordSize::W16,
            seed: 42,
            ..BenchConfig::default()
        };
        let r1 = run_bench(&config).unwrap();
        let r2 = run_bench(&config).unwrap();
        assert_eq!(r1.rows.len(), 2);
        for (a, b) in r1.rows.iter().zip(&r2.rows) {
            assert_eq!(a.family, b.family);
            assert_eq!(a.size, b.size);
            assert_eq!(a.op, b.op);
            assert_eq!(a.iters, b.iters);
        }
    }

    #[test]
    fn rows_are_ordered_family_size_op() {
        let config = BenchConfig {
            sizes: vec![521, 163, 192, 233],
            ops: vec![BenchOp::Inv, BenchOp::Add],
            iters: 5,
            word_bits: WordSize::W64,
            ..BenchConfig::default()
        };
        let report = run_bench(&config).unwrap();
        let key: Vec<(String, usize, BenchOp)> = report
            .rows
            .iter()
            .map(|r| (r.family.to_string(), r.size, r.op))
            .collect();
        assert_eq!(
            key,
            vec![
                ("binary".into(), 163, BenchOp::Add),
                ("binary".into(), 163, BenchOp::Inv),
                ("binary".into(), 233, BenchOp::Add),
                ("binary".into(), 233, BenchOp::Inv),
                ("prime".into(), 192, BenchOp::Add),
                ("prime".into(), 192, BenchOp::Inv),
                ("prime".into(), 521, BenchOp::Add),
                ("prime".into(), 521, BenchOp::Inv),
            ]
        );
    }

    #[test]
    fn config_errors() {
        let bad_iters = BenchConfig {
            iters: 0,
            ..BenchConfig::default()
        };
        assert!(matches!(
            run_bench(&bad_iters),
            Err(Error::InvalidConfig(_))
        ));
        let bad_size = BenchConfig {
            sizes: vec![170],
            iters: 1,
            ..BenchConfig::default()
        };
        assert!(matches!(
            run_bench(&bad_size),
            Err(Error::UnknownField { size: 170, .. })
        ));
        // 192 is a prime size; with the binary family it is unknown
        let mismatched = BenchConfig {
            family: FamilyFilter::Binary,
            sizes: vec![192],
            iters: 1,
            ..BenchConfig::default()
        };
        assert!(matches!(
            run_bench(&mismatched),
            Err(Error::UnknownField { size: 192, .. })
        ));
    }

    #[test]
    fn custom_poly_target() {
        let config = BenchConfig {
            family: FamilyFilter::Binary,
            custom_poly: Some("163:7,6,3,0".to_string()),
            ops: vec![BenchOp::Mul],
            iters: 3,
            ..BenchConfig::default()
        };
        let report = run_bench(&config).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].size, 163);
        let conflict = BenchConfig {
            sizes: vec![163],
            custom_poly: Some("163:7,6,3,0".to_string()),
            ..BenchConfig::default()
        };
        assert!(run_bench(&conflict).is_err());
        let wrong_family = BenchConfig {
            family: FamilyFilter::Prime,
            custom_poly: Some("163:7,6,3,0".to_string()),
            ..BenchConfig::default()
        };
        assert!(run_bench(&wrong_family).is_err());
    }

    #[test]
    fn csv_shape() {
        let config = BenchConfig {
            family: FamilyFilter::Binary,
            sizes: vec![163],
            ops: vec![BenchOp::Mul],
            iters: 3,
            ..BenchConfig::default()
        };
        let report = run_bench(&config).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "family,size,word_bits,op,iters,total_ns,ns_per_op");
        assert!(lines[1].starts_with("binary,163,16,mul,3,"));
        let empty = BenchReport {
            rows: Vec::new(),
            seed: 0,
            strict_emulation: false,
            host: String::new(),
        };
        assert!(matches!(
            emit_report(&empty, ReportFormat::Csv),
            Err(Error::EmptyReport)
        ));
    }

    #[test]
    fn table_shape_mirrors_reference_layout() {
        let config = BenchConfig {
            family: FamilyFilter::Binary,
            ops: vec![BenchOp::Mul, BenchOp::Inv],
            iters: 2,
            word_bits: WordSize::W64,
            ..BenchConfig::default()
        };
        let report = run_bench(&config).unwrap();
        let table = emit_report(&report, ReportFormat::Table).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        // title, header, mul, inv, reference title, reference mul, reference inv
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("binary fields"));
        for t in catalog::BINARY_SIZES {
            assert!(lines[1].contains(&t.to_string()));
        }
        assert!(lines[2].starts_with("mul"));
        assert!(lines[3].starts_with("inv"));
        assert!(lines[4].starts_with("reference"));
        assert!(lines[5].contains("16") && lines[5].contains("149"));
        assert!(lines[6].contains("60") && lines[6].contains("505"));
    }

    #[test]
    fn operand_streams_are_reproducible_and_in_range() {
        let params = catalog::binary_field(163, WordSize::W16).unwrap();
        let mut r1 = ChaCha20Rng::from_seed(stream_key(7, FieldFamily::Binary, 163, BenchOp::Mul));
        let mut r2 = ChaCha20Rng::from_seed(stream_key(7, FieldFamily::Binary, 163, BenchOp::Mul));
        for _ in 0..20 {
            let a = sample_binary(&mut r1, &params, false);
            let b = sample_binary(&mut r2, &params, false);
            assert_eq!(a, b);
            assert!(a.degree() < 163);
        }
        // different op tag, different stream
        let mut r3 = ChaCha20Rng::from_seed(stream_key(7, FieldFamily::Binary, 163, BenchOp::Inv));
        let c = sample_binary(&mut r3, &params, false);
        let mut r4 = ChaCha20Rng::from_seed(stream_key(7, FieldFamily::Binary, 163, BenchOp::Mul));
        let d = sample_binary(&mut r4, &params, false);
        assert_ne!(c, d);

        let prime = catalog::prime_field(521, WordSize::W64).unwrap();
        let mut r5 = ChaCha20Rng::from_seed(stream_key(9, FieldFamily::Prime, 521, BenchOp::Inv));
        for _ in 0..10 {
            let v = sample_prime(&mut r5, &prime, true);
            assert!(!v.is_zero());
            assert!(cmp_words(v.words(), prime.modulus().words()) == std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn reference_lookup() {
        assert_eq!(reference_ms(FieldFamily::Binary, 163, BenchOp::Mul), Some(16));
        assert_eq!(reference_ms(FieldFamily::Prime, 521, BenchOp::Inv), Some(3258));
        assert_eq!(reference_ms(FieldFamily::Binary, 163, BenchOp::Add), None);
        assert_eq!(reference_ms(FieldFamily::Binary, 8, BenchOp::Mul), None);
    }
}
