//! Command line front end: `bench`, `list-fields` and `selftest`
//! subcommands over the harness in the parent module.
//!
//! Exit codes: 0 success, 1 runtime or selftest failure, 2 usage errors
//! (bad flags, unknown sizes, malformed polynomial specs).

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, FieldFamily};
use crate::error::Error;
use crate::words::WordSize;

use super::{
    emit_report, reference_ms, run_bench, run_selftest, BenchConfig, BenchOp, FamilyFilter,
    ReportFormat, REFERENCE_HOST,
};

#[derive(Parser)]
#[command(
    name = "limbfield",
    version,
    about = "Binary and prime field arithmetic on emulated 8/16/32/64-bit words",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time field operations and print a CSV or table report
    Bench(BenchArgs),
    /// List the ten built-in fields
    ListFields,
    /// Run the built-in correctness suites
    Selftest,
}

fn parse_word_size(s: &str) -> Result<WordSize, Error> {
    let bits: u32 = s
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("word size must be a number, got {s:?}")))?;
    WordSize::from_bits(bits)
}

fn parse_family(s: &str) -> Result<FamilyFilter, Error> {
    s.parse()
}

fn parse_op(s: &str) -> Result<BenchOp, Error> {
    s.parse()
}

fn parse_format(s: &str) -> Result<ReportFormat, Error> {
    s.parse()
}

#[derive(Args)]
struct BenchArgs {
    /// Field family to time: binary, prime or both
    #[arg(long, default_value = "both", value_parser = parse_family)]
    family: FamilyFilter,
    /// Field size in bits (t or n); repeatable; defaults to the whole catalog
    #[arg(long = "size", value_name = "BITS")]
    size: Vec<usize>,
    /// Operation to time: add, sq, mul, inv, div; repeatable; defaults to mul and inv
    #[arg(long = "op", value_name = "OP", value_parser = parse_op)]
    op: Vec<BenchOp>,
    /// Iterations per (field, op) cell
    #[arg(long, default_value_t = 1000)]
    iters: u64,
    /// Emulated word size in bits: 8, 16, 32 or 64
    #[arg(long, value_name = "L", default_value = "16", value_parser = parse_word_size)]
    word_bits: WordSize,
    /// Seed for the deterministic operand streams
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format: csv or table
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: ReportFormat,
    /// Keep every word-level intermediate within the emulated width
    #[arg(long)]
    strict_emulation: bool,
    /// Custom binary reduction polynomial, written "t:e_k,...,e_0"
    #[arg(long, value_name = "SPEC")]
    custom_poly: Option<String>,
    /// Print every generated operand to stderr before timing
    #[arg(long)]
    dump_operands: bool,
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Bench(args) => bench_cmd(args),
        Command::ListFields => list_fields_cmd(),
        Command::Selftest => {
            if run_selftest() {
                0
            } else {
                1
            }
        }
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidConfig(_)
            | Error::InvalidParams(_)
            | Error::InvalidWordSize(_)
            | Error::UnknownField { .. }
            | Error::PolySpecParse { .. }
            | Error::PolySpecInvalid { .. }
    )
}

fn bench_cmd(args: BenchArgs) -> i32 {
    if let Some(spec) = &args.custom_poly {
        if let Ok(params) = catalog::parse_poly_spec(spec, args.word_bits) {
            if !catalog::is_catalog_poly(params.t(), params.exps()) {
                eprintln!(
                    "warning: {spec} is not a catalog polynomial; irreducibility is not checked"
                );
            }
        }
    }
    let config = BenchConfig {
        family: args.family,
        sizes: args.size,
        ops: args.op,
        iters: args.iters,
        word_bits: args.word_bits,
        seed: args.seed,
        format: args.format,
        strict_emulation: args.strict_emulation,
        custom_poly: args.custom_poly,
        dump_operands: args.dump_operands,
    };
    let report = match run_bench(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return if usage_error(&e) { 2 } else { 1 };
        }
    };
    let rendered = match emit_report(&report, config.format) {
        Ok(rendered) => rendered,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    print!("{rendered}");
    if config.format == ReportFormat::Csv {
        // keep stdout machine-readable; context goes to stderr
        eprintln!(
            "# run: host {}; seed {}; strict_emulation {}",
            report.host, report.seed, report.strict_emulation
        );
        eprintln!("# reference: {REFERENCE_HOST}, 16-bit words, ms per op");
        for family in [FieldFamily::Binary, FieldFamily::Prime] {
            for op in [BenchOp::Mul, BenchOp::Inv] {
                let cells: Vec<String> = catalog_sizes(family)
                    .iter()
                    .filter_map(|&size| {
                        reference_ms(family, size, op).map(|ms| format!("{size}={ms}"))
                    })
                    .collect();
                eprintln!("# reference {family} {op}: {}", cells.join(" "));
            }
        }
    }
    0
}

fn catalog_sizes(family: FieldFamily) -> &'static [usize] {
    match family {
        FieldFamily::Binary => &catalog::BINARY_SIZES,
        FieldFamily::Prime => &catalog::PRIME_SIZES,
    }
}

fn list_fields_cmd() -> i32 {
    for field in catalog::all_fields(WordSize::W16) {
        println!("{:<7} {:>4}  {}", field.family.to_string(), field.size, field.description);
    }
    0
}
