//! Built-in correctness battery for the `selftest` subcommand: every
//! suite checks the word-level kernels against the independent
//! bit-vector and bignum oracles or against algebraic identities.

use std::sync::Arc;

use num_bigint::BigUint;
use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;

use crate::binfield::{BinaryFieldParams, GFElement};
use crate::catalog::{self, FieldFamily};
use crate::oracle;
use crate::primefield::FpElement;
use crate::words::{WordSize, WordVec};

use super::{sample_binary, sample_prime, stream_key, BenchOp};

struct Suite {
    name: &'static str,
    run: fn() -> Result<(), String>,
}

const SUITES: [Suite; 6] = [
    Suite {
        name: "gf(2^3) exhaustive vs oracle",
        run: gf8_exhaustive,
    },
    Suite {
        name: "gf(2^8) exhaustive vs oracle",
        run: gf256_exhaustive,
    },
    Suite {
        name: "binary catalog vs oracle",
        run: binary_catalog,
    },
    Suite {
        name: "binary field identities",
        run: binary_identities,
    },
    Suite {
        name: "prime catalog vs oracle",
        run: prime_catalog,
    },
    Suite {
        name: "word size invariance",
        run: word_size_invariance,
    },
];

/// Run every suite, printing one line each; true iff all passed.
pub fn run_selftest() -> bool {
    let mut ok = true;
    for suite in &SUITES {
        match (suite.run)() {
            Ok(()) => println!("ok   {}", suite.name),
            Err(detail) => {
                ok = false;
                println!("FAIL {}: {detail}", suite.name);
            }
        }
    }
    if ok {
        println!("selftest passed ({} suites)", SUITES.len());
    } else {
        println!("selftest FAILED");
    }
    ok
}

fn bits_of(value: &WordVec, count: usize) -> Vec<bool> {
    (0..count).map(|i| value.get_bit(i).unwrap()).collect()
}

fn trim_to(mut bits: Vec<bool>, count: usize) -> Vec<bool> {
    bits.resize(count, false);
    bits
}

fn small_elem(params: &Arc<BinaryFieldParams>, value: u64) -> GFElement {
    let v = WordVec::from_u128(params.word_size(), params.m(), value as u128).unwrap();
    GFElement::from_wordvec(params, v).unwrap()
}

fn gf8_exhaustive() -> Result<(), String> {
    // x^3 + x + 1
    let params = Arc::new(BinaryFieldParams::new(3, &[0, 1], WordSize::W8).unwrap());
    let modulus = bits_of(params.modulus(), 4);
    for a in 0u64..8 {
        let ea = small_elem(&params, a);
        for b in 0u64..8 {
            let eb = small_elem(&params, b);
            let got = ea.mul(&eb).unwrap();
            let want = oracle::gf_mulmod(&bits_of(ea.value(), 3), &bits_of(eb.value(), 3), &modulus);
            if bits_of(got.value(), 3) != trim_to(want, 3) {
                return Err(format!("mul mismatch at a={a} b={b}"));
            }
        }
        if a != 0 {
            let inv = ea.inv().map_err(|e| format!("inv({a}) failed: {e}"))?;
            if ea.mul(&inv).unwrap().to_hex() != "1" {
                return Err(format!("a * inv(a) != 1 at a={a}"));
            }
        }
    }
    Ok(())
}

fn gf256_exhaustive() -> Result<(), String> {
    // x^8 + x^4 + x^3 + x + 1, the AES polynomial; small enough that the
    // table-based oracle inverse is also exercised
    let params = Arc::new(BinaryFieldParams::new(8, &[0, 1, 3, 4], WordSize::W8).unwrap());
    let modulus = bits_of(params.modulus(), 9);
    for a in 0u64..256 {
        let ea = small_elem(&params, a);
        for b in 0u64..256 {
            let eb = small_elem(&params, b);
            let got = ea.mul(&eb).unwrap();
            let want = oracle::gf_mulmod(&bits_of(ea.value(), 8), &bits_of(eb.value(), 8), &modulus);
            if bits_of(got.value(), 8) != trim_to(want, 8) {
                return Err(format!("mul mismatch at a={a:#x} b={b:#x}"));
            }
        }
        if a != 0 {
            let inv = ea.inv().map_err(|e| format!("inv({a:#x}) failed: {e}"))?;
            if ea.mul(&inv).unwrap().to_hex() != "01" {
                return Err(format!("a * inv(a) != 1 at a={a:#x}"));
            }
        }
    }
    Ok(())
}

fn binary_catalog() -> Result<(), String> {
    for t in catalog::BINARY_SIZES {
        let params = Arc::new(catalog::binary_field(t, WordSize::W32).unwrap());
        let modulus = bits_of(params.modulus(), t + 1);
        let mut rng =
            ChaCha20Rng::from_seed(stream_key(0x5e1f, FieldFamily::Binary, t, BenchOp::Mul));
        for i in 0..12 {
            let a = GFElement::from_wordvec(&params, sample_binary(&mut rng, &params, false))
                .unwrap();
            let b = GFElement::from_wordvec(&params, sample_binary(&mut rng, &params, false))
                .unwrap();
            let got = a.mul(&b).unwrap();
            let want = oracle::gf_mulmod(&bits_of(a.value(), t), &bits_of(b.value(), t), &modulus);
            if bits_of(got.value(), t) != trim_to(want, t) {
                return Err(format!("t={t} pair {i}: mul disagrees with oracle"));
            }
        }
    }
    Ok(())
}

fn binary_identities() -> Result<(), String> {
    for t in catalog::BINARY_SIZES {
        let params = Arc::new(catalog::binary_field(t, WordSize::W64).unwrap());
        let mut rng = ChaCha20Rng::from_seed(stream_key(0x1d, FieldFamily::Binary, t, BenchOp::Sq));
        for i in 0..8 {
            let a = GFElement::from_wordvec(&params, sample_binary(&mut rng, &params, true))
                .unwrap();
            let b = GFElement::from_wordvec(&params, sample_binary(&mut rng, &params, false))
                .unwrap();
            if a.square().to_hex() != a.mul(&a).unwrap().to_hex() {
                return Err(format!("t={t} pair {i}: a^2 != a*a"));
            }
            let sum_sq = a.add(&b).unwrap().square();
            let sq_sum = a.square().add(&b.square()).unwrap();
            if sum_sq.to_hex() != sq_sum.to_hex() {
                return Err(format!("t={t} pair {i}: (a+b)^2 != a^2 + b^2"));
            }
            let inv = a.inv().map_err(|e| format!("t={t} pair {i}: inv failed: {e}"))?;
            if a.mul(&inv).unwrap().to_hex() != GFElement::one(&params).to_hex() {
                return Err(format!("t={t} pair {i}: a * inv(a) != 1"));
            }
        }
        // Frobenius: t-fold squaring is the identity
        let mut rng = ChaCha20Rng::from_seed(stream_key(0xf0b, FieldFamily::Binary, t, BenchOp::Sq));
        let a = GFElement::from_wordvec(&params, sample_binary(&mut rng, &params, true))
            .unwrap();
        let mut x = a.clone();
        for _ in 0..t {
            x = x.square();
        }
        if x.to_hex() != a.to_hex() {
            return Err(format!("t={t}: a^(2^t) != a"));
        }
    }
    Ok(())
}

fn prime_catalog() -> Result<(), String> {
    for n in catalog::PRIME_SIZES {
        let params = Arc::new(catalog::prime_field(n, WordSize::W32).unwrap());
        let p = BigUint::parse_bytes(params.modulus().to_hex().as_bytes(), 16).unwrap();
        let mut rng = ChaCha20Rng::from_seed(stream_key(0xab, FieldFamily::Prime, n, BenchOp::Mul));
        for i in 0..10 {
            let a = FpElement::from_wordvec(&params, sample_prime(&mut rng, &params, true))
                .unwrap();
            let b = FpElement::from_wordvec(&params, sample_prime(&mut rng, &params, false))
                .unwrap();
            let big_a = BigUint::parse_bytes(a.to_hex().as_bytes(), 16).unwrap();
            let big_b = BigUint::parse_bytes(b.to_hex().as_bytes(), 16).unwrap();
            for (op, got) in [
                (oracle::FpOp::Add, a.add(&b).unwrap()),
                (oracle::FpOp::Sub, a.sub(&b).unwrap()),
                (oracle::FpOp::Mul, a.mul(&b).unwrap()),
            ] {
                let want = oracle::fp_arith(op, &big_a, &big_b, &p).unwrap();
                let got_big = BigUint::parse_bytes(got.to_hex().as_bytes(), 16).unwrap();
                if got_big != want {
                    return Err(format!("n={n} pair {i}: {op:?} disagrees with oracle"));
                }
            }
            let inv = a.inv().map_err(|e| format!("n={n} pair {i}: inv failed: {e}"))?;
            if a.mul(&inv).unwrap().to_hex() != FpElement::one(&params).to_hex() {
                return Err(format!("n={n} pair {i}: a * inv(a) != 1"));
            }
        }
    }
    Ok(())
}

fn word_size_invariance() -> Result<(), String> {
    // one fixed operand pair per family, reduced under every word size;
    // canonical hex must match byte for byte
    let gf_a = "4f3c29aa10b5ce8871d2640917e3acff55aa0123456789ab0cd2ef01";
    let gf_b = "013579bdf02468ace1122334455667788990a0b1c2d3e4f506172839";
    let fp_a = "4f3c29aa10b5ce8871d2640917e3acff55aa0123456789ab0cd2ef01321146";
    let fp_b = "013579bdf02468ace1122334455667788990a0b1c2d3e4f50617283941b2c3";
    let mut binary_first: Option<Vec<String>> = None;
    let mut prime_first: Option<Vec<String>> = None;
    for size in WordSize::ALL {
        let params = Arc::new(catalog::binary_field(233, size).unwrap());
        let a = GFElement::from_hex(&params, gf_a).unwrap();
        let b = GFElement::from_hex(&params, gf_b).unwrap();
        let results = vec![
            a.add(&b).unwrap().to_hex(),
            a.mul(&b).unwrap().to_hex(),
            a.square().to_hex(),
            a.inv().unwrap().to_hex(),
            a.div(&b).unwrap().to_hex(),
        ];
        match &binary_first {
            None => binary_first = Some(results),
            Some(first) if first != &results => {
                return Err(format!("binary t=233 results differ at word size {size}"));
            }
            _ => {}
        }

        let pparams = Arc::new(catalog::prime_field(256, size).unwrap());
        let pa = FpElement::from_hex(&pparams, fp_a).unwrap();
        let pb = FpElement::from_hex(&pparams, fp_b).unwrap();
        let presults = vec![
            pa.add(&pb).unwrap().to_hex(),
            pa.sub(&pb).unwrap().to_hex(),
            pa.mul(&pb).unwrap().to_hex(),
            pa.inv().unwrap().to_hex(),
            pa.div(&pb).unwrap().to_hex(),
        ];
        match &prime_first {
            None => prime_first = Some(presults),
            Some(first) if first != &presults => {
                return Err(format!("prime n=256 results differ at word size {size}"));
            }
            _ => {}
        }
    }
    Ok(())
}
