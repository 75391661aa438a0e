//! Minimal library walkthrough: build a catalog field, invert an element,
//! check the identity, and show that the word size never changes a value.
//!
//! Run with `cargo run -p limbfield --example invert`.

use std::sync::Arc;

use limbfield::binfield::GFElement;
use limbfield::catalog;
use limbfield::primefield::FpElement;
use limbfield::{Result, WordSize};

fn main() -> Result<()> {
    // GF(2^233), reduced by x^233 + x^74 + 1, on emulated 16-bit words.
    let gf = Arc::new(catalog::binary_field(233, WordSize::W16)?);
    let a = GFElement::from_hex(&gf, "0123456789abcdef")?;
    let a_inv = a.inv()?;
    println!("GF(2^233)  a      = {}", a.to_hex());
    println!("GF(2^233)  a^-1   = {}", a_inv.to_hex());
    println!("GF(2^233)  a*a^-1 = {}", a.mul(&a_inv)?.to_hex());

    // The prime field mod 2^224 - 2^96 + 1, same idea.
    let fp = Arc::new(catalog::prime_field(224, WordSize::W16)?);
    let b = FpElement::from_hex(&fp, "0123456789abcdef")?;
    let b_inv = b.inv()?;
    println!("GF(p224)   b      = {}", b.to_hex());
    println!("GF(p224)   b*b^-1 = {}", b.mul(&b_inv)?.to_hex());

    // Any word size computes the same element, bit for bit.
    for bits in [8, 32, 64] {
        let gf_l = Arc::new(catalog::binary_field(233, WordSize::from_bits(bits)?)?);
        let a_l = GFElement::from_hex(&gf_l, "0123456789abcdef")?;
        assert_eq!(a_l.inv()?.to_hex(), a_inv.to_hex());
    }
    println!("inverse identical at word sizes 8, 16, 32 and 64");
    Ok(())
}
