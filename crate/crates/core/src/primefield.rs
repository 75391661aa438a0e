//! Pseudo-Mersenne prime-field arithmetic on L-bit words.
//!
//! A field is defined by `p = 2^n - r` with a small-ish fold constant r.
//! Residues occupy `m = ceil(n/L)` words; double-width products occupy 2m
//! words and are reduced with the substitution `hi * 2^n = hi * r (mod p)`
//! repeated until the value fits in n bits, then one conditional subtract
//! of p. All multiplications go through [`widening_mul`] and explicit
//! carry chains, so the whole module honors the strict L-bit emulation
//! mode.
//!
//! As in [`binfield`](crate::binfield), immutable [`FpElement`] values sit
//! on top of `*_into` kernels over caller buffers and an [`FpScratch`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{
    add_assign_words, cmp_words, mul_words_into, sub_assign_words, Emulation, WordSize, WordVec,
};

/// Signed power-of-two form of the fold constant: `r = sum 2^pos - sum
/// 2^neg`. When r recodes to a handful of terms, as every standard
/// pseudo-Mersenne prime does, folding becomes a few shifted adds
/// instead of a multi-word multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FoldTerms {
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// Shared description of one prime field: the modulus, its fold constant
/// and the word geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldParams {
    n: usize,
    size: WordSize,
    emulation: Emulation,
    m: usize,
    p: WordVec,
    p_squared: WordVec,
    fold: WordVec,
    fold_terms: Option<FoldTerms>,
    fold_limit: usize,
}

/// Non-adjacent-form recoding of a value given as base-2^64 limbs:
/// exponents of the signed powers of two summing to it, each list
/// ascending.
fn naf_terms(mut limbs: Vec<u64>) -> (Vec<usize>, Vec<usize>) {
    fn inc(limbs: &mut Vec<u64>) {
        for w in limbs.iter_mut() {
            let (v, overflow) = w.overflowing_add(1);
            *w = v;
            if !overflow {
                return;
            }
        }
        limbs.push(1);
    }
    fn dec(limbs: &mut [u64]) {
        for w in limbs.iter_mut() {
            let (v, underflow) = w.overflowing_sub(1);
            *w = v;
            if !underflow {
                return;
            }
        }
    }
    fn shr1(limbs: &mut [u64]) {
        for j in 0..limbs.len() {
            limbs[j] >>= 1;
            if j + 1 < limbs.len() {
                limbs[j] |= limbs[j + 1] << 63;
            }
        }
    }

    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut shift = 0usize;
    while limbs.iter().any(|&w| w != 0) {
        if limbs[0] & 1 == 1 {
            if limbs[0] & 3 == 1 {
                pos.push(shift);
                dec(&mut limbs);
            } else {
                neg.push(shift);
                inc(&mut limbs);
            }
        }
        shr1(&mut limbs);
        shift += 1;
    }
    (pos, neg)
}

impl PrimeFieldParams {
    /// Build params for `p = 2^n - r`, with the modulus given as hex.
    ///
    /// `p` must be odd, larger than 2, and exactly n bits long (so that
    /// `r = 2^n - p` stays at most `2^(n-1)` and folding converges).
    pub fn new(n: usize, p_hex: &str, size: WordSize) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParams(msg));
        let l = size.bits();
        let m = n.div_ceil(l);
        let p = WordVec::from_hex(size, m, p_hex)?;
        if p.degree() != n as isize - 1 {
            return invalid(format!(
                "modulus must be exactly {n} bits, got bit length {}",
                p.degree() + 1
            ));
        }
        if !p.bit_unchecked(0) {
            return invalid("modulus must be odd".to_string());
        }
        if n < 2 {
            return invalid("modulus must exceed 2".to_string());
        }

        // r = 2^n - p, computed in m+1 words so 2^n itself fits.
        let mut two_n = WordVec::zero(size, m + 1);
        two_n.set_bit_unchecked(n, true);
        let (fold_full, borrow) = two_n.sub_with_borrow(&p.resized(m + 1));
        debug_assert!(!borrow);
        debug_assert_eq!(fold_full.degree(), fold_full.resized(m).degree());
        let fold = fold_full.resized(m);

        let mut p_squared = WordVec::zero(size, 2 * m);
        mul_words_into(
            p_squared.words_mut(),
            p.words(),
            p.words(),
            size,
            Emulation::Native,
        );

        // Each fold shrinks the value's bit length by at least
        // n - bits(r) - 1, from at most 2mL bits down to n; the cap leaves
        // two folds of slack and is asserted in reduce_into.
        let bits_r = (fold.degree() + 1) as usize;
        let shrink = (n.saturating_sub(bits_r + 1)).max(1);
        let fold_limit = (2 * m * l - n).div_ceil(shrink) + 2;

        // Recode r into signed powers of two. The shift-add fold needs
        // few terms to beat the multiply, and a top exponent at most
        // n - 2 so the positive partial sum cannot carry out of 2m words.
        let fold_terms = {
            let mut limbs = vec![0u64; (m * l).div_ceil(64)];
            for i in 0..m * l {
                if fold.bit_unchecked(i) {
                    limbs[i / 64] |= 1 << (i % 64);
                }
            }
            let (pos, neg) = naf_terms(limbs);
            let top = pos.last().copied().unwrap_or(0).max(neg.last().copied().unwrap_or(0));
            if pos.len() + neg.len() <= 8 && top + 2 <= n {
                Some(FoldTerms { pos, neg })
            } else {
                None
            }
        };

        Ok(PrimeFieldParams {
            n,
            size,
            emulation: Emulation::Native,
            m,
            p,
            p_squared,
            fold,
            fold_terms,
            fold_limit,
        })
    }

    /// Switch word-level products to the chosen emulation mode.
    pub fn with_emulation(mut self, emulation: Emulation) -> Self {
        self.emulation = emulation;
        self
    }

    /// Force the multiply-based fold, for equivalence testing.
    #[cfg(test)]
    pub(crate) fn without_fold_terms(mut self) -> Self {
        self.fold_terms = None;
        self
    }

    /// Modulus bit length n.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word_size(&self) -> WordSize {
        self.size
    }

    pub fn emulation(&self) -> Emulation {
        self.emulation
    }

    /// Words per reduced element.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The modulus p in m words.
    pub fn modulus(&self) -> &WordVec {
        &self.p
    }

    /// The fold constant r = 2^n - p in m words.
    pub fn fold(&self) -> &WordVec {
        &self.fold
    }

    /// Upper bound on folding passes, derived from n and bits(r).
    pub fn fold_limit(&self) -> usize {
        self.fold_limit
    }

    /// Hex digits in the canonical form of an element.
    pub fn element_hex_digits(&self) -> usize {
        self.n.div_ceil(4)
    }

    // -- kernels ----------------------------------------------------------

    /// `out = (a + b) mod p`: add with carry, then one conditional
    /// subtract of p if a carry emerged or the sum reached p.
    pub fn add_into(&self, out: &mut WordVec, a: &WordVec, b: &WordVec) {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(b.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        out.copy_from(a);
        let mask = self.size.mask();
        let carry = add_assign_words(out.words_mut(), b.words(), mask);
        if carry == 1 || cmp_words(out.words(), self.p.words()) != Ordering::Less {
            let borrow = sub_assign_words(out.words_mut(), self.p.words(), mask);
            debug_assert_eq!(borrow, carry);
        }
    }

    /// `out = (a - b) mod p`: subtract with borrow, then one conditional
    /// add of p if a borrow emerged.
    pub fn sub_into(&self, out: &mut WordVec, a: &WordVec, b: &WordVec) {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(b.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        out.copy_from(a);
        let mask = self.size.mask();
        let borrow = sub_assign_words(out.words_mut(), b.words(), mask);
        if borrow == 1 {
            let carry = add_assign_words(out.words_mut(), self.p.words(), mask);
            debug_assert_eq!(carry, 1);
        }
    }

    /// Reduce a 2m-word value below p^2 in place and copy the low m words
    /// into `out`. `hi` (m words) and `prod` (2m words) are working
    /// buffers. Returns the number of folding passes taken.
    pub fn reduce_into(
        &self,
        out: &mut WordVec,
        wide: &mut WordVec,
        hi: &mut WordVec,
        prod: &mut WordVec,
    ) -> usize {
        debug_assert_eq!(wide.len(), 2 * self.m);
        debug_assert_eq!(hi.len(), self.m);
        debug_assert_eq!(prod.len(), 2 * self.m);
        debug_assert_eq!(out.len(), self.m);
        debug_assert!(cmp_words(wide.words(), self.p_squared.words()) == Ordering::Less);
        let mask = self.size.mask();
        let mut folds = 0;
        while wide.degree() >= self.n as isize {
            // hi = wide >> n always fits m words for in-contract inputs.
            hi.copy_shr_from(wide, self.n);
            wide.clear_bits_from(self.n);
            match &self.fold_terms {
                Some(terms) => {
                    // hi * r as shifted adds, positives first so no
                    // intermediate dips below zero
                    for &e in &terms.pos {
                        let carry = wide.add_shl_assign(hi, e);
                        debug_assert_eq!(carry, 0);
                    }
                    for &e in &terms.neg {
                        let borrow = wide.sub_shl_assign(hi, e);
                        debug_assert_eq!(borrow, 0);
                    }
                }
                None => {
                    mul_words_into(
                        prod.words_mut(),
                        hi.words(),
                        self.fold.words(),
                        self.size,
                        self.emulation,
                    );
                    let carry = add_assign_words(wide.words_mut(), prod.words(), mask);
                    debug_assert_eq!(carry, 0);
                }
            }
            folds += 1;
            assert!(
                folds <= self.fold_limit,
                "folding exceeded the derived bound {} for n = {}",
                self.fold_limit,
                self.n
            );
        }
        out.copy_from(wide);
        if cmp_words(out.words(), self.p.words()) != Ordering::Less {
            sub_assign_words(out.words_mut(), self.p.words(), mask);
        }
        debug_assert!(cmp_words(out.words(), self.p.words()) == Ordering::Less);
        folds
    }

    /// `out = (a * b) mod p`: schoolbook m-by-m word product, then fold.
    pub fn mul_into(&self, out: &mut WordVec, a: &WordVec, b: &WordVec, scratch: &mut FpScratch) {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(b.len(), self.m);
        let FpScratch { wide, hi, prod, .. } = scratch;
        mul_words_into(wide.words_mut(), a.words(), b.words(), self.size, self.emulation);
        self.reduce_into(out, wide, hi, prod);
    }

    /// `out = a^-1 mod p` by the binary extended Euclid on integers.
    ///
    /// Maintains u, v and cofactors A, C with `A*a = u` and `C*a = v`
    /// (mod p); even u and v are halved (adjusting the cofactor by the
    /// usual `(x + p)/2` when odd), the larger of u, v absorbs the
    /// smaller. Terminates with u = 0 and v = gcd(a, p); v must then be 1
    /// or the modulus was not prime.
    pub fn inv_into(&self, out: &mut WordVec, a: &WordVec, scratch: &mut FpScratch) -> Result<()> {
        let FpScratch { u, v, acap, ccap, .. } = scratch;
        self.inv_parts(out, a, u, v, acap, ccap)
    }

    fn inv_parts(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        u: &mut WordVec,
        v: &mut WordVec,
        acap: &mut WordVec,
        ccap: &mut WordVec,
    ) -> Result<()> {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mask = self.size.mask();
        let top = self.m * self.size.bits() - 1;
        u.copy_from(a);
        v.copy_from(&self.p);
        acap.fill_zero();
        acap.set_bit_unchecked(0, true);
        ccap.fill_zero();

        // (x + p)/2 when x is odd, x/2 otherwise; the add's carry becomes
        // the top bit after the shift.
        let halve_mod = |x: &mut WordVec, cof: &mut WordVec| {
            x.shr_assign(1);
            if cof.bit_unchecked(0) {
                let carry = add_assign_words(cof.words_mut(), self.p.words(), mask);
                cof.shr_assign(1);
                if carry == 1 {
                    cof.set_bit_unchecked(top, true);
                }
            } else {
                cof.shr_assign(1);
            }
        };

        while !u.is_zero() {
            while !u.bit_unchecked(0) {
                halve_mod(u, acap);
            }
            while !v.bit_unchecked(0) {
                halve_mod(v, ccap);
            }
            if cmp_words(u.words(), v.words()) != Ordering::Less {
                sub_assign_words(u.words_mut(), v.words(), mask);
                let borrow = sub_assign_words(acap.words_mut(), ccap.words(), mask);
                if borrow == 1 {
                    add_assign_words(acap.words_mut(), self.p.words(), mask);
                }
            } else {
                sub_assign_words(v.words_mut(), u.words(), mask);
                let borrow = sub_assign_words(ccap.words_mut(), acap.words(), mask);
                if borrow == 1 {
                    add_assign_words(ccap.words_mut(), self.p.words(), mask);
                }
            }
        }
        if v.degree() != 0 {
            return Err(Error::ReducibleModulus);
        }
        out.copy_from(ccap);
        Ok(())
    }

    /// `out = a / b = a * b^-1`.
    pub fn div_into(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        b: &WordVec,
        scratch: &mut FpScratch,
    ) -> Result<()> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let FpScratch {
            wide,
            hi,
            prod,
            quot,
            u,
            v,
            acap,
            ccap,
        } = scratch;
        self.inv_parts(quot, b, u, v, acap, ccap)?;
        mul_words_into(wide.words_mut(), a.words(), quot.words(), self.size, self.emulation);
        self.reduce_into(out, wide, hi, prod);
        Ok(())
    }
}

impl fmt::Display for PrimeFieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{} - 0x{}", self.n, {
            let h = self.fold.to_hex();
            h.trim_start_matches('0').to_string()
        })
    }
}

/// Reusable working buffers for the prime-field kernels of one field.
#[derive(Debug, Clone)]
pub struct FpScratch {
    wide: WordVec,
    hi: WordVec,
    prod: WordVec,
    quot: WordVec,
    u: WordVec,
    v: WordVec,
    acap: WordVec,
    ccap: WordVec,
}

impl FpScratch {
    pub fn new(params: &PrimeFieldParams) -> Self {
        let size = params.size;
        let m = params.m;
        FpScratch {
            wide: WordVec::zero(size, 2 * m),
            hi: WordVec::zero(size, m),
            prod: WordVec::zero(size, 2 * m),
            quot: WordVec::zero(size, m),
            u: WordVec::zero(size, m),
            v: WordVec::zero(size, m),
            acap: WordVec::zero(size, m),
            ccap: WordVec::zero(size, m),
        }
    }
}

/// A fully reduced residue modulo p, tied to its field params.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpElement {
    params: Arc<PrimeFieldParams>,
    value: WordVec,
}

fn same_field(a: &Arc<PrimeFieldParams>, b: &Arc<PrimeFieldParams>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl FpElement {
    pub fn zero(params: &Arc<PrimeFieldParams>) -> Self {
        FpElement {
            params: Arc::clone(params),
            value: WordVec::zero(params.size, params.m),
        }
    }

    pub fn one(params: &Arc<PrimeFieldParams>) -> Self {
        let mut e = Self::zero(params);
        e.value.set_bit_unchecked(0, true);
        e
    }

    /// Wrap an m-word vector; it must already be reduced (value < p).
    pub fn from_wordvec(params: &Arc<PrimeFieldParams>, value: WordVec) -> Result<Self> {
        if value.size() != params.size {
            return Err(Error::WordSizeMismatch {
                left: value.size().bits(),
                right: params.size.bits(),
            });
        }
        if value.len() != params.m {
            return Err(Error::LengthMismatch {
                left: value.len(),
                right: params.m,
            });
        }
        if cmp_words(value.words(), params.p.words()) != Ordering::Less {
            return Err(Error::ValueOutOfRange);
        }
        Ok(FpElement {
            params: Arc::clone(params),
            value,
        })
    }

    pub fn from_hex(params: &Arc<PrimeFieldParams>, s: &str) -> Result<Self> {
        let value = WordVec::from_hex(params.size, params.m, s)?;
        Self::from_wordvec(params, value)
    }

    pub fn from_u128(params: &Arc<PrimeFieldParams>, value: u128) -> Result<Self> {
        let v = WordVec::from_u128(params.size, params.m, value)?;
        Self::from_wordvec(params, v)
    }

    /// Reduce a double-width value (below p^2) into the field.
    pub fn reduce(params: &Arc<PrimeFieldParams>, wide: &WordVec) -> Result<Self> {
        if wide.size() != params.size {
            return Err(Error::WordSizeMismatch {
                left: wide.size().bits(),
                right: params.size.bits(),
            });
        }
        if wide.len() != 2 * params.m {
            return Err(Error::LengthMismatch {
                left: wide.len(),
                right: 2 * params.m,
            });
        }
        if cmp_words(wide.words(), params.p_squared.words()) != Ordering::Less {
            return Err(Error::ValueOutOfRange);
        }
        let mut scratch = FpScratch::new(params);
        let mut out = FpElement::zero(params);
        let mut work = wide.clone();
        params.reduce_into(&mut out.value, &mut work, &mut scratch.hi, &mut scratch.prod);
        Ok(out)
    }

    /// Canonical hex: lowercase, exactly `ceil(n/4)` digits, independent
    /// of the word size.
    pub fn to_hex(&self) -> String {
        let full = self.value.to_hex();
        full[full.len() - self.params.element_hex_digits()..].to_string()
    }

    pub fn params(&self) -> &Arc<PrimeFieldParams> {
        &self.params
    }

    pub fn value(&self) -> &WordVec {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &FpElement) -> Result<FpElement> {
        same_field(&self.params, &other.params)?;
        let mut out = FpElement::zero(&self.params);
        self.params.add_into(&mut out.value, &self.value, &other.value);
        Ok(out)
    }

    pub fn sub(&self, other: &FpElement) -> Result<FpElement> {
        same_field(&self.params, &other.params)?;
        let mut out = FpElement::zero(&self.params);
        self.params.sub_into(&mut out.value, &self.value, &other.value);
        Ok(out)
    }

    pub fn mul(&self, other: &FpElement) -> Result<FpElement> {
        same_field(&self.params, &other.params)?;
        let mut scratch = FpScratch::new(&self.params);
        let mut out = FpElement::zero(&self.params);
        self.params
            .mul_into(&mut out.value, &self.value, &other.value, &mut scratch);
        Ok(out)
    }

    pub fn inv(&self) -> Result<FpElement> {
        let mut scratch = FpScratch::new(&self.params);
        let mut out = FpElement::zero(&self.params);
        self.params
            .inv_into(&mut out.value, &self.value, &mut scratch)?;
        Ok(out)
    }

    pub fn div(&self, other: &FpElement) -> Result<FpElement> {
        same_field(&self.params, &other.params)?;
        let mut scratch = FpScratch::new(&self.params);
        let mut out = FpElement::zero(&self.params);
        self.params
            .div_into(&mut out.value, &self.value, &other.value, &mut scratch)?;
        Ok(out)
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::Zero;

    /// p = 127 = 2^7 - 1 at L = 8 (m = 1).
    fn f127() -> Arc<PrimeFieldParams> {
        Arc::new(PrimeFieldParams::new(7, "7f", WordSize::W8).unwrap())
    }

    fn el(params: &Arc<PrimeFieldParams>, v: u128) -> FpElement {
        FpElement::from_u128(params, v).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(PrimeFieldParams::new(7, "7f", WordSize::W8).is_ok());
        // 8 bits, not 7
        assert!(PrimeFieldParams::new(7, "ff", WordSize::W8).is_err());
        // even
        assert!(PrimeFieldParams::new(7, "7e", WordSize::W8).is_err());
        // too short
        assert!(PrimeFieldParams::new(7, "3f", WordSize::W8).is_err());
        let p = f127();
        assert_eq!((p.n(), p.m()), (7, 1));
        assert_eq!(p.fold().to_hex(), "01");
        assert_eq!(p.element_hex_digits(), 2);
    }

    #[test]
    fn add_examples() {
        let p = f127();
        assert_eq!(el(&p, 100).add(&el(&p, 50)).unwrap(), el(&p, 23));
        let a = el(&p, 93);
        assert_eq!(a.add(&el(&p, 0)).unwrap(), a);
        assert_eq!(el(&p, 126).add(&el(&p, 1)).unwrap(), el(&p, 0));
    }

    #[test]
    fn sub_examples() {
        let p = f127();
        assert_eq!(el(&p, 10).sub(&el(&p, 50)).unwrap(), el(&p, 87));
        let a = el(&p, 93);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.sub(&el(&p, 0)).unwrap(), a);
    }

    #[test]
    fn reduce_examples() {
        let p = f127();
        let wide = WordVec::from_u128(WordSize::W8, 2, 5000).unwrap();
        assert_eq!(FpElement::reduce(&p, &wide).unwrap(), el(&p, 47));
        let small = WordVec::from_u128(WordSize::W8, 2, 93).unwrap();
        assert_eq!(FpElement::reduce(&p, &small).unwrap(), el(&p, 93));
        let exact = WordVec::from_u128(WordSize::W8, 2, 127).unwrap();
        assert!(FpElement::reduce(&p, &exact).unwrap().is_zero());
        // out of contract: p^2 and beyond
        let big = WordVec::from_u128(WordSize::W8, 2, 127 * 127).unwrap();
        assert!(matches!(
            FpElement::reduce(&p, &big),
            Err(Error::ValueOutOfRange)
        ));
    }

    #[test]
    fn mul_examples() {
        let p = f127();
        assert_eq!(el(&p, 100).mul(&el(&p, 50)).unwrap(), el(&p, 47));
        let b = el(&p, 93);
        assert_eq!(el(&p, 1).mul(&b).unwrap(), b);
        assert!(el(&p, 0).mul(&b).unwrap().is_zero());
    }

    #[test]
    fn inv_examples() {
        let p = f127();
        assert_eq!(el(&p, 1).inv().unwrap(), el(&p, 1));
        assert_eq!(el(&p, 3).inv().unwrap(), el(&p, 85));
        assert_eq!(el(&p, 126).inv().unwrap(), el(&p, 126));
        assert!(matches!(el(&p, 0).inv(), Err(Error::NotInvertible)));
        for a in 1u128..127 {
            let e = el(&p, a);
            assert_eq!(e.mul(&e.inv().unwrap()).unwrap(), el(&p, 1), "a={a}");
        }
    }

    #[test]
    fn div_examples() {
        let p = f127();
        for a in 1u128..127 {
            let e = el(&p, a);
            assert_eq!(e.div(&e).unwrap(), el(&p, 1));
            assert_eq!(e.div(&el(&p, 1)).unwrap(), e);
        }
        assert_eq!(el(&p, 47).div(&el(&p, 50)).unwrap(), el(&p, 100));
        assert!(matches!(
            el(&p, 47).div(&el(&p, 0)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mul_matches_oracle_exhaustively_p127() {
        let p = f127();
        let big_p = BigUint::from(127u32);
        for a in 0u128..127 {
            for b in 0u128..127 {
                let got = el(&p, a).mul(&el(&p, b)).unwrap();
                let want = crate::oracle::fp_arith(
                    crate::oracle::FpOp::Mul,
                    &BigUint::from(a as u32),
                    &BigUint::from(b as u32),
                    &big_p,
                )
                .unwrap();
                assert_eq!(
                    got.to_hex(),
                    format!("{:02x}", want),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn non_prime_modulus_detected() {
        // 9 = 2^4 - 7 is odd with the right bit length but not prime.
        let p = Arc::new(PrimeFieldParams::new(4, "9", WordSize::W8).unwrap());
        // 2 is coprime to 9 and invertible; 3 shares a factor.
        let two = el(&p, 2);
        assert_eq!(two.mul(&two.inv().unwrap()).unwrap(), el(&p, 1));
        assert!(matches!(
            el(&p, 3).inv(),
            Err(Error::ReducibleModulus)
        ));
    }

    #[test]
    fn strict_emulation_matches_native() {
        for size in WordSize::ALL {
            let native = Arc::new(PrimeFieldParams::new(7, "7f", size).unwrap());
            let strict =
                Arc::new(PrimeFieldParams::new(7, "7f", size).unwrap().with_emulation(Emulation::Strict));
            for a in (0u128..127).step_by(13) {
                for b in (0u128..127).step_by(11) {
                    let x = el(&native, a).mul(&el(&native, b)).unwrap();
                    let y = el(&strict, a).mul(&el(&strict, b)).unwrap();
                    assert_eq!(x.to_hex(), y.to_hex(), "L={size} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn large_prime_against_oracle() {
        // p192 = 2^192 - 2^64 - 1
        let hex = "fffffffffffffffffffffffffffffffeffffffffffffffff";
        let big_p = BigUint::parse_bytes(hex.as_bytes(), 16).unwrap();
        for size in WordSize::ALL {
            let params = Arc::new(PrimeFieldParams::new(192, hex, size).unwrap());
            assert_eq!(params.fold().degree(), 64);
            let a = FpElement::from_hex(&params, "0123456789abcdef0123456789abcdef0123456789abcdef")
                .unwrap();
            let b = FpElement::from_hex(&params, "fedcba9876543210fedcba9876543210fedcba9876543210")
                .unwrap();
            let big_a = BigUint::parse_bytes(a.to_hex().as_bytes(), 16).unwrap();
            let big_b = BigUint::parse_bytes(b.to_hex().as_bytes(), 16).unwrap();
            for (got, op) in [
                (a.add(&b).unwrap(), crate::oracle::FpOp::Add),
                (a.sub(&b).unwrap(), crate::oracle::FpOp::Sub),
                (a.mul(&b).unwrap(), crate::oracle::FpOp::Mul),
            ] {
                let want = crate::oracle::fp_arith(op, &big_a, &big_b, &big_p).unwrap();
                let want_hex = format!("{:048x}", want);
                assert_eq!(got.to_hex(), want_hex, "L={size} op={op:?}");
            }
            let inv = a.inv().unwrap();
            let want =
                crate::oracle::fp_arith(crate::oracle::FpOp::Inv, &big_a, &BigUint::zero(), &big_p)
                    .unwrap();
            assert_eq!(inv.to_hex(), format!("{:048x}", want), "L={size}");
        }
    }

    #[test]
    fn element_hex_and_range() {
        let p = f127();
        assert_eq!(el(&p, 47).to_hex(), "2f");
        assert!(FpElement::from_hex(&p, "7f").is_err());
        assert!(FpElement::from_hex(&p, "80").is_err());
        assert!(FpElement::from_hex(&p, "7e").is_ok());
        let other = Arc::new(PrimeFieldParams::new(4, "9", WordSize::W8).unwrap());
        assert!(matches!(
            el(&p, 5).add(&el(&other, 5)),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn naf_recoding_examples() {
        assert_eq!(naf_terms(vec![1]), (vec![0], vec![]));
        assert_eq!(naf_terms(vec![7]), (vec![3], vec![0]));
        // 11 = 16 - 4 - 1
        assert_eq!(naf_terms(vec![11]), (vec![4], vec![0, 2]));
        // 2^96 - 1 spans limbs
        assert_eq!(naf_terms(vec![u64::MAX, (1 << 32) - 1]), (vec![96], vec![0]));
        // reconstruct a dense value from its terms
        let value = 0xb6a5_39c4_1f07_u64;
        let (pos, neg) = naf_terms(vec![value]);
        let mut acc: i128 = 0;
        for e in pos {
            acc += 1i128 << e;
        }
        for e in neg {
            acc -= 1i128 << e;
        }
        assert_eq!(acc, value as i128);
    }

    #[test]
    fn catalog_fold_terms() {
        let expect = [
            (192, vec![0, 64], vec![]),
            (224, vec![96], vec![0]),
            (256, vec![0, 224], vec![96, 192]),
            (384, vec![0, 96, 128], vec![32]),
            (521, vec![0], vec![]),
        ];
        for (n, pos, neg) in expect {
            let params = crate::catalog::prime_field(n, WordSize::W16).unwrap();
            let terms = params.fold_terms.as_ref().unwrap_or_else(|| {
                panic!("n={n}: expected the shift-add fold to be eligible")
            });
            assert_eq!((&terms.pos, &terms.neg), (&pos, &neg), "n={n}");
        }
    }

    #[test]
    fn term_fold_matches_multiply_fold() {
        use rand_core::{RngCore, SeedableRng};
        for n in crate::catalog::PRIME_SIZES {
            for size in [WordSize::W16, WordSize::W64] {
                let with_terms = Arc::new(crate::catalog::prime_field(n, size).unwrap());
                let plain = Arc::new(
                    crate::catalog::prime_field(n, size)
                        .unwrap()
                        .without_fold_terms(),
                );
                assert!(plain.fold_terms.is_none() && with_terms.fold_terms.is_some());
                let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(n as u64);
                let m = with_terms.m();
                let mut s1 = FpScratch::new(&with_terms);
                let mut s2 = FpScratch::new(&plain);
                for _ in 0..50 {
                    let mut a = WordVec::zero(size, m);
                    let mut b = WordVec::zero(size, m);
                    for j in 0..m {
                        a.words_mut()[j] = rng.next_u64() & size.mask();
                        b.words_mut()[j] = rng.next_u64() & size.mask();
                    }
                    // clamp below p by clearing the top two bits of n
                    for v in [&mut a, &mut b] {
                        v.clear_bits_from(n - 2);
                    }
                    let mut out1 = WordVec::zero(size, m);
                    let mut out2 = WordVec::zero(size, m);
                    with_terms.mul_into(&mut out1, &a, &b, &mut s1);
                    plain.mul_into(&mut out2, &a, &b, &mut s2);
                    assert_eq!(out1, out2, "n={n} L={size}");
                }
            }
        }
    }
}
