//! GF(2^t) arithmetic on L-bit words.
//!
//! A field is described by its reduction polynomial
//! `p(x) = x^t + x^(i_k) + ... + x^(i_0)` (a trinomial or pentanomial with
//! `i_0 = 0`). Elements are polynomials of degree below t packed into
//! `m = ceil(t/L)` words; unreduced products live in `w = ceil(2t/L)`
//! words. Writing `d = t - i_k`, the constructor requires `2d >= t - 1`,
//! which caps modular reduction at two folding passes for any input of
//! degree at most `2t - 2`.
//!
//! Two API layers are provided. [`GFElement`] and [`WideGFElement`] are
//! immutable values with pure operations. Underneath, `*_into` kernels on
//! [`BinaryFieldParams`] work on caller-owned buffers and a reusable
//! [`GfScratch`], so hot loops (the benchmark driver) run without
//! allocating.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{WordSize, WordVec};

/// Shared description of one binary field: degree, reduction terms and the
/// word geometry derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFieldParams {
    t: usize,
    exps: Vec<usize>,
    size: WordSize,
    m: usize,
    w: usize,
    d: usize,
    inv_len: usize,
    modulus: WordVec,
}

impl BinaryFieldParams {
    /// Build params for `p(x) = x^t + sum of x^e for e in exps`.
    ///
    /// `exps` holds the reduction-term exponents in strictly increasing
    /// order: two of them for a trinomial, four for a pentanomial.
    pub fn new(t: usize, exps: &[usize], size: WordSize) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParams(msg));
        if exps.len() != 2 && exps.len() != 4 {
            return invalid(format!(
                "need a trinomial or pentanomial: expected 2 or 4 reduction exponents, got {}",
                exps.len()
            ));
        }
        if !exps.windows(2).all(|p| p[0] < p[1]) {
            return invalid(format!(
                "reduction exponents must be strictly increasing, got {exps:?}"
            ));
        }
        if exps[0] != 0 {
            return invalid(format!(
                "lowest reduction exponent must be 0 (a polynomial without constant term is divisible by x), got {}",
                exps[0]
            ));
        }
        let top = *exps.last().unwrap();
        if top >= t {
            return invalid(format!(
                "highest reduction exponent {top} must be below the degree {t}"
            ));
        }
        let d = t - top;
        if 2 * d < t - 1 {
            return invalid(format!(
                "two-pass reduction needs 2*(t - {top}) >= t - 1, but d = {d} and t = {t}"
            ));
        }
        let l = size.bits();
        let m = t.div_ceil(l);
        let w = (2 * t).div_ceil(l);
        let inv_len = (t + 1).div_ceil(l);
        let mut modulus = WordVec::zero(size, inv_len);
        modulus.set_bit_unchecked(t, true);
        for &e in exps {
            modulus.set_bit_unchecked(e, true);
        }
        Ok(BinaryFieldParams {
            t,
            exps: exps.to_vec(),
            size,
            m,
            w,
            d,
            inv_len,
            modulus,
        })
    }

    /// Field degree t.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Reduction-term exponents below t, ascending.
    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    pub fn word_size(&self) -> WordSize {
        self.size
    }

    /// Words per reduced element.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Words per unreduced (wide) value.
    pub fn w(&self) -> usize {
        self.w
    }

    /// Gap t - i_k between the leading and next reduction term.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The full reduction polynomial p(x), including the x^t term.
    pub fn modulus(&self) -> &WordVec {
        &self.modulus
    }

    /// Hex digits in the canonical form of a reduced element.
    pub fn element_hex_digits(&self) -> usize {
        self.t.div_ceil(4)
    }

    /// Hex digits in the canonical form of a wide value (degree <= 2t - 2).
    pub fn wide_hex_digits(&self) -> usize {
        (2 * self.t - 1).div_ceil(4)
    }

    // -- kernels ----------------------------------------------------------

    /// `out = a + b` (word-wise XOR). All three must be m words.
    pub fn add_into(&self, out: &mut WordVec, a: &WordVec, b: &WordVec) {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(b.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        for (o, (x, y)) in out
            .words_mut()
            .iter_mut()
            .zip(a.words().iter().zip(b.words()))
        {
            *o = x ^ y;
        }
    }

    /// Carry-less product of two reduced elements into the w-word `out`.
    /// `dreg` is a w-word working register.
    ///
    /// Outer loop over bit position e in 0..L, inner loop over word index
    /// i: whenever bit iL+e of `a` is set, the running copy of `b` is
    /// folded in at word offset i. The copy is shifted up one bit per
    /// outer iteration, so the whole product costs exactly L one-bit
    /// multiword shifts regardless of t.
    pub fn mul_noreduce_into(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        b: &WordVec,
        dreg: &mut WordVec,
    ) {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(b.len(), self.m);
        debug_assert_eq!(out.len(), self.w);
        debug_assert_eq!(dreg.len(), self.w);
        out.fill_zero();
        dreg.copy_from(b);
        for e in 0..self.size.bits() {
            for i in 0..self.m {
                if (a.word(i) >> e) & 1 == 1 {
                    let c = out.words_mut();
                    let d = dreg.words();
                    for j in i..self.w {
                        c[j] ^= d[j - i];
                    }
                }
            }
            dreg.shl_assign(1);
        }
    }

    /// Reduce a w-word value of degree <= 2t - 2 in place and copy the
    /// low m words into `out`. `fold` is a w-word working register.
    /// Returns the number of folding passes taken (at most 2, by the
    /// `2d >= t - 1` constraint).
    ///
    /// Each pass splits the value as `l + h * x^t`, replaces it by
    /// `l + h * r(x)`, and accumulates `h * r(x)` term by term with one
    /// running register shifted by the gaps between consecutive reduction
    /// exponents.
    pub fn reduce_into(
        &self,
        out: &mut WordVec,
        wide: &mut WordVec,
        fold: &mut WordVec,
    ) -> usize {
        debug_assert_eq!(wide.len(), self.w);
        debug_assert_eq!(fold.len(), self.w);
        debug_assert_eq!(out.len(), self.m);
        debug_assert!(wide.degree() <= (2 * self.t - 2) as isize);
        let t = self.t;
        let mut passes = 0;
        while wide.degree() >= t as isize {
            // The split is recomputed every pass so a second pass sees the
            // updated value.
            fold.copy_from(wide);
            fold.shr_assign(t);
            wide.clear_bits_from(t);
            let mut prev = 0;
            for &e in &self.exps {
                fold.shl_assign(e - prev);
                prev = e;
                for (x, y) in wide.words_mut().iter_mut().zip(fold.words()) {
                    *x ^= y;
                }
            }
            passes += 1;
            debug_assert!(passes <= 2, "reduction exceeded the two-pass bound");
        }
        out.copy_from(wide);
        passes
    }

    /// `out = a^2`: spread bit k of `a` to bit 2k of a wide value, then
    /// reduce.
    pub fn square_into(&self, out: &mut WordVec, a: &WordVec, scratch: &mut GfScratch) {
        debug_assert_eq!(a.len(), self.m);
        let GfScratch { wide, fold, .. } = scratch;
        wide.fill_zero();
        let l = self.size.bits();
        for i in 0..self.m {
            let word = a.word(i);
            if word == 0 {
                continue;
            }
            for bit in 0..l {
                if (word >> bit) & 1 == 1 {
                    wide.set_bit_unchecked(2 * (i * l + bit), true);
                }
            }
        }
        self.reduce_into(out, wide, fold);
    }

    /// Table-driven variant of [`square_into`](Self::square_into): spreads
    /// whole bytes through a 256-entry lookup table. This is the fast
    /// path used by [`GFElement::square`]; the bit loop above is the
    /// reference both are tested against.
    pub fn square_table_into(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        scratch: &mut GfScratch,
    ) {
        debug_assert_eq!(a.len(), self.m);
        let GfScratch { wide, fold, .. } = scratch;
        wide.fill_zero();
        let l = self.size.bits();
        {
            let wide_words = wide.words_mut();
            for i in 0..self.m {
                let word = a.word(i);
                if word == 0 {
                    continue;
                }
                for k in 0..l / 8 {
                    let byte = (word >> (8 * k)) & 0xff;
                    if byte == 0 {
                        continue;
                    }
                    let spread = SPREAD[byte as usize] as u64;
                    let out_bit = 2 * (i * l + 8 * k);
                    if l == 8 {
                        // A byte spreads across two 8-bit words. The high
                        // half can fall past the last word only when it is
                        // zero, since source bits stay below t.
                        wide_words[out_bit / 8] |= spread & 0xff;
                        let hi = spread >> 8;
                        if hi != 0 {
                            wide_words[out_bit / 8 + 1] |= hi;
                        }
                    } else {
                        wide_words[out_bit / l] |= spread << (out_bit % l);
                    }
                }
            }
        }
        self.reduce_into(out, wide, fold);
    }

    /// `out = a * b mod p`.
    pub fn mul_into(&self, out: &mut WordVec, a: &WordVec, b: &WordVec, scratch: &mut GfScratch) {
        let GfScratch {
            wide, dreg, fold, ..
        } = scratch;
        self.mul_noreduce_into(wide, a, b, dreg);
        self.reduce_into(out, wide, fold);
    }

    /// `out = a^-1 mod p` by the shift-based extended Euclid.
    ///
    /// Maintains `(u, v, g1, g2)` from `(a, p, 1, 0)`; each step aligns
    /// the leading terms with `j = degree(u) - degree(v)` (swapping the
    /// pairs when j is negative) and folds `v << j` into u, `g2 << j` into
    /// g1. The degree of u strictly drops every step, so the guard
    /// `degree(u) != 0` is reached within about 2t steps. The explicit cap
    /// turns a non-irreducible modulus, where u can vanish and the
    /// recurrence stalls, into an error instead of a hang.
    pub fn inv_into(&self, out: &mut WordVec, a: &WordVec, scratch: &mut GfScratch) -> Result<()> {
        let GfScratch { u, v, g1, g2, .. } = scratch;
        self.inv_parts(out, a, u, v, g1, g2)
    }

    fn inv_parts(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        u: &mut WordVec,
        v: &mut WordVec,
        g1: &mut WordVec,
        g2: &mut WordVec,
    ) -> Result<()> {
        debug_assert_eq!(a.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        u.copy_from(a);
        v.copy_from(&self.modulus);
        g1.fill_zero();
        g1.set_bit_unchecked(0, true);
        g2.fill_zero();
        let cap = 2 * self.t + 4;
        let mut iters = 0;
        while u.degree() != 0 {
            iters += 1;
            if iters > cap {
                return Err(Error::ReducibleModulus);
            }
            let mut j = u.degree() - v.degree();
            if j < 0 {
                std::mem::swap(u, v);
                std::mem::swap(g1, g2);
                j = -j;
            }
            u.xor_shl_assign(v, j as usize);
            g1.xor_shl_assign(g2, j as usize);
        }
        // g1 ends with degree at most t - degree(v) < t; fold the modulus
        // in defensively should a representative of degree t slip through.
        while g1.degree() >= self.t as isize {
            let shift = (g1.degree() - self.t as isize) as usize;
            g1.xor_shl_assign(&self.modulus, shift);
        }
        out.copy_from(g1);
        Ok(())
    }

    /// `out = a / b = a * b^-1`.
    pub fn div_into(
        &self,
        out: &mut WordVec,
        a: &WordVec,
        b: &WordVec,
        scratch: &mut GfScratch,
    ) -> Result<()> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let GfScratch {
            wide,
            dreg,
            fold,
            quot,
            u,
            v,
            g1,
            g2,
        } = scratch;
        self.inv_parts(quot, b, u, v, g1, g2)?;
        self.mul_noreduce_into(wide, a, quot, dreg);
        self.reduce_into(out, wide, fold);
        Ok(())
    }
}

/// 256-entry table mapping a byte to its bits interleaved with zeros.
const SPREAD: [u16; 256] = {
    let mut table = [0u16; 256];
    let mut b = 0;
    while b < 256 {
        let mut s = 0u16;
        let mut i = 0;
        while i < 8 {
            if b & (1 << i) != 0 {
                s |= 1 << (2 * i);
            }
            i += 1;
        }
        table[b] = s;
        b += 1;
    }
    table
};

/// Reusable working buffers for the `*_into` kernels of one field.
///
/// Holding one of these per thread lets timed loops run allocation-free.
#[derive(Debug, Clone)]
pub struct GfScratch {
    wide: WordVec,
    dreg: WordVec,
    fold: WordVec,
    quot: WordVec,
    u: WordVec,
    v: WordVec,
    g1: WordVec,
    g2: WordVec,
}

impl GfScratch {
    pub fn new(params: &BinaryFieldParams) -> Self {
        let size = params.size;
        GfScratch {
            wide: WordVec::zero(size, params.w),
            dreg: WordVec::zero(size, params.w),
            fold: WordVec::zero(size, params.w),
            quot: WordVec::zero(size, params.m),
            u: WordVec::zero(size, params.inv_len),
            v: WordVec::zero(size, params.inv_len),
            g1: WordVec::zero(size, params.inv_len),
            g2: WordVec::zero(size, params.inv_len),
        }
    }

    /// Working register for callers that drive `mul_noreduce_into` or
    /// `reduce_into` directly.
    pub fn wide_buffer(&mut self) -> (&mut WordVec, &mut WordVec) {
        (&mut self.wide, &mut self.dreg)
    }
}

impl fmt::Display for BinaryFieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.t)?;
        for &e in self.exps.iter().rev() {
            match e {
                0 => write!(f, " + 1")?,
                1 => write!(f, " + x")?,
                e => write!(f, " + x^{e}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Element layer
// ---------------------------------------------------------------------------

/// A fully reduced field element: a polynomial of degree below t in m
/// words, tied to its field params.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFElement {
    params: Arc<BinaryFieldParams>,
    value: WordVec,
}

/// An unreduced value of degree at most 2t - 2 in w words, as produced by
/// carry-less multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideGFElement {
    params: Arc<BinaryFieldParams>,
    value: WordVec,
}

fn same_field(a: &Arc<BinaryFieldParams>, b: &Arc<BinaryFieldParams>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl GFElement {
    pub fn zero(params: &Arc<BinaryFieldParams>) -> Self {
        GFElement {
            params: Arc::clone(params),
            value: WordVec::zero(params.size, params.m),
        }
    }

    pub fn one(params: &Arc<BinaryFieldParams>) -> Self {
        let mut e = Self::zero(params);
        e.value.set_bit_unchecked(0, true);
        e
    }

    /// Wrap an m-word vector; it must already be reduced (degree < t).
    pub fn from_wordvec(params: &Arc<BinaryFieldParams>, value: WordVec) -> Result<Self> {
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
        if value.degree() >= params.t as isize {
            return Err(Error::ValueOutOfRange);
        }
        Ok(GFElement {
            params: Arc::clone(params),
            value,
        })
    }

    pub fn from_hex(params: &Arc<BinaryFieldParams>, s: &str) -> Result<Self> {
        let value = WordVec::from_hex(params.size, params.m, s)?;
        Self::from_wordvec(params, value)
    }

    /// Canonical hex: lowercase, exactly `ceil(t/4)` digits, independent
    /// of the word size, so representations compare across L.
    pub fn to_hex(&self) -> String {
        let full = self.value.to_hex();
        full[full.len() - self.params.element_hex_digits()..].to_string()
    }

    pub fn params(&self) -> &Arc<BinaryFieldParams> {
        &self.params
    }

    pub fn value(&self) -> &WordVec {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &GFElement) -> Result<GFElement> {
        same_field(&self.params, &other.params)?;
        let mut out = GFElement::zero(&self.params);
        self.params.add_into(&mut out.value, &self.value, &other.value);
        Ok(out)
    }

    /// Carry-less product before reduction.
    pub fn mul_noreduce(&self, other: &GFElement) -> Result<WideGFElement> {
        same_field(&self.params, &other.params)?;
        let mut scratch = GfScratch::new(&self.params);
        let mut out = WordVec::zero(self.params.size, self.params.w);
        self.params
            .mul_noreduce_into(&mut out, &self.value, &other.value, &mut scratch.dreg);
        Ok(WideGFElement {
            params: Arc::clone(&self.params),
            value: out,
        })
    }

    pub fn mul(&self, other: &GFElement) -> Result<GFElement> {
        same_field(&self.params, &other.params)?;
        let mut scratch = GfScratch::new(&self.params);
        let mut out = GFElement::zero(&self.params);
        self.params
            .mul_into(&mut out.value, &self.value, &other.value, &mut scratch);
        Ok(out)
    }

    pub fn square(&self) -> GFElement {
        let mut scratch = GfScratch::new(&self.params);
        let mut out = GFElement::zero(&self.params);
        self.params
            .square_table_into(&mut out.value, &self.value, &mut scratch);
        out
    }

    pub fn inv(&self) -> Result<GFElement> {
        let mut scratch = GfScratch::new(&self.params);
        let mut out = GFElement::zero(&self.params);
        self.params
            .inv_into(&mut out.value, &self.value, &mut scratch)?;
        Ok(out)
    }

    pub fn div(&self, other: &GFElement) -> Result<GFElement> {
        same_field(&self.params, &other.params)?;
        let mut scratch = GfScratch::new(&self.params);
        let mut out = GFElement::zero(&self.params);
        self.params
            .div_into(&mut out.value, &self.value, &other.value, &mut scratch)?;
        Ok(out)
    }
}

impl fmt::Display for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl WideGFElement {
    /// Wrap a w-word vector of degree at most 2t - 2.
    pub fn from_wordvec(params: &Arc<BinaryFieldParams>, value: WordVec) -> Result<Self> {
        if value.size() != params.size {
            return Err(Error::WordSizeMismatch {
                left: value.size().bits(),
                right: params.size.bits(),
            });
        }
        if value.len() != params.w {
            return Err(Error::LengthMismatch {
                left: value.len(),
                right: params.w,
            });
        }
        let bound = 2 * params.t - 2;
        if value.degree() > bound as isize {
            return Err(Error::DegreeTooLarge {
                degree: value.degree(),
                bound,
            });
        }
        Ok(WideGFElement {
            params: Arc::clone(params),
            value,
        })
    }

    pub fn from_hex(params: &Arc<BinaryFieldParams>, s: &str) -> Result<Self> {
        let value = WordVec::from_hex(params.size, params.w, s)?;
        Self::from_wordvec(params, value)
    }

    /// Canonical hex over `ceil((2t-1)/4)` digits.
    pub fn to_hex(&self) -> String {
        let full = self.value.to_hex();
        full[full.len() - self.params.wide_hex_digits()..].to_string()
    }

    pub fn params(&self) -> &Arc<BinaryFieldParams> {
        &self.params
    }

    pub fn value(&self) -> &WordVec {
        &self.value
    }

    /// Reduce to the unique representative of degree below t. Also
    /// reports the number of folding passes, mainly for instrumentation.
    pub fn reduce_counted(&self) -> (GFElement, usize) {
        let mut wide = self.value.clone();
        let mut fold = WordVec::zero(self.params.size, self.params.w);
        let mut out = GFElement::zero(&self.params);
        let passes = self.params.reduce_into(&mut out.value, &mut wide, &mut fold);
        (out, passes)
    }

    pub fn reduce(&self) -> GFElement {
        self.reduce_counted().0
    }
}

impl fmt::Display for WideGFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
