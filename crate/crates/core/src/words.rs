//! L-bit words and fixed-length word vectors.
//!
//! Everything above this layer (binary fields, prime fields, the benchmark
//! harness) is written against these primitives, so that the whole crate
//! stays expressible in terms of an emulated L-bit machine with
//! L in {8, 16, 32, 64}. A [`WordVec`] stores each L-bit word in its own
//! `u64` slot; every operation keeps the stored values below `2^L`.

use std::fmt;

use crate::error::{Error, Result};

/// Width of the emulated machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordSize {
    W8,
    W16,
    W32,
    W64,
}

impl WordSize {
    pub const ALL: [WordSize; 4] = [WordSize::W8, WordSize::W16, WordSize::W32, WordSize::W64];

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(WordSize::W8),
            16 => Ok(WordSize::W16),
            32 => Ok(WordSize::W32),
            64 => Ok(WordSize::W64),
            other => Err(Error::InvalidWordSize(other)),
        }
    }

    #[inline]
    pub fn bits(self) -> usize {
        match self {
            WordSize::W8 => 8,
            WordSize::W16 => 16,
            WordSize::W32 => 32,
            WordSize::W64 => 64,
        }
    }

    /// Bitmask selecting the low L bits of a `u64` slot.
    #[inline]
    pub fn mask(self) -> u64 {
        match self {
            WordSize::W64 => u64::MAX,
            other => (1u64 << other.bits()) - 1,
        }
    }

    /// Number of L-bit words needed to hold `bits` bits.
    #[inline]
    pub fn words_for_bits(self, bits: usize) -> usize {
        bits.div_ceil(self.bits())
    }

    /// Hex digits per word (L / 4).
    #[inline]
    pub fn hex_digits(self) -> usize {
        self.bits() / 4
    }
}

impl fmt::Display for WordSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// An L-bit word, stored in a `u64`. All public operations keep the value
/// strictly below `2^L`.
pub type Word = u64;

/// How word-level products are computed.
///
/// `Strict` restricts every intermediate to L bits by splitting operands
/// into half-words, mimicking a target that has no widening multiply.
/// `Native` may use the host's wide integer types. Both modes produce
/// bit-identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emulation {
    #[default]
    Native,
    Strict,
}

/// The exact product of two L-bit words: `lo + hi * 2^L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WideningProduct {
    pub lo: Word,
    pub hi: Word,
}

/// Exact double-width product of two L-bit words.
///
/// In `Strict` mode the product is assembled from four half-word partial
/// products so that no intermediate ever exceeds L bits.
pub fn widening_mul(x: Word, y: Word, size: WordSize, emulation: Emulation) -> WideningProduct {
    let bits = size.bits();
    let mask = size.mask();
    debug_assert!(x <= mask && y <= mask);
    match emulation {
        Emulation::Native => {
            if bits == 64 {
                let p = (x as u128) * (y as u128);
                WideningProduct {
                    lo: p as u64,
                    hi: (p >> 64) as u64,
                }
            } else {
                let p = x * y;
                WideningProduct {
                    lo: p & mask,
                    hi: p >> bits,
                }
            }
        }
        Emulation::Strict => {
            let half = bits / 2;
            let hmask = (1u64 << half) - 1;
            let (x0, x1) = (x & hmask, x >> half);
            let (y0, y1) = (y & hmask, y >> half);

            // Each partial product of two half-words fits in L bits.
            let mut lo = x0 * y0;
            let mut hi = x1 * y1;
            for cross in [x0 * y1, x1 * y0] {
                let add_lo = (cross << half) & mask;
                let add_hi = cross >> half;
                lo = lo.wrapping_add(add_lo) & mask;
                let carry = (lo < add_lo) as u64;
                hi = (hi + add_hi + carry) & mask;
            }
            WideningProduct { lo, hi }
        }
    }
}

// ---------------------------------------------------------------------------
// Slice-level kernels. These assume well-formed inputs (equal lengths, words
// already masked) and are shared by the field modules' hot paths.
// ---------------------------------------------------------------------------

/// `acc += b` with an explicit 1-bit carry chain; returns the final carry.
pub(crate) fn add_assign_words(acc: &mut [u64], b: &[u64], mask: u64) -> u64 {
    debug_assert_eq!(acc.len(), b.len());
    let mut carry = 0u64;
    for (a, &b) in acc.iter_mut().zip(b) {
        let t = a.wrapping_add(b) & mask;
        let c1 = (t < *a) as u64;
        let s = t.wrapping_add(carry) & mask;
        let c2 = (s < t) as u64;
        *a = s;
        carry = c1 | c2;
    }
    carry
}

/// `acc -= b` with an explicit 1-bit borrow chain; returns the final borrow.
pub(crate) fn sub_assign_words(acc: &mut [u64], b: &[u64], mask: u64) -> u64 {
    debug_assert_eq!(acc.len(), b.len());
    let mut borrow = 0u64;
    for (a, &b) in acc.iter_mut().zip(b) {
        let b1 = (*a < b) as u64;
        let t = a.wrapping_sub(b) & mask;
        let b2 = (t < borrow) as u64;
        *a = t.wrapping_sub(borrow) & mask;
        borrow = b1 | b2;
    }
    borrow
}

/// Unsigned comparison of two equal-length word vectors.
pub(crate) fn cmp_words(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Schoolbook product of `a` and `b` accumulated into `out` word by word.
/// `out` must hold at least `a.len() + b.len()` words and is cleared first.
pub(crate) fn mul_words_into(
    out: &mut [u64],
    a: &[u64],
    b: &[u64],
    size: WordSize,
    emulation: Emulation,
) {
    debug_assert!(out.len() >= a.len() + b.len());
    let mask = size.mask();
    out.fill(0);
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut carry = 0u64;
        for (j, &bj) in b.iter().enumerate() {
            let p = widening_mul(ai, bj, size, emulation);
            let slot = &mut out[i + j];
            let t = slot.wrapping_add(p.lo) & mask;
            let c1 = (t < *slot) as u64;
            let s = t.wrapping_add(carry) & mask;
            let c2 = (s < t) as u64;
            *slot = s;
            // carry stays below 2^L: hi <= 2^L - 2, and when hi is maximal
            // the product's low word is 1, which cannot raise both flags.
            carry = p.hi + c1 + c2;
        }
        let mut k = i + b.len();
        while carry != 0 {
            let t = out[k].wrapping_add(carry) & mask;
            carry = (t < out[k]) as u64;
            out[k] = t;
            k += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// WordVec
// ---------------------------------------------------------------------------

/// Fixed-length vector of L-bit words encoding a bit string.
///
/// Bit `k` of the encoded string is bit `k mod L` of word `k / L`; the
/// encoded integer is `sum words[j] * 2^(j*L)`. The length is fixed at
/// construction and never changes for a given value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordVec {
    size: WordSize,
    words: Vec<u64>,
}

impl WordVec {
    pub fn zero(size: WordSize, len: usize) -> Self {
        WordVec {
            size,
            words: vec![0; len],
        }
    }

    pub fn from_words(size: WordSize, words: &[u64]) -> Result<Self> {
        let mask = size.mask();
        for &w in words {
            if w > mask {
                return Err(Error::WordOverflow {
                    value: w,
                    bits: size.bits(),
                });
            }
        }
        Ok(WordVec {
            size,
            words: words.to_vec(),
        })
    }

    /// Encode an integer into `len` L-bit words. Errors if the value does
    /// not fit.
    pub fn from_u128(size: WordSize, len: usize, value: u128) -> Result<Self> {
        let bits = size.bits();
        if len * bits < 128 && value >> (len * bits) != 0 {
            return Err(Error::ValueOutOfRange);
        }
        let mut v = WordVec::zero(size, len);
        let mask = size.mask() as u128;
        let mut rest = value;
        for w in v.words.iter_mut() {
            *w = (rest & mask) as u64;
            rest >>= bits;
        }
        Ok(v)
    }

    #[inline]
    pub fn size(&self) -> WordSize {
        self.size
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Total bit capacity (`len * L`).
    #[inline]
    pub fn capacity_bits(&self) -> usize {
        self.words.len() * self.size.bits()
    }

    #[inline]
    pub fn word(&self, j: usize) -> Word {
        self.words[j]
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit, or -1 for the all-zero vector.
    pub fn degree(&self) -> isize {
        let l = self.size.bits();
        for j in (0..self.words.len()).rev() {
            let w = self.words[j];
            if w != 0 {
                return (j * l + (63 - w.leading_zeros() as usize)) as isize;
            }
        }
        -1
    }

    pub fn get_bit(&self, k: usize) -> Result<bool> {
        if k >= self.capacity_bits() {
            return Err(Error::BitIndexOutOfRange {
                index: k,
                capacity: self.capacity_bits(),
            });
        }
        Ok(self.bit_unchecked(k))
    }

    #[inline]
    pub(crate) fn bit_unchecked(&self, k: usize) -> bool {
        let l = self.size.bits();
        (self.words[k / l] >> (k % l)) & 1 == 1
    }

    pub fn set_bit(&mut self, k: usize, value: bool) -> Result<()> {
        if k >= self.capacity_bits() {
            return Err(Error::BitIndexOutOfRange {
                index: k,
                capacity: self.capacity_bits(),
            });
        }
        self.set_bit_unchecked(k, value);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_bit_unchecked(&mut self, k: usize, value: bool) {
        let l = self.size.bits();
        if value {
            self.words[k / l] |= 1 << (k % l);
        } else {
            self.words[k / l] &= !(1 << (k % l));
        }
    }

    /// Copy with a new length; extra words are zero, excess words dropped.
    pub fn resized(&self, new_len: usize) -> WordVec {
        let mut words = self.words.clone();
        words.resize(new_len, 0);
        WordVec {
            size: self.size,
            words,
        }
    }

    /// Zero out every bit at position >= `bits`.
    pub(crate) fn clear_bits_from(&mut self, bits: usize) {
        let l = self.size.bits();
        let boundary = bits / l;
        let rem = bits % l;
        for j in boundary..self.words.len() {
            if j == boundary && rem != 0 {
                self.words[j] &= (1u64 << rem) - 1;
            } else {
                self.words[j] = 0;
            }
        }
    }

    pub(crate) fn fill_zero(&mut self) {
        self.words.fill(0);
    }

    pub(crate) fn copy_from(&mut self, other: &WordVec) {
        debug_assert_eq!(self.size, other.size);
        let n = self.words.len().min(other.words.len());
        self.words[..n].copy_from_slice(&other.words[..n]);
        self.words[n..].fill(0);
    }

    fn check_compatible(&self, other: &WordVec) -> Result<()> {
        if self.size != other.size {
            return Err(Error::WordSizeMismatch {
                left: self.size.bits(),
                right: other.size.bits(),
            });
        }
        if self.words.len() != other.words.len() {
            return Err(Error::LengthMismatch {
                left: self.words.len(),
                right: other.words.len(),
            });
        }
        Ok(())
    }

    /// Word-wise XOR of two equal-length vectors.
    pub fn xor(&self, other: &WordVec) -> Result<WordVec> {
        self.check_compatible(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(WordVec {
            size: self.size,
            words,
        })
    }

    pub fn xor_assign(&mut self, other: &WordVec) -> Result<()> {
        self.check_compatible(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Shift the encoded bit string up by `k` positions into a vector of
    /// `out_len` words. Bits moved past the top are silently discarded;
    /// callers that must not lose bits size `out_len` accordingly.
    pub fn shl_bits(&self, k: usize, out_len: usize) -> WordVec {
        assert!(
            out_len >= self.words.len(),
            "shl_bits output must not be shorter than the input"
        );
        let mut out = WordVec::zero(self.size, out_len);
        shl_into(&mut out.words, &self.words, k, self.size);
        out
    }

    /// In-place upward shift within the existing length (truncating).
    pub fn shl_assign(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        let l = self.size.bits();
        let mask = self.size.mask();
        let (q, r) = (k / l, k % l);
        let n = self.words.len();
        for j in (0..n).rev() {
            let mut v = 0u64;
            if j >= q {
                let src = j - q;
                v = (self.words[src] << r) & mask;
                if r > 0 && src > 0 {
                    v |= self.words[src - 1] >> (l - r);
                }
            }
            self.words[j] = v;
        }
    }

    /// Shift the encoded bit string down by `k` positions (same length;
    /// the low `k` bits are discarded).
    pub fn shr_bits(&self, k: usize) -> WordVec {
        let mut out = self.clone();
        out.shr_assign(k);
        out
    }

    pub fn shr_assign(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        let l = self.size.bits();
        let (q, r) = (k / l, k % l);
        let n = self.words.len();
        for j in 0..n {
            let src = j + q;
            let mut v = 0u64;
            if src < n {
                v = self.words[src] >> r;
                if r > 0 && src + 1 < n {
                    v |= (self.words[src + 1] << (l - r)) & self.size.mask();
                }
            }
            self.words[j] = v;
        }
    }

    /// `self ^= other << k`, reading `other` on the fly (no temporary).
    pub(crate) fn xor_shl_assign(&mut self, other: &WordVec, k: usize) {
        debug_assert_eq!(self.size, other.size);
        let l = self.size.bits();
        let mask = self.size.mask();
        let (q, r) = (k / l, k % l);
        let n = self.words.len();
        let src_words = &other.words;
        for j in q..n {
            let src = j - q;
            let mut v = 0u64;
            if src < src_words.len() {
                v = (src_words[src] << r) & mask;
            }
            if r > 0 && src > 0 && src - 1 < src_words.len() {
                v |= src_words[src - 1] >> (l - r);
            }
            self.words[j] ^= v;
        }
    }

    /// `self += other << k` with an L-bit carry chain; returns the carry
    /// out of the top word. Bits shifted past the top are the caller's
    /// responsibility (they are simply not added).
    pub(crate) fn add_shl_assign(&mut self, other: &WordVec, k: usize) -> u64 {
        debug_assert_eq!(self.size, other.size);
        let l = self.size.bits();
        let mask = self.size.mask();
        let (q, r) = (k / l, k % l);
        let n = self.words.len();
        let src = &other.words;
        let mut carry = 0u64;
        for j in q..n {
            let s = j - q;
            let mut v = 0u64;
            if s < src.len() {
                v = (src[s] << r) & mask;
            }
            if r > 0 && s > 0 && s - 1 < src.len() {
                v |= src[s - 1] >> (l - r);
            }
            let a = self.words[j];
            let t = a.wrapping_add(v) & mask;
            let c1 = (t < a) as u64;
            let sum = t.wrapping_add(carry) & mask;
            let c2 = (sum < t) as u64;
            self.words[j] = sum;
            carry = c1 | c2;
        }
        carry
    }

    /// `self -= other << k` with an L-bit borrow chain; returns the final
    /// borrow.
    pub(crate) fn sub_shl_assign(&mut self, other: &WordVec, k: usize) -> u64 {
        debug_assert_eq!(self.size, other.size);
        let l = self.size.bits();
        let mask = self.size.mask();
        let (q, r) = (k / l, k % l);
        let n = self.words.len();
        let src = &other.words;
        let mut borrow = 0u64;
        for j in q..n {
            let s = j - q;
            let mut v = 0u64;
            if s < src.len() {
                v = (src[s] << r) & mask;
            }
            if r > 0 && s > 0 && s - 1 < src.len() {
                v |= src[s - 1] >> (l - r);
            }
            let a = self.words[j];
            let b1 = (a < v) as u64;
            let t = a.wrapping_sub(v) & mask;
            let b2 = (t < borrow) as u64;
            self.words[j] = t.wrapping_sub(borrow) & mask;
            borrow = b1 | b2;
        }
        borrow
    }

    /// `self = src >> k`, truncating to this vector's length; no
    /// allocation, unlike [`shr_bits`](Self::shr_bits).
    pub(crate) fn copy_shr_from(&mut self, src: &WordVec, k: usize) {
        debug_assert_eq!(self.size, src.size);
        let l = self.size.bits();
        let (q, r) = (k / l, k % l);
        let s = &src.words;
        for j in 0..self.words.len() {
            let idx = j + q;
            let mut v = 0u64;
            if idx < s.len() {
                v = s[idx] >> r;
                if r > 0 && idx + 1 < s.len() {
                    v |= (s[idx + 1] << (l - r)) & self.size.mask();
                }
            }
            self.words[j] = v;
        }
    }

    /// Word-wise sum with an explicit carry chain. Both operands must have
    /// the same length; the returned flag is the carry out of the top word.
    pub fn add_with_carry(&self, other: &WordVec) -> (WordVec, bool) {
        assert_eq!(self.size, other.size, "word size mismatch");
        assert_eq!(self.words.len(), other.words.len(), "length mismatch");
        let mut out = self.clone();
        let carry = add_assign_words(&mut out.words, &other.words, self.size.mask());
        (out, carry == 1)
    }

    /// Word-wise difference; the returned flag is the final borrow, i.e.
    /// whether `self < other` as integers.
    pub fn sub_with_borrow(&self, other: &WordVec) -> (WordVec, bool) {
        assert_eq!(self.size, other.size, "word size mismatch");
        assert_eq!(self.words.len(), other.words.len(), "length mismatch");
        let mut out = self.clone();
        let borrow = sub_assign_words(&mut out.words, &other.words, self.size.mask());
        (out, borrow == 1)
    }

    /// Canonical hex form: lowercase, zero-padded to `capacity_bits / 4`
    /// digits, most significant digit first.
    pub fn to_hex(&self) -> String {
        let digits = self.size.hex_digits();
        let mut s = String::with_capacity(digits * self.words.len());
        for &w in self.words.iter().rev() {
            s.push_str(&format!("{:0width$x}", w, width = digits));
        }
        s
    }

    /// Parse a hex string into `len` words of the given size. Accepts any
    /// number of digits as long as the value fits `len * L` bits; upper
    /// case digits are tolerated on input.
    pub fn from_hex(size: WordSize, len: usize, s: &str) -> Result<Self> {
        let err = |reason: &str| Error::InvalidHex {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty string"));
        }
        let mut out = WordVec::zero(size, len);
        let l = size.bits();
        // 4 divides every supported L, so a nibble never straddles words.
        for (i, c) in s.chars().rev().enumerate() {
            let nibble = c.to_digit(16).ok_or_else(|| err("non-hex character"))? as u64;
            let bitpos = i * 4;
            if bitpos >= len * l {
                if nibble != 0 {
                    return Err(err("value exceeds vector capacity"));
                }
                continue;
            }
            out.words[bitpos / l] |= nibble << (bitpos % l);
        }
        Ok(out)
    }
}

impl fmt::Display for WordVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Shift `src` up by `k` bits into `dst` (cleared first, truncating at the
/// top of `dst`).
pub(crate) fn shl_into(dst: &mut [u64], src: &[u64], k: usize, size: WordSize) {
    let l = size.bits();
    let mask = size.mask();
    let (q, r) = (k / l, k % l);
    dst.fill(0);
    for (s, d) in dst.iter_mut().skip(q).enumerate() {
        let mut v = 0u64;
        if s < src.len() {
            v = (src[s] << r) & mask;
        }
        if r > 0 && s > 0 && s - 1 < src.len() {
            v |= src[s - 1] >> (l - r);
        }
        *d = v;
    }
}
