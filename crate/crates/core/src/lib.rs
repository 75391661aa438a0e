//! Finite field arithmetic on emulated small words.
//!
//! Everything is parameterized by a runtime word size L in {8, 16, 32,
//! 64}: elements are little-endian vectors of L-bit limbs stored in
//! `u64` slots, and every kernel restricts itself to operations an
//! L-bit machine offers. That makes one binary run the same arithmetic
//! an 8-bit microcontroller would execute, word for word, which is the
//! point: comparing binary-field and prime-field costs on limited
//! hardware without owning the hardware.
//!
//! - [`words`]: word vectors and the L-bit arithmetic primitives
//! - [`binfield`]: GF(2^t) with sparse trinomial/pentanomial reduction
//! - [`primefield`]: GF(p) for pseudo-Mersenne p = 2^n - r
//! - [`catalog`]: the ten standard fields used throughout
//! - [`oracle`]: slow, independent reference implementations for tests
//! - [`bench`]: timing harness and the `limbfield` CLI

pub mod bench;
pub mod binfield;
pub mod catalog;
pub mod error;
pub mod oracle;
pub mod primefield;
pub mod words;

pub use error::{Error, Result};
pub use words::{widening_mul, Emulation, WideningProduct, Word, WordSize, WordVec};
