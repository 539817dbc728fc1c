//! Pauli operators indexed by points of the binary symplectic space.
//!
//! A Pauli operator on `n` qubits is indexed by `x = (a | b)` with
//! `a, b` in `F_2^n`: `a` collects the X parts and `b` the Z parts, and
//! bit `j - 1` of each half refers to qubit `j`. Two operators commute
//! exactly when the symplectic form
//! `form(x, y) = a·b' + a'·b (mod 2)` vanishes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported qubit count; keeps every packed index inside a `u64`.
pub const MAX_QUBITS: usize = 31;

/// A point `(a | b)` of `F_2^{2n}` indexing the Pauli `X^a Z^b` up to phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex {
    n: usize,
    a: u32,
    b: u32,
}

impl PauliIndex {
    /// Builds the index for `X^a Z^b` on `n` qubits.
    ///
    /// Bit `j - 1` of `a` (resp. `b`) is the X (resp. Z) component on
    /// qubit `j`. Fails if `n` is zero, exceeds [`MAX_QUBITS`], or either
    /// half has bits outside the first `n`.
    pub fn new(n: usize, a: u32, b: u32) -> Result<Self> {
        check_qubits(n)?;
        let mask = mask(n) as u32;
        if a & !mask != 0 || b & !mask != 0 {
            return Err(Error::Config(format!(
                "components (a={a:#b}, b={b:#b}) exceed {n} qubits"
            )));
        }
        Ok(PauliIndex { n, a, b })
    }

    /// The identity operator on `n` qubits.
    pub fn identity(n: usize) -> Result<Self> {
        PauliIndex::new(n, 0, 0)
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The X half `a`.
    pub fn x_bits(&self) -> u32 {
        self.a
    }

    /// The Z half `b`.
    pub fn z_bits(&self) -> u32 {
        self.b
    }

    /// Whether this is the identity index `(0 | 0)`.
    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The single-letter factor acting on qubit `j` (1-based).
    pub fn letter(&self, j: usize) -> char {
        debug_assert!(j >= 1 && j <= self.n);
        match ((self.a >> (j - 1)) & 1, (self.b >> (j - 1)) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    /// Letter form, qubit 1 leftmost: `X ⊗ Z ⊗ I` prints as `"XZI"`.
    pub fn to_letters(&self) -> String {
        (1..=self.n).map(|j| self.letter(j)).collect()
    }

    /// Component form `"(a|b)"` with qubit 1 leftmost in each half:
    /// `X ⊗ Z` prints as `"(10|01)"`.
    pub fn to_ab_string(&self) -> String {
        let half = |v: u32| -> String {
            (0..self.n)
                .map(|j| if (v >> j) & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        format!("({}|{})", half(self.a), half(self.b))
    }

    pub(crate) fn key(&self) -> u64 {
        ((self.a as u64) << self.n) | self.b as u64
    }

    pub(crate) fn from_key(n: usize, key: u64) -> Self {
        debug_assert!(key < 1u64 << (2 * n));
        PauliIndex {
            n,
            a: (key >> n) as u32,
            b: (key & mask(n)) as u32,
        }
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}

impl FromStr for PauliIndex {
    type Err = Error;

    /// Parses either the letter form `"XZIY"` or the component form
    /// `"(10|01)"`, qubit 1 leftmost in both.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('(') {
            let body = body
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated component form {s:?}")))?;
            let (a_str, b_str) = body
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("component form {s:?} needs one '|'")))?;
            if a_str.len() != b_str.len() || a_str.is_empty() {
                return Err(Error::Parse(format!(
                    "component halves of {s:?} must be nonempty and equal length"
                )));
            }
            let parse_half = |half: &str| -> Result<u32> {
                let mut v = 0u32;
                for (j, c) in half.chars().enumerate() {
                    match c {
                        '0' => {}
                        '1' => v |= 1 << j,
                        _ => {
                            return Err(Error::Parse(format!(
                                "component form {s:?} contains {c:?}; expected 0 or 1"
                            )))
                        }
                    }
                }
                Ok(v)
            };
            PauliIndex::new(a_str.len(), parse_half(a_str)?, parse_half(b_str)?)
        } else {
            if s.is_empty() {
                return Err(Error::Parse("empty Pauli string".into()));
            }
            let mut a = 0u32;
            let mut b = 0u32;
            for (j, c) in s.chars().enumerate() {
                match c.to_ascii_uppercase() {
                    'I' => {}
                    'X' => a |= 1 << j,
                    'Z' => b |= 1 << j,
                    'Y' => {
                        a |= 1 << j;
                        b |= 1 << j;
                    }
                    _ => {
                        return Err(Error::Parse(format!(
                            "Pauli string {s:?} contains {c:?}; expected I, X, Y, or Z"
                        )))
                    }
                }
            }
            PauliIndex::new(s.chars().count(), a, b)
        }
    }
}

/// The symplectic form `a·b' + a'·b (mod 2)`; zero exactly when the two
/// operators commute.
pub fn symplectic_form(x: &PauliIndex, y: &PauliIndex) -> Result<u8> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch {
            left: x.n,
            right: y.n,
        });
    }
    Ok(form_keys(x.n, x.key(), y.key()))
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Config(format!(
            "qubit count must be between 1 and {MAX_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

pub(crate) fn mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Swaps the `a` and `b` halves of a packed index.
pub(crate) fn swap_halves(n: usize, u: u64) -> u64 {
    ((u & mask(n)) << n) | (u >> n)
}

/// The symplectic form on packed indices.
pub(crate) fn form_keys(n: usize, u: u64, v: u64) -> u8 {
    ((swap_halves(n, u) & v).count_ones() & 1) as u8
}
