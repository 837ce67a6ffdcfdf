//! Bit strings and truth tables.
//!
//! Row `r` of a truth table on `n` bits is the input whose binary expansion,
//! read with `x₁` as the most significant bit, equals `r`. So for `n = 3`
//! the table `"00010111"` lists `f(000), f(001), …, f(111)` and is the
//! majority function.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A string of bits `x₁ … xₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    /// Bits of `index` with `x₁` as the most significant of `n` bits.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bit `k` with 1-based indexing.
    pub fn get(&self, k: usize) -> bool {
        self.0[k - 1]
    }

    /// The ±1 encoding `x̂`: `0 ↦ +1`, `1 ↦ −1`.
    pub fn signs(&self) -> Vec<f64> {
        self.0.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect()
    }

    /// Appends `count` zero bits (ancilla lines).
    pub fn padded(&self, count: usize) -> Self {
        let mut bits = self.0.clone();
        bits.extend(std::iter::repeat_n(false, count));
        Self(bits)
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }

    /// Copy with bit `k` (1-based) flipped.
    pub fn flipped(&self, k: usize) -> Self {
        let mut bits = self.0.clone();
        bits[k - 1] = !bits[k - 1];
        Self(bits)
    }

    /// All `2^n` strings in row order.
    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        (0..1usize << n).map(move |i| BitString::from_index(i, n))
    }
}

pub(crate) fn sign_of(bit: bool) -> f64 {
    if bit {
        -1.0
    } else {
        1.0
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("bad bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A boolean function `{0,1}ⁿ → {0,1}` stored as its truth table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    /// Largest `n` accepted for an explicit table.
    pub const MAX_INPUTS: usize = 20;

    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n > Self::MAX_INPUTS {
            return Err(Error::Capacity {
                what: "truth-table inputs",
                limit: Self::MAX_INPUTS,
                requested: n,
            });
        }
        if table.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: table.len(),
            });
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(&BitString) -> bool) -> Self {
        let table = BitString::all(n).map(|x| f(&x)).collect();
        Self { n, table }
    }

    /// The function whose table is the `2^n` low bits of `code`, row 0
    /// in the most significant position. Used for census enumeration.
    pub fn from_code(n: usize, code: u64) -> Self {
        let rows = 1usize << n;
        let table = (0..rows).map(|r| (code >> (rows - 1 - r)) & 1 == 1).collect();
        Self { n, table }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        Self::from_fn(n, |_| value)
    }

    /// `x ↦ x_k`, or `x ↦ 1 − x_k` when `negated`.
    pub fn dictator(n: usize, k: usize, negated: bool) -> Self {
        Self::from_fn(n, |x| x.get(k) != negated)
    }

    pub fn majority(n: usize) -> Self {
        Self::from_fn(n, |x| 2 * x.bits().iter().filter(|&&b| b).count() > n)
    }

    pub fn and(n: usize) -> Self {
        Self::from_fn(n, |x| x.bits().iter().all(|&b| b))
    }

    pub fn parity(n: usize) -> Self {
        Self::from_fn(n, |x| x.bits().iter().filter(|&&b| b).count() % 2 == 1)
    }

    pub fn num_inputs(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, x: &BitString) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self.table[x.to_index()])
    }

    pub fn eval_index(&self, row: usize) -> bool {
        self.table[row]
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    /// Table as a binary string in row order.
    pub fn to_binary(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    /// Accepts a binary string of length `2^n` or a hex string with an
    /// `0x` prefix whose `4·digits` bits (most significant first) form the
    /// table.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let binary = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            hex.chars()
                .map(|c| {
                    c.to_digit(16)
                        .map(|d| format!("{d:04b}"))
                        .ok_or_else(|| Error::Invalid(format!("bad hex digit {c:?} in {s:?}")))
                })
                .collect::<Result<String>>()?
        } else {
            s.to_string()
        };
        let len = binary.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "truth table length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        let bits: BitString = binary.parse()?;
        Self::new(n, bits.0)
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary())
    }
}
