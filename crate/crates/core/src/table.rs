//! Truth tables of functions of `R` restricted to `{1,2}^n`.
//!
//! Values on tuples containing a `0` are always `0` and are not stored. Entry
//! `i` of the table is the value on the tuple whose binary encoding is `i`,
//! reading `1` as bit `0`, `2` as bit `1`, and `x_1` as the most significant
//! bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest arity for which a full table is materialised.
pub const MAX_TABLE_ARITY: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableFn {
    arity: usize,
    bits: Vec<bool>,
}

impl TableFn {
    pub fn new(arity: usize, bits: Vec<bool>) -> Result<Self> {
        check_arity(arity)?;
        if bits.len() != 1usize << arity {
            return Err(Error::ArityMismatch {
                expected: 1 << arity,
                got: bits.len(),
            });
        }
        Ok(Self { arity, bits })
    }

    /// Builds a table by evaluating `f` on every tuple of `{1,2}^arity`.
    pub fn from_fn(arity: usize, mut f: impl FnMut(&[u8]) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let mut tuple = vec![1u8; arity];
        let bits = (0..1usize << arity)
            .map(|i| {
                decode_into(arity, i, &mut tuple);
                f(&tuple)
            })
            .collect();
        Ok(Self { arity, bits })
    }

    pub fn zero(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |_| false)
    }

    /// `i_n`: the function equal to `1` on all of `{1,2}^n`.
    pub fn i(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |_| true)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    /// Evaluates on a tuple over `{0,1,2}`.
    pub fn eval(&self, tuple: &[u8]) -> Result<u8> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        let mut index = 0usize;
        let mut zero = false;
        for &v in tuple {
            match v {
                0 => zero = true,
                1 => index <<= 1,
                2 => index = (index << 1) | 1,
                other => return Err(Error::InvalidValue(other)),
            }
        }
        if zero {
            return Ok(0);
        }
        Ok(self.bits[index] as u8)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// True iff `N_f = {1,2}^n`.
    pub fn is_i(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// Number of tuples in `N_f`.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True iff every tuple of `N_self` is in `N_other`.
    pub fn is_subset_of(&self, other: &TableFn) -> bool {
        self.arity == other.arity && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Tuples of `N_f`, each as a vector over `{1,2}`.
    pub fn ones(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| decode(self.arity, i))
    }

    /// Hex rendering with bit `i` of the number equal to table entry `i`.
    pub fn to_hex(&self) -> String {
        let digits = self.bits.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|b| self.bits.get(d * 4 + b).copied().unwrap_or(false))
                    .fold(0u32, |acc, b| acc | (1 << b));
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<Self> {
        check_arity(arity)?;
        let hex = hex.trim_start_matches("0x");
        let len = 1usize << arity;
        let mut bits = vec![false; len];
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit `{c}`")))?;
            for b in 0..4 {
                if nibble & (1 << b) != 0 {
                    let pos = d * 4 + b;
                    if pos >= len {
                        return Err(Error::Parse(format!(
                            "hex value has bits beyond the {len} table entries"
                        )));
                    }
                    bits[pos] = true;
                }
            }
        }
        Ok(Self { arity, bits })
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 {
        return Err(Error::InvalidProfile("arity must be positive".into()));
    }
    if arity > MAX_TABLE_ARITY {
        return Err(Error::CapExceeded(format!(
            "table arity {arity} exceeds {MAX_TABLE_ARITY}"
        )));
    }
    Ok(())
}

/// Tuple over `{1,2}` encoded by `index`.
pub fn decode(arity: usize, index: usize) -> Vec<u8> {
    let mut t = vec![1u8; arity];
    decode_into(arity, index, &mut t);
    t
}

fn decode_into(arity: usize, index: usize, out: &mut [u8]) {
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = 1 + ((index >> (arity - 1 - j)) & 1) as u8;
    }
}

/// Index of a tuple over `{1,2}`; `None` if it contains another value.
pub fn encode(tuple: &[u8]) -> Option<usize> {
    tuple.iter().try_fold(0usize, |acc, &v| match v {
        1 => Some(acc << 1),
        2 => Some((acc << 1) | 1),
        _ => None,
    })
}
