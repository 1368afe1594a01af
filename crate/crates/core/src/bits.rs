use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A packed classical bitstring, leftmost bit first.
///
/// Bit 0 is stored in the most significant position of the first word, so the
/// derived ordering coincides with lexicographic ordering of the printed
/// string for strings of equal length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// The low `len` bits of `value`, most significant first.
    pub fn from_index(value: u64, len: usize) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                b.set(i, true);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (63 - i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (63 - i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Bits `range` read as an unsigned integer, first bit most significant.
    pub fn slice_index(&self, range: std::ops::Range<usize>) -> u64 {
        assert!(range.len() <= 64);
        range.fold(0, |acc, i| (acc << 1) | self.get(i) as u64)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut b = Bits::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => b.set(i, true),
                other => {
                    return Err(Error::MalformedBits(format!(
                        "unexpected character {other:?} in bitstring {s:?}"
                    )))
                }
            }
        }
        Ok(b)
    }
}
