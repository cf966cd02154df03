//! Permutations of `1..=n` and their Lehmer-code ranks.
//!
//! Symbols and positions are stored 0-based. Everything that crosses the
//! library boundary (parsing, `Display`, error text) is 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` whose permutations we represent at all. `21!` overflows a
/// 64-bit index, so ranks stop being meaningful above this.
pub const MAX_N: usize = 20;

/// `n!`, or `None` if it does not fit in `usize`.
pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

/// An arrangement of the symbols `1..=n`, one vertex label of the star graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    symbols: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from 1-based symbols.
    pub fn new(symbols: &[usize]) -> Result<Self> {
        let zero_based = symbols
            .iter()
            .map(|&s| {
                if s == 0 || s > MAX_N {
                    Err(Error::InvalidPermutation(format!(
                        "symbol {s} outside 1..={}",
                        symbols.len()
                    )))
                } else {
                    Ok((s - 1) as u8)
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_zero_based(zero_based)
    }

    /// Builds a permutation from 0-based symbols, validating it.
    pub fn from_zero_based(symbols: Vec<u8>) -> Result<Self> {
        let n = symbols.len();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!(
                "length {n} outside 1..={MAX_N}"
            )));
        }
        let mut seen = 0u32;
        for &s in &symbols {
            let s = s as usize;
            if s >= n {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {} outside 1..={n}",
                    s + 1
                )));
            }
            if seen & (1 << s) != 0 {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {} repeated",
                    s + 1
                )));
            }
            seen |= 1 << s;
        }
        Ok(Permutation { symbols })
    }

    pub(crate) fn from_zero_based_unchecked(symbols: Vec<u8>) -> Self {
        debug_assert!(Self::from_zero_based(symbols.clone()).is_ok());
        Permutation { symbols }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_zero_based((0..n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    /// 0-based symbols, position by position.
    pub fn as_zero_based(&self) -> &[u8] {
        &self.symbols
    }

    /// 1-based symbols, position by position.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.symbols.iter().map(|&s| s as usize + 1).collect()
    }

    /// Symbol (1-based) at 1-based `position`.
    pub fn symbol_at(&self, position: usize) -> usize {
        self.symbols[position - 1] as usize + 1
    }

    /// The permutation with positions `0` and `pos` (0-based) exchanged.
    pub fn swap_first(&self, pos: usize) -> Permutation {
        let mut symbols = self.symbols.clone();
        symbols.swap(0, pos);
        Permutation { symbols }
    }

    /// Position in Lehmer (lexicographic) order, `0..n!`.
    pub fn rank(&self) -> usize {
        rank_zero_based(&self.symbols)
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(rank: usize, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Capacity(format!("n = {n} outside 1..={MAX_N}")));
        }
        let total = factorial(n).expect("n <= MAX_N");
        if rank >= total {
            return Err(Error::RankOutOfRange { rank, n });
        }
        let mut symbols = vec![0u8; n];
        unrank_into(rank, &mut symbols);
        Ok(Permutation { symbols })
    }

    /// Digit-string form ("3412"); only unambiguous for `n <= 9`.
    pub fn compact(&self) -> String {
        if self.n() <= 9 {
            self.symbols
                .iter()
                .map(|&s| char::from(b'1' + s))
                .collect()
        } else {
            self.to_string()
        }
    }
}

pub(crate) fn rank_zero_based(symbols: &[u8]) -> usize {
    let n = symbols.len();
    let mut rank = 0usize;
    let mut used = 0u32;
    for (i, &s) in symbols.iter().enumerate() {
        // symbols smaller than s that are still unused
        let smaller_unused = (s as u32 - (used & ((1u32 << s) - 1)).count_ones()) as usize;
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << s;
    }
    rank
}

pub(crate) fn unrank_into(mut rank: usize, out: &mut [u8]) {
    let n = out.len();
    let mut digits = [0usize; MAX_N];
    for i in (0..n).rev() {
        let radix = n - i;
        digits[i] = rank % radix;
        rank /= radix;
    }
    let mut unused: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for i in 0..n {
        let mut d = digits[i];
        let mut bits = unused;
        loop {
            let s = bits.trailing_zeros();
            if d == 0 {
                out[i] = s as u8;
                unused &= !(1 << s);
                break;
            }
            d -= 1;
            bits &= bits - 1;
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.compact())
    }
}

/// Accepts "3,4,1,2" for any `n`, and the digit string "3412" for `n <= 9`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let symbols: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad symbol {t:?}")))
                })
                .collect::<Result<_>>()?
        } else if !s.is_empty() && s.len() <= 9 && s.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
            s.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            return Err(Error::InvalidPermutation(format!("cannot parse {s:?}")));
        };
        Permutation::new(&symbols)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
