//! Fixed-width packing of raw strings into a `u64`, symbol `j` occupying
//! bits `[j*w, (j+1)*w)`. Width is 2 bits for alphabets up to 4 and 3 bits
//! up to 8.

use std::sync::OnceLock;

use crate::string::Symbol;

/// Reverses the order of the eight 2-bit symbols in a 16-bit chunk.
fn chunk_reversal_table() -> &'static [u16] {
    static TABLE: OnceLock<Vec<u16>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=u16::MAX)
            .map(|x| {
                let mut r = 0u16;
                for j in 0..8 {
                    let sym = (x >> (2 * j)) & 3;
                    r |= sym << (2 * (7 - j));
                }
                r
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedState {
    pub word: u64,
    pub len: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packing {
    bits: u32,
    len: usize,
}

impl Packing {
    /// `None` when `len` symbols over `arity` letters do not fit in 64 bits.
    pub fn new(arity: usize, len: usize) -> Option<Packing> {
        let bits = match arity {
            0..=4 => 2,
            5..=8 => 3,
            _ => return None,
        };
        (len as u32 * bits <= 64).then_some(Packing { bits, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn pack(&self, symbols: &[Symbol]) -> PackedState {
        debug_assert_eq!(symbols.len(), self.len);
        let word = symbols
            .iter()
            .enumerate()
            .fold(0u64, |w, (j, &s)| w | (u64::from(s) << (j as u32 * self.bits)));
        PackedState {
            word,
            len: self.len as u8,
        }
    }

    pub fn unpack(&self, state: PackedState) -> Vec<Symbol> {
        let mask = (1u64 << self.bits) - 1;
        (0..self.len)
            .map(|j| ((state.word >> (j as u32 * self.bits)) & mask) as Symbol)
            .collect()
    }

    fn field_mask(&self, prefix: usize) -> u64 {
        let width = prefix as u32 * self.bits;
        if width >= 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        }
    }

    /// Reverses the first `prefix` symbols.
    pub fn flip(&self, state: PackedState, prefix: usize) -> PackedState {
        debug_assert!(prefix >= 1 && prefix <= self.len);
        let mask = self.field_mask(prefix);
        let field = state.word & mask;
        let reversed = if self.bits == 2 {
            let table = chunk_reversal_table();
            let mut r = 0u64;
            for c in 0..4 {
                let chunk = ((field >> (16 * c)) & 0xffff) as usize;
                r |= u64::from(table[chunk]) << (16 * (3 - c));
            }
            r >> (64 - 2 * prefix as u32)
        } else {
            let sym_mask = (1u64 << self.bits) - 1;
            let mut r = 0u64;
            for j in 0..prefix {
                let sym = (field >> (j as u32 * self.bits)) & sym_mask;
                r |= sym << ((prefix - 1 - j) as u32 * self.bits);
            }
            r
        };
        PackedState {
            word: (state.word & !mask) | reversed,
            len: state.len,
        }
    }
}
