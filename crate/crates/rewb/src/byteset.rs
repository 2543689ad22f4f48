//! Byte sets and the matching alphabet.

use std::fmt;

/// A set of byte values backed by a 256-bit bitmap.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct ByteSet {
    bits: [u64; 4],
}

impl ByteSet {
    pub const EMPTY: ByteSet = ByteSet { bits: [0; 4] };

    pub fn new() -> ByteSet {
        ByteSet::EMPTY
    }

    pub fn insert(&mut self, b: u8) {
        self.bits[(b >> 6) as usize] |= 1 << (b & 63);
    }

    pub fn insert_range(&mut self, lo: u8, hi: u8) {
        debug_assert!(lo <= hi);
        for b in lo..=hi {
            self.insert(b);
        }
    }

    pub fn contains(&self, b: u8) -> bool {
        self.bits[(b >> 6) as usize] & (1 << (b & 63)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 4]
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &ByteSet) -> ByteSet {
        let mut bits = self.bits;
        for (w, o) in bits.iter_mut().zip(other.bits) {
            *w |= o;
        }
        ByteSet { bits }
    }

    /// Bytes of `self` that are not in `other`.
    pub fn difference(&self, other: &ByteSet) -> ByteSet {
        let mut bits = self.bits;
        for (w, o) in bits.iter_mut().zip(other.bits) {
            *w &= !o;
        }
        ByteSet { bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0u16..256).map(|b| b as u8).filter(|&b| self.contains(b))
    }
}

impl FromIterator<u8> for ByteSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> ByteSet {
        let mut set = ByteSet::new();
        for b in iter {
            set.insert(b);
        }
        set
    }
}

impl fmt::Debug for ByteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The set of bytes that `.` and negated character classes range over.
///
/// Plain character classes and literals match their bytes regardless of the
/// alphabet; only `.` and `[^...]` consult it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(ByteSet);

impl Alphabet {
    /// Printable ASCII, 0x20 through 0x7E.
    pub fn printable_ascii() -> Alphabet {
        let mut set = ByteSet::new();
        set.insert_range(0x20, 0x7e);
        Alphabet(set)
    }

    pub fn from_bytes(bytes: &[u8]) -> Alphabet {
        Alphabet(bytes.iter().copied().collect())
    }

    pub fn as_set(&self) -> &ByteSet {
        &self.0
    }

    pub fn contains(&self, b: u8) -> bool {
        self.0.contains(b)
    }
}

impl Default for Alphabet {
    fn default() -> Alphabet {
        Alphabet::printable_ascii()
    }
}
