//! Bit-mask helpers shared by the searches.

use std::fmt::Write;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All submasks of `mask` in increasing numeric order, `0` and `mask` included.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(cur.wrapping_sub(mask) & mask)
        };
        Some(cur)
    })
}

/// Indices of the set bits, lowest first.
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// `{0,2,5}` style rendering.
pub fn fmt_set(mask: u64) -> String {
    let mut s = String::from("{");
    for (k, i) in ones(mask).enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "{i}");
    }
    s.push('}');
    s
}

/// Packs the bits of `x` selected by `sel` into the low positions.
pub fn compress(x: u64, sel: u64) -> u64 {
    let mut out = 0;
    for (k, i) in ones(sel).enumerate() {
        if x >> i & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `x` onto the positions of `sel`.
pub fn expand(x: u64, sel: u64) -> u64 {
    let mut out = 0;
    for (k, i) in ones(sel).enumerate() {
        if x >> k & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

/// Growable bit set over `0..len`, used where universes exceed 64 members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn from_iter(len: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| ones(bits).map(move |i| w * 64 + i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_are_increasing_and_complete() {
        let all: Vec<u64> = submasks(0b1011).collect();
        assert_eq!(all, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn compress_expand_round_trip() {
        let sel = 0b101100;
        for x in 0..8 {
            assert_eq!(compress(expand(x, sel), sel), x);
        }
        assert_eq!(compress(0b100100, sel), 0b101);
    }

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(129);
        assert!(s.contains(129));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 129]);
        s.remove(0);
        assert_eq!(s.count(), 1);
        assert_eq!(fmt_set(0b101), "{0,2}");
        assert_eq!(fmt_set(0), "{}");
    }
}
