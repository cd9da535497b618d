use std::fmt;

/// A fixed-length bit string used for inputs whose variable count does not
/// fit a machine word (hypergraph inputs routinely have hundreds of edges).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        b.clear_tail();
        b
    }

    /// Bit `j` of `index` becomes variable `j`.
    pub fn from_index(len: usize, index: u64) -> Self {
        let mut b = Self::zeros(len);
        if len > 0 {
            b.words[0] = index;
            b.clear_tail();
        }
        b
    }

    /// Inverse of [`BitString::from_index`]; `None` when `len > 64`.
    pub fn to_index(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= m;
        } else {
            self.words[i >> 6] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

impl serde::Serialize for BitString {
    /// Serialized as a `0`/`1` string, variable 0 first.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        s.serialize_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_ones() {
        let b = BitString::from_index(5, 0b10110);
        assert_eq!(b.to_index(), Some(0b10110));
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(BitString::ones(70).count_ones(), 70);
        assert_eq!(BitString::from_index(3, 0xff).to_index(), Some(7));
    }

    #[test]
    fn set_flip_across_words() {
        let mut b = BitString::zeros(130);
        b.set(129, true);
        b.flip(64);
        assert!(b.get(129) && b.get(64) && !b.get(0));
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![64, 129]);
        assert_eq!(b.to_index(), None);
    }
}
