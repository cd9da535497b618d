use crate::boolfn::PartialAssignment;
use crate::error::{Error, Result};

/// Largest variable count a [`TruthTable`] may hold (2^30 bits = 128 MiB).
pub const MAX_VARS: u32 = 30;

/// Dense truth table of `f: {0,1}^N -> {0,1}`.
///
/// Bit `i` holds `f(x_i)` where variable `j` of `x_i` is bit `j` of `i`
/// (little-endian variable order). Flipping variable `j` is therefore
/// `i ^ (1 << j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n_vars: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n_vars <= 6 {
            write!(f, "TruthTable(n={}, {:#x})", self.n_vars, self.words[0])
        } else {
            write!(
                f,
                "TruthTable(n={}, ones={})",
                self.n_vars,
                self.count_ones()
            )
        }
    }
}

fn word_count(n_vars: u32) -> usize {
    if n_vars <= 6 {
        1
    } else {
        1usize << (n_vars - 6)
    }
}

impl TruthTable {
    pub fn zeros(n_vars: u32) -> Result<Self> {
        if n_vars > MAX_VARS {
            return Err(Error::BudgetExceeded {
                what: "truth table variables",
                limit: MAX_VARS as usize,
                actual: n_vars as usize,
            });
        }
        Ok(Self {
            n_vars,
            words: vec![0; word_count(n_vars)],
        })
    }

    pub fn from_fn(n_vars: u32, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n_vars)?;
        for x in 0..t.len() {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    /// Builds a table from raw words; bits past `2^N` must be zero.
    pub fn from_words(n_vars: u32, words: Vec<u64>) -> Result<Self> {
        let t = Self::zeros(n_vars)?;
        if words.len() != t.words.len() {
            return Err(Error::Format(format!(
                "expected {} words for {} variables, got {}",
                t.words.len(),
                n_vars,
                words.len()
            )));
        }
        let mut t = Self { n_vars, words };
        t.mask_tail();
        Ok(t)
    }

    fn mask_tail(&mut self) {
        if self.n_vars < 6 {
            self.words[0] &= (1u64 << (1u32 << self.n_vars)) - 1;
        }
    }

    pub fn constant(n_vars: u32, value: bool) -> Result<Self> {
        let mut t = Self::zeros(n_vars)?;
        if value {
            t.words.iter_mut().for_each(|w| *w = u64::MAX);
            t.mask_tail();
        }
        Ok(t)
    }

    pub fn and(n: u32) -> Result<Self> {
        let all = (1u64 << n) - 1;
        Self::from_fn(n, |x| x == all)
    }

    pub fn or(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x != 0)
    }

    pub fn parity(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    pub fn majority(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| 2 * x.count_ones() > n)
    }

    /// `f(x) = 1` iff `|x| >= t`.
    pub fn threshold(n: u32, t: u32) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() >= t)
    }

    #[inline]
    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    /// Number of inputs, `2^N`.
    #[inline]
    pub fn len(&self) -> u64 {
        1u64 << self.n_vars
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u64, v: bool) {
        let m = 1u64 << (x & 63);
        let w = &mut self.words[(x >> 6) as usize];
        if v {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `Some(v)` when `f` is the constant `v`.
    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() => Some(true),
            _ => None,
        }
    }

    /// Fixes the variables of `p` and returns the subfunction on the
    /// remaining `N - |p|` variables, survivors keeping their relative order.
    pub fn restrict(&self, p: &PartialAssignment) -> Result<Self> {
        if p.n_vars() != self.n_vars as usize {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars as usize,
                actual: p.n_vars(),
            });
        }
        let (care, value) = p.masks().expect("n_vars <= 30 fits a mask");
        let free: Vec<u32> = (0..self.n_vars).filter(|j| care >> j & 1 == 0).collect();
        let m = free.len() as u32;
        Self::from_fn(m, |y| {
            let mut x = value;
            for (t, &j) in free.iter().enumerate() {
                x |= ((y >> t) & 1) << j;
            }
            self.get(x)
        })
    }

    /// True iff `f(x)` depends only on the Hamming weight of `x`.
    pub fn is_symmetric(&self) -> bool {
        let mut by_weight: Vec<Option<bool>> = vec![None; self.n_vars as usize + 1];
        for x in 0..self.len() {
            let slot = &mut by_weight[x.count_ones() as usize];
            let v = self.get(x);
            match *slot {
                None => *slot = Some(v),
                Some(prev) if prev != v => return false,
                _ => {}
            }
        }
        true
    }
}
