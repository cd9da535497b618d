use serde::{Deserialize, Serialize};

use crate::boolfn::BitString;
use crate::error::{invalid, Error, Result};

/// A partial assignment `p: [N] -> {0, 1, *}` stored sparsely.
///
/// Entries are sorted by variable index; variables without an entry are
/// stars. `len()` is the support size `|p|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartial", into = "RawPartial")]
pub struct PartialAssignment {
    n_vars: usize,
    entries: Vec<(usize, bool)>,
}

#[derive(Serialize, Deserialize)]
struct RawPartial {
    n_vars: usize,
    entries: Vec<(usize, u8)>,
}

impl TryFrom<RawPartial> for PartialAssignment {
    type Error = Error;

    fn try_from(raw: RawPartial) -> Result<Self> {
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (i, b) in raw.entries {
            match b {
                0 | 1 => entries.push((i, b == 1)),
                _ => return Err(Error::Format(format!("bit for variable {i} is {b}"))),
            }
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Format("entries must be sorted by index".into()));
        }
        PartialAssignment::new(raw.n_vars, entries)
    }
}

impl From<PartialAssignment> for RawPartial {
    fn from(p: PartialAssignment) -> Self {
        RawPartial {
            n_vars: p.n_vars,
            entries: p.entries.into_iter().map(|(i, b)| (i, b as u8)).collect(),
        }
    }
}

impl PartialAssignment {
    /// Entries may come in any order; duplicates and out-of-range indices are
    /// rejected.
    pub fn new(n_vars: usize, mut entries: Vec<(usize, bool)>) -> Result<Self> {
        entries.sort_unstable_by_key(|e| e.0);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(invalid(format!("variable {} assigned twice", w[0].0)));
        }
        if let Some(&(i, _)) = entries.last() {
            if i >= n_vars {
                return Err(invalid(format!(
                    "variable {i} out of range for N = {n_vars}"
                )));
            }
        }
        Ok(Self { n_vars, entries })
    }

    pub fn empty(n_vars: usize) -> Self {
        Self {
            n_vars,
            entries: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn entries(&self) -> &[(usize, bool)] {
        &self.entries
    }

    /// Support size `|p|`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    /// `None` means star.
    pub fn get(&self, i: usize) -> Option<bool> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| self.entries[k].1)
    }

    fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual,
            });
        }
        Ok(())
    }

    /// True iff `x` agrees with `p` on the support of `p`.
    pub fn consistent(&self, x: &BitString) -> Result<bool> {
        self.check_dim(x.len())?;
        Ok(self.entries.iter().all(|&(i, b)| x.get(i) == b))
    }

    /// Number of positions where one side says 0 and the other 1.
    pub fn dist(&self, other: &PartialAssignment) -> Result<usize> {
        self.check_dim(other.n_vars)?;
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        let mut d = 0;
        while let (Some(&&(i, u)), Some(&&(j, v))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    d += (u != v) as usize;
                    a.next();
                    b.next();
                }
            }
        }
        Ok(d)
    }

    /// `(care, value)` masks when `N <= 64`: `x` is consistent iff
    /// `x & care == value`.
    pub fn masks(&self) -> Option<(u64, u64)> {
        if self.n_vars > 64 {
            return None;
        }
        Some(
            self.entries
                .iter()
                .fold((0, 0), |(c, v), &(i, b)| (c | 1 << i, v | (b as u64) << i)),
        )
    }

    /// The input that agrees with `p` on its support and is `fill` elsewhere.
    pub fn extend(&self, fill: bool) -> BitString {
        let mut x = if fill {
            BitString::ones(self.n_vars)
        } else {
            BitString::zeros(self.n_vars)
        };
        for &(i, b) in &self.entries {
            x.set(i, b);
        }
        x
    }
}
