use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Variables are k-subsets of `[n]`.
    Uniform,
    /// Variables are k-tuples in `[n]^k`.
    Partite,
}

/// Bijection between hyperedges and variable indices `0..N`.
///
/// Vertices are 0-based. Uniform edges are ranked colexicographically over
/// their sorted vertex lists (`{0,1} -> 0, {0,2} -> 1, {1,2} -> 2, ...`);
/// partite tuples are ranked mixed-radix with the first coordinate most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarIndexer {
    n: u32,
    k: u32,
    kind: EdgeKind,
    n_vars: usize,
    /// `binom[v][i] = C(v, i)` for `v <= n`, `i <= k`.
    binom: Vec<Vec<usize>>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl VarIndexer {
    pub fn uniform(n: u32, k: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(invalid(format!(
                "uniform edges need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        let total = binomial(n as u64, k as u64);
        let n_vars = usize::try_from(total)
            .ok()
            .filter(|&v| v <= u32::MAX as usize)
            .ok_or_else(|| invalid(format!("C({n},{k}) variables is too many")))?;
        let binom = (0..=n as u64)
            .map(|v| (0..=k as u64).map(|i| binomial(v, i) as usize).collect())
            .collect();
        Ok(Self {
            n,
            k,
            kind: EdgeKind::Uniform,
            n_vars,
            binom,
        })
    }

    pub fn partite(n: u32, k: u32) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(invalid("partite edges need n, k >= 1"));
        }
        let n_vars = (n as u64)
            .checked_pow(k)
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(|| invalid(format!("{n}^{k} variables is too many")))?
            as usize;
        Ok(Self {
            n,
            k,
            kind: EdgeKind::Partite,
            n_vars,
            binom: Vec::new(),
        })
    }

    pub fn new(kind: EdgeKind, n: u32, k: u32) -> Result<Self> {
        match kind {
            EdgeKind::Uniform => Self::uniform(n, k),
            EdgeKind::Partite => Self::partite(n, k),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    /// Number of variables `N`.
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Validating rank. Uniform edges may be given in any order.
    pub fn rank(&self, edge: &[u32]) -> Result<usize> {
        if edge.len() != self.k as usize {
            return Err(invalid(format!(
                "edge {edge:?} does not have {} vertices",
                self.k
            )));
        }
        if let Some(v) = edge.iter().find(|&&v| v >= self.n) {
            return Err(invalid(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )));
        }
        match self.kind {
            EdgeKind::Uniform => {
                let mut e = edge.to_vec();
                e.sort_unstable();
                if e.windows(2).any(|w| w[0] == w[1]) {
                    return Err(invalid(format!("edge {edge:?} repeats a vertex")));
                }
                Ok(self.rank_sorted(&e))
            }
            EdgeKind::Partite => Ok(self.rank_tuple(edge)),
        }
    }

    /// Rank of a sorted, duplicate-free uniform edge (unchecked).
    #[inline]
    pub fn rank_sorted(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &v)| self.binom[v as usize][i + 1])
            .sum()
    }

    /// Rank of a partite tuple (unchecked).
    #[inline]
    pub fn rank_tuple(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .fold(0usize, |acc, &v| acc * self.n as usize + v as usize)
    }

    /// Edge of a variable: sorted vertices (uniform) or the tuple (partite).
    pub fn unrank(&self, index: usize) -> Result<Vec<u32>> {
        if index >= self.n_vars {
            return Err(invalid(format!(
                "variable {index} out of range for N = {}",
                self.n_vars
            )));
        }
        Ok(match self.kind {
            EdgeKind::Uniform => {
                let mut r = index;
                let mut out = vec![0u32; self.k as usize];
                let mut v = self.n as usize;
                for i in (1..=self.k as usize).rev() {
                    v -= 1;
                    while self.binom[v][i] > r {
                        v -= 1;
                    }
                    out[i - 1] = v as u32;
                    r -= self.binom[v][i];
                }
                out
            }
            EdgeKind::Partite => {
                let mut r = index;
                let mut out = vec![0u32; self.k as usize];
                for slot in out.iter_mut().rev() {
                    *slot = (r % self.n as usize) as u32;
                    r /= self.n as usize;
                }
                out
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_examples() {
        let ix = VarIndexer::uniform(4, 2).unwrap();
        assert_eq!(ix.n_vars(), 6);
        assert_eq!(ix.rank(&[0, 1]).unwrap(), 0);
        assert_eq!(ix.rank(&[3, 2]).unwrap(), 5);
        let order: Vec<Vec<u32>> = (0..6).map(|i| ix.unrank(i).unwrap()).collect();
        assert_eq!(
            order,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn partite_examples() {
        let ix = VarIndexer::partite(3, 2).unwrap();
        assert_eq!(ix.rank(&[0, 0]).unwrap(), 0);
        assert_eq!(ix.rank(&[1, 2]).unwrap(), 5);
        assert_eq!(ix.unrank(8).unwrap(), vec![2, 2]);
    }

    #[test]
    fn malformed_edges() {
        let ix = VarIndexer::uniform(5, 3).unwrap();
        assert!(ix.rank(&[0, 0, 1]).is_err());
        assert!(ix.rank(&[0, 1]).is_err());
        assert!(ix.rank(&[0, 1, 5]).is_err());
        assert!(ix.unrank(10).is_err());
        assert!(VarIndexer::uniform(3, 4).is_err());
    }

    #[test]
    fn rank_unrank_bijective() {
        for (kind, n, k) in [
            (EdgeKind::Uniform, 9, 3),
            (EdgeKind::Uniform, 7, 7),
            (EdgeKind::Partite, 4, 3),
        ] {
            let ix = VarIndexer::new(kind, n, k).unwrap();
            for i in 0..ix.n_vars() {
                assert_eq!(ix.rank(&ix.unrank(i).unwrap()).unwrap(), i);
            }
        }
    }
}
