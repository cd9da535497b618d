use crate::boolfn::{BitString, PartialAssignment};
use crate::error::{invalid, Error, Result};
use crate::symmetry::{EdgeKind, VarIndexer};

/// A vertex permutation: one bijection on `[n]` for uniform hypergraphs, or
/// one per coordinate for k-partite hypergraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexPerm {
    Uniform(Vec<u32>),
    Partite(Vec<Vec<u32>>),
}

fn check_bijection(images: &[u32]) -> Result<()> {
    let mut seen = vec![false; images.len()];
    for &v in images {
        let slot = seen
            .get_mut(v as usize)
            .ok_or_else(|| invalid(format!("image {v} out of range")))?;
        if std::mem::replace(slot, true) {
            return Err(invalid(format!("image {v} repeated")));
        }
    }
    Ok(())
}

fn invert(images: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; images.len()];
    for (i, &v) in images.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    inv
}

impl VertexPerm {
    pub fn uniform(images: Vec<u32>) -> Result<Self> {
        check_bijection(&images)?;
        Ok(Self::Uniform(images))
    }

    pub fn partite(images: Vec<Vec<u32>>) -> Result<Self> {
        let n = images.first().map_or(0, Vec::len);
        for im in &images {
            if im.len() != n {
                return Err(invalid(
                    "partite coordinates act on different vertex counts",
                ));
            }
            check_bijection(im)?;
        }
        Ok(Self::Partite(images))
    }

    pub fn identity(indexer: &VarIndexer) -> Self {
        let id: Vec<u32> = (0..indexer.n()).collect();
        match indexer.kind() {
            EdgeKind::Uniform => Self::Uniform(id),
            EdgeKind::Partite => Self::Partite(vec![id; indexer.k() as usize]),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Uniform(s) => Self::Uniform(invert(s)),
            Self::Partite(cs) => Self::Partite(cs.iter().map(|s| invert(s)).collect()),
        }
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let comp = |a: &[u32], b: &[u32]| b.iter().map(|&v| a[v as usize]).collect::<Vec<_>>();
        match (self, other) {
            (Self::Uniform(a), Self::Uniform(b)) if a.len() == b.len() => {
                Ok(Self::Uniform(comp(a, b)))
            }
            (Self::Partite(a), Self::Partite(b)) if a.len() == b.len() => Ok(Self::Partite(
                a.iter().zip(b).map(|(x, y)| comp(x, y)).collect(),
            )),
            _ => Err(invalid("permutations of different kinds or sizes")),
        }
    }

    fn check(&self, indexer: &VarIndexer) -> Result<()> {
        let ok = match (self, indexer.kind()) {
            (Self::Uniform(s), EdgeKind::Uniform) => s.len() == indexer.n() as usize,
            (Self::Partite(cs), EdgeKind::Partite) => {
                cs.len() == indexer.k() as usize
                    && cs.iter().all(|s| s.len() == indexer.n() as usize)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(
                "vertex permutation does not match the indexer kind",
            ))
        }
    }

    /// `σ(S)` for one edge.
    pub fn map_edge(&self, edge: &[u32]) -> Vec<u32> {
        match self {
            Self::Uniform(s) => {
                let mut e: Vec<u32> = edge.iter().map(|&v| s[v as usize]).collect();
                e.sort_unstable();
                e
            }
            Self::Partite(cs) => edge.iter().zip(cs).map(|(&v, s)| s[v as usize]).collect(),
        }
    }

    /// The induced variable map `S -> σ(S)`.
    pub fn var_perm(&self, indexer: &VarIndexer) -> Result<VarPerm> {
        self.check(indexer)?;
        let images = (0..indexer.n_vars())
            .map(|i| {
                let e = indexer.unrank(i).expect("in range");
                indexer.rank(&self.map_edge(&e)).expect("valid image") as u32
            })
            .collect();
        Ok(VarPerm(images))
    }
}

/// A permutation of variables, stored as `image[S] = σ(S)`.
///
/// It acts on inputs and partial assignments by `σ(x)_S = x_{σ(S)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarPerm(pub Vec<u32>);

impl VarPerm {
    pub fn identity(n_vars: usize) -> Self {
        Self((0..n_vars as u32).collect())
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    /// `(self ∘ other)(S) = self(other(S))`.
    pub fn compose(&self, other: &VarPerm) -> VarPerm {
        VarPerm(other.0.iter().map(|&v| self.0[v as usize]).collect())
    }

    pub fn apply_input(&self, x: &BitString) -> BitString {
        let mut y = BitString::zeros(x.len());
        for (s, &img) in self.0.iter().enumerate() {
            if x.get(img as usize) {
                y.set(s, true);
            }
        }
        y
    }

    /// `σ(p)` with `σ(p)_S = p_{σ(S)}`: each entry of `p` at `T` moves to
    /// `σ^{-1}(T)`.
    pub fn apply_partial(&self, p: &PartialAssignment) -> Result<PartialAssignment> {
        if p.n_vars() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                actual: p.n_vars(),
            });
        }
        let mut inv = vec![0u32; self.n_vars()];
        for (s, &img) in self.0.iter().enumerate() {
            inv[img as usize] = s as u32;
        }
        PartialAssignment::new(
            p.n_vars(),
            p.entries()
                .iter()
                .map(|&(t, b)| (inv[t] as usize, b))
                .collect(),
        )
    }

    /// Byte-wise lookup tables for permuting truth-table indices (`N <= 32`).
    pub fn index_permuter(&self) -> IndexPermuter {
        assert!(self.n_vars() <= 32);
        let chunks = self.n_vars().div_ceil(8);
        let mut tables = vec![[0u32; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut out = 0u32;
                for (s, &img) in self.0.iter().enumerate() {
                    let img = img as usize;
                    if img / 8 == c && (byte >> (img % 8)) & 1 == 1 {
                        out |= 1 << s;
                    }
                }
                *slot = out;
            }
        }
        IndexPermuter { tables }
    }
}

/// Maps a truth-table index `x` to the index of `σ(x)`.
pub struct IndexPermuter {
    tables: Vec<[u32; 256]>,
}

impl IndexPermuter {
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.tables.iter().enumerate().fold(0u32, |acc, (c, t)| {
            acc | t[((x >> (8 * c)) & 0xff) as usize]
        }) as u64
    }
}

/// `σ(p)` for a vertex permutation acting through `indexer`.
pub fn apply_perm(
    sigma: &VertexPerm,
    p: &PartialAssignment,
    indexer: &VarIndexer,
) -> Result<PartialAssignment> {
    sigma.check(indexer)?;
    if p.n_vars() != indexer.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: indexer.n_vars(),
            actual: p.n_vars(),
        });
    }
    let inv = sigma.inverse();
    PartialAssignment::new(
        p.n_vars(),
        p.entries()
            .iter()
            .map(|&(t, b)| {
                let e = indexer.unrank(t).expect("in range");
                (indexer.rank(&inv.map_edge(&e)).expect("valid"), b)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transposition_example() {
        let ix = VarIndexer::uniform(4, 2).unwrap();
        let p = PartialAssignment::new(6, vec![(ix.rank(&[0, 1]).unwrap(), true)]).unwrap();
        // The transposition of vertices 0 and 2 (labels 1 and 3 one-based).
        let sigma = VertexPerm::uniform(vec![2, 1, 0, 3]).unwrap();
        let q = apply_perm(&sigma, &p, &ix).unwrap();
        assert_eq!(q.entries(), &[(ix.rank(&[1, 2]).unwrap(), true)]);
        assert_eq!(apply_perm(&sigma.inverse(), &q, &ix).unwrap(), p);
        assert_eq!(apply_perm(&VertexPerm::identity(&ix), &p, &ix).unwrap(), p);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let ix = VarIndexer::partite(3, 2).unwrap();
        let sigma = VertexPerm::uniform(vec![0, 1, 2]).unwrap();
        assert!(apply_perm(&sigma, &PartialAssignment::empty(9), &ix).is_err());
        assert!(VertexPerm::uniform(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn var_perm_agrees_with_apply_perm() {
        let ix = VarIndexer::partite(3, 3).unwrap();
        let sigma = VertexPerm::partite(vec![vec![1, 2, 0], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
        let p = PartialAssignment::new(27, vec![(0, true), (5, false), (13, true)]).unwrap();
        let vp = sigma.var_perm(&ix).unwrap();
        assert_eq!(
            vp.apply_partial(&p).unwrap(),
            apply_perm(&sigma, &p, &ix).unwrap()
        );
        let x = BitString::from_index(27, 0x5a5_a5a5);
        let y = vp.apply_input(&x);
        assert_eq!(vp.index_permuter().apply(0x5a5_a5a5), y.to_index().unwrap());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<u32>> {
        Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn composition_is_contravariant(
            s in perm_strategy(6),
            t in perm_strategy(6),
            bits in proptest::collection::vec(proptest::option::of(any::<bool>()), 20),
        ) {
            let ix = VarIndexer::uniform(6, 3).unwrap();
            let p = PartialAssignment::new(
                20,
                bits.iter().enumerate().filter_map(|(i, b)| b.map(|b| (i, b))).collect(),
            ).unwrap();
            let sigma = VertexPerm::uniform(s).unwrap();
            let tau = VertexPerm::uniform(t).unwrap();
            let lhs = apply_perm(&sigma.compose(&tau).unwrap(), &p, &ix).unwrap();
            let rhs = apply_perm(&tau, &apply_perm(&sigma, &p, &ix).unwrap(), &ix).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(apply_perm(&sigma, &p, &ix).unwrap().len(), p.len());
        }
    }
}
