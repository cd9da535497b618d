use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::boolfn::TruthTable;
use crate::error::{invalid, Error, Result};
use crate::symmetry::{AbelianLabeling, EdgeKind, VarIndexer, VarPerm, VertexPerm};

/// The permutation groups the constructions use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `S_n` acting on k-subsets.
    Symmetric { n: u32 },
    /// `S_n^{⊗k}` acting on k-tuples coordinate-wise.
    Partite { n: u32, k: u32 },
    /// `C_{m1} × … × C_{ml}` acting on itself by translation.
    Abelian { orders: Vec<u32> },
    /// Identity only.
    Trivial,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Symmetric { n } => write!(f, "sym:{n}"),
            Self::Partite { n, k } => write!(f, "partite:{n}:{k}"),
            Self::Abelian { orders } => {
                let parts: Vec<String> = orders.iter().map(u32::to_string).collect();
                write!(f, "abelian:{}", parts.join("x"))
            }
            Self::Trivial => write!(f, "trivial"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `sym:n`, `partite:n:k`, `abelian:m1xm2x…`, `trivial`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| invalid(format!("`{t}` is not a positive integer in group `{s}`")))
        };
        match parts.as_slice() {
            ["sym", n] => Ok(Self::Symmetric { n: num(n)? }),
            ["partite", n, k] => Ok(Self::Partite {
                n: num(n)?,
                k: num(k)?,
            }),
            ["abelian", ms] => {
                let orders = ms.split('x').map(num).collect::<Result<Vec<_>>>()?;
                if orders.is_empty() || orders.contains(&0) {
                    return Err(invalid(format!("bad abelian orders in `{s}`")));
                }
                Ok(Self::Abelian { orders })
            }
            ["trivial"] => Ok(Self::Trivial),
            _ => Err(invalid(format!(
                "unknown group `{s}`; expected sym:n, partite:n:k, abelian:m1xm2… or trivial"
            ))),
        }
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: u32) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A group bound to the variables it permutes.
#[derive(Clone, Debug)]
pub struct GroupAction {
    spec: GroupSpec,
    indexer: Option<VarIndexer>,
    n_vars: usize,
}

impl GroupAction {
    /// `indexer` is required for symmetric and partite groups; `n_vars` is
    /// taken from it (or from the product of orders for abelian groups).
    pub fn new(spec: GroupSpec, indexer: Option<VarIndexer>, n_vars: usize) -> Result<Self> {
        match (&spec, &indexer) {
            (GroupSpec::Symmetric { n }, Some(ix))
                if ix.kind() == EdgeKind::Uniform && ix.n() == *n => {}
            (GroupSpec::Partite { n, k }, Some(ix))
                if ix.kind() == EdgeKind::Partite && ix.n() == *n && ix.k() == *k => {}
            (GroupSpec::Abelian { orders }, _) => {
                let prod: u64 = orders.iter().map(|&m| m as u64).product();
                if prod != n_vars as u64 {
                    return Err(invalid(format!(
                        "abelian group of order {prod} cannot act on {n_vars} variables"
                    )));
                }
            }
            (GroupSpec::Trivial, _) => {}
            _ => {
                return Err(invalid(format!(
                    "group {spec} is incompatible with the variable indexer"
                )))
            }
        }
        let n_vars = indexer.as_ref().map_or(n_vars, VarIndexer::n_vars);
        Ok(Self {
            spec,
            indexer,
            n_vars,
        })
    }

    /// The natural action for an indexer: `S_n` on subsets, `S_n^{⊗k}` on tuples.
    pub fn full(indexer: &VarIndexer) -> Self {
        let spec = match indexer.kind() {
            EdgeKind::Uniform => GroupSpec::Symmetric { n: indexer.n() },
            EdgeKind::Partite => GroupSpec::Partite {
                n: indexer.n(),
                k: indexer.k(),
            },
        };
        Self {
            spec,
            indexer: Some(indexer.clone()),
            n_vars: indexer.n_vars(),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn indexer(&self) -> Option<&VarIndexer> {
        self.indexer.as_ref()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn order(&self) -> u128 {
        match &self.spec {
            GroupSpec::Symmetric { n } => factorial(*n),
            GroupSpec::Partite { n, k } => factorial(*n).saturating_pow(*k),
            GroupSpec::Abelian { orders } => orders.iter().map(|&m| m as u128).product(),
            GroupSpec::Trivial => 1,
        }
    }

    /// Generators as vertex permutations (symmetric and partite groups):
    /// the transposition `(0 1)` and the n-cycle `v -> v+1`, per coordinate
    /// for partite groups.
    pub fn vertex_generators(&self) -> Vec<VertexPerm> {
        let cycle_and_swap = |n: u32| -> Vec<Vec<u32>> {
            let mut gens = Vec::new();
            if n >= 2 {
                let mut t: Vec<u32> = (0..n).collect();
                t.swap(0, 1);
                gens.push(t);
            }
            if n >= 3 {
                gens.push((0..n).map(|v| (v + 1) % n).collect());
            }
            gens
        };
        match &self.spec {
            GroupSpec::Symmetric { n } => cycle_and_swap(*n)
                .into_iter()
                .map(VertexPerm::Uniform)
                .collect(),
            GroupSpec::Partite { n, k } => {
                let id: Vec<u32> = (0..*n).collect();
                let mut out = Vec::new();
                for c in 0..*k as usize {
                    for g in cycle_and_swap(*n) {
                        let mut coords = vec![id.clone(); *k as usize];
                        coords[c] = g;
                        out.push(VertexPerm::Partite(coords));
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }

    pub fn generators(&self) -> Vec<VarPerm> {
        match &self.spec {
            GroupSpec::Symmetric { .. } | GroupSpec::Partite { .. } => {
                let ix = self.indexer.as_ref().expect("checked at construction");
                self.vertex_generators()
                    .iter()
                    .map(|g| g.var_perm(ix).expect("compatible"))
                    .collect()
            }
            GroupSpec::Abelian { orders } => {
                let lab = AbelianLabeling::new(orders.clone(), self.n_vars).expect("checked");
                lab.generator_perms()
            }
            GroupSpec::Trivial => Vec::new(),
        }
    }

    /// Every group element as a vertex permutation (symmetric and partite).
    pub fn vertex_elements(&self, cap: u64) -> Result<Vec<VertexPerm>> {
        self.check_cap(cap)?;
        Ok(match &self.spec {
            GroupSpec::Symmetric { n } => all_permutations(*n)
                .into_iter()
                .map(VertexPerm::Uniform)
                .collect(),
            GroupSpec::Partite { n, k } => {
                let perms = all_permutations(*n);
                let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
                for _ in 0..*k {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            perms.iter().map(move |p| {
                                let mut v = prefix.clone();
                                v.push(p.clone());
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(VertexPerm::Partite).collect()
            }
            _ => Vec::new(),
        })
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                cap: "group order",
                limit: cap,
                needed: order.min(u64::MAX as u128) as u64,
            });
        }
        Ok(())
    }

    /// Every group element as a variable permutation.
    pub fn elements(&self, cap: u64) -> Result<Vec<VarPerm>> {
        self.check_cap(cap)?;
        match &self.spec {
            GroupSpec::Symmetric { .. } | GroupSpec::Partite { .. } => {
                let ix = self.indexer.as_ref().expect("checked");
                Ok(self
                    .vertex_elements(cap)?
                    .iter()
                    .map(|g| g.var_perm(ix).expect("compatible"))
                    .collect())
            }
            GroupSpec::Abelian { orders } => {
                let lab = AbelianLabeling::new(orders.clone(), self.n_vars)?;
                Ok((0..self.n_vars).map(|g| lab.translation(g)).collect())
            }
            GroupSpec::Trivial => Ok(vec![VarPerm::identity(self.n_vars)]),
        }
    }

    /// Size of the group generated by [`GroupAction::generators`], by closure.
    pub fn closure_order(&self, cap: u64) -> Result<usize> {
        let gens = self.generators();
        let id = VarPerm::identity(self.n_vars);
        let mut seen: HashSet<VarPerm> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let gh = g.compose(h);
                if seen.insert(gh.clone()) {
                    if seen.len() as u64 > cap {
                        return Err(Error::CapExceeded {
                            cap: "group closure",
                            limit: cap,
                            needed: seen.len() as u64,
                        });
                    }
                    frontier.push(gh);
                }
            }
        }
        Ok(seen.len())
    }
}

/// True iff `f(x) = f(σ(x))` for every generator `σ` and input `x`.
pub fn is_invariant(f: &TruthTable, group: &GroupAction) -> Result<bool> {
    if f.n_vars() as usize != group.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: group.n_vars(),
            actual: f.n_vars() as usize,
        });
    }
    Ok(group.generators().iter().all(|g| invariant_under(f, g)))
}

/// True iff `f(x) = f(σ(x))` for all `x`.
pub fn invariant_under(f: &TruthTable, sigma: &VarPerm) -> bool {
    let perm = sigma.index_permuter();
    (0..f.len()).all(|x| f.get(x) == f.get(perm.apply(x)))
}
