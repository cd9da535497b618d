use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfn::{sensitivity_profile, TruthTable};
use crate::error::{invalid, Result};
use crate::symmetry::{all_permutations, GroupAction, VarIndexer, VertexPerm};

/// Largest edge count for which graphs are enumerated explicitly.
pub const MAX_SCAN_VARS: usize = 20;

/// Isomorphism classes of k-uniform hypergraphs on n vertices, graphs being
/// bitmasks over the edge variables.
#[derive(Clone, Debug)]
pub struct IsoClasses {
    pub indexer: VarIndexer,
    /// Class id of every graph.
    pub class_of: Vec<u32>,
    /// Smallest graph in each class, in class-id order.
    pub representatives: Vec<u64>,
}

impl IsoClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Classes by minimizing each graph over all `n!` vertex permutations.
pub fn isomorphism_classes(n: u32, k: u32) -> Result<IsoClasses> {
    let indexer = VarIndexer::uniform(n, k)?;
    let vars = indexer.n_vars();
    if vars > MAX_SCAN_VARS {
        return Err(invalid(format!(
            "{vars} edge variables exceed the scan limit {MAX_SCAN_VARS}"
        )));
    }
    let perms = all_permutations(n)
        .into_iter()
        .map(|p| Ok(VertexPerm::uniform(p)?.var_perm(&indexer)?.index_permuter()))
        .collect::<Result<Vec<_>>>()?;
    let mut class_of = vec![0u32; 1 << vars];
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut representatives = Vec::new();
    for g in 0..1u64 << vars {
        let canon = perms.iter().map(|p| p.apply(g)).min().unwrap_or(g);
        let next = ids.len() as u32;
        let id = *ids.entry(canon).or_insert_with(|| {
            representatives.push(canon);
            next
        });
        class_of[g as usize] = id;
    }
    Ok(IsoClasses {
        indexer,
        class_of,
        representatives,
    })
}

/// Class count by union-find over the two `S_n` generators; an independent
/// check of [`isomorphism_classes`].
pub fn class_count_by_generators(n: u32, k: u32) -> Result<usize> {
    let indexer = VarIndexer::uniform(n, k)?;
    let vars = indexer.n_vars();
    if vars > MAX_SCAN_VARS {
        return Err(invalid(format!(
            "{vars} edge variables exceed the scan limit {MAX_SCAN_VARS}"
        )));
    }
    let gens: Vec<_> = GroupAction::full(&indexer)
        .generators()
        .iter()
        .map(|g| g.index_permuter())
        .collect();
    let mut parent: Vec<u32> = (0..1u32 << vars).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in 0..1u64 << vars {
        for p in &gens {
            let (a, b) = (
                find(&mut parent, g as u32),
                find(&mut parent, p.apply(g) as u32),
            );
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    Ok((0..1u32 << vars)
        .filter(|&x| find(&mut parent, x) == x)
        .count())
}

/// One scanned property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub n: u32,
    pub k: u32,
    /// Bit `i` is the property's value on isomorphism class `i`.
    pub property: u64,
    pub s: usize,
    pub s0: usize,
    pub s1: usize,
    /// Fewest edges among graphs with the property.
    pub m: u32,
    /// `ceil(n / (k + 2))`.
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub n: u32,
    pub k: u32,
    pub classes: usize,
    pub exhaustive: bool,
    pub properties: u64,
    /// Properties with `s < ceil(n / (k + 2))`.
    pub bound_violations: u64,
    /// For graphs (k = 2): properties with `s <= n / 4`.
    pub turan_violations: u64,
    pub min_s: usize,
}

/// Exhaustive enumeration is used when `2^classes - 2 <= cap`.
pub const DEFAULT_PROPERTY_CAP: u64 = 1 << 22;

/// Checks the linear sensitivity lower bound on nontrivial properties of
/// k-uniform hypergraphs on n vertices. Sampled mode draws nonconstant
/// class assignments uniformly at random (with repetition).
pub fn scan_properties(
    classes: &IsoClasses,
    mode: ScanMode,
    cap: u64,
    mut visit: impl FnMut(&ScanRecord),
) -> Result<ScanSummary> {
    let (n, k) = (classes.indexer.n(), classes.indexer.k());
    let c = classes.count();
    if c > 63 {
        return Err(invalid(format!(
            "{c} isomorphism classes do not fit a property mask"
        )));
    }
    let full = (1u64 << c) - 1;
    let bound = n.div_ceil(k + 2) as usize;
    let mut summary = ScanSummary {
        n,
        k,
        classes: c,
        exhaustive: false,
        properties: 0,
        bound_violations: 0,
        turan_violations: 0,
        min_s: usize::MAX,
    };
    let vars = classes.indexer.n_vars() as u32;
    let mut check = |property: u64, summary: &mut ScanSummary| -> Result<()> {
        let t = TruthTable::from_fn(vars, |g| property >> classes.class_of[g as usize] & 1 == 1)?;
        let prof = sensitivity_profile(&t);
        let m = (0..1u64 << vars)
            .filter(|&g| t.get(g))
            .map(|g| g.count_ones())
            .min()
            .unwrap_or(0);
        let rec = ScanRecord {
            n,
            k,
            property,
            s: prof.s.value,
            s0: prof.s0.value,
            s1: prof.s1.value,
            m,
            bound,
        };
        summary.properties += 1;
        summary.min_s = summary.min_s.min(rec.s);
        if rec.s < bound {
            summary.bound_violations += 1;
        }
        if k == 2 && 4 * rec.s <= n as usize {
            summary.turan_violations += 1;
        }
        visit(&rec);
        Ok(())
    };
    match mode {
        ScanMode::Exhaustive if full - 1 <= cap => {
            summary.exhaustive = true;
            for property in 1..full {
                check(property, &mut summary)?;
            }
        }
        ScanMode::Exhaustive => {
            return Err(invalid(format!(
                "2^{c} - 2 properties exceed the cap {cap}; use sampled mode"
            )))
        }
        ScanMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let property = loop {
                    let p = rng.gen::<u64>() & full;
                    if p != 0 && p != full {
                        break p;
                    }
                };
                check(property, &mut summary)?;
            }
        }
    }
    Ok(summary)
}
