use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boolfn::{BitString, PartialAssignment, TruthTable, MAX_VARS};
use crate::constructions::LabeledMinterm;
use crate::error::{invalid, Error, Result};
use crate::symmetry::{EdgeKind, GroupAction, GroupSpec, Placement, PlacementConstraint};

/// Which translate produced a [`Hit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslateRef {
    Placement(Placement),
    Index(usize),
}

/// A translate within the mismatch budget of an input, with the variables
/// where input and translate disagree.
#[derive(Clone, Debug)]
pub struct Hit {
    pub translate: TranslateRef,
    pub mismatches: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Source {
    Structured(LabeledMinterm),
    Explicit {
        minterm: PartialAssignment,
        translates: Vec<PartialAssignment>,
    },
}

/// `f(x) = 1` iff `x` is consistent with some group translate of a minterm.
#[derive(Clone, Debug)]
pub struct MintermFunction {
    source: Source,
    group: GroupAction,
}

/// Default bound on group elements expanded for explicit minterms.
pub const DEFAULT_GROUP_CAP: u64 = 5_000_000;

impl MintermFunction {
    /// Structured evaluation over placements of `m` under its full vertex
    /// group.
    pub fn structured(m: LabeledMinterm) -> Self {
        let group = GroupAction::full(m.indexer());
        Self {
            source: Source::Structured(m),
            group,
        }
    }

    /// Evaluation by scanning the distinct translates of `p` under `group`.
    pub fn explicit(p: PartialAssignment, group: GroupAction, cap: u64) -> Result<Self> {
        if group.n_vars() != p.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: group.n_vars(),
                actual: p.n_vars(),
            });
        }
        let mut seen = HashSet::new();
        let mut translates = Vec::new();
        for sigma in group.elements(cap)? {
            let t = sigma.apply_partial(&p)?;
            if seen.insert(t.entries().to_vec()) {
                translates.push(t);
            }
        }
        Ok(Self {
            source: Source::Explicit {
                minterm: p,
                translates,
            },
            group,
        })
    }

    /// Structured when `group` is the full group of the minterm's indexer,
    /// explicit otherwise.
    pub fn new(m: LabeledMinterm, group: GroupSpec, cap: u64) -> Result<Self> {
        let full = match m.indexer().kind() {
            EdgeKind::Uniform => GroupSpec::Symmetric { n: m.n() },
            EdgeKind::Partite => GroupSpec::Partite { n: m.n(), k: m.k() },
        };
        if group == full {
            return Ok(Self::structured(m));
        }
        let action = GroupAction::new(group, Some(m.indexer().clone()), m.indexer().n_vars())?;
        Self::explicit(m.to_partial(), action, cap)
    }

    pub fn n_vars(&self) -> usize {
        self.group.n_vars()
    }

    pub fn group(&self) -> &GroupAction {
        &self.group
    }

    pub fn labeled(&self) -> Option<&LabeledMinterm> {
        match &self.source {
            Source::Structured(m) => Some(m),
            Source::Explicit { .. } => None,
        }
    }

    pub fn minterm(&self) -> PartialAssignment {
        match &self.source {
            Source::Structured(m) => m.to_partial(),
            Source::Explicit { minterm, .. } => minterm.clone(),
        }
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// All translates (up to duplicates from symmetric placements) that
    /// disagree with `x` on at most `budget` support variables.
    pub fn near_translates(&self, x: &BitString, budget: usize) -> Result<Vec<Hit>> {
        self.check_len(x)?;
        Ok(self.scan(x, budget, false))
    }

    fn scan(&self, x: &BitString, budget: usize, first_exact: bool) -> Vec<Hit> {
        match &self.source {
            Source::Structured(m) => {
                let mut matcher = Matcher::new(m, x, budget, first_exact);
                matcher.group(0);
                matcher.hits
            }
            Source::Explicit { translates, .. } => {
                let mut hits = Vec::new();
                for (i, t) in translates.iter().enumerate() {
                    let mut mism = Vec::new();
                    for &(v, b) in t.entries() {
                        if x.get(v) != b {
                            mism.push(v);
                            if mism.len() > budget {
                                break;
                            }
                        }
                    }
                    if mism.len() <= budget {
                        let exact = mism.is_empty();
                        hits.push(Hit {
                            translate: TranslateRef::Index(i),
                            mismatches: mism,
                        });
                        if first_exact && exact {
                            break;
                        }
                    }
                }
                hits
            }
        }
    }

    pub fn eval(&self, x: &BitString) -> Result<bool> {
        self.check_len(x)?;
        Ok(self
            .scan(x, 0, true)
            .iter()
            .any(|h| h.mismatches.is_empty()))
    }

    /// Support variables of the translate behind a hit.
    pub fn support_of(&self, hit: &Hit) -> Vec<usize> {
        match (&self.source, &hit.translate) {
            (Source::Structured(m), TranslateRef::Placement(p)) => {
                let mut s = Vec::with_capacity(m.support_size() as usize);
                m.for_each_support_edge(p, |e, _| s.push(m.edge_var(e)));
                s.sort_unstable();
                s
            }
            (Source::Explicit { translates, .. }, TranslateRef::Index(i)) => {
                translates[*i].support().collect()
            }
            _ => unreachable!("hit from a different function"),
        }
    }

    /// `(f(x), sensitive variables of x)`.
    pub fn sensitive_set(&self, x: &BitString) -> Result<(bool, Vec<usize>)> {
        let hits = self.near_translates(x, 1)?;
        let flips: HashSet<usize> = hits
            .iter()
            .filter(|h| h.mismatches.len() == 1)
            .map(|h| h.mismatches[0])
            .collect();
        let mut exact = hits.iter().filter(|h| h.mismatches.is_empty());
        let Some(first) = exact.next() else {
            let mut s: Vec<usize> = flips.into_iter().collect();
            s.sort_unstable();
            return Ok((false, s));
        };
        // Flipping i kills f(x) = 1 only if every consistent translate
        // fixes i and no translate is repaired by the flip.
        let mut common = self.support_of(first);
        for h in exact {
            let s: HashSet<usize> = self.support_of(h).into_iter().collect();
            common.retain(|v| s.contains(v));
            if common.is_empty() {
                break;
            }
        }
        common.retain(|v| !flips.contains(v));
        Ok((true, common))
    }

    pub fn sensitivity_at(&self, x: &BitString) -> Result<usize> {
        Ok(self.sensitive_set(x)?.1.len())
    }

    /// A uniformly random group element applied to the minterm, with the
    /// placement behind it for structured minterms.
    pub fn random_translate<R: Rng>(&self, rng: &mut R) -> (PartialAssignment, Option<Placement>) {
        match &self.source {
            Source::Structured(m) => {
                let layout = m.layout();
                let pools: Vec<Vec<u32>> = (0..layout.domains())
                    .map(|_| {
                        let mut v: Vec<u32> = (0..m.n()).collect();
                        v.shuffle(rng);
                        v
                    })
                    .collect();
                let mut at = vec![0usize; layout.domains()];
                let mut imgs = Vec::with_capacity(layout.slot_count());
                for g in layout.groups() {
                    let mut grp = pools[g.domain][at[g.domain]..at[g.domain] + g.size].to_vec();
                    at[g.domain] += g.size;
                    grp.sort_unstable();
                    imgs.extend(grp);
                }
                let p = Placement(imgs);
                (m.translate(&p), Some(p))
            }
            Source::Explicit { translates, .. } => {
                (translates[rng.gen_range(0..translates.len())].clone(), None)
            }
        }
    }

    /// Every distinct translate, as partial assignments.
    pub fn translates(&self, cap: u64) -> Result<Vec<PartialAssignment>> {
        match &self.source {
            Source::Structured(m) => {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                m.layout()
                    .for_each_placement(&PlacementConstraint::default(), cap, |p| {
                        let t = m.translate(p);
                        if seen.insert(t.entries().to_vec()) {
                            out.push(t);
                        }
                    })?;
                Ok(out)
            }
            Source::Explicit { translates, .. } => Ok(translates.clone()),
        }
    }

    /// The full truth table, filled from every translate's subcube.
    pub fn materialize(&self, cap: u64) -> Result<TruthTable> {
        let n = self.n_vars();
        if n > MAX_VARS as usize {
            return Err(Error::BudgetExceeded {
                what: "truth-table variables",
                limit: MAX_VARS as usize,
                actual: n,
            });
        }
        let mut masks: Vec<(u64, u64)> = self
            .translates(cap)?
            .iter()
            .map(|t| {
                t.masks()
                    .ok_or_else(|| invalid("translate does not fit a mask"))
            })
            .collect::<Result<_>>()?;
        masks.sort_unstable();
        masks.dedup();
        Ok(fill_subcubes(n as u32, &masks))
    }
}

/// Truth table of the union of subcubes `{x : x & care == value}`.
pub fn fill_subcubes(n_vars: u32, masks: &[(u64, u64)]) -> TruthTable {
    let mut t = TruthTable::zeros(n_vars).expect("caller checked the variable budget");
    let full = if n_vars == 64 {
        u64::MAX
    } else {
        (1u64 << n_vars) - 1
    };
    let words = t.words_mut();
    for &(care, value) in masks {
        let free = !care & full;
        // Low free bits inside one word are filled as a block.
        let low = free & 0x3f;
        let block = {
            let mut m = 0u64;
            let mut sub = low;
            loop {
                m |= 1u64 << ((value & 0x3f) | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & low;
            }
            m
        };
        let high = free & !0x3f;
        let mut sub = high;
        loop {
            let x = (value & !0x3f) | sub;
            words[(x >> 6) as usize] |= block;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & high;
        }
    }
    t
}

/// Backtracking search over placements, pruning as soon as the completed
/// slot-only patterns exceed the mismatch budget.
struct Matcher<'a> {
    m: &'a LabeledMinterm,
    x: &'a BitString,
    budget: usize,
    first_exact: bool,
    done: bool,
    checks: Vec<Vec<usize>>,
    images: Vec<u32>,
    used: Vec<Vec<bool>>,
    mism: Vec<usize>,
    hits: Vec<Hit>,
}

impl<'a> Matcher<'a> {
    fn new(m: &'a LabeledMinterm, x: &'a BitString, budget: usize, first_exact: bool) -> Self {
        let layout = m.layout();
        let group_of_slot: Vec<usize> = (0..layout.groups().len())
            .flat_map(|g| layout.group_slots(g).map(move |_| g))
            .collect();
        let mut checks = vec![Vec::new(); layout.groups().len()];
        for (i, pat) in m.patterns().iter().enumerate() {
            if !pat.uses_free() {
                let g = pat
                    .slots
                    .iter()
                    .map(|&s| group_of_slot[s as usize])
                    .max()
                    .unwrap_or(0);
                checks[g].push(i);
            }
        }
        Self {
            m,
            x,
            budget,
            first_exact,
            done: false,
            checks,
            images: vec![0; layout.slot_count()],
            used: vec![vec![false; m.n() as usize]; layout.domains()],
            mism: Vec::new(),
            hits: Vec::new(),
        }
    }

    fn group(&mut self, g: usize) {
        if g == self.m.layout().groups().len() {
            self.leaf();
            return;
        }
        let start = self.m.layout().group_slots(g).start;
        self.slot(g, start, 0);
    }

    fn slot(&mut self, g: usize, s: usize, min_v: u32) {
        let layout = self.m.layout();
        if s == layout.group_slots(g).end {
            let saved = self.mism.len();
            if self.run_checks(g) {
                self.group(g + 1);
            }
            self.mism.truncate(saved);
            return;
        }
        let d = layout.slot_domain(s);
        for v in min_v..self.m.n() {
            if self.used[d][v as usize] {
                continue;
            }
            self.used[d][v as usize] = true;
            self.images[s] = v;
            self.slot(g, s + 1, v + 1);
            self.used[d][v as usize] = false;
            if self.done {
                return;
            }
        }
    }

    fn run_checks(&mut self, g: usize) -> bool {
        let uniform = self.m.layout().kind() == EdgeKind::Uniform;
        let mut edge = [0u32; 32];
        for &pi in &self.checks[g] {
            let pat = &self.m.patterns()[pi];
            let k = pat.slots.len();
            for (e, &s) in edge.iter_mut().zip(&pat.slots) {
                *e = self.images[s as usize];
            }
            if uniform {
                edge[..k].sort_unstable();
            }
            let var = self.m.edge_var(&edge[..k]);
            if self.x.get(var) != pat.value {
                self.mism.push(var);
                if self.mism.len() > self.budget {
                    return false;
                }
            }
        }
        true
    }

    fn leaf(&mut self) {
        let placement = Placement(self.images.clone());
        let saved = self.mism.len();
        let (x, budget, m) = (self.x, self.budget, self.m);
        let mism = &mut self.mism;
        let ok = m.walk_patterns(
            &placement,
            |p| p.uses_free(),
            |e, v| {
                let var = m.edge_var(e);
                if x.get(var) != v {
                    mism.push(var);
                }
                mism.len() <= budget
            },
        );
        if ok {
            let exact = self.mism.is_empty();
            self.hits.push(Hit {
                translate: TranslateRef::Placement(placement),
                mismatches: self.mism.clone(),
            });
            if exact && self.first_exact {
                self.done = true;
            }
        }
        self.mism.truncate(saved);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_near(p: &PartialAssignment, flips: usize, rng: &mut ChaCha8Rng) -> BitString {
        let mut x = BitString::zeros(p.n_vars());
        for i in 0..p.n_vars() {
            x.set(i, rng.gen_bool(0.3));
        }
        for &(i, b) in p.entries() {
            x.set(i, b);
        }
        for _ in 0..flips {
            x.flip(rng.gen_range(0..p.n_vars()));
        }
        x
    }

    #[test]
    fn thm1_basic_values() {
        let f = MintermFunction::structured(LabeledMinterm::thm1(9, 3).unwrap());
        let p = f.minterm();
        assert!(f.eval(&p.extend(false)).unwrap());
        assert!(f.eval(&p.extend(true)).unwrap());
        assert!(!f.eval(&BitString::zeros(84)).unwrap());
        assert!(!f.eval(&BitString::ones(84)).unwrap());
        assert!(f.eval(&BitString::zeros(3)).is_err());
    }

    #[test]
    fn structured_scan_matches_translate_list() {
        let m = LabeledMinterm::thm1(9, 3).unwrap();
        let f = MintermFunction::structured(m);
        let all = f.translates(1 << 20).unwrap();
        // The reversal of the W blocks fixes the rule: half as many translates
        // as placements.
        assert_eq!(all.len(), 181_440 / 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..40 {
            let base = &all[rng.gen_range(0..all.len())];
            let x = random_near(base, round % 3, &mut rng);
            let want_one = all.iter().any(|t| t.consistent(&x).unwrap());
            assert_eq!(f.eval(&x).unwrap(), want_one);
            let (v, sens) = f.sensitive_set(&x).unwrap();
            assert_eq!(v, want_one);
            let brute: Vec<usize> = (0..x.len())
                .filter(|&i| {
                    let mut y = x.clone();
                    y.flip(i);
                    all.iter().any(|t| t.consistent(&y).unwrap()) != want_one
                })
                .collect();
            assert_eq!(sens, brute, "round {round}");
        }
    }

    #[test]
    fn partite_structured_matches_naive_group_scan() {
        let m = LabeledMinterm::thm3(3, 3).unwrap();
        let naive = MintermFunction::new(m.clone(), "abelian:3".parse().unwrap(), 10).err();
        assert!(naive.is_some(), "group/indexer mismatch must be rejected");
        let action = GroupAction::new(
            GroupSpec::Partite { n: 3, k: 3 },
            Some(m.indexer().clone()),
            27,
        )
        .unwrap();
        let explicit = MintermFunction::explicit(m.to_partial(), action, 1000).unwrap();
        let f = MintermFunction::structured(m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = f.minterm();
        for round in 0..200 {
            let x = random_near(&p, round % 4, &mut rng);
            assert_eq!(f.eval(&x).unwrap(), explicit.eval(&x).unwrap());
            assert_eq!(
                f.sensitive_set(&x).unwrap(),
                explicit.sensitive_set(&x).unwrap()
            );
        }
    }

    #[test]
    fn fill_subcubes_matches_pointwise() {
        let masks = [(0b1010u64, 0b1000u64), (0b1_0000_0001, 0b1), (0x7f, 0x41)];
        let t = fill_subcubes(9, &masks);
        for x in 0..512u64 {
            let want = masks.iter().any(|&(c, v)| x & c == v);
            assert_eq!(t.get(x), want, "x = {x:b}");
        }
        let t = fill_subcubes(3, &[(0b100, 0b100)]);
        assert_eq!(t.count_ones(), 4);
    }
}
