//! Placement descriptors: where the distinguished vertex sets of a minterm
//! land. Translates of a structured minterm are enumerated as placements
//! rather than as raw permutations, since the value rule only looks at which
//! distinguished set (if any) each vertex belongs to.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::symmetry::indexer::binomial;
use crate::symmetry::EdgeKind;

/// Role of a vertex under a placement: the slot it fills, or free.
pub type Role = u16;
pub const FREE: Role = Role::MAX;

/// A named set of interchangeable slots living in one vertex domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotGroup {
    pub name: String,
    /// 0 for uniform hypergraphs, the coordinate for partite ones.
    pub domain: usize,
    pub size: usize,
}

/// The slot structure of a minterm family plus its canonical placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    kind: EdgeKind,
    n: u32,
    k: u32,
    groups: Vec<SlotGroup>,
    offsets: Vec<usize>,
    slot_domain: Vec<usize>,
    canonical: Placement,
}

/// Slot images, concatenated in group order; each group's images are
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement(pub Vec<u32>);

/// Per-domain vertex roles of a placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleMap(pub Vec<Vec<Role>>);

impl RoleMap {
    #[inline]
    pub fn role(&self, domain: usize, v: u32) -> Role {
        self.0[domain][v as usize]
    }
}

/// Restrictions on enumerated placements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlacementConstraint {
    /// Groups pinned to their canonical images.
    pub fixed: Vec<usize>,
    /// `(group, r)`: at most `r` images of `group` outside its canonical set.
    pub max_new: Option<(usize, usize)>,
}

impl PlacementConstraint {
    pub fn fix(groups: &[usize]) -> Self {
        Self {
            fixed: groups.to_vec(),
            max_new: None,
        }
    }
}

impl Layout {
    pub fn new(
        kind: EdgeKind,
        n: u32,
        k: u32,
        groups: Vec<SlotGroup>,
        canonical: Placement,
    ) -> Result<Self> {
        let domains = match kind {
            EdgeKind::Uniform => 1,
            EdgeKind::Partite => k as usize,
        };
        let mut offsets = Vec::with_capacity(groups.len() + 1);
        let mut slot_domain = Vec::new();
        let mut total = 0;
        for g in &groups {
            if g.domain >= domains {
                return Err(invalid(format!(
                    "group {} has domain {} of {domains}",
                    g.name, g.domain
                )));
            }
            offsets.push(total);
            total += g.size;
            slot_domain.extend(std::iter::repeat_n(g.domain, g.size));
        }
        offsets.push(total);
        if total >= FREE as usize {
            return Err(invalid("too many slots"));
        }
        let layout = Self {
            kind,
            n,
            k,
            groups,
            offsets,
            slot_domain,
            canonical: Placement(Vec::new()),
        };
        layout.validate(&canonical)?;
        Ok(Self {
            canonical,
            ..layout
        })
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn domains(&self) -> usize {
        match self.kind {
            EdgeKind::Uniform => 1,
            EdgeKind::Partite => self.k as usize,
        }
    }

    pub fn groups(&self) -> &[SlotGroup] {
        &self.groups
    }

    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.name == name)
    }

    pub fn group_slots(&self, g: usize) -> std::ops::Range<usize> {
        self.offsets[g]..self.offsets[g + 1]
    }

    pub fn slot_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn slot_domain(&self, slot: usize) -> usize {
        self.slot_domain[slot]
    }

    pub fn canonical(&self) -> &Placement {
        &self.canonical
    }

    pub fn validate(&self, p: &Placement) -> Result<()> {
        if p.0.len() != self.slot_count() {
            return Err(invalid(format!(
                "placement has {} slots, layout has {}",
                p.0.len(),
                self.slot_count()
            )));
        }
        let mut used = vec![vec![false; self.n as usize]; self.domains()];
        for (gi, g) in self.groups.iter().enumerate() {
            let imgs = &p.0[self.group_slots(gi)];
            if imgs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("images of group {} must increase", g.name)));
            }
            for &v in imgs {
                let cell = used[g.domain]
                    .get_mut(v as usize)
                    .ok_or_else(|| invalid(format!("vertex {v} out of range")))?;
                if std::mem::replace(cell, true) {
                    return Err(invalid(format!(
                        "vertex {v} used twice in domain {}",
                        g.domain
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn roles(&self, p: &Placement) -> RoleMap {
        let mut roles = vec![vec![FREE; self.n as usize]; self.domains()];
        for (slot, &v) in p.0.iter().enumerate() {
            roles[self.slot_domain[slot]][v as usize] = slot as Role;
        }
        RoleMap(roles)
    }

    /// Vertices of `domain` not used by any slot, ascending.
    pub fn free_vertices(&self, p: &Placement, domain: usize) -> Vec<u32> {
        let mut used = vec![false; self.n as usize];
        for (slot, &v) in p.0.iter().enumerate() {
            if self.slot_domain[slot] == domain {
                used[v as usize] = true;
            }
        }
        (0..self.n).filter(|&v| !used[v as usize]).collect()
    }

    fn order(&self, c: &PlacementConstraint) -> Vec<usize> {
        let mut order: Vec<usize> = c.fixed.clone();
        order.extend((0..self.groups.len()).filter(|g| !c.fixed.contains(g)));
        order
    }

    /// Number of placements satisfying the fixed-group part of `c` (the
    /// `max_new` bound is not applied, so this is an upper bound then).
    pub fn count_placements(&self, c: &PlacementConstraint) -> u128 {
        let mut remaining = vec![self.n as u64; self.domains()];
        let mut total = 1u128;
        for g in self.order(c) {
            let grp = &self.groups[g];
            if !c.fixed.contains(&g) {
                total = total.saturating_mul(binomial(remaining[grp.domain], grp.size as u64));
            }
            remaining[grp.domain] = remaining[grp.domain].saturating_sub(grp.size as u64);
        }
        total
    }

    fn check_cap(&self, c: &PlacementConstraint, cap: u64) -> Result<()> {
        let count = self.count_placements(c);
        if count > cap as u128 {
            return Err(Error::CapExceeded {
                cap: "placement enumeration",
                limit: cap,
                needed: count.min(u64::MAX as u128) as u64,
            });
        }
        Ok(())
    }

    /// Visits every placement satisfying `c`, in lexicographic order of the
    /// group choices (fixed groups first).
    pub fn for_each_placement(
        &self,
        c: &PlacementConstraint,
        cap: u64,
        mut visit: impl FnMut(&Placement),
    ) -> Result<()> {
        self.check_cap(c, cap)?;
        let order = self.order(c);
        let mut state = EnumState::new(self);
        state.run(self, c, &order, 0, &mut visit);
        Ok(())
    }

    /// All placements satisfying `c`.
    pub fn placements(&self, c: &PlacementConstraint, cap: u64) -> Result<Vec<Placement>> {
        let mut out = Vec::new();
        self.for_each_placement(c, cap, |p| out.push(p.clone()))?;
        Ok(out)
    }

    /// Map-reduce over placements, partitioned by the choice made for the
    /// first non-fixed group. `reduce` must be associative; results do not
    /// depend on the worker count.
    pub fn par_fold<T: Send>(
        &self,
        c: &PlacementConstraint,
        cap: u64,
        identity: impl Fn() -> T + Sync + Send,
        fold: impl Fn(T, &Placement) -> T + Sync + Send,
        reduce: impl Fn(T, T) -> T + Sync + Send,
    ) -> Result<T> {
        self.check_cap(c, cap)?;
        let order = self.order(c);
        let split = order
            .iter()
            .position(|g| !c.fixed.contains(g))
            .unwrap_or(order.len());
        let depth = (split + 1).min(order.len());
        let mut prefixes: Vec<Vec<u32>> = Vec::new();
        {
            let mut state = EnumState::new(self);
            state.collect_prefixes(self, c, &order[..depth], 0, &mut prefixes);
        }
        let parts: Vec<T> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut acc = Some(identity());
                let mut state = EnumState::new(self);
                state.load_prefix(self, &order[..depth], prefix);
                state.run(self, c, &order, depth, &mut |p: &Placement| {
                    let a = acc.take().unwrap();
                    acc = Some(fold(a, p));
                });
                acc.unwrap()
            })
            .collect();
        Ok(parts.into_iter().fold(identity(), reduce))
    }
}

struct EnumState {
    used: Vec<Vec<bool>>,
    current: Placement,
}

impl EnumState {
    fn new(layout: &Layout) -> Self {
        Self {
            used: vec![vec![false; layout.n as usize]; layout.domains()],
            current: Placement(vec![0; layout.slot_count()]),
        }
    }

    fn set_group(&mut self, layout: &Layout, g: usize, imgs: &[u32], on: bool) {
        let d = layout.groups[g].domain;
        for (slot, &v) in layout.group_slots(g).zip(imgs) {
            self.used[d][v as usize] = on;
            if on {
                self.current.0[slot] = v;
            }
        }
    }

    /// Calls `each` for every admissible image set of group `g`.
    fn choices(
        &self,
        layout: &Layout,
        c: &PlacementConstraint,
        g: usize,
        mut each: impl FnMut(&[u32]),
    ) {
        let grp = &layout.groups[g];
        if c.fixed.contains(&g) {
            let imgs = &layout.canonical.0[layout.group_slots(g)];
            if imgs.iter().all(|&v| !self.used[grp.domain][v as usize]) {
                each(imgs);
            }
            return;
        }
        let avail: Vec<u32> = (0..layout.n)
            .filter(|&v| !self.used[grp.domain][v as usize])
            .collect();
        let limit = match c.max_new {
            Some((mg, r)) if mg == g => {
                let canon = &layout.canonical.0[layout.group_slots(g)];
                Some((canon, r))
            }
            _ => None,
        };
        let size = grp.size;
        if size > avail.len() {
            return;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        let mut imgs = vec![0u32; size];
        loop {
            for (slot, &i) in imgs.iter_mut().zip(&idx) {
                *slot = avail[i];
            }
            let ok = limit.is_none_or(|(canon, r)| {
                imgs.iter()
                    .filter(|v| canon.binary_search(v).is_err())
                    .count()
                    <= r
            });
            if ok {
                each(&imgs);
            }
            // Next combination.
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < avail.len() - size + p) else {
                return;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }

    fn run(
        &mut self,
        layout: &Layout,
        c: &PlacementConstraint,
        order: &[usize],
        depth: usize,
        visit: &mut dyn FnMut(&Placement),
    ) {
        if depth == order.len() {
            visit(&self.current);
            return;
        }
        let g = order[depth];
        let mut options: Vec<Vec<u32>> = Vec::new();
        self.choices(layout, c, g, |imgs| options.push(imgs.to_vec()));
        for imgs in options {
            self.set_group(layout, g, &imgs, true);
            self.run(layout, c, order, depth + 1, visit);
            self.set_group(layout, g, &imgs, false);
        }
    }

    fn collect_prefixes(
        &mut self,
        layout: &Layout,
        c: &PlacementConstraint,
        order: &[usize],
        depth: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == order.len() {
            out.push(
                order
                    .iter()
                    .flat_map(|&g| self.current.0[layout.group_slots(g)].to_vec())
                    .collect(),
            );
            return;
        }
        let g = order[depth];
        let mut options: Vec<Vec<u32>> = Vec::new();
        self.choices(layout, c, g, |imgs| options.push(imgs.to_vec()));
        for imgs in options {
            self.set_group(layout, g, &imgs, true);
            self.collect_prefixes(layout, c, order, depth + 1, out);
            self.set_group(layout, g, &imgs, false);
        }
    }

    fn load_prefix(&mut self, layout: &Layout, order: &[usize], prefix: &[u32]) {
        let mut at = 0;
        for &g in order {
            let size = layout.groups[g].size;
            let imgs = prefix[at..at + size].to_vec();
            self.set_group(layout, g, &imgs, true);
            at += size;
        }
    }
}
