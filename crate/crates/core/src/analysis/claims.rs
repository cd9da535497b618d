use std::collections::HashMap;

use serde::Serialize;

use crate::constructions::{isqrt, Construction, LabeledMinterm};
use crate::error::{invalid, Error, Result};
use crate::symmetry::{binomial, Placement, PlacementConstraint, RoleMap};

/// Distances tallied individually up to this value; larger ones share the
/// last histogram bucket.
pub const HISTOGRAM_CUTOFF: usize = 4;

/// Default cap on enumerated placements or classes.
pub const DEFAULT_ENUM_CAP: u64 = 50_000_000;

/// Outcome of a distance-cluster enumeration around the canonical minterm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterReport {
    pub n: u32,
    pub k: u32,
    pub construction: Construction,
    pub constraint: String,
    pub radius: usize,
    /// Distinct translates within `radius` of the minterm.
    pub count: u64,
    /// Labeled placements within `radius` (symmetric placements of the
    /// distinguished sets can give the same translate).
    pub placements: u64,
    /// Labeled placements at distance `0..=HISTOGRAM_CUTOFF`, then beyond.
    pub histogram: Vec<u64>,
    /// Placements (or placement classes) examined.
    pub enumeration_size: u64,
    /// Bound on `|sigma(D1) \ D1|` when the enumeration was truncated.
    pub truncation: Option<usize>,
    /// `count / floor(sqrt n)` for the packed construction.
    pub ratio: Option<f64>,
}

/// The near translates behind a report, one placement per distinct
/// translate, sorted.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub report: ClusterReport,
    pub members: Vec<Placement>,
}

/// Support of the canonical translate as `(edge, value)` pairs.
pub(crate) fn canonical_support(m: &LabeledMinterm) -> Vec<(Vec<u32>, bool)> {
    let mut out = Vec::new();
    m.for_each_support_edge(m.layout().canonical(), |e, v| out.push((e.to_vec(), v)));
    out
}

/// Distance from the canonical translate (given by its support) to the
/// translate with role map `roles`, capped at `limit + 1`.
pub(crate) fn dist_from_support(
    m: &LabeledMinterm,
    support: &[(Vec<u32>, bool)],
    roles: &RoleMap,
    limit: usize,
) -> usize {
    let mut d = 0;
    for (e, v) in support {
        if m.eval_edge(roles, e) == Some(!v) {
            d += 1;
            if d > limit {
                break;
            }
        }
    }
    d
}

fn dedup_members(m: &LabeledMinterm, near: Vec<Placement>) -> Vec<Placement> {
    let mut by_fp: HashMap<u128, Placement> = HashMap::new();
    for p in near {
        let fp = m.translate_fingerprint(&p);
        by_fp
            .entry(fp)
            .and_modify(|q| *q = q.clone().min(p.clone()))
            .or_insert(p);
    }
    let mut members: Vec<Placement> = by_fp.into_values().collect();
    members.sort();
    members
}

/// Enumerates every placement with the anchor groups pinned and tallies
/// distances to the minterm.
pub fn anchored_cluster(m: &LabeledMinterm, radius: usize, cap: u64) -> Result<Cluster> {
    let layout = m.layout();
    let constraint = PlacementConstraint::fix(&m.anchor_groups());
    let support = canonical_support(m);
    let buckets = HISTOGRAM_CUTOFF + 2;
    let limit = radius.max(HISTOGRAM_CUTOFF);
    type Acc = (Vec<u64>, Vec<Placement>, u64);
    let (histogram, near, seen): Acc = layout.par_fold(
        &constraint,
        cap,
        || (vec![0; buckets], Vec::new(), 0),
        |(mut h, mut near, seen), p| {
            let d = dist_from_support(m, &support, &layout.roles(p), limit);
            h[d.min(buckets - 1)] += 1;
            if d <= radius {
                near.push(p.clone());
            }
            (h, near, seen + 1)
        },
        |(mut h, mut a, s), (h2, b, s2)| {
            for (x, y) in h.iter_mut().zip(h2) {
                *x += y;
            }
            a.extend(b);
            (h, a, s + s2)
        },
    )?;
    let placements = near.len() as u64;
    let members = dedup_members(m, near);
    let names: Vec<&str> = m
        .anchor_groups()
        .iter()
        .map(|&g| layout.groups()[g].name.as_str())
        .collect();
    Ok(Cluster {
        report: ClusterReport {
            n: m.n(),
            k: m.k(),
            construction: m.construction(),
            constraint: format!("fixed: {}", names.join(",")),
            radius,
            count: members.len() as u64,
            placements,
            histogram,
            enumeration_size: seen,
            truncation: None,
            ratio: None,
        },
        members,
    })
}

/// Distance-2 cluster sizes of the uniform construction with `sigma(B) = B`
/// over `grid`.
pub fn verify_claim1(k: u32, grid: &[u32], cap: u64) -> Result<Vec<ClusterReport>> {
    grid.iter()
        .map(|&n| Ok(anchored_cluster(&LabeledMinterm::thm1(n, k)?, 2, cap)?.report))
        .collect()
}

/// True when every report has the same count.
pub fn claim1_holds(reports: &[ClusterReport]) -> bool {
    reports.windows(2).all(|w| w[0].count == w[1].count) && reports.iter().all(|r| r.count >= 1)
}

/// True when `count / floor(sqrt n)` never exceeds its value at the first
/// grid point.
pub fn claim2_holds(reports: &[ClusterReport]) -> bool {
    let Some(c) = reports.first().and_then(|r| r.ratio) else {
        return false;
    };
    reports
        .iter()
        .all(|r| r.count >= 1 && r.ratio.is_some_and(|x| x <= c + 1e-12))
}

/// Where a vertex of a placement class comes from, relative to the
/// minterm's own partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct GroupChoice {
    /// Bitmask over the `C` vertices.
    c_mask: u64,
    from_d1: u32,
    from_d2: u32,
}

struct ClassSpace<'a> {
    m: &'a LabeledMinterm,
    support: Vec<(Vec<u32>, bool)>,
    c_size: u32,
    d1: Vec<u32>,
    d2: Vec<u32>,
    r_max: usize,
    radius: usize,
    cap: u64,
    classes: u64,
    histogram: Vec<u64>,
    near: Vec<Vec<GroupChoice>>,
    labeled: u128,
}

impl ClassSpace<'_> {
    fn group_sizes(&self) -> Vec<u32> {
        self.m
            .layout()
            .groups()
            .iter()
            .map(|g| g.size as u32)
            .collect()
    }

    /// Enumerates choices for groups `1..` (group 0 is `B`, pinned).
    fn run(
        &mut self,
        g: usize,
        used_c: u64,
        d1_used: u32,
        d2_used: u32,
        choices: &mut Vec<GroupChoice>,
    ) -> Result<()> {
        let sizes = self.group_sizes();
        if g == sizes.len() {
            return self.evaluate(choices);
        }
        let size = sizes[g];
        let is_d1 = g == sizes.len() - 1;
        let free_c: Vec<u32> = (0..self.c_size).filter(|&c| used_c >> c & 1 == 0).collect();
        let max_c = if is_d1 {
            (size as usize).min(self.r_max)
        } else {
            size as usize
        };
        for j in 0..=max_c.min(free_c.len()) {
            for_each_subset(&free_c, j, &mut |picked| {
                let c_mask = picked.iter().fold(0u64, |m, &v| m | 1 << v);
                let rest = size - j as u32;
                let max_d2 = if is_d1 { (self.r_max - j) as u32 } else { rest };
                for y in 0..=rest.min(max_d2) {
                    let x = rest - y;
                    if d1_used + x > self.d1.len() as u32 || d2_used + y > self.d2.len() as u32 {
                        continue;
                    }
                    choices.push(GroupChoice {
                        c_mask,
                        from_d1: x,
                        from_d2: y,
                    });
                    let r = self.run(g + 1, used_c | c_mask, d1_used + x, d2_used + y, choices);
                    choices.pop();
                    r?;
                }
                Ok(())
            })?;
        }
        Ok(())
    }

    fn multiplicity(&self, choices: &[GroupChoice]) -> u128 {
        let (mut a1, mut a2) = (self.d1.len() as u64, self.d2.len() as u64);
        let mut total = 1u128;
        for c in choices {
            total = total.saturating_mul(binomial(a1, c.from_d1 as u64));
            total = total.saturating_mul(binomial(a2, c.from_d2 as u64));
            a1 -= c.from_d1 as u64;
            a2 -= c.from_d2 as u64;
        }
        total
    }

    /// Placement with the lowest unused `D1` / `D2` vertices.
    fn representative(&self, choices: &[GroupChoice]) -> Placement {
        let canon = self.m.layout().canonical();
        let mut imgs = canon.0[self.m.layout().group_slots(0)].to_vec();
        let (mut i1, mut i2) = (0usize, 0usize);
        for c in choices {
            let mut g: Vec<u32> = (0..self.c_size)
                .filter(|&v| c.c_mask >> v & 1 == 1)
                .collect();
            g.extend(&self.d1[i1..i1 + c.from_d1 as usize]);
            g.extend(&self.d2[i2..i2 + c.from_d2 as usize]);
            i1 += c.from_d1 as usize;
            i2 += c.from_d2 as usize;
            g.sort_unstable();
            imgs.extend(g);
        }
        Placement(imgs)
    }

    fn evaluate(&mut self, choices: &[GroupChoice]) -> Result<()> {
        self.classes += 1;
        if self.classes > self.cap {
            return Err(Error::CapExceeded {
                cap: "claim-2 class enumeration",
                limit: self.cap,
                needed: self.classes,
            });
        }
        let rep = self.representative(choices);
        let roles = self.m.layout().roles(&rep);
        let limit = self.radius.max(HISTOGRAM_CUTOFF);
        let d = dist_from_support(self.m, &self.support, &roles, limit);
        let mult = self.multiplicity(choices);
        let b = d.min(self.histogram.len() - 1);
        self.histogram[b] = self.histogram[b].saturating_add(mult.min(u64::MAX as u128) as u64);
        if d <= self.radius {
            self.labeled += mult;
            self.near.push(choices.to_vec());
        }
        Ok(())
    }

    /// All labeled placements of a class.
    fn expand(&self, choices: &[GroupChoice], out: &mut Vec<Placement>, cap: u64) -> Result<()> {
        let base = self.m.layout().canonical().0[self.m.layout().group_slots(0)].to_vec();
        let mut stack = vec![(0usize, base, self.d1.clone(), self.d2.clone())];
        while let Some((g, imgs, a1, a2)) = stack.pop() {
            if g == choices.len() {
                out.push(Placement(imgs));
                if out.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        cap: "claim-2 class expansion",
                        limit: cap,
                        needed: out.len() as u64,
                    });
                }
                continue;
            }
            let c = choices[g];
            let cs: Vec<u32> = (0..self.c_size)
                .filter(|&v| c.c_mask >> v & 1 == 1)
                .collect();
            let mut picks1: Vec<Vec<u32>> = Vec::new();
            for_each_subset(&a1, c.from_d1 as usize, &mut |p| {
                picks1.push(p.to_vec());
                Ok(())
            })?;
            let mut picks2: Vec<Vec<u32>> = Vec::new();
            for_each_subset(&a2, c.from_d2 as usize, &mut |p| {
                picks2.push(p.to_vec());
                Ok(())
            })?;
            for s1 in &picks1 {
                for s2 in &picks2 {
                    let mut grp = cs.clone();
                    grp.extend(s1);
                    grp.extend(s2);
                    grp.sort_unstable();
                    let mut next = imgs.clone();
                    next.extend(grp);
                    let r1: Vec<u32> = a1.iter().copied().filter(|v| !s1.contains(v)).collect();
                    let r2: Vec<u32> = a2.iter().copied().filter(|v| !s2.contains(v)).collect();
                    stack.push((g + 1, next, r1, r2));
                }
            }
        }
        Ok(())
    }
}

/// Calls `f` with every `j`-subset of `items`, in lexicographic order.
fn for_each_subset(
    items: &[u32],
    j: usize,
    f: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    fn rec(
        items: &[u32],
        start: usize,
        pick: &mut Vec<u32>,
        left: usize,
        f: &mut impl FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        if left == 0 {
            return f(pick);
        }
        for i in start..=items.len() - left {
            pick.push(items[i]);
            rec(items, i + 1, pick, left - 1, f)?;
            pick.pop();
        }
        Ok(())
    }
    if j > items.len() {
        return Ok(());
    }
    rec(items, 0, &mut Vec::with_capacity(j), j, f)
}

/// Distance cluster of the packed construction with `sigma(B) = B`,
/// enumerated over placement classes: placements that differ only by
/// permuting `D1` or `D2` internally are at the same distance. Classes with
/// more than `r_max` images of `D1` outside `D1` are skipped, and the
/// report says so.
pub fn packed_cluster(
    m: &LabeledMinterm,
    radius: usize,
    r_max: usize,
    cap: u64,
) -> Result<Cluster> {
    if m.construction() != Construction::Thm2 {
        return Err(invalid(
            "class enumeration applies to the packed uniform construction",
        ));
    }
    let (l, _) = m.params();
    let layout = m.layout();
    let d1: Vec<u32> = layout.canonical().0[layout.group_slots(7)].to_vec();
    let b: Vec<u32> = layout.canonical().0[layout.group_slots(0)].to_vec();
    let c_size = 6 * l;
    let d2: Vec<u32> = (c_size..m.n())
        .filter(|v| !d1.contains(v) && !b.contains(v))
        .collect();
    let mut space = ClassSpace {
        m,
        support: canonical_support(m),
        c_size,
        d1,
        d2,
        r_max: r_max.min(isqrt(m.n()) as usize),
        radius,
        cap,
        classes: 0,
        histogram: vec![0; HISTOGRAM_CUTOFF + 2],
        near: Vec::new(),
        labeled: 0,
    };
    space.run(1, 0, 0, 0, &mut Vec::new())?;
    let mut near = Vec::new();
    for class in &space.near {
        space.expand(class, &mut near, cap)?;
    }
    let members = dedup_members(m, near);
    let r = isqrt(m.n());
    Ok(Cluster {
        report: ClusterReport {
            n: m.n(),
            k: m.k(),
            construction: m.construction(),
            constraint: "fixed: B".into(),
            radius,
            count: members.len() as u64,
            placements: space.labeled.min(u64::MAX as u128) as u64,
            histogram: space.histogram,
            enumeration_size: space.classes,
            truncation: Some(space.r_max),
            ratio: Some(members.len() as f64 / r as f64),
        },
        members,
    })
}

pub const DEFAULT_R_MAX: usize = 3;

/// Distance-2 cluster sizes of the packed construction over `grid`.
pub fn verify_claim2(k: u32, grid: &[u32], r_max: usize, cap: u64) -> Result<Vec<ClusterReport>> {
    grid.iter()
        .map(|&n| Ok(packed_cluster(&LabeledMinterm::thm2(n, k)?, 2, r_max, cap)?.report))
        .collect()
}

/// The distance-2 cluster around the minterm with anchors pinned, by the
/// method suited to the construction.
pub fn near_cluster(m: &LabeledMinterm, cap: u64) -> Result<Cluster> {
    match m.construction() {
        Construction::Thm2 => packed_cluster(m, 2, DEFAULT_R_MAX, cap),
        _ => anchored_cluster(m, 2, cap),
    }
}

/// Cluster-based upper bound on `s0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S0Bound {
    /// Possible anchor images.
    pub anchors: u128,
    /// Largest family of pairwise distance-2 translates through the minterm
    /// with the anchors pinned.
    pub clique: usize,
    /// Candidates the clique was drawn from.
    pub candidates: usize,
    pub bound: u128,
}

/// `s0 <= (#anchor images) * (max pairwise distance-2 family)`: translates
/// one flip away from a common 0-input are pairwise within distance 2.
pub fn cluster_s0_bound(m: &LabeledMinterm, cap: u64) -> Result<S0Bound> {
    let cluster = near_cluster(m, cap)?;
    let members = &cluster.members;
    let roles: Vec<RoleMap> = members.iter().map(|p| m.layout().roles(p)).collect();
    let adj: Vec<Vec<bool>> = (0..members.len())
        .map(|i| {
            (0..members.len())
                .map(|j| i != j && m.dist_to_roles(&members[i], &roles[j], 2) <= 2)
                .collect()
        })
        .collect();
    let clique = max_clique(&adj);
    let anchors = m.anchor_image_count();
    Ok(S0Bound {
        anchors,
        clique,
        candidates: members.len(),
        bound: anchors.saturating_mul(clique as u128),
    })
}

/// Size of a maximum clique (simple branch and bound; graphs here are small).
pub fn max_clique(adj: &[Vec<bool>]) -> usize {
    fn rec(adj: &[Vec<bool>], size: usize, cand: Vec<usize>, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + cand.len() <= *best {
            return;
        }
        for (idx, &v) in cand.iter().enumerate() {
            if size + cand.len() - idx <= *best {
                return;
            }
            let next: Vec<usize> = cand[idx + 1..]
                .iter()
                .copied()
                .filter(|&u| adj[v][u])
                .collect();
            rec(adj, size + 1, next, best);
        }
    }
    let mut best = 0;
    rec(adj, 0, (0..adj.len()).collect(), &mut best);
    best
}
