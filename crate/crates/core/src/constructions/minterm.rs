use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boolfn::PartialAssignment;
use crate::error::{invalid, Result};
use crate::symmetry::{
    binomial, EdgeKind, Layout, Placement, Role, RoleMap, SlotGroup, VarIndexer, FREE,
};

/// Which construction a [`LabeledMinterm`] follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Uniform, `O(n^{ceil(k/3)})` sensitivity.
    Thm1,
    /// Uniform, `k = 3l+1`, packs `floor(sqrt n)` copies through `D1`.
    Thm2,
    /// k-partite, table pattern over special vectors.
    Thm3,
    /// k-partite, `k = 3l+1`, extra coordinate with `floor(sqrt n)` values.
    Thm4,
}

impl Construction {
    pub fn from_number(t: u32) -> Result<Self> {
        match t {
            1 => Ok(Self::Thm1),
            2 => Ok(Self::Thm2),
            3 => Ok(Self::Thm3),
            4 => Ok(Self::Thm4),
            _ => Err(invalid(format!(
                "no construction numbered {t}; expected 1-4"
            ))),
        }
    }

    pub fn kind(self) -> EdgeKind {
        match self {
            Self::Thm1 | Self::Thm2 => EdgeKind::Uniform,
            Self::Thm3 | Self::Thm4 => EdgeKind::Partite,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Self::Thm1 => "thm1",
            Self::Thm2 => "thm2",
            Self::Thm3 => "thm3",
            Self::Thm4 => "thm4",
        }
    }
}

/// `(k1, k2)` with `k1 + 2 k2 = k` and both at most `ceil(k/3)`.
pub fn split_k(k: u32) -> Result<(u32, u32)> {
    if k < 3 {
        return Err(invalid(format!("k = {k}: the constructions need k >= 3")));
    }
    Ok(match k % 3 {
        0 => (k / 3, k / 3),
        1 => (k.div_ceil(3), (k - 1) / 3),
        _ => ((k - 2) / 3, (k + 1) / 3),
    })
}

pub fn isqrt(n: u32) -> u32 {
    let mut r = (n as f64).sqrt() as u32;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// What a slot stands for in the value rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlotKind {
    B,
    /// `W_{i+1}`.
    W(u8),
    D1,
    /// Partite special value `v + 1` of its coordinate.
    Special(u8),
    /// Partite `d`-coordinate value inside `[floor(sqrt n)]`.
    DSet,
}

/// A family of non-star variables of a translate: the edges made of the
/// given slot images plus free vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    /// Uniform: sorted slot ids. Partite: one entry per coordinate, a slot id
    /// or [`FREE`].
    pub slots: Vec<Role>,
    /// Uniform: number of free vertices in each edge.
    pub free: usize,
    pub value: bool,
}

impl Pattern {
    /// Whether the pattern ranges over free vertices.
    pub fn uses_free(&self) -> bool {
        self.free > 0 || self.slots.contains(&FREE)
    }
}

/// A structured minterm: the slot layout of its distinguished vertex sets
/// plus the construction's value rule.
#[derive(Clone, Debug)]
pub struct LabeledMinterm {
    construction: Construction,
    indexer: VarIndexer,
    layout: Layout,
    k1: u32,
    k2: u32,
    slot_kinds: Vec<SlotKind>,
    patterns: Vec<Pattern>,
}

fn uniform_groups(k1: u32, k2: u32, n: u32, d1: u32) -> (Vec<SlotGroup>, Vec<u32>, Vec<SlotKind>) {
    let mut groups = vec![SlotGroup {
        name: "B".into(),
        domain: 0,
        size: k1 as usize,
    }];
    let mut canon: Vec<u32> = (n - k1..n).collect();
    let mut kinds = vec![SlotKind::B; k1 as usize];
    for i in 0..6u32 {
        groups.push(SlotGroup {
            name: format!("W{}", i + 1),
            domain: 0,
            size: k2 as usize,
        });
        canon.extend(i * k2..(i + 1) * k2);
        kinds.extend(std::iter::repeat_n(SlotKind::W(i as u8), k2 as usize));
    }
    if d1 > 0 {
        groups.push(SlotGroup {
            name: "D1".into(),
            domain: 0,
            size: d1 as usize,
        });
        canon.extend(6 * k2..6 * k2 + d1);
        kinds.extend(std::iter::repeat_n(SlotKind::D1, d1 as usize));
    }
    (groups, canon, kinds)
}

/// Groups for one block of partite coordinates `lo..hi`: the last
/// coordinate carries special values 1, 2, 3 (or just 1 when `three` is
/// false), the others value 1.
fn partite_block(
    lo: u32,
    hi: u32,
    three: bool,
    out: &mut (Vec<SlotGroup>, Vec<u32>, Vec<SlotKind>),
) {
    for j in lo..hi {
        let values = if three && j == hi - 1 { 3 } else { 1 };
        for v in 0..values {
            out.0.push(SlotGroup {
                name: format!("x{j}={}", v + 1),
                domain: j as usize,
                size: 1,
            });
            out.1.push(v);
            out.2.push(SlotKind::Special(v as u8));
        }
    }
}

impl LabeledMinterm {
    /// Smallest `n` accepted by [`LabeledMinterm::thm1`].
    pub fn thm1_min_n(k: u32) -> Result<u32> {
        let (k1, k2) = split_k(k)?;
        Ok(6 * k2 + k1 + 2)
    }

    /// The uniform construction: `B` = last `k1` vertices, `W_i` consecutive
    /// blocks of `k2` vertices from the front, `D` the rest (`|D| >= 2`).
    pub fn thm1(n: u32, k: u32) -> Result<Self> {
        let (k1, k2) = split_k(k)?;
        let min = Self::thm1_min_n(k)?;
        if n < min {
            return Err(invalid(format!(
                "thm1 with k = {k} needs n >= {min}, got {n}"
            )));
        }
        let (groups, canon, kinds) = uniform_groups(k1, k2, n, 0);
        Self::build(
            Construction::Thm1,
            VarIndexer::uniform(n, k)?,
            groups,
            canon,
            kinds,
            k1,
            k2,
        )
    }

    pub fn thm2_min_n(k: u32, n: u32) -> Result<u32> {
        if k < 4 || k % 3 != 1 {
            return Err(invalid(format!("thm2 needs k = 3l+1 >= 4, got k = {k}")));
        }
        let l = (k - 1) / 3;
        Ok(7 * l + isqrt(n) + 3)
    }

    /// The packed construction for `k = 3l + 1`: as [`LabeledMinterm::thm1`]
    /// with `k1 = k2 = l`, plus `D1` = the first `floor(sqrt n)` vertices of
    /// `D`.
    pub fn thm2(n: u32, k: u32) -> Result<Self> {
        let min = Self::thm2_min_n(k, n)?;
        if n < min {
            return Err(invalid(format!(
                "thm2 with k = {k} needs n >= {min}, got {n}"
            )));
        }
        let l = (k - 1) / 3;
        let (groups, canon, kinds) = uniform_groups(l, l, n, isqrt(n));
        Self::build(
            Construction::Thm2,
            VarIndexer::uniform(n, k)?,
            groups,
            canon,
            kinds,
            l,
            l,
        )
    }

    /// The k-partite table construction. Coordinates `0..k2` form `a`,
    /// `k2..2k2` form `b`, the last `k1` form `c`; special vectors are
    /// `(1,…,1,v)` for `v = 1, 2, 3`. Needs `n >= 3`.
    pub fn thm3(n: u32, k: u32) -> Result<Self> {
        let (k1, k2) = split_k(k)?;
        if n < 3 {
            return Err(invalid(format!(
                "thm3 needs n >= 3 special values, got n = {n}"
            )));
        }
        let mut g = (Vec::new(), Vec::new(), Vec::new());
        partite_block(0, k2, true, &mut g);
        partite_block(k2, 2 * k2, true, &mut g);
        partite_block(2 * k2, k, false, &mut g);
        Self::build(
            Construction::Thm3,
            VarIndexer::partite(n, k)?,
            g.0,
            g.1,
            g.2,
            k1,
            k2,
        )
    }

    /// The k-partite construction for `k = 3l + 1`: blocks `a, b, c` of `l`
    /// coordinates and one `d` coordinate whose first `floor(sqrt n)` values
    /// carry the table pattern.
    pub fn thm4(n: u32, k: u32) -> Result<Self> {
        if k < 4 || k % 3 != 1 {
            return Err(invalid(format!("thm4 needs k = 3l+1 >= 4, got k = {k}")));
        }
        if n < 4 {
            return Err(invalid(format!("thm4 needs n >= 4, got n = {n}")));
        }
        let l = (k - 1) / 3;
        let mut g = (Vec::new(), Vec::new(), Vec::new());
        partite_block(0, l, true, &mut g);
        partite_block(l, 2 * l, true, &mut g);
        partite_block(2 * l, 3 * l, false, &mut g);
        let r = isqrt(n);
        g.0.push(SlotGroup {
            name: format!("x{}<={r}", 3 * l),
            domain: 3 * l as usize,
            size: r as usize,
        });
        g.1.extend(0..r);
        g.2.extend(std::iter::repeat_n(SlotKind::DSet, r as usize));
        Self::build(
            Construction::Thm4,
            VarIndexer::partite(n, k)?,
            g.0,
            g.1,
            g.2,
            l,
            l,
        )
    }

    pub fn new(construction: Construction, n: u32, k: u32) -> Result<Self> {
        match construction {
            Construction::Thm1 => Self::thm1(n, k),
            Construction::Thm2 => Self::thm2(n, k),
            Construction::Thm3 => Self::thm3(n, k),
            Construction::Thm4 => Self::thm4(n, k),
        }
    }

    fn build(
        construction: Construction,
        indexer: VarIndexer,
        groups: Vec<SlotGroup>,
        canon: Vec<u32>,
        slot_kinds: Vec<SlotKind>,
        k1: u32,
        k2: u32,
    ) -> Result<Self> {
        let layout = Layout::new(
            indexer.kind(),
            indexer.n(),
            indexer.k(),
            groups,
            Placement(canon),
        )?;
        let mut m = Self {
            construction,
            indexer,
            layout,
            k1,
            k2,
            slot_kinds,
            patterns: Vec::new(),
        };
        m.patterns = m.derive_patterns();
        Ok(m)
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn indexer(&self) -> &VarIndexer {
        &self.indexer
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn n(&self) -> u32 {
        self.indexer.n()
    }

    pub fn k(&self) -> u32 {
        self.indexer.k()
    }

    /// `(k1, k2)`; `(l, l)` for the `3l + 1` constructions.
    pub fn params(&self) -> (u32, u32) {
        (self.k1, self.k2)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Groups whose images play the role of `B` (uniform) or `c` (partite):
    /// claims compare translates sharing these images.
    pub fn anchor_groups(&self) -> Vec<usize> {
        match self.construction {
            Construction::Thm1 | Construction::Thm2 => vec![0],
            Construction::Thm3 | Construction::Thm4 => {
                let lo = 2 * self.k2 as usize;
                let hi = lo + self.k1 as usize;
                (0..self.layout.groups().len())
                    .filter(|&g| (lo..hi).contains(&self.layout.groups()[g].domain))
                    .collect()
            }
        }
    }

    /// Number of distinct anchor images: `C(n, k1)` or `n^{|c|}`.
    pub fn anchor_image_count(&self) -> u128 {
        let n = self.n() as u64;
        match self.construction {
            Construction::Thm1 | Construction::Thm2 => binomial(n, self.k1 as u64),
            Construction::Thm3 | Construction::Thm4 => (n as u128).pow(self.k1),
        }
    }

    /// Value of the rule on an edge whose vertices have the given roles
    /// (edge order for partite, any order for uniform).
    pub fn eval_roles(&self, roles: &[Role]) -> Option<bool> {
        match self.construction {
            Construction::Thm1 | Construction::Thm2 => self.eval_uniform(roles),
            Construction::Thm3 | Construction::Thm4 => self.eval_partite(roles),
        }
    }

    fn eval_uniform(&self, roles: &[Role]) -> Option<bool> {
        let (mut nb, mut d1, mut free) = (0u32, 0u32, 0u32);
        let mut w = [0u32; 6];
        for &r in roles {
            if r == FREE {
                free += 1;
                continue;
            }
            match self.slot_kinds[r as usize] {
                SlotKind::B => nb += 1,
                SlotKind::W(i) => w[i as usize] += 1,
                SlotKind::D1 => d1 += 1,
                _ => unreachable!("partite slot in a uniform minterm"),
            }
        }
        if nb != self.k1 {
            return None;
        }
        let k2 = self.k2;
        let c: u32 = w.iter().sum();
        let consecutive_pair = || {
            let hit: Vec<usize> = (0..6).filter(|&i| w[i] > 0).collect();
            hit.len() == 2 && hit[1] == hit[0] + 1 && w[hit[0]] == k2 && w[hit[1]] == k2
        };
        let holds_w3_or_w4 = w[2] == k2 || w[3] == k2;
        match self.construction {
            Construction::Thm1 => {
                if c == 2 * k2 {
                    Some(consecutive_pair())
                } else if c >= k2 && c < 2 * k2 {
                    Some(!holds_w3_or_w4)
                } else {
                    None
                }
            }
            _ => {
                if c == 2 * k2 && d1 + free == 1 {
                    Some(free == 1 || consecutive_pair())
                } else if c >= k2 && c < 2 * k2 && d1 >= 1 {
                    Some(!holds_w3_or_w4)
                } else {
                    None
                }
            }
        }
    }

    /// `Some(v)` when coordinates `lo..hi` form special vector `v` (1..=3).
    fn special_vector(&self, roles: &[Role], lo: usize, hi: usize) -> Option<u8> {
        let special = |r: Role| match self.slot_kinds[r as usize] {
            SlotKind::Special(v) => v,
            _ => unreachable!("special coordinate with a non-special slot"),
        };
        if roles[lo..hi - 1]
            .iter()
            .any(|&r| r == FREE || special(r) != 0)
        {
            return None;
        }
        let last = roles[hi - 1];
        (last != FREE).then(|| special(last) + 1)
    }

    /// The table pattern over special row/column vectors.
    fn table(a: Option<u8>, b: Option<u8>) -> Option<bool> {
        match (a, b) {
            (Some(1), Some(_)) => Some(false),
            (Some(1), None) => Some(true),
            (Some(2), Some(1 | 2)) => Some(false),
            (Some(2), _) => Some(true),
            (Some(3), Some(1 | 3)) => Some(true),
            (Some(3), _) => Some(false),
            (None, Some(1 | 2)) => Some(true),
            (None, Some(3)) => Some(false),
            _ => None,
        }
    }

    fn eval_partite(&self, roles: &[Role]) -> Option<bool> {
        let (k1, k2) = (self.k1 as usize, self.k2 as usize);
        match self.construction {
            Construction::Thm3 => {
                if roles[2 * k2..2 * k2 + k1].contains(&FREE) {
                    return None;
                }
                let a = self.special_vector(roles, 0, k2);
                let b = self.special_vector(roles, k2, 2 * k2);
                Self::table(a, b)
            }
            _ => {
                let l = k1;
                if roles[2 * l..3 * l].contains(&FREE) {
                    return None;
                }
                let a = self.special_vector(roles, 0, l);
                let b = self.special_vector(roles, l, 2 * l);
                if roles[3 * l] == FREE {
                    (a.is_some() && b.is_some()).then_some(true)
                } else {
                    Self::table(a, b)
                }
            }
        }
    }

    /// Value of the translate described by `roles` on an edge (uniform:
    /// vertex list; partite: tuple).
    #[inline]
    pub fn eval_edge(&self, roles: &RoleMap, edge: &[u32]) -> Option<bool> {
        let mut buf = [FREE; 32];
        let k = edge.len();
        match self.construction.kind() {
            EdgeKind::Uniform => {
                for (slot, &v) in buf.iter_mut().zip(edge) {
                    *slot = roles.role(0, v);
                }
            }
            EdgeKind::Partite => {
                for (j, (slot, &v)) in buf.iter_mut().zip(edge).enumerate() {
                    *slot = roles.role(j, v);
                }
            }
        }
        self.eval_roles(&buf[..k])
    }

    fn free_region(&self, domain: usize) -> usize {
        let used = (0..self.layout.slot_count())
            .filter(|&s| self.layout.slot_domain(s) == domain)
            .count();
        self.n() as usize - used
    }

    fn derive_patterns(&self) -> Vec<Pattern> {
        let k = self.k() as usize;
        let mut out = Vec::new();
        match self.construction.kind() {
            EdgeKind::Uniform => {
                let slots = self.layout.slot_count();
                let free_avail = self.free_region(0);
                let mut chosen: Vec<Role> = Vec::new();
                fn rec(
                    m: &LabeledMinterm,
                    start: usize,
                    slots: usize,
                    k: usize,
                    free_avail: usize,
                    chosen: &mut Vec<Role>,
                    out: &mut Vec<Pattern>,
                ) {
                    let t = k - chosen.len();
                    if t <= free_avail {
                        let mut roles = chosen.clone();
                        roles.extend(std::iter::repeat_n(FREE, t));
                        if let Some(value) = m.eval_roles(&roles) {
                            out.push(Pattern {
                                slots: chosen.clone(),
                                free: t,
                                value,
                            });
                        }
                    }
                    if chosen.len() == k {
                        return;
                    }
                    for s in start..slots {
                        chosen.push(s as Role);
                        rec(m, s + 1, slots, k, free_avail, chosen, out);
                        chosen.pop();
                    }
                }
                rec(self, 0, slots, k, free_avail, &mut chosen, &mut out);
            }
            EdgeKind::Partite => {
                let options: Vec<Vec<Role>> = (0..k)
                    .map(|j| {
                        let mut o: Vec<Role> = (0..self.layout.slot_count())
                            .filter(|&s| self.layout.slot_domain(s) == j)
                            .map(|s| s as Role)
                            .collect();
                        if self.free_region(j) > 0 {
                            o.push(FREE);
                        }
                        o
                    })
                    .collect();
                let mut idx = vec![0usize; k];
                'outer: loop {
                    let roles: Vec<Role> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
                    if let Some(value) = self.eval_roles(&roles) {
                        out.push(Pattern {
                            slots: roles,
                            free: 0,
                            value,
                        });
                    }
                    for j in (0..k).rev() {
                        idx[j] += 1;
                        if idx[j] < options[j].len() {
                            continue 'outer;
                        }
                        idx[j] = 0;
                    }
                    break;
                }
            }
        }
        out
    }

    /// Support size `|p|` (the same for every translate).
    pub fn support_size(&self) -> u128 {
        self.patterns
            .iter()
            .map(|pat| match self.construction.kind() {
                EdgeKind::Uniform => binomial(self.free_region(0) as u64, pat.free as u64),
                EdgeKind::Partite => pat
                    .slots
                    .iter()
                    .enumerate()
                    .map(|(j, &r)| {
                        if r == FREE {
                            self.free_region(j) as u128
                        } else {
                            1
                        }
                    })
                    .product(),
            })
            .sum()
    }

    /// Visits the non-star edges of the translate at `placement` with their
    /// values. Edges are sorted vertex lists (uniform) or tuples (partite).
    pub fn for_each_support_edge(
        &self,
        placement: &Placement,
        mut visit: impl FnMut(&[u32], bool),
    ) {
        self.walk_patterns(
            placement,
            |_| true,
            |e, v| {
                visit(e, v);
                true
            },
        );
    }

    /// Like [`Self::for_each_support_edge`] restricted to patterns passing
    /// `keep`; stops as soon as `visit` returns false. Returns false if
    /// stopped early.
    pub(crate) fn walk_patterns(
        &self,
        placement: &Placement,
        keep: impl Fn(&Pattern) -> bool,
        mut visit: impl FnMut(&[u32], bool) -> bool,
    ) -> bool {
        let k = self.k() as usize;
        let mut edge = vec![0u32; k];
        match self.construction.kind() {
            EdgeKind::Uniform => {
                let free = self.layout.free_vertices(placement, 0);
                let mut idx: Vec<usize> = Vec::with_capacity(k);
                for pat in self.patterns.iter().filter(|p| keep(p)) {
                    let fixed: Vec<u32> =
                        pat.slots.iter().map(|&s| placement.0[s as usize]).collect();
                    let t = pat.free;
                    idx.clear();
                    idx.extend(0..t);
                    loop {
                        edge[..fixed.len()].copy_from_slice(&fixed);
                        for (slot, &i) in edge[fixed.len()..].iter_mut().zip(&idx) {
                            *slot = free[i];
                        }
                        edge.sort_unstable();
                        if !visit(&edge, pat.value) {
                            return false;
                        }
                        let Some(pos) = (0..t).rev().find(|&p| idx[p] < free.len() - t + p) else {
                            break;
                        };
                        idx[pos] += 1;
                        for q in pos + 1..t {
                            idx[q] = idx[q - 1] + 1;
                        }
                    }
                }
            }
            EdgeKind::Partite => {
                let frees: Vec<Vec<u32>> = (0..k)
                    .map(|j| self.layout.free_vertices(placement, j))
                    .collect();
                for pat in self.patterns.iter().filter(|p| keep(p)) {
                    let free_coords: Vec<usize> =
                        (0..k).filter(|&j| pat.slots[j] == FREE).collect();
                    for (j, &s) in pat.slots.iter().enumerate() {
                        if s != FREE {
                            edge[j] = placement.0[s as usize];
                        }
                    }
                    let mut idx = vec![0usize; free_coords.len()];
                    'outer: loop {
                        for (&j, &i) in free_coords.iter().zip(&idx) {
                            edge[j] = frees[j][i];
                        }
                        if !visit(&edge, pat.value) {
                            return false;
                        }
                        for q in (0..free_coords.len()).rev() {
                            idx[q] += 1;
                            if idx[q] < frees[free_coords[q]].len() {
                                continue 'outer;
                            }
                            idx[q] = 0;
                        }
                        break;
                    }
                }
            }
        }
        true
    }

    /// Variable index of an edge produced by [`Self::for_each_support_edge`].
    #[inline]
    pub fn edge_var(&self, edge: &[u32]) -> usize {
        match self.construction.kind() {
            EdgeKind::Uniform => self.indexer.rank_sorted(edge),
            EdgeKind::Partite => self.indexer.rank_tuple(edge),
        }
    }

    /// Order-independent 128-bit hash of the translate at `placement`;
    /// equal translates give equal fingerprints.
    pub fn translate_fingerprint(&self, placement: &Placement) -> u128 {
        let (mut a, mut b) = (0u64, 0u64);
        self.for_each_support_edge(placement, |e, v| {
            let key = (self.edge_var(e) as u64) << 1 | v as u64;
            a = a.wrapping_add(mix64(key));
            b = b.wrapping_add(mix64(key ^ 0x9e37_79b9_7f4a_7c15));
        });
        (a as u128) << 64 | b as u128
    }

    /// The translate at `placement` as an explicit partial assignment.
    pub fn translate(&self, placement: &Placement) -> PartialAssignment {
        let mut entries = Vec::with_capacity(self.support_size() as usize);
        self.for_each_support_edge(placement, |e, v| entries.push((self.edge_var(e), v)));
        PartialAssignment::new(self.indexer.n_vars(), entries).expect("support edges are distinct")
    }

    /// The minterm itself.
    pub fn to_partial(&self) -> PartialAssignment {
        self.translate(self.layout.canonical())
    }

    /// Value of the canonical minterm on an edge, `None` for star.
    pub fn value_at(&self, edge: &[u32]) -> Result<Option<bool>> {
        let mut e = edge.to_vec();
        self.indexer.rank(&e)?;
        if self.construction.kind() == EdgeKind::Uniform {
            e.sort_unstable();
        }
        Ok(self.eval_edge(&self.layout.roles(self.layout.canonical()), &e))
    }

    /// `dist(translate(a), translate(b))` without materializing either
    /// translate: walks the support of `a` and evaluates `b`'s rule there.
    /// Returns `limit + 1` as soon as the distance is known to exceed `limit`.
    pub fn symbolic_dist(&self, a: &Placement, b: &Placement, limit: usize) -> usize {
        self.dist_to_roles(a, &self.layout.roles(b), limit)
    }

    /// [`Self::symbolic_dist`] with `b` given by its role map.
    pub fn dist_to_roles(&self, a: &Placement, roles_b: &RoleMap, limit: usize) -> usize {
        let mut d = 0;
        self.walk_patterns(
            a,
            |_| true,
            |e, v| {
                if self.eval_edge(roles_b, e) == Some(!v) {
                    d += 1;
                }
                d <= limit
            },
        );
        d
    }

    /// JSON placement descriptor. Uniform minterms use
    /// `{"B": [...], "W": [[...] x6], "D1": [...]}`; partite ones map each
    /// group name to its images.
    pub fn descriptor_json(&self, p: &Placement) -> Value {
        let groups = self.layout.groups();
        let imgs = |g: usize| p.0[self.layout.group_slots(g)].to_vec();
        match self.construction.kind() {
            EdgeKind::Uniform => {
                let mut obj = json!({
                    "B": imgs(0),
                    "W": (1..7).map(imgs).collect::<Vec<_>>(),
                });
                if groups.len() > 7 {
                    obj["D1"] = json!(imgs(7));
                }
                obj
            }
            EdgeKind::Partite => {
                let map: serde_json::Map<String, Value> = groups
                    .iter()
                    .enumerate()
                    .map(|(g, grp)| (grp.name.clone(), json!(imgs(g))))
                    .collect();
                Value::Object(map)
            }
        }
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
