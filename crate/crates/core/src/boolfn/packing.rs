//! Exact branch-and-bound over families of variable blocks given as bit
//! masks: maximum disjoint packing and minimum hitting set.
//!
//! Both searches visit branches in a fixed order and only replace the
//! incumbent on strict improvement, so the returned witness is deterministic.

/// Maximum number of pairwise-disjoint blocks.
pub fn max_disjoint_packing(blocks: &[u64]) -> Vec<u64> {
    let mut sorted: Vec<u64> = blocks.to_vec();
    sorted.sort_unstable_by_key(|b| (b.count_ones(), *b));
    sorted.dedup();
    let mut best = Vec::new();
    let mut current = Vec::new();
    pack_rec(&sorted, &mut current, &mut best);
    best
}

fn pack_rec(cands: &[u64], current: &mut Vec<u64>, best: &mut Vec<u64>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if cands.is_empty() {
        return;
    }
    let universe = cands.iter().fold(0u64, |a, b| a | b);
    let min_size = cands
        .iter()
        .map(|b| b.count_ones())
        .min()
        .unwrap_or(1)
        .max(1);
    let ub = (cands.len()).min((universe.count_ones() / min_size) as usize);
    if current.len() + ub <= best.len() {
        return;
    }
    let e = universe & universe.wrapping_neg();
    for (i, &b) in cands.iter().enumerate() {
        if b & e == 0 {
            continue;
        }
        let rest: Vec<u64> = cands[i + 1..]
            .iter()
            .chain(cands[..i].iter())
            .copied()
            .filter(|&c| c & b == 0)
            .collect();
        let mut rest = rest;
        rest.sort_unstable_by_key(|b| (b.count_ones(), *b));
        current.push(b);
        pack_rec(&rest, current, best);
        current.pop();
    }
    // Leave element `e` uncovered.
    let rest: Vec<u64> = cands.iter().copied().filter(|&c| c & e == 0).collect();
    pack_rec(&rest, current, best);
}

/// Smallest mask intersecting every block. Blocks must be non-empty.
pub fn min_hitting_set(blocks: &[u64]) -> u64 {
    let mut sorted: Vec<u64> = blocks.to_vec();
    sorted.sort_unstable_by_key(|b| (b.count_ones(), *b));
    sorted.dedup();
    debug_assert!(sorted.iter().all(|&b| b != 0));
    // Greedy incumbent: lowest element of each still-unhit block.
    let mut greedy = 0u64;
    for &b in &sorted {
        if b & greedy == 0 {
            greedy |= b & b.wrapping_neg();
        }
    }
    let mut best = greedy;
    hit_rec(&sorted, 0, 0, &mut best);
    best
}

fn disjoint_lower_bound(blocks: &[u64], chosen: u64) -> u32 {
    let mut used = 0u64;
    let mut count = 0;
    for &b in blocks {
        if b & chosen == 0 && b & used == 0 {
            used |= b;
            count += 1;
        }
    }
    count
}

fn hit_rec(blocks: &[u64], chosen: u64, forbidden: u64, best: &mut u64) {
    let Some(&unhit) = blocks.iter().find(|&&b| b & chosen == 0) else {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    };
    if chosen.count_ones() + disjoint_lower_bound(blocks, chosen) >= best.count_ones() {
        return;
    }
    let mut options = unhit & !forbidden;
    let mut excluded = forbidden;
    while options != 0 {
        let e = options & options.wrapping_neg();
        options &= options - 1;
        hit_rec(blocks, chosen | e, excluded, best);
        excluded |= e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_pack(blocks: &[u64]) -> usize {
        let m = blocks.len();
        (0u32..1 << m)
            .filter(|s| {
                let mut used = 0u64;
                (0..m).filter(|i| s >> i & 1 == 1).all(|i| {
                    let ok = blocks[i] & used == 0;
                    used |= blocks[i];
                    ok
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_hit(blocks: &[u64], n: u32) -> u32 {
        (0u64..1 << n)
            .filter(|h| blocks.iter().all(|b| b & h != 0))
            .map(|h| h.count_ones())
            .min()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_small_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8u32);
            let m = rng.gen_range(1..=10usize);
            let blocks: Vec<u64> = (0..m).map(|_| rng.gen_range(1..(1u64 << n))).collect();
            let pack = max_disjoint_packing(&blocks);
            assert_eq!(pack.len(), brute_pack(&blocks));
            let mut used = 0;
            for b in &pack {
                assert_eq!(b & used, 0);
                used |= b;
            }
            let hit = min_hitting_set(&blocks);
            assert!(blocks.iter().all(|b| b & hit != 0));
            assert_eq!(hit.count_ones(), brute_hit(&blocks, n));
        }
    }

    #[test]
    fn empty_family() {
        assert!(max_disjoint_packing(&[]).is_empty());
        assert_eq!(min_hitting_set(&[]), 0);
    }
}
