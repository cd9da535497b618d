use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::packing::{max_disjoint_packing, min_hitting_set};
use crate::boolfn::{BitString, TruthTable};
use crate::error::{Error, Result};

/// Budgets for exact measure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureBudget {
    /// Largest `N` for which global (max over all inputs) block sensitivity
    /// and certificate complexity are computed.
    pub global_vars: u32,
    /// Largest `N` for per-input measures.
    pub per_input_vars: u32,
}

impl Default for MeasureBudget {
    fn default() -> Self {
        Self {
            global_vars: 16,
            per_input_vars: 30,
        }
    }
}

/// Value of a measure together with an input achieving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub value: usize,
    /// `None` only for restricted maxima over an empty preimage.
    pub witness: Option<BitString>,
    /// Disjoint sensitive blocks for block sensitivity, the certificate
    /// support for certificate complexity, the sensitive variables for
    /// sensitivity.
    pub blocks: Vec<Vec<usize>>,
    /// `false` for search lower bounds.
    pub exact: bool,
    /// Set for constant functions and empty preimages.
    pub degenerate: bool,
}

impl MeasureReport {
    fn empty_preimage() -> Self {
        Self {
            value: 0,
            witness: None,
            blocks: Vec::new(),
            exact: true,
            degenerate: true,
        }
    }

    pub fn witness_index(&self) -> Option<u64> {
        self.witness.as_ref().and_then(BitString::to_index)
    }
}

fn mask_vars(mask: u64) -> Vec<usize> {
    (0..64).filter(|j| mask >> j & 1 == 1).collect()
}

fn check_input(f: &TruthTable, x: u64) {
    assert!(x < f.len(), "input {x} out of range for N = {}", f.n_vars());
}

/// `s(f, x)`: number of single-variable flips of `x` that change `f`.
pub fn sensitivity_at(f: &TruthTable, x: u64) -> usize {
    check_input(f, x);
    sensitive_mask(f, x).count_ones() as usize
}

fn sensitive_mask(f: &TruthTable, x: u64) -> u64 {
    let fx = f.get(x);
    (0..f.n_vars())
        .filter(|&j| f.get(x ^ (1 << j)) != fx)
        .fold(0, |m, j| m | 1 << j)
}

/// `s(f)`, `s0(f)` and `s1(f)` with lowest-index witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityProfile {
    pub s: MeasureReport,
    pub s0: MeasureReport,
    pub s1: MeasureReport,
}

const IN_WORD_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[inline]
fn flipped_word(words: &[u64], wi: usize, var: u32) -> u64 {
    if var < 6 {
        let s = 1u32 << var;
        let m = IN_WORD_MASKS[var as usize];
        let w = words[wi];
        ((w >> s) & m) | ((w & m) << s)
    } else {
        words[wi ^ (1usize << (var - 6))]
    }
}

/// Best `(count, lane)` among lanes in `lanes`, counts given as bit planes.
#[inline]
fn max_lane(planes: &[u64; 5], lanes: u64) -> Option<(u32, u32)> {
    if lanes == 0 {
        return None;
    }
    let mut cand = lanes;
    let mut val = 0u32;
    for b in (0..5).rev() {
        let hit = cand & planes[b];
        if hit != 0 {
            cand = hit;
            val |= 1 << b;
        }
    }
    Some((val, cand.trailing_zeros()))
}

#[derive(Clone, Copy)]
struct Best(Option<(u32, u64)>);

impl Best {
    fn merge(self, other: Best) -> Best {
        match (self.0, other.0) {
            (None, o) => Best(o),
            (s, None) => Best(s),
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    Best(Some(b))
                } else {
                    Best(Some(a))
                }
            }
        }
    }
}

/// Bit-sliced computation of `s0` and `s1`: each word carries 64 inputs and
/// per-input flip counts are accumulated in five bit planes.
pub fn sensitivity_profile(f: &TruthTable) -> SensitivityProfile {
    let n = f.n_vars();
    let words = f.words();
    let valid = if n < 6 {
        (1u64 << (1u32 << n)) - 1
    } else {
        u64::MAX
    };
    let (b0, b1) = (0..words.len())
        .into_par_iter()
        .with_min_len(64)
        .map(|wi| {
            let mut planes = [0u64; 5];
            for var in 0..n {
                let mut carry = words[wi] ^ flipped_word(words, wi, var);
                for p in planes.iter_mut() {
                    if carry == 0 {
                        break;
                    }
                    let t = *p & carry;
                    *p ^= carry;
                    carry = t;
                }
            }
            let base = (wi as u64) << 6;
            let lift = |r: Option<(u32, u32)>| Best(r.map(|(v, l)| (v, base + l as u64)));
            (
                lift(max_lane(&planes, !words[wi] & valid)),
                lift(max_lane(&planes, words[wi] & valid)),
            )
        })
        .reduce(
            || (Best(None), Best(None)),
            |a, b| (a.0.merge(b.0), a.1.merge(b.1)),
        );
    let report = |b: Best| match b.0 {
        None => MeasureReport::empty_preimage(),
        Some((v, x)) => MeasureReport {
            value: v as usize,
            witness: Some(BitString::from_index(n as usize, x)),
            blocks: vec![mask_vars(sensitive_mask(f, x))],
            exact: true,
            degenerate: false,
        },
    };
    let constant = f.constant_value().is_some();
    let mut s = report(b0.merge(b1));
    s.degenerate = constant;
    SensitivityProfile {
        s,
        s0: report(b0),
        s1: report(b1),
    }
}

pub fn sensitivity(f: &TruthTable) -> MeasureReport {
    sensitivity_profile(f).s
}

/// Minimal sensitive blocks at `x`: blocks `B` with `f(x) != f(x^B)` and no
/// proper sensitive sub-block.
///
/// Sensitive singletons are returned first. Every other minimal block avoids
/// the sensitive coordinates, so the search runs over subsets of the
/// insensitive coordinates only, visiting them in increasing order and
/// tracking which subsets already contain a sensitive block.
pub fn minimal_sensitive_blocks(f: &TruthTable, x: u64) -> Vec<u64> {
    check_input(f, x);
    let fx = f.get(x);
    let singles = sensitive_mask(f, x);
    let full = (1u64 << f.n_vars()) - 1;
    let rest = full & !singles;
    let mut out: Vec<u64> = mask_vars(singles).into_iter().map(|j| 1 << j).collect();
    let m = rest.count_ones();
    let mut has_sens = vec![0u64; (1usize << m).div_ceil(64)];
    let get = |v: &[u64], u: usize| (v[u >> 6] >> (u & 63)) & 1 == 1;
    let mut sub = 0u64;
    let mut u = 0usize;
    loop {
        sub = (sub.wrapping_sub(rest)) & rest;
        u += 1;
        if sub == 0 {
            break;
        }
        let mut covered = false;
        let mut bits = u;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            if get(&has_sens, u ^ b) {
                covered = true;
                break;
            }
            bits &= bits - 1;
        }
        let sens = f.get(x ^ sub) != fx;
        if sens && !covered {
            out.push(sub);
        }
        if sens || covered {
            has_sens[u >> 6] |= 1 << (u & 63);
        }
    }
    out
}

fn check_budget(f: &TruthTable, limit: u32, what: &'static str) -> Result<()> {
    if f.n_vars() > limit {
        return Err(Error::BudgetExceeded {
            what,
            limit: limit as usize,
            actual: f.n_vars() as usize,
        });
    }
    Ok(())
}

fn bs_at_unchecked(f: &TruthTable, x: u64) -> (usize, Vec<u64>) {
    let blocks = minimal_sensitive_blocks(f, x);
    let split = blocks.iter().take_while(|b| b.count_ones() == 1).count();
    let mut packing = blocks[..split].to_vec();
    packing.extend(max_disjoint_packing(&blocks[split..]));
    (packing.len(), packing)
}

fn cert_at_unchecked(f: &TruthTable, x: u64) -> u64 {
    let blocks = minimal_sensitive_blocks(f, x);
    let split = blocks.iter().take_while(|b| b.count_ones() == 1).count();
    let singles = blocks[..split].iter().fold(0, |a, b| a | b);
    singles | min_hitting_set(&blocks[split..])
}

/// `bs(f, x)`: exact maximum number of disjoint sensitive blocks.
///
/// Any optimal packing can be rewritten to use only minimal blocks, and
/// sensitive singletons can always be taken.
pub fn block_sensitivity_at(
    f: &TruthTable,
    x: u64,
    budget: MeasureBudget,
) -> Result<MeasureReport> {
    check_budget(f, budget.per_input_vars, "block sensitivity variables")?;
    check_input(f, x);
    let (value, packing) = bs_at_unchecked(f, x);
    Ok(MeasureReport {
        value,
        witness: Some(BitString::from_index(f.n_vars() as usize, x)),
        blocks: packing.into_iter().map(mask_vars).collect(),
        exact: true,
        degenerate: f.constant_value().is_some(),
    })
}

/// `C(f, x)`: a set fixes `f` around `x` iff it meets every sensitive block,
/// so the minimum certificate is a minimum hitting set of the minimal
/// sensitive blocks.
pub fn certificate_at(f: &TruthTable, x: u64, budget: MeasureBudget) -> Result<MeasureReport> {
    check_budget(f, budget.per_input_vars, "certificate variables")?;
    check_input(f, x);
    let cert = cert_at_unchecked(f, x);
    Ok(MeasureReport {
        value: cert.count_ones() as usize,
        witness: Some(BitString::from_index(f.n_vars() as usize, x)),
        blocks: vec![mask_vars(cert)],
        exact: true,
        degenerate: f.constant_value().is_some(),
    })
}

fn global_max(
    f: &TruthTable,
    want: Option<bool>,
    per_input: impl Fn(u64) -> usize + Sync,
) -> Option<(usize, u64)> {
    (0..f.len())
        .into_par_iter()
        .filter(|&x| want.is_none_or(|w| f.get(x) == w))
        .map(|x| Best(Some((per_input(x) as u32, x))))
        .reduce(|| Best(None), Best::merge)
        .0
        .map(|(v, x)| (v as usize, x))
}

pub fn block_sensitivity(f: &TruthTable, budget: MeasureBudget) -> Result<MeasureReport> {
    check_budget(f, budget.global_vars, "global block sensitivity variables")?;
    let (_, x) = global_max(f, None, |x| bs_at_unchecked(f, x).0).expect("non-empty cube");
    block_sensitivity_at(f, x, budget)
}

/// `C(f)`, `C0(f)`, `C1(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateProfile {
    pub c: MeasureReport,
    pub c0: MeasureReport,
    pub c1: MeasureReport,
}

pub fn certificate_profile(f: &TruthTable, budget: MeasureBudget) -> Result<CertificateProfile> {
    check_budget(f, budget.global_vars, "global certificate variables")?;
    let value = |x: u64| cert_at_unchecked(f, x).count_ones() as usize;
    let report = |best: Option<(usize, u64)>| -> Result<MeasureReport> {
        match best {
            None => Ok(MeasureReport::empty_preimage()),
            Some((_, x)) => certificate_at(f, x, budget),
        }
    };
    let c0 = report(global_max(f, Some(false), value))?;
    let c1 = report(global_max(f, Some(true), value))?;
    let c = if c1.value > c0.value
        || (c1.value == c0.value && c1.witness_index() < c0.witness_index() && c1.witness.is_some())
        || c0.witness.is_none()
    {
        c1.clone()
    } else {
        c0.clone()
    };
    Ok(CertificateProfile { c, c0, c1 })
}

pub fn certificate_complexity(f: &TruthTable, budget: MeasureBudget) -> Result<MeasureReport> {
    Ok(certificate_profile(f, budget)?.c)
}
