use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfn::{BitString, MeasureReport};
use crate::constructions::MintermFunction;
use crate::error::Result;

/// Hill-climbing steps per restart.
pub const STEPS_PER_RESTART: usize = 40;

/// Best sensitivities found by [`search_sensitivity_lower`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// Overall best, `exact = false`.
    pub report: MeasureReport,
    /// Best over inputs with `f(x) = 0` / `f(x) = 1`.
    pub s0: usize,
    pub s1: usize,
    pub evaluations: u64,
}

fn restart_seed(seed: u64, r: u64) -> u64 {
    let mut z = seed ^ r.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^ (z >> 31)
}

/// Starting input for restart `r`: a random translate with random free
/// bits, a translate with one support bit flipped, or the overlay of two
/// translates with one bit flipped.
fn start_point(f: &MintermFunction, r: u64, rng: &mut ChaCha8Rng) -> BitString {
    let (t, _) = f.random_translate(rng);
    let mut x = BitString::zeros(f.n_vars());
    match r % 3 {
        0 => {
            for i in 0..x.len() {
                x.set(i, rng.gen_bool(0.5));
            }
            for &(i, b) in t.entries() {
                x.set(i, b);
            }
        }
        1 => {
            for &(i, b) in t.entries() {
                x.set(i, b);
            }
            let (i, _) = t.entries()[rng.gen_range(0..t.len())];
            x.flip(i);
        }
        _ => {
            let (u, _) = f.random_translate(rng);
            for &(i, b) in u.entries() {
                x.set(i, b);
            }
            for &(i, b) in t.entries() {
                x.set(i, b);
            }
            let (i, _) = t.entries()[rng.gen_range(0..t.len())];
            x.flip(i);
        }
    }
    x
}

/// Lower bound on `s(f)` by seeded hill climbing. Restart `r` depends only
/// on `(seed, r)`, so more effort never lowers the result.
pub fn search_sensitivity_lower(
    f: &MintermFunction,
    effort: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    let mut best: Option<(usize, BitString, Vec<usize>)> = None;
    let (mut s0, mut s1, mut evaluations) = (0, 0, 0u64);
    for r in 0..effort as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(seed, r));
        let mut x = start_point(f, r, &mut rng);
        let (mut value, mut sens) = f.sensitive_set(&x)?;
        evaluations += 1;
        for step in 0..=STEPS_PER_RESTART {
            if value {
                s1 = s1.max(sens.len());
            } else {
                s0 = s0.max(sens.len());
            }
            if best.as_ref().is_none_or(|(s, _, _)| sens.len() > *s) {
                best = Some((sens.len(), x.clone(), sens.clone()));
            }
            if step == STEPS_PER_RESTART {
                break;
            }
            let i = rng.gen_range(0..x.len());
            x.flip(i);
            let (v2, s2) = f.sensitive_set(&x)?;
            evaluations += 1;
            if s2.len() >= sens.len() {
                value = v2;
                sens = s2;
            } else {
                x.flip(i);
            }
        }
    }
    let (value, witness, blocks) = match best {
        Some((s, x, sens)) => (s, Some(x), sens.into_iter().map(|i| vec![i]).collect()),
        None => (0, None, Vec::new()),
    };
    Ok(SearchOutcome {
        report: MeasureReport {
            value,
            witness,
            blocks,
            exact: false,
            degenerate: false,
        },
        s0,
        s1,
        evaluations,
    })
}
