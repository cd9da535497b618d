//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Oracles here are written independently of the library.

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hypersens::analysis::{
    bruteforce_oracle, claim1_holds, claim2_holds, cluster_s0_bound, isomorphism_classes,
    scaling_report, scan_properties, search_sensitivity_lower, verify_claim1, verify_claim2,
    ScalingOptions, ScanMode, DEFAULT_ENUM_CAP, DEFAULT_PROPERTY_CAP,
};
use hypersens::boolfn::{
    block_sensitivity, block_sensitivity_at, certificate_at, certificate_complexity, sensitivity,
    sensitivity_at, BitString, MeasureBudget, PartialAssignment, TruthTable,
};
use hypersens::constructions::{
    xor_compose_minterms, Construction, LabeledMinterm, MintermFunction,
};
use hypersens::symmetry::{is_invariant, GroupAction, GroupSpec, VarIndexer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn naive_sensitivity_at(f: &TruthTable, x: u64) -> usize {
    (0..f.n_vars())
        .filter(|&j| f.get(x) != f.get(x ^ (1 << j)))
        .count()
}

fn criterion1() -> Outcome {
    let budget = MeasureBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut inputs = 0u64;
    for i in 0..1000 {
        let n = rng.gen_range(1..=12u32);
        let words = (0..(1usize << n).div_ceil(64)).map(|_| rng.gen()).collect();
        let f = TruthTable::from_words(n, words).map_err(err)?;
        for x in 0..f.len() {
            let s = sensitivity_at(&f, x);
            ensure!(
                s == naive_sensitivity_at(&f, x),
                "function {i}: s({x}) disagrees with the naive count"
            );
            let bs = block_sensitivity_at(&f, x, budget).map_err(err)?.value;
            let c = certificate_at(&f, x, budget).map_err(err)?.value;
            ensure!(
                s <= bs && bs <= c,
                "function {i}, x = {x}: s = {s}, bs = {bs}, C = {c}"
            );
            inputs += 1;
        }
        let s = sensitivity(&f).value;
        let bs = block_sensitivity(&f, budget).map_err(err)?.value;
        let c = certificate_complexity(&f, budget).map_err(err)?.value;
        ensure!(
            s <= bs && bs <= c,
            "function {i}: global s = {s}, bs = {bs}, C = {c}"
        );
    }
    let mut symmetric = 0u64;
    for n in 1..=10u32 {
        for spectrum in 1..(1u32 << (n + 1)) - 1 {
            let f = TruthTable::from_fn(n, |x| spectrum >> x.count_ones() & 1 == 1).map_err(err)?;
            let s = (0..f.len())
                .map(|x| naive_sensitivity_at(&f, x))
                .max()
                .unwrap_or(0);
            ensure!(
                s == sensitivity(&f).value,
                "n = {n}, spectrum {spectrum:b}: engine disagrees"
            );
            ensure!(
                s >= n.div_ceil(2) as usize,
                "n = {n}, spectrum {spectrum:b}: s = {s}"
            );
            symmetric += 1;
        }
    }
    Ok(format!(
        "1000 random functions ({inputs} inputs), {symmetric} symmetric functions"
    ))
}

/// Table pattern on 1-based special vectors; `None` row/column index means
/// a nonspecial vector.
fn table_oracle(a: Option<u32>, b: Option<u32>) -> Option<bool> {
    match (a, b) {
        (Some(1), Some(1..=3)) => Some(false),
        (Some(1), _) => Some(true),
        (Some(2), Some(1 | 2)) => Some(false),
        (Some(2), _) => Some(true),
        (Some(3), Some(1 | 3)) => Some(true),
        (Some(3), _) => Some(false),
        (_, Some(1 | 2)) => Some(true),
        (_, Some(3)) => Some(false),
        _ => None,
    }
}

fn criterion2() -> Outcome {
    let mut sizes = Vec::new();
    for n in 9..=16u32 {
        let m = LabeledMinterm::thm1(n, 3).map_err(err)?;
        let want: u128 = (1..=2)
            .map(|i| binom(6, i) * binom((n - 7) as u64, 2 - i))
            .sum();
        ensure!(
            m.support_size() == want,
            "n = {n}: |p| = {} but the sum gives {want}",
            m.support_size()
        );
        let counted = (0..m.indexer().n_vars())
            .filter(|&i| {
                m.value_at(&m.indexer().unrank(i).unwrap())
                    .unwrap()
                    .is_some()
            })
            .count() as u128;
        ensure!(
            counted == want,
            "n = {n}: {counted} support variables enumerated, expected {want}"
        );
        sizes.push(want);
    }
    ensure!(sizes[3] == 45, "n = 12 support is {}", sizes[3]);
    // Columns and rows 8, 9 stand for the table's trailing nonspecial entries.
    let n = 9;
    let m = LabeledMinterm::thm3(n, 3).map_err(err)?;
    let special = |v: u32| (v <= 3).then_some(v);
    let mut cells = 0;
    for a in 1..=n {
        for b in 1..=n {
            let got = m.value_at(&[a - 1, b - 1, 0]).map_err(err)?;
            ensure!(
                got == table_oracle(special(a), special(b)),
                "cell ({a},{b}): {got:?}"
            );
            cells += 1;
            for c in 2..=n {
                ensure!(
                    m.value_at(&[a - 1, b - 1, c - 1]).map_err(err)?.is_none(),
                    "c = {c} off the pattern"
                );
            }
        }
    }
    Ok(format!("|p| for n = 9..16: {sizes:?}; {cells} table cells"))
}

fn criterion3() -> Outcome {
    let m = LabeledMinterm::thm3(3, 3).map_err(err)?;
    let ix = m.indexer().clone();
    let structured = MintermFunction::structured(m.clone())
        .materialize(DEFAULT_ENUM_CAP)
        .map_err(err)?;
    let group =
        GroupAction::new(GroupSpec::Partite { n: 3, k: 3 }, Some(ix.clone()), 27).map_err(err)?;
    let explicit = MintermFunction::explicit(m.to_partial(), group.clone(), DEFAULT_ENUM_CAP)
        .map_err(err)?
        .materialize(DEFAULT_ENUM_CAP)
        .map_err(err)?;
    ensure!(
        structured == explicit,
        "structured and explicit tables differ"
    );
    let ones: Vec<u64> = structured
        .words()
        .iter()
        .enumerate()
        .flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| (w as u64) << 6 | b)
        })
        .collect();
    let elements = group.elements(1000).map_err(err)?;
    ensure!(elements.len() == 216, "{} group elements", elements.len());
    for (e, sigma) in elements.iter().enumerate() {
        let perm = sigma.index_permuter();
        // A bijection mapping the ones into the ones fixes the table.
        ensure!(
            ones.iter().all(|&x| structured.get(perm.apply(x))),
            "element {e} moves a one-input"
        );
    }

    // Largest materializable uniform k = 3 case: n = 6, N = 20, with a
    // consecutive-pair minterm through a fixed vertex.
    let ux = VarIndexer::uniform(6, 3).map_err(err)?;
    let entries: Vec<(usize, bool)> = (0..5u32)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .map(|(a, b)| (ux.rank(&[a, b, 5]).unwrap(), b == a + 1))
        .collect();
    let p = PartialAssignment::new(ux.n_vars(), entries).map_err(err)?;
    let uf = MintermFunction::explicit(p, GroupAction::full(&ux), DEFAULT_ENUM_CAP).map_err(err)?;
    let table = uf.materialize(DEFAULT_ENUM_CAP).map_err(err)?;
    ensure!(
        is_invariant(&table, &GroupAction::full(&ux)).map_err(err)?,
        "n = 6 table not S_6-invariant"
    );

    // Beyond materialization: symbolic evaluation of the n = 9 construction
    // near its translates, under every S_9 generator.
    let f9 = MintermFunction::structured(LabeledMinterm::thm1(9, 3).map_err(err)?);
    let gens = f9.group().generators();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for t in 0..200 {
        let (q, _) = f9.random_translate(&mut rng);
        let mut x = BitString::zeros(f9.n_vars());
        for i in 0..x.len() {
            x.set(i, q.get(i).unwrap_or_else(|| rng.gen()));
        }
        for _ in 0..t % 4 {
            x.flip(rng.gen_range(0..x.len()));
        }
        let fx = f9.eval(&x).map_err(err)?;
        for g in &gens {
            ensure!(
                f9.eval(&g.apply_input(&x)).map_err(err)? == fx,
                "n = 9 sample {t} not invariant"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "partite n = 3: {} ones fixed by 216 elements; uniform n = 6 generator-invariant; {checked} n = 9 checks",
        ones.len()
    ))
}

fn criterion4() -> Outcome {
    let grid: Vec<u32> = (9..=14).collect();
    let reports = verify_claim1(3, &grid, DEFAULT_ENUM_CAP).map_err(err)?;
    let counts: Vec<u64> = reports.iter().map(|r| r.count).collect();
    ensure!(claim1_holds(&reports), "counts grow: {counts:?}");
    let dir = tempfile::tempdir().map_err(err)?;
    let out = dir.path().join("claim1.json");
    let argv = [
        "hypersens",
        "verify",
        "claim1",
        "--k",
        "3",
        "--grid",
        "9:14",
        "--out",
    ];
    let mut argv: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    argv.push(out.display().to_string());
    let code = hypersens::cli::run(argv);
    ensure!(code == 0, "CLI exit code {code}");
    Ok(format!("counts {counts:?}, CLI exit 0"))
}

fn criterion5() -> Outcome {
    let reports = verify_claim2(4, &[16, 25, 36, 49], 3, DEFAULT_ENUM_CAP).map_err(err)?;
    let ratios: Vec<String> = reports
        .iter()
        .map(|r| format!("{:.3}", r.ratio.unwrap_or(f64::NAN)))
        .collect();
    ensure!(
        claim2_holds(&reports),
        "ratios exceed the n = 16 value: {ratios:?}"
    );
    ensure!(reports.iter().all(|r| r.ratio.is_some()), "ratio missing");
    ensure!(
        reports.iter().all(|r| r.truncation == Some(3)),
        "truncation not reported"
    );
    Ok(format!("count/floor(sqrt n) = {ratios:?}, r_max = 3"))
}

fn criterion6() -> Outcome {
    let grid: Vec<u32> = (9..=16).collect();
    let opts = ScalingOptions {
        effort: 12,
        seed: 0,
        cap: DEFAULT_ENUM_CAP,
        timing: false,
    };
    let report = scaling_report(Construction::Thm1, 3, &grid, &opts).map_err(err)?;
    for r in &report.rows {
        ensure!(
            r.s1_lower as u128 <= r.s1_bound
                && r.s0_lower as u128 <= r.s0_bound
                && r.s_lower as u128 <= r.s_bound(),
            "n = {}: search lower bound exceeds a bound",
            r.n
        );
    }
    let bounds: Vec<u128> = report.rows.iter().map(|r| r.s_bound()).collect();
    let lower: Vec<usize> = report.rows.iter().map(|r| r.s_lower).collect();
    let detail = format!(
        "slope {:.3}, bounds {bounds:?}, search {lower:?}",
        report.slope
    );
    ensure!(
        (0.85..=1.15).contains(&report.slope),
        "{detail}; slope outside 1.0 +- 0.15"
    );
    Ok(detail)
}

fn criterion7() -> Outcome {
    let classes = isomorphism_classes(4, 2).map_err(err)?;
    let ex = scan_properties(&classes, ScanMode::Exhaustive, DEFAULT_PROPERTY_CAP, |_| {})
        .map_err(err)?;
    ensure!(
        ex.exhaustive && ex.properties == 2046,
        "n = 4 scanned {} properties",
        ex.properties
    );
    ensure!(
        ex.bound_violations == 0 && ex.min_s >= 1,
        "n = 4: {} violations of s >= 1",
        ex.bound_violations
    );
    ensure!(
        ex.turan_violations == 0 && ex.min_s >= 2,
        "n = 4: {} violations of s >= 2",
        ex.turan_violations
    );
    let mut parts = vec![format!("n = 4: 2046 properties, min s = {}", ex.min_s)];
    for k in [2, 3] {
        let classes = isomorphism_classes(5, k).map_err(err)?;
        let mode = ScanMode::Sampled {
            samples: 100_000,
            seed: 7,
        };
        let sum = scan_properties(&classes, mode, DEFAULT_PROPERTY_CAP, |_| {}).map_err(err)?;
        let bound = 5usize.div_ceil(k as usize + 2);
        ensure!(
            sum.properties == 100_000,
            "(k = {k}, n = 5) sampled {}",
            sum.properties
        );
        ensure!(
            sum.bound_violations == 0 && sum.min_s >= bound,
            "(k = {k}, n = 5): min s = {}",
            sum.min_s
        );
        parts.push(format!(
            "(k = {k}, n = 5): 1e5 samples, min s = {}",
            sum.min_s
        ));
    }
    Ok(parts.join("; "))
}

fn criterion8() -> Outcome {
    let m = LabeledMinterm::thm3(3, 3).map_err(err)?;
    let f = MintermFunction::structured(m.clone());
    let (_, exact) =
        bruteforce_oracle(&f, DEFAULT_ENUM_CAP, MeasureBudget::default()).map_err(err)?;
    let s1_bound = m.support_size();
    let s0_bound = cluster_s0_bound(&m, DEFAULT_ENUM_CAP).map_err(err)?.bound;
    let search = search_sensitivity_lower(&f, 12, 0).map_err(err)?;
    let detail = format!(
        "exact s = {}, s0 = {}, s1 = {}; |p| = {s1_bound}, s0 bound = {s0_bound}; search s = {}",
        exact.s, exact.s0, exact.s1, search.report.value
    );
    ensure!(s1_bound >= exact.s1 as u128, "{detail}: s1 bound too small");
    ensure!(s0_bound >= exact.s0 as u128, "{detail}: s0 bound too small");
    ensure!(
        search.report.value <= exact.s && search.s0 <= exact.s0 && search.s1 <= exact.s1,
        "{detail}: search exceeds the exact value"
    );
    Ok(detail)
}

fn random_part(rng: &mut ChaCha8Rng) -> PartialAssignment {
    let n = rng.gen_range(1..=12usize);
    // Parts need nonempty support.
    let forced = rng.gen_range(0..n);
    let mut entries = Vec::new();
    for i in 0..n {
        if i == forced || rng.gen_bool(0.6) {
            entries.push((i, rng.gen()));
        }
    }
    PartialAssignment::new(n, entries).unwrap()
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut points = 0;
    for t in 0..100 {
        let (p1, p2) = (random_part(&mut rng), random_part(&mut rng));
        let q = xor_compose_minterms(&[p1.clone(), p2.clone()]).map_err(err)?;
        ensure!(
            q.len() == p1.len() * p2.len(),
            "pair {t}: |q| = {} != {} * {}",
            q.len(),
            p1.len(),
            p2.len()
        );
        ensure!(
            q.n_vars() == p1.n_vars() * p2.n_vars(),
            "pair {t}: wrong variable count"
        );
        for i in 0..p1.n_vars() {
            for j in 0..p2.n_vars() {
                let want = match (p1.get(i), p2.get(j)) {
                    (Some(a), Some(b)) => Some(a ^ b),
                    _ => None,
                };
                ensure!(
                    q.get(i * p2.n_vars() + j) == want,
                    "pair {t}: value at ({i},{j})"
                );
                points += want.is_some() as usize;
            }
        }
    }
    Ok(format!("100 pairs, {points} support points"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("measure engine", criterion1),
        ("construction fidelity", criterion2),
        ("invariance", criterion3),
        ("claim1 cluster", criterion4),
        ("claim2 cluster", criterion5),
        ("scaling", criterion6),
        ("lower bound scan", criterion7),
        ("oracle equivalence", criterion8),
        ("composition", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
