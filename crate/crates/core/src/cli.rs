//! Command-line front end.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    bruteforce_oracle, claim1_holds, claim2_holds, isomorphism_classes, scaling_report,
    scan_properties, verify_claim1, verify_claim2, ClusterReport, ScalingOptions, ScanMode,
    DEFAULT_ENUM_CAP, DEFAULT_PROPERTY_CAP, DEFAULT_R_MAX,
};
use crate::boolfn::{
    block_sensitivity, certificate_profile, sensitivity_profile, MeasureBudget, MeasureReport,
    TruthTable,
};
use crate::constructions::{
    Construction, LabeledMinterm, LoadedMinterm, MintermFile, MintermFunction,
};
use crate::error::{invalid, Result};
use crate::io::{encode_table, read_table, write_atomic};
use crate::symmetry::{GroupAction, GroupSpec};

/// Environment variable consulted when `--workers` is absent.
pub const WORKERS_ENV: &str = "HYPERSENS_WORKERS";

/// Grid of `n` values: `lo:hi[:step]` (inclusive) or a comma list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<u32>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad grid value {t:?} in {s:?}"))
        };
        let values: Vec<u32> = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let (lo, hi, step) = match parts.as_slice() {
                [lo, hi] => (num(lo)?, num(hi)?, 1),
                [lo, hi, step] => (num(lo)?, num(hi)?, num(step)?),
                _ => return Err(format!("grid {s:?}: expected lo:hi or lo:hi:step")),
            };
            if step == 0 || lo > hi {
                return Err(format!("grid {s:?}: need lo <= hi and step >= 1"));
            }
            (lo..=hi).step_by(step as usize).collect()
        } else {
            s.split(',')
                .map(num)
                .collect::<std::result::Result<_, _>>()?
        };
        if values.is_empty() {
            return Err("empty grid".into());
        }
        Ok(Grid(values))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Claim1,
    Claim2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Measure {
    S,
    S0,
    S1,
    Bs,
    C,
    C0,
    C1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// Parsed command line.
#[derive(Clone, Debug, PartialEq, Parser)]
#[command(
    name = "hypersens",
    version,
    about = "Sensitivity of hypergraph properties"
)]
pub struct RunConfig {
    /// Worker threads (falls back to $HYPERSENS_WORKERS, then all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum Command {
    /// Build a minterm and write it as JSON.
    Construct(ConstructArgs),
    /// Exact measures of a truth table or a materialized minterm function.
    Measure(MeasureArgs),
    /// Distance-cluster claims around a minterm.
    Verify(VerifyArgs),
    /// Sensitivity lower bound over hypergraph properties.
    Scan(ScanArgs),
    /// Scaling of the sensitivity bounds over a grid of n.
    Report(ReportArgs),
    /// Brute-force truth table and measures of a minterm function.
    Oracle(OracleArgs),
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub theorem: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct MeasureArgs {
    /// Truth table in the binary table format.
    #[arg(long, conflicts_with = "minterm")]
    pub table: Option<PathBuf>,
    /// Minterm JSON; the function is materialized first.
    #[arg(long)]
    pub minterm: Option<PathBuf>,
    /// Group for `--minterm` (default: the full vertex group).
    #[arg(long)]
    pub group: Option<GroupSpec>,
    #[arg(long, value_delimiter = ',', default_value = "s,bs,c")]
    pub measures: Vec<Measure>,
    /// Largest variable count for global block sensitivity / certificates.
    #[arg(long, default_value_t = MeasureBudget::default().global_vars)]
    pub exact_vars: u32,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub claim: Claim,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub grid: Grid,
    /// claim2: largest number of new D1 images enumerated.
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    pub r_max: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Largest property count enumerated exhaustively.
    #[arg(long, default_value_t = DEFAULT_PROPERTY_CAP)]
    pub cap: u64,
    /// Per-property records as CSV.
    #[arg(long)]
    pub records: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub theorem: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub grid: Grid,
    /// Search restarts per grid point.
    #[arg(long, default_value_t = 12)]
    pub effort: usize,
    /// Fill the seconds column (otherwise 0, keeping output reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct OracleArgs {
    #[arg(long, requires_all = ["n", "k"], conflicts_with = "minterm")]
    pub theorem: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub minterm: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<GroupSpec>,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: u64,
    /// Also write the truth table.
    #[arg(long)]
    pub table_out: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn push_opt<T: ToString>(args: &mut Vec<String>, flag: &str, v: &Option<T>) {
    if let Some(v) = v {
        args.push(flag.into());
        args.push(v.to_string());
    }
}

fn push(args: &mut Vec<String>, flag: &str, v: impl ToString) {
    args.push(flag.into());
    args.push(v.to_string());
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn path_opt(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

impl RunConfig {
    /// Canonical argument vector (without the program name) that parses
    /// back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = Vec::new();
        push_opt(&mut a, "--workers", &self.workers);
        push(&mut a, "--seed", self.seed);
        match &self.command {
            Command::Construct(c) => {
                a.push("construct".into());
                push(&mut a, "--theorem", c.theorem);
                push(&mut a, "--n", c.n);
                push(&mut a, "--k", c.k);
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
            Command::Measure(c) => {
                a.push("measure".into());
                push_opt(&mut a, "--table", &path_opt(&c.table));
                push_opt(&mut a, "--minterm", &path_opt(&c.minterm));
                push_opt(&mut a, "--group", &c.group);
                let ms: Vec<String> = c.measures.iter().map(value_name).collect();
                push(&mut a, "--measures", ms.join(","));
                push(&mut a, "--exact-vars", c.exact_vars);
                push(&mut a, "--cap", c.cap);
                push(&mut a, "--format", value_name(&c.format));
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
            Command::Verify(c) => {
                a.push("verify".into());
                a.push(value_name(&c.claim));
                push(&mut a, "--k", c.k);
                push(&mut a, "--grid", &c.grid);
                push(&mut a, "--r-max", c.r_max);
                push(&mut a, "--cap", c.cap);
                push(&mut a, "--format", value_name(&c.format));
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
            Command::Scan(c) => {
                a.push("scan".into());
                push(&mut a, "--n", c.n);
                push(&mut a, "--k", c.k);
                push(&mut a, "--mode", value_name(&c.mode));
                push(&mut a, "--samples", c.samples);
                push(&mut a, "--cap", c.cap);
                push_opt(&mut a, "--records", &path_opt(&c.records));
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
            Command::Report(c) => {
                a.push("report".into());
                push(&mut a, "--theorem", c.theorem);
                push(&mut a, "--k", c.k);
                push(&mut a, "--grid", &c.grid);
                push(&mut a, "--effort", c.effort);
                if c.timing {
                    a.push("--timing".into());
                }
                push(&mut a, "--cap", c.cap);
                push(&mut a, "--format", value_name(&c.format));
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
            Command::Oracle(c) => {
                a.push("oracle".into());
                push_opt(&mut a, "--theorem", &c.theorem);
                push_opt(&mut a, "--n", &c.n);
                push_opt(&mut a, "--k", &c.k);
                push_opt(&mut a, "--minterm", &path_opt(&c.minterm));
                push_opt(&mut a, "--group", &c.group);
                push(&mut a, "--cap", c.cap);
                push_opt(&mut a, "--table-out", &path_opt(&c.table_out));
                push_opt(&mut a, "--out", &path_opt(&c.out));
            }
        }
        a
    }
}

/// Exit status of a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    ClaimViolated,
}

/// Runs the CLI on `argv` (program name first). Returns 0 on success, 1
/// when a verified claim or bound fails, 2 on usage or input errors.
pub fn run(argv: Vec<String>) -> i32 {
    let cfg = match RunConfig::try_parse_from(&argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_workers(cfg.workers);
    match execute(&cfg) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::ClaimViolated) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn init_workers(flag: Option<usize>) {
    let workers = flag.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(w) = workers.filter(|&w| w > 0) {
        // A pool may already exist when run() is called repeatedly in-process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn load_minterm(path: &Path) -> Result<LoadedMinterm> {
    MintermFile::from_json(&std::fs::read_to_string(path)?)?.load()
}

fn minterm_function(
    m: LoadedMinterm,
    group: Option<GroupSpec>,
    cap: u64,
) -> Result<MintermFunction> {
    match (m, group) {
        (LoadedMinterm::Labeled(m), None) => Ok(MintermFunction::structured(m)),
        (LoadedMinterm::Labeled(m), Some(g)) => MintermFunction::new(m, g, cap),
        (LoadedMinterm::Explicit(ix, p), g) => {
            let action = match g {
                Some(g) => GroupAction::new(g, Some(ix.clone()), ix.n_vars())?,
                None => GroupAction::full(&ix),
            };
            MintermFunction::explicit(p, action, cap)
        }
    }
}

/// Executes a parsed configuration.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Construct(c) => {
            let m = LabeledMinterm::new(Construction::from_number(c.theorem)?, c.n, c.k)?;
            emit(&c.out, &MintermFile::from_labeled(&m)?.to_json()?)?;
            Ok(Outcome::Ok)
        }
        Command::Measure(c) => measure(c),
        Command::Verify(c) => {
            let (reports, holds) = match c.claim {
                Claim::Claim1 => {
                    let r = verify_claim1(c.k, &c.grid.0, c.cap)?;
                    let ok = claim1_holds(&r);
                    (r, ok)
                }
                Claim::Claim2 => {
                    let r = verify_claim2(c.k, &c.grid.0, c.r_max, c.cap)?;
                    let ok = claim2_holds(&r);
                    (r, ok)
                }
            };
            let text = match c.format {
                Format::Json => pretty(&json!({ "holds": holds, "reports": reports }))?,
                Format::Csv => cluster_csv(&reports),
            };
            emit(&c.out, &text)?;
            Ok(if holds {
                Outcome::Ok
            } else {
                Outcome::ClaimViolated
            })
        }
        Command::Scan(c) => {
            let classes = isomorphism_classes(c.n, c.k)?;
            let mode = match c.mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Sampled => ScanMode::Sampled {
                    samples: c.samples,
                    seed: cfg.seed,
                },
            };
            let mut records = c
                .records
                .as_ref()
                .map(|_| String::from("n,k,property,s,s0,s1,m,bound\n"));
            let summary = scan_properties(&classes, mode, c.cap, |r| {
                if let Some(buf) = records.as_mut() {
                    buf.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        r.n, r.k, r.property, r.s, r.s0, r.s1, r.m, r.bound
                    ));
                }
            })?;
            if let (Some(path), Some(buf)) = (&c.records, &records) {
                write_atomic(path, buf.as_bytes())?;
            }
            emit(&c.out, &pretty(&summary)?)?;
            let ok = summary.bound_violations == 0 && summary.turan_violations == 0;
            Ok(if ok {
                Outcome::Ok
            } else {
                Outcome::ClaimViolated
            })
        }
        Command::Report(c) => {
            let opts = ScalingOptions {
                effort: c.effort,
                seed: cfg.seed,
                cap: c.cap,
                timing: c.timing,
            };
            let rep = scaling_report(Construction::from_number(c.theorem)?, c.k, &c.grid.0, &opts)?;
            let text = match c.format {
                Format::Csv => rep.to_csv(),
                Format::Json => pretty(&rep)?,
            };
            emit(&c.out, &text)?;
            let ok = rep
                .rows
                .iter()
                .all(|r| r.s0_lower as u128 <= r.s0_bound && r.s1_lower as u128 <= r.s1_bound);
            Ok(if ok {
                Outcome::Ok
            } else {
                Outcome::ClaimViolated
            })
        }
        Command::Oracle(c) => {
            let loaded =
                match (&c.minterm, c.theorem, c.n, c.k) {
                    (Some(path), ..) => load_minterm(path)?,
                    (None, Some(t), Some(n), Some(k)) => LoadedMinterm::Labeled(
                        LabeledMinterm::new(Construction::from_number(t)?, n, k)?,
                    ),
                    _ => {
                        return Err(invalid(
                            "oracle needs --minterm FILE or --theorem T --n N --k K",
                        ))
                    }
                };
            let f = minterm_function(loaded, c.group.clone(), c.cap)?;
            let (table, report) = bruteforce_oracle(&f, c.cap, MeasureBudget::default())?;
            if let Some(path) = &c.table_out {
                write_atomic(path, &encode_table(&table))?;
            }
            emit(&c.out, &pretty(&report)?)?;
            Ok(Outcome::Ok)
        }
    }
}

fn cluster_csv(reports: &[ClusterReport]) -> String {
    let mut s = String::from(
        "n,k,construction,count,placements,ratio,enumeration_size,truncation,histogram\n",
    );
    for r in reports {
        let hist: Vec<String> = r.histogram.iter().map(u64::to_string).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.k,
            r.construction.id(),
            r.count,
            r.placements,
            r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default(),
            r.enumeration_size,
            r.truncation.map(|t| t.to_string()).unwrap_or_default(),
            hist.join(";")
        ));
    }
    s
}

fn measure(c: &MeasureArgs) -> Result<Outcome> {
    let table: TruthTable = match (&c.table, &c.minterm) {
        (Some(path), _) => read_table(path)?,
        (None, Some(path)) => {
            minterm_function(load_minterm(path)?, c.group.clone(), c.cap)?.materialize(c.cap)?
        }
        (None, None) => return Err(invalid("measure needs --table FILE or --minterm FILE")),
    };
    let budget = MeasureBudget {
        global_vars: c.exact_vars,
        ..MeasureBudget::default()
    };
    let wants = |ms: &[Measure]| c.measures.iter().any(|m| ms.contains(m));
    let mut results: Vec<(&'static str, MeasureReport)> = Vec::new();
    if wants(&[Measure::S, Measure::S0, Measure::S1]) {
        let p = sensitivity_profile(&table);
        for (m, name, r) in [
            (Measure::S, "s", p.s),
            (Measure::S0, "s0", p.s0),
            (Measure::S1, "s1", p.s1),
        ] {
            if c.measures.contains(&m) {
                results.push((name, r));
            }
        }
    }
    if wants(&[Measure::Bs]) {
        results.push(("bs", block_sensitivity(&table, budget)?));
    }
    if wants(&[Measure::C, Measure::C0, Measure::C1]) {
        let p = certificate_profile(&table, budget)?;
        for (m, name, r) in [
            (Measure::C, "c", p.c),
            (Measure::C0, "c0", p.c0),
            (Measure::C1, "c1", p.c1),
        ] {
            if c.measures.contains(&m) {
                results.push((name, r));
            }
        }
    }
    let text = match c.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n_vars".into(), json!(table.n_vars()));
            for (name, r) in &results {
                obj.insert((*name).into(), serde_json::to_value(r)?);
            }
            pretty(&Value::Object(obj))?
        }
        Format::Csv => {
            let mut s = String::from("measure,value,witness\n");
            for (name, r) in &results {
                let w = r.witness_index().map(|x| x.to_string()).unwrap_or_default();
                s.push_str(&format!("{name},{},{w}\n", r.value));
            }
            s
        }
    };
    emit(&c.out, &text)?;
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("hypersens").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grid_forms() {
        assert_eq!(
            "9:14".parse::<Grid>().unwrap().0,
            vec![9, 10, 11, 12, 13, 14]
        );
        assert_eq!("9:16:3".parse::<Grid>().unwrap().0, vec![9, 12, 15]);
        assert_eq!("16,25,36".parse::<Grid>().unwrap().0, vec![16, 25, 36]);
        assert!("5:3".parse::<Grid>().is_err());
        assert!("1:2:0".parse::<Grid>().is_err());
        assert!("a,b".parse::<Grid>().is_err());
    }

    #[test]
    fn config_round_trips() {
        let cases: &[&[&str]] = &[
            &[
                "construct",
                "--theorem",
                "1",
                "--k",
                "3",
                "--n",
                "12",
                "--out",
                "p.json",
            ],
            &[
                "--workers",
                "2",
                "verify",
                "claim1",
                "--k",
                "3",
                "--grid",
                "9:14",
            ],
            &[
                "verify", "claim2", "--k", "4", "--grid", "16,25", "--r-max", "2", "--format",
                "csv",
            ],
            &["measure", "--table", "f.bin", "--measures", "s,bs,c1"],
            &[
                "--seed",
                "7",
                "scan",
                "--n",
                "5",
                "--k",
                "2",
                "--mode",
                "sampled",
                "--samples",
                "10",
            ],
            &[
                "report",
                "--theorem",
                "1",
                "--k",
                "3",
                "--grid",
                "9:16",
                "--timing",
                "--format",
                "json",
            ],
            &[
                "oracle",
                "--theorem",
                "3",
                "--n",
                "3",
                "--k",
                "3",
                "--group",
                "partite:3:3",
            ],
        ];
        for args in cases {
            let cfg = parse(args);
            let again = RunConfig::try_parse_from(
                std::iter::once("hypersens".to_string()).chain(cfg.to_args()),
            )
            .unwrap();
            assert_eq!(again, cfg, "{args:?}");
            assert_eq!(again.to_args(), cfg.to_args());
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        let argv = |a: &[&str]| {
            std::iter::once("hypersens")
                .chain(a.iter().copied())
                .map(String::from)
                .collect()
        };
        assert_eq!(run(argv(&["frobnicate"])), 2);
        assert_eq!(
            run(argv(&[
                "construct",
                "--theorem",
                "9",
                "--n",
                "9",
                "--k",
                "3"
            ])),
            2
        );
        assert_eq!(
            run(argv(&[
                "construct",
                "--theorem",
                "1",
                "--n",
                "5",
                "--k",
                "3"
            ])),
            2
        );
        assert_eq!(
            run(argv(&["verify", "claim1", "--k", "3", "--grid", "x"])),
            2
        );
    }
}
