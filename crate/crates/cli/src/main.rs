// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `hsfm`: solve, verify, benchmark and generate instances.

mod report;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hsfm_core::instance::{Adapter, Instance, Problem};
use hsfm_core::reference::{brute_force, random_instance, FamilyClass, FunctionClass};
use hsfm_core::{Error, Subset};

use report::{braces, label_sets, parse_sets, Mode, Report};

#[derive(Parser)]
#[command(
    name = "hsfm",
    version,
    about = "Minimal minimizers of symmetric crossing-submodular functions over hereditary families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        path: PathBuf,
        /// Report every minimal optimal set instead of one.
        #[arg(long)]
        all_minimal: bool,
        /// auto, queyranne or rizzi.
        #[arg(long, default_value = "auto")]
        adapter: Adapter,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
    /// Compare the solver with exhaustive search.
    Verify {
        /// Instance file; omit to run a random campaign.
        path: Option<PathBuf>,
        /// A `solve --out json` report to check as well; `-` reads stdin.
        #[arg(long)]
        report: Option<String>,
        #[arg(long, conflicts_with = "path")]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Oracle-call counts on random graph-cut instances under cardinality constraints, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a random instance.
    Gen {
        /// graph_cut, hypergraph_cut, modular_offset or distance_boundary.
        #[arg(long, default_value = "graph_cut")]
        function: FunctionClass,
        /// cardinality, knapsack, partition, graphic, forbidden, intersection or exclude.
        #[arg(long, default_value = "cardinality")]
        family: FamilyClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible => 2,
            Error::TrivialFamily => 3,
            Error::TooLarge { .. } => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

const EXIT_MISMATCH: u8 = 5;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(1, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{path}: {e}")))
    }
}

fn parse_error(path: &str, e: &serde_json::Error) -> Failure {
    Failure::new(1, format!("{path}:{}:{}: parse error: {e}", e.line(), e.column()))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let name = path.display().to_string();
    let text = read_input(&name)?;
    Instance::from_json(&text).map_err(|e| parse_error(&name, &e))
}

fn solve(problem: &Problem, adapter: Adapter, all_minimal: bool) -> Result<Report, Failure> {
    let route = problem.resolve(adapter)?;
    let start = Instant::now();
    let (value, sets, oracle_calls) = if all_minimal {
        let sol = problem.solve_minimals(&route)?;
        (sol.value, sol.sets, sol.oracle_calls)
    } else {
        let sol = problem.solve_optimal(&route)?;
        (sol.value, vec![sol.set], sol.oracle_calls)
    };
    Ok(Report {
        value,
        sets: label_sets(&problem.ground, &sets),
        mode: if all_minimal { Mode::AllMinimal } else { Mode::Optimal },
        adapter: route.name().to_string(),
        oracle_calls,
        wall_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
    })
}

fn run_solve(path: &Path, all_minimal: bool, adapter: Adapter, out: OutFormat) -> Result<(), Failure> {
    let problem = load(path)?.build()?;
    let report = solve(&problem, adapter, all_minimal)?;
    match out {
        OutFormat::Json => println!("{}", serde_json::to_string(&report).expect("reports serialize")),
        OutFormat::Text => print!("{}", report.to_text()),
    }
    Ok(())
}

/// Differences between the solver, the brute-force oracle and any claimed
/// answers. Empty on a match.
fn compare(instance: &Instance, claimed: Option<&Report>) -> Result<(Vec<String>, String), Failure> {
    let problem = instance.build()?;
    let ground = &problem.ground;
    let bf = brute_force(&*problem.function, &*problem.family)?;
    let route = problem.resolve(Adapter::Auto)?;
    let one = problem.solve_optimal(&route)?;
    let all = problem.solve_minimals(&route)?;
    let show = |sets: &[Subset]| {
        label_sets(ground, sets)
            .iter()
            .map(|s| braces(s))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut diffs = Vec::new();

    if one.value != bf.min_value {
        diffs.push(format!("optimal value {} != brute force {}", one.value, bf.min_value));
    }
    if !bf.minimal_minimizers.contains(&one.set) {
        diffs.push(format!(
            "optimal set {} is not a minimal minimizer",
            show(std::slice::from_ref(&one.set))
        ));
    }
    let mut got = all.sets.clone();
    got.sort();
    if all.value != bf.min_value {
        diffs.push(format!(
            "all-minimal value {} != brute force {}",
            all.value, bf.min_value
        ));
    }
    if got != bf.minimal_minimizers {
        diffs.push(format!(
            "all-minimal sets {} != brute force {}",
            show(&got),
            show(&bf.minimal_minimizers)
        ));
    }
    if let Some(exp) = &instance.expected {
        if exp.value != bf.min_value {
            diffs.push(format!("expected value {} != brute force {}", exp.value, bf.min_value));
        }
        match parse_sets(ground, &exp.sets) {
            Ok(sets) if sets == bf.minimal_minimizers => {}
            Ok(sets) => diffs.push(format!(
                "expected sets {} != brute force {}",
                show(&sets),
                show(&bf.minimal_minimizers)
            )),
            Err(e) => diffs.push(format!("expected sets: {e}")),
        }
    }
    if let Some(r) = claimed {
        if r.value != bf.min_value {
            diffs.push(format!("report value {} != brute force {}", r.value, bf.min_value));
        }
        match (parse_sets(ground, &r.sets), r.mode) {
            (Err(e), _) => diffs.push(format!("report sets: {e}")),
            (Ok(sets), Mode::AllMinimal) if sets != bf.minimal_minimizers => diffs.push(format!(
                "report sets {} != brute force {}",
                show(&sets),
                show(&bf.minimal_minimizers)
            )),
            (Ok(sets), Mode::Optimal) if sets.len() != 1 || !bf.minimal_minimizers.contains(&sets[0]) => {
                diffs.push(format!("report set {} is not a minimal minimizer", show(&sets)))
            }
            _ => {}
        }
    }
    let summary = format!(
        "value {}, minimal sets {}, oracle calls {} + {}",
        bf.min_value,
        show(&bf.minimal_minimizers),
        one.oracle_calls,
        all.oracle_calls
    );
    Ok((diffs, summary))
}

fn run_verify(path: Option<&Path>, report: Option<&str>, samples: Option<u64>, seed: u64) -> Result<(), Failure> {
    if let Some(path) = path {
        let instance = load(path)?;
        let claimed = match report {
            Some(r) => {
                let text = read_input(r)?;
                Some(serde_json::from_str::<Report>(&text).map_err(|e| parse_error(r, &e))?)
            }
            None => None,
        };
        let (diffs, summary) = compare(&instance, claimed.as_ref())?;
        println!("{}: {summary}", path.display());
        return finish(&diffs);
    }
    let samples = samples.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut failed = 0;
    for i in 0..samples {
        let n = rng.gen_range(2..=9);
        let fc = FunctionClass::ALL[rng.gen_range(0..FunctionClass::ALL.len())];
        let fam = FamilyClass::ALL[rng.gen_range(0..FamilyClass::ALL.len())];
        let instance = random_instance(rng.gen(), n, fc, fam)?;
        let (diffs, _) = compare(&instance, None)?;
        if !diffs.is_empty() {
            failed += 1;
            println!("sample {i} (n={n}, {}, {}): MISMATCH", fc.name(), fam.name());
            println!("{}", instance.to_json());
            mismatches.extend(diffs.into_iter().map(|d| format!("sample {i}: {d}")));
        }
    }
    println!("{}/{samples} MATCH", samples - failed);
    finish(&mismatches)
}

fn finish(diffs: &[String]) -> Result<(), Failure> {
    if diffs.is_empty() {
        println!("MATCH");
        Ok(())
    } else {
        println!("MISMATCH");
        for d in diffs {
            println!("  {d}");
        }
        Err(Failure::new(EXIT_MISMATCH, format!("{} difference(s)", diffs.len())))
    }
}

fn run_bench(sizes: &[usize], trials: u64, seed: u64) -> Result<(), Failure> {
    if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
        return Err(Failure::new(1, format!("size {n} is below 2")));
    }
    let trials = trials.max(1);
    println!("n,algorithm,mean_calls,max_calls,max_calls_over_n3,mean_ms");
    for &n in sizes {
        let mut stats = [(0u64, 0u64, 0f64); 2];
        for trial in 0..trials {
            let sub_seed = seed.wrapping_mul(1_000_003).wrapping_add(n as u64 * 7919 + trial);
            let problem = random_instance(sub_seed, n, FunctionClass::GraphCut, FamilyClass::Cardinality)?.build()?;
            for (k, all) in [false, true].into_iter().enumerate() {
                let r = solve(&problem, Adapter::Queyranne, all)?;
                stats[k].0 += r.oracle_calls;
                stats[k].1 = stats[k].1.max(r.oracle_calls);
                stats[k].2 += r.wall_ms;
            }
        }
        for (name, (sum, max, ms)) in ["find_optimal", "find_minimals"].into_iter().zip(stats) {
            println!(
                "{n},{name},{:.1},{max},{:.4},{:.3}",
                sum as f64 / trials as f64,
                max as f64 / (n as f64).powi(3),
                ms / trials as f64
            );
        }
    }
    Ok(())
}

fn run_gen(
    function: FunctionClass,
    family: FamilyClass,
    n: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let text = random_instance(seed, n, function, family)?.to_json();
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve {
            path,
            all_minimal,
            adapter,
            out,
        } => run_solve(&path, all_minimal, adapter, out),
        Command::Verify {
            path,
            report,
            samples,
            seed,
        } => run_verify(path.as_deref(), report.as_deref(), samples, seed),
        Command::Bench { sizes, trials, seed } => run_bench(&sizes, trials, seed),
        Command::Gen {
            function,
            family,
            n,
            seed,
            out,
        } => run_gen(function, family, n, seed, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
