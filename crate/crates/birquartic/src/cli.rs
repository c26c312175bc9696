//! The `birquartic` command-line interface.
//!
//! Every subcommand prints one machine-readable JSON document on stdout —
//! an envelope with a run manifest (subcommand, version, input digests,
//! seed, outcome) and the result — and keeps human diagnostics on stderr.
//! Identical inputs and seed produce byte-identical stdout.
//!
//! Exit codes: 0 success / holds / equal; 1 property violation found;
//! 2 parse or validation error; 3 descent stuck or inadmissible;
//! 4 words distinct; 5 undecided.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::degree::{apply_word, compose, DegreeVector};
use crate::elliptic::field::{PrimeField, Rationals};
use crate::elliptic::relations::{config_relation_suite, RelationCheck};
use crate::exec::ExecMode;
use crate::incidence::QuarticIncidence;
use crate::lattice::corollary::corollary_case;
use crate::lattice::{
    chain_pullback, check_star, classify_dynkin, definiteness, summarize_components, CurveConfig,
    Definiteness,
};
use crate::quartic::{coords_from_json, verify_incidence, HomogPoly};
use crate::rat::fmt_rat;
use crate::untwist::{untwist, DescentStatus};
use crate::word::{cluster_normal_form, equal, free_reduce, Verdict, Word};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "birquartic", version, disable_help_subcommand = true)]
#[command(about = "Exact involution calculus on factorial nodal quartic threefolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an incidence configuration against the combinatorial rules.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Apply a word of generators to a degree vector.
    Apply {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Composite action matrix of a word over the union tracked basis.
    Compose {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Run the degree-decreasing descent on a vector.
    Untwist {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        /// Write the full trace JSON to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Freely reduce a word and report its cluster normal form when the
    /// word is supported on a single cluster.
    Normalize {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Decide equality of two words modulo the relations.
    Eq {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        w1: PathBuf,
        #[arg(long)]
        w2: PathBuf,
        /// Rewriting budget for mixed-cluster comparisons.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Verify the involution relations on sample curves, per cluster.
    VerifyRelations {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Prime field size, or `Q` for the rationals.
        #[arg(long, default_value = "1000000007")]
        field: String,
        /// Parallelism across independent sample chunks; 1 forces
        /// sequential execution.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Classify a (-2)-curve configuration: definiteness and Dynkin types.
    ClassifyLattice {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check the delete-one-vertex star condition after removing marked
    /// vertices.
    CheckStar {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex ids to mark.
        #[arg(long)]
        marked: Option<String>,
    },
    /// Exceptional-chain pull-back coefficients t/(k'+1).
    Duval {
        #[arg(long)]
        kprime: usize,
    },
    /// Reproduce one case of the center-exclusion tables.
    CorollaryCase {
        #[arg(long)]
        label: String,
    },
    /// Verify a quartic equation against incidence data and coordinates.
    AnalyzeQuartic {
        #[arg(long)]
        equation: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        coords: PathBuf,
    },
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Accumulates the run manifest while inputs load.
struct Manifest {
    subcommand: String,
    inputs: BTreeMap<String, serde_json::Value>,
    seed: Option<u64>,
}

impl Manifest {
    fn new(subcommand: &str) -> Self {
        Manifest {
            subcommand: subcommand.to_owned(),
            inputs: BTreeMap::new(),
            seed: None,
        }
    }

    fn load(&mut self, name: &str, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.insert(
            name.to_owned(),
            json!({
                "path": path.display().to_string(),
                "digest": format!("{:016x}", fnv1a64(&bytes)),
            }),
        );
        String::from_utf8(bytes).map_err(|_| Error::Parse("input is not UTF-8".into()))
    }

    fn to_json(&self, status: &str) -> serde_json::Value {
        json!({
            "subcommand": self.subcommand,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "seed": self.seed,
            "status": status,
        })
    }
}

fn emit(out: &mut impl Write, manifest: &Manifest, status: &str, result: serde_json::Value) {
    let doc = json!({ "manifest": manifest.to_json(status), "result": result });
    let _ = writeln!(out, "{doc}");
}

fn emit_error(out: &mut impl Write, err: &mut impl Write, manifest: &Manifest, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    let doc = json!({ "manifest": manifest.to_json("error"), "error": e.to_string() });
    let _ = writeln!(out, "{doc}");
    e.exit_code()
}

/// Runs the CLI; `argv[0]` is the program name.
pub fn run(argv: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes.
            if e.use_stderr() {
                let _ = writeln!(err, "{e}");
                let manifest = Manifest::new("unknown");
                let doc = json!({
                    "manifest": manifest.to_json("error"),
                    "error": "argument parsing failed",
                });
                let _ = writeln!(out, "{doc}");
                return 2;
            }
            let _ = writeln!(out, "{e}");
            return 0;
        }
    };
    let name = subcommand_name(&cli.cmd);
    let mut manifest = Manifest::new(name);
    match dispatch(cli.cmd, &mut manifest, out) {
        Ok(code) => code,
        Err(e) => emit_error(out, err, &manifest, &e),
    }
}

fn subcommand_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate { .. } => "validate",
        Cmd::Apply { .. } => "apply",
        Cmd::Compose { .. } => "compose",
        Cmd::Untwist { .. } => "untwist",
        Cmd::Normalize { .. } => "normalize",
        Cmd::Eq { .. } => "eq",
        Cmd::VerifyRelations { .. } => "verify-relations",
        Cmd::ClassifyLattice { .. } => "classify-lattice",
        Cmd::CheckStar { .. } => "check-star",
        Cmd::Duval { .. } => "duval",
        Cmd::CorollaryCase { .. } => "corollary-case",
        Cmd::AnalyzeQuartic { .. } => "analyze-quartic",
    }
}

fn load_config(manifest: &mut Manifest, path: &Path) -> Result<QuarticIncidence> {
    let text = manifest.load("config", path)?;
    QuarticIncidence::from_json(&text)
}

fn load_word(manifest: &mut Manifest, name: &str, path: &Path) -> Result<Word> {
    let text = manifest.load(name, path)?;
    Word::from_json(&text)
}

fn dispatch(cmd: Cmd, manifest: &mut Manifest, out: &mut impl Write) -> Result<i32> {
    match cmd {
        Cmd::Validate { config } => {
            let cfg = load_config(manifest, &config)?;
            let report = cfg.validate();
            let ok = report.is_empty();
            let status = if ok { "ok" } else { "violations" };
            emit(out, manifest, status, json!({ "violations": report }));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Apply {
            config,
            vector,
            word,
        } => {
            let cfg = load_config(manifest, &config)?;
            let vtext = manifest.load("vector", &vector)?;
            let v = DegreeVector::from_json(&vtext, &cfg)?;
            let w = load_word(manifest, "word", &word)?;
            w.validate(&cfg)?;
            let result = apply_word(&cfg, &w.letters, &v)?;
            emit(out, manifest, "ok", json!({ "vector": result.to_json() }));
            Ok(0)
        }
        Cmd::Compose { config, word } => {
            let cfg = load_config(manifest, &config)?;
            let w = load_word(manifest, "word", &word)?;
            w.validate(&cfg)?;
            let m = compose(&cfg, &w.letters)?;
            emit(out, manifest, "ok", json!({ "matrix": m.to_json() }));
            Ok(0)
        }
        Cmd::Untwist {
            config,
            vector,
            trace,
        } => {
            let cfg = load_config(manifest, &config)?;
            let vtext = manifest.load("vector", &vector)?;
            let v = DegreeVector::from_json(&vtext, &cfg)?;
            let t = untwist(&cfg, &v);
            let status = match &t.status {
                DescentStatus::Complete => "ok",
                DescentStatus::Stuck { .. } => "stuck",
                DescentStatus::Inadmissible { .. } => "inadmissible",
            };
            if let Some(path) = trace {
                std::fs::write(&path, serde_json::to_string_pretty(&t.to_json())?)?;
            }
            emit(
                out,
                manifest,
                status,
                json!({
                    "status": serde_json::to_value(&t.status).unwrap(),
                    "steps": t.steps.len(),
                    "generators": t
                        .generators()
                        .iter()
                        .map(|g| serde_json::to_value(g.to_wire()).unwrap())
                        .collect::<Vec<_>>(),
                    "final": t.final_vector.to_json(),
                }),
            );
            Ok(if t.is_complete() { 0 } else { 3 })
        }
        Cmd::Normalize { config, word } => {
            let cfg = load_config(manifest, &config)?;
            let w = load_word(manifest, "word", &word)?;
            w.validate(&cfg)?;
            let reduced = free_reduce(&w);
            let cluster = cluster_normal_form(&cfg, &reduced)
                .ok()
                .map(|(line, elem)| {
                    json!({
                        "line": line.0,
                        "parity": elem.parity,
                        "translation": elem.translation,
                    })
                });
            emit(
                out,
                manifest,
                "ok",
                json!({ "reduced": reduced.to_json(), "cluster": cluster }),
            );
            Ok(0)
        }
        Cmd::Eq {
            config,
            w1,
            w2,
            budget,
        } => {
            let cfg = load_config(manifest, &config)?;
            let a = load_word(manifest, "w1", &w1)?;
            let b = load_word(manifest, "w2", &w2)?;
            let verdict = equal(&cfg, &a, &b, budget)?;
            let (status, code) = match verdict {
                Verdict::Equal => ("ok", 0),
                Verdict::Distinct => ("distinct", 4),
                Verdict::Undecided => ("undecided", 5),
            };
            emit(
                out,
                manifest,
                status,
                json!({ "verdict": verdict, "budget": budget }),
            );
            Ok(code)
        }
        Cmd::VerifyRelations {
            config,
            samples,
            seed,
            field,
            jobs,
        } => {
            let cfg = load_config(manifest, &config)?;
            manifest.seed = Some(seed);
            let mode = ExecMode::for_jobs(jobs);
            let run = |mode| -> Result<Vec<RelationCheck>> {
                if field.trim() == "Q" {
                    config_relation_suite(&Rationals, &cfg, samples, seed, mode)
                } else {
                    let p: u64 = field
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad field `{field}`")))?;
                    config_relation_suite(&PrimeField::new(p)?, &cfg, samples, seed, mode)
                }
            };
            let checks = run_in_pool(jobs, move || run(mode))?;
            let all_passed = checks.iter().all(RelationCheck::passed);
            let status = if all_passed { "ok" } else { "violations" };
            emit(
                out,
                manifest,
                status,
                json!({
                    "field": field,
                    "samples": samples,
                    "checks": checks,
                    "all_passed": all_passed,
                }),
            );
            Ok(if all_passed { 0 } else { 1 })
        }
        Cmd::ClassifyLattice { input } => {
            let text = manifest.load("in", &input)?;
            let g = CurveConfig::from_json(&text)?;
            let classes = classify_dynkin(&g)?;
            let def = definiteness(&g.intersection_matrix());
            emit(
                out,
                manifest,
                "ok",
                json!({
                    "definiteness": definiteness_json(&def),
                    "components": summarize_components(&classes),
                }),
            );
            Ok(0)
        }
        Cmd::CheckStar { input, marked } => {
            let text = manifest.load("in", &input)?;
            let g = CurveConfig::from_json(&text)?;
            let marked: BTreeSet<String> = marked
                .as_deref()
                .unwrap_or("")
                .split(',')
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .collect();
            let verdict = check_star(&g, &marked)?;
            let holds = verdict.holds();
            let status = if holds { "ok" } else { "violations" };
            emit(
                out,
                manifest,
                status,
                json!({ "star": serde_json::to_value(&verdict).unwrap(), "marked": marked }),
            );
            Ok(if holds { 0 } else { 1 })
        }
        Cmd::Duval { kprime } => {
            if kprime == 0 {
                return Err(Error::Parse("kprime must be positive".into()));
            }
            let coeffs = chain_pullback(kprime);
            emit(
                out,
                manifest,
                "ok",
                json!({
                    "kprime": kprime,
                    "coefficients": coeffs.iter().map(fmt_rat).collect::<Vec<_>>(),
                }),
            );
            Ok(0)
        }
        Cmd::CorollaryCase { label } => {
            let case = corollary_case(&label)?;
            let classes = classify_dynkin(&case.graph)?;
            let mut found: Vec<_> = classes.iter().map(|c| c.label.clone()).collect();
            found.sort();
            let star = check_star(&case.graph, &BTreeSet::new())?;
            let matches = found == case.expected && star.holds();
            let status = if matches { "ok" } else { "violations" };
            emit(
                out,
                manifest,
                status,
                json!({
                    "label": case.label,
                    "description": case.description,
                    "graph": serde_json::to_value(&case.graph).unwrap(),
                    "components": summarize_components(&classes),
                    "cited": case.cited.to_string(),
                    "star": serde_json::to_value(&star).unwrap(),
                    "matches": matches,
                }),
            );
            Ok(if matches { 0 } else { 1 })
        }
        Cmd::AnalyzeQuartic {
            equation,
            config,
            coords,
        } => {
            let ftext = manifest.load("equation", &equation)?;
            let f = HomogPoly::from_json(&ftext)?;
            if f.nvars() != 5 || f.degree() != 4 {
                return Err(Error::Parse(
                    "the equation must be a quartic form in five variables".into(),
                ));
            }
            let cfg = load_config(manifest, &config)?;
            let ctext = manifest.load("coords", &coords)?;
            let cmap = coords_from_json(&ctext)?;
            let mismatches = verify_incidence(&f, &cfg, &cmap);
            let ok = mismatches.is_empty();
            let status = if ok { "ok" } else { "violations" };
            emit(
                out,
                manifest,
                status,
                json!({
                    "mismatches": mismatches,
                    "points_checked": cfg.points().len(),
                    "lines_checked": cfg.lines().len(),
                }),
            );
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn definiteness_json(def: &Definiteness) -> serde_json::Value {
    match def {
        Definiteness::NegativeSemidefinite { kernel } => json!({
            "kind": def.kind(),
            "kernel_dim": kernel.len(),
            "kernel": kernel
                .iter()
                .map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        _ => json!({ "kind": def.kind(), "kernel_dim": 0 }),
    }
}

/// Runs the closure inside a rayon pool of the requested size when the
/// parallel feature is enabled; otherwise runs it directly.
fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = jobs {
            if n > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("thread pool");
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("birquartic".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_temp(name: &str, content: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("birquartic-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{}-{name}", std::process::id()));
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn unknown_subcommand_exits_2() {
        let (code, out, _err) = run_cli(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"status\":\"error\""));
    }

    #[test]
    fn duval_emits_coefficients() {
        let (code, out, _) = run_cli(&["duval", "--kprime", "5"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["coefficients"][0], "1/6");
        assert_eq!(doc["manifest"]["subcommand"], "duval");
    }

    #[test]
    fn validate_and_exit_codes() {
        let good = write_temp(
            "good.json",
            r#"{"points":[{"id":"P1"}],"lines":[{"id":"L1","points":["P1"]}]}"#,
        );
        let (code, out, _) = run_cli(&["validate", "--config", good.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");

        let bad = write_temp(
            "bad.json",
            r#"{"points":[{"id":"P1","eckardt":true},{"id":"P2"}],
                "lines":[{"id":"L1","points":["P1","P2"]}]}"#,
        );
        let (code, out, _) = run_cli(&["validate", "--config", bad.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(out.contains("eckardt point"));

        let (code, _, err) = run_cli(&["validate", "--config", "/nonexistent/x.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn untwist_pair_vector() {
        let cfg = write_temp(
            "cfg.json",
            r#"{"points":[{"id":"P1"},{"id":"P2"}],"lines":[{"id":"L1","points":["P1","P2"]}]}"#,
        );
        let vec = write_temp(
            "vec.json",
            r#"{"mu":"13","nu":{"P1":"14","P2":"14","L1":"8"}}"#,
        );
        let (code, out, _) = run_cli(&[
            "untwist",
            "--config",
            cfg.to_str().unwrap(),
            "--vector",
            vec.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["steps"], 1);
        assert_eq!(doc["result"]["final"]["mu"], "1");
    }

    #[test]
    fn eq_exit_codes() {
        let cfg = write_temp(
            "cfg3.json",
            r#"{"points":[{"id":"P1"},{"id":"P2"},{"id":"P3"}],
                "lines":[{"id":"L1","points":["P1","P2","P3"]}]}"#,
        );
        let w1 = write_temp(
            "w1.json",
            r#"{"word":[{"type":"point","id":"P1"},{"type":"point","id":"P2"},{"type":"point","id":"P3"}]}"#,
        );
        let w2 = write_temp(
            "w2.json",
            r#"{"word":[{"type":"point","id":"P3"},{"type":"point","id":"P2"},{"type":"point","id":"P1"}]}"#,
        );
        let (code, _, _) = run_cli(&[
            "eq",
            "--config",
            cfg.to_str().unwrap(),
            "--w1",
            w1.to_str().unwrap(),
            "--w2",
            w2.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let w3 = write_temp("w3.json", r#"{"word":[{"type":"point","id":"P1"}]}"#);
        let (code, _, _) = run_cli(&[
            "eq",
            "--config",
            cfg.to_str().unwrap(),
            "--w1",
            w1.to_str().unwrap(),
            "--w2",
            w3.to_str().unwrap(),
        ]);
        assert_eq!(code, 4);
    }

    #[test]
    fn classify_lattice_d4() {
        let g = write_temp(
            "d4.json",
            r#"{"vertices":[{"id":"c"},{"id":"l1"},{"id":"l2"},{"id":"l3"}],
                "edges":[["c","l1",1],["c","l2",1],["c","l3",1]]}"#,
        );
        let (code, out, _) = run_cli(&["classify-lattice", "--in", g.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("\"label\":\"D4\""), "{out}");
        assert!(out.contains("negative_definite"));
    }

    #[test]
    fn verify_relations_is_deterministic() {
        let cfg = write_temp(
            "vr.json",
            r#"{"points":[{"id":"P1"},{"id":"P2"}],"lines":[{"id":"L1","points":["P1","P2"]}]}"#,
        );
        let args = [
            "verify-relations",
            "--config",
            cfg.to_str().unwrap(),
            "--samples",
            "64",
            "--seed",
            "9",
            "--field",
            "10007",
        ];
        let (code1, out1, _) = run_cli(&args);
        let (code2, out2, _) = run_cli(&args);
        assert_eq!(code1, 0);
        assert_eq!(code2, 0);
        assert_eq!(out1, out2, "same seed must give byte-identical output");
    }

    #[test]
    fn corollary_case_round_trips() {
        let (code, out, _) = run_cli(&["corollary-case", "--label", "3pts-generic-residual-line"]);
        assert_eq!(code, 0);
        assert!(out.contains("E6^(1)"));
        let (code, _, _) = run_cli(&["corollary-case", "--label", "no-such-case"]);
        assert_eq!(code, 2);
    }
}
