//! Command-line front end: build systems, emit tables, run verification
//! sweeps, produce certificates. Text by default, `--json` for the
//! documented schemas; identical arguments yield byte-identical output.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cascade::{kostant_cascade, normal_form, OrthoSet};
use crate::certifier::{
    formality_certificate, subgroups_of_z2xzk, NuSpec, SigmaSpec,
};
use crate::diagram::{diagram_automorphisms, folded_fixed_type, folding_table, DiagramAut};
use crate::error::Error;
use crate::oracle::AbelianTag;
use crate::rootsys::{Root, RootSystem, SystemType};
use crate::verify;
use crate::{Coeff, Result};

#[derive(Parser, Debug)]
#[command(
    name = "liecascade",
    about = "Exact root-system combinatorics: foldings, cascades, normal forms, certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a root system and print its Cartan matrix and positive roots.
    Roots {
        /// System type, e.g. D4 or e6 (case-insensitive).
        r#type: String,
        #[arg(long)]
        json: bool,
    },
    /// Print folding rows (source, automorphism order, fixed-point type).
    Fold {
        /// Source type; omit with --all for the whole table.
        r#type: Option<String>,
        /// Emit the whole table up to rank 8.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// The chain cascade of a system.
    Cascade {
        r#type: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a strongly orthogonal set under a diagram automorphism.
    #[command(name = "normal-form")]
    NormalForm {
        #[arg(long = "type")]
        r#type: String,
        /// JSON array of coefficient vectors, e.g. [[1,2,2,1,1],[0,0,1,1,1]].
        #[arg(long)]
        set: String,
        /// Diagram automorphism: "id", "flip", or a JSON array of 1-based images.
        #[arg(long)]
        nu: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification sweep; nonzero failures exit with status 1.
    Verify {
        #[arg(value_enum)]
        check: CheckKind,
        #[arg(long = "type")]
        r#type: Option<String>,
        /// Bound on the order of the second automorphism in the star sweep.
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// Seed for randomized round trips.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker count for the larger sweeps (env: LIECASCADE_JOBS).
        #[arg(long, env = "LIECASCADE_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Produce a formality certificate for a commuting pair.
    Certify {
        #[arg(long = "type")]
        r#type: String,
        /// "id" or JSON {"word":[...],"reflections":[[...]],"nu":"id"|"flip"|"rot"|[...]}.
        #[arg(long)]
        sigma1: String,
        #[arg(long)]
        sigma2: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate and classify the subgroups of Z2 x Zk.
    Subgroups {
        k: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Star,
    Prop71,
    Counts,
    Strings,
    Parity,
}

/// Run with the given argument vector; returns the process exit code.
/// 0 = success, 1 = verification failure or counterexample, 2 = usage error.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version on stdout with success
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CounterexampleFound(_) => 1,
                Error::InternalInvariantViolation(_) => 1,
                _ => 2,
            }
        }
    }
}

fn build(name: &str) -> Result<RootSystem<Coeff>> {
    RootSystem::build(SystemType::parse(name)?)
}

fn roots_json(r: &Root<Coeff>) -> Vec<i64> {
    r.0.clone()
}

#[derive(Serialize)]
struct RootsDoc {
    #[serde(rename = "type")]
    stype: String,
    cartan: Vec<Vec<i64>>,
    positives: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct FoldRow {
    source: String,
    order: usize,
    fixed: String,
}

#[derive(Serialize)]
struct NormalFormDoc {
    word: Vec<usize>,
    normal: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct SweepDoc {
    check: String,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    stype: Option<String>,
    checked: usize,
    skipped: usize,
    failed: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct Prop71Doc {
    check: String,
    #[serde(rename = "type")]
    stype: String,
    total_subsets: usize,
    form1: usize,
    form2: usize,
    precondition_rejected: usize,
    roundtrips: usize,
    counterexamples: Vec<String>,
}

#[derive(Serialize)]
struct SubgroupDoc {
    size: usize,
    kind: &'static str,
    parameter: usize,
    generators: Vec<Vec<u64>>,
    elements: Vec<Vec<u64>>,
}

fn parse_nu(rs: &RootSystem<Coeff>, spec: &str) -> Result<DiagramAut> {
    match spec.trim() {
        "id" => Ok(DiagramAut::identity(rs.rank())),
        "flip" => {
            let sigma = SigmaSpec::id().with_nu(NuSpec::Flip).build(rs)?;
            Ok(sigma.diag_part().clone())
        }
        "rot" => {
            let sigma = SigmaSpec::id().with_nu(NuSpec::Rot).build(rs)?;
            Ok(sigma.diag_part().clone())
        }
        other => {
            let images: Vec<usize> = serde_json::from_str(other).map_err(|e| {
                Error::PreconditionViolated(format!("cannot parse permutation: {e}"))
            })?;
            DiagramAut::from_one_based(rs, &images)
        }
    }
}

fn parse_set(rs: &RootSystem<Coeff>, spec: &str) -> Result<OrthoSet<Coeff>> {
    let vecs: Vec<Vec<i64>> = serde_json::from_str(spec)
        .map_err(|e| Error::PreconditionViolated(format!("cannot parse root set: {e}")))?;
    let roots = vecs
        .into_iter()
        .map(|v| rs.root_from_coeffs(v))
        .collect::<Result<Vec<_>>>()?;
    OrthoSet::new(rs, roots)
}

#[derive(serde::Deserialize)]
struct SigmaJson {
    #[serde(default)]
    word: Vec<usize>,
    #[serde(default)]
    reflections: Vec<Vec<i64>>,
    #[serde(default)]
    nu: Option<serde_json::Value>,
}

fn parse_sigma(spec: &str) -> Result<SigmaSpec> {
    let trimmed = spec.trim();
    if trimmed == "id" {
        return Ok(SigmaSpec::id());
    }
    let parsed: SigmaJson = serde_json::from_str(trimmed)
        .map_err(|e| Error::PreconditionViolated(format!("cannot parse sigma spec: {e}")))?;
    let nu = match parsed.nu {
        None => NuSpec::Id,
        Some(serde_json::Value::String(s)) => match s.as_str() {
            "id" => NuSpec::Id,
            "flip" => NuSpec::Flip,
            "rot" => NuSpec::Rot,
            other => {
                return Err(Error::PreconditionViolated(format!(
                    "unknown diagram automorphism name {other:?}"
                )))
            }
        },
        Some(serde_json::Value::Array(items)) => {
            let images = items
                .into_iter()
                .map(|v| {
                    v.as_u64().map(|x| x as usize).ok_or_else(|| {
                        Error::PreconditionViolated("permutation images must be integers".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            NuSpec::Perm(images)
        }
        Some(_) => {
            return Err(Error::PreconditionViolated(
                "nu must be a string or an array".into(),
            ))
        }
    };
    Ok(SigmaSpec {
        word: parsed.word,
        reflections: parsed.reflections,
        nu,
    })
}

fn print_doc<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("serialization")
    );
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Roots { r#type, json } => {
            let rs = build(&r#type)?;
            if json {
                print_doc(&RootsDoc {
                    stype: rs.stype().to_string(),
                    cartan: rs.cartan().to_vec(),
                    positives: rs.positives().iter().map(roots_json).collect(),
                });
            } else {
                println!("{} : {} roots, rank {}", rs.stype(), rs.num_roots(), rs.rank());
                println!("cartan:");
                for row in rs.cartan() {
                    println!(
                        "  [{}]",
                        row.iter()
                            .map(|x| format!("{x:2}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                println!("positive roots (height, coefficients):");
                for r in rs.positives() {
                    println!("  {:2}  {r}", r.height());
                }
            }
            Ok(0)
        }
        Command::Fold { r#type, all, json } => {
            let rows: Vec<FoldRow> = if all || r#type.is_none() {
                folding_table(8)
                    .into_iter()
                    .map(|row| FoldRow {
                        source: row.source.to_string(),
                        order: row.order,
                        fixed: row.fixed.to_string(),
                    })
                    .collect()
            } else {
                let rs = build(r#type.as_deref().unwrap())?;
                let mut rows = Vec::new();
                for nu in diagram_automorphisms(&rs)
                    .into_iter()
                    .filter(|a| !a.is_identity())
                {
                    let fixed = folded_fixed_type(&rs, &nu)?;
                    rows.push(FoldRow {
                        source: rs.stype().to_string(),
                        order: nu.order(),
                        fixed: fixed.to_string(),
                    });
                }
                rows.sort_by(|a, b| a.order.cmp(&b.order).then(a.fixed.cmp(&b.fixed)));
                rows.dedup_by(|a, b| a.order == b.order && a.fixed == b.fixed);
                if rows.is_empty() {
                    return Err(Error::NoOuter(rs.stype().to_string()));
                }
                rows
            };
            if json {
                print_doc(&rows);
            } else {
                println!("source  order  fixed");
                for row in rows {
                    println!("{:<7} {:<6} {}", row.source, row.order, row.fixed);
                }
            }
            Ok(0)
        }
        Command::Cascade { r#type, json } => {
            let rs = build(&r#type)?;
            let cascade = kostant_cascade(&rs)?;
            if json {
                let doc: Vec<Vec<i64>> = cascade.roots().iter().map(roots_json).collect();
                print_doc(&doc);
            } else {
                println!("cascade of {} ({} roots):", rs.stype(), cascade.len());
                for r in cascade.roots() {
                    println!("  {r}");
                }
            }
            Ok(0)
        }
        Command::NormalForm {
            r#type,
            set,
            nu,
            json,
        } => {
            let rs = build(&r#type)?;
            let omega = parse_set(&rs, &set)?;
            let aut = parse_nu(&rs, &nu)?;
            let (word, nf) = normal_form(&rs, &omega, &aut)?;
            if json {
                print_doc(&NormalFormDoc {
                    word: word.letters().to_vec(),
                    normal: nf.roots().iter().map(roots_json).collect(),
                });
            } else {
                println!("word: {word}");
                println!("normal form: {nf}");
            }
            Ok(0)
        }
        Command::Verify {
            check,
            r#type,
            max_order,
            seed,
            jobs,
            json,
        } => run_verify(check, r#type, max_order, seed, jobs, json),
        Command::Certify {
            r#type,
            sigma1,
            sigma2,
            json,
        } => {
            let rs = build(&r#type)?;
            let s1 = parse_sigma(&sigma1)?.build(&rs)?;
            let s2 = parse_sigma(&sigma2)?.build(&rs)?;
            let cert = formality_certificate(&rs, s1, s2)?;
            if json {
                println!("{}", cert.to_json_pretty());
            } else {
                println!("case path: {}", cert.case_path.as_str());
                println!(
                    "omega normal form: {{{}}}",
                    cert.omega_normal_form
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                println!("star: {}", cert.star);
                println!("parity even: {}", cert.parity_even);
                println!("lifts to involution: {}", cert.lift);
                println!(
                    "ranks: dim_s={} fix_sigma1={} omega={} bound {} <= {}",
                    cert.ranks.dim_s,
                    cert.ranks.dim_fix_sigma1,
                    cert.ranks.omega_count,
                    cert.ranks.bound_lhs,
                    cert.ranks.bound_rhs
                );
                println!("citations: {}", cert.citations.join(", "));
                println!("verdict: {}", cert.verdict);
            }
            Ok(0)
        }
        Command::Subgroups { k, json } => {
            let subs = subgroups_of_z2xzk(k)?;
            let docs: Vec<SubgroupDoc> = subs
                .iter()
                .map(|s| {
                    let (kind, parameter) = match s.classification {
                        AbelianTag::Cyclic(n) => ("cyclic", n),
                        AbelianTag::TwoByR(r) => ("two-by-r", r),
                    };
                    SubgroupDoc {
                        size: s.elements.len(),
                        kind,
                        parameter,
                        generators: s.generators.iter().map(|&(a, b)| vec![a, b]).collect(),
                        elements: s.elements.iter().map(|&(a, b)| vec![a, b]).collect(),
                    }
                })
                .collect();
            if json {
                print_doc(&docs);
            } else {
                println!("subgroups of Z2 x Z{k}: {}", docs.len());
                for d in docs {
                    let name = match d.kind {
                        "cyclic" => format!("Z{}", d.parameter),
                        _ => format!("Z2 x Z{}", d.parameter),
                    };
                    println!(
                        "  size {:>3}  {:<10} generators {:?}",
                        d.size, name, d.generators
                    );
                }
            }
            Ok(0)
        }
    }
}

fn type_or_err(t: Option<String>) -> Result<String> {
    t.ok_or_else(|| Error::PreconditionViolated("--type is required for this check".into()))
}

fn run_verify(
    check: CheckKind,
    stype: Option<String>,
    max_order: usize,
    seed: u64,
    jobs: usize,
    json: bool,
) -> Result<i32> {
    match check {
        CheckKind::Star => {
            let rs = build(&type_or_err(stype)?)?;
            let rep = verify::star_sweep(&rs, max_order)?;
            emit_sweep("star", Some(rs.stype().to_string()), &rep, json);
            Ok(if rep.ok() { 0 } else { 1 })
        }
        CheckKind::Counts => {
            let rep = verify::counts_check::<Coeff>(8)?;
            emit_sweep("counts", None, &rep, json);
            Ok(if rep.ok() { 0 } else { 1 })
        }
        CheckKind::Strings => {
            let rs = build(&type_or_err(stype)?)?;
            if rs.rank() > 6 {
                return Err(Error::PreconditionViolated(
                    "string sweep limited to rank <= 6".into(),
                ));
            }
            let rep = verify::strings_check(&rs)?;
            emit_sweep("strings", Some(rs.stype().to_string()), &rep, json);
            Ok(if rep.ok() { 0 } else { 1 })
        }
        CheckKind::Parity => {
            let rs = build(&type_or_err(stype)?)?;
            let rep = verify::parity_check(&rs)?;
            emit_sweep("parity", Some(rs.stype().to_string()), &rep, json);
            Ok(if rep.ok() { 0 } else { 1 })
        }
        CheckKind::Prop71 => {
            let rs = build(&type_or_err(stype)?)?;
            let rep = verify::prop71_sweep(&rs, seed, jobs)?;
            if json {
                print_doc(&Prop71Doc {
                    check: "prop71".into(),
                    stype: rs.stype().to_string(),
                    total_subsets: rep.total_subsets,
                    form1: rep.form1,
                    form2: rep.form2,
                    precondition_rejected: rep.precondition_rejected,
                    roundtrips: rep.roundtrips,
                    counterexamples: rep.counterexamples.clone(),
                });
            } else {
                println!("subsets: {}", rep.total_subsets);
                println!("form1: {}", rep.form1);
                println!("form2: {}", rep.form2);
                println!("precondition rejected: {}", rep.precondition_rejected);
                println!("roundtrips: {}", rep.roundtrips);
                println!("counterexamples: {}", rep.counterexamples.len());
                for c in &rep.counterexamples {
                    println!("  {c}");
                }
            }
            Ok(if rep.ok() { 0 } else { 1 })
        }
    }
}

fn emit_sweep(check: &str, stype: Option<String>, rep: &verify::SweepReport, json: bool) {
    if json {
        print_doc(&SweepDoc {
            check: check.into(),
            stype,
            checked: rep.checked,
            skipped: rep.skipped,
            failed: rep.failed,
            failures: rep.failures.clone(),
        });
    } else {
        println!("checked: {}", rep.checked);
        println!("skipped: {}", rep.skipped);
        println!("failed: {}", rep.failed);
        for f in &rep.failures {
            println!("  {f}");
        }
    }
}
