use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use dynlin_core::affine::{
    affine_centralizer, affine_conjugacy_test, affine_invariant, affine_zclass_invariant, fixed_point, normalize,
    reduced_translation_index, translation_index, AffineConjugacy, AffineMap,
};
use dynlin_core::canonical::{canonical_from_analysis, conjugacy_test, invariant_of, Conjugacy};
use dynlin_core::linalg::characteristic_polynomial;
use dynlin_core::operator::{centralizer_structure, orbit_cell, Analysis, Cell};
use dynlin_core::oracle::{run_check, CheckKind, CheckReport};
use dynlin_core::poly::Provenance;
use dynlin_core::sn::{sn_from_analysis, PrimeReason};
use dynlin_core::zclass::{enumerate_zclasses, generating_series, zclass_invariant, zclass_equal, FieldClass};
use dynlin_core::Ternary;
use serde_json::{json, Value};

use crate::problem::{matrix_json, parse_problem, parse_vector, vector_json, ProblemFile};

#[derive(Debug, Parser)]
#[command(name = "dynlin", version, about = "Classify linear and affine maps over exact fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal and characteristic polynomials, primaries, flags, centralizer, S+N and z-class.
    Analyze { input: String },
    /// Canonical form and a conjugating matrix.
    Rcf { input: String },
    /// Decide whether two matrices are conjugate.
    Conjugate { a: String, b: String },
    /// Semisimple plus nilpotent decomposition.
    Sn { input: String },
    /// Refined invariant flag of every primary component.
    Flag { input: String },
    /// Centralizer basis and structure.
    Centralizer { input: String },
    /// Flag cell of a vector, one entry per primary component.
    OrbitCell {
        input: String,
        /// Comma-separated literals; defaults to the file's `vector`.
        #[arg(long)]
        vector: Option<String>,
    },
    /// z-class invariant of A, or whether A and B are z-equivalent.
    Zclass { a: String, b: Option<String> },
    /// List the z-classes in dimension n.
    ZclassEnumerate {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: usize,
    },
    /// Print z(n) for n = 0..=max-n, one `n z(n)` pair per line.
    Zcount {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Affine maps x -> Ax + v, read from `matrix` and `vector`.
    Affine {
        #[command(subcommand)]
        command: AffineCommand,
    },
    /// Compare the library with brute force over a tiny prime field.
    Oracle {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// One of conjugacy, zclass, orbits, affine, units, commuting; all by default.
        #[arg(long)]
        check: Option<CheckKind>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AffineCommand {
    Classify { input: String },
    Conjugate { a: String, b: String },
    Centralizer { input: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldArg {
    Closed,
    Real,
    #[value(name = "Fq", alias = "fq")]
    Fq,
    Semisimple,
}

impl FieldArg {
    fn class(self, q: Option<u64>) -> FieldClass {
        match self {
            FieldArg::Closed => FieldClass::AlgebraicallyClosed,
            FieldArg::Real => FieldClass::Real,
            FieldArg::Fq => FieldClass::FiniteField { q },
            FieldArg::Semisimple => FieldClass::SemisimpleOrCyclic,
        }
    }
}

/// What a command produced. `negative` selects exit status 1.
#[derive(Debug)]
pub enum Output {
    Json { value: Value, negative: bool },
    Text(String),
}

impl Output {
    fn ok(value: Value) -> Self {
        Output::Json { value, negative: false }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Json { negative: true, .. } => 1,
            _ => 0,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Output::Json { value, .. } => serde_json::to_string_pretty(value).expect("serializable") + "\n",
            Output::Text(s) => s.clone(),
        }
    }
}

pub type CmdResult = Result<Output, Box<dyn std::error::Error>>;

fn read_input(path: &str) -> Result<String, Box<dyn std::error::Error>> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}").into())
    }
}

fn load(path: &str) -> Result<ProblemFile, Box<dyn std::error::Error>> {
    let text = read_input(path)?;
    parse_problem(&text).map_err(|e| format!("{path}:{e}").into())
}

fn load_pair(a: &str, b: &str) -> Result<(ProblemFile, ProblemFile), Box<dyn std::error::Error>> {
    if a == "-" && b == "-" {
        return Err("only one input can be read from stdin".into());
    }
    let (pa, pb) = (load(a)?, load(b)?);
    if pa.field != pb.field {
        return Err(format!("inputs are over different fields: {} and {}", pa.field, pb.field).into());
    }
    Ok((pa, pb))
}

fn affine_map(p: &ProblemFile) -> Result<AffineMap, Box<dyn std::error::Error>> {
    let v = p.vector.clone().ok_or("affine input needs a 'vector'")?;
    Ok(AffineMap::new(p.matrix.clone(), v)?)
}

fn n(k: usize) -> Value {
    Value::String(k.to_string())
}

fn affine_json(t: &AffineMap) -> Value {
    json!({"linear": matrix_json(&t.linear), "translation": vector_json(t.field(), &t.translation)})
}

fn partition_json(part: &[(usize, usize)]) -> Value {
    part.iter().map(|&(s, k)| json!({"size": n(s), "count": n(k)})).collect()
}

fn reason_json(r: &PrimeReason) -> Value {
    json!({
        "prime": r.prime.to_string(),
        "exponent": n(r.exponent),
        "derivative_vanishes": r.derivative_vanishes,
        "admits": r.admits(),
    })
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Zero => Value::Null,
        Cell::Member(k) => n(*k),
    }
}

fn check_json(r: &CheckReport) -> Value {
    let stats: serde_json::Map<String, Value> = r.stats.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "check": r.check.name(),
        "p": r.p.to_string(),
        "n": n(r.n),
        "passed": r.passed,
        "stats": stats,
        "failures": r.failures,
    })
}

fn centralizer_json(a: &Analysis, with_basis: bool) -> Result<Value, Box<dyn std::error::Error>> {
    let c = centralizer_structure(a)?;
    let semisimple: Vec<Value> = c
        .semisimple_summands
        .iter()
        .map(|(k, e)| json!({"matrix_size": n(*k), "degree": n(e.degree), "modulus": e.modulus.to_string()}))
        .collect();
    let mut out = json!({
        "dim": n(c.dim_total),
        "nilradical_dim": n(c.nilradical_dim),
        "semisimple_dim": n(c.semisimple_dim()),
        "semisimple": semisimple,
        "center_dim": n(c.center_dim),
    });
    if with_basis {
        out["basis"] = c.basis.iter().map(matrix_json).collect();
    }
    Ok(out)
}

fn analyze(p: &ProblemFile) -> CmdResult {
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let flags = a.flags()?;
    let fact = &a.factorization;
    let primary: Vec<Value> = a
        .components
        .iter()
        .zip(a.elementary_divisors())
        .zip(&flags)
        .map(|((c, divisors), flag)| {
            json!({
                "prime": c.prime.to_string(),
                "degree": n(c.degree()),
                "exponent": n(c.exponent),
                "dim": n(c.dim()),
                "elementary_divisors": partition_json(&divisors),
                "kernel_dims": c.kernels.iter().map(|k| n(k.dim())).collect::<Vec<_>>(),
                "flag_dims": flag.dims().into_iter().map(n).collect::<Vec<_>>(),
            })
        })
        .collect();
    let sn = sn_from_analysis(&a)?;
    let inv = invariant_of(&a);
    let z = dynlin_core::zclass::zclass_of(&inv, &p.field);
    Ok(Output::ok(json!({
        "field": p.field.to_string(),
        "dim": n(p.dim()),
        "minimal_polynomial": a.minimal_polynomial.to_string(),
        "characteristic_polynomial": characteristic_polynomial(&p.matrix).to_string(),
        "factorization": {
            "unit": p.field.format(&fact.unit),
            "factors": fact.factors.iter().map(|(f, k)| json!({"poly": f.to_string(), "multiplicity": n(*k)})).collect::<Vec<_>>(),
            "provenance": match fact.provenance { Provenance::Computed => "computed", Provenance::Asserted => "asserted" },
        },
        "primary": primary,
        "centralizer": centralizer_json(&a, false)?,
        "sn": {"exists": sn.exists, "reasons": sn.reasons.iter().map(reason_json).collect::<Vec<_>>()},
        "orbit_invariant": inv.to_string(),
        "zclass_invariant": z.to_string(),
    })))
}

fn rcf(p: &ProblemFile) -> CmdResult {
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let cf = canonical_from_analysis(&a)?;
    Ok(Output::ok(json!({
        "field": p.field.to_string(),
        "canonical": matrix_json(&cf.c),
        "transform": matrix_json(&cf.g),
        "wedderburn": cf.wedderburn,
        "orbit_invariant": invariant_of(&a).to_string(),
    })))
}

fn conjugate(a: &ProblemFile, b: &ProblemFile) -> CmdResult {
    let mut opts = a.factor_options();
    opts.hints.extend(b.factor_hints.iter().cloned());
    Ok(match conjugacy_test(&a.matrix, &b.matrix, &opts)? {
        Conjugacy::Conjugate(g) => Output::ok(json!({"conjugate": true, "transform": matrix_json(&g)})),
        Conjugacy::Distinct(why) => Output::Json { value: json!({"conjugate": false, "reason": why}), negative: true },
    })
}

fn sn(p: &ProblemFile) -> CmdResult {
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let r = sn_from_analysis(&a)?;
    let value = json!({
        "field": p.field.to_string(),
        "exists": r.exists,
        "s": r.s.as_ref().map(matrix_json),
        "n": r.n.as_ref().map(matrix_json),
        "f": r.f.as_ref().map(|f| f.to_string()),
        "reasons": r.reasons.iter().map(reason_json).collect::<Vec<_>>(),
    });
    Ok(Output::Json { value, negative: !r.exists })
}

fn flag(p: &ProblemFile) -> CmdResult {
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let f = &p.field;
    let components: Vec<Value> = a
        .flags()?
        .iter()
        .map(|fl| {
            json!({
                "prime": fl.prime.to_string(),
                "exponents": fl.exponents.iter().copied().map(n).collect::<Vec<_>>(),
                "multiplicities": fl.multiplicities.iter().copied().map(n).collect::<Vec<_>>(),
                "dims": fl.dims().into_iter().map(n).collect::<Vec<_>>(),
                "labels": fl.labels.iter().map(|l| json!({"layer": n(l.layer), "exponent": n(l.exponent)})).collect::<Vec<_>>(),
                "chain": fl.chain.iter().map(|s| s.basis().iter().map(|v| vector_json(f, v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Output::ok(json!({"field": f.to_string(), "components": components})))
}

fn centralizer(p: &ProblemFile) -> CmdResult {
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let mut out = centralizer_json(&a, true)?;
    out["field"] = Value::String(p.field.to_string());
    Ok(Output::ok(out))
}

fn orbit_cell_cmd(p: &ProblemFile, vector: Option<&str>) -> CmdResult {
    let v = match vector {
        Some(text) => parse_vector(text, &p.field, p.dim())?,
        None => p.vector.clone().ok_or("no --vector given and the input has no 'vector'")?,
    };
    let a = Analysis::new(&p.matrix, &p.factor_options())?;
    let flags = a.flags()?;
    let cells = orbit_cell(&a.components, &flags, &v);
    let out: Vec<Value> = a
        .components
        .iter()
        .zip(&flags)
        .zip(&cells)
        .map(|((c, fl), cell)| {
            let label = match cell {
                Cell::Zero => Value::Null,
                Cell::Member(k) => json!({"layer": n(fl.labels[k - 1].layer), "exponent": n(fl.labels[k - 1].exponent)}),
            };
            json!({"prime": c.prime.to_string(), "cell": cell_json(cell), "label": label})
        })
        .collect();
    Ok(Output::ok(json!({"field": p.field.to_string(), "vector": vector_json(&p.field, &v), "cells": out})))
}

fn zclass(a: &ProblemFile, b: Option<&ProblemFile>) -> CmdResult {
    let Some(b) = b else {
        let z = zclass_invariant(&a.matrix, &a.factor_options())?;
        return Ok(Output::ok(json!({"field": a.field.to_string(), "invariant": z.to_string()})));
    };
    let mut opts = a.factor_options();
    opts.hints.extend(b.factor_hints.iter().cloned());
    let eq = zclass_equal(&a.matrix, &b.matrix, &opts)?;
    let value = json!({
        "field": a.field.to_string(),
        "equal": eq.as_str(),
        "a": zclass_invariant(&a.matrix, &opts)?.to_string(),
        "b": zclass_invariant(&b.matrix, &opts)?.to_string(),
    });
    Ok(Output::Json { value, negative: eq == Ternary::No })
}

fn affine(cmd: &AffineCommand) -> CmdResult {
    match cmd {
        AffineCommand::Classify { input } => {
            let p = load(input)?;
            let t = affine_map(&p)?;
            let opts = p.factor_options();
            let inv = affine_invariant(&t, &opts)?;
            let z = affine_zclass_invariant(&t, &opts)?;
            let norm = normalize(&t)?;
            Ok(Output::ok(json!({
                "field": p.field.to_string(),
                "linear_invariant": inv.linear.to_string(),
                "r": n(inv.r),
                "s": n(inv.s),
                "translation_index": n(translation_index(&t)?),
                "reduced_translation_index": n(reduced_translation_index(&t)?),
                "fixed_point": fixed_point(&t).map(|x| vector_json(&p.field, &x)),
                "normalization": {"shift": vector_json(&p.field, &norm.shift), "map": affine_json(&norm.normalized)},
                "zclass": {"linear": z.linear.to_string(), "unipotent": partition_json(&z.unipotent), "s": n(z.s)},
            })))
        }
        AffineCommand::Conjugate { a, b } => {
            let (pa, pb) = load_pair(a, b)?;
            let (ta, tb) = (affine_map(&pa)?, affine_map(&pb)?);
            let mut opts = pa.factor_options();
            opts.hints.extend(pb.factor_hints.iter().cloned());
            Ok(match affine_conjugacy_test(&ta, &tb, &opts)? {
                AffineConjugacy::Conjugate(alpha) => Output::ok(json!({"conjugate": true, "alpha": affine_json(&alpha)})),
                AffineConjugacy::Distinct(why) => {
                    Output::Json { value: json!({"conjugate": false, "reason": why}), negative: true }
                }
            })
        }
        AffineCommand::Centralizer { input } => {
            let p = load(input)?;
            let c = affine_centralizer(&affine_map(&p)?)?;
            Ok(Output::ok(json!({
                "field": p.field.to_string(),
                "dim": n(c.dim()),
                "has_fixed_point": c.has_fixed_point,
                "eigenvalue_one_bound": n(c.eigenvalue_one_bound),
                "shift": vector_json(&p.field, &c.shift),
                "normalized": affine_json(&c.normalized),
                "offset": affine_json(&c.offset),
                "basis": c.basis.iter().map(|(x, w)| json!({"linear": matrix_json(x), "translation": vector_json(&p.field, w)})).collect::<Vec<_>>(),
            })))
        }
    }
}

fn class_name(c: FieldClass) -> String {
    match c {
        FieldClass::AlgebraicallyClosed => "closed".into(),
        FieldClass::Real => "real".into(),
        FieldClass::FiniteField { q: None } => "Fq".into(),
        FieldClass::FiniteField { q: Some(q) } => format!("F_{q}"),
        FieldClass::SemisimpleOrCyclic => "semisimple".into(),
    }
}

fn finite_q(field: FieldArg, q: Option<u64>) -> Result<(), Box<dyn std::error::Error>> {
    match (field, q) {
        (FieldArg::Fq, Some(q)) if q < 2 => Err(format!("--q {q} is not a field order").into()),
        (FieldArg::Fq, Some(q)) => {
            let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            if r == 1 { Ok(()) } else { Err(format!("--q {q} is not a prime power").into()) }
        }
        (_, Some(_)) => Err("--q only applies to --field Fq".into()),
        _ => Ok(()),
    }
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze { input } => analyze(&load(input)?),
        Command::Rcf { input } => rcf(&load(input)?),
        Command::Conjugate { a, b } => {
            let (pa, pb) = load_pair(a, b)?;
            conjugate(&pa, &pb)
        }
        Command::Sn { input } => sn(&load(input)?),
        Command::Flag { input } => flag(&load(input)?),
        Command::Centralizer { input } => centralizer(&load(input)?),
        Command::OrbitCell { input, vector } => orbit_cell_cmd(&load(input)?, vector.as_deref()),
        Command::Zclass { a, b } => match b {
            Some(b) => {
                let (pa, pb) = load_pair(a, b)?;
                zclass(&pa, Some(&pb))
            }
            None => zclass(&load(a)?, None),
        },
        Command::ZclassEnumerate { field, q, n: dim } => {
            finite_q(*field, *q)?;
            let class = field.class(*q);
            let classes = enumerate_zclasses(class, *dim);
            Ok(Output::ok(json!({
                "field_class": class_name(class),
                "n": n(*dim),
                "count": n(classes.len()),
                "classes": classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::Zcount { field, q, max_n } => {
            finite_q(*field, *q)?;
            let table = generating_series(field.class(*q), *max_n)?;
            Ok(Output::Text(table.coefficients.iter().enumerate().map(|(k, z)| format!("{k} {z}\n")).collect()))
        }
        Command::Affine { command } => affine(command),
        Command::Oracle { p, n: dim, check } => {
            let kinds = match check {
                Some(k) => vec![*k],
                None => CheckKind::ALL.to_vec(),
            };
            let mut reports = Vec::new();
            for kind in kinds {
                let r = run_check(kind, *p, *dim)?;
                eprintln!("{r}");
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed);
            let value = json!({"passed": passed, "reports": reports.iter().map(check_json).collect::<Vec<_>>()});
            Ok(Output::Json { value, negative: !passed })
        }
    }
}
