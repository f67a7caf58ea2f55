use serde_json::{json, Value};

use schurkit::chernweil;
use schurkit::expr::parse_chern_poly;
use schurkit::forms::{self, Arithmetic, ConstForm, Mode, PositivityOptions, PositivityVerdict, Witness, C64};
use schurkit::ring::{ChernPoly, Partition};
use schurkit::schur::{self, SchurError};
use schurkit::theorem::{self, EngineError, Verdict};
use schurkit::variety::{parse_bundle, parse_class_expr, parse_variety_name, BundleModel, CohomClass, VarietyError, VarietyModel};

use crate::args::{Command, InstanceArgs, ModeArg};
use crate::error::{CmdResult, Outcome, UsageError};

/// Comma-separated pieces with their byte offsets.
fn split_commas(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in src.char_indices() {
        if c == ',' {
            out.push((start, &src[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &src[start..]));
    out
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// `2,1` style partitions; with a rank, parts above it are rejected.
pub fn parse_lambda(src: &str, rank: Option<usize>) -> Result<Partition, UsageError> {
    const FLAG: &str = "--lambda";
    if src.trim().is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts: Vec<u32> = Vec::new();
    for (offset, piece) in split_commas(src) {
        let pos = offset + leading_ws(piece);
        let token = piece.trim();
        let part: u32 = token
            .parse()
            .map_err(|_| UsageError::at(FLAG, src, pos, format!("expected a nonnegative integer, got `{token}`")))?;
        if let Some(&prev) = parts.last() {
            if part > prev {
                return Err(UsageError::at(FLAG, src, pos, format!("parts must be non-increasing ({part} > {prev})")));
            }
        }
        if let Some(r) = rank {
            if part as usize > r {
                return Err(UsageError::at(
                    FLAG,
                    src,
                    pos,
                    format!("invalid partition: part {part} exceeds rank {r}"),
                ));
            }
        }
        parts.push(part);
    }
    Ok(Partition::new(parts).expect("checked non-increasing"))
}

fn variety_error(flag: &str, src: &str, e: VarietyError) -> UsageError {
    match e {
        VarietyError::Parse { position, message } => UsageError::at(flag, src, position, message),
        VarietyError::UnknownGenerator { name, position } => {
            UsageError::at(flag, src, position, format!("unknown generator `{name}`"))
        }
        other => UsageError::new(flag, other.to_string()),
    }
}

fn engine_error(e: EngineError) -> UsageError {
    match e {
        EngineError::WrongWeight { .. } => UsageError::new("--lambda", e.to_string()),
        EngineError::NotADivisor { what } => UsageError::new(&format!("--{what}"), e.to_string()),
        EngineError::Variety(v) => UsageError::new("--bundle", v.to_string()),
        other => UsageError::new("--variety", other.to_string()),
    }
}

fn schur_error(e: SchurError) -> UsageError {
    match e {
        SchurError::PartExceedsRank { .. } => UsageError::new("--lambda", e.to_string()),
        SchurError::NotHomogeneous => UsageError::new("--poly", e.to_string()),
    }
}

fn load_variety(name: &str) -> Result<VarietyModel, UsageError> {
    parse_variety_name(name.trim()).map_err(|e| UsageError::at("--variety", name, 0, e))
}

fn load_bundle<'a>(spec: &str, v: &'a VarietyModel) -> Result<BundleModel<'a>, UsageError> {
    parse_bundle(spec, v).map_err(|e| variety_error("--bundle", spec, e))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn partition_json(l: &Partition) -> Value {
    json!(l.parts())
}

fn parse_poly(src: &str, rank: Option<usize>) -> Result<ChernPoly, UsageError> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        let p: ChernPoly = serde_json::from_str(src).map_err(|e| {
            UsageError::new("--poly", format!("invalid ChernPoly JSON at line {} column {}: {e}", e.line(), e.column()))
        })?;
        if let Some(r) = rank {
            if r != p.rank() {
                return Err(UsageError::new("--rank", format!("JSON polynomial has rank {}, not {r}", p.rank())));
            }
        }
        Ok(p)
    } else {
        parse_chern_poly(src, rank).map_err(|e| UsageError::at("--poly", src, e.position, e.message))
    }
}

fn decompose(poly: &str, rank: Option<usize>) -> CmdResult {
    let p = parse_poly(poly, rank)?;
    let d = schur::schur_decompose(&p).map_err(schur_error)?;
    let positive = schur::is_numerically_positive(&p).map_err(schur_error)?;
    let terms: Vec<Value> = d
        .iter()
        .map(|(l, c)| json!({"lambda": partition_json(l), "coefficient": c.to_string()}))
        .collect();
    Ok((
        json!({"poly": to_value(&p), "schur_coefficients": terms, "numerically_positive": positive}),
        Outcome::Pass,
    ))
}

fn intersect(variety: &str, classes: &str) -> CmdResult {
    let v = load_variety(variety)?;
    let mut parsed: Vec<CohomClass<'_>> = Vec::new();
    let mut texts = Vec::new();
    for (offset, piece) in split_commas(classes) {
        let c = parse_class_expr(piece, &v).map_err(|e| {
            let shifted = match e {
                VarietyError::Parse { position, message } => VarietyError::Parse { position: position + offset, message },
                VarietyError::UnknownGenerator { name, position } => {
                    VarietyError::UnknownGenerator { name, position: position + offset }
                }
                other => other,
            };
            variety_error("--classes", classes, shifted)
        })?;
        parsed.push(c);
        texts.push(piece.trim().to_string());
    }
    let value = v.evaluate(&parsed).map_err(|e| UsageError::new("--classes", e.to_string()))?;
    Ok((json!({"variety": v.name(), "classes": texts, "value": value.to_string()}), Outcome::Pass))
}

fn check_theorem_a(a: &InstanceArgs) -> CmdResult {
    let v = load_variety(&a.variety)?;
    let e = load_bundle(&a.bundle, &v)?;
    let lambda = parse_lambda(&a.lambda, Some(e.rank()))?;
    let report = theorem::check_theorem_a(&v, &e, &lambda).map_err(engine_error)?;
    let outcome = match report.verdict {
        Verdict::Fails { .. } => Outcome::Fail,
        _ => Outcome::Pass,
    };
    Ok((to_value(&report), outcome))
}

fn hodge_index(a: &InstanceArgs) -> CmdResult {
    let v = load_variety(&a.variety)?;
    let e = load_bundle(&a.bundle, &v)?;
    let lambda = parse_lambda(&a.lambda, Some(e.rank()))?;
    let report = theorem::hodge_index_matrix(&v, &e, &lambda).map_err(engine_error)?;
    let expected = (1, 0, report.basis.len().saturating_sub(1));
    let outcome = if report.signature == expected { Outcome::Pass } else { Outcome::Fail };
    Ok((to_value(&report), outcome))
}

fn divisor<'a>(flag: &str, src: Option<&str>, v: &'a VarietyModel) -> Result<(CohomClass<'a>, String), UsageError> {
    match src {
        Some(s) => Ok((parse_class_expr(s, v).map_err(|e| variety_error(flag, s, e))?, s.trim().to_string())),
        None => {
            let c = theorem::ample_class(v).map_err(|e| UsageError::new(flag, format!("no default: {e}")))?;
            let label = c.to_string();
            Ok((c, label))
        }
    }
}

fn perturb(a: &InstanceArgs, omega: Option<&str>, against: Option<&str>) -> CmdResult {
    let v = load_variety(&a.variety)?;
    let e = load_bundle(&a.bundle, &v)?;
    let lambda = parse_lambda(&a.lambda, Some(e.rank()))?;
    let (omega, omega_label) = divisor("--omega", omega, &v)?;
    let (l, l_label) = divisor("--against", against, &v)?;
    let r = theorem::perturbation_check(&v, &e, &lambda, &omega, &l).map_err(engine_error)?;
    let mut doc = json!({
        "variety": v.name(),
        "bundle": e.spec(),
        "lambda": partition_json(&lambda),
        "omega": omega_label,
        "against": l_label,
    });
    if let (Value::Object(m), Value::Object(extra)) = (&mut doc, r.to_json()) {
        m.extend(extra);
    }
    Ok((doc, if r.holds { Outcome::Pass } else { Outcome::Fail }))
}

fn complex_list(v: &[C64]) -> Value {
    json!(v.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>())
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Scalar { value } => json!({"kind": "scalar", "value": value}),
        Witness::Eigenvector { vector, value } => {
            json!({"kind": "eigenvector", "value": value, "vector": complex_list(vector)})
        }
        Witness::Forms { alphas, value } => json!({
            "kind": "forms",
            "value": value,
            "alphas": alphas.iter().map(|a| complex_list(a)).collect::<Vec<_>>(),
        }),
    }
}

fn read_forms(path: &std::path::Path, n: Option<usize>) -> Result<Vec<ConstForm>, UsageError> {
    const FLAG: &str = "--file";
    let shown = path.display().to_string();
    let raw = std::fs::read_to_string(path).map_err(|e| UsageError::new(FLAG, format!("{shown}: {e}")))?;
    let doc: Value = serde_json::from_str(&raw).map_err(|e| {
        UsageError::new(FLAG, format!("{shown}: invalid JSON at line {} column {}: {e}", e.line(), e.column()))
    })?;
    let docs: Vec<Value> = match doc {
        Value::Object(_) => vec![doc],
        Value::Array(items) if items.iter().all(Value::is_object) => items,
        Value::Array(terms) => vec![bare_terms(terms, n).map_err(|m| UsageError::new(FLAG, format!("{shown}: {m}")))?],
        _ => return Err(UsageError::new(FLAG, format!("{shown}: expected a form object, a list of forms or a term list"))),
    };
    docs.into_iter()
        .enumerate()
        .map(|(i, d)| {
            serde_json::from_value(d).map_err(|e| UsageError::new(FLAG, format!("{shown}: form {i}: {e}")))
        })
        .collect()
}

fn bare_terms(terms: Vec<Value>, n: Option<usize>) -> Result<Value, String> {
    let index_list = |t: &Value, k: usize| -> Option<Vec<usize>> {
        t.get(k)?.as_array()?.iter().map(|x| x.as_u64().map(|u| u as usize)).collect()
    };
    let first = terms.first().ok_or("empty term list has no bidegree")?;
    let (p, q) = match (index_list(first, 0), index_list(first, 1)) {
        (Some(a), Some(b)) => (a.len(), b.len()),
        _ => return Err("terms must look like [[i..], [j..], re, im]".into()),
    };
    let inferred = terms
        .iter()
        .flat_map(|t| index_list(t, 0).into_iter().flatten().chain(index_list(t, 1).into_iter().flatten()))
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or(inferred.max(p).max(q));
    Ok(json!({"n": n, "p": p, "q": q, "terms": terms}))
}

fn form_check(
    path: &std::path::Path,
    mode: ModeArg,
    tolerance: Option<f64>,
    samples: usize,
    seed: u64,
    n: Option<usize>,
) -> CmdResult {
    let forms_in = read_forms(path, n)?;
    let opts = PositivityOptions {
        mode: mode_of(mode),
        arithmetic: match tolerance {
            Some(t) => Arithmetic::Float { tolerance: t },
            None => Arithmetic::Exact,
        },
        samples,
        seed,
    };
    let mut all_pass = true;
    let mut results = Vec::new();
    for (i, u) in forms_in.iter().enumerate() {
        let verdict = forms::is_positive(u, &opts).map_err(|e| UsageError::new("--file", format!("form {i}: {e}")))?;
        all_pass &= verdict.passes();
        let witness = match &verdict {
            PositivityVerdict::Violated(w) => witness_json(w),
            _ => Value::Null,
        };
        let (p, q) = u.bidegree();
        results.push(json!({
            "index": i,
            "n": u.n(),
            "bidegree": [p, q],
            "verdict": verdict.to_string(),
            "witness": witness,
        }));
    }
    let doc = json!({
        "mode": match mode { ModeArg::Semi => "semi", ModeArg::Strict => "strict" },
        "arithmetic": match tolerance { Some(_) => "float", None => "exact" },
        "tolerance": tolerance,
        "samples": samples,
        "seed": seed,
        "results": results,
    });
    Ok((doc, if all_pass { Outcome::Pass } else { Outcome::Fail }))
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Semi => Mode::Semi,
        ModeArg::Strict => Mode::Strict,
    }
}

pub fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Schur { lambda, rank } => {
            let l = parse_lambda(lambda, Some(*rank))?;
            Ok((to_value(&schur::schur_poly(&l, *rank).map_err(schur_error)?), Outcome::Pass))
        }
        Command::Decompose { poly, rank } => decompose(poly, *rank),
        Command::Twist { lambda, rank } => {
            let l = parse_lambda(lambda, Some(*rank))?;
            Ok((to_value(&schur::twisted_schur(&l, *rank).map_err(schur_error)?), Outcome::Pass))
        }
        Command::Derived { lambda, i, rank } => {
            let l = parse_lambda(lambda, Some(*rank))?;
            Ok((to_value(&schur::derived_schur(&l, *i, *rank).map_err(schur_error)?), Outcome::Pass))
        }
        Command::Intersect { variety, classes } => intersect(variety, classes),
        Command::CheckTheoremA(a) => check_theorem_a(a),
        Command::HodgeIndex(a) => hodge_index(a),
        Command::Perturb { instance, omega, against } => perturb(instance, omega.as_deref(), against.as_deref()),
        Command::FormCheck { file, mode, tolerance, samples, seed, n } => {
            form_check(file, *mode, *tolerance, *samples, *seed, *n)
        }
        Command::CwLab { n, r, seed, samples, tolerance, mode, form_samples } => {
            if *n == 0 || *r == 0 {
                return Err(UsageError::new(if *n == 0 { "--n" } else { "--r" }, "must be at least 1"));
            }
            let opts = PositivityOptions {
                mode: mode_of(*mode),
                arithmetic: Arithmetic::Float { tolerance: *tolerance },
                samples: *form_samples,
                seed: *seed,
            };
            let report = chernweil::run_lab(*n, *r, *seed, *samples, &opts)
                .map_err(|e| UsageError::new("cw-lab", e.to_string()))?;
            Ok((to_value(&report), Outcome::Pass))
        }
    }
}
