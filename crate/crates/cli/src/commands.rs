use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use fatpoints::betti::{alpha_reg, betti_table, BettiError};
use fatpoints::bounds::{forbidden_pattern, gms_violation, is_gms, lower_bound, upper_bound};
use fatpoints::configs::{
    default_budget, gen as generate, greedy_reduce, ConfigError, Family, GeneratorSpec,
};
use fatpoints::io::{scheme_from_json, scheme_to_json, FormatError};
use fatpoints::oracle::{hilbert_oracle, OracleError};
use fatpoints::{FatPointScheme, FieldSpec, ReductionTrace, SchemeError};

use crate::{BoundsArgs, FamilyName, GenArgs, HilbertArgs, SchemeArgs, VectorArgs};

/// Degrees past this are never tabulated by default.
const MAX_DEGREE_CAP: u32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<BettiError> for CliError {
    fn from(e: BettiError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// What a successful command prints and how it exits.
pub struct Output {
    pub stdout: String,
    /// Lines for standard error.
    pub notes: Vec<String>,
    pub code: u8,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output {
            stdout,
            notes: Vec::new(),
            code: 0,
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_vector(items: &[String]) -> Result<Vec<u64>, CliError> {
    if items.iter().all(|s| s.trim().is_empty()) {
        return Ok(Vec::new());
    }
    items
        .iter()
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("`{s}` is not a natural number")))
        })
        .collect()
}

fn one_value(name: &str, values: &[u64], default: u64) -> Result<u64, CliError> {
    match values {
        [] => Ok(default),
        [v] => Ok(*v),
        _ => Err(CliError::Input(format!(
            "--{name} takes a single value here"
        ))),
    }
}

fn required<T>(name: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("this family needs --{name}")))
}

fn small(name: &str, v: u64) -> Result<u32, CliError> {
    u32::try_from(v).map_err(|_| CliError::Input(format!("--{name} is too large")))
}

fn parse_coeffs(text: &str) -> Result<Vec<[i64; 3]>, CliError> {
    text.split(';')
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let nums: Vec<i64> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse()
                        .map_err(|_| CliError::Input(format!("`{t}` is not an integer")))
                })
                .collect::<Result<_, _>>()?;
            <[i64; 3]>::try_from(nums).map_err(|n| {
                CliError::Input(format!("a line needs 3 coefficients, got {}", n.len()))
            })
        })
        .collect()
}

fn parse_doubles(items: &[String]) -> Result<Vec<(usize, usize)>, CliError> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let bad = || CliError::Input(format!("`{s}` is not a grid position i:j"));
            let (i, j) = s.split_once(':').ok_or_else(bad)?;
            Ok((
                i.trim().parse().map_err(|_| bad())?,
                j.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

/// The scheme document is JSON whether or not `--json` is given.
pub fn gen(args: &GenArgs) -> Result<Output, CliError> {
    let m = || one_value("m", &args.m, 1);
    let family = match args.family {
        FamilyName::Star => Family::StarConfig {
            s: required("s", args.s)?,
            m: small("m", m()?)?,
        },
        FamilyName::Grid => Family::Grid {
            h: required("rows", args.rows)?,
            v: required("cols", args.cols)?,
            doubles: parse_doubles(&args.doubles)?,
        },
        FamilyName::NongreedyGrid => GeneratorSpec::nongreedy_grid().family,
        FamilyName::Linear => Family::LinearConfig {
            counts: args.counts.clone(),
            mult: m()?,
        },
        FamilyName::LineCount => Family::LineCountConfig {
            a: args.a.clone(),
            m: args.m.clone(),
        },
        FamilyName::Intersections => {
            let coeffs = args
                .coeffs
                .as_deref()
                .map(parse_coeffs)
                .transpose()?
                .unwrap_or_default();
            let s = match args.s {
                Some(s) => s,
                None if !coeffs.is_empty() => coeffs.len(),
                None => return Err(CliError::Input("this family needs --s or --coeffs".into())),
            };
            Family::Intersections {
                s,
                coeffs,
                e: args.e.clone(),
                m: small("m", m()?)?,
                reduced: args.reduced,
            }
        }
        FamilyName::ProjectivePlane => Family::ProjectivePlaneFq {
            q: required("q", args.q)?,
            m: small("m", m()?)?,
        },
        FamilyName::DualHesse => Family::DualHesse {
            mult: small("m", m()?)?,
        },
        FamilyName::SixPoint => Family::SixPointExample,
    };
    let field = args.p.map(FieldSpec::prime).transpose()?;
    let g = generate(&GeneratorSpec { family, field })?;
    let text = scheme_to_json(&g.scheme);
    let mut notes: Vec<String> = g.warnings.iter().map(|w| format!("warning: {w}")).collect();
    if let Some(schedule) = &g.schedule {
        notes.push(format!("reducing sequence: {}", schedule.join(",")));
    }
    let stdout = match &args.output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Output {
        stdout,
        notes,
        code: 0,
    })
}

fn load_scheme(path: &Path) -> Result<FatPointScheme, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?
    };
    let scheme = scheme_from_json(&text)?;
    let violations = scheme.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Input(format!(
            "invalid scheme: {}",
            list.join("; ")
        )));
    }
    Ok(scheme)
}

fn trace_of(
    scheme: &FatPointScheme,
    lines: &[String],
    greedy: bool,
) -> Result<ReductionTrace, CliError> {
    if greedy {
        return Ok(greedy_reduce(scheme, &default_budget(scheme)));
    }
    if lines.is_empty() {
        return Err(CliError::Input("pass --lines or --greedy".into()));
    }
    Ok(scheme.reduce(lines)?)
}

fn full_vector(trace: &ReductionTrace) -> Result<Vec<u64>, CliError> {
    if !trace.full {
        return Err(CliError::Precondition(format!(
            "the reduction {} is not full: a residual of degree {} remains",
            trace.vector, trace.residual_degree
        )));
    }
    Ok(trace.vector.0.clone())
}

fn trace_notes(trace: &ReductionTrace) -> Vec<String> {
    trace
        .warnings()
        .into_iter()
        .map(|w| format!("warning: {w}"))
        .collect()
}

fn tuple(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn reduce(args: &SchemeArgs, json: bool) -> Result<Output, CliError> {
    let scheme = load_scheme(&args.scheme)?;
    let trace = trace_of(&scheme, &args.lines, args.greedy)?;
    let stdout = if json {
        let steps: Vec<Value> = trace
            .steps
            .iter()
            .map(|s| json!({"line": s.line, "degree": s.degree}))
            .collect();
        pretty(&json!({
            "steps": steps,
            "vector": trace.vector.0,
            "full": trace.full,
            "residual_degree": trace.residual_degree,
        }))
    } else {
        let mut out = String::from("step\tline\tdegree\n");
        for (i, s) in trace.steps.iter().enumerate() {
            out.push_str(&format!("{}\t{}\t{}\n", i + 1, s.line, s.degree));
        }
        out.push_str(&format!("vector: {}\nfull: {}\n", trace.vector, trace.full));
        out
    };
    Ok(Output {
        stdout,
        notes: trace_notes(&trace),
        code: 0,
    })
}

/// The reduction vector named on the command line, or the one of a scheme.
fn vector_input(args: &BoundsArgs) -> Result<(Vec<u64>, Vec<String>, bool), CliError> {
    match (&args.vector, &args.scheme) {
        (Some(v), _) => Ok((parse_vector(v)?, Vec::new(), false)),
        (None, Some(path)) => {
            let scheme = load_scheme(path)?;
            let trace = trace_of(&scheme, &args.lines, args.greedy)?;
            Ok((full_vector(&trace)?, trace_notes(&trace), true))
        }
        (None, None) => Err(CliError::Input("pass --vector or --scheme".into())),
    }
}

pub fn bounds(args: &BoundsArgs, json: bool) -> Result<Output, CliError> {
    let (d, notes, from_scheme) = vector_input(args)?;
    let (f, big_f) = (lower_bound(&d), upper_bound(&d));
    let stdout = if json {
        pretty(&json!({"vector": d, "f": f, "F": big_f}))
    } else {
        let head = if from_scheme {
            format!("vector: {}\n", tuple(&d))
        } else {
            String::new()
        };
        format!("{head}f: {f}\nF: {big_f}\n")
    };
    Ok(Output {
        stdout,
        notes,
        code: 0,
    })
}

pub fn gms(args: &VectorArgs, json: bool) -> Result<Output, CliError> {
    let v = parse_vector(&args.vector)?;
    let pattern = forbidden_pattern(&v).ok().flatten();
    let (verdict, witness) = if is_gms(&v) {
        ("true".to_string(), Value::Null)
    } else if let Some((a, b)) = pattern {
        (
            format!("false: pattern {}", tuple(&v[a..=b])),
            json!({"kind": "pattern", "start": a + 1, "end": b + 1, "entries": &v[a..=b]}),
        )
    } else {
        let (i, j) = gms_violation(&v).expect("non-GMS vectors violate some pair");
        (
            format!("false: pair ({i},{j})"),
            json!({"kind": "pair", "i": i, "j": j}),
        )
    };
    let stdout = if json {
        pretty(&json!({"vector": v, "gms": witness.is_null(), "witness": witness}))
    } else {
        format!("{verdict}\n")
    };
    Ok(Output::text(stdout))
}

pub fn betti(args: &BoundsArgs, json: bool) -> Result<Output, CliError> {
    let (d, notes, _) = vector_input(args)?;
    let table = betti_table(&d)?;
    let stdout = if json {
        pretty(&serde_json::to_value(&table).expect("tables serialize"))
    } else {
        table.to_tsv()
    };
    Ok(Output {
        stdout,
        notes,
        code: 0,
    })
}

/// Oracle values `h(0), h(1), ...` through `max_degree`, or through the
/// regularity index (capped) when no degree is given.
fn oracle_values(
    scheme: &FatPointScheme,
    max_degree: Option<u32>,
    at_least: u32,
) -> Result<Vec<u64>, CliError> {
    let deg = scheme.degree();
    let mut values = Vec::new();
    let mut t = 0;
    loop {
        values.push(hilbert_oracle(scheme, t)?);
        let done = match max_degree {
            Some(top) => t >= top,
            // reg is one past the first degree where h reaches deg(Z)
            None => {
                t >= MAX_DEGREE_CAP || (t >= at_least && t >= 1 && values[t as usize - 1] == deg)
            }
        };
        if done {
            return Ok(values);
        }
        t += 1;
    }
}

pub fn hilbert(args: &HilbertArgs, json: bool) -> Result<Output, CliError> {
    let scheme = load_scheme(&args.scheme)?;
    let values = oracle_values(&scheme, args.max_degree, 0)?;
    let stdout = if json {
        pretty(&json!({"degree": scheme.degree(), "h": values}))
    } else {
        let mut out = String::from("t\th\n");
        for (t, h) in values.iter().enumerate() {
            out.push_str(&format!("{t}\t{h}\n"));
        }
        out
    };
    Ok(Output::text(stdout))
}

pub fn check(args: &SchemeArgs, max_degree: Option<u32>, json: bool) -> Result<Output, CliError> {
    let scheme = load_scheme(&args.scheme)?;
    if !scheme.has_coordinates() && !scheme.is_empty() {
        return Err(CliError::Precondition(
            "the scheme has no coordinates, so the oracle cannot run".into(),
        ));
    }
    let trace = trace_of(&scheme, &args.lines, args.greedy)?;
    let d = full_vector(&trace)?;
    let (f, big_f) = (lower_bound(&d), upper_bound(&d));
    let settled = f.prefix().len().max(big_f.prefix().len()) as u32;
    let h = oracle_values(&scheme, max_degree, settled.min(MAX_DEGREE_CAP))?;
    let mut rows = Vec::new();
    let mut all = true;
    for (t, &ht) in h.iter().enumerate() {
        let (lo, hi) = (f.value(t as i64), big_f.value(t as i64));
        let pass = lo <= ht && ht <= hi;
        all &= pass;
        rows.push((t, lo, ht, hi, pass));
    }
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    let stdout = if json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|&(t, lo, ht, hi, pass)| json!({"t": t, "f": lo, "h": ht, "F": hi, "pass": pass}))
            .collect();
        let reg = alpha_reg_of(&h, scheme.degree());
        pretty(&json!({"vector": d, "rows": rows, "pass": all, "alpha_reg": reg}))
    } else {
        let mut out = format!("vector: {}\nt\tf\th\tF\tverdict\n", tuple(&d));
        for &(t, lo, ht, hi, pass) in &rows {
            out.push_str(&format!("{t}\t{lo}\t{ht}\t{hi}\t{}\n", verdict(pass)));
        }
        out.push_str(&format!("verdict: {}\n", verdict(all)));
        out
    };
    Ok(Output {
        stdout,
        notes: trace_notes(&trace),
        code: if all { 0 } else { 4 },
    })
}

/// `[α, reg]` of the tabulated oracle values, when they reach the degree.
fn alpha_reg_of(h: &[u64], deg: u64) -> Value {
    let Some(last) = h.iter().position(|&v| v == deg) else {
        return Value::Null;
    };
    let seq = fatpoints::HilbertSequence::new(h[..=last].to_vec(), deg);
    match seq.ok().map(|s| alpha_reg(&s, deg)) {
        Some(Ok((a, r))) => json!([a, r]),
        _ => Value::Null,
    }
}
