//! Plain-text instance archive.
//!
//! ```text
//! id = f21
//! n = 30
//! instance_seed = 5
//! x_opt = 12.5 -3.25 ...
//! f_opt = -310
//! matrix_a = 30 x 30
//! 17 -204 ...
//! ...
//! vector_b = ...
//! ```
//!
//! Scalars and vectors are `key = value...` lines; a matrix header
//! `key = R x C` is followed by `R` whitespace-separated rows. Floats use the
//! shortest representation that parses back to the same bits, so an
//! archived instance reloads bit-exactly. Derived tables (f23 targets, f24
//! normalizers) are recomputed on load.

use std::collections::HashMap;
use std::fmt::Write;

use crate::benchmarks::{gecco, BenchmarkId, BenchmarkInstance, InstanceData};
use crate::error::{Error, Result};
use crate::space::Bounds;

pub fn dump_instance(inst: &BenchmarkInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "id = {}", inst.id);
    let _ = writeln!(out, "n = {}", inst.n);
    let _ = writeln!(out, "instance_seed = {}", inst.instance_seed);
    match &inst.x_opt {
        Some(v) => write_vector(&mut out, "x_opt", v),
        None => out.push_str("x_opt = none\n"),
    }
    match inst.f_opt {
        Some(v) => {
            let _ = writeln!(out, "f_opt = {v}");
        }
        None => out.push_str("f_opt = none\n"),
    }
    match &inst.data {
        InstanceData::None => {}
        InstanceData::SignVector(s) => write_vector(&mut out, "sign_vector", s),
        InstanceData::LinearSystem { a, b } => {
            write_matrix(&mut out, "matrix_a", a);
            write_vector(&mut out, "vector_b", b);
        }
        InstanceData::Trigonometric { a, b, .. } => {
            write_matrix(&mut out, "matrix_a", a);
            write_matrix(&mut out, "matrix_b", b);
        }
        InstanceData::Composition { shifts, .. } => write_matrix(&mut out, "component_shifts", shifts),
    }
    out
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_vector(out: &mut String, key: &str, v: &[f64]) {
    let _ = writeln!(out, "{key} = {}", join(v));
}

fn write_matrix(out: &mut String, key: &str, m: &[Vec<f64>]) {
    let cols = m.first().map_or(0, Vec::len);
    let _ = writeln!(out, "{key} = {} x {cols}", m.len());
    for row in m {
        out.push_str(&join(row));
        out.push('\n');
    }
}

enum Field {
    Text(String),
    Matrix(Vec<Vec<f64>>),
}

const KEYS: [&str; 9] = [
    "id",
    "n",
    "instance_seed",
    "x_opt",
    "f_opt",
    "sign_vector",
    "vector_b",
    "matrix_a",
    "matrix_b",
];

/// Parses a dump produced by [`dump_instance`].
pub fn parse_instance(text: &str) -> Result<BenchmarkInstance> {
    let mut fields: HashMap<String, (usize, Field)> = HashMap::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    while let Some((lineno, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected `key = value`, found `{line}`"),
        })?;
        let key = key.trim().to_string();
        let value = value.trim();
        if !KEYS.contains(&key.as_str()) && key != "component_shifts" {
            return Err(Error::Parse { line: lineno, message: format!("unknown key `{key}`") });
        }
        if fields.contains_key(&key) {
            return Err(Error::Parse { line: lineno, message: format!("duplicate key `{key}`") });
        }
        let field = if key.starts_with("matrix_") || key == "component_shifts" {
            let (rows, cols) = parse_shape(value).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("bad matrix shape `{value}`"),
            })?;
            let mut m = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (rl, row) = lines.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("matrix `{key}` is truncated"),
                })?;
                let row = parse_floats(row, rl)?;
                if row.len() != cols {
                    return Err(Error::Parse {
                        line: rl,
                        message: format!("expected {cols} columns, found {}", row.len()),
                    });
                }
                m.push(row);
            }
            Field::Matrix(m)
        } else {
            Field::Text(value.to_string())
        };
        fields.insert(key, (lineno, field));
    }

    let text_of = |key: &str| -> Result<(usize, &str)> {
        match fields.get(key) {
            Some((l, Field::Text(t))) => Ok((*l, t.as_str())),
            _ => Err(Error::Parse { line: 0, message: format!("missing `{key}`") }),
        }
    };
    let matrix_of = |key: &str| -> Result<Vec<Vec<f64>>> {
        match fields.get(key) {
            Some((_, Field::Matrix(m))) => Ok(m.clone()),
            _ => Err(Error::Parse { line: 0, message: format!("missing `{key}`") }),
        }
    };
    let vector_of = |key: &str| -> Result<Vec<f64>> {
        let (l, t) = text_of(key)?;
        parse_floats(t, l)
    };

    let (l, id) = text_of("id")?;
    let id: BenchmarkId = id.parse().map_err(|e: Error| Error::Parse { line: l, message: e.to_string() })?;
    let (l, n) = text_of("n")?;
    let n: usize = n.parse().map_err(|_| Error::Parse { line: l, message: format!("bad dimension `{n}`") })?;
    let (l, seed) = text_of("instance_seed")?;
    let instance_seed: u64 = seed
        .parse()
        .map_err(|_| Error::Parse { line: l, message: format!("bad seed `{seed}`") })?;

    let (l, x_text) = text_of("x_opt")?;
    let x_opt = if x_text == "none" { None } else { Some(parse_floats(x_text, l)?) };
    let (l, f_text) = text_of("f_opt")?;
    let f_opt = if f_text == "none" {
        None
    } else {
        Some(f_text.parse::<f64>().map_err(|_| Error::Parse { line: l, message: format!("bad f_opt `{f_text}`") })?)
    };

    super::check_dimension(id, n)?;
    if let Some(x) = &x_opt {
        Error::check_dim(n, x.len())?;
    }
    if id.is_gecco() && id.number() != 24 && x_opt.is_none() {
        return Err(Error::config(format!("{id} dump is missing x_opt")));
    }

    let square = |m: &Vec<Vec<f64>>| -> Result<()> {
        Error::check_dim(n, m.len())?;
        m.iter().try_for_each(|r| Error::check_dim(n, r.len()))
    };
    let data = match id.number() {
        17 => {
            let s = vector_of("sign_vector")?;
            Error::check_dim(n, s.len())?;
            InstanceData::SignVector(s)
        }
        21 => {
            let a = matrix_of("matrix_a")?;
            square(&a)?;
            let b = vector_of("vector_b")?;
            Error::check_dim(n, b.len())?;
            InstanceData::LinearSystem { a, b }
        }
        23 => {
            let a = matrix_of("matrix_a")?;
            let b = matrix_of("matrix_b")?;
            square(&a)?;
            square(&b)?;
            let targets = gecco::trig_sums(&a, &b, x_opt.as_deref().unwrap_or_default());
            InstanceData::Trigonometric { a, b, targets }
        }
        24 => {
            let shifts = matrix_of("component_shifts")?;
            Error::check_dim(10, shifts.len())?;
            shifts.iter().try_for_each(|r| Error::check_dim(n, r.len()))?;
            InstanceData::Composition { shifts, fmax: gecco::composition_fmax(n) }
        }
        _ => InstanceData::None,
    };

    let (lo, hi) = id.box_interval();
    Ok(BenchmarkInstance {
        id,
        n,
        instance_seed,
        bounds: Bounds::uniform(n, lo, hi)?,
        x_opt,
        f_opt,
        data,
    })
}

fn parse_shape(s: &str) -> Option<(usize, usize)> {
    let (r, c) = s.split_once('x')?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}

fn parse_floats(s: &str, line: usize) -> Result<Vec<f64>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Parse { line, message: format!("bad number `{t}`") })
        })
        .collect()
}
