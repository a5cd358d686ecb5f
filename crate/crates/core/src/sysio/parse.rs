//! JSON system files.
//!
//! ```json
//! {"n": 3, "m": 1, "p": 2,
//!  "A": [["1","1","0"], …], "B": …, "C": [["a","b","0"], …], "D": …,
//!  "cone": {"ineq": [["1","0"]], "eq": [["0","1"]]},
//!  "params": {"a": "2", "b": "1"}}
//! ```
//!
//! Matrix entries are rationals (`"p/q"`, `"p"`, decimals, or JSON
//! integers) or parameter names, optionally negated (`"-a"`). The cone is
//! `Y = {y : ineq·y ≥ 0, eq·y = 0}`; a missing or empty cone means `Rᵖ`.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::system::{cone_from_rows, ConstrainedLinearSystem};
use crate::arith::rat::{format_rat, parse_rat, Rat, RatVector};
use crate::arith::RatMatrix;
use crate::error::{Error, Result};

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn dim(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .ok_or_else(|| schema(key, "missing"))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| schema(key, "expected a nonnegative integer"))
}

fn entry(v: &Value, path: &str, params: &BTreeMap<String, Rat>) -> Result<Rat> {
    match v {
        Value::Number(x) => match x.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => parse_rat(&x.to_string()).map_err(|_| schema(path, "unsupported number")),
        },
        Value::String(s) => {
            let t = s.trim();
            if let Ok(r) = parse_rat(t) {
                return Ok(r);
            }
            let (neg, name) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
            };
            match params.get(name) {
                Some(r) if neg => Ok(-r),
                Some(r) => Ok(r.clone()),
                None => Err(schema(path, format!("`{s}` is neither a rational nor a known parameter"))),
            }
        }
        _ => Err(schema(path, "expected a string or integer")),
    }
}

fn matrix(
    obj: &Map<String, Value>,
    key: &str,
    rows: usize,
    cols: usize,
    params: &BTreeMap<String, Rat>,
) -> Result<RatMatrix> {
    let v = obj.get(key).ok_or_else(|| schema(key, "missing"))?;
    let rs = rows_of(v, key, cols, params)?;
    if rs.len() != rows {
        return Err(schema(key, format!("expected {rows} rows, found {}", rs.len())));
    }
    if rows == 0 {
        return Ok(RatMatrix::zeros(0, cols));
    }
    RatMatrix::from_rows(&rs, cols)
}

fn rows_of(v: &Value, key: &str, cols: usize, params: &BTreeMap<String, Rat>) -> Result<Vec<RatVector>> {
    let arr = v.as_array().ok_or_else(|| schema(key, "expected an array of rows"))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| {
            let r = row
                .as_array()
                .ok_or_else(|| schema(format!("{key}[{i}]"), "expected an array"))?;
            if r.len() != cols {
                return Err(schema(
                    format!("{key}[{i}]"),
                    format!("expected {cols} entries, found {}", r.len()),
                ));
            }
            r.iter()
                .enumerate()
                .map(|(j, e)| entry(e, &format!("{key}[{i}][{j}]"), params))
                .collect()
        })
        .collect()
}

/// Parsed file: the system plus the parameter values actually used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: ConstrainedLinearSystem,
    pub params: BTreeMap<String, Rat>,
}

/// Parses a system from JSON text; `overrides` replace (or add) parameters.
pub fn parse_system_str(text: &str, overrides: &[(String, Rat)]) -> Result<SystemFile> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let mut params = BTreeMap::new();
    if let Some(p) = obj.get("params") {
        let p = p.as_object().ok_or_else(|| schema("params", "expected an object"))?;
        for (k, v) in p {
            let r = entry(v, &format!("params.{k}"), &BTreeMap::new())?;
            params.insert(k.clone(), r);
        }
    }
    for (k, v) in overrides {
        params.insert(k.clone(), v.clone());
    }
    let n = dim(obj, "n")?;
    let m = dim(obj, "m")?;
    let p = dim(obj, "p")?;
    let a = matrix(obj, "A", n, n, &params)?;
    let b = matrix(obj, "B", n, m, &params)?;
    let c = matrix(obj, "C", p, n, &params)?;
    let d = matrix(obj, "D", p, m, &params)?;
    let (ineq, eq) = match obj.get("cone") {
        None | Some(Value::Null) => (vec![], vec![]),
        Some(Value::Object(co)) => {
            let get = |k: &str| -> Result<Vec<RatVector>> {
                match co.get(k) {
                    None | Some(Value::Null) => Ok(vec![]),
                    Some(v) => rows_of(v, &format!("cone.{k}"), p, &params),
                }
            };
            (get("ineq")?, get("eq")?)
        }
        Some(_) => return Err(schema("cone", "expected an object")),
    };
    let y = cone_from_rows(p, &ineq, &eq)?;
    Ok(SystemFile {
        system: ConstrainedLinearSystem::new(a, b, c, d, y)?,
        params,
    })
}

pub fn parse_system(path: &Path, overrides: &[(String, Rat)]) -> Result<SystemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_system_str(&text, overrides)
}

/// `name=value` as used by `--set`.
pub fn parse_assignment(s: &str) -> Result<(String, Rat)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected name=value, found `{s}`")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(Error::Parse(format!("empty parameter name in `{s}`")));
    }
    Ok((k.to_string(), parse_rat(v.trim())?))
}

fn rows_json(rows: &[RatVector]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(format_rat(x))).collect()))
            .collect(),
    )
}

/// Serialises a system (numeric entries only, no parameters).
pub fn emit_system(sys: &ConstrainedLinearSystem) -> String {
    let (ineq, eq) = sys.cone_rows();
    let v = json!({
        "n": sys.n(),
        "m": sys.m(),
        "p": sys.p(),
        "A": rows_json(&sys.a.to_rows()),
        "B": rows_json(&sys.b.to_rows()),
        "C": rows_json(&sys.c.to_rows()),
        "D": rows_json(&sys.d.to_rows()),
        "cone": {"ineq": rows_json(&ineq), "eq": rows_json(&eq)},
        "params": {},
    });
    serde_json::to_string_pretty(&v).unwrap()
}
