//! Parsing and serialization: exact rationals, matrices (JSON and CSV),
//! permutations, regions, polynomial tables, and evaluation reports.
//!
//! All text formats are exact — rationals travel as `"p/q"` strings, never
//! floats. Every parser here is total: arbitrary byte input yields `Ok` or
//! an `Error`, never a panic. The writers are canonical, so equal values
//! produce byte-identical output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::immanant::ImmanantReport;
use crate::kl::IntPoly;
use crate::linalg::{Rat, RatMatrix};
use crate::perm::Permutation;
use crate::region::Region;
use crate::{Error, Result};

/// Safety cap on the declared rank of a parsed region: the dense grid
/// allocates `n^2` cells up front, so the rank must be bounded by something
/// other than the input's claim.
pub const REGION_PARSE_MAX_N: usize = 64;

fn invalid(what: &'static str, msg: impl Into<String>) -> Error {
    Error::Invalid {
        what,
        msg: msg.into(),
    }
}

/// Parses an exact rational from `"p"` or `"p/q"` (optional sign on either
/// part, ASCII digits, arbitrary precision). Rejects empty parts, zero
/// denominators, floats, and any other noise.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let parse_int = |part: &str| -> Result<BigInt> {
        if part.is_empty() {
            return Err(invalid("rational", format!("empty integer part in {s:?}")));
        }
        BigInt::from_str(part)
            .map_err(|e| invalid("rational", format!("bad integer {part:?} in {s:?}: {e}")))
    };
    let num = parse_int(num_str)?;
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => parse_int(d)?,
    };
    if den.is_zero() {
        return Err(invalid("rational", format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Canonical text for a rational: `"p"` when integral, `"p/q"` otherwise
/// (reduced, denominator positive).
pub fn rational_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::linalg::rat_int(i))
            } else {
                Err(invalid(
                    "matrix entry",
                    format!("non-integer number {n}; use a \"p/q\" string for exact values"),
                ))
            }
        }
        other => Err(invalid(
            "matrix entry",
            format!("expected string or integer, got {other}"),
        )),
    }
}

/// Parses a matrix from a JSON array of arrays whose entries are integers
/// or exact `"p/q"` strings.
pub fn matrix_from_json_str(s: &str) -> Result<RatMatrix> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| invalid("matrix JSON", e.to_string()))?;
    let rows = v
        .as_array()
        .ok_or_else(|| invalid("matrix JSON", "top level must be an array of rows"))?;
    if rows.is_empty() {
        return Err(invalid("matrix JSON", "matrix has no rows"));
    }
    let mut data = Vec::with_capacity(rows.len());
    for (ri, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| {
            invalid("matrix JSON", format!("row {} is not an array", ri + 1))
        })?;
        let mut out = Vec::with_capacity(cells.len());
        for cell in cells {
            out.push(rational_from_json(cell)?);
        }
        data.push(out);
    }
    RatMatrix::new(data)
}

/// Canonical matrix JSON: array of arrays of `"p/q"` strings, pretty-printed.
pub fn matrix_to_json_string(m: &RatMatrix) -> String {
    let rows: Vec<Value> = (1..=m.n_rows())
        .map(|i| {
            Value::Array(
                (1..=m.n_cols())
                    .map(|j| Value::String(rational_to_string(m.get(i, j))))
                    .collect(),
            )
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("static shape");
    s.push('\n');
    s
}

/// Parses a matrix from CSV: one row per line, entries separated by commas.
/// Blank lines and lines starting with `#` are skipped. Entries are exact
/// integers or `"p/q"`.
pub fn matrix_from_csv_str(s: &str) -> Result<RatMatrix> {
    let mut data = Vec::new();
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<Rat>> = line.split(',').map(parse_rational).collect();
        data.push(row?);
    }
    if data.is_empty() {
        return Err(invalid("matrix CSV", "no data rows"));
    }
    RatMatrix::new(data)
}

/// Canonical matrix CSV (no header; exact entries).
pub fn matrix_to_csv_string(m: &RatMatrix) -> String {
    let mut out = String::new();
    for i in 1..=m.n_rows() {
        let row: Vec<String> = (1..=m.n_cols())
            .map(|j| rational_to_string(m.get(i, j)))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Reads a matrix file, choosing the format by extension: `.json` or
/// anything else as CSV.
pub fn matrix_from_path(path: &std::path::Path) -> Result<RatMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid("matrix file", format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        matrix_from_json_str(&text)
    } else {
        matrix_from_csv_str(&text)
    }
}

fn usize_from_json(v: &Value, what: &'static str) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| invalid(what, format!("expected a nonnegative integer, got {v}")))
}

/// Parses a permutation from a JSON array of 1-based images, e.g.
/// `[2,4,1,3]`.
pub fn permutation_from_json_str(s: &str) -> Result<Permutation> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| invalid("permutation JSON", e.to_string()))?;
    permutation_from_json(&v)
}

pub fn permutation_from_json(v: &Value) -> Result<Permutation> {
    let arr = v
        .as_array()
        .ok_or_else(|| invalid("permutation JSON", "expected an array of 1-based images"))?;
    let images: Result<Vec<usize>> = arr
        .iter()
        .map(|x| usize_from_json(x, "permutation JSON"))
        .collect();
    Permutation::new(images?)
}

pub fn permutation_to_json(v: &Permutation) -> Value {
    Value::Array(
        (1..=v.n())
            .map(|i| Value::Number(serde_json::Number::from(v.image(i) as u64)))
            .collect(),
    )
}

/// Parses a region from JSON `{"n": rank, "cells": [[r, c], …]}` with
/// 1-based coordinates. The rank is capped at [`REGION_PARSE_MAX_N`].
pub fn region_from_json_str(s: &str) -> Result<Region> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| invalid("region JSON", e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| invalid("region JSON", "expected an object with n and cells"))?;
    let n = usize_from_json(
        obj.get("n")
            .ok_or_else(|| invalid("region JSON", "missing field n"))?,
        "region JSON",
    )?;
    if n > REGION_PARSE_MAX_N {
        return Err(invalid(
            "region JSON",
            format!("rank {n} exceeds the parser cap {REGION_PARSE_MAX_N}"),
        ));
    }
    let cells_v = obj
        .get("cells")
        .ok_or_else(|| invalid("region JSON", "missing field cells"))?
        .as_array()
        .ok_or_else(|| invalid("region JSON", "cells must be an array of [r, c] pairs"))?;
    let mut cells = Vec::with_capacity(cells_v.len());
    for cell in cells_v {
        let pair = cell
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| invalid("region JSON", format!("bad cell {cell}")))?;
        cells.push((
            usize_from_json(&pair[0], "region JSON")?,
            usize_from_json(&pair[1], "region JSON")?,
        ));
    }
    Region::from_cells(n, &cells)
}

/// Canonical region JSON: `{"n": rank, "cells": [[r, c], …]}` with cells in
/// row-major order.
pub fn region_to_json_string(r: &Region) -> String {
    let cells: Vec<Value> = r
        .cells()
        .into_iter()
        .map(|(i, j)| json!([i, j]))
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({ "n": r.n(), "cells": cells }))
        .expect("static shape");
    s.push('\n');
    s
}

/// One stored polynomial: a pair of permutations (1-based image arrays) and
/// the coefficient sequence by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub coeffs: Vec<i64>,
}

/// A frozen table of polynomials for one rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTable {
    pub n: usize,
    pub entries: Vec<TableEntry>,
}

impl PolyTable {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let table: PolyTable =
            serde_json::from_str(s).map_err(|e| invalid("polynomial table", e.to_string()))?;
        for e in &table.entries {
            if e.x.len() != table.n || e.y.len() != table.n {
                return Err(invalid(
                    "polynomial table",
                    format!("entry rank differs from table rank {}", table.n),
                ));
            }
        }
        Ok(table)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("static shape");
        s.push('\n');
        s
    }

    pub fn entry(&self, x: &Permutation, y: &Permutation) -> Option<IntPoly> {
        let xi: Vec<usize> = (1..=x.n()).map(|i| x.image(i)).collect();
        let yi: Vec<usize> = (1..=y.n()).map(|i| y.image(i)).collect();
        self.entries
            .iter()
            .find(|e| e.x == xi && e.y == yi)
            .map(|e| IntPoly::from_coeffs(e.coeffs.clone()))
    }
}

/// JSON for an evaluation report:
/// `{"v": […], "method": "…", "value": "p/q",
///   "sign_prediction": {"sign": ±1, "justification": "…"} | null,
///   "k_condition": k | null}`.
pub fn report_to_json(r: &ImmanantReport) -> Value {
    json!({
        "v": permutation_to_json(&r.v),
        "method": r.method.as_str(),
        "value": rational_to_string(&r.value),
        "sign_prediction": r.sign_prediction.as_ref().map(|p| json!({
            "sign": p.sign,
            "justification": p.justification,
        })),
        "k_condition": r.k_condition,
    })
}

pub fn report_to_json_string(r: &ImmanantReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_to_json(r)).expect("static shape");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immanant::{Method, SignPrediction};
    use crate::linalg::{rat, rat_int};
    use crate::perm::perm;

    #[test]
    fn rational_round_trip() {
        assert_eq!(parse_rational("5").unwrap(), rat_int(5));
        assert_eq!(parse_rational(" -7/3 ").unwrap(), rat(-7, 3));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-4/-6").unwrap(), rat(2, 3));
        assert_eq!(rational_to_string(&rat(2, 3)), "2/3");
        assert_eq!(rational_to_string(&rat_int(-7)), "-7");
        for bad in ["", "/", "1/", "/2", "1/0", "a", "1.5", "1/2/3", "--3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
        // Arbitrary precision survives.
        let big = "123456789012345678901234567891/7";
        assert_eq!(rational_to_string(&parse_rational(big).unwrap()), big);
    }

    #[test]
    fn matrix_json_round_trip() {
        let text = r#"[[11, "9", 3], ["8", 7, "3"], [2, 2, "1/1"]]"#;
        let m = matrix_from_json_str(text).unwrap();
        assert_eq!(*m.get(1, 2), rat_int(9));
        assert_eq!(m.det().unwrap(), rat_int(-1));
        let canon = matrix_to_json_string(&m);
        let again = matrix_from_json_str(&canon).unwrap();
        assert_eq!(matrix_to_json_string(&again), canon);
        for bad in [
            "{}",
            "[]",
            "[[1],[2,3]]",
            "[[1.5]]",
            "[[true]]",
            "[[\"1/0\"]]",
            "[1,2]",
            "not json",
        ] {
            assert!(matrix_from_json_str(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn matrix_csv_round_trip() {
        let text = "# comment\n11,9,3\n8,7,3\n\n2,2,1\n";
        let m = matrix_from_csv_str(text).unwrap();
        assert_eq!(m.n_rows(), 3);
        assert_eq!(m.det().unwrap(), rat_int(-1));
        let canon = matrix_to_csv_string(&m);
        assert_eq!(canon, "11,9,3\n8,7,3\n2,2,1\n");
        assert_eq!(
            matrix_to_csv_string(&matrix_from_csv_str(&canon).unwrap()),
            canon
        );
        // Rationals are accepted too.
        let q = matrix_from_csv_str("1/2,1\n3,4\n").unwrap();
        assert_eq!(*q.get(1, 1), rat(1, 2));
        for bad in ["", "# only\n", "1,2\n3\n", "1,x\n"] {
            assert!(matrix_from_csv_str(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn permutation_json_round_trip() {
        let v = perm(&[2, 4, 1, 3]);
        let j = permutation_to_json(&v);
        assert_eq!(j.to_string(), "[2,4,1,3]");
        assert_eq!(permutation_from_json_str("[2,4,1,3]").unwrap(), v);
        for bad in ["[2,2,1]", "[0,1]", "[1,3]", "{}", "[\"a\"]", "[1.5]"] {
            assert!(permutation_from_json_str(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn region_json_round_trip() {
        let r = Region::from_cells(3, &[(1, 3), (2, 2), (3, 1), (1, 1)]).unwrap();
        let text = region_to_json_string(&r);
        let back = region_from_json_str(&text).unwrap();
        assert_eq!(back.cells(), r.cells());
        assert_eq!(region_to_json_string(&back), text);
        for bad in [
            "{}",
            r#"{"n": 3}"#,
            r#"{"n": 3, "cells": [[0, 1]]}"#,
            r#"{"n": 3, "cells": [[1, 4]]}"#,
            r#"{"n": 3, "cells": [[1]]}"#,
            r#"{"n": 1000000, "cells": []}"#,
            r#"{"n": -1, "cells": []}"#,
        ] {
            assert!(region_from_json_str(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn poly_table_round_trip() {
        let table = PolyTable {
            n: 4,
            entries: vec![TableEntry {
                x: vec![1, 2, 3, 4],
                y: vec![4, 2, 3, 1],
                coeffs: vec![1, 1],
            }],
        };
        let text = table.to_json_string();
        let back = PolyTable::from_json_str(&text).unwrap();
        assert_eq!(back, table);
        let p = back
            .entry(&perm(&[1, 2, 3, 4]), &perm(&[4, 2, 3, 1]))
            .unwrap();
        assert_eq!(p.eval_at_one(), 2);
        assert!(back.entry(&perm(&[2, 1, 3, 4]), &perm(&[4, 2, 3, 1])).is_none());
        assert!(PolyTable::from_json_str(r#"{"n": 3, "entries": [{"x": [1,2], "y": [1,2], "coeffs": []}]}"#).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = ImmanantReport {
            v: perm(&[2, 4, 1, 3]),
            method: Method::Determinantal,
            value: rat(7, 2),
            sign_prediction: Some(SignPrediction {
                sign: 1,
                justification: "test".into(),
            }),
            k_condition: Some(2),
        };
        let j = report_to_json(&r);
        assert_eq!(j["method"], "determinantal");
        assert_eq!(j["value"], "7/2");
        assert_eq!(j["sign_prediction"]["sign"], 1);
        assert_eq!(j["k_condition"], 2);
        let none = ImmanantReport {
            sign_prediction: None,
            k_condition: None,
            ..r
        };
        let j2 = report_to_json(&none);
        assert!(j2["sign_prediction"].is_null());
        assert!(j2["k_condition"].is_null());
    }
}
