//! Problem files: a field descriptor, a square matrix of literals, and
//! optionally a translation vector and factorization hints.
//!
//! ```json
//! {"field": {"kind": "Fq", "p": 2, "modulus": "a^2 + a + 1"},
//!  "matrix": [["a", "1"], ["0", "a"]],
//!  "vector": ["1", "0"],
//!  "factor_hints": [["x + a", 2]]}
//! ```

use dynlin_core::poly::FactorOptions;
use dynlin_core::{Elem, Field, FieldSpec, Matrix, Polynomial, Vector};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{self, SyntaxError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown field: {0}")]
    UnknownField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: Field,
    pub matrix: Matrix,
    pub vector: Option<Vector>,
    pub factor_hints: Vec<(Polynomial, usize)>,
}

impl ProblemFile {
    pub fn factor_options(&self) -> FactorOptions {
        FactorOptions { hints: self.factor_hints.clone(), ..FactorOptions::default() }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Source positions for error messages. serde_json keeps no spans, so a
/// literal is located by searching for its quoted text after its key.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
        (line, column)
    }

    /// Offset of the `nth` quoted occurrence of `literal` after `"key"`.
    fn find(&self, key: &str, literal: &str, nth: usize) -> Option<usize> {
        let start = self.text.find(&format!("\"{key}\""))?;
        let quoted = serde_json::to_string(literal).ok()?;
        let mut from = start + key.len() + 2;
        for _ in 0..nth {
            from += self.text[from..].find(&quoted)? + quoted.len();
        }
        Some(from + self.text[from..].find(&quoted)? + 1)
    }

    fn error(&self, at: Option<usize>, context: &str, err: SyntaxError) -> ParseError {
        match at {
            Some(offset) => {
                let (line, column) = self.line_col(offset + err.column - 1);
                ParseError::Syntax { line, column, message: format!("{context}: {}", err.message) }
            }
            None => ParseError::Syntax { line: 0, column: 0, message: format!("{context}: {}", err.message) },
        }
    }

    fn schema(&self, key: &str, message: impl Into<String>) -> ParseError {
        let (line, column) = self.text.find(&format!("\"{key}\"")).map_or((0, 0), |o| self.line_col(o));
        ParseError::Syntax { line, column, message: message.into() }
    }
}

/// A literal is a JSON string or integer; `seen` counts earlier identical
/// literals under the same key so repeated entries are located correctly.
struct Literals<'a> {
    loc: Locator<'a>,
    seen: std::collections::HashMap<(String, String), usize>,
}

impl Literals<'_> {
    fn text(&self, key: &str, context: &str, v: &Value) -> Result<String, ParseError> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            _ => Err(self.loc.schema(key, format!("{context}: expected a string literal"))),
        }
    }

    fn locate(&mut self, key: &str, text: &str) -> Option<usize> {
        let nth = self.seen.entry((key.to_string(), text.to_string())).or_insert(0);
        let at = self.loc.find(key, text, *nth);
        *nth += 1;
        at
    }

    fn elem(&mut self, key: &str, context: &str, v: &Value, field: &Field) -> Result<Elem, ParseError> {
        let text = self.text(key, context, v)?;
        let at = self.locate(key, &text);
        expr::parse_elem(&text, field).map_err(|e| self.loc.error(at, context, e))
    }

    fn poly(&mut self, key: &str, context: &str, v: &Value, field: &Field, var: &str) -> Result<Polynomial, ParseError> {
        let text = self.text(key, context, v)?;
        let at = self.locate(key, &text);
        expr::parse_poly(&text, field, var).map_err(|e| self.loc.error(at, context, e))
    }
}

fn prime_of(loc: &Locator, v: Option<&Value>) -> Result<u64, ParseError> {
    match v {
        Some(Value::Number(n)) => n.as_u64().ok_or_else(|| loc.schema("p", "p must be a positive integer")),
        Some(Value::String(s)) => s.trim().parse().map_err(|_| loc.schema("p", format!("bad prime '{s}'"))),
        _ => Err(loc.schema("field", "field needs a prime 'p'")),
    }
}

fn parse_field(lits: &mut Literals, v: &Value) -> Result<Field, ParseError> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| lits.loc.schema("field", "field needs a 'kind'"))?;
    let unknown = |e: dynlin_core::Error| ParseError::UnknownField(e.to_string());
    match kind {
        "Q" => Ok(Field::rationals()),
        "Fp" => Field::prime(prime_of(&lits.loc, v.get("p"))?).map_err(unknown),
        "FpT" => Field::rational_functions(prime_of(&lits.loc, v.get("p"))?).map_err(unknown),
        "Fq" => {
            let p = prime_of(&lits.loc, v.get("p"))?;
            let base = Field::prime(p).map_err(unknown)?;
            let m = v.get("modulus").ok_or_else(|| lits.loc.schema("field", "Fq needs a 'modulus' in a"))?;
            let modulus = lits.poly("modulus", "modulus", m, &base, "a")?;
            let fp = modulus.to_fp_poly().expect("prime field polynomial");
            Field::extension(p, fp).map_err(unknown)
        }
        other => Err(ParseError::UnknownField(format!("kind '{other}'"))),
    }
}

fn parse_hint(lits: &mut Literals, i: usize, h: &Value, field: &Field) -> Result<(Polynomial, usize), ParseError> {
    let context = format!("factor_hints[{i}]");
    let (poly, mult) = match h {
        Value::Array(pair) if pair.len() == 2 => (&pair[0], &pair[1]),
        Value::Object(o) => match (o.get("poly"), o.get("multiplicity")) {
            (Some(p), Some(m)) => (p, m),
            (Some(p), None) => (p, &Value::Null),
            _ => return Err(lits.loc.schema("factor_hints", format!("{context}: expected {{poly, multiplicity}}"))),
        },
        Value::String(_) => (h, &Value::Null),
        _ => return Err(lits.loc.schema("factor_hints", format!("{context}: expected [poly, multiplicity]"))),
    };
    let mult = match mult {
        Value::Null => 1,
        Value::Number(n) => n.as_u64().filter(|&k| k > 0).ok_or_else(|| {
            lits.loc.schema("factor_hints", format!("{context}: multiplicity must be a positive integer"))
        })? as usize,
        Value::String(s) => s.trim().parse().map_err(|_| lits.loc.schema("factor_hints", format!("{context}: bad multiplicity")))?,
        _ => return Err(lits.loc.schema("factor_hints", format!("{context}: bad multiplicity"))),
    };
    let p = lits.poly("factor_hints", &context, poly, field, "x")?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(lits.loc.schema("factor_hints", format!("{context}: hint must be nonconstant")));
    }
    Ok((p.make_monic(), mult))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut lits = Literals { loc: Locator { text }, seen: Default::default() };
    let field_value = root.get("field").ok_or_else(|| lits.loc.schema("field", "missing 'field'"))?;
    let field = parse_field(&mut lits, field_value)?;

    let rows = root
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| lits.loc.schema("matrix", "missing 'matrix' (a list of rows)"))?;
    let n = rows.len();
    if n == 0 {
        return Err(ParseError::DimensionMismatch("matrix is empty".into()));
    }
    let mut entries = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| lits.loc.schema("matrix", format!("matrix[{i}] is not a list")))?;
        if row.len() != n {
            return Err(ParseError::DimensionMismatch(format!("matrix[{i}] has {} entries, expected {n}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, v)| lits.elem("matrix", &format!("matrix[{i}][{j}]"), v, &field))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(parsed);
    }
    let matrix = Matrix::from_rows(&field, entries).map_err(|e| ParseError::DimensionMismatch(e.to_string()))?;

    let vector = match root.get("vector") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            if items.len() != n {
                return Err(ParseError::DimensionMismatch(format!("vector has {} entries, expected {n}", items.len())));
            }
            let v = items
                .iter()
                .enumerate()
                .map(|(i, x)| lits.elem("vector", &format!("vector[{i}]"), x, &field))
                .collect::<Result<Vec<_>, _>>()?;
            Some(v)
        }
        Some(_) => return Err(lits.loc.schema("vector", "vector must be a list")),
    };

    let factor_hints = match root.get("factor_hints") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(hints)) => {
            hints.iter().enumerate().map(|(i, h)| parse_hint(&mut lits, i, h, &field)).collect::<Result<_, _>>()?
        }
        Some(_) => return Err(lits.loc.schema("factor_hints", "factor_hints must be a list")),
    };

    Ok(ProblemFile { field, matrix, vector, factor_hints })
}

/// Parses a comma-separated vector such as `1, t, 0`.
pub fn parse_vector(text: &str, field: &Field, n: usize) -> Result<Vector, ParseError> {
    let items: Vec<&str> = text.split(',').collect();
    if items.len() != n {
        return Err(ParseError::DimensionMismatch(format!("vector has {} entries, expected {n}", items.len())));
    }
    let mut offset = 0;
    let mut out = Vec::with_capacity(n);
    for (i, item) in items.iter().enumerate() {
        let e = expr::parse_elem(item, field).map_err(|e| ParseError::Syntax {
            line: 1,
            column: offset + e.column,
            message: format!("vector[{i}]: {}", e.message),
        })?;
        out.push(e);
        offset += item.chars().count() + 1;
    }
    Ok(out)
}

pub fn field_json(field: &Field) -> Value {
    match field.spec() {
        FieldSpec::Rationals => json!({"kind": "Q"}),
        FieldSpec::Prime { p } => json!({"kind": "Fp", "p": p}),
        FieldSpec::RationalFunctions { p } => json!({"kind": "FpT", "p": p}),
        FieldSpec::Extension { p, modulus } => {
            let base = Field::prime(*p).expect("prime");
            let m = Polynomial::from_fp_poly(&base, modulus).to_string().replace('x', "a");
            json!({"kind": "Fq", "p": p, "modulus": m})
        }
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array((0..m.rows()).map(|i| vector_json(f, m.row(i))).collect())
}

pub fn vector_json(field: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(field.format(x))).collect())
}

/// Renders a problem file in the input format.
pub fn render_problem(p: &ProblemFile) -> String {
    let mut root = json!({"field": field_json(&p.field), "matrix": matrix_json(&p.matrix)});
    if let Some(v) = &p.vector {
        root["vector"] = vector_json(&p.field, v);
    }
    if !p.factor_hints.is_empty() {
        root["factor_hints"] = p.factor_hints.iter().map(|(h, k)| json!([h.to_string(), k])).collect();
    }
    serde_json::to_string_pretty(&root).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_over_q() {
        let p = parse_problem(r#"{"field":{"kind":"Q"},"matrix":[["0","1"],["0","0"]]}"#).unwrap();
        let q = Field::rationals();
        assert_eq!(p.matrix, Matrix::jordan(&q, &q.zero(), 2));
        assert!(p.vector.is_none() && p.factor_hints.is_empty());
    }

    #[test]
    fn unipotent_over_f2() {
        let p = parse_problem(r#"{"field":{"kind":"Fp","p":2},"matrix":[["1","1"],["0","1"]]}"#).unwrap();
        let f = Field::prime(2).unwrap();
        assert_eq!(p.matrix, Matrix::jordan(&f, &f.one(), 2));
    }

    #[test]
    fn rational_function_entries_reduce() {
        let p = parse_problem(r#"{"field":{"kind":"FpT","p":2},"matrix":[["t/(t+1)","0"],["0","1"]]}"#).unwrap();
        assert_eq!(p.field.format(p.matrix.get(0, 0)), "(t)/(t + 1)");
        let same = parse_problem(r#"{"field":{"kind":"FpT","p":"2"},"matrix":[["(t^2+t)/(t^2+1)","0"],["0","1"]]}"#);
        assert_eq!(same.unwrap(), p);
    }

    #[test]
    fn round_trip() {
        let texts = [
            r#"{"field":{"kind":"Q"},"matrix":[["1/2","-3"],["0","2^-1"]],"vector":["1","-1/3"]}"#,
            r#"{"field":{"kind":"Fq","p":3,"modulus":"a^2+1"},"matrix":[["a","1"],["0","2*a+1"]],"factor_hints":[["x - a",1]]}"#,
            r#"{"field":{"kind":"FpT","p":3},"matrix":[["t/(t+1)","t^2"],["1","0"]],"factor_hints":[{"poly":"x^2 - t","multiplicity":1}]}"#,
        ];
        for t in texts {
            let p = parse_problem(t).unwrap();
            let again = parse_problem(&render_problem(&p)).unwrap();
            assert_eq!(again, p, "{t}");
        }
    }

    #[test]
    fn errors_point_at_the_literal() {
        let text = "{\"field\": {\"kind\": \"Q\"},\n \"matrix\": [[\"1\", \"2\"],\n            [\"3\", \"4 +\"]]}";
        match parse_problem(text).unwrap_err() {
            ParseError::Syntax { line, column, message } => {
                assert_eq!(line, 3);
                assert_eq!(column, 23);
                assert!(message.starts_with("matrix[1][1]"), "{message}");
            }
            e => panic!("{e}"),
        }
        let compact = r#"{"field":{"kind":"Q"},"vector":["1/0","1"],"matrix":[["1","1/0"],["0","1"]]}"#;
        assert!(matches!(parse_problem(compact).unwrap_err(), ParseError::Syntax { line: 1, column: 61, .. }));
    }

    #[test]
    fn schema_errors() {
        let bad_json = parse_problem("{\"field\": ").unwrap_err();
        assert!(matches!(bad_json, ParseError::Syntax { line: 1, .. }));
        assert!(matches!(
            parse_problem(r#"{"field":{"kind":"R"},"matrix":[["1"]]}"#).unwrap_err(),
            ParseError::UnknownField(_)
        ));
        assert!(matches!(
            parse_problem(r#"{"field":{"kind":"Fp","p":4},"matrix":[["1"]]}"#).unwrap_err(),
            ParseError::UnknownField(_)
        ));
        assert!(matches!(
            parse_problem(r#"{"field":{"kind":"Q"},"matrix":[["1","2"],["3"]]}"#).unwrap_err(),
            ParseError::DimensionMismatch(_)
        ));
        assert!(matches!(
            parse_problem(r#"{"field":{"kind":"Q"},"matrix":[["1"]],"vector":["1","2"]}"#).unwrap_err(),
            ParseError::DimensionMismatch(_)
        ));
    }

    #[test]
    fn vectors_from_flags() {
        let q = Field::rationals();
        assert_eq!(parse_vector("1, -1/2", &q, 2).unwrap(), vec![q.one(), q.div(&q.from_i64(-1), &q.from_i64(2)).unwrap()]);
        assert!(matches!(parse_vector("1, 2 +", &q, 2).unwrap_err(), ParseError::Syntax { column: 7, .. }));
    }
}
