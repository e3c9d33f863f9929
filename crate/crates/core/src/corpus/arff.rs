//! Reader and writer for a dense ARFF subset.
//!
//! Supported grammar: `@relation <name>`, `@attribute <name> <type>` with
//! type one of `numeric`/`real`/`integer`, `string`, or a `{v1,v2,...}`
//! nominal list, then `@data` followed by dense comma-separated rows.
//! Keywords are case-insensitive, nominal values case-sensitive. `%` starts
//! a comment line, a bare `?` is the missing marker, and values may be
//! quoted with single or double quotes using backslash escapes
//! (`\\ \' \" \n \r \t`). Sparse `{...}` data rows and relational or date
//! attributes are rejected with a positioned error.
//!
//! The last attribute is the default class unless the file carries a
//! `% class: <name>` (or `% class: none`) comment, which [`write_arff`]
//! emits whenever the default rule would not recover the dataset's own
//! class designation.

use super::{AttributeKind, AttributeSpec, CorpusError, Dataset, Value};

const CLASS_COMMENT_PREFIX: &str = "% class:";

fn syntax(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Syntax {
        line,
        message: message.into(),
    }
}

/// A raw field from a data row or declaration: quoting decides whether `?`
/// means missing and whether surrounding whitespace was stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
enum RawField {
    Bare(String),
    Quoted(String),
}

impl RawField {
    fn text(&self) -> &str {
        match self {
            RawField::Bare(s) | RawField::Quoted(s) => s,
        }
    }

    fn is_missing(&self) -> bool {
        matches!(self, RawField::Bare(s) if s == "?")
    }
}

fn unescape_into(
    out: &mut String,
    chars: &mut std::iter::Peekable<std::str::Chars>,
    line: usize,
) -> Result<(), CorpusError> {
    match chars.next() {
        Some('\\') => out.push('\\'),
        Some('\'') => out.push('\''),
        Some('"') => out.push('"'),
        Some('n') => out.push('\n'),
        Some('r') => out.push('\r'),
        Some('t') => out.push('\t'),
        Some(other) => {
            return Err(syntax(line, format!("unknown escape sequence '\\{other}'")));
        }
        None => return Err(syntax(line, "dangling escape at end of line")),
    }
    Ok(())
}

/// Reads one token (quoted or bare) from `chars`, stopping at `stop` or
/// whitespace-if-`stop_at_space`. Leading whitespace is skipped.
fn take_field(
    chars: &mut std::iter::Peekable<std::str::Chars>,
    stop: Option<char>,
    stop_at_space: bool,
    line: usize,
) -> Result<RawField, CorpusError> {
    while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
        chars.next();
    }
    if let Some(&quote) = chars.peek().filter(|c| **c == '\'' || **c == '"') {
        chars.next();
        let mut s = String::new();
        loop {
            match chars.next() {
                Some('\\') => unescape_into(&mut s, chars, line)?,
                Some(c) if c == quote => break,
                Some(c) => s.push(c),
                None => return Err(syntax(line, "unterminated quoted value")),
            }
        }
        if stop_at_space {
            // whitespace terminates the token and stays for the caller
            if let Some(&next) = chars.peek() {
                if !next.is_whitespace() && Some(next) != stop {
                    return Err(syntax(
                        line,
                        format!("unexpected character '{next}' after closing quote"),
                    ));
                }
            }
        } else {
            // only whitespace may follow before the stop character
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            if let Some(&next) = chars.peek() {
                if Some(next) != stop {
                    return Err(syntax(
                        line,
                        format!("unexpected character '{next}' after closing quote"),
                    ));
                }
            }
        }
        Ok(RawField::Quoted(s))
    } else {
        let mut s = String::new();
        while let Some(&c) = chars.peek() {
            if Some(c) == stop || (stop_at_space && c.is_whitespace()) {
                break;
            }
            chars.next();
            s.push(c);
        }
        Ok(RawField::Bare(s.trim().to_string()))
    }
}

/// Splits a comma-separated list of possibly quoted fields.
fn split_fields(input: &str, line: usize) -> Result<Vec<RawField>, CorpusError> {
    let mut chars = input.chars().peekable();
    let mut fields = Vec::new();
    loop {
        fields.push(take_field(&mut chars, Some(','), false, line)?);
        match chars.next() {
            Some(',') => continue,
            None => break,
            Some(c) => return Err(syntax(line, format!("unexpected character '{c}'"))),
        }
    }
    Ok(fields)
}

fn parse_attribute_line(rest: &str, line: usize) -> Result<AttributeSpec, CorpusError> {
    let mut chars = rest.chars().peekable();
    let name = take_field(&mut chars, None, true, line)?;
    if name.text().is_empty() {
        return Err(syntax(line, "missing attribute name"));
    }
    let type_str: String = chars.collect();
    let type_str = type_str.trim();
    if type_str.is_empty() {
        return Err(syntax(line, "missing attribute type"));
    }
    let kind = if type_str.starts_with('{') {
        if !type_str.ends_with('}') {
            return Err(syntax(line, "unterminated nominal value list"));
        }
        let inner = &type_str[1..type_str.len() - 1];
        let mut values = Vec::new();
        for field in split_fields(inner, line)? {
            let v = field.text().to_string();
            if values.contains(&v) {
                return Err(syntax(line, format!("duplicate nominal value '{v}'")));
            }
            values.push(v);
        }
        if values.len() == 1 && values[0].is_empty() {
            return Err(syntax(line, "empty nominal value list"));
        }
        AttributeKind::Nominal(values)
    } else {
        match type_str.to_ascii_lowercase().as_str() {
            "numeric" | "real" | "integer" => AttributeKind::Numeric,
            "string" => AttributeKind::Text,
            "relational" => return Err(syntax(line, "relational attributes are not supported")),
            other if other.starts_with("date") => {
                return Err(syntax(line, "date attributes are not supported"))
            }
            other => return Err(syntax(line, format!("unknown attribute type '{other}'"))),
        }
    };
    Ok(AttributeSpec {
        name: name.text().to_string(),
        kind,
    })
}

fn coerce(field: &RawField, spec: &AttributeSpec, line: usize) -> Result<Value, CorpusError> {
    if field.is_missing() {
        return Ok(Value::Missing);
    }
    match &spec.kind {
        AttributeKind::Numeric => {
            let v: f64 = field.text().parse().map_err(|_| {
                syntax(
                    line,
                    format!(
                        "expected numeric value for attribute '{}', found '{}'",
                        spec.name,
                        field.text()
                    ),
                )
            })?;
            if !v.is_finite() {
                return Err(syntax(
                    line,
                    format!("non-finite numeric value for attribute '{}'", spec.name),
                ));
            }
            Ok(Value::Numeric(v))
        }
        AttributeKind::Nominal(values) => values
            .iter()
            .position(|v| v == field.text())
            .map(Value::Nominal)
            .ok_or_else(|| syntax(line, format!("undeclared nominal value '{}'", field.text()))),
        AttributeKind::Text => Ok(Value::Text(field.text().to_string())),
    }
}

/// Parses an ARFF document into a [`Dataset`].
///
/// An empty `@data` section is legal and yields zero instances.
pub fn parse_arff(source: &str) -> Result<Dataset, CorpusError> {
    let mut relation: Option<String> = None;
    let mut schema: Vec<AttributeSpec> = Vec::new();
    let mut rows: Vec<Vec<Value>> = Vec::new();
    let mut in_data = false;
    let mut class_override: Option<Option<String>> = None;
    let mut last_line = 0;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            if let Some(rest) = trimmed.strip_prefix(CLASS_COMMENT_PREFIX) {
                let rest = rest.trim();
                class_override = Some(if rest == "none" {
                    None
                } else {
                    let field = take_field(&mut rest.chars().peekable(), None, false, line)?;
                    Some(field.text().to_string())
                });
            }
            continue;
        }
        if !in_data {
            let keyword: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
            let rest = &trimmed[keyword.len()..];
            match keyword.to_ascii_lowercase().as_str() {
                "@data" => {
                    if schema.is_empty() {
                        return Err(syntax(line, "no attributes declared before @data"));
                    }
                    in_data = true;
                }
                "@relation" => {
                    let name = take_field(&mut rest.chars().peekable(), None, true, line)?;
                    if name.text().is_empty() {
                        return Err(syntax(line, "missing relation name"));
                    }
                    relation = Some(name.text().to_string());
                }
                "@attribute" => {
                    let spec = parse_attribute_line(rest, line)?;
                    if schema.iter().any(|a| a.name == spec.name) {
                        return Err(syntax(
                            line,
                            format!("duplicate attribute name '{}'", spec.name),
                        ));
                    }
                    schema.push(spec);
                }
                _ if keyword.starts_with('@') => {
                    return Err(syntax(line, format!("unknown keyword '{keyword}'")));
                }
                _ => {
                    return Err(syntax(line, "expected @relation, @attribute or @data"));
                }
            }
        } else {
            if trimmed.starts_with('{') {
                return Err(syntax(line, "sparse data rows are not supported"));
            }
            let fields = split_fields(trimmed, line)?;
            if fields.len() != schema.len() {
                return Err(syntax(
                    line,
                    format!("expected {} values, found {}", schema.len(), fields.len()),
                ));
            }
            let row = fields
                .iter()
                .zip(&schema)
                .map(|(f, spec)| coerce(f, spec, line))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
    }

    let relation = relation.ok_or_else(|| syntax(1, "missing @relation declaration"))?;
    if !in_data {
        return Err(syntax(last_line.max(1), "missing @data section"));
    }

    let class_index = match class_override {
        Some(None) => None,
        Some(Some(name)) => {
            let idx = schema
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| CorpusError::ClassColumnNotFound(name.clone()))?;
            Some(idx)
        }
        // default: the last attribute, when it is nominal
        None => schema
            .len()
            .checked_sub(1)
            .filter(|&i| schema[i].kind.is_nominal()),
    };

    Dataset::new(relation, schema, class_index, rows)
}

fn needs_quoting(s: &str) -> bool {
    s.is_empty()
        || s == "?"
        || s.chars().any(|c| {
            c.is_whitespace()
                || matches!(c, ',' | '\'' | '"' | '{' | '}' | '%' | '\\')
                || c.is_control()
        })
}

fn quote(s: &str) -> String {
    if !needs_quoting(s) {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\'' => out.push_str("\\'"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('\'');
    out
}

fn render_value(value: &Value, spec: &AttributeSpec) -> String {
    match value {
        Value::Missing => "?".to_string(),
        Value::Numeric(v) => format!("{v}"),
        Value::Nominal(idx) => match &spec.kind {
            AttributeKind::Nominal(values) => quote(&values[*idx]),
            _ => unreachable!("nominal value in non-nominal attribute"),
        },
        Value::Text(s) => quote(s),
    }
}

/// Writes a dataset as ARFF text; the output reparses to an equal dataset.
pub fn write_arff(ds: &Dataset) -> String {
    let mut out = String::new();
    out.push_str(&format!("@relation {}\n", quote(ds.relation())));

    // the default rule recovers "last attribute, if nominal"; emit an
    // explicit class comment whenever that would differ
    let default_class = ds
        .n_attributes()
        .checked_sub(1)
        .filter(|&i| ds.schema()[i].kind.is_nominal());
    if ds.class_index() != default_class {
        match ds.class_index() {
            Some(ci) => {
                // a bare "none" means "no class"; quote the name to
                // disambiguate an attribute actually called that
                let name = &ds.schema()[ci].name;
                let quoted = if name == "none" {
                    "'none'".to_string()
                } else {
                    quote(name)
                };
                out.push_str(&format!("{CLASS_COMMENT_PREFIX} {quoted}\n"));
            }
            None => out.push_str(&format!("{CLASS_COMMENT_PREFIX} none\n")),
        }
    }

    for spec in ds.schema() {
        let type_str = match &spec.kind {
            AttributeKind::Numeric => "numeric".to_string(),
            AttributeKind::Text => "string".to_string(),
            AttributeKind::Nominal(values) => {
                let inner: Vec<String> = values.iter().map(|v| quote(v)).collect();
                format!("{{{}}}", inner.join(","))
            }
        };
        out.push_str(&format!("@attribute {} {}\n", quote(&spec.name), type_str));
    }
    out.push_str("@data\n");
    for row in ds.instances() {
        let fields: Vec<String> = row
            .iter()
            .zip(ds.schema())
            .map(|(v, spec)| render_value(v, spec))
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
