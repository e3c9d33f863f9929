//! RFC-4180-style CSV reader with column kind inference.
//!
//! Fields are comma-separated; a field may be double-quoted and then contains
//! commas, newlines and doubled-quote escapes. A column is numeric iff every
//! non-missing cell parses as a finite decimal number, otherwise text; the
//! class column is coerced to nominal with values in first-appearance order.
//! Empty cells are the missing marker. LF and CRLF line endings both work.

use super::{AttributeKind, AttributeSpec, CorpusError, Dataset, Value};

/// How the class column of a CSV file is designated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassColumn {
    /// Header name (requires `header = true`).
    Name(String),
    /// Zero-based column index.
    Index(usize),
    /// The last column.
    Last,
}

/// One parsed field: its unquoted text plus whether it was quoted.
type RawRecord = Vec<(String, bool)>;

/// Splits raw CSV text into records of unquoted field strings, tracking the
/// quoting of each field so empty unquoted cells can become missing markers.
fn split_records(source: &str) -> Result<Vec<RawRecord>, CorpusError> {
    let mut records: Vec<RawRecord> = Vec::new();
    let mut record: RawRecord = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut chars = source.chars().peekable();
    let mut in_quotes = false;
    let mut any_char = false;

    while let Some(c) = chars.next() {
        any_char = true;
        if in_quotes {
            match c {
                '"' => {
                    if chars.peek() == Some(&'"') {
                        chars.next();
                        field.push('"');
                    } else {
                        in_quotes = false;
                    }
                }
                _ => field.push(c),
            }
        } else {
            match c {
                '"' if field.is_empty() && !quoted => {
                    in_quotes = true;
                    quoted = true;
                }
                '"' => {
                    return Err(CorpusError::Syntax {
                        line: records.len() + 1,
                        message: "unexpected quote inside unquoted field".into(),
                    })
                }
                ',' => {
                    record.push((std::mem::take(&mut field), quoted));
                    quoted = false;
                }
                '\n' => {
                    let text = std::mem::take(&mut field);
                    let text = text.strip_suffix('\r').map(str::to_string).unwrap_or(text);
                    record.push((text, quoted));
                    quoted = false;
                    records.push(std::mem::take(&mut record));
                }
                _ => {
                    if quoted {
                        // only whitespace may sit between a closing quote
                        // and the next delimiter, and it is not field data
                        if !c.is_whitespace() {
                            return Err(CorpusError::Syntax {
                                line: records.len() + 1,
                                message: "unexpected character after closing quote".into(),
                            });
                        }
                    } else {
                        field.push(c);
                    }
                }
            }
        }
    }
    if in_quotes {
        return Err(CorpusError::UnterminatedQuote {
            row: records.len() + 1,
        });
    }
    if any_char && (!field.is_empty() || !record.is_empty() || quoted) {
        // final record without trailing newline
        let text = field
            .strip_suffix('\r')
            .map(str::to_string)
            .unwrap_or(field);
        record.push((text, quoted));
        records.push(record);
    }
    // blank lines separate nothing
    records.retain(|r| !(r.len() == 1 && r[0].0.is_empty() && !r[0].1));
    Ok(records)
}

fn parses_numeric(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Raw CSV records as strings, for callers that interpret cells against an
/// already-known schema instead of inferring one.
pub fn read_csv_records(source: &str) -> Result<Vec<Vec<String>>, CorpusError> {
    Ok(split_records(source)?
        .into_iter()
        .map(|record| record.into_iter().map(|(cell, _)| cell).collect())
        .collect())
}

/// Parses CSV text into a [`Dataset`].
///
/// With `header = true` the first record names the attributes; otherwise
/// attributes are named `att1..attN`. Record numbers in errors are 1-based
/// positions in the file (the header, when present, is record 1).
pub fn parse_csv(source: &str, class: ClassColumn, header: bool) -> Result<Dataset, CorpusError> {
    let records = split_records(source)?;
    if records.is_empty() {
        return Err(CorpusError::InvalidDataset("empty CSV input".into()));
    }

    let arity = records[0].len();
    for (i, record) in records.iter().enumerate() {
        if record.len() != arity {
            return Err(CorpusError::RaggedRow {
                row: i + 1,
                expected: arity,
                found: record.len(),
            });
        }
    }

    let (names, data): (Vec<String>, &[RawRecord]) = if header {
        let head = &records[0];
        let mut names = Vec::with_capacity(arity);
        for (i, (name, _)) in head.iter().enumerate() {
            if name.is_empty() {
                return Err(CorpusError::InvalidDataset(format!(
                    "empty attribute name in header (column {})",
                    i + 1
                )));
            }
            names.push(name.clone());
        }
        (names, &records[1..])
    } else {
        (
            (1..=arity).map(|i| format!("att{i}")).collect(),
            &records[..],
        )
    };

    let class_index = match &class {
        ClassColumn::Last => arity - 1,
        ClassColumn::Index(i) => {
            if *i >= arity {
                return Err(CorpusError::ClassColumnNotFound(i.to_string()));
            }
            *i
        }
        ClassColumn::Name(name) => names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CorpusError::ClassColumnNotFound(name.clone()))?,
    };

    // a cell is missing when it is empty; column kinds come from the rest
    let mut numeric = vec![true; arity];
    for record in data {
        for (col, (cell, _)) in record.iter().enumerate() {
            if !cell.is_empty() && parses_numeric(cell).is_none() {
                numeric[col] = false;
            }
        }
    }

    let mut class_values: Vec<String> = Vec::new();
    for record in data {
        let cell = &record[class_index].0;
        if !cell.is_empty() && !class_values.iter().any(|v| v == cell) {
            class_values.push(cell.clone());
        }
    }
    if class_values.is_empty() {
        return Err(CorpusError::InvalidDataset(
            "class column contains no values".into(),
        ));
    }

    let schema: Vec<AttributeSpec> = names
        .iter()
        .enumerate()
        .map(|(col, name)| {
            let kind = if col == class_index {
                AttributeKind::Nominal(class_values.clone())
            } else if numeric[col] {
                AttributeKind::Numeric
            } else {
                AttributeKind::Text
            };
            AttributeSpec {
                name: name.clone(),
                kind,
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(data.len());
    for record in data {
        let row: Vec<Value> = record
            .iter()
            .enumerate()
            .map(|(col, (cell, _))| {
                if cell.is_empty() {
                    Value::Missing
                } else if col == class_index {
                    let idx = class_values.iter().position(|v| v == cell).unwrap();
                    Value::Nominal(idx)
                } else if numeric[col] {
                    Value::Numeric(parses_numeric(cell).unwrap())
                } else {
                    Value::Text(cell.clone())
                }
            })
            .collect();
        rows.push(row);
    }

    Dataset::new("dataset", schema, Some(class_index), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_row_text_corpus() {
        let src = "text,label\ngood day,non-offensive\nkill them,offensive\n";
        let ds = parse_csv(src, ClassColumn::Name("label".into()), true).unwrap();
        assert_eq!(ds.n_instances(), 2);
        assert_eq!(ds.n_classes(), 2);
        assert_eq!(ds.class_values(), ["non-offensive", "offensive"]);
        assert_eq!(ds.instances()[0][0], Value::Text("good day".into()));
        assert_eq!(ds.instances()[1][1], Value::Nominal(1));
    }

    #[test]
    fn infers_numeric_columns() {
        let src = "x,label\n1,a\n2,a\n3.5,b\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.schema()[0].kind, AttributeKind::Numeric);
        assert_eq!(ds.instances()[2][0], Value::Numeric(3.5));
    }

    #[test]
    fn mixed_column_falls_back_to_text() {
        let src = "x,label\n1,a\nnope,a\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.schema()[0].kind, AttributeKind::Text);
        assert_eq!(ds.instances()[0][0], Value::Text("1".into()));
    }

    #[test]
    fn unescapes_doubled_quotes() {
        let src = "text,label\n\"say \"\"no\"\"\",a\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.instances()[0][0], Value::Text("say \"no\"".into()));
    }

    #[test]
    fn quoted_field_may_contain_newline_and_comma() {
        let src = "text,label\n\"a,b\nc\",x\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.n_instances(), 1);
        assert_eq!(ds.instances()[0][0], Value::Text("a,b\nc".into()));
    }

    #[test]
    fn ragged_row_reports_record_number() {
        let src = "a,b\n1,2\n3\n";
        let err = parse_csv(src, ClassColumn::Last, true).unwrap_err();
        assert_eq!(
            err,
            CorpusError::RaggedRow {
                row: 3,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn unterminated_quote_reports_record() {
        let src = "a,b\n\"open,2\n";
        let err = parse_csv(src, ClassColumn::Last, true).unwrap_err();
        assert_eq!(err, CorpusError::UnterminatedQuote { row: 2 });
    }

    #[test]
    fn missing_class_column_errors() {
        let src = "a,b\n1,2\n";
        let err = parse_csv(src, ClassColumn::Name("label".into()), true).unwrap_err();
        assert_eq!(err, CorpusError::ClassColumnNotFound("label".into()));
    }

    #[test]
    fn empty_cells_are_missing_markers() {
        let src = "x,y,label\n1,,a\n,2,b\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.instances()[0][1], Value::Missing);
        assert_eq!(ds.instances()[1][0], Value::Missing);
        // missing cells do not break numeric inference
        assert_eq!(ds.schema()[0].kind, AttributeKind::Numeric);
    }

    #[test]
    fn crlf_line_endings_are_accepted() {
        let src = "x,label\r\n1,a\r\n2,b\r\n";
        let ds = parse_csv(src, ClassColumn::Last, true).unwrap();
        assert_eq!(ds.n_instances(), 2);
        assert_eq!(ds.class_values(), ["a", "b"]);
    }

    #[test]
    fn no_header_names_attributes_positionally() {
        let src = "1,a\n2,b\n";
        let ds = parse_csv(src, ClassColumn::Last, false).unwrap();
        assert_eq!(ds.schema()[0].name, "att1");
        assert_eq!(ds.schema()[1].name, "att2");
        assert_eq!(ds.n_instances(), 2);
    }
}
