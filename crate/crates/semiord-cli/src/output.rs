//! Result records: one flat record per invocation, rendered as a single
//! JSON object (integers carried as decimal strings where they can exceed
//! machine width) or as plain text lines. Field order is fixed by the
//! command, so identical inputs render byte-identical output.

use crate::args::Format;

#[derive(Debug, Clone)]
enum Value {
    Str(String),
    UInt(u64),
    Bool(bool),
}

#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

fn escape_json(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn str(mut self, key: &'static str, value: impl Into<String>) -> Self {
        self.fields.push((key, Value::Str(value.into())));
        self
    }

    pub fn uint(mut self, key: &'static str, value: u64) -> Self {
        self.fields.push((key, Value::UInt(value)));
        self
    }

    pub fn bool(mut self, key: &'static str, value: bool) -> Self {
        self.fields.push((key, Value::Bool(value)));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let body: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(k, v)| match v {
                        Value::Str(s) => format!("\"{}\":\"{}\"", k, escape_json(s)),
                        Value::UInt(n) => format!("\"{}\":{}", k, n),
                        Value::Bool(b) => format!("\"{}\":{}", k, b),
                    })
                    .collect();
                format!("{{{}}}", body.join(","))
            }
            Format::Text => {
                // A single-field record is just its value.
                if self.fields.len() == 1 {
                    return match &self.fields[0].1 {
                        Value::Str(s) => s.clone(),
                        Value::UInt(n) => n.to_string(),
                        Value::Bool(b) => b.to_string(),
                    };
                }
                let lines: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(k, v)| match v {
                        Value::Str(s) => format!("{k}: {s}"),
                        Value::UInt(n) => format!("{k}: {n}"),
                        Value::Bool(b) => format!("{k}: {b}"),
                    })
                    .collect();
                lines.join("\n")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_ordered_and_escaped() {
        let record = Record::new()
            .str("outcome", "Less")
            .uint("level", 4)
            .bool("passed", true);
        assert_eq!(
            record.render(Format::Structured),
            "{\"outcome\":\"Less\",\"level\":4,\"passed\":true}"
        );
        let tricky = Record::new().str("detail", "a\"b\\c\nd");
        assert_eq!(
            tricky.render(Format::Structured),
            "{\"detail\":\"a\\\"b\\\\c\\nd\"}"
        );
    }

    #[test]
    fn text_collapses_single_field_records() {
        let record = Record::new().str("outcome", "Less");
        assert_eq!(record.render(Format::Text), "Less");
        let record = Record::new().str("mantissa", "5").uint("level", 4);
        assert_eq!(record.render(Format::Text), "mantissa: 5\nlevel: 4");
    }
}
