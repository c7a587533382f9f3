//! Minimal INI reader shared by the instance and config file formats.
//!
//! Supported syntax: `[section]` headers, `key = value` pairs, blank lines,
//! and comments starting with `#` or `;`. Keys and values are trimmed;
//! section and key order is preserved.

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct IniSection {
    pub name: String,
    pub line: usize,
    pub entries: Vec<(String, String, usize)>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct IniDocument {
    pub sections: Vec<IniSection>,
}

impl IniDocument {
    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let mut doc = IniDocument::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                    file: file.to_string(),
                    line: line_no,
                    message: "unterminated section header".to_string(),
                })?;
                doc.sections.push(IniSection {
                    name: name.trim().to_string(),
                    line: line_no,
                    entries: Vec::new(),
                });
            } else if let Some((key, value)) = line.split_once('=') {
                let section = doc.sections.last_mut().ok_or_else(|| Error::Parse {
                    file: file.to_string(),
                    line: line_no,
                    message: "key/value pair before any [section]".to_string(),
                })?;
                section
                    .entries
                    .push((key.trim().to_string(), value.trim().to_string(), line_no));
            } else {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: line_no,
                    message: format!("expected `key = value` or `[section]`, got `{line}`"),
                });
            }
        }
        Ok(doc)
    }

    pub fn section(&self, name: &str) -> Option<&IniSection> {
        self.sections.iter().find(|s| s.name == name)
    }
}

impl IniSection {
    pub fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }
}

pub(crate) fn parse_f64(value: &str, file: &str, line: usize) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Parse {
        file: file.to_string(),
        line,
        message: format!("not a number: `{value}`"),
    })
}

pub(crate) fn parse_u64(value: &str, file: &str, line: usize) -> Result<u64> {
    value.parse::<u64>().map_err(|_| Error::Parse {
        file: file.to_string(),
        line,
        message: format!("not an unsigned integer: `{value}`"),
    })
}
