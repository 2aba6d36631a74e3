//! Plain-text configuration, query and transcript files.
//!
//! A configuration file has `[kb]`, `[ak]` and `[sec]` sections with one
//! formula per line. Lines starting with `#` and blank lines are ignored.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::logic::LFormula;
use crate::privacy::{PrivacyConfiguration, Transcript, ValidationReport};
use crate::syntax::{parse_l, parse_m, ParseError};

/// A parsed configuration with its validation outcome. Invalid
/// configurations are still returned so they can be inspected.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub config: PrivacyConfiguration,
    pub report: ValidationReport,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Kb,
    Ak,
    Sec,
}

pub fn load_config(path: impl AsRef<Path>) -> Result<LoadedConfig, Error> {
    let path = path.as_ref();
    let text = read(path)?;
    let config = parse_config(&text, path)?;
    let report = config.validate();
    Ok(LoadedConfig { config, report })
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn line_error(path: &Path, line: usize, err: ParseError) -> Error {
    Error::Config {
        path: path.to_path_buf(),
        line,
        message: format!("column {}: expected {}", err.column, err.expected),
    }
}

/// `origin` is only used in error messages.
pub fn parse_config(text: &str, origin: &Path) -> Result<PrivacyConfiguration, Error> {
    let mut config = PrivacyConfiguration::default();
    let mut section = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "[kb]" => section = Some(Section::Kb),
            "[ak]" => section = Some(Section::Ak),
            "[sec]" => section = Some(Section::Sec),
            _ if line.starts_with('[') => {
                return Err(Error::Config {
                    path: origin.to_path_buf(),
                    line: line_no,
                    message: format!("unknown section `{line}`; expected [kb], [ak] or [sec]"),
                })
            }
            _ => match section {
                None => {
                    return Err(Error::Config {
                        path: origin.to_path_buf(),
                        line: line_no,
                        message: "formula outside of a section".to_string(),
                    })
                }
                Some(Section::Kb) => {
                    let f = parse_l(line).map_err(|e| line_error(origin, line_no, e))?;
                    config.kb.insert(f);
                }
                Some(Section::Ak) => {
                    let f = parse_m(line).map_err(|e| line_error(origin, line_no, e))?;
                    config.ak.insert(f);
                }
                Some(Section::Sec) => {
                    let f = parse_l(line).map_err(|e| line_error(origin, line_no, e))?;
                    config.sec.insert(f);
                }
            },
        }
    }
    Ok(config)
}

pub fn config_to_text(config: &PrivacyConfiguration) -> String {
    let mut out = String::from("[kb]\n");
    for f in &config.kb {
        out.push_str(&format!("{f}\n"));
    }
    out.push_str("[ak]\n");
    for f in &config.ak {
        out.push_str(&format!("{f}\n"));
    }
    out.push_str("[sec]\n");
    for f in &config.sec {
        out.push_str(&format!("{f}\n"));
    }
    out
}

/// One query per line; blank lines and `#` comments are skipped.
pub fn parse_queries(text: &str, origin: &Path) -> Result<Vec<LFormula>, Error> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| parse_l(l).map_err(|e| line_error(origin, n, e)))
        .collect()
}

pub fn load_queries(path: impl AsRef<Path>) -> Result<Vec<LFormula>, Error> {
    let path = path.as_ref();
    parse_queries(&read(path)?, path)
}

/// Queries given on the command line, separated by `;`.
pub fn parse_inline_queries(text: &str) -> Result<Vec<LFormula>, Error> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_l(s).map_err(Error::from))
        .collect()
}

/// Tab-separated `query<TAB>answer` lines.
pub fn transcript_to_text(tr: &Transcript) -> String {
    tr.iter().map(|(q, a)| format!("{q}\t{a}\n")).collect()
}

pub fn write_transcript(path: impl AsRef<Path>, tr: &Transcript) -> Result<(), Error> {
    let path: PathBuf = path.as_ref().to_path_buf();
    fs::write(&path, transcript_to_text(tr)).map_err(|source| Error::Io { path, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::MFormula;

    const SECOND: &str = "\
# atomic knowledge base
[kb]
a
b
[ak]
box(c -> a) -> box(~c) | box(a)
box(~c -> b) -> box(c) | box(b)
[sec]
a
b
";

    #[test]
    fn parses_sections() {
        let c = parse_config(SECOND, Path::new("x")).unwrap();
        assert_eq!(c.kb.len(), 2);
        assert_eq!(c.ak.len(), 2);
        assert_eq!(c.sec.len(), 2);
        assert!(c.validate().is_valid());
        assert!(c.ak.contains(
            &MFormula::Box(LFormula::atom("c").not().implies(LFormula::atom("b")))
                .implies(MFormula::Box(LFormula::atom("c")).or(MFormula::Box(LFormula::atom("b"))))
        ));
    }

    #[test]
    fn round_trips_through_text() {
        let c = parse_config(SECOND, Path::new("x")).unwrap();
        assert_eq!(
            parse_config(&config_to_text(&c), Path::new("y")).unwrap(),
            c
        );
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_config("[kb]\na\na &\n", Path::new("f.cfg")).unwrap_err();
        assert!(matches!(err, Error::Config { line: 3, .. }), "{err}");
        let err = parse_config("a\n", Path::new("f.cfg")).unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
        let err = parse_config("[kbs]\n", Path::new("f.cfg")).unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
        let err = parse_config("[kb]\nbox(a)\n", Path::new("f.cfg")).unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }));
    }

    #[test]
    fn inline_queries() {
        let qs = parse_inline_queries("c -> a; ~c -> b ;c").unwrap();
        assert_eq!(qs.len(), 3);
        assert!(parse_inline_queries("a; &").is_err());
    }
}
