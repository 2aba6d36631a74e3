//! Interactive query session over a single configuration and censor.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use crate::censor::{extend, Censor};
use crate::config::write_transcript;
use crate::privacy::{Answer, PrivacyConfiguration, Transcript};
use crate::syntax::{parse_l, Render, Style};
use crate::verifier::check_all;

pub struct Session {
    config: PrivacyConfiguration,
    censor: Box<dyn Censor>,
    transcript: Transcript,
    style: Style,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reply {
    Answer(Answer),
    /// Current content and property verdicts, already rendered.
    Report(String),
    Exported(PathBuf),
    Error(String),
    Help,
    Quit,
    Nothing,
}

const HELP: &str = "\
enter a propositional formula to query it, or one of
  :content        show the current content set and property verdicts
  :transcript     show the queries and answers so far
  :export <path>  write the transcript to a file
  :quit           leave the session";

impl Session {
    pub fn new(config: PrivacyConfiguration, censor: Box<dyn Censor>) -> Self {
        Session {
            config,
            censor,
            transcript: Transcript::new(),
            style: Style::ASCII,
        }
    }

    pub fn with_style(mut self, style: Style) -> Self {
        self.style = style;
        self
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn handle(&mut self, line: &str) -> Reply {
        let line = line.trim();
        if line.is_empty() {
            return Reply::Nothing;
        }
        if let Some(cmd) = line.strip_prefix(':') {
            let mut words = cmd.split_whitespace();
            return match (words.next(), words.next()) {
                (Some("quit" | "q"), None) => Reply::Quit,
                (Some("help"), None) => Reply::Help,
                (Some("content"), None) => Reply::Report(self.content_report()),
                (Some("transcript"), None) => Reply::Report(self.transcript_text()),
                (Some("export"), Some(path)) => {
                    let path = PathBuf::from(path);
                    match write_transcript(&path, &self.transcript) {
                        Ok(()) => Reply::Exported(path),
                        Err(e) => Reply::Error(e.to_string()),
                    }
                }
                _ => Reply::Error(format!("unknown command `{line}`; try :help")),
            };
        }
        match parse_l(line) {
            Ok(q) => {
                self.transcript = extend(
                    self.censor.as_ref(),
                    &self.config,
                    std::mem::take(&mut self.transcript),
                    std::slice::from_ref(&q),
                );
                let answer = *self.transcript.answers().last().expect("just answered");
                Reply::Answer(answer)
            }
            Err(e) => Reply::Error(e.to_string()),
        }
    }

    fn content_report(&self) -> String {
        let content = self
            .transcript
            .content(&self.config.ak, self.transcript.len())
            .expect("full prefix");
        let mut out = format!("content ({} formulas):\n", content.len());
        for f in &content {
            out.push_str(&format!("  {}\n", f.render(self.style)));
        }
        for report in check_all(
            &self.config,
            self.censor.as_ref(),
            self.transcript.queries(),
        ) {
            out.push_str(&format!("{report}\n"));
        }
        out
    }

    fn transcript_text(&self) -> String {
        self.transcript
            .iter()
            .enumerate()
            .map(|(i, (q, a))| format!("{:>3}  {}  {a}\n", i + 1, q.render(self.style)))
            .collect()
    }
}

/// Drives a session from `input` until `:quit` or end of input.
pub fn run_repl(
    session: &mut Session,
    input: impl BufRead,
    mut output: impl Write,
) -> io::Result<()> {
    write!(output, "cqe> ")?;
    output.flush()?;
    for line in input.lines() {
        match session.handle(&line?) {
            Reply::Answer(a) => writeln!(output, "{a}")?,
            Reply::Report(text) => write!(output, "{text}")?,
            Reply::Exported(path) => writeln!(output, "wrote {}", path.display())?,
            Reply::Error(msg) => writeln!(output, "error: {msg}")?,
            Reply::Help => writeln!(output, "{HELP}")?,
            Reply::Quit => return Ok(()),
            Reply::Nothing => {}
        }
        write!(output, "cqe> ")?;
        output.flush()?;
    }
    writeln!(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::censor::TruthfulMin;
    use crate::logic::LFormula;

    fn example() -> Session {
        let l = LFormula::atom;
        Session::new(
            PrivacyConfiguration::new([l("a"), l("c")], [], [l("c")]),
            Box::new(TruthfulMin),
        )
    }

    #[test]
    fn answers_running_example() {
        let mut s = example();
        assert_eq!(s.handle("a"), Reply::Answer(Answer::T));
        assert_eq!(s.handle("b"), Reply::Answer(Answer::U));
        assert_eq!(s.handle("c"), Reply::Answer(Answer::R));
    }

    #[test]
    fn content_lists_formulas() {
        let mut s = example();
        s.handle("a");
        s.handle("b");
        let Reply::Report(text) = s.handle(":content") else {
            panic!("expected a report")
        };
        assert!(text.starts_with("content (2 formulas):"), "{text}");
        assert!(text.contains("box(a)"));
        assert!(text.contains("~box(b)"));
        assert!(text.contains("property=effective verdict=holds"));
    }

    #[test]
    fn malformed_input_does_not_advance() {
        let mut s = example();
        s.handle("a");
        assert!(matches!(s.handle("a & "), Reply::Error(_)));
        assert!(matches!(s.handle(":bogus"), Reply::Error(_)));
        assert_eq!(s.transcript().len(), 1);
    }

    #[test]
    fn stream_driver_stops_on_quit() {
        let mut s = example();
        let mut out = Vec::new();
        run_repl(&mut s, "a\n:quit\nb\n".as_bytes(), &mut out).unwrap();
        assert_eq!(s.transcript().len(), 1);
        assert!(String::from_utf8(out).unwrap().contains('t'));
    }
}
