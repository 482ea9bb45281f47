//! Line-oriented session shared by the REPL, `:load` and script files.

use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use starprod::algebra::Metric;
use starprod::star::StarKind;

use crate::eval::{eval_line, CliError, Format, SessionConfig};

/// What one input line produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Output(String),
    Quit,
    Nothing,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SessionError {
    #[error(transparent)]
    Cli(#[from] CliError),
    #[error("{0}")]
    Command(String),
    #[error("{path}: {source}")]
    Load { path: String, source: Box<SessionError> },
}

impl SessionError {
    /// Process exit code: 2 for usage and parse problems, 3 for evaluation.
    pub fn exit_code(&self) -> i32 {
        match self {
            SessionError::Cli(CliError::Eval(_)) => 3,
            SessionError::Cli(CliError::Parse(_)) | SessionError::Command(_) => 2,
            SessionError::Load { source, .. } => source.exit_code(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Session {
    pub cfg: SessionConfig,
}

impl Session {
    pub fn new(cfg: SessionConfig) -> Self {
        Self { cfg }
    }

    /// Executes one line; `line` is its 1-based number for error positions.
    pub fn execute(&mut self, input: &str, line: usize) -> Result<Outcome, SessionError> {
        let trimmed = input.trim();
        let code = trimmed.split('#').next().unwrap_or("").trim();
        if code.is_empty() {
            return Ok(Outcome::Nothing);
        }
        if let Some(cmd) = code.strip_prefix(':') {
            return self.command(cmd);
        }
        let v = eval_line(code, line, &self.cfg)?;
        Ok(Outcome::Output(v.render(self.cfg.format)))
    }

    fn command(&mut self, cmd: &str) -> Result<Outcome, SessionError> {
        let words: Vec<&str> = cmd.split_whitespace().collect();
        let bad = |m: String| Err(SessionError::Command(m));
        match words.as_slice() {
            ["quit"] | ["q"] => Ok(Outcome::Quit),
            ["set", "metric", m] => match Metric::from_str(m) {
                Ok(metric) => {
                    self.cfg.metric = metric;
                    Ok(Outcome::Nothing)
                }
                Err(_) => bad(format!("unknown metric '{m}' (standard or nonstandard)")),
            },
            ["set", "order", n] => match n.parse::<usize>() {
                Ok(order) => {
                    self.cfg.order = order;
                    Ok(Outcome::Nothing)
                }
                Err(_) => bad(format!("order must be a non-negative integer, got '{n}'")),
            },
            ["set", "product", k] => match StarKind::from_str(k) {
                Ok(kind) => {
                    self.cfg.product = kind;
                    Ok(Outcome::Nothing)
                }
                Err(_) => bad(format!("unknown product '{k}'")),
            },
            ["set", "format", f] => {
                self.cfg.format = match *f {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return bad(format!("unknown format '{f}'")),
                };
                Ok(Outcome::Nothing)
            }
            ["load", path] => self.load(Path::new(path)),
            _ => bad(format!(
                "unknown command ':{cmd}' (try :set metric|order|product|format, :load FILE, :quit)"
            )),
        }
    }

    fn load(&mut self, path: &Path) -> Result<Outcome, SessionError> {
        let text = std::fs::read_to_string(path).map_err(|e| SessionError::Command(format!("{}: {e}", path.display())))?;
        let mut out = Vec::new();
        match self.run_script(&text, &mut out) {
            Ok(_) => {}
            Err(e) => {
                return Err(SessionError::Load { path: path.display().to_string(), source: Box::new(e) });
            }
        }
        let s = String::from_utf8(out).expect("utf-8 output");
        Ok(if s.is_empty() { Outcome::Nothing } else { Outcome::Output(s.trim_end().to_string()) })
    }

    /// Runs every line of a script, writing results; stops at the first
    /// error or `:quit`. Returns true when the script asked to quit.
    pub fn run_script<W: Write>(&mut self, text: &str, out: &mut W) -> Result<bool, SessionError> {
        for (k, line) in text.lines().enumerate() {
            match self.execute(line, k + 1)? {
                Outcome::Output(s) => writeln!(out, "{s}").map_err(|e| SessionError::Command(e.to_string()))?,
                Outcome::Quit => return Ok(true),
                Outcome::Nothing => {}
            }
        }
        Ok(false)
    }

    /// Interactive loop; errors are reported and the loop continues.
    pub fn repl<R: BufRead, W: Write, E: Write>(&mut self, input: R, out: &mut W, err: &mut E, prompt: bool) -> std::io::Result<()> {
        let mut lines = input.lines();
        let mut n = 0;
        loop {
            if prompt {
                write!(out, "starprod> ")?;
                out.flush()?;
            }
            let Some(line) = lines.next() else { break };
            let line = line?;
            n += 1;
            match self.execute(&line, n) {
                Ok(Outcome::Output(s)) => writeln!(out, "{s}")?,
                Ok(Outcome::Quit) => break,
                Ok(Outcome::Nothing) => {}
                Err(e) => writeln!(err, "{e}")?,
            }
        }
        Ok(())
    }
}
