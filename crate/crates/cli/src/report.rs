use std::fmt;

use linkform::Error;
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_FORM: u8 = 3;
pub const EXIT_UNCERTIFIED: u8 = 4;
pub const EXIT_CAP: u8 = 5;
pub const EXIT_DEGREE: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, message)
    }

    pub fn with_detail(mut self, detail: impl fmt::Display) -> Self {
        self.message = format!("{}: {detail}", self.message);
        self
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidFraction(_)
            | Error::GramShape { .. }
            | Error::InvalidOrder(_)
            | Error::InvalidK(_)
            | Error::UnknownSuite(_)
            | Error::GroupMismatch { .. }
            | Error::VertexOutOfRange(_) => EXIT_PARSE,
            Error::IllDefinedForm { .. }
            | Error::NotSkew { .. }
            | Error::NotStrict { .. }
            | Error::Singular => EXIT_FORM,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::UnsupportedDegree(_) => EXIT_DEGREE,
            _ => EXIT_VERIFY,
        };
        Failure::new(code, e.to_string())
    }
}

/// A command result: the JSON document and its text rendering.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub ok: bool,
    pub exit_code: u8,
    pub data: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, data: Value, lines: Vec<String>) -> Self {
        Report {
            command,
            ok: true,
            exit_code: EXIT_OK,
            data,
            lines,
        }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.exit_code = code;
        self.ok = code == EXIT_OK;
        self
    }

    pub fn emit(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("report serializes")
            );
        } else {
            for l in &self.lines {
                println!("{l}");
            }
        }
    }
}

pub fn emit_failure(command: &str, failure: &Failure, json: bool) {
    if json {
        let doc = serde_json::json!({
            "command": command,
            "ok": false,
            "exit_code": failure.code,
            "error": failure.message,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("plain data")
        );
    }
    eprintln!("error: {}", failure.message);
}
