use std::fmt;

use frobchi::{AlgebraError, ErrorClass};

/// A structured failure: machine-readable code, class and an optional
/// position in the problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub class: ErrorClass,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl CliError {
    pub fn new(code: &'static str, class: ErrorClass, message: impl Into<String>) -> Self {
        CliError {
            code,
            class,
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn parse(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(code, ErrorClass::Input, message)
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }

    pub fn class_name(&self) -> &'static str {
        match self.class {
            ErrorClass::Input => "input",
            ErrorClass::Incompatible => "incompatible",
            ErrorClass::Capacity => "capacity",
            ErrorClass::Internal => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.class {
            ErrorClass::Input => 2,
            ErrorClass::Incompatible => 3,
            ErrorClass::Capacity => 4,
            ErrorClass::Internal => 1,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::new(e.code(), e.class(), e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]", self.code)?;
        if let (Some(line), Some(column)) = (self.line, self.column) {
            write!(f, " at line {line}, column {column}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for CliError {}
