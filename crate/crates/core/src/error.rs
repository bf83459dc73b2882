use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A row-level problem found while validating an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIssue {
    /// 1-based line number in the source file (header is line 1).
    pub line: u64,
    pub message: String,
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// The file failed validation and was rejected as a whole.
    #[error("{path}: {} invalid row(s)\n{}", issues.len(), format_issues(issues))]
    Parse { path: String, issues: Vec<RowIssue> },

    /// Arguments or data handed to an operation are inconsistent.
    #[error("{0}")]
    InvalidInput(String),

    /// A numerical routine produced a non-finite value or failed to converge.
    #[error("{0}")]
    Numeric(String),

    /// Vocabulary lookup failed; `suggestions` are the closest known terms.
    #[error("unknown term `{term}`{}", format_suggestions(suggestions))]
    UnknownTerm {
        term: String,
        suggestions: Vec<String>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn parse(path: impl Into<String>, issues: Vec<RowIssue>) -> Self {
        Error::Parse {
            path: path.into(),
            issues,
        }
    }
}

fn format_issues(issues: &[RowIssue]) -> String {
    const SHOWN: usize = 10;
    let mut out: Vec<String> = issues.iter().take(SHOWN).map(|i| format!("  {i}")).collect();
    if issues.len() > SHOWN {
        out.push(format!("  ... and {} more", issues.len() - SHOWN));
    }
    out.join("\n")
}

fn format_suggestions(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; closest matches: {}", suggestions.join(", "))
    }
}
