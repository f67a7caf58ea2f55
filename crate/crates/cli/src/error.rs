use std::fmt;

/// Failure of a run; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub struct UsageError {
    pub flag: String,
    pub message: String,
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.flag, self.message)
    }
}

impl UsageError {
    pub fn new(flag: &str, message: impl Into<String>) -> Self {
        UsageError { flag: flag.to_string(), message: message.into() }
    }

    /// Error at a byte position of a flag value; names the token found there.
    pub fn at(flag: &str, src: &str, position: usize, message: impl fmt::Display) -> Self {
        let token = token_at(src, position);
        let near = if token.is_empty() { "end of input".to_string() } else { format!("`{token}`") };
        UsageError::new(flag, format!("{message} (near {near} at position {position} of \"{src}\")"))
    }
}

/// Largest run of identifier-like characters starting at `position`, or the single symbol there.
pub fn token_at(src: &str, position: usize) -> String {
    let tail: Vec<char> = src.chars().skip(position).collect();
    let Some(&first) = tail.first() else { return String::new() };
    let word = |c: &char| c.is_alphanumeric() || *c == '_' || *c == '.' || *c == '/';
    if word(&first) {
        tail.iter().take_while(|c| word(c)).collect()
    } else {
        first.to_string()
    }
}

pub enum Outcome {
    Pass,
    Fail,
}

pub type CmdResult = Result<(serde_json::Value, Outcome), UsageError>;
