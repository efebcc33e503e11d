use serde::Serialize;
use spinor_pair::Error;

/// Machine-readable error codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    SeparableGamma,
    MaxEntangled,
    PoleSingularity,
    Parse,
    Degenerate,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::SeparableGamma => "SEPARABLE_GAMMA",
            ErrorCode::MaxEntangled => "MAX_ENTANGLED",
            ErrorCode::PoleSingularity => "POLE_SINGULARITY",
            ErrorCode::Parse => "PARSE",
            ErrorCode::Degenerate => "DEGENERATE",
        }
    }
}

/// An input error. Always exits with status 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{}: {message}", .code.as_str())]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new(ErrorCode::Parse, message)
    }

    /// `{"error": {"code": ..., "message": ...}}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            code: ErrorCode,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        let mut s = serde_json::to_string(&Wrapper {
            error: Body {
                code: self.code,
                message: &self.message,
            },
        })
        .expect("error serializes");
        s.push('\n');
        s
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SeparableGamma { .. } => ErrorCode::SeparableGamma,
            Error::MaximalEntanglement { .. } => ErrorCode::MaxEntangled,
            Error::PoleSingularity { .. } => ErrorCode::PoleSingularity,
            Error::DegenerateState(_) => ErrorCode::Degenerate,
            _ => ErrorCode::Parse,
        };
        CliError::new(code, e.to_string())
    }
}
