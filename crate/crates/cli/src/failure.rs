use wiener_core::Error;

pub const CLAIM_FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const MALFORMED: u8 = 3;
pub const RESOURCE: u8 = 4;

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
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph6(_)
            | Error::Graph6Line { .. }
            | Error::Io(_)
            | Error::EmptyStream
            | Error::Disconnected => MALFORMED,
            Error::ResourceLimit(_) => RESOURCE,
            _ => USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::new(0, "");
        }
        Failure::new(MALFORMED, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(USAGE, e.to_string())
    }
}
