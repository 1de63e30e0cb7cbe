use fockhall_core::fock::FockError;
use fockhall_core::hall::HallError;
use fockhall_core::quiver::QuiverError;
use fockhall_core::ring::RingError;
use fockhall_core::wedge::WedgeError;

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: EXIT_INTERNAL, message: message.into() }
    }
}

fn ring_code(e: &RingError) -> u8 {
    match e {
        RingError::Inexact | RingError::Interpolation | RingError::DivisionByZero => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn quiver_code(e: &QuiverError) -> u8 {
    match e {
        QuiverError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn hall_code(e: &HallError) -> u8 {
    match e {
        HallError::Internal(_) | HallError::NotPolynomial(_) => EXIT_INTERNAL,
        HallError::Quiver(q) => quiver_code(q),
        HallError::Ring(r) => ring_code(r),
        _ => EXIT_USAGE,
    }
}

fn wedge_code(e: &WedgeError) -> u8 {
    match e {
        WedgeError::Internal(_) => EXIT_INTERNAL,
        WedgeError::Quiver(q) => quiver_code(q),
        WedgeError::Ring(r) => ring_code(r),
        _ => EXIT_USAGE,
    }
}

fn fock_code(e: &FockError) -> u8 {
    match e {
        FockError::Internal(_) => EXIT_INTERNAL,
        FockError::Wedge(w) => wedge_code(w),
        FockError::Hall(h) => hall_code(h),
        FockError::Quiver(q) => quiver_code(q),
        FockError::Ring(r) => ring_code(r),
        FockError::InvalidGenerator(_) => EXIT_USAGE,
    }
}

macro_rules! from_core {
    ($ty:ty, $code:ident) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                Self { code: $code(&e), message: e.to_string() }
            }
        }
    };
}

from_core!(RingError, ring_code);
from_core!(QuiverError, quiver_code);
from_core!(HallError, hall_code);
from_core!(WedgeError, wedge_code);
from_core!(FockError, fock_code);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("malformed JSON: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(FockError::Internal("bar".into())).code, EXIT_INTERNAL);
        assert_eq!(CliError::from(FockError::Hall(HallError::Internal("x".into()))).code, EXIT_INTERNAL);
        assert_eq!(CliError::from(FockError::Wedge(WedgeError::InvalidN(1))).code, EXIT_USAGE);
        assert_eq!(CliError::from(HallError::Parse("x".into())).code, EXIT_USAGE);
        assert_eq!(CliError::from(RingError::Inexact).code, EXIT_INTERNAL);
        assert_eq!(CliError::from(QuiverError::BadCycle).message, "n must be ≥ 2");
    }
}
