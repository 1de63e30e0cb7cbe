//! Exact Hall algebras of cyclic quivers and the q-deformed Fock space.

pub mod hall;
pub mod quiver;
pub mod ring;
pub mod fock;
pub mod wedge;

pub use ring::{IntPolyQ, LaurentPoly, RatFrac, RingError};
