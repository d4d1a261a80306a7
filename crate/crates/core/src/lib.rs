//! Suzuki groups Sz(2^{2m+1}) and small Ree groups ²G₂(3^{2m+1}) as exact
//! matrix groups over finite fields, their Bruhat decomposition, and the
//! factorization of every element into four unitriangular Sylow factors
//! `U · U⁻ · U · U⁻`.

pub mod error;
pub mod field;
pub mod g2;
pub mod group;
pub mod matrix;
mod poly;
pub mod ree;
pub mod suzuki;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec, SquareClass};
pub use group::{BruhatForm, SylowFactorization, TwistedGroup, Unipotent};
pub use matrix::Matrix;
pub use ree::{Ree, ReeParams};
pub use suzuki::{Suzuki, UPlusParams};
