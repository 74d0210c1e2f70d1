//! Exact-arithmetic toolkit for the Suzuki and small Ree groups, the
//! characteristic-2 isogenies between types B_n and C_n, and Tits mixed groups.

pub mod bc_isogeny;
pub mod error;
pub mod group_lab;
pub mod linalg;
pub mod mixed;
pub mod ree_g2;
pub mod report;
pub mod rings;
pub mod suzuki_c2;
pub mod twisted;

pub use error::{Error, Result};
pub use linalg::{Mat, SubsetIndex};
pub use rings::{Ring, RingElem, TitsEndo};
