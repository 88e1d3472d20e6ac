//! Orbit classification of points, lines, solids and hyperplanes of PG(5, q)
//! under the group of the quadric Veronesean, and the linear systems of
//! conics they correspond to.

pub mod census;
pub mod conics;
pub mod cubic;
pub mod error;
pub mod formula;
pub mod geometry;
pub mod gf;
pub mod groupaction;
pub mod lineclass;
pub mod pglinalg;
pub mod systems;
pub mod tabledata;
pub mod veronese;

pub use conics::{ConicType, TernaryForm};
pub use error::{Error, Result};
pub use geometry::Geometry;
pub use gf::{Elem, FieldCtx, Parity, RootProfile};
pub use lineclass::{LineOrbitLabel, RepParams};
pub use pglinalg::{Matrix, ProjPoint, Subspace};
pub use veronese::{HyperplaneOrbitLabel, PointOrbitLabel, SymPoint};
