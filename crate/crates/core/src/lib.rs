//! Exact computations around the `Z/3` cubic fourfold `M` and the blow-up
//! `Y = Bl_{E0×E1}(P² × P²)`.
//!
//! * [`chars`], [`cohomology`]: character-graded sheaf cohomology.
//! * [`pushforward`]: divisor classes of `Ψ(O_M(i) ⊗ χ_j)`.
//! * [`sod`]: certified rewriting of semiorthogonal decompositions.
//! * [`poly`], [`charts`]: blow-up charts, quotient equations, smoothness checks.

pub mod chars;
pub mod charts;
pub mod cohomology;
pub mod poly;
pub mod pushforward;
pub mod sod;

pub use chars::{CharError, CharMultiset, Character};
pub use charts::{AffineChart, CubicPair};
pub use cohomology::{GradedCharMultiset, HypersurfaceSpec, WeightedProjSpace};
pub use poly::Poly;
pub use pushforward::{Divisor3, DivisorTable, EqLineBundle};
pub use sod::{Certificate, ExtProfile, Sod, SodTerm};
