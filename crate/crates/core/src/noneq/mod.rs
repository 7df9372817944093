//! Entropies of non-equilibrium states embedded around an equilibrium
//! subspace: the bracketing pair `S₋ ≤ S₊`, their structural properties,
//! comparability, and maximum-work bounds.

mod band;
mod embedded;
mod prop1;
mod theorem4;
mod work;

pub use band::{entropy_band, s_minus, s_plus, Bound, EntropyBand};
pub use embedded::{EmbeddedModel, EntropySource, FiniteEmbedded, GridEmbedded};
pub use prop1::{verify_prop1, Prop1Options};
pub use theorem4::{verify_theorem4, Condition, Theorem4Report};
pub use work::{gb_checks, gb_entropy, max_work_bounds, MaxWorkBounds};
