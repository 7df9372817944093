//! Adiabatic accessibility, entropy construction and non-equilibrium
//! entropy bounds.
//!
//! The numeric core is generic over the scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to one of the two.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod axioms;
pub mod construction;
pub mod error;
pub mod noneq;
pub mod numeric;
pub mod random;
pub mod relation;
pub mod report;
pub mod scalar;
pub mod state;
pub mod toy;

pub use axioms::{check_axioms, Axiom, AxiomCheckConfig, AxiomEntry, AxiomReport, Violation};
pub use construction::{
    affine_uniqueness_check, availability, entropy_by_path_integration, planck_absolute_temperature, EntropyEvaluator,
    EquilibriumEos, IdealGas, ReferencePair,
};
pub use error::{Error, Result};
pub use noneq::{
    entropy_band, gb_checks, gb_entropy, max_work_bounds, s_minus, s_plus, verify_prop1, verify_theorem4,
    EmbeddedModel, EntropyBand, EntropySource, FiniteEmbedded, GridEmbedded, MaxWorkBounds, Prop1Options,
    Theorem4Report,
};
pub use relation::{
    transitive_reflexive_closure, Accessibility, AdditiveEntropyModel, Capabilities, FiniteRelation, Generator,
    GridModel, GridSpec, NodeId, RelationModel,
};
pub use report::{CheckRecord, Report, Status};
pub use scalar::Real;
pub use state::{compose, scale, CompoundState, ScaledState, SpaceId, StatePoint};
pub use toy::{
    carnot_gap_experiment, cattaneo_simulate, toy_extended_entropy, toy_grid_model, toy_precedes, toy_s_minus,
    toy_s_plus, BlockPairState, CarnotCouplingParams, CattaneoParams, ToyModel,
};

pub type StatePoint64 = StatePoint<f64>;
pub type StatePoint32 = StatePoint<f32>;
pub type CompoundState64 = CompoundState<f64>;
pub type CompoundState32 = CompoundState<f32>;
pub type BlockPair64 = BlockPairState<f64>;
pub type BlockPair32 = BlockPairState<f32>;
pub type FiniteRelation64 = FiniteRelation<f64>;
pub type FiniteRelation32 = FiniteRelation<f32>;
pub type GridModel64 = GridModel<f64>;
pub type GridModel32 = GridModel<f32>;
pub type ToyModel64 = ToyModel<f64>;
pub type ToyModel32 = ToyModel<f32>;
