//! Universal quantum networks over a register plus one auxiliary qubit.
//!
//! A network `Q(U)` is a product of rank-one factors
//! `exp{U_mn |m><n| ⊗ c_dag}`. Because `c_dag² = 0` every factor is exactly
//! `I + U_mn |m><n| ⊗ c_dag`, all factors commute, and the whole product
//! collapses to `I + U ⊗ c_dag`. On `|ψ> ⊗ |0>_A` it leaves the input on the
//! aux-0 branch and writes `U|ψ>` on the aux-1 branch.
//!
//! The auxiliary qubit is the least significant tensor factor.

pub mod auxiliary;
pub mod compose;
pub mod export;
pub mod network;

pub use auxiliary::{AuxiliaryAlgebra, Connector};
pub use compose::{
    aux_block, postselect_aux, product_compose, product_compose_labeled, scalable_product,
    scalable_product_labeled, sum_compose, ComposedNetwork, ScalableNetwork, TraceStep,
    COMPOSE_DIM_CAP,
};
pub use export::{export_network, ExportFormat, NetworkView};
pub use network::{nilpotent_exp, qcpu_of, QcpuFactor, QcpuNetwork};
