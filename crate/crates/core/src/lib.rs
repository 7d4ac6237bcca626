//! Fuzzy min/max logic on antipodally configured memristor pairs.
//!
//! The crate models charge- and voltage-driven memristor devices, simulates
//! the transient of one antipodal min/max gate against its resistive divider,
//! evaluates feed-forward fuzzy netlists under three semantics (exact,
//! m-efficiency-degraded, fully transient), generates bitonic sorting and
//! median networks, and compiles a small fuzzy expression language down to
//! netlists whose negations sit only on inputs.
//!
//! Entry points:
//!
//! * [`device`] — device models, condition-(*) switching checks.
//! * [`gate`] — divider algebra, one-gate transients, closed-form
//!   steady states and the gate error bound.
//! * [`netlist`] — the circuit DAG, its JSON format, evaluation semantics,
//!   and the bitonic/median/implication builders.
//! * [`expr`] — the expression language: parser, evaluator, compiler.

pub mod device;
pub mod expr;
pub mod gate;
pub mod netlist;

pub use device::{
    condition_star_horizon, satisfies_condition_star, DeviceError, DeviceModel, DeviceParams,
    DeviceState, MEfficiency, Polarity,
};
pub use expr::{compile, parse, EvalError, FuzzyExpr, ParseError};
pub use gate::{
    divider_currents, divider_output, gate_error_bound, steady_state_max, steady_state_min,
    DividerConfig, GateError, GateKind, GateState, Trace,
};
pub use netlist::{
    bitonic_network, comparator_depth, implication, lukasiewicz_implies, median_network, Bindings,
    Gate, GateOp, Netlist, NetlistBuilder, NetlistError, NetlistInstance, NodeId,
};
