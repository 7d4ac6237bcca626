//! Feed-forward DAGs of fuzzy gates.
//!
//! A netlist is an ordered list of named inputs followed by a topologically
//! ordered list of gates; node ids are dense, inputs first. Gates are `Min`,
//! `Max`, `Neg` and `Const`; every operand id precedes the gate that uses it,
//! so evaluation is a single left-to-right pass.

mod builders;
mod eval;
mod json;

pub use builders::{bitonic_network, comparator_depth, implication, lukasiewicz_implies, median_network};
pub use eval::{Bindings, NetlistInstance};

use thiserror::Error;

use crate::gate::GateError;

pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum NetlistError {
    #[error("duplicate input name `{0}`")]
    DuplicateInput(String),
    #[error("gate {gate_id}: id not dense, expected {expected}")]
    NonDenseId { gate_id: NodeId, expected: NodeId },
    #[error("gate {gate_id}: operand {operand} does not precede the gate")]
    OperandOutOfOrder { gate_id: NodeId, operand: NodeId },
    #[error("gate {gate_id}: const value {value} outside [0, 1]")]
    ConstOutOfRange { gate_id: NodeId, value: f64 },
    #[error("gate {gate_id}: {reason}")]
    BadGate { gate_id: NodeId, reason: String },
    #[error("output id {0} does not exist")]
    UnknownOutput(NodeId),
    #[error("input `{0}` is not bound")]
    UnboundInput(String),
    #[error("input `{name}` = {value} is outside [0, 1]")]
    InputOutOfRange { name: String, value: f64 },
    #[error("invalid network size: {0}")]
    InvalidSize(String),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("netlist JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// One fuzzy gate. Operand ids must precede the gate's own id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    Min(NodeId, NodeId),
    Max(NodeId, NodeId),
    Neg(NodeId),
    Const(f64),
}

impl GateOp {
    fn operands(&self) -> [Option<NodeId>; 2] {
        match *self {
            GateOp::Min(a, b) | GateOp::Max(a, b) => [Some(a), Some(b)],
            GateOp::Neg(a) => [Some(a), None],
            GateOp::Const(_) => [None, None],
        }
    }

    pub fn is_analog(&self) -> bool {
        matches!(self, GateOp::Min(..) | GateOp::Max(..))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub id: NodeId,
    pub op: GateOp,
}

/// An immutable feed-forward fuzzy circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub gates: Vec<Gate>,
    pub outputs: Vec<NodeId>,
}

impl Netlist {
    pub fn node_count(&self) -> usize {
        self.inputs.len() + self.gates.len()
    }

    /// Checks all structural invariants, reporting the first violation.
    pub fn validate(&self) -> Result<(), NetlistError> {
        let mut seen = std::collections::HashSet::new();
        for name in &self.inputs {
            if !seen.insert(name) {
                return Err(NetlistError::DuplicateInput(name.clone()));
            }
        }
        for (j, gate) in self.gates.iter().enumerate() {
            let expected = self.inputs.len() + j;
            if gate.id != expected {
                return Err(NetlistError::NonDenseId {
                    gate_id: gate.id,
                    expected,
                });
            }
            for operand in gate.op.operands().into_iter().flatten() {
                if operand >= gate.id {
                    return Err(NetlistError::OperandOutOfOrder {
                        gate_id: gate.id,
                        operand,
                    });
                }
            }
            if let GateOp::Const(c) = gate.op {
                if !(0.0..=1.0).contains(&c) {
                    return Err(NetlistError::ConstOutOfRange {
                        gate_id: gate.id,
                        value: c,
                    });
                }
            }
        }
        for &out in &self.outputs {
            if out >= self.node_count() {
                return Err(NetlistError::UnknownOutput(out));
            }
        }
        Ok(())
    }
}

/// Incremental netlist construction. Ids handed out by the builder are always
/// valid operands for later gates, so the built netlist satisfies the
/// feed-forward invariants by construction.
#[derive(Debug, Default)]
pub struct NetlistBuilder {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    outputs: Vec<NodeId>,
}

impl NetlistBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a named input. Panics on a duplicate name or if gates were
    /// already added (inputs occupy the leading ids).
    pub fn input(&mut self, name: &str) -> NodeId {
        assert!(self.gates.is_empty(), "inputs must be added before gates");
        assert!(
            !self.inputs.iter().any(|n| n == name),
            "duplicate input name `{name}`"
        );
        self.inputs.push(name.to_string());
        self.inputs.len() - 1
    }

    fn push(&mut self, op: GateOp) -> NodeId {
        let id = self.inputs.len() + self.gates.len();
        for operand in op.operands().into_iter().flatten() {
            assert!(operand < id, "operand {operand} does not precede gate {id}");
        }
        self.gates.push(Gate { id, op });
        id
    }

    pub fn min(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(GateOp::Min(a, b))
    }

    pub fn max(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(GateOp::Max(a, b))
    }

    pub fn neg(&mut self, a: NodeId) -> NodeId {
        self.push(GateOp::Neg(a))
    }

    /// Panics if `c` is outside [0, 1].
    pub fn constant(&mut self, c: f64) -> NodeId {
        assert!((0.0..=1.0).contains(&c), "const {c} outside [0, 1]");
        self.push(GateOp::Const(c))
    }

    /// One comparator: a max and a min gate sharing the operands.
    /// Returns `(hi, lo)`.
    pub fn comparator(&mut self, a: NodeId, b: NodeId) -> (NodeId, NodeId) {
        (self.max(a, b), self.min(a, b))
    }

    pub fn output(&mut self, id: NodeId) {
        assert!(
            id < self.inputs.len() + self.gates.len(),
            "output id {id} does not exist"
        );
        self.outputs.push(id);
    }

    pub fn build(self) -> Netlist {
        let net = Netlist {
            inputs: self.inputs,
            gates: self.gates,
            outputs: self.outputs,
        };
        debug_assert!(net.validate().is_ok());
        net
    }
}
