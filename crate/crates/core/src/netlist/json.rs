//! Netlist file format:
//!
//! ```json
//! {
//!   "inputs": ["x", "y"],
//!   "gates": [
//!     {"id": 2, "kind": "neg", "args": [1]},
//!     {"id": 3, "kind": "min", "args": [0, 2]},
//!     {"id": 4, "kind": "const", "args": [], "value": 0.5}
//!   ],
//!   "outputs": [3]
//! }
//! ```
//!
//! Ids are dense integers with inputs occupying the leading ids. The loader
//! validates every structural invariant and reports the first violation with
//! the offending gate id.

use serde::{Deserialize, Serialize};

use super::{Gate, GateOp, Netlist, NetlistError, NodeId};

#[derive(Serialize, Deserialize)]
struct GateJson {
    id: NodeId,
    kind: String,
    #[serde(default)]
    args: Vec<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct NetlistJson {
    inputs: Vec<String>,
    gates: Vec<GateJson>,
    outputs: Vec<NodeId>,
}

fn gate_to_json(gate: &Gate) -> GateJson {
    let (kind, args, value) = match gate.op {
        GateOp::Min(a, b) => ("min", vec![a, b], None),
        GateOp::Max(a, b) => ("max", vec![a, b], None),
        GateOp::Neg(a) => ("neg", vec![a], None),
        GateOp::Const(c) => ("const", vec![], Some(c)),
    };
    GateJson {
        id: gate.id,
        kind: kind.to_string(),
        args,
        value,
    }
}

fn gate_from_json(g: &GateJson) -> Result<Gate, NetlistError> {
    let arity_err = |expected: usize| NetlistError::BadGate {
        gate_id: g.id,
        reason: format!(
            "kind `{}` takes {} operand(s), got {}",
            g.kind,
            expected,
            g.args.len()
        ),
    };
    let op = match g.kind.as_str() {
        "min" | "max" => {
            if g.args.len() != 2 {
                return Err(arity_err(2));
            }
            if g.kind == "min" {
                GateOp::Min(g.args[0], g.args[1])
            } else {
                GateOp::Max(g.args[0], g.args[1])
            }
        }
        "neg" => {
            if g.args.len() != 1 {
                return Err(arity_err(1));
            }
            GateOp::Neg(g.args[0])
        }
        "const" => {
            if !g.args.is_empty() {
                return Err(arity_err(0));
            }
            let value = g.value.ok_or_else(|| NetlistError::BadGate {
                gate_id: g.id,
                reason: "const gate requires a `value` field".to_string(),
            })?;
            GateOp::Const(value)
        }
        other => {
            return Err(NetlistError::BadGate {
                gate_id: g.id,
                reason: format!("unknown gate kind `{other}`"),
            })
        }
    };
    Ok(Gate { id: g.id, op })
}

impl Netlist {
    pub fn to_json_string(&self) -> String {
        let doc = NetlistJson {
            inputs: self.inputs.clone(),
            gates: self.gates.iter().map(gate_to_json).collect(),
            outputs: self.outputs.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("netlist serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self, NetlistError> {
        let doc: NetlistJson = serde_json::from_str(text)?;
        let gates = doc
            .gates
            .iter()
            .map(gate_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let net = Netlist {
            inputs: doc.inputs,
            gates,
            outputs: doc.outputs,
        };
        net.validate()?;
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::NetlistBuilder;

    #[test]
    fn roundtrip_preserves_structure() {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let n = b.neg(y);
        let c = b.constant(0.25);
        let m = b.min(x, n);
        let o = b.max(m, c);
        b.output(o);
        let net = b.build();
        let text = net.to_json_string();
        let back = Netlist::from_json_str(&text).unwrap();
        assert_eq!(net, back);
    }

    #[test]
    fn loader_rejects_bad_arity_with_gate_id() {
        let text = r#"{"inputs":["x"],"gates":[{"id":1,"kind":"min","args":[0]}],"outputs":[1]}"#;
        match Netlist::from_json_str(text) {
            Err(NetlistError::BadGate { gate_id, .. }) => assert_eq!(gate_id, 1),
            other => panic!("expected BadGate, got {other:?}"),
        }
    }

    #[test]
    fn loader_rejects_unknown_kind() {
        let text = r#"{"inputs":[],"gates":[{"id":0,"kind":"xor","args":[]}],"outputs":[]}"#;
        assert!(matches!(
            Netlist::from_json_str(text),
            Err(NetlistError::BadGate { gate_id: 0, .. })
        ));
    }

    #[test]
    fn loader_rejects_const_out_of_range() {
        let text =
            r#"{"inputs":[],"gates":[{"id":0,"kind":"const","args":[],"value":1.25}],"outputs":[]}"#;
        assert!(matches!(
            Netlist::from_json_str(text),
            Err(NetlistError::ConstOutOfRange { gate_id: 0, .. })
        ));
    }

    #[test]
    fn loader_rejects_forward_reference() {
        let text = r#"{"inputs":["x"],"gates":[{"id":1,"kind":"neg","args":[2]},{"id":2,"kind":"neg","args":[0]}],"outputs":[2]}"#;
        assert!(matches!(
            Netlist::from_json_str(text),
            Err(NetlistError::OperandOutOfOrder { gate_id: 1, operand: 2 })
        ));
    }
}
