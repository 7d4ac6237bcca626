//! The three evaluation semantics: exact min/max, μ-degraded closed forms,
//! and per-gate transient simulation with persistent device state.

use std::collections::{BTreeMap, HashMap};

use crate::device::{DeviceParams, MEfficiency};
use crate::gate::{steady_state_max, steady_state_min, GateKind, GateState};

use super::{GateOp, Netlist, NetlistError, NodeId};

/// Input bindings by name. Values must lie in [0, 1].
pub type Bindings = HashMap<String, f64>;

impl Netlist {
    fn bind_inputs(&self, values: &Bindings) -> Result<Vec<f64>, NetlistError> {
        let mut node = vec![f64::NAN; self.node_count()];
        for (id, name) in self.inputs.iter().enumerate() {
            let v = *values
                .get(name)
                .ok_or_else(|| NetlistError::UnboundInput(name.clone()))?;
            if !(0.0..=1.0).contains(&v) {
                return Err(NetlistError::InputOutOfRange {
                    name: name.clone(),
                    value: v,
                });
            }
            node[id] = v;
        }
        Ok(node)
    }

    fn evaluate_closed(
        &self,
        values: &Bindings,
        mu: Option<MEfficiency>,
    ) -> Result<Vec<f64>, NetlistError> {
        let mut node = self.bind_inputs(values)?;
        for gate in &self.gates {
            node[gate.id] = match gate.op {
                GateOp::Min(a, b) => match mu {
                    None => node[a].min(node[b]),
                    Some(mu) => steady_state_min(node[a], node[b], mu),
                },
                GateOp::Max(a, b) => match mu {
                    None => node[a].max(node[b]),
                    Some(mu) => steady_state_max(node[a], node[b], mu),
                },
                GateOp::Neg(a) => 1.0 - node[a],
                GateOp::Const(c) => c,
            };
        }
        Ok(self.outputs.iter().map(|&id| node[id]).collect())
    }

    /// Exact Weyl semantics: and = min, or = max, not a = 1 - a.
    pub fn evaluate_ideal(&self, values: &Bindings) -> Result<Vec<f64>, NetlistError> {
        self.evaluate_closed(values, None)
    }

    /// Min/Max gates use the μ-degraded steady-state forms; Neg and Const
    /// stay exact (they live on the CMOS side).
    pub fn evaluate_mu(
        &self,
        values: &Bindings,
        mu: MEfficiency,
    ) -> Result<Vec<f64>, NetlistError> {
        self.evaluate_closed(values, Some(mu))
    }
}

/// A netlist plus one persistent [`GateState`] per Min/Max gate, so repeated
/// transient evaluations continue from wherever the devices last settled.
#[derive(Debug, Clone)]
pub struct NetlistInstance {
    netlist: Netlist,
    gate_states: BTreeMap<NodeId, GateState>,
}

impl NetlistInstance {
    pub fn new(
        netlist: Netlist,
        params: DeviceParams,
        r_load: f64,
    ) -> Result<Self, NetlistError> {
        let mut gate_states = BTreeMap::new();
        for gate in &netlist.gates {
            let kind = match gate.op {
                GateOp::Min(..) => GateKind::Min,
                GateOp::Max(..) => GateKind::Max,
                _ => continue,
            };
            gate_states.insert(gate.id, GateState::new(kind, params, r_load)?);
        }
        Ok(NetlistInstance {
            netlist,
            gate_states,
        })
    }

    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn gate_state(&self, id: NodeId) -> Option<&GateState> {
        self.gate_states.get(&id)
    }

    /// Transient evaluation in topological order: each Min/Max gate runs its
    /// own transient against the already-settled upstream values, starting
    /// from its persistent device state. `dt = 0` picks a per-gate step from
    /// the gate's initial operating point; `t_max = 0` reads the dividers out
    /// without moving any device.
    pub fn evaluate_transient(
        &mut self,
        values: &Bindings,
        dt: f64,
        t_max: f64,
    ) -> Result<Vec<f64>, NetlistError> {
        let mut node = self.netlist.bind_inputs(values)?;
        for gate in &self.netlist.gates {
            node[gate.id] = match gate.op {
                GateOp::Min(a, b) | GateOp::Max(a, b) => {
                    let (x, y) = (node[a], node[b]);
                    let state = self
                        .gate_states
                        .get_mut(&gate.id)
                        .expect("state exists for every analog gate");
                    if t_max == 0.0 {
                        state.readout(x, y)?
                    } else {
                        let dt_gate = if dt > 0.0 { dt } else { state.suggest_dt(x, y)? };
                        state.simulate(x, y, dt_gate, t_max)?.final_z()
                    }
                }
                GateOp::Neg(a) => 1.0 - node[a],
                GateOp::Const(c) => c,
            };
        }
        Ok(self.netlist.outputs.iter().map(|&id| node[id]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::NetlistBuilder;

    fn bind(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|&(n, v)| (n.to_string(), v)).collect()
    }

    fn min_x_not_y() -> Netlist {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let n = b.neg(y);
        let m = b.min(x, n);
        b.output(m);
        b.build()
    }

    #[test]
    fn ideal_semantics_examples() {
        let net = min_x_not_y();
        let out = net.evaluate_ideal(&bind(&[("x", 0.7), ("y", 0.2)])).unwrap();
        assert_eq!(out, vec![0.7]);

        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let n1 = b.neg(x);
        let n2 = b.neg(n1);
        b.output(n2);
        let out = b.build().evaluate_ideal(&bind(&[("x", 0.42)])).unwrap();
        assert!((out[0] - 0.42).abs() < 1e-15);

        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let m = b.max(x, y);
        b.output(m);
        let out = b.build().evaluate_ideal(&bind(&[("x", 0.5), ("y", 0.5)])).unwrap();
        assert_eq!(out, vec![0.5]);
    }

    #[test]
    fn unbound_and_out_of_range_inputs_error() {
        let net = min_x_not_y();
        assert!(matches!(
            net.evaluate_ideal(&bind(&[("x", 0.7)])),
            Err(NetlistError::UnboundInput(name)) if name == "y"
        ));
        assert!(matches!(
            net.evaluate_ideal(&bind(&[("x", 0.7), ("y", 1.5)])),
            Err(NetlistError::InputOutOfRange { .. })
        ));
    }

    #[test]
    fn mu_semantics_single_max_gate() {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let m = b.max(x, y);
        b.output(m);
        let net = b.build();
        let out = net
            .evaluate_mu(&bind(&[("x", 0.8), ("y", 0.3)]), MEfficiency::new(10.0))
            .unwrap();
        assert!((out[0] - 0.7545454545454545).abs() < 1e-15);
    }

    #[test]
    fn comparator_conserves_sum_under_mu() {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let (hi, lo) = b.comparator(x, y);
        b.output(hi);
        b.output(lo);
        let net = b.build();
        for mu in [1.5, 10.0, 1e4] {
            let out = net
                .evaluate_mu(&bind(&[("x", 0.62), ("y", 0.17)]), MEfficiency::new(mu))
                .unwrap();
            assert!((out[0] + out[1] - 0.79).abs() < 1e-12);
            assert!(out[0] >= out[1]);
        }
    }

    #[test]
    fn transient_readout_with_zero_t_max() {
        let net = min_x_not_y();
        let mut inst = NetlistInstance::new(net, DeviceParams::default(), 1e7).unwrap();
        let out = inst
            .evaluate_transient(&bind(&[("x", 0.9), ("y", 0.4)]), 0.0, 0.0)
            .unwrap();
        // fresh devices sit at the midpoint, so the divider returns the mean
        assert!((out[0] - (0.9 + 0.6) / 2.0).abs() < 1e-3);
    }

    #[test]
    fn transient_settles_to_mu_semantics() {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let (hi, lo) = b.comparator(x, y);
        let m = b.max(hi, lo);
        b.output(m);
        b.output(lo);
        let net = b.build();
        let params = DeviceParams::default();
        let values = bind(&[("x", 0.8), ("y", 0.3)]);
        let expected = net.evaluate_mu(&values, params.m_efficiency()).unwrap();
        let mut inst = NetlistInstance::new(net, params, 1e7).unwrap();
        let out = inst.evaluate_transient(&values, 0.0, 20_000.0).unwrap();
        for (got, want) in out.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-3, "got {got}, want {want}");
        }
    }

    #[test]
    fn repeated_transient_calls_converge_monotonically() {
        let mut b = NetlistBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let (hi, lo) = b.comparator(x, y);
        b.output(hi);
        b.output(lo);
        let net = b.build();
        let params = DeviceParams::default();
        let values = bind(&[("x", 0.8), ("y", 0.3)]);
        let target = net.evaluate_mu(&values, params.m_efficiency()).unwrap();
        let mut inst = NetlistInstance::new(net, params, 1e7).unwrap();
        let dist = |out: &[f64]| -> f64 {
            out.iter()
                .zip(&target)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let mut last = f64::INFINITY;
        for _ in 0..60 {
            let out = inst.evaluate_transient(&values, 0.0, 0.02).unwrap();
            let d = dist(&out);
            assert!(d <= last + 1e-9, "distance grew: {d} > {last}");
            last = d;
        }
        assert!(last < 1e-3, "did not converge, distance {last}");
    }
}
