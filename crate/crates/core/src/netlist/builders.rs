//! Netlist generators: bitonic sorting networks, medians, and implication
//! from precomputed negations.

use super::{GateOp, Netlist, NetlistBuilder, NetlistError, NodeId};

/// A comparator exchange between positions `i` and `j`, ascending or not.
#[derive(Debug, Clone, Copy)]
struct Exchange {
    i: usize,
    j: usize,
    ascending: bool,
}

/// Largest power of two strictly less than `n` (requires `n >= 2`).
fn greatest_pow2_below(n: usize) -> usize {
    let mut p = 1;
    while p * 2 < n {
        p *= 2;
    }
    p
}

fn emit_merge(lo: usize, n: usize, ascending: bool, out: &mut Vec<Exchange>) {
    if n > 1 {
        let m = greatest_pow2_below(n);
        for i in lo..lo + (n - m) {
            out.push(Exchange {
                i,
                j: i + m,
                ascending,
            });
        }
        emit_merge(lo, m, ascending, out);
        emit_merge(lo + m, n - m, ascending, out);
    }
}

fn emit_sort(lo: usize, n: usize, ascending: bool, out: &mut Vec<Exchange>) {
    if n > 1 {
        let m = n / 2;
        emit_sort(lo, m, !ascending, out);
        emit_sort(lo + m, n - m, ascending, out);
        emit_merge(lo, n, ascending, out);
    }
}

/// Bitonic sorting network over `n` inputs named `x0..x{n-1}`, outputs in
/// ascending order. Works for any `n >= 1` (the power-of-two recursion is
/// restricted to the real wire range, so the netlist is comparator-only).
/// For `n` a power of two the comparator count is `(n/4)·log₂n·(log₂n+1)`.
pub fn bitonic_network(n: usize) -> Result<Netlist, NetlistError> {
    if n == 0 {
        return Err(NetlistError::InvalidSize(
            "bitonic network needs at least one input".to_string(),
        ));
    }
    let mut b = NetlistBuilder::new();
    let mut wires: Vec<NodeId> = (0..n).map(|i| b.input(&format!("x{i}"))).collect();
    let mut exchanges = Vec::new();
    emit_sort(0, n, true, &mut exchanges);
    for ex in exchanges {
        let (hi, lo) = b.comparator(wires[ex.i], wires[ex.j]);
        if ex.ascending {
            wires[ex.i] = lo;
            wires[ex.j] = hi;
        } else {
            wires[ex.i] = hi;
            wires[ex.j] = lo;
        }
    }
    for &w in &wires {
        b.output(w);
    }
    Ok(b.build())
}

/// Sorting network exposing only the middle output. `n` must be odd; the
/// median of an even count has no circuit-expressible tie rule here.
pub fn median_network(n: usize) -> Result<Netlist, NetlistError> {
    if n == 0 || n % 2 == 0 {
        return Err(NetlistError::InvalidSize(format!(
            "median network needs an odd input count, got {n}"
        )));
    }
    let mut net = bitonic_network(n)?;
    net.outputs = vec![net.outputs[n / 2]];
    Ok(net)
}

/// Implication and its negation from inputs and their precomputed negations:
/// `impl = max(not_a, b)` (the circuit-expressible Kleene-Dienes form) and
/// `not_impl = min(a, not_b)`.
pub fn implication(
    b: &mut NetlistBuilder,
    a: NodeId,
    not_a: NodeId,
    b_node: NodeId,
    not_b: NodeId,
) -> (NodeId, NodeId) {
    let implies = b.max(not_a, b_node);
    let not_implies = b.min(a, not_b);
    (implies, not_implies)
}

/// Closed-form Lukasiewicz implication `min(1, 1 - a + b)`; the reference
/// semantics that min/max gates cannot realize (see [`implication`]).
pub fn lukasiewicz_implies(a: f64, b: f64) -> f64 {
    (1.0 - a + b).min(1.0)
}

/// Critical-path length counting only Min/Max gates; for sorting networks
/// this is the number of parallel comparator stages.
pub fn comparator_depth(net: &Netlist) -> usize {
    let mut depth = vec![0usize; net.node_count()];
    for gate in &net.gates {
        depth[gate.id] = match gate.op {
            GateOp::Min(a, b) | GateOp::Max(a, b) => depth[a].max(depth[b]) + 1,
            GateOp::Neg(a) => depth[a],
            GateOp::Const(_) => 0,
        };
    }
    net.outputs.iter().map(|&id| depth[id]).max().unwrap_or(0)
}
