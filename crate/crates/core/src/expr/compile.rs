//! Compilation of expressions to netlists whose only negations sit directly
//! on input variables.
//!
//! Pipeline: lower `implies` to `or(not a, b)`, push every `not` down to a
//! leaf by De Morgan duality, then emit gates with one shared `Neg` per
//! negated variable and balanced binary trees for n-ary min/max.

use std::collections::HashMap;

use crate::netlist::{Netlist, NetlistBuilder, NodeId};

use super::FuzzyExpr;

/// Negation-normal form over the min/max fragment; negations only on leaves.
enum Nnf {
    Var(String),
    NegVar(String),
    Const(f64),
    Min(Vec<Nnf>),
    Max(Vec<Nnf>),
}

fn to_nnf(expr: &FuzzyExpr, negated: bool, lowered_implies: &mut bool) -> Nnf {
    match expr {
        FuzzyExpr::Var(name) => {
            if negated {
                Nnf::NegVar(name.clone())
            } else {
                Nnf::Var(name.clone())
            }
        }
        FuzzyExpr::Const(c) => Nnf::Const(if negated { 1.0 - c } else { *c }),
        FuzzyExpr::Not(e) => to_nnf(e, !negated, lowered_implies),
        FuzzyExpr::And(a, b) => {
            let (a, b) = (
                to_nnf(a, negated, lowered_implies),
                to_nnf(b, negated, lowered_implies),
            );
            if negated {
                Nnf::Max(vec![a, b])
            } else {
                Nnf::Min(vec![a, b])
            }
        }
        FuzzyExpr::Or(a, b) => {
            let (a, b) = (
                to_nnf(a, negated, lowered_implies),
                to_nnf(b, negated, lowered_implies),
            );
            if negated {
                Nnf::Min(vec![a, b])
            } else {
                Nnf::Max(vec![a, b])
            }
        }
        // implies(a, b) lowers to or(not a, b); under an outer negation that
        // is min(a, not b)
        FuzzyExpr::Implies(a, b) => {
            *lowered_implies = true;
            let na = to_nnf(a, !negated, lowered_implies);
            let nb = to_nnf(b, negated, lowered_implies);
            if negated {
                Nnf::Min(vec![na, nb])
            } else {
                Nnf::Max(vec![na, nb])
            }
        }
        FuzzyExpr::MinN(list) => {
            let items = list
                .iter()
                .map(|e| to_nnf(e, negated, lowered_implies))
                .collect();
            if negated {
                Nnf::Max(items)
            } else {
                Nnf::Min(items)
            }
        }
        FuzzyExpr::MaxN(list) => {
            let items = list
                .iter()
                .map(|e| to_nnf(e, negated, lowered_implies))
                .collect();
            if negated {
                Nnf::Min(items)
            } else {
                Nnf::Max(items)
            }
        }
    }
}

fn collect_vars(expr: &FuzzyExpr, order: &mut Vec<String>) {
    match expr {
        FuzzyExpr::Var(name) => {
            if !order.iter().any(|n| n == name) {
                order.push(name.clone());
            }
        }
        FuzzyExpr::Const(_) => {}
        FuzzyExpr::Not(e) => collect_vars(e, order),
        FuzzyExpr::And(a, b) | FuzzyExpr::Or(a, b) | FuzzyExpr::Implies(a, b) => {
            collect_vars(a, order);
            collect_vars(b, order);
        }
        FuzzyExpr::MinN(list) | FuzzyExpr::MaxN(list) => {
            for e in list {
                collect_vars(e, order);
            }
        }
    }
}

enum TreeKind {
    Min,
    Max,
}

/// Balanced binary tree over the ids, minimizing settling depth.
fn emit_tree(b: &mut NetlistBuilder, kind: &TreeKind, ids: &[NodeId]) -> NodeId {
    assert!(!ids.is_empty(), "min/max needs at least one operand");
    if ids.len() == 1 {
        return ids[0];
    }
    let mid = ids.len() / 2;
    let left = emit_tree(b, kind, &ids[..mid]);
    let right = emit_tree(b, kind, &ids[mid..]);
    match kind {
        TreeKind::Min => b.min(left, right),
        TreeKind::Max => b.max(left, right),
    }
}

struct Emitter<'a> {
    builder: &'a mut NetlistBuilder,
    var_ids: HashMap<String, NodeId>,
    neg_ids: HashMap<String, NodeId>,
}

impl Emitter<'_> {
    fn emit(&mut self, nnf: &Nnf) -> NodeId {
        match nnf {
            Nnf::Var(name) => self.var_ids[name],
            Nnf::NegVar(name) => {
                if let Some(&id) = self.neg_ids.get(name) {
                    id
                } else {
                    let id = self.builder.neg(self.var_ids[name]);
                    self.neg_ids.insert(name.clone(), id);
                    id
                }
            }
            Nnf::Const(c) => self.builder.constant(*c),
            Nnf::Min(list) => {
                let ids: Vec<NodeId> = list.iter().map(|e| self.emit(e)).collect();
                emit_tree(self.builder, &TreeKind::Min, &ids)
            }
            Nnf::Max(list) => {
                let ids: Vec<NodeId> = list.iter().map(|e| self.emit(e)).collect();
                emit_tree(self.builder, &TreeKind::Max, &ids)
            }
        }
    }
}

/// Compiles an expression to a single-output netlist. `Neg` gates appear
/// only directly on input variables; a negated variable shares one gate
/// across all its uses. Unbound variables surface at evaluation time.
pub fn compile(expr: &FuzzyExpr) -> Netlist {
    let mut lowered = false;
    let nnf = to_nnf(expr, false, &mut lowered);
    if lowered {
        log::warn!(
            "`implies` lowered to the circuit form max(1 - a, b); \
             differs from the closed-form min(1, 1 - a + b), e.g. at a = b = 0.5"
        );
    }

    let mut order = Vec::new();
    collect_vars(expr, &mut order);

    let mut builder = NetlistBuilder::new();
    let var_ids: HashMap<String, NodeId> = order
        .iter()
        .map(|name| (name.clone(), builder.input(name)))
        .collect();
    let mut emitter = Emitter {
        builder: &mut builder,
        var_ids,
        neg_ids: HashMap::new(),
    };
    let root = emitter.emit(&nnf);
    builder.output(root);
    builder.build()
}
