//! Accumulates equality checks and remembers the first failure.

use serde_json::{json, Value};

use crate::exact::{Render, Ring, Series};

#[derive(Debug, Default)]
pub struct Checker {
    pub checks: usize,
    pub mismatch: Option<Value>,
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.mismatch.is_none()
    }

    fn fail(&mut self, v: Value) {
        if self.mismatch.is_none() {
            self.mismatch = Some(v);
        }
    }

    pub fn series<C: Ring + Render>(&mut self, label: &str, lhs: &Series<C>, rhs: &Series<C>) {
        self.checks += 1;
        if let Some((m, a, b)) = lhs.first_mismatch(rhs) {
            self.fail(json!({
                "check": label,
                "monomial": m.exps(),
                "lhs": a.to_json(),
                "rhs": b.to_json(),
            }));
        }
    }

    pub fn value<T: Render + PartialEq>(&mut self, label: &str, lhs: &T, rhs: &T) {
        self.checks += 1;
        if lhs != rhs {
            self.fail(json!({"check": label, "lhs": lhs.to_json(), "rhs": rhs.to_json()}));
        }
    }

    pub fn flag(&mut self, label: &str, ok: bool, detail: Value) {
        self.checks += 1;
        if !ok {
            self.fail(json!({"check": label, "detail": detail}));
        }
    }
}
