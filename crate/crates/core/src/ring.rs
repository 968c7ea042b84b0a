use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;

/// A polynomial ring `k[v_1, ..., v_n]`, standard graded, with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(AlgebraError::Invalid(format!(
                    "block({k}) exceeds the {} ring variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(Self { field, vars, order }))
    }

    /// Convenience constructor for generated names.
    pub fn with_vars<S: AsRef<str>>(field: Field, vars: &[S], order: MonomialOrder) -> Result<Ring> {
        Self::new(field, vars.iter().map(|v| v.as_ref().to_string()).collect(), order)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::new(self.field, self.vars.clone(), order)
    }

    /// Same variables and order over another field.
    pub fn with_field(&self, field: Field) -> Ring {
        Arc::new(Self { field, vars: self.vars.clone(), order: self.order })
    }
}

/// Ring identity check used by binary operations.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch(format!("{a} vs {b}")))
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {}[{}] {}", self.field, self.vars.join(","), self.order)
    }
}
