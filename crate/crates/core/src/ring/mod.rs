//! Exact multivariate polynomial arithmetic over the rationals or a prime field.

mod field;
mod grading;
mod monomial;
mod order;
mod polynomial;
mod text;

use std::collections::HashMap;
use std::sync::Arc;

pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use grading::{Grading, MultiDegree};
pub use monomial::Monomial;
pub use order::{TermOrder, Tiebreak};
pub use polynomial::Polynomial;

use crate::error::{Error, Result};

/// A polynomial ring: an ordered list of variable names and a coefficient field.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    field: Field,
    index: HashMap<String, usize>,
}

pub type RingRef = Arc<Ring>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        field: Field,
    ) -> Result<RingRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Parse(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Ring {
            names,
            field,
            index,
        }))
    }

    /// The ring of a generic `k x n` matrix with variables `x_i_j` (1-based, row-major).
    pub fn generic_matrix(k: usize, n: usize, field: Field) -> RingRef {
        let names = (1..=k).flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}")));
        Ring::new(names, field).expect("generated names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables with an extra one appended at the end.
    pub fn with_extra_variable(&self, name: &str) -> Result<RingRef> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Ring::new(names, self.field)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: Field) -> RingRef {
        Ring::new(self.names.clone(), field).expect("names already validated")
    }
}
