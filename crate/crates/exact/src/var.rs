//! Interned parameter names.
//!
//! Every symbolic parameter (`c`, `lambda`, `a17`, `x3_0`, ...) is interned once
//! into a process-wide table. A [`Var`] is a copyable handle into that table.
//! Internal monomial ordering uses the handle value; anything user-facing
//! (printing, JSON) orders by name so output does not depend on interning order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::ExactError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Registry {
    names: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Registry::default()))
}

/// Identifier rule shared with the expression parsers: a letter or `_`,
/// followed by letters, digits or `_`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(ch) if ch.is_alphabetic() || ch == '_' => {}
        _ => return false,
    }
    chars.all(|ch| ch.is_alphanumeric() || ch == '_')
}

impl Var {
    pub fn try_new(name: &str) -> Result<Var, ExactError> {
        if !is_valid_name(name) {
            return Err(ExactError::InvalidName(name.to_string()));
        }
        if let Some(&id) = registry().read().expect("registry poisoned").index.get(name) {
            return Ok(Var(id));
        }
        let mut reg = registry().write().expect("registry poisoned");
        if let Some(&id) = reg.index.get(name) {
            return Ok(Var(id));
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let id = reg.names.len() as u32;
        reg.names.push(leaked);
        reg.index.insert(leaked, id);
        Ok(Var(id))
    }

    /// Interns `name`. Panics on names that are not identifiers.
    pub fn new(name: &str) -> Var {
        Var::try_new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn name(self) -> &'static str {
        registry().read().expect("registry poisoned").names[self.0 as usize]
    }

    /// Name-based comparison used for deterministic output.
    pub fn cmp_by_name(self, other: Var) -> std::cmp::Ordering {
        if self == other {
            return std::cmp::Ordering::Equal;
        }
        self.name().cmp(other.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::new("c");
        let b = Var::new("c");
        assert_eq!(a, b);
        assert_eq!(a.name(), "c");
        assert!(Var::try_new("1x").is_err());
        assert!(Var::try_new("a b").is_err());
        assert!(Var::try_new("λ").is_ok());
    }
}
