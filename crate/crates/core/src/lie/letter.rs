//! Generators of free graded Lie algebras.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

/// A graded letter. The `Ord` instance is the alphabet order used by the
/// Lyndon basis.
pub trait Letter: Clone + Ord + Hash + Debug + Send + Sync + 'static {
    fn degree(&self) -> u32;
    fn label(&self) -> String;
}

/// A named generator. Generators compare by declaration index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub index: usize,
    pub degree: u32,
    pub name: Arc<str>,
}

impl Letter for Gen {
    fn degree(&self) -> u32 {
        self.degree
    }

    fn label(&self) -> String {
        self.name.to_string()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("generator `{0}` has degree 0; generators must have degree at least 1 (connectedness)")]
    DegreeZero(String),
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
}

/// An ordered set of named, positively graded generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Gen>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        None => false,
        Some(c) if c.is_ascii_digit() => false,
        Some(_) => name.chars().all(|c| !c.is_whitespace() && !"[](),+-*=/#".contains(c)),
    }
}

impl GeneratorSet {
    pub fn new<S: AsRef<str>>(spec: &[(S, u32)]) -> Result<Self, GeneratorError> {
        let mut set = GeneratorSet::default();
        for (name, degree) in spec {
            set.push(name.as_ref(), *degree)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, name: &str, degree: u32) -> Result<Gen, GeneratorError> {
        if !valid_name(name) {
            return Err(GeneratorError::BadName(name.to_string()));
        }
        if degree == 0 {
            return Err(GeneratorError::DegreeZero(name.to_string()));
        }
        if self.get(name).is_some() {
            return Err(GeneratorError::Duplicate(name.to_string()));
        }
        let g = Gen { index: self.gens.len(), degree, name: name.into() };
        self.gens.push(g.clone());
        Ok(g)
    }

    pub fn get(&self, name: &str) -> Option<&Gen> {
        self.gens.iter().find(|g| &*g.name == name)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Gen) -> bool {
        self.gens.get(g.index) == Some(g)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degree_zero_and_duplicates() {
        assert!(matches!(GeneratorSet::new(&[("e", 0)]), Err(GeneratorError::DegreeZero(_))));
        assert!(matches!(GeneratorSet::new(&[("a", 1), ("a", 2)]), Err(GeneratorError::Duplicate(_))));
        assert!(GeneratorSet::new(&[("2x", 1)]).is_err());
        assert!(GeneratorSet::new(&[("∂x", 1)]).is_ok());
    }

    #[test]
    fn order_is_declaration_order() {
        let s = GeneratorSet::new(&[("z", 1), ("a", 1)]).unwrap();
        assert!(s.get("z").unwrap() < s.get("a").unwrap());
    }
}
