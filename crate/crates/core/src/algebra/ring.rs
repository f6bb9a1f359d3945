//! Variable metadata for polynomial rings: names, the geometric space a
//! coordinate lives on, and grading weights.

use std::collections::HashMap;

/// Which space a coordinate belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceTag {
    /// Ambient coordinate of a base variety.
    Base,
    /// Coordinate on a functor instance.
    Instance,
    /// Rabinowitsch witness of a localisation.
    Witness,
    /// Laurent coefficient of a witness curve.
    Curve,
    /// Internal helper (elimination, generic matrices).
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub tag: SpaceTag,
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, tag: SpaceTag, weight: u32) -> Variable {
        Variable { name: name.into(), tag, weight }
    }

    pub fn base(name: impl Into<String>) -> Variable {
        Variable::new(name, SpaceTag::Base, 0)
    }

    pub fn instance(name: impl Into<String>, weight: u32) -> Variable {
        Variable::new(name, SpaceTag::Instance, weight)
    }
}

/// An ordered list of variables with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
}

impl Ring {
    pub fn new(vars: Vec<Variable>) -> Ring {
        let mut seen = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if let Some(j) = seen.insert(v.name.clone(), i) {
                panic!("duplicate variable {} at {} and {}", v.name, j, i);
            }
        }
        Ring { vars }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Concatenation; the second ring's variables follow the first's.
    pub fn join(&self, other: &Ring) -> Ring {
        let mut v = self.vars.clone();
        v.extend(other.vars.iter().cloned());
        Ring::new(v)
    }

    pub fn push(&mut self, v: Variable) -> usize {
        assert!(self.index_of(&v.name).is_none(), "duplicate variable {}", v.name);
        self.vars.push(v);
        self.vars.len() - 1
    }

    pub fn indices_with_tag(&self, tag: &SpaceTag) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| &self.vars[i].tag == tag).collect()
    }
}
