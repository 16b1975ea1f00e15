use std::fmt;

use serde::Serialize;

/// A failed axiom or identity, with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Structure being checked, e.g. `"crossed square"`.
    pub structure: String,
    /// Axiom identifier, e.g. `"C2"`, `"2"`, `"2CM3(i)"`.
    pub axiom: String,
    /// Named witness elements as `(role, element index)`.
    pub witnesses: Vec<(String, u32)>,
}

impl Violation {
    pub fn new(structure: &str, axiom: impl Into<String>) -> Self {
        Violation {
            structure: structure.to_string(),
            axiom: axiom.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn with(mut self, role: &str, elem: u32) -> Self {
        self.witnesses.push((role.to_string(), elem));
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} axiom {} fails", self.structure, self.axiom)?;
        if !self.witnesses.is_empty() {
            write!(f, " at")?;
            for (i, (role, e)) in self.witnesses.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{role}={e}")?;
            }
        }
        Ok(())
    }
}

/// Direction of a bisimplicial operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Horizontal => f.write_str("horizontal"),
            Direction::Vertical => f.write_str("vertical"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: u32, b: u32, c: u32 },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(u32),
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: u32, b: u32 },
    #[error("subgroup is not normal: {g}*{n}*{g}^-1 leaves the subgroup")]
    NotNormal { g: u32, n: u32 },
    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    NotAbelian { a: u32, b: u32 },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("groups of order {order} exceed the isomorphism search bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("{what} would have order {order}, above the cap {cap}")]
    SizeBound { what: String, order: u128, cap: u128 },
    #[error("{0}")]
    Axiom(Violation),
    #[error("simplicial identity {relation} fails at level {level} on element {element}")]
    IdentityViolation {
        relation: String,
        level: usize,
        element: u32,
    },
    #[error("operation needs depth {need}, structure has depth {have}")]
    DepthTooShallow { need: usize, have: usize },
    #[error("Moore complex is nontrivial at level {level}")]
    MooreTooLong { level: usize },
    #[error("length hypothesis fails in the {direction} direction at index {index}")]
    HypothesisFailed { direction: Direction, index: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Axiom(v)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 1 for a failed axiom or identity, 2 for unusable
    /// input, 3 for a size bound.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Shape(_) | Error::Parse(_) | Error::DepthTooShallow { .. } => 2,
            Error::TooLarge { .. } | Error::SizeBound { .. } => 3,
            _ => 1,
        }
    }
}
