use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// The three Dirichlet characters that occur in the decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharacterName {
    #[serde(rename = "trivial")]
    Trivial,
    /// Primitive character modulo 3.
    #[serde(rename = "chi_3_2")]
    Chi3,
    /// Primitive character modulo 4.
    #[serde(rename = "chi_4_2")]
    Chi4,
}

impl CharacterName {
    pub fn as_str(self) -> &'static str {
        match self {
            CharacterName::Trivial => "trivial",
            CharacterName::Chi3 => "chi_3_2",
            CharacterName::Chi4 => "chi_4_2",
        }
    }

    pub fn character(self) -> DirichletCharacter {
        DirichletCharacter::new(self)
    }
}

impl fmt::Display for CharacterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CharacterName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" | "1" => Ok(CharacterName::Trivial),
            "chi_3_2" | "chi3" => Ok(CharacterName::Chi3),
            "chi_4_2" | "chi4" => Ok(CharacterName::Chi4),
            _ => Err(Error::InvalidCharacter(s.to_string())),
        }
    }
}

/// A real Dirichlet character given by its value table on `0..modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    name: CharacterName,
    modulus: u32,
    values: Vec<i8>,
}

impl DirichletCharacter {
    pub fn new(name: CharacterName) -> Self {
        let (modulus, values) = match name {
            CharacterName::Trivial => (1, vec![1]),
            CharacterName::Chi3 => (3, vec![0, 1, -1]),
            CharacterName::Chi4 => (4, vec![0, 1, 0, -1]),
        };
        DirichletCharacter {
            name,
            modulus,
            values,
        }
    }

    pub fn name(&self) -> CharacterName {
        self.name
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Only the trivial character (modulus 1) is imprimitive in our table.
    pub fn is_primitive_nontrivial(&self) -> bool {
        self.modulus >= 2
    }

    pub fn value_i64(&self, m: i64) -> i64 {
        let idx = m.rem_euclid(i64::from(self.modulus)) as usize;
        i64::from(self.values[idx])
    }

    pub fn value(&self, m: i64) -> Rational {
        Rational::from(self.value_i64(m))
    }

    /// `chi(-1)`, i.e. +1 for even and -1 for odd characters.
    pub fn parity(&self) -> i64 {
        self.value_i64(-1)
    }

    /// Whether weight `k` satisfies `chi(-1) = (-1)^k`.
    pub fn parity_matches(&self, k: u32) -> bool {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        self.parity() == sign
    }
}
