//! Characters of a finite cyclic group `Z/r` and character multisets.
//!
//! Every value carries its group order `r`, so nothing here assumes `r = 3`
//! even though the cubic fourfold computations only ever use that order.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Order of the cyclic group acting on the cubic fourfold.
pub const DEFAULT_ORDER: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("group orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("character value {value} out of range for order {order}")]
    OutOfRange { value: u32, order: u32 },
}

/// A character `χ_value` of `Z/order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    value: u32,
    order: u32,
}

impl Character {
    pub fn new(value: u32, order: u32) -> Result<Self, CharError> {
        if order == 0 {
            return Err(CharError::ZeroOrder);
        }
        if value >= order {
            return Err(CharError::OutOfRange { value, order });
        }
        Ok(Self { value, order })
    }

    /// Reduces an arbitrary integer modulo `order`.
    pub fn from_int(value: i64, order: u32) -> Result<Self, CharError> {
        if order == 0 {
            return Err(CharError::ZeroOrder);
        }
        let v = value.rem_euclid(order as i64) as u32;
        Ok(Self { value: v, order })
    }

    /// `χ_j` for the order-3 group. Panics if `j >= 3`.
    pub fn chi(j: u32) -> Self {
        Self::new(j, DEFAULT_ORDER).expect("chi index must be below 3")
    }

    pub fn trivial(order: u32) -> Result<Self, CharError> {
        Self::new(0, order)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn inverse(self) -> Self {
        Self {
            value: (self.order - self.value) % self.order,
            order: self.order,
        }
    }

    /// Tensor product of characters.
    pub fn try_add(self, other: Self) -> Result<Self, CharError> {
        check_orders(self.order, other.order)?;
        Ok(Self {
            value: (self.value + other.value) % self.order,
            order: self.order,
        })
    }

    pub fn try_sub(self, other: Self) -> Result<Self, CharError> {
        self.try_add(other.inverse())
    }

    /// Multiplies by an integer, i.e. `χ^k`.
    pub fn scale(self, k: i64) -> Self {
        let v = (self.value as i64 * k).rem_euclid(self.order as i64) as u32;
        Self {
            value: v,
            order: self.order,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{}", self.value)
    }
}

fn check_orders(left: u32, right: u32) -> Result<(), CharError> {
    if left != right {
        Err(CharError::OrderMismatch { left, right })
    } else {
        Ok(())
    }
}

/// `χ_a ⊗ χ_b`.
pub fn char_add(a: Character, b: Character) -> Result<Character, CharError> {
    a.try_add(b)
}

/// Character decomposition of a finite-dimensional representation of `Z/r`,
/// stored densely as one multiplicity per character value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharMultiset {
    order: u32,
    mult: Vec<u64>,
}

impl CharMultiset {
    pub fn empty(order: u32) -> Result<Self, CharError> {
        if order == 0 {
            return Err(CharError::ZeroOrder);
        }
        Ok(Self {
            order,
            mult: vec![0; order as usize],
        })
    }

    /// Builds a multiset from `(character value, multiplicity)` pairs.
    pub fn from_pairs(order: u32, pairs: &[(u32, u64)]) -> Result<Self, CharError> {
        let mut out = Self::empty(order)?;
        for &(v, m) in pairs {
            let c = Character::new(v, order)?;
            out.insert(c, m)?;
        }
        Ok(out)
    }

    /// Dense constructor; `mult[j]` is the multiplicity of `χ_j`.
    pub fn from_vec(mult: Vec<u64>) -> Result<Self, CharError> {
        if mult.is_empty() {
            return Err(CharError::ZeroOrder);
        }
        Ok(Self {
            order: mult.len() as u32,
            mult,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn insert(&mut self, c: Character, count: u64) -> Result<(), CharError> {
        check_orders(self.order, c.order())?;
        self.mult[c.value() as usize] += count;
        Ok(())
    }

    pub fn multiplicity(&self, c: Character) -> u64 {
        if c.order() != self.order {
            return 0;
        }
        self.mult[c.value() as usize]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn total_dim(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Iterates over characters with nonzero multiplicity in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (Character, u64)> + '_ {
        let order = self.order;
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(move |(v, &m)| {
                (
                    Character {
                        value: v as u32,
                        order,
                    },
                    m,
                )
            })
    }

    /// `V ⊗ χ`: every character is shifted by `twist`.
    pub fn shifted(&self, twist: Character) -> Result<Self, CharError> {
        check_orders(self.order, twist.order())?;
        let r = self.order as usize;
        let mut mult = vec![0; r];
        for (v, &m) in self.mult.iter().enumerate() {
            mult[(v + twist.value() as usize) % r] += m;
        }
        Ok(Self {
            order: self.order,
            mult,
        })
    }

    pub fn try_sum(&self, other: &Self) -> Result<Self, CharError> {
        check_orders(self.order, other.order)?;
        let mult = self
            .mult
            .iter()
            .zip(&other.mult)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            order: self.order,
            mult,
        })
    }

    /// Character-wise difference; `None` when some multiplicity would go negative.
    pub fn checked_sub(&self, other: &Self) -> Result<Option<Self>, CharError> {
        check_orders(self.order, other.order)?;
        let mut mult = Vec::with_capacity(self.mult.len());
        for (a, b) in self.mult.iter().zip(&other.mult) {
            match a.checked_sub(*b) {
                Some(d) => mult.push(d),
                None => return Ok(None),
            }
        }
        Ok(Some(Self {
            order: self.order,
            mult,
        }))
    }
}

impl Add for &CharMultiset {
    type Output = CharMultiset;

    /// Panics on mismatched orders; use [`CharMultiset::try_sum`] otherwise.
    fn add(self, rhs: Self) -> CharMultiset {
        self.try_sum(rhs).expect("group orders must agree")
    }
}

impl fmt::Display for CharMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(c, m)| {
                if m == 1 {
                    format!("C{c}")
                } else {
                    format!("C^{m}{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `dim [V ⊗ χ_twist]^G`, i.e. the multiplicity of `χ_{-twist}` in `V`.
pub fn invariants_dim(v: &CharMultiset, twist: Character) -> Result<u64, CharError> {
    check_orders(v.order(), twist.order())?;
    Ok(v.multiplicity(twist.inverse()))
}
