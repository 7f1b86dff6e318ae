use std::fmt;

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest characteristic accepted. Products of two residues must fit in a `u32`.
pub const MAX_CHARACTERISTIC: u32 = 65_521;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if !(2..=MAX_CHARACTERISTIC).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn gf2() -> Self {
        Field { p: 2 }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.p);
        // Fermat: a^(p-2)
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn elem(self, value: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(value),
            p: self.p,
        }
    }

    /// All residues `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl TryFrom<u32> for Field {
    type Error = LinalgError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue together with its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn field(self) -> Field {
        Field { p: self.p }
    }

    pub fn try_add(self, other: FieldElem) -> Result<FieldElem, LinalgError> {
        self.check(other)?;
        Ok(FieldElem {
            value: self.field().add(self.value, other.value),
            p: self.p,
        })
    }

    pub fn try_mul(self, other: FieldElem) -> Result<FieldElem, LinalgError> {
        self.check(other)?;
        Ok(FieldElem {
            value: self.field().mul(self.value, other.value),
            p: self.p,
        })
    }

    pub fn inverse(self) -> Option<FieldElem> {
        (self.value != 0).then(|| FieldElem {
            value: self.field().inv(self.value),
            p: self.p,
        })
    }

    fn check(self, other: FieldElem) -> Result<(), LinalgError> {
        if self.p != other.p {
            Err(LinalgError::CharacteristicMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(0).is_err());
        assert!(Field::new(7).is_ok());
    }

    #[test]
    fn inverses_over_gf7() {
        let f = Field::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn mixed_characteristic_is_an_error() {
        let a = Field::new(2).unwrap().elem(1);
        let b = Field::new(3).unwrap().elem(1);
        assert!(matches!(
            a.try_add(b),
            Err(LinalgError::CharacteristicMismatch(2, 3))
        ));
        assert_eq!(a.try_add(a).unwrap().value(), 0);
    }

    #[test]
    fn negative_values_reduce() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.elem(-1).value(), 2);
        assert_eq!(f.reduce(-7), 2);
    }
}
