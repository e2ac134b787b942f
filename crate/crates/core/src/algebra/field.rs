//! Binary extension fields GF(2^k) for 1 <= k <= 8.
//!
//! Elements are stored as bit vectors of length k: bit i is the coefficient of
//! w^i, where w is the class of the generator modulo the field's modulus.

use std::fmt;

use super::AlgebraError;

/// Largest supported extension degree.
pub const MAX_DEGREE: u8 = 8;

/// Default irreducible moduli over GF(2), indexed by degree.
/// Degree 2 uses w^2 + w + 1 so that w is a primitive cube root of unity.
const DEFAULT_MODULI: [u16; 9] = [0, 0b11, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b100_0011, 0b1000_0011, 0b1_0001_1011];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteField {
    degree: u8,
    modulus: u16,
}

impl FiniteField {
    pub const GF2: FiniteField = FiniteField { degree: 1, modulus: 0b11 };
    pub const GF4: FiniteField = FiniteField { degree: 2, modulus: 0b111 };

    /// The field GF(2^k) with its canonical modulus.
    pub fn new(degree: u8) -> Result<Self, AlgebraError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(AlgebraError::UnsupportedDegree(degree));
        }
        Ok(FiniteField { degree, modulus: DEFAULT_MODULI[degree as usize] })
    }

    /// A field with a caller-chosen modulus, which must be irreducible of the
    /// given degree.
    pub fn with_modulus(degree: u8, modulus: u16) -> Result<Self, AlgebraError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(AlgebraError::UnsupportedDegree(degree));
        }
        if bit_degree(modulus as u32) != Some(degree as u32) || !is_irreducible_gf2(modulus as u32) {
            return Err(AlgebraError::ReducibleModulus(modulus));
        }
        Ok(FiniteField { degree, modulus })
    }

    pub fn degree(self) -> u8 {
        self.degree
    }

    pub fn modulus(self) -> u16 {
        self.modulus
    }

    pub fn characteristic(self) -> u32 {
        2
    }

    pub fn order(self) -> u32 {
        1 << self.degree
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { field: self, bits: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { field: self, bits: 1 }
    }

    /// The class of w. In GF(2) this is 1.
    pub fn generator(self) -> FieldElement {
        self.element(0b10)
    }

    /// Builds an element from its bit representation, reducing modulo the modulus.
    pub fn element(self, bits: u32) -> FieldElement {
        FieldElement { field: self, bits: self.reduce(bits) }
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(move |b| FieldElement { field: self, bits: b as u8 })
    }

    /// The smallest field containing both, if one contains the other.
    /// GF(2) embeds in every field; otherwise the fields must coincide.
    pub fn join(self, other: FiniteField) -> Option<FiniteField> {
        if self == other || other.degree == 1 {
            Some(self)
        } else if self.degree == 1 {
            Some(other)
        } else {
            None
        }
    }

    pub(crate) fn reduce(self, mut v: u32) -> u8 {
        let m = self.modulus as u32;
        let d = self.degree as u32;
        while let Some(deg) = bit_degree(v) {
            if deg < d {
                break;
            }
            v ^= m << (deg - d);
        }
        v as u8
    }

    pub(crate) fn mul_bits(self, a: u8, b: u8) -> u8 {
        self.reduce(clmul(a as u32, b as u32))
    }

    pub(crate) fn pow_bits(self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_bits(self, a: u8) -> Option<u8> {
        if a == 0 {
            None
        } else {
            Some(self.pow_bits(a, self.order() as u64 - 2))
        }
    }

    pub(crate) fn fmt_bits(self, bits: u8) -> String {
        if bits <= 1 {
            return bits.to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.degree).rev() {
            if bits >> i & 1 == 1 {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => "w".to_string(),
                    _ => format!("w^{i}"),
                });
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FiniteField,
    bits: u8,
}

impl FieldElement {
    pub fn field(self) -> FiniteField {
        self.field
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    fn common(self, other: FieldElement) -> Result<FiniteField, AlgebraError> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(AlgebraError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, AlgebraError> {
        let field = self.common(other)?;
        Ok(FieldElement { field, bits: self.bits ^ other.bits })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, AlgebraError> {
        let field = self.common(other)?;
        Ok(FieldElement { field, bits: field.mul_bits(self.bits, other.bits) })
    }

    pub fn inv(self) -> Result<FieldElement, AlgebraError> {
        self.field
            .inv_bits(self.bits)
            .map(|bits| FieldElement { field: self.field, bits })
            .ok_or(AlgebraError::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement { field: self.field, bits: self.field.pow_bits(self.bits, e) }
    }

    /// Squaring, the Frobenius endomorphism.
    pub fn frobenius(self) -> FieldElement {
        self.pow(2)
    }

    /// Re-reads this element in a larger field. Only GF(2) constants move
    /// between fields.
    pub fn embed(self, target: FiniteField) -> Result<FieldElement, AlgebraError> {
        match self.field.join(target) {
            Some(f) if f == target => Ok(FieldElement { field: target, bits: self.bits }),
            _ => Err(AlgebraError::FieldMismatch(self.field, target)),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_bits(self.bits))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

/// Folds `operands` with the given operation. `Inv` and `Pow` take exactly one
/// operand; `Add` and `Mul` take one or more.
pub fn field_arith(op: FieldOp, operands: &[FieldElement]) -> Result<FieldElement, AlgebraError> {
    let (first, rest) = operands.split_first().ok_or(AlgebraError::Arity)?;
    match op {
        FieldOp::Add => rest.iter().try_fold(*first, |acc, x| acc.try_add(*x)),
        FieldOp::Mul => rest.iter().try_fold(*first, |acc, x| acc.try_mul(*x)),
        FieldOp::Inv if rest.is_empty() => first.inv(),
        FieldOp::Pow(e) if rest.is_empty() => Ok(first.pow(e)),
        _ => Err(AlgebraError::Arity),
    }
}

fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    for i in 0..16 {
        if b >> i & 1 == 1 {
            acc ^= a << i;
        }
    }
    acc
}

fn bit_degree(v: u32) -> Option<u32> {
    if v == 0 {
        None
    } else {
        Some(31 - v.leading_zeros())
    }
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b).expect("nonzero divisor");
    while let Some(da) = bit_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree at most half.
pub fn is_irreducible_gf2(p: u32) -> bool {
    let Some(d) = bit_degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (2u32..(1 << (d / 2 + 1))).all(|q| bit_degree(q).unwrap() > d / 2 || gf2_rem(p, q) != 0)
}
