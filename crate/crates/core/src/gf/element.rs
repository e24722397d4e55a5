use std::fmt;

use super::{Fe, Field, GfError};

/// A field element bound to its field. Operations between elements of
/// different fields fail with [`GfError::FieldMismatch`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

impl FieldElement {
    pub fn new(field: &Field, value: Fe) -> FieldElement {
        assert!(field.contains(value), "encoding {} outside GF({})", value.0, field.order());
        FieldElement { field: field.clone(), value }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    /// Coefficient vector in the polynomial basis, constant term first.
    pub fn coefficients(&self) -> Vec<u64> {
        let p = self.field.characteristic();
        let mut x = self.value.0;
        (0..self.field.degree())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    fn same(&self, other: &FieldElement) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, v: Fe) -> FieldElement {
        FieldElement { field: self.field.clone(), value: v }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.field.pow(self.value, e)?))
    }

    pub fn sqrt(&self) -> Option<FieldElement> {
        self.field.sqrt(self.value).map(|v| self.wrap(v))
    }

    pub fn trace(&self) -> u64 {
        self.field.trace(self.value)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value.0, self.field.order())
    }
}
