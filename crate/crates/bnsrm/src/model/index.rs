use crate::error::{Error, Result};

/// Mixed-radix codec between value tuples and flat table indices.
///
/// The first radix is the most significant digit; the last digit varies
/// fastest. CPT tables declare their radix order as parent indices
/// ascending with the child variable last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIndex {
    radices: Vec<usize>,
    len: usize,
}

impl ConfigIndex {
    pub fn new(radices: Vec<usize>) -> Result<Self> {
        let mut len: usize = 1;
        for &r in &radices {
            if r == 0 {
                return Err(Error::InvalidParameter("zero radix".into()));
            }
            len = len.checked_mul(r).ok_or(Error::BoundOverflow)?;
        }
        Ok(Self { radices, len })
    }

    /// Total number of encodable tuples.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn encode(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.radices.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} digits, got {}",
                self.radices.len(),
                digits.len()
            )));
        }
        let mut idx = 0;
        for (pos, (&d, &r)) in digits.iter().zip(&self.radices).enumerate() {
            if d >= r {
                return Err(Error::InvalidAssignment {
                    node: pos,
                    value: d,
                    size: r,
                });
            }
            idx = idx * r + d;
        }
        Ok(idx)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        assert!(idx < self.len, "index {idx} out of range {}", self.len);
        let mut digits = vec![0; self.radices.len()];
        for (pos, &r) in self.radices.iter().enumerate().rev() {
            digits[pos] = idx % r;
            idx /= r;
        }
        digits
    }
}
