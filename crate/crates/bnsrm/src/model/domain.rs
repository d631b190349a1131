use crate::error::{Error, Result};

/// Named categorical variables with finite, ordered value alphabets.
///
/// Hot paths work on integer value codes `0..m_j`; the string labels only
/// matter at the ingestion and serialization boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoricalDomain {
    names: Vec<String>,
    alphabets: Vec<Vec<String>>,
    sizes: Vec<usize>,
}

impl CategoricalDomain {
    pub fn new(names: Vec<String>, alphabets: Vec<Vec<String>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidDomain("need at least one variable".into()));
        }
        if names.len() != alphabets.len() {
            return Err(Error::InvalidDomain(format!(
                "{} names but {} alphabets",
                names.len(),
                alphabets.len()
            )));
        }
        for (j, alpha) in alphabets.iter().enumerate() {
            if alpha.len() < 2 {
                return Err(Error::InvalidDomain(format!(
                    "variable {:?} has fewer than two values",
                    names[j]
                )));
            }
            let mut seen = alpha.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != alpha.len() {
                return Err(Error::InvalidDomain(format!(
                    "variable {:?} has duplicate values",
                    names[j]
                )));
            }
        }
        let sizes = alphabets.iter().map(Vec::len).collect();
        Ok(Self {
            names,
            alphabets,
            sizes,
        })
    }

    /// All-binary domain with names `X1..Xn` and values `"0"`, `"1"`.
    pub fn binary(n: usize) -> Self {
        let names = (1..=n).map(|j| format!("X{j}")).collect();
        let alphabets = (0..n).map(|_| vec!["0".into(), "1".into()]).collect();
        Self::new(names, alphabets).expect("binary domain is always valid")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self, j: usize) -> &[String] {
        &self.alphabets[j]
    }

    /// `m_j`, the alphabet size of variable `j`.
    pub fn size(&self, j: usize) -> usize {
        self.sizes[j]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Code of `token` within variable `j`'s alphabet, if present.
    pub fn code(&self, j: usize, token: &str) -> Option<usize> {
        self.alphabets[j].iter().position(|v| v == token)
    }

    /// Number of full joint assignments, if it fits in u128.
    pub fn joint_states(&self) -> Result<u128> {
        let mut total: u128 = 1;
        for &m in &self.sizes {
            total = total.checked_mul(m as u128).ok_or(Error::BoundOverflow)?;
        }
        Ok(total)
    }
}
