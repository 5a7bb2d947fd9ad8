use std::collections::BTreeMap;

use crate::engine::UnknownKey;
use crate::error::EngineError;
use crate::linalg::{sparse_from, SolutionSpace, SparseVec};
use crate::scalar::Scalar;

/// A solution space whose coordinates are named by unknown keys, so spaces
/// from different windows can be compared when their key sets agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyedSpace {
    keys: Vec<UnknownKey>,
    space: SolutionSpace,
}

impl KeyedSpace {
    /// `keys` must be sorted and match the column order of `space`.
    pub fn new(keys: Vec<UnknownKey>, space: SolutionSpace) -> Self {
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(keys.len(), space.ncols());
        KeyedSpace { keys, space }
    }

    pub fn span(keys: Vec<UnknownKey>, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let n = keys.len();
        KeyedSpace::new(keys, SolutionSpace::span(n, vectors))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn keys(&self) -> &[UnknownKey] {
        &self.keys
    }

    pub fn space(&self) -> &SolutionSpace {
        &self.space
    }

    /// Basis vectors as `(key, coefficient)` lists.
    pub fn basis_entries(&self) -> Vec<Vec<(UnknownKey, Scalar)>> {
        self.space
            .basis()
            .iter()
            .map(|v| v.iter().map(|(c, x)| (self.keys[*c], x.clone())).collect())
            .collect()
    }

    /// Vector from named coefficients; every key must belong to this space.
    pub fn vector(&self, entries: &BTreeMap<UnknownKey, Scalar>) -> Result<SparseVec, EngineError> {
        let mut out = Vec::with_capacity(entries.len());
        for (k, x) in entries {
            let c = self.keys.binary_search(k).map_err(|_| EngineError::NamespaceMismatch)?;
            out.push((c, x.clone()));
        }
        Ok(sparse_from(out))
    }

    pub fn contains(&self, entries: &BTreeMap<UnknownKey, Scalar>) -> Result<bool, EngineError> {
        Ok(self.space.contains(&self.vector(entries)?).expect("columns in range"))
    }

    fn check_keys(&self, other: &KeyedSpace) -> Result<(), EngineError> {
        if self.keys == other.keys {
            Ok(())
        } else {
            Err(EngineError::NamespaceMismatch)
        }
    }

    pub fn contains_space(&self, other: &KeyedSpace) -> Result<bool, EngineError> {
        self.check_keys(other)?;
        Ok(self.space.contains_space(&other.space).expect("same namespace"))
    }

    /// Mutual containment.
    pub fn same_span(&self, other: &KeyedSpace) -> Result<bool, EngineError> {
        self.check_keys(other)?;
        Ok(self.space == other.space)
    }

    pub fn sum(&self, other: &KeyedSpace) -> Result<KeyedSpace, EngineError> {
        self.check_keys(other)?;
        Ok(KeyedSpace::new(self.keys.clone(), self.space.sum(&other.space)))
    }

    /// Restriction to the keys accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(&UnknownKey) -> bool) -> KeyedSpace {
        let cols: Vec<usize> = (0..self.keys.len()).filter(|&c| keep(&self.keys[c])).collect();
        let keys = cols.iter().map(|&c| self.keys[c]).collect();
        KeyedSpace::new(keys, self.space.project(&cols))
    }
}
