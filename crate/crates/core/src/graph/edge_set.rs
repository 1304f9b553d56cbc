use super::{EdgeId, GraphError};

/// Sorted, duplicate-free set of edge ids of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    ids: Vec<EdgeId>,
}

impl EdgeSet {
    /// Validates every id against the edge count `m`; duplicates are merged.
    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(ids: I, m: usize) -> Result<Self, GraphError> {
        let mut ids: Vec<EdgeId> = ids.into_iter().collect();
        if let Some(&bad) = ids.iter().find(|&&e| e as usize >= m) {
            return Err(GraphError::UnknownEdge(bad));
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(EdgeSet { ids })
    }

    pub fn full(m: usize) -> Self {
        EdgeSet {
            ids: (0..m as EdgeId).collect(),
        }
    }

    /// Members of a per-edge mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        EdgeSet {
            ids: mask
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(e, _)| e as EdgeId)
                .collect(),
        }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.ids.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn to_mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &e in &self.ids {
            mask[e as usize] = true;
        }
        mask
    }
}
