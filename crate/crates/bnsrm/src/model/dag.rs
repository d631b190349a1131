use crate::error::{Error, Result};

/// Directed acyclic graph stored as per-node parent index sets.
///
/// Parent lists are kept in canonical form: sorted ascending, duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    parents: Vec<Vec<usize>>,
}

impl Dag {
    /// Build from per-node parent lists. Lists are canonicalized; self-loops,
    /// duplicates, out-of-range indices, and cycles are rejected.
    pub fn new(n: usize, parents: Vec<Vec<usize>>) -> Result<Self> {
        if parents.len() != n {
            return Err(Error::InvalidGraph(format!(
                "expected {} parent lists, got {}",
                n,
                parents.len()
            )));
        }
        let mut canon = parents;
        for (j, list) in canon.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::InvalidGraph(format!(
                    "duplicate parent in list of node {j}"
                )));
            }
            for &p in list.iter() {
                if p >= n {
                    return Err(Error::InvalidGraph(format!(
                        "parent index {p} out of range for node {j}"
                    )));
                }
                if p == j {
                    return Err(Error::InvalidGraph(format!("self-loop at node {j}")));
                }
            }
        }
        let dag = Self { parents: canon };
        dag.topological_order()?;
        Ok(dag)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            parents: vec![Vec::new(); n],
        }
    }

    /// Chain 0 -> 1 -> ... -> n-1.
    pub fn chain(n: usize) -> Self {
        let parents = (0..n).map(|j| if j == 0 { vec![] } else { vec![j - 1] }).collect();
        Self { parents }
    }

    /// Complete DAG in index order: parents of j are 0..j.
    pub fn complete(n: usize) -> Self {
        let parents = (0..n).map(|j| (0..j).collect()).collect();
        Self { parents }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut parents = vec![Vec::new(); n];
        for &(u, v) in edges {
            if v >= n {
                return Err(Error::InvalidGraph(format!("edge target {v} out of range")));
            }
            parents[v].push(u);
        }
        Self::new(n, parents)
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, j: usize) -> &[usize] {
        &self.parents[j]
    }

    pub fn parent_lists(&self) -> &[Vec<usize>] {
        &self.parents
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.parents[j].len()
    }

    pub fn max_in_degree(&self) -> usize {
        self.parents.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, list) in self.parents.iter().enumerate() {
            for &p in list {
                out.push((p, j));
            }
        }
        out
    }

    /// Kahn's algorithm with smallest-index-first tie-break. On a cycle,
    /// reports the nodes of one cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut remaining_in: Vec<usize> = (0..n).map(|j| self.parents[j].len()).collect();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (j, list) in self.parents.iter().enumerate() {
            for &p in list {
                children[p].push(j);
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&j| remaining_in[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&j) = ready.iter().next() {
            ready.remove(&j);
            order.push(j);
            for &c in &children[j] {
                remaining_in[c] -= 1;
                if remaining_in[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Walk parent pointers among the stuck nodes until a node repeats.
        let stuck: Vec<usize> = (0..n).filter(|&j| remaining_in[j] > 0).collect();
        let start = stuck[0];
        let mut seen = vec![false; n];
        let mut path = Vec::new();
        let mut cur = start;
        loop {
            if seen[cur] {
                let pos = path.iter().position(|&x| x == cur).unwrap();
                let mut cycle: Vec<usize> = path[pos..].to_vec();
                cycle.sort_unstable();
                return Err(Error::Cycle(cycle));
            }
            seen[cur] = true;
            path.push(cur);
            cur = *self.parents[cur]
                .iter()
                .find(|&&p| remaining_in[p] > 0)
                .expect("stuck node must have a stuck parent");
        }
    }
}
