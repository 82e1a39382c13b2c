//! Exhaustive enumeration of small labeled graphs.

use crate::graph::{Graph, GraphError};

/// Largest order accepted; 7 vertices already means 2^21 edge subsets.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Every labeled simple graph on `n` vertices, by edge-subset bitmask over
/// the pairs `(0,1), (0,2), ..., (n-2,n-1)` in lexicographic order.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
    connected_only: bool,
}

pub fn enumerate_labeled_graphs(
    n: usize,
    connected_only: bool,
) -> Result<LabeledGraphs, GraphError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::InvalidParameter(format!(
            "enumeration supports n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(LabeledGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next_mask: 0,
        connected_only,
    })
}

impl LabeledGraphs {
    fn connected(&self, mask: u64) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    components -= 1;
                }
            }
        }
        components == 1
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if self.connected_only && !self.connected(mask) {
                continue;
            }
            let edges = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            return Some(Graph::new(self.n, edges).expect("enumerated edges are valid"));
        }
        None
    }
}
