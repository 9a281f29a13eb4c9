use super::DistanceMatrix;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Mst,
    Dendrogram,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
}

/// Edge list over artists.
///
/// For an MST the nodes are the artists. For a dendrogram nodes `0..n` are
/// the artists and node `n + k` is the cluster formed by merge `k`; each merge
/// contributes one edge `(left, right, height)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTree {
    pub kind: TreeKind,
    pub labels: Vec<String>,
    pub edges: Vec<TreeEdge>,
}

impl CorrelationTree {
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.distance).sum()
    }

    pub fn node_name(&self, id: usize) -> String {
        match self.labels.get(id) {
            Some(l) => l.clone(),
            None => format!("cluster_{}", id - self.labels.len()),
        }
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Kruskal's algorithm; candidate edges are ordered by `(distance, a, b)`.
pub fn minimum_spanning_tree(d: &DistanceMatrix) -> Result<CorrelationTree> {
    let dense = d.dense()?;
    let n = dense.len();
    let mut candidates: Vec<TreeEdge> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| TreeEdge {
            a,
            b,
            distance: dense[a][b],
        })
        .collect();
    candidates.sort_by(|x, y| {
        x.distance
            .total_cmp(&y.distance)
            .then(x.a.cmp(&y.a))
            .then(x.b.cmp(&y.b))
    });
    let mut sets = DisjointSet::new(n);
    let edges: Vec<TreeEdge> = candidates
        .into_iter()
        .filter(|e| sets.union(e.a, e.b))
        .take(n - 1)
        .collect();
    Ok(CorrelationTree {
        kind: TreeKind::Mst,
        labels: d.labels.clone(),
        edges,
    })
}

/// Agglomerative single linkage. Among equally close cluster pairs the one
/// with the smallest `(left id, right id)` merges first.
pub fn single_linkage_dendrogram(d: &DistanceMatrix) -> Result<CorrelationTree> {
    let mut dist = d.dense()?;
    let n = dist.len();
    // ids[i]: current cluster id living in slot i; None once absorbed.
    let mut ids: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for i in 0..n {
            let Some(id_i) = ids[i] else { continue };
            for j in i + 1..n {
                let Some(id_j) = ids[j] else { continue };
                let (lo, hi) = (id_i.min(id_j), id_i.max(id_j));
                let cand = (dist[i][j], lo, hi, i, j);
                let better = match best {
                    None => true,
                    Some(b) => cand.0.total_cmp(&b.0).then(cand.1.cmp(&b.1)).then(cand.2.cmp(&b.2)).is_lt(),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        let (height, lo, hi, i, j) = best.expect("at least two active clusters");
        edges.push(TreeEdge {
            a: lo,
            b: hi,
            distance: height,
        });
        // Slot i keeps the merged cluster; min-update of its distances.
        for k in 0..n {
            if k != i && k != j && ids[k].is_some() {
                let m = dist[i][k].min(dist[j][k]);
                dist[i][k] = m;
                dist[k][i] = m;
            }
        }
        ids[i] = Some(n + step);
        ids[j] = None;
    }
    Ok(CorrelationTree {
        kind: TreeKind::Dendrogram,
        labels: d.labels.clone(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
    }

    #[test]
    fn forced_three_node_tree() {
        let d = DistanceMatrix::from_dense(
            labels(3),
            vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 2.0], vec![3.0, 2.0, 0.0]],
        );
        let t = minimum_spanning_tree(&d).unwrap();
        let pairs: Vec<(usize, usize)> = t.edges.iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(t.total_weight(), 3.0);

        let dg = single_linkage_dendrogram(&d).unwrap();
        assert_eq!(dg.edges[0], TreeEdge { a: 0, b: 1, distance: 1.0 });
        assert_eq!(dg.edges[1], TreeEdge { a: 2, b: 3, distance: 2.0 });
        assert_eq!(dg.node_name(3), "cluster_0");
    }

    #[test]
    fn two_nodes() {
        let d = DistanceMatrix::from_dense(labels(2), vec![vec![0.0, 0.7], vec![0.7, 0.0]]);
        assert_eq!(minimum_spanning_tree(&d).unwrap().edges.len(), 1);
        let dg = single_linkage_dendrogram(&d).unwrap();
        assert_eq!(dg.edges, vec![TreeEdge { a: 0, b: 1, distance: 0.7 }]);
    }

    #[test]
    fn equidistant_ties_are_deterministic() {
        let d = DistanceMatrix::from_dense(
            labels(3),
            vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]],
        );
        let dg = single_linkage_dendrogram(&d).unwrap();
        assert_eq!(
            dg.edges,
            vec![
                TreeEdge { a: 0, b: 1, distance: 1.0 },
                TreeEdge { a: 2, b: 3, distance: 1.0 }
            ]
        );
        let t = minimum_spanning_tree(&d).unwrap();
        let pairs: Vec<(usize, usize)> = t.edges.iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn too_small() {
        let d = DistanceMatrix::from_dense(labels(1), vec![vec![0.0]]);
        assert!(minimum_spanning_tree(&d).is_err());
        assert!(single_linkage_dendrogram(&d).is_err());
    }
}
