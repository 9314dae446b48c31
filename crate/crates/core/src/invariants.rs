//! Distance-based invariants: distance vectors, transmissions, the Wiener
//! index, the k-sequence and bad-vertex scores.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, bfs_row, is_two_connected, Graph, UNREACHABLE};

/// Counts of vertices at each distance `1..=eccentricity` from a base
/// vertex. Coordinates past the stored length are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistanceVector {
    counts: Vec<u32>,
    order: usize,
}

impl DistanceVector {
    pub fn new(counts: Vec<u32>, order: usize) -> Self {
        DistanceVector { counts, order }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Order of the ambient graph.
    pub fn order(&self) -> usize {
        self.order
    }

    /// 1-based coordinate; zero beyond the stored length.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.counts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Indices (1-based) of the coordinates holding more than two vertices.
    fn heavy_coordinates(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 2)
            .map(|(i, _)| i + 1)
    }
}

fn vector_from_row(row: &[u8], order: usize) -> Result<DistanceVector> {
    let mut counts: Vec<u32> = Vec::new();
    for &d in row {
        if d == UNREACHABLE {
            return Err(Error::Disconnected);
        }
        if d == 0 {
            continue;
        }
        let i = d as usize;
        if counts.len() < i {
            counts.resize(i, 0);
        }
        counts[i - 1] += 1;
    }
    Ok(DistanceVector { counts, order })
}

pub fn distance_vector(g: &Graph, v: usize) -> Result<DistanceVector> {
    let row = crate::graph::bfs_distances(g, v)?;
    vector_from_row(&row, g.order())
}

/// All distance vectors of a connected graph, indexed by vertex.
pub fn distance_vectors(g: &Graph) -> Result<Vec<DistanceVector>> {
    let n = g.order();
    let mut row = vec![0u8; n];
    (0..n)
        .map(|v| {
            bfs_row(g.rows(), v, &mut row);
            vector_from_row(&row, n)
        })
        .collect()
}

/// `sum_i i * omega_i`.
pub fn angle_value(omega: &DistanceVector) -> u64 {
    angle_of(&omega.counts)
}

pub fn angle_of(counts: &[u32]) -> u64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u64 + 1) * c as u64)
        .sum()
}

/// Sum of distances from `v` to all other vertices.
pub fn transmission(g: &Graph, v: usize) -> Result<u64> {
    let row = crate::graph::bfs_distances(g, v)?;
    row_total(&row)
}

fn row_total(row: &[u8]) -> Result<u64> {
    row.iter().try_fold(0u64, |acc, &d| {
        if d == UNREACHABLE {
            Err(Error::Disconnected)
        } else {
            Ok(acc + d as u64)
        }
    })
}

pub fn transmissions(g: &Graph) -> Result<Vec<u64>> {
    let n = g.order();
    let mut row = vec![0u8; n];
    (0..n)
        .map(|v| {
            bfs_row(g.rows(), v, &mut row);
            row_total(&row)
        })
        .collect()
}

/// Wiener index: half the sum of all transmissions.
pub fn wiener(g: &Graph) -> Result<u64> {
    let total: u64 = transmissions(g)?.iter().sum();
    debug_assert!(total.is_multiple_of(2));
    Ok(total / 2)
}

/// Wiener index as a sum over unordered pairs of the distance matrix.
pub fn wiener_by_pairs(g: &Graph) -> Result<u64> {
    let d = all_pairs_distances(g);
    let n = g.order();
    let mut total = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            total += d.get(u, v).ok_or(Error::Disconnected)? as u64;
        }
    }
    Ok(total)
}

/// Wiener index of a graph given as an edge list, for orders beyond the
/// dense representation. Plain queue-based BFS over adjacency lists.
pub fn wiener_of_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<u64> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                order: n,
            });
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut total = 0u64;
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::with_capacity(n);
    for s in 0..n {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.push_back(s);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    total += dist[w] as u64;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(Error::Disconnected);
        }
    }
    Ok(total / 2)
}

/// The distance vector of a vertex of the cycle `C_n`.
pub fn two_vector(n: usize) -> Result<DistanceVector> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!(
            "2_n needs n >= 3, got {n}"
        )));
    }
    let counts = if n.is_multiple_of(2) {
        let mut c = vec![2; n / 2];
        c[n / 2 - 1] = 1;
        c
    } else {
        vec![2; (n - 1) / 2]
    };
    Ok(DistanceVector { counts, order: n })
}

fn k_from_vector(omega: &DistanceVector) -> usize {
    omega.heavy_coordinates().next().unwrap_or(omega.order / 2)
}

/// First coordinate of the distance vector exceeding 2, or `floor(n/2)`.
pub fn k_of_vertex(g: &Graph, v: usize) -> Result<usize> {
    Ok(k_from_vector(&distance_vector(g, v)?))
}

/// The values `k(v)` of a graph in non-decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KSequence {
    values: Vec<usize>,
}

impl KSequence {
    pub fn from_values(mut values: Vec<usize>) -> Self {
        values.sort_unstable();
        KSequence { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }
}

pub fn k_sequence(g: &Graph) -> Result<KSequence> {
    Ok(k_sequence_of(&distance_vectors(g)?))
}

pub fn k_sequence_of(vectors: &[DistanceVector]) -> KSequence {
    KSequence::from_values(vectors.iter().map(k_from_vector).collect())
}

/// Outcome of a coordinatewise comparison of `a` against `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Equal,
    /// `a <= b` everywhere with at least one strict coordinate.
    Below,
    /// `b <= a` everywhere with at least one strict coordinate.
    Above,
    Incomparable,
}

impl Dominance {
    /// `a ≼ b`.
    pub fn is_weakly_below(self) -> bool {
        matches!(self, Dominance::Equal | Dominance::Below)
    }
}

/// Coordinatewise comparison of equal-length sequences.
pub fn compare_coordinates<T: Ord>(a: &[T], b: &[T]) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (mut below, mut above) = (false, false);
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (below, above) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Below,
        (false, true) => Dominance::Above,
        (true, true) => Dominance::Incomparable,
    })
}

/// Dominance of two k-sequences of graphs of the same order.
pub fn dominates(a: &KSequence, b: &KSequence) -> Result<Dominance> {
    compare_coordinates(&a.values, &b.values)
}

/// Dominance of two distance vectors, the shorter one padded with zeros.
pub fn dominates_vectors(a: &DistanceVector, b: &DistanceVector) -> Dominance {
    let len = a.len().max(b.len());
    let pad = |v: &DistanceVector| (1..=len).map(|i| v.get(i)).collect::<Vec<_>>();
    compare_coordinates(&pad(a), &pad(b)).expect("padded to a common length")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadVertexRecord {
    pub vertex: usize,
    /// First coordinate holding at least three vertices.
    pub k: usize,
    /// Second such coordinate.
    pub k_prime: usize,
}

pub fn bad_vertices(g: &Graph) -> Result<Vec<BadVertexRecord>> {
    Ok(bad_vertices_of(&distance_vectors(g)?))
}

pub fn bad_vertices_of(vectors: &[DistanceVector]) -> Vec<BadVertexRecord> {
    vectors
        .iter()
        .enumerate()
        .filter_map(|(vertex, omega)| {
            let mut heavy = omega.heavy_coordinates();
            let k = heavy.next()?;
            let k_prime = heavy.next()?;
            Some(BadVertexRecord { vertex, k, k_prime })
        })
        .collect()
}

/// `b(G)` together with whether the input was 2-connected. Terms may be
/// negative when it was not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BValue {
    pub value: i64,
    pub two_connected: bool,
}

pub fn b_value(g: &Graph) -> Result<BValue> {
    let bad = bad_vertices(g)?;
    Ok(BValue {
        value: b_sum(g.order(), &bad),
        two_connected: is_two_connected(g),
    })
}

pub fn b_sum(n: usize, bad: &[BadVertexRecord]) -> i64 {
    let cap = ((n - 1) / 2) as i64;
    bad.iter().map(|r| cap - r.k_prime as i64).sum()
}

/// Everything the verification claims need about one graph, from a single
/// BFS sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub vectors: Vec<DistanceVector>,
    pub transmissions: Vec<u64>,
    pub wiener: u64,
}

impl DistanceProfile {
    pub fn new(g: &Graph) -> Result<Self> {
        let vectors = distance_vectors(g)?;
        let transmissions: Vec<u64> = vectors.iter().map(angle_value).collect();
        let wiener = transmissions.iter().sum::<u64>() / 2;
        Ok(DistanceProfile {
            vectors,
            transmissions,
            wiener,
        })
    }

    pub fn k_sequence(&self) -> KSequence {
        k_sequence_of(&self.vectors)
    }

    pub fn bad_vertices(&self) -> Vec<BadVertexRecord> {
        bad_vertices_of(&self.vectors)
    }

    pub fn b(&self) -> i64 {
        let n = self.vectors.first().map_or(1, |v| v.order);
        b_sum(n, &self.bad_vertices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    // hubs 0, 1; paths 0-2-1, 0-3-1, 0-4-5-1
    fn h622() -> Graph {
        Graph::new(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)]).unwrap()
    }

    #[test]
    fn distance_vector_examples() {
        for v in 0..6 {
            assert_eq!(distance_vector(&cycle(6), v).unwrap().counts(), &[2, 2, 1]);
        }
        assert_eq!(distance_vector(&k4(), 0).unwrap().counts(), &[3]);
        assert_eq!(distance_vector(&h622(), 0).unwrap().counts(), &[3, 2]);
        assert_eq!(distance_vector(&h622(), 1).unwrap().counts(), &[3, 2]);
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(distance_vector(&disconnected, 0), Err(Error::Disconnected));
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angle_of(&[2, 2, 1]), 9);
        assert_eq!(angle_of(&[3]), 3);
        assert_eq!(angle_of(&[2, 2, 2]), 12);
    }

    #[test]
    fn transmission_and_wiener_examples() {
        assert_eq!(transmission(&cycle(6), 0).unwrap(), 9);
        assert_eq!(transmission(&cycle(7), 3).unwrap(), 12);
        assert_eq!(transmission(&k4(), 1).unwrap(), 3);
        assert_eq!(wiener(&cycle(6)).unwrap(), 27);
        assert_eq!(wiener(&h622()).unwrap(), 23);
        assert_eq!(wiener(&k4()).unwrap(), 6);
        assert_eq!(wiener(&cycle(7)).unwrap(), 42);
        assert_eq!(wiener_by_pairs(&h622()).unwrap(), 23);
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(wiener(&disconnected), Err(Error::Disconnected));
        assert_eq!(wiener_by_pairs(&disconnected), Err(Error::Disconnected));
    }

    #[test]
    fn edge_list_wiener_matches_dense() {
        let g = h622();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(wiener_of_edge_list(6, &edges).unwrap(), 23);
        assert_eq!(wiener_of_edge_list(3, &[(0, 1)]), Err(Error::Disconnected));
    }

    #[test]
    fn two_vector_examples() {
        assert_eq!(two_vector(6).unwrap().counts(), &[2, 2, 1]);
        assert_eq!(two_vector(7).unwrap().counts(), &[2, 2, 2]);
        assert!(two_vector(2).is_err());
        for n in 3..=50 {
            assert_eq!(
                angle_value(&two_vector(n).unwrap()),
                (n * n / 4) as u64,
                "n = {n}"
            );
            assert_eq!(
                distance_vector(&cycle(n), 0).unwrap(),
                two_vector(n).unwrap()
            );
        }
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_of_vertex(&cycle(7), 2).unwrap(), 3);
        assert_eq!(k_of_vertex(&k4(), 0).unwrap(), 1);
        assert_eq!(k_of_vertex(&h622(), 0).unwrap(), 1);
        for n in 3..=12 {
            assert_eq!(
                k_sequence(&cycle(n)).unwrap().values(),
                vec![n / 2; n].as_slice()
            );
        }
    }

    #[test]
    fn dominance_examples() {
        use Dominance::*;
        assert_eq!(compare_coordinates(&[1, 1, 2], &[1, 2, 2]).unwrap(), Below);
        assert_eq!(compare_coordinates(&[1, 2], &[2, 1]).unwrap(), Incomparable);
        assert_eq!(compare_coordinates(&[1, 2], &[1, 2]).unwrap(), Equal);
        assert_eq!(compare_coordinates(&[3, 2], &[1, 2]).unwrap(), Above);
        assert_eq!(
            compare_coordinates(&[1], &[1, 2]),
            Err(Error::LengthMismatch(1, 2))
        );
        let a = DistanceVector::new(vec![3, 2], 6);
        let b = DistanceVector::new(vec![3, 2, 1], 6);
        assert_eq!(dominates_vectors(&a, &b), Below);
        assert!(Below.is_weakly_below() && Equal.is_weakly_below() && !Above.is_weakly_below());
    }

    #[test]
    fn bad_vertex_examples() {
        assert!(bad_vertices(&cycle(9)).unwrap().is_empty());
        assert_eq!(
            b_value(&cycle(9)).unwrap(),
            BValue {
                value: 0,
                two_connected: true
            }
        );
        // star K_{1,4}: leaves see (1, 3); centre sees (4)
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(bad_vertices(&star).unwrap().is_empty());
        let b = b_value(&star).unwrap();
        assert!(!b.two_connected);
    }

    #[test]
    fn profile_agrees_with_direct_calls() {
        let g = h622();
        let p = DistanceProfile::new(&g).unwrap();
        assert_eq!(p.wiener, wiener(&g).unwrap());
        assert_eq!(p.transmissions, transmissions(&g).unwrap());
        assert_eq!(p.k_sequence(), k_sequence(&g).unwrap());
        assert_eq!(p.b(), b_value(&g).unwrap().value);
    }
}
