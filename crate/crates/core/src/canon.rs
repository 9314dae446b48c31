//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the unit partition to an
//! equitable partition, individualise each vertex of the first non-singleton
//! cell, refine again, and recurse until the partition is discrete. Each leaf
//! gives a relabelled graph; the canonical form is the largest of them
//! (rows compared lexicographically). Two leaves with the same relabelled
//! graph give an automorphism, and subtrees whose root lies in the orbit of an
//! already explored sibling under the automorphisms found so far (restricted
//! to those fixing the current prefix) are skipped. No other pruning is
//! performed, so the automorphisms collected generate the full group and
//! [`Labeling::orbits`] is exact.

use crate::error::{Error, Result};
use crate::graph::{permute_rows, Graph};
use crate::graph6::encode_rows;

/// Canonical graph6 string together with the relabelling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// graph6 of the canonically relabelled graph.
    pub string: String,
    /// `permutation[v]` is the canonical label of vertex `v`.
    pub permutation: Vec<usize>,
}

/// Full output of a canonical labelling run.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub permutation: Vec<usize>,
    pub canonical_rows: Vec<u64>,
    /// Automorphisms found during the search; they generate the whole group.
    pub generators: Vec<Vec<usize>>,
    /// Smallest vertex of each vertex's orbit under the automorphism group.
    pub orbits: Vec<usize>,
    pub leaves: usize,
}

impl Labeling {
    pub fn canonical_string(&self) -> String {
        encode_rows(&self.canonical_rows)
    }

    pub fn into_form(self) -> CanonicalForm {
        CanonicalForm {
            string: self.canonical_string(),
            permutation: self.permutation,
        }
    }
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    /// start position of the cell holding each vertex
    cell_of: Vec<usize>,
    /// end position (exclusive) of the cell starting at each position
    cell_end: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        cell_end[0] = n;
        Partition {
            lab: (0..n).collect(),
            cell_of: vec![0; n],
            cell_end,
            cells: 1,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.cell_end[s];
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    fn cell_mask(&self, start: usize) -> u64 {
        self.lab[start..self.cell_end[start]]
            .iter()
            .fold(0u64, |m, &v| m | 1 << v)
    }

    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let e = self.cell_end[s];
        let at = s + self.lab[s..e]
            .iter()
            .position(|&x| x == v)
            .expect("vertex in its cell");
        self.lab.swap(s, at);
        self.cell_end[s] = s + 1;
        self.cell_end[s + 1] = e;
        for &u in &self.lab[s + 1..e] {
            self.cell_of[u] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current
    /// one, splitting against the queued cells first.
    fn refine(&mut self, rows: &[u64], mut queue: Vec<usize>) {
        let n = self.lab.len();
        let mut queued = [false; 64];
        for &s in &queue {
            queued[s] = true;
        }
        let mut head = 0;
        let mut keyed: Vec<(u32, usize)> = Vec::with_capacity(n);
        while head < queue.len() && !self.is_discrete() {
            let w = queue[head];
            head += 1;
            queued[w] = false;
            let wmask = self.cell_mask(w);
            let mut x = 0;
            while x < n {
                let end = self.cell_end[x];
                if end - x > 1 {
                    keyed.clear();
                    keyed.extend(
                        self.lab[x..end]
                            .iter()
                            .map(|&v| ((rows[v] & wmask).count_ones(), v)),
                    );
                    let k0 = keyed[0].0;
                    if keyed.iter().any(|&(k, _)| k != k0) {
                        keyed.sort_unstable_by_key(|&(k, _)| k);
                        let mut start = x;
                        for (i, &(k, v)) in keyed.iter().enumerate() {
                            let pos = x + i;
                            if i > 0 && k != keyed[i - 1].0 {
                                self.cell_end[start] = pos;
                                start = pos;
                                self.cells += 1;
                            }
                            self.lab[pos] = v;
                            self.cell_of[v] = start;
                        }
                        self.cell_end[start] = end;
                        let mut f = x;
                        while f < end {
                            if !queued[f] {
                                queued[f] = true;
                                queue.push(f);
                            }
                            f = self.cell_end[f];
                        }
                    }
                }
                x = end;
            }
        }
    }
}

struct Leaf {
    lab: Vec<usize>,
    perm: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    leaves: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
}

fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            union(&mut parent, v, w);
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl Search<'_> {
    fn visit(&mut self, part: Partition, prefix: &mut Vec<usize>) {
        let Some(s) = part.first_nonsingleton() else {
            self.leaf(&part);
            return;
        };
        let n = part.lab.len();
        let mut cell = part.lab[s..part.cell_end[s]].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_autos = usize::MAX;
        let mut orbit: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() && !self.autos.is_empty() {
                if orbit_autos != self.autos.len() {
                    let fixing = self
                        .autos
                        .iter()
                        .filter(|g| prefix.iter().all(|&p| g[p] == p));
                    orbit = orbits_of(n, fixing);
                    orbit_autos = self.autos.len();
                }
                if explored.iter().any(|&e| orbit[e] == orbit[v]) {
                    continue;
                }
            }
            let mut child = part.clone();
            let at = child.individualize(v);
            child.refine(self.rows, vec![at]);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, part: &Partition) {
        self.leaves += 1;
        let n = part.lab.len();
        let mut perm = vec![0; n];
        for (pos, &v) in part.lab.iter().enumerate() {
            perm[v] = pos;
        }
        let rows = permute_rows(self.rows, &perm);
        let leaf = Leaf {
            lab: part.lab.clone(),
            perm,
            rows,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                perm: leaf.perm.clone(),
                rows: leaf.rows.clone(),
            });
            self.first = Some(leaf);
            return;
        };
        let best = self.best.as_ref().expect("best set with first");
        let reference = if leaf.rows == first.rows {
            Some(first)
        } else if leaf.rows == best.rows {
            Some(best)
        } else {
            None
        };
        match reference {
            Some(r) => {
                let auto: Vec<usize> = leaf.perm.iter().map(|&pos| r.lab[pos]).collect();
                if auto.iter().enumerate().any(|(v, &w)| v != w) {
                    self.autos.push(auto);
                }
            }
            None => {
                if leaf.rows > best.rows {
                    self.best = Some(leaf);
                }
            }
        }
    }
}

pub(crate) fn label_rows(rows: &[u64]) -> Labeling {
    let n = rows.len();
    let mut part = Partition::unit(n);
    part.refine(rows, vec![0]);
    let mut search = Search {
        rows,
        first: None,
        best: None,
        autos: Vec::new(),
        leaves: 0,
    };
    search.visit(part, &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    let orbits = orbits_of(n, search.autos.iter());
    Labeling {
        permutation: best.perm,
        canonical_rows: best.rows,
        generators: search.autos,
        orbits,
        leaves: search.leaves,
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    label_rows(g.rows())
}

/// Isomorphism-invariant graph6 string of `g` and the relabelling producing it.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).into_form()
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    Graph::from_rows_unchecked(canonical_labeling(g).canonical_rows)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_labeling(a).canonical_rows == canonical_labeling(b).canonical_rows
}

/// Orbits of the automorphism group: smallest vertex of each vertex's orbit.
pub fn automorphism_orbits(g: &Graph) -> Vec<usize> {
    canonical_labeling(g).orbits
}

/// Largest order accepted by the exhaustive oracles below.
pub const BRUTE_FORCE_MAX_ORDER: usize = 8;

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Lexicographically smallest graph6 string over all `n!` relabellings.
///
/// Independent of the refinement search; used to validate it.
pub fn brute_force_canonical(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "brute-force canonical form limited to n <= {BRUTE_FORCE_MAX_ORDER}"
        )));
    }
    let mut best: Option<String> = None;
    for_each_permutation(n, |perm| {
        let s = encode_rows(&permute_rows(g.rows(), perm));
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    });
    Ok(best.expect("at least one permutation"))
}

/// All automorphisms by exhaustive search over permutations.
pub fn brute_force_automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "brute-force automorphisms limited to n <= {BRUTE_FORCE_MAX_ORDER}"
        )));
    }
    let mut out = Vec::new();
    for_each_permutation(n, |perm| {
        if permute_rows(g.rows(), perm) == g.rows() {
            out.push(perm.to_vec());
        }
    });
    Ok(out)
}
