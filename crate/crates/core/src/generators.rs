//! Seeded test graphs, named families and random supports.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::support::Support;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Vertex `i` joins up to `back_degree` random earlier vertices.
    Random3d,
    Path,
    Cycle,
    /// `n` vertices in total: a center and `n - 1` leaves.
    Star,
    Complete,
    /// Always 10 vertices; `n` is ignored.
    Petersen,
    /// A hub joined to every vertex of a cycle on `n - 1` vertices.
    Wheel,
    /// `n` disjoint copies of a K4 with one pendant vertex per K4 vertex.
    /// The first K4 vertex of each copy is a degree-4 pivot whose only
    /// neighbour of degree at most 3 is its pendant.
    SmallPivotGadget,
}

impl GraphKind {
    pub const ALL: [GraphKind; 8] = [
        GraphKind::Random3d,
        GraphKind::Path,
        GraphKind::Cycle,
        GraphKind::Star,
        GraphKind::Complete,
        GraphKind::Petersen,
        GraphKind::Wheel,
        GraphKind::SmallPivotGadget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Random3d => "random3d",
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Star => "star",
            GraphKind::Complete => "complete",
            GraphKind::Petersen => "petersen",
            GraphKind::Wheel => "wheel",
            GraphKind::SmallPivotGadget => "small-pivot-gadget",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GenError::BadSpec(format!("unknown graph kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub n: usize,
    pub seed: u64,
    /// Most edges a new vertex gets to earlier ones; only used by
    /// [`GraphKind::Random3d`], where it must be at most 3.
    pub back_degree: usize,
}

impl GenSpec {
    pub fn new(kind: GraphKind, n: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            seed,
            back_degree: 3,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    let bad = |m: String| Err(GenError::BadSpec(m));
    let edges: Vec<(Vertex, Vertex)> = match spec.kind {
        GraphKind::Random3d => {
            if spec.back_degree > 3 {
                return bad(format!("back degree {} exceeds 3", spec.back_degree));
            }
            return Ok(random3d(n, spec.seed, spec.back_degree));
        }
        GraphKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        GraphKind::Cycle => {
            if n < 3 {
                return bad(format!("a cycle needs 3 vertices, got {n}"));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        GraphKind::Star => (1..n).map(|i| (0, i)).collect(),
        GraphKind::Complete => (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
        GraphKind::Petersen => {
            let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            e.extend((0..5).map(|i| (i, i + 5)));
            e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            return Ok(Graph::new(10, &e).expect("petersen edges are valid"));
        }
        GraphKind::Wheel => {
            if n < 4 {
                return bad(format!("a wheel needs 4 vertices, got {n}"));
            }
            let rim = n - 1;
            let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
            e.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
            e
        }
        GraphKind::SmallPivotGadget => {
            if n == 0 {
                return bad("the gadget needs at least one copy".into());
            }
            let mut e = Vec::with_capacity(10 * n);
            for copy in 0..n {
                let b = 8 * copy;
                for i in 0..4 {
                    for j in i + 1..4 {
                        e.push((b + i, b + j));
                    }
                    e.push((b + i, b + 4 + i));
                }
            }
            return Ok(Graph::new(8 * n, &e).expect("gadget edges are valid"));
        }
    };
    Ok(Graph::new(n, &edges).expect("family edges are valid"))
}

fn random3d(n: usize, seed: u64, back_degree: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        let want = rng.random_range(0..=back_degree).min(i);
        let earlier: Vec<Vertex> = (0..i).collect();
        for &j in earlier.choose_multiple(&mut rng, want) {
            edges.push((j, i));
        }
    }
    Graph::new(n, &edges).expect("distinct earlier neighbours")
}

/// Greedy matching over the degree-2 vertices of `g`, visited in a seeded
/// random order, pairing each with the first later nonadjacent one.
pub fn random_support(g: &Graph, seed: u64, max_pairs: usize) -> Support {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands: Vec<Vertex> = g.vertices().filter(|&u| g.degree(u) == 2).collect();
    cands.shuffle(&mut rng);
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::new();
    for (i, &a) in cands.iter().enumerate() {
        if pairs.len() == max_pairs {
            break;
        }
        if used[a] {
            continue;
        }
        if let Some(&b) = cands[i + 1..].iter().find(|&&b| !used[b] && !g.has_edge(a, b)) {
            used[a] = true;
            used[b] = true;
            pairs.push((a, b));
        }
    }
    Support::new(pairs)
}

/// Smallest and largest vertex counts of the seeded corpus.
pub const CORPUS_MIN_N: usize = 7;
pub const CORPUS_MAX_N: usize = 300;

/// One graph of the seeded corpus.
#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub index: u64,
    /// Seed of the accepted `random3d` draw.
    pub seed: u64,
    pub graph: Graph,
    /// A maximal [`random_support`] of `graph`.
    pub support: Support,
}

/// Instance `index` of the corpus rooted at `master`: a `random3d` graph
/// with between `nmin` and `nmax` vertices, redrawn until its maximum
/// degree is at least 5, and a random support for it. The result depends
/// only on `(master, index)`.
pub fn corpus_instance(master: u64, index: u64, nmin: usize, nmax: usize) -> Result<CorpusInstance, GenError> {
    if nmin < CORPUS_MIN_N || nmin > nmax {
        return Err(GenError::BadSpec(format!(
            "corpus sizes {nmin}..={nmax} must satisfy {CORPUS_MIN_N} <= nmin <= nmax"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    let n = rng.random_range(nmin..=nmax);
    loop {
        let seed = rng.random::<u64>();
        let graph = random3d(n, seed, 3);
        if graph.max_degree() >= 5 {
            let support = random_support(&graph, rng.random(), usize::MAX);
            return Ok(CorpusInstance {
                index,
                seed,
                graph,
                support,
            });
        }
    }
}
