//! The Grassmann graph Γ(n,k) over GF(q) and its induced subgraphs Δ_t(n,k).
//!
//! Vertices are enumerated exhaustively in RREF form. Distances come from
//! breadth-first search; the metric identity `d(X,Y) = k - dim(X ∩ Y)` is
//! checked against those searches rather than assumed.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes;
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{self, Matrix, ProjectivePoints, Subspace};

/// Default cap on the number of enumerated subspaces.
pub const DEFAULT_MAX_VERTICES: u64 = 1 << 21;
/// Default cap on the vertex count for all-pairs work (and cached adjacency).
pub const DEFAULT_MAX_PAIRS: u64 = 1 << 13;
/// Maximum number of violating pairs kept by [`isometry_check`].
pub const MAX_WITNESSES: usize = 100;

const UNREACHED: u32 = u32::MAX;

/// Every `k`-subspace of `F_q^n` in lexicographic order of RREF entries.
pub struct SubspaceIndex {
    field: Field,
    n: usize,
    k: usize,
    table: Vec<Subspace>,
    lookup: HashMap<u64, u32>,
}

impl std::fmt::Debug for SubspaceIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubspaceIndex")
            .field("q", &self.field.q())
            .field("n", &self.n)
            .field("k", &self.k)
            .field("len", &self.table.len())
            .finish()
    }
}

/// Packs an RREF basis into a `u64`: pivot mask in the low `n` bits, free
/// entries in mixed radix `q` above it.
fn pack_key(q: u64, s: &Subspace) -> u64 {
    let n = s.ambient();
    let pivots = s.pivots();
    let mut mask = 0u64;
    for &p in &pivots {
        mask |= 1 << p;
    }
    let mut value = 0u64;
    let basis = s.basis();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if mask & (1 << c) == 0 {
                value = value * q + basis.get(r, c).value() as u64;
            }
        }
    }
    (value << n) | mask
}

impl SubspaceIndex {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.table[i]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.table
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        if s.ambient() != self.n || s.dim() != self.k {
            return None;
        }
        self.lookup
            .get(&pack_key(self.field.q() as u64, s))
            .map(|&i| i as usize)
    }
}

/// All `k`-subspaces of `F_q^n`, generated pivot pattern by pivot pattern.
pub fn enumerate_subspaces(field: &Field, n: usize, k: usize, cap: u64) -> Result<SubspaceIndex> {
    if k > n || n > 24 {
        return Err(Error::DimensionMismatch(format!("k = {k}, n = {n}")));
    }
    let q = field.q() as u64;
    let count = linalg::gaussian_binomial(n, k, field.q());
    if count > BigUint::from(cap) {
        return Err(Error::EnumerationTooLarge {
            count: count.to_string(),
            cap,
        });
    }
    // the largest cell has q^{k(n-k)} members; its keys must fit above the mask
    let key_space = BigUint::from(q).pow((k * (n - k)) as u32) << n;
    if key_space > BigUint::from(u64::MAX) {
        return Err(Error::EnumerationTooLarge {
            count: count.to_string(),
            cap,
        });
    }
    let mut table = Vec::with_capacity(count.to_usize().unwrap_or(0));
    for pivots in Combinations::new(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut base = Matrix::zeros(k, n);
        for (r, &p) in pivots.iter().enumerate() {
            base.set(r, p, FieldElem::ONE);
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut m = base.clone();
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, FieldElem::from_raw(d));
            }
            table.push(Subspace::from_rref_unchecked(m));
            let mut i = free.len();
            let mut carry = true;
            while carry && i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < q as u32 {
                    carry = false;
                } else {
                    digits[i] = 0;
                }
            }
            if carry {
                break;
            }
        }
    }
    table.sort();
    let lookup = table
        .iter()
        .enumerate()
        .map(|(i, s)| (pack_key(q, s), i as u32))
        .collect::<HashMap<_, _>>();
    debug_assert_eq!(lookup.len(), table.len());
    Ok(SubspaceIndex {
        field: field.clone(),
        n,
        k,
        table,
        lookup,
    })
}

/// `d(X,Y) = k - dim(X ∩ Y)`.
pub fn grassmann_distance(field: &Field, x: &Subspace, y: &Subspace) -> Result<usize> {
    if x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch(x.ambient(), y.ambient()));
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of dimension {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(x.dim() - linalg::intersection_dim(field, x, y))
}

/// Whether the graph is all of Γ(n,k) or the subgraph induced by `C_t(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GraphMode {
    Full,
    Delta { t: usize },
}

/// Γ(n,k) or Δ_t(n,k). Vertices carry local ids `0..vertex_count()`; the
/// corresponding index positions are available through [`global`](Self::global).
pub struct GrassmannGraph {
    index: Arc<SubspaceIndex>,
    mode: GraphMode,
    members: Vec<u32>,
    local: Vec<u32>,
    adjacency: Option<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for GrassmannGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrassmannGraph")
            .field("index", &self.index)
            .field("mode", &self.mode)
            .field("vertices", &self.members.len())
            .field("cached", &self.adjacency.is_some())
            .finish()
    }
}

impl GrassmannGraph {
    /// Γ(n,k) on the whole index.
    pub fn gamma(index: Arc<SubspaceIndex>, cache_limit: u64) -> Self {
        let members = (0..index.len() as u32).collect();
        Self::with_members(index, GraphMode::Full, members, cache_limit)
    }

    fn with_members(
        index: Arc<SubspaceIndex>,
        mode: GraphMode,
        members: Vec<u32>,
        cache_limit: u64,
    ) -> Self {
        let mut local = vec![UNREACHED; index.len()];
        for (i, &g) in members.iter().enumerate() {
            local[g as usize] = i as u32;
        }
        let mut g = GrassmannGraph {
            index,
            mode,
            members,
            local,
            adjacency: None,
        };
        if (g.members.len() as u64) <= cache_limit {
            let adj = (0..g.members.len() as u32)
                .into_par_iter()
                .map(|v| g.scan_neighbors(v))
                .collect();
            g.adjacency = Some(adj);
        }
        g
    }

    pub fn index(&self) -> &Arc<SubspaceIndex> {
        &self.index
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index position of a local vertex.
    pub fn global(&self, v: u32) -> usize {
        self.members[v as usize] as usize
    }

    /// Local vertex of an index position, if it belongs to the graph.
    pub fn local(&self, global: usize) -> Option<u32> {
        self.local.get(global).copied().filter(|&l| l != UNREACHED)
    }

    pub fn subspace(&self, v: u32) -> &Subspace {
        self.index.get(self.global(v))
    }

    pub fn vertex_of(&self, s: &Subspace) -> Option<u32> {
        self.index.position(s).and_then(|g| self.local(g))
    }

    pub fn has_cached_adjacency(&self) -> bool {
        self.adjacency.is_some()
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        match &self.adjacency {
            Some(adj) => adj[v as usize].clone(),
            None => self.scan_neighbors(v),
        }
    }

    /// Neighbours found by walking every `(k-1)`-subspace `W` of `X` and every
    /// point of `V/W` outside `X/W`. Sorted.
    pub fn scan_neighbors(&self, v: u32) -> Vec<u32> {
        let field = self.index.field();
        let (n, k) = (self.index.n, self.index.k);
        let x = self.subspace(v);
        let mut out = Vec::new();
        if k == 0 || k == n {
            return out;
        }
        let full = Subspace::full(n);
        let hyperplanes = linalg::hyperplanes_containing(field, x, &Subspace::zero(n))
            .expect("the zero space has codimension k >= 1 in x");
        for w in hyperplanes {
            let comp =
                linalg::complement_basis(field, &full, &w).expect("w lies in the full space");
            let mut gens = w.basis_vectors();
            gens.push(Vec::new());
            for c in ProjectivePoints::new(field, comp.len()) {
                gens[k - 1] = linalg::combine(field, &c, &comp, n);
                if x.contains_vector(field, &gens[k - 1]) {
                    continue;
                }
                let y = Subspace::span(field, n, &gens).expect("ambient length");
                if let Some(l) = self.vertex_of(&y) {
                    out.push(l);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Neighbours by testing `dim(X ∩ Y) = k - 1` against every vertex.
    pub fn pairwise_neighbors(&self, v: u32) -> Vec<u32> {
        let field = self.index.field();
        let k = self.index.k;
        let x = self.subspace(v);
        (0..self.vertex_count() as u32)
            .filter(|&u| u != v && linalg::intersection_dim(field, x, self.subspace(u)) + 1 == k)
            .collect()
    }
}

/// Δ_t(n,k): the subgraph induced by the codes with `d⊥ >= t + 1`.
pub fn build_delta(
    index: Arc<SubspaceIndex>,
    t: usize,
    cache_limit: u64,
) -> Result<GrassmannGraph> {
    let k = index.k();
    if t < 1 || t > k {
        return Err(Error::BadT { t, n: k });
    }
    let field = index.field().clone();
    let mask: Vec<bool> = index
        .subspaces()
        .par_iter()
        .map(|s| codes::columns_independent(&field, s.basis(), t))
        .collect();
    let members = mask
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i as u32)
        .collect();
    Ok(GrassmannGraph::with_members(
        index,
        GraphMode::Delta { t },
        members,
        cache_limit,
    ))
}

fn bfs_lists(g: &GrassmannGraph, source: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    dist[source as usize] = 0;
    let mut frontier = vec![source];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            let mut visit = |w: u32| {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = d;
                    next.push(w);
                }
            };
            match &g.adjacency {
                Some(adj) => adj[u as usize].iter().copied().for_each(&mut visit),
                None => g.scan_neighbors(u).into_iter().for_each(&mut visit),
            }
        }
        frontier = next;
    }
    dist
}

/// Adjacency as bit rows for dense graphs.
struct BitAdjacency {
    words: usize,
    bits: Vec<u64>,
}

impl BitAdjacency {
    fn new(adj: &[Vec<u32>]) -> Self {
        let words = adj.len().div_ceil(64);
        let mut bits = vec![0u64; words * adj.len()];
        for (v, nb) in adj.iter().enumerate() {
            for &u in nb {
                bits[v * words + (u as usize >> 6)] |= 1 << (u & 63);
            }
        }
        BitAdjacency { words, bits }
    }

    fn bfs(&self, source: u32, vertices: usize) -> Vec<u32> {
        let w = self.words;
        let mut dist = vec![UNREACHED; vertices];
        let mut visited = vec![0u64; w];
        let mut frontier = vec![0u64; w];
        let mut next = vec![0u64; w];
        visited[source as usize >> 6] |= 1 << (source & 63);
        frontier[source as usize >> 6] |= 1 << (source & 63);
        dist[source as usize] = 0;
        let mut d = 0;
        loop {
            d += 1;
            next.iter_mut().for_each(|x| *x = 0);
            for (wi, &word) in frontier.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    let u = wi * 64 + b;
                    let row = &self.bits[u * w..(u + 1) * w];
                    for (nx, &r) in next.iter_mut().zip(row) {
                        *nx |= r;
                    }
                }
            }
            let mut any = false;
            for i in 0..w {
                next[i] &= !visited[i];
                visited[i] |= next[i];
                any |= next[i] != 0;
                let mut word = next[i];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    dist[i * 64 + b] = d;
                }
            }
            if !any {
                break;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        dist
    }
}

/// Per-source BFS engine choosing bit rows or neighbour lists by density.
struct Searcher<'a> {
    g: &'a GrassmannGraph,
    bits: Option<BitAdjacency>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a GrassmannGraph) -> Self {
        let bits = g.adjacency.as_ref().and_then(|adj| {
            let edges: usize = adj.iter().map(Vec::len).sum();
            let words = adj.len().div_ceil(64);
            // bit rows win once the average degree exceeds the row width
            (edges > words * adj.len()).then(|| BitAdjacency::new(adj))
        });
        Searcher { g, bits }
    }

    fn bfs(&self, source: u32) -> Vec<u32> {
        match &self.bits {
            Some(b) => b.bfs(source, self.g.vertex_count()),
            None => bfs_lists(self.g, source),
        }
    }
}

/// Exact shortest-path distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &GrassmannGraph, source: u32) -> Result<Vec<Option<u32>>> {
    if source as usize >= g.vertex_count() {
        return Err(Error::VertexAbsent);
    }
    Ok(bfs_lists(g, source)
        .into_iter()
        .map(|d| (d != UNREACHED).then_some(d))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub connected: bool,
    /// `None` when the graph is disconnected (infinite diameter) or empty.
    pub diameter: Option<u32>,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
    pub component_diameters: Vec<u32>,
}

fn components(g: &GrassmannGraph) -> Vec<u32> {
    let mut comp = vec![UNREACHED; g.vertex_count()];
    let mut next_id = 0;
    for s in 0..g.vertex_count() as u32 {
        if comp[s as usize] != UNREACHED {
            continue;
        }
        comp[s as usize] = next_id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if comp[w as usize] == UNREACHED {
                    comp[w as usize] = next_id;
                    stack.push(w);
                }
            }
        }
        next_id += 1;
    }
    comp
}

/// Components only, from a single traversal; no diameters are computed.
pub fn connectivity_only(g: &GrassmannGraph) -> Connectivity {
    let comp = components(g);
    let count = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c as usize] += 1;
    }
    Connectivity {
        connected: count <= 1,
        diameter: None,
        component_count: count,
        component_sizes: sizes,
        component_diameters: Vec::new(),
    }
}

/// Connectivity and exact diameters by BFS from every vertex.
pub fn diameter_and_connectivity(g: &GrassmannGraph) -> Connectivity {
    analyze(g, false).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Index positions (lexicographic RREF order) of the two subspaces.
    pub x: usize,
    pub y: usize,
    /// Distance inside the graph; `None` if unreachable.
    pub d_delta: Option<u32>,
    /// `k - dim(X ∩ Y)`.
    pub d_gamma: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub isometric: bool,
    pub witnesses: Vec<Witness>,
    pub pairs_checked: u64,
}

/// Compares every BFS distance with `k - dim(X ∩ Y)`; keeps up to
/// [`MAX_WITNESSES`] violations, in source order.
pub fn isometry_check(g: &GrassmannGraph) -> IsometryReport {
    analyze(g, true).1.expect("isometry requested")
}

/// One pass of all-sources BFS producing connectivity data and, optionally,
/// the isometry comparison. Sources are processed in fixed-size chunks in
/// order; the isometry scan stops after the chunk that fills the witness list.
pub fn analyze(g: &GrassmannGraph, isometry: bool) -> (Connectivity, Option<IsometryReport>) {
    let v = g.vertex_count();
    let comp = components(g);
    let count = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c as usize] += 1;
    }
    let searcher = Searcher::new(g);
    let field = g.index.field();
    let k = g.index.k() as u32;
    let mut ecc = vec![0u32; v];
    let mut witnesses = Vec::new();
    let mut pairs = 0u64;
    let mut scan_isometry = isometry;
    const CHUNK: usize = 256;
    for start in (0..v).step_by(CHUNK) {
        let end = (start + CHUNK).min(v);
        let results: Vec<(u32, Vec<Witness>, u64)> = (start..end)
            .into_par_iter()
            .map(|s| {
                let dist = searcher.bfs(s as u32);
                let e = dist
                    .iter()
                    .filter(|&&d| d != UNREACHED)
                    .copied()
                    .max()
                    .unwrap_or(0);
                let mut found = Vec::new();
                let mut checked = 0;
                if scan_isometry {
                    let x = g.subspace(s as u32);
                    for (y, &d) in dist.iter().enumerate().skip(s + 1) {
                        let meet = linalg::intersection_dim(field, x, g.subspace(y as u32)) as u32;
                        checked += 1;
                        if d != k - meet && found.len() < MAX_WITNESSES {
                            found.push(Witness {
                                x: g.global(s as u32),
                                y: g.global(y as u32),
                                d_delta: (d != UNREACHED).then_some(d),
                                d_gamma: k - meet,
                            });
                        }
                    }
                }
                (e, found, checked)
            })
            .collect();
        for (i, (e, found, checked)) in results.into_iter().enumerate() {
            ecc[start + i] = e;
            pairs += checked;
            witnesses.extend(found);
        }
        if witnesses.len() >= MAX_WITNESSES {
            witnesses.truncate(MAX_WITNESSES);
            scan_isometry = false;
        }
    }
    let mut comp_diam = vec![0u32; count];
    for (s, &c) in comp.iter().enumerate() {
        comp_diam[c as usize] = comp_diam[c as usize].max(ecc[s]);
    }
    let connected = count <= 1;
    let conn = Connectivity {
        connected,
        diameter: if connected && count == 1 {
            Some(comp_diam[0])
        } else {
            None
        },
        component_count: count,
        component_sizes: sizes,
        component_diameters: comp_diam,
    };
    if g.mode == GraphMode::Full && count == 1 {
        let (n, k) = (g.index.n() as u32, g.index.k() as u32);
        assert_eq!(
            conn.diameter,
            Some(k.min(n - k)),
            "diam Γ(n,k) must be min(k, n-k)"
        );
    }
    let iso = isometry.then_some(IsometryReport {
        isometric: witnesses.is_empty(),
        witnesses,
        pairs_checked: pairs,
    });
    (conn, iso)
}
