//! Finite simplicial complexes on the vertex set `{1, ..., n}`.
//!
//! Only the layers up to `dim_cap` are materialized; everything above the cap
//! is unknown rather than absent. Stock complexes know their full face set,
//! so their cap is `n - 1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

/// Strictly increasing list of 1-based vertices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("simplex {0:?} is empty or not strictly increasing")]
    Malformed(Vec<usize>),
    #[error("face {face:?} of {simplex:?} is missing")]
    NotClosed { simplex: Simplex, face: Simplex },
    #[error("dimension {s} is beyond the materialized cap {cap}")]
    BeyondCap { s: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    dim_cap: usize,
    layers: Vec<BTreeSet<Simplex>>,
}

/// Built-in complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StockKind {
    Full(usize),
    SphereBoundary(usize),
    Rp2SixVertex,
    FromFacets(Vec<Simplex>),
}

/// The ten facets of the six-vertex real projective plane.
pub const RP2_FACETS: [[usize; 3]; 10] = [
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 5],
    [1, 3, 6],
    [1, 4, 6],
    [2, 3, 4],
    [2, 3, 6],
    [3, 4, 5],
    [4, 5, 6],
    [2, 5, 6],
];

/// The `(s+1)`-subsets of `{1..n}` that are not simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonSimplexLayer {
    pub s: usize,
    pub tuples: Vec<Simplex>,
}

/// All `k`-element subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Simplex> {
    (1..=n).combinations(k)
}

fn faces(simplex: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..simplex.len()).map(move |j| {
        let mut f = simplex.to_vec();
        f.remove(j);
        f
    })
}

impl SimplicialComplex {
    /// Validates vertex range, ordering and downward closure.
    pub fn from_layers(n_vertices: usize, dim_cap: usize, layers: Vec<BTreeSet<Simplex>>) -> Result<Self, ComplexError> {
        let mut layers = layers;
        if layers.len() > dim_cap + 1 {
            if let Some(s) = (dim_cap + 1..layers.len()).find(|&s| !layers[s].is_empty()) {
                return Err(ComplexError::BeyondCap { s, cap: dim_cap });
            }
        }
        layers.resize(dim_cap + 1, BTreeSet::new());
        for (s, layer) in layers.iter().enumerate() {
            for simplex in layer {
                if simplex.len() != s + 1 || simplex.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ComplexError::Malformed(simplex.clone()));
                }
                if let Some(&v) = simplex.iter().find(|&&v| v == 0 || v > n_vertices) {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, n: n_vertices });
                }
                if s > 0 {
                    for face in faces(simplex) {
                        if !layers[s - 1].contains(&face) {
                            return Err(ComplexError::NotClosed {
                                simplex: simplex.clone(),
                                face,
                            });
                        }
                    }
                }
            }
        }
        Ok(Self {
            n_vertices,
            dim_cap,
            layers,
        })
    }

    /// Face closure of `facets`, truncated at `dim_cap`.
    pub fn from_facets(n_vertices: usize, dim_cap: usize, facets: &[Simplex]) -> Result<Self, ComplexError> {
        let mut layers = vec![BTreeSet::new(); dim_cap + 1];
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::Malformed(facet.clone()));
            }
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n_vertices) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, n: n_vertices });
            }
            for k in 1..=f.len().min(dim_cap + 1) {
                for face in f.iter().copied().combinations(k) {
                    layers[k - 1].insert(face);
                }
            }
        }
        Ok(Self {
            n_vertices,
            dim_cap,
            layers,
        })
    }

    pub fn stock(kind: &StockKind) -> Result<Self, ComplexError> {
        match kind {
            StockKind::Full(n) => Ok(Self::full(*n)),
            StockKind::SphereBoundary(n) => Ok(Self::sphere_boundary(*n)),
            StockKind::Rp2SixVertex => Ok(Self::rp2_six_vertex()),
            StockKind::FromFacets(facets) => {
                let n = facets.iter().flatten().copied().max().unwrap_or(0);
                Self::from_facets(n, n.saturating_sub(1), facets)
            }
        }
    }

    /// The full simplex on `{1..n}`.
    pub fn full(n: usize) -> Self {
        let layers = (0..n).map(|s| subsets(n, s + 1).collect()).collect();
        Self {
            n_vertices: n,
            dim_cap: n.saturating_sub(1),
            layers,
        }
    }

    /// All proper faces of the full simplex on `{1..n}`: an `(n-2)`-sphere.
    pub fn sphere_boundary(n: usize) -> Self {
        let mut c = Self::full(n);
        if n > 0 {
            c.layers[n - 1].clear();
        }
        c
    }

    pub fn rp2_six_vertex() -> Self {
        let facets: Vec<Simplex> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
        Self::from_facets(6, 5, &facets).expect("valid facets")
    }

    /// Complex with no simplices at all.
    pub fn empty(n_vertices: usize, dim_cap: usize) -> Self {
        Self {
            n_vertices,
            dim_cap,
            layers: vec![BTreeSet::new(); dim_cap + 1],
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Simplices of dimension `s`; fails above the cap.
    pub fn layer(&self, s: usize) -> Result<&BTreeSet<Simplex>, ComplexError> {
        self.layers
            .get(s)
            .ok_or(ComplexError::BeyondCap { s, cap: self.dim_cap })
    }

    pub fn layers(&self) -> &[BTreeSet<Simplex>] {
        &self.layers
    }

    pub fn counts(&self) -> Vec<usize> {
        self.layers.iter().map(BTreeSet::len).collect()
    }

    /// Membership of a sorted vertex list; the empty simplex is always in.
    pub fn contains(&self, simplex: &[usize]) -> Option<bool> {
        if simplex.is_empty() {
            return Some(true);
        }
        self.layers.get(simplex.len() - 1).map(|l| l.contains(simplex))
    }

    /// No vertices at all.
    pub fn is_void(&self) -> bool {
        self.layers.first().is_none_or(BTreeSet::is_empty)
    }

    /// Highest nonempty layer, if any.
    pub fn top_dimension(&self) -> Option<usize> {
        self.layers.iter().rposition(|l| !l.is_empty())
    }

    /// True when the cap reaches past every possible simplex, so nothing is
    /// unknown.
    pub fn is_fully_materialized(&self) -> bool {
        self.dim_cap + 1 >= self.n_vertices
    }

    /// Every `(s+1)`-subset of the vertices is a simplex.
    pub fn has_full_skeleton(&self, s: usize) -> Option<bool> {
        let layer = self.layers.get(s)?;
        Some(layer.len() == binomial(self.n_vertices, s + 1))
    }

    pub fn is_downward_closed(&self) -> bool {
        (1..self.layers.len()).all(|s| {
            self.layers[s]
                .iter()
                .all(|simplex| faces(simplex).all(|f| self.layers[s - 1].contains(&f)))
        })
    }

    /// Copy with a lower cap.
    pub fn truncated(&self, dim_cap: usize) -> Self {
        let mut c = self.clone();
        c.dim_cap = dim_cap.min(self.dim_cap);
        c.layers.truncate(c.dim_cap + 1);
        c
    }

    /// The `(s+1)`-subsets missing from layer `s`, lexicographically sorted.
    pub fn non_simplices(&self, s: usize) -> Result<Vec<Simplex>, ComplexError> {
        let layer = self.layer(s)?;
        Ok(subsets(self.n_vertices, s + 1)
            .filter(|t| !layer.contains(t))
            .collect())
    }

    pub fn non_simplex_layers(&self, s_values: &[usize]) -> Result<Vec<NonSimplexLayer>, ComplexError> {
        s_values
            .iter()
            .map(|&s| {
                Ok(NonSimplexLayer {
                    s,
                    tuples: self.non_simplices(s)?,
                })
            })
            .collect()
    }

    /// One simplex per line, comma-separated vertices, dimensions ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n_vertices={} dim_cap={}", self.n_vertices, self.dim_cap);
        for layer in &self.layers {
            for simplex in layer {
                let _ = writeln!(out, "{}", simplex.iter().join(","));
            }
        }
        out
    }

    /// Reads the line format of [`Self::to_text`]; listed simplices are
    /// closed under faces. A `# n_vertices=N` header fixes the vertex count,
    /// otherwise the largest vertex does. The result is fully materialized.
    pub fn parse_text(text: &str) -> Result<Self, ComplexError> {
        let mut declared_n = None;
        let mut facets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                for word in comment.split_whitespace() {
                    if let Some(v) = word.strip_prefix("n_vertices=") {
                        declared_n = Some(v.parse::<usize>().map_err(|_| ComplexError::Parse {
                            line: i + 1,
                            message: format!("bad vertex count {v:?}"),
                        })?);
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let simplex = line
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ComplexError::Parse {
                    line: i + 1,
                    message: format!("expected comma-separated vertices: {e}"),
                })?;
            facets.push(simplex);
        }
        let max_vertex = facets.iter().flatten().copied().max().unwrap_or(0);
        let n = declared_n.unwrap_or(max_vertex);
        Self::from_facets(n, n.saturating_sub(1), &facets)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
