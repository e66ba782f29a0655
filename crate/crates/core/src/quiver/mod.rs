//! Acyclic quivers, dimension vectors and the Euler form.

pub(crate) mod builtin;
mod classify;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::linalg::IntMat;

pub use classify::{
    classify, AffineType, Classification, ComponentClass, ComponentType, DynkinType, RepresentationType,
};

/// A finite acyclic quiver with a fixed vertex ordering.
///
/// Vertices keep the order in which they were declared; dimension vectors
/// are indexed in that order. A topological order is computed once on
/// construction.
#[derive(Clone, Debug)]
pub struct Quiver {
    name: Option<String>,
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    topo: Vec<usize>,
    counts: BTreeMap<(usize, usize), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<[String; 2]>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and arrows given as label pairs.
    /// Repeated arrows encode multiplicity.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: BTreeMap<&str, usize> =
            labels.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != labels.len() {
            return Err(NcError::InvalidQuiver("duplicate vertex id".into()));
        }
        let lookup = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| NcError::InvalidQuiver(format!("unknown vertex '{v}'")))
        };
        let idx_arrows = arrows
            .iter()
            .map(|(s, t)| Ok((lookup(s.as_ref())?, lookup(t.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(labels, idx_arrows)
    }

    pub fn from_indices(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(NcError::InvalidQuiver(format!("duplicate vertex id '{v}'")));
            }
        }
        let mut counts = BTreeMap::new();
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(NcError::InvalidQuiver("arrow endpoint out of range".into()));
            }
            if s == t {
                return Err(NcError::Cyclic(vertices[s].clone()));
            }
            *counts.entry((s, t)).or_insert(0) += 1;
        }
        let topo = topological_order(n, &arrows).map_err(|v| NcError::Cyclic(vertices[v].clone()))?;
        Ok(Quiver { name: None, vertices, arrows, topo, counts })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if one was given, otherwise a short structural description.
    pub fn display_name(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("Q[{}v,{}a]", self.vertex_count(), self.arrows.len()),
        }
    }

    /// Parses the JSON form `{"vertices":[...],"arrows":[[s,t],...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson =
            serde_json::from_str(text).map_err(|e| NcError::Parse(e.to_string()))?;
        let arrows: Vec<(String, String)> =
            raw.arrows.into_iter().map(|[s, t]| (s, t)).collect();
        Self::new(&raw.vertices, &arrows)
    }

    pub fn to_json(&self) -> String {
        let raw = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| [self.vertices[s].clone(), self.vertices[t].clone()])
                .collect(),
        };
        serde_json::to_string(&raw).expect("quiver serializes")
    }

    /// Parses a builtin name (`K(3)`, `A~(2,1)`, `E(6)`, ...) or JSON text.
    pub fn parse(source: &str) -> Result<Self> {
        let t = source.trim();
        if t.starts_with('{') {
            Self::from_json(t)
        } else {
            builtin::by_name(t)
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Arrows as `(source, target)` vertex indices, in declaration order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of arrows `s -> t`.
    pub fn arrow_count(&self, s: usize, t: usize) -> usize {
        self.counts.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Multiplicities per ordered vertex pair.
    pub fn arrow_counts(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.counts
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(self.euler_unchecked(d, e))
    }

    pub(crate) fn euler_unchecked(&self, d: &DimVector, e: &DimVector) -> i64 {
        let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
        let off: i64 = self
            .counts
            .iter()
            .map(|(&(s, t), &m)| m as i64 * d.0[s] * e.0[t])
            .sum();
        diag - off
    }

    pub fn tits_form(&self, d: &DimVector) -> Result<i64> {
        self.euler_form(d, d)
    }

    /// Euler matrix in declared vertex order: `entry(s,t) = δ_st − #arrows(s→t)`.
    pub fn euler_matrix(&self) -> IntMat {
        let n = self.vertex_count();
        let mut m = IntMat::identity(n);
        for (&(s, t), &c) in &self.counts {
            m[(s, t)] -= c as i64;
        }
        m
    }

    /// Euler matrix with rows and columns permuted into topological order;
    /// unitriangular.
    pub fn euler_matrix_topological(&self) -> IntMat {
        let full = self.euler_matrix();
        let n = self.vertex_count();
        let mut m = IntMat::zeros(n, n);
        for (i, &a) in self.topo.iter().enumerate() {
            for (j, &b) in self.topo.iter().enumerate() {
                m[(i, j)] = full[(a, b)];
            }
        }
        m
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(s, t) in &self.arrows {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Number of paths from `s` to `t` (1 for `s == t`).
    pub fn path_count(&self, s: usize, t: usize) -> usize {
        let mut ways = vec![0usize; self.vertex_count()];
        ways[s] = 1;
        for &v in &self.topo {
            if ways[v] == 0 {
                continue;
            }
            for (&(a, b), &m) in &self.counts {
                if a == v {
                    ways[b] += ways[v] * m;
                }
            }
        }
        ways[t]
    }

    pub fn check_len(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(NcError::DimensionMismatch {
                expected: self.vertex_count(),
                found: d.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// Kahn's algorithm, smallest available index first so the order is
/// deterministic. On a cycle returns a vertex on it.
fn topological_order(n: usize, arrows: &[(usize, usize)]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, t) in arrows {
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &t in &out[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(stuck);
    }
    Ok(order)
}

/// Integer vector indexed by the vertices of a quiver: dimension vectors
/// of modules and classes in the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&x| x <= 0)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    /// The vector with all-nonnegative entries among `±self`, if one exists.
    pub fn sign_normalized(&self) -> Option<Self> {
        if self.is_nonnegative() {
            Some(self.clone())
        } else if self.is_nonpositive() {
            Some(-self)
        } else {
            None
        }
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
