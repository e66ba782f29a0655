//! Dynkin / extended Dynkin / wild classification of the underlying graph.
//!
//! Each connected component is matched against the ADE and affine ADE
//! diagrams by shape: edge multiplicities, cycle structure, branch points and
//! arm lengths. Orientation only matters for affine type A, where the numbers
//! of arrows running each way around the cycle are recorded.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::linalg::{primitive_integer_vector, QMat};

use super::{DimVector, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AffineType {
    /// `Ã_n` on `n+1` vertices; `orientation = (p, q)` with `p >= q` counts
    /// arrows running each way around the cycle.
    A { n: usize, orientation: (usize, usize) },
    D(usize),
    E(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentType {
    Dynkin(DynkinType),
    ExtendedDynkin {
        kind: AffineType,
        /// Positive primitive generator of the radical, over all vertices of
        /// the quiver (zero off the component).
        null_root: DimVector,
    },
    Wild,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub vertices: Vec<usize>,
    pub kind: ComponentType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepresentationType {
    Dynkin,
    ExtendedDynkin,
    Wild,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub components: Vec<ComponentClass>,
}

impl Classification {
    pub fn overall(&self) -> RepresentationType {
        let kinds = self.components.iter().map(|c| &c.kind);
        if kinds.clone().any(|k| matches!(k, ComponentType::Wild)) {
            RepresentationType::Wild
        } else if kinds.into_iter().any(|k| matches!(k, ComponentType::ExtendedDynkin { .. })) {
            RepresentationType::ExtendedDynkin
        } else {
            RepresentationType::Dynkin
        }
    }

    pub fn is_dynkin(&self) -> bool {
        self.overall() == RepresentationType::Dynkin
    }

    /// `true` for a connected extended Dynkin quiver.
    pub fn is_connected_affine(&self) -> bool {
        self.components.len() == 1
            && matches!(self.components[0].kind, ComponentType::ExtendedDynkin { .. })
    }

    pub fn null_root(&self) -> Option<&DimVector> {
        match &self.components.first()?.kind {
            ComponentType::ExtendedDynkin { null_root, .. } if self.components.len() == 1 => {
                Some(null_root)
            }
            _ => None,
        }
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{}", subscript(*n)),
            DynkinType::D(n) => write!(f, "D{}", subscript(*n)),
            DynkinType::E(n) => write!(f, "E{}", subscript(*n)),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A { n: 1, .. } => write!(f, "Ã₁"),
            AffineType::A { n, orientation: (p, q) } => {
                write!(f, "Ã{} (p,q)=({p},{q})", subscript(*n))
            }
            AffineType::D(n) => write!(f, "D̃{}", subscript(*n)),
            AffineType::E(n) => write!(f, "Ẽ{}", subscript(*n)),
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentType::Dynkin(t) => write!(f, "Dynkin {t}"),
            ComponentType::ExtendedDynkin { kind, null_root } => {
                write!(f, "ExtendedDynkin {kind}, δ={null_root}")
            }
            ComponentType::Wild => write!(f, "Wild"),
        }
    }
}

pub fn classify(q: &Quiver) -> Classification {
    let components = q
        .components()
        .into_iter()
        .map(|vs| {
            let kind = classify_component(q, &vs);
            ComponentClass { vertices: vs, kind }
        })
        .collect();
    Classification { components }
}

fn classify_component(q: &Quiver, vs: &[usize]) -> ComponentType {
    let n = vs.len();
    let inside: BTreeSet<usize> = vs.iter().copied().collect();
    // undirected multiplicities
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(s, t), &m) in q.arrow_counts() {
        if inside.contains(&s) {
            *edges.entry((s.min(t), s.max(t))).or_insert(0) += m;
        }
    }
    if n == 1 {
        return ComponentType::Dynkin(DynkinType::A(1));
    }
    let max_mult = edges.values().copied().max().unwrap_or(0);
    if max_mult >= 3 {
        return ComponentType::Wild;
    }
    if max_mult == 2 {
        return if n == 2 {
            affine(q, vs, AffineType::A { n: 1, orientation: (1, 1) })
        } else {
            ComponentType::Wild
        };
    }
    let mut degree: BTreeMap<usize, usize> = vs.iter().map(|&v| (v, 0)).collect();
    let mut adj: BTreeMap<usize, Vec<usize>> = vs.iter().map(|&v| (v, Vec::new())).collect();
    for &(a, b) in edges.keys() {
        *degree.get_mut(&a).unwrap() += 1;
        *degree.get_mut(&b).unwrap() += 1;
        adj.get_mut(&a).unwrap().push(b);
        adj.get_mut(&b).unwrap().push(a);
    }
    let m = edges.len();
    if m == n {
        if degree.values().all(|&d| d == 2) {
            let orientation = cycle_orientation(q, vs, &adj);
            return affine(q, vs, AffineType::A { n: n - 1, orientation });
        }
        return ComponentType::Wild;
    }
    if m != n - 1 {
        return ComponentType::Wild;
    }
    // a tree
    let max_deg = degree.values().copied().max().unwrap_or(0);
    if max_deg >= 5 {
        return ComponentType::Wild;
    }
    if max_deg == 4 {
        return if n == 5 { affine(q, vs, AffineType::D(4)) } else { ComponentType::Wild };
    }
    let branches: Vec<usize> = degree.iter().filter(|(_, &d)| d == 3).map(|(&v, _)| v).collect();
    match branches.len() {
        0 => ComponentType::Dynkin(DynkinType::A(n)),
        1 => {
            let mut arms: Vec<usize> =
                adj[&branches[0]].iter().map(|&nb| arm_length(&adj, branches[0], nb)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => ComponentType::Dynkin(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => ComponentType::Dynkin(DynkinType::E(n)),
                [2, 2, 2] => affine(q, vs, AffineType::E(6)),
                [1, 3, 3] => affine(q, vs, AffineType::E(7)),
                [1, 2, 5] => affine(q, vs, AffineType::E(8)),
                _ => ComponentType::Wild,
            }
        }
        2 => {
            // D~: both branch points carry two leaves
            let leafy = branches.iter().all(|&b| {
                adj[&b].iter().filter(|&&nb| degree[&nb] == 1).count() == 2
            });
            if leafy {
                affine(q, vs, AffineType::D(n - 1))
            } else {
                ComponentType::Wild
            }
        }
        _ => ComponentType::Wild,
    }
}

/// Number of vertices on the arm leaving `from` through `first`.
fn arm_length(adj: &BTreeMap<usize, Vec<usize>>, from: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next: Vec<usize> = adj[&cur].iter().copied().filter(|&x| x != prev).collect();
        if next.len() != 1 {
            return len;
        }
        prev = cur;
        cur = next[0];
        len += 1;
    }
}

fn cycle_orientation(q: &Quiver, vs: &[usize], adj: &BTreeMap<usize, Vec<usize>>) -> (usize, usize) {
    let start = vs[0];
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        order.push(cur);
        let next = adj[&cur].iter().copied().find(|&x| x != prev).unwrap();
        prev = cur;
        cur = next;
    }
    let (mut fwd, mut bwd) = (0, 0);
    for i in 0..order.len() {
        let (a, b) = (order[i], order[(i + 1) % order.len()]);
        if q.arrow_count(a, b) > 0 {
            fwd += 1;
        } else {
            bwd += 1;
        }
    }
    (fwd.max(bwd), fwd.min(bwd))
}

fn affine(q: &Quiver, vs: &[usize], kind: AffineType) -> ComponentType {
    ComponentType::ExtendedDynkin { kind, null_root: null_root(q, vs) }
}

/// Radical generator of the symmetrized Euler form on a component.
fn null_root(q: &Quiver, vs: &[usize]) -> DimVector {
    let k = vs.len();
    let full = q.euler_matrix();
    let mut sym = QMat::zeros(k, k);
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate() {
            sym[(i, j)] = num_rational::BigRational::from_integer((full[(a, b)] + full[(b, a)]).into());
        }
    }
    let ns = sym.nullspace();
    assert_eq!(ns.cols(), 1, "affine component must have a one-dimensional radical");
    let col: Vec<_> = (0..k).map(|i| ns[(i, 0)].clone()).collect();
    let mut v = primitive_integer_vector(&col).expect("small null root");
    if v.iter().any(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let mut out = vec![0; q.vertex_count()];
    for (i, &a) in vs.iter().enumerate() {
        out[a] = v[i];
    }
    DimVector(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DimVector;

    fn kind(name: &str) -> ComponentType {
        let c = classify(&Quiver::parse(name).unwrap());
        assert_eq!(c.components.len(), 1);
        c.components[0].kind.clone()
    }

    #[test]
    fn kronecker_is_affine_a1() {
        match kind("K(2)") {
            ComponentType::ExtendedDynkin { kind, null_root } => {
                assert_eq!(kind, AffineType::A { n: 1, orientation: (1, 1) });
                assert_eq!(null_root, DimVector(vec![1, 1]));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(kind("K(3)"), ComponentType::Wild);
        assert_eq!(kind("K(1)"), ComponentType::Dynkin(DynkinType::A(2)));
    }

    #[test]
    fn triangle_quiver_is_affine_a2() {
        let q = Quiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]).unwrap();
        let c = classify(&q);
        match &c.components[0].kind {
            ComponentType::ExtendedDynkin { kind, null_root } => {
                assert_eq!(*kind, AffineType::A { n: 2, orientation: (2, 1) });
                assert_eq!(*null_root, DimVector(vec![1, 1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn standard_table() {
        let dyn_cases = [
            ("A(1)", DynkinType::A(1)),
            ("A(5)", DynkinType::A(5)),
            ("D(4)", DynkinType::D(4)),
            ("D(6)", DynkinType::D(6)),
            ("E(6)", DynkinType::E(6)),
            ("E(7)", DynkinType::E(7)),
            ("E(8)", DynkinType::E(8)),
        ];
        for (name, t) in dyn_cases {
            assert_eq!(kind(name), ComponentType::Dynkin(t), "{name}");
        }
        let aff = [
            ("D~(4)", AffineType::D(4), vec![2, 1, 1, 1, 1]),
            ("D~(6)", AffineType::D(6), vec![2, 2, 2, 1, 1, 1, 1]),
            ("E~(6)", AffineType::E(6), vec![3, 2, 1, 2, 1, 2, 1]),
            ("E~(7)", AffineType::E(7), vec![4, 2, 3, 2, 1, 3, 2, 1]),
            ("E~(8)", AffineType::E(8), vec![6, 3, 4, 2, 5, 4, 3, 2, 1]),
            ("A~(2,2)", AffineType::A { n: 3, orientation: (2, 2) }, vec![1, 1, 1, 1]),
        ];
        for (name, t, delta) in aff {
            match kind(name) {
                ComponentType::ExtendedDynkin { kind, null_root } => {
                    assert_eq!(kind, t, "{name}");
                    assert_eq!(null_root, DimVector(delta), "{name}");
                }
                other => panic!("{name}: {other:?}"),
            }
        }
    }

    #[test]
    fn wild_shapes() {
        // star with arms (2,2,3) is T_{3,3,4}: wild
        let q = super::super::builtin::star(&[2, 2, 3]);
        assert_eq!(classify(&q).components[0].kind, ComponentType::Wild);
        let q = super::super::builtin::star(&[1, 1, 1, 1, 1]);
        assert_eq!(classify(&q).components[0].kind, ComponentType::Wild);
        // triangle with a pendant vertex
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "3"), ("3", "4")],
        )
        .unwrap();
        assert_eq!(classify(&q).components[0].kind, ComponentType::Wild);
    }

    #[test]
    fn components_are_classified_separately() {
        let q = Quiver::new(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d"), ("c", "d")]).unwrap();
        let c = classify(&q);
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].kind, ComponentType::Dynkin(DynkinType::A(2)));
        assert!(matches!(c.components[1].kind, ComponentType::ExtendedDynkin { .. }));
        assert_eq!(c.overall(), RepresentationType::ExtendedDynkin);
        assert!(!c.is_connected_affine());
    }

    #[test]
    fn null_root_spans_radical() {
        for name in ["K(2)", "A~(3,2)", "D~(5)", "E~(6)", "E~(7)", "E~(8)"] {
            let q = Quiver::parse(name).unwrap();
            let delta = classify(&q).null_root().unwrap().clone();
            assert_eq!(q.tits_form(&delta).unwrap(), 0);
            for v in 0..q.vertex_count() {
                let e = DimVector::unit(q.vertex_count(), v);
                let s = q.euler_form(&delta, &e).unwrap() + q.euler_form(&e, &delta).unwrap();
                assert_eq!(s, 0, "{name}");
            }
        }
    }
}
