//! Quiver representations over the rationals.
//!
//! Arrow matrices are stored as integers: any rational representation is
//! isomorphic to an integral one by rescaling basis vectors vertex by vertex
//! in topological order ([`Representation::from_rational`]). Hom spaces are
//! null spaces of the intertwiner system
//!
//! ```text
//! d : ⊕_v Hom(M_v, N_v) → ⊕_{a: s→t} Hom(M_s, N_t),   (φ_v) ↦ (N_a φ_s − φ_t M_a)
//! ```
//!
//! whose cokernel is `Ext¹(M, N)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::linalg::{self, IntMat, QMat};
use crate::quiver::{DimVector, Quiver};

/// A representation: a vector space per vertex and a matrix per arrow
/// (rows = target dimension, columns = source dimension).
#[derive(Clone)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dims: DimVector,
    maps: Vec<IntMat>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{}{:?}", self.dims, self.maps)
    }
}

/// A morphism of representations, one block per vertex.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<IntMat>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dims: DimVector, maps: Vec<IntMat>) -> Result<Self> {
        quiver.check_len(&dims)?;
        if !dims.is_nonnegative() {
            return Err(NcError::InvalidArgument(format!("negative dimension vector {dims}")));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(NcError::DimensionMismatch {
                expected: quiver.arrows().len(),
                found: maps.len(),
            });
        }
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.rows() != dims[t] as usize || m.cols() != dims[s] as usize {
                return Err(NcError::InvalidArgument(format!(
                    "arrow {s}->{t}: matrix {}x{} does not match dims {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let dims = DimVector::zeros(quiver.vertex_count());
        let maps = vec![IntMat::zeros(0, 0); quiver.arrows().len()];
        Representation { quiver, dims, maps }
    }

    pub fn simple(quiver: Arc<Quiver>, v: usize) -> Self {
        let n = quiver.vertex_count();
        let dims = DimVector::unit(n, v);
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| IntMat::zeros(dims[t] as usize, dims[s] as usize))
            .collect();
        Representation { quiver, dims, maps }
    }

    /// The projective `P_v`: basis of `(P_v)_w` = paths `v ⇝ w`.
    pub fn projective(quiver: Arc<Quiver>, v: usize) -> Self {
        Self::path_module(quiver, v, false)
    }

    /// The injective `I_v`: basis of `(I_v)_w` = paths `w ⇝ v`.
    pub fn injective(quiver: Arc<Quiver>, v: usize) -> Self {
        Self::path_module(quiver, v, true)
    }

    fn path_module(quiver: Arc<Quiver>, v: usize, dual: bool) -> Self {
        let n = quiver.vertex_count();
        // paths[w] = list of arrow-index sequences
        let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        let arrows = quiver.arrows().to_vec();
        if !dual {
            paths[v].push(Vec::new());
            for &w in quiver.topological_order() {
                let here = paths[w].clone();
                for (ai, &(s, t)) in arrows.iter().enumerate() {
                    if s == w {
                        for p in &here {
                            let mut q = p.clone();
                            q.push(ai);
                            paths[t].push(q);
                        }
                    }
                }
            }
        } else {
            paths[v].push(Vec::new());
            for &w in quiver.topological_order().iter().rev() {
                let here = paths[w].clone();
                for (ai, &(s, t)) in arrows.iter().enumerate() {
                    if t == w {
                        for p in &here {
                            let mut q = vec![ai];
                            q.extend(p);
                            paths[s].push(q);
                        }
                    }
                }
            }
        }
        let dims = DimVector(paths.iter().map(|p| p.len() as i64).collect());
        let maps = arrows
            .iter()
            .enumerate()
            .map(|(ai, &(s, t))| {
                let mut m = IntMat::zeros(paths[t].len(), paths[s].len());
                for (j, p) in paths[s].iter().enumerate() {
                    // projective: extend p by ai; injective: p starts with ai
                    let image: Option<Vec<usize>> = if !dual {
                        let mut q = p.clone();
                        q.push(ai);
                        Some(q)
                    } else if p.first() == Some(&ai) {
                        Some(p[1..].to_vec())
                    } else {
                        None
                    };
                    if let Some(q) = image {
                        let i = paths[t].iter().position(|x| *x == q).expect("path exists");
                        m[(i, j)] = 1;
                    }
                }
                m
            })
            .collect();
        Representation { quiver, dims, maps }
    }

    /// Builds an integral representation isomorphic to the given rational one.
    pub fn from_rational(quiver: Arc<Quiver>, dims: DimVector, maps: Vec<QMat>) -> Result<Self> {
        let mut maps = maps;
        let arrows = quiver.arrows().to_vec();
        for &t in quiver.topological_order() {
            let incoming: Vec<usize> =
                (0..arrows.len()).filter(|&a| arrows[a].1 == t).collect();
            let outgoing: Vec<usize> =
                (0..arrows.len()).filter(|&a| arrows[a].0 == t).collect();
            for i in 0..dims[t] as usize {
                let mut row: Vec<BigRational> = Vec::new();
                for &a in &incoming {
                    for j in 0..maps[a].cols() {
                        row.push(maps[a][(i, j)].clone());
                    }
                }
                let l = linalg::denominator_lcm(&row);
                let g = row
                    .iter()
                    .map(|x| (x * &l).to_integer())
                    .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
                if g.is_zero() {
                    continue;
                }
                let c = BigRational::new(l, g);
                if c.is_one() {
                    continue;
                }
                for &a in &incoming {
                    for j in 0..maps[a].cols() {
                        let v = &maps[a][(i, j)] * &c;
                        maps[a][(i, j)] = v;
                    }
                }
                let inv = c.recip();
                for &a in &outgoing {
                    for r in 0..maps[a].rows() {
                        let v = &maps[a][(r, i)] * &inv;
                        maps[a][(r, i)] = v;
                    }
                }
            }
        }
        let ints = maps.iter().map(QMat::to_integer).collect::<Result<Vec<_>>>()?;
        Representation::new(quiver, dims, ints)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v] as usize
    }

    pub fn maps(&self) -> &[IntMat] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver
    }

    fn check_same_quiver(&self, other: &Representation) -> Result<()> {
        if self.same_quiver(other) {
            Ok(())
        } else {
            Err(NcError::QuiverMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_same_quiver(other)?;
        let dims = &self.dims + &other.dims;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Representation { quiver: self.quiver.clone(), dims, maps })
    }

    /// `M^{⊕k}`.
    pub fn power(&self, k: usize) -> Representation {
        let mut out = Representation::zero(self.quiver.clone());
        for _ in 0..k {
            out = out.direct_sum(self).expect("same quiver");
        }
        out
    }

    /// Intertwiner system `d` from `Hom_K` blocks to arrow blocks, as dense
    /// integer rows. Unknown `φ_v[i][j]` sits at `offset_v + i*dim M_v + j`.
    fn intertwiner_rows(m: &Representation, n: &Representation) -> (Vec<Vec<i64>>, usize, Vec<usize>) {
        let q = &m.quiver;
        let nv = q.vertex_count();
        let mut offsets = Vec::with_capacity(nv);
        let mut cols = 0;
        for v in 0..nv {
            offsets.push(cols);
            cols += m.dim(v) * n.dim(v);
        }
        let mut rows = Vec::new();
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let (ma, na) = (&m.maps[a], &n.maps[a]);
            let (ms, mt, ns, nt) = (m.dim(s), m.dim(t), n.dim(s), n.dim(t));
            for r in 0..nt {
                for c in 0..ms {
                    let mut row = vec![0i64; cols];
                    for k in 0..ns {
                        row[offsets[s] + k * ms + c] += na[(r, k)];
                    }
                    for k in 0..mt {
                        row[offsets[t] + r * mt + k] -= ma[(k, c)];
                    }
                    rows.push(row);
                }
            }
        }
        (rows, cols, offsets)
    }

    /// `dim Hom(self, other)`.
    pub fn hom_dim(&self, other: &Representation) -> Result<usize> {
        self.check_same_quiver(other)?;
        let (rows, cols, _) = Self::intertwiner_rows(self, other);
        Ok(cols - linalg::rank(&rows, cols))
    }

    /// `dim Ext¹(self, other) = hom − ⟨dim self, dim other⟩`.
    pub fn ext_dim(&self, other: &Representation) -> Result<usize> {
        let h = self.hom_dim(other)? as i64;
        let e = h - self.quiver.euler_unchecked(&self.dims, &other.dims);
        if e < 0 {
            return Err(NcError::Integrity(format!(
                "negative ext between {} and {}",
                self.dims, other.dims
            )));
        }
        Ok(e as usize)
    }

    /// `End = K` and no self-extensions.
    pub fn is_exceptional(&self) -> bool {
        !self.is_zero()
            && self.hom_dim(self).ok() == Some(1)
            && self.quiver.euler_unchecked(&self.dims, &self.dims) == 1
    }

    /// Basis of `Hom(self, other)` as morphisms.
    pub fn hom_basis(&self, other: &Representation) -> Result<Vec<RepMorphism>> {
        self.check_same_quiver(other)?;
        let (rows, cols, offsets) = Self::intertwiner_rows(self, other);
        let d = if rows.is_empty() { IntMat::zeros(0, cols) } else { IntMat::from_vecs(&rows) };
        let ns = linalg::int_nullspace(&d)?;
        (0..ns.cols())
            .map(|k| {
                let blocks = (0..self.quiver.vertex_count())
                    .map(|v| {
                        let (mv, nv) = (self.dim(v), other.dim(v));
                        let mut b = IntMat::zeros(nv, mv);
                        for i in 0..nv {
                            for j in 0..mv {
                                b[(i, j)] = ns[(offsets[v] + i * mv + j, k)];
                            }
                        }
                        b
                    })
                    .collect();
                RepMorphism::new(self.clone(), other.clone(), blocks)
            })
            .collect()
    }

    /// Cocycles `f = (f_a : self_s → other_t)` whose classes form a basis of
    /// `Ext¹(self, other)`.
    pub fn ext_cocycles(&self, other: &Representation) -> Result<Vec<Vec<IntMat>>> {
        self.check_same_quiver(other)?;
        let (rows, cols, _) = Self::intertwiner_rows(self, other);
        let nrows = rows.len();
        // columns of [d | I]: pivots in the identity block complete im(d)
        let mut aug = QMat::zeros(nrows, cols + nrows);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    aug[(i, j)] = BigRational::from_integer(x.into());
                }
            }
            aug[(i, cols + i)] = BigRational::one();
        }
        let (_, pivots) = aug.rref();
        let complement: Vec<usize> = pivots.into_iter().filter(|&p| p >= cols).map(|p| p - cols).collect();
        let q = &self.quiver;
        let mut out = Vec::with_capacity(complement.len());
        for e in complement {
            // decode row index e into (arrow, r, c)
            let mut idx = e;
            let mut f = Vec::with_capacity(q.arrows().len());
            for &(s, t) in q.arrows() {
                let (ms, nt) = (self.dim(s), other.dim(t));
                let mut m = IntMat::zeros(nt, ms);
                if idx < nt * ms {
                    m[(idx / ms, idx % ms)] = 1;
                    idx = usize::MAX;
                } else if idx != usize::MAX {
                    idx -= nt * ms;
                }
                f.push(m);
            }
            out.push(f);
        }
        Ok(out)
    }

    /// Universal extension `0 → other → G → self^{⊕e} → 0`, `e = ext(self, other)`.
    pub fn universal_extension_of_power(&self, other: &Representation) -> Result<Representation> {
        let cocycles = self.ext_cocycles(other)?;
        let e = cocycles.len();
        let xs = self.power(e);
        let dims = &other.dims + &xs.dims;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let top_right =
                    IntMat::hstack(&cocycles.iter().map(|f| f[a].clone()).collect::<Vec<_>>(), other.dim(t));
                let mut m = other.maps[a].direct_sum(&xs.maps[a]);
                m.set_block(0, other.dim(s), &top_right);
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), dims, maps)
    }

    /// Universal extension `0 → other^{⊕e} → G → self → 0`, `e = ext(self, other)`.
    pub fn universal_extension_by_power(&self, other: &Representation) -> Result<Representation> {
        let cocycles = self.ext_cocycles(other)?;
        let e = cocycles.len();
        let ys = other.power(e);
        let dims = &ys.dims + &self.dims;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, _t))| {
                let top_right =
                    IntMat::vstack(&cocycles.iter().map(|f| f[a].clone()).collect::<Vec<_>>(), self.dim(s));
                let mut m = ys.maps[a].direct_sum(&self.maps[a]);
                m.set_block(0, ys.dim(s), &top_right);
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), dims, maps)
    }

    /// Isomorphism test for exceptional representations: equal dimension
    /// vectors and nonzero maps both ways.
    pub fn is_isomorphic_exceptional(&self, other: &Representation) -> Result<bool> {
        if self.dims != other.dims {
            return Ok(false);
        }
        Ok(self.hom_dim(other)? >= 1
            && other.hom_dim(self)? >= 1
            && self.is_exceptional()
            && other.is_exceptional())
    }

    pub fn to_json_value(&self) -> RepresentationJson {
        RepresentationJson {
            dims: self.dims.0.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| m.data().iter().map(|x| format!("{x}/1")).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializes")
    }

    pub fn from_json(quiver: Arc<Quiver>, text: &str) -> Result<Self> {
        let raw: RepresentationJson =
            serde_json::from_str(text).map_err(|e| NcError::Parse(e.to_string()))?;
        Self::from_json_value(quiver, raw)
    }

    pub fn from_json_value(quiver: Arc<Quiver>, raw: RepresentationJson) -> Result<Self> {
        let dims = DimVector(raw.dims);
        quiver.check_len(&dims)?;
        if raw.maps.len() != quiver.arrows().len() {
            return Err(NcError::DimensionMismatch {
                expected: quiver.arrows().len(),
                found: raw.maps.len(),
            });
        }
        let maps = raw
            .maps
            .iter()
            .zip(quiver.arrows())
            .map(|(entries, &(s, t))| {
                let data = entries.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>()?;
                QMat::from_data(dims[t].max(0) as usize, dims[s].max(0) as usize, data)
            })
            .collect::<Result<Vec<_>>>()?;
        if !dims.is_nonnegative() {
            return Err(NcError::InvalidArgument(format!("negative dimension vector {dims}")));
        }
        Self::from_rational(quiver, dims, maps)
    }
}

/// JSON form: dimension vector plus one row-major matrix per arrow with
/// entries written as `"n/d"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentationJson {
    pub dims: Vec<i64>,
    pub maps: Vec<Vec<String>>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || NcError::Parse(format!("bad rational '{s}'"));
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl RepMorphism {
    /// Checks shapes and the intertwiner condition `block_t·M_a = N_a·block_s`.
    pub fn new(source: Representation, target: Representation, blocks: Vec<IntMat>) -> Result<Self> {
        source.check_same_quiver(&target)?;
        let q = source.quiver.clone();
        if blocks.len() != q.vertex_count() {
            return Err(NcError::DimensionMismatch { expected: q.vertex_count(), found: blocks.len() });
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != target.dim(v) || b.cols() != source.dim(v) {
                return Err(NcError::InvalidArgument(format!("block {v} has wrong shape")));
            }
        }
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let lhs = blocks[t].mul(&source.maps[a])?;
            let rhs = target.maps[a].mul(&blocks[s])?;
            if lhs != rhs {
                return Err(NcError::Integrity(format!("morphism does not intertwine arrow {a}")));
            }
        }
        Ok(RepMorphism { source, target, blocks })
    }

    pub fn zero(source: Representation, target: Representation) -> Result<Self> {
        let blocks = (0..source.quiver.vertex_count())
            .map(|v| IntMat::zeros(target.dim(v), source.dim(v)))
            .collect();
        RepMorphism::new(source, target, blocks)
    }

    pub fn identity(m: &Representation) -> Self {
        let blocks = (0..m.quiver.vertex_count()).map(|v| IntMat::identity(m.dim(v))).collect();
        RepMorphism { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[IntMat] {
        &self.blocks
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(IntMat::rank).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.ranks().iter().enumerate().all(|(v, &r)| r == self.source.dim(v))
    }

    pub fn is_surjective(&self) -> bool {
        self.ranks().iter().enumerate().all(|(v, &r)| r == self.target.dim(v))
    }

    pub fn kernel(&self) -> Result<Representation> {
        let q = self.source.quiver.clone();
        let bases: Vec<QMat> = self.blocks.iter().map(|b| b.to_rational().nullspace()).collect();
        let dims = DimVector(bases.iter().map(|k| k.cols() as i64).collect());
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let ks = &bases[s];
                let kt = &bases[t];
                if ks.cols() == 0 || kt.cols() == 0 {
                    return Ok(QMat::zeros(kt.cols(), ks.cols()));
                }
                let left = kt
                    .left_inverse()
                    .ok_or_else(|| NcError::Integrity("kernel basis not of full rank".into()))?;
                Ok(left.mul(&self.source.maps[a].to_rational()).mul(ks))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::from_rational(q, dims, maps)
    }

    pub fn cokernel(&self) -> Result<Representation> {
        let q = self.target.quiver.clone();
        // rows of proj_v span the annihilator of im(block_v)
        let projs: Vec<QMat> = self
            .blocks
            .iter()
            .map(|b| b.to_rational().transpose().nullspace().transpose())
            .collect();
        let dims = DimVector(projs.iter().map(|p| p.rows() as i64).collect());
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let (ps, pt) = (&projs[s], &projs[t]);
                if ps.rows() == 0 || pt.rows() == 0 {
                    return Ok(QMat::zeros(pt.rows(), ps.rows()));
                }
                let right = ps
                    .right_inverse()
                    .ok_or_else(|| NcError::Integrity("cokernel projection not of full rank".into()))?;
                Ok(pt.mul(&self.target.maps[a].to_rational()).mul(&right))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::from_rational(q, dims, maps)
    }
}

/// `ev : E^{⊕h} → F` assembled from a basis of `Hom(E, F)`.
pub fn evaluation_map(e: &Representation, f: &Representation) -> Result<RepMorphism> {
    let basis = e.hom_basis(f)?;
    if basis.is_empty() {
        return Err(NcError::ZeroHom);
    }
    let h = basis.len();
    let source = e.power(h);
    let blocks = (0..e.quiver.vertex_count())
        .map(|v| IntMat::hstack(&basis.iter().map(|m| m.blocks[v].clone()).collect::<Vec<_>>(), f.dim(v)))
        .collect();
    RepMorphism::new(source, f.clone(), blocks)
}

/// `coev : E → F^{⊕h}` assembled from a basis of `Hom(E, F)`.
pub fn coevaluation_map(e: &Representation, f: &Representation) -> Result<RepMorphism> {
    let basis = e.hom_basis(f)?;
    if basis.is_empty() {
        return Err(NcError::ZeroHom);
    }
    let h = basis.len();
    let target = f.power(h);
    let blocks = (0..e.quiver.vertex_count())
        .map(|v| IntMat::vstack(&basis.iter().map(|m| m.blocks[v].clone()).collect::<Vec<_>>(), e.dim(v)))
        .collect();
    RepMorphism::new(e.clone(), target, blocks)
}
