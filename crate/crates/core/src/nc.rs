//! Strong exceptional pairs, their clustering into noncommutative curves,
//! curve counts, and the embedding criterion for weight triples.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{NcError, Result};
use crate::exc::{
    derived_hom_profile, enumerate_exceptional, left_mutation, left_mutation_class, right_mutation,
    right_mutation_class, DerivedObject, Enumeration, ExcCollection,
};
use crate::linalg::{self, IntMat, QMat};
use crate::quiver::{DimVector, Quiver};
use crate::weight::WeightSequence;

/// `(E1, E2)` exceptional with `Hom•(E1, E2)` concentrated in degree 0.
/// `E1` has shift 0; indices refer to the enumeration the pair came from.
#[derive(Clone, Debug)]
pub struct StrongPair {
    pub first: usize,
    pub second: usize,
    pub e1: DerivedObject,
    pub e2: DerivedObject,
    pub hom: usize,
}

impl StrongPair {
    pub fn genus(&self) -> i64 {
        self.hom as i64 - 1
    }

    fn record(&self) -> PairRecord {
        PairRecord {
            first: self.e1.dims().0.clone(),
            second: self.e2.dims().0.clone(),
            second_shift: self.e2.shift(),
            hom: self.hom,
        }
    }
}

impl fmt::Display for StrongPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.e1, self.e2)
    }
}

/// Strong pairs with `hom(E1, E2) = l + 1` among enumerated objects.
pub fn find_strong_pairs(q: &Quiver, l: i64, window: i64) -> Result<Vec<StrongPair>> {
    let e = enumerate_exceptional(q, window)?;
    strong_pairs_in(&e, l)
}

/// Same as [`find_strong_pairs`] on an existing enumeration.
pub fn strong_pairs_in(e: &Enumeration, l: i64) -> Result<Vec<StrongPair>> {
    if l < -1 {
        return Err(NcError::InvalidArgument(format!("genus must be >= -1, got {l}")));
    }
    let q = e.quiver();
    let objs = e.objects();
    let target = l + 1;
    let found: Vec<Result<Vec<StrongPair>>> = (0..objs.len())
        .into_par_iter()
        .map(|i| {
            let x = objs[i].module();
            let mut out = Vec::new();
            for (j, yo) in objs.iter().enumerate() {
                let y = yo.module();
                if i == j || q.euler_unchecked(y.dims(), x.dims()) != 0 {
                    continue;
                }
                let c = q.euler_unchecked(x.dims(), y.dims());
                let shift = if c == target {
                    0
                } else if c == -target && target != 0 {
                    1
                } else {
                    continue;
                };
                if y.hom_dim(x)? != 0 {
                    continue;
                }
                let h = x.hom_dim(y)?;
                // shift 0 needs ext = 0, shift 1 needs hom = 0
                let ok = if shift == 0 { h as i64 == target } else { h == 0 };
                if ok {
                    out.push(StrongPair {
                        first: i,
                        second: j,
                        e1: objs[i].clone(),
                        e2: objs[j].shifted(shift),
                        hom: target as usize,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut pairs = Vec::new();
    for r in found {
        pairs.extend(r?);
    }
    Ok(pairs)
}

/// A full subcategory generated by a strong pair, with the exceptional
/// objects of its ladder found inside the window.
#[derive(Clone, Debug)]
pub struct NcCurve {
    pub genus: i64,
    /// Ladder `(..., s_{-1}, s_0, s_1, ...)` with actual shifts.
    pub ladder: Vec<DerivedObject>,
    /// Enumeration index of each ladder object.
    pub ladder_indices: Vec<usize>,
    /// Both ends of the ladder closed up (finitely many objects).
    pub closed: bool,
    pub k0_key: Vec<Vec<i64>>,
    pub representative: StrongPair,
}

impl NcCurve {
    /// Distinct objects of the ladder, up to shift.
    pub fn object_indices(&self) -> BTreeSet<usize> {
        self.ladder_indices.iter().copied().collect()
    }

    /// Too few in-window objects to compare ladders (genus ≥ 1), or a finite
    /// closure that ran into the window edge (genus ≤ 0).
    pub fn is_undecided(&self) -> bool {
        if self.genus >= 1 {
            self.ladder.len() < 3
        } else {
            !self.closed
        }
    }

    /// Violations of the ladder invariants: consecutive pairs strong with
    /// hom `l+1` in degree 0 and nothing backwards, and
    /// `[s_{i-1}] + [s_{i+1}] = (l+1)[s_i]`.
    pub fn ladder_violations(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.genus < 1 {
            return Ok(out);
        }
        let target = (self.genus + 1) as usize;
        for w in self.ladder.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            for (k, d) in derived_hom_profile(a, b)? {
                let want = if k == 0 { target } else { 0 };
                if d != want {
                    out.push(format!("hom^{k}({a}, {b}) = {d}, expected {want}"));
                }
            }
            for (k, d) in derived_hom_profile(b, a)? {
                if d != 0 {
                    out.push(format!("hom^{k}({b}, {a}) = {d}, expected 0"));
                }
            }
        }
        for w in self.ladder.windows(3) {
            let lhs = &w[0].class() + &w[2].class();
            let rhs = w[1].class().scale(target as i64);
            if lhs != rhs {
                out.push(format!("[{}] + [{}] != {}[{}]", w[0], w[2], target, w[1]));
            }
        }
        Ok(out)
    }

    fn record(&self) -> CurveRecord {
        CurveRecord {
            k0_key: self.k0_key.clone(),
            ladder_dims: self.ladder.iter().map(|o| o.dims().0.clone()).collect(),
            ladder_shifts: self.ladder.iter().map(DerivedObject::shift).collect(),
            representative_pair: self.representative.record(),
        }
    }
}

/// Primitive integer rows of the reduced row echelon form of the span of
/// `a` and `b`: a canonical name for the saturated sublattice they span.
pub fn k0_key(a: &DimVector, b: &DimVector) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    let data = a
        .entries()
        .iter()
        .chain(b.entries())
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    let m = QMat::from_data(2, n, data)?;
    let (r, pivots) = m.rref();
    (0..pivots.len())
        .map(|i| {
            let row: Vec<BigRational> = (0..n).map(|j| r[(i, j)].clone()).collect();
            linalg::primitive_integer_vector(&row)
        })
        .collect()
}

/// Result of [`cluster_into_curves`].
#[derive(Clone, Debug, Default)]
pub struct Clustering {
    pub curves: Vec<NcCurve>,
    pub undecided: Vec<NcCurve>,
    /// Pairs of curves (indices into `curves`) sharing a `K₀` key without
    /// sharing a ladder pair. Reported, never merged.
    pub k0_collisions: Vec<(usize, usize)>,
}

/// Walks the ladder through a strong pair: left mutations extend it to the
/// left, right mutations to the right, stopping at the window edge or when an
/// object repeats.
pub fn walk_ladder(e: &Enumeration, pair: &StrongPair) -> Result<NcCurve> {
    let mut ladder = vec![pair.e1.clone(), pair.e2.clone()];
    let mut indices = vec![pair.first, pair.second];
    let mut closed_left = false;
    let mut closed_right = false;

    loop {
        let (a, b) = (&ladder[0], &ladder[1]);
        match next_rung(e, a, b, &indices, true)? {
            Rung::New(o, i) => {
                ladder.insert(0, o);
                indices.insert(0, i);
            }
            Rung::Repeat => {
                closed_left = true;
                break;
            }
            Rung::Outside => break,
        }
    }
    loop {
        let n = ladder.len();
        let (a, b) = (&ladder[n - 2], &ladder[n - 1]);
        match next_rung(e, a, b, &indices, false)? {
            Rung::New(o, i) => {
                ladder.push(o);
                indices.push(i);
            }
            Rung::Repeat => {
                closed_right = true;
                break;
            }
            Rung::Outside => break,
        }
    }
    Ok(NcCurve {
        genus: pair.genus(),
        k0_key: k0_key(pair.e1.dims(), pair.e2.dims())?,
        ladder,
        ladder_indices: indices,
        closed: closed_left && closed_right,
        representative: pair.clone(),
    })
}

enum Rung {
    New(DerivedObject, usize),
    Repeat,
    Outside,
}

fn next_rung(e: &Enumeration, a: &DerivedObject, b: &DerivedObject, seen: &[usize], left: bool) -> Result<Rung> {
    // s_{i-1} = (L_{s_i} s_{i+1})[-1] and s_{i+2} = (R_{s_{i+1}} s_i)[1]
    let predicted = if left { -&left_mutation_class(a, b) } else { -&right_mutation_class(a, b) };
    let dims = predicted
        .sign_normalized()
        .ok_or_else(|| NcError::Integrity(format!("mutation class {predicted} has mixed signs")))?;
    if !e.in_window(&dims) {
        return Ok(Rung::Outside);
    }
    let o = if left { left_mutation(a, b)?.shifted(-1) } else { right_mutation(a, b)?.shifted(1) };
    if o.class() != predicted {
        return Err(NcError::Integrity(format!("mutation class {} != predicted {predicted}", o.class())));
    }
    let i = e.locate(o.module())?.ok_or_else(|| {
        NcError::Integrity(format!("exceptional object {} missing from the enumeration", o.dims()))
    })?;
    if seen.contains(&i) {
        return Ok(Rung::Repeat);
    }
    Ok(Rung::New(o, i))
}

/// Groups strong pairs by the subcategory they generate. Two pairs land in
/// the same curve iff their ladders share an (unordered) pair of objects.
pub fn cluster_into_curves(pairs: &[StrongPair], e: &Enumeration) -> Result<Clustering> {
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    let mut walked: Vec<NcCurve> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for p in pairs {
        let key = unordered(p.first, p.second);
        if owner.contains_key(&key) {
            continue;
        }
        let curve = walk_ladder(e, p)?;
        let id = walked.len();
        parent.push(id);
        for w in curve.ladder_indices.windows(2) {
            let k = unordered(w[0], w[1]);
            match owner.get(&k) {
                Some(&other) => {
                    let (ra, rb) = (find(&mut parent, id), find(&mut parent, other));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
                None => {
                    owner.insert(k, id);
                }
            }
        }
        owner.entry(key).or_insert(id);
        walked.push(curve);
    }

    // one representative per class: the longest ladder, ties to the first walked
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for id in 0..walked.len() {
        let root = find(&mut parent, id);
        let slot = best.entry(root).or_insert(id);
        if walked[id].ladder.len() > walked[*slot].ladder.len() {
            *slot = id;
        }
    }
    let mut all: Vec<NcCurve> = best.values().map(|&id| walked[id].clone()).collect();
    all.sort_by(|a, b| curve_sort_key(a).cmp(&curve_sort_key(b)));

    let mut out = Clustering::default();
    for c in all {
        if c.is_undecided() {
            out.undecided.push(c);
        } else {
            out.curves.push(c);
        }
    }
    for i in 0..out.curves.len() {
        for j in i + 1..out.curves.len() {
            if out.curves[i].k0_key == out.curves[j].k0_key {
                out.k0_collisions.push((i, j));
            }
        }
    }
    Ok(out)
}

fn unordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn curve_sort_key(c: &NcCurve) -> (Vec<Vec<i64>>, Vec<DimVector>) {
    let mut dims: Vec<DimVector> = c.ladder.iter().map(|o| o.dims().clone()).collect();
    dims.sort();
    (c.k0_key.clone(), dims)
}

/// Outcome of a curve count at one window.
#[derive(Clone, Debug)]
pub struct CountResult {
    pub quiver: String,
    pub l: i64,
    pub window: i64,
    pub count: usize,
    pub truncated: bool,
    pub undecided: usize,
    /// Decided count at `window − 1` (absent for window 1).
    pub previous_count: Option<usize>,
    pub stable: bool,
    pub clustering: Clustering,
}

impl CountResult {
    pub fn record(&self) -> CountRecord {
        CountRecord {
            quiver: self.quiver.clone(),
            l: self.l,
            window: self.window,
            count: self.count,
            truncated: self.truncated,
            undecided: self.undecided,
            stable: self.stable,
            curves: self.clustering.curves.iter().map(NcCurve::record).collect(),
            k0_collisions: self.clustering.k0_collisions.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairRecord {
    pub first: Vec<i64>,
    pub second: Vec<i64>,
    pub second_shift: i32,
    pub hom: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CurveRecord {
    pub k0_key: Vec<Vec<i64>>,
    pub ladder_dims: Vec<Vec<i64>>,
    pub ladder_shifts: Vec<i32>,
    pub representative_pair: PairRecord,
}

/// JSON record of a count run.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CountRecord {
    pub quiver: String,
    pub l: i64,
    pub window: i64,
    pub count: usize,
    pub truncated: bool,
    pub undecided: usize,
    pub stable: bool,
    pub curves: Vec<CurveRecord>,
    pub k0_collisions: Vec<(usize, usize)>,
}

fn count_in(e: &Enumeration, l: i64) -> Result<Clustering> {
    let pairs = strong_pairs_in(e, l)?;
    cluster_into_curves(&pairs, e)
}

/// Number of genus-`l` curves found in the window, with a stability check
/// against window `W − 1`.
#[allow(non_snake_case)]
pub fn count_Cl(q: &Quiver, l: i64, window: i64) -> Result<CountResult> {
    let e = enumerate_exceptional(q, window)?;
    let clustering = count_in(&e, l)?;
    let previous_count = if window > 1 {
        let prev = enumerate_exceptional(q, window - 1)?;
        Some(count_in(&prev, l)?.curves.len())
    } else {
        None
    };
    let count = clustering.curves.len();
    let undecided = clustering.undecided.len();
    Ok(CountResult {
        quiver: q.display_name(),
        l,
        window,
        count,
        truncated: e.truncated(),
        undecided,
        previous_count,
        stable: undecided == 0 && previous_count.map_or(!e.truncated(), |p| p == count),
        clustering,
    })
}

/// Smallest window `≤ max_window` at which [`count_Cl`] is stable.
#[allow(non_snake_case)]
pub fn stable_count_Cl(q: &Quiver, l: i64, max_window: i64) -> Result<Option<CountResult>> {
    for w in 1..=max_window {
        let r = count_Cl(q, l, w)?;
        if r.stable {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Verdict of [`decide_embedding`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Embedding {
    NonEmptyFinite,
    Empty,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Embedding::NonEmptyFinite => write!(f, "NonEmptyFinite"),
            Embedding::Empty => write!(f, "Empty"),
        }
    }
}

/// Whether `T(p')` embeds in `T(p)`: nonempty (and finite) iff `p' ≼ p`.
pub fn decide_embedding(p_sub: &WeightSequence, p: &WeightSequence) -> Result<Embedding> {
    for w in [p_sub, p] {
        if !w.is_dynkin_type() {
            return Err(NcError::NotDynkinType(w.to_string()));
        }
    }
    Ok(if p_sub.preceq(p) { Embedding::NonEmptyFinite } else { Embedding::Empty })
}

/// A strong exceptional sequence in `D^b(q)` whose hom matrix is the
/// canonical Gram matrix of `p'`, searched among the objects of the window.
pub fn gram_witness_search(p_sub: &WeightSequence, q: &Quiver, window: i64) -> Result<Option<ExcCollection>> {
    if !p_sub.is_dynkin_type() {
        return Err(NcError::NotDynkinType(p_sub.to_string()));
    }
    let e = enumerate_exceptional(q, window)?;
    gram_witness_in(&e, &p_sub.canonical_gram())
}

/// Backtracking search for `(E_1, ..., E_n)` with `hom^0(E_i, E_j) = g[i][j]`,
/// all other degrees zero, and `Hom•(E_j, E_i) = 0` for `j > i`.
///
/// `E_1` has shift 0. The shift of `E_j` is fixed by `g[0][j]`: degree 0
/// must carry the hom of the module pair when `g[0][j] > 0`; otherwise the
/// search uses shift 0.
pub fn gram_witness_in(e: &Enumeration, g: &IntMat) -> Result<Option<ExcCollection>> {
    let n = g.rows();
    if n == 0 {
        return Ok(Some(ExcCollection::new(Vec::new())?));
    }
    let q = e.quiver().clone();
    let objs = e.objects();
    let mut cache: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut homext = |i: usize, j: usize| -> Result<(usize, usize)> {
        if let Some(&v) = cache.get(&(i, j)) {
            return Ok(v);
        }
        let (x, y) = (objs[i].module(), objs[j].module());
        let v = (x.hom_dim(y)?, x.ext_dim(y)?);
        cache.insert((i, j), v);
        Ok(v)
    };

    // check object i at shift si against object j at shift sj placed later
    // with target t = g[pos_i][pos_j]
    let euler = |i: usize, j: usize| q.euler_unchecked(objs[i].dims(), objs[j].dims());

    struct Frame {
        idx: usize,
        shift: i32,
    }
    let mut chosen: Vec<Frame> = Vec::new();
    let mut next_candidate = vec![0usize; n];

    'search: loop {
        let pos = chosen.len();
        if pos == n {
            let objects = chosen.iter().map(|f| objs[f.idx].shifted(f.shift)).collect();
            return Ok(Some(ExcCollection::new(objects)?));
        }
        while next_candidate[pos] < objs.len() {
            let c = next_candidate[pos];
            next_candidate[pos] += 1;
            if chosen.iter().any(|f| f.idx == c) {
                continue;
            }
            // shift determined by the first object
            let shift = if pos == 0 {
                0
            } else {
                let t = g[(0, pos)];
                if t > 0 {
                    let (h, x) = homext(chosen[0].idx, c)?;
                    if h as i64 == t && x == 0 {
                        0
                    } else if x as i64 == t && h == 0 {
                        1
                    } else {
                        continue;
                    }
                } else {
                    0
                }
            };
            let mut ok = true;
            for (i, f) in chosen.iter().enumerate() {
                let t = g[(i, pos)];
                let sign = if (shift - f.shift).rem_euclid(2) == 0 { 1 } else { -1 };
                if euler(c, f.idx) != 0 || sign * euler(f.idx, c) != t {
                    ok = false;
                    break;
                }
                let (hb, xb) = homext(c, f.idx)?;
                if hb != 0 || xb != 0 {
                    ok = false;
                    break;
                }
                // Hom•(E_i, E_pos): hom in degree f.shift - shift, ext one above
                let (h, x) = homext(f.idx, c)?;
                let k = f.shift - shift;
                let deg0 = if k == 0 { h } else if k == -1 { x } else { 0 };
                let other = h + x - deg0;
                if deg0 as i64 != t || other != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen.push(Frame { idx: c, shift });
                if pos + 1 < n {
                    next_candidate[pos + 1] = 0;
                }
                continue 'search;
            }
        }
        // exhausted this position
        if chosen.pop().is_none() {
            return Ok(None);
        }
    }
}

/// Directed edges `A → B` between curves: every ladder object `a` of `A` and
/// `b` of `B` have `Hom•(b, a) = 0`.
pub fn curve_graph(curves: &[NcCurve]) -> Result<Vec<(usize, usize)>> {
    let n = curves.len();
    let jobs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let flags: Vec<Result<bool>> = jobs
        .par_iter()
        .map(|&(a, b)| {
            for x in &curves[a].ladder {
                for y in &curves[b].ladder {
                    if y.module().hom_dim(x.module())? != 0 || y.module().ext_dim(x.module())? != 0 {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
        .collect();
    let mut edges = Vec::new();
    for (job, f) in jobs.into_iter().zip(flags) {
        if f? {
            edges.push(job);
        }
    }
    Ok(edges)
}

/// DOT rendering of the curve graph of a count result.
pub fn to_dot(result: &CountResult) -> Result<String> {
    let curves = &result.clustering.curves;
    let edges = curve_graph(curves)?;
    let mut s = format!(
        "digraph \"{} l={} W={}\" {{\n",
        result.quiver.replace('"', "'"),
        result.l,
        result.window
    );
    for (i, c) in curves.iter().enumerate() {
        let dims: Vec<String> = c.ladder.iter().map(|o| o.to_string()).collect();
        s.push_str(&format!("  c{i} [label=\"{}\"];\n", dims.join(" ")));
    }
    for (a, b) in edges {
        s.push_str(&format!("  c{a} -> c{b};\n"));
    }
    s.push_str("}\n");
    Ok(s)
}
