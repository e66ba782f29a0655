//! Shifted exceptional modules, mutations of exceptional pairs and windowed
//! enumeration of exceptional objects.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{NcError, Result};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{coevaluation_map, evaluation_map, Representation};

/// `M[shift]` for an exceptional module `M`.
#[derive(Clone)]
pub struct DerivedObject {
    module: Arc<Representation>,
    shift: i32,
}

impl fmt::Debug for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.module.dims(), self.shift)
    }
}

impl fmt::Display for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.module.dims())
        } else {
            write!(f, "{}[{}]", self.module.dims(), self.shift)
        }
    }
}

impl DerivedObject {
    /// Fails unless `module` is exceptional.
    pub fn new(module: Representation, shift: i32) -> Result<Self> {
        Self::from_arc(Arc::new(module), shift)
    }

    pub fn from_arc(module: Arc<Representation>, shift: i32) -> Result<Self> {
        if !module.is_exceptional() {
            return Err(NcError::InvalidArgument(format!(
                "module {} is not exceptional",
                module.dims()
            )));
        }
        Ok(DerivedObject { module, shift })
    }

    pub(crate) fn trusted(module: Arc<Representation>, shift: i32) -> Self {
        DerivedObject { module, shift }
    }

    pub fn module(&self) -> &Arc<Representation> {
        &self.module
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn dims(&self) -> &DimVector {
        self.module.dims()
    }

    pub fn shifted(&self, k: i32) -> DerivedObject {
        DerivedObject { module: self.module.clone(), shift: self.shift + k }
    }

    /// `(-1)^shift · dim`.
    pub fn class(&self) -> DimVector {
        if self.shift.rem_euclid(2) == 0 {
            self.dims().clone()
        } else {
            -self.dims()
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.module.quiver()
    }
}

/// `dim Hom(X, Y[k])`.
pub fn derived_hom(x: &DerivedObject, y: &DerivedObject, k: i32) -> Result<usize> {
    match y.shift + k - x.shift {
        0 => x.module.hom_dim(&y.module),
        1 => x.module.ext_dim(&y.module),
        _ => {
            if !x.module.same_quiver(&y.module) {
                return Err(NcError::QuiverMismatch);
            }
            Ok(0)
        }
    }
}

/// The (at most two) degrees in which `Hom•(X, Y)` can be nonzero, with
/// dimensions: `(k, hom)` and `(k+1, ext)` for `k = shift X − shift Y`.
pub fn derived_hom_profile(x: &DerivedObject, y: &DerivedObject) -> Result<[(i32, usize); 2]> {
    let k = x.shift - y.shift;
    Ok([(k, x.module.hom_dim(&y.module)?), (k + 1, x.module.ext_dim(&y.module)?)])
}

/// Whether `Hom•(y, x) = 0`, the condition for `(x, y)` to be an exceptional
/// pair of exceptional objects.
pub fn is_exceptional_pair(x: &DerivedObject, y: &DerivedObject) -> Result<bool> {
    Ok(y.module.hom_dim(&x.module)? == 0 && y.module.ext_dim(&x.module)? == 0)
}

/// Euler form on classes of derived objects.
pub fn derived_euler(x: &DerivedObject, y: &DerivedObject) -> i64 {
    x.quiver().euler_unchecked(&x.class(), &y.class())
}

fn check_pair(e: &DerivedObject, f: &DerivedObject) -> Result<()> {
    if !is_exceptional_pair(e, f)? {
        return Err(NcError::NotExceptionalPair(format!("({e}, {f})")));
    }
    Ok(())
}

/// `L_E F`, the cone of `Hom•(E,F) ⊗ E → F`.
pub fn left_mutation(e: &DerivedObject, f: &DerivedObject) -> Result<DerivedObject> {
    check_pair(e, f)?;
    let (x, y) = (&e.module, &f.module);
    let h = x.hom_dim(y)?;
    let ext = x.ext_dim(y)?;
    let b = f.shift;
    let (module, shift) = match (h, ext) {
        (0, 0) => return Ok(f.clone()),
        (_, 0) => {
            let ev = evaluation_map(x, y)?;
            if ev.is_injective() {
                (ev.cokernel()?, b)
            } else if ev.is_surjective() {
                (ev.kernel()?, b + 1)
            } else {
                return Err(NcError::Integrity(format!(
                    "evaluation map {} -> {} neither injective nor surjective",
                    x.dims(),
                    y.dims()
                )));
            }
        }
        (0, _) => (x.universal_extension_of_power(y)?, b),
        _ => {
            return Err(NcError::Integrity(format!(
                "hom and ext both nonzero for pair ({e}, {f})"
            )))
        }
    };
    finish_mutation(module, shift)
}

/// `R_F E`, the cone of `E → Hom•(E,F)^* ⊗ F` shifted by `−1`.
pub fn right_mutation(e: &DerivedObject, f: &DerivedObject) -> Result<DerivedObject> {
    check_pair(e, f)?;
    let (x, y) = (&e.module, &f.module);
    let h = x.hom_dim(y)?;
    let ext = x.ext_dim(y)?;
    let a = e.shift;
    let (module, shift) = match (h, ext) {
        (0, 0) => return Ok(e.clone()),
        (_, 0) => {
            let coev = coevaluation_map(x, y)?;
            if coev.is_injective() {
                (coev.cokernel()?, a - 1)
            } else if coev.is_surjective() {
                (coev.kernel()?, a)
            } else {
                return Err(NcError::Integrity(format!(
                    "coevaluation map {} -> {} neither injective nor surjective",
                    x.dims(),
                    y.dims()
                )));
            }
        }
        (0, _) => (x.universal_extension_by_power(y)?, a),
        _ => {
            return Err(NcError::Integrity(format!(
                "hom and ext both nonzero for pair ({e}, {f})"
            )))
        }
    };
    finish_mutation(module, shift)
}

fn finish_mutation(module: Representation, shift: i32) -> Result<DerivedObject> {
    if !module.is_exceptional() {
        return Err(NcError::Integrity(format!("mutation produced non-exceptional {}", module.dims())));
    }
    Ok(DerivedObject::trusted(Arc::new(module), shift))
}

/// Predicted class of `L_E F`: `[F] − ⟨E,F⟩[E]`.
pub fn left_mutation_class(e: &DerivedObject, f: &DerivedObject) -> DimVector {
    let c = derived_euler(e, f);
    &f.class() - &e.class().scale(c)
}

/// Predicted class of `R_F E`: `[E] − ⟨E,F⟩[F]`.
pub fn right_mutation_class(e: &DerivedObject, f: &DerivedObject) -> DimVector {
    let c = derived_euler(e, f);
    &e.class() - &f.class().scale(c)
}

/// An exceptional collection: `Hom•(E_j, E_i) = 0` for `j > i`.
#[derive(Clone, Debug)]
pub struct ExcCollection {
    objects: Vec<DerivedObject>,
}

impl ExcCollection {
    pub fn new(objects: Vec<DerivedObject>) -> Result<Self> {
        for j in 0..objects.len() {
            for i in 0..j {
                check_pair(&objects[i], &objects[j])?;
            }
        }
        Ok(ExcCollection { objects })
    }

    /// `(P_1, ..., P_n)` ordered so that the collection is exceptional.
    pub fn projectives(q: &Arc<Quiver>) -> Self {
        // Hom(P_w, P_v) ≠ 0 needs a path v ⇝ w; put sinks first.
        let objects = q
            .topological_order()
            .iter()
            .rev()
            .map(|&v| DerivedObject::trusted(Arc::new(Representation::projective(q.clone(), v)), 0))
            .collect();
        ExcCollection { objects }
    }

    pub fn objects(&self) -> &[DerivedObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `hom^k(E_i, E_j) = 0` for all `i, j` and `k ≠ 0`.
    pub fn is_strong(&self) -> Result<bool> {
        for x in &self.objects {
            for y in &self.objects {
                for (k, d) in derived_hom_profile(x, y)? {
                    if k != 0 && d != 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Matrix of `hom^0(E_i, E_j)`.
    pub fn hom_matrix(&self) -> Result<Vec<Vec<usize>>> {
        self.objects
            .iter()
            .map(|x| self.objects.iter().map(|y| derived_hom(x, y, 0)).collect())
            .collect()
    }

    /// Replaces `(E_i, E_{i+1})` by `(L_{E_i} E_{i+1}, E_i)`.
    pub fn mutate_left(&self, i: usize) -> Result<ExcCollection> {
        self.check_position(i)?;
        let mut objects = self.objects.clone();
        let l = left_mutation(&objects[i], &objects[i + 1])?;
        objects[i + 1] = objects[i].clone();
        objects[i] = l;
        Ok(ExcCollection { objects })
    }

    /// Replaces `(E_i, E_{i+1})` by `(E_{i+1}, R_{E_{i+1}} E_i)`.
    pub fn mutate_right(&self, i: usize) -> Result<ExcCollection> {
        self.check_position(i)?;
        let mut objects = self.objects.clone();
        let r = right_mutation(&objects[i], &objects[i + 1])?;
        objects[i] = objects[i + 1].clone();
        objects[i + 1] = r;
        Ok(ExcCollection { objects })
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i + 1 >= self.objects.len() {
            return Err(NcError::InvalidArgument(format!("no adjacent pair at position {i}")));
        }
        Ok(())
    }
}

/// Output of [`enumerate_exceptional`]: shift-0 representatives sorted by
/// dimension vector.
#[derive(Clone, Debug)]
pub struct Enumeration {
    quiver: Arc<Quiver>,
    window: i64,
    objects: Vec<DerivedObject>,
    index: BTreeMap<DimVector, usize>,
    truncated: bool,
}

impl Enumeration {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn objects(&self) -> &[DerivedObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Whether some exceptional pair mutates to an object outside the window.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn index_of_dims(&self, d: &DimVector) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Index of the enumerated object isomorphic to `m` up to shift.
    pub fn locate(&self, m: &Representation) -> Result<Option<usize>> {
        match self.index_of_dims(m.dims()) {
            Some(i) if self.objects[i].module.is_isomorphic_exceptional(m)? => Ok(Some(i)),
            Some(_) => Err(NcError::Integrity(format!(
                "two non-isomorphic exceptional modules of dimension {}",
                m.dims()
            ))),
            None => Ok(None),
        }
    }

    pub fn in_window(&self, d: &DimVector) -> bool {
        d.max_abs() <= self.window
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, window: i64) -> Enumeration {
        let objects: Vec<DerivedObject> =
            self.objects.iter().filter(|o| o.dims().max_abs() <= window).cloned().collect();
        let index = objects.iter().enumerate().map(|(i, o)| (o.dims().clone(), i)).collect();
        Enumeration {
            quiver: self.quiver.clone(),
            window,
            objects,
            index,
            truncated: self.truncated || window < self.window,
        }
    }

    /// One JSON object per line: `{"dims":..., "maps":...}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for o in &self.objects {
            out.push_str(&o.module.to_json());
            out.push('\n');
        }
        out
    }
}

/// Mutation closure of the projective collection under single mutations of
/// exceptional pairs, restricted to dimension vectors with entries `≤ window`.
/// Simples and injectives are added to the seeds.
///
/// Every pair `(X, Y)` of known objects with `Hom•(Y, X) = 0` is mutated on
/// both sides. Results are predicted through `K₀` first and only constructed
/// when they land inside the window and are new.
pub fn enumerate_exceptional(q: &Quiver, window: i64) -> Result<Enumeration> {
    if window < 1 {
        return Err(NcError::InvalidArgument("window must be >= 1".into()));
    }
    let q = Arc::new(q.clone());
    let truncated = AtomicBool::new(false);
    let mut pool: Vec<DerivedObject> = Vec::new();
    let mut known: BTreeMap<DimVector, usize> = BTreeMap::new();
    // Simples and injectives lie in the mutation orbit of the projective
    // collection; seeding them keeps the windowed closure from depending on
    // paths through large intermediate objects.
    let n = q.vertex_count();
    let seeds = (0..n)
        .map(|v| Representation::projective(q.clone(), v))
        .chain((0..n).map(|v| Representation::injective(q.clone(), v)))
        .chain((0..n).map(|v| Representation::simple(q.clone(), v)));
    for m in seeds {
        if m.dims().max_abs() > window {
            truncated.store(true, Ordering::Relaxed);
        }
        if !known.contains_key(m.dims()) {
            known.insert(m.dims().clone(), pool.len());
            pool.push(DerivedObject::trusted(Arc::new(m), 0));
        }
    }

    let mut start = 0;
    while start < pool.len() {
        let end = pool.len();
        let jobs: Vec<(usize, usize)> = (start..end)
            .flat_map(|k| (0..k).flat_map(move |i| [(i, k), (k, i)]))
            .collect();
        let found: Vec<Result<Vec<DerivedObject>>> = jobs
            .par_iter()
            .map(|&(i, j)| mutate_pair(&q, &pool[i], &pool[j], &known, window, &truncated))
            .collect();
        let mut fresh: BTreeMap<DimVector, DerivedObject> = BTreeMap::new();
        for r in found {
            for o in r? {
                fresh.entry(o.dims().clone()).or_insert(o);
            }
        }
        for (d, o) in fresh {
            if let Some(&i) = known.get(&d) {
                if !pool[i].module.is_isomorphic_exceptional(&o.module)? {
                    return Err(NcError::Integrity(format!("non-isomorphic exceptional modules of dimension {d}")));
                }
                continue;
            }
            known.insert(d, pool.len());
            pool.push(o);
        }
        start = end;
    }

    let mut objects: Vec<DerivedObject> =
        pool.into_iter().filter(|o| o.dims().max_abs() <= window).collect();
    objects.sort_by(|a, b| a.dims().cmp(b.dims()));
    let index = objects.iter().enumerate().map(|(i, o)| (o.dims().clone(), i)).collect();
    Ok(Enumeration { quiver: q, window, objects, index, truncated: truncated.into_inner() })
}

/// New in-window objects obtained by mutating the pair `(x, y)` on either side.
fn mutate_pair(
    q: &Quiver,
    x: &DerivedObject,
    y: &DerivedObject,
    known: &BTreeMap<DimVector, usize>,
    window: i64,
    truncated: &AtomicBool,
) -> Result<Vec<DerivedObject>> {
    if q.euler_unchecked(y.dims(), x.dims()) != 0 {
        return Ok(Vec::new());
    }
    let predictions = [left_mutation_class(x, y), right_mutation_class(x, y)];
    let mut wanted = [false; 2];
    let mut outside = false;
    for (w, p) in wanted.iter_mut().zip(&predictions) {
        let Some(d) = p.sign_normalized() else { continue };
        if d.is_zero() || q.euler_unchecked(&d, &d) != 1 {
            continue;
        }
        if d.max_abs() > window {
            outside = true;
        } else if !known.contains_key(&d) {
            *w = true;
        }
    }
    let need_check = wanted.iter().any(|&w| w) || (outside && !truncated.load(Ordering::Relaxed));
    if !need_check || y.module.hom_dim(&x.module)? != 0 {
        return Ok(Vec::new());
    }
    if outside {
        truncated.store(true, Ordering::Relaxed);
    }
    let mut out = Vec::new();
    for (k, &w) in wanted.iter().enumerate() {
        if !w {
            continue;
        }
        let m = if k == 0 { left_mutation(x, y)? } else { right_mutation(x, y)? };
        if m.class() != predictions[k] {
            return Err(NcError::Integrity(format!(
                "mutation of ({x}, {y}) has class {} but {} was predicted",
                m.class(),
                predictions[k]
            )));
        }
        out.push(DerivedObject::trusted(m.module, 0));
    }
    Ok(out)
}
