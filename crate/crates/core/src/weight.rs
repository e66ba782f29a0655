//! Weight triples `p = (p1, p2, p3)`, the domination order and the
//! associated extended Dynkin quivers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::linalg::IntMat;
use crate::quiver::{builtin, Quiver};

/// A weight triple with entries `>= 1`. The original order is kept (it
/// fixes the orientation of `T(p,q,1)`); comparisons use the sorted form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct WeightSequence([u32; 3]);

impl TryFrom<[u32; 3]> for WeightSequence {
    type Error = NcError;
    fn try_from(p: [u32; 3]) -> Result<Self> {
        WeightSequence::new(p)
    }
}

impl From<WeightSequence> for [u32; 3] {
    fn from(w: WeightSequence) -> Self {
        w.0
    }
}

/// Which orientation to use for the non-`Ã` shapes in [`WeightSequence::to_quiver`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// Every arrow points toward the branch vertex.
    #[default]
    TowardBranch,
    /// Every arrow reversed.
    AwayFromBranch,
}

impl WeightSequence {
    pub fn new(p: [u32; 3]) -> Result<Self> {
        if p.iter().any(|&x| x == 0) {
            return Err(NcError::InvalidWeight(format!("entries must be >= 1, got {p:?}")));
        }
        Ok(WeightSequence(p))
    }

    pub fn entries(&self) -> [u32; 3] {
        self.0
    }

    /// Entries in descending order.
    pub fn normalized(&self) -> [u32; 3] {
        let mut s = self.0;
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    fn ascending(&self) -> [u32; 3] {
        let mut s = self.0;
        s.sort_unstable();
        s
    }

    /// `|p| = p1 + p2 + p3`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).product()
    }

    /// `(p,q,1)`, `(2,2,p)`, `(2,3,3)`, `(2,3,4)` or `(2,3,5)` up to order.
    pub fn is_dynkin_type(&self) -> bool {
        match self.ascending() {
            [1, _, _] => true,
            [2, 2, _] => true,
            [2, 3, c] => (3..=5).contains(&c),
            _ => false,
        }
    }

    /// `self ≼ other`: some permutation of `self` is bounded by `other`
    /// entrywise, i.e. sorted entries compare componentwise.
    pub fn preceq(&self, other: &WeightSequence) -> bool {
        let (a, b) = (self.ascending(), other.ascending());
        a.iter().zip(&b).all(|(x, y)| x <= y)
    }

    /// Strict version: `self ≼ other` and not equal up to order.
    pub fn prec(&self, other: &WeightSequence) -> bool {
        self.preceq(other) && self.ascending() != other.ascending()
    }

    pub fn rank(&self) -> usize {
        self.weight() as usize - 1
    }

    /// A quiver whose derived category is `T(p)`.
    ///
    /// `(p,q,1)` gives `A~(p,q)` with `p` and `q` taken in their original
    /// order after dropping one entry equal to 1; `(2,2,n)` gives `D~(n+2)`;
    /// `(2,3,3|4|5)` gives `E~(6|7|8)`.
    pub fn to_quiver(&self, orientation: Orientation) -> Result<Quiver> {
        if !self.is_dynkin_type() {
            return Err(NcError::NotDynkinType(self.to_string()));
        }
        if let Some(pos) = self.0.iter().rposition(|&x| x == 1) {
            let rest: Vec<usize> = self
                .0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(_, &x)| x as usize)
                .collect();
            return builtin::affine_a(rest[0], rest[1]);
        }
        let q = match self.ascending() {
            [2, 2, n] => builtin::affine_d(n as usize + 2)?,
            [2, 3, c] => builtin::by_name(&format!("E~({})", c + 3))?,
            _ => unreachable!("checked Dynkin type"),
        };
        Ok(match orientation {
            Orientation::TowardBranch => q,
            Orientation::AwayFromBranch => {
                let name = q.display_name();
                let arrows = q.arrows().iter().map(|&(s, t)| (t, s)).collect();
                Quiver::from_indices(q.vertices().to_vec(), arrows)?.with_name(name)
            }
        })
    }

    /// Hom-dimension matrix of the canonical strong exceptional collection
    /// `(O, O(x1), ..., O((p1-1)x1), ..., O((p3-1)x3), O(c))`, in that order.
    pub fn canonical_gram(&self) -> IntMat {
        let n = self.rank();
        let mut g = IntMat::zeros(n, n);
        // arm[i] = Some(arm index) for the arm objects, None for O and O(c)
        let mut arm = vec![None; n];
        let mut idx = 1;
        for (a, &p) in self.0.iter().enumerate() {
            for _ in 1..p {
                arm[idx] = Some(a);
                idx += 1;
            }
        }
        let last = n - 1;
        for i in 0..n {
            g[(i, i)] = 1;
            for j in i + 1..n {
                g[(i, j)] = match (i, j, arm[i], arm[j]) {
                    (0, j, _, _) if j == last => 2,
                    (0, _, _, _) => 1,
                    (_, j, _, _) if j == last => 1,
                    (_, _, Some(a), Some(b)) if a == b => 1,
                    _ => 0,
                };
            }
        }
        g
    }
}

impl FromStr for WeightSequence {
    type Err = NcError;

    /// Parses `"2,3,5"` (whitespace and surrounding parentheses tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u32> = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| NcError::Parse(format!("bad weight triple '{s}'")))
            })
            .collect::<Result<_>>()?;
        let arr: [u32; 3] = parts
            .try_into()
            .map_err(|_| NcError::Parse(format!("weight triple needs 3 entries: '{s}'")))?;
        WeightSequence::new(arr)
    }
}

/// Shows the descending form; the original order is only kept for `to_quiver`.
impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.normalized();
        write!(f, "({a},{b},{c})")
    }
}

/// All triples with entries in `1..=max`, in lexicographic order.
pub fn all_triples(max: u32) -> Vec<WeightSequence> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            for c in 1..=max {
                out.push(WeightSequence([a, b, c]));
            }
        }
    }
    out
}
