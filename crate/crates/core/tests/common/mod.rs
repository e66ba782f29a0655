//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's rank, hom or mutation code.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nccount_core::linalg::IntMat;
use nccount_core::{DimVector, Quiver, Representation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank by plain Gaussian elimination over `BigRational`.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `Hom(−, N)` applied to the standard projective resolution
/// `0 → ⊕_a P_{t(a)}^{m_{s(a)}} → ⊕_v P_v^{m_v} → M → 0` gives
/// `⊕_v N_v^{m_v} → ⊕_a N_{t(a)}^{m_{s(a)}}`; returns `(dim ker, dim coker)`,
/// i.e. `(hom(M,N), ext(M,N))`. The map is assembled with Kronecker
/// products `I ⊗ N_a − M_aᵀ ⊗ I` acting on column-stacked blocks.
pub fn resolution_hom_ext(m: &Representation, n: &Representation) -> (usize, usize) {
    let quiver = m.quiver();
    let nv = quiver.vertex_count();
    let mut col_off = Vec::new();
    let mut total_cols = 0;
    for v in 0..nv {
        col_off.push(total_cols);
        total_cols += m.dim(v) * n.dim(v);
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps()[a], &n.maps()[a]);
        let (ms, mt, ns, nt) = (m.dim(s), m.dim(t), n.dim(s), n.dim(t));
        // vec(X) stacks columns: X (rows × cols) entry (i, j) at j*rows + i
        // target block Hom(M_s, N_t): nt × ms
        let block_rows = nt * ms;
        let mut block = vec![vec![BigRational::zero(); total_cols]; block_rows];
        // vec(N_a φ_s) = (I_ms ⊗ N_a) vec(φ_s), φ_s is ns × ms
        for j in 0..ms {
            for i in 0..nt {
                for k in 0..ns {
                    let x = na[(i, k)];
                    if x != 0 {
                        block[j * nt + i][col_off[s] + j * ns + k] += q(x);
                    }
                }
            }
        }
        // vec(φ_t M_a) = (M_aᵀ ⊗ I_nt) vec(φ_t), φ_t is nt × mt
        for j in 0..ms {
            for k in 0..mt {
                let x = ma[(k, j)];
                if x != 0 {
                    for i in 0..nt {
                        block[j * nt + i][col_off[t] + k * nt + i] -= q(x);
                    }
                }
            }
        }
        rows.extend(block);
    }
    let r = rational_rank(&rows);
    (total_cols - r, rows.len() - r)
}

pub fn tits(quiver: &Quiver, d: &[i64]) -> i64 {
    let mut s: i64 = d.iter().map(|x| x * x).sum();
    for &(a, b) in quiver.arrows() {
        s -= d[a] * d[b];
    }
    s
}

/// Representation with uniformly random entries in `-range..=range`.
pub fn random_rep(quiver: &Arc<Quiver>, dims: &[i64], rng: &mut ChaCha8Rng, range: i64) -> Representation {
    let maps = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let (r, c) = (dims[t] as usize, dims[s] as usize);
            let data = (0..r * c).map(|_| rng.gen_range(-range..=range)).collect();
            IntMat::from_rows(r, c, data).unwrap()
        })
        .collect();
    Representation::new(quiver.clone(), DimVector(dims.to_vec()), maps).unwrap()
}

/// All dimension vectors with entries in `0..=w`, excluding zero.
pub fn dim_vectors(n: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=w).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Exceptional modules with entries `≤ w`, found by scanning every
/// dimension vector of Tits form 1 and testing random representations
/// directly (`hom(M,M) = 1`, `ext(M,M) = 0` through [`resolution_hom_ext`]).
/// A real Schur root has an exceptional generic representation, so a few
/// random tries suffice.
pub fn brute_force_exceptional(quiver: &Arc<Quiver>, w: i64, seed: u64) -> BTreeMap<Vec<i64>, Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for d in dim_vectors(quiver.vertex_count(), w) {
        if tits(quiver, &d) != 1 {
            continue;
        }
        for attempt in 0..12 {
            let range = if attempt < 6 { 3 } else { 9 };
            let m = random_rep(quiver, &d, &mut rng, range);
            if resolution_hom_ext(&m, &m) == (1, 0) {
                out.insert(d.clone(), m);
                break;
            }
        }
    }
    out
}

/// Acyclic quivers on `n` vertices with arrows `i → j` for `i < j`, every
/// multiplicity in `0..=max_mult`.
pub fn small_quivers(n: usize, max_mult: usize) -> Vec<Quiver> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = (max_mult + 1).pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut arrows = Vec::new();
        for &p in &pairs {
            for _ in 0..c % (max_mult + 1) {
                arrows.push(p);
            }
            c /= max_mult + 1;
        }
        let labels = (1..=n).map(|i| i.to_string()).collect();
        out.push(Quiver::from_indices(labels, arrows).unwrap());
    }
    out
}

/// Hom dimensions in the canonical algebra of `p`: paths in the quiver
/// `0 → (arm i) → c` counted, minus one for the single relation among the
/// three paths `0 ⇝ c`. Objects are ordered `0, arm 1, arm 2, arm 3, c`.
pub fn canonical_algebra_homs(p: [u32; 3]) -> Vec<Vec<i64>> {
    // vertices: 0, then each arm's interior, then c
    let interior: usize = p.iter().map(|&x| x as usize - 1).sum();
    let n = interior + 2;
    let c = n - 1;
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut next = 1;
    for &len in &p {
        let mut prev = 0;
        for _ in 1..len {
            arrows.push((prev, next));
            prev = next;
            next += 1;
        }
        arrows.push((prev, c));
    }
    // vertices are numbered in a topological order
    let mut dp = vec![vec![0i64; n]; n];
    for s in 0..n {
        dp[s][s] = 1;
        for t in s + 1..n {
            dp[s][t] = arrows.iter().filter(|&&(_, b)| b == t).map(|&(a, _)| dp[s][a]).sum();
        }
    }
    dp[0][c] -= 1;
    // Hom(O(a), O(b)) = e_a Λ e_b: paths from a to b
    dp
}

/// Sorted componentwise comparison, written out independently.
pub fn dominated(a: [u32; 3], b: [u32; 3]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x[0] <= y[0] && x[1] <= y[1] && x[2] <= y[2]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

