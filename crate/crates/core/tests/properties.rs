mod common;

use std::sync::Arc;

use nccount_core::exc::{
    derived_euler, is_exceptional_pair, left_mutation, right_mutation, ExcCollection,
};
use nccount_core::linalg::IntMat;
use nccount_core::nc::{k0_key, Embedding};
use nccount_core::quiver::classify;
use nccount_core::rep::RepMorphism;
use nccount_core::weight::all_triples;
use nccount_core::*;
use proptest::prelude::*;
use rand::Rng;

fn named(name: &str) -> Arc<Quiver> {
    Arc::new(Quiver::parse(name).unwrap())
}

// dimension vectors grow exponentially under repeated mutation on wild quivers
const TAME: [&str; 6] = ["K(2)", "A(3)", "A~(2,1)", "D~(4)", "D(4)", "A~(3,1)"];

const NAMES: [&str; 8] = ["K(2)", "K(3)", "A(3)", "A~(2,1)", "A~(2,2)", "D~(4)", "D(4)", "A~(3,1)"];

fn det(m: &IntMat) -> i64 {
    // Laplace expansion is enough for the small matrices used here
    let n = m.rows();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)]).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[(0, j)] * det(&IntMat::from_vecs(&minor))
        })
        .sum()
}

#[test]
fn euler_matrix_is_unitriangular_in_topological_order() {
    for name in NAMES.iter().chain(&["E~(6)", "D~(6)", "E(7)"]) {
        let q = named(name);
        let m = q.euler_matrix_topological();
        for i in 0..m.rows() {
            assert_eq!(m[(i, i)], 1);
            for j in 0..i {
                assert_eq!(m[(i, j)], 0, "{name}");
            }
        }
        assert_eq!(det(&m), 1, "{name}");
    }
}

#[test]
fn null_root_spans_radical() {
    for name in ["K(2)", "A~(2,1)", "A~(3,2)", "D~(4)", "D~(7)", "E~(6)", "E~(7)", "E~(8)"] {
        let q = named(name);
        let delta = classify(&q).null_root().cloned().unwrap();
        assert_eq!(q.tits_form(&delta).unwrap(), 0);
        for v in 0..q.vertex_count() {
            let e = DimVector::unit(q.vertex_count(), v);
            assert_eq!(q.euler_form(&delta, &e).unwrap() + q.euler_form(&e, &delta).unwrap(), 0, "{name}");
        }
    }
}

// weight_seq, exhaustive on entries ≤ 6

#[test]
fn preceq_is_a_partial_order_up_to_permutation() {
    let all = all_triples(6);
    for a in &all {
        assert!(a.preceq(a));
        for b in &all {
            if a.preceq(b) && b.preceq(a) {
                assert_eq!(a.normalized(), b.normalized());
            }
        }
    }
    // transitivity on a coarser grid to keep this quick
    let small = all_triples(4);
    for a in &small {
        for b in &small {
            if !a.preceq(b) {
                continue;
            }
            for c in &small {
                if b.preceq(c) {
                    assert!(a.preceq(c), "{a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn strict_order_decreases_weight() {
    let all = all_triples(6);
    for a in &all {
        for b in &all {
            if a.prec(b) {
                assert!(a.weight() < b.weight(), "{a} {b}");
            }
        }
    }
}

#[test]
fn dynkin_type_is_closed_downward() {
    let all = all_triples(6);
    for b in all.iter().filter(|p| p.is_dynkin_type()) {
        for a in &all {
            if a.preceq(b) {
                assert!(a.is_dynkin_type(), "{a} below {b}");
            }
        }
    }
}

#[test]
fn decide_embedding_is_monotone() {
    let dynkin: Vec<WeightSequence> = all_triples(5).into_iter().filter(WeightSequence::is_dynkin_type).collect();
    for p in &dynkin {
        for p1 in &dynkin {
            if decide_embedding(p1, p).unwrap() != Embedding::NonEmptyFinite {
                continue;
            }
            for p2 in dynkin.iter().filter(|x| x.preceq(p1)) {
                assert_eq!(decide_embedding(p2, p).unwrap(), Embedding::NonEmptyFinite);
            }
        }
    }
}

// rep_lab

fn small_dims(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_ext_match_resolution_oracle(qi in 0usize..NAMES.len(), seed in any::<u64>()) {
        let q = named(NAMES[qi]);
        let mut rng = common::rng(seed);
        let n = q.vertex_count();
        let dm: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let dn: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let m = common::random_rep(&q, &dm, &mut rng, 2);
        let nn = common::random_rep(&q, &dn, &mut rng, 2);
        let (h, e) = common::resolution_hom_ext(&m, &nn);
        prop_assert_eq!(m.hom_dim(&nn).unwrap(), h);
        prop_assert_eq!(m.ext_dim(&nn).unwrap(), e);
        prop_assert_eq!(h as i64 - e as i64, q.euler_form(m.dims(), nn.dims()).unwrap());
    }

    #[test]
    fn hom_is_additive(qi in 0usize..NAMES.len(), seed in any::<u64>()) {
        let q = named(NAMES[qi]);
        let mut rng = common::rng(seed);
        let n = q.vertex_count();
        let reps: Vec<Representation> = (0..3)
            .map(|_| {
                let d: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                common::random_rep(&q, &d, &mut rng, 2)
            })
            .collect();
        let sum = reps[0].direct_sum(&reps[1]).unwrap();
        prop_assert_eq!(
            sum.hom_dim(&reps[2]).unwrap(),
            reps[0].hom_dim(&reps[2]).unwrap() + reps[1].hom_dim(&reps[2]).unwrap()
        );
        prop_assert_eq!(
            reps[2].hom_dim(&sum).unwrap(),
            reps[2].hom_dim(&reps[0]).unwrap() + reps[2].hom_dim(&reps[1]).unwrap()
        );
    }

    #[test]
    fn kernel_cokernel_exactness(qi in 0usize..NAMES.len(), seed in any::<u64>(), dims in small_dims(6)) {
        let q = named(NAMES[qi]);
        let mut rng = common::rng(seed);
        let n = q.vertex_count();
        let dm: Vec<i64> = dims[..n].to_vec();
        let dn: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        // a generic quotient-like source so that Hom is often nonzero
        let m = common::random_rep(&q, &dm, &mut rng, 1);
        let nn = common::random_rep(&q, &dn, &mut rng, 1);
        let basis = m.hom_basis(&nn).unwrap();
        prop_assert_eq!(basis.len(), m.hom_dim(&nn).unwrap());
        // random integer combination of the basis
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-2..=2)).collect();
        let blocks: Vec<IntMat> = (0..n)
            .map(|v| {
                let mut b = IntMat::zeros(nn.dim(v), m.dim(v));
                for (f, &c) in basis.iter().zip(&coeffs) {
                    for i in 0..b.rows() {
                        for j in 0..b.cols() {
                            b[(i, j)] += c * f.blocks()[v][(i, j)];
                        }
                    }
                }
                b
            })
            .collect();
        let f = RepMorphism::new(m.clone(), nn.clone(), blocks).unwrap();
        let ker = f.kernel().unwrap();
        let coker = f.cokernel().unwrap();
        for (v, r) in f.ranks().into_iter().enumerate() {
            prop_assert_eq!(r, m.dim(v) - ker.dim(v));
            prop_assert_eq!(ker.dim(v) as i64 - coker.dim(v) as i64, m.dim(v) as i64 - nn.dim(v) as i64);
        }
        // the kernel embeds in the source and the target maps onto the cokernel
        if !ker.is_zero() {
            prop_assert!(ker.hom_dim(&m).unwrap() >= 1);
        }
        if !coker.is_zero() {
            prop_assert!(nn.hom_dim(&coker).unwrap() >= 1);
        }
    }
}

// exc_engine

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mutations_are_inverse_and_keep_the_lattice(qi in 0usize..NAMES.len(), i in 0usize..64, j in 0usize..64) {
        let q = named(NAMES[qi]);
        let e = enumerate_exceptional(&q, 3).unwrap();
        let objs = e.objects();
        let (x, y) = (&objs[i % objs.len()], &objs[j % objs.len()]);
        prop_assume!(i % objs.len() != j % objs.len());
        for (a, b) in [(x.clone(), y.clone()), (x.clone(), y.shifted(1)), (y.clone(), x.clone())] {
            if !is_exceptional_pair(&a, &b).unwrap() {
                continue;
            }
            let l = left_mutation(&a, &b).unwrap();
            prop_assert!(is_exceptional_pair(&l, &a).unwrap());
            prop_assert_eq!(derived_euler(&l.shifted(-1), &a), derived_euler(&a, &b));
            let back = right_mutation(&l, &a).unwrap();
            prop_assert!(back.module().is_isomorphic_exceptional(b.module()).unwrap());
            prop_assert_eq!(back.shift(), b.shift());
            let r = right_mutation(&a, &b).unwrap();
            prop_assert!(is_exceptional_pair(&b, &r).unwrap());
            let back = left_mutation(&b, &r).unwrap();
            prop_assert!(back.module().is_isomorphic_exceptional(a.module()).unwrap());
            prop_assert_eq!(back.shift(), a.shift());
            // same saturated span before and after
            prop_assert_eq!(k0_key(a.dims(), b.dims()).unwrap(), k0_key(l.dims(), a.dims()).unwrap());
            prop_assert_eq!(k0_key(a.dims(), b.dims()).unwrap(), k0_key(b.dims(), r.dims()).unwrap());
        }
    }

    #[test]
    fn mutated_collections_stay_exceptional(qi in 0usize..TAME.len(), moves in proptest::collection::vec((any::<bool>(), 0usize..8), 1..6)) {
        let q = named(TAME[qi]);
        let mut c = ExcCollection::projectives(&q);
        for (left, pos) in moves {
            let pos = pos % (c.len() - 1).max(1);
            if c.len() < 2 {
                break;
            }
            c = if left { c.mutate_left(pos).unwrap() } else { c.mutate_right(pos).unwrap() };
            prop_assert!(ExcCollection::new(c.objects().to_vec()).is_ok());
        }
        // the classes still form a basis of K0
        let rows: Vec<Vec<i64>> = c.objects().iter().map(|o| o.class().0).collect();
        prop_assert_eq!(nccount_core::linalg::rank(&rows, q.vertex_count()), q.vertex_count());
    }
}

#[test]
fn enumeration_outputs_are_exceptional_and_distinct() {
    for name in NAMES.iter().chain(&["E~(6)"]) {
        let e = enumerate_exceptional(&named(name), 4).unwrap();
        let objs = e.objects();
        for (i, o) in objs.iter().enumerate() {
            assert!(o.module().is_exceptional(), "{name} {}", o.dims());
            assert_eq!(o.shift(), 0);
            for p in &objs[..i] {
                assert!(!p.module().is_isomorphic_exceptional(o.module()).unwrap());
            }
        }
    }
}

#[test]
fn enumeration_matches_scan_on_five_vertices() {
    for name in ["A(5)", "D(5)", "D~(4)", "A~(3,2)", "A~(4,1)"] {
        let q = named(name);
        let e = enumerate_exceptional(&q, 4).unwrap();
        let ours: Vec<Vec<i64>> = e.objects().iter().map(|o| o.dims().0.clone()).collect();
        let theirs: Vec<Vec<i64>> = common::brute_force_exceptional(&q, 4, 11).keys().cloned().collect();
        assert_eq!(ours, theirs, "{name}");
    }
    // a wild five-vertex quiver
    let q = Arc::new(
        Quiver::new(
            &["1", "2", "3", "4", "5"],
            &[("1", "2"), ("1", "2"), ("2", "3"), ("3", "4"), ("1", "5")],
        )
        .unwrap(),
    );
    let e = enumerate_exceptional(&q, 3).unwrap();
    let ours: Vec<Vec<i64>> = e.objects().iter().map(|o| o.dims().0.clone()).collect();
    let theirs: Vec<Vec<i64>> = common::brute_force_exceptional(&q, 3, 5).keys().cloned().collect();
    assert_eq!(ours, theirs);
}

// nc_count

#[test]
fn counts_are_monotone_in_the_window() {
    for (name, l) in [("K(2)", 1), ("A~(2,1)", 1), ("D~(4)", 1), ("A~(2,2)", 0), ("K(3)", 2)] {
        let q = named(name);
        let counts: Vec<usize> = (1..=6).map(|w| count_Cl(&q, l, w).unwrap().count).collect();
        assert!(counts.windows(2).all(|p| p[0] <= p[1]), "{name} l={l}: {counts:?}");
    }
}

#[test]
fn vanishing_on_dynkin_and_affine() {
    for name in ["A(4)", "D(5)", "E(7)"] {
        let e = enumerate_exceptional(&named(name), 6).unwrap();
        assert!(!e.truncated());
        for l in 1..=4 {
            assert!(nccount_core::nc::strong_pairs_in(&e, l).unwrap().is_empty(), "{name} l={l}");
        }
    }
    for name in ["K(2)", "A~(3,1)", "D~(5)"] {
        let e = enumerate_exceptional(&named(name), 6).unwrap();
        for l in 2..=5 {
            assert!(nccount_core::nc::strong_pairs_in(&e, l).unwrap().is_empty(), "{name} l={l}");
        }
    }
}

#[test]
fn stabilization_windows() {
    // frozen from the counting run; each is the first window where the count
    // agrees with the previous window and no curve is undecided
    for (p, w, count) in [("1,1,1", 3, 1), ("2,1,1", 3, 2), ("2,2,1", 3, 4), ("2,2,2", 4, 8), ("3,2,1", 3, 6)] {
        let q = p
            .parse::<WeightSequence>()
            .unwrap()
            .to_quiver(nccount_core::weight::Orientation::default())
            .unwrap();
        let r = nccount_core::nc::stable_count_Cl(&q, 1, 8).unwrap().unwrap();
        assert_eq!((r.window, r.count), (w, count), "T({p})");
    }
}
