use std::collections::HashSet;

use blockforge_core::construct::{
    construct_ball_power, construct_cherry, construct_neighborhood, edge_span_union, cherry_hypergraph, lower_bound,
};
use blockforge_core::lincomb::{plc_edge, PlcOracle};
use blockforge_core::linalg::{enumerate_subspaces, gaussian_binomial, normalize};
use blockforge_core::mincode::{blocking_to_code, duality_check, is_s_minimal};
use blockforge_core::supply::{supply_mds, verify_general_position, PointSupply, SupplyProvenance};
use blockforge_core::verify::{counterexample_is_valid, is_strong_blocking, is_strong_blocking_sampled, VerifyOptions};
use blockforge_core::{BallMode, BlockingSet, Budgets, FieldSpec, Graph, Matrix, Provenance, Scalar, SubspaceBasis};
use proptest::prelude::*;

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field() -> impl Strategy<Value = FieldSpec> {
    proptest::sample::select(ORDERS.to_vec()).prop_map(|q| FieldSpec::of_order(q).unwrap())
}

fn matrix(rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> impl Strategy<Value = Matrix> {
    (field(), rows, cols).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(0..f.q(), r * c)
            .prop_map(move |data| Matrix::from_vec(&f, r, c, data).unwrap())
    })
}

fn point_set(f: &FieldSpec, k: usize, raw: &[Vec<Scalar>]) -> BlockingSet {
    BlockingSet::new(f, k, raw.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect(), Provenance::new("test", serde_json::Value::Null)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field(), a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix(1..6, 1..7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let r = m.rref();
        prop_assert!(r.matrix.is_rref());
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        // rank-nullity
        prop_assert_eq!(m.null_space().rows() + m.rank(), m.cols());
    }

    #[test]
    fn null_space_annihilates(m in matrix(1..5, 1..7)) {
        let ns = m.null_space();
        if ns.rows() > 0 {
            prop_assert!(m.mul(&ns.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_map_kernel_is_the_subspace(m in matrix(1..4, 2..6)) {
        let l = SubspaceBasis::from_rows(&m);
        if l.codim() > 0 {
            let q = l.quotient_map().unwrap();
            prop_assert_eq!(q.rows(), l.codim());
            prop_assert_eq!(SubspaceBasis::annihilated_by(&q), l);
        }
    }

    #[test]
    fn plc_edge_matches_full_enumeration(m in matrix(2..5, 2..6), lrows in 0usize..3, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let f = m.field().clone();
        if m.columns().iter().any(|c| c.iter().all(|&x| x == 0)) {
            return Ok(());
        }
        let k = m.rows();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Vec<Scalar>> = (0..lrows).map(|_| (0..k).map(|_| rng.gen_range(0..f.q())).collect()).collect();
        let l = if gens.is_empty() { SubspaceBasis::zero(&f, k) } else { SubspaceBasis::from_rows(&Matrix::from_rows(&f, &gens).unwrap()) };
        let x: Vec<usize> = (0..m.cols()).filter(|_| rng.gen_bool(0.6)).collect();
        if x.is_empty() || (f.q() as u64 - 1).pow(x.len() as u32) > 10_000 {
            return Ok(());
        }
        // every tuple of nonzero coefficients, no scalar normalization
        let q = f.q();
        let total = (q as u64 - 1).pow(x.len() as u32);
        let exists = (0..total).any(|mut idx| {
            let mut v = vec![0; k];
            for &c in &x {
                let a = (idx % (q as u64 - 1)) as Scalar + 1;
                idx /= q as u64 - 1;
                for (r, vr) in v.iter_mut().enumerate() {
                    *vr = f.add(*vr, f.mul(a, m.get(r, c)));
                }
            }
            l.contains(&v)
        });
        let found = plc_edge(&m, &x, &l, x.len()).unwrap();
        prop_assert_eq!(found.is_some(), exists);
        if let Some(w) = found {
            prop_assert!(w.check(&m, &l));
            prop_assert_eq!(w.coefficients[0], 1);
        }
    }

    #[test]
    fn exhaustive_and_sampled_agree(f in proptest::sample::select(vec![2u32, 3]), k in 3usize..5, s in 1usize..3, picks in proptest::collection::vec(any::<u16>(), 1..30), seed in any::<u64>()) {
        let f = FieldSpec::of_order(f).unwrap();
        if s >= k {
            return Ok(());
        }
        let all = BlockingSet::all_points(&f, k);
        let chosen: Vec<Vec<Scalar>> = picks.iter().map(|&p| all.points()[p as usize % all.len()].clone()).collect();
        let b = point_set(&f, k, &chosen);
        let ex = is_strong_blocking(&b, s, VerifyOptions::default(), &Budgets::default()).unwrap();
        let sm = is_strong_blocking_sampled(&b, s, 50, seed).unwrap();
        if ex.passed() {
            prop_assert!(sm.passed());
        } else {
            prop_assert!(counterexample_is_valid(&b, s, ex.counterexample.as_ref().unwrap()));
        }
        if let Some(cx) = &sm.counterexample {
            prop_assert!(!ex.passed());
            prop_assert!(counterexample_is_valid(&b, s, cx));
        }
        for jobs in [3, 8] {
            let sharded = is_strong_blocking(&b, s, VerifyOptions { jobs, exhaust_all: false }, &Budgets::default()).unwrap();
            prop_assert_eq!(serde_json::to_string(&sharded).unwrap(), serde_json::to_string(&ex).unwrap());
        }
    }

    #[test]
    fn verifier_agrees_with_minimality(f in proptest::sample::select(vec![2u32, 3]), k in 2usize..5, picks in proptest::collection::vec(any::<u16>(), 2..10), s in 1usize..3) {
        let f = FieldSpec::of_order(f).unwrap();
        if s >= k {
            return Ok(());
        }
        let all = BlockingSet::all_points(&f, k);
        let chosen: Vec<Vec<Scalar>> = picks.iter().map(|&p| all.points()[p as usize % all.len()].clone()).collect();
        let b = point_set(&f, k, &chosen);
        let Ok(code) = blocking_to_code(&b) else { return Ok(()) };
        let blocking = is_strong_blocking(&b, s, VerifyOptions::default(), &Budgets::default()).unwrap().passed();
        let minimal = is_s_minimal(&code, s, &Budgets::default()).unwrap().passed();
        prop_assert_eq!(blocking, minimal);
        prop_assert_eq!(duality_check(code.generator(), s, &Budgets::default()).unwrap(), (blocking, minimal));
    }
}

#[test]
fn enumeration_counts_match_gaussian_binomial() {
    let b = Budgets::default();
    for q in [2, 3, 4] {
        let f = FieldSpec::of_order(q).unwrap();
        for k in 1..5usize {
            for codim in 0..=k {
                let e = enumerate_subspaces(&f, k, codim, &b).unwrap();
                let expected = u64::try_from(gaussian_binomial(k as u32, codim as u32, q)).unwrap();
                assert_eq!(e.len(), expected);
                let distinct: HashSet<Vec<Vec<Scalar>>> = e.iter().map(|s| s.basis().row_vecs()).collect();
                assert_eq!(distinct.len() as u64, expected);
            }
        }
    }
}

#[test]
fn constructions_respect_the_lower_bound() {
    let b = Budgets::default();
    for (q, k, n) in [(3u32, 3usize, 4usize), (4, 3, 5), (5, 3, 6), (5, 4, 6), (4, 4, 5)] {
        let f = FieldSpec::of_order(q).unwrap();
        let w = supply_mds(&f, k, n).unwrap();
        let set = construct_cherry(&Graph::complete(n), &w, &b).unwrap();
        let r = is_strong_blocking(&set, 2, VerifyOptions { jobs: 2, exhaust_all: false }, &b).unwrap();
        if r.passed() {
            assert!(set.len() as u128 >= lower_bound(q as u64, k as u64, 2).unwrap());
        }
        // cherry count bound for a d-regular graph: n d^2 (q^3 - 1)/(q - 1)
        let d = (n - 1) as u128;
        assert!(set.len() as u128 <= n as u128 * d * d * ((q as u128).pow(3) - 1) / (q as u128 - 1));
    }
}

#[test]
fn span_union_point_count_matches_per_edge_recount() {
    let f = FieldSpec::of_order(5).unwrap();
    let w = supply_mds(&f, 3, 4).unwrap();
    let h = cherry_hypergraph(&Graph::complete(4)).unwrap();
    let set = edge_span_union(&h, &w, &Budgets::default()).unwrap();
    let mut naive = HashSet::new();
    for e in h.edges() {
        let sub = SubspaceBasis::from_rows(&w.points().select_columns(e).transpose());
        for p in BlockingSet::all_points(&f, 3).points() {
            if sub.contains(p) {
                naive.insert(p.clone());
            }
        }
    }
    assert_eq!(set.len(), naive.len());
}

#[test]
fn ball_power_s1_on_connected_graph_blocks() {
    // C_6 over 6 points of F_7^3 in general position
    let f = FieldSpec::of_order(7).unwrap();
    let w = supply_mds(&f, 3, 6).unwrap();
    let b = Budgets::default();
    for mode in [BallMode::CommonCenter, BallMode::PairwiseDistance] {
        let set = construct_ball_power(&Graph::cycle(6), &w, 1, mode, &b).unwrap();
        assert!(is_strong_blocking(&set, 1, VerifyOptions::default(), &b).unwrap().passed(), "{mode:?}");
    }
}

#[test]
fn ball_power_k5_over_f7_is_strong_2_blocking() {
    let f = FieldSpec::of_order(7).unwrap();
    let w = supply_mds(&f, 3, 5).unwrap();
    let b = Budgets::default();
    let set = construct_ball_power(&Graph::complete(5), &w, 2, BallMode::CommonCenter, &b).unwrap();
    assert_eq!(set.provenance().parameters["edges"], 10);
    assert!(is_strong_blocking(&set, 2, VerifyOptions::default(), &b).unwrap().passed());
}

#[test]
fn neighborhood_on_star_spans_iff_supply_spans() {
    let f = FieldSpec::of_order(5).unwrap();
    let b = Budgets::default();
    let star = Graph::star(5);
    let spanning = supply_mds(&f, 3, 5).unwrap();
    let set = construct_neighborhood(&star, &spanning, 1, &b).unwrap();
    assert!(is_strong_blocking(&set, 1, VerifyOptions::default(), &b).unwrap().passed());
    // five points inside the plane x2 = 0 do not span F_5^3
    let flat: Vec<Vec<Scalar>> = (0..5).map(|a| vec![1, a, 0]).collect();
    let flat = PointSupply::new(Matrix::from_columns(&f, 3, &flat).unwrap(), SupplyProvenance::File).unwrap();
    let set = construct_neighborhood(&star, &flat, 1, &b).unwrap();
    assert!(!is_strong_blocking(&set, 1, VerifyOptions::default(), &b).unwrap().passed());
}

#[test]
fn disconnected_graph_without_spanning_component_fails() {
    let f = FieldSpec::of_order(5).unwrap();
    let w = supply_mds(&f, 4, 6).unwrap();
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    let b = Budgets::default();
    let set = construct_ball_power(&g, &w, 1, BallMode::CommonCenter, &b).unwrap();
    assert!(!is_strong_blocking(&set, 1, VerifyOptions::default(), &b).unwrap().passed());
}

#[test]
fn mds_supplies_always_certify() {
    let b = Budgets::default();
    for q in [4u32, 5, 7] {
        let f = FieldSpec::of_order(q).unwrap();
        for n in 3..=(q as usize + 1).min(8) {
            for k in 2..=n {
                let r = verify_general_position(&supply_mds(&f, k, n).unwrap(), None, None, &b);
                assert_eq!((r.s_independence, r.span_threshold), (k - 1, Some(k)));
            }
        }
    }
}

#[test]
fn plc_oracle_on_full_space_accepts_everything() {
    let f = FieldSpec::of_order(3).unwrap();
    let w = supply_mds(&f, 3, 4).unwrap();
    let full = SubspaceBasis::full(&f, 3);
    let o = PlcOracle::new(w.points(), &full, 4).unwrap();
    for x in [vec![0], vec![1, 2], vec![0, 1, 2, 3]] {
        assert!(o.edge(&x).unwrap().is_some());
    }
    let mut v = vec![2, 1, 0];
    assert!(normalize(&f, &mut v));
    assert_eq!(v, vec![1, 2, 0]);
}
