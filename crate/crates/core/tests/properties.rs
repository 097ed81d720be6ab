//! Property suite: the per-module invariants, each checked against an
//! independent oracle or by direct verification on seeded random corpora.

mod common;

use common::*;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logmonoid_core::intlin::{
    cokernel_structure, hilbert_basis, kernel_basis, lattice_membership, lp_feasible,
    smith_normal_form, IntMatrix,
};
use logmonoid_core::logcurve::{
    build_basic_monoid, eliminate_defined_generators, ghost_section_check, tropical_feasible,
    varrho_matrix, GhostCandidate, invariant_factor_product,
};
use logmonoid_core::monoid::{node_monoid_embedding, MonoidPresentation, Sharpness};
use logmonoid_core::oracle::{
    class_count_by_degree, enumerate_elements, find_unit_bruteforce, fm_feasible,
    hilbert_bruteforce, Bound,
};
use logmonoid_core::slb::{ExactScalar, ExactUnit, SlbPointPresentation};

#[test]
fn snf_factorization_and_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, rows, cols, 6);
        let d = smith_normal_form(&a);
        assert_eq!(d.u.mul(&a).mul(&d.v), d.s);
        assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(rows));
        assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(cols));
        let diag = d.s.diagonal();
        for k in 0..diag.len() {
            assert!(!diag[k].is_negative());
            if k + 1 < diag.len() && !diag[k].is_zero() && !diag[k + 1].is_zero() {
                assert!((&diag[k + 1] % &diag[k]).is_zero());
            }
            if diag[k].is_zero() && k + 1 < diag.len() {
                assert!(diag[k + 1].is_zero());
            }
        }
    }
}

#[test]
fn cokernel_invariant_under_unimodular_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, rows, cols, 5);
        let g = cokernel_structure(&a);
        let p = random_unimodular(&mut rng, rows, 6);
        let q = random_unimodular(&mut rng, cols, 6);
        let b = p.mul(&a).mul(&q);
        let h = cokernel_structure(&b);
        assert_eq!(g.free_rank, h.free_rank);
        assert_eq!(g.invariant_factors, h.invariant_factors);
    }
}

#[test]
fn kernel_vectors_annihilate_and_are_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, rows, cols, 5);
        let basis = kernel_basis(&a);
        for v in &basis {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        // rank-nullity over the rationals
        let rank = smith_normal_form(&a).rank();
        assert_eq!(basis.len(), cols - rank);
    }
}

#[test]
fn lattice_membership_agrees_with_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, rows, cols, 4);
        // a known member
        let z: Vec<BigInt> = (0..cols).map(|_| BigInt::from(rng.gen_range(-3..=3i64))).collect();
        let v = a.mul_vec(&z);
        let sol = lattice_membership(&v, &a).expect("member must be found");
        assert_eq!(a.mul_vec(&sol), v);
        // a random vector: if accepted, the coefficients must reproduce it
        let w: Vec<BigInt> = (0..rows).map(|_| BigInt::from(rng.gen_range(-6..=6i64))).collect();
        if let Some(sol) = lattice_membership(&w, &a) {
            assert_eq!(a.mul_vec(&sol), w);
        }
    }
}

#[test]
fn lp_matches_fourier_motzkin_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut feasible = 0;
    for _ in 0..300 {
        let sys = random_linear_system(&mut rng, 5, 10);
        let exact = lp_feasible(&sys);
        let oracle = fm_feasible(&sys).expect("within oracle variable limit");
        assert_eq!(exact.is_some(), oracle, "disagreement on {sys:?}");
        if let Some(w) = exact {
            assert!(sys.satisfied_by(&w));
            feasible += 1;
        }
    }
    assert!(feasible > 20, "corpus too skewed: {feasible} feasible");
}

#[test]
fn hilbert_matches_box_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let bound = Bound::default();
    let mut compared = 0;
    for _ in 0..60 {
        let dim = rng.gen_range(2..=3);
        let cone = random_pointed_cone(&mut rng, dim);
        let basis = hilbert_basis(&cone, dim).expect("pointed by construction");
        // The oracle window is the box; instances whose basis leaves it are
        // not comparable and are skipped.
        let in_box = basis
            .iter()
            .all(|v| v.iter().all(|c| c.abs() <= BigInt::from(bound.box_size)));
        if !in_box {
            continue;
        }
        let rows: Vec<Vec<i64>> = (0..cone.rows())
            .map(|i| cone.row(i).iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        let oracle = hilbert_bruteforce(&rows, dim, &bound).expect("dim <= 3");
        let got: Vec<Vec<i64>> = basis
            .iter()
            .map(|v| v.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert_eq!(got, oracle, "cone {cone:?}");
        compared += 1;
    }
    assert!(compared >= 40, "only {compared} comparable cones");
}

#[test]
fn element_eq_is_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let p = random_sharp_presentation(&mut rng);
        let n = p.n_gens();
        let dims: Vec<Vec<BigInt>> = (0..20)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(0..=4i64))).collect())
            .collect();
        for x in &dims[..5] {
            // reflexive
            assert!(p.eq_reprs(x, x));
            for y in &dims[..5] {
                // symmetric
                assert_eq!(p.eq_reprs(x, y), p.eq_reprs(y, x));
                if !p.eq_reprs(x, y) {
                    continue;
                }
                for z in &dims[5..10] {
                    // congruence: x ~ y implies x + z ~ y + z
                    let xz: Vec<BigInt> = x.iter().zip(z).map(|(a, b)| a + b).collect();
                    let yz: Vec<BigInt> = y.iter().zip(z).map(|(a, b)| a + b).collect();
                    assert!(p.eq_reprs(&xz, &yz));
                }
            }
        }
        // transitivity on the oracle's canonical classes
        let reps = enumerate_elements(&p, &Bound { degree: 3, ..Bound::default() });
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                assert!(!p.eq_reprs(a, b), "oracle classes must stay distinct");
            }
        }
    }
}

#[test]
fn sharpness_matches_bruteforce_unit_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let bound = Bound::default();
    let mut not_sharp_seen = 0;
    for _ in 0..120 {
        let n = rng.gen_range(1..=3usize);
        let n_rel = rng.gen_range(0..=2usize);
        let relations: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n_rel)
            .map(|_| {
                (
                    (0..n).map(|_| BigInt::from(rng.gen_range(0..=2i64))).collect(),
                    (0..n).map(|_| BigInt::from(rng.gen_range(0..=2i64))).collect(),
                )
            })
            .collect();
        let Ok(p) = MonoidPresentation::new(n, relations) else {
            continue;
        };
        let sharp = p.is_sharp();
        let unit = find_unit_bruteforce(&p, &bound);
        assert_eq!(
            sharp.is_sharp(),
            unit.is_none(),
            "sharpness disagreement on {p:?}"
        );
        match sharp {
            Sharpness::Sharp { beta } => {
                // interior functional: kills relations, >= 1 on nonzero gens
                for (l, r) in p.relations() {
                    let dl: BigInt = l.iter().zip(&beta).map(|(a, b)| a * b).sum();
                    let dr: BigInt = r.iter().zip(&beta).map(|(a, b)| a * b).sum();
                    assert_eq!(dl, dr);
                }
            }
            Sharpness::NotSharp { unit, inverse } => {
                not_sharp_seen += 1;
                let sum: Vec<BigInt> = unit.iter().zip(&inverse).map(|(a, b)| a + b).collect();
                assert!(p.is_zero_repr(&sum));
                assert!(!p.is_zero_repr(&unit));
            }
        }
    }
    assert!(not_sharp_seen > 5, "corpus never produced units");
}

#[test]
fn groupification_invariant_under_tietze_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..60 {
        let p = random_sharp_presentation(&mut rng);
        let n = p.n_gens();
        let gp = p.groupification().clone();
        // add a redundant generator g = expr and keep all old relations
        let expr: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=2i64))).collect();
        let mut relations: Vec<(Vec<BigInt>, Vec<BigInt>)> = p
            .relations()
            .iter()
            .map(|(l, r)| {
                let mut l2 = l.clone();
                l2.push(BigInt::zero());
                let mut r2 = r.clone();
                r2.push(BigInt::zero());
                (l2, r2)
            })
            .collect();
        let mut lhs = vec![BigInt::zero(); n + 1];
        lhs[n] = BigInt::one();
        let mut rhs = expr;
        rhs.push(BigInt::zero());
        relations.push((lhs, rhs));
        let q = MonoidPresentation::new(n + 1, relations).unwrap();
        let gq = q.groupification().clone();
        assert_eq!(gp.free_rank, gq.free_rank);
        assert_eq!(gp.invariant_factors, gq.invariant_factors);
    }
}

#[test]
fn saturation_agrees_with_double_dual_and_window_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..40 {
        let p = random_sharp_presentation(&mut rng);
        let sat = p.saturate().unwrap();
        let dd = p.double_dual().unwrap();
        assert_eq!(sat.hilbert_basis, dd.hilbert_basis, "on {p:?}");
        // the sharp part is its own saturation: sharp and saturated
        let again = sat.sharp_part.saturate().unwrap();
        assert_eq!(again.torsion_order(), BigInt::one());
        assert_eq!(
            again.hilbert_basis.len(),
            sat.hilbert_basis.len(),
            "sharp part of {p:?} is not saturated"
        );
        assert!(sat.sharp_part.is_sharp().is_sharp());
    }
}

#[test]
fn pushout_rho_one_matches_free_pair_counts() {
    // N ⊕_N N² with 1 ↦ 1, 1 ↦ (1,1) is N²: class counts by degree over
    // representatives of sum ≤ d must be those of max(a,b) ≤ d.
    let q = MonoidPresentation::free(1);
    let n2 = MonoidPresentation::free(2);
    let base = MonoidPresentation::free(1);
    let out = logmonoid_core::monoid::pushout_int(
        &q,
        &n2,
        &base,
        &[bvec(&[1])],
        &[bvec(&[1, 1])],
    )
    .unwrap();
    let counts = class_count_by_degree(&out.presentation, &Bound { degree: 5, ..Bound::default() });
    let total: usize = counts.values().sum();
    // {(a, b) : max(a, b) <= 5} has 36 elements
    assert_eq!(total, 36);
}

#[test]
fn node_embedding_holds_on_random_sharp_monoids() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for _ in 0..40 {
        let p = random_sharp_presentation(&mut rng);
        if p.n_gens() > 3 {
            continue;
        }
        // nonzero rho: a random small combination
        let rho: Vec<BigInt> = (0..p.n_gens())
            .map(|_| BigInt::from(rng.gen_range(0..=2i64)))
            .collect();
        if p.is_zero_repr(&rho) {
            continue;
        }
        let out = node_monoid_embedding(&p, &rho, &[], 4).unwrap();
        assert!(out.report.all_hold(), "window report failed on {p:?}: {:?}", out.report);
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} instances checked");
}

#[test]
fn varrho_count_is_orientation_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 4, 6);
        let base = varrho_matrix(&g, &vec![false; g.edges.len()]).unwrap();
        let expected = invariant_factor_product(&base);
        for _ in 0..3 {
            let orientation: Vec<bool> = (0..g.edges.len()).map(|_| rng.gen_bool(0.5)).collect();
            let m = varrho_matrix(&g, &orientation).unwrap();
            assert_eq!(invariant_factor_product(&m), expected);
        }
    }
}

#[test]
fn forced_zero_deletion_preserves_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 4, 6);
        let bm = build_basic_monoid(&g).unwrap();
        let gp = bm.presentation.groupification().clone();
        let reduced = eliminate_defined_generators(&bm.presentation);
        let gr = reduced.groupification().clone();
        assert_eq!(gp.free_rank, gr.free_rank);
        assert_eq!(gp.invariant_factors, gr.invariant_factors);
    }
}

#[test]
fn ghost_slopes_are_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let target = MonoidPresentation::free(2);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 4, 5);
        // random rho per edge, nonzero
        let rho: Vec<(usize, Vec<BigInt>)> = g
            .edges
            .iter()
            .map(|e| {
                let mut v = vec![
                    BigInt::from(rng.gen_range(0..=2i64)),
                    BigInt::from(rng.gen_range(0..=2i64)),
                ];
                if v.iter().all(|c| c.is_zero()) {
                    v[0] = BigInt::one();
                }
                (e.id, v)
            })
            .collect();
        // vertex values built from integer combinations of the rhos along a
        // spanning structure would be needed for guaranteed solvability;
        // instead check antisymmetry whenever slopes exist.
        let cand = GhostCandidate {
            vertex_values: g
                .vertices
                .iter()
                .map(|v| {
                    (
                        v.id,
                        vec![
                            BigInt::from(rng.gen_range(0..=6i64)),
                            BigInt::from(rng.gen_range(0..=6i64)),
                        ],
                    )
                })
                .collect(),
            marking_values: vec![],
        };
        let forward = ghost_section_check(&g, &target, &rho, &cand).unwrap();
        // reverse every edge: slopes must negate
        let mut flipped = g.clone();
        for e in flipped.edges.iter_mut() {
            core::mem::swap(&mut e.from, &mut e.to);
            for c in e.mu.iter_mut() {
                *c = -c.clone();
            }
        }
        let backward = ghost_section_check(&flipped, &target, &rho, &cand).unwrap();
        match (forward, backward) {
            (Some(f), Some(b)) => {
                for ((e1, s1), (e2, s2)) in f.iter().zip(&b) {
                    assert_eq!(e1, e2);
                    assert_eq!(s1.clone() + s2, BigInt::zero());
                }
            }
            (None, None) => {}
            (f, b) => panic!("solvability must not depend on orientation: {f:?} vs {b:?}"),
        }
    }
}

#[test]
fn tropical_witness_satisfies_presentation() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..60 {
        let g = random_graph(&mut rng, 4, 6);
        let bm = build_basic_monoid(&g).unwrap();
        if let Some(w) = tropical_feasible(&bm) {
            for (l, r) in bm.presentation.relations() {
                let dl: BigInt = l.iter().zip(&w).map(|(a, b)| a * b).sum();
                let dr: BigInt = r.iter().zip(&w).map(|(a, b)| a * b).sum();
                assert_eq!(dl, dr);
            }
            for &i in &bm.reduced_gens {
                assert!(w[i] >= BigInt::one());
            }
        }
    }
}

#[test]
fn slb_enumeration_length_equals_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 4, 6);
        let bm = build_basic_monoid(&g).unwrap();
        let count = logmonoid_core::logcurve::saturation_count(&bm);
        let varrho = logmonoid_core::logcurve::varrho_saturation_count(&g).unwrap();
        assert_eq!(count, varrho);
        match logmonoid_core::slb::enumerate_saturation_data(&bm) {
            Ok(data) => {
                assert_eq!(BigInt::from(data.len()), count);
                // characters valued in roots of unity of matching order
                for d in &data {
                    for (u, ord) in d.character.iter().zip(&d.orders) {
                        assert!(u.pow(ord).is_one());
                    }
                }
            }
            Err(_) => {
                assert!(tropical_feasible(&bm).is_none());
            }
        }
    }
}

#[test]
fn realize_section_constant_on_fibers() {
    // 2 e1 = 2 e2 has the distinct preimages (2,0) and (0,2) of one class.
    let pres = MonoidPresentation::new_i64(2, &[(&[2, 0], &[0, 2])]).unwrap();
    let p = SlbPointPresentation::new(
        pres,
        vec![
            ExactScalar::Unit(ExactUnit::from_i64(3)),
            ExactScalar::Unit(ExactUnit::from_i64(-3)),
        ],
        vec![ExactUnit::from_rational(num_rational::BigRational::from(BigInt::from(1)))],
    )
    .unwrap();
    match p.consistency_check() {
        logmonoid_core::slb::ConsistencyVerdict::Consistent { witness } => {
            let a = p.realize_section(&witness, &bvec(&[2, 0]), 8);
            let b = p.realize_section(&witness, &bvec(&[0, 2]), 8);
            assert_eq!(a, b);
        }
        logmonoid_core::slb::ConsistencyVerdict::Inconsistent(c) => {
            panic!("expected consistent instance: {c:?}")
        }
    }
}
