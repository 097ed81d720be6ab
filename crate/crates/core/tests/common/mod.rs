//! Shared random corpus generators for the property and acceptance suites.
//! Everything is seeded, so runs are reproducible.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;

use logmonoid_core::intlin::{kernel_basis, ConstraintKind, IntMatrix, LinearSystem};
use logmonoid_core::logcurve::{DecoratedDualGraph, Edge, Marking, Vertex};
use logmonoid_core::monoid::MonoidPresentation;

pub fn bvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, max_abs: i64) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = BigInt::from(rng.gen_range(-max_abs..=max_abs));
        }
    }
    m
}

/// Random unimodular matrix: a product of elementary row operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        match rng.gen_range(0..3) {
            0 => m.swap_rows(i, j),
            1 => m.negate_row(i),
            _ => {
                let k = BigInt::from(rng.gen_range(-2..=2i64));
                m.add_row_multiple(i, j, &k);
            }
        }
    }
    m
}

/// Random small linear system, mixing equalities and both inequality kinds.
pub fn random_linear_system(rng: &mut impl Rng, max_vars: usize, max_rows: usize) -> LinearSystem {
    let n = rng.gen_range(1..=max_vars);
    let rows = rng.gen_range(1..=max_rows);
    let mut sys = LinearSystem::new(n);
    for _ in 0..rows {
        let coeffs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3i64))).collect();
        let rhs = BigInt::from(rng.gen_range(-3..=3i64));
        let kind = match rng.gen_range(0..4) {
            0 => ConstraintKind::Eq,
            1 | 2 => ConstraintKind::Ge,
            _ => ConstraintKind::Gt,
        };
        match kind {
            ConstraintKind::Eq => sys.eq(coeffs, rhs),
            ConstraintKind::Ge => sys.ge(coeffs, rhs),
            ConstraintKind::Gt => sys.gt(coeffs, rhs),
        };
    }
    sys
}

/// Random pointed cone in dimension `dim`, given by inequality rows with
/// small entries. Pointedness is checked exactly; non-pointed draws are
/// rejected.
pub fn random_pointed_cone(rng: &mut impl Rng, dim: usize) -> IntMatrix {
    loop {
        let rows = rng.gen_range(dim..=dim + 2);
        let m = random_matrix(rng, rows, dim, 3);
        if kernel_basis(&m).is_empty() {
            return m;
        }
    }
}

/// Random sharp fine presentation with the given caps, verified sharp, with
/// torsion-free rank at most 3 so the box oracle stays applicable.
pub fn random_sharp_presentation(rng: &mut impl Rng) -> MonoidPresentation {
    loop {
        let n = rng.gen_range(2..=4usize);
        let n_rel = rng.gen_range(1..=3usize);
        let mut relations = Vec::new();
        for _ in 0..n_rel {
            let lhs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=3i64))).collect();
            let rhs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=3i64))).collect();
            relations.push((lhs, rhs));
        }
        let Ok(p) = MonoidPresentation::new(n, relations) else {
            continue;
        };
        if p.groupification().free_rank > 3 {
            continue;
        }
        if p.is_sharp().is_sharp() {
            return p;
        }
    }
}

/// Random connected decorated dual graph: at most `max_v` vertices and
/// `max_e` edges (loops and multi-edges allowed), `r ≤ 3`, contact orders
/// in `[-5, 5]` for the stored orientation (antisymmetry holds by
/// construction) and zero outside the incident degeneracy sets, which is
/// the geometric regime of contact data.
pub fn random_graph(rng: &mut impl Rng, max_v: usize, max_e: usize) -> DecoratedDualGraph {
    let r = rng.gen_range(1..=3usize);
    let n_v = rng.gen_range(1..=max_v);
    let mut vertices = Vec::new();
    for id in 0..n_v {
        let mut degeneracy = BTreeSet::new();
        for j in 1..=r {
            if rng.gen_bool(0.45) {
                degeneracy.insert(j);
            }
        }
        let mut markings = Vec::new();
        for k in 0..rng.gen_range(0..=2usize) {
            markings.push(Marking {
                id: id * 10 + k,
                mu: (0..r).map(|_| BigInt::from(rng.gen_range(0..=3i64))).collect(),
            });
        }
        vertices.push(Vertex { id, degeneracy, markings });
    }

    let mut edges = Vec::new();
    // Spanning tree first so the graph is connected.
    for id in 1..n_v {
        let to = rng.gen_range(0..id);
        edges.push((id, to));
    }
    let extra = rng.gen_range(0..=max_e.saturating_sub(edges.len()));
    for _ in 0..extra {
        let a = rng.gen_range(0..n_v);
        let b = rng.gen_range(0..n_v); // a == b gives a loop
        edges.push((a, b));
    }

    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(id, (from, to))| {
            let i_e: BTreeSet<usize> = vertices[from]
                .degeneracy
                .union(&vertices[to].degeneracy)
                .copied()
                .collect();
            let mu: Vec<BigInt> = (1..=r)
                .map(|j| {
                    if i_e.contains(&j) {
                        BigInt::from(rng.gen_range(-5..=5i64))
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect();
            Edge { id, from, to, mu }
        })
        .collect();

    DecoratedDualGraph::new(r, vertices, edges).expect("generator emits valid graphs")
}
