use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lattice::{cokernel_structure, kernel_basis, lattice_membership};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertError {
    /// The inequality system has a nonzero lineality space.
    NonPointedCone,
}

impl fmt::Display for HilbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertError::NonPointedCone => write!(f, "cone has a nonzero lineality space"),
        }
    }
}

/// Hilbert basis of the pointed cone `{x in Z^n : A x >= 0}`.
///
/// `inequalities` are the rows of `A`. The result is the unique minimal
/// generating set of the monoid of lattice points: no element is a sum of
/// two nonzero lattice points of the cone. Output is sorted
/// lexicographically.
///
/// Dimensions up to three go through extreme rays, a fan triangulation and
/// fundamental-parallelepiped points per simplicial piece; higher
/// dimensions fall back to the Contejean–Devie minimal-solution search.
/// Either way a final reduction pass extracts the minimal generators, so
/// the algorithm choice never shows in the output.
pub fn hilbert_basis(inequalities: &IntMatrix, n: usize) -> Result<Vec<Vec<BigInt>>, HilbertError> {
    assert_eq!(inequalities.cols(), n, "inequality arity mismatch");
    if n == 0 {
        return Ok(Vec::new());
    }
    if !kernel_basis(inequalities).is_empty() {
        return Err(HilbertError::NonPointedCone);
    }

    let candidates = if n <= 3 {
        candidates_by_rays(inequalities, n)
    } else {
        candidates_by_search(inequalities, n)
    };

    let in_cone = |v: &[BigInt]| inequalities.mul_vec(v).iter().all(|c| !c.is_negative());
    let candidates: Vec<Vec<BigInt>> = candidates
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    debug_assert!(candidates.iter().all(|v| in_cone(v)));

    let mut basis = Vec::new();
    'outer: for h in &candidates {
        for g in &candidates {
            if g == h {
                continue;
            }
            let diff: Vec<BigInt> = h.iter().zip(g).map(|(a, b)| a - b).collect();
            if diff.iter().all(Zero::is_zero) {
                continue;
            }
            if in_cone(&diff) {
                continue 'outer; // h = g + (h - g) is reducible
            }
        }
        basis.push(h.clone());
    }
    basis.sort();
    Ok(basis)
}

/// Generating set through the cone's extreme rays.
///
/// Extreme rays are kernels of (n-1)-subsets of facet rows; a
/// lower-dimensional cone is rewritten inside the saturated span of its
/// rays first. In dimension three the rays are ordered around the
/// cross-section polygon by exact orientation predicates and the cone is
/// fanned into simplicial pieces, each contributing its half-open
/// parallelepiped points.
fn candidates_by_rays(inequalities: &IntMatrix, n: usize) -> Vec<Vec<BigInt>> {
    let rays = extreme_rays(inequalities, n);
    if rays.is_empty() {
        return Vec::new();
    }

    // Lower-dimensional cones: restrict to the saturated span of the rays.
    let ray_matrix = IntMatrix::from_columns(n, &rays);
    let cone_dim = smith_normal_form(&ray_matrix).rank();
    if cone_dim < n {
        let coker = cokernel_structure(&ray_matrix);
        let free_proj = coker.projection.select_rows(&(0..coker.free_rank).collect::<Vec<_>>());
        let span_basis = kernel_basis(&free_proj); // basis of the saturated span
        debug_assert_eq!(span_basis.len(), cone_dim);
        let b = IntMatrix::from_columns(n, &span_basis);
        // Inequalities pulled back to span coordinates.
        let sub_ineqs = inequalities.mul(&b);
        let sub = candidates_by_rays(&sub_ineqs, cone_dim);
        return sub.into_iter().map(|y| b.mul_vec(&y)).collect();
    }

    let mut out: Vec<Vec<BigInt>> = rays.clone();
    let simplices: Vec<Vec<Vec<BigInt>>> = if rays.len() <= n {
        vec![rays.clone()]
    } else {
        // Only reachable for n = 3: fan the cross-section polygon.
        let ordered = sort_rays_cyclically(&rays);
        (1..ordered.len() - 1)
            .map(|i| vec![ordered[0].clone(), ordered[i].clone(), ordered[i + 1].clone()])
            .collect()
    };
    for simplex in &simplices {
        out.extend(parallelepiped_points(simplex, n));
    }
    out
}

/// Extreme rays: for every (n-1)-subset of rows with one-dimensional
/// kernel, the primitive kernel vector oriented into the cone.
fn extreme_rays(inequalities: &IntMatrix, n: usize) -> Vec<Vec<BigInt>> {
    let m = inequalities.rows();
    let satisfies_all =
        |v: &[BigInt]| inequalities.mul_vec(v).iter().all(|c| !c.is_negative());

    let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    match n {
        1 => subsets.push(Vec::new()),
        2 => subsets.extend((0..m).map(|i| vec![i])),
        3 => {
            for i in 0..m {
                for j in (i + 1)..m {
                    subsets.push(vec![i, j]);
                }
            }
        }
        _ => unreachable!("ray construction is used for n <= 3"),
    }
    for subset in subsets {
        let sub = inequalities.select_rows(&subset);
        let kernel = kernel_basis(&sub);
        if kernel.len() != 1 {
            continue;
        }
        let v = kernel.into_iter().next().unwrap();
        let neg: Vec<BigInt> = v.iter().map(|c| -c.clone()).collect();
        if satisfies_all(&v) {
            rays.insert(v);
        } else if satisfies_all(&neg) {
            rays.insert(neg);
        }
    }
    rays.into_iter().collect()
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Cyclic order of extreme rays around the cross-section polygon of a
/// full-dimensional pointed cone in Z^3, via exact orientation signs.
///
/// The cross-section lives in the plane `w·x = 1` for a functional `w`
/// strictly positive on every ray (it exists because the cone is pointed);
/// the ray sum projects to an interior point of the polygon, and vertex
/// directions from it are compared with integer 3x3 determinants.
fn sort_rays_cyclically(rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    use super::lp::{lp_feasible, LinearSystem};

    let mut sys = LinearSystem::new(3);
    for r in rays {
        sys.ge(r.clone(), BigInt::one());
    }
    let w_rat = lp_feasible(&sys).expect("pointed full-dimensional cone has a dual-interior functional");
    let mut lcm = BigInt::one();
    for c in &w_rat {
        lcm = lcm.lcm(c.denom());
    }
    let w: Vec<BigInt> = w_rat
        .iter()
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();

    let mut center = vec![BigInt::zero(); 3];
    for r in rays {
        for (c, x) in center.iter_mut().zip(r) {
            *c += x;
        }
    }
    // Directions of the polygon vertices as seen from the projected
    // center, lifted to the plane w·x = 0.
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let wc = dot(&w, &center);
    debug_assert!(wc.is_positive());
    let qs: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| {
            let wr = dot(&w, r);
            (0..3).map(|i| &wc * &r[i] - &wr * &center[i]).collect()
        })
        .collect();
    let orient = |u: &[BigInt], v: &[BigInt]| -> BigInt { det3(u, v, &center) };

    let reference = qs[0].clone();
    let half = |q: &[BigInt]| -> u8 {
        let o = orient(&reference, q);
        if o.is_positive() {
            0
        } else if o.is_negative() {
            1
        } else if dot(&reference, q).is_positive() {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (0..rays.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ha, hb) = (half(&qs[a]), half(&qs[b]));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let o = orient(&qs[a], &qs[b]);
        if o.is_positive() {
            core::cmp::Ordering::Less
        } else if o.is_negative() {
            core::cmp::Ordering::Greater
        } else {
            core::cmp::Ordering::Equal
        }
    });
    idx.into_iter().map(|i| rays[i].clone()).collect()
}

/// Lattice points of the half-open parallelepiped spanned by the rays of a
/// full-dimensional simplicial cone: one representative per class of
/// `Z^n / R Z^n`, shifted into `R · [0,1)^n`.
fn parallelepiped_points(rays: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let r = IntMatrix::from_columns(n, rays);
    let snf = smith_normal_form(&r);
    debug_assert_eq!(snf.rank(), n, "simplicial cone has independent rays");
    let diag = snf.nonzero_diagonal();

    let mut points = Vec::new();
    let mut tuple = vec![BigInt::zero(); n];
    loop {
        // Ambient representative of the class with these diagonal
        // coordinates, then reduced into the fundamental domain.
        let z = snf.u_inv.mul_vec(&tuple);
        let uz = snf.u.mul_vec(&z);
        let lambda_v: Vec<BigRational> = (0..n)
            .map(|i| BigRational::new(uz[i].clone(), diag[i].clone()))
            .collect();
        let lambda = rational_matvec(&snf.v, &lambda_v);
        let frac: Vec<BigRational> = lambda.iter().map(|l| l - l.floor()).collect();
        let point: Vec<BigInt> = (0..n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (j, f) in frac.iter().enumerate() {
                    acc += BigRational::from(r[(i, j)].clone()) * f;
                }
                debug_assert!(acc.is_integer());
                acc.to_integer()
            })
            .collect();
        if point.iter().any(|c| !c.is_zero()) {
            points.push(point);
        }

        // Odometer over the invariant-factor tuples.
        let mut k = 0;
        loop {
            if k == n {
                return points;
            }
            tuple[k] += 1;
            if tuple[k] < diag[k] {
                break;
            }
            tuple[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// `M · v` over the rationals.
fn rational_matvec(m: &IntMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            let mut acc = BigRational::zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc += BigRational::from(m[(i, j)].clone()) * x;
                }
            }
            acc
        })
        .collect()
}

/// Generating set by the Contejean–Devie minimal-solution search on the
/// homogeneous system `A x⁺ − A x⁻ − s = 0` over `N^(2n+m)`, projected to
/// `x = x⁺ − x⁻`.
fn candidates_by_search(inequalities: &IntMatrix, n: usize) -> Vec<Vec<BigInt>> {
    let m = inequalities.rows();
    let big_cols = 2 * n + m;
    let mut system = IntMatrix::zero(m, big_cols);
    for i in 0..m {
        for j in 0..n {
            system[(i, j)] = inequalities[(i, j)].clone();
            system[(i, n + j)] = -inequalities[(i, j)].clone();
        }
        system[(i, 2 * n + i)] = BigInt::from(-1);
    }
    contejean_devie(&system)
        .iter()
        .map(|sol| (0..n).map(|j| &sol[j] - &sol[n + j]).collect())
        .collect()
}

/// Contejean–Devie search for the minimal nonzero solutions of `B y = 0`
/// over the naturals.
///
/// Breadth-first: level k holds the frontier of coordinate sum k. A node
/// grows by a unit coordinate only when that moves the residual towards the
/// kernel (`<B y, B e_k> < 0`), and any node dominating an already-found
/// solution is discarded. Solutions of sum k are complete before level
/// k + 1 is built, so the domination pruning bounds the search.
fn contejean_devie(b: &IntMatrix) -> Vec<Vec<BigInt>> {
    let cols = b.cols();
    let mut minimal: Vec<Vec<BigInt>> = Vec::new();
    let col_values: Vec<Vec<BigInt>> = (0..cols).map(|k| b.column(k)).collect();
    let dominates = |small: &[BigInt], big: &[BigInt]| small.iter().zip(big).all(|(s, t)| s <= t);

    let mut level: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new(); // (y, B y)
    for k in 0..cols {
        let mut y = vec![BigInt::zero(); cols];
        y[k] = BigInt::from(1);
        let v = col_values[k].clone();
        if v.iter().all(Zero::is_zero) {
            minimal.push(y);
        } else {
            level.push((y, v));
        }
    }

    while !level.is_empty() {
        let mut next: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for (y, v) in &level {
            if minimal.iter().any(|s| dominates(s, y)) {
                continue;
            }
            for k in 0..cols {
                // <v, B e_k> < 0 keeps the walk pointed at the kernel.
                let dot: BigInt = v.iter().zip(&col_values[k]).map(|(a, c)| a * c).sum();
                if !dot.is_negative() {
                    continue;
                }
                let mut y2 = y.clone();
                y2[k] += 1;
                next.insert(y2);
            }
        }
        let mut new_level = Vec::new();
        for y in next {
            if minimal.iter().any(|s| dominates(s, &y)) {
                continue;
            }
            let v = b.mul_vec(&y);
            if v.iter().all(Zero::is_zero) {
                minimal.push(y);
            } else {
                new_level.push((y, v));
            }
        }
        level = new_level;
    }

    // Keep only the pointwise-minimal solutions.
    let mut result: Vec<Vec<BigInt>> = Vec::new();
    for s in &minimal {
        if !minimal.iter().any(|t| t != s && dominates(t, s)) {
            result.push(s.clone());
        }
    }
    result
}
