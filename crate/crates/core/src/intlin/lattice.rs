use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SnfDecomposition};

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d_i`, presented as a
/// quotient of an ambient lattice `Z^ambient`.
///
/// `projection` maps ambient coordinates to (free ⊕ torsion) coordinates:
/// the first `free_rank` rows give the free part, the remaining rows give
/// torsion coordinates which are only meaningful modulo the matching
/// invariant factor.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors, each ≥ 2, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub projection: IntMatrix,
    /// Ambient lifts of the free generators (columns), then of the torsion
    /// generators. `projection * lift = identity` on (free ⊕ torsion).
    lifts: IntMatrix,
    ambient: usize,
}

/// Coordinates of a group element: a free part in `Z^free_rank` and torsion
/// residues, stored reduced modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_trivial_torsion(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Reduces an ambient vector to canonical (free, torsion) coordinates.
    pub fn reduce(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let y = self.projection.mul_vec(v);
        let free = y[..self.free_rank].to_vec();
        let torsion = y[self.free_rank..]
            .iter()
            .zip(&self.invariant_factors)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    /// Free-part coordinates only (the image in `Z^free_rank`).
    pub fn reduce_free(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.reduce(v).free
    }

    pub fn eq_classes(&self, v: &[BigInt], w: &[BigInt]) -> bool {
        self.reduce(v) == self.reduce(w)
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> bool {
        let e = self.reduce(v);
        e.free.iter().all(Zero::is_zero) && e.torsion.iter().all(Zero::is_zero)
    }

    /// Ambient lift of a (free, torsion) coordinate tuple.
    pub fn lift(&self, e: &GroupElement) -> Vec<BigInt> {
        assert_eq!(e.free.len(), self.free_rank);
        assert_eq!(e.torsion.len(), self.invariant_factors.len());
        let coords: Vec<BigInt> = e.free.iter().chain(e.torsion.iter()).cloned().collect();
        self.lifts.mul_vec(&coords)
    }

    /// Ambient lift of the k-th torsion generator.
    pub fn torsion_generator_lift(&self, k: usize) -> Vec<BigInt> {
        self.lifts.column(self.free_rank + k)
    }

    /// Additive order of a class: the least m ≥ 1 with m*v ≡ 0, or None if
    /// the class has infinite order.
    pub fn class_order(&self, v: &[BigInt]) -> Option<BigInt> {
        let e = self.reduce(v);
        if e.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut m = BigInt::one();
        for (t, d) in e.torsion.iter().zip(&self.invariant_factors) {
            if t.is_zero() {
                continue;
            }
            let g = t.gcd(d);
            m = m.lcm(&(d / g));
        }
        Some(m)
    }
}

/// Lattice basis of `{x : A x = 0}`, canonicalized by column Hermite
/// reduction and sign normalization. Empty iff `A` is injective.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_normal_form(a);
    let rank = d.rank();
    let mut basis: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| d.v.column(j)).collect();
    canonicalize_basis(&mut basis);
    basis
}

/// Hermite-style canonical form for a lattice basis, so equal lattices give
/// equal output. Vectors come out sorted lexicographically.
fn canonicalize_basis(basis: &mut Vec<Vec<BigInt>>) {
    if basis.is_empty() {
        return;
    }
    let n = basis[0].len();
    // Column-style HNF on the matrix whose columns are the basis vectors.
    let mut cols = basis.clone();
    let mut pivot_row = 0;
    let mut pivot_col = 0;
    while pivot_row < n && pivot_col < cols.len() {
        // gcd-reduce entries of row pivot_row across columns >= pivot_col
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for (j, col) in cols.iter().enumerate().skip(pivot_col) {
                let e = &col[pivot_row];
                if e.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, b)) if *b <= e.abs() => {}
                    _ => best = Some((j, e.abs())),
                }
            }
            let Some((jmin, _)) = best else {
                break;
            };
            cols.swap(pivot_col, jmin);
            let mut all_zero = true;
            for j in (pivot_col + 1)..cols.len() {
                if cols[j][pivot_row].is_zero() {
                    continue;
                }
                let q = cols[j][pivot_row].div_floor(&cols[pivot_col][pivot_row]);
                for i in 0..n {
                    let t = &cols[pivot_col][i] * &q;
                    cols[j][i] -= t;
                }
                if !cols[j][pivot_row].is_zero() {
                    all_zero = false;
                }
            }
            if all_zero {
                break;
            }
        }
        if cols[pivot_col][pivot_row].is_zero() {
            pivot_row += 1;
            continue;
        }
        // Normalize pivot sign and reduce the columns to the left.
        if cols[pivot_col][pivot_row].is_negative() {
            for i in 0..n {
                let v = -cols[pivot_col][i].clone();
                cols[pivot_col][i] = v;
            }
        }
        for j in 0..pivot_col {
            let q = cols[j][pivot_row].div_floor(&cols[pivot_col][pivot_row]);
            if q.is_zero() {
                continue;
            }
            for i in 0..n {
                let t = &cols[pivot_col][i] * &q;
                cols[j][i] -= t;
            }
        }
        pivot_row += 1;
        pivot_col += 1;
    }
    cols.sort();
    *basis = cols;
}

/// Structure of `Z^rows / column-span(A)` with explicit projection maps.
pub fn cokernel_structure(a: &IntMatrix) -> AbelianGroup {
    let m = a.rows();
    let d = smith_normal_form(a);
    cokernel_from_snf(&d, m)
}

pub(crate) fn cokernel_from_snf(d: &SnfDecomposition, ambient: usize) -> AbelianGroup {
    let diag = d.nonzero_diagonal();
    let rank = diag.len();
    let free_rank = ambient - rank;

    // y = U x puts the column span in diagonal position: the quotient is
    // free on coordinates rank.., torsion Z/d_i on coordinates with d_i >= 2.
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| diag[i] > BigInt::one()).collect();
    let invariant_factors: Vec<BigInt> = torsion_idx.iter().map(|&i| diag[i].clone()).collect();

    let mut proj_rows: Vec<usize> = (rank..ambient).collect();
    proj_rows.extend(torsion_idx.iter().copied());
    let projection = d.u.select_rows(&proj_rows);

    let mut lift_cols: Vec<Vec<BigInt>> = Vec::with_capacity(proj_rows.len());
    for &i in &proj_rows {
        lift_cols.push(d.u_inv.column(i));
    }
    let lifts = IntMatrix::from_columns(ambient, &lift_cols);

    AbelianGroup {
        free_rank,
        invariant_factors,
        projection,
        lifts,
        ambient,
    }
}

/// Solves `cols * z = v` over the integers, if possible.
///
/// Returns coefficients `z` with `cols * z = v` when `v` lies in the integer
/// column span, `None` otherwise.
pub fn lattice_membership(v: &[BigInt], cols: &IntMatrix) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), cols.rows(), "vector/matrix dimension mismatch");
    let d = smith_normal_form(cols);
    let rank = d.rank();
    let w = d.u.mul_vec(v);
    let mut y = vec![BigInt::zero(); cols.cols()];
    for i in 0..cols.rows() {
        if i < rank {
            let di = &d.s[(i, i)];
            let (q, r) = w[i].div_mod_floor(di);
            if !r.is_zero() {
                return None;
            }
            if i < cols.cols() {
                y[i] = q;
            }
        } else if !w[i].is_zero() {
            return None;
        }
    }
    let z = d.v.mul_vec(&y);
    debug_assert_eq!(cols.mul_vec(&z), v.to_vec());
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_difference() {
        let a = IntMatrix::from_rows_i64(&[&[1, -1]]);
        assert_eq!(kernel_basis(&a), vec![b(&[1, 1])]);
    }

    #[test]
    fn kernel_of_injective_is_empty() {
        let a = IntMatrix::identity(3);
        assert!(kernel_basis(&a).is_empty());
    }

    #[test]
    fn kernel_is_primitive() {
        // The oracle check: small integer solutions of 4x = 6y are exactly
        // the multiples of (3, 2).
        let a = IntMatrix::from_rows_i64(&[&[4, -6]]);
        assert_eq!(kernel_basis(&a), vec![b(&[3, 2])]);
    }

    #[test]
    fn kernel_members_annihilate() {
        let a = IntMatrix::from_rows_i64(&[&[2, 3, 5], &[-1, 4, 0]]);
        for v in kernel_basis(&a) {
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn cokernel_gcd_example() {
        // Z^2 / (4, -6) has d = gcd(4, 6) = 2 torsion and rank 1.
        let a = IntMatrix::from_rows_i64(&[&[4], &[-6]]);
        let g = cokernel_structure(&a);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(g.torsion_order(), BigInt::from(2));
    }

    #[test]
    fn cokernel_of_empty_matrix() {
        let a = IntMatrix::zero(3, 0);
        let g = cokernel_structure(&a);
        assert_eq!(g.free_rank, 3);
        assert!(g.invariant_factors.is_empty());
        assert_eq!(g.torsion_order(), BigInt::one());
    }

    #[test]
    fn cokernel_2_minus_2() {
        let a = IntMatrix::from_rows_i64(&[&[2], &[-2]]);
        let g = cokernel_structure(&a);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn reduce_and_lift_agree() {
        let a = IntMatrix::from_rows_i64(&[&[4], &[-6]]);
        let g = cokernel_structure(&a);
        let v = b(&[7, -3]);
        let e = g.reduce(&v);
        let w = g.lift(&e);
        assert!(g.eq_classes(&v, &w));
        // the relation column itself reduces to zero
        assert!(g.is_zero_class(&b(&[4, -6])));
        // torsion generator has order 2
        let t = g.torsion_generator_lift(0);
        assert_eq!(g.class_order(&t), Some(BigInt::from(2)));
    }

    #[test]
    fn membership_cases() {
        let zero_col = IntMatrix::from_rows_i64(&[&[2], &[-3]]);
        assert_eq!(lattice_membership(&b(&[0, 0]), &zero_col), Some(b(&[0])));
        assert_eq!(lattice_membership(&b(&[4, -6]), &zero_col), Some(b(&[2])));
        let c = IntMatrix::from_rows_i64(&[&[2], &[-2]]);
        assert_eq!(lattice_membership(&b(&[1, 0]), &c), None);
    }

    #[test]
    fn membership_solves_exactly() {
        let cols = IntMatrix::from_rows_i64(&[&[2, 1], &[0, 3], &[1, 1]]);
        let target = cols.mul_vec(&b(&[5, -4]));
        let z = lattice_membership(&target, &cols).unwrap();
        assert_eq!(cols.mul_vec(&z), target);
    }
}
