use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U * A * V = S` with unimodular `U`, `V`.
///
/// The diagonal of `S` is nonnegative and satisfies the divisibility chain
/// d1 | d2 | ... with zeros trailing. `u_inv` and `v_inv` are maintained
/// alongside so that callers can move between the ambient bases without
/// re-inverting anything.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Number of nonzero diagonal entries (the rank of the source matrix).
    pub fn rank(&self) -> usize {
        self.s
            .diagonal()
            .iter()
            .take_while(|d| !d.is_zero())
            .count()
    }

    /// Nonzero diagonal entries d1 | d2 | ...
    pub fn nonzero_diagonal(&self) -> alloc::vec::Vec<BigInt> {
        self.s
            .diagonal()
            .into_iter()
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        // (P * U)^-1 = U^-1 * P
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row(i) += k * row(j)
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_row_multiple(i, j, k);
        self.u.add_row_multiple(i, j, k);
        // (E * U)^-1 = U^-1 * E^-1; E^-1 subtracts k * row j, acting on
        // columns of u_inv as col(j) -= k * col(i).
        let neg = -k.clone();
        self.u_inv.add_col_multiple(j, i, &neg);
    }

    /// col(i) += k * col(j)
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_col_multiple(i, j, k);
        self.v.add_col_multiple(i, j, k);
        let neg = -k.clone();
        self.v_inv.add_row_multiple(j, i, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smallest-magnitude nonzero entry of the trailing submatrix starting at
/// `(n, n)`, ties broken by position. Keeps coefficient growth in check.
fn find_pivot(m: &IntMatrix, n: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in n..m.rows() {
        for j in n..m.cols() {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Computes the Smith normal form of `A`.
///
/// Deterministic for a fixed input: the pivot rule and the normalization
/// (nonnegative diagonal, divisibility chain) pin the output down.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Work {
        m: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let mut n = 0;
    while n < rows && n < cols {
        let Some((pi, pj)) = find_pivot(&w.m, n) else {
            break;
        };
        w.swap_rows(n, pi);
        w.swap_cols(n, pj);

        // Clear row n and column n. Each replacement of an off-pivot entry by
        // a remainder strictly shrinks |pivot| over time, so this terminates.
        loop {
            let mut clean = true;
            for i in (n + 1)..rows {
                if w.m[(i, n)].is_zero() {
                    continue;
                }
                let q = div_round(&w.m[(i, n)], &w.m[(n, n)]);
                let negq = -q;
                w.add_row(i, n, &negq);
                if !w.m[(i, n)].is_zero() {
                    // Remainder is smaller than the pivot; promote it.
                    w.swap_rows(n, i);
                    clean = false;
                }
            }
            for j in (n + 1)..cols {
                if w.m[(n, j)].is_zero() {
                    continue;
                }
                let q = div_round(&w.m[(n, j)], &w.m[(n, n)]);
                let negq = -q;
                w.add_col(j, n, &negq);
                if !w.m[(n, j)].is_zero() {
                    w.swap_cols(n, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // Make the pivot divide every entry of the remaining submatrix by
        // folding any offending row into row n and redoing the clearing pass.
        let mut offender = None;
        'scan: for i in (n + 1)..rows {
            for j in (n + 1)..cols {
                if !(&w.m[(i, j)] % &w.m[(n, n)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::from(1);
            w.add_row(n, i, &one);
            continue; // redo position n with the merged row
        }

        if w.m[(n, n)].is_negative() {
            w.negate_row(n);
        }
        n += 1;
    }

    debug_assert_eq!(w.u.mul(a).mul(&w.v), w.m);
    SnfDecomposition {
        u: w.u,
        s: w.m,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Quotient rounding to nearest, which keeps remainders at most |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(r * two) > &b.abs() {
        q + 1
    } else {
        q
    }
}
