//! Independent brute-force reference implementations for the test suite.
//!
//! Everything here proceeds by exhaustive bounded search and deliberately
//! shares no algorithms with the modules it checks: element enumeration
//! works by congruence search over an integer row-echelon form built from
//! scratch, feasibility by a standalone Fourier–Motzkin sweep, and Hilbert
//! bases by box enumeration with a pairwise minimality test. Oracle
//! disagreement in a test is a hard failure.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::intlin::LinearSystem;
use crate::monoid::MonoidPresentation;

/// Search bounds shared by the oracles.
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    /// Coefficient-sum cap for element enumeration.
    pub degree: u64,
    /// Coordinate cap (box half-width) for lattice windows.
    pub box_size: i64,
    /// Saturation multiplier cap.
    pub multiplier: u64,
}

impl Default for Bound {
    fn default() -> Self {
        // Sized so the full oracle suite stays under a minute at desk scale.
        Bound { degree: 6, box_size: 10, multiplier: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooManyVariables,
    DimensionTooLarge,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyVariables => write!(f, "oracle limit: too many variables"),
            OracleError::DimensionTooLarge => write!(f, "oracle limit: dimension too large"),
        }
    }
}

/// Column-style integer echelon form, built here so the oracles do not
/// depend on the Smith normal form code they are meant to check.
struct EchelonLattice {
    /// Echelon basis of the lattice, as columns.
    basis: Vec<Vec<BigInt>>,
    dim: usize,
}

impl EchelonLattice {
    fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let mut cols: Vec<Vec<BigInt>> = gens
            .iter()
            .filter(|g| g.iter().any(|c| !c.is_zero()))
            .cloned()
            .collect();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        let mut row = 0;
        while row < dim && !cols.is_empty() {
            // gcd-collect on the current row by repeated subtraction.
            loop {
                cols.retain(|c| c.iter().any(|x| !x.is_zero()));
                let mut nonzero: Vec<usize> = (0..cols.len())
                    .filter(|&j| !cols[j][row].is_zero())
                    .collect();
                if nonzero.is_empty() {
                    break;
                }
                nonzero.sort_by_key(|&j| cols[j][row].abs());
                let pivot = nonzero[0];
                if nonzero.len() == 1 {
                    if cols[pivot][row].is_negative() {
                        for x in cols[pivot].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    break;
                }
                for &j in &nonzero[1..] {
                    let q = cols[j][row].div_floor(&cols[pivot][row]);
                    if q.is_zero() {
                        continue;
                    }
                    for i in 0..dim {
                        let t = &cols[pivot][i] * &q;
                        cols[j][i] -= t;
                    }
                }
                // If nothing changed (all quotients zero), swap pivots by
                // subtracting once to force progress.
                if nonzero[1..].iter().all(|&j| {
                    cols[j][row].is_zero() || cols[j][row].abs() >= cols[pivot][row].abs()
                }) {
                    let j = nonzero[1];
                    if !cols[j][row].is_zero() {
                        for i in 0..dim {
                            let t = cols[pivot][i].clone();
                            cols[j][i] -= t;
                        }
                    }
                }
            }
            // exactly one column nonzero in this row now (or none)
            if let Some(j) = (0..cols.len()).position(|j| !cols[j][row].is_zero()) {
                let col = cols.remove(j);
                basis.push(col);
            }
            row += 1;
        }
        EchelonLattice { basis, dim }
    }

    /// Membership of `v` in the lattice, by echelon descent.
    fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|c| !c.is_zero()).unwrap();
            if v[..lead].iter().any(|c| !c.is_zero()) {
                return false;
            }
            if v[lead].is_zero() {
                continue;
            }
            let (q, r) = v[lead].div_mod_floor(&b[lead]);
            if !r.is_zero() {
                return false;
            }
            for i in 0..self.dim {
                let t = &b[i] * &q;
                v[i] -= t;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

fn relation_lattice(p: &MonoidPresentation) -> EchelonLattice {
    let gens: Vec<Vec<BigInt>> = p
        .relations()
        .iter()
        .map(|(l, r)| l.iter().zip(r).map(|(a, b)| a - b).collect())
        .collect();
    EchelonLattice::from_generators(p.n_gens(), &gens)
}

fn eq_mod_relations(lat: &EchelonLattice, x: &[BigInt], y: &[BigInt]) -> bool {
    let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    lat.contains(&diff)
}

fn vectors_sum_at_most(n: usize, cap: u64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    fn rec(x: &mut Vec<u64>, idx: usize, budget: u64, out: &mut Vec<Vec<BigInt>>) {
        if idx == x.len() {
            out.push(x.iter().map(|&c| BigInt::from(c)).collect());
            return;
        }
        for v in 0..=budget {
            x[idx] = v;
            rec(x, idx + 1, budget - v, out);
        }
        x[idx] = 0;
    }
    rec(&mut x, 0, cap, &mut out);
    out
}

/// All distinct images of `N^I` vectors with coefficient sum ≤
/// `b.degree`, as canonical (lexicographically least, lowest degree)
/// representatives.
pub fn enumerate_elements(p: &MonoidPresentation, b: &Bound) -> Vec<Vec<BigInt>> {
    let lat = relation_lattice(p);
    let all = vectors_sum_at_most(p.n_gens(), b.degree);
    let mut reps: Vec<Vec<BigInt>> = Vec::new();
    'next: for v in all {
        for r in &reps {
            if eq_mod_relations(&lat, r, &v) {
                continue 'next;
            }
        }
        reps.push(v);
    }
    reps
}

/// Bounded membership by enumeration: a nonnegative representative of the
/// class of `w` with coefficient sum at most `cap`, if one exists there.
fn member_by_enumeration(
    lat: &EchelonLattice,
    n: usize,
    w: &[BigInt],
    cap: u64,
) -> Option<Vec<BigInt>> {
    vectors_sum_at_most(n, cap)
        .into_iter()
        .find(|y| eq_mod_relations(lat, y, w))
}

/// Window of the saturation: all classes of integer vectors with
/// coordinates in `[-box, box]` such that `m * q` lands in the monoid for
/// some `1 ≤ m ≤ b.multiplier`, membership tested by enumeration.
///
/// Returns deduplicated class representatives (integer vectors). The
/// multiplier cap means disagreement beyond it is possible in principle;
/// callers flag rather than assert in that regime.
pub fn saturation_bruteforce(p: &MonoidPresentation, b: &Bound) -> Vec<Vec<BigInt>> {
    let n = p.n_gens();
    let lat = relation_lattice(p);
    let member_cap = b.degree + (b.box_size.unsigned_abs()) * b.multiplier * (n as u64);

    let mut window: Vec<Vec<BigInt>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &window {
            for c in -b.box_size..=b.box_size {
                let mut v2 = v.clone();
                v2.push(BigInt::from(c));
                next.push(v2);
            }
        }
        window = next;
    }

    let mut reps: Vec<Vec<BigInt>> = Vec::new();
    'next: for q in window {
        for m in 1..=b.multiplier {
            let mq: Vec<BigInt> = q.iter().map(|c| c * BigInt::from(m)).collect();
            if member_by_enumeration(&lat, n, &mq, member_cap).is_some() {
                for r in &reps {
                    if eq_mod_relations(&lat, r, &q) {
                        continue 'next;
                    }
                }
                reps.push(q);
                continue 'next;
            }
        }
    }
    reps
}

/// Straightforward Fourier–Motzkin feasibility verdict over exact
/// rationals, for systems with at most 6 variables.
///
/// Equalities are written as inequality pairs. Strict rows are compiled
/// into a shared margin variable which is eliminated last and must admit a
/// positive value. Exact duplicates are dropped and Kohler's redundancy
/// criterion (a combination descending from more than `eliminated + 1`
/// original rows is implied by the rest) keeps the naive sweep bounded.
pub fn fm_feasible(sys: &LinearSystem) -> Result<bool, OracleError> {
    if sys.n_vars > 6 {
        return Err(OracleError::TooManyVariables);
    }
    let has_strict = !sys.strict_inequalities.is_empty();
    let total = sys.n_vars + usize::from(has_strict);
    // (coeffs over total vars, rhs, history mask of original rows)
    type Row = (Vec<BigRational>, BigRational, u64);
    let rat = |r: &[BigInt], margin: i64| -> Vec<BigRational> {
        let mut out: Vec<BigRational> =
            r.iter().map(|c| BigRational::from(c.clone())).collect();
        if has_strict {
            out.push(BigRational::from(BigInt::from(margin)));
        }
        out
    };
    let mut rows: Vec<Row> = Vec::new();
    for (r, b) in &sys.equalities {
        rows.push((rat(r, 0), BigRational::from(b.clone()), 0));
        rows.push((
            rat(r, 0).iter().map(|c| -c.clone()).collect(),
            BigRational::from(-b.clone()),
            0,
        ));
    }
    for (r, b) in &sys.weak_inequalities {
        rows.push((rat(r, 0), BigRational::from(b.clone()), 0));
    }
    for (r, b) in &sys.strict_inequalities {
        rows.push((rat(r, -1), BigRational::from(b.clone()), 0));
    }
    let track_history = rows.len() <= 64;
    for (i, row) in rows.iter_mut().enumerate() {
        row.2 = if track_history { 1u64 << i } else { 0 };
    }

    // Resolve constant rows; drop exact duplicates keeping the smallest
    // ancestry.
    fn settle(rows: Vec<Row>) -> Option<Vec<Row>> {
        let mut best: BTreeMap<(Vec<BigInt>, BigRational), u64> = BTreeMap::new();
        for (coeffs, rhs, hist) in rows {
            if coeffs.iter().all(Zero::is_zero) {
                if rhs > BigRational::zero() {
                    return None;
                }
                continue;
            }
            let mut lcm = BigInt::from(1);
            for c in &coeffs {
                lcm = lcm.lcm(c.denom());
            }
            let mut scale = BigRational::from(lcm);
            let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
            let mut g = BigInt::zero();
            for c in &ints {
                g = g.gcd(c);
            }
            if g > BigInt::from(1) {
                for c in ints.iter_mut() {
                    *c /= &g;
                }
                scale /= BigRational::from(g);
            }
            let key = (ints, &rhs * &scale);
            match best.get_mut(&key) {
                None => {
                    best.insert(key, hist);
                }
                Some(h) => {
                    if hist.count_ones() < h.count_ones() {
                        *h = hist;
                    }
                }
            }
        }
        Some(
            best.into_iter()
                .map(|((dir, rhs), hist)| {
                    (dir.into_iter().map(BigRational::from).collect(), rhs, hist)
                })
                .collect(),
        )
    }

    for (round, var) in (0..sys.n_vars).enumerate() {
        let Some(settled) = settle(rows) else {
            return Ok(false);
        };
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut rest = Vec::new();
        for row in settled {
            if row.0[var].is_positive() {
                lowers.push(row);
            } else if row.0[var].is_negative() {
                uppers.push(row);
            } else {
                rest.push(row);
            }
        }
        let max_parents = (round + 2) as u32; // eliminated-after-this-round + 1
        for lo in &lowers {
            for up in &uppers {
                let hist = lo.2 | up.2;
                if track_history && hist.count_ones() > max_parents {
                    continue; // redundant by Kohler's criterion
                }
                let a = lo.0[var].clone();
                let c = -up.0[var].clone();
                let coeffs: Vec<BigRational> = (0..total)
                    .map(|j| &c * &lo.0[j] + &a * &up.0[j])
                    .collect();
                let rhs = &c * &lo.1 + &a * &up.1;
                rest.push((coeffs, rhs, hist));
            }
        }
        rows = rest;
    }

    let Some(rest) = settle(rows) else {
        return Ok(false);
    };
    if !has_strict {
        debug_assert!(rest.is_empty());
        return Ok(true);
    }
    // Only the margin variable remains; it needs a positive value.
    let eps = total - 1;
    let mut lower: Option<BigRational> = None;
    let mut upper: Option<BigRational> = None;
    for (coeffs, rhs, _) in &rest {
        let a = &coeffs[eps];
        let bound = rhs / a;
        if a.is_positive() {
            if lower.as_ref().is_none_or(|b| bound > *b) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|b| bound < *b) {
            upper = Some(bound);
        }
    }
    let zero = BigRational::zero();
    Ok(match (lower, upper) {
        (_, None) => true,
        (None, Some(u)) => u > zero,
        (Some(l), Some(u)) => u > zero && l <= u,
    })
}

/// Box-relative minimal generators of `{x in Z^n : rows · x >= 0}`: the
/// cone lattice points of the box that are not a sum of two nonzero box
/// cone points. Machine integers suffice at oracle scale.
pub fn hilbert_bruteforce(
    rows: &[Vec<i64>],
    n: usize,
    b: &Bound,
) -> Result<Vec<Vec<i64>>, OracleError> {
    if n > 3 {
        return Err(OracleError::DimensionTooLarge);
    }
    let in_cone = |x: &[i64]| {
        rows.iter().all(|row| {
            row.iter()
                .zip(x)
                .map(|(&a, &v)| a.checked_mul(v).expect("oracle overflow"))
                .sum::<i64>()
                >= 0
        })
    };
    let mut pts: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut x = vec![-b.box_size; n];
    loop {
        if x.iter().any(|&c| c != 0) && in_cone(&x) {
            pts.insert(x.clone());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                let mut minimal = Vec::new();
                'outer: for p in &pts {
                    for q in &pts {
                        let r: Vec<i64> = p.iter().zip(q).map(|(a, c)| a - c).collect();
                        if r.iter().all(|&c| c == 0) {
                            continue;
                        }
                        if r.iter().all(|&c| c.abs() <= b.box_size) && in_cone(&r) && pts.contains(&r)
                        {
                            continue 'outer;
                        }
                    }
                    minimal.push(p.clone());
                }
                minimal.sort();
                return Ok(minimal);
            }
            if x[i] < b.box_size {
                x[i] += 1;
                break;
            }
            x[i] = -b.box_size;
            i += 1;
        }
    }
}

/// Brute-force unit search: nonzero classes `u` in the degree window with a
/// nonzero `w` in the window such that `u + w = 0` in the monoid.
pub fn find_unit_bruteforce(p: &MonoidPresentation, b: &Bound) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let lat = relation_lattice(p);
    let zero = vec![BigInt::zero(); p.n_gens()];
    let window = vectors_sum_at_most(p.n_gens(), b.degree);
    for u in &window {
        if eq_mod_relations(&lat, u, &zero) {
            continue;
        }
        for w in &window {
            let sum: Vec<BigInt> = u.iter().zip(w).map(|(a, c)| a + c).collect();
            if eq_mod_relations(&lat, &sum, &zero) {
                return Some((u.clone(), w.clone()));
            }
        }
    }
    None
}

/// Counts the distinct classes in `enumerate_elements`, grouped by the
/// minimal coefficient sum of a representative. Handy for comparing two
/// presentations that should define the same monoid.
pub fn class_count_by_degree(p: &MonoidPresentation, b: &Bound) -> BTreeMap<u64, usize> {
    let lat = relation_lattice(p);
    let mut reps: Vec<(Vec<BigInt>, u64)> = Vec::new();
    for d in 0..=b.degree {
        'next: for v in vectors_sum_at_most_exact(p.n_gens(), d) {
            for (r, _) in &reps {
                if eq_mod_relations(&lat, r, &v) {
                    continue 'next;
                }
            }
            reps.push((v, d));
        }
    }
    let mut out: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, d) in reps {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

fn vectors_sum_at_most_exact(n: usize, d: u64) -> Vec<Vec<BigInt>> {
    vectors_sum_at_most(n, d)
        .into_iter()
        .filter(|v| v.iter().map(|c| u64::try_from(c).unwrap()).sum::<u64>() == d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn enumerate_free_rank_one() {
        let p = MonoidPresentation::free(1);
        let reps = enumerate_elements(&p, &Bound { degree: 3, ..Bound::default() });
        assert_eq!(reps.len(), 4); // 0, 1, 2, 3
    }

    #[test]
    fn enumerate_collapse() {
        let p = MonoidPresentation::new_i64(2, &[(&[1, 0], &[0, 1])]).unwrap();
        let reps = enumerate_elements(&p, &Bound { degree: 2, ..Bound::default() });
        assert_eq!(reps.len(), 3); // 0, e, 2e
    }

    #[test]
    fn enumerate_2_2() {
        // 0, e1, e2, 2e1(=2e2), e1+e2 at degree 2: note e1 != e2 while
        // 2e1 = 2e2.
        let p = MonoidPresentation::new_i64(2, &[(&[2, 0], &[0, 2])]).unwrap();
        let reps = enumerate_elements(&p, &Bound { degree: 2, ..Bound::default() });
        assert_eq!(reps.len(), 5);
        let lat = relation_lattice(&p);
        assert!(!eq_mod_relations(&lat, &b(&[1, 0]), &b(&[0, 1])));
        assert!(eq_mod_relations(&lat, &b(&[2, 0]), &b(&[0, 2])));
    }

    #[test]
    fn saturation_window_sees_torsion() {
        let p = MonoidPresentation::new_i64(2, &[(&[2, 0], &[0, 2])]).unwrap();
        let bound = Bound { degree: 4, box_size: 2, multiplier: 4 };
        let reps = saturation_bruteforce(&p, &bound);
        // the torsion class e1 - e2 satisfies 2(e1 - e2) = 0 ∈ Q
        let lat = relation_lattice(&p);
        assert!(
            reps.iter().any(|r| eq_mod_relations(&lat, r, &b(&[1, -1]))),
            "torsion class missing from saturation window"
        );
    }

    #[test]
    fn saturation_window_of_free_is_quadrant() {
        let p = MonoidPresentation::free(2);
        let bound = Bound { degree: 4, box_size: 2, multiplier: 3 };
        let reps = saturation_bruteforce(&p, &bound);
        // exactly the box ∩ N^2
        assert_eq!(reps.len(), 9);
        assert!(reps.iter().all(|r| r.iter().all(|c| !c.is_negative())));
    }

    #[test]
    fn fm_basic_cases() {
        let mut s = LinearSystem::new(1);
        s.ge_i64(&[1], 1);
        assert_eq!(fm_feasible(&s), Ok(true));

        let mut s = LinearSystem::new(1);
        s.ge_i64(&[1], 1);
        s.ge_i64(&[-1], 0);
        assert_eq!(fm_feasible(&s), Ok(false));

        let mut s = LinearSystem::new(7);
        s.ge_i64(&[1, 0, 0, 0, 0, 0, 0], 0);
        assert_eq!(fm_feasible(&s), Err(OracleError::TooManyVariables));
    }

    #[test]
    fn fm_loop_graph_system() {
        // m_e = 0 forced but m_e >= 1 required.
        let mut s = LinearSystem::new(1);
        s.eq_i64(&[1], 0);
        s.ge_i64(&[1], 1);
        assert_eq!(fm_feasible(&s), Ok(false));
    }

    #[test]
    fn hilbert_box_cases() {
        let bound = Bound::default();
        let free = hilbert_bruteforce(&[vec![1, 0], vec![0, 1]], 2, &bound).unwrap();
        assert_eq!(free, vec![vec![0, 1], vec![1, 0]]);

        let a1 = hilbert_bruteforce(&[vec![1, 0], vec![1, 2]], 2, &bound).unwrap();
        assert_eq!(a1, vec![vec![0, 1], vec![1, 0], vec![2, -1]]);

        let ray = hilbert_bruteforce(&[vec![1, 0], vec![-1, 0], vec![0, 1]], 2, &bound).unwrap();
        assert_eq!(ray, vec![vec![0, 1]]);

        assert_eq!(
            hilbert_bruteforce(&[], 4, &bound),
            Err(OracleError::DimensionTooLarge)
        );
    }

    #[test]
    fn unit_search_finds_inverse_pair() {
        let p = MonoidPresentation::new_i64(2, &[(&[1, 1], &[0, 0])]).unwrap();
        let (u, w) = find_unit_bruteforce(&p, &Bound::default()).unwrap();
        let lat = relation_lattice(&p);
        let sum: Vec<BigInt> = u.iter().zip(&w).map(|(a, c)| a + c).collect();
        assert!(eq_mod_relations(&lat, &sum, &b(&[0, 0])));

        assert!(find_unit_bruteforce(&MonoidPresentation::free(2), &Bound::default()).is_none());
    }
}
