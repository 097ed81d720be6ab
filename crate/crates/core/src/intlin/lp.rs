use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// row · x = rhs
    Eq,
    /// row · x ≥ rhs
    Ge,
    /// row · x > rhs
    Gt,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub kind: ConstraintKind,
}

/// A finite system of integral linear constraints over rational variables.
///
/// Rational input rows are cleared of denominators on entry, so all stored
/// coefficient data is integral.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub n_vars: usize,
    pub equalities: Vec<(Vec<BigInt>, BigInt)>,
    pub weak_inequalities: Vec<(Vec<BigInt>, BigInt)>,
    pub strict_inequalities: Vec<(Vec<BigInt>, BigInt)>,
}

impl LinearSystem {
    pub fn new(n_vars: usize) -> Self {
        LinearSystem {
            n_vars,
            equalities: Vec::new(),
            weak_inequalities: Vec::new(),
            strict_inequalities: Vec::new(),
        }
    }

    fn check_row(&self, row: &[BigInt]) {
        assert_eq!(row.len(), self.n_vars, "constraint arity mismatch");
    }

    pub fn eq(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        self.check_row(&row);
        self.equalities.push((row, rhs));
        self
    }

    pub fn ge(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        self.check_row(&row);
        self.weak_inequalities.push((row, rhs));
        self
    }

    pub fn gt(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        self.check_row(&row);
        self.strict_inequalities.push((row, rhs));
        self
    }

    pub fn eq_i64(&mut self, row: &[i64], rhs: i64) -> &mut Self {
        self.eq(row.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(rhs))
    }

    pub fn ge_i64(&mut self, row: &[i64], rhs: i64) -> &mut Self {
        self.ge(row.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(rhs))
    }

    pub fn gt_i64(&mut self, row: &[i64], rhs: i64) -> &mut Self {
        self.gt(row.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(rhs))
    }

    /// Adds `row · x (kind) rhs` from rational data, clearing denominators.
    pub fn push_rational(&mut self, row: &[BigRational], rhs: &BigRational, kind: ConstraintKind) {
        let mut lcm = rhs.denom().clone();
        for c in row {
            lcm = lcm.lcm(c.denom());
        }
        let scale = BigRational::from(lcm);
        let int_row: Vec<BigInt> = row.iter().map(|c| (c * &scale).to_integer()).collect();
        let int_rhs = (rhs * &scale).to_integer();
        match kind {
            ConstraintKind::Eq => self.eq(int_row, int_rhs),
            ConstraintKind::Ge => self.ge(int_row, int_rhs),
            ConstraintKind::Gt => self.gt(int_row, int_rhs),
        };
    }

    pub fn constraints(&self) -> impl Iterator<Item = Constraint> + '_ {
        let eqs = self.equalities.iter().map(|(r, b)| Constraint {
            coeffs: r.clone(),
            rhs: b.clone(),
            kind: ConstraintKind::Eq,
        });
        let ges = self.weak_inequalities.iter().map(|(r, b)| Constraint {
            coeffs: r.clone(),
            rhs: b.clone(),
            kind: ConstraintKind::Ge,
        });
        let gts = self.strict_inequalities.iter().map(|(r, b)| Constraint {
            coeffs: r.clone(),
            rhs: b.clone(),
            kind: ConstraintKind::Gt,
        });
        eqs.chain(ges).chain(gts)
    }

    /// True when every right-hand side vanishes, i.e. solutions scale.
    pub fn is_homogeneous(&self) -> bool {
        self.constraints().all(|c| c.rhs.is_zero())
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        assert_eq!(x.len(), self.n_vars);
        self.constraints().all(|c| {
            let lhs: BigRational = c
                .coeffs
                .iter()
                .zip(x)
                .map(|(a, v)| BigRational::from(a.clone()) * v)
                .sum();
            let rhs = BigRational::from(c.rhs.clone());
            match c.kind {
                ConstraintKind::Eq => lhs == rhs,
                ConstraintKind::Ge => lhs >= rhs,
                ConstraintKind::Gt => lhs > rhs,
            }
        })
    }
}

type R = BigRational;

/// Inequality `coeffs · x ≥ rhs`, strict when `strict` is set. `history`
/// is the set of original rows a combination descends from, used for
/// Imbert's redundancy criterion.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<R>,
    rhs: R,
    strict: bool,
    history: u64,
}

/// Decides feasibility of `sys` over the rationals, exactly.
///
/// Returns a rational witness satisfying every constraint, or `None` as a
/// proof of infeasibility. Equalities are removed first by exact Gaussian
/// elimination; the residual inequality system goes to Fourier–Motzkin when
/// at most eight variables remain and to an exact two-phase simplex
/// otherwise.
pub fn lp_feasible(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let n = sys.n_vars;

    // Rational form of all constraints.
    let mut eqs: Vec<(Vec<R>, R)> = sys
        .equalities
        .iter()
        .map(|(r, b)| (to_rat(r), R::from(b.clone())))
        .collect();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for (r, b) in &sys.weak_inequalities {
        ineqs.push(Ineq { coeffs: to_rat(r), rhs: R::from(b.clone()), strict: false, history: 0 });
    }
    for (r, b) in &sys.strict_inequalities {
        ineqs.push(Ineq { coeffs: to_rat(r), rhs: R::from(b.clone()), strict: true, history: 0 });
    }

    // Gaussian elimination of equalities. Each pivot variable is expressed
    // in the remaining ones and substituted everywhere.
    let mut subst: Vec<(usize, Vec<R>, R)> = Vec::new(); // x_p = coeffs · x + const
    let mut eliminated = vec![false; n];
    while !eqs.is_empty() {
        let (row, rhs) = eqs[0].clone();
        let Some(p) = (0..n).find(|&j| !eliminated[j] && !row[j].is_zero()) else {
            if !rhs.is_zero() {
                return None; // 0 = c with c != 0
            }
            eqs.remove(0);
            continue;
        };
        // x_p = (rhs - sum_{j != p} row_j x_j) / row_p
        let inv = row[p].recip();
        let mut expr = vec![R::zero(); n];
        for j in 0..n {
            if j != p && !row[j].is_zero() {
                expr[j] = -&row[j] * &inv;
            }
        }
        let cst = &rhs * &inv;
        eliminated[p] = true;
        eqs.remove(0);
        for (r2, b2) in eqs.iter_mut() {
            substitute(r2, b2, p, &expr, &cst);
        }
        for iq in ineqs.iter_mut() {
            let mut b2 = iq.rhs.clone();
            substitute(&mut iq.coeffs, &mut b2, p, &expr, &cst);
            iq.rhs = b2;
        }
        subst.push((p, expr, cst));
    }

    let free: Vec<usize> = (0..n).filter(|&j| !eliminated[j]).collect();

    // Compress to free coordinates.
    let compressed: Vec<Ineq> = ineqs
        .iter()
        .map(|iq| Ineq {
            coeffs: free.iter().map(|&j| iq.coeffs[j].clone()).collect(),
            rhs: iq.rhs.clone(),
            strict: iq.strict,
            history: 0,
        })
        .collect();

    let free_assign = if free.len() <= 8 {
        fourier_motzkin(compressed, free.len())?
    } else {
        simplex_feasible(compressed, free.len())?
    };

    // Reconstruct the full witness.
    let mut x = vec![R::zero(); n];
    for (k, &j) in free.iter().enumerate() {
        x[j] = free_assign[k].clone();
    }
    for (p, expr, cst) in subst.iter().rev() {
        let mut v = cst.clone();
        for j in 0..n {
            if !expr[j].is_zero() {
                v += &expr[j] * &x[j];
            }
        }
        x[*p] = v;
    }
    debug_assert!(sys.satisfied_by(&x));
    Some(x)
}

fn to_rat(row: &[BigInt]) -> Vec<R> {
    row.iter().map(|c| R::from(c.clone())).collect()
}

/// Replaces variable `p` by `expr · x + cst` in `row · x ≥ rhs`.
fn substitute(row: &mut [R], rhs: &mut R, p: usize, expr: &[R], cst: &R) {
    let c = core::mem::replace(&mut row[p], R::zero());
    if c.is_zero() {
        return;
    }
    for j in 0..row.len() {
        if !expr[j].is_zero() {
            let t = &c * &expr[j];
            row[j] += t;
        }
    }
    *rhs -= &c * cst;
}

/// Rational-normal form of a weak inequality: primitive integer
/// coefficients and the matching scaled right-hand side.
fn normal_form(iq: &Ineq) -> (Vec<BigInt>, R) {
    let mut lcm = BigInt::one();
    for c in &iq.coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let scale = R::from(lcm);
    let mut ints: Vec<BigInt> = iq.coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let mut factor = scale;
    if g > BigInt::one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
        factor /= R::from(g);
    }
    (ints, &iq.rhs * factor)
}

/// Removes exact duplicates, keeping the representative with the fewest
/// ancestors so Kohler's criterion prunes as little as possible.
fn dedupe(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: BTreeMap<(Vec<BigInt>, R), u64> = BTreeMap::new();
    for iq in rows {
        let key = normal_form(&iq);
        match best.get_mut(&key) {
            None => {
                best.insert(key, iq.history);
            }
            Some(h) => {
                if iq.history.count_ones() < h.count_ones() {
                    *h = iq.history;
                }
            }
        }
    }
    best.into_iter()
        .map(|((dir, rhs), history)| Ineq {
            coeffs: dir.into_iter().map(R::from).collect(),
            rhs,
            strict: false,
            history,
        })
        .collect()
}

/// Fourier–Motzkin elimination with a witness on feasibility.
///
/// Strictness is compiled away first: every strict row gets `-ε` added for
/// a shared fresh margin variable, after which the all-weak system is
/// eliminated (with Kohler's redundancy criterion bounding the blowup: a
/// combination descending from more than `eliminated + 1` original rows is
/// implied by the rest and dropped). The margin variable is left for last
/// and must admit a positive value.
fn fourier_motzkin(ineqs: Vec<Ineq>, n: usize) -> Option<Vec<R>> {
    let has_strict = ineqs.iter().any(|iq| iq.strict);
    let total = n + usize::from(has_strict);
    let mut current: Vec<Ineq> = ineqs
        .into_iter()
        .map(|mut iq| {
            if has_strict {
                iq.coeffs.push(if iq.strict { -R::one() } else { R::zero() });
            }
            iq.strict = false;
            iq
        })
        .collect();
    let track_history = current.len() <= 64;
    for (i, iq) in current.iter_mut().enumerate() {
        iq.history = if track_history { 1u64 << i } else { 0 };
    }

    // stages[k] holds the system before eliminating its variable
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    let mut remaining: BTreeSet<usize> = (0..n).collect();

    loop {
        // Constant rows are decided immediately and dropped.
        let mut next = Vec::new();
        for iq in current {
            if iq.coeffs.iter().all(Zero::is_zero) {
                if iq.rhs > R::zero() {
                    return None;
                }
            } else {
                next.push(iq);
            }
        }
        current = dedupe(next);
        if remaining.is_empty() {
            break;
        }

        // Pick the variable minimizing the product of bound counts.
        let var = remaining
            .iter()
            .copied()
            .min_by_key(|&j| {
                let lowers = current.iter().filter(|iq| iq.coeffs[j].is_positive()).count();
                let uppers = current.iter().filter(|iq| iq.coeffs[j].is_negative()).count();
                (lowers.max(1) * uppers.max(1), j)
            })
            .unwrap();
        remaining.remove(&var);

        let mut lowers = Vec::new(); // x_var >= bound
        let mut uppers = Vec::new(); // x_var <= bound
        let mut untouched = Vec::new();
        for iq in current.into_iter() {
            if iq.coeffs[var].is_positive() {
                lowers.push(iq);
            } else if iq.coeffs[var].is_negative() {
                uppers.push(iq);
            } else {
                untouched.push(iq);
            }
        }
        stages.push((var, lowers.iter().chain(&uppers).chain(&untouched).cloned().collect()));

        // After this round, `stages.len()` variables have been eliminated.
        let max_parents = (stages.len() + 1) as u32;
        let mut combined = untouched;
        for lo in &lowers {
            for up in &uppers {
                let history = lo.history | up.history;
                if track_history && history.count_ones() > max_parents {
                    continue; // redundant by Kohler's criterion
                }
                // lo: a x_var + L·x >= bl  (a > 0)  =>  x_var >= (bl - L·x)/a
                // up: -c x_var + U·x >= bu (c > 0)  =>  x_var <= (U·x - bu)/c
                // combine: c·(L·x - bl) + a·(U·x - bu) >= 0
                let a = lo.coeffs[var].clone();
                let c = -up.coeffs[var].clone();
                let mut coeffs = vec![R::zero(); lo.coeffs.len()];
                for j in 0..coeffs.len() {
                    if j == var {
                        continue;
                    }
                    coeffs[j] = &c * &lo.coeffs[j] + &a * &up.coeffs[j];
                }
                let rhs = &c * &lo.rhs + &a * &up.rhs;
                combined.push(Ineq { coeffs, rhs, strict: false, history });
            }
        }
        current = combined;
    }

    let mut x = vec![R::zero(); total];

    // Only the margin variable can remain; it must admit a positive value.
    if has_strict {
        let eps = total - 1;
        let mut lower: Option<R> = None;
        let mut upper: Option<R> = None;
        for iq in &current {
            let a = &iq.coeffs[eps];
            debug_assert!(!a.is_zero(), "constants were already resolved");
            let bound = &iq.rhs / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|b| bound > *b) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|b| bound < *b) {
                upper = Some(bound);
            }
        }
        let zero = R::zero();
        let lo = match lower {
            Some(l) => {
                if l > zero {
                    l
                } else {
                    zero.clone()
                }
            }
            None => zero.clone(),
        };
        x[eps] = match upper {
            Some(u) => {
                if u <= zero || lo > u {
                    return None;
                }
                if lo.is_zero() {
                    // any value in (0, u]
                    u / R::from(BigInt::from(2))
                } else {
                    (&lo + &u) / R::from(BigInt::from(2))
                }
            }
            None => lo + R::one(),
        };
        if x[eps].is_zero() {
            x[eps] = R::one();
        }
    } else {
        debug_assert!(current.is_empty());
    }

    // Back-substitute a witness stage by stage; all rows are weak now.
    for (var, system) in stages.iter().rev() {
        let mut lower: Option<R> = None;
        let mut upper: Option<R> = None;
        for iq in system {
            let a = &iq.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            let mut rest = iq.rhs.clone();
            for j in 0..iq.coeffs.len() {
                if j != *var && !iq.coeffs[j].is_zero() {
                    rest -= &iq.coeffs[j] * &x[j];
                }
            }
            let bound = &rest / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|b| bound > *b) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|b| bound < *b) {
                upper = Some(bound);
            }
        }
        x[*var] = match (lower, upper) {
            (None, None) => R::zero(),
            (Some(l), None) => l,
            (None, Some(u)) => u,
            (Some(l), Some(u)) => (l + u) / R::from(BigInt::from(2)),
        };
    }
    x.truncate(n);
    Some(x)
}

/// Exact two-phase simplex with Bland's rule on the residual inequality
/// system. Free variables are split into positive and negative parts;
/// strict inequalities get a shared margin variable which is maximized.
fn simplex_feasible(ineqs: Vec<Ineq>, n: usize) -> Option<Vec<R>> {
    let has_strict = ineqs.iter().any(|iq| iq.strict);
    let homogeneous = ineqs.iter().all(|iq| iq.rhs.is_zero());

    // In the homogeneous case strict rows can be stiffened to ">= 1" and the
    // margin variable dropped: solutions scale.
    let (rows, use_eps): (Vec<Ineq>, bool) = if has_strict && homogeneous {
        (
            ineqs
                .into_iter()
                .map(|mut iq| {
                    if iq.strict {
                        iq.rhs = R::one();
                        iq.strict = false;
                    }
                    iq
                })
                .collect(),
            false,
        )
    } else {
        (ineqs, has_strict)
    };

    // Columns: x+ (n), x- (n), eps (0 or 1).
    let ncols = 2 * n + usize::from(use_eps);
    let eps_col = 2 * n;

    // Standard form rows: row · x >= rhs becomes -row·x+ + row·x- (+eps if
    // strict) <= -rhs, then slacks are added.
    let mut a: Vec<Vec<R>> = Vec::new();
    let mut b: Vec<R> = Vec::new();
    for iq in &rows {
        let mut r = vec![R::zero(); ncols];
        for j in 0..n {
            r[j] = -iq.coeffs[j].clone();
            r[n + j] = iq.coeffs[j].clone();
        }
        if use_eps && iq.strict {
            r[eps_col] = R::one();
        }
        a.push(r);
        b.push(-iq.rhs.clone());
    }
    if use_eps {
        // eps <= 1 keeps phase II bounded.
        let mut r = vec![R::zero(); ncols];
        r[eps_col] = R::one();
        a.push(r);
        b.push(R::one());
    }

    let m = a.len();
    if m == 0 {
        return Some(vec![R::zero(); n]);
    }

    // Add slack columns; artificials for rows with negative rhs.
    let mut tab: Vec<Vec<R>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut total_cols = ncols + m;
    let mut artificials: Vec<usize> = Vec::new();
    for i in 0..m {
        let negate = b[i] < R::zero();
        let mut row: Vec<R> = if negate {
            a[i].iter().map(|c| -c.clone()).collect()
        } else {
            a[i].clone()
        };
        row.resize(ncols + m, R::zero());
        row[ncols + i] = if negate { -R::one() } else { R::one() };
        if negate {
            b[i] = -b[i].clone();
        }
        tab.push(row);
        basis.push(ncols + i); // provisional; fixed below for negated rows
        if negate {
            artificials.push(i);
        }
    }
    // Artificial columns appended at the end for the negated rows.
    for (k, &i) in artificials.iter().enumerate() {
        for (r, row) in tab.iter_mut().enumerate() {
            row.push(if r == i { R::one() } else { R::zero() });
        }
        basis[i] = total_cols + k;
    }
    let n_art = artificials.len();
    total_cols += n_art;

    // Phase I: maximize -(sum of artificials).
    if n_art > 0 {
        let mut obj = vec![R::zero(); total_cols];
        for k in 0..n_art {
            obj[total_cols - n_art + k] = -R::one();
        }
        let mut obj_val = R::zero();
        reduce_objective(&mut obj, &mut obj_val, &tab, &b, &basis);
        run_simplex(&mut tab, &mut b, &mut basis, &mut obj, &mut obj_val);
        if !obj_val.is_zero() {
            return None;
        }
        // Pivot any remaining basic artificials out, or drop their rows.
        let art_start = total_cols - n_art;
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut b, &mut basis, i, j, None);
                } else {
                    tab.remove(i);
                    b.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        // Drop artificial columns entirely.
        for row in tab.iter_mut() {
            row.truncate(art_start);
        }
        total_cols = art_start;
    }

    if use_eps {
        let mut obj = vec![R::zero(); total_cols];
        obj[eps_col] = R::one();
        let mut obj_val = R::zero();
        reduce_objective(&mut obj, &mut obj_val, &tab, &b, &basis);
        run_simplex(&mut tab, &mut b, &mut basis, &mut obj, &mut obj_val);
        if !obj_val.is_positive() {
            return None;
        }
    }

    // Read out the witness.
    let mut vals = vec![R::zero(); total_cols];
    for (i, &bv) in basis.iter().enumerate() {
        vals[bv] = b[i].clone();
    }
    let x: Vec<R> = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
    Some(x)
}

fn reduce_objective(obj: &mut [R], obj_val: &mut R, tab: &[Vec<R>], b: &[R], basis: &[usize]) {
    for (i, &bv) in basis.iter().enumerate() {
        if !obj[bv].is_zero() {
            let c = obj[bv].clone();
            for j in 0..obj.len() {
                let t = &c * &tab[i][j];
                obj[j] -= t;
            }
            *obj_val += &c * &b[i];
        }
    }
}

fn pivot(
    tab: &mut [Vec<R>],
    b: &mut [R],
    basis: &mut [usize],
    row: usize,
    col: usize,
    obj: Option<(&mut [R], &mut R)>,
) {
    let piv = tab[row][col].clone();
    let inv = piv.recip();
    for v in tab[row].iter_mut() {
        *v *= &inv;
    }
    b[row] *= &inv;
    for i in 0..tab.len() {
        if i == row || tab[i][col].is_zero() {
            continue;
        }
        let f = tab[i][col].clone();
        for j in 0..tab[i].len() {
            let t = &f * &tab[row][j];
            tab[i][j] -= t;
        }
        let t = &f * &b[row];
        b[i] -= t;
    }
    if let Some((obj, obj_val)) = obj {
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for j in 0..obj.len() {
                let t = &f * &tab[row][j];
                obj[j] -= t;
            }
            *obj_val += &f * &b[row];
        }
    }
    basis[row] = col;
}

/// Primal simplex with Bland's rule; terminates without cycling.
fn run_simplex(
    tab: &mut Vec<Vec<R>>,
    b: &mut Vec<R>,
    basis: &mut Vec<usize>,
    obj: &mut Vec<R>,
    obj_val: &mut R,
) {
    loop {
        let Some(col) = (0..obj.len()).find(|&j| obj[j].is_positive()) else {
            return; // optimal
        };
        let mut best: Option<(R, usize, usize)> = None; // (ratio, basis var, row)
        for i in 0..tab.len() {
            if tab[i][col].is_positive() {
                let ratio = &b[i] / &tab[i][col];
                let cand = (ratio, basis[i], i);
                best = match best {
                    None => Some(cand),
                    Some(cur) => {
                        if (cand.0.clone(), cand.1) < (cur.0.clone(), cur.1) {
                            Some(cand)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        let Some((_, _, row)) = best else {
            // Phase I is bounded above by zero and the margin variable is
            // capped at one, so neither objective can be unbounded.
            unreachable!("objective is bounded by construction");
        };
        pivot(tab, b, basis, row, col, Some((obj.as_mut_slice(), obj_val)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bound() {
        let mut s = LinearSystem::new(1);
        s.ge_i64(&[1], 1);
        let w = lp_feasible(&s).expect("feasible");
        assert!(s.satisfied_by(&w));
        assert_eq!(w[0], BigRational::from(BigInt::from(1)));
    }

    #[test]
    fn contradiction() {
        let mut s = LinearSystem::new(1);
        s.eq_i64(&[1], 0);
        s.ge_i64(&[1], 1);
        assert!(lp_feasible(&s).is_none());
    }

    #[test]
    fn coupled_system() {
        // y = 3x, x >= 1, y >= 1; the Fourier-Motzkin oracle agrees.
        let mut s = LinearSystem::new(2);
        s.eq_i64(&[-3, 1], 0);
        s.ge_i64(&[1, 0], 1);
        s.ge_i64(&[0, 1], 1);
        let w = lp_feasible(&s).expect("feasible");
        assert!(s.satisfied_by(&w));
        assert_eq!(&w[1], &(&w[0] * BigRational::from(BigInt::from(3))));
    }

    #[test]
    fn strict_needs_interior() {
        let mut s = LinearSystem::new(2);
        s.ge_i64(&[1, 0], 0);
        s.ge_i64(&[-1, 0], 0); // forces x = 0
        s.gt_i64(&[1, 1], 0); // needs x + y > 0
        let w = lp_feasible(&s).expect("feasible: y can be positive");
        assert!(s.satisfied_by(&w));

        let mut s2 = LinearSystem::new(1);
        s2.ge_i64(&[1], 0);
        s2.ge_i64(&[-1], 0);
        s2.gt_i64(&[1], 0);
        assert!(lp_feasible(&s2).is_none());
    }

    #[test]
    fn strict_open_interval() {
        // 0 < x < 1 has rational points.
        let mut s = LinearSystem::new(1);
        s.gt_i64(&[1], 0);
        s.gt_i64(&[-1], -1);
        let w = lp_feasible(&s).expect("feasible");
        assert!(s.satisfied_by(&w));
    }

    #[test]
    fn large_system_goes_through_simplex() {
        // 12 variables chained x1 >= x2 >= ... >= x12 >= 1, no equalities, so
        // the free dimension exceeds the Fourier-Motzkin cutoff.
        let n = 12;
        let mut s = LinearSystem::new(n);
        for i in 0..n - 1 {
            let mut row = vec![0i64; n];
            row[i] = 1;
            row[i + 1] = -1;
            s.ge_i64(&row, 0);
        }
        let mut last = vec![0i64; n];
        last[n - 1] = 1;
        s.ge_i64(&last, 1);
        let w = lp_feasible(&s).expect("feasible");
        assert!(s.satisfied_by(&w));

        // Now make it infeasible: x1 <= 0.
        let mut top = vec![0i64; n];
        top[0] = -1;
        s.ge_i64(&top, 0);
        assert!(lp_feasible(&s).is_none());
    }

    #[test]
    fn homogeneous_strict_scaling() {
        // 4a = 6b, a > 0, b > 0 is feasible (a, b) = (3, 2) up to scale.
        let mut s = LinearSystem::new(2);
        s.eq_i64(&[4, -6], 0);
        s.gt_i64(&[1, 0], 0);
        s.gt_i64(&[0, 1], 0);
        let w = lp_feasible(&s).expect("feasible");
        assert!(s.satisfied_by(&w));
    }
}
