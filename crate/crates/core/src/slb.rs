//! Systems of line bundles over a point, as exact scalar data.
//!
//! Over a point a line bundle is a line, a section is a scalar, and a
//! relation isomorphism is a nonzero scalar. Every pipeline operation on
//! this data is multiplicative and needs exact n-th roots, so scalars live
//! in the group (positive rationals with formal root extensions) × (Q/Z
//! phases), together with zero. General complex arithmetic is deliberately
//! excluded: addition never occurs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intlin::{kernel_basis, lp_feasible, smith_normal_form, GroupElement, LinearSystem};
use crate::logcurve::{BasicMonoid, GenLabel, RelLabel};
use crate::monoid::{Membership, MonoidPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlbError {
    /// Assembly data does not match the basic monoid's generators and
    /// relations.
    DimensionMismatch(&'static str),
    /// The tropical condition fails, so saturation data is undefined.
    NotFeasible,
    /// No preimage of the requested class was found within the bound.
    NoPreimageFound { bound: u64 },
}

impl fmt::Display for SlbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlbError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            SlbError::NotFeasible => write!(f, "tropical condition fails"),
            SlbError::NoPreimageFound { bound } => {
                write!(f, "no preimage found within coefficient sum {bound}")
            }
        }
    }
}

/// Unit scalar `(p/q)^(1/root) · e^(2πi·phase)`.
///
/// The magnitude is kept in radical normal form: no prime divisor of
/// `root` admits an exact rational root of `base`. The phase is reduced
/// modulo one. Two units are equal iff their normal forms coincide, and
/// the group is divisible, which is what the consistency machinery needs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactUnit {
    base: BigRational,
    root: u64,
    phase: BigRational,
}

fn rational_nth_root(x: &BigRational, n: u64) -> Option<BigRational> {
    let n32 = u32::try_from(n).ok()?;
    let num = x.numer().nth_root(n32);
    let den = x.denom().nth_root(n32);
    let candidate = BigRational::new(num, den);
    (&rat_pow(&candidate, n) == x).then_some(candidate)
}

fn rat_pow(x: &BigRational, mut e: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut sq = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        e >>= 1;
    }
    acc
}

impl ExactUnit {
    /// Builds `(base)^(1/root) · e^(2πi·phase)` and normalizes. `base` must
    /// be positive.
    pub fn new(base: BigRational, root: u64, phase: BigRational) -> Self {
        assert!(root >= 1, "root index must be positive");
        assert!(base.is_positive(), "unit magnitude must be positive");
        let mut u = ExactUnit { base, root, phase };
        u.normalize();
        u
    }

    pub fn one() -> Self {
        ExactUnit {
            base: BigRational::one(),
            root: 1,
            phase: BigRational::zero(),
        }
    }

    pub fn from_rational(x: BigRational) -> Self {
        assert!(!x.is_zero(), "zero is not a unit");
        if x.is_positive() {
            ExactUnit::new(x, 1, BigRational::zero())
        } else {
            ExactUnit::new(-x, 1, BigRational::new(BigInt::one(), BigInt::from(2)))
        }
    }

    pub fn from_i64(x: i64) -> Self {
        ExactUnit::from_rational(BigRational::from(BigInt::from(x)))
    }

    /// Root of unity `e^(2πi·k/n)`.
    pub fn root_of_unity(k: &BigInt, n: &BigInt) -> Self {
        assert!(n.is_positive());
        ExactUnit::new(
            BigRational::one(),
            1,
            BigRational::new(k.clone(), n.clone()),
        )
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn phase(&self) -> &BigRational {
        &self.phase
    }

    fn normalize(&mut self) {
        // Reduce the phase into [0, 1).
        let f = self.phase.floor();
        self.phase -= f;
        // Shrink the root index prime by prime.
        if self.base.is_one() {
            self.root = 1;
            return;
        }
        let mut p = 2u64;
        while p <= self.root {
            while self.root % p == 0 {
                match rational_nth_root(&self.base, p) {
                    Some(r) => {
                        self.base = r;
                        self.root /= p;
                        if self.base.is_one() {
                            self.root = 1;
                            return;
                        }
                    }
                    None => break,
                }
            }
            p += 1;
        }
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.root == 1 && self.phase.is_zero()
    }

    pub fn mul(&self, other: &ExactUnit) -> ExactUnit {
        let l = self.root.lcm(&other.root);
        let base = rat_pow(&self.base, l / self.root) * rat_pow(&other.base, l / other.root);
        ExactUnit::new(base, l, &self.phase + &other.phase)
    }

    pub fn inv(&self) -> ExactUnit {
        ExactUnit::new(self.base.recip(), self.root, -self.phase.clone())
    }

    pub fn div(&self, other: &ExactUnit) -> ExactUnit {
        self.mul(&other.inv())
    }

    /// Integer power by square-and-multiply; exponents may be any size.
    pub fn pow(&self, k: &BigInt) -> ExactUnit {
        if k.is_negative() {
            return self.inv().pow(&-k.clone());
        }
        let mut acc = ExactUnit::one();
        let mut sq = self.clone();
        let bits = k.bits();
        for i in 0..bits {
            if k.bit(i) {
                acc = acc.mul(&sq);
            }
            if i + 1 < bits {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn pow_i64(&self, k: i64) -> ExactUnit {
        self.pow(&BigInt::from(k))
    }

    /// The `n` distinct `n`-th roots; phases differ by `k/n`.
    pub fn nth_roots(&self, n: u64) -> Vec<ExactUnit> {
        assert!(n >= 1);
        let base_root = ExactUnit::new(
            self.base.clone(),
            self.root * n,
            &self.phase / BigRational::from(BigInt::from(n)),
        );
        (0..n)
            .map(|k| {
                let tw = ExactUnit::root_of_unity(&BigInt::from(k), &BigInt::from(n));
                base_root.mul(&tw)
            })
            .collect()
    }
}

impl fmt::Display for ExactUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.base)?;
        } else {
            write!(f, "({})^(1/{})", self.base, self.root)?;
        }
        if !self.phase.is_zero() {
            write!(f, "*e(2pi*{})", self.phase)?;
        }
        Ok(())
    }
}

/// A scalar: zero or a unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExactScalar {
    Zero,
    Unit(ExactUnit),
}

impl ExactScalar {
    pub fn one() -> Self {
        ExactScalar::Unit(ExactUnit::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Zero)
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        match (self, other) {
            (ExactScalar::Zero, _) | (_, ExactScalar::Zero) => ExactScalar::Zero,
            (ExactScalar::Unit(a), ExactScalar::Unit(b)) => ExactScalar::Unit(a.mul(b)),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Zero => write!(f, "0"),
            ExactScalar::Unit(u) => write!(f, "{u}"),
        }
    }
}

/// Slb presentation over a point: a section scalar per generator, a unit
/// per relation, all relative to a choice of basis per generator line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlbPointPresentation {
    pub presentation: MonoidPresentation,
    pub sections: Vec<ExactScalar>,
    pub rel_units: Vec<ExactUnit>,
}

/// Consistency verdict with witness or certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    /// Trivializations: one unit per generator.
    Consistent { witness: Vec<ExactUnit> },
    Inconsistent(InconsistencyCertificate),
}

impl ConsistencyVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyVerdict::Consistent { .. })
    }

    pub fn witness(&self) -> Option<&[ExactUnit]> {
        match self {
            ConsistencyVerdict::Consistent { witness } => Some(witness),
            ConsistencyVerdict::Inconsistent(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InconsistencyCertificate {
    /// A relation-kernel vector `z` whose unit product is not one.
    Kernel { z: Vec<BigInt>, value: ExactUnit },
    /// π-equal exponent vectors whose section products are a zero and a
    /// nonzero scalar.
    ZeroSupport { x: Vec<BigInt>, y: Vec<BigInt> },
    /// A relation combination `z` with difference vector `u` supported on
    /// unit sections whose invariant value is not one.
    SectionValue { z: Vec<BigInt>, u: Vec<BigInt>, value: ExactUnit },
}

impl SlbPointPresentation {
    pub fn new(
        presentation: MonoidPresentation,
        sections: Vec<ExactScalar>,
        rel_units: Vec<ExactUnit>,
    ) -> Result<Self, SlbError> {
        if sections.len() != presentation.n_gens() {
            return Err(SlbError::DimensionMismatch("one section per generator"));
        }
        if rel_units.len() != presentation.relations().len() {
            return Err(SlbError::DimensionMismatch("one unit per relation"));
        }
        Ok(SlbPointPresentation { presentation, sections, rel_units })
    }

    /// Basis change by a unit per generator: sections multiply by `u_i`,
    /// relation units by `∏ u_i^(rhs_ij - lhs_ij)`, so that trivializations
    /// transform by `u^{-1}` and all verdicts are unchanged.
    pub fn basis_change(&self, units: &[ExactUnit]) -> SlbPointPresentation {
        assert_eq!(units.len(), self.presentation.n_gens());
        let sections = self
            .sections
            .iter()
            .zip(units)
            .map(|(s, u)| s.mul(&ExactScalar::Unit(u.clone())))
            .collect();
        let rel_units = self
            .presentation
            .relations()
            .iter()
            .zip(&self.rel_units)
            .map(|((lhs, rhs), phi)| {
                let mut out = phi.clone();
                for (i, u) in units.iter().enumerate() {
                    let e = &rhs[i] - &lhs[i];
                    out = out.mul(&u.pow(&e));
                }
                out
            })
            .collect();
        SlbPointPresentation {
            presentation: self.presentation.clone(),
            sections,
            rel_units,
        }
    }

    fn phi_power(&self, z: &[BigInt]) -> ExactUnit {
        let mut acc = ExactUnit::one();
        for (phi, e) in self.rel_units.iter().zip(z) {
            acc = acc.mul(&phi.pow(e));
        }
        acc
    }

    /// Decides consistency, returning a trivialization witness or a
    /// certificate.
    ///
    /// The three checks are: the unit product over every relation-kernel
    /// vector must be one; the zero-support of the sections must be
    /// constant on fibers of π (decided exactly by scaling an LP
    /// relaxation); and the invariant value `φ^z · s^(Cz)` must be one for
    /// every relation combination supported on unit sections.
    pub fn consistency_check(&self) -> ConsistencyVerdict {
        let c = self.presentation.relation_matrix();
        let n = self.presentation.n_gens();

        // Kernel condition.
        for z in kernel_basis(&c) {
            let value = self.phi_power(&z);
            if !value.is_one() {
                return ConsistencyVerdict::Inconsistent(InconsistencyCertificate::Kernel {
                    z,
                    value,
                });
            }
        }

        // Zero-support condition: no relation combination may move weight
        // from the zero-section generators to the unit-section ones.
        let zero_support: Vec<usize> = (0..n).filter(|&i| self.sections[i].is_zero()).collect();
        for &i in &zero_support {
            let mut sys = LinearSystem::new(c.cols());
            for &k in &zero_support {
                let row: Vec<BigInt> = (0..c.cols()).map(|j| c[(k, j)].clone()).collect();
                let rhs = if k == i { BigInt::one() } else { BigInt::zero() };
                sys.ge(row, rhs);
            }
            if let Some(z) = lp_feasible(&sys) {
                let mut lcm = BigInt::one();
                for v in &z {
                    lcm = lcm.lcm(v.denom());
                }
                let zi: Vec<BigInt> = z
                    .iter()
                    .map(|v| (v * BigRational::from(lcm.clone())).to_integer())
                    .collect();
                let u = c.mul_vec(&zi);
                let x: Vec<BigInt> = (0..n)
                    .map(|k| {
                        if zero_support.contains(&k) {
                            u[k].clone()
                        } else {
                            u[k].clone().max(BigInt::zero())
                        }
                    })
                    .collect();
                let y: Vec<BigInt> = x.iter().zip(&u).map(|(a, b)| a - b).collect();
                debug_assert!(x.iter().chain(y.iter()).all(|v| !v.is_negative()));
                debug_assert!(self.presentation.eq_reprs(&x, &y));
                return ConsistencyVerdict::Inconsistent(
                    InconsistencyCertificate::ZeroSupport { x, y },
                );
            }
        }

        // Section-value condition on the sublattice of relation
        // combinations supported off the zero sections.
        let c_z = c.select_rows(&zero_support);
        for z in kernel_basis(&c_z) {
            let u = c.mul_vec(&z);
            let mut value = self.phi_power(&z);
            for (k, e) in u.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let ExactScalar::Unit(s) = &self.sections[k] else {
                    unreachable!("u is supported off the zero sections");
                };
                value = value.mul(&s.pow(e));
            }
            if !value.is_one() {
                return ConsistencyVerdict::Inconsistent(
                    InconsistencyCertificate::SectionValue { z, u, value },
                );
            }
        }

        // Construct a trivialization witness from the Smith normal form of
        // the relation matrix: prescribe roots on the diagonalized images.
        let snf = smith_normal_form(&c);
        let rank = snf.rank();
        let mut w = vec![ExactUnit::one(); n];
        for l in 0..rank {
            let v_col = snf.v.column(l);
            let g_l = self.phi_power(&v_col);
            let d_l = u64::try_from(&snf.s[(l, l)]).expect("positive diagonal");
            w[l] = g_l.nth_roots(d_l).into_iter().next().unwrap();
        }
        let witness: Vec<ExactUnit> = (0..n)
            .map(|i| {
                let mut chi = ExactUnit::one();
                for (k, wk) in w.iter().enumerate() {
                    chi = chi.mul(&wk.pow(&snf.u[(k, i)]));
                }
                chi
            })
            .collect();
        // The construction satisfies χ^(lhs - rhs) = φ on every relation.
        for (j, (lhs, rhs)) in self.presentation.relations().iter().enumerate() {
            let mut acc = ExactUnit::one();
            for i in 0..n {
                acc = acc.mul(&witness[i].pow(&(&lhs[i] - &rhs[i])));
            }
            assert!(
                acc == self.rel_units[j],
                "trivialization construction failed on relation {j}"
            );
        }
        ConsistencyVerdict::Consistent { witness }
    }

    /// The realized section at `q`, computed as `∏ (χ_i s_i)^(x_i)` over a
    /// preimage `x` of `q`. A second preimage within `cross_check_bound`
    /// is searched for and must give the same value.
    pub fn realize_section(
        &self,
        witness: &[ExactUnit],
        q: &[BigInt],
        cross_check_bound: u64,
    ) -> ExactScalar {
        let value = self.section_value(witness, q);
        // Independence of the preimage, asserted at runtime on a second
        // preimage when one exists in the window.
        let gp = self.presentation.groupification();
        let target = gp.reduce(q);
        if let Membership::Yes(other) = self.presentation.membership(&target, cross_check_bound) {
            if other.as_slice() != q {
                let value2 = self.section_value(witness, &other);
                assert!(
                    value == value2,
                    "realized section depends on the preimage; presentation inconsistent"
                );
            }
        }
        value
    }

    /// Realized section for a group class: searches a preimage first.
    pub fn realize_section_class(
        &self,
        witness: &[ExactUnit],
        class: &GroupElement,
        bound: u64,
    ) -> Result<ExactScalar, SlbError> {
        match self.presentation.membership(class, bound) {
            Membership::Yes(x) => Ok(self.section_value(witness, &x)),
            _ => Err(SlbError::NoPreimageFound { bound }),
        }
    }

    fn section_value(&self, witness: &[ExactUnit], x: &[BigInt]) -> ExactScalar {
        let mut acc = ExactScalar::one();
        for (i, e) in x.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let t = match &self.sections[i] {
                ExactScalar::Zero => ExactScalar::Zero,
                ExactScalar::Unit(s) => ExactScalar::Unit(witness[i].mul(s).pow(e)),
            };
            acc = acc.mul(&t);
        }
        acc
    }
}

/// Unit data for assembling the slb presentation of a prestable map over a
/// point: section coordinates for the non-degenerate vertex generators and
/// unit coordinates for the relation isomorphisms. Missing entries default
/// to one, matching the canonical bases.
#[derive(Clone, Debug, Default)]
pub struct LogMapSlbData {
    /// `(vertex, branch) → section unit` for `j ∉ I_v`.
    pub nondegenerate_sections: Vec<((usize, usize), ExactUnit)>,
    /// `(vertex, branch) → φ_{v,j}` for the forced-zero relations.
    pub vertex_rel_units: Vec<((usize, usize), ExactUnit)>,
    /// `(edge, branch) → φ_{e,j}` for the matching relations, in the stored
    /// orientation.
    pub edge_rel_units: Vec<((usize, usize), ExactUnit)>,
}

/// Builds the slb presentation of a log map over a point: edge sections and
/// degenerate vertex sections vanish, non-degenerate vertex sections are
/// units, and the relation units are the given isomorphism coordinates.
pub fn assemble_logmap_slb(
    b: &BasicMonoid,
    data: &LogMapSlbData,
) -> Result<SlbPointPresentation, SlbError> {
    let lookup = |table: &[((usize, usize), ExactUnit)], key: (usize, usize)| -> Option<ExactUnit> {
        table
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, u)| u.clone())
    };
    // Reject unknown keys: they indicate data meant for a different graph.
    for (key, _) in &data.nondegenerate_sections {
        let gen = GenLabel::Vertex { vertex: key.0, branch: key.1 };
        let idx = b
            .generator_index(&gen)
            .ok_or(SlbError::DimensionMismatch("unknown section key"))?;
        if b.reduced_gens.contains(&idx) {
            return Err(SlbError::DimensionMismatch(
                "section data on a degenerate generator",
            ));
        }
    }
    for (key, _) in &data.vertex_rel_units {
        let label = RelLabel::ForcedZero { vertex: key.0, branch: key.1 };
        if !b.rel_labels.contains(&label) {
            return Err(SlbError::DimensionMismatch("unknown vertex relation key"));
        }
    }
    for (key, _) in &data.edge_rel_units {
        if !b.rel_labels.iter().any(|l| {
            matches!(l, RelLabel::EdgeMatch { edge, branch, .. } if (*edge, *branch) == *key)
        }) {
            return Err(SlbError::DimensionMismatch("unknown edge relation key"));
        }
    }

    let sections: Vec<ExactScalar> = b
        .gen_labels
        .iter()
        .enumerate()
        .map(|(i, label)| match label {
            GenLabel::Edge { .. } => ExactScalar::Zero,
            GenLabel::Vertex { vertex, branch } => {
                if b.reduced_gens.contains(&i) {
                    ExactScalar::Zero // j ∈ I_v
                } else {
                    ExactScalar::Unit(
                        lookup(&data.nondegenerate_sections, (*vertex, *branch))
                            .unwrap_or_else(ExactUnit::one),
                    )
                }
            }
        })
        .collect();

    let rel_units: Vec<ExactUnit> = b
        .rel_labels
        .iter()
        .map(|label| match label {
            RelLabel::ForcedZero { vertex, branch } => {
                lookup(&data.vertex_rel_units, (*vertex, *branch)).unwrap_or_else(ExactUnit::one)
            }
            RelLabel::EdgeMatch { edge, branch, flipped } => {
                let phi =
                    lookup(&data.edge_rel_units, (*edge, *branch)).unwrap_or_else(ExactUnit::one);
                // The stored relation sides were swapped for μ < 0, which
                // negates the exponent vector; invert to compensate.
                if *flipped {
                    phi.inv()
                } else {
                    phi
                }
            }
        })
        .collect();

    SlbPointPresentation::new(b.presentation.clone(), sections, rel_units)
}

/// Outcome of the symplectic log map test.
#[derive(Clone, Debug)]
pub struct SymplecticReport {
    /// Integer tropical witness, when the tropical condition holds.
    pub tropical_witness: Option<Vec<BigInt>>,
    pub consistency: ConsistencyVerdict,
}

impl SymplecticReport {
    pub fn holds(&self) -> bool {
        self.tropical_witness.is_some() && self.consistency.is_consistent()
    }

    pub fn failing_condition(&self) -> Option<&'static str> {
        if self.tropical_witness.is_none() {
            Some("tropical")
        } else if !self.consistency.is_consistent() {
            Some("analytic matching")
        } else {
            None
        }
    }
}

/// A tuple is a symplectic log map iff the tropical condition holds and
/// the assembled slb presentation is consistent.
pub fn symplectic_logmap_check(b: &BasicMonoid, p: &SlbPointPresentation) -> SymplecticReport {
    SymplecticReport {
        tropical_witness: crate::logcurve::tropical_feasible(b),
        consistency: p.consistency_check(),
    }
}

/// A saturation datum: a character of the torsion subgroup, valued in
/// roots of unity on the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SaturationDatum {
    /// One root of unity per invariant factor.
    pub character: Vec<ExactUnit>,
    /// The matching invariant factors (orders).
    pub orders: Vec<BigInt>,
}

/// Enumerates the saturation data of a tropically feasible basic monoid:
/// all characters of `Q^gp_tor`, exactly `|Q^gp_tor|` of them.
pub fn enumerate_saturation_data(b: &BasicMonoid) -> Result<Vec<SaturationDatum>, SlbError> {
    if crate::logcurve::tropical_feasible(b).is_none() {
        return Err(SlbError::NotFeasible);
    }
    let gp = b.presentation.groupification();
    let factors = gp.invariant_factors.clone();
    let mut data = vec![SaturationDatum { character: Vec::new(), orders: Vec::new() }];
    for d in &factors {
        let dn = u64::try_from(d).expect("invariant factor fits at desk scale");
        let mut next = Vec::with_capacity(data.len() * dn as usize);
        for datum in &data {
            for k in 0..dn {
                let mut character = datum.character.clone();
                character.push(ExactUnit::root_of_unity(&BigInt::from(k), d));
                let mut orders = datum.orders.clone();
                orders.push(d.clone());
                next.push(SaturationDatum { character, orders });
            }
        }
        data = next;
    }
    data.sort();
    Ok(data)
}

/// Formats a character as `k1/d1, k2/d2, ...` phases, for reports.
pub fn character_phases(datum: &SaturationDatum) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, u) in datum.character.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", u.phase());
    }
    out
}
