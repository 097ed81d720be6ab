//! Decorated dual graphs with contact data and the monoids they generate.
//!
//! A decorated dual graph carries, per vertex, a degeneracy set of divisor
//! branches and marked points with contact orders, and per edge an integer
//! contact vector for the stored orientation (the reverse orientation is
//! the negation, so the antisymmetry constraint is unviolable at the data
//! layer). From such a graph the basic monoid is built: one generator per
//! (vertex, branch) pair and per edge, with the forced-zero and edge
//! matching relations. On top of that sit tropical feasibility, saturation
//! counting by two independent routes, the fs part, ghost-section slope
//! solving, and tropicalization checks.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intlin::{lp_feasible, smith_normal_form, IntMatrix, LinearSystem};
use crate::monoid::{MonoidError, MonoidPresentation, SaturationResult, Sharpness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogCurveError {
    InvalidGraph(&'static str),
    /// The tropical system is infeasible, so there is no fs part.
    NotFeasible,
    /// A rho value is zero in the target monoid.
    ZeroRho,
    /// A ghost-section slope is not unique in a torsion window (only
    /// possible for degenerate targets; reported, never guessed).
    AmbiguousSlope { edge: usize },
    /// Internal cross-check failure: the double dual disagrees with the
    /// sharpened saturation.
    DualRouteMismatch,
    Monoid(MonoidError),
}

impl From<MonoidError> for LogCurveError {
    fn from(e: MonoidError) -> Self {
        LogCurveError::Monoid(e)
    }
}

impl fmt::Display for LogCurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogCurveError::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            LogCurveError::NotFeasible => write!(f, "tropical system is infeasible"),
            LogCurveError::ZeroRho => write!(f, "rho is zero in the target"),
            LogCurveError::AmbiguousSlope { edge } => {
                write!(f, "ghost slope not unique on edge {edge}")
            }
            LogCurveError::DualRouteMismatch => {
                write!(f, "double dual disagrees with sharpened saturation")
            }
            LogCurveError::Monoid(e) => write!(f, "{e}"),
        }
    }
}

/// Marked point on a vertex with its contact orders against the branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub id: usize,
    /// Contact order per branch, length r, entries ≥ 0.
    pub mu: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    /// Degeneracy set: branches (1-based) containing the image of this
    /// component.
    pub degeneracy: BTreeSet<usize>,
    pub markings: Vec<Marking>,
}

/// Edge with its canonical orientation `from → to`; contact data for the
/// reverse orientation is the negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    /// Contact order per branch for the stored orientation, length r.
    pub mu: Vec<BigInt>,
}

/// Dual graph decorated with degeneracy sets and a contact datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedDualGraph {
    pub r: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl DecoratedDualGraph {
    /// Validates invariants: unique ids, branch indices in `1..=r`,
    /// endpoint ids resolvable, mu arities, connectedness.
    pub fn new(
        r: usize,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
    ) -> Result<Self, LogCurveError> {
        let g = DecoratedDualGraph { r, vertices, edges };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), LogCurveError> {
        if self.vertices.is_empty() {
            return Err(LogCurveError::InvalidGraph("no vertices"));
        }
        let mut vids = BTreeSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id) {
                return Err(LogCurveError::InvalidGraph("duplicate vertex id"));
            }
            if v.degeneracy.iter().any(|&j| j == 0 || j > self.r) {
                return Err(LogCurveError::InvalidGraph("branch index out of range"));
            }
            let mut mids = BTreeSet::new();
            for m in &v.markings {
                if !mids.insert(m.id) {
                    return Err(LogCurveError::InvalidGraph("duplicate marking id"));
                }
                if m.mu.len() != self.r {
                    return Err(LogCurveError::InvalidGraph("marking mu arity mismatch"));
                }
                if m.mu.iter().any(Signed::is_negative) {
                    return Err(LogCurveError::InvalidGraph("negative marking contact order"));
                }
            }
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id) {
                return Err(LogCurveError::InvalidGraph("duplicate edge id"));
            }
            if !vids.contains(&e.from) || !vids.contains(&e.to) {
                return Err(LogCurveError::InvalidGraph("edge endpoint not a vertex"));
            }
            if e.mu.len() != self.r {
                return Err(LogCurveError::InvalidGraph("edge mu arity mismatch"));
            }
        }
        // Connectedness over the undirected edge set.
        let mut reached = BTreeSet::new();
        let mut stack = vec![self.vertices[0].id];
        while let Some(v) = stack.pop() {
            if !reached.insert(v) {
                continue;
            }
            for e in &self.edges {
                if e.from == v {
                    stack.push(e.to);
                }
                if e.to == v {
                    stack.push(e.from);
                }
            }
        }
        if reached.len() != self.vertices.len() {
            return Err(LogCurveError::InvalidGraph("graph is not connected"));
        }
        Ok(())
    }

    /// Strict contact validation: `mu[e, j] = 0` whenever
    /// `j ∉ I_from ∪ I_to`. Geometric contact data always satisfies this;
    /// synthetic inputs may not, so it is opt-in.
    pub fn validate_strict_contact(&self) -> Result<(), LogCurveError> {
        for e in &self.edges {
            let ie = self.edge_branches(e);
            for j in 1..=self.r {
                if !ie.contains(&j) && !e.mu[j - 1].is_zero() {
                    return Err(LogCurveError::InvalidGraph(
                        "nonzero edge contact outside the incident degeneracy sets",
                    ));
                }
            }
        }
        Ok(())
    }

    fn vertex(&self, id: usize) -> &Vertex {
        self.vertices.iter().find(|v| v.id == id).expect("validated id")
    }

    /// `I_e = I_from ∪ I_to` for an edge.
    pub fn edge_branches(&self, e: &Edge) -> BTreeSet<usize> {
        let mut s = self.vertex(e.from).degeneracy.clone();
        s.extend(self.vertex(e.to).degeneracy.iter().copied());
        s
    }
}

/// Label of a basic-monoid generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenLabel {
    /// `m_{v,j}`: vertex id and branch (1-based).
    Vertex { vertex: usize, branch: usize },
    /// `m_e`: edge id.
    Edge { edge: usize },
}

/// Label of a basic-monoid relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelLabel {
    /// `m_{v,j} = 0` for `j ∉ I_v`.
    ForcedZero { vertex: usize, branch: usize },
    /// `m_{to,j} = m_{from,j} + mu m_e`; `flipped` records that the stored
    /// relation sides were swapped to keep entries nonnegative (mu < 0).
    EdgeMatch { edge: usize, branch: usize, flipped: bool },
}

/// The basic monoid of a decorated dual graph: presentation plus labels.
#[derive(Clone, Debug)]
pub struct BasicMonoid {
    pub presentation: MonoidPresentation,
    pub gen_labels: Vec<GenLabel>,
    pub rel_labels: Vec<RelLabel>,
    /// Indices of the reduced generating set: all edge generators and the
    /// vertex generators with `j ∈ I_v`.
    pub reduced_gens: Vec<usize>,
}

impl BasicMonoid {
    pub fn generator_index(&self, label: &GenLabel) -> Option<usize> {
        self.gen_labels.iter().position(|l| l == label)
    }
}

/// Builds the basic monoid: generators `m_{v,j}` (vertices by id, branches
/// in order) then `m_e` (edges by id); relations `m_{v,j} = 0` for
/// `j ∉ I_v` and one matching relation per (edge, branch) in the stored
/// orientation.
pub fn build_basic_monoid(g: &DecoratedDualGraph) -> Result<BasicMonoid, LogCurveError> {
    g.validate()?;
    let mut vertices = g.vertices.clone();
    vertices.sort_by_key(|v| v.id);
    let mut edges = g.edges.clone();
    edges.sort_by_key(|e| e.id);

    let r = g.r;
    let n_gens = vertices.len() * r + edges.len();
    let mut gen_labels = Vec::with_capacity(n_gens);
    for v in &vertices {
        for j in 1..=r {
            gen_labels.push(GenLabel::Vertex { vertex: v.id, branch: j });
        }
    }
    for e in &edges {
        gen_labels.push(GenLabel::Edge { edge: e.id });
    }
    let gen_index = |label: &GenLabel| gen_labels.iter().position(|l| l == label).unwrap();

    let mut relations = Vec::new();
    let mut rel_labels = Vec::new();
    for v in &vertices {
        for j in 1..=r {
            if v.degeneracy.contains(&j) {
                continue;
            }
            let mut lhs = vec![BigInt::zero(); n_gens];
            lhs[gen_index(&GenLabel::Vertex { vertex: v.id, branch: j })] = BigInt::one();
            relations.push((lhs, vec![BigInt::zero(); n_gens]));
            rel_labels.push(RelLabel::ForcedZero { vertex: v.id, branch: j });
        }
    }
    for e in &edges {
        for j in 1..=r {
            let mu = &e.mu[j - 1];
            let to_idx = gen_index(&GenLabel::Vertex { vertex: e.to, branch: j });
            let from_idx = gen_index(&GenLabel::Vertex { vertex: e.from, branch: j });
            let e_idx = gen_index(&GenLabel::Edge { edge: e.id });
            let mut lhs = vec![BigInt::zero(); n_gens];
            let mut rhs = vec![BigInt::zero(); n_gens];
            // m_to = m_from + mu * m_e, sides arranged to stay nonnegative
            let flipped = mu.is_negative();
            lhs[to_idx] += BigInt::one();
            rhs[from_idx] += BigInt::one();
            if flipped {
                lhs[e_idx] += -mu.clone();
            } else {
                rhs[e_idx] += mu.clone();
            }
            relations.push((lhs, rhs));
            rel_labels.push(RelLabel::EdgeMatch { edge: e.id, branch: j, flipped });
        }
    }

    let mut reduced_gens = Vec::new();
    for (i, label) in gen_labels.iter().enumerate() {
        match label {
            GenLabel::Vertex { vertex, branch } => {
                if g.vertex(*vertex).degeneracy.contains(branch) {
                    reduced_gens.push(i);
                }
            }
            GenLabel::Edge { .. } => reduced_gens.push(i),
        }
    }

    Ok(BasicMonoid {
        presentation: MonoidPresentation::new(n_gens, relations)?,
        gen_labels,
        rel_labels,
        reduced_gens,
    })
}

/// Integer assignment to the generators satisfying every relation, strictly
/// positive on the reduced generating set and zero on the forced-zero
/// generators; `None` certifies infeasibility.
pub fn tropical_feasible(b: &BasicMonoid) -> Option<Vec<BigInt>> {
    let n = b.presentation.n_gens();
    let mut sys = LinearSystem::new(n);
    for (lhs, rhs) in b.presentation.relations() {
        let row: Vec<BigInt> = lhs.iter().zip(rhs).map(|(a, c)| a - c).collect();
        sys.eq(row, BigInt::zero());
    }
    let reduced: BTreeSet<usize> = b.reduced_gens.iter().copied().collect();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = BigInt::one();
        if reduced.contains(&i) {
            sys.ge(row, BigInt::one());
        } else {
            sys.eq(row, BigInt::zero());
        }
    }
    let witness = lp_feasible(&sys)?;
    // Clear denominators: the system is homogeneous in the relation rows
    // and scaling keeps the >= 1 rows valid.
    let mut lcm = BigInt::one();
    for c in &witness {
        lcm = lcm.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = witness
        .iter()
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();
    debug_assert!(b
        .presentation
        .relations()
        .iter()
        .all(|(l, r)| dot(l, &scaled) == dot(r, &scaled)));
    Some(scaled)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `|Q^gp_tor|` of the basic monoid, via the cokernel of the relation
/// lattice.
pub fn saturation_count(b: &BasicMonoid) -> BigInt {
    b.presentation.groupification().torsion_order()
}

/// Orientation choice: per edge (in id order), whether to flip the stored
/// orientation.
pub type Orientation<'a> = &'a [bool];

/// The matrix of `ϱ : Z^E ⊕ ⊕_v Z^{I_v} → ⊕_e Z^{I_e}`.
///
/// Row indices are pairs `(e, j ∈ I_e)` with edges in id order; column
/// indices are the edges (id order) then the pairs `(v, j ∈ I_v)`
/// (vertices in id order). The edge column carries the oriented contact
/// vector; the vertex columns carry `±1` incidences for outgoing/incoming
/// lifts.
pub fn varrho_matrix(
    g: &DecoratedDualGraph,
    orientation: Orientation<'_>,
) -> Result<IntMatrix, LogCurveError> {
    g.validate()?;
    let mut edges = g.edges.clone();
    edges.sort_by_key(|e| e.id);
    if orientation.len() != edges.len() {
        return Err(LogCurveError::InvalidGraph("orientation arity mismatch"));
    }
    let mut vertices = g.vertices.clone();
    vertices.sort_by_key(|v| v.id);

    // Row layout: for each edge, its I_e branches in increasing order.
    let mut row_index: Vec<(usize, usize)> = Vec::new(); // (edge position, branch)
    let mut edge_branch_sets: Vec<BTreeSet<usize>> = Vec::new();
    for (pos, e) in edges.iter().enumerate() {
        let ie = g.edge_branches(e);
        for &j in &ie {
            row_index.push((pos, j));
        }
        edge_branch_sets.push(ie);
    }
    let rows = row_index.len();
    let row_of = |pos: usize, j: usize| -> usize {
        row_index
            .iter()
            .position(|&(p, jj)| p == pos && jj == j)
            .expect("row exists for j in I_e")
    };

    let n_edge_cols = edges.len();
    let n_vertex_cols: usize = vertices.iter().map(|v| v.degeneracy.len()).sum();
    let mut m = IntMatrix::zero(rows, n_edge_cols + n_vertex_cols);

    // Edge columns: sum over j in I_e of the oriented contact order.
    for (pos, e) in edges.iter().enumerate() {
        for &j in &edge_branch_sets[pos] {
            let mu = if orientation[pos] { -e.mu[j - 1].clone() } else { e.mu[j - 1].clone() };
            m[(row_of(pos, j), pos)] = mu;
        }
    }

    // Vertex columns: +1 on edges whose oriented lift leaves v, -1 on edges
    // whose lift arrives at v; loops contribute both and cancel.
    let mut col = n_edge_cols;
    for v in &vertices {
        for &j in &v.degeneracy {
            for (pos, e) in edges.iter().enumerate() {
                let (tail, head) = if orientation[pos] { (e.to, e.from) } else { (e.from, e.to) };
                let mut coeff = BigInt::zero();
                if tail == v.id {
                    coeff += BigInt::one();
                }
                if head == v.id {
                    coeff -= BigInt::one();
                }
                if !coeff.is_zero() {
                    // j ∈ I_v ⊆ I_e for an incident edge
                    m[(row_of(pos, j), col)] = coeff;
                }
            }
            col += 1;
        }
    }
    Ok(m)
}

/// Saturation count through the ϱ route: the order of
/// `(ker ϱ)^⊥ / im(ϱ^∨)`, which is the product of the invariant factors of
/// the ϱ matrix.
pub fn varrho_saturation_count(g: &DecoratedDualGraph) -> Result<BigInt, LogCurveError> {
    let orientation = vec![false; g.edges.len()];
    let m = varrho_matrix(g, &orientation)?;
    Ok(invariant_factor_product(&m))
}

/// Product of the nonzero Smith invariant factors of a matrix.
pub fn invariant_factor_product(m: &IntMatrix) -> BigInt {
    smith_normal_form(m)
        .nonzero_diagonal()
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d)
}

/// The fs part: sharpening of the saturation of the basic monoid, with the
/// double-dual cross check.
///
/// Requires tropical feasibility, which guarantees sharpness.
pub fn fs_basic_monoid(b: &BasicMonoid) -> Result<SaturationResult, LogCurveError> {
    if tropical_feasible(b).is_none() {
        return Err(LogCurveError::NotFeasible);
    }
    let sat = b.presentation.saturate()?;
    let dd = b.presentation.double_dual()?;
    if sat.hilbert_basis != dd.hilbert_basis {
        return Err(LogCurveError::DualRouteMismatch);
    }
    Ok(sat)
}

/// Ghost-section data: a target element per vertex and a contact order per
/// marking.
#[derive(Clone, Debug)]
pub struct GhostCandidate {
    /// Per vertex id (sorted), a representative in the target monoid.
    pub vertex_values: Vec<(usize, Vec<BigInt>)>,
    /// Per marking id, a natural number.
    pub marking_values: Vec<(usize, BigInt)>,
}

/// Solves `m_to = m_from + c ρ_e` in the target group for each edge.
///
/// Returns the slope for each edge in the stored orientation (the reverse
/// orientation carries the negation); `None` when some edge admits no
/// integer slope. Slopes are unique because ρ is nonzero in a sharp
/// target: its image in the torsion-free quotient is nonzero. If a
/// degenerate target sneaks a purely-torsion ρ through, candidate slopes
/// are scanned in a bounded window and ambiguity is reported as an error
/// rather than resolved arbitrarily.
pub fn ghost_section_check(
    g: &DecoratedDualGraph,
    target: &MonoidPresentation,
    rho: &[(usize, Vec<BigInt>)],
    candidate: &GhostCandidate,
) -> Result<Option<Vec<(usize, BigInt)>>, LogCurveError> {
    g.validate()?;
    let gp = target.groupification();
    let value_of = |table: &[(usize, Vec<BigInt>)], id: usize| -> Result<Vec<BigInt>, LogCurveError> {
        table
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, v)| v.clone())
            .ok_or(LogCurveError::InvalidGraph("missing table entry"))
    };
    for (_, m) in &candidate.marking_values {
        if m.is_negative() {
            return Err(LogCurveError::InvalidGraph("negative marking value"));
        }
    }

    let mut slopes = Vec::new();
    for e in &g.edges {
        let rho_e = value_of(rho, e.id)?;
        if target.is_zero_repr(&rho_e) {
            return Err(LogCurveError::ZeroRho);
        }
        let mv = value_of(&candidate.vertex_values, e.from)?;
        let mv_prime = value_of(&candidate.vertex_values, e.to)?;
        let delta: Vec<BigInt> = mv_prime.iter().zip(&mv).map(|(a, b)| a - b).collect();
        let delta_el = gp.reduce(&delta);
        let rho_el = gp.reduce(&rho_e);

        let slope = if let Some(k) = rho_el.free.iter().position(|c| !c.is_zero()) {
            // Unique candidate from the free part.
            let (q, rem) = delta_el.free[k].div_mod_floor(&rho_el.free[k]);
            if !rem.is_zero() {
                return Ok(None);
            }
            let ok = (0..gp.free_rank).all(|t| delta_el.free[t] == &q * &rho_el.free[t])
                && scaled_torsion_matches(gp, &delta_el.torsion, &rho_el.torsion, &q);
            if !ok {
                return Ok(None);
            }
            q
        } else {
            // Purely torsion rho: scan a window and insist on uniqueness.
            let order = gp
                .class_order(&rho_e)
                .expect("torsion class has finite order");
            let order_i = i64::try_from(&order).unwrap_or(i64::MAX);
            let hits: Vec<BigInt> = (0..order_i)
                .map(BigInt::from)
                .filter(|c| {
                    delta_el.free.iter().all(Zero::is_zero)
                        && scaled_torsion_matches(gp, &delta_el.torsion, &rho_el.torsion, c)
                })
                .collect();
            match hits.len() {
                0 => return Ok(None),
                1 => hits.into_iter().next().unwrap(),
                _ => return Err(LogCurveError::AmbiguousSlope { edge: e.id }),
            }
        };
        slopes.push((e.id, slope));
    }
    Ok(Some(slopes))
}

fn scaled_torsion_matches(
    gp: &crate::intlin::AbelianGroup,
    delta: &[BigInt],
    rho: &[BigInt],
    c: &BigInt,
) -> bool {
    delta
        .iter()
        .zip(rho)
        .zip(&gp.invariant_factors)
        .all(|((d, r), f)| (d - c * r).mod_floor(f).is_zero())
}

/// Diagnostics for a tropicalization check.
#[derive(Clone, Debug, Default)]
pub struct TropicalizationReport {
    /// Relation indices violated by the assignment.
    pub violated_relations: Vec<usize>,
    /// Reduced generators mapped to zero.
    pub zero_reduced_gens: Vec<usize>,
}

impl TropicalizationReport {
    pub fn holds(&self) -> bool {
        self.violated_relations.is_empty() && self.zero_reduced_gens.is_empty()
    }
}

/// Checks that `assignment` (a target representative per generator) is a
/// monoid map sending every reduced generator to a nonzero target element.
///
/// The zero test uses the interior functional of a sharp target (β(m) = 0
/// iff m = 0) and falls back to class comparison otherwise.
pub fn tropicalization_check(
    b: &BasicMonoid,
    target: &MonoidPresentation,
    assignment: &[Vec<BigInt>],
) -> TropicalizationReport {
    assert_eq!(assignment.len(), b.presentation.n_gens(), "assignment arity");
    let mut report = TropicalizationReport::default();

    let image = |v: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); target.n_gens()];
        for (c, a) in v.iter().zip(assignment) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += c * x;
            }
        }
        out
    };

    for (j, (lhs, rhs)) in b.presentation.relations().iter().enumerate() {
        if !target.eq_reprs(&image(lhs), &image(rhs)) {
            report.violated_relations.push(j);
        }
    }

    let beta = match target.is_sharp() {
        Sharpness::Sharp { beta } => Some(beta),
        Sharpness::NotSharp { .. } => None,
    };
    for &i in &b.reduced_gens {
        let img = &assignment[i];
        let is_zero = match &beta {
            Some(beta) => dot(beta, img).is_zero(),
            None => target.is_zero_repr(img),
        };
        if is_zero {
            report.zero_reduced_gens.push(i);
        }
    }
    report
}

/// Eliminates generators defined by `g = 0` relations and generators with a
/// defining relation `g = expr` not involving `g`, producing a smaller
/// presentation of the same monoid. Used for display.
pub fn eliminate_defined_generators(p: &MonoidPresentation) -> MonoidPresentation {
    let mut gens: Vec<usize> = (0..p.n_gens()).collect(); // surviving, by original index
    let mut relations: Vec<(Vec<BigInt>, Vec<BigInt>)> =
        p.relations().iter().cloned().collect();

    loop {
        // Find a relation of the form  1 * g = expr  with g not in expr.
        let mut found: Option<(usize, usize, Vec<BigInt>)> = None; // (rel idx, gen, expr)
        'scan: for (ri, (lhs, rhs)) in relations.iter().enumerate() {
            for (side, other) in [(lhs, rhs), (rhs, lhs)] {
                if side.iter().map(|c| c.clone()).sum::<BigInt>() == BigInt::one() {
                    let g = side.iter().position(|c| c.is_one()).unwrap();
                    if other[g].is_zero() {
                        found = Some((ri, g, other.clone()));
                        break 'scan;
                    }
                }
            }
        }
        let Some((ri, g, expr)) = found else {
            break;
        };
        relations.remove(ri);
        for (lhs, rhs) in relations.iter_mut() {
            for side in [&mut *lhs, &mut *rhs] {
                let c = core::mem::replace(&mut side[g], BigInt::zero());
                if c.is_zero() {
                    continue;
                }
                for (s, x) in side.iter_mut().zip(&expr) {
                    *s += &c * x;
                }
            }
        }
        gens.remove(g);
        // Reindex: drop coordinate g everywhere.
        let drop_coord = |v: &Vec<BigInt>| -> Vec<BigInt> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| *i != g)
                .map(|(_, c)| c.clone())
                .collect()
        };
        relations = relations
            .iter()
            .map(|(l, r)| (drop_coord(l), drop_coord(r)))
            .collect();
    }

    // Drop trivial relations lhs == rhs (componentwise).
    relations.retain(|(l, r)| l != r);
    MonoidPresentation::new(gens.len(), relations).expect("elimination preserves validity")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Two vertices, I_v = {} and I_v' = {1}, two edges v -> v' with
    /// contact orders mu1, mu2.
    pub(crate) fn two_edge_graph(mu1: i64, mu2: i64) -> DecoratedDualGraph {
        DecoratedDualGraph::new(
            1,
            vec![
                Vertex { id: 0, degeneracy: BTreeSet::new(), markings: Vec::new() },
                Vertex { id: 1, degeneracy: [1].into_iter().collect(), markings: Vec::new() },
            ],
            vec![
                Edge { id: 0, from: 0, to: 1, mu: b(&[mu1]) },
                Edge { id: 1, from: 0, to: 1, mu: b(&[mu2]) },
            ],
        )
        .unwrap()
    }

    /// v (I = {}) -e-> v' (I = {1}) with contact order mu.
    pub(crate) fn chain_graph(mu: i64) -> DecoratedDualGraph {
        DecoratedDualGraph::new(
            1,
            vec![
                Vertex { id: 0, degeneracy: BTreeSet::new(), markings: Vec::new() },
                Vertex { id: 1, degeneracy: [1].into_iter().collect(), markings: Vec::new() },
            ],
            vec![Edge { id: 0, from: 0, to: 1, mu: b(&[mu]) }],
        )
        .unwrap()
    }

    /// Single vertex with I_v = {1} and a loop with contact order 1.
    pub(crate) fn loop_graph() -> DecoratedDualGraph {
        DecoratedDualGraph::new(
            1,
            vec![Vertex { id: 0, degeneracy: [1].into_iter().collect(), markings: Vec::new() }],
            vec![Edge { id: 0, from: 0, to: 0, mu: b(&[1]) }],
        )
        .unwrap()
    }

    #[test]
    fn basic_monoid_shape() {
        let g = two_edge_graph(4, 6);
        let bm = build_basic_monoid(&g).unwrap();
        assert_eq!(bm.presentation.n_gens(), 2 + 2); // 2 vertices * 1 branch + 2 edges
        assert_eq!(bm.presentation.relations().len(), 1 + 2); // one forced zero + 2 edges
        assert_eq!(bm.reduced_gens.len(), 3); // m_{v',1}, m_e1, m_e2
    }

    #[test]
    fn two_edge_reduces_to_spec_presentation() {
        let g = two_edge_graph(4, 6);
        let bm = build_basic_monoid(&g).unwrap();
        let reduced = eliminate_defined_generators(&bm.presentation);
        // <a, b | 4a = 6b> after eliminating m_v (forced zero) and m_v'
        assert_eq!(reduced.n_gens(), 2);
        assert_eq!(reduced.relations().len(), 1);
        let (l, r) = &reduced.relations()[0];
        let mut vals: Vec<BigInt> = l.iter().chain(r.iter()).cloned().collect();
        vals.retain(|c| !c.is_zero());
        vals.sort();
        assert_eq!(vals, b(&[4, 6]));
    }

    #[test]
    fn trivial_graph_monoid() {
        let g = DecoratedDualGraph::new(
            1,
            vec![Vertex { id: 0, degeneracy: BTreeSet::new(), markings: Vec::new() }],
            vec![],
        )
        .unwrap();
        let bm = build_basic_monoid(&g).unwrap();
        let gp = bm.presentation.groupification();
        assert_eq!(gp.free_rank, 0);
        assert_eq!(gp.torsion_order(), BigInt::one());
    }

    #[test]
    fn chain_is_rank_one() {
        let bm = build_basic_monoid(&chain_graph(3)).unwrap();
        let gp = bm.presentation.groupification();
        assert_eq!(gp.free_rank, 1);
        assert!(gp.invariant_factors.is_empty());
        let w = tropical_feasible(&bm).unwrap();
        // m_e >= 1 and m_{v',1} = 3 m_e
        let e_idx = bm.generator_index(&GenLabel::Edge { edge: 0 }).unwrap();
        let v_idx = bm
            .generator_index(&GenLabel::Vertex { vertex: 1, branch: 1 })
            .unwrap();
        assert_eq!(w[v_idx], &w[e_idx] * BigInt::from(3));
        assert!(w[e_idx] >= BigInt::one());
    }

    #[test]
    fn two_edge_tropical_witness() {
        let bm = build_basic_monoid(&two_edge_graph(4, 6)).unwrap();
        let w = tropical_feasible(&bm).unwrap();
        let e1 = bm.generator_index(&GenLabel::Edge { edge: 0 }).unwrap();
        let e2 = bm.generator_index(&GenLabel::Edge { edge: 1 }).unwrap();
        assert_eq!(&w[e1] * BigInt::from(4), &w[e2] * BigInt::from(6));
        assert!(w[e1] >= BigInt::one() && w[e2] >= BigInt::one());
    }

    #[test]
    fn loop_is_infeasible() {
        let bm = build_basic_monoid(&loop_graph()).unwrap();
        // relation m_v = m_v + m_e forces m_e = 0, against m_e >= 1; the
        // Fourier-Motzkin oracle certifies the same.
        assert!(tropical_feasible(&bm).is_none());
    }

    #[test]
    fn saturation_counts_match_gcd() {
        for (m1, m2, d) in [(4, 6, 2), (6, 9, 3), (2, 2, 2), (1, 5, 1)] {
            let g = two_edge_graph(m1, m2);
            let bm = build_basic_monoid(&g).unwrap();
            assert_eq!(saturation_count(&bm), BigInt::from(d), "({m1},{m2})");
            assert_eq!(varrho_saturation_count(&g).unwrap(), BigInt::from(d));
        }
    }

    #[test]
    fn edgeless_counts_are_one() {
        let g = DecoratedDualGraph::new(
            2,
            vec![Vertex { id: 0, degeneracy: [1].into_iter().collect(), markings: Vec::new() }],
            vec![],
        )
        .unwrap();
        let bm = build_basic_monoid(&g).unwrap();
        assert_eq!(saturation_count(&bm), BigInt::one());
        assert_eq!(varrho_saturation_count(&g).unwrap(), BigInt::one());
        // empty-target matrix
        let m = varrho_matrix(&g, &[]).unwrap();
        assert_eq!(m.rows(), 0);
    }

    #[test]
    fn varrho_two_edge_columns() {
        let g = two_edge_graph(4, 6);
        let m = varrho_matrix(&g, &[false, false]).unwrap();
        // rows: (e0, 1), (e1, 1); columns: e0, e1, (v1, 1)
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.column(0), b(&[4, 0]));
        assert_eq!(m.column(1), b(&[0, 6]));
        assert_eq!(m.column(2), b(&[-1, -1]));
    }

    #[test]
    fn varrho_chain_matrix() {
        let g = chain_graph(5);
        let m = varrho_matrix(&g, &[false]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m.row(0), &b(&[5, -1])[..]);
    }

    #[test]
    fn varrho_orientation_independent() {
        let g = two_edge_graph(4, 6);
        for o in [[false, false], [true, false], [false, true], [true, true]] {
            let m = varrho_matrix(&g, &o).unwrap();
            assert_eq!(invariant_factor_product(&m), BigInt::from(2));
        }
    }

    #[test]
    fn fs_of_two_edge_2_2() {
        let bm = build_basic_monoid(&two_edge_graph(2, 2)).unwrap();
        let fs = fs_basic_monoid(&bm).unwrap();
        assert_eq!(fs.hilbert_basis.len(), 1);
        assert_eq!(fs.torsion_order(), BigInt::from(2));
    }

    #[test]
    fn fs_of_chain_is_free() {
        let bm = build_basic_monoid(&chain_graph(3)).unwrap();
        let fs = fs_basic_monoid(&bm).unwrap();
        assert_eq!(fs.hilbert_basis, vec![b(&[1])]);
        assert_eq!(fs.torsion_order(), BigInt::one());
    }

    #[test]
    fn fs_requires_feasibility() {
        let bm = build_basic_monoid(&loop_graph()).unwrap();
        assert_eq!(fs_basic_monoid(&bm).unwrap_err(), LogCurveError::NotFeasible);
    }

    #[test]
    fn ghost_slopes() {
        let g = chain_graph(1);
        let target = MonoidPresentation::free(1);
        let rho = vec![(0usize, b(&[2]))];
        let cand = GhostCandidate {
            vertex_values: vec![(0, b(&[1])), (1, b(&[5]))],
            marking_values: vec![],
        };
        let slopes = ghost_section_check(&g, &target, &rho, &cand).unwrap().unwrap();
        assert_eq!(slopes, vec![(0, BigInt::from(2))]);

        // equal endpoint values give slope zero
        let cand0 = GhostCandidate {
            vertex_values: vec![(0, b(&[4])), (1, b(&[4]))],
            marking_values: vec![],
        };
        let slopes = ghost_section_check(&g, &target, &rho, &cand0).unwrap().unwrap();
        assert_eq!(slopes, vec![(0, BigInt::zero())]);

        // 3 - 0 is not a multiple of 2
        let cand_bad = GhostCandidate {
            vertex_values: vec![(0, b(&[0])), (1, b(&[3]))],
            marking_values: vec![],
        };
        assert_eq!(ghost_section_check(&g, &target, &rho, &cand_bad).unwrap(), None);

        // zero rho is rejected
        let rho0 = vec![(0usize, b(&[0]))];
        assert_eq!(
            ghost_section_check(&g, &target, &rho0, &cand).unwrap_err(),
            LogCurveError::ZeroRho
        );
    }

    #[test]
    fn ghost_slope_antisymmetry() {
        // Flipping the stored orientation negates the slope.
        let g = chain_graph(1);
        let mut flipped = g.clone();
        flipped.edges[0] = Edge { id: 0, from: 1, to: 0, mu: b(&[-1]) };
        let target = MonoidPresentation::free(1);
        let rho = vec![(0usize, b(&[3]))];
        let cand = GhostCandidate {
            vertex_values: vec![(0, b(&[0])), (1, b(&[6]))],
            marking_values: vec![],
        };
        let s1 = ghost_section_check(&g, &target, &rho, &cand).unwrap().unwrap();
        let s2 = ghost_section_check(&flipped, &target, &rho, &cand).unwrap().unwrap();
        assert_eq!(s1[0].1, BigInt::from(2));
        assert_eq!(s2[0].1, BigInt::from(-2));
    }

    #[test]
    fn tropicalization_check_cases() {
        let bm = build_basic_monoid(&chain_graph(3)).unwrap();
        let target = MonoidPresentation::free(1);
        let gen_count = bm.presentation.n_gens();
        let e_idx = bm.generator_index(&GenLabel::Edge { edge: 0 }).unwrap();
        let v1_idx = bm.generator_index(&GenLabel::Vertex { vertex: 1, branch: 1 }).unwrap();

        let mut good = vec![b(&[0]); gen_count];
        good[e_idx] = b(&[1]);
        good[v1_idx] = b(&[3]);
        assert!(tropicalization_check(&bm, &target, &good).holds());

        let mut bad = good.clone();
        bad[v1_idx] = b(&[2]);
        let report = tropicalization_check(&bm, &target, &bad);
        assert!(!report.holds());
        assert!(!report.violated_relations.is_empty());

        let mut zeroed = good.clone();
        zeroed[e_idx] = b(&[0]);
        let report = tropicalization_check(&bm, &target, &zeroed);
        assert!(report.zero_reduced_gens.contains(&e_idx));
    }

    #[test]
    fn strict_contact_validation() {
        // branch 2 not in I_v ∪ I_v' but mu nonzero on it
        let g = DecoratedDualGraph::new(
            2,
            vec![
                Vertex { id: 0, degeneracy: BTreeSet::new(), markings: Vec::new() },
                Vertex { id: 1, degeneracy: [1].into_iter().collect(), markings: Vec::new() },
            ],
            vec![Edge { id: 0, from: 0, to: 1, mu: b(&[2, 1]) }],
        )
        .unwrap();
        assert!(g.validate_strict_contact().is_err());
        let ok = two_edge_graph(4, 6);
        assert!(ok.validate_strict_contact().is_ok());
    }

    #[test]
    fn disconnected_rejected() {
        let res = DecoratedDualGraph::new(
            1,
            vec![
                Vertex { id: 0, degeneracy: BTreeSet::new(), markings: Vec::new() },
                Vertex { id: 1, degeneracy: BTreeSet::new(), markings: Vec::new() },
            ],
            vec![],
        );
        assert!(matches!(res, Err(LogCurveError::InvalidGraph(_))));
    }
}
