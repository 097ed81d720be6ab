//! Finitely presented fine commutative monoids.
//!
//! A presentation is a generator count `I` together with relation pairs
//! `(lhs, rhs)` in `N^I`; the presented monoid is the image of `N^I` in the
//! cokernel of the relation-difference lattice, so it is fine by
//! construction. On top of that sit the functorial operations:
//! groupification, the word problem, sharpness certificates, saturation and
//! sharpening, duals and double duals, integral pushouts, and the node
//! monoid embedding.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intlin::{
    cokernel_structure, hilbert_basis, kernel_basis, lp_feasible, AbelianGroup, GroupElement,
    IntMatrix, LinearSystem,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidError {
    /// Relation data is negative or has the wrong arity.
    InvalidPresentation(&'static str),
    /// Elements of two different presentations were compared.
    OwnerMismatch,
    /// Operation requires a sharp monoid.
    NotSharp,
    /// A generator map does not respect a base relation.
    IllDefinedMap { left_factor: bool, relation: usize },
    /// The smoothing parameter is zero in the target monoid.
    ZeroRho,
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::InvalidPresentation(msg) => write!(f, "invalid presentation: {msg}"),
            MonoidError::OwnerMismatch => write!(f, "elements belong to different presentations"),
            MonoidError::NotSharp => write!(f, "monoid is not sharp"),
            MonoidError::IllDefinedMap { left_factor, relation } => write!(
                f,
                "generator map into the {} factor violates base relation {relation}",
                if *left_factor { "left" } else { "right" }
            ),
            MonoidError::ZeroRho => write!(f, "rho is zero in the target monoid"),
        }
    }
}

/// Fine monoid presented by generators and integral relations.
pub struct MonoidPresentation {
    n_gens: usize,
    relations: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    group_cache: once_cell::race::OnceBox<AbelianGroup>,
}

impl fmt::Debug for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidPresentation")
            .field("n_gens", &self.n_gens)
            .field("relations", &self.relations)
            .finish()
    }
}

impl Clone for MonoidPresentation {
    fn clone(&self) -> Self {
        MonoidPresentation {
            n_gens: self.n_gens,
            relations: self.relations.clone(),
            group_cache: once_cell::race::OnceBox::new(),
        }
    }
}

impl PartialEq for MonoidPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.n_gens == other.n_gens && self.relations == other.relations
    }
}

impl Eq for MonoidPresentation {}

/// Element of a presented monoid, stored as a preimage in `N^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElement {
    repr: Vec<BigInt>,
    owner: u64,
}

impl MonoidElement {
    pub fn repr(&self) -> &[BigInt] {
        &self.repr
    }
}

/// Outcome of the bounded word-problem search for `g ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Vec<BigInt>),
    No,
    Unknown { bound: u64 },
}

/// Sharpness certificate: either a strictly positive integer functional or
/// a nonzero unit together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sharpness {
    Sharp { beta: Vec<BigInt> },
    NotSharp { unit: Vec<BigInt>, inverse: Vec<BigInt> },
}

impl Sharpness {
    pub fn is_sharp(&self) -> bool {
        matches!(self, Sharpness::Sharp { .. })
    }
}

/// Sharpening of the saturation, with the torsion data and the embedding of
/// the original generators.
#[derive(Clone, Debug)]
pub struct SaturationResult {
    /// Presentation of the sharp saturated part, generated by its Hilbert
    /// basis.
    pub sharp_part: MonoidPresentation,
    /// Hilbert basis of `cone(Q)` in the torsion-free quotient of `Q^gp`.
    pub hilbert_basis: Vec<Vec<BigInt>>,
    /// `Q^gp` with its projection; the invariant factors give the units of
    /// the saturation.
    pub group: AbelianGroup,
    /// Per original generator, its (sharp-part ⊕ torsion) coordinates.
    pub embedding: Vec<GroupElement>,
}

impl SaturationResult {
    pub fn torsion_order(&self) -> BigInt {
        self.group.torsion_order()
    }
}

/// Dual monoid `Hom(Q, N)` described by its Hilbert basis and the pairing
/// with the original generators.
#[derive(Clone, Debug)]
pub struct DualMonoid {
    pub hilbert_basis: Vec<Vec<BigInt>>,
    pub presentation: MonoidPresentation,
    /// `pairing[(k, i)]` is the value of the k-th dual generator on the i-th
    /// original generator.
    pub pairing: IntMatrix,
}

/// Hilbert-basis presentation of a double dual.
#[derive(Clone, Debug)]
pub struct HilbertPresentation {
    pub hilbert_basis: Vec<Vec<BigInt>>,
    pub presentation: MonoidPresentation,
}

impl MonoidPresentation {
    pub fn new(
        n_gens: usize,
        relations: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    ) -> Result<Self, MonoidError> {
        for (l, r) in &relations {
            if l.len() != n_gens || r.len() != n_gens {
                return Err(MonoidError::InvalidPresentation("relation arity mismatch"));
            }
            if l.iter().chain(r.iter()).any(Signed::is_negative) {
                return Err(MonoidError::InvalidPresentation("negative relation entry"));
            }
        }
        Ok(MonoidPresentation {
            n_gens,
            relations,
            group_cache: once_cell::race::OnceBox::new(),
        })
    }

    pub fn new_i64(n_gens: usize, relations: &[(&[i64], &[i64])]) -> Result<Self, MonoidError> {
        let rels = relations
            .iter()
            .map(|(l, r)| {
                (
                    l.iter().map(|&x| BigInt::from(x)).collect(),
                    r.iter().map(|&x| BigInt::from(x)).collect(),
                )
            })
            .collect();
        MonoidPresentation::new(n_gens, rels)
    }

    /// Free monoid `N^r`.
    pub fn free(rank: usize) -> Self {
        MonoidPresentation::new(rank, Vec::new()).unwrap()
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &[(Vec<BigInt>, Vec<BigInt>)] {
        &self.relations
    }

    /// Matrix whose columns are `lhs_j - rhs_j`; its column span is the
    /// relation lattice.
    pub fn relation_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|(l, r)| l.iter().zip(r).map(|(a, b)| a - b).collect())
            .collect();
        IntMatrix::from_columns(self.n_gens, &cols)
    }

    fn fingerprint(&self) -> u64 {
        // FNV-1a over the shape and relation data.
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.n_gens as u64);
        for (l, r) in &self.relations {
            for side in [l, r] {
                eat(0x5e);
                for c in side {
                    for b in c.to_signed_bytes_le() {
                        eat(b as u64);
                    }
                    eat(0x2c);
                }
            }
        }
        h
    }

    pub fn element(&self, repr: Vec<BigInt>) -> Result<MonoidElement, MonoidError> {
        if repr.len() != self.n_gens {
            return Err(MonoidError::InvalidPresentation("element arity mismatch"));
        }
        if repr.iter().any(Signed::is_negative) {
            return Err(MonoidError::InvalidPresentation("negative element entry"));
        }
        Ok(MonoidElement {
            repr,
            owner: self.fingerprint(),
        })
    }

    pub fn element_i64(&self, repr: &[i64]) -> Result<MonoidElement, MonoidError> {
        self.element(repr.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(&self) -> MonoidElement {
        self.element(vec![BigInt::zero(); self.n_gens]).unwrap()
    }

    /// The group `Q^gp = Z^I / (relation lattice)`, memoized per value.
    pub fn groupification(&self) -> &AbelianGroup {
        self.group_cache
            .get_or_init(|| Box::new(cokernel_structure(&self.relation_matrix())))
    }

    /// Equality of π-images: true iff the difference of the representatives
    /// lies in the relation lattice.
    pub fn eq_reprs(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let g = self.groupification();
        g.eq_classes(x, y)
    }

    pub fn is_zero_repr(&self, x: &[BigInt]) -> bool {
        self.groupification().is_zero_class(x)
    }

    pub fn element_eq(&self, x: &MonoidElement, y: &MonoidElement) -> Result<bool, MonoidError> {
        let own = self.fingerprint();
        if x.owner != own || y.owner != own {
            return Err(MonoidError::OwnerMismatch);
        }
        Ok(self.eq_reprs(&x.repr, &y.repr))
    }

    /// Decides `g ∈ Q ⊂ Q^gp` with certificates where possible.
    ///
    /// `No` is returned only with a proof: either the class fails the
    /// rational cone test, or the fiber over the free part is provably
    /// finite (Gordan functional) and exhausted. When neither applies
    /// within `bound`, the answer is `Unknown`.
    pub fn membership(&self, g: &GroupElement, bound: u64) -> Membership {
        let gp = self.groupification();
        let n = self.n_gens;
        let rank = gp.free_rank;
        let f = &gp.projection; // first `rank` rows form the free projection

        // Rational cone test: is g.free a nonnegative combination of the
        // generator images?
        let mut cone = LinearSystem::new(n);
        for k in 0..rank {
            let row: Vec<BigInt> = (0..n).map(|i| f[(k, i)].clone()).collect();
            cone.eq(row, g.free[k].clone());
        }
        for i in 0..n {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            cone.ge(row, BigInt::zero());
        }
        if lp_feasible(&cone).is_none() {
            return Membership::No;
        }

        // Gordan test: a functional strictly positive on all generator
        // images certifies that the fiber is finite and bounds it.
        let mut gordan = LinearSystem::new(rank);
        for i in 0..n {
            let row: Vec<BigInt> = (0..rank).map(|k| f[(k, i)].clone()).collect();
            gordan.ge(row, BigInt::one());
        }
        let cap: Option<BigInt> = lp_feasible(&gordan).map(|y| {
            let total: num_rational::BigRational = (0..rank)
                .map(|k| &y[k] * num_rational::BigRational::from(g.free[k].clone()))
                .sum();
            total.floor().to_integer()
        });

        if let Some(cap) = &cap {
            if cap.is_negative() {
                return Membership::No;
            }
        }
        let search_cap: u64 = match &cap {
            Some(c) => u64::try_from(c).unwrap_or(u64::MAX).min(bound),
            None => bound,
        };

        let mut x = vec![0u64; n];
        let found = search_sum_bounded(&mut x, 0, search_cap, &mut |cand| {
            let v: Vec<BigInt> = cand.iter().map(|&c| BigInt::from(c)).collect();
            gp.reduce(&v) == *g
        });
        match found {
            Some(x) => Membership::Yes(x.iter().map(|&c| BigInt::from(c)).collect()),
            None => match cap {
                Some(c) if u64::try_from(&c).map_or(false, |c| c <= bound) => Membership::No,
                _ => Membership::Unknown { bound },
            },
        }
    }

    /// Indices of generators that are zero in the monoid.
    pub fn zero_generators(&self) -> Vec<usize> {
        (0..self.n_gens)
            .filter(|&i| {
                let mut e = vec![BigInt::zero(); self.n_gens];
                e[i] = BigInt::one();
                self.is_zero_repr(&e)
            })
            .collect()
    }

    /// Sharpness with a certificate.
    ///
    /// Sharp: an integer functional β vanishing on relations with
    /// `β(γ_i) ≥ 1` for every generator that is nonzero in the monoid.
    /// Not sharp: a nonzero unit and its inverse, found through the exact
    /// relaxation of `R z ≥ e_i` (a rational solution scales to an integer
    /// one because the right-hand side is nonnegative).
    pub fn is_sharp(&self) -> Sharpness {
        let n = self.n_gens;
        let rel = self.relation_matrix();
        let zero_gens = self.zero_generators();
        let is_zero_gen = |i: usize| zero_gens.contains(&i);

        for i in 0..n {
            if is_zero_gen(i) {
                continue;
            }
            // gamma_i is a unit iff R z >= e_i has a rational solution.
            let mut sys = LinearSystem::new(rel.cols());
            for k in 0..n {
                let row: Vec<BigInt> = (0..rel.cols()).map(|j| rel[(k, j)].clone()).collect();
                let rhs = if k == i { BigInt::one() } else { BigInt::zero() };
                sys.ge(row, rhs);
            }
            if let Some(z) = lp_feasible(&sys) {
                // Scale to an integer solution.
                let mut lcm = BigInt::one();
                for c in &z {
                    lcm = lcm.lcm(c.denom());
                }
                let zi: Vec<BigInt> = z
                    .iter()
                    .map(|c| (c * num_rational::BigRational::from(lcm.clone())).to_integer())
                    .collect();
                let image = rel.mul_vec(&zi);
                let mut unit = vec![BigInt::zero(); n];
                unit[i] = BigInt::one();
                let inverse: Vec<BigInt> = image
                    .iter()
                    .zip(&unit)
                    .map(|(a, u)| a - u)
                    .collect();
                debug_assert!(inverse.iter().all(|c| !c.is_negative()));
                debug_assert!(self.is_zero_repr(&image));
                return Sharpness::NotSharp { unit, inverse };
            }
        }

        // No nonzero generator is a unit, so the monoid is sharp and an
        // interior functional exists; find an integral one.
        let mut sys = LinearSystem::new(n);
        for j in 0..rel.cols() {
            let row: Vec<BigInt> = (0..n).map(|k| rel[(k, j)].clone()).collect();
            sys.eq(row, BigInt::zero());
        }
        for i in 0..n {
            if is_zero_gen(i) {
                continue;
            }
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            sys.ge(row, BigInt::one());
        }
        let beta_rat = lp_feasible(&sys)
            .expect("a monoid with no nonzero unit generators admits an interior functional");
        let mut lcm = BigInt::one();
        for c in &beta_rat {
            lcm = lcm.lcm(c.denom());
        }
        let beta: Vec<BigInt> = beta_rat
            .iter()
            .map(|c| (c * num_rational::BigRational::from(lcm.clone())).to_integer())
            .collect();
        Sharpness::Sharp { beta }
    }

    /// Images of the generators in the torsion-free quotient of `Q^gp`
    /// (columns of the free projection).
    pub fn generator_free_images(&self) -> Vec<Vec<BigInt>> {
        let gp = self.groupification();
        (0..self.n_gens)
            .map(|i| (0..gp.free_rank).map(|k| gp.projection[(k, i)].clone()).collect())
            .collect()
    }

    /// Sharpening of the saturation `Q^sat`, computed through the Hilbert
    /// basis of `cone(Q)` in the torsion-free quotient.
    pub fn saturate(&self) -> Result<SaturationResult, MonoidError> {
        if !self.is_sharp().is_sharp() {
            return Err(MonoidError::NotSharp);
        }
        let gp = self.groupification().clone();
        let rank = gp.free_rank;
        let gammas = self.generator_free_images();

        let ineqs = cone_h_description(&gammas, rank);
        let hb = hilbert_basis(&ineqs, rank).expect("cone of a sharp monoid is pointed");
        let sharp_part = presentation_from_affine_generators(&hb, rank);

        let embedding = (0..self.n_gens)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.n_gens];
                e[i] = BigInt::one();
                gp.reduce(&e)
            })
            .collect();

        Ok(SaturationResult {
            sharp_part,
            hilbert_basis: hb,
            group: gp,
            embedding,
        })
    }

    /// The dual monoid `Q^∨ = Hom(Q, N)` with its pairing matrix.
    pub fn dual_monoid(&self) -> Result<DualMonoid, MonoidError> {
        if !self.is_sharp().is_sharp() {
            return Err(MonoidError::NotSharp);
        }
        let gp = self.groupification();
        let rank = gp.free_rank;
        let gammas = self.generator_free_images();
        // Functionals nonnegative on every generator image.
        let rows = IntMatrix::from_columns(rank, &gammas).transpose();
        let hb = hilbert_basis(&rows, rank)
            .expect("generator images span the quotient, so the dual cone is pointed");
        let presentation = presentation_from_affine_generators(&hb, rank);
        let mut pairing = IntMatrix::zero(hb.len(), self.n_gens);
        for (k, w) in hb.iter().enumerate() {
            for i in 0..self.n_gens {
                let mut acc = BigInt::zero();
                for t in 0..rank {
                    acc += &w[t] * &gammas[i][t];
                }
                pairing[(k, i)] = acc;
            }
        }
        debug_assert!((0..pairing.rows())
            .all(|k| (0..pairing.cols()).all(|i| !pairing[(k, i)].is_negative())));
        Ok(DualMonoid {
            hilbert_basis: hb,
            presentation,
            pairing,
        })
    }

    /// The double dual `Q^∨∨`, isomorphic to the sharpened saturation.
    pub fn double_dual(&self) -> Result<HilbertPresentation, MonoidError> {
        let dual = self.dual_monoid()?;
        let gp = self.groupification();
        let rank = gp.free_rank;
        let rows = IntMatrix::from_columns(rank, &dual.hilbert_basis).transpose();
        let hb = hilbert_basis(&rows, rank).expect("double dual cone is pointed");
        let presentation = presentation_from_affine_generators(&hb, rank);
        Ok(HilbertPresentation {
            hilbert_basis: hb,
            presentation,
        })
    }
}

/// Integral pushout of presentations along generator maps from `base`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub presentation: MonoidPresentation,
    pub left_gens: usize,
    pub right_gens: usize,
}

impl Pushout {
    /// Representative of an element of the left factor inside the pushout.
    pub fn include_left(&self, repr: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(repr.len(), self.left_gens);
        let mut v = repr.to_vec();
        v.extend(vec![BigInt::zero(); self.right_gens]);
        v
    }

    pub fn include_right(&self, repr: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(repr.len(), self.right_gens);
        let mut v = vec![BigInt::zero(); self.left_gens];
        v.extend_from_slice(repr);
        v
    }
}

/// Integral amalgamated sum `P ⊕_base P'`.
///
/// `f` and `f_prime` list, per base generator, a representative of its image
/// in `P` resp. `P'`. The maps must send base relations to equalities.
pub fn pushout_int(
    p: &MonoidPresentation,
    p_prime: &MonoidPresentation,
    base: &MonoidPresentation,
    f: &[Vec<BigInt>],
    f_prime: &[Vec<BigInt>],
) -> Result<Pushout, MonoidError> {
    if f.len() != base.n_gens() || f_prime.len() != base.n_gens() {
        return Err(MonoidError::InvalidPresentation("generator map arity mismatch"));
    }
    let apply = |imgs: &[Vec<BigInt>], v: &[BigInt], n: usize| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in v.iter().enumerate() {
            for (o, g) in out.iter_mut().zip(&imgs[k]) {
                *o += c * g;
            }
        }
        out
    };
    for (j, (l, r)) in base.relations().iter().enumerate() {
        let li = apply(f, l, p.n_gens());
        let ri = apply(f, r, p.n_gens());
        if !p.eq_reprs(&li, &ri) {
            return Err(MonoidError::IllDefinedMap { left_factor: true, relation: j });
        }
        let li = apply(f_prime, l, p_prime.n_gens());
        let ri = apply(f_prime, r, p_prime.n_gens());
        if !p_prime.eq_reprs(&li, &ri) {
            return Err(MonoidError::IllDefinedMap { left_factor: false, relation: j });
        }
    }

    let nl = p.n_gens();
    let nr = p_prime.n_gens();
    let n = nl + nr;
    let pad_left = |v: &[BigInt]| {
        let mut out = v.to_vec();
        out.extend(vec![BigInt::zero(); nr]);
        out
    };
    let pad_right = |v: &[BigInt]| {
        let mut out = vec![BigInt::zero(); nl];
        out.extend_from_slice(v);
        out
    };
    let mut relations = Vec::new();
    for (l, r) in p.relations() {
        relations.push((pad_left(l), pad_left(r)));
    }
    for (l, r) in p_prime.relations() {
        relations.push((pad_right(l), pad_right(r)));
    }
    for k in 0..base.n_gens() {
        relations.push((pad_left(&f[k]), pad_right(&f_prime[k])));
    }
    Ok(Pushout {
        presentation: MonoidPresentation::new(n, relations)?,
        left_gens: nl,
        right_gens: nr,
    })
}

/// Result of evaluating the node-monoid map `[q,(a,b)] ↦ (q+aρ, q+bρ)` on a
/// set of requested elements, with verification data.
#[derive(Clone, Debug)]
pub struct NodeEmbedding {
    /// The amalgamated sum `Q ⊕_N N²` along `1 ↦ ρ` and `1 ↦ (1,1)`.
    pub pushout: Pushout,
    /// Image pairs of the requested elements, as representatives in `Q`.
    pub pairs: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    pub report: NodeWindowReport,
}

#[derive(Clone, Debug, Default)]
pub struct NodeWindowReport {
    /// Pushout-equal inputs have equal image pairs.
    pub well_defined: bool,
    /// Pushout-distinct inputs have distinct image pairs.
    pub injective: bool,
    /// Window pairs lie in the image iff they differ by an integer multiple
    /// of ρ.
    pub image_characterized: bool,
    pub elements_checked: usize,
    pub pairs_checked: usize,
}

impl NodeWindowReport {
    pub fn all_hold(&self) -> bool {
        self.well_defined && self.injective && self.image_characterized
    }
}

/// Evaluates and verifies the node-monoid embedding for a sharp fine `Q`
/// and nonzero `ρ ∈ Q`.
///
/// `requests` are pushout elements given as `(q, a, b)`. Injectivity and
/// well-definedness are verified on the requested set together with the
/// full degree-`window` window, and the image characterization (pairs
/// `(q, q + cρ)`) is verified over all window pairs.
pub fn node_monoid_embedding(
    q: &MonoidPresentation,
    rho: &[BigInt],
    requests: &[(Vec<BigInt>, u64, u64)],
    window: u64,
) -> Result<NodeEmbedding, MonoidError> {
    if q.is_zero_repr(rho) {
        return Err(MonoidError::ZeroRho);
    }
    let Sharpness::Sharp { beta } = q.is_sharp() else {
        return Err(MonoidError::NotSharp);
    };

    let n_base = MonoidPresentation::free(1);
    let n2 = MonoidPresentation::free(2);
    let pushout = pushout_int(
        q,
        &n2,
        &n_base,
        &[rho.to_vec()],
        &[vec![BigInt::one(), BigInt::one()]],
    )?;

    let image = |x: &[BigInt], a: &BigInt, b: &BigInt| -> (Vec<BigInt>, Vec<BigInt>) {
        let left: Vec<BigInt> = x.iter().zip(rho).map(|(c, r)| c + a * r).collect();
        let right: Vec<BigInt> = x.iter().zip(rho).map(|(c, r)| c + b * r).collect();
        (left, right)
    };

    let pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = requests
        .iter()
        .map(|(x, a, b)| image(x, &BigInt::from(*a), &BigInt::from(*b)))
        .collect();

    // Window elements [x, (a, b)] with |x| + a + b <= window.
    let mut elements: Vec<(Vec<BigInt>, u64, u64)> = Vec::new();
    let mut x = vec![0u64; q.n_gens()];
    enumerate_sum_bounded(&mut x, 0, window, &mut |cand| {
        let used: u64 = cand.iter().sum();
        let budget = window - used;
        for a in 0..=budget {
            for b in 0..=(budget - a) {
                elements.push((cand.iter().map(|&c| BigInt::from(c)).collect(), a, b));
            }
        }
    });
    elements.extend(requests.iter().cloned());

    let pushout_repr = |x: &[BigInt], a: u64, b: u64| -> Vec<BigInt> {
        let mut v = x.to_vec();
        v.push(BigInt::from(a));
        v.push(BigInt::from(b));
        v
    };

    let mut report = NodeWindowReport {
        well_defined: true,
        injective: true,
        image_characterized: true,
        elements_checked: elements.len(),
        pairs_checked: 0,
    };

    let imgs: Vec<(Vec<BigInt>, Vec<BigInt>)> = elements
        .iter()
        .map(|(x, a, b)| image(x, &BigInt::from(*a), &BigInt::from(*b)))
        .collect();
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            let (xi, ai, bi) = &elements[i];
            let (xj, aj, bj) = &elements[j];
            let same_input = pushout
                .presentation
                .eq_reprs(&pushout_repr(xi, *ai, *bi), &pushout_repr(xj, *aj, *bj));
            let same_image = q.eq_reprs(&imgs[i].0, &imgs[j].0) && q.eq_reprs(&imgs[i].1, &imgs[j].1);
            report.pairs_checked += 1;
            if same_input && !same_image {
                report.well_defined = false;
            }
            if !same_input && same_image {
                report.injective = false;
            }
        }
    }

    // Every image pair differs by an integer multiple of rho, and every
    // window pair with that property is hit.
    let beta_of = |v: &[BigInt]| -> BigInt {
        v.iter().zip(&beta).map(|(c, bc)| c * bc).sum()
    };
    let beta_rho = beta_of(rho);
    let in_image = |q1: &[BigInt], q2: &[BigInt]| -> Option<BigInt> {
        // q2 = q1 + c rho forces beta(q2) - beta(q1) = c beta(rho).
        let delta = beta_of(q2) - beta_of(q1);
        let (c, rem) = delta.div_mod_floor(&beta_rho);
        if !rem.is_zero() {
            return None;
        }
        let shifted: Vec<BigInt> = if c.is_negative() {
            // compare q2 + |c| rho with q1
            q2.iter().zip(rho).map(|(v, r)| v + (-&c) * r).collect()
        } else {
            q1.iter().zip(rho).map(|(v, r)| v + &c * r).collect()
        };
        let ok = if c.is_negative() {
            q.eq_reprs(&shifted, q1)
        } else {
            q.eq_reprs(&shifted, q2)
        };
        ok.then_some(c)
    };

    for (img_left, img_right) in &imgs {
        if in_image(img_left, img_right).is_none() {
            report.image_characterized = false;
        }
    }
    // All window pairs of Q: those with an integer slope must be reachable.
    let mut window_elems: Vec<Vec<BigInt>> = Vec::new();
    let mut wx = vec![0u64; q.n_gens()];
    enumerate_sum_bounded(&mut wx, 0, window, &mut |cand| {
        window_elems.push(cand.iter().map(|&c| BigInt::from(c)).collect());
    });
    for q1 in &window_elems {
        for q2 in &window_elems {
            if let Some(c) = in_image(q1, q2) {
                // Constructive preimage: [q1,(0,c)] or [q2,(-c,0)].
                let (px, pa, pb) = if c.is_negative() {
                    (q2.clone(), -c.clone(), BigInt::zero())
                } else {
                    (q1.clone(), BigInt::zero(), c.clone())
                };
                let (l, r) = image(&px, &pa, &pb);
                if !(q.eq_reprs(&l, q1) && q.eq_reprs(&r, q2)) {
                    report.image_characterized = false;
                }
            }
        }
    }

    Ok(NodeEmbedding { pushout, pairs, report })
}

/// Inequality rows cutting out `cone(Q)` in the torsion-free quotient of
/// `Q^gp`: the H-description behind `saturate`, exposed for box-oracle
/// comparisons.
pub fn cone_inequalities(p: &MonoidPresentation) -> IntMatrix {
    let gp = p.groupification();
    cone_h_description(&p.generator_free_images(), gp.free_rank)
}

/// Presentation of the affine monoid generated by the given lattice vectors:
/// the relation lattice is the kernel of the generator matrix.
pub(crate) fn presentation_from_affine_generators(
    gens: &[Vec<BigInt>],
    dim: usize,
) -> MonoidPresentation {
    let h = IntMatrix::from_columns(dim, gens);
    let relations: Vec<(Vec<BigInt>, Vec<BigInt>)> = kernel_basis(&h)
        .into_iter()
        .map(|z| {
            let plus: Vec<BigInt> = z.iter().map(|c| c.clone().max(BigInt::zero())).collect();
            let minus: Vec<BigInt> = z.iter().map(|c| (-c).max(BigInt::zero())).collect();
            (plus, minus)
        })
        .collect();
    MonoidPresentation::new(gens.len(), relations).unwrap()
}

/// H-description of the cone spanned by the given vectors, by
/// Fourier–Motzkin projection of `{(x, λ) : x = Γλ, λ ≥ 0}` onto `x`.
pub(crate) fn cone_h_description(gens: &[Vec<BigInt>], dim: usize) -> IntMatrix {
    use alloc::collections::BTreeSet;

    // Inequality rows over (x, lambda): x - Γλ >= 0, Γλ - x >= 0, λ >= 0.
    let k = gens.len();
    let total = dim + k;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..dim {
        let mut up = vec![BigInt::zero(); total];
        up[i] = BigInt::one();
        for (j, g) in gens.iter().enumerate() {
            up[dim + j] = -g[i].clone();
        }
        let down: Vec<BigInt> = up.iter().map(|c| -c.clone()).collect();
        rows.push(up);
        rows.push(down);
    }
    for j in 0..k {
        let mut row = vec![BigInt::zero(); total];
        row[dim + j] = BigInt::one();
        rows.push(row);
    }

    // Eliminate the lambda coordinates.
    for var in dim..total {
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            if row[var].is_positive() {
                lowers.push(row);
            } else if row[var].is_negative() {
                uppers.push(row);
            } else {
                rest.push(row);
            }
        }
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for lo in &lowers {
            for up in &uppers {
                let a = lo[var].clone();
                let c = -up[var].clone();
                let mut row: Vec<BigInt> = (0..total)
                    .map(|j| &c * &lo[j] + &a * &up[j])
                    .collect();
                debug_assert!(row[var].is_zero());
                let mut g = BigInt::zero();
                for v in &row {
                    g = g.gcd(v);
                }
                if g > BigInt::one() {
                    for v in row.iter_mut() {
                        *v /= &g;
                    }
                }
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                if seen.insert(row.clone()) {
                    rest.push(row);
                }
            }
        }
        rows = rest;
    }

    let final_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| r[..dim].to_vec())
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    IntMatrix::from_rows(final_rows)
}

/// Enumerates all nonnegative integer vectors with coordinate sum at most
/// `budget`, invoking `visit` on each.
fn enumerate_sum_bounded(x: &mut Vec<u64>, idx: usize, budget: u64, visit: &mut impl FnMut(&[u64])) {
    if idx == x.len() {
        visit(x);
        return;
    }
    for v in 0..=budget {
        x[idx] = v;
        enumerate_sum_bounded(x, idx + 1, budget - v, visit);
    }
    x[idx] = 0;
}

/// Like `enumerate_sum_bounded` but stops at the first hit.
fn search_sum_bounded(
    x: &mut Vec<u64>,
    idx: usize,
    budget: u64,
    check: &mut impl FnMut(&[u64]) -> bool,
) -> Option<Vec<u64>> {
    if idx == x.len() {
        return check(x).then(|| x.clone());
    }
    for v in 0..=budget {
        x[idx] = v;
        if let Some(hit) = search_sum_bounded(x, idx + 1, budget - v, check) {
            return Some(hit);
        }
    }
    x[idx] = 0;
    None
}
