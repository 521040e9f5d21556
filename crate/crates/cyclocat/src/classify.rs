//! Tensor functors between the categories `Vect_{Z_n}^ζ`, the equivalence
//! criterion, equivalence-class counting, and the automorphism 2-group.
//!
//! A tensor functor `Vect^ζ → Vect^ξ` is determined by a pair `(X, λ)`
//! with `X ≅ δ_j` and `λ : X^{⊗n} → 1`; it exists iff `ξ^{j²} = ζ`.
//! Writing `ζ = θ^a` and `ξ = θ^b` this is the congruence `b·j² ≡ a (mod n)`.
//! The functor is an equivalence iff `j` is a unit mod `n`, which yields
//! the equivalence test, and counting the resulting classes of exponents
//! is orbit counting for the action `a ↦ j²·a` of `Z_n^×` on `Z_n`.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cocycle::CocycleSpec;
use crate::cyclotomic::{CycScalar, Modulus};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("lambda scalar must be nonzero")]
    ZeroLambda,
    #[error("codomain context (n={0}, zeta=theta^{1}) does not match domain context (n={2}, zeta=theta^{3})")]
    ContextMismatch(usize, usize, usize, usize),
    #[error("not a valid tensor functor: {0}*{1}^2 is not {2} mod {3}")]
    InvalidFunctor(usize, usize, usize, usize),
    #[error("no natural transformation exists between degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
}

/// The pair `(X, λ)` presenting a tensor functor `F : Vect^ζ → Vect^ξ`,
/// with `X ≅ δ_j` and `λ` recorded as a nonzero scalar relative to the
/// canonical isomorphism `δ_j^{⊗n} → 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorSpec {
    source: CocycleSpec,
    target: CocycleSpec,
    j: usize,
    lambda_scalar: CycScalar,
}

impl FunctorSpec {
    pub fn new(
        source: CocycleSpec,
        target: CocycleSpec,
        j: i64,
        lambda_scalar: CycScalar,
    ) -> Result<Self, ClassifyError> {
        if source.modulus() != target.modulus() {
            return Err(ClassifyError::ModulusMismatch(
                source.modulus().get(),
                target.modulus().get(),
            ));
        }
        if lambda_scalar.is_zero() {
            return Err(ClassifyError::ZeroLambda);
        }
        Ok(FunctorSpec {
            source,
            target,
            j: source.modulus().reduce(j),
            lambda_scalar,
        })
    }

    /// The identity functor on `Vect^ζ`: degree 1, canonical `λ`.
    pub fn identity(spec: CocycleSpec) -> Self {
        FunctorSpec {
            source: spec,
            target: spec,
            j: spec.modulus().reduce(1),
            lambda_scalar: CycScalar::one(spec.modulus()),
        }
    }

    pub fn source(&self) -> CocycleSpec {
        self.source
    }

    pub fn target(&self) -> CocycleSpec {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.j
    }

    pub fn lambda_scalar(&self) -> &CycScalar {
        &self.lambda_scalar
    }

    pub fn is_automorphism_spec(&self) -> bool {
        self.source == self.target && is_unit(self.j, self.source.modulus().get())
    }
}

/// True iff the pair defines a tensor functor, i.e. `target.ζ^{j²} = source.ζ`.
pub fn functor_valid(spec: &FunctorSpec) -> bool {
    let j = spec.j as i64;
    spec.target.zeta().pow(j).pow(j) == spec.source.zeta()
}

// gcd(j, n) = 1 covers n = 1 too: the sole residue 0 has gcd(0, 1) = 1.
fn is_unit(j: usize, n: usize) -> bool {
    j.gcd(&n) == 1
}

fn units(n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&j| is_unit(j, n))
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub equivalent: bool,
    pub witness: Option<usize>,
}

/// Tests whether `Vect^{θ^a} ≃ Vect^{θ^b}` by searching `Z_n^×` for the
/// least `j` with `b·j² ≡ a (mod n)`.
pub fn is_equivalent(n: Modulus, a: i64, b: i64) -> EquivalenceReport {
    let m = n.get();
    let (a, b) = (n.reduce(a), n.reduce(b));
    let witness = units(m).find(|&j| (b * j * j) % m == a);
    EquivalenceReport {
        n: m,
        a,
        b,
        equivalent: witness.is_some(),
        witness,
    }
}

/// The number of categories `Vect_{Z_n}^ζ` up to tensor equivalence,
/// via the closed-form product over the factorization
/// `n = 2^{k0} · p_1^{k_1} ··· p_l^{k_l}`.
pub fn count_classes_formula(n: usize) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut k0 = 0u32;
    while m % 2 == 0 {
        m /= 2;
        k0 += 1;
    }
    let mut odd_product = 1u64;
    let mut p = 3usize;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0u64;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            odd_product *= 2 * k + 1;
        }
        p += 2;
    }
    if m > 1 {
        odd_product *= 3;
    }
    match k0 {
        0 => odd_product,
        1 => 2 * odd_product,
        2 => 4 * odd_product,
        k0 => 4 * (k0 as u64 - 1) * odd_product,
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub count: u64,
    pub orbits: Vec<Vec<usize>>,
}

/// Independent oracle for the class count: enumerates the orbits of `Z_n`
/// under multiplication by squares of units, `a ↦ j²·a`.
pub fn count_classes_bruteforce(n: usize) -> OrbitReport {
    assert!(n >= 1);
    let squares: Vec<usize> = units(n).map(|j| (j * j) % n).collect();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let mut orbit: Vec<usize> = squares.iter().map(|&s| (s * a) % n).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        orbits.push(orbit);
    }
    OrbitReport {
        n,
        count: orbits.len() as u64,
        orbits,
    }
}

/// A natural isomorphism between automorphisms of equal degree, recorded
/// as an index into `Θ`, the `n`-th roots of unity. Between functors of
/// different degrees the only natural transformation is zero, so no
/// `NatIso` exists there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatIso {
    pub from: FunctorSpec,
    pub to: FunctorSpec,
    pub tau_index: usize,
}

impl NatIso {
    pub fn new(from: FunctorSpec, to: FunctorSpec, tau_index: i64) -> Result<Self, ClassifyError> {
        if from.j != to.j {
            return Err(ClassifyError::DegreeMismatch(from.j, to.j));
        }
        let tau_index = from.source.modulus().reduce(tau_index);
        Ok(NatIso {
            from,
            to,
            tau_index,
        })
    }
}

/// Lists the natural isomorphisms between two automorphism specs: all of
/// `Θ` (one per index in `Z_n`) when the degrees match, empty otherwise.
pub fn hom_between(from: &FunctorSpec, to: &FunctorSpec) -> Result<Vec<NatIso>, ClassifyError> {
    for f in [from, to] {
        if !functor_valid(f) {
            return Err(ClassifyError::InvalidFunctor(
                f.target.zeta().exponent(),
                f.j,
                f.source.zeta().exponent(),
                f.source.modulus().get(),
            ));
        }
    }
    // automorphisms only: all four contexts must coincide
    if from.source != to.source || from.target != to.target || from.source != from.target {
        return Err(ClassifyError::ContextMismatch(
            from.source.modulus().get(),
            from.source.zeta().exponent(),
            to.source.modulus().get(),
            to.source.zeta().exponent(),
        ));
    }
    if from.j != to.j {
        return Ok(Vec::new());
    }
    let n = from.source.modulus().get();
    Ok((0..n)
        .map(|k| NatIso {
            from: from.clone(),
            to: to.clone(),
            tau_index: k,
        })
        .collect())
}

/// Composition of tensor functors: `compose_functors(f, g)` is `f ∘ g`,
/// defined when `g.target = f.source`. Degrees multiply mod `n` and the
/// `λ`-scalars multiply.
pub fn compose_functors(f: &FunctorSpec, g: &FunctorSpec) -> Result<FunctorSpec, ClassifyError> {
    if g.target != f.source {
        return Err(ClassifyError::ContextMismatch(
            g.target.modulus().get(),
            g.target.zeta().exponent(),
            f.source.modulus().get(),
            f.source.zeta().exponent(),
        ));
    }
    let n = f.source.modulus();
    Ok(FunctorSpec {
        source: g.source,
        target: f.target,
        j: n.reduce((f.j * g.j) as i64),
        lambda_scalar: f.lambda_scalar.mul(&g.lambda_scalar),
    })
}

/// Invariants of the automorphism 2-group of `Vect_{Z_n}^ζ`.
#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct TwoGroup {
    pub n: usize,
    pub zeta_exponent: usize,
    /// `{ j ∈ Z_n^× : ζ^{j²} = ζ }`, sorted.
    pub pi0: Vec<usize>,
    /// `π1 ≅ Z_n`; only the order is an invariant here.
    pub pi1_order: usize,
    /// `Aut(F) ≅ Z_n` for every automorphism `F`.
    pub functor_aut_order: usize,
    /// Degrees outside `Z_n^×` that still satisfy `a·j² ≡ a (mod n)`.
    /// Such `j` never give equivalences; they are reported rather than
    /// silently folded into `pi0`.
    pub non_unit_solutions: Vec<usize>,
}

/// Computes `π0`, `π1`, and the automorphism group of a fixed functor for
/// the 2-group of tensor auto-equivalences of `Vect_{Z_n}^{θ^a}`.
pub fn aut_2group(n: Modulus, a: i64) -> TwoGroup {
    let m = n.get();
    let a = n.reduce(a);
    let solves = |j: usize| (a * j * j) % m == a % m;
    let pi0: Vec<usize> = units(m).filter(|&j| solves(j)).collect();
    let non_unit_solutions: Vec<usize> = (0..m)
        .filter(|&j| j.gcd(&m) != 1 % m && solves(j))
        .collect();
    TwoGroup {
        n: m,
        zeta_exponent: a,
        pi0,
        pi1_order: m,
        functor_aut_order: m,
        non_unit_solutions,
    }
}
