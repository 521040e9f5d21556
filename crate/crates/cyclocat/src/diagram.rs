//! The diagrammatic category `D_{ζ,n}`: morphism words over the generators
//! `f_n` (the `n`-legged cap, `n → 0`) and `g_n` (the cup, `0 → n`),
//! rewriting to canonical normal form, duality data, and an independent
//! evaluation oracle into the skeletal `Vect_{Z_n}^ζ`.
//!
//! Words are stacks of slices read top to bottom; a slice is a horizontal
//! row of atoms. The three defining relations are used as oriented rewrites:
//!
//! * bubble cancellation: a cup directly followed by the cap closing it is
//!   the identity of the unit object;
//! * stack cancellation: a cap directly followed by a cup on the same `n`
//!   strands is the `n`-strand identity;
//! * sliding: moving a cap one strand to the left multiplies the word by
//!   `ζ`; moving a cup one strand to the left multiplies by `ζ^{-1}`.
//!
//! Normalization slides every cap and cup to the left edge and then cancels
//! adjacent opposite pairs. Each step strictly decreases the measure
//! (atom count, sum of cap/cup positions), so the procedure terminates, and
//! the result is a scalar times an all-caps stack, an all-cups stack, or an
//! identity.

use serde::Serialize;
use thiserror::Error;

use crate::cocycle::{omega, CocycleSpec};
use crate::cyclotomic::{CycScalar, Modulus, RootPower};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cannot compose: codomain {cod} of the top word != domain {dom} of the bottom word")]
    CompositionMismatch { cod: usize, dom: usize },
    #[error("words live over different contexts (n or zeta differ)")]
    ContextMismatch,
    #[error("word has {atoms} atoms, exceeding the limit of {limit}")]
    TooLarge { atoms: usize, limit: usize },
}

/// Default cap on word size for interactive use; override per call or via
/// the `CYCLOCAT_MAX_ATOMS` environment variable in the CLI.
pub const DEFAULT_MAX_ATOMS: usize = 10_000;

/// A generating cell of a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    /// Identity strand, `1 → 1`.
    Strand,
    /// The cap `f_n : n → 0`.
    Cap,
    /// The cup `g_n : 0 → n`.
    Cup,
}

impl Atom {
    pub fn inputs(self, n: usize) -> usize {
        match self {
            Atom::Strand => 1,
            Atom::Cap => n,
            Atom::Cup => 0,
        }
    }

    pub fn outputs(self, n: usize) -> usize {
        match self {
            Atom::Strand => 1,
            Atom::Cap => 0,
            Atom::Cup => n,
        }
    }
}

/// A horizontal row of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub atoms: Vec<Atom>,
}

impl Slice {
    pub fn identity(k: usize) -> Slice {
        Slice {
            atoms: vec![Atom::Strand; k],
        }
    }

    pub fn dom(&self, n: usize) -> usize {
        self.atoms.iter().map(|a| a.inputs(n)).sum()
    }

    pub fn cod(&self, n: usize) -> usize {
        self.atoms.iter().map(|a| a.outputs(n)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Body {
    /// The formal zero morphism of a hom space.
    Zero,
    Diagram {
        scalar: CycScalar,
        slices: Vec<Slice>,
    },
}

/// A morphism of `D_{ζ,n}`: a scalar prefactor times a stack of slices,
/// or the formal zero. Immutable once built; all operations allocate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramWord {
    n: Modulus,
    zeta: RootPower,
    dom: usize,
    cod: usize,
    body: Body,
}

impl DiagramWord {
    pub fn identity(spec: CocycleSpec, k: usize) -> DiagramWord {
        DiagramWord {
            n: spec.modulus(),
            zeta: spec.zeta(),
            dom: k,
            cod: k,
            body: Body::Diagram {
                scalar: CycScalar::one(spec.modulus()),
                slices: Vec::new(),
            },
        }
    }

    pub fn cap(spec: CocycleSpec) -> DiagramWord {
        DiagramWord::from_single_slice(spec, vec![Atom::Cap])
    }

    pub fn cup(spec: CocycleSpec) -> DiagramWord {
        DiagramWord::from_single_slice(spec, vec![Atom::Cup])
    }

    pub fn from_single_slice(spec: CocycleSpec, atoms: Vec<Atom>) -> DiagramWord {
        let n = spec.modulus();
        let slice = Slice { atoms };
        DiagramWord {
            n,
            zeta: spec.zeta(),
            dom: slice.dom(n.get()),
            cod: slice.cod(n.get()),
            body: Body::Diagram {
                scalar: CycScalar::one(n),
                slices: vec![slice],
            },
        }
    }

    /// Builds a word from explicit slices, checking that consecutive slices
    /// compose.
    pub fn from_slices(
        spec: CocycleSpec,
        dom: usize,
        slices: Vec<Slice>,
    ) -> Result<DiagramWord, DiagramError> {
        let n = spec.modulus().get();
        let mut boundary = dom;
        for s in &slices {
            if s.dom(n) != boundary {
                return Err(DiagramError::CompositionMismatch {
                    cod: boundary,
                    dom: s.dom(n),
                });
            }
            boundary = s.cod(n);
        }
        Ok(DiagramWord {
            n: spec.modulus(),
            zeta: spec.zeta(),
            dom,
            cod: boundary,
            body: Body::Diagram {
                scalar: CycScalar::one(spec.modulus()),
                slices,
            },
        })
    }

    /// The formal zero morphism `k → l`.
    pub fn zero(spec: CocycleSpec, dom: usize, cod: usize) -> DiagramWord {
        DiagramWord {
            n: spec.modulus(),
            zeta: spec.zeta(),
            dom,
            cod,
            body: Body::Zero,
        }
    }

    pub fn spec(&self) -> CocycleSpec {
        CocycleSpec::new(self.n, self.zeta)
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.body, Body::Zero)
    }

    pub fn scalar(&self) -> Option<&CycScalar> {
        match &self.body {
            Body::Zero => None,
            Body::Diagram { scalar, .. } => Some(scalar),
        }
    }

    pub fn slices(&self) -> &[Slice] {
        match &self.body {
            Body::Zero => &[],
            Body::Diagram { slices, .. } => slices,
        }
    }

    pub fn atom_count(&self) -> usize {
        self.slices().iter().map(|s| s.atoms.len()).sum()
    }

    /// Multiplies the scalar prefactor.
    pub fn scale(mut self, c: &CycScalar) -> DiagramWord {
        if let Body::Diagram { scalar, .. } = &mut self.body {
            *scalar = scalar.mul(c);
        }
        self
    }

    pub fn scale_root(self, r: RootPower) -> DiagramWord {
        let c = CycScalar::embed(r);
        self.scale(&c)
    }

    fn check_context(&self, other: &DiagramWord) -> Result<(), DiagramError> {
        if self.n != other.n || self.zeta != other.zeta {
            return Err(DiagramError::ContextMismatch);
        }
        Ok(())
    }
}

/// Vertical stacking: `top` first (read top to bottom), then `bottom`.
pub fn compose(top: &DiagramWord, bottom: &DiagramWord) -> Result<DiagramWord, DiagramError> {
    top.check_context(bottom)?;
    if top.cod != bottom.dom {
        return Err(DiagramError::CompositionMismatch {
            cod: top.cod,
            dom: bottom.dom,
        });
    }
    let body = match (&top.body, &bottom.body) {
        (Body::Zero, _) | (_, Body::Zero) => Body::Zero,
        (
            Body::Diagram {
                scalar: s1,
                slices: sl1,
            },
            Body::Diagram {
                scalar: s2,
                slices: sl2,
            },
        ) => {
            let mut slices = sl1.clone();
            slices.extend(sl2.iter().cloned());
            Body::Diagram {
                scalar: s1.mul(s2),
                slices,
            }
        }
    };
    Ok(DiagramWord {
        n: top.n,
        zeta: top.zeta,
        dom: top.dom,
        cod: bottom.cod,
        body,
    })
}

/// Horizontal concatenation. Objects add; the shorter stack is padded with
/// identity slices at the bottom.
pub fn tensor(left: &DiagramWord, right: &DiagramWord) -> Result<DiagramWord, DiagramError> {
    left.check_context(right)?;
    let dom = left.dom + right.dom;
    let cod = left.cod + right.cod;
    let body = match (&left.body, &right.body) {
        (Body::Zero, _) | (_, Body::Zero) => Body::Zero,
        (
            Body::Diagram {
                scalar: s1,
                slices: sl1,
            },
            Body::Diagram {
                scalar: s2,
                slices: sl2,
            },
        ) => {
            let rows = sl1.len().max(sl2.len());
            let mut slices = Vec::with_capacity(rows);
            for i in 0..rows {
                let l = sl1
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| Slice::identity(left.cod));
                let r = sl2
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| Slice::identity(right.cod));
                let mut atoms = l.atoms;
                atoms.extend(r.atoms);
                slices.push(Slice { atoms });
            }
            Body::Diagram {
                scalar: s1.mul(s2),
                slices,
            }
        }
    };
    Ok(DiagramWord {
        n: left.n,
        zeta: left.zeta,
        dom,
        cod,
        body,
    })
}

/// The canonical shape of a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "count", rename_all = "snake_case")]
pub enum Shape {
    /// `p` caps stacked at the left edge, identity strands to the right.
    Caps(usize),
    /// `q` cups stacked at the left edge, identity strands to the right.
    Cups(usize),
    Identity,
}

/// The canonical representative of a morphism: a scalar times a pure shape.
/// Two words are equal in `D_{ζ,n}` iff their normal forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub scalar: CycScalar,
    pub shape: Shape,
    pub dom: usize,
    pub cod: usize,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Rebuilds a word in canonical position from the normal form.
    pub fn to_word(&self, spec: CocycleSpec) -> DiagramWord {
        let n = spec.modulus().get();
        let mut w = DiagramWord::identity(spec, self.dom);
        match self.shape {
            Shape::Identity => {}
            Shape::Caps(p) => {
                let mut boundary = self.dom;
                for _ in 0..p {
                    let mut atoms = vec![Atom::Cap];
                    atoms.extend(vec![Atom::Strand; boundary - n]);
                    let slice = DiagramWord::from_single_slice(spec, atoms);
                    w = compose(&w, &slice).expect("canonical cap stack composes");
                    boundary -= n;
                }
            }
            Shape::Cups(q) => {
                let mut boundary = self.dom;
                for _ in 0..q {
                    let mut atoms = vec![Atom::Cup];
                    atoms.extend(vec![Atom::Strand; boundary]);
                    let slice = DiagramWord::from_single_slice(spec, atoms);
                    w = compose(&w, &slice).expect("canonical cup stack composes");
                    boundary += n;
                }
            }
        }
        w.scale(&self.scalar)
    }
}

/// An elementary move: one cap or cup at a strand position, everything else
/// identity. Any slice factors into these by the interchange law, at no
/// scalar cost.
#[derive(Debug, Clone, Copy)]
struct Move {
    kind: Atom, // Cap or Cup only
    pos: usize, // strands strictly to its left
}

fn elementarize(word: &DiagramWord) -> Vec<Move> {
    let n = word.n.get();
    let mut moves = Vec::new();
    for slice in word.slices() {
        // Atoms act left to right: when an atom fires, everything to its
        // left has already produced outputs, everything to its right still
        // shows inputs.
        let mut outputs_before = 0usize;
        for atom in &slice.atoms {
            match atom {
                Atom::Strand => {}
                Atom::Cap | Atom::Cup => moves.push(Move {
                    kind: *atom,
                    pos: outputs_before,
                }),
            }
            outputs_before += atom.outputs(n);
        }
    }
    moves
}

/// Rewrites a word to its canonical normal form.
///
/// Every cap is slid to the left edge (each strand crossed contributes a
/// factor `ζ`), every cup likewise (factor `ζ^{-1}` per strand), and then
/// adjacent opposite pairs at the edge cancel at scalar one. What remains
/// is a pure cap or cup stack.
pub fn normalize(word: &DiagramWord) -> NormalForm {
    let n = word.n.get();
    let spec = word.spec();
    let shape_of = |dom: usize, cod: usize| -> Shape {
        use std::cmp::Ordering::*;
        match dom.cmp(&cod) {
            Equal => Shape::Identity,
            Greater => Shape::Caps((dom - cod) / n),
            Less => Shape::Cups((cod - dom) / n),
        }
    };

    if word.is_zero() || word.dom % n != word.cod % n {
        return NormalForm {
            scalar: CycScalar::zero(word.n),
            shape: shape_of(word.dom, word.cod),
            dom: word.dom,
            cod: word.cod,
        };
    }

    let moves = elementarize(word);
    // Slide everything to position 0, accumulating the ζ exponent.
    let mut exponent: i64 = 0;
    let mut caps = 0usize;
    let mut cups = 0usize;
    for mv in &moves {
        match mv.kind {
            Atom::Cap => {
                exponent += mv.pos as i64;
                caps += 1;
            }
            Atom::Cup => {
                exponent -= mv.pos as i64;
                cups += 1;
            }
            Atom::Strand => unreachable!(),
        }
    }
    // At the left edge every adjacent cap/cup or cup/cap pair cancels at
    // scalar one, so only the excess of one kind survives.
    let shape = if caps > cups {
        Shape::Caps(caps - cups)
    } else if cups > caps {
        Shape::Cups(cups - caps)
    } else {
        Shape::Identity
    };
    // The proof of one-dimensionality says mixed leftovers cannot occur;
    // the shape must match what the objects dictate. Fail loudly otherwise.
    assert_eq!(
        shape,
        shape_of(word.dom, word.cod),
        "rewriting produced a shape inconsistent with the hom space"
    );

    let scalar = word
        .scalar()
        .expect("nonzero word has a scalar")
        .mul(&CycScalar::embed(spec.zeta().pow(exponent)));
    NormalForm {
        scalar,
        shape,
        dom: word.dom,
        cod: word.cod,
    }
}

/// One line per rewrite step of [`normalize`], for tracing.
pub fn rewrite_trace(word: &DiagramWord) -> Vec<String> {
    let mut lines = Vec::new();
    if word.is_zero() || word.dom % word.n.get() != word.cod % word.n.get() {
        lines.push("word is zero; nothing to rewrite".to_string());
        return lines;
    }
    let mut caps = 0usize;
    let mut cups = 0usize;
    for mv in elementarize(word) {
        match mv.kind {
            Atom::Cap => {
                caps += 1;
                if mv.pos > 0 {
                    lines.push(format!(
                        "slide cap left across {} strand(s): scalar *= zeta^{}",
                        mv.pos, mv.pos
                    ));
                }
            }
            Atom::Cup => {
                cups += 1;
                if mv.pos > 0 {
                    lines.push(format!(
                        "slide cup left across {} strand(s): scalar *= zeta^-{}",
                        mv.pos, mv.pos
                    ));
                }
            }
            Atom::Strand => unreachable!(),
        }
    }
    for _ in 0..caps.min(cups) {
        lines.push("cancel adjacent cap/cup pair at the left edge".to_string());
    }
    lines
}

/// Like [`normalize`] but refusing words above an atom limit.
pub fn normalize_with_limit(word: &DiagramWord, limit: usize) -> Result<NormalForm, DiagramError> {
    let atoms = word.atom_count();
    if atoms > limit {
        return Err(DiagramError::TooLarge { atoms, limit });
    }
    Ok(normalize(word))
}

/// `dim Hom_{D_{ζ,n}}(k, l)`: one if `k ≡ l (mod n)`, zero otherwise.
pub fn hom_dim_d(n: Modulus, k: usize, l: usize) -> usize {
    if k % n.get() == l % n.get() {
        1
    } else {
        0
    }
}

/// Evaluation and coevaluation exhibiting `n−k` as the dual of `k`:
/// `eval_k = ζ^{-k}·f_n : (n−k) ⊗ k → 0` and `coeval_k = g_n : 0 → k ⊗ (n−k)`.
pub fn eval_coeval(spec: CocycleSpec, k: usize) -> (DiagramWord, DiagramWord) {
    assert!(k < spec.modulus().get(), "k must satisfy 0 ≤ k < n");
    let eval = DiagramWord::cap(spec).scale_root(spec.zeta().pow(-(k as i64)));
    let coeval = DiagramWord::cup(spec);
    (eval, coeval)
}

/// Checks both zig-zag identities for the dual pair `(k, n−k)`:
/// `(coeval ⊗ id_k) ; (id_k ⊗ eval) = id_k` and
/// `(id_{n−k} ⊗ coeval) ; (eval ⊗ id_{n−k}) = id_{n−k}`, at scalar one.
pub fn verify_snake(spec: CocycleSpec, k: usize) -> bool {
    let n = spec.modulus().get();
    let (eval, coeval) = eval_coeval(spec, k);
    let idk = DiagramWord::identity(spec, k);
    let idnk = DiagramWord::identity(spec, n - k);

    let snake1 = {
        let top = tensor(&coeval, &idk).expect("tensor");
        let bottom = tensor(&idk, &eval).expect("tensor");
        compose(&top, &bottom).expect("snake composes")
    };
    let snake2 = {
        let top = tensor(&idnk, &coeval).expect("tensor");
        let bottom = tensor(&eval, &idnk).expect("tensor");
        compose(&top, &bottom).expect("snake composes")
    };

    let nf1 = normalize(&snake1);
    let nf2 = normalize(&snake2);
    nf1.shape == Shape::Identity
        && nf1.scalar.is_one()
        && nf1.dom == k
        && nf2.shape == Shape::Identity
        && nf2.scalar.is_one()
        && nf2.dom == n - k
}

/// The image of a word under the monoidal functor into the skeletal
/// `Vect_{Z_n}^ζ`: a scalar on a hom space that is at most one-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDatum {
    pub dom: usize,
    pub cod: usize,
    pub scalar: CycScalar,
}

/// A parenthesized tensor word in `δ_1`, used only for the coherence walk.
enum Tree {
    Leaf,
    Pair(Box<Tree>, Box<Tree>),
}

/// Right comb on `k` leaves: `s ⊗ (s ⊗ (… ⊗ s))`.
fn comb(k: usize) -> Option<Tree> {
    let mut t: Option<Tree> = None;
    for _ in 0..k {
        t = Some(match t {
            None => Tree::Leaf,
            Some(rest) => Tree::Pair(Box::new(Tree::Leaf), Box::new(rest)),
        });
    }
    t
}

/// Scalar of the coherence isomorphism `comb_a ⊗ C → comb_{a+b}`, where `C`
/// is already a right comb on `b` leaves: peel leaves off the left comb one
/// associator at a time.
fn merge_scalar(spec: CocycleSpec, a: usize, b: usize) -> RootPower {
    let mut acc = RootPower::one(spec.modulus());
    for t in 0..a {
        acc = acc.mul(omega(spec, 1, t as i64, b as i64));
    }
    acc
}

/// Scalar of the canonical isomorphism from `t` to the right comb on its
/// leaves, together with the leaf count. Well defined by coherence: the
/// pentagon holds because `ω_ζ` is a cocycle.
fn comb_scalar(spec: CocycleSpec, t: &Tree) -> (RootPower, usize) {
    match t {
        Tree::Leaf => (RootPower::one(spec.modulus()), 1),
        Tree::Pair(l, r) => {
            let (sl, a) = comb_scalar(spec, l);
            let (sr, b) = comb_scalar(spec, r);
            (sl.mul(sr).mul(merge_scalar(spec, a, b)), a + b)
        }
    }
}

/// Bracketing of one side of a slice: blocks combined right-associatively,
/// each block a right comb of its strands. Unit-object blocks contribute
/// nothing because the cocycle is normalized.
fn slice_tree(blocks: &[usize]) -> Option<Tree> {
    let mut t: Option<Tree> = None;
    for &k in blocks.iter().rev() {
        let block = match comb(k) {
            None => continue,
            Some(b) => b,
        };
        t = Some(match t {
            None => block,
            Some(rest) => Tree::Pair(Box::new(block), Box::new(rest)),
        });
    }
    t
}

fn side_scalar(spec: CocycleSpec, blocks: &[usize]) -> RootPower {
    match slice_tree(blocks) {
        None => RootPower::one(spec.modulus()),
        Some(t) => comb_scalar(spec, &t).0,
    }
}

/// The raw coherence evaluation of a word: the scalar of `F(w)` between
/// right-comb bracketings, ignoring the word's own scalar prefactor.
fn raw_factor(word: &DiagramWord) -> RootPower {
    let spec = word.spec();
    let n = word.n.get();
    let mut factor = RootPower::one(word.n);
    for slice in word.slices() {
        let dom_blocks: Vec<usize> = slice.atoms.iter().map(|a| a.inputs(n)).collect();
        let cod_blocks: Vec<usize> = slice.atoms.iter().map(|a| a.outputs(n)).collect();
        // F(slice) = c(T_cod) · (atom scalars = 1) · c(T_dom)^{-1}
        factor = factor
            .mul(side_scalar(spec, &cod_blocks))
            .mul(side_scalar(spec, &dom_blocks).inv());
    }
    factor
}

/// The canonical basis diagram of `Hom(dom, cod)` (caps or cups at the left
/// edge, identity strands to the right), with scalar one.
pub fn canonical_word(spec: CocycleSpec, dom: usize, cod: usize) -> DiagramWord {
    let n = spec.modulus().get();
    assert_eq!(dom % n, cod % n, "hom space is zero");
    use std::cmp::Ordering::*;
    let shape = match dom.cmp(&cod) {
        Equal => Shape::Identity,
        Greater => Shape::Caps((dom - cod) / n),
        Less => Shape::Cups((cod - dom) / n),
    };
    NormalForm {
        scalar: CycScalar::one(spec.modulus()),
        shape,
        dom,
        cod,
    }
    .to_word(spec)
}

/// Computes the scalar of `F(w)` in `Vect_{Z_n}^ζ` directly, with explicit
/// associator bookkeeping and no use of the diagram relations. The scalar
/// is expressed relative to the image of the canonical basis diagram of the
/// hom space, so it is directly comparable to [`normalize`].
///
/// The cap maps to the canonical `λ : δ_1^{⊗n} → 1` (scalar one on the
/// right comb) and the cup to its inverse `μ`. A slice is read as a tensor
/// product of blocks; its scalar is the coherence isomorphism from the
/// incoming right comb into the block bracketing, times one per generator,
/// times the coherence isomorphism back to the outgoing right comb.
pub fn evaluate_in_vect(word: &DiagramWord) -> HomDatum {
    let spec = word.spec();
    let n = word.n.get();
    if word.is_zero() || word.dom % n != word.cod % n {
        return HomDatum {
            dom: word.dom,
            cod: word.cod,
            scalar: CycScalar::zero(word.n),
        };
    }
    let raw = raw_factor(word);
    let basis = raw_factor(&canonical_word(spec, word.dom, word.cod));
    HomDatum {
        dom: word.dom,
        cod: word.cod,
        scalar: word
            .scalar()
            .expect("nonzero word has a scalar")
            .mul(&CycScalar::embed(raw.mul(basis.inv()))),
    }
}
