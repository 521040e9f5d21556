//! Exact computations in cyclic pointed fusion categories.
//!
//! Every pointed fusion category over `Z_n` is determined by an `n`-th
//! root of unity `ζ` through an explicit normalized 3-cocycle `ω_ζ`. This
//! crate works in the cyclotomic field `Q(θ)` with `θ` a primitive `n`-th
//! root of unity, so every scalar is exact:
//!
//! * [`cyclotomic`]: arithmetic in `Q(θ)` and in the group of root powers;
//! * [`cocycle`]: the cocycle `ω_ζ` and exhaustive identity checks;
//! * [`pointed`]: the skeletal category `Vect_{Z_n}^ζ`, associated
//!   constants of invertible objects, the pentagon axiom;
//! * [`diagram`]: the diagrammatic presentation by an `n`-legged cap and
//!   cup, rewriting to normal form, duals, and an independent evaluation
//!   oracle;
//! * [`dsl`]: a textual expression language for diagram words;
//! * [`classify`]: equivalences between the categories, class counting,
//!   and the automorphism 2-group;
//! * [`cli`]: the `cyclocat` command-line interface.
//!
//! ```
//! use cyclocat::cyclotomic::Modulus;
//! use cyclocat::cocycle::CocycleSpec;
//! use cyclocat::pointed::constant_of_generator;
//!
//! // the associated constant of the generating object is ζ itself
//! let spec = CocycleSpec::from_exponent(Modulus::new(5), 3);
//! assert_eq!(constant_of_generator(spec).value, spec.zeta());
//! ```

pub mod classify;
pub mod cli;
pub mod cocycle;
pub mod cyclotomic;
pub mod diagram;
pub mod dsl;
pub mod pointed;

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(scalars, "../../../book/src/scalars.md");
    chapter!(cocycles, "../../../book/src/cocycles.md");
    chapter!(constants, "../../../book/src/constants.md");
    chapter!(diagrams, "../../../book/src/diagrams.md");
    chapter!(expressions, "../../../book/src/expressions.md");
    chapter!(classification, "../../../book/src/classification.md");
}
