//! Shared helpers for the integration suites: seeded generation of random
//! well-typed diagram words and normal-form-preserving rewrite moves.
//! Not every suite uses every helper.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;

use cyclocat::cocycle::CocycleSpec;
use cyclocat::cyclotomic::{CycScalar, Modulus, RootPower};
use cyclocat::diagram::{Atom, DiagramWord, Slice};

/// A random well-typed word over `spec` with at most `max_atoms` atoms.
/// Slices are built left to right against the running boundary, so the
/// result always composes; the scalar prefactor is a random nonzero
/// rational times a random power of `θ`.
pub fn random_word(rng: &mut impl Rng, spec: CocycleSpec, max_atoms: usize) -> DiagramWord {
    let n = spec.modulus().get();
    loop {
        let dom = rng.gen_range(0..=(2 * n).min(10));
        let rows = rng.gen_range(0..=5);
        let mut slices = Vec::new();
        let mut boundary = dom;
        for _ in 0..rows {
            let mut atoms = Vec::new();
            let mut remaining = boundary;
            while remaining > 0 {
                if remaining >= n && rng.gen_bool(0.3) {
                    atoms.push(Atom::Cap);
                    remaining -= n;
                } else if rng.gen_bool(0.15) {
                    atoms.push(Atom::Cup);
                } else {
                    atoms.push(Atom::Strand);
                    remaining -= 1;
                }
            }
            while rng.gen_bool(0.2) {
                atoms.push(Atom::Cup);
            }
            boundary = atoms.iter().map(|a| a.outputs(n)).sum();
            slices.push(Slice { atoms });
        }
        let word = DiagramWord::from_slices(spec, dom, slices).expect("built against boundary");
        if word.atom_count() > max_atoms {
            continue;
        }
        let numer = *[1i64, 2, 3, 5, -1, -2].get(rng.gen_range(0..6)).unwrap();
        let denom = *[1i64, 2, 3, 7].get(rng.gen_range(0..4)).unwrap();
        let q = BigRational::new(numer.into(), denom.into());
        let e = rng.gen_range(0..n as i64);
        let scalar = CycScalar::from_rational(spec.modulus(), q)
            .mul(&CycScalar::embed(RootPower::new(spec.modulus(), e)));
        return word.scale(&scalar);
    }
}

/// Applies one relation of `D_{ζ,n}` as an equality: the returned word is
/// different on the nose but has the same normal form. Returns the input
/// unchanged when the randomly chosen move does not apply.
pub fn random_relation_move(rng: &mut impl Rng, word: &DiagramWord) -> DiagramWord {
    let spec = word.spec();
    let n = spec.modulus().get();
    let mut slices: Vec<Slice> = word.slices().to_vec();
    let scalar = match word.scalar() {
        None => return word.clone(),
        Some(s) => s.clone(),
    };
    let boundary_at = |slices: &[Slice], row: usize| -> usize {
        let mut b = word.dom();
        for s in slices.iter().take(row) {
            b = s.cod(n);
        }
        b
    };

    match rng.gen_range(0..4) {
        // insert a cup/cap bubble pair at a random row boundary
        0 => {
            let row = rng.gen_range(0..=slices.len());
            let b = boundary_at(&slices, row);
            let mut cup = vec![Atom::Cup];
            cup.extend(vec![Atom::Strand; b]);
            let mut cap = vec![Atom::Cap];
            cap.extend(vec![Atom::Strand; b]);
            slices.insert(row, Slice { atoms: cap });
            slices.insert(row, Slice { atoms: cup });
        }
        // insert a cap/cup stack pair when the boundary is wide enough
        1 => {
            let row = rng.gen_range(0..=slices.len());
            let b = boundary_at(&slices, row);
            if b < n {
                return word.clone();
            }
            let mut cap = vec![Atom::Cap];
            cap.extend(vec![Atom::Strand; b - n]);
            let mut cup = vec![Atom::Cup];
            cup.extend(vec![Atom::Strand; b - n]);
            slices.insert(row, Slice { atoms: cup });
            slices.insert(row, Slice { atoms: cap });
        }
        // slide a cap left past the adjacent strand: equality costs ζ
        2 => {
            if let Some((r, i)) = find_adjacent(&slices, Atom::Cap, rng) {
                slices[r].atoms.swap(i - 1, i);
                let moved =
                    DiagramWord::from_slices(spec, word.dom(), slices).expect("swap keeps typing");
                return moved.scale(&scalar.mul_root(spec.zeta()));
            }
            return word.clone();
        }
        // slide a cup left past the adjacent strand: equality costs ζ^{-1}
        _ => {
            if let Some((r, i)) = find_adjacent(&slices, Atom::Cup, rng) {
                slices[r].atoms.swap(i - 1, i);
                let moved =
                    DiagramWord::from_slices(spec, word.dom(), slices).expect("swap keeps typing");
                return moved.scale(&scalar.mul_root(spec.zeta().inv()));
            }
            return word.clone();
        }
    }
    DiagramWord::from_slices(spec, word.dom(), slices)
        .expect("inserted pair keeps typing")
        .scale(&scalar)
}

/// A random occurrence of `kind` with a strand immediately to its left.
fn find_adjacent(slices: &[Slice], kind: Atom, rng: &mut impl Rng) -> Option<(usize, usize)> {
    let mut hits = Vec::new();
    for (r, slice) in slices.iter().enumerate() {
        for i in 1..slice.atoms.len() {
            if slice.atoms[i] == kind && slice.atoms[i - 1] == Atom::Strand {
                hits.push((r, i));
            }
        }
    }
    if hits.is_empty() {
        None
    } else {
        Some(hits[rng.gen_range(0..hits.len())])
    }
}

/// All contexts `(n, θ^a)` for `n` in the given range.
pub fn all_specs(n_range: std::ops::RangeInclusive<usize>) -> Vec<CocycleSpec> {
    let mut specs = Vec::new();
    for n in n_range {
        for a in 0..n {
            specs.push(CocycleSpec::from_exponent(Modulus::new(n), a as i64));
        }
    }
    specs
}
