//! Fixtures shared by the benchmarks.

use superq::correspondence::CorrespondencePair;
use superq::presentation::Presentation;
use superq::rootdata::{Algebra, AmbientSpace, FundamentalSystem};
use superq::superalg::{Ctx, FreeElement, Letter, Side, WordPoly};
use superq::QScalar;

pub fn system(alg: Algebra, m: usize, n: usize, order: &str) -> FundamentalSystem {
    let sp = AmbientSpace::parse_order(m, n, alg.is_affine(), order).expect("valid order");
    FundamentalSystem::new(alg, &sp).expect("realizable system")
}

pub fn pair(alg: Algebra, m: usize, n: usize, order: &str) -> CorrespondencePair {
    CorrespondencePair::new(&system(alg, m, n, order)).expect("correspondence source")
}

/// A fixed mixed word of the given length: `e`s pushed past `f`s, `k`s and `σ`s.
pub fn mixed_word(ctx: &Ctx, len: usize) -> FreeElement {
    let r = ctx.rank() as u8;
    let w: Vec<Letter> = (0..len)
        .map(|i| {
            let node = (i as u8 * 7 + 3) % r;
            match i % 4 {
                0 => Letter::E(node),
                1 => Letter::K(node),
                2 => Letter::F(node),
                _ => Letter::S(node),
            }
        })
        .collect();
    FreeElement::word(w)
}

/// An element of the `e`-side ideal: two sandwiched copies of the first
/// higher-degree generator, with its generators.
pub fn ideal_instance(p: &Presentation) -> (WordPoly, Vec<WordPoly>) {
    let gens = p.ideal_generators(Side::E);
    let g = gens.iter().max_by_key(|g| g.terms().keys().map(Vec::len).max()).expect("generators").clone();
    let x = g.sandwich(&[0], &[1]).add(&g.sandwich(&[0, 1], &[]).scale(&QScalar::q()));
    (x, gens)
}
