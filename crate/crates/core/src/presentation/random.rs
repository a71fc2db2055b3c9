use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_presentation, Presentation, Syllable, Word};

const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// A random presentation with `1..=max_gens` generators, `1..=max_rels`
/// relators, and reduced relators of at most `max_len` letters.
pub fn random_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    max_gens: usize,
    max_rels: usize,
    max_len: usize,
) -> Presentation {
    let n = rng.gen_range(1..=max_gens.clamp(1, NAMES.len()));
    let m = rng.gen_range(1..=max_rels.max(1));
    let relators = (0..m)
        .map(|_| {
            let target = rng.gen_range(1..=max_len.max(1));
            let mut letters: Vec<Syllable> = Vec::new();
            while letters.len() < target {
                let s = Syllable {
                    gen: rng.gen_range(0..n),
                    exp: if rng.gen_bool(0.5) { 1 } else { -1 },
                };
                if letters.last().is_some_and(|l| l.gen == s.gen && l.exp == -s.exp) {
                    continue;
                }
                letters.push(s);
            }
            Word::new(letters)
        })
        .collect();
    Presentation::new(NAMES[..n].iter().map(|s| s.to_string()).collect(), relators)
        .expect("names are valid")
}

/// `count` presentations drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_corpus(seed: u64, count: usize, max_gens: usize, max_rels: usize, max_len: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_presentation(&mut rng, max_gens, max_rels, max_len))
        .collect()
}

/// Hand-picked presentations covering the standard examples.
pub const NAMED_CORPUS: &[&str] = &[
    "< | >",
    "<x | x>",
    "<x | x^2>",
    "<x | x^3>",
    "<x | x^-2>",
    "<x | x x^-1>",
    "<x,y | xyx^-1y>",
    "<x,y | xyx^-1y^-1>",
    "<x,y | x^2y^-2x^-1y>",
    "<x,y | xyxy^-1x^-1y^-1>",
    "<x,y | x^2y^2, xyx^-1y^-1>",
    "<x,y | x^2, y^3>",
    "<x,y | x, y>",
    "<x,y,z | xyz, x^2 y^-1>",
];

pub fn named_corpus() -> Vec<Presentation> {
    NAMED_CORPUS
        .iter()
        .map(|s| parse_presentation(s).expect("corpus parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_respected() {
        for p in random_corpus(7, 50, 3, 2, 6) {
            assert!((1..=3).contains(&p.generator_count()));
            assert!((1..=2).contains(&p.relator_count()));
            assert!(p.relators().iter().all(|r| r.letter_len() <= 6));
        }
        assert_eq!(random_corpus(3, 5, 3, 2, 6), random_corpus(3, 5, 3, 2, 6));
        assert_eq!(named_corpus().len(), NAMED_CORPUS.len());
    }
}
