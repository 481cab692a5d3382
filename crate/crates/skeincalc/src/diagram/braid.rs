//! Braid words, their closures, and seeded random link generation.
//!
//! Closing a random braid word is the generation strategy for all the
//! randomized suites: every closure is a realizable planar diagram, so no
//! planarity checking is needed. Strands run upward; the positive generator
//! takes the strand at position `i` over the strand at `i + 1`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ArcId, Crossing, LinkDiagram, Sign};

/// A braid word on `strands` strands. Letter `+i` is the positive generator
/// crossing positions `i` and `i + 1` (1-based), `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Self {
        assert!(strands >= 1);
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            assert!(i >= 1 && i < strands, "generator {l} out of range");
        }
        BraidWord { strands, letters }
    }

    /// Close the braid into a link diagram.
    pub fn closure(&self) -> LinkDiagram {
        let mut cur: Vec<ArcId> = (1..=self.strands as ArcId).collect();
        let init = cur.clone();
        let mut next: ArcId = self.strands as ArcId + 1;
        let mut crossings = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            let i = letter.unsigned_abs() as usize - 1;
            let (x, y) = (cur[i], cur[i + 1]);
            let lo = next; // new arc at position i
            let hi = next + 1; // new arc at position i + 1
            next += 2;
            if letter > 0 {
                // strand from position i passes over to position i + 1
                crossings.push(Crossing::new(x, hi, y, lo, Sign::Positive));
            } else {
                // strand from position i + 1 passes over to position i
                crossings.push(Crossing::new(y, lo, x, hi, Sign::Negative));
            }
            cur[i] = lo;
            cur[i + 1] = hi;
        }
        // close the top of each strand onto its bottom arc
        let mut unknots = 0;
        for j in 0..self.strands {
            if cur[j] == init[j] {
                unknots += 1;
                continue;
            }
            for c in crossings.iter_mut() {
                for slot in [&mut c.over_in, &mut c.over_out, &mut c.under_in, &mut c.under_out] {
                    if *slot == cur[j] {
                        *slot = init[j];
                    }
                }
            }
        }
        let d = LinkDiagram::new(crossings, unknots).expect("braid closures are valid");
        d.canonical()
    }
}

/// Seed-reproducible random braid closure with at most `max_crossings`
/// crossings on 2..=`max_strands` strands.
pub fn random_closure(seed: u64, max_strands: usize, max_crossings: usize) -> LinkDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_closure_with(&mut rng, max_strands, max_crossings)
}

/// As [`random_closure`], drawing from a caller-owned generator.
pub fn random_closure_with<R: Rng>(
    rng: &mut R,
    max_strands: usize,
    max_crossings: usize,
) -> LinkDiagram {
    let strands = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(1..=max_crossings.max(1));
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).closure()
}

/// The zero-crossing unknot.
pub fn unknot() -> LinkDiagram {
    LinkDiagram::unknot_circles(1)
}

/// Positive Hopf link: closure of `sigma1^2`.
pub fn hopf_link() -> LinkDiagram {
    BraidWord::new(2, vec![1, 1]).closure()
}

/// Right-handed trefoil: closure of `sigma1^3` (writhe +3).
pub fn trefoil() -> LinkDiagram {
    BraidWord::new(2, vec![1, 1, 1]).closure()
}

/// Left-handed trefoil: closure of `sigma1^-3`.
pub fn trefoil_left() -> LinkDiagram {
    BraidWord::new(2, vec![-1, -1, -1]).closure()
}

/// Figure-eight knot: closure of `(sigma1 sigma2^-1)^2`.
pub fn figure_eight() -> LinkDiagram {
    BraidWord::new(3, vec![1, -2, 1, -2]).closure()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_from_braid() {
        let d = hopf_link();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe(), 2);
        assert_eq!(d.linking_number(0, 1), 1);
    }

    #[test]
    fn trefoils() {
        let r = trefoil();
        let l = trefoil_left();
        assert_eq!(r.component_count(), 1);
        assert_eq!(r.writhe(), 3);
        assert_eq!(l.writhe(), -3);
        assert!(r.mirror().isomorphic(&l));
    }

    #[test]
    fn figure_eight_shape() {
        let d = figure_eight();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn trivial_strands_become_circles() {
        // strand 3 unused: closes to a marked circle
        let d = BraidWord::new(3, vec![1, 1]).closure();
        assert_eq!(d.unknot_count(), 1);
        assert_eq!(d.component_count(), 3);
    }

    #[test]
    fn closures_validate_and_are_deterministic() {
        for seed in 0..50u64 {
            let a = random_closure(seed, 4, 8);
            let b = random_closure(seed, 4, 8);
            assert_eq!(a, b);
            assert!(a.validate().is_empty());
            assert!(a.crossing_count() <= 8);
        }
    }
}
