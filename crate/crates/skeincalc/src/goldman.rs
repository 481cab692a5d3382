//! The Goldman bracket of curves on an oriented surface.
//!
//! Curves are abstract combinatorial data: cyclic words of oriented letters
//! plus a list of signed intersection points with their positions on each
//! curve. The bracket concatenates the two curves at every intersection,
//! weighted by the intersection sign; the SU(2) form subtracts the
//! concatenation with the reversed second curve and halves.
//!
//! Words are compared literally (canonical minimal rotation, no free
//! reduction), so equality is word-level rather than free-homotopy level.
//! The flat-torus specialization provides a self-contained oracle: straight
//! (p, q) geodesics in generic position, intersections enumerated exactly,
//! words built from their cutting sequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::EvalError;
use crate::laurent::rat;

/// One oriented letter of a cyclic word; `rev` marks traversal against the
/// letter's own orientation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub sym: String,
    pub rev: bool,
}

impl Letter {
    pub fn new(sym: impl Into<String>) -> Self {
        Letter { sym: sym.into(), rev: false }
    }

    pub fn reversed(&self) -> Letter {
        Letter { sym: self.sym.clone(), rev: !self.rev }
    }

    /// Text form: `x` forward, `~x` reversed.
    pub fn parse(token: &str) -> Letter {
        match token.strip_prefix('~') {
            Some(rest) => Letter { sym: rest.to_string(), rev: true },
            None => Letter { sym: token.to_string(), rev: false },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rev {
            write!(f, "~{}", self.sym)
        } else {
            write!(f, "{}", self.sym)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Letter::parse(&String::deserialize(d)?))
    }
}

/// A cyclic word stored in canonical (lexicographically minimal rotation)
/// form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Canonicalize a letter sequence by taking its minimal rotation.
    pub fn new(letters: Vec<Letter>) -> Self {
        if letters.is_empty() {
            return CyclicWord(letters);
        }
        let n = letters.len();
        let mut best = 0;
        for start in 1..n {
            for k in 0..n {
                match letters[(start + k) % n].cmp(&letters[(best + k) % n]) {
                    Ordering::Less => {
                        best = start;
                        break;
                    }
                    Ordering::Greater => break,
                    Ordering::Equal => {}
                }
            }
        }
        let mut rotated = Vec::with_capacity(n);
        rotated.extend_from_slice(&letters[best..]);
        rotated.extend_from_slice(&letters[..best]);
        CyclicWord(rotated)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A rational-weighted formal sum of terms; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Self {
        FormalSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl<K: Ord + Serialize> Serialize for FormalSum<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, K> {
            word: &'a K,
            coeff: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&Term { word: k, coeff: c.to_string() })?;
        }
        seq.end()
    }
}

/// A signed intersection point between the two curves of a [`CurveSystem`].
///
/// Positions are cut points: position `p` sits just before letter index `p`
/// of the cyclic word. The sign is `sgn(omega(v, v'))` of the tangents at
/// the point, supplied as combinatorial data.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Intersection {
    pub id: u32,
    pub pos_c: usize,
    pub pos_c_prime: usize,
    pub sign: i8,
}

/// Two cyclic curves on a surface with their signed intersections.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveSystem {
    pub c: Vec<Letter>,
    pub c_prime: Vec<Letter>,
    pub intersections: Vec<Intersection>,
}

impl CurveSystem {
    pub fn validate(&self) -> Result<(), EvalError> {
        let bad = |m: String| Err(EvalError::BadCurveSystem(m));
        if self.c.is_empty() || self.c_prime.is_empty() {
            return bad("curves must be nonempty words".into());
        }
        let mut ids = std::collections::BTreeSet::new();
        let mut pos_c = std::collections::BTreeSet::new();
        let mut pos_cp = std::collections::BTreeSet::new();
        for i in &self.intersections {
            if i.sign != 1 && i.sign != -1 {
                return bad(format!("intersection {} has sign {}", i.id, i.sign));
            }
            if i.pos_c >= self.c.len() || i.pos_c_prime >= self.c_prime.len() {
                return bad(format!("intersection {} position out of range", i.id));
            }
            if !ids.insert(i.id) {
                return bad(format!("duplicate intersection id {}", i.id));
            }
            if !pos_c.insert(i.pos_c) || !pos_cp.insert(i.pos_c_prime) {
                return bad(format!("duplicate position at intersection {}", i.id));
            }
        }
        Ok(())
    }

    /// The transposed system: curves swapped, positions transposed, signs
    /// flipped by the antisymmetry of the intersection form.
    pub fn swapped(&self) -> CurveSystem {
        CurveSystem {
            c: self.c_prime.clone(),
            c_prime: self.c.clone(),
            intersections: self
                .intersections
                .iter()
                .map(|i| Intersection {
                    id: i.id,
                    pos_c: i.pos_c_prime,
                    pos_c_prime: i.pos_c,
                    sign: -i.sign,
                })
                .collect(),
        }
    }
}

fn rotate_to(word: &[Letter], pos: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[pos..]);
    out.extend_from_slice(&word[..pos]);
    out
}

fn reversed_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(Letter::reversed).collect()
}

/// GL(n)-form Goldman bracket: `sum_i eps_i (C *_i C')`.
pub fn goldman_gl(cs: &CurveSystem) -> Result<FormalSum<CyclicWord>, EvalError> {
    cs.validate()?;
    let mut sum = FormalSum::zero();
    for i in &cs.intersections {
        let mut word = rotate_to(&cs.c, i.pos_c);
        word.extend(rotate_to(&cs.c_prime, i.pos_c_prime));
        sum.add_term(CyclicWord::new(word), rat(i.sign as i64));
    }
    Ok(sum)
}

/// SU(2)-form Goldman bracket:
/// `1/2 sum_i eps_i ((C *_i C') - (C *_i reversed C'))`.
pub fn goldman_su2(cs: &CurveSystem) -> Result<FormalSum<CyclicWord>, EvalError> {
    cs.validate()?;
    let half = rat(1) / rat(2);
    let mut sum = FormalSum::zero();
    let rev = reversed_word(&cs.c_prime);
    let n = cs.c_prime.len();
    for i in &cs.intersections {
        let sign = rat(i.sign as i64);
        let mut plus = rotate_to(&cs.c, i.pos_c);
        plus.extend(rotate_to(&cs.c_prime, i.pos_c_prime));
        sum.add_term(CyclicWord::new(plus), &sign * &half);
        // the cut point lands at position n - p in the reversed word
        let rev_pos = (n - i.pos_c_prime) % n;
        let mut minus = rotate_to(&cs.c, i.pos_c);
        minus.extend(rotate_to(&rev, rev_pos));
        sum.add_term(CyclicWord::new(minus), -&sign * &half);
    }
    Ok(sum)
}

/// A free homotopy class of loops on the flat torus, `(p, q)` in homology.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct TorusCurve {
    pub p: i64,
    pub q: i64,
}

impl TorusCurve {
    pub fn new(p: i64, q: i64) -> Result<Self, EvalError> {
        if p == 0 && q == 0 {
            return Err(EvalError::NullCurve);
        }
        Ok(TorusCurve { p, q })
    }

    fn gcd(mut a: i64, mut b: i64) -> i64 {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    /// Covering multiplicity; `1` for a primitive (embedded geodesic) class.
    pub fn multiplicity(&self) -> i64 {
        Self::gcd(self.p, self.q)
    }

    pub fn is_primitive(&self) -> bool {
        self.multiplicity() == 1
    }
}

/// One cutting-sequence event of a straight line on the unit torus.
struct Event {
    t: Rational64,
    letter: Letter,
}

/// Cutting sequence of the line `offset + t (p, q)`, `t` in `[0, 1)`:
/// letter `a` for each crossing of a vertical integer line, `b` for each
/// horizontal one, reversed when the crossing is negative.
fn cutting_sequence(p: i64, q: i64, off: (Rational64, Rational64)) -> Vec<Event> {
    let mut events = Vec::new();
    let push_line = |events: &mut Vec<Event>, vel: i64, start: Rational64, sym: &str| {
        if vel == 0 {
            return;
        }
        for m in -(vel.abs() + 2)..=(vel.abs() + 2) {
            let t = (Rational64::from_integer(m) - start) / Rational64::from_integer(vel);
            if t >= Rational64::zero() && t < Rational64::from_integer(1) {
                events.push(Event {
                    t,
                    letter: Letter { sym: sym.to_string(), rev: vel < 0 },
                });
            }
        }
    };
    push_line(&mut events, p, off.0, "a");
    push_line(&mut events, q, off.1, "b");
    events.sort_by_key(|e| e.t);
    events
}

fn word_from(events: &[Event], from_t: Rational64) -> Vec<Letter> {
    let split = events.iter().position(|e| e.t > from_t).unwrap_or(events.len());
    events[split..]
        .iter()
        .chain(events[..split].iter())
        .map(|e| e.letter.clone())
        .collect()
}

/// Homology class of a torus word by signed letter count.
fn word_class(word: &[Letter]) -> (i64, i64) {
    let mut a = 0;
    let mut b = 0;
    for l in word {
        let s = if l.rev { -1 } else { 1 };
        match l.sym.as_str() {
            "a" => a += s,
            "b" => b += s,
            _ => {}
        }
    }
    (a, b)
}

/// Four rational offsets `(x1, y1, x2, y2)` as numerator/denominator pairs.
type OffsetQuad = ((i64, i64), (i64, i64), (i64, i64), (i64, i64));

const OFFSETS: [OffsetQuad; 3] = [
    ((1, 7), (1, 11), (1, 13), (1, 17)),
    ((2, 7), (3, 11), (1, 19), (2, 23)),
    ((1, 31), (1, 37), (5, 41), (3, 43)),
];

/// Goldman bracket of two primitive torus classes, computed by realizing
/// them as straight geodesics in generic position, enumerating the actual
/// intersections, concatenating cutting-sequence words at each one, and
/// reading off the class of every concatenation.
///
/// The expected output, asserted by the oracle suites, is
/// `(p s - q r) * (p + r, q + s)`.
pub fn torus_bracket(
    c1: TorusCurve,
    c2: TorusCurve,
) -> Result<FormalSum<TorusCurve>, EvalError> {
    for c in [c1, c2] {
        if !c.is_primitive() {
            return Err(EvalError::NonPrimitiveCurve(c.p, c.q));
        }
    }
    let (p, q, r, s) = (c1.p, c1.q, c2.p, c2.q);
    let det = p * s - q * r;
    'offsets: for (o1, o2, o3, o4) in OFFSETS {
        let a1 = (Rational64::new(o1.0, o1.1), Rational64::new(o2.0, o2.1));
        let a2 = (Rational64::new(o3.0, o3.1), Rational64::new(o4.0, o4.1));
        let ev1 = cutting_sequence(p, q, a1);
        let ev2 = cutting_sequence(r, s, a2);
        // exact intersection enumeration on the universal cover
        let mut points: Vec<(Rational64, Rational64)> = Vec::new();
        if det != 0 {
            let dx = a2.0 - a1.0;
            let dy = a2.1 - a1.1;
            // t p - u r and t q - u s stay within the velocity bounds
            let bound_m = p.abs() + r.abs() + 2;
            let bound_n = q.abs() + s.abs() + 2;
            let dd = Rational64::from_integer(det);
            for m in -bound_m..=bound_m {
                for n in -bound_n..=bound_n {
                    let aa = dx + Rational64::from_integer(m);
                    let bb = dy + Rational64::from_integer(n);
                    let t = (aa * Rational64::from_integer(s) - bb * Rational64::from_integer(r)) / dd;
                    let u = (aa * Rational64::from_integer(q) - bb * Rational64::from_integer(p)) / dd;
                    let unit = |x: Rational64| x >= Rational64::zero() && x < Rational64::from_integer(1);
                    if unit(t) && unit(u) {
                        points.push((t, u));
                    }
                }
            }
            if points.len() != det.unsigned_abs() as usize {
                continue 'offsets;
            }
            // genericity: intersection parameters must avoid the cutting
            // events so rotations are unambiguous
            for (t, u) in &points {
                if ev1.iter().any(|e| e.t == *t) || ev2.iter().any(|e| e.t == *u) {
                    continue 'offsets;
                }
            }
        }
        let mut sum = FormalSum::zero();
        let eps = rat(det.signum());
        for (t, u) in points {
            let mut word = word_from(&ev1, t);
            word.extend(word_from(&ev2, u));
            let (ca, cb) = word_class(&word);
            debug_assert_eq!((ca, cb), (p + r, q + s));
            let class = TorusCurve::new(ca, cb).expect("concatenation class is nonzero");
            sum.add_term(class, eps.clone());
        }
        return Ok(sum);
    }
    Err(EvalError::BadCurveSystem(
        "no generic offset found for torus geodesics".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(toks: &[&str]) -> Vec<Letter> {
        toks.iter().map(|t| Letter::parse(t)).collect()
    }

    fn ix(id: u32, pos_c: usize, pos_cp: usize, sign: i8) -> Intersection {
        Intersection { id, pos_c, pos_c_prime: pos_cp, sign }
    }

    #[test]
    fn empty_intersections_commute() {
        let cs = CurveSystem {
            c: letters(&["x", "y"]),
            c_prime: letters(&["z"]),
            intersections: vec![],
        };
        assert!(goldman_gl(&cs).unwrap().is_zero());
        assert!(goldman_su2(&cs).unwrap().is_zero());
    }

    #[test]
    fn single_positive_intersection() {
        let cs = CurveSystem {
            c: letters(&["a"]),
            c_prime: letters(&["b"]),
            intersections: vec![ix(1, 0, 0, 1)],
        };
        let sum = goldman_gl(&cs).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.coeff(&CyclicWord::new(letters(&["a", "b"]))), rat(1));
    }

    #[test]
    fn opposite_signs_cancel() {
        // two intersections whose concatenations coincide as cyclic words
        let cs = CurveSystem {
            c: letters(&["x", "x"]),
            c_prime: letters(&["y", "y"]),
            intersections: vec![ix(1, 0, 0, 1), ix(2, 1, 1, -1)],
        };
        assert!(goldman_gl(&cs).unwrap().is_zero());
    }

    #[test]
    fn su2_single_intersection() {
        let cs = CurveSystem {
            c: letters(&["a"]),
            c_prime: letters(&["b"]),
            intersections: vec![ix(1, 0, 0, 1)],
        };
        let sum = goldman_su2(&cs).unwrap();
        let half = rat(1) / rat(2);
        assert_eq!(sum.coeff(&CyclicWord::new(letters(&["a", "b"]))), half);
        assert_eq!(sum.coeff(&CyclicWord::new(letters(&["a", "~b"]))), -(rat(1) / rat(2)));
    }

    #[test]
    fn su2_coefficients_are_half_integers() {
        let cs = CurveSystem {
            c: letters(&["a", "b", "a"]),
            c_prime: letters(&["b", "a"]),
            intersections: vec![ix(1, 0, 1, 1), ix(2, 2, 0, -1)],
        };
        let sum = goldman_su2(&cs).unwrap();
        assert!(!sum.is_zero());
        for (_, c) in sum.terms() {
            let doubled = c * rat(2);
            assert!(doubled.is_integer(), "coefficient {c} not in half-integers");
        }
    }

    #[test]
    fn reversal_rotation_reads_backwards() {
        // C' = (x y z) cut between x and y: reversed loop reads (~x ~z ~y)
        let cs = CurveSystem {
            c: letters(&["c"]),
            c_prime: letters(&["x", "y", "z"]),
            intersections: vec![ix(1, 0, 1, 1)],
        };
        let sum = goldman_su2(&cs).unwrap();
        let minus_term = CyclicWord::new(letters(&["c", "~x", "~z", "~y"]));
        assert_eq!(sum.coeff(&minus_term), -(rat(1) / rat(2)));
    }

    #[test]
    fn antisymmetry_on_random_systems() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let alphabet = ["x", "y", "z", "w"];
        for _ in 0..100 {
            let len_c = rng.gen_range(1..6);
            let len_cp = rng.gen_range(1..6);
            let c: Vec<Letter> = (0..len_c)
                .map(|_| {
                    let mut l = Letter::new(alphabet[rng.gen_range(0..alphabet.len())]);
                    l.rev = rng.gen_bool(0.3);
                    l
                })
                .collect();
            let c_prime: Vec<Letter> = (0..len_cp)
                .map(|_| {
                    let mut l = Letter::new(alphabet[rng.gen_range(0..alphabet.len())]);
                    l.rev = rng.gen_bool(0.3);
                    l
                })
                .collect();
            let k = rng.gen_range(0..=len_c.min(len_cp));
            let mut pc: Vec<usize> = (0..len_c).collect();
            let mut pcp: Vec<usize> = (0..len_cp).collect();
            for i in (1..pc.len()).rev() {
                pc.swap(i, rng.gen_range(0..=i));
            }
            for i in (1..pcp.len()).rev() {
                pcp.swap(i, rng.gen_range(0..=i));
            }
            let intersections: Vec<Intersection> = (0..k)
                .map(|i| Intersection {
                    id: i as u32,
                    pos_c: pc[i],
                    pos_c_prime: pcp[i],
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                })
                .collect();
            let cs = CurveSystem { c, c_prime, intersections };
            let fwd = goldman_gl(&cs).unwrap();
            let bwd = goldman_gl(&cs.swapped()).unwrap();
            assert_eq!(fwd, bwd.neg());
        }
    }

    #[test]
    fn validation_rejects_bad_data() {
        let cs = CurveSystem {
            c: letters(&["x"]),
            c_prime: letters(&["y"]),
            intersections: vec![ix(1, 0, 0, 2)],
        };
        assert!(cs.validate().is_err());
        let cs2 = CurveSystem {
            c: letters(&["x"]),
            c_prime: letters(&["y"]),
            intersections: vec![ix(1, 1, 0, 1)],
        };
        assert!(cs2.validate().is_err());
    }

    #[test]
    fn torus_basis_brackets() {
        let a = TorusCurve::new(1, 0).unwrap();
        let b = TorusCurve::new(0, 1).unwrap();
        let ab = torus_bracket(a, b).unwrap();
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.coeff(&TorusCurve::new(1, 1).unwrap()), rat(1));
        // antisymmetry of the previous
        let ba = torus_bracket(b, a).unwrap();
        assert_eq!(ba.coeff(&TorusCurve::new(1, 1).unwrap()), rat(-1));
    }

    #[test]
    fn torus_example_2_1() {
        let c1 = TorusCurve::new(1, 0).unwrap();
        let c2 = TorusCurve::new(2, 1).unwrap();
        let sum = torus_bracket(c1, c2).unwrap();
        assert_eq!(sum.coeff(&TorusCurve::new(3, 1).unwrap()), rat(1));
        assert_eq!(sum.len(), 1);
    }

    #[test]
    fn torus_parallel_curves_commute() {
        let c = TorusCurve::new(2, 1).unwrap();
        let d = TorusCurve::new(-2, -1).unwrap();
        assert!(torus_bracket(c, c).unwrap().is_zero());
        assert!(torus_bracket(c, d).unwrap().is_zero());
    }

    #[test]
    fn torus_formula_small_grid() {
        for p in -3..=3i64 {
            for q in -3..=3i64 {
                for r in -3..=3i64 {
                    for s in -3..=3i64 {
                        let (Ok(c1), Ok(c2)) = (TorusCurve::new(p, q), TorusCurve::new(r, s))
                        else {
                            continue;
                        };
                        if !c1.is_primitive() || !c2.is_primitive() {
                            continue;
                        }
                        let sum = torus_bracket(c1, c2).unwrap();
                        let det = p * s - q * r;
                        if det == 0 {
                            assert!(sum.is_zero(), "({p},{q}),({r},{s})");
                        } else {
                            let class = TorusCurve::new(p + r, q + s).unwrap();
                            assert_eq!(sum.coeff(&class), rat(det), "({p},{q}),({r},{s})");
                            assert_eq!(sum.len(), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_primitive() {
        let c = TorusCurve { p: 2, q: 4 };
        assert!(torus_bracket(c, TorusCurve::new(1, 0).unwrap()).is_err());
        assert!(TorusCurve::new(0, 0).is_err());
        assert_eq!(c.multiplicity(), 2);
    }
}
