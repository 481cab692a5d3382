//! The oriented gauge state-sum engine.
//!
//! Evaluates expectations of Wilson-loop products at trivial background by
//! summing over all per-crossing {Flat, Smooth} resolutions: each crossing
//! contributes its coupling-derived coefficient pair with that crossing's
//! sign, and every closed loop of a fully resolved state contributes the
//! trace of the identity in the defining representation (1 for U(1), 2 for
//! SU(2), `n` for GL(n) and U(n)). U(n) evaluates identically to GL(n);
//! the two groups share one code path.
//!
//! The loop value may be overridden, which implements the background-field
//! redefinition of the circle expectation used by the bracket dictionary.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::coupling::{gln_resolution_coeffs, su2_resolution_coeffs, Coupling};
use crate::diagram::{LinkDiagram, Resolution};
use crate::error::EvalError;

/// Hard default on the number of crossings the engine will enumerate
/// (2^24 states); override per call or through the CLI environment knob.
pub const DEFAULT_MAX_CROSSINGS: usize = 24;

/// Gauge group of the evaluation, in the defining representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    U1,
    Su2,
    Gln(u32),
    Un(u32),
}

impl Group {
    /// Trace of the identity in the defining representation.
    pub fn default_loop_value(self) -> Result<f64, EvalError> {
        match self {
            Group::U1 => Ok(1.0),
            Group::Su2 => Ok(2.0),
            Group::Gln(n) | Group::Un(n) => {
                if n == 0 {
                    Err(EvalError::ZeroRank)
                } else {
                    Ok(n as f64)
                }
            }
        }
    }
}

/// A gauge evaluation context: group, loop value, coupling.
#[derive(Clone, Copy, Debug)]
pub struct GaugeSpec {
    pub group: Group,
    pub loop_value: Complex64,
    pub coupling: Coupling,
}

impl GaugeSpec {
    /// Context with the group's default loop value.
    pub fn new(group: Group, coupling: Coupling) -> Result<Self, EvalError> {
        Ok(GaugeSpec {
            group,
            loop_value: Complex64::new(group.default_loop_value()?, 0.0),
            coupling,
        })
    }

    /// Context with an overridden loop value.
    pub fn with_loop_value(
        group: Group,
        coupling: Coupling,
        loop_value: Complex64,
    ) -> Result<Self, EvalError> {
        group.default_loop_value()?;
        Ok(GaugeSpec { group, loop_value, coupling })
    }

    /// The `(c_flat, c_smooth)` coefficient pair of a crossing of the given
    /// sign. U(1) is evaluated through the rank-1 matrices; U(n) through
    /// GL(n).
    pub fn coeff_pair(&self, sign: i64) -> Result<(Complex64, Complex64), EvalError> {
        match self.group {
            Group::U1 => gln_resolution_coeffs(1, self.coupling, sign),
            Group::Su2 => Ok(su2_resolution_coeffs(self.coupling, sign)),
            Group::Gln(n) | Group::Un(n) => gln_resolution_coeffs(n, self.coupling, sign),
        }
    }
}

/// Kahan-compensated complex accumulator; the state sum mixes 2^k terms of
/// both signs.
#[derive(Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    c: Complex64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, v: Complex64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum
    }
}

/// The abelian closed form: `e^{w/lambda} = e^{2 beta w}` with `w` the
/// writhe. Cross-checked against the rank-1 state sum by the test suites.
pub fn u1_expectation(d: &LinkDiagram, coupling: Coupling) -> Complex64 {
    (coupling.beta() * (2.0 * d.writhe() as f64)).exp()
}

/// Full state-sum expectation with the default crossing cap.
pub fn gauge_expectation(d: &LinkDiagram, spec: &GaugeSpec) -> Result<Complex64, EvalError> {
    gauge_expectation_capped(d, spec, DEFAULT_MAX_CROSSINGS)
}

/// Full state-sum expectation with an explicit crossing cap.
pub fn gauge_expectation_capped(
    d: &LinkDiagram,
    spec: &GaugeSpec,
    cap: usize,
) -> Result<Complex64, EvalError> {
    gauge_expectation_pinned_capped(d, spec, &BTreeMap::new(), cap)
}

/// State sum with some crossings pinned to a fixed resolution.
///
/// A pinned crossing contributes no coefficient (factor 1) and is resolved
/// as given in every state: pinning `Flat` evaluates the diagram with that
/// crossing replaced by the bare (virtual) double point, pinning `Smooth`
/// evaluates the honest smoothing term of a skein relation.
pub fn gauge_expectation_pinned(
    d: &LinkDiagram,
    spec: &GaugeSpec,
    pinned: &BTreeMap<usize, Resolution>,
) -> Result<Complex64, EvalError> {
    gauge_expectation_pinned_capped(d, spec, pinned, DEFAULT_MAX_CROSSINGS)
}

fn gauge_expectation_pinned_capped(
    d: &LinkDiagram,
    spec: &GaugeSpec,
    pinned: &BTreeMap<usize, Resolution>,
    cap: usize,
) -> Result<Complex64, EvalError> {
    let k = d.crossing_count();
    for &j in pinned.keys() {
        if j >= k {
            return Err(EvalError::MissingChoice(j));
        }
    }
    let free: Vec<usize> = (0..k).filter(|j| !pinned.contains_key(j)).collect();
    if free.len() > cap {
        return Err(EvalError::CrossingCapExceeded { got: free.len(), cap });
    }
    let pairs: Vec<(Complex64, Complex64)> = d
        .crossings()
        .iter()
        .map(|c| spec.coeff_pair(c.sign.value()))
        .collect::<Result<_, _>>()?;

    // powers of the loop value up to the largest possible loop count
    let max_loops = d.arc_count() + d.unknot_count() + 1;
    let mut powers = Vec::with_capacity(max_loops + 1);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..=max_loops {
        powers.push(p);
        p *= spec.loop_value;
    }

    let mut choices = vec![Resolution::Flat; k];
    for (&j, &r) in pinned {
        choices[j] = r;
    }
    let mut acc = KahanSum::default();
    let states = 1u64 << free.len();
    for state in 0..states {
        let mut weight = Complex64::new(1.0, 0.0);
        for (bit, &j) in free.iter().enumerate() {
            if state >> bit & 1 == 0 {
                choices[j] = Resolution::Flat;
                weight *= pairs[j].0;
            } else {
                choices[j] = Resolution::Smooth;
                weight *= pairs[j].1;
            }
        }
        let loops = d.resolve(&choices)?;
        acc.add(weight * powers[loops]);
    }
    Ok(acc.value())
}

/// Number of states the engine enumerates for a diagram.
pub fn state_count(d: &LinkDiagram) -> u64 {
    1u64 << d.crossing_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::framing_factor;
    use crate::diagram::braid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn corpus(n: usize) -> Vec<LinkDiagram> {
        let mut v = vec![
            braid::unknot(),
            braid::hopf_link(),
            braid::trefoil(),
            braid::trefoil_left(),
            braid::figure_eight(),
        ];
        let mut seed = 0;
        while v.len() < n {
            v.push(braid::random_closure(seed, 4, 8));
            seed += 1;
        }
        v
    }

    #[test]
    fn u1_closed_form_examples() {
        // positive Hopf link at lambda = 1: e^2
        let coupling = Coupling::from_lambda(c(1.0, 0.0)).unwrap();
        let v = u1_expectation(&braid::hopf_link(), coupling);
        assert!((v - c(2.0f64.exp(), 0.0)).norm() < 1e-12);
        // one negative kink at lambda = 2: e^{-1/2}
        let kink = crate::diagram::moves::apply_reidemeister(
            &braid::unknot(),
            crate::diagram::moves::ReidemeisterMove::R1Add {
                arc: None,
                sign: crate::diagram::Sign::Negative,
            },
        )
        .unwrap();
        let coupling2 = Coupling::from_lambda(c(2.0, 0.0)).unwrap();
        let v2 = u1_expectation(&kink, coupling2);
        assert!((v2 - c((-0.5f64).exp(), 0.0)).norm() < 1e-12);
        // lambda -> infinity: 1
        let flat = Coupling::from_beta_re(0.0);
        assert!((u1_expectation(&braid::trefoil(), flat) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn u1_matches_rank_one_engine() {
        let coupling = Coupling::from_beta(c(0.21, 0.05));
        let spec = GaugeSpec::new(Group::U1, coupling).unwrap();
        for d in corpus(20) {
            let closed = u1_expectation(&d, coupling);
            let engine = gauge_expectation(&d, &spec).unwrap();
            assert!(
                (closed - engine).norm() <= 1e-12 * closed.norm().max(1.0),
                "diagram writhe {}",
                d.writhe()
            );
        }
    }

    #[test]
    fn beta_zero_counts_components() {
        let spec = GaugeSpec::new(Group::Su2, Coupling::from_beta_re(0.0)).unwrap();
        for d in corpus(15) {
            let v = gauge_expectation(&d, &spec).unwrap();
            let expect = 2f64.powi(d.component_count() as i32);
            assert_eq!(v, c(expect, 0.0));
        }
    }

    #[test]
    fn hopf_su2_closed_form() {
        // loop counts (2, 1, 2) over the three state classes
        let coupling = Coupling::from_beta_re(0.17);
        let (f, s) = su2_resolution_coeffs(coupling, 1);
        let expect = f * f * 4.0 + f * s * 2.0 * 2.0 + s * s * 4.0;
        let spec = GaugeSpec::new(Group::Su2, coupling).unwrap();
        let got = gauge_expectation(&braid::hopf_link(), &spec).unwrap();
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn framing_relation_gln2_su2() {
        let coupling = Coupling::from_beta(c(0.13, 0.04));
        let su2 = GaugeSpec::new(Group::Su2, coupling).unwrap();
        let gln2 = GaugeSpec::new(Group::Gln(2), coupling).unwrap();
        for d in corpus(15) {
            let lhs = gauge_expectation(&d, &gln2).unwrap();
            let framing = framing_factor(2, coupling).powi(d.writhe() as i32);
            let rhs = framing * gauge_expectation(&d, &su2).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn un_equals_gln() {
        let coupling = Coupling::from_beta_re(0.3);
        for n in 1..=3 {
            let a = GaugeSpec::new(Group::Gln(n), coupling).unwrap();
            let b = GaugeSpec::new(Group::Un(n), coupling).unwrap();
            let d = braid::figure_eight();
            assert_eq!(
                gauge_expectation(&d, &a).unwrap(),
                gauge_expectation(&d, &b).unwrap()
            );
        }
    }

    #[test]
    fn mirror_symmetry() {
        let beta = c(0.19, 0.03);
        for d in corpus(12) {
            let spec_p = GaugeSpec::new(Group::Su2, Coupling::from_beta(beta)).unwrap();
            let spec_m = GaugeSpec::new(Group::Su2, Coupling::from_beta(-beta)).unwrap();
            let v1 = gauge_expectation(&d.mirror(), &spec_p).unwrap();
            let v2 = gauge_expectation(&d, &spec_m).unwrap();
            assert!((v1 - v2).norm() <= 1e-10 * v1.norm().max(1.0));
        }
    }

    #[test]
    fn disjoint_union_factorizes() {
        let coupling = Coupling::from_beta_re(0.23);
        let spec = GaugeSpec::new(Group::Gln(3), coupling).unwrap();
        let a = braid::trefoil();
        let b = braid::hopf_link();
        let u = a.disjoint_union(&b);
        let va = gauge_expectation(&a, &spec).unwrap();
        let vb = gauge_expectation(&b, &spec).unwrap();
        let vu = gauge_expectation(&u, &spec).unwrap();
        assert!((vu - va * vb).norm() <= 1e-12 * vu.norm().max(1.0));
    }

    #[test]
    fn skein_sum_relation_with_pinned_flat() {
        // e^{-beta n/2} <L+> + e^{beta n/2} <L-> = 2 cosh(beta sqrt(Delta_n)) <flat>
        let coupling = Coupling::from_beta_re(0.11);
        for n in 1..=4u32 {
            let spec = GaugeSpec::new(Group::Gln(n), coupling).unwrap();
            let nf = n as f64;
            let root = (nf * nf / 4.0 + 2.0).sqrt();
            for seed in 0..6u64 {
                let d = braid::random_closure(seed, 3, 6);
                if d.crossing_count() == 0 {
                    continue;
                }
                let j = 0usize;
                let (plus, minus) = if d.crossings()[j].sign == crate::diagram::Sign::Positive {
                    (d.clone(), d.switched(j).unwrap())
                } else {
                    (d.switched(j).unwrap(), d.clone())
                };
                let vp = gauge_expectation(&plus, &spec).unwrap();
                let vm = gauge_expectation(&minus, &spec).unwrap();
                let mut pin = BTreeMap::new();
                pin.insert(j, Resolution::Flat);
                let vf = gauge_expectation_pinned(&d, &spec, &pin).unwrap();
                let lhs = (-coupling.beta() * (nf / 2.0)).exp() * vp
                    + (coupling.beta() * (nf / 2.0)).exp() * vm;
                let rhs = (coupling.beta() * root).cosh() * 2.0 * vf;
                assert!(
                    (lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0),
                    "n={n} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = braid::BraidWord::new(2, vec![1; 6]).closure();
        let spec = GaugeSpec::new(Group::Su2, Coupling::from_beta_re(0.1)).unwrap();
        assert!(matches!(
            gauge_expectation_capped(&d, &spec, 5),
            Err(EvalError::CrossingCapExceeded { got: 6, cap: 5 })
        ));
        assert!(gauge_expectation_capped(&d, &spec, 6).is_ok());
    }
}
