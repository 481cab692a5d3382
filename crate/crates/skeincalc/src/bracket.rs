//! Exact knot-polynomial layer.
//!
//! Four evaluators live here:
//!
//! - [`kauffman_bracket`]: the exact bracket polynomial as a state sum over
//!   planar `A`/`B` smoothings, with loop value `delta = -(q^2 + q^-2)` and
//!   the convention that a diagram of `k` disjoint circles evaluates to
//!   `delta^k`;
//! - [`su2_pipeline_bracket`]: the SU(2) crossing-operator route to the same
//!   number: matrix-exponential coefficients per crossing, expansion of
//!   every flat outcome into the two planar smoothings with the
//!   component-parity sign, and the per-crossing `sqrt(ab)` normalization.
//!   Agreement with the evaluated bracket is the crate's central acceptance
//!   test;
//! - [`ambient_normalized`]: the writhe twist `(-q^3)^{-w}` that upgrades
//!   regular-isotopy invariance to full Reidemeister invariance;
//! - [`homfly_poly`] / [`homfly_eval`]: the two-variable skein invariant
//!   `q P(L+) - q^-1 P(L-) = z P(L0)`, `P(unknot) = 1`, computed by the
//!   descending-diagram skein tree.

use num_complex::Complex64;

use crate::coupling::{su2_coeffs, su2_matrix, traceless_exp, Coupling};
use crate::diagram::{ArcId, LinkDiagram, Sign, Smoothing};
use crate::error::EvalError;
use crate::expectation::DEFAULT_MAX_CROSSINGS;
use crate::laurent::{rat, LaurentPoly, LaurentPoly2};

/// Recursion guard for the skein tree; generous for desk-scale diagrams.
pub const DEFAULT_SKEIN_DEPTH: usize = 4096;

/// The loop value `delta = -q^2 - q^-2` as an exact polynomial.
pub fn delta_poly() -> LaurentPoly {
    LaurentPoly::from_terms('q', &[(2, -1), (-2, -1)])
}

/// Exact Kauffman bracket: `sum over A/B states of q^(#A - #B) delta^loops`.
///
/// The unknotted circle evaluates to `delta` itself, so a `k`-circle diagram
/// gives `delta^k`.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, EvalError> {
    kauffman_bracket_capped(d, DEFAULT_MAX_CROSSINGS)
}

/// As [`kauffman_bracket`] with an explicit crossing cap.
pub fn kauffman_bracket_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly, EvalError> {
    let k = d.crossing_count();
    if k > cap {
        return Err(EvalError::CrossingCapExceeded { got: k, cap });
    }
    let delta = delta_poly();
    let max_loops = d.arc_count() + d.unknot_count() + 1;
    let mut delta_pows = Vec::with_capacity(max_loops + 1);
    let mut p = LaurentPoly::one('q');
    for _ in 0..=max_loops {
        delta_pows.push(p.clone());
        p = &p * &delta;
    }
    let mut out = LaurentPoly::zero('q');
    let mut choices = vec![Smoothing::A; k];
    for state in 0..(1u64 << k) {
        let mut a_minus_b: i64 = 0;
        for (i, c) in choices.iter_mut().enumerate() {
            if state >> i & 1 == 0 {
                *c = Smoothing::A;
                a_minus_b += 1;
            } else {
                *c = Smoothing::B;
                a_minus_b -= 1;
            }
        }
        let loops = d.resolve_smoothings(&choices)?;
        let term = delta_pows[loops].mul_monomial(a_minus_b, &rat(1));
        out = &out + &term;
    }
    Ok(out)
}

/// The SU(2) gauge pipeline replayed: per-crossing coefficients from the
/// exponential of the transfer matrix, flat outcomes expanded into the two
/// planar smoothings, the component-parity sign, the `sqrt(ab)` crossing
/// normalization, loops evaluated at `delta`.
///
/// Numerically equal to `kauffman_bracket(d)` evaluated at `q(beta)`.
pub fn su2_pipeline_bracket(d: &LinkDiagram, coupling: Coupling) -> Result<Complex64, EvalError> {
    su2_pipeline_bracket_capped(d, coupling, DEFAULT_MAX_CROSSINGS)
}

/// As [`su2_pipeline_bracket`] with an explicit crossing cap.
pub fn su2_pipeline_bracket_capped(
    d: &LinkDiagram,
    coupling: Coupling,
    cap: usize,
) -> Result<Complex64, EvalError> {
    let k = d.crossing_count();
    if k > cap {
        return Err(EvalError::CrossingCapExceeded { got: k, cap });
    }
    let m = su2_matrix();
    let one = Complex64::new(1.0, 0.0);
    // coefficient pair of each crossing from the matrix exponential; the
    // component-parity normalization turns (flat, smooth) into (-f, -s)
    let mut pairs: Vec<(Complex64, Complex64)> = Vec::with_capacity(k);
    for c in d.crossings() {
        let e = traceless_exp(&m, coupling.beta() * c.sign.as_f64())?;
        let (f, s) = e.apply((one, Complex64::new(0.0, 0.0)));
        pairs.push((-f, -s));
    }
    let coeffs = su2_coeffs(coupling);
    let max_loops = d.arc_count() + d.unknot_count() + 1;
    let mut delta_pows = Vec::with_capacity(max_loops + 1);
    let mut p = one;
    for _ in 0..=max_loops {
        delta_pows.push(p);
        p *= coeffs.delta;
    }
    let mut acc = crate::expectation::KahanSum::default();
    let mut smoothings = vec![Smoothing::A; k];
    // outer sum over {Flat, Smooth} operator states, inner over planar
    // expansions of the flats
    for sigma in 0..(1u64 << k) {
        let flats: Vec<usize> = (0..k).filter(|i| sigma >> i & 1 == 0).collect();
        let mut weight = one;
        for i in 0..k {
            if sigma >> i & 1 == 0 {
                weight *= pairs[i].0;
            } else {
                weight *= pairs[i].1;
                // a smoothed operator outcome is the oriented reconnection
                smoothings[i] = match d.crossings()[i].sign {
                    Sign::Positive => Smoothing::A,
                    Sign::Negative => Smoothing::B,
                };
            }
        }
        for tau in 0..(1u64 << flats.len()) {
            for (bit, &i) in flats.iter().enumerate() {
                smoothings[i] = if tau >> bit & 1 == 0 { Smoothing::A } else { Smoothing::B };
            }
            let loops = d.resolve_smoothings(&smoothings)?;
            acc.add(weight * delta_pows[loops]);
        }
    }
    let norm = coeffs.sqrt_ab.powi(-(k as i32));
    Ok(acc.value() * norm)
}

/// Writhe-corrected bracket `(-q^3)^{-w} <d>`: exactly invariant under all
/// three Reidemeister moves.
pub fn ambient_normalized(d: &LinkDiagram) -> Result<LaurentPoly, EvalError> {
    ambient_normalized_capped(d, DEFAULT_MAX_CROSSINGS)
}

/// As [`ambient_normalized`] with an explicit crossing cap.
pub fn ambient_normalized_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly, EvalError> {
    let bracket = kauffman_bracket_capped(d, cap)?;
    let w = d.writhe();
    // (-q^3)^{-w} = (-1)^w q^{-3w}
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(bracket.mul_monomial(-3 * w, &rat(sign)))
}

/// First crossing met on its under-strand when traversing components from
/// their basepoints, or `None` when the diagram is descending.
///
/// Components are traversed in index order, starting at each component's
/// smallest arc; a descending diagram is an unlink.
pub fn descending_pivot(d: &LinkDiagram) -> Option<usize> {
    use std::collections::{BTreeMap, BTreeSet};
    let mut successor: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    let mut head: BTreeMap<ArcId, (usize, bool)> = BTreeMap::new(); // arc -> (crossing, is_over)
    for (j, c) in d.crossings().iter().enumerate() {
        successor.insert(c.over_in, c.over_out);
        successor.insert(c.under_in, c.under_out);
        head.insert(c.over_in, (j, true));
        head.insert(c.under_in, (j, false));
    }
    let mut seen_arcs: BTreeSet<ArcId> = BTreeSet::new();
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    for start in d.arcs() {
        if seen_arcs.contains(&start) {
            continue;
        }
        let mut a = start;
        loop {
            seen_arcs.insert(a);
            let (j, over) = head[&a];
            if !visited.contains(&j) {
                if !over {
                    return Some(j);
                }
                visited.insert(j);
            }
            a = successor[&a];
            if a == start {
                break;
            }
        }
    }
    None
}

/// Exact HOMFLY polynomial by the descending-diagram skein tree.
///
/// Axioms: `P(unknot) = 1`, `q P(L+) - q^-1 P(L-) = z P(L0)`, and for the
/// `c`-component unlink `P = ((q - q^-1)/z)^(c-1)`. The first crossing met
/// on its under-strand is switched toward a descending diagram, branching
/// into the switched and smoothed children.
pub fn homfly_poly(d: &LinkDiagram) -> Result<LaurentPoly2, EvalError> {
    homfly_poly_capped(d, DEFAULT_SKEIN_DEPTH)
}

/// As [`homfly_poly`] with an explicit recursion cap.
pub fn homfly_poly_capped(d: &LinkDiagram, depth_cap: usize) -> Result<LaurentPoly2, EvalError> {
    let vars = ('q', 'z');
    let Some(pivot) = descending_pivot(d) else {
        // descending diagrams are unlinks
        let c = d.component_count() as i64;
        if c == 0 {
            return Ok(LaurentPoly2::one(vars));
        }
        // ((q - q^-1) / z)^(c - 1)
        let unit = LaurentPoly2::from_terms(vars, &[(1, -1, 1), (-1, -1, -1)]);
        return Ok(unit.pow((c - 1) as u32));
    };
    if depth_cap == 0 {
        return Err(EvalError::DepthCapExceeded(DEFAULT_SKEIN_DEPTH));
    }
    let switched = homfly_poly_capped(&d.switched(pivot)?, depth_cap - 1)?;
    let smoothed = homfly_poly_capped(&d.smoothed_oriented(pivot)?, depth_cap - 1)?;
    let sign = d.crossings()[pivot].sign;
    Ok(match sign {
        // P(L+) = q^-2 P(L-) + q^-1 z P(L0)
        Sign::Positive => {
            &switched.mul_monomial((-2, 0), &rat(1)) + &smoothed.mul_monomial((-1, 1), &rat(1))
        }
        // P(L-) = q^2 P(L+) - q z P(L0)
        Sign::Negative => {
            &switched.mul_monomial((2, 0), &rat(1)) - &smoothed.mul_monomial((1, 1), &rat(1))
        }
    })
}

/// Numeric HOMFLY value at a nonzero `(q, z)` point, e.g. the
/// coupling-derived parameters of [`crate::coupling::homfly_params`].
pub fn homfly_eval(d: &LinkDiagram, q: Complex64, z: Complex64) -> Result<Complex64, EvalError> {
    homfly_poly(d)?.eval(q, z)
}

/// Every branch node of the skein tree as `(diagram, pivot)` pairs, for
/// node-local relation checking.
pub fn homfly_branch_nodes(d: &LinkDiagram) -> Result<Vec<(LinkDiagram, usize)>, EvalError> {
    let mut nodes = Vec::new();
    collect_nodes(d, DEFAULT_SKEIN_DEPTH, &mut nodes)?;
    Ok(nodes)
}

fn collect_nodes(
    d: &LinkDiagram,
    depth_cap: usize,
    out: &mut Vec<(LinkDiagram, usize)>,
) -> Result<(), EvalError> {
    let Some(pivot) = descending_pivot(d) else {
        return Ok(());
    };
    if depth_cap == 0 {
        return Err(EvalError::DepthCapExceeded(DEFAULT_SKEIN_DEPTH));
    }
    out.push((d.clone(), pivot));
    collect_nodes(&d.switched(pivot)?, depth_cap - 1, out)?;
    collect_nodes(&d.smoothed_oriented(pivot)?, depth_cap - 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid;
    use crate::diagram::moves::{apply_reidemeister, find_r3_sites, ReidemeisterMove};
    use crate::diagram::Crossing;

    fn q_poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms('q', pairs)
    }

    #[test]
    fn caps_are_enforced() {
        let d = braid::BraidWord::new(2, vec![1; 5]).closure();
        assert!(matches!(
            super::kauffman_bracket_capped(&d, 4),
            Err(crate::error::EvalError::CrossingCapExceeded { got: 5, cap: 4 })
        ));
        let coupling = Coupling::from_beta_re(0.1);
        assert!(super::su2_pipeline_bracket_capped(&d, coupling, 4).is_err());
    }

    #[test]
    fn unknot_and_unlinks() {
        assert_eq!(
            kauffman_bracket(&braid::unknot()).unwrap(),
            q_poly(&[(2, -1), (-2, -1)])
        );
        assert_eq!(
            kauffman_bracket(&LinkDiagram::unknot_circles(2)).unwrap(),
            delta_poly().pow(2)
        );
        assert_eq!(kauffman_bracket(&LinkDiagram::empty()).unwrap(), LaurentPoly::one('q'));
    }

    #[test]
    fn hopf_bracket_hand_value() {
        // delta * (-q^4 - q^-4) expanded
        let expect = q_poly(&[(6, 1), (2, 1), (-2, 1), (-6, 1)]);
        assert_eq!(kauffman_bracket(&braid::hopf_link()).unwrap(), expect);
    }

    #[test]
    fn kink_multiplies_by_minus_q_cubed() {
        // positive kink on the unknot
        let plus = LinkDiagram::new(vec![Crossing::new(2, 1, 1, 2, Sign::Positive)], 0).unwrap();
        let expect = delta_poly().mul_monomial(3, &rat(-1));
        assert_eq!(kauffman_bracket(&plus).unwrap(), expect);
        let minus = LinkDiagram::new(vec![Crossing::new(2, 1, 1, 2, Sign::Negative)], 0).unwrap();
        let expect = delta_poly().mul_monomial(-3, &rat(-1));
        assert_eq!(kauffman_bracket(&minus).unwrap(), expect);
    }

    #[test]
    fn bracket_r2_r3_invariance_spot() {
        let d = braid::figure_eight();
        let before = kauffman_bracket(&d).unwrap();
        let arcs: Vec<_> = d.arcs().collect();
        let poked = apply_reidemeister(
            &d,
            ReidemeisterMove::R2Add { upper: arcs[1], lower: arcs[3] },
        )
        .unwrap();
        assert_eq!(kauffman_bracket(&poked).unwrap(), before);

        let t = braid::BraidWord::new(3, vec![1, 2, 1]).closure();
        let sites = find_r3_sites(&t);
        let (p, q, r) = sites[0];
        let slid = apply_reidemeister(
            &t,
            ReidemeisterMove::R3 { over_first: p, over_second: q, third: r },
        )
        .unwrap();
        assert_eq!(kauffman_bracket(&slid).unwrap(), kauffman_bracket(&t).unwrap());
    }

    #[test]
    fn mirror_trefoil_swaps_q() {
        let right = kauffman_bracket(&braid::trefoil()).unwrap();
        let left = kauffman_bracket(&braid::trefoil_left()).unwrap();
        let swapped: Vec<(i64, &_)> = right.terms().map(|(e, c)| (-e, c)).collect();
        for (e, c) in swapped {
            assert_eq!(&left.coeff(e), c);
        }
    }

    #[test]
    fn kbracket_sum_relation() {
        // <L+> + <L-> = (q + q^-1)(<A-smoothed> + <B-smoothed>) at any site
        for seed in 0..10u64 {
            let d = braid::random_closure(seed, 3, 6);
            if d.crossing_count() == 0 {
                continue;
            }
            let j = seed as usize % d.crossing_count();
            let (plus, minus) = if d.crossings()[j].sign == Sign::Positive {
                (d.clone(), d.switched(j).unwrap())
            } else {
                (d.switched(j).unwrap(), d.clone())
            };
            let lhs = &kauffman_bracket(&plus).unwrap() + &kauffman_bracket(&minus).unwrap();
            let a_pane = kauffman_bracket(&plus.smoothed_ab(j, Smoothing::A).unwrap()).unwrap();
            let b_pane = kauffman_bracket(&plus.smoothed_ab(j, Smoothing::B).unwrap()).unwrap();
            let qq = q_poly(&[(1, 1), (-1, 1)]);
            let rhs = &qq * &(&a_pane + &b_pane);
            assert_eq!(lhs, rhs, "seed {seed} site {j}");
        }
    }

    #[test]
    fn pipeline_matches_bracket_evaluation() {
        let betas = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.2, 0.1),
        ];
        let corpus = [
            braid::unknot(),
            braid::hopf_link(),
            braid::trefoil(),
            braid::figure_eight(),
            braid::random_closure(5, 4, 7),
        ];
        for beta in betas {
            let coupling = Coupling::from_beta(beta);
            let q = su2_coeffs(coupling).q;
            for d in &corpus {
                let via_pipeline = su2_pipeline_bracket(d, coupling).unwrap();
                let via_bracket = kauffman_bracket(d).unwrap().eval(q).unwrap();
                let scale = via_bracket.norm().max(1.0);
                assert!(
                    (via_pipeline - via_bracket).norm() <= 1e-9 * scale,
                    "beta={beta} crossings={} pipeline={via_pipeline} bracket={via_bracket}",
                    d.crossing_count()
                );
            }
        }
    }

    #[test]
    fn ambient_invariance_under_all_moves() {
        let d = braid::trefoil();
        let base = ambient_normalized(&d).unwrap();
        // R1 both signs
        for sign in [Sign::Positive, Sign::Negative] {
            let arc = d.arcs().nth(2).unwrap();
            let kinked =
                apply_reidemeister(&d, ReidemeisterMove::R1Add { arc: Some(arc), sign }).unwrap();
            assert_eq!(ambient_normalized(&kinked).unwrap(), base);
            // the raw bracket is only regular-isotopy invariant
            let factor_exp = 3 * sign.value();
            let expect =
                kauffman_bracket(&d).unwrap().mul_monomial(factor_exp, &rat(-1));
            assert_eq!(kauffman_bracket(&kinked).unwrap(), expect);
        }
        // unknot with any single kink normalizes back to delta
        for sign in [Sign::Positive, Sign::Negative] {
            let kink = apply_reidemeister(
                &braid::unknot(),
                ReidemeisterMove::R1Add { arc: None, sign },
            )
            .unwrap();
            assert_eq!(ambient_normalized(&kink).unwrap(), delta_poly());
        }
    }

    #[test]
    fn homfly_axioms() {
        let vars = ('q', 'z');
        assert_eq!(homfly_poly(&braid::unknot()).unwrap(), LaurentPoly2::one(vars));
        let two_unlink = LinkDiagram::unknot_circles(2);
        assert_eq!(
            homfly_poly(&two_unlink).unwrap(),
            LaurentPoly2::from_terms(vars, &[(1, -1, 1), (-1, -1, -1)])
        );
        // kinks normalize away: P is an ambient invariant
        let kink = LinkDiagram::new(vec![Crossing::new(2, 1, 1, 2, Sign::Positive)], 0).unwrap();
        assert_eq!(homfly_poly(&kink).unwrap(), LaurentPoly2::one(vars));
    }

    #[test]
    fn homfly_node_local_relation() {
        for d in [braid::trefoil(), braid::figure_eight(), braid::hopf_link()] {
            let nodes = homfly_branch_nodes(&d).unwrap();
            assert!(!nodes.is_empty());
            for (node, pivot) in nodes {
                let here = homfly_poly(&node).unwrap();
                let switched = homfly_poly(&node.switched(pivot).unwrap()).unwrap();
                let smoothed = homfly_poly(&node.smoothed_oriented(pivot).unwrap()).unwrap();
                let (plus, minus) = match node.crossings()[pivot].sign {
                    Sign::Positive => (here.clone(), switched.clone()),
                    Sign::Negative => (switched.clone(), here.clone()),
                };
                // q P(L+) - q^-1 P(L-) = z P(L0), exactly
                let lhs = &plus.mul_monomial((1, 0), &rat(1)) - &minus.mul_monomial((-1, 0), &rat(1));
                let rhs = smoothed.mul_monomial((0, 1), &rat(1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn homfly_is_move_invariant() {
        let d = braid::figure_eight();
        let p = homfly_poly(&d).unwrap();
        let arcs: Vec<_> = d.arcs().collect();
        let poked = apply_reidemeister(
            &d,
            ReidemeisterMove::R2Add { upper: arcs[0], lower: arcs[4] },
        )
        .unwrap();
        assert_eq!(homfly_poly(&poked).unwrap(), p);
        let kinked = apply_reidemeister(
            &d,
            ReidemeisterMove::R1Add { arc: Some(arcs[1]), sign: Sign::Negative },
        )
        .unwrap();
        assert_eq!(homfly_poly(&kinked).unwrap(), p);
    }

    #[test]
    fn homfly_distinguishes_trefoils() {
        let r = homfly_poly(&braid::trefoil()).unwrap();
        let l = homfly_poly(&braid::trefoil_left()).unwrap();
        assert_ne!(r, l);
        assert_ne!(r, LaurentPoly2::one(('q', 'z')));
    }

    #[test]
    fn homfly_eval_at_coupling_params() {
        let coupling = Coupling::from_beta_re(0.2);
        let (qn, zn) = crate::coupling::homfly_params(2, coupling).unwrap();
        let v = homfly_eval(&braid::trefoil(), qn, zn).unwrap();
        assert!(v.norm().is_finite());
        // beta = 0 gives z = 0: pole of the unlink value
        let (q0, z0) = crate::coupling::homfly_params(2, Coupling::from_beta_re(0.0)).unwrap();
        assert!(homfly_eval(&braid::hopf_link(), q0, z0).is_err());
    }
}
