//! Independent oracles and frozen regression fixtures.
//!
//! The bracket oracle here recomputes the Kauffman bracket by recursive
//! skein rewriting on surgered diagrams: smooth the first crossing both
//! ways, recurse, combine with `q` / `q^-1`. The production path is a flat
//! state sum with union-find loop counting; the two share only the diagram
//! surgery and polynomial types, so agreement pins both loop-counting routes
//! at once. Fixture polynomials were computed by this oracle and frozen.

use skeincalc::bracket::{ambient_normalized, homfly_poly, kauffman_bracket};
use skeincalc::diagram::{braid, LinkDiagram, Smoothing};
use skeincalc::laurent::{LaurentPoly, LaurentPoly2};

/// Recursive skein-rewriting bracket, independent of the state-sum path.
fn bracket_by_rewriting(d: &LinkDiagram) -> LaurentPoly {
    if d.crossing_count() == 0 {
        let delta = LaurentPoly::from_terms('q', &[(2, -1), (-2, -1)]);
        return delta.pow(d.component_count() as u32);
    }
    let a_side = bracket_by_rewriting(&d.smoothed_ab(0, Smoothing::A).unwrap());
    let b_side = bracket_by_rewriting(&d.smoothed_ab(0, Smoothing::B).unwrap());
    let one = num_rational::BigRational::from_integer(1.into());
    &a_side.mul_monomial(1, &one) + &b_side.mul_monomial(-1, &one)
}

fn q_poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms('q', pairs)
}

fn qz_poly(pairs: &[(i64, i64, i64)]) -> LaurentPoly2 {
    LaurentPoly2::from_terms(('q', 'z'), pairs)
}

#[test]
fn state_sum_matches_rewriting_oracle_on_corpus() {
    let mut corpus = vec![
        braid::unknot(),
        braid::hopf_link(),
        braid::trefoil(),
        braid::trefoil_left(),
        braid::figure_eight(),
    ];
    for seed in 0..25u64 {
        corpus.push(braid::random_closure(seed, 4, 7));
    }
    for d in corpus {
        assert_eq!(
            kauffman_bracket(&d).unwrap(),
            bracket_by_rewriting(&d),
            "diagram with {} crossings: {}",
            d.crossing_count(),
            d.to_json()
        );
    }
}

#[test]
fn frozen_bracket_fixtures() {
    // values computed by the rewriting oracle and checked against the
    // textbook normal forms (delta times the unknot-normalized bracket)
    assert_eq!(
        kauffman_bracket(&braid::hopf_link()).unwrap(),
        q_poly(&[(-6, 1), (-2, 1), (2, 1), (6, 1)])
    );
    assert_eq!(
        kauffman_bracket(&braid::trefoil()).unwrap(),
        q_poly(&[(-9, -1), (-1, 1), (3, 1), (7, 1)])
    );
    assert_eq!(
        kauffman_bracket(&braid::trefoil_left()).unwrap(),
        q_poly(&[(-7, 1), (-3, 1), (1, 1), (9, -1)])
    );
    assert_eq!(
        kauffman_bracket(&braid::figure_eight()).unwrap(),
        q_poly(&[(-10, -1), (10, -1)])
    );
}

#[test]
fn frozen_ambient_fixtures() {
    assert_eq!(
        ambient_normalized(&braid::trefoil()).unwrap(),
        q_poly(&[(-18, 1), (-10, -1), (-6, -1), (-2, -1)])
    );
    assert_eq!(
        ambient_normalized(&braid::trefoil_left()).unwrap(),
        q_poly(&[(2, -1), (6, -1), (10, -1), (18, 1)])
    );
    // the figure-eight is amphichiral: the raw bracket is already ambient
    assert_eq!(
        ambient_normalized(&braid::figure_eight()).unwrap(),
        q_poly(&[(-10, -1), (10, -1)])
    );
}

#[test]
fn frozen_homfly_fixtures() {
    assert_eq!(
        homfly_poly(&braid::hopf_link()).unwrap(),
        qz_poly(&[(-3, -1, -1), (-1, -1, 1), (-1, 1, 1)])
    );
    assert_eq!(
        homfly_poly(&braid::trefoil()).unwrap(),
        qz_poly(&[(-4, 0, -1), (-2, 0, 2), (-2, 2, 1)])
    );
    assert_eq!(
        homfly_poly(&braid::trefoil_left()).unwrap(),
        qz_poly(&[(2, 0, 2), (2, 2, 1), (4, 0, -1)])
    );
    assert_eq!(
        homfly_poly(&braid::figure_eight()).unwrap(),
        qz_poly(&[(-2, 0, 1), (0, 0, -1), (0, 2, -1), (2, 0, 1)])
    );
}

#[test]
fn pd_fixtures_agree_with_braid_fixtures() {
    let trefoil_pd = skeincalc::diagram::pd::parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").unwrap();
    assert_eq!(
        kauffman_bracket(&trefoil_pd).unwrap(),
        kauffman_bracket(&braid::trefoil_left()).unwrap()
    );
    let fig8_pd =
        skeincalc::diagram::pd::parse_pd("X[2,5,4,1], X[5,3,7,6], X[6,9,1,4], X[9,7,3,2]").unwrap();
    assert_eq!(
        homfly_poly(&fig8_pd).unwrap(),
        homfly_poly(&braid::figure_eight()).unwrap()
    );
}
