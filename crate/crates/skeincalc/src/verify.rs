//! Seed-reproducible verification suites over random braid closures.
//!
//! Each suite bundles the cross-checks that pin this crate's conventions
//! against one another; the CLI `verify` subcommand renders the reports as
//! JSON. Failures carry the offending diagram serialization.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::bracket::{ambient_normalized, kauffman_bracket};
use crate::coupling::{framing_factor, homfly_params, Coupling};
use crate::diagram::moves::{apply_reidemeister, find_r3_sites, ReidemeisterMove};
use crate::diagram::{braid, LinkDiagram, Resolution, Sign};
use crate::expectation::{gauge_expectation, gauge_expectation_pinned, u1_expectation, GaugeSpec, Group};
use crate::goldman::{torus_bracket, TorusCurve};
use crate::laurent::rat;

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A full suite run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub failures: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    fn assemble(suite: &str, seed: u64, count: usize, checks: Vec<CheckResult>) -> Report {
        let failures = checks.iter().filter(|c| !c.pass).count();
        Report {
            suite: suite.to_string(),
            seed,
            count,
            failures,
            passed: failures == 0,
            checks,
        }
    }
}

/// The suites the CLI exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Reidemeister,
    Skein,
    CrossGroup,
    Goldman,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "reidemeister" => Some(Suite::Reidemeister),
            "skein" => Some(Suite::Skein),
            "cross-group" => Some(Suite::CrossGroup),
            "goldman" => Some(Suite::Goldman),
            _ => None,
        }
    }
}

/// Run a suite with `count` seeded cases.
pub fn run_suite(suite: Suite, seed: u64, count: usize) -> Report {
    match suite {
        Suite::Reidemeister => reidemeister_suite(seed, count),
        Suite::Skein => skein_suite(seed, count),
        Suite::CrossGroup => cross_group_suite(seed, count),
        Suite::Goldman => goldman_suite(seed, count),
    }
}

fn check(name: String, pass: bool, context: &LinkDiagram) -> CheckResult {
    CheckResult {
        name,
        pass,
        detail: if pass { String::new() } else { context.to_json() },
    }
}

/// Bracket and query invariance under seeded Reidemeister rewrites.
pub fn reidemeister_suite(seed: u64, count: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for case in 0..count {
        let d = braid::random_closure_with(&mut rng, 4, 8);
        let bracket = kauffman_bracket(&d).unwrap();
        let ambient = ambient_normalized(&d).unwrap();
        let arcs: Vec<_> = d.arcs().collect();

        // R2 insertion at random arcs
        if arcs.len() >= 2 {
            let x = arcs[rng.gen_range(0..arcs.len())];
            let mut y = arcs[rng.gen_range(0..arcs.len())];
            if y == x {
                y = arcs[(arcs.iter().position(|&a| a == x).unwrap() + 1) % arcs.len()];
            }
            let poked = apply_reidemeister(&d, ReidemeisterMove::R2Add { upper: x, lower: y })
                .expect("distinct arcs admit a poke");
            checks.push(check(
                format!("case {case}: bracket invariant under R2"),
                kauffman_bracket(&poked).unwrap() == bracket,
                &poked,
            ));
            checks.push(check(
                format!("case {case}: components invariant under R2"),
                poked.component_count() == d.component_count(),
                &poked,
            ));
            checks.push(check(
                format!("case {case}: linking matrix invariant under R2"),
                poked.linking_matrix() == d.linking_matrix(),
                &poked,
            ));
        }

        // R2 then its inverse restores the diagram up to relabeling
        if d.crossing_count() >= 1 && arcs.len() >= 2 {
            let poked =
                apply_reidemeister(&d, ReidemeisterMove::R2Add { upper: arcs[0], lower: arcs[1] })
                    .unwrap();
            let (c1, c2) = (poked.crossing_count() - 2, poked.crossing_count() - 1);
            let back =
                apply_reidemeister(&poked, ReidemeisterMove::R2Remove { c1, c2 }).unwrap();
            checks.push(check(
                format!("case {case}: R2 round trip restores the diagram"),
                back.isomorphic(&d),
                &poked,
            ));
        }

        // R1 factor: -q^{+-3}; writhe shifts by the sign, mutual linking
        // numbers stay put
        if let Some(&arc) = arcs.first() {
            let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
            let kinked =
                apply_reidemeister(&d, ReidemeisterMove::R1Add { arc: Some(arc), sign }).unwrap();
            let expect = bracket.mul_monomial(3 * sign.value(), &rat(-1));
            checks.push(check(
                format!("case {case}: R1 multiplies bracket by -q^(3 sign)"),
                kauffman_bracket(&kinked).unwrap() == expect,
                &kinked,
            ));
            checks.push(check(
                format!("case {case}: ambient bracket invariant under R1"),
                ambient_normalized(&kinked).unwrap() == ambient,
                &kinked,
            ));
            checks.push(check(
                format!("case {case}: writhe shifts by the kink sign under R1"),
                kinked.writhe() == d.writhe() + sign.value(),
                &kinked,
            ));
            let off_diagonal_equal = {
                let (a, b) = (d.linking_matrix(), kinked.linking_matrix());
                a.len() == b.len()
                    && (0..a.len()).all(|i| {
                        (0..a.len()).all(|j| i == j || a[i][j] == b[i][j])
                    })
            };
            checks.push(check(
                format!("case {case}: linking numbers invariant under R1"),
                off_diagonal_equal,
                &kinked,
            ));
        }

        // R3 at a discovered site, when one exists
        if let Some(&site) = find_r3_sites(&d).first() {
            let slid = apply_reidemeister(
                &d,
                ReidemeisterMove::R3 { over_first: site.0, over_second: site.1, third: site.2 },
            )
            .unwrap();
            checks.push(check(
                format!("case {case}: bracket invariant under R3"),
                kauffman_bracket(&slid).unwrap() == bracket,
                &slid,
            ));
            checks.push(check(
                format!("case {case}: writhe and linking invariant under R3"),
                slid.writhe() == d.writhe() && slid.linking_matrix() == d.linking_matrix(),
                &slid,
            ));
        }
    }
    Report::assemble("reidemeister", seed, count, checks)
}

/// Exact and engine-level skein relations at random sites.
pub fn skein_suite(seed: u64, count: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for case in 0..count {
        let d = braid::random_closure_with(&mut rng, 3, 6);
        if d.crossing_count() == 0 {
            continue;
        }
        let j = rng.gen_range(0..d.crossing_count());
        let (plus, minus) = if d.crossings()[j].sign == Sign::Positive {
            (d.clone(), d.switched(j).unwrap())
        } else {
            (d.switched(j).unwrap(), d.clone())
        };

        // <L+> + <L-> = (q + 1/q)(<A> + <B>)
        let lhs = &kauffman_bracket(&plus).unwrap() + &kauffman_bracket(&minus).unwrap();
        let a_side =
            kauffman_bracket(&plus.smoothed_ab(j, crate::diagram::Smoothing::A).unwrap()).unwrap();
        let b_side =
            kauffman_bracket(&plus.smoothed_ab(j, crate::diagram::Smoothing::B).unwrap()).unwrap();
        let qq = crate::laurent::LaurentPoly::from_terms('q', &[(1, 1), (-1, 1)]);
        let rhs = &qq * &(&a_side + &b_side);
        checks.push(check(
            format!("case {case}: bracket sum relation at crossing {j}"),
            lhs == rhs,
            &d,
        ));

        // engine relations at a random coupling and rank
        let beta = Complex64::new(rng.gen_range(-0.6..0.6), 0.0);
        let n = rng.gen_range(1..=4u32);
        let coupling = Coupling::from_beta(beta);
        let spec = GaugeSpec::new(Group::Gln(n), coupling).unwrap();
        let vp = gauge_expectation(&plus, &spec).unwrap();
        let vm = gauge_expectation(&minus, &spec).unwrap();
        let mut pin_flat = BTreeMap::new();
        pin_flat.insert(j, Resolution::Flat);
        let vf = gauge_expectation_pinned(&d, &spec, &pin_flat).unwrap();
        let nf = n as f64;
        let root = (nf * nf / 4.0 + 2.0).sqrt();
        let sum_lhs =
            (-beta * (nf / 2.0)).exp() * vp + (beta * (nf / 2.0)).exp() * vm;
        let sum_rhs = (beta * root).cosh() * 2.0 * vf;
        checks.push(check(
            format!("case {case}: engine sum relation (n = {n})"),
            (sum_lhs - sum_rhs).norm() <= 1e-9 * sum_lhs.norm().max(1.0),
            &d,
        ));

        let mut pin_smooth = BTreeMap::new();
        pin_smooth.insert(j, Resolution::Smooth);
        let vs = gauge_expectation_pinned(&d, &spec, &pin_smooth).unwrap();
        let (qn, zn) = homfly_params(n, coupling).unwrap();
        let homfly_lhs = qn * vp - vm / qn;
        let homfly_rhs = zn * vs;
        checks.push(check(
            format!("case {case}: engine HOMFLY-form relation (n = {n})"),
            (homfly_lhs - homfly_rhs).norm() <= 1e-9 * homfly_lhs.norm().max(1.0),
            &d,
        ));

        // the SU(2) operator pipeline against the evaluated bracket
        let q = crate::coupling::su2_coeffs(coupling).q;
        let direct = kauffman_bracket(&d).unwrap().eval(q).unwrap();
        let pipeline = crate::bracket::su2_pipeline_bracket(&d, coupling).unwrap();
        checks.push(check(
            format!("case {case}: operator pipeline reproduces the bracket"),
            (pipeline - direct).norm() <= 1e-9 * direct.norm().max(1.0),
            &d,
        ));
    }
    Report::assemble("skein", seed, count, checks)
}

/// Relations between the group engines.
pub fn cross_group_suite(seed: u64, count: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for case in 0..count {
        let d = braid::random_closure_with(&mut rng, 4, 8);
        let beta = Complex64::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.2..0.2));
        let coupling = Coupling::from_beta(beta);

        let su2 = GaugeSpec::new(Group::Su2, coupling).unwrap();
        let gln2 = GaugeSpec::new(Group::Gln(2), coupling).unwrap();
        let lhs = gauge_expectation(&d, &gln2).unwrap();
        let rhs = framing_factor(2, coupling).powi(d.writhe() as i32)
            * gauge_expectation(&d, &su2).unwrap();
        checks.push(check(
            format!("case {case}: GL(2) = framing x SU(2)"),
            (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
            &d,
        ));

        let gln1 = GaugeSpec::new(Group::Gln(1), coupling).unwrap();
        let abelian_engine = gauge_expectation(&d, &gln1).unwrap();
        let abelian_closed = u1_expectation(&d, coupling);
        checks.push(check(
            format!("case {case}: GL(1) engine = abelian closed form"),
            (abelian_engine - abelian_closed).norm()
                <= 1e-12 * abelian_closed.norm().max(1.0),
            &d,
        ));

        let un2 = GaugeSpec::new(Group::Un(2), coupling).unwrap();
        checks.push(check(
            format!("case {case}: U(2) = GL(2)"),
            gauge_expectation(&d, &un2).unwrap() == lhs,
            &d,
        ));
    }
    Report::assemble("cross-group", seed, count, checks)
}

/// Torus oracle: bracket of primitive geodesics equals
/// `(p s - q r) (p + r, q + s)`.
pub fn goldman_suite(seed: u64, count: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for case in 0..count {
        let mut draw = || loop {
            let p = rng.gen_range(-5..=5i64);
            let q = rng.gen_range(-5..=5i64);
            if let Ok(c) = TorusCurve::new(p, q) {
                if c.is_primitive() {
                    return c;
                }
            }
        };
        let c1 = draw();
        let c2 = draw();
        let det = c1.p * c2.q - c1.q * c2.p;
        let sum = torus_bracket(c1, c2).unwrap();
        let pass = if det == 0 {
            sum.is_zero()
        } else {
            sum.len() == 1
                && sum.coeff(&TorusCurve::new(c1.p + c2.p, c1.q + c2.q).unwrap()) == rat(det)
        };
        checks.push(CheckResult {
            name: format!(
                "case {case}: torus bracket ({},{}) x ({},{})",
                c1.p, c1.q, c2.p, c2.q
            ),
            pass,
            detail: if pass {
                String::new()
            } else {
                format!("expected {det} * ({}, {})", c1.p + c2.p, c1.q + c2.q)
            },
        });
    }
    Report::assemble("goldman", seed, count, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for suite in [Suite::Reidemeister, Suite::Skein, Suite::CrossGroup, Suite::Goldman] {
            let report = run_suite(suite, 7, 8);
            assert!(
                report.passed,
                "suite {:?} failed: {:?}",
                suite,
                report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Reidemeister, 42, 5);
        let b = run_suite(Suite::Reidemeister, 42, 5);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse("reidemeister"), Some(Suite::Reidemeister));
        assert_eq!(Suite::parse("skein"), Some(Suite::Skein));
        assert_eq!(Suite::parse("cross-group"), Some(Suite::CrossGroup));
        assert_eq!(Suite::parse("goldman"), Some(Suite::Goldman));
        assert_eq!(Suite::parse("nope"), None);
    }
}
