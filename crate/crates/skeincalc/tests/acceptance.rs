//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`) and holding
//! its stated tolerance and runtime budget.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeincalc::bracket::{
    ambient_normalized, delta_poly, homfly_branch_nodes, homfly_poly, kauffman_bracket,
    su2_pipeline_bracket,
};
use skeincalc::coupling::{
    framing_factor, gln_matrices, homfly_params, su2_coeffs, su2_matrix, traceless_exp, Coupling,
    Mat2,
};
use skeincalc::diagram::moves::{apply_reidemeister, find_r3_sites, ReidemeisterMove};
use skeincalc::diagram::{braid, LinkDiagram, Resolution, Sign};
use skeincalc::expectation::{
    gauge_expectation, gauge_expectation_pinned, u1_expectation, GaugeSpec, Group,
};
use skeincalc::goldman::{
    goldman_gl, goldman_su2, torus_bracket, CurveSystem, Intersection, Letter, TorusCurve,
};
use skeincalc::laurent::{rat, LaurentPoly2};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn criterion(number: u32, name: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget { "PASS" } else { "FAIL" };
    println!(
        "[acceptance] criterion {number} ({name}): {verdict} in {:.3}s (budget {:.0}s)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its {:.0}s budget: {:.3}s",
        budget.as_secs_f64(),
        elapsed.as_secs_f64()
    );
}

/// Deterministic mixed corpus: named fixtures plus seeded braid closures.
fn corpus(total: usize, max_crossings: usize) -> Vec<LinkDiagram> {
    let mut v = vec![
        braid::unknot(),
        braid::hopf_link(),
        braid::trefoil(),
        braid::trefoil_left(),
        braid::figure_eight(),
    ];
    let mut seed = 100u64;
    while v.len() < total {
        v.push(braid::random_closure(seed, 4, max_crossings));
        seed += 1;
    }
    v
}

#[test]
fn c1_coefficient_identities() {
    criterion(1, "coefficient identities", Duration::from_secs(1), || {
        let tol = 1e-10;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut betas: Vec<Complex64> =
            (0..100).map(|_| c64(rng.gen_range(-1.0..1.0), 0.0)).collect();
        betas.extend((0..20).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5))));
        let m = su2_matrix();
        let m2 = m.mul(&m);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { c64(3.0, 0.0) } else { c64(0.0, 0.0) };
                assert!((m2.0[i][j] - expect).norm() < tol, "M^2 != 3I");
            }
        }
        for n in 1..=6u32 {
            let (_, mn, dn) = gln_matrices(n).unwrap();
            let sq = mn.mul(&mn);
            for i in 0..2 {
                for j in 0..2 {
                    let expect = if i == j { c64(dn, 0.0) } else { c64(0.0, 0.0) };
                    assert!((sq.0[i][j] - expect).norm() < tol, "M_n^2 != Delta_n I");
                }
            }
        }
        let root3 = c64(3.0f64.sqrt(), 0.0);
        for beta in betas {
            let s = su2_coeffs(Coupling::from_beta(beta));
            assert!((s.a + s.b + (beta * root3).cosh() * 2.0).norm() < tol);
            assert!((s.b - s.a - (beta * root3).sinh() * 2.0 / root3).norm() < tol);
            let e = traceless_exp(&m, beta).unwrap();
            let e_inv = traceless_exp(&m, -beta).unwrap();
            let prod = e.mul(&e_inv);
            let id = Mat2::identity();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((prod.0[i][j] - id.0[i][j]).norm() < tol, "exp inverse");
                }
            }
        }
    });
}

#[test]
fn c2_bracket_invariance() {
    criterion(2, "Kauffman bracket move invariance", Duration::from_secs(10), || {
        // base values
        assert_eq!(kauffman_bracket(&braid::unknot()).unwrap(), delta_poly());
        for k in 2..=4 {
            assert_eq!(
                kauffman_bracket(&LinkDiagram::unknot_circles(k)).unwrap(),
                delta_poly().pow(k as u32)
            );
        }
        // R1 factor both ways
        for sign in [Sign::Positive, Sign::Negative] {
            let d = braid::trefoil();
            let arc = d.arcs().next().unwrap();
            let kinked =
                apply_reidemeister(&d, ReidemeisterMove::R1Add { arc: Some(arc), sign }).unwrap();
            let expect = kauffman_bracket(&d).unwrap().mul_monomial(3 * sign.value(), &rat(-1));
            assert_eq!(kauffman_bracket(&kinked).unwrap(), expect);
        }
        // 200 seeded R2/R3 applications with exact equality
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut applied = 0usize;
        let mut seed = 0u64;
        while applied < 200 {
            let d = braid::random_closure(seed, 4, 8);
            seed += 1;
            if d.crossing_count() == 0 {
                continue;
            }
            let before = kauffman_bracket(&d).unwrap();
            let arcs: Vec<_> = d.arcs().collect();
            let x = arcs[rng.gen_range(0..arcs.len())];
            let mut y = arcs[rng.gen_range(0..arcs.len())];
            if x == y {
                y = arcs[(arcs.iter().position(|&a| a == x).unwrap() + 1) % arcs.len()];
            }
            let poked =
                apply_reidemeister(&d, ReidemeisterMove::R2Add { upper: x, lower: y }).unwrap();
            assert_eq!(kauffman_bracket(&poked).unwrap(), before, "R2 seed {seed}");
            applied += 1;
            if let Some(&(p, q, r)) = find_r3_sites(&d).first() {
                let slid = apply_reidemeister(
                    &d,
                    ReidemeisterMove::R3 { over_first: p, over_second: q, third: r },
                )
                .unwrap();
                assert_eq!(kauffman_bracket(&slid).unwrap(), before, "R3 seed {seed}");
                applied += 1;
            }
        }
    });
}

#[test]
fn c3_pipeline_reproduces_bracket() {
    criterion(3, "SU(2) pipeline = evaluated bracket", Duration::from_secs(30), || {
        let betas = [
            c64(0.0, 0.0),
            c64(0.1, 0.0),
            c64(-0.3, 0.0),
            c64(0.07, 0.0),
            c64(0.05, 0.1),
        ];
        for d in corpus(50, 8) {
            let bracket = kauffman_bracket(&d).unwrap();
            for beta in betas {
                let coupling = Coupling::from_beta(beta);
                let q = su2_coeffs(coupling).q;
                let direct = bracket.eval(q).unwrap();
                let pipeline = su2_pipeline_bracket(&d, coupling).unwrap();
                let scale = direct.norm().max(1.0);
                assert!(
                    (pipeline - direct).norm() <= 1e-9 * scale,
                    "beta {beta}, {} crossings: {pipeline} vs {direct}",
                    d.crossing_count()
                );
            }
        }
    });
}

#[test]
fn c4_abelian_sector() {
    criterion(4, "U(1) sector", Duration::from_secs(5), || {
        let coupling = Coupling::from_lambda(c64(1.7, 0.4)).unwrap();
        let spec = GaugeSpec::new(Group::Gln(1), coupling).unwrap();
        for d in corpus(50, 8) {
            let closed = u1_expectation(&d, coupling);
            // closed form is e^{w / lambda}
            let lambda = coupling.lambda().unwrap();
            let expect = (c64(d.writhe() as f64, 0.0) / lambda).exp();
            assert!((closed - expect).norm() <= 1e-12 * expect.norm());
            let engine = gauge_expectation(&d, &spec).unwrap();
            assert!((engine - closed).norm() <= 1e-12 * closed.norm().max(1.0));
        }
        // two-component links without self-crossings: exponent is 2 lk / lambda
        for m in 1..=4i64 {
            let d = braid::BraidWord::new(2, vec![1; (2 * m) as usize]).closure();
            assert_eq!(d.component_count(), 2);
            let matrix = d.linking_matrix();
            assert_eq!(matrix[0][0], 0, "no self-crossings");
            let lk = matrix[0][1];
            let lambda = coupling.lambda().unwrap();
            let expect = (c64(2.0 * lk as f64, 0.0) / lambda).exp();
            let closed = u1_expectation(&d, coupling);
            assert!((closed - expect).norm() <= 1e-12 * expect.norm());
        }
    });
}

#[test]
fn c5_framing_relation() {
    criterion(5, "GL(2) = framing x SU(2)", Duration::from_secs(30), || {
        let coupling = Coupling::from_beta(c64(0.21, 0.06));
        let su2 = GaugeSpec::new(Group::Su2, coupling).unwrap();
        let gln2 = GaugeSpec::new(Group::Gln(2), coupling).unwrap();
        for d in corpus(50, 8) {
            let lhs = gauge_expectation(&d, &gln2).unwrap();
            let rhs = framing_factor(2, coupling).powi(d.writhe() as i32)
                * gauge_expectation(&d, &su2).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
                "writhe {}: {lhs} vs {rhs}",
                d.writhe()
            );
        }
    });
}

#[test]
fn c6_gln_skein_identities() {
    criterion(6, "GL(n) skein identities", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut done = 0;
        let mut seed = 600u64;
        while done < 20 {
            let d = braid::random_closure(seed, 3, 6);
            seed += 1;
            if d.crossing_count() == 0 {
                continue;
            }
            let n = rng.gen_range(1..=4u32);
            let beta = c64(rng.gen_range(-0.6..0.6), 0.0);
            let coupling = Coupling::from_beta(beta);
            let spec = GaugeSpec::new(Group::Gln(n), coupling).unwrap();
            let j = rng.gen_range(0..d.crossing_count());
            let (plus, minus) = if d.crossings()[j].sign == Sign::Positive {
                (d.clone(), d.switched(j).unwrap())
            } else {
                (d.switched(j).unwrap(), d.clone())
            };
            let vp = gauge_expectation(&plus, &spec).unwrap();
            let vm = gauge_expectation(&minus, &spec).unwrap();

            // sum relation against the pinned bare crossing
            let mut pin = BTreeMap::new();
            pin.insert(j, Resolution::Flat);
            let flat = gauge_expectation_pinned(&d, &spec, &pin).unwrap();
            let nf = n as f64;
            let root = (nf * nf / 4.0 + 2.0).sqrt();
            let lhs = (-beta * (nf / 2.0)).exp() * vp + (beta * (nf / 2.0)).exp() * vm;
            let rhs = (beta * root).cosh() * 2.0 * flat;
            assert!(
                (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
                "sum relation n={n} seed={seed}"
            );

            // HOMFLY-form relation with the derived parameters against the
            // pinned honest smoothing
            let mut pin = BTreeMap::new();
            pin.insert(j, Resolution::Smooth);
            let smooth = gauge_expectation_pinned(&d, &spec, &pin).unwrap();
            let (qn, zn) = homfly_params(n, coupling).unwrap();
            let lhs = qn * vp - vm / qn;
            let rhs = zn * smooth;
            assert!(
                (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0).max(rhs.norm()),
                "HOMFLY-form relation n={n} seed={seed}"
            );
            done += 1;
        }
    });
}

#[test]
fn c7_homfly_evaluator() {
    criterion(7, "HOMFLY evaluator", Duration::from_secs(10), || {
        let one = LaurentPoly2::one(('q', 'z'));
        assert_eq!(homfly_poly(&braid::unknot()).unwrap(), one);

        let mut diagrams = vec![braid::trefoil(), braid::figure_eight(), braid::hopf_link()];
        for seed in 700..720u64 {
            diagrams.push(braid::random_closure(seed, 3, 6));
        }
        for d in diagrams {
            for (node, pivot) in homfly_branch_nodes(&d).unwrap() {
                let here = homfly_poly(&node).unwrap();
                let switched = homfly_poly(&node.switched(pivot).unwrap()).unwrap();
                let smoothed = homfly_poly(&node.smoothed_oriented(pivot).unwrap()).unwrap();
                let (plus, minus) = match node.crossings()[pivot].sign {
                    Sign::Positive => (&here, &switched),
                    Sign::Negative => (&switched, &here),
                };
                let lhs =
                    &plus.mul_monomial((1, 0), &rat(1)) - &minus.mul_monomial((-1, 0), &rat(1));
                let rhs = smoothed.mul_monomial((0, 1), &rat(1));
                assert_eq!(lhs, rhs, "node-local relation");
            }
        }
        // the writhe-corrected bracket distinguishes the trefoil
        let trefoil = ambient_normalized(&braid::trefoil()).unwrap();
        let unknot = ambient_normalized(&braid::unknot()).unwrap();
        assert_ne!(trefoil, unknot);
    });
}

#[test]
fn c8_goldman() {
    criterion(8, "Goldman bracket", Duration::from_secs(5), || {
        // antisymmetry on 100 random curve systems
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let alphabet = ["x", "y", "z", "w", "v"];
        for _ in 0..100 {
            let len_c = rng.gen_range(1..6usize);
            let len_cp = rng.gen_range(1..6usize);
            let rand_word = |rng: &mut ChaCha8Rng, len: usize| -> Vec<Letter> {
                (0..len)
                    .map(|_| {
                        let mut l = Letter::new(alphabet[rng.gen_range(0..alphabet.len())]);
                        l.rev = rng.gen_bool(0.25);
                        l
                    })
                    .collect()
            };
            let c = rand_word(&mut rng, len_c);
            let c_prime = rand_word(&mut rng, len_cp);
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
            assert_eq!(fwd, bwd.neg(), "antisymmetry");
            if cs.intersections.is_empty() {
                assert!(fwd.is_zero());
                assert!(goldman_su2(&cs).unwrap().is_zero());
            }
            // half-integrality of the SU(2) form
            for (_, coeff) in goldman_su2(&cs).unwrap().terms() {
                assert!((coeff * rat(2)).is_integer(), "coefficient {coeff}");
            }
        }

        // torus oracle over the full +-5 grid of primitive classes
        let mut classes = Vec::new();
        for p in -5..=5i64 {
            for q in -5..=5i64 {
                if let Ok(c) = TorusCurve::new(p, q) {
                    if c.is_primitive() {
                        classes.push(c);
                    }
                }
            }
        }
        for &c1 in &classes {
            for &c2 in &classes {
                let det = c1.p * c2.q - c1.q * c2.p;
                let sum = torus_bracket(c1, c2).unwrap();
                if det == 0 {
                    assert!(sum.is_zero(), "({},{}) ({},{})", c1.p, c1.q, c2.p, c2.q);
                } else {
                    let class = TorusCurve::new(c1.p + c2.p, c1.q + c2.q).unwrap();
                    assert_eq!(sum.len(), 1);
                    assert_eq!(
                        sum.coeff(&class),
                        rat(det),
                        "({},{}) ({},{})",
                        c1.p,
                        c1.q,
                        c2.p,
                        c2.q
                    );
                }
            }
        }
    });
}

#[test]
fn c9_beta_zero_degeneration() {
    criterion(9, "beta = 0 degeneration", Duration::from_secs(1), || {
        let coupling = Coupling::from_beta_re(0.0);
        let s = su2_coeffs(coupling);
        assert_eq!(s.q, c64(-1.0, 0.0));
        assert_eq!(s.delta, c64(-2.0, 0.0));
        let spec = GaugeSpec::new(Group::Su2, coupling).unwrap();
        for d in corpus(12, 6) {
            let v = gauge_expectation(&d, &spec).unwrap();
            assert_eq!(v, c64(2f64.powi(d.component_count() as i32), 0.0));
        }
        // the GL(n) skein degenerates to <L+> = <L->
        for n in 1..=4u32 {
            let gl = GaugeSpec::new(Group::Gln(n), coupling).unwrap();
            for seed in [900u64, 901, 902] {
                let d = braid::random_closure(seed, 3, 6);
                if d.crossing_count() == 0 {
                    continue;
                }
                let switched = d.switched(0).unwrap();
                assert_eq!(
                    gauge_expectation(&d, &gl).unwrap(),
                    gauge_expectation(&switched, &gl).unwrap()
                );
            }
        }
    });
}
