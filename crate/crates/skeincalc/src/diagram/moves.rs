//! Reidemeister-move rewriting, addressed by arc and crossing ids.
//!
//! These rewrites exist for test support: invariance suites apply them to
//! corpus diagrams and compare invariants before and after. Sites are
//! combinatorial (arc ids for insertions, crossing indices for removals and
//! slides); there is no geometry here.

use std::collections::BTreeMap;

use super::{ArcId, Crossing, LinkDiagram, Sign};
use crate::error::DiagramError;

/// A Reidemeister move at a specified site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReidemeisterMove {
    /// R1+: add a kink of the given sign on an arc, or on a marked circle
    /// when `arc` is `None`.
    R1Add { arc: Option<ArcId>, sign: Sign },
    /// R1-: remove the kink at a crossing whose loop arc connects its own
    /// under-out to over-in slot (or over-out to under-in).
    R1Remove { crossing: usize },
    /// R2+: push `upper` over `lower` (two new crossings of opposite sign).
    R2Add { upper: ArcId, lower: ArcId },
    /// R2-: cancel two crossings forming a poke.
    R2Remove { c1: usize, c2: usize },
    /// R3: slide the strand passing over both others across the third
    /// crossing. `over_first`/`over_second` are the crossings where the
    /// sliding strand is on top, `third` is the crossing between the two
    /// lower strands.
    R3 { over_first: usize, over_second: usize, third: usize },
}

/// Apply a move, returning the rewritten diagram.
pub fn apply_reidemeister(d: &LinkDiagram, mv: ReidemeisterMove) -> Result<LinkDiagram, DiagramError> {
    match mv {
        ReidemeisterMove::R1Add { arc, sign } => r1_add(d, arc, sign),
        ReidemeisterMove::R1Remove { crossing } => r1_remove(d, crossing),
        ReidemeisterMove::R2Add { upper, lower } => r2_add(d, upper, lower),
        ReidemeisterMove::R2Remove { c1, c2 } => r2_remove(d, c1, c2),
        ReidemeisterMove::R3 { over_first, over_second, third } => {
            r3(d, over_first, over_second, third)
        }
    }
}

fn fresh_arcs(d: &LinkDiagram, n: u32) -> Vec<ArcId> {
    let max = d.arcs().max().unwrap_or(0);
    (1..=n).map(|i| max + i).collect()
}

/// Replace the single in-occurrence of `arc` with `with`.
fn replace_in_slot(crossings: &mut [Crossing], arc: ArcId, with: ArcId) {
    for c in crossings.iter_mut() {
        if c.over_in == arc {
            c.over_in = with;
            return;
        }
        if c.under_in == arc {
            c.under_in = with;
            return;
        }
    }
    unreachable!("arc {arc} has an in-occurrence in a valid diagram");
}

fn r1_add(d: &LinkDiagram, arc: Option<ArcId>, sign: Sign) -> Result<LinkDiagram, DiagramError> {
    match arc {
        None => {
            if d.unknot_count() == 0 {
                return Err(DiagramError::MoveSiteMismatch {
                    move_name: "R1+".into(),
                    detail: "no marked circle to kink".into(),
                });
            }
            let ids = fresh_arcs(d, 2);
            let (x, l) = (ids[0], ids[1]);
            let mut crossings = d.crossings().to_vec();
            // strand: x -> under -> l -> over -> x
            crossings.push(Crossing::new(l, x, x, l, sign));
            LinkDiagram::new(crossings, d.unknot_count() - 1)
        }
        Some(a) => {
            if !d.arcs().any(|x| x == a) {
                return Err(DiagramError::MoveSiteMismatch {
                    move_name: "R1+".into(),
                    detail: format!("arc {a} not in diagram"),
                });
            }
            let ids = fresh_arcs(d, 2);
            let (l, xb) = (ids[0], ids[1]);
            let mut crossings = d.crossings().to_vec();
            // split a into a -> (kink) -> xb; loop arc l passes under first
            replace_in_slot(&mut crossings, a, xb);
            crossings.push(Crossing::new(l, xb, a, l, sign));
            LinkDiagram::new(crossings, d.unknot_count())
        }
    }
}

fn r1_remove(d: &LinkDiagram, j: usize) -> Result<LinkDiagram, DiagramError> {
    let c = *d
        .crossings()
        .get(j)
        .ok_or(DiagramError::CrossingIndex(j))?;
    // kink patterns: loop arc joins under_out to over_in, or over_out to
    // under_in, within the same crossing
    let (x, xb) = if c.under_out == c.over_in {
        (c.under_in, c.over_out)
    } else if c.over_out == c.under_in {
        (c.over_in, c.under_out)
    } else {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R1-".into(),
            detail: format!("crossing {j} is not a kink"),
        });
    };
    let mut crossings = d.crossings().to_vec();
    crossings.remove(j);
    if x == xb {
        // isolated kink: the strand closes into a circle
        return LinkDiagram::new(crossings, d.unknot_count() + 1);
    }
    // merge: the strand that entered as x continues as xb elsewhere
    for c in crossings.iter_mut() {
        for slot in [&mut c.over_in, &mut c.over_out, &mut c.under_in, &mut c.under_out] {
            if *slot == xb {
                *slot = x;
            }
        }
    }
    LinkDiagram::new(crossings, d.unknot_count())
}

fn r2_add(d: &LinkDiagram, upper: ArcId, lower: ArcId) -> Result<LinkDiagram, DiagramError> {
    if upper == lower {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R2+".into(),
            detail: "cannot poke an arc over itself".into(),
        });
    }
    for a in [upper, lower] {
        if !d.arcs().any(|x| x == a) {
            return Err(DiagramError::MoveSiteMismatch {
                move_name: "R2+".into(),
                detail: format!("arc {a} not in diagram"),
            });
        }
    }
    let ids = fresh_arcs(d, 4);
    let (xm, xb, ym, yb) = (ids[0], ids[1], ids[2], ids[3]);
    let mut crossings = d.crossings().to_vec();
    replace_in_slot(&mut crossings, upper, xb);
    replace_in_slot(&mut crossings, lower, yb);
    // upper: upper -> xm -> xb over both; lower: lower -> ym -> yb under both;
    // a planar poke makes the two crossings opposite in sign
    crossings.push(Crossing::new(upper, xm, lower, ym, Sign::Positive));
    crossings.push(Crossing::new(xm, xb, ym, yb, Sign::Negative));
    LinkDiagram::new(crossings, d.unknot_count())
}

fn r2_remove(d: &LinkDiagram, i: usize, j: usize) -> Result<LinkDiagram, DiagramError> {
    let ci = *d.crossings().get(i).ok_or(DiagramError::CrossingIndex(i))?;
    let cj = *d.crossings().get(j).ok_or(DiagramError::CrossingIndex(j))?;
    if i == j {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R2-".into(),
            detail: "need two distinct crossings".into(),
        });
    }
    // orient the pair so the over strand runs first -> second
    let (first, second, fi, si) = if ci.over_out == cj.over_in {
        (ci, cj, i, j)
    } else if cj.over_out == ci.over_in {
        (cj, ci, j, i)
    } else {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R2-".into(),
            detail: "over strands are not consecutive".into(),
        });
    };
    if first.sign == second.sign {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R2-".into(),
            detail: "poke crossings must have opposite signs".into(),
        });
    }
    // under strand: parallel (first -> second) or antiparallel
    let merges: [(ArcId, ArcId); 2] = if first.under_out == second.under_in {
        [(first.over_in, second.over_out), (first.under_in, second.under_out)]
    } else if second.under_out == first.under_in {
        [(first.over_in, second.over_out), (second.under_in, first.under_out)]
    } else {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R2-".into(),
            detail: "under strands are not consecutive".into(),
        });
    };
    let mut crossings = Vec::with_capacity(d.crossing_count() - 2);
    for (k, c) in d.crossings().iter().enumerate() {
        if k != fi && k != si {
            crossings.push(*c);
        }
    }
    let mut unknots = d.unknot_count();
    let mut rename: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    let resolve = |rename: &BTreeMap<ArcId, ArcId>, mut a: ArcId| {
        while let Some(&b) = rename.get(&a) {
            a = b;
        }
        a
    };
    for (keep, drop) in merges {
        let keep = resolve(&rename, keep);
        let drop = resolve(&rename, drop);
        if keep == drop {
            unknots += 1;
        } else {
            rename.insert(drop, keep);
        }
    }
    for c in crossings.iter_mut() {
        c.over_in = resolve(&rename, c.over_in);
        c.over_out = resolve(&rename, c.over_out);
        c.under_in = resolve(&rename, c.under_in);
        c.under_out = resolve(&rename, c.under_out);
    }
    LinkDiagram::new(crossings, unknots)
}

/// The R3 slot pattern: strand A over at `p` then `q`, strand B under A at
/// `p` and through `r`, strand C under A at `q` and through `r`.
///
/// Forward pattern (A below the B/C crossing, sliding up):
/// `p.over_out == q.over_in`, `p.under_out == r.over_in`,
/// `q.under_out == r.under_in`; the mirrored pattern is its inverse.
fn r3(d: &LinkDiagram, pi: usize, qi: usize, ri: usize) -> Result<LinkDiagram, DiagramError> {
    let n = d.crossing_count();
    if pi >= n || qi >= n || ri >= n || pi == qi || qi == ri || pi == ri {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R3".into(),
            detail: "need three distinct crossings".into(),
        });
    }
    let p = d.crossings()[pi];
    let q = d.crossings()[qi];
    let r = d.crossings()[ri];
    let forward =
        p.over_out == q.over_in && p.under_out == r.over_in && q.under_out == r.under_in;
    let mirrored =
        q.over_out == p.over_in && r.over_out == p.under_in && r.under_out == q.under_in;
    if !forward && !mirrored {
        return Err(DiagramError::MoveSiteMismatch {
            move_name: "R3".into(),
            detail: "no triangle with one strand over both others".into(),
        });
    }
    // In both directions the slide permutes the three strand passages the
    // same way: the top strand's two crossings swap which lower strand they
    // meet via the third crossing's slot pairs.
    let np = Crossing::new(q.over_in, q.over_out, r.over_in, r.over_out, p.sign);
    let nq = Crossing::new(p.over_in, p.over_out, r.under_in, r.under_out, q.sign);
    let nr = Crossing::new(p.under_in, p.under_out, q.under_in, q.under_out, r.sign);
    let mut crossings = d.crossings().to_vec();
    crossings[pi] = np;
    crossings[qi] = nq;
    crossings[ri] = nr;
    LinkDiagram::new(crossings, d.unknot_count())
}

/// All `(over_first, over_second, third)` sites where an R3 slide applies.
pub fn find_r3_sites(d: &LinkDiagram) -> Vec<(usize, usize, usize)> {
    let n = d.crossing_count();
    let mut sites = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if p == q || q == r || p == r {
                    continue;
                }
                let (cp, cq, cr) = (d.crossings()[p], d.crossings()[q], d.crossings()[r]);
                let forward = cp.over_out == cq.over_in
                    && cp.under_out == cr.over_in
                    && cq.under_out == cr.under_in;
                let mirrored = cq.over_out == cp.over_in
                    && cr.over_out == cp.under_in
                    && cr.under_out == cq.under_in;
                if forward || mirrored {
                    sites.push((p, q, r));
                }
            }
        }
    }
    sites
}

/// All crossing indices carrying a removable kink.
pub fn find_r1_sites(d: &LinkDiagram) -> Vec<usize> {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.under_out == c.over_in || c.over_out == c.under_in)
        .map(|(i, _)| i)
        .collect()
}

/// All `(c1, c2)` pairs forming a removable poke.
pub fn find_r2_sites(d: &LinkDiagram) -> Vec<(usize, usize)> {
    let n = d.crossing_count();
    let mut sites = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ci, cj) = (d.crossings()[i], d.crossings()[j]);
            if ci.over_out != cj.over_in || ci.sign == cj.sign {
                continue;
            }
            if ci.under_out == cj.under_in || cj.under_out == ci.under_in {
                sites.push((i, j));
            }
        }
    }
    sites
}

#[cfg(test)]
mod tests {
    use super::super::braid;
    use super::*;

    #[test]
    fn r1_on_unknot_gives_kink() {
        let d = LinkDiagram::unknot_circles(1);
        let k = apply_reidemeister(&d, ReidemeisterMove::R1Add { arc: None, sign: Sign::Positive })
            .unwrap();
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.component_count(), 1);
        assert_eq!(k.writhe(), 1);
        let back = apply_reidemeister(&k, ReidemeisterMove::R1Remove { crossing: 0 }).unwrap();
        assert_eq!(back.component_count(), 1);
        assert_eq!(back.crossing_count(), 0);
        assert_eq!(back.unknot_count(), 1);
    }

    #[test]
    fn r1_changes_writhe_by_sign() {
        let d = braid::trefoil();
        for sign in [Sign::Positive, Sign::Negative] {
            let arc = d.arcs().next().unwrap();
            let k =
                apply_reidemeister(&d, ReidemeisterMove::R1Add { arc: Some(arc), sign }).unwrap();
            assert_eq!(k.writhe(), d.writhe() + sign.value());
            assert_eq!(k.component_count(), d.component_count());
            // removing the fresh kink restores the diagram
            let j = k.crossing_count() - 1;
            let back = apply_reidemeister(&k, ReidemeisterMove::R1Remove { crossing: j }).unwrap();
            assert!(back.isomorphic(&d));
        }
    }

    #[test]
    fn r2_round_trip() {
        let d = braid::figure_eight();
        let arcs: Vec<ArcId> = d.arcs().collect();
        let (x, y) = (arcs[0], arcs[2]);
        let poked = apply_reidemeister(&d, ReidemeisterMove::R2Add { upper: x, lower: y }).unwrap();
        assert_eq!(poked.crossing_count(), d.crossing_count() + 2);
        assert_eq!(poked.writhe(), d.writhe());
        assert_eq!(poked.component_count(), d.component_count());
        let (c1, c2) = (poked.crossing_count() - 2, poked.crossing_count() - 1);
        let back = apply_reidemeister(&poked, ReidemeisterMove::R2Remove { c1, c2 }).unwrap();
        assert!(back.isomorphic(&d));
    }

    #[test]
    fn r3_preserves_counts_and_inverts() {
        // sigma1 sigma2 sigma1 closure contains the forward pattern
        let d = braid::BraidWord { strands: 3, letters: vec![1, 2, 1] }.closure();
        let sites = find_r3_sites(&d);
        assert!(!sites.is_empty(), "expected an R3 site in sigma1 sigma2 sigma1");
        let (p, q, r) = sites[0];
        let moved = apply_reidemeister(&d, ReidemeisterMove::R3 { over_first: p, over_second: q, third: r })
            .unwrap();
        assert_eq!(moved.crossing_count(), 3);
        assert_eq!(moved.writhe(), d.writhe());
        assert_eq!(moved.component_count(), d.component_count());
        // applying R3 at the same indices again restores the diagram
        let back = apply_reidemeister(
            &moved,
            ReidemeisterMove::R3 { over_first: p, over_second: q, third: r },
        )
        .unwrap();
        assert!(back.isomorphic(&d));
    }

    #[test]
    fn pattern_mismatch_is_reported() {
        let d = braid::trefoil();
        let err = apply_reidemeister(&d, ReidemeisterMove::R1Remove { crossing: 0 });
        assert!(matches!(err, Err(DiagramError::MoveSiteMismatch { .. })));
    }
}
