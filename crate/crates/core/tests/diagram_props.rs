use blowdown_core::diagram::{fixtures, validate_threefold_diagram, SumDiagram, Surface};
use proptest::prelude::*;

fn touched(d: &SumDiagram, id: &str) -> Vec<usize> {
    d.pairings
        .iter()
        .enumerate()
        .filter(|(_, p)| p.iter().any(|s| s == id))
        .map(|(i, _)| i)
        .collect()
}

fn verdicts(d: &SumDiagram) -> Vec<bool> {
    validate_threefold_diagram(d)
        .unwrap()
        .pairings
        .iter()
        .map(|p| p.valid)
        .collect()
}

#[test]
fn fixtures_give_stated_verdicts() {
    let got: Vec<(&str, bool)> = fixtures()
        .iter()
        .map(|f| (f.name, validate_threefold_diagram(&f.diagram).unwrap().valid))
        .collect();
    assert_eq!(
        got,
        vec![
            ("conic-sum", true),
            ("one-triple-point", true),
            ("unbalanced-triple-point", false)
        ]
    );
}

#[test]
fn single_mutations_flip_touched_pairings() {
    for f in fixtures() {
        let before = verdicts(&f.diagram);
        for (k, s) in f.diagram.surfaces.iter().enumerate() {
            for delta in [-1, 1] {
                let mut d = f.diagram.clone();
                d.surfaces[k].self_intersection += delta;
                let after = verdicts(&d);
                let hit = touched(&f.diagram, &s.id);
                for (i, (b, a)) in before.iter().zip(&after).enumerate() {
                    if hit.contains(&i) && *b {
                        assert!(!a, "{}: pairing {i} should break", f.name);
                    } else if !hit.contains(&i) {
                        assert_eq!(a, b, "{}: pairing {i} should not change", f.name);
                    }
                }
            }
        }
    }
}

/// A chain of hosts `H0 - H1 - ... - Hk` glued along balanced pairs.
fn balanced(sums: &[(i64, i64)]) -> SumDiagram {
    let mut d = SumDiagram::default();
    for (i, &(a, b)) in sums.iter().enumerate() {
        d.surfaces.push(Surface { id: format!("F{i}"), host: format!("H{i}"), self_intersection: a });
        d.surfaces.push(Surface { id: format!("G{i}"), host: format!("H{}", i + 1), self_intersection: b });
        d.pairings.push([format!("F{i}"), format!("G{i}")]);
    }
    d
}

proptest! {
    #[test]
    fn adding_a_triple_point_breaks_exactly_three(xs in prop::collection::vec(-9i64..=9, 3..8), pick in prop::sample::subsequence((0usize..8).collect::<Vec<_>>(), 3)) {
        prop_assume!(pick.iter().all(|&p| p < xs.len()));
        let d = balanced(&xs.iter().map(|&x| (x, -x)).collect::<Vec<_>>());
        prop_assert!(validate_threefold_diagram(&d).unwrap().valid);
        let mut with = d.clone();
        with.triple_points.push([pick[0], pick[1], pick[2]]);
        let v = validate_threefold_diagram(&with).unwrap();
        prop_assert_eq!(&v.violations, &pick);
        // compensating on one side of each touched pairing restores balance
        for &p in &pick {
            with.surfaces[2 * p].self_intersection -= 1;
        }
        prop_assert!(validate_threefold_diagram(&with).unwrap().valid);
    }

    #[test]
    fn order_does_not_matter(xs in prop::collection::vec((-9i64..=9, -9i64..=9), 3..8), seed in any::<u64>()) {
        let mut d = balanced(&xs);
        d.triple_points.push([0, 1, 2]);
        let base = validate_threefold_diagram(&d).unwrap();
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(seed);
        let mut e = d.clone();
        rand::seq::SliceRandom::shuffle(e.surfaces.as_mut_slice(), &mut rng);
        let mut order: Vec<usize> = (0..e.pairings.len()).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        e.pairings = order.iter().map(|&i| {
            let [a, b] = d.pairings[i].clone();
            [b, a]
        }).collect();
        let pos = |i: usize| order.iter().position(|&o| o == i).unwrap();
        e.triple_points = vec![[pos(2), pos(0), pos(1)]];
        let shuffled = validate_threefold_diagram(&e).unwrap();
        prop_assert_eq!(base.valid, shuffled.valid);
        for (i, p) in base.pairings.iter().enumerate() {
            prop_assert_eq!(p.residual, shuffled.pairings[pos(i)].residual);
        }
        let json = serde_json::to_string(&e).unwrap();
        let back: SumDiagram = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(validate_threefold_diagram(&back).unwrap(), shuffled);
    }
}
