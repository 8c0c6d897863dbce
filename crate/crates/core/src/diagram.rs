//! Balance rule for 3-fold sum gluing diagrams.
//!
//! Surfaces in different host manifolds are glued in pairs. A pairing `(F, F')`
//! is balanced when `F·F + F'·F'` equals minus the number of 3-fold sum points
//! the pairing passes through.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("surface id {id:?} appears more than once")]
    DuplicateSurface { id: String },
    #[error("pairing {pairing} references unknown surface {id:?}")]
    UnknownSurface { pairing: usize, id: String },
    #[error("pairing {pairing} glues surface {id:?} to itself")]
    SelfPairing { pairing: usize, id: String },
    #[error("pairing {pairing} joins two surfaces in host {host:?}")]
    SameHost { pairing: usize, host: String },
    #[error("pairings {first} and {second} join the same surfaces")]
    DuplicatePairing { first: usize, second: usize },
    #[error("triple point {triple} references pairing {pairing}, out of range")]
    UnknownPairing { triple: usize, pairing: usize },
    #[error("triple point {triple} repeats a pairing")]
    RepeatedPairing { triple: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Surface {
    pub id: String,
    pub host: String,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumDiagram {
    pub surfaces: Vec<Surface>,
    /// Pairs of surface ids.
    pub pairings: Vec<[String; 2]>,
    /// Triples of pairing indices.
    #[serde(default)]
    pub triple_points: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingCheck {
    pub pairing: usize,
    pub surfaces: [String; 2],
    pub self_intersection_sum: i64,
    pub triple_points: usize,
    /// `sum + triple_points`; zero when balanced.
    pub residual: i64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramVerdict {
    pub valid: bool,
    pub pairings: Vec<PairingCheck>,
    /// Indices of unbalanced pairings.
    pub violations: Vec<usize>,
}

/// Checks structure, then the balance rule for every pairing.
pub fn validate_threefold_diagram(d: &SumDiagram) -> Result<DiagramVerdict, DiagramError> {
    let mut by_id: HashMap<&str, &Surface> = HashMap::new();
    for s in &d.surfaces {
        if by_id.insert(&s.id, s).is_some() {
            return Err(DiagramError::DuplicateSurface { id: s.id.clone() });
        }
    }
    let mut seen: HashMap<[&str; 2], usize> = HashMap::new();
    for (pairing, [a, b]) in d.pairings.iter().enumerate() {
        for id in [a, b] {
            if !by_id.contains_key(id.as_str()) {
                return Err(DiagramError::UnknownSurface {
                    pairing,
                    id: id.clone(),
                });
            }
        }
        if a == b {
            return Err(DiagramError::SelfPairing {
                pairing,
                id: a.clone(),
            });
        }
        if by_id[a.as_str()].host == by_id[b.as_str()].host {
            return Err(DiagramError::SameHost {
                pairing,
                host: by_id[a.as_str()].host.clone(),
            });
        }
        let key = if a < b { [a.as_str(), b.as_str()] } else { [b.as_str(), a.as_str()] };
        if let Some(&first) = seen.get(&key) {
            return Err(DiagramError::DuplicatePairing {
                first,
                second: pairing,
            });
        }
        seen.insert(key, pairing);
    }
    let mut counts = vec![0usize; d.pairings.len()];
    for (triple, t) in d.triple_points.iter().enumerate() {
        if let Some(&pairing) = t.iter().find(|&&p| p >= d.pairings.len()) {
            return Err(DiagramError::UnknownPairing { triple, pairing });
        }
        if t.iter().collect::<HashSet<_>>().len() != 3 {
            return Err(DiagramError::RepeatedPairing { triple });
        }
        for &p in t {
            counts[p] += 1;
        }
    }
    let pairings: Vec<PairingCheck> = d
        .pairings
        .iter()
        .zip(&counts)
        .enumerate()
        .map(|(pairing, ([a, b], &count))| {
            let sum = by_id[a.as_str()].self_intersection + by_id[b.as_str()].self_intersection;
            let residual = sum + count as i64;
            PairingCheck {
                pairing,
                surfaces: [a.clone(), b.clone()],
                self_intersection_sum: sum,
                triple_points: count,
                residual,
                valid: residual == 0,
            }
        })
        .collect();
    let violations: Vec<usize> = pairings
        .iter()
        .filter(|p| !p.valid)
        .map(|p| p.pairing)
        .collect();
    Ok(DiagramVerdict {
        valid: violations.is_empty(),
        pairings,
        violations,
    })
}

/// A named example diagram and whether it should validate.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub diagram: SumDiagram,
    pub expect_valid: bool,
}

fn surface(id: &str, host: &str, self_intersection: i64) -> Surface {
    Surface {
        id: id.into(),
        host: host.into(),
        self_intersection,
    }
}

fn pair(a: &str, b: &str) -> [String; 2] {
    [a.into(), b.into()]
}

/// Hand-entered example diagrams. They illustrate the balance rule on small
/// configurations and are not transcriptions of any published figure.
pub fn fixtures() -> Vec<Fixture> {
    // three pairings around one 3-fold point, the third chosen by the caller
    let triangle = |last: (i64, i64)| SumDiagram {
        surfaces: vec![
            surface("A", "M", -2),
            surface("A'", "X", 1),
            surface("B", "M", -2),
            surface("B'", "Y", 1),
            surface("C", "X", last.0),
            surface("C'", "Y", last.1),
        ],
        pairings: vec![pair("A", "A'"), pair("B", "B'"), pair("C", "C'")],
        triple_points: vec![[0, 1, 2]],
    };
    vec![
        Fixture {
            name: "conic-sum",
            diagram: SumDiagram {
                surfaces: vec![surface("S", "M", -4), surface("Q", "CP2", 4)],
                pairings: vec![pair("S", "Q")],
                triple_points: vec![],
            },
            expect_valid: true,
        },
        Fixture {
            name: "one-triple-point",
            diagram: triangle((-2, 1)),
            expect_valid: true,
        },
        Fixture {
            name: "unbalanced-triple-point",
            diagram: triangle((-3, 3)),
            expect_valid: false,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_verdicts() {
        for f in fixtures() {
            let v = validate_threefold_diagram(&f.diagram).unwrap();
            assert_eq!(v.valid, f.expect_valid, "{}", f.name);
        }
        let bad = &fixtures()[2];
        let v = validate_threefold_diagram(&bad.diagram).unwrap();
        assert_eq!(v.violations, vec![2]);
        assert_eq!(v.pairings[2].residual, 1);
        assert_eq!(v.pairings[0].residual, 0);
    }

    #[test]
    fn structural_errors() {
        let base = fixtures()[0].diagram.clone();
        let mut d = base.clone();
        d.pairings[0][1] = "Z".into();
        assert!(matches!(
            validate_threefold_diagram(&d),
            Err(DiagramError::UnknownSurface { .. })
        ));
        let mut d = base.clone();
        d.surfaces[1].host = "M".into();
        assert!(matches!(
            validate_threefold_diagram(&d),
            Err(DiagramError::SameHost { .. })
        ));
        let mut d = base.clone();
        d.pairings.push(pair("Q", "S"));
        assert_eq!(
            validate_threefold_diagram(&d),
            Err(DiagramError::DuplicatePairing {
                first: 0,
                second: 1
            })
        );
        let mut d = base.clone();
        d.triple_points.push([0, 0, 0]);
        assert_eq!(
            validate_threefold_diagram(&d),
            Err(DiagramError::RepeatedPairing { triple: 0 })
        );
        let mut d = base.clone();
        d.triple_points.push([0, 1, 2]);
        assert!(matches!(
            validate_threefold_diagram(&d),
            Err(DiagramError::UnknownPairing { .. })
        ));
        let mut d = base;
        d.surfaces.push(surface("S", "Y", 0));
        assert!(matches!(
            validate_threefold_diagram(&d),
            Err(DiagramError::DuplicateSurface { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let d: SumDiagram = serde_json::from_str(
            r#"{"surfaces":[{"id":"S","host":"M","self_intersection":-4},
                {"id":"Q","host":"CP2","self_intersection":4}],
               "pairings":[["S","Q"]],"triple_points":[]}"#,
        )
        .unwrap();
        assert_eq!(d, fixtures()[0].diagram);
    }
}
