//! Built-in example documents.

use itertools::Itertools;
use num_bigint::BigInt;

use crate::document::{GroupSpec, StackyFanDocument, WireInt};
use crate::error::CliError;

/// Parameters for the two parametrized families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: Option<Vec<i64>>,
    pub m: Option<Vec<i64>>,
}

pub struct Entry {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn(&FamilyParams) -> Result<StackyFanDocument, CliError>,
}

impl Entry {
    pub fn build(&self, params: &FamilyParams) -> Result<StackyFanDocument, CliError> {
        (self.build)(params)
    }
}

fn doc(rank: usize, torsion: &[i64], beta: &[&[i64]], cones: &[&[usize]], offsets: &[&str]) -> StackyFanDocument {
    StackyFanDocument {
        group: GroupSpec {
            rank,
            torsion: torsion.iter().map(|&t| WireInt::from(t)).collect(),
        },
        beta: beta.iter().map(|c| c.iter().map(|&x| WireInt::from(x)).collect()).collect(),
        max_cones: cones.iter().map(|c| c.to_vec()).collect(),
        offsets: (!offsets.is_empty()).then(|| offsets.iter().map(|s| s.to_string()).collect()),
    }
}

fn fixed(params: &FamilyParams, name: &str) -> Result<(), CliError> {
    if params.a.is_some() || params.m.is_some() {
        return Err(CliError::Usage(format!("gallery entry {name} takes no parameters")));
    }
    Ok(())
}

fn positive(name: &str, v: &[i64], len: usize) -> Result<(), CliError> {
    if v.len() != len {
        return Err(CliError::Usage(format!("--{name} needs {len} values, got {}", v.len())));
    }
    if v.iter().any(|&x| x < 1) {
        return Err(CliError::Usage(format!("--{name} values must be positive")));
    }
    Ok(())
}

/// `β(f_0) = -m_0 a`, `β(f_j) = m_j e_j`, every `d`-subset of rays a cone,
/// offsets `(1, 0, ..., 0)`.
pub fn sheared_simplex(a: &[i64], m: &[i64]) -> Result<StackyFanDocument, CliError> {
    let d = a.len();
    if d == 0 {
        return Err(CliError::Usage("--a must have at least one entry".into()));
    }
    positive("a", a, d)?;
    positive("m", m, d + 1)?;
    let mut beta = vec![a.iter().map(|&x| WireInt(BigInt::from(-m[0]) * x)).collect::<Vec<_>>()];
    for j in 0..d {
        beta.push((0..d).map(|i| WireInt::from(if i == j { m[j + 1] } else { 0 })).collect());
    }
    let mut offsets = vec!["0/1".to_string(); d + 1];
    offsets[0] = "1/1".to_string();
    Ok(StackyFanDocument {
        group: GroupSpec { rank: d, torsion: vec![] },
        beta,
        max_cones: (0..=d).combinations(d).collect(),
        offsets: Some(offsets),
    })
}

/// Rays `-a, e_2, e_1, -e_2` with labels `m_1..m_4`, as a right trapezoid
/// `{a·x ≤ a_2 + 1, 0 ≤ y ≤ 1, x ≥ 0}`.
pub fn trapezoid(a: &[i64], m: &[i64]) -> Result<StackyFanDocument, CliError> {
    positive("a", a, 2)?;
    positive("m", m, 4)?;
    let beta = [
        [-m[0] * a[0], -m[0] * a[1]],
        [0, m[1]],
        [m[2], 0],
        [0, -m[3]],
    ];
    let offsets = [m[0] * (a[1] + 1), 0, 0, m[3]].map(|c| format!("{c}/1"));
    Ok(StackyFanDocument {
        group: GroupSpec { rank: 2, torsion: vec![] },
        beta: beta.iter().map(|c| c.iter().map(|&x| WireInt::from(x)).collect()).collect(),
        max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        offsets: Some(offsets.to_vec()),
    })
}

pub fn entries() -> Vec<Entry> {
    vec![
        Entry {
            name: "p1",
            summary: "projective line",
            build: |p| fixed(p, "p1").map(|_| doc(1, &[], &[&[1], &[-1]], &[&[0], &[1]], &["0/1", "1/1"])),
        },
        Entry {
            name: "p2",
            summary: "projective plane",
            build: |p| {
                fixed(p, "p2").map(|_| {
                    doc(2, &[], &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]], &["0/1", "0/1", "1/1"])
                })
            },
        },
        Entry {
            name: "p1xp1",
            summary: "product of two projective lines (unit square)",
            build: |p| {
                fixed(p, "p1xp1").map(|_| {
                    doc(
                        2,
                        &[],
                        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
                        &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
                        &["0/1", "0/1", "1/1", "1/1"],
                    )
                })
            },
        },
        Entry {
            name: "wps-1-2",
            summary: "weighted projective line P(1,2)",
            build: |p| fixed(p, "wps-1-2").map(|_| doc(1, &[], &[&[1], &[-2]], &[&[0], &[1]], &["0/1", "2/1"])),
        },
        Entry {
            name: "wps-2-2",
            summary: "weighted projective line P(2,2), generic Z/2 stabilizer",
            build: |p| fixed(p, "wps-2-2").map(|_| doc(1, &[], &[&[2], &[-2]], &[&[0], &[1]], &["0/1", "2/1"])),
        },
        Entry {
            name: "sheared-a1-2-m112",
            summary: "sheared simplex a=(1,2), labels (1,1,2)",
            build: |p| fixed(p, "sheared-a1-2-m112").and_then(|_| sheared_simplex(&[1, 2], &[1, 1, 2])),
        },
        Entry {
            name: "sheared-simplex",
            summary: "sheared simplex family, --a a_1,..,a_d --m m_0,..,m_d (default a=(1,2), m=(1,1,2))",
            build: |p| {
                let a = p.a.clone().unwrap_or_else(|| vec![1, 2]);
                let m = p.m.clone().unwrap_or_else(|| {
                    let mut m = vec![1; a.len() + 1];
                    if a.len() == 2 {
                        m[2] = 2;
                    }
                    m
                });
                sheared_simplex(&a, &m)
            },
        },
        Entry {
            name: "trapezoid",
            summary: "labelled right trapezoid, --a a_1,a_2 --m m_1,..,m_4 (default a=(1,2), m=(1,1,1,1))",
            build: |p| {
                let a = p.a.clone().unwrap_or_else(|| vec![1, 2]);
                let m = p.m.clone().unwrap_or_else(|| vec![1, 1, 1, 1]);
                trapezoid(&a, &m)
            },
        },
        Entry {
            name: "z2-example",
            summary: "N = Z + Z/2, beta(a,b) = (2a-2b, a+b mod 2)",
            build: |p| {
                fixed(p, "z2-example").map(|_| doc(1, &[2], &[&[2, 1], &[-2, 1]], &[&[0], &[1]], &["1/1", "1/1"]))
            },
        },
        Entry {
            name: "z4-example",
            summary: "N = Z + Z/4, beta(a,b) = (a-2b, a+2b mod 4)",
            build: |p| {
                fixed(p, "z4-example").map(|_| doc(1, &[4], &[&[1, 1], &[-2, 2]], &[&[0], &[1]], &["0/1", "2/1"]))
            },
        },
        Entry {
            name: "surjective-torsion",
            summary: "N = Z + Z/2 with beta surjective",
            build: |p| {
                fixed(p, "surjective-torsion")
                    .map(|_| doc(1, &[2], &[&[1, 0], &[-1, 1]], &[&[0], &[1]], &["0/1", "1/1"]))
            },
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn get(name: &str, params: &FamilyParams) -> Result<StackyFanDocument, CliError> {
    match entries().into_iter().find(|e| e.name == name) {
        Some(e) => e.build(params),
        None => Err(CliError::Usage(format!(
            "unknown gallery entry {name:?}; available: {}",
            names().join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for e in entries() {
            let d = e.build(&FamilyParams::default()).unwrap();
            let loaded = d.load().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(loaded.polytope.is_some(), "{}", e.name);
        }
        assert!(names().len() >= 8);
    }

    #[test]
    fn trapezoid_beta() {
        let d = get("trapezoid", &FamilyParams { a: Some(vec![1, 2]), m: Some(vec![2, 3, 5, 7]) }).unwrap();
        let rows: Vec<Vec<i64>> = (0..2)
            .map(|i| d.beta.iter().map(|c| i64::try_from(&c[i].0).unwrap()).collect())
            .collect();
        assert_eq!(rows, vec![vec![-2, 0, 5, 0], vec![-4, 3, 0, -7]]);
    }

    #[test]
    fn unknown_name_lists_entries() {
        let err = get("nope", &FamilyParams::default()).unwrap_err();
        assert!(err.to_string().contains("z4-example"));
        assert!(get("p2", &FamilyParams { a: Some(vec![1]), m: None }).is_err());
    }
}
