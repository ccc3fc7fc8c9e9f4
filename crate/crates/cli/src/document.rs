//! JSON wire format for stacky fans and stacky polytopes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use stacky::group::from_presentation;
use stacky::linalg::{IntMatrix, Rational};
use stacky::stacky::validate_stacky_fan;
use stacky::{Cone, FgAbGroup, StackyFan, StackyPolytope};

use crate::error::{CliError, ViolationRecord};

/// An arbitrary-precision integer. Accepts JSON numbers or decimal strings;
/// emits a number when it fits in `i64` and a string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WireInt(pub BigInt);

impl From<BigInt> for WireInt {
    fn from(x: BigInt) -> Self {
        WireInt(x)
    }
}

impl From<i64> for WireInt {
    fn from(x: i64) -> Self {
        WireInt(BigInt::from(x))
    }
}

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = WireInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string of decimal digits")
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<WireInt, E> {
                Ok(WireInt(BigInt::from(x)))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<WireInt, E> {
                Ok(WireInt(BigInt::from(x)))
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> Result<WireInt, E> {
                Err(E::custom(format!("{x} is not an integer (write large integers as strings)")))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<WireInt, E> {
                BigInt::from_str(s.trim())
                    .map(WireInt)
                    .map_err(|_| E::custom(format!("{s:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<WireInt>,
}

impl GroupSpec {
    pub fn of(group: &FgAbGroup) -> Self {
        GroupSpec {
            rank: group.rank(),
            torsion: group.torsion().iter().cloned().map(WireInt).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackyFanDocument {
    pub group: GroupSpec,
    /// One column per ray: `rank + |torsion|` coordinates of `β(e_j)`.
    pub beta: Vec<Vec<WireInt>>,
    /// Maximal cones as 0-based ray indices.
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<String>>,
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// A document turned into library objects.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub fan: StackyFan,
    pub polytope: Option<StackyPolytope>,
    /// Notes about canonicalization applied to the input.
    pub warnings: Vec<String>,
}

impl StackyFanDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_fan(fan: &StackyFan, offsets: Option<&[Rational]>) -> Self {
        StackyFanDocument {
            group: GroupSpec::of(fan.group()),
            beta: fan.columns().into_iter().map(|c| c.into_iter().map(WireInt).collect()).collect(),
            max_cones: fan.fan().max_cones().iter().map(|c| c.rays().to_vec()).collect(),
            offsets: offsets.map(|cs| cs.iter().map(format_rational).collect()),
        }
    }

    pub fn from_polytope(sp: &StackyPolytope) -> Result<Self, CliError> {
        let fan = sp.normal_fan().map_err(|e| CliError::invalid_one("polytope", e.to_string()))?;
        Ok(Self::from_fan(&fan, Some(sp.offsets())))
    }

    /// Validates the document and builds the stacky fan (and polytope, when
    /// offsets are present).
    ///
    /// A torsion list that is not a divisibility chain is put in invariant
    /// factor form; torsion coordinates of `β` are carried along and the
    /// free coordinates are untouched.
    pub fn load(&self) -> Result<Loaded, CliError> {
        let mut warnings = Vec::new();
        let rank = self.group.rank;
        let raw: Vec<BigInt> = self.group.torsion.iter().map(|t| t.0.clone()).collect();
        if let Some(k) = raw.iter().position(|t| !t.is_positive()) {
            return Err(CliError::invalid_one(
                "torsion",
                format!("torsion entry {k} is {}, expected a positive integer", raw[k]),
            ));
        }
        let dim = rank + raw.len();
        let mut shape = Vec::new();
        for (j, col) in self.beta.iter().enumerate() {
            if col.len() != dim {
                shape.push(ViolationRecord::new(
                    "column_length",
                    format!("column {j} has {} entries, expected {dim}", col.len()),
                    vec![],
                    vec![j],
                ));
            }
        }
        if !shape.is_empty() {
            return Err(CliError::Invalid(shape));
        }

        let (group, columns) = canonical_group(rank, &raw, &self.beta, &mut warnings);
        let cones: Vec<Cone> = self.max_cones.iter().map(|c| Cone::new(c.clone())).collect();
        let violations = validate_stacky_fan(&group, &columns, &cones);
        if !violations.is_empty() {
            return Err(CliError::Invalid(violations.iter().map(ViolationRecord::from_violation).collect()));
        }
        let fan = StackyFan::new(group.clone(), columns.clone(), cones).expect("validated above");

        let polytope = match &self.offsets {
            None => None,
            Some(strings) => {
                let mut offsets = Vec::with_capacity(strings.len());
                for s in strings {
                    offsets.push(parse_rational(s).ok_or_else(|| CliError::Parse(format!("bad offset {s:?}, expected \"p/q\"")))?);
                }
                let sp = StackyPolytope::new(group, columns, offsets)
                    .map_err(|e| CliError::invalid_one("polytope", e.to_string()))?;
                let from_vertices: Vec<Cone> = sp.polytope().normal_cones();
                let mut sorted = from_vertices.clone();
                sorted.sort();
                if sorted != fan.fan().max_cones() {
                    return Err(CliError::invalid_one(
                        "normal_fan",
                        "max_cones do not match the normal fan of the polytope".to_string(),
                    ));
                }
                Some(sp)
            }
        };
        Ok(Loaded { fan, polytope, warnings })
    }
}

fn canonical_group(
    rank: usize,
    torsion: &[BigInt],
    beta: &[Vec<WireInt>],
    warnings: &mut Vec<String>,
) -> (FgAbGroup, Vec<Vec<BigInt>>) {
    let columns: Vec<Vec<BigInt>> = beta.iter().map(|c| c.iter().map(|x| x.0.clone()).collect()).collect();
    if let Ok(group) = FgAbGroup::new(rank, torsion.to_vec()) {
        let columns = columns.iter().map(|c| group.normalize(c)).collect();
        return (group, columns);
    }
    let t = torsion.len();
    let presented = from_presentation(t, &IntMatrix::diagonal(t, t, torsion));
    let factors = presented.group.torsion().to_vec();
    let group = FgAbGroup::new(rank, factors).expect("Smith form gives a divisibility chain");
    warnings.push(format!(
        "torsion [{}] rewritten in invariant factor form [{}]",
        torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        group.torsion().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    ));
    let columns = columns
        .iter()
        .map(|c| {
            let mut out = c[..rank].to_vec();
            out.extend(presented.projection.apply(&c[rank..]));
            group.normalize(&out)
        })
        .collect();
    (group, columns)
}

/// `Z^r + Z/t1 + ...` notation, `0` for the trivial group.
pub fn group_notation(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().filter(|t| !t.is_one()).map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
