//! Parameter sweeps over the two labelled families.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;

use crate::document::StackyFanDocument;
use crate::error::CliError;
use crate::gallery;

/// Upper bound on the number of rows a single sweep may produce.
pub const MAX_ROWS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    ShearedSimplex,
    Trapezoid,
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "sheared-simplex" | "sheared" => Ok(Family::ShearedSimplex),
            "trapezoid" => Ok(Family::Trapezoid),
            other => Err(CliError::Usage(format!(
                "unknown family {other:?}; expected sheared-simplex or trapezoid"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ShearedSimplex => "sheared-simplex",
            Family::Trapezoid => "trapezoid",
        })
    }
}

/// Values for a parameter vector: either every coordinate ranges over
/// `lo..=hi`, or one fixed tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSpec {
    Range(i64, i64),
    Tuple(Vec<i64>),
}

impl FromStr for ParamSpec {
    type Err = CliError;

    /// `"1..4"` (inclusive) or `"1,2,3"`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad parameter {s:?}: expected lo..hi or a comma-separated tuple"));
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo < 1 || hi < lo {
                return Err(CliError::Usage(format!("bad range {s:?}: need 1 <= lo <= hi")));
            }
            return Ok(ParamSpec::Range(lo, hi));
        }
        let v: Vec<i64> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        if v.iter().any(|&x| x < 1) {
            return Err(CliError::Usage(format!("bad tuple {s:?}: entries must be positive")));
        }
        Ok(ParamSpec::Tuple(v))
    }
}

impl ParamSpec {
    fn expand(&self, len: usize, name: &str) -> Result<Vec<Vec<i64>>, CliError> {
        match self {
            ParamSpec::Tuple(v) if v.len() == len => Ok(vec![v.clone()]),
            ParamSpec::Tuple(v) => Err(CliError::Usage(format!("--{name} needs {len} values, got {}", v.len()))),
            ParamSpec::Range(lo, hi) => {
                let count = usize::try_from(hi - lo + 1).unwrap_or(usize::MAX);
                if count.checked_pow(len as u32).map_or(true, |c| c > MAX_ROWS) {
                    return Err(CliError::Usage(format!("--{name} range is too large")));
                }
                Ok((0..len).map(|_| *lo..=*hi).multi_cartesian_product().collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRequest {
    pub family: Family,
    /// Only used by the sheared simplex family.
    pub dim: usize,
    pub a: ParamSpec,
    pub m: ParamSpec,
    /// Skip non-primitive `a`.
    pub primitive_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub a: Vec<i64>,
    pub m: Vec<i64>,
    pub global_quotient: bool,
    pub pi1_order: BigInt,
}

pub fn document_for(family: Family, a: &[i64], m: &[i64]) -> Result<StackyFanDocument, CliError> {
    match family {
        Family::ShearedSimplex => gallery::sheared_simplex(a, m),
        Family::Trapezoid => gallery::trapezoid(a, m),
    }
}

pub fn run(req: &SweepRequest) -> Result<Vec<SweepRow>, CliError> {
    let (a_len, m_len) = match req.family {
        Family::ShearedSimplex => (req.dim, req.dim + 1),
        Family::Trapezoid => (2, 4),
    };
    if a_len == 0 {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    let avals = req.a.expand(a_len, "a")?;
    let mvals = req.m.expand(m_len, "m")?;
    if avals.len().saturating_mul(mvals.len()) > MAX_ROWS {
        return Err(CliError::Usage(format!("sweep would produce more than {MAX_ROWS} rows")));
    }
    let mut rows = Vec::new();
    for a in avals {
        if req.primitive_only && a.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            continue;
        }
        for m in &mvals {
            let loaded = document_for(req.family, &a, m)?.load()?;
            let fan = &loaded.fan;
            let pi1_order = fan
                .fundamental_group()
                .order()
                .finite()
                .cloned()
                .ok_or_else(|| CliError::Consistency("fundamental group of a complete fan is infinite".into()))?;
            rows.push(SweepRow {
                a: a.clone(),
                m: m.clone(),
                global_quotient: fan.is_global_quotient().global_quotient,
                pi1_order,
            });
        }
    }
    Ok(rows)
}

fn tuple(v: &[i64]) -> String {
    format!("({})", v.iter().join(","))
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("a,m,global_quotient,pi1_order\n");
    for r in rows {
        out.push_str(&format!("\"{}\",\"{}\",{},{}\n", r.a.iter().join(","), r.m.iter().join(","), r.global_quotient, r.pi1_order));
    }
    out
}

pub fn render_table(rows: &[SweepRow]) -> String {
    let mut out = format!("{:<14} {:<18} {:<16} {}\n", "a", "m", "global quotient", "|pi1|");
    for r in rows {
        out.push_str(&format!(
            "{:<14} {:<18} {:<16} {}\n",
            tuple(&r.a),
            tuple(&r.m),
            if r.global_quotient { "yes" } else { "no" },
            r.pi1_order
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("1..4".parse::<ParamSpec>().unwrap(), ParamSpec::Range(1, 4));
        assert_eq!("1..=4".parse::<ParamSpec>().unwrap(), ParamSpec::Range(1, 4));
        assert_eq!("1,1,2".parse::<ParamSpec>().unwrap(), ParamSpec::Tuple(vec![1, 1, 2]));
        assert!("4..1".parse::<ParamSpec>().is_err());
        assert!("0..2".parse::<ParamSpec>().is_err());
        assert!("x".parse::<ParamSpec>().is_err());
    }

    #[test]
    fn spec_rows() {
        let req = |m: Vec<i64>| SweepRequest {
            family: Family::ShearedSimplex,
            dim: 2,
            a: ParamSpec::Tuple(vec![1, 2]),
            m: ParamSpec::Tuple(m),
            primitive_only: true,
        };
        assert!(run(&req(vec![1, 1, 2])).unwrap()[0].global_quotient);
        assert!(!run(&req(vec![1, 1, 1])).unwrap()[0].global_quotient);
        let t = run(&SweepRequest {
            family: Family::Trapezoid,
            dim: 2,
            a: ParamSpec::Tuple(vec![1, 2]),
            m: ParamSpec::Tuple(vec![1, 1, 1, 1]),
            primitive_only: false,
        })
        .unwrap();
        assert!(t[0].global_quotient);
    }

    #[test]
    fn rejects_tuple_of_wrong_length() {
        let req = SweepRequest {
            family: Family::Trapezoid,
            dim: 2,
            a: ParamSpec::Tuple(vec![1, 2, 3]),
            m: ParamSpec::Range(1, 2),
            primitive_only: false,
        };
        assert!(run(&req).is_err());
    }
}
