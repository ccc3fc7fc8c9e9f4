//! Analysis reports: a serializable document plus a pretty renderer.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use stacky::polytope::PolytopeError;
use stacky::{FgAbGroup, Order, StackyPolytope};

use crate::document::{format_rational, group_notation, GroupSpec, Loaded, StackyFanDocument, WireInt};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGroupSection {
    pub group: GroupSpec,
    pub expected_rank: usize,
    /// `Tor DG(β)` and `coker β` have the same invariant factors.
    pub tor_duality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    /// 0-based ray indices.
    pub cone: Vec<usize>,
    pub isotropy: Vec<WireInt>,
    pub inertia_injective: bool,
    pub kernel_order: WireInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub cone: Vec<usize>,
    pub ray: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSection {
    pub vertices: Vec<Vec<String>>,
    pub volume: String,
    pub cover_volume: String,
    /// `vol(Δ') / vol(Δ)` in dual-basis coordinates.
    pub euclidean_ratio: String,
    /// Same ratio with each volume divided by the order of its torsion.
    pub ratio: String,
    /// `|coker β|`, cross-checked against `ratio`.
    pub symplectic_volume_ratio: WireInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub group: GroupSpec,
    pub pi1: GroupSpec,
    pub pi1_order: Option<WireInt>,
    pub dual_group: DualGroupSection,
    pub global_stabilizer: GroupSpec,
    pub cones: Vec<ConeRecord>,
    pub minimal_nonfaces: Vec<Vec<usize>>,
    pub complete: bool,
    pub is_smooth: bool,
    pub smooth_witness: Option<Vec<usize>>,
    pub is_global_quotient: bool,
    pub global_quotient_witness: Option<Witness>,
    pub all_inertia_injective: bool,
    pub universal_cover: StackyFanDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeSection>,
}

fn polytope_section(sp: &StackyPolytope) -> Result<PolytopeSection, CliError> {
    let consistency = |e: PolytopeError| match e {
        PolytopeError::VolumeMismatch(msg) => CliError::Consistency(msg),
        other => CliError::invalid_one("polytope", other.to_string()),
    };
    let cover = sp.cover_polytope().map_err(consistency)?;
    let symplectic = sp.symplectic_volume_ratio().map_err(consistency)?;
    Ok(PolytopeSection {
        vertices: sp.polytope().vertices().iter().map(|v| v.iter().map(format_rational).collect()).collect(),
        volume: format_rational(&sp.volume()),
        cover_volume: format_rational(&cover.cover.volume()),
        euclidean_ratio: format_rational(&cover.euclidean_ratio),
        ratio: format_rational(&cover.ratio),
        symplectic_volume_ratio: WireInt(symplectic),
    })
}

impl ReportDocument {
    pub fn build(loaded: &Loaded) -> Result<Self, CliError> {
        let fan = &loaded.fan;
        let r = fan.analysis_report();
        let cover_offsets = loaded.polytope.as_ref().map(|sp| sp.offsets());
        let polytope = loaded.polytope.as_ref().map(polytope_section).transpose()?;
        // the library computes these two independently; they must agree
        if r.all_inertia_injective() != r.global_quotient.global_quotient {
            return Err(CliError::Consistency(
                "inertia injectivity disagrees with the global quotient test".into(),
            ));
        }
        Ok(ReportDocument {
            valid: true,
            warnings: loaded.warnings.clone(),
            group: GroupSpec::of(fan.group()),
            pi1: GroupSpec::of(&r.fundamental_group),
            pi1_order: match r.fundamental_group.order() {
                Order::Finite(k) => Some(WireInt(k)),
                Order::Infinite => None,
            },
            dual_group: DualGroupSection {
                group: GroupSpec::of(&r.dual_group.group),
                expected_rank: r.dual_group.expected_rank,
                tor_duality: r.tor_duality,
            },
            global_stabilizer: GroupSpec::of(&r.global_stabilizer),
            cones: r
                .cones
                .iter()
                .map(|c| ConeRecord {
                    cone: c.cone.rays().to_vec(),
                    isotropy: c.isotropy.torsion().iter().cloned().map(WireInt).collect(),
                    inertia_injective: c.injective,
                    kernel_order: WireInt(c.kernel_order.clone()),
                })
                .collect(),
            minimal_nonfaces: r.minimal_nonfaces.iter().map(|c| c.rays().to_vec()).collect(),
            complete: r.complete,
            is_smooth: r.smoothness.smooth,
            smooth_witness: r.smoothness.witness.as_ref().map(|c| c.rays().to_vec()),
            is_global_quotient: r.global_quotient.global_quotient,
            global_quotient_witness: r
                .global_quotient
                .witness
                .as_ref()
                .map(|(c, j)| Witness { cone: c.rays().to_vec(), ray: *j }),
            all_inertia_injective: r.all_inertia_injective(),
            universal_cover: StackyFanDocument::from_fan(&r.cover, cover_offsets),
            polytope,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// Minimal ANSI styling, off unless requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    /// `STACKY_COLOR=0|off|never` disables color, `always` forces it,
    /// otherwise color follows whether stdout is a terminal.
    pub fn from_env(is_tty: bool) -> Self {
        let color = match std::env::var("STACKY_COLOR").ok().as_deref().map(str::to_ascii_lowercase).as_deref() {
            Some("0") | Some("off") | Some("never") | Some("false") => false,
            Some("always") | Some("1") | Some("on") => true,
            _ => is_tty,
        };
        Style { color }
    }

    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn bold(&self, s: &str) -> String {
        self.paint("1", s)
    }

    fn yes_no(&self, b: bool) -> String {
        if b {
            self.paint("32", "yes")
        } else {
            self.paint("31", "no")
        }
    }
}

fn spec_notation(g: &GroupSpec) -> String {
    let t: Vec<BigInt> = g.torsion.iter().map(|x| x.0.clone()).collect();
    group_notation(g.rank, &t)
}

fn one_based(c: &[usize]) -> String {
    format!("{{{}}}", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
}

/// Human-readable report with 1-based ray indices.
pub fn render_pretty(r: &ReportDocument, style: Style) -> String {
    let mut out = String::new();
    let w = &mut out;
    for warning in &r.warnings {
        let _ = writeln!(w, "warning: {warning}");
    }
    let _ = writeln!(w, "{} {}", style.bold("N:"), spec_notation(&r.group));
    let _ = writeln!(w, "{} {}", style.bold("fundamental group:"), spec_notation(&r.pi1));
    if let Some(k) = &r.pi1_order {
        let _ = writeln!(w, "  order {}", k.0);
    }
    let _ = writeln!(
        w,
        "{} {} (rank {} expected, Tor duality {})",
        style.bold("dual group DG(beta):"),
        spec_notation(&r.dual_group.group),
        r.dual_group.expected_rank,
        style.yes_no(r.dual_group.tor_duality)
    );
    let _ = writeln!(w, "{} {}", style.bold("global stabilizer:"), spec_notation(&r.global_stabilizer));
    let _ = writeln!(w, "{}", style.bold("cones:"));
    for c in &r.cones {
        let iso = GroupSpec { rank: 0, torsion: c.isotropy.clone() };
        let cone = if c.cone.is_empty() { "{}".to_string() } else { one_based(&c.cone) };
        let _ = writeln!(
            w,
            "  {cone:<12} isotropy {:<12} inertia injective {} (kernel order {})",
            spec_notation(&iso),
            style.yes_no(c.inertia_injective),
            c.kernel_order.0
        );
    }
    let mnf: Vec<String> = r.minimal_nonfaces.iter().map(|c| one_based(c)).collect();
    let _ = writeln!(w, "{} {}", style.bold("minimal non-faces:"), mnf.join(" "));
    let _ = writeln!(w, "{} {}", style.bold("complete:"), style.yes_no(r.complete));
    let _ = write!(w, "{} {}", style.bold("smooth:"), style.yes_no(r.is_smooth));
    if let Some(c) = &r.smooth_witness {
        let _ = write!(w, " (N_sigma != N at {})", one_based(c));
    }
    let _ = writeln!(w);
    let _ = write!(w, "{} {}", style.bold("global quotient:"), style.yes_no(r.is_global_quotient));
    if let Some(x) = &r.global_quotient_witness {
        let _ = write!(w, " (beta(e_{}) not in N_sigma for sigma = {})", x.ray + 1, one_based(&x.cone));
    }
    let _ = writeln!(w);
    let cover = &r.universal_cover;
    let cols: Vec<String> = cover
        .beta
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let _ = writeln!(
        w,
        "{} N' = {}, beta' = [{}]",
        style.bold("universal cover:"),
        spec_notation(&cover.group),
        cols.join(" ")
    );
    if let Some(p) = &r.polytope {
        let _ = writeln!(w, "{}", style.bold("polytope:"));
        for v in &p.vertices {
            let _ = writeln!(w, "  vertex ({})", v.iter().map(|q| trim_one(q)).collect::<Vec<_>>().join(", "));
        }
        let _ = writeln!(w, "  volume {}", trim_one(&p.volume));
        let _ = writeln!(w, "  cover volume {}", trim_one(&p.cover_volume));
        let _ = writeln!(w, "  cover/base volume {}", trim_one(&p.euclidean_ratio));
        let _ = writeln!(w, "  torsion-normalized ratio {}", trim_one(&p.ratio));
        let _ = writeln!(w, "  |coker beta| {}", p.symplectic_volume_ratio.0);
    }
    out
}

fn trim_one(q: &str) -> &str {
    q.strip_suffix("/1").unwrap_or(q)
}

/// The group in `Z^r + Z/t` notation.
pub fn notation(g: &FgAbGroup) -> String {
    group_notation(g.rank(), g.torsion())
}
