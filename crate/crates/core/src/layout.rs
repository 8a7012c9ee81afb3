//! Netlist of the passive optical setup: PBS grid, plates, and detector units.
//!
//! Step `k` (1-based) holds `k` PBS at positions `−(k−1), −(k−3), …, k−1`.
//! One plate sits on the input beam before the first PBS. Every PBS of step
//! `k − 1` sends a reflected (`H`, towards `x − 1`) and a transmitted (`V`,
//! towards `x + 1`) arm into step `k`, and each arm carries one plate, which
//! gives `2(k − 1)` plates in front of step `k`. The last PBS row feeds one
//! detector unit per output position `−n, −n+2, …, n`.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    /// J-plates and PBS.
    Jplate,
    /// q-plates and PBS: modified Pauli walk with `(|R⟩, |L⟩)`.
    QplateModified,
    /// q-plate plus HWP per plate: Pauli walk with `(|R⟩, |L⟩)`.
    QplatePauli,
}

impl Realization {
    pub fn name(self) -> &'static str {
        match self {
            Realization::Jplate => "jplate",
            Realization::QplateModified => "qplate-modified",
            Realization::QplatePauli => "qplate-pauli",
        }
    }
}

impl std::str::FromStr for Realization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jplate" => Ok(Realization::Jplate),
            "qplate-modified" => Ok(Realization::QplateModified),
            "qplate-pauli" => Ok(Realization::QplatePauli),
            other => Err(Error::InvalidSpec(format!("unknown realization {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCounts {
    pub pbs: u64,
    pub jplates: u64,
    pub hwps: u64,
}

/// `n(n+1)/2` PBS and `n(n−1)+1` plates; the Pauli q-plate build adds one HWP
/// per plate.
pub fn component_counts(n: i64, realization: Realization) -> Result<ComponentCounts> {
    if n < 1 {
        return Err(Error::InvalidSteps(n));
    }
    let n = n as u64;
    let jplates = n * (n - 1) + 1;
    Ok(ComponentCounts {
        pbs: n * (n + 1) / 2,
        jplates,
        hwps: if realization == Realization::QplatePauli {
            jplates
        } else {
            0
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    Pbs,
    JPlate,
    QPlate,
    Hwp,
    DetectorUnit,
}

/// Which PBS output an arm leaves from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arm {
    /// The single input beam.
    Input,
    /// Reflected `H` arm heading to `x − 1`.
    Reflected,
    /// Transmitted `V` arm heading to `x + 1`.
    Transmitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorParts {
    pub slm: bool,
    pub smf: bool,
    pub spd: bool,
}

/// One optical element. Plates and HWPs sit in front of the PBS at
/// `(step_index, position_index)`; detectors use `step_index = n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub kind: ElementKind,
    pub step_index: u64,
    pub position_index: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arm: Option<Arm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detector: Option<DetectorParts>,
}

impl Element {
    fn node_id(&self) -> String {
        let kind = match self.kind {
            ElementKind::Pbs => "pbs",
            ElementKind::JPlate => "jplate",
            ElementKind::QPlate => "qplate",
            ElementKind::Hwp => "hwp",
            ElementKind::DetectorUnit => "det",
        };
        let arm = match self.arm {
            Some(Arm::Reflected) => "_r",
            Some(Arm::Transmitted) => "_t",
            Some(Arm::Input) | None => "",
        };
        let pos = if self.position_index < 0 {
            format!("m{}", -self.position_index)
        } else {
            self.position_index.to_string()
        };
        format!("{kind}_{}_{pos}{arm}", self.step_index)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticalLayout {
    pub steps: u64,
    pub realization: Realization,
    pub counts: ComponentCounts,
    pub elements: Vec<Element>,
}

impl OpticalLayout {
    pub fn count(&self, kind: ElementKind) -> u64 {
        self.elements.iter().filter(|e| e.kind == kind).count() as u64
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Graphviz digraph: one node per element, edges along the light path.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph optical_layout {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for e in &self.elements {
            let (shape, label) = match e.kind {
                ElementKind::Pbs => ("box", "PBS"),
                ElementKind::JPlate => ("ellipse", "J"),
                ElementKind::QPlate => ("ellipse", "q"),
                ElementKind::Hwp => ("diamond", "HWP"),
                ElementKind::DetectorUnit => ("doublecircle", "D"),
            };
            writeln!(
                out,
                "  {} [shape={shape}, label=\"{label} k={} x={}\"];",
                e.node_id(),
                e.step_index,
                e.position_index
            )
            .unwrap();
        }
        for (from, to) in self.edges() {
            writeln!(out, "  {from} -> {to};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    fn edges(&self) -> Vec<(String, String)> {
        let mut edges = Vec::new();
        let find = |kind: ElementKind, step: u64, pos: i64, arm: Option<Arm>| {
            self.elements.iter().find(|e| {
                e.kind == kind && e.step_index == step && e.position_index == pos && e.arm == arm
            })
        };
        let plate_kind = match self.realization {
            Realization::Jplate => ElementKind::JPlate,
            _ => ElementKind::QPlate,
        };
        for e in self.elements.iter().filter(|e| e.kind == plate_kind) {
            // plate (→ hwp) → pbs of the same step
            let pbs = find(ElementKind::Pbs, e.step_index, e.position_index, None).unwrap();
            match find(ElementKind::Hwp, e.step_index, e.position_index, e.arm) {
                Some(h) => {
                    edges.push((e.node_id(), h.node_id()));
                    edges.push((h.node_id(), pbs.node_id()));
                }
                None => edges.push((e.node_id(), pbs.node_id())),
            }
        }
        for p in self.elements.iter().filter(|e| e.kind == ElementKind::Pbs) {
            for (arm, dx) in [(Arm::Reflected, -1), (Arm::Transmitted, 1)] {
                let dest = p.position_index + dx;
                let target = if p.step_index == self.steps {
                    find(ElementKind::DetectorUnit, self.steps + 1, dest, None)
                } else {
                    find(plate_kind, p.step_index + 1, dest, Some(arm))
                };
                edges.push((p.node_id(), target.unwrap().node_id()));
            }
        }
        edges
    }
}

/// Builds the element list for `n` steps.
pub fn emit_layout(n: i64, realization: Realization) -> Result<OpticalLayout> {
    let counts = component_counts(n, realization)?;
    let n = n as u64;
    let plate_kind = match realization {
        Realization::Jplate => ElementKind::JPlate,
        Realization::QplateModified | Realization::QplatePauli => ElementKind::QPlate,
    };
    let with_hwp = realization == Realization::QplatePauli;
    let mut elements = Vec::new();
    let plate = |elements: &mut Vec<Element>, step: u64, pos: i64, arm: Arm| {
        for kind in std::iter::once(plate_kind).chain(with_hwp.then_some(ElementKind::Hwp)) {
            elements.push(Element {
                kind,
                step_index: step,
                position_index: pos,
                arm: Some(arm),
                detector: None,
            });
        }
    };

    for k in 1..=n {
        let positions = row_positions(k);
        if k == 1 {
            plate(&mut elements, 1, 0, Arm::Input);
        } else {
            for &src in &row_positions(k - 1) {
                plate(&mut elements, k, src - 1, Arm::Reflected);
                plate(&mut elements, k, src + 1, Arm::Transmitted);
            }
        }
        for pos in positions {
            elements.push(Element {
                kind: ElementKind::Pbs,
                step_index: k,
                position_index: pos,
                arm: None,
                detector: None,
            });
        }
    }
    for pos in row_positions(n + 1) {
        elements.push(Element {
            kind: ElementKind::DetectorUnit,
            step_index: n + 1,
            position_index: pos,
            arm: None,
            detector: Some(DetectorParts {
                slm: true,
                smf: true,
                spd: true,
            }),
        });
    }
    Ok(OpticalLayout {
        steps: n,
        realization,
        counts,
        elements,
    })
}

/// `−(k−1), −(k−3), …, k−1`.
fn row_positions(k: u64) -> Vec<i64> {
    let k = k as i64;
    (0..k).map(|i| -(k - 1) + 2 * i).collect()
}
