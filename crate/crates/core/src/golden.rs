//! Embedded reference chains: constructed sets, their reductions, exact
//! multiplicities, and the collision representations each stage exhibits.
//!
//! Each data file under `data/` records one construction — field presentation
//! and primitive element included — followed by its reduction stages.  Every
//! stage carries the verified exact multiplicity `exact_g`, the complete list
//! of targets attaining it (when above 1), and complete representation lists
//! for selected collision targets.  The loader can rebuild every stage from
//! the stored parameters, so the files double as end-to-end fixtures.

use serde::Deserialize;

use crate::algebra::arith::prime_power_parts;
use crate::algebra::FieldDescriptor;
use crate::constructions::BhSet;
use crate::error::{Error, Result};
use crate::reduction::{bc_g, gt_g, ruzsa_g};

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenCollision {
    pub target: u64,
    /// Complete, lexicographically sorted list of nondecreasing h-tuples
    /// summing to `target`.
    pub reps: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenStage {
    #[serde(rename = "modulus_N")]
    pub modulus_n: u64,
    /// Reduction divisor relative to the base stage; 1 marks the base itself.
    pub divisor: u64,
    pub claimed_g: u64,
    pub exact_g: u64,
    pub elements: Vec<u64>,
    /// Every target attaining `exact_g`, listed only when `exact_g > 1`.
    #[serde(default)]
    pub max_targets: Vec<u64>,
    #[serde(default)]
    pub collisions: Vec<GoldenCollision>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenChain {
    pub name: String,
    /// One of `bose-chowla`, `ruzsa`, `gomez-trujillo`.
    pub construction: String,
    /// q for bose-chowla, p for ruzsa and gomez-trujillo.
    pub q: u64,
    pub h: u32,
    /// Coefficients of the field modulus; empty for ruzsa.
    #[serde(default)]
    pub modulus: Vec<u64>,
    /// Coefficients of the primitive element; a single residue for ruzsa.
    pub theta: Vec<u64>,
    pub stages: Vec<GoldenStage>,
    #[serde(default)]
    pub notes: Vec<String>,
}

const FILES: [&str; 5] = [
    include_str!("data/bose_chowla_7_3_theta.json"),
    include_str!("data/bose_chowla_7_3_alpha.json"),
    include_str!("data/bose_chowla_7_4_beta.json"),
    include_str!("data/ruzsa_11.json"),
    include_str!("data/gt_5_5.json"),
];

/// All embedded reference chains.
pub fn chains() -> Vec<GoldenChain> {
    FILES
        .iter()
        .map(|s| serde_json::from_str(s).expect("embedded chain data is well-formed"))
        .collect()
}

impl GoldenChain {
    /// The field the construction lives over, when it stores one.
    pub fn field(&self) -> Result<Option<FieldDescriptor>> {
        if self.modulus.is_empty() {
            return Ok(None);
        }
        let (p, _) = prime_power_parts(self.q)?;
        let n = self.modulus.len() - 1;
        FieldDescriptor::quotient_ring(p, n, self.modulus.clone()).map(Some)
    }

    /// Rebuilds a stage from the stored parameters through the construction
    /// pipeline; a divisor of 1 yields the unreduced base set.
    pub fn rebuild_stage(&self, stage: &GoldenStage) -> Result<BhSet> {
        match self.construction.as_str() {
            "bose-chowla" => {
                let field = self.field()?.expect("bose-chowla stores a modulus");
                let theta = field.element(&self.theta);
                bc_g(&field, self.q, self.h, &theta, stage.divisor)
            }
            "ruzsa" => ruzsa_g(self.q, self.theta[0], stage.divisor),
            "gomez-trujillo" => {
                let field = self.field()?.expect("gomez-trujillo stores a modulus");
                let theta = field.element(&self.theta);
                gt_g(&field, self.q, self.h, &theta, stage.divisor)
            }
            other => Err(Error::InvalidParameter(format!("unknown construction '{other}'"))),
        }
    }

    /// The base (divisor 1) stage.
    pub fn base_stage(&self) -> &GoldenStage {
        &self.stages[0]
    }
}
