//! Report payloads and rendering. JSON output is canonicalised through
//! `serde_json::Value` (sorted keys), so identical inputs produce
//! byte-identical payloads and parse/re-serialize is the identity. Timing is
//! kept outside the comparison payload.

use serde::Serialize;
use twistfilt_core::filtration::{FiltrationLevel, LemmaPrediction};
use twistfilt_core::lattice::InvariantFactors;
use twistfilt_core::witness::ClaimReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Tool {
            name: "twistfilt",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Envelope written to stdout or `--out`. The comparison payload is
/// everything except `timing_ms`.
#[derive(Serialize)]
pub struct Report<P: Serialize> {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub payload: P,
    pub timing_ms: u128,
}

impl<P: Serialize> Report<P> {
    pub fn new(command: &str, payload: P, timing_ms: u128) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool::default(),
            command: command.to_string(),
            payload,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

#[derive(Serialize, Clone, PartialEq, Eq)]
pub struct InvariantsJson {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub display: String,
}

impl From<&InvariantFactors> for InvariantsJson {
    fn from(f: &InvariantFactors) -> Self {
        InvariantsJson {
            free_rank: f.free_rank,
            torsion: f.torsion.iter().map(|d| d.to_string()).collect(),
            display: f.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct OrbitEntryJson {
    pub weight_index: usize,
    pub size: String,
    pub provenance: String,
}

#[derive(Serialize)]
pub struct PresentationJson {
    pub relation_coefficients: Vec<String>,
    pub relations: Vec<String>,
    pub verified: bool,
    pub extra_relations: Vec<String>,
}

#[derive(Serialize)]
pub struct RingPayload {
    pub n: usize,
    pub isogeny: String,
    pub group_order: usize,
    pub basis: Vec<String>,
    pub orbit_sizes: Vec<OrbitEntryJson>,
    pub relation_hnf: Vec<Vec<String>>,
    pub additive_invariants: InvariantsJson,
    /// Adjoint rings only.
    pub presentation: Option<PresentationJson>,
    /// Half-spin rings only: the single relation coefficient `d`.
    pub halfspin_relation_coefficient: Option<String>,
}

#[derive(Serialize)]
pub struct ProfileJson {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub assignment: String,
    pub d_valuations: [u32; 3],
}

#[derive(Serialize)]
pub struct FactorJson {
    pub class: String,
    pub exponent: u32,
    pub binomial: String,
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub degree: u32,
    pub factors: Vec<FactorJson>,
    pub vector: Vec<String>,
}

#[derive(Serialize)]
pub struct LevelJson {
    pub level: u32,
    pub cap: u32,
    pub stabilized: bool,
    pub hnf_columns: Vec<Vec<String>>,
    pub contributing_generators: Vec<GeneratorJson>,
}

impl From<&FiltrationLevel> for LevelJson {
    fn from(l: &FiltrationLevel) -> Self {
        LevelJson {
            level: l.level,
            cap: l.cap_used,
            stabilized: l.stabilized,
            hnf_columns: l
                .lattice
                .basis_columns()
                .iter()
                .map(|col| col.iter().map(|x| x.to_string()).collect())
                .collect(),
            contributing_generators: l
                .generator_log
                .iter()
                .map(|g| GeneratorJson {
                    degree: g.degree,
                    factors: g
                        .factors
                        .iter()
                        .map(|f| FactorJson {
                            class: f.slot.to_string(),
                            exponent: f.exponent,
                            binomial: f.binomial.to_string(),
                        })
                        .collect(),
                    vector: g.vector.iter().map(|x| x.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct LemmaJson {
    pub predicted_strict: InvariantsJson,
    pub predicted_literal: InvariantsJson,
    pub literal_unmatched_case: bool,
    pub computed: InvariantsJson,
    pub match_strict: bool,
    pub match_literal: bool,
}

impl LemmaJson {
    pub fn build(
        computed: &InvariantFactors,
        strict: &LemmaPrediction,
        literal: &LemmaPrediction,
    ) -> Self {
        LemmaJson {
            predicted_strict: (&strict.factors).into(),
            predicted_literal: (&literal.factors).into(),
            literal_unmatched_case: literal.unmatched_case,
            computed: computed.into(),
            match_strict: *computed == strict.factors,
            match_literal: *computed == literal.factors,
        }
    }
}

#[derive(Serialize)]
pub struct GradedJson {
    pub level: u32,
    pub invariants: InvariantsJson,
}

#[derive(Serialize)]
pub struct FiltrationPayload {
    pub n: usize,
    pub profile: ProfileJson,
    pub levels: Vec<LevelJson>,
    pub graded: Vec<GradedJson>,
    pub lemma: LemmaJson,
}

#[derive(Serialize)]
pub struct CellJson {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub assignment: String,
    pub d_valuations: [u32; 3],
    pub computed: InvariantsJson,
    pub predicted_strict: InvariantsJson,
    pub match_strict: bool,
    pub predicted_literal: InvariantsJson,
    pub match_literal: bool,
    pub literal_unmatched_case: bool,
    /// Marks the `c = 1` cells where the degree-3 cross product
    /// `2^{a+b}·y1y2` collapses the predicted direct sum.
    pub low_index_interaction: bool,
}

#[derive(Serialize)]
pub struct TablePayload {
    pub n_list: Vec<usize>,
    pub cells: Vec<CellJson>,
    pub mismatch_count_strict: usize,
    pub mismatch_count_literal: usize,
    pub strict_mismatch_cells: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct ClaimJson {
    pub id: String,
    pub statement: String,
    pub outcome: String,
    pub detail: String,
}

pub fn claims_json(report: &ClaimReport) -> Vec<ClaimJson> {
    report
        .claims
        .iter()
        .map(|c| ClaimJson {
            id: c.id.clone(),
            statement: c.statement.clone(),
            outcome: c.outcome.to_string(),
            detail: c.detail.clone(),
        })
        .collect()
}

#[derive(Serialize)]
pub struct WitnessPayload {
    pub n: usize,
    pub profile: ProfileJson,
    pub convention: String,
    pub mu_split_form: String,
    pub mu_q_form: Vec<String>,
    pub claims: Vec<ClaimJson>,
    pub all_passed: bool,
    /// Verdict of the paper-convention run (drives the exit code even when a
    /// comparison convention was requested).
    pub paper_convention_all_passed: bool,
}
