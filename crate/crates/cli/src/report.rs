//! The `h1loc` report: cohomology of a spec-file module plus verdicts on a
//! supplied cocycle.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Duration;

use hloc::cohomology::{is_coboundary, satisfies_local_conditions, Cohomology};
use hloc::{Cocycle, CohomologyResult, GModule};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub order: u64,
    /// Values in group enumeration order.
    pub table: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub is_cocycle: bool,
    pub locally_trivial: Option<bool>,
    pub is_coboundary: Option<bool>,
    /// Local witnesses `m_g` with `Z_g = g m_g - m_g`, when they all exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: String,
    pub modulus: u64,
    pub rank: usize,
    pub group_order: usize,
    pub elements: Vec<Vec<u64>>,
    pub cocycles: String,
    pub coboundaries: String,
    pub local_cocycles: String,
    pub h1: Vec<u64>,
    pub h1_loc: Vec<u64>,
    pub h1_representatives: Vec<Representative>,
    pub h1_loc_representatives: Vec<Representative>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Verdicts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

fn representatives(result: &CohomologyResult) -> Vec<Representative> {
    result
        .representatives
        .iter()
        .zip(result.invariant_factors())
        .map(|(z, &d)| Representative {
            order: d,
            table: z.values().to_vec(),
        })
        .collect()
}

pub fn verdicts(module: &Arc<GModule>, generator_values: &[Vec<u64>]) -> hloc::Result<Verdicts> {
    let z = match Cocycle::from_generator_values(module.clone(), generator_values) {
        Ok(z) => z,
        Err(e @ hloc::Error::NotACocycle { .. }) => {
            return Ok(Verdicts {
                is_cocycle: false,
                locally_trivial: None,
                is_coboundary: None,
                witnesses: None,
                error: Some(e.to_string()),
            })
        }
        Err(e) => return Err(e),
    };
    let local = satisfies_local_conditions(&z)?;
    let witnesses = local
        .holds()
        .then(|| local.witnesses.iter().flatten().cloned().collect());
    Ok(Verdicts {
        is_cocycle: true,
        locally_trivial: Some(local.holds()),
        is_coboundary: Some(is_coboundary(&z)?.is_some()),
        witnesses,
        error: None,
    })
}

pub fn build(input: &str, module: &Arc<GModule>, cocycle: Option<&[Vec<u64>]>) -> hloc::Result<Report> {
    let coh = Cohomology::new(module.clone())?;
    let h1 = coh.h1()?;
    let h1_loc = coh.h1_loc()?;
    let group = module.group();
    Ok(Report {
        input: input.to_string(),
        modulus: module.modulus(),
        rank: module.rank(),
        group_order: group.order(),
        elements: group.elements().iter().map(|e| e.entries().to_vec()).collect(),
        cocycles: h1.cocycles_order.to_string(),
        coboundaries: h1.coboundaries_order.to_string(),
        local_cocycles: h1_loc.cocycles_order.to_string(),
        h1: h1.invariant_factors().to_vec(),
        h1_loc: h1_loc.invariant_factors().to_vec(),
        h1_representatives: representatives(&h1),
        h1_loc_representatives: representatives(&h1_loc),
        cocycle: cocycle.map(|c| verdicts(module, c)).transpose()?,
        duration_ms: None,
    })
}

fn structure(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

fn opt(b: Option<bool>) -> String {
    b.map_or("n/a".into(), |b| b.to_string())
}

impl Report {
    pub fn with_duration(mut self, d: Duration) -> Self {
        self.duration_ms = Some(d.as_secs_f64() * 1e3);
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k}: {v}").unwrap();
        line("input", self.input.clone());
        line("modulus", self.modulus.to_string());
        line("rank", self.rank.to_string());
        line("group_order", self.group_order.to_string());
        line("cocycles", self.cocycles.clone());
        line("coboundaries", self.coboundaries.clone());
        line("local_cocycles", self.local_cocycles.clone());
        line("h1", structure(&self.h1));
        line("h1_loc", structure(&self.h1_loc));
        line("h1_loc_trivial", self.h1_loc.is_empty().to_string());
        for (label, reps) in [
            ("h1", &self.h1_representatives),
            ("h1_loc", &self.h1_loc_representatives),
        ] {
            for (i, r) in reps.iter().enumerate() {
                line(
                    &format!("{label}_representative[{i}]"),
                    format!("order {} table {:?}", r.order, r.table),
                );
            }
        }
        if let Some(v) = &self.cocycle {
            line("cocycle.is_cocycle", v.is_cocycle.to_string());
            line("cocycle.locally_trivial", opt(v.locally_trivial));
            line("cocycle.is_coboundary", opt(v.is_coboundary));
            if let Some(w) = &v.witnesses {
                line("cocycle.witnesses", format!("{w:?}"));
            }
            if let Some(e) = &v.error {
                line("cocycle.error", e.clone());
            }
        }
        if let Some(ms) = self.duration_ms {
            line("duration_ms", format!("{ms:.3}"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
