//! Cyclic span of local words applied to the vacuum.

use bargmann_core::fock::binomial;
use bargmann_core::{build_fock, cyclic_span_dimension, Region64};
use serde_json::json;

use super::{main_lattice, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

pub fn check_cyclicity_defect(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let lattice = main_lattice(cfg)?;
    let n_max = cfg.fock.n_max;
    let space = build_fock(lattice, n_max)?;
    let n = lattice.num_sites();
    let full = space.dimension();

    let mut regions: Vec<(String, Region64)> = Vec::new();
    for len in 1..=n {
        let starts = if len == n { 1 } else { n };
        for start in 0..starts {
            regions.push((format!("window_{start}_{len}"), Region64::window(lattice, start, len)?));
        }
    }
    for w in &cfg.regions {
        regions.push((w.name.clone(), Region64::window(lattice, w.start, w.len)?));
    }

    let mut out = Outcome::new(0.0);
    let (mut mismatches, mut not_below) = (0usize, 0usize);
    let mut rows = Vec::new();
    for (name, region) in &regions {
        let dim = cyclic_span_dimension(&space, region, n_max)?;
        let oracle = binomial((region.len() + n_max) as u64, n_max as u64) as usize;
        if dim != oracle {
            mismatches += 1;
        }
        if region.is_proper() && dim >= full {
            not_below += 1;
        }
        if !region.is_proper() && dim != full {
            mismatches += 1;
        }
        rows.push(json!({ "region": name, "sites": region.len(), "dimension": dim, "oracle": oracle, "proper": region.is_proper() }));
        if name.starts_with("window_0_") {
            out.rec.metric(&format!("dimension_sites_{}", region.len()), dim as f64);
        }
    }
    out.rec.metric("regions", regions.len() as f64);
    out.rec.metric("full_dimension", full as f64);
    out.rec.exactly("oracle_mismatches", mismatches as f64, 0.0);
    out.rec.exactly("proper_regions_not_below_full", not_below as f64, 0.0);
    out.witness = Some(json!({ "regions": rows }));
    Ok(out)
}
