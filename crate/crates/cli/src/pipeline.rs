//! The end-to-end run: spec string to poset to complex to analysis report,
//! plus the human summary and JSON output the binary prints.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use quillen_core::caps::Caps;
use quillen_core::complex::order_complex;
use quillen_core::error::CapKind;
use quillen_core::poset::{
    build_bouc, build_quillen, build_sp, check_invariants, truncate, PosetKind,
};
use quillen_core::topology::{analyze, AnalysisReport, ComponentReport, ComponentStatus, ReportContext};
use quillen_core::Error;

use crate::groupspec::parse_group_spec;

/// Everything one invocation needs. Mirrors the CLI flags one to one.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: String,
    pub prime: u64,
    pub poset: PosetKind,
    pub truncate: Option<u32>,
    pub homology: Option<usize>,
    pub json: Option<PathBuf>,
    pub threads: Option<usize>,
    pub caps: Caps,
    pub check_invariants: bool,
}

impl RunConfig {
    /// A config with every optional stage off and default caps.
    pub fn new(group: &str, prime: u64, poset: PosetKind) -> RunConfig {
        RunConfig {
            group: group.to_string(),
            prime,
            poset,
            truncate: None,
            homology: None,
            json: None,
            threads: None,
            caps: Caps::default(),
            check_invariants: false,
        }
    }
}

/// The analysis report plus the rendered human summary.
#[derive(Debug)]
pub struct RunOutput {
    pub report: AnalysisReport,
    pub summary: String,
}

/// Run the full pipeline for one config. Writes the JSON report if the
/// config names a path; the caller decides what to do with the summary.
pub fn run(config: &RunConfig) -> Result<RunOutput, Error> {
    config.caps.validate()?;
    let spec = parse_group_spec(&config.group)?;
    let rendered = spec.render();
    let parent = Arc::new(spec.resolve()?);
    let degree = parent.degree();
    let order = parent.order().clone();

    let built = match config.poset {
        PosetKind::Quillen => build_quillen(&parent, config.prime, &config.caps)?,
        PosetKind::Sp => build_sp(&parent, config.prime, &config.caps)?,
        PosetKind::Bouc => build_bouc(&parent, config.prime, &config.caps)?,
    };
    let poset = match config.truncate {
        Some(n) => truncate(&built, n),
        None => built,
    };
    if config.check_invariants {
        check_invariants(&poset, &config.caps)?;
    }

    let complex = order_complex(&poset.abstract_poset(), &config.caps)?;
    let context = ReportContext {
        group_spec: rendered.clone(),
        prime: config.prime,
        poset_kind: config.poset,
    };
    let report = analyze(context, &complex, config.homology, &config.caps)?;

    if let Some(path) = &config.json {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Invalid(format!("cannot serialize the report: {e}")))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }

    let mut s = String::new();
    let _ = writeln!(s, "group: {rendered} (degree {degree}, order {order})");
    let _ = writeln!(s, "prime: {}", config.prime);
    let truncation_note = match poset.truncation() {
        Some(n) => format!(", truncated at level {n}"),
        None => String::new(),
    };
    let _ = writeln!(
        s,
        "poset: {}, {} nodes, {} comparable pairs{truncation_note}",
        poset.kind(),
        poset.len(),
        poset.pairs().len()
    );
    let _ = writeln!(
        s,
        "complex: dimension {}, simplex counts {:?}, euler characteristic {}",
        complex.dimension(),
        complex.simplex_counts(),
        complex.euler_characteristic()
    );
    let _ = writeln!(s, "components: {}", report.components);
    for (i, component) in report.per_component.iter().enumerate() {
        let _ = writeln!(s, "  component {i}: pi1 {}", status_label(component));
    }
    if let Some(h) = &report.homology {
        let _ = writeln!(s, "homology betti: {:?}", h.betti);
        let _ = writeln!(s, "homology torsion: {}", fmt_nested(&h.torsion));
    }
    for warning in &report.warnings {
        let _ = writeln!(s, "warning: {warning}");
    }
    Ok(RunOutput { report, summary: s })
}

/// Report only, no summary or file output. The verification rows use this.
pub fn report_for(
    group: &str,
    prime: u64,
    poset: PosetKind,
    truncation: Option<u32>,
    homology: Option<usize>,
) -> Result<AnalysisReport, Error> {
    let mut config = RunConfig::new(group, prime, poset);
    config.truncate = truncation;
    config.homology = homology;
    Ok(run(&config)?.report)
}

/// One-line description of a component's certified fundamental group.
pub fn status_label(c: &ComponentReport) -> String {
    match c.status {
        ComponentStatus::Trivial => "trivial".to_string(),
        ComponentStatus::Free => format!("free({})", c.free_rank.unwrap_or(0)),
        ComponentStatus::Presented => format!(
            "presented(gens {}, relators {}, free factor {}, ab rank {}, torsion [{}])",
            c.generators.unwrap_or(0),
            c.relators.unwrap_or(0),
            c.free_factor_rank.unwrap_or(0),
            c.abelianization.rank,
            c.abelianization.torsion.join(", ")
        ),
    }
}

/// Format nested torsion lists as `[[], [2]]`.
pub fn fmt_nested(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|row| format!("[{}]", row.join(", ")))
        .collect();
    format!("[{}]", inner.join(", "))
}

/// The CLI flag that raises the cap behind a cap-exceeded error, when one
/// exists. The remaining caps are library-level and not flag-settable.
pub fn cap_flag(kind: CapKind) -> Option<&'static str> {
    match kind {
        CapKind::Elements => Some("--cap-elements"),
        CapKind::Orbit => Some("--cap-orbit"),
        CapKind::Chains => Some("--cap-chains"),
        CapKind::Matrix => Some("--cap-matrix"),
        CapKind::SubgroupElements | CapKind::PGroupOrder => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_run_summary_is_stable() {
        let mut config = RunConfig::new("alternating:5", 2, PosetKind::Quillen);
        config.homology = Some(1);
        let out = run(&config).unwrap();
        assert_eq!(
            out.summary,
            "group: alternating:5 (degree 5, order 60)\n\
             prime: 2\n\
             poset: quillen, 20 nodes, 15 comparable pairs\n\
             complex: dimension 1, simplex counts [20, 15], euler characteristic 5\n\
             components: 5\n\
             \x20 component 0: pi1 trivial\n\
             \x20 component 1: pi1 trivial\n\
             \x20 component 2: pi1 trivial\n\
             \x20 component 3: pi1 trivial\n\
             \x20 component 4: pi1 trivial\n\
             homology betti: [5, 0]\n\
             homology torsion: [[], []]\n"
        );
    }

    #[test]
    fn the_report_spec_is_the_canonical_rendering() {
        let config = RunConfig::new("  symmetric:4 ", 2, PosetKind::Quillen);
        let out = run(&config).unwrap();
        assert_eq!(out.report.group_spec, "symmetric:4");
    }

    #[test]
    fn truncation_is_reported_in_the_summary() {
        let mut config = RunConfig::new("symmetric:4", 2, PosetKind::Sp);
        config.truncate = Some(0);
        let out = run(&config).unwrap();
        assert!(out.summary.contains("truncated at level 0"), "{}", out.summary);
    }

    #[test]
    fn json_output_lands_at_the_requested_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let mut config = RunConfig::new("alternating:5", 2, PosetKind::Quillen);
        config.json = Some(path.clone());
        run(&config).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["group_spec"], "alternating:5");
        assert_eq!(value["components"], 5);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn invalid_caps_are_rejected() {
        let mut config = RunConfig::new("alternating:5", 2, PosetKind::Quillen);
        config.caps.max_orbit = 0;
        let err = run(&config).unwrap_err().to_string();
        assert!(err.contains("caps must be positive"), "{err}");
    }

    #[test]
    fn cap_errors_name_the_config_key() {
        let mut config = RunConfig::new("symmetric:4", 2, PosetKind::Quillen);
        config.caps.max_chains = 1;
        let err = run(&config).unwrap_err();
        assert!(err.is_cap());
        let text = err.to_string();
        assert!(text.contains("max_chains"), "{text}");
    }

    #[test]
    fn check_invariants_passes_on_a_clean_poset() {
        let mut config = RunConfig::new("symmetric:4", 2, PosetKind::Bouc);
        config.check_invariants = true;
        run(&config).unwrap();
    }

    #[test]
    fn non_primes_are_rejected() {
        let config = RunConfig::new("symmetric:4", 4, PosetKind::Quillen);
        let err = run(&config).unwrap_err().to_string();
        assert!(err.contains("not prime"), "{err}");
    }
}
