//! Serializable report payloads and their text rendering.
//!
//! JSON output is a single object `{"meta": ..., "<command>": ...}` whose
//! field order is fixed by the struct definitions; text output is
//! deterministic `key = value` lines with sorted tables, so identical
//! inputs produce byte-identical output either way.

use qlap_core::{BoundReport, Convention, KillRule, WitnessStatus};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: String,
    pub k: usize,
    pub alpha: usize,
    pub tol: f64,
    pub root: usize,
    pub convention: Convention,
    pub path_cap: usize,
    pub budget: usize,
    pub group_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub lambda1: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub aut_order: usize,
    pub generator_count: usize,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Orbit count on directed edges.
    pub directed_edge_classes: usize,
    /// Orbit count on unordered edges (orientations merged).
    pub edge_classes: usize,
    /// Unordered edge orbits, each a sorted list of `[i, j]` pairs.
    pub edge_orbit_blocks: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub p: String,
    pub q: String,
    pub status: WitnessStatus,
    pub killing_rule: Option<KillRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub k: usize,
    pub alpha: usize,
    pub ground_size: usize,
    pub exact: bool,
    pub lower_classes: usize,
    pub upper_classes: usize,
    pub lower_blocks: Vec<Vec<String>>,
    pub upper_blocks: Vec<Vec<String>>,
    /// One representative separated pair per pair of distinct upper blocks.
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub spectrum: SpectrumReport,
    pub orbits: OrbitsReport,
    pub equiv: EquivReport,
    /// Present only for vertex-transitive inputs.
    pub bounds: Option<BoundReport>,
}

/// Payload of one command, tagged by the command name in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Payload {
    Spectrum(SpectrumReport),
    Orbits(OrbitsReport),
    Equiv(EquivReport),
    Bounds(Box<BoundReport>),
    Report(Box<FullReport>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub meta: Meta,
    #[serde(flatten)]
    pub payload: Payload,
}

/// Rounds to 10 decimals and trims, so near-exact values print cleanly
/// (`0.5`, not `0.4999999999999999`).
pub fn fmt_f64(x: f64) -> String {
    let r = (x * 1e10).round() / 1e10;
    if r == 0.0 {
        "0".to_string() // avoid "-0"
    } else {
        format!("{r}")
    }
}

fn fmt_f64_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" ")
}

fn fmt_rational(r: &qlap_core::Rational) -> String {
    format!("{} ({})", r, fmt_f64(r.to_f64()))
}

impl Output {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Spectrum(s) => render_spectrum(&mut out, s),
            Payload::Orbits(o) => render_orbits(&mut out, o),
            Payload::Equiv(e) => render_equiv(&mut out, e),
            Payload::Bounds(b) => render_bounds(&mut out, b),
            Payload::Report(r) => {
                out.push_str("# spectrum\n");
                render_spectrum(&mut out, &r.spectrum);
                out.push_str("# orbits\n");
                render_orbits(&mut out, &r.orbits);
                out.push_str("# equiv\n");
                render_equiv(&mut out, &r.equiv);
                match &r.bounds {
                    Some(b) => {
                        out.push_str("# bounds\n");
                        render_bounds(&mut out, b);
                    }
                    None => out.push_str("# bounds\nnot vertex-transitive, bounds skipped\n"),
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn render_spectrum(out: &mut String, s: &SpectrumReport) {
    out.push_str(&format!("n = {}\n", s.n));
    out.push_str(&format!("eigenvalues = {}\n", fmt_f64_list(&s.eigenvalues)));
    out.push_str(&format!("lambda1 = {}\n", fmt_f64(s.lambda1)));
    out.push_str(&format!("residual = {:.2e}\n", s.residual));
}

fn render_orbits(out: &mut String, o: &OrbitsReport) {
    out.push_str(&format!("aut_order = {}\n", o.aut_order));
    out.push_str(&format!("generators = {}\n", o.generator_count));
    out.push_str(&format!("vertex_transitive = {}\n", o.vertex_transitive));
    out.push_str(&format!("edge_transitive = {}\n", o.edge_transitive));
    out.push_str(&format!("vertex_orbits = {}\n", o.vertex_orbits.len()));
    for block in &o.vertex_orbits {
        let items: Vec<String> = block.iter().map(usize::to_string).collect();
        out.push_str(&format!("  {{{}}}\n", items.join(" ")));
    }
    out.push_str(&format!(
        "directed_edge_classes = {}\n",
        o.directed_edge_classes
    ));
    out.push_str(&format!("edge_classes = {}\n", o.edge_classes));
    for block in &o.edge_orbit_blocks {
        let items: Vec<String> = block.iter().map(|[i, j]| format!("{i}-{j}")).collect();
        out.push_str(&format!("  {{{}}}\n", items.join(" ")));
    }
}

fn render_equiv(out: &mut String, e: &EquivReport) {
    out.push_str(&format!("k = {}\n", e.k));
    out.push_str(&format!("alpha = {}\n", e.alpha));
    out.push_str(&format!("ground = {}\n", e.ground_size));
    out.push_str(&format!("exact = {}\n", e.exact));
    out.push_str(&format!("lower_classes = {}\n", e.lower_classes));
    out.push_str(&format!("upper_classes = {}\n", e.upper_classes));
    out.push_str("lower_blocks\n");
    for block in &e.lower_blocks {
        out.push_str(&format!("  {{{}}}\n", block.join(" ")));
    }
    out.push_str("upper_blocks\n");
    for block in &e.upper_blocks {
        out.push_str(&format!("  {{{}}}\n", block.join(" ")));
    }
    if !e.witnesses.is_empty() {
        out.push_str("witnesses\n");
        for w in &e.witnesses {
            let rule = w.killing_rule.map_or("none".to_string(), |r| r.to_string());
            out.push_str(&format!(
                "  {} | {} : {:?} ({})\n",
                w.p, w.q, w.status, rule
            ));
        }
    }
}

fn render_bounds(out: &mut String, b: &BoundReport) {
    out.push_str(&format!("n = {}\n", b.n));
    out.push_str(&format!("diameter = {}\n", b.diameter));
    out.push_str(&format!("volume = {}\n", b.volume));
    out.push_str(&format!("regular_degree = {}\n", b.regular_degree));
    out.push_str(&format!("k = {}\n", b.k));
    out.push_str(&format!("convention = {}\n", b.convention));
    out.push_str(&format!("lambda1 = {}\n", fmt_f64(b.lambda1)));
    out.push_str(&format!(
        "ind_classical = {}\n",
        fmt_rational(&b.ind_classical)
    ));
    out.push_str(&format!(
        "ind_k_interval = [{}, {}]\n",
        fmt_rational(&b.ind_k_interval.0),
        fmt_rational(&b.ind_k_interval.1)
    ));
    out.push_str(&format!("chung_bound = {}\n", fmt_f64(b.chung_bound)));
    out.push_str(&format!("applicable = {}\n", b.applicable));
    match b.improved_bound_certified {
        Some(v) => out.push_str(&format!("improved_bound_certified = {}\n", fmt_f64(v))),
        None => out.push_str("improved_bound_certified = inapplicable\n"),
    }
    match b.improved_bound_candidate {
        Some(v) => out.push_str(&format!("improved_bound_candidate = {}\n", fmt_f64(v))),
        None => out.push_str("improved_bound_candidate = inapplicable\n"),
    }
    out.push_str(&format!("bracket_exact = {}\n", b.bracket_exact));
    out.push_str(&format!("collected_paths = {}\n", b.collected_paths));
    out.push_str("ne_stats\n");
    for c in &b.ne_stats {
        out.push_str(&format!("  {}-{} = {}\n", c.edge.src, c.edge.dst, c.count));
    }
    out.push_str(&format!("violations = {}\n", b.violations.len()));
    for v in &b.violations {
        out.push_str(&format!("  {v}\n"));
    }
}
