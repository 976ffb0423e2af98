//! Verification sweeps over parameter grids `(q, n, k, t)`.
//!
//! Each instance enumerates Γ(n,k), restricts it to `C_t(n,k)` and checks
//! connectivity, diameters and isometry of the induced graph. Reports are
//! emitted as JSON lines in grid order, whatever order workers finish in.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::gf::{self, Field};
use crate::grassmann::{self, GrassmannGraph, DEFAULT_MAX_PAIRS, DEFAULT_MAX_VERTICES};
use crate::linalg::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub q_list: Vec<u32>,
    pub n_range: RangeInclusive<usize>,
    pub k_range: RangeInclusive<usize>,
    pub t_range: RangeInclusive<usize>,
    /// Largest Γ(n,k) that will be enumerated.
    pub max_vertices: u64,
    /// Largest Δ_t(n,k) that gets all-sources BFS (diameter and isometry).
    pub max_pairs: u64,
    pub connectivity: bool,
    pub diameter: bool,
    pub isometry: bool,
    pub out: Option<PathBuf>,
    pub resume: bool,
    /// Instances processed concurrently; 0 means one per core.
    pub workers: usize,
}

impl SweepConfig {
    /// A single-instance sweep with every check on and default caps.
    pub fn single(q: u32, n: usize, k: usize, t: usize) -> Self {
        SweepConfig {
            q_list: vec![q],
            n_range: n..=n,
            k_range: k..=k,
            t_range: t..=t,
            max_vertices: DEFAULT_MAX_VERTICES,
            max_pairs: DEFAULT_MAX_PAIRS,
            connectivity: true,
            diameter: true,
            isometry: true,
            out: None,
            resume: false,
            workers: 0,
        }
    }

    /// Checks the configuration and lists its instances in grid order
    /// (q, then n, then k, then t). Grid points with `t > k` or `k > n` are
    /// skipped; a grid with no valid point is rejected.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        if self.q_list.is_empty() {
            return Err(Error::Config("no field orders given".into()));
        }
        for (name, r) in [
            ("n", &self.n_range),
            ("k", &self.k_range),
            ("t", &self.t_range),
        ] {
            if r.is_empty() {
                return Err(Error::Config(format!("empty {name} range")));
            }
        }
        if self.max_vertices == 0 || self.max_pairs == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        if *self.k_range.start() == 0 || *self.t_range.start() == 0 {
            return Err(Error::Config("k and t start at 1".into()));
        }
        for &q in &self.q_list {
            if gf::prime_power(q as u64).is_none() || q as u64 > gf::MAX_ORDER {
                return Err(Error::Config(format!("{q} is not a supported field order")));
            }
        }
        let mut out = Vec::new();
        for &q in &self.q_list {
            for n in self.n_range.clone() {
                for k in self.k_range.clone().filter(|&k| k <= n) {
                    for t in self.t_range.clone().filter(|&t| t <= k) {
                        out.push(Instance { q, n, k, t });
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Config(
                "no instance with 1 <= t <= k <= n in the grid".into(),
            ));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl Instance {
    /// `q >= C(n,t)`.
    pub fn bound_satisfied(&self) -> bool {
        self.q as u64 >= binomial(self.n, self.t)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsHit {
    /// Γ(n,k) was too large to enumerate.
    pub vertices: bool,
    /// Δ_t(n,k) was too large for all-sources BFS.
    pub pairs: bool,
}

impl CapsHit {
    pub fn any(&self) -> bool {
        self.vertices || self.pairs
    }
}

/// A pair of codes whose distance in Δ_t differs from `k - dim(X∩Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// RREF generator rows.
    pub x: Vec<Vec<u32>>,
    pub y: Vec<Vec<u32>>,
    /// `None` when the two codes lie in different components.
    pub d_delta: Option<u32>,
    pub d_gamma: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub bound_satisfied: bool,
    pub class_size: Option<u64>,
    pub connected: Option<bool>,
    pub component_count: Option<usize>,
    pub diameter_delta: Option<u32>,
    pub diameter_gamma: Option<u32>,
    pub isometric: Option<bool>,
    pub witnesses: Vec<WitnessRecord>,
    pub caps_hit: CapsHit,
    pub wall_ms: u64,
}

impl GraphReport {
    pub fn instance(&self) -> Instance {
        Instance {
            q: self.q,
            n: self.n,
            k: self.k,
            t: self.t,
        }
    }

    /// Whether every check the report carries agrees with the theorem:
    /// connected, isometric, and equal diameters. Checks that did not run
    /// count as passing.
    pub fn consistent(&self) -> bool {
        self.connected != Some(false)
            && self.isometric != Some(false)
            && (self.diameter_gamma.is_none()
                || self.caps_hit.pairs
                || self.diameter_delta == self.diameter_gamma)
    }

    /// A bound-satisfied instance, fully checked, that fails the theorem.
    pub fn violates_theorem(&self) -> bool {
        self.bound_satisfied && !self.caps_hit.any() && !self.consistent()
    }

    /// Every check ran and passed.
    pub fn fully_verified(&self) -> bool {
        !self.caps_hit.any()
            && self.connected == Some(true)
            && self.isometric == Some(true)
            && self.diameter_delta.is_some()
            && self.diameter_delta == self.diameter_gamma
    }
}

fn rows_of(s: &Subspace) -> Vec<Vec<u32>> {
    (0..s.dim())
        .map(|r| s.basis().row(r).iter().map(|x| x.value()).collect())
        .collect()
}

/// Runs one instance. Γ(n,k) is enumerated if it has at most `max_vertices`
/// members; Δ_t gets all-sources BFS if it has at most `max_pairs` vertices,
/// and a single component traversal otherwise.
pub fn run_instance(inst: Instance, cfg: &SweepConfig) -> Result<GraphReport> {
    let start = Instant::now();
    let field = Field::with_order(inst.q as u64)?;
    let mut report = GraphReport {
        q: inst.q,
        n: inst.n,
        k: inst.k,
        t: inst.t,
        bound_satisfied: inst.bound_satisfied(),
        class_size: None,
        connected: None,
        component_count: None,
        diameter_delta: None,
        diameter_gamma: None,
        isometric: None,
        witnesses: Vec::new(),
        caps_hit: CapsHit::default(),
        wall_ms: 0,
    };
    let index = match grassmann::enumerate_subspaces(&field, inst.n, inst.k, cfg.max_vertices) {
        Ok(ix) => Arc::new(ix),
        Err(Error::EnumerationTooLarge { .. }) => {
            report.caps_hit.vertices = true;
            report.wall_ms = start.elapsed().as_millis() as u64;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let delta = grassmann::build_delta(index.clone(), inst.t, cfg.max_pairs)?;
    report.class_size = Some(delta.vertex_count() as u64);
    if cfg.diameter {
        // Γ(n,k) is vertex-transitive, so one eccentricity is its diameter
        let gamma = GrassmannGraph::gamma(index.clone(), 0);
        let dist = grassmann::bfs_distances(&gamma, 0)?;
        let ecc = dist
            .iter()
            .map(|d| d.expect("Γ(n,k) is connected"))
            .max()
            .unwrap_or(0);
        assert_eq!(
            ecc as usize,
            inst.k.min(inst.n - inst.k),
            "diam Γ(n,k) must be min(k, n-k)"
        );
        report.diameter_gamma = Some(ecc);
    }
    let all_sources = (delta.vertex_count() as u64) <= cfg.max_pairs;
    if all_sources && (cfg.diameter || cfg.isometry) {
        let (conn, iso) = grassmann::analyze(&delta, cfg.isometry);
        if cfg.connectivity {
            report.connected = Some(conn.connected);
            report.component_count = Some(conn.component_count);
        }
        if cfg.diameter {
            report.diameter_delta = conn.diameter;
        }
        if let Some(iso) = iso {
            report.isometric = Some(iso.isometric);
            report.witnesses = iso
                .witnesses
                .iter()
                .map(|w| WitnessRecord {
                    x: rows_of(index.get(w.x)),
                    y: rows_of(index.get(w.y)),
                    d_delta: w.d_delta,
                    d_gamma: w.d_gamma,
                })
                .collect();
        }
    } else {
        if !all_sources && (cfg.diameter || cfg.isometry) {
            report.caps_hit.pairs = true;
        }
        if cfg.connectivity {
            let conn = grassmann::connectivity_only(&delta);
            report.connected = Some(conn.connected);
            report.component_count = Some(conn.component_count);
        }
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Instances already present in a JSON-lines report file.
pub fn completed_instances(path: &Path) -> Result<HashSet<Instance>> {
    let mut done = HashSet::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e.into()),
    };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // a truncated final line from an interrupted run is simply redone
        if let Ok(r) = serde_json::from_str::<GraphReport>(&line) {
            done.insert(r.instance());
        } else if i == 0 {
            return Err(Error::Parse {
                line: 1,
                msg: "resume file is not a JSON-lines report".into(),
            });
        }
    }
    Ok(done)
}

/// Outcome of a whole sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub reports: Vec<GraphReport>,
    pub skipped: usize,
    /// Per-instance errors, reported rather than fatal.
    pub errors: Vec<(Instance, Error)>,
}

impl SweepSummary {
    /// 0 = all checks passed, 2 = theorem violation on a bound-satisfied
    /// instance, 3 = caps prevented verifying a bound-satisfied instance.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(GraphReport::violates_theorem) {
            2
        } else if !self.errors.is_empty()
            || self
                .reports
                .iter()
                .any(|r| r.bound_satisfied && r.caps_hit.any())
        {
            3
        } else {
            0
        }
    }
}

/// Runs every instance and hands each report to `emit` in grid order.
/// With `cfg.resume`, instances already in `cfg.out` are skipped.
pub fn run_sweep<F>(cfg: &SweepConfig, mut emit: F) -> Result<SweepSummary>
where
    F: FnMut(&GraphReport) -> Result<()>,
{
    let mut instances = cfg.instances()?;
    let mut summary = SweepSummary::default();
    if cfg.resume {
        if let Some(out) = &cfg.out {
            let done = completed_instances(out)?;
            let before = instances.len();
            instances.retain(|i| !done.contains(i));
            summary.skipped = before - instances.len();
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let (tx, rx) = mpsc::channel();
    let mut pending: BTreeMap<usize, Result<GraphReport>> = BTreeMap::new();
    let mut next = 0;
    std::thread::scope(|scope| -> Result<()> {
        let instances = &instances;
        scope.spawn(move || {
            pool.install(|| {
                instances
                    .par_iter()
                    .enumerate()
                    .for_each_with(tx, |tx, (i, &inst)| {
                        let _ = tx.send((i, run_instance(inst, cfg)));
                    })
            })
        });
        for (i, res) in rx {
            pending.insert(i, res);
            while let Some(res) = pending.remove(&next) {
                match res {
                    Ok(r) => {
                        emit(&r)?;
                        summary.reports.push(r);
                    }
                    Err(e) => summary.errors.push((instances[next], e)),
                }
                next += 1;
            }
        }
        Ok(())
    })?;
    Ok(summary)
}

/// Runs a sweep, appending JSON lines to `cfg.out` (or writing them to
/// `sink` when no file is configured).
pub fn run_sweep_jsonl(cfg: &SweepConfig, sink: &mut dyn Write) -> Result<SweepSummary> {
    let mut file = match &cfg.out {
        Some(p) => Some(
            OpenOptions::new()
                .create(true)
                .append(cfg.resume)
                .write(true)
                .truncate(!cfg.resume)
                .open(p)?,
        ),
        None => None,
    };
    run_sweep(cfg, |r| {
        let line = serde_json::to_string(r).expect("reports serialize");
        match file.as_mut() {
            Some(f) => {
                writeln!(f, "{line}")?;
                f.flush()?;
            }
            None => writeln!(sink, "{line}")?,
        }
        Ok(())
    })
}

pub const CSV_HEADER: &str =
    "q,n,k,t,bound_satisfied,class_size,connected,component_count,diameter_delta,diameter_gamma,isometric,witnesses,caps_vertices,caps_pairs,wall_ms";

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &GraphReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.q,
        r.n,
        r.k,
        r.t,
        r.bound_satisfied,
        opt(r.class_size),
        opt(r.connected),
        opt(r.component_count),
        opt(r.diameter_delta),
        opt(r.diameter_gamma),
        opt(r.isometric),
        r.witnesses.len(),
        r.caps_hit.vertices,
        r.caps_hit.pairs,
        r.wall_ms
    )
}

pub fn summary_csv(reports: &[GraphReport]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&csv_row(r));
        s.push('\n');
    }
    s
}
