use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{tail_check, two_cell_instance, LambdaBlend, PiecewiseAnchor, SectionedFunction, TailCriterion};
use crate::eq_core::euclidean;
use crate::error::{Error, Result};
use crate::gallery::{dirichlet_tower, example1_eval_with, SequentialPoint, TaggedReal};
use crate::pou::{AnchoredScheme, SchemeSpec, SpaceKind};
use crate::Point;

use super::report::{ConvergenceReport, ProbeRecord, Summary, SuiteReport, TermRecord};
use super::scenario::{FunctionSpec, OperatorKind, ProbePoint, Scenario};

type Terms<'a> = Box<dyn Fn(usize, &[f64], &TaggedReal) -> Result<Point> + Send + Sync + 'a>;
type Limit<'a> = Box<dyn Fn(&[f64], &TaggedReal) -> Result<Point> + Send + Sync + 'a>;

/// Command-line overrides applied on top of a scenario file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub eps: Option<f64>,
    pub schedule: Option<Vec<usize>>,
}

impl Overrides {
    pub fn apply(&self, s: &mut Scenario) {
        if let Some(seed) = self.seed {
            s.rng_seed = seed;
        }
        if let Some(eps) = self.eps {
            s.eps = eps;
        }
        if let Some(schedule) = &self.schedule {
            s.schedule = schedule.clone();
        }
    }
}

fn in_scheme_domain(spec: &SchemeSpec, x: &[f64]) -> bool {
    match spec {
        SchemeSpec::Grid { lo, hi, .. } => {
            x.len() == lo.len() && x.iter().zip(lo.iter().zip(hi)).all(|(v, (a, b))| a <= v && v <= b)
        }
        SchemeSpec::Sorgenfrey { lo, hi, .. } => x.len() == 1 && *lo <= x[0] && x[0] <= *hi,
    }
}

fn check_probe_domains(s: &Scenario, probes: &[ProbePoint]) -> Result<()> {
    for p in probes {
        let ok = match (s.operator, &s.scheme) {
            (OperatorKind::LambdaBlend | OperatorKind::PiecewiseAnchor, Some(spec)) => in_scheme_domain(spec, &p.x),
            (OperatorKind::AmbiguousLimit, _) => p.x.len() == 1,
            (OperatorKind::TowerTail, _) => p.x.is_empty(),
            _ => true,
        };
        if !ok || p.x.iter().any(|v| !v.is_finite()) || !p.y.resolve().value().is_finite() {
            return Err(Error::OutsideSpace(p.x.clone()));
        }
    }
    Ok(())
}

fn validate(s: &Scenario) -> Result<()> {
    if !(s.eps >= 0.0) || s.tail_k == 0 {
        return Err(Error::Config("eps must be ≥ 0 and tail_k ≥ 1".into()));
    }
    if s.schedule.is_empty() || s.schedule.contains(&0) {
        return Err(Error::Config("schedule entries must be positive".into()));
    }
    if s.schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("schedule must be strictly increasing".into()));
    }
    Ok(())
}

fn tower_terms(function: &FunctionSpec, schedule: &[usize]) -> Result<(Terms<'static>, Limit<'static>)> {
    let g = dirichlet_tower();
    let value = |v: f64| -> Result<Point> { Ok(vec![v]) };
    match *function {
        FunctionSpec::Dirichlet { level: None } => {
            let g2 = g.clone();
            Ok((
                Box::new(move |n, _, y| value(g.level(n).expect("depth 2").eval(y))),
                Box::new(move |_, y| value(g2.eval(y))),
            ))
        }
        FunctionSpec::Dirichlet { level: Some(k) } => {
            let gk = g.level(k.max(1)).expect("depth 2");
            let gk2 = gk.clone();
            Ok((
                Box::new(move |m, _, y| value(gk.level(m).expect("depth 1").eval(y))),
                Box::new(move |_, y| value(gk2.eval(y))),
            ))
        }
        FunctionSpec::Example1 { level } => {
            let (term_point, limit_point): (Box<dyn Fn(usize) -> SequentialPoint + Send + Sync>, _) = match level {
                None => (Box::new(|n| SequentialPoint::Level { n }), SequentialPoint::Origin),
                Some(n) => {
                    let limit = SequentialPoint::level(n)?;
                    if let Some(&m) = schedule.iter().find(|&&m| m < n * n) {
                        return Err(SequentialPoint::Leaf { n, m }.validate().unwrap_err());
                    }
                    (Box::new(move |m| SequentialPoint::Leaf { n, m }), limit)
                }
            };
            let g2 = g.clone();
            Ok((
                Box::new(move |n, _, y| value(example1_eval_with(&g, &term_point(n), y)?)),
                Box::new(move |_, y| value(example1_eval_with(&g2, &limit_point, y)?)),
            ))
        }
        _ => Err(Error::Config("tower_tail needs the dirichlet or example1 function".into())),
    }
}

fn probe_record(
    index: usize,
    p: &ProbePoint,
    terms: &Terms<'_>,
    limit: &Limit<'_>,
    schedule: &[usize],
    crit: TailCriterion,
) -> Result<ProbeRecord> {
    let y = p.y.resolve();
    let lim = limit(&p.x, &y)?;
    let values = schedule
        .iter()
        .map(|&n| Ok((n, terms(n, &p.x, &y)?)))
        .collect::<Result<Vec<_>>>()?;
    let tail = tail_check(values, lim, crit);
    let exact_pass = !p.exact || tail.gaps.iter().all(|g| *g == 0.0);
    let tag = match y.exactness() {
        crate::gallery::Exactness::Plain => "plain".to_string(),
        _ => y.to_string(),
    };
    Ok(ProbeRecord {
        index,
        x: p.x.clone(),
        y: y.value(),
        y_tag: tag,
        terms: tail
            .terms
            .into_iter()
            .zip(&tail.gaps)
            .map(|((n, value), gap)| TermRecord { n, value, gap: *gap })
            .collect(),
        limit: tail.limit,
        final_gap: tail.final_gap,
        tail_pass: tail.pass,
        exact: p.exact,
        exact_pass,
        pass: tail.pass && exact_pass,
    })
}

/// Builds the scenario's approximants, evaluates them on every probe along
/// the schedule and applies the tail criterion.
///
/// Probes are evaluated in parallel; records keep probe order.
pub fn run_scenario(s: &Scenario) -> Result<ConvergenceReport> {
    validate(s)?;
    let probes = s.probes.resolve(s.rng_seed)?;
    check_probe_domains(s, &probes)?;
    let crit = TailCriterion { eps: s.eps, k: s.tail_k };

    let z = s.connector.build();
    let scheme = match (s.operator, &s.scheme) {
        (OperatorKind::LambdaBlend | OperatorKind::PiecewiseAnchor, Some(spec)) => {
            let scheme = AnchoredScheme::new(spec.clone())?;
            if let Some(&n) = s.schedule.iter().find(|&&n| n > scheme.n_max()) {
                return Err(Error::SchemeRange { n, n_max: scheme.n_max() });
            }
            Some(scheme)
        }
        (OperatorKind::LambdaBlend | OperatorKind::PiecewiseAnchor, None) => {
            return Err(Error::Config(format!("{:?} needs a scheme", s.operator)))
        }
        _ => None,
    };
    let f: Option<SectionedFunction<TaggedReal>> = match s.operator {
        OperatorKind::LambdaBlend | OperatorKind::PiecewiseAnchor => Some(s.function.sectioned()?),
        _ => None,
    };

    let (terms, limit): (Terms<'_>, Limit<'_>) = match s.operator {
        OperatorKind::LambdaBlend => {
            let (f, scheme) = (f.as_ref().expect("built"), scheme.as_ref().expect("built"));
            let blend = LambdaBlend::new(f, scheme, z.as_ref());
            (
                Box::new(move |n, x, y| blend.eval(n, x, y)),
                Box::new(move |x, y| Ok(f.eval(x, y))),
            )
        }
        OperatorKind::PiecewiseAnchor => {
            let (f, scheme) = (f.as_ref().expect("built"), scheme.as_ref().expect("built"));
            let pw = PiecewiseAnchor::over_scheme_tiles(f, scheme);
            (
                Box::new(move |n, x, y| pw.eval(n, x, y)),
                Box::new(move |x, y| Ok(f.eval(x, y))),
            )
        }
        OperatorKind::AmbiguousLimit => {
            if s.function != (FunctionSpec::TwoCell {}) {
                return Err(Error::Config("ambiguous_limit needs the two_cell function".into()));
            }
            let inst = std::sync::Arc::new(two_cell_instance::<TaggedReal>());
            let inst2 = std::sync::Arc::clone(&inst);
            (
                Box::new(move |n, x, y| inst.eval(n, x, y)),
                Box::new(move |x, y| inst2.target(x, y)),
            )
        }
        OperatorKind::TowerTail => tower_terms(&s.function, &s.schedule)?,
    };

    let records = probes
        .par_iter()
        .enumerate()
        .map(|(i, p)| probe_record(i, p, &terms, &limit, &s.schedule, crit))
        .collect::<Result<Vec<_>>>()?;
    let summary = Summary::of(&records);
    Ok(ConvergenceReport {
        scenario: s.clone(),
        records,
        summary,
    })
}

/// The `*.json` files of `dir` in file-name order.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every scenario file of `dir`, in file-name order.
pub fn run_suite(dir: &Path, overrides: &Overrides) -> Result<SuiteReport> {
    let reports = scenario_files(dir)?
        .iter()
        .map(|path| {
            let mut s = Scenario::load(path)?;
            overrides.apply(&mut s);
            run_scenario(&s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new(reports))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusRow {
    pub delta: f64,
    pub modulus: f64,
}

/// `max |f(x ± δ·e_j, y) − f(x, y)|` over `y_grid` and axes `j`, for each
/// `δ`. Only `+δ` is used on the Sorgenfrey line.
pub fn section_probe<Y: 'static>(
    f: &SectionedFunction<Y>,
    x: &[f64],
    y_grid: &[Y],
    deltas: &[f64],
    kind: SpaceKind,
) -> Result<Vec<ModulusRow>> {
    if deltas.iter().any(|d| !(*d > 0.0)) || deltas.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Config("deltas must be positive and decreasing".into()));
    }
    let signs: &[f64] = match kind {
        SpaceKind::Sorgenfrey => &[1.0],
        _ => &[1.0, -1.0],
    };
    let base: Vec<Point> = y_grid.iter().map(|y| f.eval(x, y)).collect();
    Ok(deltas
        .iter()
        .map(|&delta| {
            let mut modulus: f64 = 0.0;
            for j in 0..x.len() {
                for s in signs {
                    let mut moved = x.to_vec();
                    moved[j] += s * delta;
                    for (y, b) in y_grid.iter().zip(&base) {
                        modulus = modulus.max(euclidean(&f.eval(&moved, y), b));
                    }
                }
            }
            ModulusRow { delta, modulus }
        })
        .collect())
}
