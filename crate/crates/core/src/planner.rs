//! Objective-level drivers: lower bounds, horizon selection, the k-way time
//! split, and solve reports.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::ilp::{build_model, extract_flow, IlpModel, ObjectiveKind};
use crate::instance::Instance;
use crate::plan::Plan;
use crate::solver::{solve_with, Backend, BoundHook, Hooks, SolveOptions, SolveStatus};
use crate::timex::{
    build_network, flow_to_paths, reachability_prune, ArcKind, Encoding, NodeKind, TimeExpandedNetwork,
};
use crate::validate::{plan_metrics, validate, Metrics};

#[derive(Debug, Clone)]
pub struct PlannerOptions {
    pub encoding: Encoding,
    pub backend: Backend,
    /// Wall-clock budget for one driver call (per stage when splitting).
    pub time_limit: Option<Duration>,
    pub gap: f64,
    /// Largest horizon tried by the makespan search; `|V|^3` when unset.
    pub t_cap: Option<usize>,
    /// Horizon for the distance objectives instead of `n * t_min`.
    pub horizon: Option<usize>,
    /// Split factor used to pick the initial total-time horizon.
    pub total_time_split: usize,
}

impl Default for PlannerOptions {
    fn default() -> Self {
        PlannerOptions {
            encoding: Encoding::Compact,
            backend: Backend::Embedded,
            time_limit: None,
            gap: 0.0,
            t_cap: None,
            horizon: None,
            total_time_split: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub horizon: usize,
    pub status: SolveStatus,
    pub wall_time: Duration,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub objective: ObjectiveKind,
    pub status: SolveStatus,
    pub achieved: usize,
    pub lower_bound: usize,
    pub ratio: f64,
    /// Horizon of the final model (summed over stages when splitting).
    pub horizon: usize,
    pub split: usize,
    pub stages: Vec<StageReport>,
    pub metrics: Metrics,
    pub warnings: Vec<String>,
}

impl SolveReport {
    /// Line-oriented `key value` text. Wall times are only written when
    /// asked for, so reports of repeated runs can be compared byte by byte.
    pub fn to_text(&self, with_times: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "objective {}", self.objective);
        let _ = writeln!(out, "status {}", self.status);
        let _ = writeln!(out, "achieved {}", self.achieved);
        let _ = writeln!(out, "lower_bound {}", self.lower_bound);
        let _ = writeln!(out, "ratio {:.6}", self.ratio);
        let _ = writeln!(out, "horizon {}", self.horizon);
        let _ = writeln!(out, "split {}", self.split);
        let m = &self.metrics;
        let _ = writeln!(out, "makespan {}", m.makespan);
        let _ = writeln!(out, "max_distance {}", m.max_distance);
        let _ = writeln!(out, "total_time {}", m.total_time);
        let _ = writeln!(out, "total_distance {}", m.total_distance);
        for (k, s) in self.stages.iter().enumerate() {
            let _ = write!(out, "stage {k} horizon {} status {} nodes {}", s.horizon, s.status, s.nodes);
            if with_times {
                let _ = write!(out, " seconds {:.3}", s.wall_time.as_secs_f64());
            }
            out.push('\n');
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning {w}");
        }
        out
    }

    pub fn total_wall_time(&self) -> Duration {
        self.stages.iter().map(|s| s.wall_time).sum()
    }
}

/// `achieved / lower_bound`, with `0 / 0 = 1`.
pub fn optimality_ratio(achieved: usize, lower_bound: usize) -> f64 {
    match (achieved, lower_bound) {
        (0, 0) => 1.0,
        (_, 0) => f64::INFINITY,
        (a, b) => a as f64 / b as f64,
    }
}

/// Largest single-robot shortest-path length.
pub fn makespan_lower_bound(inst: &Instance) -> usize {
    inst.robot_distances().into_iter().max().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceBounds {
    pub sum: usize,
    pub max: usize,
}

pub fn distance_lower_bound(inst: &Instance) -> DistanceBounds {
    let d = inst.robot_distances();
    DistanceBounds { sum: d.iter().sum(), max: d.iter().copied().max().unwrap_or(0) }
}

/// Conservative lower bound for an objective.
pub fn objective_lower_bound(inst: &Instance, objective: ObjectiveKind) -> usize {
    let b = distance_lower_bound(inst);
    match objective {
        ObjectiveKind::Makespan | ObjectiveKind::MaxDistance => b.max,
        ObjectiveKind::TotalTime | ObjectiveKind::TotalDistance => b.sum,
    }
}

pub fn objective_value(m: &Metrics, objective: ObjectiveKind) -> usize {
    match objective {
        ObjectiveKind::Makespan => m.makespan,
        ObjectiveKind::MaxDistance => m.max_distance,
        ObjectiveKind::TotalTime => m.total_time,
        ObjectiveKind::TotalDistance => m.total_distance,
    }
}

/// Admissible completion bound for the distance and time objectives: each
/// robot's fixed arcs are followed from its source, and the rest of its route
/// is estimated by the static distance to its goal.
pub struct PathBound {
    objective: ObjectiveKind,
    robots: Vec<RobotArcs>,
    /// `dist[i][v]`: hops from `v` to robot `i`'s goal.
    dist: Vec<Vec<usize>>,
    goals: Vec<VertexId>,
}

/// `(var, head, cost, head vertex and layer)`.
type NetArc = (usize, usize, i64, Option<(VertexId, usize)>);

struct RobotArcs {
    source: usize,
    start: VertexId,
    /// CSR over network nodes.
    first: Vec<u32>,
    arcs: Vec<NetArc>,
}

impl PathBound {
    pub fn new(objective: ObjectiveKind, model: &IlpModel, net: &TimeExpandedNetwork, inst: &Instance) -> Self {
        let n = inst.robot_count();
        let mut robots = Vec::with_capacity(n);
        for i in 0..n {
            let mut per_node: Vec<Vec<NetArc>> = vec![Vec::new(); net.node_count()];
            for (&(_, a), &x) in model.var_of_arc.range((i, 0)..(i + 1, 0)) {
                let arc = net.arc(a);
                if arc.kind == ArcKind::Loopback {
                    continue;
                }
                let head_vertex = match net.node(arc.head) {
                    NodeKind::Copy { vertex, layer } => Some((vertex, layer)),
                    _ => None,
                };
                per_node[arc.tail].push((x, arc.head, arc.cost, head_vertex));
            }
            let mut first = Vec::with_capacity(net.node_count() + 1);
            let mut arcs = Vec::new();
            for list in per_node {
                first.push(arcs.len() as u32);
                arcs.extend(list);
            }
            first.push(arcs.len() as u32);
            robots.push(RobotArcs { source: net.source(i), start: inst.start(i), first, arcs });
        }
        let dist = (0..n).map(|i| inst.graph().distances_from(inst.goal(i))).collect();
        PathBound { objective, robots, dist, goals: inst.goals().to_vec() }
    }

    fn robot_bound(&self, i: usize, lower: &[i64]) -> i64 {
        let r = &self.robots[i];
        let goal = self.goals[i];
        let (mut node, mut cost) = (r.source, 0i64);
        let (mut vertex, mut layer, mut settled) = (r.start, 0usize, 0i64);
        // First layer of the current uninterrupted stay at the goal.
        let mut streak = (vertex == goal).then_some(0);
        'walk: loop {
            let (lo, hi) = (r.first[node] as usize, r.first[node + 1] as usize);
            for &(x, head, c, hv) in &r.arcs[lo..hi] {
                if lower[x] >= 1 {
                    cost += c;
                    node = head;
                    if let Some((v, t)) = hv {
                        if v != goal {
                            streak = None;
                        } else if vertex != goal {
                            streak = Some(t);
                        }
                        (vertex, layer, settled) = (v, t, cost);
                    }
                    continue 'walk;
                }
            }
            break;
        }
        let d = self.dist[i][vertex] as i64;
        match self.objective {
            ObjectiveKind::TotalTime if vertex == goal => streak.unwrap_or(layer) as i64,
            ObjectiveKind::TotalTime => layer as i64 + d,
            _ => settled + d,
        }
    }
}

impl BoundHook for PathBound {
    fn bound(&mut self, _model: &IlpModel, lower: &[i64], _upper: &[i64]) -> i64 {
        let per_robot = (0..self.robots.len()).map(|i| self.robot_bound(i, lower));
        match self.objective {
            ObjectiveKind::MaxDistance => per_robot.max().unwrap_or(0),
            ObjectiveKind::Makespan => i64::MAX / 8,
            _ => per_robot.sum(),
        }
    }
}

fn remaining(deadline: Option<Instant>) -> Result<Option<Duration>> {
    match deadline {
        None => Ok(None),
        Some(d) => {
            let now = Instant::now();
            if now >= d {
                Err(Error::Timeout("time limit exhausted".into()))
            } else {
                Ok(Some(d - now))
            }
        }
    }
}

fn check_plan(plan: &Plan, inst: &Instance) -> Result<()> {
    let v = validate(plan, inst);
    match v.first() {
        None => Ok(()),
        Some(first) => Err(Error::Integrity(format!("extracted plan is invalid: {first}"))),
    }
}

struct HorizonSolve {
    plan: Option<Plan>,
    stage: StageReport,
}

/// Builds and solves one objective model at horizon `t`.
fn solve_at(
    inst: &Instance,
    objective: ObjectiveKind,
    t: usize,
    opts: &PlannerOptions,
    deadline: Option<Instant>,
    cutoff: Option<i64>,
) -> Result<HorizonSolve> {
    let net = build_network(inst, t, opts.encoding);
    let usable = reachability_prune(&net, inst);
    let model = build_model(objective, &net, &usable, inst)?;
    let solve_opts = SolveOptions {
        time_limit: remaining(deadline)?,
        gap: opts.gap,
        objective_cutoff: cutoff,
        node_limit: None,
    };
    let mut hook = (objective != ObjectiveKind::Makespan).then(|| PathBound::new(objective, &model, &net, inst));
    let hooks = Hooks { bound: hook.as_mut().map(|h| h as &mut dyn BoundHook), progress: None };
    let out = solve_with(&model, &opts.backend, &solve_opts, hooks)?;
    let stage = StageReport { horizon: t, status: out.status, wall_time: out.wall_time, nodes: out.nodes };
    let routed_all = objective != ObjectiveKind::Makespan || out.objective == Some(inst.robot_count() as i64);
    if !out.has_solution() || !routed_all {
        return Ok(HorizonSolve { plan: None, stage });
    }
    let flow = extract_flow(&model, &out.assignment, inst.robot_count());
    let plan = flow_to_paths(&net, &flow, inst)?;
    check_plan(&plan, inst)?;
    Ok(HorizonSolve { plan: Some(plan), stage })
}

fn finish(
    inst: &Instance,
    objective: ObjectiveKind,
    plan: Plan,
    horizon: usize,
    stages: Vec<StageReport>,
    warnings: Vec<String>,
) -> (Plan, SolveReport) {
    let plan = plan.trimmed();
    let metrics = plan_metrics(&plan);
    let achieved = objective_value(&metrics, objective);
    let lower_bound = objective_lower_bound(inst, objective);
    let status = match stages.last().map(|s| s.status) {
        Some(SolveStatus::Optimal) | None => SolveStatus::Optimal,
        _ => SolveStatus::Feasible,
    };
    let report = SolveReport {
        objective,
        status,
        achieved,
        lower_bound,
        ratio: optimality_ratio(achieved, lower_bound),
        horizon,
        split: 1,
        stages,
        metrics,
        warnings,
    };
    (plan, report)
}

/// Smallest horizon with a collision-free plan, by trying `T = LB, LB+1, ...`.
pub fn min_makespan(inst: &Instance, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let (plan, stages) = makespan_search(inst, opts, deadline)?;
    let t = plan.horizon();
    Ok(finish(inst, ObjectiveKind::Makespan, plan, t, stages, Vec::new()))
}

/// Failed horizons tried one by one before the search starts galloping.
const GALLOP_AFTER: usize = 4;

/// Tries `T = LB, LB+1, ...`. After [`GALLOP_AFTER`] failures it probes
/// `2T` (at most the cap): a failure there rules out every horizon up to the
/// probe, since a shorter plan pads to a longer one; a success switches back
/// to unit steps. Unsolvable instances thus cost a logarithmic number of
/// solves.
fn makespan_search(
    inst: &Instance,
    opts: &PlannerOptions,
    deadline: Option<Instant>,
) -> Result<(Plan, Vec<StageReport>)> {
    let n = inst.robot_count();
    let nv = inst.graph().vertex_count();
    let cap = opts.t_cap.unwrap_or_else(|| nv.saturating_pow(3));
    let lb = makespan_lower_bound(inst);
    let mut t = lb;
    let mut gallop = true;
    let mut stages = Vec::new();
    let attempt = |h: usize, stages: &mut Vec<StageReport>| -> Result<Option<Plan>> {
        let res = solve_at(inst, ObjectiveKind::Makespan, h, opts, deadline, Some(n as i64 - 1)).map_err(|e| {
            match e {
                Error::Timeout(_) => Error::Timeout(format!("time limit reached while testing T={h}")),
                other => other,
            }
        })?;
        let status = res.stage.status;
        stages.push(res.stage);
        if res.plan.is_none() && status == SolveStatus::TimeoutNoIncumbent {
            return Err(Error::Timeout(format!("time limit reached while testing T={h}")));
        }
        Ok(res.plan)
    };
    loop {
        if t > cap {
            return Err(Error::Infeasible(format!("no plan with makespan at most {cap}")));
        }
        if let Some(plan) = attempt(t, &mut stages)? {
            return Ok((plan, stages));
        }
        if gallop && t >= lb + GALLOP_AFTER && t < cap {
            let probe = (2 * t).min(cap);
            if attempt(probe, &mut stages)?.is_some() {
                gallop = false;
            } else {
                t = probe;
            }
        }
        t += 1;
    }
}

/// Pads a plan with holds up to horizon `t`.
fn padded(plan: &Plan, t: usize) -> Plan {
    let paths = plan
        .paths()
        .iter()
        .map(|p| {
            let mut p = p.clone();
            let last = *p.last().unwrap();
            p.resize(t + 1, last);
            p
        })
        .collect();
    Plan::new(paths).expect("paths share a length")
}

/// Solves a distance objective at `n * t_min` (or the configured horizon).
///
/// The makespan plan is improved first at the short horizons `t_min,
/// t_min + 1, ...` (up to `2 * t_min`), where models are small. The final
/// model then only has to beat that incumbent, and is skipped when the
/// incumbent already meets the lower bound.
fn distance_driver(inst: &Instance, objective: ObjectiveKind, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let n = inst.robot_count();
    let (seed, mut stages) = makespan_search(inst, opts, deadline)?;
    let t_min = seed.horizon();
    let mut warnings = Vec::new();
    let sufficient = n * t_min;
    let t = match opts.horizon {
        Some(h) if h < sufficient => {
            warnings.push(format!(
                "horizon {h} is below n*t_min = {sufficient}; the optimum is relative to this horizon"
            ));
            h.max(t_min)
        }
        Some(h) => h,
        None => sufficient,
    };
    let lower = objective_lower_bound(inst, objective);
    let value = |p: &Plan| objective_value(&plan_metrics(p), objective);
    let mut best = seed;
    let mut proven = value(&best) <= lower;
    let mut timed_out = false;
    let mut horizons: Vec<usize> = (t_min..t.min(2 * t_min)).collect();
    horizons.push(t);
    for &h in &horizons {
        if proven || timed_out {
            break;
        }
        match solve_at(inst, objective, h, opts, deadline, Some(value(&best) as i64)) {
            Ok(res) => {
                let status = res.stage.status;
                stages.push(res.stage);
                if let Some(p) = res.plan {
                    best = p;
                }
                match status {
                    SolveStatus::TimeoutNoIncumbent | SolveStatus::Feasible => timed_out = true,
                    // Nothing better exists at the final horizon.
                    _ if h == t => proven = true,
                    _ => {}
                }
                proven |= value(&best) <= lower;
            }
            Err(Error::Timeout(_)) => timed_out = true,
            Err(e) => return Err(e),
        }
    }
    if timed_out {
        warnings.push("time limit reached; optimality not proven".into());
    }
    let plan = padded(&best, t);
    let (plan, mut report) = finish(inst, objective, plan, t, stages, warnings);
    report.status = if proven { SolveStatus::Optimal } else { SolveStatus::Feasible };
    Ok((plan, report))
}

pub fn min_max_dist(inst: &Instance, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    distance_driver(inst, ObjectiveKind::MaxDistance, opts)
}

pub fn min_total_dist(inst: &Instance, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    distance_driver(inst, ObjectiveKind::TotalDistance, opts)
}

/// Minimizes the sum of arrival times.
///
/// A first horizon `T0` comes from a split makespan plan. Solving at `T0`
/// yields `S0`; every optimal plan then has makespan at most
/// `S0 - sum(d) + max(d)` (each other robot needs at least its distance), so
/// the model is solved once more at that horizon if it exceeds `T0`.
pub fn min_total_time(inst: &Instance, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let k = opts.total_time_split.max(1);
    let stage_opts = PlannerOptions { time_limit: remaining(deadline)?, ..opts.clone() };
    let (seed, split_report) = solve_with_split(inst, k, ObjectiveKind::Makespan, &stage_opts)?;
    let mut stages = split_report.stages;
    let t0 = seed.horizon();
    let seed_value = plan_metrics(&seed).total_time as i64;
    let bounds = distance_lower_bound(inst);
    let mut warnings = Vec::new();

    let first = solve_at(inst, ObjectiveKind::TotalTime, t0, opts, deadline, Some(seed_value + 1))?;
    stages.push(first.stage.clone());
    let (mut best, mut horizon) = match first.plan {
        Some(p) => (p, t0),
        None if first.stage.status == SolveStatus::TimeoutNoIncumbent => {
            warnings.push("time limit reached; returning the split plan".into());
            return Ok(finish_with(inst, seed, t0, stages, warnings, SolveStatus::Feasible));
        }
        None => {
            return Err(Error::Integrity(format!("total-time model at T={t0} rejected the split plan")));
        }
    };
    let s0 = plan_metrics(&best).total_time;
    let t_suff = (s0 + bounds.max).saturating_sub(bounds.sum);
    let mut status = first.stage.status;
    if t_suff > t0 {
        match solve_at(inst, ObjectiveKind::TotalTime, t_suff, opts, deadline, Some(s0 as i64 + 1)) {
            Ok(res) => {
                status = res.stage.status;
                let improved = res.plan.is_some();
                stages.push(res.stage);
                if let Some(p) = res.plan {
                    best = p;
                    horizon = t_suff;
                } else if status == SolveStatus::Infeasible {
                    // Nothing better than S0 exists at the sufficient horizon.
                    status = first.stage.status;
                    horizon = t_suff;
                }
                if !improved && status == SolveStatus::TimeoutNoIncumbent {
                    status = SolveStatus::Feasible;
                    warnings.push(format!("time limit reached at T={t_suff}; optimality not proven"));
                }
            }
            Err(Error::Timeout(_)) => {
                status = SolveStatus::Feasible;
                warnings.push(format!("time limit reached before T={t_suff}; optimality not proven"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(finish_with(inst, best, horizon, stages, warnings, status))
}

fn finish_with(
    inst: &Instance,
    plan: Plan,
    horizon: usize,
    stages: Vec<StageReport>,
    warnings: Vec<String>,
    status: SolveStatus,
) -> (Plan, SolveReport) {
    let (plan, mut report) = finish(inst, ObjectiveKind::TotalTime, plan, horizon, stages, warnings);
    report.status = status;
    (plan, report)
}

/// Dispatches to the driver of `objective`.
pub fn solve_objective(inst: &Instance, objective: ObjectiveKind, opts: &PlannerOptions) -> Result<(Plan, SolveReport)> {
    match objective {
        ObjectiveKind::Makespan => min_makespan(inst, opts),
        ObjectiveKind::MaxDistance => min_max_dist(inst, opts),
        ObjectiveKind::TotalTime => min_total_time(inst, opts),
        ObjectiveKind::TotalDistance => min_total_dist(inst, opts),
    }
}

/// Closest vertex to `from` that is not yet claimed, by BFS; ties go to the
/// smallest vertex index.
fn nearest_unclaimed(g: &Graph, from: VertexId, claimed: &[bool]) -> Option<VertexId> {
    if !claimed[from] {
        return Some(from);
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut frontier = vec![from];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if let Some(&v) = next.iter().filter(|&&v| !claimed[v]).min() {
            return Some(v);
        }
        frontier = next;
    }
    None
}

/// Splits an instance into `k` consecutive sub-instances whose intermediate
/// goals lie along each robot's shortest path.
pub fn k_way_split(inst: &Instance, k: usize) -> Result<Vec<Instance>> {
    if k == 0 {
        return Err(Error::Config("split factor must be at least 1".into()));
    }
    let g = inst.graph();
    let n = inst.robot_count();
    let paths: Vec<Vec<VertexId>> =
        (0..n).map(|i| g.shortest_path(inst.start(i), inst.goal(i))).collect::<Result<_>>()?;
    let mut configs = vec![inst.starts().to_vec()];
    for m in 1..k {
        let mut claimed = vec![false; g.vertex_count()];
        let mut config = Vec::with_capacity(n);
        for path in &paths {
            let len = path.len() - 1;
            // round(m * len / k), halves rounded up
            let idx = (2 * m * len + k) / (2 * k);
            let v = nearest_unclaimed(g, path[idx], &claimed)
                .ok_or_else(|| Error::Generation("no unclaimed vertex left for an intermediate goal".into()))?;
            claimed[v] = true;
            config.push(v);
        }
        configs.push(config);
    }
    configs.push(inst.goals().to_vec());
    configs.windows(2).map(|w| inst.with_endpoints(w[0].clone(), w[1].clone())).collect()
}

/// Solves the `k` stages of a split independently (in parallel) and
/// concatenates their plans.
pub fn solve_with_split(
    inst: &Instance,
    k: usize,
    objective: ObjectiveKind,
    opts: &PlannerOptions,
) -> Result<(Plan, SolveReport)> {
    if objective == ObjectiveKind::TotalTime && k > 1 {
        return Err(Error::Config(
            "total time is not additive over split stages; use the totaltime objective without --split".into(),
        ));
    }
    if k == 1 {
        return solve_objective(inst, objective, opts);
    }
    let stages = k_way_split(inst, k)?;
    let results: Vec<Result<(Plan, SolveReport)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = stages
            .iter()
            .map(|stage| scope.spawn(move || solve_objective(stage, objective, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Model("stage solver panicked".into()))))
            .collect()
    });
    let mut plans = Vec::with_capacity(k);
    let mut stage_reports = Vec::new();
    let mut warnings = Vec::new();
    let mut status = SolveStatus::Optimal;
    for (m, res) in results.into_iter().enumerate() {
        let (plan, report) = res.map_err(|e| stage_error(m, e))?;
        plans.push(plan.trimmed());
        if report.status != SolveStatus::Optimal {
            status = SolveStatus::Feasible;
        }
        let stage_horizon = plan.horizon();
        let wall_time = report.total_wall_time();
        let nodes = report.stages.iter().map(|s| s.nodes).sum();
        stage_reports.push(StageReport { horizon: stage_horizon, status: report.status, wall_time, nodes });
        warnings.extend(report.warnings.into_iter().map(|w| format!("stage {m}: {w}")));
    }
    let plan = Plan::concat(&plans)?;
    check_plan(&plan, inst)?;
    let metrics = plan_metrics(&plan);
    let achieved = objective_value(&metrics, objective);
    let lower_bound = objective_lower_bound(inst, objective);
    let report = SolveReport {
        objective,
        status: if status == SolveStatus::Optimal { SolveStatus::Feasible } else { status },
        achieved,
        lower_bound,
        ratio: optimality_ratio(achieved, lower_bound),
        horizon: plan.horizon(),
        split: k,
        stages: stage_reports,
        metrics,
        warnings,
    };
    Ok((plan, report))
}

fn stage_error(m: usize, e: Error) -> Error {
    match e {
        Error::Infeasible(s) => Error::Infeasible(format!("stage {m}: {s}")),
        Error::Timeout(s) => Error::Timeout(format!("stage {m}: {s}")),
        Error::ExternalSolver(s) => Error::ExternalSolver(format!("stage {m}: {s}")),
        Error::Integrity(s) => Error::Integrity(format!("stage {m}: {s}")),
        Error::Model(s) => Error::Model(format!("stage {m}: {s}")),
        other => other,
    }
}
