//! Depth-first branch and bound for pure integer programs with bounded
//! variables.
//!
//! Every row keeps incremental minimum and maximum activities over the
//! current domains, so bound propagation and undo are proportional to the
//! number of rows a changed variable appears in. The objective is carried as
//! one more row whose right-hand side drops below each new incumbent.
//!
//! Branching prefers "demanding" rows: rows that the all-at-lower-bound
//! assignment would violate. Those are visited by layer, then by the number of
//! free variables; inside a row the variable with the smallest hint goes
//! first. When no row is demanding, setting every free variable to its lower
//! bound is feasible, so the node is either a leaf or only needs the
//! variables whose objective coefficient rewards raising them.
//!
//! On 0/1 models every conflict is traced back to its first unique
//! implication point. The resulting nogood is kept as a clause and the search
//! jumps back to the deepest decision it still involves. Models with general
//! integers use plain chronological backtracking.

use std::collections::BTreeSet;
use std::time::Instant;

use super::{Hooks, Progress, SolveOptions, SolveOutcome, SolveStatus};
use crate::ilp::{IlpModel, ObjSense, Sense, VarId};

const INF: i64 = i64::MAX / 4;

/// Learned clauses kept before the longer half is dropped.
const CLAUSE_BUDGET: usize = 50_000;

fn div_floor(num: i64, den: i64) -> i64 {
    if den > 0 {
        num.div_euclid(den)
    } else {
        (-num).div_euclid(-den)
    }
}

fn div_ceil(num: i64, den: i64) -> i64 {
    -div_floor(-num, den)
}

/// `x_v = b` encoded as `2v + b`.
type Lit = u32;

fn lit(v: VarId, b: i64) -> Lit {
    (2 * v) as Lit + b as Lit
}

fn lit_var(l: Lit) -> VarId {
    (l / 2) as VarId
}

fn lit_bit(l: Lit) -> i64 {
    (l & 1) as i64
}

struct Row {
    terms: Vec<(VarId, i64)>,
    lo: i64,
    hi: i64,
    min_act: i64,
    max_act: i64,
    /// Activity with every variable at its lower bound.
    lb_act: i64,
    free: u32,
    layer: u32,
    /// Largest `|a| * (ub - lb)` over the initial domains.
    span: i64,
}

impl Row {
    fn demanding(&self) -> bool {
        self.free > 0 && (self.lb_act < self.lo || self.lb_act > self.hi)
    }

    fn key(&self, id: usize) -> (u32, u32, usize) {
        (self.layer, self.free, id)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Reason {
    Decision,
    Row(u32),
    Clause(u32),
}

#[derive(Clone, Copy)]
enum Conflict {
    Row(usize),
    Clause(usize),
    /// Pruned by a bound; only the decisions themselves are to blame.
    Decisions,
}

struct Decision {
    var: VarId,
    trail_len: usize,
    alternative: Option<(i64, i64)>,
}

struct Engine<'m> {
    model: &'m IlpModel,
    lb: Vec<i64>,
    ub: Vec<i64>,
    rows: Vec<Row>,
    cols: Vec<Vec<(usize, i64)>>,
    obj_row: usize,
    /// Objective in minimization form.
    cost: Vec<i64>,
    constant: i64,
    demand: BTreeSet<(u32, u32, usize)>,
    trail: Vec<(VarId, i64, i64)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    /// Variables whose objective coefficient rewards their upper bound.
    raise: Vec<VarId>,

    /// Conflict analysis is on (every variable is 0/1).
    learning: bool,
    level: u32,
    var_level: Vec<u32>,
    var_pos: Vec<u32>,
    reason: Vec<Reason>,
    /// Variables fixed since their clauses were last visited.
    fixed: Vec<VarId>,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    learned: usize,
    seen: Vec<bool>,
}

impl<'m> Engine<'m> {
    fn new(model: &'m IlpModel) -> Self {
        let nv = model.var_count();
        let lb: Vec<i64> = model.variables.iter().map(|v| v.lower).collect();
        let ub: Vec<i64> = model.variables.iter().map(|v| v.upper).collect();
        let flip = if model.objective.sense == ObjSense::Maximize { -1 } else { 1 };
        let mut cost = vec![0i64; nv];
        for &(v, c) in &model.objective.terms {
            cost[v] += flip * c;
        }
        let mut rows = Vec::with_capacity(model.row_count() + 1);
        for (r, c) in model.constraints.iter().enumerate() {
            let (lo, hi) = match c.sense {
                Sense::Le => (-INF, c.rhs),
                Sense::Eq => (c.rhs, c.rhs),
                Sense::Ge => (c.rhs, INF),
            };
            let layer = model.row_layer.get(r).copied().unwrap_or(0);
            rows.push(Self::make_row(c.terms.clone(), lo, hi, layer, &lb, &ub));
        }
        let obj_terms: Vec<(VarId, i64)> =
            cost.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, &c)| (v, c)).collect();
        let obj_row = rows.len();
        rows.push(Self::make_row(obj_terms, -INF, INF, u32::MAX, &lb, &ub));
        let mut cols = vec![Vec::new(); nv];
        for (r, row) in rows.iter().enumerate() {
            for &(v, a) in &row.terms {
                cols[v].push((r, a));
            }
        }
        let mut demand = BTreeSet::new();
        for (r, row) in rows.iter().enumerate() {
            if r != obj_row && row.demanding() {
                demand.insert(row.key(r));
            }
        }
        let raise = (0..nv).filter(|&v| cost[v] < 0).collect();
        let queued = vec![false; rows.len()];
        let learning = lb.iter().zip(&ub).all(|(&l, &u)| l >= 0 && u <= 1);
        Engine {
            model,
            lb,
            ub,
            rows,
            cols,
            obj_row,
            cost,
            constant: flip * model.objective.constant,
            demand,
            trail: Vec::new(),
            queue: Vec::new(),
            queued,
            raise,
            learning,
            level: 0,
            var_level: vec![0; nv],
            var_pos: vec![0; nv],
            reason: vec![Reason::Decision; nv],
            fixed: Vec::new(),
            clauses: Vec::new(),
            watches: if learning { vec![Vec::new(); 2 * nv] } else { Vec::new() },
            learned: 0,
            seen: vec![false; nv],
        }
    }

    fn make_row(terms: Vec<(VarId, i64)>, lo: i64, hi: i64, layer: u32, lb: &[i64], ub: &[i64]) -> Row {
        let mut row = Row { terms, lo, hi, min_act: 0, max_act: 0, lb_act: 0, free: 0, layer, span: 0 };
        for &(v, a) in &row.terms {
            let (l, u) = (lb[v], ub[v]);
            if a > 0 {
                row.min_act += a * l;
                row.max_act += a * u;
            } else {
                row.min_act += a * u;
                row.max_act += a * l;
            }
            row.lb_act += a * l;
            if l < u {
                row.free += 1;
            }
            row.span = row.span.max(a.abs() * (u - l));
        }
        row
    }

    /// Moves `v` to the domain `[nl, nu]`, updating every row it touches.
    /// Changes made with a reason go on the trail; undo passes `None`.
    fn set_domain(&mut self, v: VarId, nl: i64, nu: i64, why: Option<Reason>) {
        let (ol, ou) = (self.lb[v], self.ub[v]);
        if (ol, ou) == (nl, nu) {
            return;
        }
        if let Some(why) = why {
            if self.learning {
                self.var_level[v] = self.level;
                self.var_pos[v] = self.trail.len() as u32;
                self.reason[v] = why;
                self.fixed.push(v);
            }
            self.trail.push((v, ol, ou));
        }
        self.lb[v] = nl;
        self.ub[v] = nu;
        let was_free = ol < ou;
        let is_free = nl < nu;
        for k in 0..self.cols[v].len() {
            let (r, a) = self.cols[v][k];
            let row = &mut self.rows[r];
            let before = (r != self.obj_row && row.demanding()).then(|| row.key(r));
            if a > 0 {
                row.min_act += a * (nl - ol);
                row.max_act += a * (nu - ou);
            } else {
                row.min_act += a * (nu - ou);
                row.max_act += a * (nl - ol);
            }
            row.lb_act += a * (nl - ol);
            match (was_free, is_free) {
                (true, false) => row.free -= 1,
                (false, true) => row.free += 1,
                _ => {}
            }
            if r != self.obj_row {
                let after = row.demanding().then(|| row.key(r));
                if before != after {
                    if let Some(k) = before {
                        self.demand.remove(&k);
                    }
                    if let Some(k) = after {
                        self.demand.insert(k);
                    }
                }
            }
            if why.is_some() && !self.queued[r] {
                self.queued[r] = true;
                self.queue.push(r);
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let (v, l, u) = self.trail.pop().unwrap();
            self.set_domain(v, l, u, None);
        }
    }

    fn clear_queue(&mut self) {
        for r in self.queue.drain(..) {
            self.queued[r] = false;
        }
        self.fixed.clear();
    }

    fn enqueue(&mut self, r: usize) {
        if !self.queued[r] {
            self.queued[r] = true;
            self.queue.push(r);
        }
    }

    /// Runs bound and clause propagation to a fixpoint.
    fn propagate(&mut self) -> Result<(), Conflict> {
        loop {
            let res = if let Some(v) = self.fixed.pop() {
                self.propagate_clauses(v)
            } else if let Some(r) = self.queue.pop() {
                self.queued[r] = false;
                self.propagate_row(r)
            } else {
                return Ok(());
            };
            if res.is_err() {
                self.clear_queue();
                return res;
            }
        }
    }

    fn propagate_row(&mut self, r: usize) -> Result<(), Conflict> {
        let row = &self.rows[r];
        if row.min_act > row.hi || row.max_act < row.lo {
            return Err(Conflict::Row(r));
        }
        if row.hi - row.min_act >= row.span && row.max_act - row.lo >= row.span {
            return Ok(());
        }
        for k in 0..self.rows[r].terms.len() {
            let (v, a) = self.rows[r].terms[k];
            let (l, u) = (self.lb[v], self.ub[v]);
            if l == u {
                continue;
            }
            let row = &self.rows[r];
            let (mut nl, mut nu) = (l, u);
            if row.hi < INF {
                if a > 0 {
                    nu = nu.min(div_floor(row.hi - row.min_act + a * l, a));
                } else {
                    nl = nl.max(div_ceil(row.hi - row.min_act + a * u, a));
                }
            }
            if row.lo > -INF {
                if a > 0 {
                    nl = nl.max(div_ceil(row.lo - row.max_act + a * u, a));
                } else {
                    nu = nu.min(div_floor(row.lo - row.max_act + a * l, a));
                }
            }
            if nl > nu {
                return Err(Conflict::Row(r));
            }
            if (nl, nu) != (l, u) {
                self.set_domain(v, nl, nu, Some(Reason::Row(r as u32)));
                let row = &self.rows[r];
                if row.min_act > row.hi || row.max_act < row.lo {
                    return Err(Conflict::Row(r));
                }
            }
        }
        Ok(())
    }

    fn is_false(&self, l: Lit) -> bool {
        let v = lit_var(l);
        self.lb[v] == self.ub[v] && self.lb[v] != lit_bit(l)
    }

    fn is_true(&self, l: Lit) -> bool {
        let v = lit_var(l);
        self.lb[v] == self.ub[v] && self.lb[v] == lit_bit(l)
    }

    /// Visits the clauses watching the literal that fixing `v` made false.
    fn propagate_clauses(&mut self, v: VarId) -> Result<(), Conflict> {
        let false_lit = lit(v, 1 - self.lb[v]);
        let mut watching = std::mem::take(&mut self.watches[false_lit as usize]);
        let mut keep = 0;
        let mut result = Ok(());
        let mut i = 0;
        while i < watching.len() {
            let c = watching[i] as usize;
            i += 1;
            if self.clauses[c][0] == false_lit {
                self.clauses[c].swap(0, 1);
            }
            let first = self.clauses[c][0];
            if self.is_true(first) {
                watching[keep] = c as u32;
                keep += 1;
                continue;
            }
            let replacement = (2..self.clauses[c].len()).find(|&k| !self.is_false(self.clauses[c][k]));
            if let Some(k) = replacement {
                self.clauses[c].swap(1, k);
                let w = self.clauses[c][1] as usize;
                self.watches[w].push(c as u32);
                continue;
            }
            watching[keep] = c as u32;
            keep += 1;
            if self.is_false(first) {
                result = Err(Conflict::Clause(c));
                break;
            }
            let b = lit_bit(first);
            self.set_domain(lit_var(first), b, b, Some(Reason::Clause(c as u32)));
        }
        while i < watching.len() {
            watching[keep] = watching[i];
            keep += 1;
            i += 1;
        }
        watching.truncate(keep);
        self.watches[false_lit as usize] = watching;
        result
    }

    /// Fixed variables of row `r` that push its activity past `hi` (when
    /// `upper`) or below `lo`, among those fixed before trail position
    /// `before`.
    fn row_culprits(&self, r: usize, upper: bool, before: u32, out: &mut Vec<VarId>) {
        for &(v, a) in &self.rows[r].terms {
            if self.lb[v] != self.ub[v] || self.var_pos[v] >= before {
                continue;
            }
            if (a > 0) == ((self.lb[v] == 1) == upper) {
                out.push(v);
            }
        }
    }

    fn explain_conflict(&self, c: Conflict, decisions: &[Decision], out: &mut Vec<VarId>) {
        match c {
            Conflict::Row(r) => {
                let upper = self.rows[r].min_act > self.rows[r].hi;
                self.row_culprits(r, upper, u32::MAX, out);
            }
            Conflict::Clause(c) => out.extend(self.clauses[c].iter().map(|&l| lit_var(l))),
            Conflict::Decisions => out.extend(decisions.iter().map(|d| d.var)),
        }
    }

    fn explain_var(&self, v: VarId, out: &mut Vec<VarId>) {
        match self.reason[v] {
            Reason::Decision => {}
            Reason::Row(r) => {
                let a = self.rows[r as usize].terms.iter().find(|t| t.0 == v).map_or(1, |t| t.1);
                // Pushed down by the upper side, or up by the lower side.
                let upper = (a > 0) == (self.lb[v] == 0);
                self.row_culprits(r as usize, upper, self.var_pos[v], out);
            }
            Reason::Clause(c) => {
                out.extend(self.clauses[c as usize].iter().map(|&l| lit_var(l)).filter(|&u| u != v));
            }
        }
    }

    /// First-UIP analysis. Returns the learned clause (asserting literal
    /// first) and the level to jump back to, or `Err(level)` when no culprit
    /// was fixed at the current level and the conflict already holds at
    /// `level`.
    fn analyze(&mut self, c: Conflict, decisions: &[Decision]) -> Result<(Vec<Lit>, u32), u32> {
        let mut buf = Vec::new();
        self.explain_conflict(c, decisions, &mut buf);
        let top = buf.iter().map(|&u| self.var_level[u]).max().unwrap_or(0);
        if top < self.level {
            return Err(top);
        }
        let mut pending = 0usize;
        let mut lower: Vec<VarId> = Vec::new();
        let mut touched: Vec<VarId> = Vec::new();
        let mut idx = self.trail.len();
        let uip = loop {
            for &u in &buf {
                if self.seen[u] || self.var_level[u] == 0 {
                    continue;
                }
                self.seen[u] = true;
                touched.push(u);
                if self.var_level[u] == self.level {
                    pending += 1;
                } else {
                    lower.push(u);
                }
            }
            buf.clear();
            let v = loop {
                idx -= 1;
                let v = self.trail[idx].0;
                if self.seen[v] && self.var_pos[v] as usize == idx {
                    break v;
                }
            };
            pending -= 1;
            if pending == 0 {
                break v;
            }
            self.explain_var(v, &mut buf);
        };
        for &u in &touched {
            self.seen[u] = false;
        }
        let mut clause = vec![lit(uip, 1 - self.lb[uip])];
        let (mut back, mut second) = (0, 0);
        for (k, &u) in lower.iter().enumerate() {
            clause.push(lit(u, 1 - self.lb[u]));
            if self.var_level[u] > back {
                back = self.var_level[u];
                second = k + 1;
            }
        }
        if second > 0 {
            clause.swap(1, second);
        }
        Ok((clause, back))
    }

    /// Stores a learned clause and asserts its first literal.
    fn learn(&mut self, clause: Vec<Lit>) {
        let c = self.clauses.len();
        let first = clause[0];
        if clause.len() >= 2 {
            self.watches[clause[0] as usize].push(c as u32);
            self.watches[clause[1] as usize].push(c as u32);
        }
        self.clauses.push(clause);
        self.learned += 1;
        let b = lit_bit(first);
        self.set_domain(lit_var(first), b, b, Some(Reason::Clause(c as u32)));
    }

    fn locked(&self, c: usize) -> bool {
        let Some(&first) = self.clauses[c].first() else {
            return false;
        };
        let u = lit_var(first);
        self.lb[u] == self.ub[u] && self.reason[u] == Reason::Clause(c as u32)
    }

    /// Drops the longer half of the clauses not currently serving as a reason.
    fn reduce_clauses(&mut self) {
        let mut sizes: Vec<usize> =
            (0..self.clauses.len()).filter(|&c| !self.locked(c)).map(|c| self.clauses[c].len()).collect();
        sizes.retain(|&s| s > 2);
        if sizes.is_empty() {
            return;
        }
        sizes.sort_unstable();
        let cut = sizes[sizes.len() / 2].max(3);
        for c in 0..self.clauses.len() {
            if self.clauses[c].len() > cut && !self.locked(c) {
                self.clauses[c] = Vec::new();
                self.learned -= 1;
            }
        }
        for w in &mut self.watches {
            w.clear();
        }
        for (c, lits) in self.clauses.iter().enumerate() {
            if lits.len() >= 2 {
                self.watches[lits[0] as usize].push(c as u32);
                self.watches[lits[1] as usize].push(c as u32);
            }
        }
    }

    /// Objective lower bound (minimization form) from the domains alone.
    fn domain_bound(&self) -> i64 {
        self.rows[self.obj_row].min_act + self.constant
    }

    fn set_objective_limit(&mut self, limit: i64) {
        self.rows[self.obj_row].hi = limit - self.constant;
        self.enqueue(self.obj_row);
    }

    /// Picks the next decision as `(var, first domain, second domain)`.
    fn choose(&self) -> Option<(VarId, (i64, i64), (i64, i64))> {
        if let Some(&(_, _, r)) = self.demand.iter().next() {
            let row = &self.rows[r];
            let raise_sign = if row.lb_act < row.lo { 1 } else { -1 };
            let mut best: Option<(i64, i64, VarId, i64)> = None;
            for &(v, a) in &row.terms {
                if self.lb[v] == self.ub[v] || a.signum() != raise_sign {
                    continue;
                }
                let hint = self.model.var_hint.get(v).copied().unwrap_or(0);
                let key = (hint, self.cost[v], v, a);
                if best.is_none_or(|b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
            let (_, _, v, a) = best.expect("demanding row without a helpful free variable");
            let (l, u) = (self.lb[v], self.ub[v]);
            let gap = if row.lb_act < row.lo { row.lo - row.lb_act } else { row.lb_act - row.hi };
            let target = (l + div_ceil(gap, a.abs())).min(u);
            return Some((v, (target, u), (l, target - 1)));
        }
        let v = self.raise.iter().copied().find(|&v| self.lb[v] < self.ub[v])?;
        let (l, u) = (self.lb[v], self.ub[v]);
        Some((v, (u, u), (l, u - 1)))
    }

    /// Undoes every decision above `level`.
    fn jump_to(&mut self, level: u32, stack: &mut Vec<Decision>) {
        self.clear_queue();
        self.undo_to(stack[level as usize].trail_len);
        stack.truncate(level as usize);
        self.level = level;
    }
}

pub(super) fn run(model: &IlpModel, opts: &SolveOptions, hooks: Hooks<'_>) -> SolveOutcome {
    let Hooks { bound: mut hook, mut progress } = hooks;
    let started = Instant::now();
    let flip = if model.objective.sense == ObjSense::Maximize { -1 } else { 1 };
    let mut out = SolveOutcome {
        status: SolveStatus::Infeasible,
        assignment: Vec::new(),
        objective: None,
        best_bound: None,
        wall_time: Default::default(),
        nodes: 0,
    };
    if model.trivially_infeasible.is_some() {
        out.wall_time = started.elapsed();
        return out;
    }
    let mut eng = Engine::new(model);
    let mut incumbent: Option<i64> = None;
    if let Some(c) = opts.objective_cutoff {
        eng.set_objective_limit(flip * c - 1);
    }
    for r in 0..eng.rows.len() {
        eng.enqueue(r);
    }
    let mut stack: Vec<Decision> = Vec::new();
    let mut root_bound: Option<i64> = None;
    let mut timed_out = false;
    let mut gap_reached = false;
    let mut state = eng.propagate();

    'search: loop {
        if let Err(conflict) = state {
            out.nodes += 1;
            if stack.is_empty() {
                break 'search;
            }
            if eng.learning {
                let (clause, back) = loop {
                    match eng.analyze(conflict, &stack) {
                        Ok(learned) => break learned,
                        Err(0) => break 'search,
                        Err(level) => eng.jump_to(level, &mut stack),
                    }
                };
                eng.jump_to(back, &mut stack);
                if eng.learned >= CLAUSE_BUDGET {
                    eng.reduce_clauses();
                }
                eng.learn(clause);
                eng.enqueue(eng.obj_row);
                state = eng.propagate();
                continue 'search;
            }
            // Backtrack to the deepest decision with an untried alternative.
            loop {
                let Some(top) = stack.last_mut() else {
                    break 'search;
                };
                let trail_len = top.trail_len;
                let var = top.var;
                let alt = top.alternative.take();
                eng.clear_queue();
                eng.undo_to(trail_len);
                match alt {
                    Some((l, u)) => {
                        eng.set_domain(var, l, u, Some(Reason::Decision));
                        eng.enqueue(eng.obj_row);
                        state = eng.propagate();
                        continue 'search;
                    }
                    None => {
                        stack.pop();
                    }
                }
            }
        }

        out.nodes += 1;
        // The clock is read on the first node and every 256th after it.
        let over_time = out.nodes % 256 == 1 && opts.time_limit.is_some_and(|t| started.elapsed() >= t);
        let over_nodes = opts.node_limit.is_some_and(|n| out.nodes > n);
        if over_time || over_nodes {
            timed_out = true;
            break 'search;
        }
        let mut bound = eng.domain_bound();
        if let Some(h) = hook.as_deref_mut() {
            bound = bound.max(flip * h.bound(model, &eng.lb, &eng.ub));
        }
        if root_bound.is_none() {
            root_bound = Some(bound);
        }
        let pruned = incumbent.is_some_and(|z| bound >= z)
            || opts.objective_cutoff.is_some_and(|c| bound > flip * c - 1);
        if pruned {
            state = Err(Conflict::Decisions);
            continue 'search;
        }
        match eng.choose() {
            Some((var, first, second)) => {
                stack.push(Decision { var, trail_len: eng.trail.len(), alternative: Some(second) });
                eng.level = stack.len() as u32;
                eng.set_domain(var, first.0, first.1, Some(Reason::Decision));
                state = eng.propagate();
            }
            None => {
                let values = eng.lb.clone();
                debug_assert!(model.check_assignment(&values).is_ok());
                let z = flip * model.objective_value(&values);
                incumbent = Some(z);
                out.assignment = values;
                if let Some(p) = progress.as_deref_mut() {
                    p(&Progress {
                        incumbent: flip * z,
                        bound: flip * root_bound.unwrap_or(z),
                        nodes: out.nodes,
                        elapsed: started.elapsed(),
                    });
                }
                let rb = root_bound.unwrap_or(z);
                if z <= rb {
                    break 'search;
                }
                let rel = (z - rb) as f64 / (z.abs().max(1) as f64);
                if opts.gap > 0.0 && rel <= opts.gap {
                    gap_reached = true;
                    break 'search;
                }
                eng.set_objective_limit(z - 1);
                state = eng.propagate();
            }
        }
    }

    out.wall_time = started.elapsed();
    out.objective = incumbent.map(|z| flip * z);
    out.status = match (incumbent, timed_out || gap_reached) {
        (Some(_), false) => SolveStatus::Optimal,
        (Some(z), true) => {
            if root_bound.is_some_and(|b| b >= z) {
                SolveStatus::Optimal
            } else {
                SolveStatus::Feasible
            }
        }
        (None, true) => SolveStatus::TimeoutNoIncumbent,
        (None, false) => SolveStatus::Infeasible,
    };
    out.best_bound = match out.status {
        SolveStatus::Optimal => out.objective,
        _ => root_bound.map(|b| flip * b),
    };
    out
}
