//! Forward state-space search over ground STRIPS actions.
//!
//! Two modes: greedy best-first on the goal-count heuristic (the default
//! executor path) and breadth-first uniform-cost search that returns
//! shortest plans for optimality checks. Both use duplicate detection over
//! a compact bitset state encoding and break ties lexicographically on
//! `(action name, argument tuple)` so plans are deterministic.

use super::ast::*;
use super::ground::{applicable, apply_unchecked, ground_all_actions, satisfies};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap, HashMap, VecDeque};
use thiserror::Error;

/// Why `plan` returned no plan. Budget exhaustion is distinct from a
/// proven-unsolvable instance (frontier emptied without reaching a goal).
#[derive(Debug, Error, PartialEq, Clone)]
pub enum PlanFailure {
    #[error("goal unreachable: search space exhausted after {explored} states")]
    Unsolvable { explored: usize },
    #[error("search budget of {budget} expanded nodes exhausted")]
    BudgetExhausted { budget: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Greedy best-first on unsatisfied-goal count.
    Greedy,
    /// Uniform-cost (unit costs, so breadth-first); returns shortest plans.
    Optimal,
}

#[derive(Debug, Clone, Copy)]
pub struct PlannerConfig {
    pub mode: SearchMode,
    /// Maximum number of expanded nodes before giving up.
    pub node_budget: usize,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig { mode: SearchMode::Greedy, node_budget: 1_000_000 }
    }
}

impl PlannerConfig {
    pub fn optimal() -> Self {
        PlannerConfig { mode: SearchMode::Optimal, ..Default::default() }
    }
}

// ---------------------------------------------------------------------------
// Atom interning and bitset states

/// Maps ground atoms to dense indices. Atoms are registered lazily as
/// search discovers them; household instances stay small.
#[derive(Default)]
struct AtomTable {
    ids: HashMap<GroundAtom, u32>,
    atoms: Vec<GroundAtom>,
}

impl AtomTable {
    fn intern(&mut self, atom: &GroundAtom) -> u32 {
        if let Some(&id) = self.ids.get(atom) {
            return id;
        }
        let id = self.atoms.len() as u32;
        self.ids.insert(atom.clone(), id);
        self.atoms.push(atom.clone());
        id
    }

    fn get(&self, atom: &GroundAtom) -> Option<u32> {
        self.ids.get(atom).copied()
    }
}

type BitState = Box<[u64]>;

fn bit_set(state: &mut [u64], id: u32) {
    state[(id / 64) as usize] |= 1 << (id % 64);
}

fn bit_clear(state: &mut [u64], id: u32) {
    state[(id / 64) as usize] &= !(1 << (id % 64));
}

fn bit_get(state: &[u64], id: u32) -> bool {
    state.get((id / 64) as usize).is_some_and(|w| w & (1 << (id % 64)) != 0)
}

struct CompiledAction {
    index: usize,
    pre_pos: Vec<u32>,
    pre_neg: Vec<u32>,
    add: Vec<u32>,
    del: Vec<u32>,
}

impl CompiledAction {
    fn applicable(&self, state: &[u64]) -> bool {
        self.pre_pos.iter().all(|&id| bit_get(state, id))
            && self.pre_neg.iter().all(|&id| !bit_get(state, id))
    }

    fn apply(&self, state: &[u64]) -> BitState {
        let mut next: BitState = state.into();
        for &id in &self.del {
            bit_clear(&mut next, id);
        }
        for &id in &self.add {
            bit_set(&mut next, id);
        }
        next
    }
}

struct CompiledTask {
    actions: Vec<GroundAction>,
    compiled: Vec<CompiledAction>,
    goal_pos: Vec<u32>,
    goal_neg: Vec<u32>,
    init: BitState,

}

fn compile_task(
    domain: &Domain,
    objects: &BTreeMap<String, String>,
    init: &SymbolicState,
    goal: &[GroundLiteral],
) -> CompiledTask {
    let mut table = AtomTable::default();
    let actions = ground_all_actions(domain, objects);

    // Register every atom any action or the goal can mention, plus init.
    for atom in init.iter() {
        table.intern(atom);
    }
    for lit in goal {
        table.intern(&lit.atom);
    }
    let mut compiled = Vec::with_capacity(actions.len());
    for (index, action) in actions.iter().enumerate() {
        let mut pre_pos = Vec::new();
        let mut pre_neg = Vec::new();
        for lit in &action.preconditions {
            let id = table.intern(&lit.atom);
            if lit.positive {
                pre_pos.push(id);
            } else {
                pre_neg.push(id);
            }
        }
        let add = action.add_effects.iter().map(|a| table.intern(a)).collect();
        let del = action.del_effects.iter().map(|a| table.intern(a)).collect();
        compiled.push(CompiledAction { index, pre_pos, pre_neg, add, del });
    }

    let words = table.atoms.len().div_ceil(64).max(1);
    let mut init_bits: BitState = vec![0u64; words].into();
    for atom in init.iter() {
        if let Some(id) = table.get(atom) {
            bit_set(&mut init_bits, id);
        }
    }
    let goal_pos = goal.iter().filter(|l| l.positive).map(|l| table.get(&l.atom).unwrap()).collect();
    let goal_neg = goal.iter().filter(|l| !l.positive).map(|l| table.get(&l.atom).unwrap()).collect();

    CompiledTask { actions, compiled, goal_pos, goal_neg, init: init_bits }
}

impl CompiledTask {
    fn goal_count(&self, state: &[u64]) -> u32 {
        let unmet_pos = self.goal_pos.iter().filter(|&&id| !bit_get(state, id)).count();
        let unmet_neg = self.goal_neg.iter().filter(|&&id| bit_get(state, id)).count();
        (unmet_pos + unmet_neg) as u32
    }

    fn is_goal(&self, state: &[u64]) -> bool {
        self.goal_count(state) == 0
    }
}

// ---------------------------------------------------------------------------
// Search

/// Plan from `init` to `goal` over the ground instances of `domain`'s
/// schemas on `objects`. The returned plan always validates; see
/// [`super::validate::validate_plan`].
pub fn plan(
    domain: &Domain,
    objects: &BTreeMap<String, String>,
    init: &SymbolicState,
    goal: &[GroundLiteral],
    config: &PlannerConfig,
) -> Result<Plan, PlanFailure> {
    let task = compile_task(domain, objects, init, goal);
    if task.is_goal(&task.init) {
        return Ok(Plan::default());
    }
    match config.mode {
        SearchMode::Optimal => bfs(&task, config.node_budget),
        SearchMode::Greedy => greedy(&task, config.node_budget),
    }
}

/// Convenience wrapper planning a parsed problem.
pub fn plan_problem(domain: &Domain, problem: &Problem, config: &PlannerConfig) -> Result<Plan, PlanFailure> {
    let goal: Vec<GroundLiteral> = problem.goal.iter().cloned().collect();
    plan(domain, &problem.objects, &problem.init, &goal, config)
}

fn reconstruct(task: &CompiledTask, parents: &HashMap<BitState, (BitState, usize)>, goal_state: &[u64]) -> Plan {
    let mut actions_rev = Vec::new();
    let mut cur: BitState = goal_state.into();
    while let Some((prev, action_idx)) = parents.get(&cur) {
        actions_rev.push(task.actions[*action_idx].clone());
        cur = prev.clone();
    }
    actions_rev.reverse();
    Plan { actions: actions_rev }
}

fn bfs(task: &CompiledTask, budget: usize) -> Result<Plan, PlanFailure> {
    let mut queue: VecDeque<BitState> = VecDeque::new();
    let mut parents: HashMap<BitState, (BitState, usize)> = HashMap::new();
    let mut seen: HashMap<BitState, ()> = HashMap::new();
    seen.insert(task.init.clone(), ());
    queue.push_back(task.init.clone());
    let mut expanded = 0usize;

    while let Some(state) = queue.pop_front() {
        if expanded >= budget {
            return Err(PlanFailure::BudgetExhausted { budget });
        }
        expanded += 1;
        for action in &task.compiled {
            if !action.applicable(&state) {
                continue;
            }
            let next = action.apply(&state);
            if seen.contains_key(&next) {
                continue;
            }
            parents.insert(next.clone(), (state.clone(), action.index));
            if task.is_goal(&next) {
                return Ok(reconstruct(task, &parents, &next));
            }
            seen.insert(next.clone(), ());
            queue.push_back(next);
        }
    }
    Err(PlanFailure::Unsolvable { explored: seen.len() })
}

fn greedy(task: &CompiledTask, budget: usize) -> Result<Plan, PlanFailure> {
    // Min-heap on (h, insertion sequence): FIFO among equal h values, and
    // successors are generated in lexicographic action order, so expansion
    // order and therefore the returned plan are deterministic.
    let mut heap: BinaryHeap<Reverse<(u32, u64, usize)>> = BinaryHeap::new();
    let mut states: Vec<BitState> = Vec::new();
    let mut parents: HashMap<BitState, (BitState, usize)> = HashMap::new();
    let mut seen: HashMap<BitState, ()> = HashMap::new();

    seen.insert(task.init.clone(), ());
    states.push(task.init.clone());
    heap.push(Reverse((task.goal_count(&task.init), 0, 0)));
    let mut seq = 1u64;
    let mut expanded = 0usize;

    while let Some(Reverse((_, _, idx))) = heap.pop() {
        if expanded >= budget {
            return Err(PlanFailure::BudgetExhausted { budget });
        }
        expanded += 1;
        let state = states[idx].clone();
        for action in &task.compiled {
            if !action.applicable(&state) {
                continue;
            }
            let next = action.apply(&state);
            if seen.contains_key(&next) {
                continue;
            }
            parents.insert(next.clone(), (state.clone(), action.index));
            if task.is_goal(&next) {
                return Ok(reconstruct(task, &parents, &next));
            }
            seen.insert(next.clone(), ());
            let h = task.goal_count(&next);
            states.push(next);
            heap.push(Reverse((h, seq, states.len() - 1)));
            seq += 1;
        }
    }
    Err(PlanFailure::Unsolvable { explored: seen.len() })
}

// ---------------------------------------------------------------------------

/// Check the preconditions of one ground action against a full symbolic
/// state (set representation, not the search bitset).
pub fn holds_in(state: &SymbolicState, action: &GroundAction) -> bool {
    applicable(state, action)
}

/// Execute a plan symbolically, returning all intermediate states
/// (including the initial one). Panics are avoided; inapplicable steps
/// return the prefix executed so far.
pub fn trace_states(init: &SymbolicState, plan: &Plan) -> Vec<SymbolicState> {
    let mut out = vec![init.clone()];
    for action in &plan.actions {
        let cur = out.last().unwrap();
        if !applicable(cur, action) {
            break;
        }
        out.push(apply_unchecked(cur, action));
    }
    out
}

/// Final state of a plan if every step applies, else `None`.
pub fn final_state(init: &SymbolicState, plan: &Plan) -> Option<SymbolicState> {
    let states = trace_states(init, plan);
    if states.len() == plan.actions.len() + 1 {
        states.into_iter().last()
    } else {
        None
    }
}

/// True when the plan executes and its final state satisfies the goal.
pub fn plan_achieves(init: &SymbolicState, plan: &Plan, goal: &[GroundLiteral]) -> bool {
    final_state(init, plan).is_some_and(|s| satisfies(&s, goal))
}
