//! A small complete CDCL solver: unit propagation over two watched
//! literals, first-UIP clause learning with backjumping, and
//! lowest-index branching so runs are deterministic.

/// Literal code: `2 * var + 1` is the negation of variable `var`.
pub(crate) type Lit = u32;

pub(crate) fn lit(var: usize, positive: bool) -> Lit {
    (var as u32) << 1 | u32::from(!positive)
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

fn is_positive(l: Lit) -> bool {
    l & 1 == 0
}

/// Finds a model of the clauses over `num_vars` variables, or `None` when
/// they are unsatisfiable. Free decisions try `polarity` first.
pub(crate) fn solve<'a>(
    num_vars: usize,
    clauses: impl IntoIterator<Item = &'a [Lit]>,
    polarity: bool,
) -> Option<Vec<bool>> {
    let mut solver = Solver::new(num_vars);
    for c in clauses {
        if !solver.add_clause(c) {
            return None;
        }
    }
    solver.search(polarity)
}

struct Solver {
    /// Clauses of length at least 2; positions 0 and 1 are watched, and an
    /// implied literal sits at position 0 of its reason.
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    /// Trail length at each decision.
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
}

impl Solver {
    fn new(num_vars: usize) -> Self {
        Self {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            value: vec![None; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; num_vars],
        }
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value[var_of(l)].map(|v| v == is_positive(l))
    }

    fn assign(&mut self, l: Lit, reason: Option<usize>) {
        let v = var_of(l);
        self.value[v] = Some(is_positive(l));
        self.level[v] = self.trail_lim.len();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn attach(&mut self, c: Vec<Lit>) -> usize {
        let idx = self.clauses.len();
        self.watches[c[0] as usize].push(idx);
        self.watches[c[1] as usize].push(idx);
        self.clauses.push(c);
        idx
    }

    /// Returns false when the clause set is already known unsatisfiable.
    fn add_clause(&mut self, c: &[Lit]) -> bool {
        let mut c = c.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| var_of(w[0]) == var_of(w[1])) {
            return true; // tautology
        }
        match c.len() {
            0 => false,
            1 => match self.lit_value(c[0]) {
                Some(v) => v,
                None => {
                    self.assign(c[0], None);
                    true
                }
            },
            _ => {
                self.attach(c);
                true
            }
        }
    }

    /// Unit propagation; returns the falsified clause on conflict.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let falsified = self.trail[self.qhead] ^ 1;
            self.qhead += 1;
            let watchers = std::mem::take(&mut self.watches[falsified as usize]);
            let mut kept = Vec::with_capacity(watchers.len());
            let mut conflict = None;
            let mut iter = watchers.into_iter();
            for ci in iter.by_ref() {
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.value[var_of(first)].map(|v| v == is_positive(first)) == Some(true) {
                    kept.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&j| {
                    let l = clause[j];
                    self.value[var_of(l)].map(|v| v == is_positive(l)) != Some(false)
                });
                if let Some(j) = replacement {
                    clause.swap(1, j);
                    let new_watch = clause[1] as usize;
                    self.watches[new_watch].push(ci);
                    continue;
                }
                kept.push(ci);
                match self.lit_value(first) {
                    Some(false) => {
                        conflict = Some(ci);
                        break;
                    }
                    Some(true) => {}
                    None => self.assign(first, Some(ci)),
                }
            }
            kept.extend(iter);
            self.watches[falsified as usize] = kept;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// First-UIP learned clause (asserting literal first) and the level to
    /// jump back to.
    fn analyze(&mut self, conflict: usize) -> (Vec<Lit>, usize) {
        let current = self.trail_lim.len();
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0;
        let mut clause = conflict;
        let mut implied: Option<Lit> = None;
        let mut idx = self.trail.len();
        loop {
            let start = usize::from(implied.is_some());
            for j in start..self.clauses[clause].len() {
                let q = self.clauses[clause][j];
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[var_of(p)] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = p ^ 1;
                break;
            }
            implied = Some(p);
            clause = self.reason[var_of(p)].expect("only the UIP can be a decision");
        }
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let (j, lvl) = (1..learnt.len())
                .map(|j| (j, self.level[var_of(learnt[j])]))
                .max_by_key(|&(_, l)| l)
                .unwrap();
            learnt.swap(1, j);
            back = lvl;
        }
        (learnt, back)
    }

    fn backjump(&mut self, level: usize, next_free: &mut usize) {
        let len = self.trail_lim[level];
        for l in self.trail.drain(len..) {
            let v = var_of(l);
            self.value[v] = None;
            self.reason[v] = None;
            *next_free = (*next_free).min(v);
        }
        self.trail_lim.truncate(level);
        self.qhead = len;
    }

    fn search(&mut self, polarity: bool) -> Option<Vec<bool>> {
        let mut next_free = 0;
        loop {
            if let Some(conflict) = self.propagate() {
                if self.trail_lim.is_empty() {
                    return None;
                }
                let (learnt, back) = self.analyze(conflict);
                self.backjump(back, &mut next_free);
                let asserting = learnt[0];
                let reason = (learnt.len() > 1).then(|| self.attach(learnt));
                self.assign(asserting, reason);
                continue;
            }
            while next_free < self.value.len() && self.value[next_free].is_some() {
                next_free += 1;
            }
            if next_free == self.value.len() {
                return Some(self.value.iter().map(|v| v.unwrap()).collect());
            }
            self.trail_lim.push(self.trail.len());
            self.assign(lit(next_free, polarity), None);
        }
    }
}
