//! Exhaustive search for constant rank `r` subspaces of a target dimension.
//!
//! Every subspace is produced once, through its reduced echelon basis
//! (flattened matrices, lexicographic order with entry `(0,0)` most
//! significant). A partial basis `B_1 < ... < B_k` is extended by a monic
//! rank-`r` matrix `B_{k+1}` that
//!
//! * is the least element of its coset modulo `span(B_1, ..., B_k)`, i.e.
//!   vanishes at the leading positions of `B_1, ..., B_k`;
//! * is greater than `B_k`, which for coset leaders means its leading
//!   position comes strictly earlier;
//! * keeps the span constant rank: only the new projective points
//!   `B_{k+1} + w`, `w ∈ span(B_1, ..., B_k)`, are tested.
//!
//! Subspaces of a constant-rank space are constant rank, and the prefix of a
//! reduced echelon basis in this order is again one, so pruning loses nothing.

mod census;
mod layout;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub use census::{brute_force_census, brute_force_census_within, gaussian_binomial, ORACLE_LIMIT};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::MatGF;
use crate::subspace::SubspaceBasis;
use layout::{CandidateIter, Dense, Gf2, Layout};

/// Default node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// The rank-`r` candidate pool is precomputed when `q^(mn)` is at most this.
pub const POOL_ENUMERATION_LIMIT: u64 = 1 << 24;

/// Largest `m · n` the search handles.
pub const MAX_ENTRIES: usize = 64;

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub target_dim: usize,
    /// Maximum number of extension nodes (candidate closure tests).
    pub budget: u64,
    pub workers: usize,
    /// Traverse the whole tree and count every subspace of the target
    /// dimension instead of stopping at the first.
    pub exhaust: bool,
}

impl SearchParams {
    pub fn new(field: &Field, rows: usize, cols: usize, rank: usize, target_dim: usize) -> Self {
        SearchParams {
            field: field.clone(),
            rows,
            cols,
            rank,
            target_dim,
            budget: DEFAULT_NODE_BUDGET,
            workers: 1,
            exhaust: false,
        }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn exhaust(mut self, exhaust: bool) -> Self {
        self.exhaust = exhaust;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNone => "exhausted_none",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// The first subspace found in depth-first order of the lowest branch
    /// that has one. Identical for any worker count when the search is not
    /// cut short by the budget.
    pub witness: Option<SubspaceBasis>,
    /// Subspaces of the target dimension seen; the exact total when
    /// `exhaust` is set and the budget was not exceeded.
    pub found_count: u64,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Depth-first search for a constant rank `r` subspace of dimension
/// `target_dim` in `M_{m×n}(F)`.
pub fn search_constant_rank(params: &SearchParams) -> Result<SearchOutcome> {
    let SearchParams { rows: m, cols: n, rank: r, .. } = *params;
    if !(1 <= r && r <= m && m <= n) {
        return Err(Error::ShapeViolation(format!(
            "need 1 <= r <= m <= n, got r={r}, m={m}, n={n}"
        )));
    }
    if params.target_dim == 0 {
        return Err(Error::ShapeViolation("target dimension must be positive".into()));
    }
    if m * n > MAX_ENTRIES {
        return Err(Error::ShapeViolation(format!("{m}x{n} exceeds {MAX_ENTRIES} entries")));
    }
    let field = params.field.clone();
    if field.q() == 2 {
        run(Gf2 { field, rows: m, cols: n }, params)
    } else {
        run(Dense { field, rows: m, cols: n }, params)
    }
}

struct Candidate<M> {
    m: M,
    lead: usize,
}

enum Source<M> {
    /// Sorted rank-`r` monic matrices; `suffix[l]` is the first index with
    /// leading position below `l`.
    Pool { items: Vec<Candidate<M>>, suffix: Vec<usize> },
    Lazy,
}

struct BranchResult<M> {
    index: usize,
    found: u64,
    witness: Option<Vec<M>>,
}

impl<M> BranchResult<M> {
    fn new(index: usize) -> Self {
        BranchResult { index, found: 0, witness: None }
    }
}

struct Shared<'a, L: Layout> {
    layout: &'a L,
    params: &'a SearchParams,
    source: Source<L::M>,
    nodes: AtomicU64,
    out_of_budget: AtomicBool,
    /// Lowest branch index holding a witness (first-found mode).
    best: AtomicUsize,
}

/// Partial basis with leading positions; `pivots` masks those positions.
struct Chain<M> {
    items: Vec<(M, usize)>,
    pivots: u64,
}

enum Flow {
    Continue,
    Stop,
}

fn run<L: Layout>(layout: L, params: &SearchParams) -> Result<SearchOutcome> {
    let start = Instant::now();
    let (m, n) = (params.rows, params.cols);
    let len = m * n;
    let field = layout.field().clone();

    let source = match u64::from(field.q()).checked_pow(len as u32) {
        Some(total) if total <= POOL_ENUMERATION_LIMIT => {
            let items: Vec<Candidate<L::M>> = CandidateIter::new(&field, m, n, params.rank, len, 0)
                .map(|(e, lead)| Candidate { m: layout.from_entries(&e), lead })
                .collect();
            let mut suffix = vec![items.len(); len + 1];
            for l in 0..=len {
                suffix[l] = items.iter().position(|c| c.lead < l).unwrap_or(items.len());
            }
            Source::Pool { items, suffix }
        }
        _ => Source::Lazy,
    };

    let shared = Shared {
        layout: &layout,
        params,
        source,
        nodes: AtomicU64::new(0),
        out_of_budget: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
    };

    // depth-1 branches, handed out in order
    let lazy_roots = Mutex::new((0usize, CandidateIter::new(&field, m, n, params.rank, len, 0)));
    let pool_next = AtomicUsize::new(0);
    let next_root = || -> Option<(usize, L::M, usize)> {
        match &shared.source {
            Source::Pool { items, .. } => {
                let i = pool_next.fetch_add(1, Ordering::Relaxed);
                items.get(i).map(|c| (i, c.m.clone(), c.lead))
            }
            Source::Lazy => {
                let mut guard = lazy_roots.lock().expect("root iterator poisoned");
                let (count, iter) = &mut *guard;
                let (e, lead) = iter.next()?;
                let i = *count;
                *count += 1;
                Some((i, layout.from_entries(&e), lead))
            }
        }
    };

    let worker = || -> Vec<BranchResult<L::M>> {
        let mut results = Vec::new();
        while let Some((index, root, lead)) = next_root() {
            if shared.out_of_budget.load(Ordering::Relaxed) {
                break;
            }
            if !params.exhaust && shared.best.load(Ordering::Relaxed) < index {
                break;
            }
            let mut result = BranchResult::new(index);
            shared.branch(root, lead, &mut result);
            if result.found > 0 {
                results.push(result);
            }
        }
        results
    };

    let workers = params.workers.max(1);
    let mut results: Vec<BranchResult<L::M>> = if workers == 1 {
        worker()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|_| s.spawn(worker)).collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|r| r.index);

    let found_count: u64 = results.iter().map(|r| r.found).sum();
    let witness = results.iter_mut().find_map(|r| r.witness.take());
    let out_of_budget = shared.out_of_budget.load(Ordering::Relaxed);
    let nodes_explored = shared.nodes.load(Ordering::Relaxed).min(params.budget);

    let witness = witness.map(|chain| to_subspace(&layout, params, &chain)).transpose()?;
    let status = match (&witness, out_of_budget) {
        (Some(_), false) => SearchStatus::Found,
        (Some(_), true) if !params.exhaust => SearchStatus::Found,
        (_, true) => SearchStatus::BudgetExceeded,
        (None, false) => SearchStatus::ExhaustedNone,
    };
    Ok(SearchOutcome {
        status,
        witness,
        found_count,
        nodes_explored,
        elapsed: start.elapsed(),
    })
}

fn to_subspace<L: Layout>(layout: &L, params: &SearchParams, chain: &[L::M]) -> Result<SubspaceBasis> {
    let mats = chain
        .iter()
        .map(|c| MatGF::from_entries(&params.field, params.rows, params.cols, layout.to_entries(c)))
        .collect::<Result<Vec<_>>>()?;
    let space = SubspaceBasis::from_independent(mats)
        .map_err(|e| Error::InternalVerificationFailed(format!("search witness: {e}")))?;
    let check = space.is_constant_rank(params.rank)?;
    if !check.holds || space.dim() != params.target_dim {
        return Err(Error::InternalVerificationFailed(format!("search witness {space:?} is invalid")));
    }
    Ok(space)
}

impl<L: Layout> Shared<'_, L> {
    /// Counts one node; `false` once the budget is spent.
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.params.budget {
            self.out_of_budget.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn cancelled(&self, index: usize) -> bool {
        self.out_of_budget.load(Ordering::Relaxed)
            || (!self.params.exhaust && self.best.load(Ordering::Relaxed) < index)
    }

    fn branch(&self, root: L::M, lead: usize, result: &mut BranchResult<L::M>) {
        if !self.tick() {
            return;
        }
        let layout = self.layout;
        let mut chain = Chain {
            items: vec![(root.clone(), lead)],
            pivots: 1u64 << lead,
        };
        if self.params.target_dim == 1 {
            self.record(&chain, result);
            return;
        }
        let zero = layout.zero();
        let span: Vec<L::M> = layout
            .field()
            .elements()
            .map(|c| layout.axpy(c, &root, &zero))
            .collect();
        let _ = self.extend(&mut chain, &span, result);
    }

    fn record(&self, chain: &Chain<L::M>, result: &mut BranchResult<L::M>) {
        result.found += 1;
        if result.witness.is_none() {
            result.witness = Some(chain.items.iter().map(|(m, _)| m.clone()).collect());
        }
        if !self.params.exhaust {
            self.best.fetch_min(result.index, Ordering::Relaxed);
        }
    }

    /// Tries every admissible next basis element of `chain`, whose span
    /// (zero first) is `span`.
    fn extend(
        &self,
        chain: &mut Chain<L::M>,
        span: &[L::M],
        result: &mut BranchResult<L::M>,
    ) -> Flow {
        let lead_limit = chain.items.last().map_or(0, |(_, l)| *l);
        let pivots = chain.pivots;
        match &self.source {
            Source::Pool { items, suffix } => {
                for cand in &items[suffix[lead_limit]..] {
                    if !self.layout.avoids(&cand.m, pivots) {
                        continue;
                    }
                    if let Flow::Stop = self.visit(chain, span, &cand.m, cand.lead, result) {
                        return Flow::Stop;
                    }
                }
            }
            Source::Lazy => {
                let p = self.params;
                let iter = CandidateIter::new(&p.field, p.rows, p.cols, p.rank, lead_limit, pivots);
                for (entries, lead) in iter {
                    let cand = self.layout.from_entries(&entries);
                    if let Flow::Stop = self.visit(chain, span, &cand, lead, result) {
                        return Flow::Stop;
                    }
                }
            }
        }
        Flow::Continue
    }

    fn visit(
        &self,
        chain: &mut Chain<L::M>,
        span: &[L::M],
        cand: &L::M,
        lead: usize,
        result: &mut BranchResult<L::M>,
    ) -> Flow {
        if self.cancelled(result.index) || !self.tick() {
            return Flow::Stop;
        }
        let layout = self.layout;
        let r = self.params.rank;
        if span[1..].iter().any(|w| layout.rank_of_sum(cand, w) != r) {
            return Flow::Continue;
        }
        chain.items.push((cand.clone(), lead));
        chain.pivots |= 1u64 << lead;
        let flow = if chain.items.len() == self.params.target_dim {
            self.record(chain, result);
            if self.params.exhaust {
                Flow::Continue
            } else {
                Flow::Stop
            }
        } else {
            let next_span: Vec<L::M> = layout
                .field()
                .elements()
                .flat_map(|c: Elem| span.iter().map(move |w| (c, w)))
                .map(|(c, w)| layout.axpy(c, cand, w))
                .collect();
            self.extend(chain, &next_span, result)
        };
        chain.items.pop();
        chain.pivots &= !(1u64 << lead);
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn dimension_one_counts_monic_rank_r_matrices() {
        // |GL_2(F_2)| = 6, all monic over GF(2)
        let out = search_constant_rank(&SearchParams::new(&gf(2), 2, 2, 2, 1).exhaust(true)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.found_count, 6);
        // |GL_2(F_3)| = 48 invertible matrices, 24 monic
        let out = search_constant_rank(&SearchParams::new(&gf(3), 2, 2, 2, 1).exhaust(true)).unwrap();
        assert_eq!(out.found_count, 24);
    }

    #[test]
    fn small_nonexistence() {
        let out = search_constant_rank(&SearchParams::new(&gf(2), 2, 2, 1, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::ExhaustedNone);
        assert!(out.witness.is_none());
        let out = search_constant_rank(&SearchParams::new(&gf(3), 2, 2, 2, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::ExhaustedNone);
    }

    #[test]
    fn finds_field_like_space() {
        let out = search_constant_rank(&SearchParams::new(&gf(2), 2, 2, 2, 2)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let w = out.witness.unwrap();
        assert_eq!(w.dim(), 2);
        assert!(w.is_constant_rank(2).unwrap().holds);
    }

    #[test]
    fn budget_is_reported() {
        let out = search_constant_rank(&SearchParams::new(&gf(2), 3, 3, 2, 5).budget(10)).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
        assert_eq!(out.nodes_explored, 10);
    }

    #[test]
    fn shape_errors() {
        let p = SearchParams::new(&gf(2), 3, 2, 1, 2);
        assert!(matches!(search_constant_rank(&p), Err(Error::ShapeViolation(_))));
        let p = SearchParams::new(&gf(2), 2, 2, 3, 2);
        assert!(matches!(search_constant_rank(&p), Err(Error::ShapeViolation(_))));
        let p = SearchParams::new(&gf(2), 2, 2, 1, 0);
        assert!(matches!(search_constant_rank(&p), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn workers_agree_with_single_thread() {
        let base = SearchParams::new(&gf(2), 3, 3, 2, 3);
        let single = search_constant_rank(&base).unwrap();
        let multi = search_constant_rank(&base.clone().workers(4)).unwrap();
        assert_eq!(single.witness, multi.witness);
        let all1 = search_constant_rank(&base.clone().exhaust(true)).unwrap();
        let all4 = search_constant_rank(&base.clone().exhaust(true).workers(4)).unwrap();
        assert_eq!(all1.found_count, all4.found_count);
        assert_eq!(all1.nodes_explored, all4.nodes_explored);
        assert_eq!(all1.witness, all4.witness);
    }

    #[test]
    fn lazy_and_pool_sources_agree() {
        // q^(mn) = 5^4 uses the pool; compare against a forced lazy traversal
        let params = SearchParams::new(&gf(5), 2, 2, 2, 2).exhaust(true);
        let pooled = search_constant_rank(&params).unwrap();
        let layout = Dense { field: gf(5), rows: 2, cols: 2 };
        let lazy = run_lazy(layout, &params);
        assert_eq!(pooled.found_count, lazy.found_count);
        assert_eq!(pooled.nodes_explored, lazy.nodes_explored);
    }

    fn run_lazy(layout: Dense, params: &SearchParams) -> SearchOutcome {
        let shared = Shared {
            layout: &layout,
            params,
            source: Source::Lazy,
            nodes: AtomicU64::new(0),
            out_of_budget: AtomicBool::new(false),
            best: AtomicUsize::new(usize::MAX),
        };
        let len = params.rows * params.cols;
        let mut found = 0;
        for (index, (e, lead)) in CandidateIter::new(&params.field, params.rows, params.cols, params.rank, len, 0).enumerate() {
            let mut result = BranchResult::new(index);
            shared.branch(layout.from_entries(&e), lead, &mut result);
            found += result.found;
        }
        SearchOutcome {
            status: SearchStatus::Found,
            witness: None,
            found_count: found,
            nodes_explored: shared.nodes.load(Ordering::Relaxed),
            elapsed: Duration::ZERO,
        }
    }
}
