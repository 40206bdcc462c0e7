//! Matrix storage used inside the search loop.
//!
//! Entry `t` of a flattened `m × n` matrix is row `t / n`, column `t % n`.
//! Position sets (pivots) are `u64` masks with bit `t` for entry `t`.

use crate::field::{Elem, Field};
use crate::gf2;
use crate::matrix;

pub(crate) trait Layout: Sync {
    type M: Clone + Send + Sync;

    fn from_entries(&self, entries: &[Elem]) -> Self::M;
    fn to_entries(&self, m: &Self::M) -> Vec<Elem>;
    /// `rank(a + b)` without keeping the sum.
    fn rank_of_sum(&self, a: &Self::M, b: &Self::M) -> usize;
    /// `c·a + b`.
    fn axpy(&self, c: Elem, a: &Self::M, b: &Self::M) -> Self::M;
    /// True iff `m` is zero at every position in `mask`.
    fn avoids(&self, m: &Self::M, mask: u64) -> bool;
    fn zero(&self) -> Self::M;
    fn field(&self) -> &Field;
}

/// GF(2): one bit per entry.
pub(crate) struct Gf2 {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
}

impl Gf2 {
    #[inline]
    fn rank_word(&self, m: u64) -> usize {
        let mut buf = [0u64; 64];
        let row_mask = if self.cols == 64 { u64::MAX } else { (1u64 << self.cols) - 1 };
        for (i, slot) in buf.iter_mut().enumerate().take(self.rows) {
            *slot = (m >> (i * self.cols)) & row_mask;
        }
        gf2::rank_packed(&mut buf[..self.rows])
    }
}

impl Layout for Gf2 {
    type M = u64;

    fn from_entries(&self, entries: &[Elem]) -> u64 {
        entries
            .iter()
            .enumerate()
            .fold(0, |w, (t, &x)| w | (u64::from(x & 1) << t))
    }

    fn to_entries(&self, m: &u64) -> Vec<Elem> {
        (0..self.rows * self.cols).map(|t| ((m >> t) & 1) as Elem).collect()
    }

    fn rank_of_sum(&self, a: &u64, b: &u64) -> usize {
        self.rank_word(a ^ b)
    }

    fn axpy(&self, c: Elem, a: &u64, b: &u64) -> u64 {
        if c & 1 == 1 {
            a ^ b
        } else {
            *b
        }
    }

    fn avoids(&self, m: &u64, mask: u64) -> bool {
        m & mask == 0
    }

    fn zero(&self) -> u64 {
        0
    }

    fn field(&self) -> &Field {
        &self.field
    }
}

/// Any field: one code per entry, table arithmetic.
pub(crate) struct Dense {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
}

impl Layout for Dense {
    type M = Box<[Elem]>;

    fn from_entries(&self, entries: &[Elem]) -> Box<[Elem]> {
        entries.into()
    }

    fn to_entries(&self, m: &Box<[Elem]>) -> Vec<Elem> {
        m.to_vec()
    }

    fn rank_of_sum(&self, a: &Box<[Elem]>, b: &Box<[Elem]>) -> usize {
        let mut buf = [0 as Elem; 64];
        let buf = &mut buf[..a.len()];
        for ((slot, &x), &y) in buf.iter_mut().zip(a.iter()).zip(b.iter()) {
            *slot = self.field.add(x, y);
        }
        matrix::rank_generic_in_place(&self.field, buf, self.rows, self.cols)
    }

    fn axpy(&self, c: Elem, a: &Box<[Elem]>, b: &Box<[Elem]>) -> Box<[Elem]> {
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| self.field.add(self.field.mul(c, x), y))
            .collect()
    }

    fn avoids(&self, m: &Box<[Elem]>, mut mask: u64) -> bool {
        while mask != 0 {
            let t = mask.trailing_zeros() as usize;
            if m[t] != 0 {
                return false;
            }
            mask &= mask - 1;
        }
        true
    }

    fn zero(&self) -> Box<[Elem]> {
        vec![0; self.rows * self.cols].into()
    }

    fn field(&self) -> &Field {
        &self.field
    }
}

/// Monic matrices of a fixed rank in increasing lexicographic order, with
/// first nonzero entry at a position below `lead_limit` and zeros on `pivots`.
/// Lexicographic order puts later leading positions first.
pub(crate) struct CandidateIter {
    field: Field,
    rows: usize,
    cols: usize,
    rank: usize,
    pivots: u64,
    /// Next lead to open once the current one is exhausted.
    next_lead: usize,
    lead: Option<usize>,
    free: Vec<usize>,
    entries: Vec<Elem>,
    fresh: bool,
}

impl CandidateIter {
    pub(crate) fn new(field: &Field, rows: usize, cols: usize, rank: usize, lead_limit: usize, pivots: u64) -> Self {
        CandidateIter {
            field: field.clone(),
            rows,
            cols,
            rank,
            pivots,
            next_lead: lead_limit,
            lead: None,
            free: Vec::new(),
            entries: vec![0; rows * cols],
            fresh: false,
        }
    }

    fn open_next_lead(&mut self) -> bool {
        if self.next_lead == 0 {
            return false;
        }
        self.next_lead -= 1;
        let lead = self.next_lead;
        let len = self.rows * self.cols;
        self.entries.iter_mut().for_each(|x| *x = 0);
        self.entries[lead] = 1;
        self.free = (lead + 1..len).filter(|&t| self.pivots >> t & 1 == 0).collect();
        self.lead = Some(lead);
        self.fresh = true;
        true
    }

    /// Steps the odometer over the free positions; `false` when it wraps.
    fn step(&mut self) -> bool {
        let last = (self.field.q() - 1) as Elem;
        for &t in self.free.iter().rev() {
            if self.entries[t] == last {
                self.entries[t] = 0;
            } else {
                self.entries[t] += 1;
                return true;
            }
        }
        false
    }
}

impl Iterator for CandidateIter {
    /// Entries and leading position.
    type Item = (Vec<Elem>, usize);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let advanced = match self.lead {
                None => false,
                Some(_) if self.fresh => {
                    self.fresh = false;
                    true
                }
                Some(_) => self.step(),
            };
            if !advanced {
                if !self.open_next_lead() {
                    return None;
                }
                continue;
            }
            if matrix::rank_of(&self.field, &self.entries, self.rows, self.cols) == self.rank {
                return Some((self.entries.clone(), self.lead.expect("open lead")));
            }
        }
    }
}
