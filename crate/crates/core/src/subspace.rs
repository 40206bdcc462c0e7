//! Linear spaces of matrices: bases, element enumeration and rank census.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{self, parse_error, parse_field, parse_matrix_block, parse_usize, tokens, MatGF, TextLines};

/// Default cap on the number of span elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 28;

/// A linearly independent list of `m × n` matrices spanning a subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    field: Field,
    rows: usize,
    cols: usize,
    basis: Vec<MatGF>,
}

/// Number of nonzero span elements of each rank, indexed `0..=min(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub counts: Vec<u64>,
}

impl RankProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The single occupied rank, if there is exactly one.
    pub fn constant_rank(&self) -> Option<usize> {
        let mut occupied = self.counts.iter().enumerate().filter(|(_, &c)| c > 0);
        match (occupied.next(), occupied.next()) {
            (Some((r, _)), None) => Some(r),
            _ => None,
        }
    }

    pub fn max_rank(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }
}

/// Outcome of a constant-rank test; `witness` is the first violating element
/// in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRankCheck {
    pub holds: bool,
    pub witness: Option<MatGF>,
}

fn check_budget(q: u32, d: usize, budget: u64) -> Result<u64> {
    match u64::from(q).checked_pow(d as u32) {
        Some(total) if total <= budget => Ok(total),
        _ => Err(Error::BudgetExceeded(format!("{q}^{d} span elements exceed budget {budget}"))),
    }
}

impl SubspaceBasis {
    /// Span of `mats`, reduced to the echelon basis of the flattened vectors.
    pub fn new(mats: &[MatGF]) -> Result<SubspaceBasis> {
        let (field, rows, cols) = Self::common_shape(mats)?;
        let len = rows * cols;
        let mut buf: Vec<Elem> = mats.iter().flat_map(|m| m.entries().iter().copied()).collect();
        let pivots = matrix::rref_in_place(&field, &mut buf, mats.len(), len);
        if pivots.is_empty() {
            return Err(Error::ZeroSpan);
        }
        let basis = buf
            .chunks_exact(len)
            .take(pivots.len())
            .map(|c| MatGF::from_entries(&field, rows, cols, c.to_vec()))
            .collect::<Result<_>>()?;
        Ok(SubspaceBasis { field, rows, cols, basis })
    }

    /// Keeps the given order; fails unless `mats` are independent.
    pub fn from_independent(mats: Vec<MatGF>) -> Result<SubspaceBasis> {
        let (field, rows, cols) = Self::common_shape(&mats)?;
        let flat: Vec<Elem> = mats.iter().flat_map(|m| m.entries().iter().copied()).collect();
        let rank = matrix::rank_of(&field, &flat, mats.len(), rows * cols);
        if rank == 0 {
            return Err(Error::ZeroSpan);
        }
        if rank != mats.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices span only a {rank}-dimensional space",
                mats.len()
            )));
        }
        Ok(SubspaceBasis { field, rows, cols, basis: mats })
    }

    fn common_shape(mats: &[MatGF]) -> Result<(Field, usize, usize)> {
        let first = mats.first().ok_or(Error::EmptyInput)?;
        for m in mats {
            if m.field() != first.field() {
                return Err(Error::FieldMismatch);
            }
            if m.shape() != first.shape() {
                return Err(Error::ShapeMismatch(format!(
                    "{}x{} vs {}x{}",
                    first.rows(),
                    first.cols(),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok((first.field().clone(), first.rows(), first.cols()))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatGF] {
        &self.basis
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `Σ c_i B_i`.
    pub fn combine(&self, coeffs: &[Elem]) -> MatGF {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = MatGF::zeros(&self.field, self.rows, self.cols);
        for (&c, b) in coeffs.iter().zip(&self.basis) {
            out.add_scaled_assign(c, b);
        }
        out
    }

    /// Every basis matrix padded with zero rows to `cols × cols`.
    pub fn pad_to_square(&self) -> Result<SubspaceBasis> {
        let basis = self.basis.iter().map(MatGF::pad_to_square).collect::<Result<Vec<_>>>()?;
        Ok(SubspaceBasis {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.cols,
            basis,
        })
    }

    /// Applies `X ↦ P X Q` to every basis element. Rank-preserving for
    /// invertible `P`, `Q`.
    pub fn transform(&self, p: &MatGF, q: &MatGF) -> Result<SubspaceBasis> {
        let basis = self
            .basis
            .iter()
            .map(|b| p.mul(b)?.mul(q))
            .collect::<Result<Vec<_>>>()?;
        SubspaceBasis::from_independent(basis)
    }

    /// Number of span elements, `q^d`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        u64::from(self.field.q()).checked_pow(self.dim() as u32)
    }

    /// All `q^d` span elements within the default budget.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.elements_within(DEFAULT_ENUMERATION_BUDGET)
    }

    /// Streams the span in lexicographic order of the coefficient tuple
    /// `(c_1, ..., c_d)`, zero element first.
    pub fn elements_within(&self, budget: u64) -> Result<Elements<'_>> {
        check_budget(self.field.q(), self.dim(), budget)?;
        Ok(Elements {
            space: self,
            coeffs: vec![0; self.dim()],
            current: MatGF::zeros(&self.field, self.rows, self.cols),
            started: false,
            done: false,
        })
    }

    /// Calls `f` on every span element in enumeration order without cloning.
    /// Stops early when `f` returns `false`.
    pub fn for_each_element<F>(&self, budget: u64, mut f: F) -> Result<()>
    where
        F: FnMut(&[Elem], &MatGF) -> bool,
    {
        let mut it = self.elements_within(budget)?;
        if !f(&it.coeffs, &it.current) {
            return Ok(());
        }
        while it.advance() {
            if !f(&it.coeffs, &it.current) {
                break;
            }
        }
        Ok(())
    }

    pub fn rank_profile(&self) -> Result<RankProfile> {
        self.rank_profile_within(DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn rank_profile_within(&self, budget: u64) -> Result<RankProfile> {
        let mut counts = vec![0u64; self.rows.min(self.cols) + 1];
        self.for_each_element(budget, |_, x| {
            let r = x.rank();
            if !x.is_zero() {
                counts[r] += 1;
            }
            true
        })?;
        Ok(RankProfile { counts })
    }

    pub fn is_constant_rank(&self, r: usize) -> Result<ConstantRankCheck> {
        self.is_constant_rank_within(r, DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn is_constant_rank_within(&self, r: usize, budget: u64) -> Result<ConstantRankCheck> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(Error::ShapeViolation(format!(
                "rank {r} outside 1..={} for {}x{} matrices",
                self.rows.min(self.cols),
                self.rows,
                self.cols
            )));
        }
        let mut witness = None;
        self.for_each_element(budget, |_, x| {
            if !x.is_zero() && x.rank() != r {
                witness = Some(x.clone());
                return false;
            }
            true
        })?;
        Ok(ConstantRankCheck {
            holds: witness.is_none(),
            witness,
        })
    }

    /// The common rank of all nonzero elements, or `NotConstantRank`.
    pub fn constant_rank(&self) -> Result<usize> {
        self.rank_profile()?.constant_rank().ok_or(Error::NotConstantRank)
    }

    /// Parses the subspace file format. The basis is kept as written and must
    /// be independent.
    pub fn parse(text: &str) -> Result<SubspaceBasis> {
        let mut lines = TextLines::new(text);
        lines.skip_blank();
        let (line_no, header) = lines
            .next_line()
            .ok_or_else(|| parse_error(1, 1, "empty subspace file"))?;
        let toks = tokens(header);
        if toks.len() != 4 {
            return Err(parse_error(line_no, 1, "subspace header must be `d m n GF(...)`"));
        }
        let d = parse_usize(line_no, toks[0])?;
        let rows = parse_usize(line_no, toks[1])?;
        let cols = parse_usize(line_no, toks[2])?;
        let field = parse_field(line_no, toks[3])?;
        if d == 0 || rows == 0 || cols == 0 {
            return Err(parse_error(line_no, 1, "d, m and n must be positive"));
        }
        let mut basis = Vec::with_capacity(d);
        for _ in 0..d {
            lines.skip_blank();
            basis.push(parse_matrix_block(&mut lines, Some((&field, rows, cols)))?);
        }
        lines.expect_end()?;
        SubspaceBasis::from_independent(basis).map_err(|e| parse_error(line_no, 1, e.to_string()))
    }
}

impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.dim(), self.rows, self.cols, self.field)?;
        for b in &self.basis {
            writeln!(f)?;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.basis.iter().map(MatGF::inline).collect();
        write!(
            f,
            "SubspaceBasis(d={} {}x{} {} [{}])",
            self.dim(),
            self.rows,
            self.cols,
            self.field,
            inner.join(" | ")
        )
    }
}

/// Odometer over coefficient tuples, updating the running sum in place.
pub struct Elements<'a> {
    space: &'a SubspaceBasis,
    coeffs: Vec<Elem>,
    current: MatGF,
    started: bool,
    done: bool,
}

impl Elements<'_> {
    /// Moves to the next tuple; `false` once the odometer wraps.
    fn advance(&mut self) -> bool {
        let field = &self.space.field;
        let last = (field.q() - 1) as Elem;
        for j in (0..self.coeffs.len()).rev() {
            let old = self.coeffs[j];
            let new = if old == last { 0 } else { old + 1 };
            self.coeffs[j] = new;
            self.current
                .add_scaled_assign(field.sub(new, old), &self.space.basis[j]);
            if new != 0 {
                return true;
            }
        }
        false
    }

    pub fn coefficients(&self) -> &[Elem] {
        &self.coeffs
    }
}

impl Iterator for Elements<'_> {
    type Item = MatGF;

    fn next(&mut self) -> Option<MatGF> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.current.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn make_subspace_examples() {
        let f2 = gf(2);
        assert_eq!(SubspaceBasis::new(&[MatGF::identity(&f2, 2)]).unwrap().dim(), 1);
        let a = MatGF::from_rows(&f2, &[[1, 1], [0, 1]]).unwrap();
        assert_eq!(SubspaceBasis::new(&[a.clone(), a]).unwrap().dim(), 1);
        let f3 = gf(3);
        let e11 = MatGF::unit(&f3, 2, 2, 0, 0);
        let e12 = MatGF::unit(&f3, 2, 2, 0, 1);
        let s = SubspaceBasis::new(&[e11.clone(), e12.clone(), e11.add(&e12).unwrap()]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn make_subspace_errors() {
        let f2 = gf(2);
        assert_eq!(SubspaceBasis::new(&[]).unwrap_err(), Error::EmptyInput);
        assert_eq!(SubspaceBasis::new(&[MatGF::zeros(&f2, 2, 2)]).unwrap_err(), Error::ZeroSpan);
        let err = SubspaceBasis::new(&[MatGF::zeros(&f2, 2, 2), MatGF::zeros(&f2, 2, 3)]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let f2 = gf(2);
        let b = MatGF::identity(&f2, 2);
        let s = SubspaceBasis::new(&[b.clone()]).unwrap();
        let all: Vec<_> = s.elements().unwrap().collect();
        assert_eq!(all, vec![MatGF::zeros(&f2, 2, 2), b]);

        let f3 = gf(3);
        let s = SubspaceBasis::new(&[MatGF::unit(&f3, 2, 2, 0, 0), MatGF::unit(&f3, 2, 2, 1, 1)]).unwrap();
        let all: Vec<_> = s.elements().unwrap().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        for (i, x) in all.iter().enumerate() {
            let (c1, c2) = ((i / 3) as Elem, (i % 3) as Elem);
            assert_eq!(x.entries(), &[c1, 0, 0, c2]);
        }

        let m3: Vec<MatGF> = (0..4).map(|k| MatGF::unit(&f2, 3, 3, k / 3, k % 3)).collect();
        let s = SubspaceBasis::new(&m3).unwrap();
        assert_eq!(s.elements().unwrap().filter(|x| !x.is_zero()).count(), 15);
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = gf(2);
        let s = SubspaceBasis::new(&[MatGF::unit(&f2, 2, 2, 0, 0), MatGF::unit(&f2, 2, 2, 0, 1)]).unwrap();
        assert!(matches!(s.elements_within(3), Err(Error::BudgetExceeded(_))));
        assert!(s.elements_within(4).is_ok());
    }

    #[test]
    fn rank_profiles() {
        let f2 = gf(2);
        let s = SubspaceBasis::new(&[MatGF::identity(&f2, 2)]).unwrap();
        assert_eq!(s.rank_profile().unwrap().counts, vec![0, 0, 1]);

        // multiplication by 0, 1, x, x+1 in GF(4) over the basis {1, x}
        let one = MatGF::identity(&f2, 2);
        let x = MatGF::from_rows(&f2, &[[0, 1], [1, 1]]).unwrap();
        let s = SubspaceBasis::new(&[one, x]).unwrap();
        assert_eq!(s.rank_profile().unwrap().counts, vec![0, 0, 3]);

        let s = SubspaceBasis::new(&[MatGF::unit(&f2, 2, 2, 0, 0), MatGF::unit(&f2, 2, 2, 1, 1)]).unwrap();
        let p = s.rank_profile().unwrap();
        assert_eq!(p.counts, vec![0, 2, 1]);
        assert_eq!(p.constant_rank(), None);
    }

    #[test]
    fn constant_rank_checks() {
        let f3 = gf(3);
        let s = SubspaceBasis::new(&[MatGF::identity(&f3, 3)]).unwrap();
        assert!(s.is_constant_rank(3).unwrap().holds);

        let f2 = gf(2);
        let s = SubspaceBasis::new(&[MatGF::unit(&f2, 2, 2, 0, 0), MatGF::unit(&f2, 2, 2, 1, 1)]).unwrap();
        let check = s.is_constant_rank(1).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap(), MatGF::identity(&f2, 2));
        assert!(matches!(s.is_constant_rank(3), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn subspace_file_round_trip() {
        let f: Field = "GF(3)".parse().unwrap();
        let s = SubspaceBasis::new(&[MatGF::unit(&f, 2, 3, 0, 0), MatGF::unit(&f, 2, 3, 1, 2).scale(2)]).unwrap();
        let text = s.to_string();
        assert_eq!(text, "2 2 3 GF(3)\n\n2 3 GF(3)\n1 0 0\n0 0 0\n\n2 3 GF(3)\n0 0 0\n0 0 1\n");
        let back = SubspaceBasis::parse(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_string(), text);

        let bad = "2 2 3 GF(3)\n\n2 3 GF(3)\n1 0 0\n0 0 0\n\n2 3 GF(2)\n0 0 0\n0 0 1\n";
        assert!(matches!(SubspaceBasis::parse(bad), Err(Error::Parse { line: 7, column: 5, .. })));
    }
}
