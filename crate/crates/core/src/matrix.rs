//! Dense matrices over a [`Field`].
//!
//! Column vectors are `n × 1` matrices. Elimination pivots on the leftmost
//! nonzero column and the topmost nonzero row within it, so kernel and image
//! bases are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gf2;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatGF {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

/// Reduces `buf` (row-major, `rows × cols`) to reduced row echelon form and
/// returns the pivot columns.
pub fn rref_in_place(field: &Field, buf: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(found) = (top..rows).find(|&r| buf[r * cols + col] != 0) else {
            continue;
        };
        if found != top {
            for j in 0..cols {
                buf.swap(found * cols + j, top * cols + j);
            }
        }
        let inv = field.inv_nonzero(buf[top * cols + col]);
        for j in col..cols {
            buf[top * cols + j] = field.mul(buf[top * cols + j], inv);
        }
        for r in 0..rows {
            let factor = buf[r * cols + col];
            if r == top || factor == 0 {
                continue;
            }
            for j in col..cols {
                let sub = field.mul(factor, buf[top * cols + j]);
                buf[r * cols + j] = field.sub(buf[r * cols + j], sub);
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Rank by forward elimination using table arithmetic. `buf` is overwritten.
pub fn rank_generic_in_place(field: &Field, buf: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(found) = (top..rows).find(|&r| buf[r * cols + col] != 0) else {
            continue;
        };
        if found != top {
            for j in col..cols {
                buf.swap(found * cols + j, top * cols + j);
            }
        }
        let inv = field.inv_nonzero(buf[top * cols + col]);
        for r in top + 1..rows {
            let lead = buf[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = field.mul(lead, inv);
            for j in col..cols {
                let sub = field.mul(factor, buf[top * cols + j]);
                buf[r * cols + j] = field.sub(buf[r * cols + j], sub);
            }
        }
        top += 1;
    }
    top
}

/// Rank of a row-major entry slice, taking the packed path over GF(2).
pub fn rank_of(field: &Field, entries: &[Elem], rows: usize, cols: usize) -> usize {
    if field.q() == 2 && cols <= gf2::MAX_COLS {
        return gf2::rank(entries, rows, cols);
    }
    let mut stack = [0 as Elem; 64];
    if entries.len() <= stack.len() {
        let buf = &mut stack[..entries.len()];
        buf.copy_from_slice(entries);
        rank_generic_in_place(field, buf, rows, cols)
    } else {
        rank_generic_in_place(field, &mut entries.to_vec(), rows, cols)
    }
}

impl MatGF {
    /// Zero matrix. Panics if a dimension is zero.
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatGF {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        MatGF {
            field: field.clone(),
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatGF {
        let mut m = MatGF::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The matrix unit with a single 1 at `(i, j)`.
    pub fn unit(field: &Field, rows: usize, cols: usize, i: usize, j: usize) -> MatGF {
        let mut m = MatGF::zeros(field, rows, cols);
        m.entries[i * cols + j] = 1;
        m
    }

    pub fn from_entries(field: &Field, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<MatGF> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeViolation(format!("{rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| !field.is_element(x.into())) {
            return Err(Error::InvalidElement { code: bad.into(), q: field.q() });
        }
        Ok(MatGF {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, rows: &[R]) -> Result<MatGF> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        MatGF::from_entries(field, rows.len(), cols, entries)
    }

    /// Column vector with the given entries.
    pub fn column(field: &Field, entries: &[Elem]) -> Result<MatGF> {
        MatGF::from_entries(field, entries.len(), 1, entries.to_vec())
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Elem) {
        assert!(self.field.is_element(value.into()));
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_vector(&self) -> bool {
        self.cols == 1
    }

    fn check_same(&self, other: &MatGF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatGF) -> Result<MatGF> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(MatGF { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &MatGF) -> Result<MatGF> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> MatGF {
        let entries = self.entries.iter().map(|&a| self.field.mul(c, a)).collect();
        MatGF { entries, ..self.clone() }
    }

    /// `self += c * other`, shapes assumed equal.
    pub(crate) fn add_scaled_assign(&mut self, c: Elem, other: &MatGF) {
        if c == 0 {
            return;
        }
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = self.field.add(*a, self.field.mul(c, b));
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &MatGF) -> Result<MatGF> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatGF::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatGF {
        let mut out = MatGF::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Rank; 0 exactly for the zero matrix.
    pub fn rank(&self) -> usize {
        rank_of(&self.field, &self.entries, self.rows, self.cols)
    }

    /// Rank through table arithmetic only, bypassing the GF(2) packed path.
    pub fn rank_generic(&self) -> usize {
        let mut buf = self.entries.clone();
        rank_generic_in_place(&self.field, &mut buf, self.rows, self.cols)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (MatGF, Vec<usize>) {
        let mut out = self.clone();
        let pivots = rref_in_place(&self.field, &mut out.entries, self.rows, self.cols);
        (out, pivots)
    }

    /// `n − rank` independent column vectors spanning `{v : Av = 0}`, one per
    /// free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<MatGF> {
        let (reduced, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(row, free));
                }
                MatGF::from_entries(f, self.cols, 1, v).expect("kernel vector shape")
            })
            .collect()
    }

    /// The pivot columns of `A`, a basis of `{Av}` of size `rank(A)`.
    pub fn image_basis(&self) -> Vec<MatGF> {
        let (_, pivots) = self.rref();
        pivots
            .into_iter()
            .map(|c| {
                let col: Vec<Elem> = (0..self.rows).map(|i| self.get(i, c)).collect();
                MatGF::from_entries(&self.field, self.rows, 1, col).expect("image vector shape")
            })
            .collect()
    }

    /// Appends zero rows until there are `total_rows` rows.
    pub fn pad_rows(&self, total_rows: usize) -> Result<MatGF> {
        if total_rows < self.rows {
            return Err(Error::ShapeViolation(format!(
                "cannot pad {} rows down to {total_rows}",
                self.rows
            )));
        }
        let mut entries = self.entries.clone();
        entries.resize(total_rows * self.cols, 0);
        Ok(MatGF {
            rows: total_rows,
            entries,
            ..self.clone()
        })
    }

    /// An `m × n` matrix with `m ≤ n` becomes `n × n` by appending zero rows.
    pub fn pad_to_square(&self) -> Result<MatGF> {
        if self.rows > self.cols {
            return Err(Error::ShapeViolation(format!(
                "{}x{} has more rows than columns",
                self.rows, self.cols
            )));
        }
        self.pad_rows(self.cols)
    }

    /// Rows joined by `;`, entries by spaces.
    pub fn inline(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses the matrix text format.
    pub fn parse(text: &str) -> Result<MatGF> {
        let mut lines = TextLines::new(text);
        let m = parse_matrix_block(&mut lines, None)?;
        lines.expect_end()?;
        Ok(m)
    }
}

/// True iff `v` lies in the span of `basis`. All vectors must be column
/// vectors of the same length over the same field.
pub fn member_of_span(v: &MatGF, basis: &[MatGF]) -> Result<bool> {
    if !v.is_vector() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not a column vector", v.rows, v.cols)));
    }
    for b in basis {
        if b.field != v.field {
            return Err(Error::FieldMismatch);
        }
        if !b.is_vector() || b.rows != v.rows {
            return Err(Error::DimensionMismatch(format!(
                "basis vector {}x{} vs vector of length {}",
                b.rows, b.cols, v.rows
            )));
        }
    }
    if v.is_zero() {
        return Ok(true);
    }
    let k = basis.len();
    let n = v.rows;
    // the vectors as rows of a (k+1) × n matrix
    let mut buf = Vec::with_capacity((k + 1) * n);
    for b in basis {
        buf.extend_from_slice(&b.entries);
    }
    let span_rank = rank_of(&v.field, &buf, k, n);
    buf.extend_from_slice(&v.entries);
    Ok(rank_of(&v.field, &buf, k + 1, n) == span_rank)
}

impl fmt::Display for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatGF({}x{} {} [{}])", self.rows, self.cols, self.field, self.inline())
    }
}

/// Line cursor with 1-based positions for error reporting.
pub(crate) struct TextLines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> TextLines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        TextLines {
            lines: text.lines().collect(),
            next: 0,
        }
    }

    /// Next line and its number, or `None` at end of input.
    pub(crate) fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let line = *self.lines.get(self.next)?;
        self.next += 1;
        Some((self.next, line))
    }

    pub(crate) fn skip_blank(&mut self) {
        while self.lines.get(self.next).is_some_and(|l| l.trim().is_empty()) {
            self.next += 1;
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        self.skip_blank();
        match self.next_line() {
            None => Ok(()),
            Some((line, _)) => Err(parse_error(line, 1, "unexpected trailing content")),
        }
    }

    pub(crate) fn eof_line(&self) -> usize {
        self.lines.len() + 1
    }
}

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub(crate) fn parse_usize(line: usize, (column, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_error(line, column, format!("expected a non-negative integer, found {tok:?}")))
}

pub(crate) fn parse_field(line: usize, (column, tok): (usize, &str)) -> Result<Field> {
    tok.parse::<Field>().map_err(|e| match e {
        Error::Parse { column: c, message, .. } => parse_error(line, column + c - 1, message),
        other => parse_error(line, column, other.to_string()),
    })
}

/// Reads one `m n GF(...)` block. With `expect` set, the header must agree.
pub(crate) fn parse_matrix_block(
    lines: &mut TextLines<'_>,
    expect: Option<(&Field, usize, usize)>,
) -> Result<MatGF> {
    let (line_no, header) = lines
        .next_line()
        .ok_or_else(|| parse_error(lines.eof_line(), 1, "expected a matrix header"))?;
    let toks = tokens(header);
    if toks.len() != 3 {
        return Err(parse_error(line_no, 1, "matrix header must be `m n GF(...)`"));
    }
    let rows = parse_usize(line_no, toks[0])?;
    let cols = parse_usize(line_no, toks[1])?;
    if rows == 0 || cols == 0 {
        return Err(parse_error(line_no, 1, "matrix dimensions must be positive"));
    }
    let field = parse_field(line_no, toks[2])?;
    if let Some((f, m, n)) = expect {
        if *f != field {
            return Err(parse_error(line_no, toks[2].0, "field differs from the file header"));
        }
        if (m, n) != (rows, cols) {
            return Err(parse_error(line_no, 1, "shape differs from the file header"));
        }
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (row_no, text) = lines
            .next_line()
            .ok_or_else(|| parse_error(lines.eof_line(), 1, "missing matrix row"))?;
        let toks = tokens(text);
        if toks.len() != cols {
            return Err(parse_error(
                row_no,
                toks.get(cols).map_or(text.len() + 1, |t| t.0),
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for tok in toks {
            let v = parse_usize(row_no, tok)?;
            if v >= field.q() as usize {
                return Err(parse_error(row_no, tok.0, format!("{v} is not an element of {field}")));
            }
            entries.push(v as Elem);
        }
    }
    MatGF::from_entries(&field, rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(MatGF::zeros(&gf(2), 3, 4).rank(), 0);
        assert_eq!(MatGF::identity(&gf(3), 3).rank(), 3);
        let m = MatGF::from_rows(&gf(2), &[[1, 0], [1, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_generic(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(MatGF::identity(&gf(2), 3).kernel_basis().is_empty());
        let k = MatGF::zeros(&gf(2), 2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        let m = MatGF::from_rows(&gf(3), &[[1, 2, 0], [2, 1, 0]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul(v).unwrap().is_zero());
        }
    }

    #[test]
    fn image_examples() {
        assert!(MatGF::zeros(&gf(2), 2, 3).image_basis().is_empty());
        assert_eq!(MatGF::identity(&gf(3), 2).image_basis().len(), 2);
        let m = MatGF::from_rows(&gf(2), &[[1, 1], [0, 0]]).unwrap();
        let img = m.image_basis();
        assert_eq!(img.len(), 1);
        assert_eq!(img[0].entries(), &[1, 0]);
    }

    #[test]
    fn span_membership() {
        let f2 = gf(2);
        let e2 = MatGF::column(&f2, &[0, 1]).unwrap();
        assert!(member_of_span(&MatGF::column(&f2, &[0, 0]).unwrap(), &[e2.clone()]).unwrap());
        assert!(member_of_span(&MatGF::column(&f2, &[0, 0]).unwrap(), &[]).unwrap());
        assert!(!member_of_span(&MatGF::column(&f2, &[1, 0]).unwrap(), &[e2]).unwrap());
        let f3 = gf(3);
        let basis = [MatGF::column(&f3, &[1, 0]).unwrap(), MatGF::column(&f3, &[0, 1]).unwrap()];
        assert!(member_of_span(&MatGF::column(&f3, &[1, 2]).unwrap(), &basis).unwrap());
        let short = MatGF::column(&f3, &[1]).unwrap();
        assert!(matches!(member_of_span(&short, &basis), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn padding() {
        let f = gf(2);
        let a = MatGF::from_rows(&f, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        let sq = a.pad_to_square().unwrap();
        assert_eq!(sq.shape(), (3, 3));
        assert_eq!(sq.rank(), 2);
        let b = MatGF::identity(&f, 3);
        assert_eq!(b.pad_to_square().unwrap(), b);
        let z = MatGF::zeros(&f, 1, 4).pad_to_square().unwrap();
        assert_eq!((z.shape(), z.rank()), ((4, 4), 0));
        assert!(matches!(a.transpose().pad_to_square(), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let f: Field = "GF(2^2)[1,1,1]".parse().unwrap();
        let m = MatGF::from_rows(&f, &[[0, 1, 2], [3, 2, 1]]).unwrap();
        let text = m.to_string();
        assert_eq!(text, "2 3 GF(2^2)[1,1,1]\n0 1 2\n3 2 1\n");
        assert_eq!(MatGF::parse(&text).unwrap(), m);

        let err = MatGF::parse("2 2 GF(3)\n0 1\n1 5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "5 is not an element of GF(3)".into()
            }
        );
        assert!(matches!(MatGF::parse("2 2 GF(3)\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(MatGF::parse("2 2 GF(3)\n0 1 2\n0 0\n"), Err(Error::Parse { line: 2, column: 5, .. })));
    }

    #[test]
    fn transpose_and_product() {
        let f = gf(3);
        let a = MatGF::from_rows(&f, &[[1, 2], [0, 1]]).unwrap();
        let b = MatGF::from_rows(&f, &[[2, 1], [0, 1]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.entries(), &[2, 0, 0, 1]);
        assert_eq!(a.transpose().entries(), &[1, 0, 2, 1]);
    }
}
