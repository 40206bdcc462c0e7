//! Bit-packed GF(2) elimination: one row per machine word.

/// Widest row the packed path accepts.
pub const MAX_COLS: usize = 64;

/// Packs 0/1 entries (row-major) into one word per row, column `j` at bit `j`.
pub fn pack_rows(entries: &[u16], rows: usize, cols: usize, out: &mut [u64]) {
    debug_assert!(cols <= MAX_COLS && out.len() >= rows);
    for (i, row) in entries.chunks_exact(cols).take(rows).enumerate() {
        out[i] = row
            .iter()
            .enumerate()
            .fold(0u64, |w, (j, &x)| w | (u64::from(x & 1) << j));
    }
}

/// Rank of the packed rows. The slice is overwritten.
pub fn rank_packed(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        let low = pivot & pivot.wrapping_neg();
        for row in &mut rows[i + 1..] {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an `rows × cols` 0/1 matrix given row-major.
pub fn rank(entries: &[u16], rows: usize, cols: usize) -> usize {
    let mut buf = [0u64; 64];
    if rows <= buf.len() {
        pack_rows(entries, rows, cols, &mut buf);
        rank_packed(&mut buf[..rows])
    } else {
        let mut v = vec![0u64; rows];
        pack_rows(entries, rows, cols, &mut v);
        rank_packed(&mut v)
    }
}
