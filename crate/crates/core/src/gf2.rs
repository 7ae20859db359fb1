//! Bit-packed GF(2) vectors and the linear-algebra kernels used by the
//! stabilizer engine: row reduction, solving, kernel bases.
//!
//! Rows are packed into `u64` words so row operations are word-wide XORs.

/// A fixed-length vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// popcount(self AND other); the workhorse of symplectic products.
    pub fn and_popcount(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// popcount(self AND a AND b), used for the three-way CX sign rule.
    pub fn and3_popcount(&self, a: &BitVec, b: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&a.words)
            .zip(&b.words)
            .map(|((x, y), z)| (x & y & z).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenate two vectors (self followed by other).
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector on the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(k, true);
            }
        }
        out
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Rank of a set of GF(2) row vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let mut basis: Vec<BitVec> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            if let Some(p) = b.first_one() {
                if r.get(p) {
                    r.xor_assign(b);
                }
            }
        }
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis.len()
}

/// Express `target` as an XOR of `rows`, returning the combination vector
/// (one bit per row) if the target lies in the row space.
pub fn row_space_solve(rows: &[BitVec], target: &BitVec) -> Option<BitVec> {
    // Echelonize with combination tags.
    let mut basis: Vec<(BitVec, BitVec)> = Vec::new(); // (reduced row, combination)
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut tag = BitVec::zeros(rows.len());
        tag.set(i, true);
        for (b, btag) in &basis {
            if let Some(p) = b.first_one() {
                if r.get(p) {
                    r.xor_assign(b);
                    tag.xor_assign(btag);
                }
            }
        }
        if !r.is_zero() {
            basis.push((r, tag));
        }
    }
    let mut t = target.clone();
    let mut comb = BitVec::zeros(rows.len());
    for (b, btag) in &basis {
        if let Some(p) = b.first_one() {
            if t.get(p) {
                t.xor_assign(b);
                comb.xor_assign(btag);
            }
        }
    }
    if t.is_zero() {
        Some(comb)
    } else {
        None
    }
}

/// Basis of {c : sum_i c_i * rows[i] = 0}, the left kernel of the row stack.
pub fn left_kernel(rows: &[BitVec]) -> Vec<BitVec> {
    let mut basis: Vec<(BitVec, BitVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut tag = BitVec::zeros(rows.len());
        tag.set(i, true);
        for (b, btag) in &basis {
            if let Some(p) = b.first_one() {
                if r.get(p) {
                    r.xor_assign(b);
                    tag.xor_assign(btag);
                }
            }
        }
        if r.is_zero() {
            kernel.push(tag);
        } else {
            basis.push((r, tag));
        }
    }
    kernel
}

/// Solve the linear system `rows[i] . x = rhs[i]` over GF(2).
///
/// Returns the canonical solution of the reduced echelon form: variables are
/// eliminated in index order and every free variable is set to zero, so the
/// result is deterministic for a given system. `None` if inconsistent.
pub fn solve_system(rows: &[BitVec], rhs: &[bool]) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    if rows.is_empty() {
        return Some(BitVec::zeros(0));
    }
    let ncols = rows[0].len();
    let mut mat: Vec<(BitVec, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, col)
    let mut row = 0;
    for col in 0..ncols {
        if let Some(r) = (row..mat.len()).find(|&r| mat[r].0.get(col)) {
            mat.swap(row, r);
            let (pivot_row, pivot_rhs) = mat[row].clone();
            for (r, (other, orhs)) in mat.iter_mut().enumerate() {
                if r != row && other.get(col) {
                    other.xor_assign(&pivot_row);
                    *orhs ^= pivot_rhs;
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == mat.len() {
                break;
            }
        }
    }
    // Inconsistent if a zero row has rhs 1 (pivot rows are never zero).
    for (v, b) in &mat {
        if *b && v.is_zero() {
            return None;
        }
    }
    let mut x = BitVec::zeros(ncols);
    for &(r, c) in &pivots {
        if mat[r].1 {
            x.set(c, true);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010")];
        assert_eq!(rank(&rows), 2);
        let k = left_kernel(&rows);
        assert_eq!(k.len(), 1);
        // 1100 ^ 0110 ^ 1010 = 0000
        assert_eq!(k[0], bv("111"));
    }

    #[test]
    fn row_space_membership() {
        let rows = vec![bv("1100"), bv("0110")];
        let c = row_space_solve(&rows, &bv("1010")).unwrap();
        assert_eq!(c, bv("11"));
        assert!(row_space_solve(&rows, &bv("0001")).is_none());
    }

    #[test]
    fn solve_canonical() {
        // x0 + x1 = 1 with x2 free: canonical solution sets x0 = 1.
        let sol = solve_system(&[bv("110")], &[true]).unwrap();
        assert_eq!(sol, bv("100"));
        // Inconsistent.
        assert!(solve_system(&[bv("110"), bv("110")], &[true, false]).is_none());
    }

    #[test]
    fn word_boundary_ops() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.first_one(), Some(0));
        let mut w = BitVec::zeros(130);
        w.set(64, true);
        v.xor_assign(&w);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 129]);
    }
}
