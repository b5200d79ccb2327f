//! Row reduction, rank, and nullspace over a prime field GF(p).

/// pow(a, e) mod p for prime p; used for modular inverses via Fermat.
fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    if p == 2 {
        1
    } else {
        pow_mod(a, p - 2, p)
    }
}

/// Reduced row echelon form; returns the nonzero rows (a canonical basis of
/// the row space) and their pivot columns.
pub fn rref(rows: &[Vec<u32>], p: u64) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == m.len() {
            break;
        }
        let found = (pivot_row..m.len()).find(|&i| !(m[i][col] as u64).is_multiple_of(p));
        let Some(sel) = found else { continue };
        m.swap(pivot_row, sel);
        let inv = inv_mod(m[pivot_row][col] as u64, p);
        for entry in m[pivot_row].iter_mut() {
            *entry = (*entry as u64 * inv % p) as u32;
        }
        let pivot = m[pivot_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pivot_row && row[col] != 0 {
                let factor = row[col] as u64;
                for (entry, &pv) in row.iter_mut().zip(&pivot) {
                    let sub = factor * pv as u64 % p;
                    *entry = ((*entry as u64 + p - sub) % p) as u32;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<u32>], p: u64) -> usize {
    rref(rows, p).0.len()
}

/// A basis of {v : M v^T = 0}, derived from the RREF; rows are returned in
/// free-column order, which is deterministic.
pub fn nullspace(rows: &[Vec<u32>], p: u64, ncols: usize) -> Vec<Vec<u32>> {
    let (r, pivots) = rref(rows, p);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            // pivot entry is 1, so the pivot coordinate is -R[i][free]
            v[pc] = ((p - r[i][free] as u64 % p) % p) as u32;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonicalizes() {
        let rows = vec![vec![2, 4, 0], vec![1, 2, 1], vec![0, 0, 3]];
        let (r, pivots) = rref(&rows, 5);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![vec![1, 0, 2, 1], vec![0, 1, 1, 2]];
        let p = 3;
        let ns = nullspace(&rows, p, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                assert_eq!(dot % p, 0);
            }
        }
    }

    #[test]
    fn nullspace_of_empty_matrix_is_identity() {
        let ns = nullspace(&[], 2, 3);
        assert_eq!(ns, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = vec![vec![1, 1], vec![1, 1], vec![0, 1]];
        assert_eq!(rank(&rows, 2), 2);
    }
}
