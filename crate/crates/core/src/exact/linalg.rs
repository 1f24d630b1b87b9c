//! Dense linear algebra over an exact field.

use super::ring::Field;

/// Determinant by Gaussian elimination. The empty matrix has determinant one.
pub fn det<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut acc = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc = acc * p.clone();
        let pinv = p.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * pinv.clone();
            for c in col..n {
                let v = m[r][c].clone() - f.clone() * m[col][c].clone();
                m[r][c] = v;
            }
        }
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[i][j].clone() - f.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel {x : m x = 0}, with `cols` unknowns.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solve m x = b, returning one solution if the system is consistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{rat, Rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(m(&[&[2, 1], &[1, 3]])), rat(5));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(det(m(&[&[1, 2], &[2, 4]])), rat(0));
        assert_eq!(det::<Rat>(vec![]), rat(1));
    }

    #[test]
    fn kernels_and_solutions() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s: Rat = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert_eq!(s, rat(0));
            }
        }
        let x = solve(&m(&[&[1, 1], &[1, -1]]), &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]).is_none());
    }
}
