//! Small dense linear algebra over a [`Field`].

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(field: &K, rows: &mut Vec<Vec<K::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(top, found);
        let inv = field.inv(&rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank<K: Field>(field: &K, rows: &[Vec<K::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_examples() {
        let q = Rationals;
        let r = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(rank(&q, &[r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rank(&q, &[r(&[1, 2, 0]), r(&[0, 1, 1]), r(&[1, 3, 1])]), 2);
        assert_eq!(rank(&q, &[r(&[0, 0])]), 0);
        // singular only mod 5
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2], vec![3, 1]];
        assert_eq!(rank(&f, &rows), 1);
        assert_eq!(rank(&q, &[r(&[1, 2]), r(&[3, 1])]), 2);
    }

    #[test]
    fn rref_is_reduced() {
        let q = Rationals;
        let mut m: Vec<Vec<_>> =
            [[2, 4, 2], [1, 1, 0]].iter().map(|row| row.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let piv = rref(&q, &mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m[0], vec![q.from_i64(1), q.from_i64(0), q.from_i64(-1)]);
        assert_eq!(m[1], vec![q.from_i64(0), q.from_i64(1), q.from_i64(1)]);
    }
}
