//! Volume of the scaled simplex against the Gram determinant of its edge
//! vectors: for vertices `u e_1, ..., u e_n` the `(n-1)`-volume is
//! `sqrt(det(E^T E)) / (n-1)!` with `E` the edges from `u e_1`.

use simplexord::simplex_volume;

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let k = m.len();
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..k {
            let (top, bottom) = m.split_at_mut(row);
            let (pivot_row, target) = (&top[col], &mut bottom[0]);
            let f = target[col] / pivot_row[col];
            for (t, p) in target[col..k].iter_mut().zip(&pivot_row[col..k]) {
                *t -= f * p;
            }
        }
    }
    det
}

fn gram_volume(n: usize, u: f64) -> f64 {
    let edges: Vec<Vec<f64>> = (1..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[0] = -u;
            e[i] = u;
            e
        })
        .collect();
    let gram: Vec<Vec<f64>> = edges
        .iter()
        .map(|a| {
            edges
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let fact: f64 = (1..n).map(|k| k as f64).product();
    determinant(gram).sqrt() / fact
}

#[test]
fn determinant_oracle_agrees() {
    let (oracle, closed) = (gram_volume(4, 2.0), simplex_volume(4, 2.0).unwrap());
    assert!((oracle - 8.0 / 3.0).abs() < 1e-12);
    assert!(((closed - oracle) / oracle).abs() <= 1e-12);
    for n in 2..=9 {
        for u in [0.5, 1.0, 3.0] {
            let (o, c) = (gram_volume(n, u), simplex_volume(n, u).unwrap());
            assert!(((c - o) / o).abs() <= 1e-10, "n={n} u={u}: {c} vs {o}");
        }
    }
}
