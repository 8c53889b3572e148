//! Exact integer linear algebra: column echelon form, integer kernels,
//! exact solving and Smith normal form with row transforms.

/// Row-major integer matrix.
pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn col_swap(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col[dst] += c * col[src]`.
fn col_addmul(m: &mut Mat, dst: usize, src: usize, c: i64) {
    for row in m.iter_mut() {
        row[dst] += c * row[src];
    }
}

fn col_neg(m: &mut Mat, a: usize) {
    for row in m.iter_mut() {
        row[a] = -row[a];
    }
}

/// Column echelon form `E = M·V` with `V` unimodular. Returns `E`, `V` and
/// the pivot row of each of the leading nonzero columns; the remaining
/// columns of `E` are zero.
pub fn column_echelon(m: &Mat, ncols: usize) -> (Mat, Mat, Vec<usize>) {
    let mut e = m.clone();
    let mut v = identity(ncols);
    let mut pivots = Vec::new();
    for r in 0..e.len() {
        let p = pivots.len();
        if p == ncols {
            break;
        }
        // smallest nonzero entry of row r among columns p..
        while let Some(best) = (p..ncols).filter(|&c| e[r][c] != 0).min_by_key(|&c| e[r][c].abs()) {
            col_swap(&mut e, p, best);
            col_swap(&mut v, p, best);
            let mut done = true;
            for c in p + 1..ncols {
                if e[r][c] != 0 {
                    let q = e[r][c].div_euclid(e[r][p]);
                    col_addmul(&mut e, c, p, -q);
                    col_addmul(&mut v, c, p, -q);
                    done &= e[r][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if e[r][p] != 0 {
            if e[r][p] < 0 {
                col_neg(&mut e, p);
                col_neg(&mut v, p);
            }
            pivots.push(r);
        }
    }
    (e, v, pivots)
}

/// A basis of `{x ∈ Zⁿ : M·x = 0}`, as vectors.
pub fn kernel(m: &Mat, ncols: usize) -> Vec<Vec<i64>> {
    let (_, v, pivots) = column_echelon(m, ncols);
    (pivots.len()..ncols).map(|c| v.iter().map(|row| row[c]).collect()).collect()
}

/// The integer solution `y` of `B·y = target` for `B` (given by columns)
/// of full column rank, if one exists.
pub fn solve(columns: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = target.len();
    let r = columns.len();
    let b: Mat = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let (e, v, pivots) = column_echelon(&b, r);
    debug_assert_eq!(pivots.len(), r, "columns must be independent");
    let mut u = vec![0i64; r];
    for (j, &row) in pivots.iter().enumerate() {
        let partial: i64 = (0..j).map(|i| e[row][i] * u[i]).sum();
        let rest = target[row] - partial;
        if rest % e[row][j] != 0 {
            return None;
        }
        u[j] = rest / e[row][j];
    }
    for (i, row) in e.iter().enumerate() {
        if (0..r).map(|j| row[j] * u[j]).sum::<i64>() != target[i] {
            return None;
        }
    }
    Some((0..r).map(|i| (0..r).map(|j| v[i][j] * u[j]).sum()).collect())
}

/// Smith normal form of an `r × k` matrix: returns the diagonal (length
/// `r`, padded with zeros), and unimodular `U`, `U⁻¹` with `U·R·V`
/// diagonal for some unimodular `V`. Diagonal entries are non-negative and
/// each divides the next among the nonzero ones.
pub fn smith(rel: &Mat, k: usize) -> (Vec<i64>, Mat, Mat) {
    let r = rel.len();
    let mut a = rel.clone();
    let mut u = identity(r);
    let mut uinv = identity(r);

    // row i += c * row j on a and u; the inverse update on uinv is
    // col j -= c * col i.
    let row_addmul = |a: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, j: usize, c: i64| {
        let (src_a, src_u) = (a[j].clone(), u[j].clone());
        for (x, s) in a[i].iter_mut().zip(&src_a) {
            *x += c * s;
        }
        for (x, s) in u[i].iter_mut().zip(&src_u) {
            *x += c * s;
        }
        col_addmul(uinv, j, i, -c);
    };
    let row_swap = |a: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, j: usize| {
        a.swap(i, j);
        u.swap(i, j);
        col_swap(uinv, i, j);
    };

    for t in 0..r.min(k) {
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..k).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        row_swap(&mut a, &mut u, &mut uinv, t, pi);
        col_swap(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    row_addmul(&mut a, &mut u, &mut uinv, i, t, -q);
                    if a[i][t] != 0 {
                        clean = false;
                        if a[i][t].abs() < a[t][t].abs() {
                            row_swap(&mut a, &mut u, &mut uinv, t, i);
                        }
                    }
                }
            }
            for j in t + 1..k {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_addmul(&mut a, j, t, -q);
                    if a[t][j] != 0 {
                        clean = false;
                        if a[t][j].abs() < a[t][t].abs() {
                            col_swap(&mut a, t, j);
                        }
                    }
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the submatrix
            let bad = (t + 1..r).find(|&i| (t + 1..k).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => row_addmul(&mut a, &mut u, &mut uinv, t, i, 1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -*x;
            }
            for row in uinv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    let diag = (0..r).map(|i| if i < k { a[i][i] } else { 0 }).collect();
    (diag, u, uinv)
}

pub fn mat_mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|x| row[x] * b[x][j]).sum()).collect()).collect()
}
