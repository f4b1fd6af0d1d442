use alloc::vec::Vec;

use super::{Int, IntMatrix};

/// `s = u · a · v` with `u`, `v` unimodular and `s` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero-or-zero diagonal of `s`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Which transforms to record while reducing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const COLS: Track = Track { u: false, u_inv: false, v: true, v_inv: true };
    pub const ROWS: Track = Track { u: true, u_inv: true, v: false, v_inv: false };
}

/// Output of [`reduce`]. `diag[..rank]` is the nonzero part of the chain.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub diag: Vec<Int>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl Work {
    // row_i += k row_j
    fn row_add(&mut self, i: usize, j: usize, k: &Int, from: usize) {
        self.a.add_row_multiple(i, j, k, from);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(i, j, k, 0);
        }
        if let Some(w) = &mut self.u_inv {
            w.add_col_multiple(j, i, &-k, 0);
        }
    }

    // col_i += k col_j
    fn col_add(&mut self, i: usize, j: usize, k: &Int, from: usize) {
        self.a.add_col_multiple(i, j, k, from);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(i, j, k, 0);
        }
        if let Some(w) = &mut self.v_inv {
            w.add_row_multiple(j, i, &-k, 0);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            w.swap_cols(i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(w) = &mut self.v_inv {
            w.swap_rows(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(w) = &mut self.u_inv {
            w.negate_col(i);
        }
    }

    fn col_mix(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        self.a.mix_cols(i, j, a, b, c, d);
        if let Some(v) = &mut self.v {
            v.mix_cols(i, j, a, b, c, d);
        }
        if let Some(w) = &mut self.v_inv {
            w.mix_rows(i, j, d, &-b, &-c, a);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = (self.a.rows(), self.a.cols());
        let mut best: Option<(usize, usize, Int)> = None;
        for j in t..c {
            for i in t..r {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                let ax = x.abs();
                if best.as_ref().map_or(true, |b| ax < b.2) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith reduction with selectable transform tracking.
pub fn reduce(a: &IntMatrix, track: Track) -> Reduction {
    let (r, c) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: track.u.then(|| IntMatrix::identity(r)),
        u_inv: track.u_inv.then(|| IntMatrix::identity(r)),
        v: track.v.then(|| IntMatrix::identity(c)),
        v_inv: track.v_inv.then(|| IntMatrix::identity(c)),
    };
    let m = r.min(c);
    let mut t = 0;
    while t < m {
        let Some((pi, pj)) = w.find_pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(w.a.get(t, t));
                w.row_add(i, t, &-q, t);
                if !w.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(w.a.get(t, t));
                w.col_add(j, t, &-q, t);
                if !w.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let mut best: Option<(bool, usize, Int)> = None;
            for i in t + 1..r {
                let x = w.a.get(i, t);
                if !x.is_zero() && best.as_ref().map_or(true, |b| x.abs() < b.2) {
                    best = Some((true, i, x.abs()));
                }
            }
            for j in t + 1..c {
                let x = w.a.get(t, j);
                if !x.is_zero() && best.as_ref().map_or(true, |b| x.abs() < b.2) {
                    best = Some((false, j, x.abs()));
                }
            }
            if let Some((is_row, k, _)) = best {
                if is_row {
                    w.row_swap(t, k);
                } else {
                    w.col_swap(t, k);
                }
            }
        }
        if w.a.get(t, t).is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    let rank = t;
    let mut diag: Vec<Int> = (0..rank).map(|i| w.a.get(i, i).clone()).collect();
    for i in 0..rank {
        for j in i + 1..rank {
            if diag[i].divides(&diag[j]) {
                continue;
            }
            let (a, b) = (diag[i].clone(), diag[j].clone());
            let (g, s, tt) = a.ext_gcd(&b);
            w.row_add(i, j, &Int::ONE, 0);
            w.col_mix(i, j, &s, &-(&b / &g), &tt, &(&a / &g));
            let k = &(&b * &tt) / &g;
            w.row_add(j, i, &-k, 0);
            diag[i] = g.clone();
            diag[j] = (&a * &b).div_exact(&g);
            debug_assert_eq!(w.a.get(i, i), &diag[i]);
            debug_assert_eq!(w.a.get(j, j), &diag[j]);
        }
    }
    let mut full = diag;
    full.resize(m, Int::ZERO);
    Reduction { diag: full, rank, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let red = reduce(a, Track { u: true, u_inv: false, v: true, v_inv: false });
    let mut s = IntMatrix::zeros(a.rows(), a.cols());
    for (i, d) in red.diag.iter().enumerate() {
        s.set(i, i, d.clone());
    }
    SmithForm { u: red.u.unwrap(), s, v: red.v.unwrap() }
}

/// Invariant factors via gcds of k×k minors; exponential, used only as a test oracle.
pub fn determinant_divisors(a: &IntMatrix) -> Vec<Int> {
    let m = a.rows().min(a.cols());
    let mut dk: Vec<Int> = Vec::new();
    for k in 1..=m {
        let mut g = Int::ZERO;
        for rs in combinations(a.rows(), k) {
            for cs in combinations(a.cols(), k) {
                let d = a.select_rows(&rs).select_cols(&cs).determinant();
                g = g.gcd(&d);
            }
        }
        dk.push(g);
    }
    let mut out = Vec::new();
    let mut prev = Int::ONE;
    for d in dk {
        if d.is_zero() {
            out.push(Int::ZERO);
            prev = Int::ZERO;
        } else {
            out.push(d.div_exact(&prev));
            prev = d;
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) {
        let red = reduce(a, Track::ALL);
        let (u, ui, v, vi) = (red.u.unwrap(), red.u_inv.unwrap(), red.v.unwrap(), red.v_inv.unwrap());
        assert_eq!(u.mul(&ui), IntMatrix::identity(a.rows()));
        assert_eq!(v.mul(&vi), IntMatrix::identity(a.cols()));
        let s = u.mul(a).mul(&v);
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                let want = if i == j && i < red.diag.len() { red.diag[i].clone() } else { Int::ZERO };
                assert_eq!(s.get(i, j), &want);
            }
        }
        for w in red.diag.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert_eq!(red.diag, determinant_divisors(a));
    }

    #[test]
    fn examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&a).diagonal(), vec![Int::from(2), Int::from(4)]);
        check(&a);
        check(&IntMatrix::zeros(3, 2));
        let id = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(id.u, IntMatrix::identity(3));
        assert_eq!(id.v, IntMatrix::identity(3));
        check(&IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]));
        check(&IntMatrix::from_rows(&[vec![0, 0, 5], vec![0, 3, 0]]));
    }

    proptest! {
        #[test]
        fn snf_invariants(r in 1usize..5, c in 1usize..5, seed in proptest::collection::vec(-30i64..30, 25)) {
            let data = (0..r * c).map(|k| Int::from(seed[k])).collect();
            check(&IntMatrix::from_vec(r, c, data));
        }
    }
}
