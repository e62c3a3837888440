//! Dense matrices over fields, Smith forms over a Euclidean domain and over
//! its localization at a prime.

use super::frac::Field;
use super::{xgcd, Euclid, Frac};
use num_traits::{One, Zero};

/// A dense row-major matrix that remembers its shape even when empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<E>>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, z: E) -> Self {
        Mat { rows, cols, a: vec![vec![z; cols]; rows] }
    }

    pub fn from_rows(cols: usize, a: Vec<Vec<E>>) -> Self {
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat { rows: a.len(), cols, a }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> E) -> Self {
        Mat { rows, cols, a: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.a[j][i].clone())
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        self.a.iter().map(|r| r[j].clone()).collect()
    }

    /// Rows `r` and columns `c` selected by index.
    pub fn select(&self, r: &[usize], c: &[usize]) -> Self {
        Mat::from_fn(r.len(), c.len(), |i, j| self.a[r[i]][c[j]].clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut a = self.a.clone();
        a.extend(other.a.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, a }
    }
}

impl<E: Clone + Zero + One> Mat<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, E::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { E::one() } else { E::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|e| e.is_zero())
    }
}

pub fn mat_mul<F: Field>(f: &F, x: &Mat<F::E>, y: &Mat<F::E>) -> Mat<F::E> {
    assert_eq!(x.cols, y.rows, "shape mismatch in product");
    let mut out = Mat::filled(x.rows, y.cols, f.zero());
    for i in 0..x.rows {
        for k in 0..x.cols {
            if f.is_zero(&x.a[i][k]) {
                continue;
            }
            for j in 0..y.cols {
                if !f.is_zero(&y.a[k][j]) {
                    out.a[i][j] = f.add(&out.a[i][j], &f.mul(&x.a[i][k], &y.a[k][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(f: &F, x: &Mat<F::E>, v: &[F::E]) -> Vec<F::E> {
    assert_eq!(x.cols, v.len());
    x.a.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, m: &Mat<F::E>) -> (Mat<F::E>, Vec<usize>) {
    let mut a = m.a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]);
        for v in a[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    (Mat { rows: m.rows, cols: m.cols, a }, pivots)
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::E>) -> usize {
    rref(f, m).1.len()
}

/// A basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Mat<F::E>) -> Vec<Vec<F::E>> {
    let (r, piv) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(&r.a[i][fc]);
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve<F: Field>(f: &F, m: &Mat<F::E>, b: &[F::E]) -> Option<Vec<F::E>> {
    assert_eq!(m.rows, b.len());
    let aug = Mat::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols { m.a[i][j].clone() } else { b[i].clone() }
    });
    let (r, piv) = rref(f, &aug);
    if piv.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (i, &pc) in piv.iter().enumerate() {
        x[pc] = r.a[i][m.cols].clone();
    }
    Some(x)
}

/// `u * a * v = diag` with `u`, `v` invertible; `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct Smith<E> {
    pub diag: Vec<E>,
    pub u: Mat<E>,
    pub v: Mat<E>,
    pub v_inv: Mat<E>,
}

fn row_combine<E: Euclid>(m: &mut Mat<E>, i: usize, j: usize, c: [[E; 2]; 2]) {
    for k in 0..m.cols {
        let (x, y) = (m.a[i][k].clone(), m.a[j][k].clone());
        m.a[i][k] = c[0][0].clone() * x.clone() + c[0][1].clone() * y.clone();
        m.a[j][k] = c[1][0].clone() * x + c[1][1].clone() * y;
    }
}

fn col_combine<E: Euclid>(m: &mut Mat<E>, i: usize, j: usize, c: [[E; 2]; 2]) {
    for r in m.a.iter_mut() {
        let (x, y) = (r[i].clone(), r[j].clone());
        r[i] = x.clone() * c[0][0].clone() + y.clone() * c[1][0].clone();
        r[j] = x * c[0][1].clone() + y * c[1][1].clone();
    }
}

/// Inverse of a 2x2 matrix with unit determinant `det`.
fn inv2<E: Euclid>(c: &[[E; 2]; 2]) -> [[E; 2]; 2] {
    let det = c[0][0].clone() * c[1][1].clone() - c[0][1].clone() * c[1][0].clone();
    let di = det.unit_inverse();
    [
        [c[1][1].clone() * di.clone(), -c[0][1].clone() * di.clone()],
        [-c[1][0].clone() * di.clone(), c[0][0].clone() * di],
    ]
}

/// Smith normal form over a Euclidean domain, diagonal entries normalized
/// and forming a divisibility chain.
pub fn smith<R: Euclid>(m: &Mat<R>) -> Smith<R> {
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = Mat::<R>::identity(nr);
    let mut v = Mat::<R>::identity(nc);
    let mut vi = Mat::<R>::identity(nc);
    let mut diag = Vec::new();
    let swap_rows = |a: &mut Mat<R>, u: &mut Mat<R>, i: usize, j: usize| {
        a.a.swap(i, j);
        u.a.swap(i, j);
    };
    let do_cols = |a: &mut Mat<R>, v: &mut Mat<R>, vi: &mut Mat<R>, i: usize, j: usize, c: [[R; 2]; 2]| {
        col_combine(a, i, j, c.clone());
        col_combine(v, i, j, c.clone());
        let ci = inv2(&c);
        // v_inv gets the inverse row operation.
        row_combine(vi, i, j, ci);
    };
    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .find(|&(i, j)| !a.a[i][j].is_zero())
        else {
            break;
        };
        swap_rows(&mut a, &mut u, t, pi);
        if pj != t {
            let sw = [[R::zero(), R::one()], [R::one(), R::zero()]];
            do_cols(&mut a, &mut v, &mut vi, t, pj, sw);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                if a.a[i][t].is_zero() {
                    continue;
                }
                let (x, y) = (a.a[t][t].clone(), a.a[i][t].clone());
                let c = if x.divides(&y) {
                    [[R::one(), R::zero()], [-y.exact_div(&x), R::one()]]
                } else {
                    let (g, s, w) = xgcd(&x, &y);
                    [[s, w], [-y.exact_div(&g), x.exact_div(&g)]]
                };
                row_combine(&mut a, t, i, c.clone());
                row_combine(&mut u, t, i, c);
                changed = true;
            }
            for j in t + 1..nc {
                if a.a[t][j].is_zero() {
                    continue;
                }
                let (x, y) = (a.a[t][t].clone(), a.a[t][j].clone());
                let c = if x.divides(&y) {
                    [[R::one(), -y.exact_div(&x)], [R::zero(), R::one()]]
                } else {
                    let (g, s, w) = xgcd(&x, &y);
                    [[s, -y.exact_div(&g)], [w, x.exact_div(&g)]]
                };
                do_cols(&mut a, &mut v, &mut vi, t, j, c);
                changed = true;
            }
            if !changed {
                let p = a.a[t][t].clone();
                let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !p.divides(&a.a[i][j])));
                match bad {
                    Some(i) => {
                        let c = [[R::one(), R::one()], [R::zero(), R::one()]];
                        row_combine(&mut a, t, i, c.clone());
                        row_combine(&mut u, t, i, c);
                    }
                    None => break,
                }
            }
        }
        let unit = a.a[t][t].unit_part().unit_inverse();
        for k in 0..nr {
            u.a[t][k] = u.a[t][k].clone() * unit.clone();
        }
        a.a[t][t] = a.a[t][t].clone() * unit;
        diag.push(a.a[t][t].clone());
    }
    Smith { diag, u, v, v_inv: vi }
}

/// Smith form over the local ring at a prime, for a matrix whose entries
/// all have nonnegative valuation. `val` returns the valuation of a nonzero
/// element. The diagonal is listed up to the rank.
pub fn local_smith<R: Euclid>(
    m: &Mat<Frac<R>>,
    val: &dyn Fn(&Frac<R>) -> i64,
) -> Smith<Frac<R>> {
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = Mat::<Frac<R>>::identity(nr);
    let mut v = Mat::<Frac<R>>::identity(nc);
    let mut vi = Mat::<Frac<R>>::identity(nc);
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if a.a[i][j].is_zero() {
                    continue;
                }
                let w = val(&a.a[i][j]);
                if best.is_none_or(|(bw, _, _)| w < bw) {
                    best = Some((w, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.a.swap(t, pi);
        u.a.swap(t, pi);
        for r in a.a.iter_mut().chain(v.a.iter_mut()) {
            r.swap(t, pj);
        }
        vi.a.swap(t, pj);
        let piv = a.a[t][t].clone();
        for i in t + 1..nr {
            if a.a[i][t].is_zero() {
                continue;
            }
            let k = a.a[i][t].clone() / piv.clone();
            for c in 0..nc {
                let d = k.clone() * a.a[t][c].clone();
                a.a[i][c] = a.a[i][c].clone() - d;
            }
            for c in 0..nr {
                let d = k.clone() * u.a[t][c].clone();
                u.a[i][c] = u.a[i][c].clone() - d;
            }
        }
        for j in t + 1..nc {
            if a.a[t][j].is_zero() {
                continue;
            }
            let k = a.a[t][j].clone() / piv.clone();
            for r in a.a.iter_mut().chain(v.a.iter_mut()) {
                let d = r[t].clone() * k.clone();
                r[j] = r[j].clone() - d;
            }
            // inverse column op on v_inv: row t += k * row j
            for c in 0..nc {
                let d = k.clone() * vi.a[j][c].clone();
                vi.a[t][c] = vi.a[t][c].clone() + d;
            }
        }
        diag.push(piv);
    }
    Smith { diag, u, v, v_inv: vi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FracField, Int};

    fn z(v: i64) -> Int {
        Int::from(v)
    }

    fn zmul(x: &Mat<Int>, y: &Mat<Int>) -> Mat<Int> {
        Mat::from_fn(x.rows, y.cols, |i, j| {
            (0..x.cols).fold(z(0), |acc, k| acc + x.a[i][k].clone() * y.a[k][j].clone())
        })
    }

    #[test]
    fn smith_of_small_matrix() {
        let m = Mat::from_rows(3, vec![vec![z(2), z(4), z(4)], vec![z(-6), z(6), z(12)], vec![z(10), z(-4), z(-16)]]);
        let s = smith(&m);
        assert_eq!(s.diag, vec![z(2), z(6), z(12)]);
        let d = zmul(&zmul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { z(0) };
                assert_eq!(d.a[i][j], want);
            }
        }
        assert_eq!(zmul(&s.v, &s.v_inv), Mat::identity(3));
    }

    #[test]
    fn kernel_and_solve() {
        let f = FracField::<Int>::default();
        let q = |v: i64| Frac::int(z(v));
        let m = Mat::from_rows(3, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(rank(&f, &m), 1);
        let k = kernel(&f, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|e| e.is_zero()));
        }
        assert!(solve(&f, &m, &[q(1), q(3)]).is_none());
        assert!(solve(&f, &m, &[q(1), q(2)]).is_some());
    }

    #[test]
    fn local_smith_at_two() {
        let f = FracField::<Int>::default();
        let q = |a: i64, b: i64| Frac::new(z(a), z(b));
        let m = Mat::from_rows(2, vec![vec![q(4, 3), q(6, 1)], vec![q(2, 5), q(8, 1)]]);
        let two = z(2);
        let s = local_smith(&m, &|x: &Frac<Int>| x.valuation(&two).unwrap());
        let d = mat_mul(&f, &mat_mul(&f, &s.u, &m), &s.v);
        assert!(d.a[0][1].is_zero() && d.a[1][0].is_zero());
        assert_eq!(d.a[0][0].valuation(&two), Some(1));
        assert_eq!(mat_mul(&f, &s.v, &s.v_inv), Mat::identity(2));
    }
}
