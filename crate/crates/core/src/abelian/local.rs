//! Linear algebra over the local ring `Z/p^k`.
//!
//! Every nonzero residue is `p^e * unit`, so a pivot of minimal valuation
//! divides its whole row and column and elimination never needs Euclidean
//! steps or produces coefficient growth.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
}

impl LocalRing {
    pub fn new(p: u64, k: u32) -> Self {
        LocalRing { p, k, modulus: p.pow(k) }
    }

    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    pub fn val(&self, x: u64) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut e = 0;
        let mut y = x;
        while y.is_multiple_of(self.p) {
            y /= self.p;
            e += 1;
        }
        e
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn inv_unit(&self, a: u64) -> u64 {
        let (g, x, _) = ext_gcd(a as i128, self.modulus as i128);
        assert_eq!(g, 1, "{a} is not a unit mod {}", self.modulus);
        self.reduce(x)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Dense matrix over `Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &ModMatrix, ring: &LocalRing) -> ModMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ModMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + ring.mul(a, b)) % ring.modulus;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= c * row[source]
    fn row_sub(&mut self, target: usize, source: usize, c: u64, ring: &LocalRing, from: usize) {
        if c == 0 {
            return;
        }
        let cols = self.cols;
        for j in from..cols {
            let s = self.data[source * cols + j];
            if s != 0 {
                let t = &mut self.data[target * cols + j];
                *t = ring.sub(*t, ring.mul(c, s));
            }
        }
    }

    /// col[target] -= c * col[source]
    fn col_sub(&mut self, target: usize, source: usize, c: u64, ring: &LocalRing) {
        if c == 0 {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s != 0 {
                let t = self.get(i, target);
                self.set(i, target, ring.sub(t, ring.mul(c, s)));
            }
        }
    }

    fn row_scale(&mut self, i: usize, c: u64, ring: &LocalRing) {
        for j in 0..self.cols {
            let x = self.get(i, j);
            self.set(i, j, ring.mul(x, c));
        }
    }

    fn col_scale(&mut self, j: usize, c: u64, ring: &LocalRing) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            self.set(i, j, ring.mul(x, c));
        }
    }
}

/// Smith form over `Z/p^k`: `U A V = diag(p^{e_0}, p^{e_1}, ...)`.
///
/// `vals[t]` is the valuation of the `t`-th diagonal entry for
/// `t < min(rows, cols)` (`k` for a zero entry). Only the requested
/// transforms are tracked.
pub struct LocalSmith {
    pub vals: Vec<u32>,
    pub v: Option<ModMatrix>,
    pub v_inv: Option<ModMatrix>,
    pub u_inv: Option<ModMatrix>,
}

pub fn local_smith(ring: &LocalRing, a: &ModMatrix, track_cols: bool, track_row_inverse: bool) -> LocalSmith {
    let mut a = a.clone();
    let (r, c) = (a.rows, a.cols);
    let mut v = track_cols.then(|| ModMatrix::identity(c));
    let mut v_inv = track_cols.then(|| ModMatrix::identity(c));
    let mut u_inv = track_row_inverse.then(|| ModMatrix::identity(r));
    let n = r.min(c);
    let mut vals = vec![ring.k; n];
    for t in 0..n {
        // Pivot of minimal valuation in the trailing block.
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for i in t..r {
            let row = &a.data[i * c..(i + 1) * c];
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x == 0 {
                    continue;
                }
                let e = ring.val(x);
                if best.is_none_or(|(_, _, be)| e < be) {
                    best = Some((i, j, e));
                    if e == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, e)) = best else { break };
        a.swap_rows(t, pi);
        if let Some(ui) = u_inv.as_mut() {
            ui.swap_cols(t, pi);
        }
        a.swap_cols(t, pj);
        if let (Some(vm), Some(vi)) = (v.as_mut(), v_inv.as_mut()) {
            vm.swap_cols(t, pj);
            vi.swap_rows(t, pj);
        }
        let pe = ring.pow_p(e);
        let unit = a.get(t, t) / pe;
        let unit_inv = ring.inv_unit(unit % ring.modulus);
        a.row_scale(t, unit_inv, ring);
        if let Some(ui) = u_inv.as_mut() {
            ui.col_scale(t, unit, ring);
        }
        debug_assert_eq!(a.get(t, t), pe);
        for i in t + 1..r {
            let x = a.get(i, t);
            if x == 0 {
                continue;
            }
            let q = x / pe;
            a.row_sub(i, t, q, ring, t);
            if let Some(ui) = u_inv.as_mut() {
                // U^{-1} <- U^{-1} E^{-1}: col_t += q col_i
                for rr in 0..r {
                    let s = ui.get(rr, i);
                    if s != 0 {
                        let cur = ui.get(rr, t);
                        ui.set(rr, t, ring.add(cur, ring.mul(q, s)));
                    }
                }
            }
        }
        for j in t + 1..c {
            let x = a.get(t, j);
            if x == 0 {
                continue;
            }
            let q = x / pe;
            a.set(t, j, 0);
            if let (Some(vm), Some(vi)) = (v.as_mut(), v_inv.as_mut()) {
                vm.col_sub(j, t, q, ring);
                // V^{-1} <- F^{-1} V^{-1}: row_t += q row_j
                for cc in 0..c {
                    let s = vi.get(j, cc);
                    if s != 0 {
                        let cur = vi.get(t, cc);
                        vi.set(t, cc, ring.add(cur, ring.mul(q, s)));
                    }
                }
            }
        }
        vals[t] = e;
    }
    LocalSmith { vals, v, v_inv, u_inv }
}

/// Generators of `{x : A x = 0}` over `Z/p^k`, as `(V, orders)` where column
/// `t` of the result generates a cyclic summand of order `p^{orders[t]}`.
pub struct LocalKernel {
    pub gens: ModMatrix,
    pub exps: Vec<u32>,
    pub v_inv: ModMatrix,
}

pub fn local_kernel(ring: &LocalRing, a: &ModMatrix) -> LocalKernel {
    let sm = local_smith(ring, a, true, false);
    let c = a.cols;
    let v = sm.v.expect("tracked");
    let v_inv = sm.v_inv.expect("tracked");
    let mut gens = v.clone();
    let mut exps = vec![ring.k; c];
    for (t, &e) in sm.vals.iter().enumerate() {
        exps[t] = e.min(ring.k);
    }
    for (t, &e) in exps.iter().enumerate() {
        let scale = ring.pow_p(ring.k - e);
        if scale != 1 {
            gens.col_scale(t, scale, ring);
        }
    }
    LocalKernel { gens, exps, v_inv }
}

impl LocalKernel {
    /// Coordinates of a kernel element in terms of the cyclic generators.
    pub fn coordinates(&self, ring: &LocalRing, x: &[u64]) -> Vec<u64> {
        let c = self.v_inv.cols;
        (0..c)
            .map(|t| {
                let mut y = 0u64;
                for (j, &xj) in x.iter().enumerate() {
                    if xj != 0 {
                        y = ring.add(y, ring.mul(self.v_inv.get(t, j), xj));
                    }
                }
                let scale = ring.pow_p(ring.k - self.exps[t]);
                debug_assert_eq!(y % scale, 0, "vector is not in the kernel");
                (y / scale) % ring.pow_p(self.exps[t])
            })
            .collect()
    }
}
