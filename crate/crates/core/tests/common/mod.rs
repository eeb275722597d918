//! Dense-matrix reference implementations shared by the integration tests.
//! Everything here builds explicit matrices and multiplies them; none of it
//! touches the strided kernels of the library.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use rand_distr::StandardNormal;

pub const Z: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<C>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![Z; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[C]]) -> Self {
        let n = rows.len();
        Self { n, a: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == Z {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * o.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn kron(&self, o: &Dense) -> Dense {
        let n = self.n * o.n;
        let mut out = Dense::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..o.n {
                    for l in 0..o.n {
                        out.set(i * o.n + k, j * o.n + l, self.get(i, j) * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, w: f64, o: &Dense) {
        for (x, y) in self.a.iter_mut().zip(&o.a) {
            *x += w * y;
        }
    }

    pub fn max_diff(&self, o: &Dense) -> f64 {
        self.a.iter().zip(&o.a).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn outer(v: &[C]) -> Dense {
        let n = v.len();
        let mut m = Dense::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }
}

pub fn hadamard() -> Dense {
    let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Dense::from_rows(&[&[h, h], &[h, -h]])
}

/// Cyclic shift on `n` sites: `|x⟩ → |x + d mod n⟩`.
pub fn translation(n: usize, d: isize) -> Dense {
    let mut m = Dense::zeros(n);
    for x in 0..n {
        let y = (x as isize + d).rem_euclid(n as isize) as usize;
        m.set(y, x, ONE);
    }
    m
}

pub fn projector(s: usize) -> Dense {
    let mut m = Dense::zeros(2);
    m.set(s, s, ONE);
    m
}

/// `S = |↑⟩⟨↑| ⊗ T₊ + |↓⟩⟨↓| ⊗ T₋` on coin ⊗ position.
pub fn shift(n: usize) -> Dense {
    let mut s = projector(0).kron(&translation(n, 1));
    s.add_scaled(1.0, &projector(1).kron(&translation(n, -1)));
    s
}

/// `U = S (H ⊗ 1)`.
pub fn step_single(n: usize) -> Dense {
    shift(n).mul(&hadamard().kron(&Dense::identity(n)))
}

/// Permutation from `c₁ ⊗ x₁ ⊗ c₂ ⊗ x₂` ordering to the library's
/// `c₁ ⊗ c₂ ⊗ x₁ ⊗ x₂` ordering.
fn reorder_two(n: usize) -> Dense {
    let d = 4 * n * n;
    let mut p = Dense::zeros(d);
    for c1 in 0..2 {
        for x1 in 0..n {
            for c2 in 0..2 {
                for x2 in 0..n {
                    let from = ((c1 * n + x1) * 2 + c2) * n + x2;
                    let to = ((c1 * 2 + c2) * n + x1) * n + x2;
                    p.set(to, from, ONE);
                }
            }
        }
    }
    p
}

/// `Ū = (U ⊗ 1)(1 ⊗ U)` written in the library's basis order; the two
/// factors commute so the order only matters for bookkeeping.
pub fn step_two(n: usize) -> Dense {
    let u = step_single(n);
    let id = Dense::identity(2 * n);
    let first = u.kron(&id);
    let second = id.kron(&u);
    let p = reorder_two(n);
    p.mul(&second.mul(&first)).mul(&p.dagger())
}

pub fn power(m: &Dense, t: usize) -> Dense {
    (0..t).fold(Dense::identity(m.n), |acc, _| m.mul(&acc))
}

/// Kraus pair `E± ⊗ 1` for coin dephasing of strength `lambda`.
pub fn dephasing_kraus(n: usize, lambda: f64) -> [Dense; 2] {
    let e = |s: f64| {
        let a = C::new(((1.0 + s * lambda) / 2.0).sqrt(), 0.0);
        let b = C::new(((1.0 - s * lambda) / 2.0).sqrt(), 0.0);
        Dense::from_rows(&[&[a, Z], &[Z, b]]).kron(&Dense::identity(n))
    };
    [e(1.0), e(-1.0)]
}

/// `ρ → Σ± E± U ρ U† E±†`.
pub fn channel_step(rho: &Dense, n: usize, lambda: f64) -> Dense {
    let u = step_single(n);
    let evolved = u.mul(rho).mul(&u.dagger());
    let mut out = Dense::zeros(rho.n);
    for e in dephasing_kraus(n, lambda) {
        out.add_scaled(1.0, &e.mul(&evolved).mul(&e.dagger()));
    }
    out
}

/// `Tr_P` for a matrix ordered coin-major with `coin_dim` coin states.
pub fn trace_positions(rho: &Dense, coin_dim: usize) -> Dense {
    let block = rho.n / coin_dim;
    let mut out = Dense::zeros(coin_dim);
    for a in 0..coin_dim {
        for b in 0..coin_dim {
            out.set(a, b, (0..block).map(|p| rho.get(a * block + p, b * block + p)).sum());
        }
    }
    out
}

pub fn pauli(k: usize) -> Dense {
    let i = C::new(0.0, 1.0);
    match k {
        0 => Dense::identity(2),
        1 => Dense::from_rows(&[&[Z, ONE], &[ONE, Z]]),
        2 => Dense::from_rows(&[&[Z, -i], &[i, Z]]),
        _ => Dense::from_rows(&[&[ONE, Z], &[Z, -ONE]]),
    }
}

/// `M₂` by explicit Pauli-string products: `−ln(Σ Tr(ρP)⁴ / Σ Tr(ρP)²)`.
pub fn sre2_bruteforce(rho: &Dense) -> f64 {
    let qubits = rho.n.trailing_zeros() as usize;
    let (mut s2, mut s4) = (0.0, 0.0);
    for k in 0..4usize.pow(qubits as u32) {
        let mut p = Dense::identity(1);
        for q in (0..qubits).rev() {
            p = p.kron(&pauli((k >> (2 * q)) & 3));
        }
        let c = rho.mul(&p).trace().re;
        s2 += c * c;
        s4 += c.powi(4);
    }
    -(s4 / s2).ln()
}

/// Haar-distributed pure state of dimension `d`.
pub fn random_pure<R: Rng>(rng: &mut R, d: usize) -> Vec<C> {
    let v: Vec<C> = (0..d).map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn origin_state(n: usize, coin: &[C]) -> Vec<C> {
    let o = (n - 1) / 2;
    let mut v = vec![Z; coin.len() * n.pow(coin.len().trailing_zeros())];
    match coin.len() {
        2 => {
            for (s, &a) in coin.iter().enumerate() {
                v[s * n + o] = a;
            }
        }
        _ => {
            for (s, &a) in coin.iter().enumerate() {
                v[(s * n + o) * n + o] = a;
            }
        }
    }
    v
}
