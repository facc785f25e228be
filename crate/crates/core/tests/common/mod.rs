//! Matrix model of Sp4 used as an oracle: 4×4 integer matrices for the root
//! groups, and the quotient `P₊/P₁` at the barycenter realised over `Z/4`
//! with uniformiser 2.

#![allow(dead_code)]

pub type Mat = [[i64; 4]; 4];

/// `(row, col, value)`.
type Entry = (usize, usize, i64);

/// Nonzero entries `(row, col, sign)` of `X_a`, keyed by the gradient in the
/// simple-root basis.
const NILPOTENTS: [([i64; 2], &[Entry]); 8] = [
    ([1, 0], &[(0, 1, 1), (2, 3, -1)]),
    ([0, 1], &[(1, 2, 1)]),
    ([1, 1], &[(0, 2, 1), (1, 3, 1)]),
    ([2, 1], &[(0, 3, 1)]),
    ([-1, 0], &[(1, 0, 1), (3, 2, -1)]),
    ([0, -1], &[(2, 1, 1)]),
    ([-1, -1], &[(2, 0, 1), (3, 1, 1)]),
    ([-2, -1], &[(3, 0, 1)]),
];

pub const IDENTITY: Mat = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

pub fn entries(g: [i64; 2]) -> Option<&'static [(usize, usize, i64)]> {
    NILPOTENTS.iter().find(|(h, _)| *h == g).map(|(_, e)| *e)
}

pub fn is_root(g: [i64; 2]) -> bool {
    entries(g).is_some()
}

/// Gradient of `n_0 α_0 + n_1 α_1 + n_2 α_2`, with `α_0 = −(2α_1 + α_2) + 1`.
pub fn gradient(delta: [i64; 3]) -> [i64; 2] {
    [delta[1] - 2 * delta[0], delta[2] - delta[0]]
}

/// `u_a(t) = 1 + t X_a` (every `X_a` squares to zero here).
pub fn root_element(g: [i64; 2], t: i64) -> Mat {
    let mut m = IDENTITY;
    for &(r, c, v) in entries(g).expect("root gradient") {
        m[r][c] += v * t;
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] != 0 {
                for j in 0..4 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn reduce(m: &Mat) -> Mat {
    let mut out = *m;
    for row in &mut out {
        for x in row {
            *x = x.rem_euclid(4);
        }
    }
    out
}

/// `[u_Y(y), u_X(x)] = u_Y(−y) u_X(−x) u_Y(y) u_X(x)`.
pub fn commutator(gy: [i64; 2], y: i64, gx: [i64; 2], x: i64) -> Mat {
    let a = mul(&root_element(gy, -y), &root_element(gx, -x));
    let b = mul(&root_element(gy, y), &root_element(gx, x));
    mul(&a, &b)
}

/// Factors `(target Δ, i, j, C)` of `[u_Y(y), u_X(x)] = Π u_{iY+jX}(C y^i x^j)`,
/// read off the matrices and confirmed at several sample points.
pub fn expansion(first: [i64; 3], second: [i64; 3]) -> Vec<([i64; 3], u32, u32, i64)> {
    let (gy, gx) = (gradient(first), gradient(second));
    let mut terms = Vec::new();
    for s in 2..=4u32 {
        for i in 1..s {
            let j = s - i;
            let g = [i as i64 * gy[0] + j as i64 * gx[0], i as i64 * gy[1] + j as i64 * gx[1]];
            if !is_root(g) {
                continue;
            }
            let m = commutator(gy, 1, gx, 1);
            let (r, c, v) = entries(g).unwrap()[0];
            let constant = v * m[r][c];
            if constant != 0 {
                let target = [0, 1, 2].map(|k| i as i64 * first[k] + j as i64 * second[k]);
                terms.push((target, i, j, constant));
            }
        }
    }
    for (y, x) in [(1i64, 1i64), (2, 3), (-1, 5), (3, -2)] {
        let mut prod = IDENTITY;
        for &(t, i, j, c) in &terms {
            prod = mul(&prod, &root_element(gradient(t), c * y.pow(i) * x.pow(j)));
        }
        assert_eq!(
            prod,
            commutator(gy, y, gx, x),
            "expansion of {first:?}, {second:?} at ({y}, {x})"
        );
    }
    terms
}

/// `P₊/P₁` for Sp4 at the barycenter over `F_2`: cosets are words
/// `Π u_{α_k}(x_k)` in a fixed order of the shallow roots, and `u_{a+n}(x)`
/// is `u_a(2^n x)` reduced mod 4.
pub struct Z4Model {
    /// Gradient and level of each shallow root, in word order.
    pub roots: Vec<([i64; 2], i64)>,
}

impl Z4Model {
    pub fn new(roots: Vec<([i64; 2], i64)>) -> Self {
        for &(g, n) in &roots {
            assert!(is_root(g) && (0..=1).contains(&n));
        }
        Z4Model { roots }
    }

    fn generator(&self, k: usize, x: i64) -> Mat {
        let (g, n) = self.roots[k];
        reduce(&root_element(g, x << n))
    }

    pub fn matrix(&self, word: &[u8]) -> Mat {
        let mut m = IDENTITY;
        for (k, &x) in word.iter().enumerate() {
            if x != 0 {
                m = reduce(&mul(&m, &self.generator(k, x as i64)));
            }
        }
        m
    }

    /// Normal form of the coset of `m`, peeling root factors from the left;
    /// `None` if the remainder is not in `P₁`.
    pub fn decode(&self, m: &Mat) -> Option<Vec<u8>> {
        let mut m = *m;
        let mut word = Vec::with_capacity(self.roots.len());
        for (k, &(g, n)) in self.roots.iter().enumerate() {
            let (r, c, v) = entries(g).unwrap()[0];
            let e = (v * m[r][c]).rem_euclid(4);
            let digit = if n == 0 {
                e % 2
            } else {
                if e % 2 != 0 {
                    return None;
                }
                e / 2
            };
            word.push(digit as u8);
            m = reduce(&mul(&self.generator(k, -digit), &m));
        }
        let in_p1 = self
            .roots
            .iter()
            .all(|&(g, n)| entries(g).unwrap().iter().all(|&(r, c, _)| m[r][c] % (2 << n) == 0));
        in_p1.then_some(word)
    }

    pub fn multiply(&self, a: &[u8], b: &[u8]) -> Option<Vec<u8>> {
        self.decode(&reduce(&mul(&self.matrix(a), &self.matrix(b))))
    }
}
