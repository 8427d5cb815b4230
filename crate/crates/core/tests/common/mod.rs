//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
        .trim()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = Q::zero();
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trim()
    }

    fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let mut r = self.0.clone();
        let dd = divisor.degree();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / divisor.lead();
            for (i, c) in divisor.0.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly(quot).trim(), Poly(r).trim())
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        let lead = a.lead().clone();
        Poly(a.0.iter().map(|c| c / &lead).collect())
    }

    fn sign_at_pos_inf(&self) -> i32 {
        sign(self.lead())
    }

    fn sign_at_neg_inf(&self) -> i32 {
        let s = sign(self.lead());
        if self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    fn sign_at_zero(&self) -> i32 {
        sign(&self.0[0])
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Characteristic polynomial `det(tI - A)` by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Poly {
    let n = a.len();
    let am: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mul = |x: &Vec<Vec<Q>>, y: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    // coefficients c_n = 1, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am_k = mul(&am, &m);
        let trace = (0..n).fold(Q::zero(), |s, i| s + &am_k[i][i]);
        let c = -trace / q(k as i64);
        coeffs[n - k] = c.clone();
        m = am_k;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    Poly(coeffs).trim()
}

/// Sturm sign-change count between `-∞`, `0`, `+∞` for a square-free `p`
/// with `p(0) ≠ 0`: returns (negative roots, positive roots).
fn sturm_counts(p: &Poly) -> (usize, usize) {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]);
        chain.push(Poly(r.0.iter().map(|c| -c).collect()));
    }
    chain.pop();
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_neg = changes(chain.iter().map(Poly::sign_at_neg_inf).collect());
    let at_zero = changes(chain.iter().map(Poly::sign_at_zero).collect());
    let at_pos = changes(chain.iter().map(Poly::sign_at_pos_inf).collect());
    (at_neg - at_zero, at_zero - at_pos)
}

/// Inertia `(positives, negatives, zeros)` of a symmetric integer matrix from
/// the roots of its characteristic polynomial, counted with multiplicity via
/// square-free factorization and Sturm sequences.
pub fn sturm_inertia(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = a.len();
    if n == 0 {
        return (0, 0, 0);
    }
    let mut p = characteristic_polynomial(a);
    let zeros = p.0.iter().take_while(|c| c.is_zero()).count();
    p = Poly(p.0[zeros..].to_vec());
    // Yun: p = Π f_i^i
    let (mut pos, mut neg) = (0, 0);
    let dp = p.derivative();
    let a0 = if dp.is_zero() { p.clone() } else { p.gcd(&dp) };
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut multiplicity = 1;
    while b.degree() > 0 {
        let d = c.sub(&b.derivative());
        let f = if d.is_zero() { b.clone() } else { b.gcd(&d) };
        if f.degree() > 0 {
            let (n_neg, n_pos) = sturm_counts(&f);
            neg += n_neg * multiplicity;
            pos += n_pos * multiplicity;
        }
        b = b.div_rem(&f).0;
        c = d.div_rem(&f).0;
        multiplicity += 1;
    }
    assert_eq!(pos + neg + zeros, n, "symmetric matrices have real spectra");
    (pos, neg, zeros)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Leading principal minors `Δ_1, …, Δ_n`.
pub fn leading_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=a.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// All exponent vectors of weighted degree `d`.
pub fn monomials(weights: &[u64; 4], d: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for e0 in 0..=d / weights[0] {
        for e1 in 0..=(d - e0 * weights[0]) / weights[1] {
            let r1 = d - e0 * weights[0] - e1 * weights[1];
            for e2 in 0..=r1 / weights[2] {
                let r2 = r1 - e2 * weights[2];
                if r2 % weights[3] == 0 {
                    out.push([e0, e1, e2, r2 / weights[3]]);
                }
            }
        }
    }
    out
}

/// Quasismoothness by listing monomials: for every nonempty coordinate set
/// `I`, either a monomial supported in `I`, or monomials `x_I^M · x_j` for
/// at least `|I|` distinct `j ∉ I`.
pub fn quasismooth_by_monomials(weights: &[u64; 4], d: u64) -> bool {
    let mons = monomials(weights, d);
    (1u8..16).all(|mask| {
        let inside = |i: usize| mask & (1 << i) != 0;
        let supported_in_i = mons
            .iter()
            .any(|m| (0..4).all(|k| inside(k) || m[k] == 0));
        if supported_in_i {
            return true;
        }
        let mut outs = std::collections::BTreeSet::new();
        for m in &mons {
            let outside: Vec<usize> = (0..4).filter(|&k| !inside(k) && m[k] > 0).collect();
            if let [j] = outside[..] {
                if m[j] == 1 {
                    outs.insert(j);
                }
            }
        }
        outs.len() >= mask.count_ones() as usize
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
