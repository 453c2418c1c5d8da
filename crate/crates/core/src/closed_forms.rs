//! Closed-form h*-polynomials: the join decomposition, complete multipartite
//! graphs via `f_{l,m}`, and wheels via `γ(n, x)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{bipartite_double, join, Graph};
use crate::matching::pms_polynomial;
use crate::poly::{binomial, binomial_i, narayana_square_poly, IntPolynomial};

/// The parts of a join `G_1 + ... + G_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSpec {
    parts: Vec<Graph>,
}

impl JoinSpec {
    pub fn new(parts: Vec<Graph>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidGraph("a join needs at least one part".into()));
        }
        if parts.iter().any(|g| g.n() == 0) {
            return Err(Error::InvalidGraph("join parts must be nonempty".into()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[Graph] {
        &self.parts
    }

    /// Total vertex count `m`.
    pub fn m(&self) -> usize {
        self.parts.iter().map(Graph::n).sum()
    }

    pub fn graph(&self) -> Graph {
        join(&self.parts).expect("parts are nonempty")
    }
}

fn reject_negative(p: IntPolynomial, what: &str) -> Result<IntPolynomial> {
    match p.first_negative() {
        Some(k) => Err(Error::Internal(format!(
            "{what}: negative coefficient {} at x^{k}",
            p.coeff(k)
        ))),
        None => Ok(p),
    }
}

/// h* of the join: `sum_i p(D(G_i + K_{m - m_i - 1})) - (s - 1) N_m(x)`,
/// where `N_m(x) = sum_k C(m-1, k)^2 x^k`.
pub fn hstar_pq_join(spec: &JoinSpec) -> Result<IntPolynomial> {
    let s = spec.parts.len();
    if s < 2 {
        return Err(Error::Inapplicable("the join formula needs at least two parts".into()));
    }
    let m = spec.m();
    let mut total = IntPolynomial::zero();
    for g in &spec.parts {
        let extra = m - g.n() - 1;
        let coned = if extra == 0 {
            g.clone()
        } else {
            join(&[g.clone(), Graph::complete(extra)])?
        };
        total = &total + &pms_polynomial(&bipartite_double(&coned).to_graph())?;
    }
    let correction = narayana_square_poly(m as u64).scale(&BigInt::from(s - 1));
    reject_negative(&total - &correction, "join formula")
}

/// `f_{l,m}(x)`, the h*-polynomial of `K_l + E_m`, from its triple binomial
/// sum.
pub fn f_poly(l: u64, m: u64) -> IntPolynomial {
    assert!(l >= 1 && m >= 1, "f_poly needs l, m >= 1");
    let (l, m) = (l as i64, m as i64);
    let coeffs = (0..l + m)
        .map(|k| {
            let mut ck = BigInt::from(0);
            for alpha in 0..=k {
                let outer = binomial_i(l - 1, k - alpha) * binomial_i(m, alpha);
                if outer == BigInt::from(0) {
                    continue;
                }
                let inner: BigInt = (alpha..=k)
                    .map(|beta| binomial_i(l + alpha - 1, beta) * binomial_i(m - alpha, k - beta))
                    .sum();
                ck += outer * inner;
            }
            ck
        })
        .collect();
    IntPolynomial::from_coeffs(coeffs)
}

/// Normalized volume of `K_l + E_m` from the double sum
/// `sum_a C(m, a) sum_{b < l} C(l+a-1, b) C(l+m-a-1, b)`.
pub fn f_volume(l: u64, m: u64) -> BigInt {
    let (l, m) = (l as i64, m as i64);
    (0..=m)
        .map(|a| {
            binomial_i(m, a)
                * (0..l)
                    .map(|b| binomial_i(l + a - 1, b) * binomial_i(l + m - a - 1, b))
                    .sum::<BigInt>()
        })
        .sum()
}

/// h* of `K_{m_1, ..., m_s}`:
/// `sum_i f_{m - m_i, m_i}(x) - (s - 1) N_m(x)`.
pub fn hstar_complete_multipartite(parts: &[usize]) -> Result<IntPolynomial> {
    if parts.len() < 2 {
        return Err(Error::Inapplicable("complete multipartite formula needs at least two parts".into()));
    }
    if parts.contains(&0) {
        return Err(Error::InvalidGraph("parts must be nonempty".into()));
    }
    let m: usize = parts.iter().sum();
    let total: IntPolynomial = parts.iter().map(|&mi| f_poly((m - mi) as u64, mi as u64)).sum();
    let correction = narayana_square_poly(m as u64).scale(&BigInt::from(parts.len() - 1));
    reject_negative(&total - &correction, "complete multipartite formula")
}

/// Second-order integer-polynomial recurrence
/// `a_t = c1 a_{t-1} + c2 a_{t-2}`, returning `a_n`.
fn recurrence(a0: IntPolynomial, a1: IntPolynomial, c1: &IntPolynomial, c2: &IntPolynomial, n: usize) -> IntPolynomial {
    if n == 0 {
        return a0;
    }
    let (mut prev, mut cur) = (a0, a1);
    for _ in 1..n {
        let next = &(c1 * &cur) + &(c2 * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `γ(n, x)`: the power sum of the roots of `t^2 = t + 2x`, less `2x^{n/2}`
/// for even `n >= 2`; `γ(0, x) = 1`.
pub fn gamma_poly(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let a = recurrence(
        IntPolynomial::constant(2),
        IntPolynomial::one(),
        &IntPolynomial::one(),
        &IntPolynomial::monomial(2, 1),
        n,
    );
    if n % 2 == 0 {
        &a - &IntPolynomial::monomial(2, n / 2)
    } else {
        a
    }
}

/// h* of the wheel `W_n` as `sum_k C(n, k) γ(n - k, x) x^k`, cross-checked
/// against the surd form evaluated by recurrences.
pub fn hstar_wheel(n: usize) -> Result<IntPolynomial> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("W_{n} needs n >= 3")));
    }
    let by_gamma: IntPolynomial = (0..=n)
        .map(|k| &gamma_poly(n - k) * &IntPolynomial::monomial(binomial(n as u64, k as i64), k))
        .sum();
    let closed = wheel_surd_form(n);
    if let Some(k) = by_gamma.first_difference(&closed) {
        return Err(Error::Internal(format!(
            "wheel forms disagree at x^{k}: {} vs {}",
            by_gamma.coeff(k),
            closed.coeff(k)
        )));
    }
    Ok(by_gamma)
}

/// `B_n + x^n - C_n` where `B_n` is the power sum of `(1 + 2x ± √(1+8x))/2`
/// and `C_n` that of `x ± √x`.
pub fn wheel_surd_form(n: usize) -> IntPolynomial {
    let x_minus_x2 = IntPolynomial::from_i64(&[0, 1, -1]);
    let b = recurrence(
        IntPolynomial::constant(2),
        IntPolynomial::from_i64(&[1, 2]),
        &IntPolynomial::from_i64(&[1, 2]),
        &x_minus_x2,
        n,
    );
    let c = recurrence(
        IntPolynomial::constant(2),
        IntPolynomial::monomial(2, 1),
        &IntPolynomial::monomial(2, 1),
        &x_minus_x2,
        n,
    );
    &(&b + &IntPolynomial::monomial(1, n)) - &c
}
