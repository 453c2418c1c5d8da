//! Identity checks over small graph corpora, as run by `pqhstar verify`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed_forms::{f_poly, f_volume, hstar_complete_multipartite, hstar_pq_join, hstar_wheel, JoinSpec};
use crate::ehrhart::hstar_via_ehrhart;
use crate::error::Result;
use crate::graph::{bipartite_double, join, make_graph, Family, Graph};
use crate::interior::interior_polynomial;
use crate::matching::pms_polynomial;
use crate::poly::{binomial, narayana_square_poly, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for VerifyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<40} {}", self.check, self.detail)
    }
}

fn row(check: impl Into<String>, outcome: Result<(bool, String)>) -> VerifyRow {
    let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    VerifyRow { check: check.into(), pass, detail }
}

/// Compares a list of named polynomials for exact equality.
fn all_equal(named: &[(&str, &IntPolynomial)]) -> (bool, String) {
    let (first_name, first) = named[0];
    for &(name, p) in &named[1..] {
        if let Some(k) = first.first_difference(p) {
            return (false, format!("{first_name} != {name} at x^{k}"));
        }
    }
    (true, format!("h* = {first}"))
}

pub fn fam(f: Family) -> Graph {
    make_graph(&f).expect("corpus families are valid")
}

/// Every connected graph on at most four vertices, one per isomorphism
/// class, then `C5` and `K_{2,3}` when `max_n >= 5`.
pub fn small_connected_graphs(max_n: usize) -> Vec<(String, Graph)> {
    let el = |n, e: &[(usize, usize)]| fam(Family::EdgeList { n, edges: e.to_vec() });
    let all = vec![
        ("K1", 1, Graph::complete(1)),
        ("K2", 2, Graph::complete(2)),
        ("P3", 3, fam(Family::Path(3))),
        ("K3", 3, Graph::complete(3)),
        ("P4", 4, fam(Family::Path(4))),
        ("K1,3", 4, fam(Family::CompleteMultipartite(vec![1, 3]))),
        ("C4", 4, fam(Family::Cycle(4))),
        ("paw", 4, el(4, &[(1, 2), (2, 3), (1, 3), (3, 4)])),
        ("diamond", 4, el(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])),
        ("K4", 4, Graph::complete(4)),
        ("C5", 5, fam(Family::Cycle(5))),
        ("K2,3", 5, fam(Family::CompleteMultipartite(vec![2, 3]))),
    ];
    all.into_iter()
        .filter(|(_, n, _)| *n <= max_n)
        .map(|(name, _, g)| (name.to_string(), g))
        .collect()
}

/// Join specs mixing empty, complete, cycle and path parts with two or three
/// parts, limited to `max_m` vertices in total.
pub fn join_corpus(max_m: usize) -> Vec<(String, Vec<Graph>)> {
    let parts: Vec<(&str, Graph)> = vec![
        ("E1", Graph::empty(1)),
        ("E2", Graph::empty(2)),
        ("E3", Graph::empty(3)),
        ("K2", Graph::complete(2)),
        ("K3", Graph::complete(3)),
        ("C3", fam(Family::Cycle(3))),
        ("C4", fam(Family::Cycle(4))),
        ("P3", fam(Family::Path(3))),
        ("P4", fam(Family::Path(4))),
    ];
    let combos: &[&[usize]] = &[
        &[0, 1],
        &[1, 2],
        &[3, 4],
        &[5, 0],
        &[6, 0],
        &[7, 1],
        &[6, 3],
        &[8, 1],
        &[5, 7],
        &[2, 6],
        &[0, 0, 1],
        &[1, 3, 0],
        &[5, 1, 0],
        &[7, 3, 1],
        &[6, 0, 1],
        &[2, 2, 0],
    ];
    combos
        .iter()
        .filter(|idx| idx.iter().map(|&i| parts[i].1.n()).sum::<usize>() <= max_m)
        .map(|idx| {
            let name = format!("J:({})", idx.iter().map(|&i| parts[i].0).collect::<Vec<_>>().join(","));
            (name, idx.iter().map(|&i| parts[i].1.clone()).collect())
        })
        .collect()
}

/// Wheel volumes, and for small `n` agreement with the PMS polynomial of
/// `D(C_n)`, the interior polynomial of `D(W_n)` and (n <= 4) the oracle.
pub fn verify_wheels(max_n: usize) -> Vec<VerifyRow> {
    (3..=max_n)
        .map(|n| {
            row(format!("wheel W{n}"), (|| {
                let formula = hstar_wheel(n)?;
                let expected = BigInt::from(3u32).pow(n as u32) - BigInt::from(2u32).pow(n as u32) + 1;
                let vol = formula.eval_at_one();
                if vol != expected {
                    return Ok((false, format!("volume {vol} != 3^n - 2^n + 1 = {expected}")));
                }
                let mut named: Vec<(&str, IntPolynomial)> = vec![("formula", formula)];
                if 2 * n <= crate::matching::MAX_VERTICES {
                    named.push(("pms", pms_polynomial(&bipartite_double(&fam(Family::Cycle(n))).to_graph())?));
                }
                if n <= 8 {
                    named.push(("interior", interior_polynomial(&bipartite_double(&fam(Family::Wheel(n))))?));
                }
                if n <= 4 {
                    named.push(("oracle", hstar_via_ehrhart(&fam(Family::Wheel(n)))?));
                }
                let refs: Vec<(&str, &IntPolynomial)> = named.iter().map(|(a, b)| (*a, b)).collect();
                let (pass, detail) = all_equal(&refs);
                let used: Vec<&str> = named.iter().map(|(a, _)| *a).collect();
                Ok((pass, format!("volume {vol}; {} [{}]", detail, used.join(","))))
            })())
        })
        .collect()
}

/// The join formula against the interior polynomial of `D(join)`.
pub fn verify_joins(max_m: usize) -> Vec<VerifyRow> {
    join_corpus(max_m)
        .into_iter()
        .map(|(name, parts)| {
            row(name, (|| {
                let spec = JoinSpec::new(parts)?;
                let formula = hstar_pq_join(&spec)?;
                let interior = interior_polynomial(&bipartite_double(&spec.graph()))?;
                Ok(all_equal(&[("formula", &formula), ("interior", &interior)]))
            })())
        })
        .collect()
}

/// The Ehrhart oracle against the interior polynomial on every small
/// connected graph.
pub fn verify_oracle(max_n: usize) -> Vec<VerifyRow> {
    small_connected_graphs(max_n)
        .into_iter()
        .map(|(name, g)| {
            row(format!("oracle {name}"), (|| {
                let oracle = hstar_via_ehrhart(&g)?;
                let interior = interior_polynomial(&bipartite_double(&g))?;
                Ok(all_equal(&[("oracle", &oracle), ("interior", &interior)]))
            })())
        })
        .collect()
}

/// `I_{D(K_m)}` against `sum_k C(m-1, k)^2 x^k`, and the multipartite formula
/// on all-ones parts.
pub fn verify_complete(max_m: usize) -> Vec<VerifyRow> {
    (2..=max_m)
        .map(|m| {
            row(format!("complete K{m}"), (|| {
                let expected = narayana_square_poly(m as u64);
                let interior = interior_polynomial(&bipartite_double(&Graph::complete(m)))?;
                let formula = hstar_complete_multipartite(&vec![1; m])?;
                Ok(all_equal(&[("narayana", &expected), ("interior", &interior), ("formula", &formula)]))
            })())
        })
        .collect()
}

/// The `f_{l,m}(1)` tables.
pub fn verify_fpoly(max: u64) -> Vec<VerifyRow> {
    let mut rows = Vec::new();
    for l in 1..=max {
        for m in 1..=max {
            let got = f_poly(l, m).eval_at_one();
            let mut expected = vec![("double sum", f_volume(l, m))];
            if l == 1 {
                expected.push(("2^m", BigInt::from(2u32).pow(m as u32)));
            }
            if l == 2 {
                expected.push(("2^{m-2}(m^2+3m+8)", BigInt::from(2u32).pow(m as u32) * (m * m + 3 * m + 8) / 4));
            }
            let c = |k: u64| binomial(2 * (l + k), (l + k) as i64);
            match m {
                1 => expected.push(("C(2l,l)", c(0))),
                2 => expected.push(("C(2(l+1),l+1)-2", c(1) - 2)),
                3 => expected.push(("C(2(l+2),l+2)-(6l+6)", c(2) - (6 * l + 6))),
                4 => expected.push(("C(2(l+3),l+3)-(10l^2+24l+20)", c(3) - (10 * l * l + 24 * l + 20))),
                _ => {}
            }
            let bad: Vec<String> = expected
                .iter()
                .filter(|(_, v)| *v != got)
                .map(|(name, v)| format!("{name} = {v}"))
                .collect();
            rows.push(VerifyRow {
                check: format!("f_{{{l},{m}}}(1)"),
                pass: bad.is_empty(),
                detail: if bad.is_empty() { format!("{got}") } else { format!("{got} vs {}", bad.join(", ")) },
            });
        }
    }
    rows
}

/// `I_{D(G + K_1)} = p(D(G))` on a fixed corpus.
pub fn verify_cones() -> Vec<VerifyRow> {
    let k4_minus = fam(Family::EdgeList { n: 4, edges: vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)] });
    let corpus = vec![
        ("C3", fam(Family::Cycle(3))),
        ("C4", fam(Family::Cycle(4))),
        ("C5", fam(Family::Cycle(5))),
        ("P4", fam(Family::Path(4))),
        ("K1,3", fam(Family::CompleteMultipartite(vec![1, 3]))),
        ("K4-e", k4_minus),
    ];
    corpus
        .into_iter()
        .map(|(name, g)| {
            row(format!("cone {name}"), (|| {
                let coned = join(&[g.clone(), Graph::complete(1)])?;
                let interior = interior_polynomial(&bipartite_double(&coned))?;
                let pms = pms_polynomial(&bipartite_double(&g).to_graph())?;
                Ok(all_equal(&[("interior", &interior), ("pms", &pms)]))
            })())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        assert_eq!(small_connected_graphs(4).len(), 10);
        assert_eq!(small_connected_graphs(5).len(), 12);
        assert!(small_connected_graphs(4).iter().all(|(_, g)| g.is_connected()));
        assert!(join_corpus(7).len() >= 10);
        assert!(join_corpus(7).iter().all(|(_, p)| p.iter().map(Graph::n).sum::<usize>() <= 7));
    }

    #[test]
    fn wheel_rows() {
        let rows = verify_wheels(5);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }

    #[test]
    fn cone_rows() {
        assert!(verify_cones().iter().all(|r| r.pass));
    }
}
