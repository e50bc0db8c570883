#![allow(dead_code)]

pub mod tables;

use std::collections::{BTreeMap, BTreeSet};

use khmut::cube::{build_cube, ChainComplex};
use khmut::diagram::{disjoint_union, mirror, PlanarDiagram};
use khmut::invariants::{chain_euler_characteristic, jones_oracle};
use khmut::tangle::{
    figure3_tangles, mutant_pair, mutate, parse_tangle, Mutation, Tangle,
};
use khmut::{
    khovanov_homology, poincare_polynomial, v_polynomial, AbelianGroup, Bigrading, HomologyTable,
    SparseIntMatrix, DEFAULT_CAP,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub type Check = Result<(), String>;

fn z2(n: usize) -> Vec<u64> {
    vec![2; n]
}

/// Compares every cell and every differential rank against a transcribed table.
pub fn check_table(
    t: &HomologyTable,
    cells: &[(i32, i32, usize, usize, usize)],
    arrows: &[(i32, i32, usize)],
) -> Check {
    let expected: BTreeSet<Bigrading> = cells.iter().map(|c| Bigrading::new(c.0, c.1)).collect();
    let got: BTreeSet<Bigrading> = t.chain_ranks.keys().copied().collect();
    if expected != got {
        return Err(format!(
            "populated bidegrees differ: only in table {:?}, only computed {:?}",
            expected.difference(&got).collect::<Vec<_>>(),
            got.difference(&expected).collect::<Vec<_>>()
        ));
    }
    for &(i, j, rank, twos, chain) in cells {
        let g = t.group(i, j);
        let want = AbelianGroup {
            free_rank: rank,
            torsion: z2(twos),
        };
        if g != want || t.chain_rank(i, j) != chain {
            return Err(format!(
                "({i},{j}): computed {}[{:?}]/{}, table {rank}[{twos}]/{chain}",
                g.free_rank,
                g.torsion,
                t.chain_rank(i, j)
            ));
        }
    }
    let expected: BTreeMap<Bigrading, usize> = arrows
        .iter()
        .map(|a| (Bigrading::new(a.0, a.1), a.2))
        .collect();
    let got: BTreeMap<Bigrading, usize> = t
        .chain_ranks
        .keys()
        .filter(|g| t.chain_rank(g.i + 1, g.j) > 0)
        .map(|&g| (g, t.diff_rank(g.i, g.j)))
        .collect();
    if expected != got {
        let bad: Vec<_> = expected
            .keys()
            .chain(got.keys())
            .filter(|g| expected.get(g) != got.get(g))
            .map(|g| (g.i, g.j, expected.get(g), got.get(g)))
            .collect();
        return Err(format!("differential ranks differ (i, j, table, computed): {bad:?}"));
    }
    Ok(())
}

pub fn check_homology(t: &HomologyTable, groups: &[(i32, i32, usize, usize)]) -> Check {
    let expected: BTreeMap<Bigrading, AbelianGroup> = groups
        .iter()
        .map(|&(i, j, r, z)| {
            (
                Bigrading::new(i, j),
                AbelianGroup {
                    free_rank: r,
                    torsion: z2(z),
                },
            )
        })
        .collect();
    let got = t.homology();
    if got != expected {
        let bad: Vec<_> = expected
            .keys()
            .chain(got.keys())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|g| expected.get(g) != got.get(g))
            .map(|g| format!("({},{})", g.i, g.j))
            .collect();
        return Err(format!("homology differs at {}", bad.join(" ")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Diagram properties

pub fn d_squared_vanishes(d: &PlanarDiagram) -> Check {
    let cube = build_cube(d, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let cx = ChainComplex::new(&cube);
    for g in cx.chain_ranks().keys() {
        let a = cx.differential_matrix(g.i, g.j);
        let b = cx.differential_matrix(g.i + 1, g.j);
        if !b.mul(&a).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("d∘d ≠ 0 leaving ({},{})", g.i, g.j));
        }
    }
    Ok(())
}

pub fn euler_matches(t: &HomologyTable) -> Check {
    let from_chains = chain_euler_characteristic(t);
    let from_homology = v_polynomial(&poincare_polynomial(t));
    if from_chains != from_homology {
        return Err(format!("chain Euler characteristic {from_chains} vs homology {from_homology}"));
    }
    Ok(())
}

pub fn v_matches_oracle(d: &PlanarDiagram, t: &HomologyTable) -> Check {
    let v = v_polynomial(&poincare_polynomial(t));
    let oracle = jones_oracle(d, DEFAULT_CAP).map_err(|e| e.to_string())?;
    if v != oracle {
        return Err(format!("V = {v} but state sum gives {oracle}"));
    }
    Ok(())
}

pub fn multiplicative(a: &HomologyTable, b: &HomologyTable, union: &HomologyTable) -> Check {
    let product = &poincare_polynomial(a) * &poincare_polynomial(b);
    if product != poincare_polynomial(union) {
        return Err("Kh(A ⊔ B) ≠ Kh(A)·Kh(B)".into());
    }
    Ok(())
}

pub fn mirror_symmetric(t: &HomologyTable, mirrored: &HomologyTable) -> Check {
    if poincare_polynomial(t).inverted() != poincare_polynomial(mirrored) {
        return Err("ranks of the mirror are not the reflected ranks".into());
    }
    Ok(())
}

/// Involution and composition laws of the three mutations on one tangle.
pub fn mutation_laws(t: &Tangle) -> Check {
    use Mutation::*;
    for rho in [Rho1, Rho2, Rho3] {
        if mutate(&mutate(t, rho), rho) != *t {
            return Err(format!("{rho:?} applied twice is not the identity"));
        }
    }
    for (a, b, c) in [(Rho1, Rho2, Rho3), (Rho2, Rho3, Rho1), (Rho3, Rho1, Rho2)] {
        if mutate(&mutate(t, a), b) != mutate(t, c) {
            return Err(format!("{a:?} then {b:?} differs from {c:?}"));
        }
    }
    Ok(())
}

/// Tangles used by the mutation properties.
pub fn sample_tangles() -> Vec<Tangle> {
    let mut out = vec![Tangle::trivial(true), Tangle::trivial(false)];
    for (n1, n2) in [(2, 2), (3, 3), (4, 3), (3, 2), (5, 2)] {
        let (a, b) = figure3_tangles(n1, n2).unwrap();
        out.push(a);
        out.push(b);
    }
    // one crossing with both strands passing straight through
    out.push(parse_tangle("X[1,2,3,4] B[NW:1:in,NE:2:in,SW:4:out,SE:3:out]").unwrap());
    out
}

/// Every orientable mutant pair from the figure3 tangles must share chain ranks.
pub fn mutant_chain_ranks_agree() -> Check {
    let mut pairs = 0;
    for (n1, n2) in [(2, 2), (3, 3), (4, 3), (3, 2), (2, 4)] {
        let (t1, t2) = figure3_tangles(n1, n2).unwrap();
        for rho in [Mutation::Rho1, Mutation::Rho2, Mutation::Rho3] {
            let Ok((l, lp)) = mutant_pair(&t1, &t2, rho) else {
                continue;
            };
            pairs += 1;
            let a = khovanov_homology(&l).map_err(|e| e.to_string())?;
            let b = khovanov_homology(&lp).map_err(|e| e.to_string())?;
            if a.chain_ranks != b.chain_ranks {
                return Err(format!("chain ranks differ for ({n1},{n2}) under {rho:?}"));
            }
        }
    }
    if pairs < 10 {
        return Err(format!("only {pairs} orientable mutant pairs"));
    }
    Ok(())
}

/// Runs the per-diagram properties on one fixture.
pub fn diagram_properties(d: &PlanarDiagram) -> Check {
    d_squared_vanishes(d)?;
    let t = khovanov_homology(d).map_err(|e| e.to_string())?;
    euler_matches(&t)?;
    v_matches_oracle(d, &t)?;
    let m = khovanov_homology(&mirror(d)).map_err(|e| e.to_string())?;
    mirror_symmetric(&t, &m)
}

pub fn union_is_multiplicative(a: &PlanarDiagram, b: &PlanarDiagram) -> Check {
    let ta = khovanov_homology(a).map_err(|e| e.to_string())?;
    let tb = khovanov_homology(b).map_err(|e| e.to_string())?;
    let tu = khovanov_homology(&disjoint_union(a, b)).map_err(|e| e.to_string())?;
    multiplicative(&ta, &tb, &tu)
}

// ---------------------------------------------------------------------------
// Smith normal form oracle

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&b| s >> b & 1 == 1).collect())
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors as quotients of successive gcds of k×k minors.
pub fn determinantal_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as i64);
        prev = g;
    }
    out
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
    })
}

/// Smith normal form against the determinantal-divisor oracle on random
/// small matrices; also checks divisibility and rank agreement.
pub fn snf_matches_oracle(cases: u32) -> Check {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner
        .run(&small_matrix(), |rows| {
            let m = SparseIntMatrix::from_dense(&rows).unwrap();
            let snf = khmut::zlinalg::smith_normal_form(&m);
            let got: Vec<i64> = snf
                .invariant_factors
                .iter()
                .map(|d| i64::try_from(d).unwrap())
                .collect();
            prop_assert_eq!(&got, &determinantal_factors(&rows));
            for w in got.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(got.iter().all(|&d| d > 0));
            prop_assert_eq!(snf.rank(), khmut::zlinalg::rank_over_q(&m));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
