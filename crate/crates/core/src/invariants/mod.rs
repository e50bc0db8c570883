//! Khovanov homology tables and the polynomials read off them.

mod jones;
mod poly;
mod table;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

pub use jones::jones_oracle;
pub use poly::{BigradedLaurent, Laurent};
pub use table::{Coefficients, HomologyTable};

use crate::cube::{build_cube, Bigrading, ChainComplex, DEFAULT_CAP};
use crate::diagram::{disjoint_union, torus_link_2, unknot, PlanarDiagram};
use crate::error::{Error, Result};
use crate::tangle::figure3_pair;
use crate::zlinalg::{group_from, rank_over_q, smith_normal_form, AbelianGroup, SmithForm};

#[derive(Clone, Debug)]
pub struct Options {
    pub coefficients: Coefficients,
    pub cap: usize,
    /// Multiply consecutive differentials and fail on a nonzero product.
    pub check_d_squared: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coefficients: Coefficients::Z,
            cap: DEFAULT_CAP,
            check_d_squared: true,
        }
    }
}

pub fn khovanov_homology(d: &PlanarDiagram) -> Result<HomologyTable> {
    khovanov_homology_with(d, &Options::default())
}

pub fn khovanov_homology_with(d: &PlanarDiagram, opts: &Options) -> Result<HomologyTable> {
    let cube = build_cube(d, opts.cap)?;
    let cx = ChainComplex::new(&cube);
    let chain_ranks = cx.chain_ranks();
    let sources: Vec<Bigrading> = chain_ranks
        .keys()
        .filter(|g| chain_ranks.contains_key(&Bigrading::new(g.i + 1, g.j)))
        .copied()
        .collect();
    let matrices: BTreeMap<Bigrading, _> = sources
        .par_iter()
        .map(|&g| (g, cx.differential_matrix(g.i, g.j)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    if opts.check_d_squared {
        let bad: Option<Bigrading> = sources
            .par_iter()
            .filter_map(|&g| {
                let next = matrices.get(&Bigrading::new(g.i + 1, g.j))?;
                let product = next.mul(&matrices[&g]).expect("shapes chain together");
                (!product.is_zero()).then_some(g)
            })
            .min();
        if let Some(g) = bad {
            return Err(Error::NonzeroComposition { i: g.i, j: g.j });
        }
    }

    let reduced: BTreeMap<Bigrading, (usize, Option<SmithForm>)> = matrices
        .par_iter()
        .map(|(&g, m)| match opts.coefficients {
            Coefficients::Z => {
                let s = smith_normal_form(m);
                (g, (s.rank(), Some(s)))
            }
            Coefficients::Q => (g, (rank_over_q(m), None)),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let diff_ranks: BTreeMap<Bigrading, usize> = reduced
        .iter()
        .filter(|(_, (r, _))| *r > 0)
        .map(|(&g, (r, _))| (g, *r))
        .collect();
    let no_snf = SmithForm {
        invariant_factors: Vec::new(),
    };
    let groups = chain_ranks
        .iter()
        .map(|(&g, &dim)| {
            let rank_out = reduced.get(&g).map_or(0, |r| r.0);
            let group = match reduced.get(&Bigrading::new(g.i - 1, g.j)) {
                Some((_, Some(snf))) => group_from(dim, rank_out, snf),
                Some((rank_in, None)) => AbelianGroup {
                    free_rank: dim - rank_out - rank_in,
                    torsion: Vec::new(),
                },
                None => group_from(dim, rank_out, &no_snf),
            };
            (g, group)
        })
        .collect();
    Ok(HomologyTable {
        coefficients: opts.coefficients,
        groups,
        chain_ranks,
        diff_ranks,
    })
}

/// `Σ t^i q^j rank H^{i,j}`, torsion ignored.
pub fn poincare_polynomial(t: &HomologyTable) -> BigradedLaurent {
    BigradedLaurent::from_terms(
        t.groups
            .iter()
            .map(|(g, h)| ((g.i, g.j), h.free_rank as i64)),
    )
}

/// Graded Euler characteristic `Kh(-1, q)`.
pub fn v_polynomial(kh: &BigradedLaurent) -> Laurent {
    kh.at_t_minus_one()
}

/// Ungraded Poincaré polynomial `Kh(t, 1)`.
pub fn w_polynomial(kh: &BigradedLaurent) -> Laurent {
    kh.at_q_one()
}

/// Closed form of `W` for the (2, n) torus link with negative crossings.
pub fn torus_w_formula(n: i64) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("torus W formula needs n >= 2, got {n}")));
    }
    let n = i32::try_from(n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
    let mut w = Laurent::monomial(2, 0);
    for k in 2..n {
        w.add_term(-k, 1);
    }
    w.add_term(-n, if n % 2 == 0 { 2 } else { 1 });
    Ok(w)
}

/// Per quantum degree, `Σ_i (-1)^i dim C^{i,j}`.
pub fn chain_euler_characteristic(t: &HomologyTable) -> Laurent {
    Laurent::from_terms(t.chain_ranks.iter().map(|(g, &c)| {
        (g.j, if g.i.rem_euclid(2) == 0 { c as i64 } else { -(c as i64) })
    }))
}

fn direct_sum(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut torsion: Vec<u64> = a.torsion.iter().chain(&b.torsion).copied().collect();
    torsion.sort_unstable();
    AbelianGroup {
        free_rank: a.free_rank + b.free_rank,
        torsion,
    }
}

/// For `n2 = 2`, checks that both members of the figure3 pair have
/// `H^{i,j} ≅ H^{i+2,j+5}(U ⊔ K1) ⊕ H^{i,j+1}(U ⊔ K1)` in every bidegree.
pub fn remark_isomorphism_check(n1: i64) -> Result<bool> {
    if n1 < 3 {
        return Err(Error::InvalidArgument(format!("needs n1 >= 3, got {n1}")));
    }
    let (l, lp) = figure3_pair(n1, 2)?;
    let base = khovanov_homology(&disjoint_union(&unknot(), &torus_link_2(n1)?))?.homology();
    let at = |i: i32, j: i32| base.get(&Bigrading::new(i, j)).cloned().unwrap_or_default();
    let mut expected: BTreeMap<Bigrading, AbelianGroup> = BTreeMap::new();
    let candidates: BTreeSet<Bigrading> = base
        .keys()
        .flat_map(|g| [Bigrading::new(g.i - 2, g.j - 5), Bigrading::new(g.i, g.j - 1)])
        .collect();
    for g in candidates {
        let h = direct_sum(&at(g.i + 2, g.j + 5), &at(g.i, g.j + 1));
        if !h.is_trivial() {
            expected.insert(g, h);
        }
    }
    for d in [l, lp] {
        if khovanov_homology(&d)?.homology() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_homology() {
        let t = khovanov_homology(&unknot()).unwrap();
        let h = t.homology();
        assert_eq!(h.len(), 2);
        assert_eq!(h[&Bigrading::new(0, 1)].free_rank, 1);
        assert_eq!(h[&Bigrading::new(0, -1)].free_rank, 1);
        let kh = poincare_polynomial(&t);
        assert_eq!(v_polynomial(&kh).to_string(), "q + q^-1");
    }

    #[test]
    fn trefoil_homology() {
        let t = khovanov_homology(&torus_link_2(3).unwrap()).unwrap();
        let kh = poincare_polynomial(&t);
        assert_eq!(kh.to_string(), "q^-1 + q^-3 + t^-2 q^-5 + t^-3 q^-9");
        assert_eq!(w_polynomial(&kh).render("t"), "2 + t^-2 + t^-3");
        assert_eq!(t.group(-2, -7).torsion, vec![2]);
    }

    #[test]
    fn rational_mode_matches_ranks() {
        let d = torus_link_2(5).unwrap();
        let z = khovanov_homology(&d).unwrap();
        let q = khovanov_homology_with(
            &d,
            &Options {
                coefficients: Coefficients::Q,
                ..Options::default()
            },
        )
        .unwrap();
        assert_eq!(poincare_polynomial(&z), poincare_polynomial(&q));
        assert_eq!(z.diff_ranks, q.diff_ranks);
    }

    #[test]
    fn torus_formula_values() {
        assert_eq!(torus_w_formula(2).unwrap().render("t"), "2 + 2t^-2");
        assert_eq!(torus_w_formula(3).unwrap().render("t"), "2 + t^-2 + t^-3");
        assert_eq!(torus_w_formula(4).unwrap().render("t"), "2 + t^-2 + t^-3 + 2t^-4");
        assert!(torus_w_formula(1).is_err());
    }
}
