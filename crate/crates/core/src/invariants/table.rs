use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cube::Bigrading;
use crate::error::Error;
use crate::zlinalg::AbelianGroup;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    /// Integer homology, torsion included.
    #[default]
    Z,
    /// Ranks only.
    Q,
}

/// Homology, chain ranks and differential ranks over the populated bidegrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TableDoc", try_from = "TableDoc")]
pub struct HomologyTable {
    pub coefficients: Coefficients,
    pub groups: BTreeMap<Bigrading, AbelianGroup>,
    pub chain_ranks: BTreeMap<Bigrading, usize>,
    /// Rank of the differential leaving each bidegree.
    pub diff_ranks: BTreeMap<Bigrading, usize>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    coefficients: Coefficients,
    bidegrees: Vec<CellDoc>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    i: i32,
    j: i32,
    rank: usize,
    torsion: Vec<u64>,
    chain_rank: usize,
    diff_rank: usize,
}

impl From<HomologyTable> for TableDoc {
    fn from(t: HomologyTable) -> Self {
        let bidegrees = t
            .chain_ranks
            .iter()
            .map(|(&g, &chain_rank)| {
                let h = t.group(g.i, g.j);
                CellDoc {
                    i: g.i,
                    j: g.j,
                    rank: h.free_rank,
                    torsion: h.torsion,
                    chain_rank,
                    diff_rank: t.diff_rank(g.i, g.j),
                }
            })
            .collect();
        TableDoc {
            coefficients: t.coefficients,
            bidegrees,
        }
    }
}

impl TryFrom<TableDoc> for HomologyTable {
    type Error = Error;
    fn try_from(doc: TableDoc) -> Result<Self, Error> {
        let mut t = HomologyTable {
            coefficients: doc.coefficients,
            ..Default::default()
        };
        for c in doc.bidegrees {
            let g = Bigrading::new(c.i, c.j);
            if c.chain_rank == 0 || t.chain_ranks.insert(g, c.chain_rank).is_some() {
                return Err(Error::Shape(format!("bad or repeated bidegree ({},{})", c.i, c.j)));
            }
            t.groups.insert(
                g,
                AbelianGroup {
                    free_rank: c.rank,
                    torsion: c.torsion,
                },
            );
            if c.diff_rank > 0 {
                t.diff_ranks.insert(g, c.diff_rank);
            }
        }
        Ok(t)
    }
}

impl HomologyTable {
    pub fn group(&self, i: i32, j: i32) -> AbelianGroup {
        self.groups
            .get(&Bigrading::new(i, j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn chain_rank(&self, i: i32, j: i32) -> usize {
        self.chain_ranks.get(&Bigrading::new(i, j)).copied().unwrap_or(0)
    }

    pub fn diff_rank(&self, i: i32, j: i32) -> usize {
        self.diff_ranks.get(&Bigrading::new(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero homology groups only; this is the diagram-independent part.
    pub fn homology(&self) -> BTreeMap<Bigrading, AbelianGroup> {
        self.groups
            .iter()
            .filter(|(_, h)| !h.is_trivial())
            .map(|(&g, h)| (g, h.clone()))
            .collect()
    }

    /// Bidegrees where the homology of the two tables differs.
    pub fn homology_differences(&self, other: &HomologyTable) -> Vec<Bigrading> {
        let (a, b) = (self.homology(), other.homology());
        let keys: BTreeSet<Bigrading> = a.keys().chain(b.keys()).copied().collect();
        keys.into_iter().filter(|g| a.get(g) != b.get(g)).collect()
    }

    /// Smallest and largest homological degree carrying nonzero homology.
    pub fn homology_support(&self) -> Option<(i32, i32)> {
        let h = self.homology();
        let lo = h.keys().map(|g| g.i).min()?;
        let hi = h.keys().map(|g| g.i).max()?;
        Some((lo, hi))
    }

    /// Grid with homological degree across and quantum degree down
    /// (descending); cells read `rank[#Z/2]/chain` and the numbers between
    /// columns are differential ranks.
    pub fn render_grid(&self) -> String {
        let Some(first) = self.chain_ranks.keys().next() else {
            return "(empty complex)\n".into();
        };
        let i_lo = self.chain_ranks.keys().map(|g| g.i).min().unwrap();
        let i_hi = self.chain_ranks.keys().map(|g| g.i).max().unwrap();
        let j_lo = self.chain_ranks.keys().map(|g| g.j).min().unwrap();
        let j_hi = self.chain_ranks.keys().map(|g| g.j).max().unwrap();
        debug_assert_eq!((first.j - j_lo) % 2, 0);
        let cell = |i: i32, j: i32| -> String {
            let chain = self.chain_rank(i, j);
            if chain == 0 {
                return ".".into();
            }
            let h = self.group(i, j);
            match self.coefficients {
                Coefficients::Z => format!("{}[{}]/{}", h.free_rank, h.two_torsion(), chain),
                Coefficients::Q => format!("{}/{}", h.free_rank, chain),
            }
        };
        let arrow = |i: i32, j: i32| -> String {
            if i < i_hi && self.chain_rank(i, j) > 0 && self.chain_rank(i + 1, j) > 0 {
                self.diff_rank(i, j).to_string()
            } else {
                String::new()
            }
        };
        let js: Vec<i32> = (j_lo..=j_hi).rev().step_by(2).collect();
        let is: Vec<i32> = (i_lo..=i_hi).collect();
        let cw = is
            .iter()
            .flat_map(|&i| js.iter().map(move |&j| (i, j)))
            .map(|(i, j)| cell(i, j).len())
            .max()
            .unwrap_or(1)
            .max(3);
        let aw = is
            .iter()
            .flat_map(|&i| js.iter().map(move |&j| (i, j)))
            .map(|(i, j)| arrow(i, j).len())
            .max()
            .unwrap_or(1)
            .max(1)
            + 2;
        let lw = js.iter().map(|j| j.to_string().len()).max().unwrap_or(1).max(3);
        let mut s = String::new();
        let _ = write!(s, "{:>lw$} |", "j\\i");
        for (k, &i) in is.iter().enumerate() {
            let _ = write!(s, " {:>cw$}", i);
            if k + 1 < is.len() {
                let _ = write!(s, " {:aw$}", "");
            }
        }
        s.push('\n');
        let _ = writeln!(s, "{}", "-".repeat(s.trim_end().len()));
        for &j in &js {
            let _ = write!(s, "{:>lw$} |", j);
            for (k, &i) in is.iter().enumerate() {
                let _ = write!(s, " {:>cw$}", cell(i, j));
                if k + 1 < is.len() {
                    let a = arrow(i, j);
                    let a = if a.is_empty() { String::new() } else { format!("-{a}>") };
                    let _ = write!(s, " {:^aw$}", a);
                }
            }
            let trimmed = s.trim_end().len();
            s.truncate(trimmed);
            s.push('\n');
        }
        s
    }
}
