use std::fmt::Write as _;
use std::time::Duration;

use khmut::invariants::{poincare_polynomial, v_polynomial, w_polynomial};
use khmut::{Bigrading, HomologyTable, PlanarDiagram};
use serde::{Deserialize, Serialize};

/// An internal-consistency failure (exit status 3).
#[derive(Debug, thiserror::Error)]
#[error("internal inconsistency: {0}")]
pub struct Inconsistent(pub String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub version: String,
    pub hash: String,
    pub diagram: String,
    pub crossings: usize,
    pub components: usize,
    #[serde(flatten)]
    pub table: HomologyTable,
    pub kh: String,
    pub v: String,
    pub w: String,
    pub timings: Timings,
}

impl ResultDocument {
    pub fn new(d: &PlanarDiagram, hash: String, table: HomologyTable, elapsed: Duration) -> Self {
        let kh = poincare_polynomial(&table);
        ResultDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            hash,
            diagram: d.canonical().to_pd_string(),
            crossings: d.crossing_count(),
            components: d.components(),
            kh: kh.to_string(),
            v: v_polynomial(&kh).to_string(),
            w: w_polynomial(&kh).render("t"),
            table,
            timings: Timings {
                total_ms: elapsed.as_millis() as u64,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{} crossings, {} components\n\n{}\n",
            self.crossings,
            self.components,
            self.table.render_grid()
        );
        let _ = writeln!(s, "Kh(t,q) = {}", self.kh);
        let _ = writeln!(s, "V(q)    = {}", self.v);
        let _ = writeln!(s, "W(t)    = {}", self.w);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub homology_equal: bool,
    pub chain_ranks_equal: bool,
    pub kh_equal: bool,
    pub v_equal: bool,
    pub w_equal: bool,
    pub differing_bidegrees: Vec<(i32, i32)>,
}

impl ComparisonReport {
    pub fn new(a: &ResultDocument, b: &ResultDocument) -> Self {
        let diffs: Vec<Bigrading> = a.table.homology_differences(&b.table);
        ComparisonReport {
            homology_equal: diffs.is_empty(),
            chain_ranks_equal: a.table.chain_ranks == b.table.chain_ranks,
            kh_equal: a.kh == b.kh,
            v_equal: a.v == b.v,
            w_equal: a.w == b.w,
            differing_bidegrees: diffs.iter().map(|g| (g.i, g.j)).collect(),
        }
    }

    pub fn render(&self) -> String {
        let flag = |b: bool| if b { "equal" } else { "different" };
        let mut s = String::new();
        let _ = writeln!(s, "homology:    {}", flag(self.homology_equal));
        let _ = writeln!(s, "chain ranks: {}", flag(self.chain_ranks_equal));
        let _ = writeln!(s, "Kh:          {}", flag(self.kh_equal));
        let _ = writeln!(s, "V:           {}", flag(self.v_equal));
        let _ = writeln!(s, "W:           {}", flag(self.w_equal));
        if !self.differing_bidegrees.is_empty() {
            let list: Vec<String> = self
                .differing_bidegrees
                .iter()
                .map(|(i, j)| format!("({i},{j})"))
                .collect();
            let _ = writeln!(s, "homology differs at {}", list.join(" "));
        }
        s
    }
}

pub fn pair_json(a: &ResultDocument, b: &ResultDocument, r: &ComparisonReport) -> String {
    serde_json::to_string_pretty(&serde_json::json!({ "a": a, "b": b, "comparison": r }))
        .expect("documents serialize")
}
