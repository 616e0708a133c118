use std::fmt;

use rayon::prelude::*;

use super::reduce;
use crate::gg::{gg_solve, GeoInstance, GeoPosition, GgLimits};
use crate::tt::{solve, Player, SolveLimits};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyLimits {
    pub tt: SolveLimits,
    pub gg: GgLimits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub id: String,
    pub vertices: usize,
    /// `None` when the solver ran out of budget.
    pub gg_winner: Option<Player>,
    pub tt_winner: Option<Player>,
    pub gg_nodes: u64,
    pub tt_nodes: u64,
    /// Set when the instance could not be reduced at all.
    pub error: Option<String>,
    pub board_side: usize,
    pub tt_max_token_branching: usize,
    pub tt_max_depth: usize,
}

impl EquivalenceRow {
    /// A reduction failure is a solved row that does not match.
    pub fn exhausted(&self) -> bool {
        self.error.is_none() && (self.gg_winner.is_none() || self.tt_winner.is_none())
    }

    pub fn matches(&self) -> bool {
        self.error.is_none() && self.gg_winner.is_some() && self.gg_winner == self.tt_winner
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Sorted by id.
    pub rows: Vec<EquivalenceRow>,
}

impl EquivalenceReport {
    pub fn solved(&self) -> usize {
        self.rows.iter().filter(|r| !r.exhausted()).count()
    }

    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.matches()).count()
    }

    pub fn exhausted(&self) -> usize {
        self.rows.iter().filter(|r| r.exhausted()).count()
    }

    /// Fraction of solved rows that match; `None` when nothing was solved.
    pub fn match_rate(&self) -> Option<f64> {
        let solved = self.solved();
        (solved > 0).then(|| self.matched() as f64 / solved as f64)
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.solved()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &EquivalenceRow> {
        self.rows.iter().filter(|r| !r.exhausted() && !r.matches())
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "summary match {}/{} exhausted {}",
            self.matched(),
            self.solved(),
            self.exhausted()
        );
        if self.match_rate().is_none() {
            s.push_str(" rate undefined");
        }
        s
    }
}

fn letter(p: Option<Player>) -> char {
    p.map_or('-', Player::letter)
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "id\tvertices\tgg\ttt\tmatch\tgg_nodes\ttt_nodes")?;
        for r in &self.rows {
            let status = if r.exhausted() {
                "exhausted"
            } else if r.matches() {
                "yes"
            } else {
                "no"
            };
            write!(
                f,
                "{}\t{}\t{}\t{}\t{status}\t{}\t{}",
                r.id,
                r.vertices,
                letter(r.gg_winner),
                letter(r.tt_winner),
                r.gg_nodes,
                r.tt_nodes
            )?;
            if let Some(e) = &r.error {
                write!(f, "\t{e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.summary())
    }
}

fn row(id: &str, g: &GeoInstance, limits: &VerifyLimits) -> EquivalenceRow {
    let mut row = EquivalenceRow {
        id: id.to_string(),
        vertices: g.len(),
        gg_winner: None,
        tt_winner: None,
        gg_nodes: 0,
        tt_nodes: 0,
        error: None,
        board_side: 0,
        tt_max_token_branching: 0,
        tt_max_depth: 0,
    };
    if let Ok(r) = GeoPosition::start(g).and_then(|p| gg_solve(&p, &limits.gg)) {
        row.gg_winner = Some(r.winner);
        row.gg_nodes = r.nodes_expanded;
    }
    match reduce(g) {
        Ok(trace) => {
            let r = solve(&trace.board, &limits.tt);
            row.tt_winner = r.winner;
            row.tt_nodes = r.nodes_expanded;
            row.board_side = trace.board.side();
            row.tt_max_token_branching = r.max_token_branching;
            row.tt_max_depth = r.max_depth;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Solves every instance directly and through the reduction, in parallel.
pub fn verify_equivalence(corpus: &[(String, GeoInstance)], limits: &VerifyLimits) -> EquivalenceReport {
    let mut rows: Vec<EquivalenceRow> = corpus.par_iter().map(|(id, g)| row(id, g, limits)).collect();
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    EquivalenceReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::generate;

    fn corpus(n: u64) -> Vec<(String, GeoInstance)> {
        (0..n).map(|s| (format!("g{s:03}"), generate(6, s).unwrap())).collect()
    }

    #[test]
    fn empty_corpus_has_undefined_rate() {
        let r = verify_equivalence(&[], &VerifyLimits::default());
        assert!(r.rows.is_empty());
        assert_eq!(r.match_rate(), None);
        assert_eq!(r.summary(), "summary match 0/0 exhausted 0 rate undefined");
    }

    #[test]
    fn small_corpus_matches() {
        let r = verify_equivalence(&corpus(12), &VerifyLimits::default());
        assert_eq!(r.matched(), 12, "{r}");
        assert!(r.to_string().ends_with("summary match 12/12 exhausted 0"));
    }

    #[test]
    fn starved_solver_rows_are_exhausted_not_mismatched() {
        let limits = VerifyLimits {
            tt: SolveLimits::nodes(1),
            ..VerifyLimits::default()
        };
        let r = verify_equivalence(&corpus(3), &limits);
        assert_eq!(r.exhausted(), 3);
        assert_eq!(r.solved(), 0);
        assert_eq!(r.mismatches().count(), 0);
    }

    #[test]
    fn rows_are_sorted() {
        let mut c = corpus(4);
        c.reverse();
        let r = verify_equivalence(&c, &VerifyLimits::default());
        let ids: Vec<&str> = r.rows.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["g000", "g001", "g002", "g003"]);
    }
}
