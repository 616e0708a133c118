use std::fmt;

use super::plan::{embedding_order, portal_order};
use super::LayoutPlan;
use crate::gadgets::PortalRole;
use crate::gg::validate::same_cycle;
use crate::tt::{Board, Coord, Player, TileColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LintRule {
    /// Every colored cell belongs to exactly one structure, in its color.
    Ownership,
    /// Different structures touch only where a corridor meets its portals.
    Clearance,
    /// Corridor colors alternate except across a declared parity double.
    Alternation,
    /// Corridors are 4-connected and end on the portals their arcs use.
    PortalAlignment,
    AreaBudget,
    /// Every colored neighbor of a corridor cell is the next or previous
    /// cell of the same corridor (or its decoy).
    Forcedness,
    /// Portal order around each gadget follows the embedding.
    Embedding,
    /// One token, in the start gadget, Blue to move.
    Token,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintViolation {
    pub rule: LintRule,
    pub at: Option<Coord>,
    pub detail: String,
}

impl fmt::Display for LintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some(c) => write!(f, "{:?} at {c}: {}", self.rule, self.detail),
            None => write!(f, "{:?}: {}", self.rule, self.detail),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LintReport {
    pub violations: Vec<LintViolation>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: LintRule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for LintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("clean");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Owner {
    Gadget(usize),
    Corridor(usize),
}

struct Linter<'a> {
    plan: &'a LayoutPlan,
    board: &'a Board,
    report: LintReport,
}

impl Linter<'_> {
    fn flag(&mut self, rule: LintRule, at: Option<Coord>, detail: impl Into<String>) {
        self.report.violations.push(LintViolation {
            rule,
            at,
            detail: detail.into(),
        });
    }

    fn color_at(&self, c: Coord) -> Option<TileColor> {
        self.board.try_get(c)
    }

    /// Expected owner and color of every cell, flagging double claims.
    fn ownership(&mut self) -> Vec<Option<(Owner, TileColor)>> {
        let (w, h) = (self.board.width(), self.board.height());
        let mut owners: Vec<Option<(Owner, TileColor)>> = vec![None; w * h];
        let g = &self.plan.instance;
        let mut claims: Vec<(Coord, Owner, TileColor)> = Vec::new();
        for p in &self.plan.placements {
            claims.extend(p.colored_cells().map(|(c, color)| (c, Owner::Gadget(p.vertex), color)));
        }
        for r in &self.plan.routes {
            let first = g.color(g.arcs()[r.arc].0);
            claims.extend(
                r.painted_cells(first)
                    .into_iter()
                    .map(|(c, color)| (c, Owner::Corridor(r.arc), color)),
            );
        }
        for (c, owner, color) in claims {
            if c.x >= w || c.y >= h {
                self.flag(LintRule::Ownership, Some(c), "structure cell lies off the board");
                continue;
            }
            let slot = &mut owners[c.y * w + c.x];
            if let Some((other, _)) = *slot {
                let detail = format!("claimed by both {other:?} and {owner:?}");
                self.flag(LintRule::Ownership, Some(c), detail);
            } else {
                *slot = Some((owner, color));
            }
        }
        for y in 0..h {
            for x in 0..w {
                let c = Coord::new(x, y);
                let actual = self.board.get(c);
                match owners[y * w + x] {
                    None if actual.is_colored() => self.flag(LintRule::Ownership, Some(c), "colored cell has no owner"),
                    Some((o, want)) if want != actual => self.flag(
                        LintRule::Ownership,
                        Some(c),
                        format!("{o:?} expects {want:?}, board has {actual:?}"),
                    ),
                    _ => {}
                }
            }
        }
        owners
    }

    fn clearance(&mut self, owners: &[Option<(Owner, TileColor)>]) {
        let (w, h) = (self.board.width(), self.board.height());
        let allowed = |a: Owner, ca: Coord, b: Owner, cb: Coord| -> bool {
            let (arc, cc, gc) = match (a, b) {
                (Owner::Corridor(arc), Owner::Gadget(_)) => (arc, ca, cb),
                (Owner::Gadget(_), Owner::Corridor(arc)) => (arc, cb, ca),
                _ => return false,
            };
            let Some(r) = self.plan.route_for(arc) else {
                return false;
            };
            let n = r.cells.len();
            n >= 3 && ((cc == r.cells[1] && gc == r.cells[0]) || (cc == r.cells[n - 2] && gc == r.cells[n - 1]))
        };
        let mut found = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let Some((a, _)) = owners[y * w + x] else { continue };
                let here = Coord::new(x, y);
                for there in [Coord::new(x + 1, y), Coord::new(x, y + 1)] {
                    if there.x >= w || there.y >= h {
                        continue;
                    }
                    let Some((b, _)) = owners[there.y * w + there.x] else {
                        continue;
                    };
                    if a != b && !allowed(a, here, b, there) {
                        found.push((here, format!("{a:?} touches {b:?} at {there}")));
                    }
                }
            }
        }
        for (c, d) in found {
            self.flag(LintRule::Clearance, Some(c), d);
        }
    }

    fn corridors(&mut self) {
        let plan = self.plan;
        let g = &plan.instance;
        for arc in 0..g.arcs().len() {
            match plan.routes.iter().filter(|r| r.arc == arc).count() {
                1 => {}
                0 => self.flag(
                    LintRule::PortalAlignment,
                    None,
                    format!("{}: no corridor", plan.arc_name(arc)),
                ),
                k => self.flag(
                    LintRule::PortalAlignment,
                    None,
                    format!("{}: {k} corridors", plan.arc_name(arc)),
                ),
            }
        }
        for r in &plan.routes {
            let name = plan.arc_name(r.arc);
            let n = r.cells.len();
            let (tail, head) = g.arcs()[r.arc];
            if n < 3 {
                self.flag(
                    LintRule::PortalAlignment,
                    r.cells.first().copied(),
                    format!("{name}: corridor too short"),
                );
                continue;
            }
            for w in r.cells.windows(2) {
                if !w[0].is_adjacent(w[1]) {
                    self.flag(
                        LintRule::PortalAlignment,
                        Some(w[1]),
                        format!("{name}: corridor jumps from {}", w[0]),
                    );
                }
            }
            let ends = [
                (tail, PortalRole::Out, r.cells[0], r.cells[1]),
                (head, PortalRole::In, r.cells[n - 1], r.cells[n - 2]),
            ];
            for (v, role, portal, next) in ends {
                let p = &plan.placements[v];
                match p.portal_for(r.arc, role) {
                    Some(i) if p.portal_cell(i) == portal && p.outside(i) == Some(next) => {}
                    _ => self.flag(
                        LintRule::PortalAlignment,
                        Some(portal),
                        format!("{name}: does not meet the {role:?} portal of `{}`", g.name(v)),
                    ),
                }
            }

            let colors: Vec<Option<TileColor>> = r.cells.iter().map(|&c| self.color_at(c)).collect();
            if colors[0] != Some(g.color(tail).tile()) {
                self.flag(
                    LintRule::Alternation,
                    Some(r.cells[0]),
                    format!("{name}: out-portal has the wrong color"),
                );
            }
            if colors[n - 1] != Some(g.color(head).tile()) {
                self.flag(
                    LintRule::Alternation,
                    Some(r.cells[n - 1]),
                    format!("{name}: in-portal has the wrong color"),
                );
            }
            let double = r.parity.map(|p| p.index);
            for i in 0..n - 1 {
                let same = colors[i] == colors[i + 1];
                if same != (double == Some(i)) {
                    let what = if same {
                        "repeats a color"
                    } else {
                        "breaks the declared double"
                    };
                    self.flag(LintRule::Alternation, Some(r.cells[i + 1]), format!("{name}: {what}"));
                }
            }
            if let Some(p) = r.parity {
                let ok = p.index >= 2
                    && p.index + 3 < n
                    && r.cells[p.index].is_adjacent(p.decoy)
                    && self.color_at(p.decoy).map(TileColor::swapped) == colors[p.index];
                if !ok {
                    self.flag(
                        LintRule::Alternation,
                        Some(p.decoy),
                        format!("{name}: malformed parity insert"),
                    );
                }
            }

            for i in 1..n - 1 {
                let c = r.cells[i];
                for nb in self.board.neighbors(c).collect::<Vec<_>>() {
                    if !self.board.get(nb).is_colored() {
                        continue;
                    }
                    let expected = nb == r.cells[i - 1]
                        || nb == r.cells[i + 1]
                        || r.parity.is_some_and(|p| p.index == i && p.decoy == nb);
                    if !expected {
                        self.flag(
                            LintRule::Forcedness,
                            Some(c),
                            format!("{name}: stray colored neighbor {nb}"),
                        );
                    }
                }
            }
        }
    }

    fn embedding(&mut self) {
        let g = &self.plan.instance;
        for p in &self.plan.placements {
            let order = embedding_order(g, p.vertex);
            if order.len() < 3 {
                continue;
            }
            if !same_cycle(&portal_order(g, p.vertex, &p.gadget, &p.portal_arcs), &order) {
                self.flag(
                    LintRule::Embedding,
                    Some(p.origin),
                    format!("portals of `{}` are out of embedding order", g.name(p.vertex)),
                );
            }
        }
    }

    fn token_and_area(&mut self) {
        let plan = self.plan;
        let start = &plan.placements[plan.instance.start()];
        let want = start.gadget.token_cell.map(|c| start.to_board(c));
        if self.board.tokens().len() != 1 || want != self.board.tokens().first().copied() {
            self.flag(LintRule::Token, want, "the only token must sit in the start gadget");
        }
        if self.board.turn() != Player::Blue {
            self.flag(LintRule::Token, None, "Blue must move first");
        }
        if (self.board.width(), self.board.height()) != (plan.width, plan.height) {
            self.flag(LintRule::AreaBudget, None, "board and plan dimensions differ");
        }
        let area = self.board.width() * self.board.height();
        if area > plan.area_bound() {
            self.flag(
                LintRule::AreaBudget,
                None,
                format!("area {area} exceeds {}", plan.area_bound()),
            );
        }
    }
}

/// Checks a painted board against its plan; an empty report means every
/// layout invariant holds.
pub fn lint(plan: &LayoutPlan, board: &Board) -> LintReport {
    let mut l = Linter {
        plan,
        board,
        report: LintReport::default(),
    };
    l.token_and_area();
    if l.report.has(LintRule::AreaBudget) && (board.width(), board.height()) != (plan.width, plan.height) {
        return l.report;
    }
    let owners = l.ownership();
    l.clearance(&owners);
    l.corridors();
    l.embedding();
    l.report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{generate, normalize, parse_instance};
    use crate::layout::{fix_parity, paint, plan_layout};

    fn pipeline(seed: u64) -> (LayoutPlan, Board) {
        let plan = fix_parity(&plan_layout(&normalize(&generate(8, seed).unwrap()).unwrap()).unwrap()).unwrap();
        let board = paint(&plan).unwrap();
        (plan, board)
    }

    #[test]
    fn pipeline_output_is_clean() {
        for seed in 0..60 {
            let (plan, board) = pipeline(seed);
            let r = lint(&plan, &board);
            assert!(r.is_clean(), "seed {seed}:\n{r}");
        }
    }

    #[test]
    fn missing_corridor_is_flagged() {
        let (mut plan, board) = pipeline(2);
        plan.routes.pop();
        let report = lint(&plan, &board);
        assert!(
            report.violations.iter().any(|v| v.detail.ends_with("no corridor")),
            "{report:?}"
        );
    }

    #[test]
    fn touching_corridors_violate_clearance() {
        let (plan, mut board) = pipeline(3);
        let r = &plan.routes[0];
        let c = r.cells[r.cells.len() / 2];
        let spot = board
            .neighbors(c)
            .find(|&n| !board.get(n).is_colored() && plan.placement_at(n).is_none())
            .unwrap();
        board.set(spot, TileColor::Red).unwrap();
        let report = lint(&plan, &board);
        assert!(report.has(LintRule::Ownership));
        assert!(report.has(LintRule::Forcedness));
    }

    #[test]
    fn same_color_pair_without_double_is_flagged() {
        let text = "GG v1\nvertex s B\nvertex a R\nvertex b R\narc s a\narc s b\nstart s\n\
                    coord s 0 0\ncoord a -1 0\ncoord b 1 0\n";
        let plan = fix_parity(&plan_layout(&parse_instance(text).unwrap()).unwrap()).unwrap();
        let mut board = paint(&plan).unwrap();
        let r = plan.routes.iter().find(|r| r.parity.is_none()).unwrap();
        let c = r.cells[2];
        board.set(c, board.get(c).swapped()).unwrap();
        assert!(lint(&plan, &board).has(LintRule::Alternation));
    }

    #[test]
    fn corridors_touching_each_other_violate_clearance() {
        let (mut plan, board) = pipeline(5);
        let target = plan.routes[0].cells[plan.routes[0].cells.len() / 2];
        let spot = board
            .neighbors(target)
            .find(|&n| !board.get(n).is_colored() && plan.placement_at(n).is_none())
            .unwrap();
        let r1 = &mut plan.routes[1];
        let mid = r1.cells.len() / 2;
        r1.cells[mid] = spot;
        let board = paint(&plan).unwrap();
        let report = lint(&plan, &board);
        assert!(report.has(LintRule::Clearance), "{report}");
    }
}
