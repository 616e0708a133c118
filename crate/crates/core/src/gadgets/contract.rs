use std::collections::HashSet;

use super::{GadgetError, GadgetKind, GadgetSpec, PortalRole};
use crate::tt::{self, Board, Coord, Move, Player, SolveLimits, TileColor};

const HARNESS_NODES: u64 = 2_000_000;

/// What waits beyond an out-portal in a harness board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stub {
    /// Leaving through this portal wins for the gadget owner.
    Win,
    /// Leaving through this portal loses for the gadget owner.
    Lose,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractCase {
    pub description: String,
    pub expected: Player,
    /// `None` only if the solver gave up, which is reported as an error.
    pub actual: Option<Player>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractReport {
    pub kind: GadgetKind,
    pub owner: Player,
    pub cases: Vec<ContractCase>,
    pub nodes_expanded: u64,
}

impl ContractReport {
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ContractCase> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

struct Harness<'a> {
    g: &'a GadgetSpec,
    margin: usize,
}

impl Harness<'_> {
    fn at(&self, c: Coord) -> Coord {
        Coord::new(c.x + self.margin, c.y + self.margin)
    }

    fn portal(&self, i: usize) -> Coord {
        self.at(self.g.portal_cell(&self.g.portals[i]))
    }

    /// The cell just outside portal `i`.
    fn beyond(&self, i: usize) -> Coord {
        self.portal(i)
            .step(self.g.portals[i].side, 1)
            .expect("margin keeps it on the board")
    }

    /// The patch on a black field, with a token parked at `token` and each
    /// unused in-portal fed by an opponent-colored corridor tile.
    fn base(&self, token: Coord, entered: Option<usize>) -> Board {
        let g = self.g;
        let (w, h) = (g.width + 2 * self.margin, g.height + 2 * self.margin);
        let mut tiles = vec![TileColor::Black; w * h];
        for y in 0..g.height {
            for x in 0..g.width {
                let c = self.at(Coord::new(x, y));
                tiles[c.y * w + c.x] = g.tile(Coord::new(x, y));
            }
        }
        for (i, _) in g.portals_with(PortalRole::In) {
            if Some(i) != entered {
                let c = self.beyond(i);
                tiles[c.y * w + c.x] = g.owner.opponent().tile();
            }
        }
        if let Some(i) = entered {
            let c = self.portal(i);
            tiles[c.y * w + c.x] = TileColor::Black;
        }
        Board::new(w, h, tiles, vec![token], g.owner).expect("harness board is well formed")
    }

    fn set_stubs(&self, board: &mut Board, stubs: &[Stub]) {
        let g = self.g;
        let outs: Vec<usize> = g.portals_with(PortalRole::Out).map(|(i, _)| i).collect();
        for (&i, &stub) in outs.iter().zip(stubs) {
            // Ordinary exits hand the move to the opponent; the parity exit
            // hands it back to the owner, so its stubs are mirrored.
            let color = match (g.kind == GadgetKind::Parity, stub) {
                (false, Stub::Win) | (true, Stub::Lose) => TileColor::Black,
                (false, Stub::Lose) => g.owner.opponent().tile(),
                (true, Stub::Win) => g.owner.tile(),
            };
            board.set(self.beyond(i), color).expect("stub cell is free");
        }
    }

    /// Position right after the owner's move onto in-portal `i`.
    fn arrival(&self, i: usize, stubs: &[Stub]) -> Board {
        let mut b = self.base(self.portal(i), Some(i));
        self.set_stubs(&mut b, stubs);
        b.set_turn(self.g.owner.opponent());
        b
    }

    fn start(&self, stubs: &[Stub]) -> Board {
        let token = self.at(self.g.token_cell.expect("Start has a token cell"));
        let mut b = self.base(token, None);
        self.set_stubs(&mut b, stubs);
        b
    }
}

struct Runner {
    cases: Vec<ContractCase>,
    nodes: u64,
    seen_deviations: HashSet<Board>,
    deviations: Vec<(String, Board)>,
}

impl Runner {
    fn solve(&mut self, description: &str, board: &Board) -> Result<tt::SolveResult, GadgetError> {
        let r = tt::solve(board, &SolveLimits::nodes(HARNESS_NODES));
        self.nodes += r.nodes_expanded;
        if r.exhausted {
            return Err(GadgetError::HarnessTooLarge {
                case: description.to_string(),
            });
        }
        Ok(r)
    }

    fn case(&mut self, description: String, board: &Board, expected: Player) -> Result<Vec<Move>, GadgetError> {
        let r = self.solve(&description, board)?;
        let line = r.principal_line.clone().unwrap_or_default();
        self.collect_early_stops(&description, board, &line);
        self.cases.push(ContractCase {
            passed: r.winner == Some(expected),
            description,
            expected,
            actual: r.winner,
        });
        Ok(line)
    }

    /// Every shortened version of a multi-tile run on the principal line.
    fn collect_early_stops(&mut self, description: &str, board: &Board, line: &[Move]) {
        let mut cur = board.clone();
        for (ply, &mv) in line.iter().enumerate() {
            for steps in 1..mv.steps {
                let short = Move { steps, ..mv };
                let dev = tt::apply_move(&cur, short).expect("prefix of a legal run");
                if self.seen_deviations.insert(dev.clone()) {
                    self.deviations.push((
                        format!("{description}: stop after {steps} of {} tiles at ply {ply}", mv.steps),
                        dev,
                    ));
                }
            }
            cur = tt::apply_move(&cur, mv).expect("principal line is legal");
        }
    }

    fn finish_deviations(&mut self) -> Result<(), GadgetError> {
        for (description, board) in std::mem::take(&mut self.deviations) {
            // The player who stopped early has just moved; the other must win.
            let expected = board.turn();
            let r = self.solve(&description, &board)?;
            self.cases.push(ContractCase {
                passed: r.winner == Some(expected),
                description,
                expected,
                actual: r.winner,
            });
        }
        Ok(())
    }
}

const STUB_PAIRS: [[Stub; 2]; 4] = [
    [Stub::Win, Stub::Lose],
    [Stub::Lose, Stub::Win],
    [Stub::Lose, Stub::Lose],
    [Stub::Win, Stub::Win],
];

fn stub_name(s: &[Stub]) -> String {
    let parts: Vec<&str> = s
        .iter()
        .map(|s| match s {
            Stub::Win => "WIN",
            Stub::Lose => "LOSE",
        })
        .collect();
    parts.join(",")
}

pub fn check_contract(g: &GadgetSpec) -> Result<ContractReport, GadgetError> {
    check_contract_padded(g, 0)
}

/// Like [`check_contract`] with `extra_margin` more rings of black tiles
/// around every harness board.
pub fn check_contract_padded(g: &GadgetSpec, extra_margin: usize) -> Result<ContractReport, GadgetError> {
    g.check_structure()?;
    let h = Harness {
        g,
        margin: 2 + extra_margin,
    };
    let owner = g.owner;
    let opp = owner.opponent();
    let ins: Vec<usize> = g.portals_with(PortalRole::In).map(|(i, _)| i).collect();
    let label = |i: usize| g.portals[i].label.as_str();
    let choice_winner = |s: &[Stub; 2]| if s.contains(&Stub::Win) { owner } else { opp };
    let mut run = Runner {
        cases: Vec::new(),
        nodes: 0,
        seen_deviations: HashSet::new(),
        deviations: Vec::new(),
    };

    match g.kind {
        GadgetKind::Start => {
            for stubs in STUB_PAIRS {
                let b = h.start(&stubs);
                run.case(format!("start, exits {}", stub_name(&stubs)), &b, choice_winner(&stubs))?;
            }
        }
        GadgetKind::Branch21 => {
            for stubs in STUB_PAIRS {
                let b = h.arrival(ins[0], &stubs);
                run.case(
                    format!("arrive at {}, exits {}", label(ins[0]), stub_name(&stubs)),
                    &b,
                    choice_winner(&stubs),
                )?;
            }
        }
        GadgetKind::Sink01 => {
            let b = h.arrival(ins[0], &[]);
            run.case(format!("arrive at {}", label(ins[0])), &b, opp)?;
        }
        GadgetKind::Pass11 | GadgetKind::Parity => {
            for (stub, expected) in [(Stub::Win, owner), (Stub::Lose, opp)] {
                let b = h.arrival(ins[0], &[stub]);
                run.case(
                    format!("arrive at {}, exit {}", label(ins[0]), stub_name(&[stub])),
                    &b,
                    expected,
                )?;
            }
        }
        GadgetKind::Merge12 => {
            for &i in &ins {
                for (stub, expected) in [(Stub::Win, owner), (Stub::Lose, opp)] {
                    let b = h.arrival(i, &[stub]);
                    run.case(
                        format!("arrive at {}, exit {}", label(i), stub_name(&[stub])),
                        &b,
                        expected,
                    )?;
                }
            }
            for &first in &ins {
                let second = *ins.iter().find(|&&j| j != first).expect("two in-portals");
                let entry = h.arrival(first, &[Stub::Win]);
                let description = format!("first pass through {}", label(first));
                let line = run
                    .solve(&description, &entry)?
                    .principal_line
                    .expect("solved boards carry a line");
                let after = tt::replay(&entry, &line).expect("principal line is legal");
                for stub in [Stub::Win, Stub::Lose] {
                    let mut b = after.clone();
                    h.set_stubs(&mut b, &[stub]);
                    b.set(h.beyond(second), TileColor::Black).expect("lead cell is free");
                    b.set(h.portal(second), TileColor::Black).expect("portal cell is free");
                    b.place_token(0, h.portal(second)).expect("portal is now black");
                    b.set_turn(opp);
                    run.case(
                        format!(
                            "second visit: through {} then arrive at {}, exit {}",
                            label(first),
                            label(second),
                            stub_name(&[stub])
                        ),
                        &b,
                        owner,
                    )?;
                }
            }
        }
    }
    run.finish_deviations()?;
    Ok(ContractReport {
        kind: g.kind,
        owner,
        cases: run.cases,
        nodes_expanded: run.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{base_gadget, builtin_catalog};
    use crate::tt::parse_board;

    fn report(kind: GadgetKind) -> ContractReport {
        let r = check_contract(&base_gadget(kind)).unwrap();
        for c in r.failures() {
            eprintln!("{kind}: {} expected {:?} got {:?}", c.description, c.expected, c.actual);
        }
        r
    }

    #[test]
    fn sink_micro_board_is_a_forced_loss() {
        // Blue enters s, Red answers on the red tile, Blue is stuck.
        let b = parse_board("TT v1\nturn B\n*br\n").unwrap();
        assert_eq!(tt::solve(&b, &SolveLimits::default()).winner, Some(Player::Red));
    }

    #[test]
    fn stubs_do_what_they_say() {
        // After Blue exits onto t: nothing beyond means Red is stuck; one red
        // tile beyond lets Red escape and strands Blue.
        let win = parse_board("TT v1\nturn R\n*.\n").unwrap();
        let lose = parse_board("TT v1\nturn R\n*r\n").unwrap();
        assert_eq!(tt::solve(&win, &SolveLimits::default()).winner, Some(Player::Blue));
        assert_eq!(tt::solve(&lose, &SolveLimits::default()).winner, Some(Player::Red));
    }

    #[test]
    fn every_base_gadget_passes() {
        for kind in GadgetKind::ALL {
            assert!(report(kind).passed(), "{kind}");
        }
    }

    #[test]
    fn whole_catalog_passes() {
        for g in builtin_catalog() {
            let r = check_contract(&g).unwrap();
            assert!(r.passed(), "{} {:?}: {:?}", g.kind, g.owner, r.failures().next());
        }
    }

    #[test]
    fn start_with_two_losing_exits_is_lost() {
        let r = report(GadgetKind::Start);
        let case = r.cases.iter().find(|c| c.description.contains("LOSE,LOSE")).unwrap();
        assert_eq!(case.actual, Some(Player::Red));
    }

    #[test]
    fn merge_second_visit_is_won_by_owner() {
        let r = report(GadgetKind::Merge12);
        let second: Vec<_> = r
            .cases
            .iter()
            .filter(|c| c.description.starts_with("second visit"))
            .collect();
        assert_eq!(second.len(), 4);
        assert!(second.iter().all(|c| c.actual == Some(Player::Blue)));
    }

    #[test]
    fn parity_early_stop_is_refuted() {
        let r = report(GadgetKind::Parity);
        assert!(r
            .cases
            .iter()
            .any(|c| c.description.contains("stop after 1 of 2") && c.passed));
    }

    #[test]
    fn padding_does_not_change_winners() {
        for g in builtin_catalog().iter().step_by(5) {
            let a = check_contract(g).unwrap();
            let b = check_contract_padded(g, 1).unwrap();
            let wa: Vec<_> = a.cases.iter().map(|c| c.actual).collect();
            let wb: Vec<_> = b.cases.iter().map(|c| c.actual).collect();
            assert_eq!(wa, wb);
        }
    }

    #[test]
    fn naive_double_is_caught() {
        // A parity insert without the punishing tile: stopping halfway wins.
        let mut g = base_gadget(GadgetKind::Parity);
        g.patch[2 * g.width + 2] = TileColor::Black;
        let r = check_contract(&g).unwrap();
        assert!(!r.passed());
    }
}
