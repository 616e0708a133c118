use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ReduceError;
use crate::tt::{Board, Coord};

/// Black, token-free cells whose every 4-neighbor is black or off the
/// board, in row-major order. A token there can never move, since tiles
/// never regain a color.
pub fn isolated_cells(board: &Board) -> Vec<Coord> {
    (0..board.height())
        .flat_map(|y| (0..board.width()).map(move |x| Coord::new(x, y)))
        .filter(|&c| {
            !board.get(c).is_colored()
                && !board.tokens().contains(&c)
                && board.neighbors(c).all(|n| !board.get(n).is_colored())
        })
        .collect()
}

/// Adds `k` immobile tokens at isolated cells picked by a seeded RNG.
pub fn add_isolated_tokens(board: &Board, k: usize, seed: u64) -> Result<Board, ReduceError> {
    let free = isolated_cells(board);
    if free.len() < k {
        return Err(ReduceError::NoIsolatedSpace {
            requested: k,
            available: free.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<Coord> = free.choose_multiple(&mut rng, k).copied().collect();
    picked.sort_by_key(|c| (c.y, c.x));
    let mut out = board.clone();
    for c in picked {
        out.add_token(c).expect("isolated cells are black and free");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::{parse_board, solve, SolveLimits};

    #[test]
    fn zero_tokens_is_identity() {
        let b = parse_board("TT v1\nturn B\n*bb\n...\n").unwrap();
        assert_eq!(add_isolated_tokens(&b, 0, 1).unwrap(), b);
    }

    #[test]
    fn padded_board_keeps_its_winner() {
        let b = parse_board("TT v1\nturn R\n*br\nr.b\n").unwrap().padded(1);
        let before = solve(&b, &SolveLimits::default()).winner;
        for k in 1..=4 {
            let more = add_isolated_tokens(&b, k, 7).unwrap();
            assert_eq!(more.tokens().len(), 1 + k);
            assert_eq!(solve(&more, &SolveLimits::default()).winner, before);
        }
    }

    #[test]
    fn dense_board_has_no_room() {
        let b = parse_board("TT v1\nturn B\n*b\nrb\n").unwrap();
        assert!(matches!(
            add_isolated_tokens(&b, 1, 0),
            Err(ReduceError::NoIsolatedSpace {
                requested: 1,
                available: 0
            })
        ));
    }

    #[test]
    fn choice_depends_only_on_seed() {
        let b = Board::black(6, 6, vec![Coord::new(0, 0)], crate::tt::Player::Blue).unwrap();
        assert_eq!(
            add_isolated_tokens(&b, 3, 9).unwrap(),
            add_isolated_tokens(&b, 3, 9).unwrap()
        );
    }
}
